use std::path::Path;
use std::process::{Command, Output};

use sentichess::encoding::{encode_move_pair, MoveTensor};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sentichess"))
        .args(args)
        .env_remove("SENTICHESS_WEIGHTS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixtures() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

#[test]
fn perft_prints_the_count() {
    let o = run(&["perft", "--fen", "startpos", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "8902\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["perft", "--depth", "1", "--nope"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "--eval", "psychic"]).status.code(), Some(1));
    let o = run(&["perft", "--fen", "rnbqkbnr/pppppppp/8 w", "--depth", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(run(&["analyze", "--eval", "neural"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn analyze_ranks_the_mate_first() {
    let o = run(&["analyze", "--fen", "6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1", "--depth", "2", "--eval", "material"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("bestmove a1a8 score 1.000000"));
    assert_eq!(lines[1], "1 a1a8 1.000000");
}

#[test]
fn analyze_with_neural_weights() {
    let w = fixtures().join("golden_f4.smw1");
    let o = run(&["analyze", "--eval", "neural", "--weights", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).lines().count(), 21);
}

#[test]
fn encode_single_pair_to_stdout() {
    let o = run(&["encode", "--fen", "startpos", "--move", "e2e4"]);
    assert_eq!(o.status.code(), Some(0));
    let start = sentichess::chess::Board::startpos();
    let expected = encode_move_pair(&start, &start.apply_uci("e2e4").unwrap());
    assert!(MoveTensor::from_dump(&o.stdout).unwrap() == expected);
    assert_eq!(run(&["encode", "--fen", "startpos", "--move", "e2e5"]).status.code(), Some(2));
}

#[test]
fn encode_pgn_and_records() {
    let dir = tempfile::tempdir().unwrap();
    let pgn = dir.path().join("g.pgn");
    std::fs::write(&pgn, "1. e4 {ok} e5 2. Nf3 Nc6 *\n").unwrap();
    let out = dir.path().join("pgn_out");
    let o = run(&["encode", "--pgn", pgn.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let index = std::fs::read_to_string(out.join("index.tsv")).unwrap();
    assert_eq!(index.lines().count(), 5);
    assert!(index.lines().nth(4).unwrap().ends_with("b8c6"));
    let dump = std::fs::read(out.join("00001.t")).unwrap();
    assert!(dump.starts_with(b"8 8 26\n"));

    let records = dir.path().join("r.jsonl");
    std::fs::write(
        &records,
        concat!(
            r#"{"fen_before":"rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1","fen_after":"rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq e3 0 1","uci":"e2e4"}"#,
            "\n"
        ),
    )
    .unwrap();
    let out2 = dir.path().join("rec_out");
    let o = run(&["encode", "--records", records.to_str().unwrap(), "--out", out2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(out2.join("00001.t")).unwrap(), dump);

    std::fs::write(
        &records,
        r#"{"fen_before":"rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1","fen_after":"rnbqkbnr/1ppppppp/p7/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"}"#,
    )
    .unwrap();
    let o = run(&["encode", "--records", records.to_str().unwrap(), "--out", out2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selfcheck_with_goldens() {
    let o = run(&["selfcheck"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 3);

    let w = fixtures().join("golden_f4.smw1");
    let g = fixtures().join("golden_f4.txt");
    let o = run(&["selfcheck", "--weights", w.to_str().unwrap(), "--goldens", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS goldens cases 32"));
}

#[test]
fn match_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m");
    let o = run(&[
        "match", "--white", "material:1", "--black", "random", "--games", "4", "--seed", "5", "--swap-colors",
        "--adjudicate-after", "10", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("games 4\n"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["games"].as_array().unwrap().len(), 4);
    assert_eq!(report["settings"]["max_fullmoves"], 10);
    let csv = std::fs::read_to_string(out.join("material_trace.csv")).unwrap();
    assert!(csv.starts_with("game,ply,white,black\n0,0,39,39\n"));
    let heat = std::fs::read_to_string(out.join("heatmaps.csv")).unwrap();
    assert_eq!(heat.lines().count(), 769);
    let pgn = std::fs::read_to_string(out.join("games.pgn")).unwrap();
    assert_eq!(sentichess::chess::split_games(&pgn).len(), 4);
    assert!(pgn.contains("[Round \"4\"]"));

    let o = run(&["match", "--white", "neural:1:/missing.smw1", "--black", "random", "--games", "1"]);
    assert_eq!(o.status.code(), Some(2));
}
