//! Command-line front end. Exit codes: 0 success, 1 usage error, 2 runtime
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::chess::{parse_fen, parse_pgn, parse_position, perft, perft_divide, Board, Move};
use crate::encoding::{encode_move_pair, encode_move_pair_checked, encode_state, piece_channel};
use crate::harness::{run_match, AgentSpec, MatchOptions};
use crate::nn::golden::GoldenFixture;
use crate::nn::NetworkWeights;
use crate::search::{
    abms_search, rank_moves, ConstantEvaluator, MaterialDeltaEvaluator, MoveEvaluator, NeuralEvaluator, SearchConfig,
};

pub const WEIGHTS_ENV: &str = "SENTICHESS_WEIGHTS";
pub const PERFT_DEPTH_CAP: u32 = 6;
pub const GOLDEN_TOLERANCE: f64 = 1e-5;

#[derive(Parser, Debug)]
#[command(name = "sentichess", version, about = "Move-pair evaluating chess engine and match harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Play a series of games between two agents and write a report.
    Match(MatchArgs),
    /// Rank every legal move of a position by search value.
    Analyze(AnalyzeArgs),
    /// Count leaf nodes of the legal move tree.
    Perft(PerftArgs),
    /// Write 8x8x26 move tensors as float32 dumps.
    Encode(EncodeArgs),
    /// Run built-in correctness checks and, optionally, golden network fixtures.
    Selfcheck(SelfcheckArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EvalKind {
    Neural,
    Material,
    Constant,
}

#[derive(Args, Debug)]
struct MatchArgs {
    /// First agent (plays white unless colors swap): random, material[:D], constant[:D], neural[:D[:PATH]].
    #[arg(long)]
    white: String,
    /// Second agent, same syntax as --white.
    #[arg(long)]
    black: String,
    /// Number of games.
    #[arg(long, default_value_t = 100)]
    games: usize,
    /// Base seed; game i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Alternate colors every game.
    #[arg(long)]
    swap_colors: bool,
    /// Full moves before material adjudication.
    #[arg(long, default_value_t = 40)]
    adjudicate_after: u32,
    /// Directory for report.json, material_trace.csv, heatmaps.csv, games.pgn.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Games played in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Weights for neural agents given without a path.
    #[arg(long, env = WEIGHTS_ENV)]
    weights: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    /// Position as FEN, or `startpos`.
    #[arg(long, default_value = "startpos")]
    fen: String,
    /// Search depth in plies.
    #[arg(long, default_value_t = 1)]
    depth: u32,
    /// Leaf evaluator.
    #[arg(long, value_enum, default_value_t = EvalKind::Material)]
    eval: EvalKind,
    /// SMW1 weights for --eval neural.
    #[arg(long, env = WEIGHTS_ENV)]
    weights: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PerftArgs {
    /// Position as FEN, or `startpos`.
    #[arg(long, default_value = "startpos")]
    fen: String,
    /// Depth in plies (at most 6).
    #[arg(long)]
    depth: u32,
    /// Also print the count below each root move.
    #[arg(long)]
    divide: bool,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    /// PGN game whose moves are encoded in order.
    #[arg(long, conflicts_with_all = ["records", "fen"])]
    pgn: Option<PathBuf>,
    /// Line-record dataset (one JSON object per line with fen_before and fen_after).
    #[arg(long, conflicts_with = "fen")]
    records: Option<PathBuf>,
    /// Position before the move (FEN or `startpos`); requires --move.
    #[arg(long, requires = "mv")]
    fen: Option<String>,
    /// Long-algebraic move played from --fen.
    #[arg(long = "move", id = "mv", requires = "fen")]
    mv: Option<String>,
    /// Output directory (one .t dump per move plus index.tsv). A single
    /// --fen/--move pair is written to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SelfcheckArgs {
    /// SMW1 weights for the golden fixture check.
    #[arg(long, env = WEIGHTS_ENV, requires = "goldens")]
    weights: Option<PathBuf>,
    /// Golden fixture file produced alongside the weights.
    #[arg(long)]
    goldens: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs one subcommand.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    let result = match cli.command {
        Command::Match(a) => cmd_match(a, out),
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Perft(a) => cmd_perft(a, out),
        Command::Encode(a) => cmd_encode(a, out),
        Command::Selfcheck(a) => cmd_selfcheck(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn cmd_match(a: MatchArgs, out: &mut dyn Write) -> Result<i32> {
    let white = AgentSpec::parse(&a.white, a.weights.as_deref())?;
    let black = AgentSpec::parse(&a.black, a.weights.as_deref())?;
    if a.games == 0 {
        bail!("--games must be at least 1");
    }
    if a.adjudicate_after == 0 {
        bail!("--adjudicate-after must be at least 1");
    }
    if let Some(dir) = &a.out {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let options = MatchOptions { max_fullmoves: a.adjudicate_after, swap_colors: a.swap_colors, jobs: a.jobs.max(1) };
    let report = run_match(&white, &black, a.games, a.seed, &options)?;
    if let Some(dir) = &a.out {
        report.write_dir(dir)?;
    }
    writeln!(out, "games {}", report.games.len())?;
    for s in &report.agents {
        writeln!(out, "{} wins {} draws {} losses {}", s.id, s.wins, s.draws, s.losses)?;
    }
    Ok(0)
}

fn evaluator(kind: EvalKind, weights: Option<&Path>) -> Result<Arc<dyn MoveEvaluator>> {
    Ok(match kind {
        EvalKind::Material => Arc::new(MaterialDeltaEvaluator),
        EvalKind::Constant => Arc::new(ConstantEvaluator::default()),
        EvalKind::Neural => {
            let path = weights.with_context(|| format!("--eval neural needs --weights or {WEIGHTS_ENV}"))?;
            let w = NetworkWeights::load(path)?;
            Arc::new(NeuralEvaluator::new(Arc::new(w)))
        }
    })
}

fn cmd_analyze(a: AnalyzeArgs, out: &mut dyn Write) -> Result<i32> {
    let board = parse_position(&a.fen)?;
    if a.depth == 0 {
        bail!("--depth must be at least 1");
    }
    let config = SearchConfig::new(a.depth, evaluator(a.eval, a.weights.as_deref())?);
    let result = abms_search(&board, &config)?;
    let ranked = rank_moves(&board, &[], &config)?;
    writeln!(
        out,
        "bestmove {} score {:.6} nodes {} leaves {} pruned {}",
        result.best_move, result.root_score, result.nodes_visited, result.leaf_evaluations, result.pruned
    )?;
    for (i, r) in ranked.iter().enumerate() {
        writeln!(out, "{} {} {:.6}", i + 1, r.mv, r.score)?;
    }
    Ok(0)
}

fn cmd_perft(a: PerftArgs, out: &mut dyn Write) -> Result<i32> {
    let board = parse_position(&a.fen)?;
    if a.depth > PERFT_DEPTH_CAP {
        bail!("--depth {} exceeds the cap of {PERFT_DEPTH_CAP}", a.depth);
    }
    if a.divide {
        let rows = perft_divide(&board, a.depth);
        for (mv, n) in &rows {
            writeln!(out, "{mv} {n}")?;
        }
        writeln!(out)?;
    }
    writeln!(out, "{}", perft(&board, a.depth))?;
    Ok(0)
}

#[derive(Deserialize)]
struct PairRecord {
    fen_before: String,
    fen_after: String,
    #[serde(default)]
    uci: Option<String>,
}

fn write_dumps(dir: &Path, rows: &[(String, Vec<u8>)]) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut index = String::from("file\tfen_before\tmove\n");
    for (i, (meta, dump)) in rows.iter().enumerate() {
        let name = format!("{:05}.t", i + 1);
        std::fs::write(dir.join(&name), dump).with_context(|| format!("writing {name}"))?;
        index.push_str(&format!("{name}\t{meta}\n"));
    }
    std::fs::write(dir.join("index.tsv"), index)?;
    Ok(())
}

fn cmd_encode(a: EncodeArgs, out: &mut dyn Write) -> Result<i32> {
    let mut rows: Vec<(String, Vec<u8>)> = Vec::new();
    if let Some(path) = &a.pgn {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let game = parse_pgn(&text)?;
        for ((before, after), m) in game.transitions()?.iter().zip(&game.moves) {
            rows.push((format!("{before}\t{}", m.mv), encode_move_pair(before, after).to_dump()));
        }
    } else if let Some(path) = &a.records {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let rec: PairRecord = serde_json::from_str(line).with_context(|| format!("record on line {}", i + 1))?;
            let before = parse_fen(&rec.fen_before).with_context(|| format!("fen_before on line {}", i + 1))?;
            let after = parse_fen(&rec.fen_after).with_context(|| format!("fen_after on line {}", i + 1))?;
            let tensor = encode_move_pair_checked(&before, &after).with_context(|| format!("line {}", i + 1))?;
            rows.push((format!("{before}\t{}", rec.uci.unwrap_or_default()), tensor.to_dump()));
        }
    } else if let (Some(fen), Some(text)) = (&a.fen, &a.mv) {
        let before = parse_position(fen)?;
        let mv = Move::parse(text).with_context(|| format!("bad move text {text:?}"))?;
        let after = before.apply_move(mv)?;
        let dump = encode_move_pair(&before, &after).to_dump();
        if a.out.is_none() {
            out.write_all(&dump)?;
            return Ok(0);
        }
        rows.push((format!("{before}\t{mv}"), dump));
    } else {
        bail!("encode needs --pgn, --records, or --fen with --move");
    }
    let dir = a.out.context("--out is required for --pgn and --records")?;
    write_dumps(&dir, &rows)?;
    writeln!(out, "wrote {} tensors to {}", rows.len(), dir.display())?;
    Ok(0)
}

fn cmd_selfcheck(a: SelfcheckArgs, out: &mut dyn Write) -> Result<i32> {
    let mut failures = 0;
    let mut report = |name: &str, ok: bool, detail: String, out: &mut dyn Write| -> Result<()> {
        if !ok {
            failures += 1;
        }
        writeln!(out, "{} {name} {detail}", if ok { "PASS" } else { "FAIL" })?;
        Ok(())
    };

    let start = Board::startpos();
    let counts: Vec<u64> = (1..=4).map(|d| perft(&start, d)).collect();
    report("perft", counts == [20, 400, 8902, 197_281], format!("{counts:?}"), out)?;

    let queen = parse_fen("7k/8/8/8/4Q3/8/8/4K3 w - - 0 1")?;
    let planes = encode_state(&queen);
    let ch = piece_channel(crate::chess::Color::White, crate::chess::PieceKind::Queen);
    report("encoding", planes.get(3, 4, ch) == 1, "queen e4 -> row 3 col 4".into(), out)?;

    let tie = abms_search(&start, &SearchConfig::new(1, Arc::new(ConstantEvaluator::default())))?;
    report("search-tiebreak", tie.best_move.to_string() == "a2a3", tie.best_move.to_string(), out)?;

    match (&a.weights, &a.goldens) {
        (Some(wpath), Some(gpath)) => {
            let bytes = std::fs::read(wpath).with_context(|| format!("reading {}", wpath.display()))?;
            let weights = NetworkWeights::load_bytes(&bytes)?;
            let text = std::fs::read_to_string(gpath).with_context(|| format!("reading {}", gpath.display()))?;
            let fixture = GoldenFixture::parse(&text)?;
            let r = fixture.check(&weights, Some(&bytes), GOLDEN_TOLERANCE)?;
            let detail = format!(
                "cases {} max_abs_diff {:.3e} checksum {}",
                r.cases,
                r.max_abs_diff,
                match r.checksum_ok {
                    Some(true) => "ok",
                    Some(false) => "mismatch",
                    None => "absent",
                }
            );
            report("goldens", r.passed() && r.cases > 0, detail, out)?;
        }
        (None, Some(_)) => bail!("--goldens needs --weights or {WEIGHTS_ENV}"),
        _ => {}
    }
    Ok(if failures == 0 { 0 } else { 2 })
}
