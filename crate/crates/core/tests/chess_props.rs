mod common;

use proptest::prelude::*;
use sentichess::chess::{parse_fen, parse_pgn, perft, perft_divide, write_pgn, Board, Move};

fn position() -> impl Strategy<Value = Board> {
    any::<u64>().prop_map(|seed| common::random_positions(1, seed, 100).remove(0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fen_round_trips(board in position()) {
        let fen = board.to_string();
        let again = parse_fen(&fen).unwrap();
        prop_assert_eq!(&again, &board);
        prop_assert_eq!(again.to_string(), fen);
    }

    #[test]
    fn legal_moves_never_leave_the_king_attacked(board in position()) {
        let mover = board.side_to_move();
        let moves = board.legal_moves();
        let mut sorted = moves.clone();
        sorted.sort_by_key(|m| m.to_string());
        prop_assert_eq!(&moves, &sorted);
        for mv in moves {
            let after = board.apply_move(mv).unwrap();
            prop_assert!(!after.is_attacked(after.king_square(mover), mover.opposite()), "{} {}", board, mv);
            prop_assert_eq!(after.side_to_move(), mover.opposite());
        }
    }

    #[test]
    fn perft_decomposes(board in position()) {
        let divided = perft_divide(&board, 2);
        prop_assert_eq!(divided.len(), board.legal_moves().len());
        prop_assert_eq!(divided.iter().map(|(_, n)| n).sum::<u64>(), perft(&board, 2));
        for (mv, n) in divided {
            prop_assert_eq!(n, perft(&board.apply_move(mv).unwrap(), 1));
        }
    }

    #[test]
    fn pgn_round_trips(seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut board = Board::startpos();
        let mut moves: Vec<Move> = Vec::new();
        for _ in 0..60 {
            let Some(&mv) = board.legal_moves().choose(&mut rng) else { break };
            board = board.apply_move(mv).unwrap();
            moves.push(mv);
        }
        let text = write_pgn(&[("Event".into(), "prop".into())], &Board::startpos(), &moves, "*").unwrap();
        let game = parse_pgn(&text).unwrap();
        prop_assert_eq!(game.moves.iter().map(|m| m.mv).collect::<Vec<_>>(), moves);
        prop_assert_eq!(game.tag("Event"), Some("prop"));
    }
}

#[test]
fn reference_perft_positions() {
    let cases = [
        ("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1", [48, 2039, 97_862]),
        ("8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1", [14, 191, 2812]),
        ("rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8", [44, 1486, 62_379]),
    ];
    for (fen, counts) in cases {
        let board = parse_fen(fen).unwrap();
        for (d, &n) in counts.iter().enumerate() {
            assert_eq!(perft(&board, d as u32 + 1), n, "{fen} depth {}", d + 1);
        }
    }
}

#[test]
fn pgn_with_comments_and_variations() {
    let text = r#"[Event "t"]
[Result "1-0"]

1. e4 {Best by test.} e5 (1... c5 2. Nf3) 2. Nf3 $1 Nc6 ; a quiet move
3. Bb5 a6 1-0"#;
    let game = parse_pgn(text).unwrap();
    let sans: Vec<&str> = game.moves.iter().map(|m| m.san.as_str()).collect();
    assert_eq!(sans, ["e4", "e5", "Nf3", "Nc6", "Bb5", "a6"]);
    assert_eq!(game.moves[0].comment.as_deref(), Some("Best by test."));
    assert_eq!(game.moves[3].comment.as_deref(), Some("a quiet move"));
    assert_eq!(game.variations_skipped, 1);
    assert_eq!(game.result.as_deref(), Some("1-0"));
}
