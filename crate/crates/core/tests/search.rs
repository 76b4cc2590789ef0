mod common;

use std::sync::Arc;

use proptest::prelude::*;
use sentichess::chess::{parse_fen, Board};
use sentichess::search::{abms_search, rank_moves, AlphaBeta, ConstantEvaluator, MaterialDeltaEvaluator, MoveTree, SearchConfig};

fn material(depth: u32) -> SearchConfig {
    SearchConfig::new(depth, Arc::new(MaterialDeltaEvaluator))
}

/// Uniform tree where the first move is strictly best for whichever side
/// chooses at every node: a perfectly ordered tree.
struct BestFirst {
    branching: usize,
}

impl MoveTree for BestFirst {
    type Node = Vec<usize>;
    type Move = usize;
    type Error = ();

    fn moves(&self, _: &Vec<usize>) -> Vec<usize> {
        (0..self.branching).collect()
    }
    fn play(&self, node: &Vec<usize>, mv: usize) -> Vec<usize> {
        let mut n = node.clone();
        n.push(mv);
        n
    }
    fn terminal_value(&self, _: &Vec<usize>) -> Option<f64> {
        None
    }
    fn leaf_value(&self, _: &Vec<usize>, path: &Vec<usize>) -> Result<f64, ()> {
        // Separable: each ply's choice shifts the value away from its chooser.
        Ok(path
            .iter()
            .enumerate()
            .map(|(ply, &i)| {
                let step = i as f64 * 0.5f64.powi(ply as i32 + 1);
                if ply % 2 == 0 { -step } else { step }
            })
            .sum())
    }
}

#[test]
fn perfectly_ordered_tree_hits_the_minimal_leaf_count() {
    for branching in [2usize, 3, 4, 5] {
        for depth in 1..=6u32 {
            let tree = BestFirst { branching };
            let mut s = AlphaBeta::new(&tree);
            let (mv, v) = s.root(&vec![], depth).unwrap().unwrap();
            assert_eq!((mv, v), (0, 0.0));
            let b = branching as u64;
            let expected = b.pow(depth.div_ceil(2)) + b.pow(depth / 2) - 1;
            assert_eq!(s.stats.leaf_evaluations, expected, "B={branching} D={depth}");
        }
    }
}

#[test]
fn examples() {
    let constant = SearchConfig::new(1, Arc::new(ConstantEvaluator::default()));
    let r = abms_search(&Board::startpos(), &constant).unwrap();
    assert_eq!(r.best_move.to_string(), "a2a3");
    assert_eq!(r.leaf_evaluations, 20);

    let hanging = parse_fen("4k3/8/8/3q4/8/8/8/3QK3 w - - 0 1").unwrap();
    assert_eq!(abms_search(&hanging, &material(1)).unwrap().best_move.to_string(), "d1d5");

    let mate = parse_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1").unwrap();
    for d in 1..=3 {
        let r = abms_search(&mate, &material(d)).unwrap();
        assert_eq!((r.best_move.to_string().as_str(), r.root_score), ("a1a8", 1.0));
    }
    let ranked = rank_moves(&mate, &[], &material(1)).unwrap();
    assert_eq!(ranked[0].mv.to_string(), "a1a8");
    assert_eq!(ranked[0].score, 1.0);
    assert!(ranked[1..].iter().all(|r| r.score < 1.0));
}

#[test]
fn stalemate_trap_scores_a_draw() {
    // Qb6 stalemates; the search must see the 0.5 terminal.
    let board = parse_fen("k7/8/8/2Q5/8/8/8/K7 w - - 0 1").unwrap();
    let ranked = rank_moves(&board, &[], &material(1)).unwrap();
    let qb6 = ranked.iter().find(|r| r.mv.to_string() == "c5b6").unwrap();
    assert_eq!(qb6.score, 0.5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn agrees_with_minimax(seed in any::<u64>(), depth in 1u32..=2) {
        let board = common::random_positions(1, seed, 80).remove(0);
        let r = abms_search(&board, &material(depth)).unwrap();
        let (v, nodes) = common::Minimax::search(&board, depth);
        prop_assert_eq!(r.root_score, v);
        prop_assert!(r.nodes_visited <= nodes);
        prop_assert!((0.0..=1.0).contains(&r.root_score));
        if depth == 1 {
            prop_assert!(r.leaf_evaluations as usize <= board.legal_moves().len());
        }
        let again = abms_search(&board, &material(depth)).unwrap();
        prop_assert_eq!(r, again);
        let ranked = rank_moves(&board, &[], &material(depth)).unwrap();
        prop_assert_eq!(ranked[0].score, v);
    }
}
