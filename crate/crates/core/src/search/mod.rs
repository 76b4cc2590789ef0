//! Alpha-beta move search. The tree is a plain alpha-beta tree over
//! positions, but every node carries its predecessor so the horizon is scored
//! on the (previous, current) board pair.
//!
//! Terminal positions score 1.0 when the root side has mated, 0.0 when it is
//! mated and 0.5 for any draw. Leaves at the depth horizon call the evaluator
//! and map its output onto the root scale. Among equal root values the move
//! with the lexicographically least long-algebraic text wins.

mod evaluator;
mod tree;

use std::sync::Arc;

pub use evaluator::{
    leaf_value, material_delta_value, material_lead, ConstantEvaluator, MaterialDeltaEvaluator, MoveEvaluator,
    NeuralEvaluator,
};
pub use tree::{AlphaBeta, MoveTree, SearchStats};

use crate::chess::{game_status, Board, Color, GameStatus, Move, PositionKey};
use crate::nn::NnError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("position has no legal moves")]
    NoLegalMoves,
    #[error("search depth must be at least 1")]
    ZeroDepth,
    #[error("evaluator failed: {0}")]
    Evaluator(#[from] NnError),
}

#[derive(Clone)]
pub struct SearchConfig {
    pub depth: u32,
    pub evaluator: Arc<dyn MoveEvaluator>,
}

impl SearchConfig {
    pub fn new(depth: u32, evaluator: Arc<dyn MoveEvaluator>) -> Self {
        SearchConfig { depth, evaluator }
    }
}

impl std::fmt::Debug for SearchConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SearchConfig").field("depth", &self.depth).field("evaluator", &self.evaluator.name()).finish()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub best_move: Move,
    pub root_score: f64,
    pub nodes_visited: u64,
    pub leaf_evaluations: u64,
    pub pruned: u64,
}

/// A position plus the repetition keys of the game leading to it (the
/// position's own key last).
#[derive(Clone, Debug)]
pub struct SearchNode {
    pub board: Board,
    pub history: Vec<PositionKey>,
}

impl SearchNode {
    pub fn new(board: Board, mut history: Vec<PositionKey>) -> Self {
        let key = board.position_key();
        if history.last() != Some(&key) {
            history.push(key);
        }
        SearchNode { board, history }
    }
}

/// The chess game tree seen from `root_color`.
pub struct ChessTree<'e> {
    pub evaluator: &'e dyn MoveEvaluator,
    pub root_color: Color,
}

/// Root-scale value of a finished game, `None` while it continues.
pub fn terminal_score(status: GameStatus, root_color: Color) -> Option<f64> {
    match status {
        GameStatus::Ongoing => None,
        GameStatus::Checkmate { winner } => Some(if winner == root_color { 1.0 } else { 0.0 }),
        _ => Some(0.5),
    }
}

impl MoveTree for ChessTree<'_> {
    type Node = SearchNode;
    type Move = Move;
    type Error = NnError;

    fn moves(&self, node: &SearchNode) -> Vec<Move> {
        node.board.legal_moves()
    }

    fn play(&self, node: &SearchNode, mv: Move) -> SearchNode {
        let board = node.board.play_unchecked(mv);
        // Positions before an irreversible move can never repeat.
        let mut history = if board.halfmove_clock() == 0 { Vec::new() } else { node.history.clone() };
        history.push(board.position_key());
        SearchNode { board, history }
    }

    fn terminal_value(&self, node: &SearchNode) -> Option<f64> {
        terminal_score(game_status(&node.board, &node.history), self.root_color)
    }

    fn leaf_value(&self, parent: &SearchNode, child: &SearchNode) -> Result<f64, NnError> {
        leaf_value(self.evaluator, &parent.board, &child.board, self.root_color)
    }
}

pub fn abms_search(root: &Board, config: &SearchConfig) -> Result<SearchResult, SearchError> {
    abms_search_with_history(root, &[], config)
}

/// Searches `root` given the repetition keys of the game so far.
pub fn abms_search_with_history(root: &Board, history: &[PositionKey], config: &SearchConfig) -> Result<SearchResult, SearchError> {
    if config.depth == 0 {
        return Err(SearchError::ZeroDepth);
    }
    let tree = ChessTree { evaluator: config.evaluator.as_ref(), root_color: root.side_to_move() };
    let node = SearchNode::new(root.clone(), history.to_vec());
    let mut search = AlphaBeta::new(&tree);
    let (best_move, root_score) = search.root(&node, config.depth)?.ok_or(SearchError::NoLegalMoves)?;
    Ok(SearchResult {
        best_move,
        root_score,
        nodes_visited: search.stats.nodes_visited,
        leaf_evaluations: search.stats.leaf_evaluations,
        pruned: search.stats.pruned,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankedMove {
    pub mv: Move,
    pub score: f64,
}

/// Exact depth-`depth` value of every root move, best first; ties ordered by
/// move text.
pub fn rank_moves(root: &Board, history: &[PositionKey], config: &SearchConfig) -> Result<Vec<RankedMove>, SearchError> {
    if config.depth == 0 {
        return Err(SearchError::ZeroDepth);
    }
    let tree = ChessTree { evaluator: config.evaluator.as_ref(), root_color: root.side_to_move() };
    let node = SearchNode::new(root.clone(), history.to_vec());
    let moves = root.legal_moves();
    if moves.is_empty() {
        return Err(SearchError::NoLegalMoves);
    }
    let mut ranked = Vec::with_capacity(moves.len());
    for mv in moves {
        let child = tree.play(&node, mv);
        let mut search = AlphaBeta::new(&tree);
        let score = search.child_value(&node, &child, config.depth - 1, f64::NEG_INFINITY, f64::INFINITY, false)?;
        ranked.push(RankedMove { mv, score });
    }
    ranked.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.mv.cmp(&b.mv)));
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chess::parse_fen;

    fn material(depth: u32) -> SearchConfig {
        SearchConfig::new(depth, Arc::new(MaterialDeltaEvaluator))
    }

    #[test]
    fn constant_tie_break_from_startpos() {
        let cfg = SearchConfig::new(1, Arc::new(ConstantEvaluator::default()));
        let r = abms_search(&Board::startpos(), &cfg).unwrap();
        assert_eq!(r.best_move.to_string(), "a2a3");
        assert_eq!(r.root_score, 0.5);
        assert_eq!(r.leaf_evaluations, 20);
    }

    #[test]
    fn captures_hanging_queen() {
        let b = parse_fen("4k3/8/8/3q4/8/8/8/3RK3 w - - 0 1").unwrap();
        let r = abms_search(&b, &material(1)).unwrap();
        assert_eq!(r.best_move.to_string(), "d1d5");
        assert!(r.root_score > 0.9);
    }

    #[test]
    fn finds_mate_in_one() {
        let b = parse_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1").unwrap();
        for depth in 1..=3 {
            let r = abms_search(&b, &material(depth)).unwrap();
            assert_eq!(r.best_move.to_string(), "a1a8", "depth {depth}");
            assert_eq!(r.root_score, 1.0);
        }
    }

    #[test]
    fn no_legal_moves() {
        let b = parse_fen("7k/5Q2/6K1/8/8/8/8/8 b - - 0 1").unwrap();
        assert_eq!(abms_search(&b, &material(1)), Err(SearchError::NoLegalMoves));
        assert_eq!(abms_search(&Board::startpos(), &material(0)), Err(SearchError::ZeroDepth));
    }

    #[test]
    fn ranking_puts_mate_first() {
        let b = parse_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1").unwrap();
        let ranked = rank_moves(&b, &[], &material(1)).unwrap();
        assert_eq!(ranked[0].mv.to_string(), "a1a8");
        assert_eq!(ranked[0].score, 1.0);
        assert_eq!(ranked.len(), b.legal_moves().len());
        assert!(ranked.windows(2).all(|w| w[0].score >= w[1].score));
    }

    #[test]
    fn depth_two_scores_the_reply() {
        // Leaves score only the last move pair, so at depth 2 black's options
        // are judged by white's best reply: hanging the queen scores low.
        let b = parse_fen("4k3/8/8/3q4/4P3/8/8/4K3 b - - 0 1").unwrap();
        let r = abms_search(&b, &material(2)).unwrap();
        assert_eq!(r.root_score, 0.5);
        let ranked = rank_moves(&b, &[], &material(2)).unwrap();
        let hang = ranked.iter().find(|m| m.mv.to_string() == "d5d1").unwrap();
        let expected = 1.0 - 1.0 / (1.0 + (-3.0f64).exp());
        assert!((hang.score - expected).abs() < 1e-15);
        assert_eq!(ranked[0].mv, r.best_move);
    }
}
