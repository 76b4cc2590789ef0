//! Depth-limited alpha-beta over an abstract game tree whose leaves are scored
//! as (parent, child) pairs rather than single positions.

/// A two-player game tree scored on the root player's scale: the root and
/// every even ply maximise, odd plies minimise.
pub trait MoveTree {
    type Node;
    type Move: Copy;
    type Error;

    /// Moves of a non-terminal node in search order.
    fn moves(&self, node: &Self::Node) -> Vec<Self::Move>;
    fn play(&self, node: &Self::Node, mv: Self::Move) -> Self::Node;
    /// Exact value of a finished game, `None` while play continues.
    fn terminal_value(&self, node: &Self::Node) -> Option<f64>;
    /// Heuristic value of the transition `parent -> child` at the horizon.
    fn leaf_value(&self, parent: &Self::Node, child: &Self::Node) -> Result<f64, Self::Error>;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Every node entered, the root included.
    pub nodes_visited: u64,
    pub leaf_evaluations: u64,
    /// Sibling moves skipped by cutoffs.
    pub pruned: u64,
}

pub struct AlphaBeta<'t, T: MoveTree> {
    tree: &'t T,
    pub stats: SearchStats,
}

impl<'t, T: MoveTree> AlphaBeta<'t, T> {
    pub fn new(tree: &'t T) -> Self {
        AlphaBeta { tree, stats: SearchStats::default() }
    }

    /// Value of `child`, reached from `parent`, with `remaining` plies left
    /// below it. `maximizing` refers to the child.
    pub fn child_value(
        &mut self,
        parent: &T::Node,
        child: &T::Node,
        remaining: u32,
        alpha: f64,
        beta: f64,
        maximizing: bool,
    ) -> Result<f64, T::Error> {
        self.stats.nodes_visited += 1;
        if let Some(v) = self.tree.terminal_value(child) {
            return Ok(v);
        }
        if remaining == 0 {
            self.stats.leaf_evaluations += 1;
            return self.tree.leaf_value(parent, child);
        }
        self.expand(child, remaining, alpha, beta, maximizing)
    }

    /// Searches a non-terminal node that has already been counted.
    pub fn expand(&mut self, node: &T::Node, remaining: u32, mut alpha: f64, mut beta: f64, maximizing: bool) -> Result<f64, T::Error> {
        let moves = self.tree.moves(node);
        let mut best = if maximizing { f64::NEG_INFINITY } else { f64::INFINITY };
        for (i, &mv) in moves.iter().enumerate() {
            let child = self.tree.play(node, mv);
            let v = self.child_value(node, &child, remaining - 1, alpha, beta, !maximizing)?;
            if maximizing {
                best = best.max(v);
                alpha = alpha.max(v);
            } else {
                best = best.min(v);
                beta = beta.min(v);
            }
            if alpha >= beta {
                self.stats.pruned += (moves.len() - i - 1) as u64;
                break;
            }
        }
        Ok(best)
    }

    /// Searches from the root to `depth` plies. Returns the first move (in
    /// the tree's order) attaining the root value, and that value.
    pub fn root(&mut self, root: &T::Node, depth: u32) -> Result<Option<(T::Move, f64)>, T::Error> {
        assert!(depth >= 1, "search depth must be at least 1");
        self.stats.nodes_visited += 1;
        let mut best: Option<(T::Move, f64)> = None;
        let mut alpha = f64::NEG_INFINITY;
        for mv in self.tree.moves(root) {
            let child = self.tree.play(root, mv);
            let v = self.child_value(root, &child, depth - 1, alpha, f64::INFINITY, false)?;
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((mv, v));
            }
            alpha = alpha.max(v);
        }
        Ok(best)
    }
}
