use std::sync::Arc;

use crate::chess::{Board, Color};
use crate::encoding::{encode_move_pair, material_score};
use crate::nn::{forward, NetworkWeights, NnError};

/// Scores a single transition `before -> after` as the probability that the
/// move was good for the side that made it (the side to move in `before`).
pub trait MoveEvaluator: Send + Sync {
    fn goodness(&self, before: &Board, after: &Board) -> Result<f64, NnError>;
    fn name(&self) -> &'static str;
}

#[derive(Clone, Copy, Debug)]
pub struct ConstantEvaluator(pub f64);

impl Default for ConstantEvaluator {
    fn default() -> Self {
        ConstantEvaluator(0.5)
    }
}

impl MoveEvaluator for ConstantEvaluator {
    fn goodness(&self, _: &Board, _: &Board) -> Result<f64, NnError> {
        Ok(self.0)
    }

    fn name(&self) -> &'static str {
        "constant"
    }
}

/// `1 / (1 + exp(-gain / 3))` where `gain` is the change in the mover's
/// material lead over the transition. Quiet moves score exactly 0.5.
#[derive(Clone, Copy, Debug, Default)]
pub struct MaterialDeltaEvaluator;

pub fn material_lead(board: &Board, color: Color) -> i64 {
    material_score(board, color) as i64 - material_score(board, color.opposite()) as i64
}

pub fn material_delta_value(before: &Board, after: &Board) -> f64 {
    let mover = before.side_to_move();
    let gain = (material_lead(after, mover) - material_lead(before, mover)) as f64;
    1.0 / (1.0 + (-gain / 3.0).exp())
}

impl MoveEvaluator for MaterialDeltaEvaluator {
    fn goodness(&self, before: &Board, after: &Board) -> Result<f64, NnError> {
        Ok(material_delta_value(before, after))
    }

    fn name(&self) -> &'static str {
        "material"
    }
}

/// Goodness output G of the evaluation network.
#[derive(Clone, Debug)]
pub struct NeuralEvaluator {
    weights: Arc<NetworkWeights>,
}

impl NeuralEvaluator {
    pub fn new(weights: Arc<NetworkWeights>) -> Self {
        NeuralEvaluator { weights }
    }

    pub fn weights(&self) -> &Arc<NetworkWeights> {
        &self.weights
    }
}

impl MoveEvaluator for NeuralEvaluator {
    fn goodness(&self, before: &Board, after: &Board) -> Result<f64, NnError> {
        Ok(forward(&self.weights, &encode_move_pair(before, after))?.good)
    }

    fn name(&self) -> &'static str {
        "neural"
    }
}

/// Evaluator output mapped onto the root player's scale: unchanged when the
/// mover is the root side, `1 - v` otherwise.
pub fn leaf_value(evaluator: &dyn MoveEvaluator, before: &Board, after: &Board, root_color: Color) -> Result<f64, NnError> {
    let v = evaluator.goodness(before, after)?;
    Ok(if before.side_to_move() == root_color { v } else { 1.0 - v })
}
