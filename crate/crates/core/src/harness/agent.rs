use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::HarnessError;
use crate::chess::{Board, Color, Move, PositionKey};
use crate::nn::NetworkWeights;
use crate::search::{
    abms_search_with_history, ConstantEvaluator, MaterialDeltaEvaluator, MoveEvaluator, NeuralEvaluator, SearchConfig,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AgentKind {
    /// Search guided by the evaluation network.
    Neural { weights: PathBuf, depth: u32 },
    /// Search guided by the material-delta evaluator.
    Material { depth: u32 },
    /// Search with a constant evaluator: plays the first move in text order
    /// unless a forced result is in sight.
    Constant { depth: u32 },
    /// Uniformly random legal moves.
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AgentSpec {
    pub kind: AgentKind,
    pub id: String,
}

impl AgentSpec {
    pub fn new(kind: AgentKind) -> Self {
        let id = match &kind {
            AgentKind::Neural { depth, .. } => format!("neural:{depth}"),
            AgentKind::Material { depth } => format!("material:{depth}"),
            AgentKind::Constant { depth } => format!("constant:{depth}"),
            AgentKind::Random => "random".to_string(),
        };
        AgentSpec { kind, id }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    /// Parses `random`, `material[:D]`, `constant[:D]`, `neural[:D[:PATH]]`.
    /// Depth defaults to 1; neural weights fall back to `default_weights`.
    pub fn parse(text: &str, default_weights: Option<&Path>) -> Result<AgentSpec, HarnessError> {
        let bad = |why: &str| HarnessError::InvalidSpec(format!("{text:?}: {why}"));
        let mut parts = text.splitn(3, ':');
        let name = parts.next().unwrap_or_default();
        let depth = match parts.next() {
            None => 1,
            Some(d) => d.parse::<u32>().map_err(|_| bad("depth must be a positive integer"))?,
        };
        if depth == 0 {
            return Err(bad("depth must be at least 1"));
        }
        let rest = parts.next();
        let kind = match (name, rest) {
            ("random", None) if text == "random" => AgentKind::Random,
            ("material", None) => AgentKind::Material { depth },
            ("constant", None) => AgentKind::Constant { depth },
            ("neural", path) => {
                let weights = path
                    .map(PathBuf::from)
                    .or_else(|| default_weights.map(Path::to_path_buf))
                    .ok_or_else(|| bad("neural agent needs a weights path"))?;
                AgentKind::Neural { weights, depth }
            }
            _ => return Err(bad("expected random, material[:D], constant[:D] or neural[:D[:PATH]]")),
        };
        Ok(AgentSpec::new(kind))
    }

    pub fn is_deterministic(&self) -> bool {
        self.kind != AgentKind::Random
    }

    /// Loads whatever the agent needs (weights) once, for use across games.
    pub fn prepare(&self) -> Result<PreparedAgent, HarnessError> {
        let search = |depth: u32, evaluator: Arc<dyn MoveEvaluator>| Some(SearchConfig::new(depth, evaluator));
        let config = match &self.kind {
            AgentKind::Random => None,
            AgentKind::Material { depth } => search(*depth, Arc::new(MaterialDeltaEvaluator)),
            AgentKind::Constant { depth } => search(*depth, Arc::new(ConstantEvaluator::default())),
            AgentKind::Neural { weights, depth } => {
                let w = NetworkWeights::load(weights)
                    .map_err(|e| HarnessError::AgentInit(format!("{}: {e}", self.id)))?;
                search(*depth, Arc::new(NeuralEvaluator::new(Arc::new(w))))
            }
        };
        Ok(PreparedAgent { spec: self.clone(), config })
    }
}

impl std::fmt::Display for AgentSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.id)
    }
}

#[derive(Clone, Debug)]
pub struct PreparedAgent {
    pub spec: AgentSpec,
    config: Option<SearchConfig>,
}

impl PreparedAgent {
    /// Per-game move chooser. Random agents draw from ChaCha8 seeded with the
    /// game seed, on stream 0 as white and stream 1 as black.
    pub fn player(&self, seed: u64, color: Color) -> Player<'_> {
        let rng = self.config.is_none().then(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(color.index() as u64);
            rng
        });
        Player { agent: self, rng }
    }
}

pub struct Player<'a> {
    agent: &'a PreparedAgent,
    rng: Option<ChaCha8Rng>,
}

impl Player<'_> {
    pub fn choose(&mut self, board: &Board, history: &[PositionKey]) -> Result<Move, HarnessError> {
        match (&self.agent.config, &mut self.rng) {
            (Some(config), _) => Ok(abms_search_with_history(board, history, config)?.best_move),
            (None, Some(rng)) => {
                let moves = board.legal_moves();
                if moves.is_empty() {
                    return Err(HarnessError::Search(crate::search::SearchError::NoLegalMoves));
                }
                Ok(moves[rng.gen_range(0..moves.len())])
            }
            (None, None) => unreachable!("random agents always carry a generator"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!(AgentSpec::parse("random", None).unwrap().kind, AgentKind::Random);
        assert_eq!(AgentSpec::parse("material:2", None).unwrap().kind, AgentKind::Material { depth: 2 });
        assert_eq!(AgentSpec::parse("material", None).unwrap().id, "material:1");
        assert_eq!(
            AgentSpec::parse("neural:1:w.smw1", None).unwrap().kind,
            AgentKind::Neural { weights: "w.smw1".into(), depth: 1 }
        );
        assert_eq!(
            AgentSpec::parse("neural", Some(Path::new("env.smw1"))).unwrap().kind,
            AgentKind::Neural { weights: "env.smw1".into(), depth: 1 }
        );
        for bad in ["neural:1", "material:0", "material:x", "random:3", "alphazero"] {
            assert!(AgentSpec::parse(bad, None).is_err(), "{bad}");
        }
    }

    #[test]
    fn missing_weights_fail_at_init() {
        let spec = AgentSpec::parse("neural:1:/nonexistent/w.smw1", None).unwrap();
        assert!(matches!(spec.prepare(), Err(HarnessError::AgentInit(_))));
    }

    #[test]
    fn random_player_is_seeded() {
        let agent = AgentSpec::parse("random", None).unwrap().prepare().unwrap();
        let b = Board::startpos();
        let pick = |seed| {
            let mut p = agent.player(seed, Color::White);
            (0..5).map(|_| p.choose(&b, &[]).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(pick(3), pick(3));
        assert_ne!(pick(3), pick(4));
    }
}
