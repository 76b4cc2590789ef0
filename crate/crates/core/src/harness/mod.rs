//! Agent-versus-agent matches with move-horizon adjudication, material
//! traces and piece-position heatmaps.

mod agent;
mod game;
mod report;

pub use agent::{AgentKind, AgentSpec, Player, PreparedAgent};
pub use game::{
    adjudicate, play_game, Adjudicator, GameRecord, MaterialAdjudicator, Outcome, Termination, DEFAULT_MAX_FULLMOVES,
};
pub use report::{
    piece_heatmaps, run_match, run_match_with, AgentSummary, Heatmaps, MatchOptions, MatchReport, MatchSettings,
    MaterialPoint, REPORT_FORMAT,
};

use crate::search::SearchError;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("agent initialisation failed: {0}")]
    AgentInit(String),
    #[error("invalid agent spec {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("game does not replay: {0}")]
    Replay(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
