use serde::{Deserialize, Serialize};

use super::agent::PreparedAgent;
use super::HarnessError;
use crate::chess::{emit_fen, game_status, write_pgn, Board, Color, GameStatus, Move};
use crate::encoding::material_score;

pub const DEFAULT_MAX_FULLMOVES: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    White,
    Black,
    Draw,
}

impl Outcome {
    pub fn winner(color: Color) -> Outcome {
        match color {
            Color::White => Outcome::White,
            Color::Black => Outcome::Black,
        }
    }

    pub fn pgn_result(self) -> &'static str {
        match self {
            Outcome::White => "1-0",
            Outcome::Black => "0-1",
            Outcome::Draw => "1/2-1/2",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Termination {
    Checkmate,
    Stalemate,
    DrawRule,
    Adjudicated { after_fullmoves: u32 },
}

impl Termination {
    pub fn label(self) -> String {
        match self {
            Termination::Checkmate => "checkmate".into(),
            Termination::Stalemate => "stalemate".into(),
            Termination::DrawRule => "draw-rule".into(),
            Termination::Adjudicated { after_fullmoves } => format!("adjudicated-{after_fullmoves}"),
        }
    }

    pub fn from_label(label: &str) -> Option<Termination> {
        Some(match label {
            "checkmate" => Termination::Checkmate,
            "stalemate" => Termination::Stalemate,
            "draw-rule" => Termination::DrawRule,
            other => Termination::Adjudicated { after_fullmoves: other.strip_prefix("adjudicated-")?.parse().ok()? },
        })
    }
}

impl Serialize for Termination {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

impl<'de> Deserialize<'de> for Termination {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let label = String::deserialize(d)?;
        Termination::from_label(&label).ok_or_else(|| serde::de::Error::custom(format!("unknown termination {label:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameRecord {
    pub index: usize,
    pub white_id: String,
    pub black_id: String,
    pub seed: u64,
    /// Long-algebraic move texts.
    pub moves: Vec<String>,
    /// (white, black) material before the first move and after every ply.
    pub material_trace: Vec<(u32, u32)>,
    pub outcome: Outcome,
    pub termination: Termination,
    /// Status name of the final position ("draw-threefold", ...).
    pub final_status: String,
    pub final_fen: String,
}

impl GameRecord {
    pub fn parsed_moves(&self) -> Vec<Move> {
        self.moves.iter().map(|m| Move::parse(m).expect("recorded moves are canonical")).collect()
    }

    /// Boards from the initial position through every recorded move,
    /// re-validating legality along the way.
    pub fn replay(&self) -> Result<Vec<Board>, HarnessError> {
        let mut boards = vec![Board::startpos()];
        for text in &self.moves {
            let next = boards.last().expect("non-empty").apply_uci(text).map_err(|e| HarnessError::Replay(e.to_string()))?;
            boards.push(next);
        }
        Ok(boards)
    }

    pub fn to_pgn(&self) -> String {
        let tags = vec![
            ("Event".to_string(), "engine match".to_string()),
            ("Round".to_string(), (self.index + 1).to_string()),
            ("White".to_string(), self.white_id.clone()),
            ("Black".to_string(), self.black_id.clone()),
            ("Result".to_string(), self.outcome.pgn_result().to_string()),
            ("Termination".to_string(), self.termination.label()),
            ("Seed".to_string(), self.seed.to_string()),
        ];
        write_pgn(&tags, &Board::startpos(), &self.parsed_moves(), self.outcome.pgn_result())
            .expect("recorded games replay legally")
    }
}

/// Decides unfinished games at the move horizon.
pub trait Adjudicator: Send + Sync {
    fn adjudicate(&self, board: &Board) -> Outcome;
}

/// Higher material score wins; equal material is a draw.
#[derive(Clone, Copy, Debug, Default)]
pub struct MaterialAdjudicator;

impl Adjudicator for MaterialAdjudicator {
    fn adjudicate(&self, board: &Board) -> Outcome {
        adjudicate(board)
    }
}

pub fn adjudicate(board: &Board) -> Outcome {
    let white = material_score(board, Color::White);
    let black = material_score(board, Color::Black);
    match white.cmp(&black) {
        std::cmp::Ordering::Greater => Outcome::White,
        std::cmp::Ordering::Less => Outcome::Black,
        std::cmp::Ordering::Equal => Outcome::Draw,
    }
}

fn trace_entry(board: &Board) -> (u32, u32) {
    (material_score(board, Color::White), material_score(board, Color::Black))
}

/// Plays one game from the initial position. Stops on any game-ending status,
/// otherwise adjudicates once `max_fullmoves` full moves have been played.
pub fn play_game(
    white: &PreparedAgent,
    black: &PreparedAgent,
    seed: u64,
    max_fullmoves: u32,
    adjudicator: &dyn Adjudicator,
) -> Result<GameRecord, HarnessError> {
    let mut board = Board::startpos();
    let mut history = vec![board.position_key()];
    let mut moves = Vec::new();
    let mut material_trace = vec![trace_entry(&board)];
    let mut players = [white.player(seed, Color::White), black.player(seed, Color::Black)];

    let (outcome, termination, status) = loop {
        let status = game_status(&board, &history);
        match status {
            GameStatus::Ongoing => {}
            GameStatus::Checkmate { winner } => break (Outcome::winner(winner), Termination::Checkmate, status),
            GameStatus::Stalemate => break (Outcome::Draw, Termination::Stalemate, status),
            _ => break (Outcome::Draw, Termination::DrawRule, status),
        }
        if moves.len() as u32 >= 2 * max_fullmoves {
            break (
                adjudicator.adjudicate(&board),
                Termination::Adjudicated { after_fullmoves: max_fullmoves },
                status,
            );
        }
        let mv = players[board.side_to_move().index()].choose(&board, &history)?;
        board = board.apply_move(mv).map_err(|e| HarnessError::Replay(e.to_string()))?;
        history.push(board.position_key());
        material_trace.push(trace_entry(&board));
        moves.push(mv.to_string());
    };

    Ok(GameRecord {
        index: 0,
        white_id: white.spec.id.clone(),
        black_id: black.spec.id.clone(),
        seed,
        moves,
        material_trace,
        outcome,
        termination,
        final_status: status.name().to_string(),
        final_fen: emit_fen(&board),
    })
}
