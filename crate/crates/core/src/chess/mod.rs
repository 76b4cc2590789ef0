//! Chess rules, position representation and notation (FEN, SAN, PGN,
//! long-algebraic move text).

mod board;
mod fen;
mod movegen;
mod pgn;
mod san;
mod status;
mod types;

pub use board::{Board, BoardParts, CastlingRights};
pub use fen::{emit_fen, parse_fen, STARTPOS};
pub use movegen::{perft, perft_divide};
pub use pgn::{parse_pgn, split_games, write_pgn, PgnGame, PgnMove};
pub use san::{resolve_san, split_annotation, to_san};
pub use status::{game_status, GameStatus, PositionKey};
pub use types::{Color, Move, Piece, PieceKind, Square};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChessError {
    #[error("invalid FEN (field {field}): {reason}")]
    InvalidFen { field: usize, reason: String },
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("unresolvable SAN '{san}' at move index {index}")]
    UnresolvableSan { index: usize, san: String },
    #[error("unterminated comment in PGN")]
    UnterminatedComment,
}

/// Accepts a FEN string or the alias `startpos`.
pub fn parse_position(text: &str) -> Result<Board, ChessError> {
    if text.trim() == "startpos" {
        Ok(Board::startpos())
    } else {
        parse_fen(text)
    }
}
