use std::sync::OnceLock;

use super::board::Board;
use super::types::{Color, PieceKind};

/// Repetition key: placement, side to move, castling rights and en-passant
/// square. Clocks are excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionKey(pub u64);

struct Zobrist {
    pieces: [[u64; 64]; 12],
    black_to_move: u64,
    castling: [u64; 4],
    en_passant: [u64; 64],
}

fn zobrist() -> &'static Zobrist {
    static TABLE: OnceLock<Zobrist> = OnceLock::new();
    TABLE.get_or_init(|| {
        // splitmix64 with a fixed seed keeps keys stable across runs.
        let mut state = 0x5EED_C4E5_5B0A_2D11u64;
        let mut next = || {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        };
        let mut pieces = [[0u64; 64]; 12];
        for row in pieces.iter_mut() {
            for v in row.iter_mut() {
                *v = next();
            }
        }
        let black_to_move = next();
        let castling = [next(), next(), next(), next()];
        let mut en_passant = [0u64; 64];
        for v in en_passant.iter_mut() {
            *v = next();
        }
        Zobrist { pieces, black_to_move, castling, en_passant }
    })
}

impl Board {
    pub fn position_key(&self) -> PositionKey {
        let z = zobrist();
        let mut key = 0u64;
        for (sq, p) in self.pieces() {
            key ^= z.pieces[p.color.index() * 6 + p.kind.index()][sq.index()];
        }
        if self.side_to_move() == Color::Black {
            key ^= z.black_to_move;
        }
        let c = self.castling();
        for (i, on) in [c.white_kingside, c.white_queenside, c.black_kingside, c.black_queenside].into_iter().enumerate() {
            if on {
                key ^= z.castling[i];
            }
        }
        if let Some(ep) = self.en_passant() {
            key ^= z.en_passant[ep.index()];
        }
        PositionKey(key)
    }

    /// Neither side can possibly deliver mate: bare kings, a single minor
    /// piece, or only bishops all standing on one square color.
    pub fn insufficient_material(&self) -> bool {
        let mut minors = 0;
        let mut bishop_colors = [false; 2];
        let mut knights = 0;
        for (sq, p) in self.pieces() {
            match p.kind {
                PieceKind::King => {}
                PieceKind::Pawn | PieceKind::Rook | PieceKind::Queen => return false,
                PieceKind::Knight => {
                    minors += 1;
                    knights += 1;
                }
                PieceKind::Bishop => {
                    minors += 1;
                    bishop_colors[sq.is_light() as usize] = true;
                }
            }
        }
        minors <= 1 || (knights == 0 && !(bishop_colors[0] && bishop_colors[1]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameStatus {
    Ongoing,
    Checkmate { winner: Color },
    Stalemate,
    DrawFiftyMove,
    DrawThreefold,
    DrawInsufficientMaterial,
}

impl GameStatus {
    pub fn is_over(self) -> bool {
        self != GameStatus::Ongoing
    }

    pub fn is_draw(self) -> bool {
        matches!(
            self,
            GameStatus::Stalemate | GameStatus::DrawFiftyMove | GameStatus::DrawThreefold | GameStatus::DrawInsufficientMaterial
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            GameStatus::Ongoing => "ongoing",
            GameStatus::Checkmate { .. } => "checkmate",
            GameStatus::Stalemate => "stalemate",
            GameStatus::DrawFiftyMove => "draw-fifty-move",
            GameStatus::DrawThreefold => "draw-threefold",
            GameStatus::DrawInsufficientMaterial => "draw-insufficient-material",
        }
    }
}

/// Status of `board` given the repetition keys of the game so far. `history`
/// is expected to include the current position's key.
pub fn game_status(board: &Board, history: &[PositionKey]) -> GameStatus {
    if !board.has_legal_move() {
        return if board.in_check() {
            GameStatus::Checkmate { winner: board.side_to_move().opposite() }
        } else {
            GameStatus::Stalemate
        };
    }
    if board.halfmove_clock() >= 100 {
        return GameStatus::DrawFiftyMove;
    }
    let key = board.position_key();
    if history.iter().filter(|&&k| k == key).count() >= 3 {
        return GameStatus::DrawThreefold;
    }
    if board.insufficient_material() {
        return GameStatus::DrawInsufficientMaterial;
    }
    GameStatus::Ongoing
}
