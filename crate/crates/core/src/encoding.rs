//! Bit-plane encodings of boards and move pairs, and material scoring.
//!
//! Cell layout: square (file f, rank r) with zero-based coordinates maps to
//! row `r`, column `f`. Planes are stored row-major with the channel index
//! varying fastest, i.e. `(row * 8 + col) * channels + channel`.
//!
//! Channels of one state: 0..=5 hold +1 for white pawn, knight, bishop, rook,
//! queen, king; 6..=11 hold -1 for the black pieces in the same kind order;
//! 12 is the turn plane (+1 everywhere when white is to move, -1 for black).

use crate::chess::{Board, Color, Move, PieceKind};

pub const STATE_CHANNELS: usize = 13;
pub const PAIR_CHANNELS: usize = 2 * STATE_CHANNELS;
pub const TURN_CHANNEL: usize = 12;
pub const STATE_LEN: usize = 64 * STATE_CHANNELS;
pub const PAIR_LEN: usize = 64 * PAIR_CHANNELS;

/// Header line of the tensor dump format.
pub const DUMP_HEADER: &[u8] = b"8 8 26\n";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodingError {
    #[error("no legal move links the two boards")]
    IllegalTransition,
    #[error("malformed tensor dump: {0}")]
    BadDump(String),
}

#[inline]
pub fn plane_index(row: usize, col: usize, channel: usize, channels: usize) -> usize {
    (row * 8 + col) * channels + channel
}

/// Piece channel (0..12) for a (color, kind) pair.
#[inline]
pub fn piece_channel(color: Color, kind: PieceKind) -> usize {
    color.index() * 6 + kind.index()
}

#[derive(Clone, PartialEq, Eq)]
pub struct StatePlanes {
    values: [i8; STATE_LEN],
}

impl StatePlanes {
    pub fn get(&self, row: usize, col: usize, channel: usize) -> i8 {
        self.values[plane_index(row, col, channel, STATE_CHANNELS)]
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }
}

impl std::fmt::Debug for StatePlanes {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StatePlanes").field("nonzero", &self.values.iter().filter(|v| **v != 0).count()).finish()
    }
}

/// The stacked 8x8x26 tensor: pre-move state in channels 0..13, post-move
/// state in channels 13..26.
#[derive(Clone, PartialEq, Eq)]
pub struct MoveTensor {
    values: Box<[i8; PAIR_LEN]>,
}

impl MoveTensor {
    pub fn get(&self, row: usize, col: usize, channel: usize) -> i8 {
        self.values[plane_index(row, col, channel, PAIR_CHANNELS)]
    }

    pub fn values(&self) -> &[i8] {
        &self.values[..]
    }

    /// Channels `offset..offset + 13` as a state encoding.
    pub fn half(&self, second: bool) -> StatePlanes {
        let offset = if second { STATE_CHANNELS } else { 0 };
        let mut values = [0i8; STATE_LEN];
        for cell in 0..64 {
            for ch in 0..STATE_CHANNELS {
                values[cell * STATE_CHANNELS + ch] = self.values[cell * PAIR_CHANNELS + offset + ch];
            }
        }
        StatePlanes { values }
    }

    pub fn to_f32(&self) -> Vec<f32> {
        self.values.iter().map(|&v| v as f32).collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(|&v| v as f64).collect()
    }

    /// Header line `8 8 26` followed by 1664 little-endian float32 values.
    pub fn to_dump(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(DUMP_HEADER.len() + PAIR_LEN * 4);
        out.extend_from_slice(DUMP_HEADER);
        for &v in self.values.iter() {
            out.extend_from_slice(&(v as f32).to_le_bytes());
        }
        out
    }

    /// Parses a dump back into raw floats. Values outside {-1, 0, 1} are kept;
    /// use [`MoveTensor::from_dump`] when a valid encoding is required.
    pub fn dump_to_floats(bytes: &[u8]) -> Result<Vec<f32>, EncodingError> {
        let body = bytes
            .strip_prefix(DUMP_HEADER)
            .ok_or_else(|| EncodingError::BadDump("missing `8 8 26` header".into()))?;
        if body.len() != PAIR_LEN * 4 {
            return Err(EncodingError::BadDump(format!("expected {} payload bytes, found {}", PAIR_LEN * 4, body.len())));
        }
        Ok(body.chunks_exact(4).map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]])).collect())
    }

    pub fn from_dump(bytes: &[u8]) -> Result<MoveTensor, EncodingError> {
        let floats = MoveTensor::dump_to_floats(bytes)?;
        let mut values = Box::new([0i8; PAIR_LEN]);
        for (dst, &v) in values.iter_mut().zip(&floats) {
            *dst = match v {
                1.0 => 1,
                -1.0 => -1,
                0.0 => 0,
                other => return Err(EncodingError::BadDump(format!("entry {other} outside {{-1, 0, 1}}"))),
            };
        }
        Ok(MoveTensor { values })
    }
}

impl std::fmt::Debug for MoveTensor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MoveTensor").field("nonzero", &self.values.iter().filter(|v| **v != 0).count()).finish()
    }
}

pub fn encode_state(board: &Board) -> StatePlanes {
    let mut values = [0i8; STATE_LEN];
    for (sq, piece) in board.pieces() {
        let sign = match piece.color {
            Color::White => 1,
            Color::Black => -1,
        };
        let ch = piece_channel(piece.color, piece.kind);
        values[plane_index(sq.rank() as usize, sq.file() as usize, ch, STATE_CHANNELS)] = sign;
    }
    let turn = match board.side_to_move() {
        Color::White => 1,
        Color::Black => -1,
    };
    for cell in 0..64 {
        values[cell * STATE_CHANNELS + TURN_CHANNEL] = turn;
    }
    StatePlanes { values }
}

/// Stacks two state encodings without checking that a move links them.
pub fn encode_move_pair(before: &Board, after: &Board) -> MoveTensor {
    let pre = encode_state(before);
    let post = encode_state(after);
    let mut values = Box::new([0i8; PAIR_LEN]);
    for cell in 0..64 {
        let dst = cell * PAIR_CHANNELS;
        let src = cell * STATE_CHANNELS;
        values[dst..dst + STATE_CHANNELS].copy_from_slice(&pre.values[src..src + STATE_CHANNELS]);
        values[dst + STATE_CHANNELS..dst + PAIR_CHANNELS].copy_from_slice(&post.values[src..src + STATE_CHANNELS]);
    }
    MoveTensor { values }
}

/// The legal move leading from `before` to `after`, if one exists. Boards are
/// compared on placement, side to move, castling rights and en-passant square.
pub fn linking_move(before: &Board, after: &Board) -> Option<Move> {
    let target = after.position_key();
    before.legal_moves().into_iter().find(|&mv| {
        let next = before.play_unchecked(mv);
        next.position_key() == target && next.placement() == after.placement()
    })
}

/// Like [`encode_move_pair`], rejecting pairs no legal move connects.
pub fn encode_move_pair_checked(before: &Board, after: &Board) -> Result<MoveTensor, EncodingError> {
    linking_move(before, after).ok_or(EncodingError::IllegalTransition)?;
    Ok(encode_move_pair(before, after))
}

/// Plays `mv` and encodes the resulting pair.
pub fn encode_move(before: &Board, mv: Move) -> Result<(Board, MoveTensor), crate::chess::ChessError> {
    let after = before.apply_move(mv)?;
    let tensor = encode_move_pair(before, &after);
    Ok((after, tensor))
}

/// Queen 9, rook 5, knight 3, bishop 3, pawn 1, king 0.
pub const fn material_value(kind: PieceKind) -> u32 {
    match kind {
        PieceKind::Queen => 9,
        PieceKind::Rook => 5,
        PieceKind::Knight => 3,
        PieceKind::Bishop => 3,
        PieceKind::Pawn => 1,
        PieceKind::King => 0,
    }
}

pub fn material_score(board: &Board, color: Color) -> u32 {
    board.pieces().filter(|(_, p)| p.color == color).map(|(_, p)| material_value(p.kind)).sum()
}
