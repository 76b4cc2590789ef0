use super::types::{Color, Move, Piece, PieceKind, Square};
use super::ChessError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CastlingRights {
    pub white_kingside: bool,
    pub white_queenside: bool,
    pub black_kingside: bool,
    pub black_queenside: bool,
}

impl CastlingRights {
    pub const ALL: CastlingRights = CastlingRights {
        white_kingside: true,
        white_queenside: true,
        black_kingside: true,
        black_queenside: true,
    };

    pub fn kingside(&self, color: Color) -> bool {
        match color {
            Color::White => self.white_kingside,
            Color::Black => self.black_kingside,
        }
    }

    pub fn queenside(&self, color: Color) -> bool {
        match color {
            Color::White => self.white_queenside,
            Color::Black => self.black_queenside,
        }
    }

    pub fn is_empty(&self) -> bool {
        !(self.white_kingside || self.white_queenside || self.black_kingside || self.black_queenside)
    }

    fn clear_color(&mut self, color: Color) {
        match color {
            Color::White => {
                self.white_kingside = false;
                self.white_queenside = false;
            }
            Color::Black => {
                self.black_kingside = false;
                self.black_queenside = false;
            }
        }
    }

    /// Drops any right whose rook or king home square is `sq`.
    fn touch(&mut self, sq: Square) {
        match sq.index() {
            0 => self.white_queenside = false,
            7 => self.white_kingside = false,
            4 => self.clear_color(Color::White),
            56 => self.black_queenside = false,
            63 => self.black_kingside = false,
            60 => self.clear_color(Color::Black),
            _ => {}
        }
    }
}

/// A complete chess position. Values are immutable once constructed; every
/// transition returns a new board.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Board {
    placement: [Option<Piece>; 64],
    side_to_move: Color,
    castling: CastlingRights,
    en_passant: Option<Square>,
    halfmove_clock: u32,
    fullmove_number: u32,
    kings: [Square; 2],
}

/// Raw fields of a board before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoardParts {
    pub placement: [Option<Piece>; 64],
    pub side_to_move: Color,
    pub castling: CastlingRights,
    pub en_passant: Option<Square>,
    pub halfmove_clock: u32,
    pub fullmove_number: u32,
}

/// Which board field an invariant violation concerns, numbered like FEN fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum BoardField {
    Placement = 0,
    Castling = 2,
    EnPassant = 3,
    Fullmove = 5,
}

impl Board {
    pub fn startpos() -> Board {
        super::fen::parse_fen(super::fen::STARTPOS).expect("start position is valid")
    }

    pub fn from_parts(parts: BoardParts) -> Result<Board, ChessError> {
        Board::validate(parts).map_err(|(field, reason)| ChessError::InvalidFen {
            field: field as usize,
            reason,
        })
    }

    pub(crate) fn validate(parts: BoardParts) -> Result<Board, (BoardField, String)> {
        let mut kings: [Option<Square>; 2] = [None, None];
        for sq in Square::all() {
            let Some(p) = parts.placement[sq.index()] else { continue };
            if p.kind == PieceKind::Pawn && (sq.rank() == 0 || sq.rank() == 7) {
                return Err((BoardField::Placement, format!("pawn on back rank at {sq}")));
            }
            if p.kind == PieceKind::King {
                if kings[p.color.index()].is_some() {
                    return Err((BoardField::Placement, format!("more than one {} king", p.color.name())));
                }
                kings[p.color.index()] = Some(sq);
            }
        }
        let (Some(wk), Some(bk)) = (kings[0], kings[1]) else {
            return Err((BoardField::Placement, "missing king".into()));
        };

        let c = parts.castling;
        let has = |sq: u8, piece: Piece| parts.placement[sq as usize] == Some(piece);
        let wk_home = has(4, Piece::new(Color::White, PieceKind::King));
        let bk_home = has(60, Piece::new(Color::Black, PieceKind::King));
        let white_rook = Piece::new(Color::White, PieceKind::Rook);
        let black_rook = Piece::new(Color::Black, PieceKind::Rook);
        if (c.white_kingside && !(wk_home && has(7, white_rook)))
            || (c.white_queenside && !(wk_home && has(0, white_rook)))
            || (c.black_kingside && !(bk_home && has(63, black_rook)))
            || (c.black_queenside && !(bk_home && has(56, black_rook)))
        {
            return Err((BoardField::Castling, "castling right without king and rook on home squares".into()));
        }

        if let Some(ep) = parts.en_passant {
            // The square behind a pawn that just made a double push.
            let (rank, pawn_rank, pawn_color) = match parts.side_to_move {
                Color::White => (5, 4, Color::Black),
                Color::Black => (2, 3, Color::White),
            };
            if ep.rank() != rank
                || parts.placement[ep.index()].is_some()
                || parts.placement[Square::from_coords(ep.file(), pawn_rank).index()]
                    != Some(Piece::new(pawn_color, PieceKind::Pawn))
            {
                return Err((BoardField::EnPassant, format!("inconsistent en passant square {ep}")));
            }
        }

        if parts.fullmove_number == 0 {
            return Err((BoardField::Fullmove, "fullmove number must be at least 1".into()));
        }

        let board = Board {
            placement: parts.placement,
            side_to_move: parts.side_to_move,
            castling: parts.castling,
            en_passant: parts.en_passant,
            halfmove_clock: parts.halfmove_clock,
            fullmove_number: parts.fullmove_number,
            kings: [wk, bk],
        };
        let waiting = board.side_to_move.opposite();
        if board.is_attacked(board.king_square(waiting), board.side_to_move) {
            return Err((BoardField::Placement, "side not to move is in check".into()));
        }
        Ok(board)
    }

    pub fn to_parts(&self) -> BoardParts {
        BoardParts {
            placement: self.placement,
            side_to_move: self.side_to_move,
            castling: self.castling,
            en_passant: self.en_passant,
            halfmove_clock: self.halfmove_clock,
            fullmove_number: self.fullmove_number,
        }
    }

    #[inline]
    pub fn piece_at(&self, sq: Square) -> Option<Piece> {
        self.placement[sq.index()]
    }

    pub fn placement(&self) -> &[Option<Piece>; 64] {
        &self.placement
    }

    #[inline]
    pub fn side_to_move(&self) -> Color {
        self.side_to_move
    }

    pub fn castling(&self) -> CastlingRights {
        self.castling
    }

    pub fn en_passant(&self) -> Option<Square> {
        self.en_passant
    }

    pub fn halfmove_clock(&self) -> u32 {
        self.halfmove_clock
    }

    pub fn fullmove_number(&self) -> u32 {
        self.fullmove_number
    }

    #[inline]
    pub fn king_square(&self, color: Color) -> Square {
        self.kings[color.index()]
    }

    pub fn pieces(&self) -> impl Iterator<Item = (Square, Piece)> + '_ {
        Square::all().filter_map(move |sq| self.placement[sq.index()].map(|p| (sq, p)))
    }

    pub fn in_check(&self) -> bool {
        self.is_attacked(self.king_square(self.side_to_move), self.side_to_move.opposite())
    }

    /// Whether any piece of `by` attacks `target`.
    pub fn is_attacked(&self, target: Square, by: Color) -> bool {
        let is = |sq: Option<Square>, kinds: &[PieceKind]| {
            sq.and_then(|s| self.placement[s.index()])
                .is_some_and(|p| p.color == by && kinds.contains(&p.kind))
        };
        // A pawn of `by` attacks target from one rank behind (from its own view).
        let pawn_dr = match by {
            Color::White => -1,
            Color::Black => 1,
        };
        if is(target.offset(-1, pawn_dr), &[PieceKind::Pawn]) || is(target.offset(1, pawn_dr), &[PieceKind::Pawn]) {
            return true;
        }
        if KNIGHT_STEPS.iter().any(|&(df, dr)| is(target.offset(df, dr), &[PieceKind::Knight])) {
            return true;
        }
        if KING_STEPS.iter().any(|&(df, dr)| is(target.offset(df, dr), &[PieceKind::King])) {
            return true;
        }
        for (dirs, kinds) in [
            (&ROOK_DIRS, [PieceKind::Rook, PieceKind::Queen]),
            (&BISHOP_DIRS, [PieceKind::Bishop, PieceKind::Queen]),
        ] {
            for &(df, dr) in dirs.iter() {
                let mut cur = target;
                while let Some(next) = cur.offset(df, dr) {
                    if let Some(p) = self.placement[next.index()] {
                        if p.color == by && kinds.contains(&p.kind) {
                            return true;
                        }
                        break;
                    }
                    cur = next;
                }
            }
        }
        false
    }

    /// Plays a move assumed to be at least pseudo-legal for this board.
    pub(crate) fn play_unchecked(&self, mv: Move) -> Board {
        let mut next = self.clone();
        let mover = self.side_to_move;
        let piece = self.placement[mv.from.index()].expect("move from an occupied square");
        let mut captured = self.placement[mv.to.index()].is_some();

        next.placement[mv.from.index()] = None;
        if piece.kind == PieceKind::Pawn && Some(mv.to) == self.en_passant && !captured {
            let victim = Square::from_coords(mv.to.file(), mv.from.rank());
            next.placement[victim.index()] = None;
            captured = true;
        }
        next.placement[mv.to.index()] = Some(match mv.promotion {
            Some(kind) => Piece::new(mover, kind),
            None => piece,
        });

        if piece.kind == PieceKind::King {
            next.kings[mover.index()] = mv.to;
            if mv.from.file() == 4 && (mv.to.file() == 6 || mv.to.file() == 2) {
                let rank = mv.from.rank();
                let (rook_from, rook_to) = if mv.to.file() == 6 { (7, 5) } else { (0, 3) };
                let rf = Square::from_coords(rook_from, rank);
                let rt = Square::from_coords(rook_to, rank);
                next.placement[rt.index()] = next.placement[rf.index()].take();
            }
        }

        next.castling.touch(mv.from);
        next.castling.touch(mv.to);

        next.en_passant = None;
        if piece.kind == PieceKind::Pawn && mv.from.rank().abs_diff(mv.to.rank()) == 2 {
            next.en_passant = Some(Square::from_coords(mv.from.file(), (mv.from.rank() + mv.to.rank()) / 2));
        }

        next.halfmove_clock = if piece.kind == PieceKind::Pawn || captured { 0 } else { self.halfmove_clock + 1 };
        if mover == Color::Black {
            next.fullmove_number += 1;
        }
        next.side_to_move = mover.opposite();
        next
    }

    /// Plays `mv` if it is legal, returning the successor position.
    pub fn apply_move(&self, mv: Move) -> Result<Board, ChessError> {
        if self.legal_moves().contains(&mv) {
            Ok(self.play_unchecked(mv))
        } else {
            Err(ChessError::IllegalMove(mv.to_string()))
        }
    }

    /// Parses long-algebraic text and applies it.
    pub fn apply_uci(&self, text: &str) -> Result<Board, ChessError> {
        let mv = Move::parse(text).ok_or_else(|| ChessError::IllegalMove(text.to_string()))?;
        self.apply_move(mv)
    }
}

pub(crate) const KNIGHT_STEPS: [(i8, i8); 8] = [(1, 2), (2, 1), (2, -1), (1, -2), (-1, -2), (-2, -1), (-2, 1), (-1, 2)];
pub(crate) const KING_STEPS: [(i8, i8); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];
pub(crate) const ROOK_DIRS: [(i8, i8); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
pub(crate) const BISHOP_DIRS: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chess::{emit_fen, parse_fen};

    #[test]
    fn double_push_sets_en_passant() {
        let b = Board::startpos().apply_uci("e2e4").unwrap();
        assert_eq!(emit_fen(&b), "rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq e3 0 1");
    }

    #[test]
    fn castling_moves_rook() {
        let b = parse_fen("4k3/8/8/8/8/8/8/4K2R w K - 0 1").unwrap();
        let after = b.apply_uci("e1g1").unwrap();
        assert_eq!(emit_fen(&after), "4k3/8/8/8/8/8/8/5RK1 b - - 1 1");
    }

    #[test]
    fn promotion_replaces_pawn() {
        let b = parse_fen("k7/4P3/8/8/8/8/8/4K3 w - - 0 1").unwrap();
        let after = b.apply_uci("e7e8q").unwrap();
        assert_eq!(after.piece_at(Square::parse("e8").unwrap()), Some(Piece::new(Color::White, PieceKind::Queen)));
        assert_eq!(after.piece_at(Square::parse("e7").unwrap()), None);
    }

    #[test]
    fn en_passant_capture_removes_pawn() {
        let b = parse_fen("4k3/8/8/3pP3/8/8/8/4K3 w - d6 0 2").unwrap();
        let after = b.apply_uci("e5d6").unwrap();
        assert_eq!(emit_fen(&after), "4k3/8/3P4/8/8/8/8/4K3 b - - 0 2");
    }

    #[test]
    fn illegal_move_rejected_and_input_unchanged() {
        let b = Board::startpos();
        let copy = b.clone();
        assert!(matches!(b.apply_uci("e2e5"), Err(ChessError::IllegalMove(_))));
        assert_eq!(b, copy);
    }

    #[test]
    fn rook_capture_drops_castling_right() {
        let b = parse_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1").unwrap();
        let after = b.apply_uci("a1a8").unwrap();
        assert_eq!(emit_fen(&after), "R3k2r/8/8/8/8/8/8/4K2R b Kk - 0 1");
    }
}
