use super::board::{Board, BISHOP_DIRS, KING_STEPS, KNIGHT_STEPS, ROOK_DIRS};
use super::types::{Color, Move, PieceKind, Square};

impl Board {
    /// All strictly legal moves, sorted by canonical move text.
    pub fn legal_moves(&self) -> Vec<Move> {
        let mut moves = Vec::with_capacity(48);
        self.generate_legal(&mut moves);
        moves.sort_unstable();
        moves
    }

    /// Legal moves in generation order (unsorted).
    pub(crate) fn generate_legal(&self, out: &mut Vec<Move>) {
        let start = out.len();
        self.generate_pseudo(out);
        let mover = self.side_to_move();
        let mut keep = start;
        for i in start..out.len() {
            let mv = out[i];
            let next = self.play_unchecked(mv);
            if !next.is_attacked(next.king_square(mover), mover.opposite()) {
                out[keep] = mv;
                keep += 1;
            }
        }
        out.truncate(keep);
    }

    /// Whether the side to move has at least one legal move.
    pub fn has_legal_move(&self) -> bool {
        let mut pseudo = Vec::with_capacity(48);
        self.generate_pseudo(&mut pseudo);
        let mover = self.side_to_move();
        pseudo.into_iter().any(|mv| {
            let next = self.play_unchecked(mv);
            !next.is_attacked(next.king_square(mover), mover.opposite())
        })
    }

    fn generate_pseudo(&self, out: &mut Vec<Move>) {
        let us = self.side_to_move();
        for (from, piece) in self.pieces() {
            if piece.color != us {
                continue;
            }
            match piece.kind {
                PieceKind::Pawn => self.pawn_moves(from, us, out),
                PieceKind::Knight => self.step_moves(from, us, &KNIGHT_STEPS, out),
                PieceKind::King => {
                    self.step_moves(from, us, &KING_STEPS, out);
                    self.castling_moves(from, us, out);
                }
                PieceKind::Bishop => self.slide_moves(from, us, &BISHOP_DIRS, out),
                PieceKind::Rook => self.slide_moves(from, us, &ROOK_DIRS, out),
                PieceKind::Queen => {
                    self.slide_moves(from, us, &BISHOP_DIRS, out);
                    self.slide_moves(from, us, &ROOK_DIRS, out);
                }
            }
        }
    }

    fn pawn_moves(&self, from: Square, us: Color, out: &mut Vec<Move>) {
        let (dr, start_rank, last_rank) = match us {
            Color::White => (1i8, 1u8, 7u8),
            Color::Black => (-1, 6, 0),
        };
        let push = |to: Square, out: &mut Vec<Move>| {
            if to.rank() == last_rank {
                for kind in PieceKind::PROMOTIONS {
                    out.push(Move::new(from, to, Some(kind)));
                }
            } else {
                out.push(Move::new(from, to, None));
            }
        };
        if let Some(one) = from.offset(0, dr) {
            if self.piece_at(one).is_none() {
                push(one, out);
                if from.rank() == start_rank {
                    let two = one.offset(0, dr).expect("double push stays on board");
                    if self.piece_at(two).is_none() {
                        out.push(Move::new(from, two, None));
                    }
                }
            }
        }
        for df in [-1, 1] {
            let Some(to) = from.offset(df, dr) else { continue };
            match self.piece_at(to) {
                Some(p) if p.color != us => push(to, out),
                None if self.en_passant() == Some(to) => out.push(Move::new(from, to, None)),
                _ => {}
            }
        }
    }

    fn step_moves(&self, from: Square, us: Color, steps: &[(i8, i8)], out: &mut Vec<Move>) {
        for &(df, dr) in steps {
            if let Some(to) = from.offset(df, dr) {
                if self.piece_at(to).is_none_or(|p| p.color != us) {
                    out.push(Move::new(from, to, None));
                }
            }
        }
    }

    fn slide_moves(&self, from: Square, us: Color, dirs: &[(i8, i8)], out: &mut Vec<Move>) {
        for &(df, dr) in dirs {
            let mut cur = from;
            while let Some(to) = cur.offset(df, dr) {
                match self.piece_at(to) {
                    None => out.push(Move::new(from, to, None)),
                    Some(p) => {
                        if p.color != us {
                            out.push(Move::new(from, to, None));
                        }
                        break;
                    }
                }
                cur = to;
            }
        }
    }

    fn castling_moves(&self, from: Square, us: Color, out: &mut Vec<Move>) {
        let rights = self.castling();
        let rank = match us {
            Color::White => 0,
            Color::Black => 7,
        };
        if from != Square::from_coords(4, rank) {
            return;
        }
        let them = us.opposite();
        let empty = |files: &[u8]| files.iter().all(|&f| self.piece_at(Square::from_coords(f, rank)).is_none());
        let safe = |files: &[u8]| files.iter().all(|&f| !self.is_attacked(Square::from_coords(f, rank), them));
        if rights.kingside(us) && empty(&[5, 6]) && safe(&[4, 5, 6]) {
            out.push(Move::new(from, Square::from_coords(6, rank), None));
        }
        if rights.queenside(us) && empty(&[1, 2, 3]) && safe(&[4, 3, 2]) {
            out.push(Move::new(from, Square::from_coords(2, rank), None));
        }
    }
}

/// Leaf count of the legal move tree at exactly `depth` plies.
pub fn perft(board: &Board, depth: u32) -> u64 {
    if depth == 0 {
        return 1;
    }
    let mut moves = Vec::with_capacity(48);
    board.generate_legal(&mut moves);
    if depth == 1 {
        return moves.len() as u64;
    }
    moves.iter().map(|&mv| perft(&board.play_unchecked(mv), depth - 1)).sum()
}

/// Per-root-move leaf counts, sorted by move text.
pub fn perft_divide(board: &Board, depth: u32) -> Vec<(Move, u64)> {
    if depth == 0 {
        return Vec::new();
    }
    board
        .legal_moves()
        .into_iter()
        .map(|mv| (mv, perft(&board.play_unchecked(mv), depth - 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chess::parse_fen;

    fn texts(b: &Board) -> Vec<String> {
        b.legal_moves().iter().map(Move::to_string).collect()
    }

    #[test]
    fn startpos_has_twenty_sorted_moves() {
        let moves = texts(&Board::startpos());
        assert_eq!(moves.len(), 20);
        let mut sorted = moves.clone();
        sorted.sort();
        assert_eq!(moves, sorted);
        assert_eq!(moves[0], "a2a3");
    }

    #[test]
    fn castling_generated() {
        let b = parse_fen("4k3/8/8/8/8/8/8/4K2R w K - 0 1").unwrap();
        assert!(texts(&b).contains(&"e1g1".to_string()));
    }

    #[test]
    fn no_castling_through_check() {
        let b = parse_fen("4kr2/8/8/8/8/8/8/4K2R w K - 0 1").unwrap();
        assert!(!texts(&b).contains(&"e1g1".to_string()));
        let b = parse_fen("4k3/8/8/8/8/8/8/R3K3 w Q - 0 1").unwrap();
        assert!(texts(&b).contains(&"e1c1".to_string()));
        // b1 attacked does not prevent queenside castling, only occupancy does.
        let b = parse_fen("1r2k3/8/8/8/8/8/8/R3K3 w Q - 0 1").unwrap();
        assert!(texts(&b).contains(&"e1c1".to_string()));
    }

    #[test]
    fn stalemate_has_no_moves() {
        let b = parse_fen("7k/5Q2/6K1/8/8/8/8/8 b - - 0 1").unwrap();
        assert!(b.legal_moves().is_empty());
        assert!(!b.has_legal_move());
        assert!(!b.in_check());
    }

    #[test]
    fn underpromotions_generated() {
        let b = parse_fen("k7/4P3/8/8/8/8/8/4K3 w - - 0 1").unwrap();
        let moves = texts(&b);
        for m in ["e7e8b", "e7e8n", "e7e8q", "e7e8r"] {
            assert!(moves.contains(&m.to_string()), "{m}");
        }
    }

    #[test]
    fn pinned_en_passant_is_illegal() {
        // Capturing en passant would expose the king on the fifth rank.
        let b = parse_fen("8/8/8/K2pP2r/8/8/8/7k w - d6 0 1").unwrap();
        assert!(!texts(&b).contains(&"e5d6".to_string()));
    }

    #[test]
    fn perft_reference_positions() {
        let start = Board::startpos();
        assert_eq!(perft(&start, 0), 1);
        assert_eq!(perft(&start, 1), 20);
        assert_eq!(perft(&start, 2), 400);
        assert_eq!(perft(&start, 3), 8902);
        // "Kiwipete" and position 3 from the published perft tables.
        let kiwi = parse_fen("r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1").unwrap();
        assert_eq!(perft(&kiwi, 1), 48);
        assert_eq!(perft(&kiwi, 2), 2039);
        assert_eq!(perft(&kiwi, 3), 97862);
        let p3 = parse_fen("8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1").unwrap();
        assert_eq!(perft(&p3, 4), 43238);
        let p4 = parse_fen("r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1").unwrap();
        assert_eq!(perft(&p4, 3), 9467);
        let p5 = parse_fen("rnbq1k1r/pp1Pbppp/2p5/8/2B5/8/PPP1NnPP/RNBQK2R w KQ - 1 8").unwrap();
        assert_eq!(perft(&p5, 3), 62379);
    }

    #[test]
    fn divide_sums_to_perft() {
        let b = Board::startpos();
        let total: u64 = perft_divide(&b, 3).iter().map(|(_, n)| n).sum();
        assert_eq!(total, perft(&b, 3));
    }
}
