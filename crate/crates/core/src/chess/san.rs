use super::board::Board;
use super::types::{Move, PieceKind, Square};

/// Strips check, mate and annotation glyphs from the end of a SAN token.
/// Returns the bare move text and the annotation glyph (`!`, `?!`, ...), if any.
pub fn split_annotation(token: &str) -> (&str, Option<&str>) {
    let bare = token.trim_end_matches(['!', '?']);
    let glyph = &token[bare.len()..];
    let bare = bare.trim_end_matches(['+', '#']);
    (bare, (!glyph.is_empty()).then_some(glyph))
}

/// Resolves a SAN token against the legal moves of `board`. `None` when the
/// token is malformed, illegal or ambiguous.
pub fn resolve_san(board: &Board, token: &str) -> Option<Move> {
    let (san, _) = split_annotation(token);
    let legal = board.legal_moves();

    if matches!(san, "O-O" | "0-0" | "O-O-O" | "0-0-0") {
        let king = board.king_square(board.side_to_move());
        let file = if san.len() == 3 { 6 } else { 2 };
        return legal.into_iter().find(|m| {
            m.from == king && m.to == Square::from_coords(file, king.rank()) && m.from.file() == 4
        });
    }

    let bytes = san.as_bytes();
    if bytes.len() < 2 || !san.is_ascii() {
        return None;
    }
    let (kind, mut rest) = match bytes[0] {
        b'N' => (PieceKind::Knight, &san[1..]),
        b'B' => (PieceKind::Bishop, &san[1..]),
        b'R' => (PieceKind::Rook, &san[1..]),
        b'Q' => (PieceKind::Queen, &san[1..]),
        b'K' => (PieceKind::King, &san[1..]),
        _ => (PieceKind::Pawn, san),
    };

    let mut promotion = None;
    if kind == PieceKind::Pawn {
        if let Some(last) = rest.chars().last() {
            if let Some(k) = "NBRQ".contains(last).then(|| PieceKind::from_letter(last)).flatten() {
                promotion = Some(k);
                rest = rest[..rest.len() - 1].trim_end_matches('=');
            }
        }
    }
    if rest.len() < 2 {
        return None;
    }
    let to = Square::parse(&rest[rest.len() - 2..])?;
    let prefix = rest[..rest.len() - 2].trim_end_matches('x');
    let mut from_file = None;
    let mut from_rank = None;
    for c in prefix.chars() {
        match c {
            'a'..='h' if from_file.is_none() && from_rank.is_none() => from_file = Some(c as u8 - b'a'),
            '1'..='8' if from_rank.is_none() => from_rank = Some(c as u8 - b'1'),
            _ => return None,
        }
    }

    let mut found = legal.into_iter().filter(|m| {
        board.piece_at(m.from).is_some_and(|p| p.kind == kind)
            && m.to == to
            && m.promotion == promotion
            && from_file.is_none_or(|f| m.from.file() == f)
            && from_rank.is_none_or(|r| m.from.rank() == r)
    });
    let first = found.next()?;
    found.next().is_none().then_some(first)
}

/// Standard algebraic notation for a legal move, with check/mate suffix.
pub fn to_san(board: &Board, mv: Move) -> String {
    let piece = board.piece_at(mv.from).expect("move from an occupied square");
    let mut out = String::new();
    let castle = piece.kind == PieceKind::King && mv.from.file().abs_diff(mv.to.file()) == 2;
    if castle {
        out.push_str(if mv.to.file() == 6 { "O-O" } else { "O-O-O" });
    } else {
        let capture = board.piece_at(mv.to).is_some()
            || (piece.kind == PieceKind::Pawn && mv.from.file() != mv.to.file());
        if piece.kind == PieceKind::Pawn {
            if capture {
                out.push((b'a' + mv.from.file()) as char);
            }
        } else {
            out.push(piece.kind.letter().to_ascii_uppercase());
            let rivals: Vec<Move> = board
                .legal_moves()
                .into_iter()
                .filter(|m| m.to == mv.to && m.from != mv.from && board.piece_at(m.from) == Some(piece))
                .collect();
            if !rivals.is_empty() {
                let same_file = rivals.iter().any(|m| m.from.file() == mv.from.file());
                let same_rank = rivals.iter().any(|m| m.from.rank() == mv.from.rank());
                if !same_file {
                    out.push((b'a' + mv.from.file()) as char);
                } else if !same_rank {
                    out.push((b'1' + mv.from.rank()) as char);
                } else {
                    out.push_str(&mv.from.to_string());
                }
            }
        }
        if capture {
            out.push('x');
        }
        out.push_str(&mv.to.to_string());
        if let Some(k) = mv.promotion {
            out.push('=');
            out.push(k.letter().to_ascii_uppercase());
        }
    }
    let next = board.play_unchecked(mv);
    if next.in_check() {
        out.push(if next.has_legal_move() { '+' } else { '#' });
    }
    out
}
