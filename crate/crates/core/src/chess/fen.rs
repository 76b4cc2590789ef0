use super::board::{Board, BoardField, BoardParts, CastlingRights};
use super::types::{Color, Piece, Square};
use super::ChessError;

pub const STARTPOS: &str = "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

fn invalid(field: usize, reason: impl Into<String>) -> ChessError {
    ChessError::InvalidFen { field, reason: reason.into() }
}

pub fn parse_fen(text: &str) -> Result<Board, ChessError> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 6 {
        return Err(invalid(fields.len().min(6), format!("expected 6 fields, found {}", fields.len())));
    }

    let mut placement = [None; 64];
    let ranks: Vec<&str> = fields[0].split('/').collect();
    if ranks.len() != 8 {
        return Err(invalid(0, format!("expected 8 ranks, found {}", ranks.len())));
    }
    for (i, row) in ranks.iter().enumerate() {
        let rank = 7 - i as u8;
        let mut file = 0u8;
        for c in row.chars() {
            if let Some(d) = c.to_digit(10) {
                if !(1..=8).contains(&d) {
                    return Err(invalid(0, format!("bad empty-square count '{c}'")));
                }
                file += d as u8;
            } else {
                let piece = Piece::from_fen_char(c).ok_or_else(|| invalid(0, format!("invalid piece letter '{c}'")))?;
                if file < 8 {
                    placement[Square::from_coords(file, rank).index()] = Some(piece);
                }
                file += 1;
            }
            if file > 8 {
                break;
            }
        }
        if file != 8 {
            return Err(invalid(0, format!("rank {} does not have length 8", rank + 1)));
        }
    }

    let side_to_move = match fields[1] {
        "w" => Color::White,
        "b" => Color::Black,
        other => return Err(invalid(1, format!("invalid side to move '{other}'"))),
    };

    let mut castling = CastlingRights::default();
    if fields[2] != "-" {
        for c in fields[2].chars() {
            let slot = match c {
                'K' => &mut castling.white_kingside,
                'Q' => &mut castling.white_queenside,
                'k' => &mut castling.black_kingside,
                'q' => &mut castling.black_queenside,
                _ => return Err(invalid(2, format!("invalid castling letter '{c}'"))),
            };
            if *slot {
                return Err(invalid(2, "duplicate castling right"));
            }
            *slot = true;
        }
    }

    let en_passant = match fields[3] {
        "-" => None,
        s => Some(Square::parse(s).ok_or_else(|| invalid(3, format!("invalid en passant square '{s}'")))?),
    };

    let halfmove_clock = fields[4].parse::<u32>().map_err(|_| invalid(4, "invalid halfmove clock"))?;
    let fullmove_number = fields[5].parse::<u32>().map_err(|_| invalid(5, "invalid fullmove number"))?;

    Board::validate(BoardParts { placement, side_to_move, castling, en_passant, halfmove_clock, fullmove_number })
        .map_err(|(field, reason): (BoardField, String)| invalid(field as usize, reason))
}

pub fn emit_fen(board: &Board) -> String {
    let mut out = String::with_capacity(90);
    for rank in (0..8u8).rev() {
        let mut empty = 0;
        for file in 0..8u8 {
            match board.piece_at(Square::from_coords(file, rank)) {
                Some(p) => {
                    if empty > 0 {
                        out.push(char::from(b'0' + empty));
                        empty = 0;
                    }
                    out.push(p.fen_char());
                }
                None => empty += 1,
            }
        }
        if empty > 0 {
            out.push(char::from(b'0' + empty));
        }
        if rank > 0 {
            out.push('/');
        }
    }
    out.push(' ');
    out.push(match board.side_to_move() {
        Color::White => 'w',
        Color::Black => 'b',
    });
    out.push(' ');
    let c = board.castling();
    if c.is_empty() {
        out.push('-');
    } else {
        for (on, ch) in [(c.white_kingside, 'K'), (c.white_queenside, 'Q'), (c.black_kingside, 'k'), (c.black_queenside, 'q')] {
            if on {
                out.push(ch);
            }
        }
    }
    out.push(' ');
    match board.en_passant() {
        Some(sq) => out.push_str(&sq.to_string()),
        None => out.push('-'),
    }
    out.push_str(&format!(" {} {}", board.halfmove_clock(), board.fullmove_number()));
    out
}

impl std::str::FromStr for Board {
    type Err = ChessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_fen(s)
    }
}

impl std::fmt::Display for Board {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&emit_fen(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chess::PieceKind;

    fn field_of(text: &str) -> usize {
        match parse_fen(text) {
            Err(ChessError::InvalidFen { field, .. }) => field,
            other => panic!("expected InvalidFen for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn startpos_parses() {
        let b = parse_fen(STARTPOS).unwrap();
        assert_eq!(b.side_to_move(), Color::White);
        assert_eq!(b.castling(), CastlingRights::ALL);
        assert_eq!(b.en_passant(), None);
        assert_eq!(b.pieces().count(), 32);
        assert_eq!(emit_fen(&b), STARTPOS);
    }

    #[test]
    fn three_piece_round_trip() {
        let text = "4k3/8/8/4P3/8/8/8/4K3 b - - 0 1";
        let b = parse_fen(text).unwrap();
        assert_eq!(b.pieces().count(), 3);
        assert_eq!(emit_fen(&b), text);
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(field_of("8/8/8/8/8/8/8/8 w - - 0 1"), 0);
        assert_eq!(field_of("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq -"), 4);
        assert_eq!(field_of("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNX w KQkq - 0 1"), 0);
        assert_eq!(field_of("rnbqkbnr/ppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"), 0);
        assert_eq!(field_of("rnbqkbnr/ppppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1"), 0);
        assert_eq!(field_of("P3k3/8/8/8/8/8/8/4K3 w - - 0 1"), 0);
        assert_eq!(field_of("4k3/8/8/8/8/8/8/4K3 x - - 0 1"), 1);
        assert_eq!(field_of("4k3/8/8/8/8/8/8/4K3 w K - 0 1"), 2);
        assert_eq!(field_of("4k3/8/8/8/8/8/8/4K3 w - e3 0 1"), 3);
        assert_eq!(field_of("4k3/8/8/8/8/8/8/4K3 w - - x 1"), 4);
        assert_eq!(field_of("4k3/8/8/8/8/8/8/4K3 w - - 0 0"), 5);
        assert_eq!(field_of("4k3/8/8/8/8/8/8/4K3 w - - 0 1 extra"), 6);
    }

    #[test]
    fn queen_on_e4_lands_on_e4() {
        let b = parse_fen("7k/8/8/8/4Q3/8/8/4K3 w - - 0 1").unwrap();
        let p = b.piece_at(Square::parse("e4").unwrap()).unwrap();
        assert_eq!((p.color, p.kind), (Color::White, PieceKind::Queen));
    }
}
