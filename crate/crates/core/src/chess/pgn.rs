//! Minimal PGN import/export: one game per call, tag pairs, movetext and
//! brace comments. Variations are skipped and counted.

use super::board::Board;
use super::fen::parse_fen;
use super::san::{resolve_san, split_annotation, to_san};
use super::types::Move;
use super::ChessError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PgnMove {
    pub mv: Move,
    pub san: String,
    /// Annotation glyph written after the SAN (`!!`, `?!`, ...).
    pub annotation: Option<String>,
    pub comment: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PgnGame {
    /// Tag pairs in file order.
    pub tags: Vec<(String, String)>,
    pub moves: Vec<PgnMove>,
    /// Comment appearing before the first move.
    pub leading_comment: Option<String>,
    pub result: Option<String>,
    pub variations_skipped: usize,
}

impl PgnGame {
    pub fn tag(&self, name: &str) -> Option<&str> {
        self.tags.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_str())
    }

    pub fn start_board(&self) -> Result<Board, ChessError> {
        match self.tag("FEN") {
            Some(fen) => parse_fen(fen),
            None => Ok(Board::startpos()),
        }
    }

    /// Boards before and after every move, in order.
    pub fn transitions(&self) -> Result<Vec<(Board, Board)>, ChessError> {
        let mut board = self.start_board()?;
        let mut out = Vec::with_capacity(self.moves.len());
        for m in &self.moves {
            let next = board.apply_move(m.mv)?;
            out.push((board, next.clone()));
            board = next;
        }
        Ok(out)
    }
}

fn attach(slot: &mut Option<String>, text: &str) {
    match slot {
        Some(existing) => {
            existing.push(' ');
            existing.push_str(text);
        }
        None => *slot = Some(text.to_string()),
    }
}

fn is_result(token: &str) -> bool {
    matches!(token, "1-0" | "0-1" | "1/2-1/2" | "*")
}

/// Strips a leading move number ("12." or "12...") from a token.
fn strip_move_number(token: &str) -> &str {
    let digits = token.bytes().take_while(u8::is_ascii_digit).count();
    if digits > 0 && token[digits..].starts_with('.') {
        token[digits..].trim_start_matches('.')
    } else {
        token
    }
}

pub fn parse_pgn(text: &str) -> Result<PgnGame, ChessError> {
    let mut game = PgnGame::default();
    let mut board: Option<Board> = None;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;

    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '[' => {
                let end = chars[i..].iter().position(|&c| c == ']').map(|p| i + p).unwrap_or(chars.len());
                let inner: String = chars[i + 1..end].iter().collect();
                let inner = inner.trim();
                if let Some((key, rest)) = inner.split_once(char::is_whitespace) {
                    let value = rest.trim().trim_matches('"').replace("\\\"", "\"");
                    game.tags.push((key.to_string(), value));
                }
                i = end + 1;
            }
            '{' => {
                let end = chars[i..]
                    .iter()
                    .position(|&c| c == '}')
                    .map(|p| i + p)
                    .ok_or(ChessError::UnterminatedComment)?;
                let body: String = chars[i + 1..end].iter().collect();
                let body = body.trim();
                match game.moves.last_mut() {
                    Some(m) => attach(&mut m.comment, body),
                    None => attach(&mut game.leading_comment, body),
                }
                i = end + 1;
            }
            ';' => {
                let end = chars[i..].iter().position(|&c| c == '\n').map(|p| i + p).unwrap_or(chars.len());
                let body: String = chars[i + 1..end].iter().collect();
                let body = body.trim();
                match game.moves.last_mut() {
                    Some(m) => attach(&mut m.comment, body),
                    None => attach(&mut game.leading_comment, body),
                }
                i = end;
            }
            '(' => {
                let mut depth = 0usize;
                while i < chars.len() {
                    match chars[i] {
                        '(' => depth += 1,
                        ')' => {
                            depth -= 1;
                            if depth == 0 {
                                break;
                            }
                        }
                        '{' => {
                            let end = chars[i..].iter().position(|&c| c == '}').ok_or(ChessError::UnterminatedComment)?;
                            i += end;
                        }
                        _ => {}
                    }
                    i += 1;
                }
                game.variations_skipped += 1;
                i += 1;
            }
            ')' => i += 1,
            _ => {
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() && !"{}()[];".contains(chars[i]) {
                    i += 1;
                }
                let token: String = chars[start..i].iter().collect();
                if is_result(&token) {
                    game.result = Some(token);
                    break;
                }
                if token.starts_with('$') {
                    continue;
                }
                let san = if token.starts_with("0-0") { token.as_str() } else { strip_move_number(&token) };
                if san.is_empty() {
                    continue;
                }
                let current = match &board {
                    Some(b) => b.clone(),
                    None => game.start_board()?,
                };
                let index = game.moves.len();
                let unresolvable = || ChessError::UnresolvableSan { index, san: san.to_string() };
                let mv = resolve_san(&current, san).ok_or_else(unresolvable)?;
                let (_, glyph) = split_annotation(san);
                game.moves.push(PgnMove {
                    mv,
                    san: to_san(&current, mv),
                    annotation: glyph.map(str::to_string),
                    comment: None,
                });
                board = Some(current.play_unchecked(mv));
            }
        }
    }
    Ok(game)
}

/// Splits a multi-game PGN file into per-game chunks.
pub fn split_games(text: &str) -> Vec<&str> {
    let mut games = Vec::new();
    let mut start = 0;
    let mut in_movetext = false;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim_start();
        if trimmed.starts_with('[') && in_movetext {
            games.push(&text[start..offset]);
            start = offset;
            in_movetext = false;
        } else if !trimmed.is_empty() && !trimmed.starts_with('[') {
            in_movetext = true;
        }
        offset += line.len();
    }
    if text[start..].trim().is_empty() {
        return games;
    }
    games.push(&text[start..]);
    games
}

/// Renders a game as PGN with the given tags (a `Result` tag is added if absent).
pub fn write_pgn(tags: &[(String, String)], start: &Board, moves: &[Move], result: &str) -> Result<String, ChessError> {
    let mut out = String::new();
    for (k, v) in tags {
        out.push_str(&format!("[{k} \"{}\"]\n", v.replace('"', "\\\"")));
    }
    if !tags.iter().any(|(k, _)| k == "Result") {
        out.push_str(&format!("[Result \"{result}\"]\n"));
    }
    out.push('\n');

    let mut tokens = Vec::with_capacity(moves.len() * 2);
    let mut board = start.clone();
    for (i, &mv) in moves.iter().enumerate() {
        let white = board.side_to_move() == super::Color::White;
        if white {
            tokens.push(format!("{}.", board.fullmove_number()));
        } else if i == 0 {
            tokens.push(format!("{}...", board.fullmove_number()));
        }
        tokens.push(to_san(&board, mv));
        board = board.apply_move(mv)?;
    }
    tokens.push(result.to_string());

    let mut line_len = 0;
    for tok in tokens {
        if line_len > 0 && line_len + 1 + tok.len() > 79 {
            out.push('\n');
            line_len = 0;
        } else if line_len > 0 {
            out.push(' ');
            line_len += 1;
        }
        out.push_str(&tok);
        line_len += tok.len();
    }
    out.push('\n');
    Ok(out)
}
