use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::agent::AgentSpec;
use super::game::{play_game, Adjudicator, GameRecord, MaterialAdjudicator, Outcome, DEFAULT_MAX_FULLMOVES};
use super::HarnessError;
use crate::chess::{Color, Move, PieceKind, Square};

pub const REPORT_FORMAT: &str = "sentichess-match-report/1";

/// Destination-square counts per (piece color, piece kind), indexed
/// `[color][kind][square]` with square 0 = a1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Heatmaps {
    pub counts: Vec<Vec<Vec<u32>>>,
}

impl Default for Heatmaps {
    fn default() -> Self {
        Heatmaps { counts: vec![vec![vec![0; 64]; 6]; 2] }
    }
}

impl Heatmaps {
    pub fn get(&self, color: Color, kind: PieceKind, sq: Square) -> u32 {
        self.counts[color.index()][kind.index()][sq.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().flatten().map(|&c| c as u64).sum()
    }

    fn bump(&mut self, color: Color, kind: PieceKind, sq: Square) {
        self.counts[color.index()][kind.index()][sq.index()] += 1;
    }

    /// Rows of `color,kind,file,rank,count`, all 768 cells in fixed order.
    pub fn to_csv(&self) -> Result<String, HarnessError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["color", "kind", "file", "rank", "count"])?;
        for color in Color::ALL {
            for kind in PieceKind::ALL {
                for sq in Square::all() {
                    let file = ((b'a' + sq.file()) as char).to_string();
                    let rank = (sq.rank() + 1).to_string();
                    let count = self.get(color, kind, sq).to_string();
                    w.write_record([color.name(), kind.name(), &file, &rank, &count])?;
                }
            }
        }
        csv_string(w)
    }
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, HarnessError> {
    let bytes = w.into_inner().map_err(|e| HarnessError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| HarnessError::Io(e.to_string()))
}

/// Positions of `agent_id`'s pieces after each of its moves: the piece that
/// stands on the destination square is counted there (so a promotion counts
/// the new piece), and castling also counts the rook's destination.
pub fn piece_heatmaps(games: &[GameRecord], agent_id: &str) -> Result<Heatmaps, HarnessError> {
    let mut maps = Heatmaps::default();
    for game in games {
        let boards = game.replay()?;
        for (ply, mv) in game.parsed_moves().into_iter().enumerate() {
            let before = &boards[ply];
            let after = &boards[ply + 1];
            let mover = before.side_to_move();
            let mover_id = match mover {
                Color::White => &game.white_id,
                Color::Black => &game.black_id,
            };
            if mover_id != agent_id {
                continue;
            }
            let placed = after.piece_at(mv.to).expect("destination occupied after the move");
            maps.bump(placed.color, placed.kind, mv.to);
            if let Some(rook_to) = castling_rook_destination(before, mv) {
                maps.bump(mover, PieceKind::Rook, rook_to);
            }
        }
    }
    Ok(maps)
}

fn castling_rook_destination(before: &crate::chess::Board, mv: Move) -> Option<Square> {
    let piece = before.piece_at(mv.from)?;
    if piece.kind != PieceKind::King || mv.from.file().abs_diff(mv.to.file()) != 2 {
        return None;
    }
    let file = if mv.to.file() == 6 { 5 } else { 3 };
    Some(Square::from_coords(file, mv.from.rank()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgentSummary {
    pub id: String,
    pub wins: u32,
    pub draws: u32,
    pub losses: u32,
    pub games_as_white: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaterialPoint {
    pub ply: usize,
    /// Games still running at this ply.
    pub games: u32,
    /// Mean material of each agent, in `agents` order.
    pub mean: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchSettings {
    pub white: String,
    pub black: String,
    pub games: usize,
    pub base_seed: u64,
    pub swap_colors: bool,
    pub max_fullmoves: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    pub format: String,
    pub settings: MatchSettings,
    /// The first agent is the one given as white; its pieces are heat-mapped.
    pub agents: [AgentSummary; 2],
    pub games: Vec<GameRecord>,
    pub mean_material: Vec<MaterialPoint>,
    pub heatmap_agent: String,
    pub heatmaps: Heatmaps,
}

#[derive(Clone, Debug)]
pub struct MatchOptions {
    pub max_fullmoves: u32,
    pub swap_colors: bool,
    /// Worker threads; 1 runs games sequentially.
    pub jobs: usize,
}

impl Default for MatchOptions {
    fn default() -> Self {
        MatchOptions { max_fullmoves: DEFAULT_MAX_FULLMOVES, swap_colors: false, jobs: 1 }
    }
}

/// Plays `n_games` between `first` and `second`. Game `i` uses seed
/// `base_seed + i`; with `swap_colors`, odd-indexed games give `first` black.
pub fn run_match(
    first: &AgentSpec,
    second: &AgentSpec,
    n_games: usize,
    base_seed: u64,
    options: &MatchOptions,
) -> Result<MatchReport, HarnessError> {
    run_match_with(first, second, n_games, base_seed, options, &MaterialAdjudicator)
}

pub fn run_match_with(
    first: &AgentSpec,
    second: &AgentSpec,
    n_games: usize,
    base_seed: u64,
    options: &MatchOptions,
    adjudicator: &dyn Adjudicator,
) -> Result<MatchReport, HarnessError> {
    if n_games == 0 {
        return Err(HarnessError::InvalidSpec("a match needs at least one game".into()));
    }
    let (mut a, mut b) = (first.clone(), second.clone());
    if a.id == b.id {
        a.id = format!("{}#1", a.id);
        b.id = format!("{}#2", b.id);
    }
    let agents = [a.prepare()?, b.prepare()?];

    let play = |i: usize| -> Result<GameRecord, HarnessError> {
        let seed = base_seed.wrapping_add(i as u64);
        let swapped = options.swap_colors && i % 2 == 1;
        let (white, black) = if swapped { (&agents[1], &agents[0]) } else { (&agents[0], &agents[1]) };
        let mut record = play_game(white, black, seed, options.max_fullmoves, adjudicator)?;
        record.index = i;
        Ok(record)
    };

    let mut games: Vec<GameRecord> = if options.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| HarnessError::Io(e.to_string()))?;
        pool.install(|| (0..n_games).into_par_iter().map(play).collect::<Result<_, _>>())?
    } else {
        (0..n_games).map(play).collect::<Result<_, _>>()?
    };
    games.sort_by_key(|g| g.index);

    let summaries = [summarize(&a.id, &games), summarize(&b.id, &games)];
    let mean_material = mean_material(&games, [&a.id, &b.id]);
    let heatmaps = piece_heatmaps(&games, &a.id)?;
    Ok(MatchReport {
        format: REPORT_FORMAT.to_string(),
        settings: MatchSettings {
            white: a.id.clone(),
            black: b.id.clone(),
            games: n_games,
            base_seed,
            swap_colors: options.swap_colors,
            max_fullmoves: options.max_fullmoves,
        },
        agents: summaries,
        games,
        mean_material,
        heatmap_agent: a.id.clone(),
        heatmaps,
    })
}

fn summarize(id: &str, games: &[GameRecord]) -> AgentSummary {
    let mut s = AgentSummary { id: id.to_string(), wins: 0, draws: 0, losses: 0, games_as_white: 0 };
    for g in games {
        let color = if g.white_id == id { Color::White } else { Color::Black };
        if color == Color::White {
            s.games_as_white += 1;
        }
        match g.outcome {
            Outcome::Draw => s.draws += 1,
            o if o == Outcome::winner(color) => s.wins += 1,
            _ => s.losses += 1,
        }
    }
    s
}

fn mean_material(games: &[GameRecord], ids: [&str; 2]) -> Vec<MaterialPoint> {
    let longest = games.iter().map(|g| g.material_trace.len()).max().unwrap_or(0);
    (0..longest)
        .map(|ply| {
            let mut sums = [0.0f64; 2];
            let mut count = 0u32;
            for g in games {
                let Some(&(white, black)) = g.material_trace.get(ply) else { continue };
                count += 1;
                for (k, id) in ids.iter().enumerate() {
                    sums[k] += if g.white_id == *id { white } else { black } as f64;
                }
            }
            MaterialPoint { ply, games: count, mean: [sums[0] / count as f64, sums[1] / count as f64] }
        })
        .collect()
}

impl MatchReport {
    pub fn agent(&self, id: &str) -> Option<&AgentSummary> {
        self.agents.iter().find(|a| a.id == id)
    }

    pub fn to_json(&self) -> Result<String, HarnessError> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| HarnessError::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    /// Rows of `game,ply,white,black`.
    pub fn material_csv(&self) -> Result<String, HarnessError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["game", "ply", "white", "black"])?;
        for g in &self.games {
            for (ply, (white, black)) in g.material_trace.iter().enumerate() {
                w.write_record([g.index.to_string(), ply.to_string(), white.to_string(), black.to_string()])?;
            }
        }
        csv_string(w)
    }

    pub fn pgn(&self) -> String {
        self.games.iter().map(|g| g.to_pgn()).collect::<Vec<_>>().join("\n")
    }

    /// Writes report.json, material_trace.csv, heatmaps.csv and games.pgn.
    pub fn write_dir(&self, dir: &Path) -> Result<(), HarnessError> {
        let io = |e: std::io::Error| HarnessError::Io(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(io)?;
        std::fs::write(dir.join("report.json"), self.to_json()?).map_err(io)?;
        std::fs::write(dir.join("material_trace.csv"), self.material_csv()?).map_err(io)?;
        std::fs::write(dir.join("heatmaps.csv"), self.heatmaps.to_csv()?).map_err(io)?;
        std::fs::write(dir.join("games.pgn"), self.pgn()).map_err(io)?;
        Ok(())
    }
}
