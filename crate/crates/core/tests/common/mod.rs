//! Reference implementations shared by the integration tests. Everything here
//! is written directly from the definitions, favouring obviousness over speed.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sentichess::chess::{game_status, Board, Color, GameStatus, PieceKind, PositionKey};
use sentichess::encoding::{encode_move_pair, PAIR_CHANNELS};
use sentichess::nn::NetworkWeights;

/// Positions reached by seeded random playouts of 0..max_plies plies from the
/// initial position; terminal positions are skipped.
pub fn random_positions(n: usize, seed: u64, max_plies: usize) -> Vec<Board> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let plies = rng.gen_range(0..=max_plies);
        let mut board = Board::startpos();
        let mut history = vec![board.position_key()];
        let mut ok = true;
        for _ in 0..plies {
            let moves = board.legal_moves();
            let Some(&mv) = moves.choose(&mut rng) else {
                ok = false;
                break;
            };
            board = board.apply_move(mv).unwrap();
            history.push(board.position_key());
            if game_status(&board, &history).is_over() {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(board);
        }
    }
    out
}

pub fn piece_value(kind: PieceKind) -> i64 {
    match kind {
        PieceKind::Pawn => 1,
        PieceKind::Knight | PieceKind::Bishop => 3,
        PieceKind::Rook => 5,
        PieceKind::Queen => 9,
        PieceKind::King => 0,
    }
}

pub fn material(board: &Board, color: Color) -> i64 {
    board.pieces().filter(|(_, p)| p.color == color).map(|(_, p)| piece_value(p.kind)).sum()
}

/// Material-delta goodness of `before -> after` for the mover, on the root scale.
pub fn material_leaf(before: &Board, after: &Board, root: Color) -> f64 {
    let me = before.side_to_move();
    let lead = |b: &Board| material(b, me) - material(b, me.opposite());
    let v = 1.0 / (1.0 + (-((lead(after) - lead(before)) as f64) / 3.0).exp());
    if me == root {
        v
    } else {
        1.0 - v
    }
}

pub struct Minimax {
    pub nodes: u64,
    pub root: Color,
}

impl Minimax {
    /// Full-width minimax over move pairs; returns the root value.
    pub fn search(root: &Board, depth: u32) -> (f64, u64) {
        let mut m = Minimax { nodes: 1, root: root.side_to_move() };
        let history = vec![root.position_key()];
        let v = root
            .legal_moves()
            .into_iter()
            .map(|mv| m.value(root, &root.apply_move(mv).unwrap(), &history, depth - 1))
            .fold(f64::NEG_INFINITY, f64::max);
        (v, m.nodes)
    }

    fn value(&mut self, parent: &Board, node: &Board, history: &[PositionKey], remaining: u32) -> f64 {
        self.nodes += 1;
        let mut history = history.to_vec();
        history.push(node.position_key());
        match game_status(node, &history) {
            GameStatus::Ongoing => {}
            GameStatus::Checkmate { winner } => return if winner == self.root { 1.0 } else { 0.0 },
            _ => return 0.5,
        }
        if remaining == 0 {
            return material_leaf(parent, node, self.root);
        }
        let children: Vec<f64> = node
            .legal_moves()
            .into_iter()
            .map(|mv| self.value(node, &node.apply_move(mv).unwrap(), &history, remaining - 1))
            .collect();
        if node.side_to_move() == self.root {
            children.into_iter().fold(f64::NEG_INFINITY, f64::max)
        } else {
            children.into_iter().fold(f64::INFINITY, f64::min)
        }
    }
}

fn elu(x: f64) -> f64 {
    if x >= 0.0 {
        x
    } else {
        x.exp() - 1.0
    }
}

/// Same-padded cross-correlation with kernel layout (kh, kw, in, out),
/// followed by elu. Input/output are (row, col, channel), channel fastest.
fn conv(input: &[f64], cin: usize, k: &[f32], b: &[f32], size: usize, cout: usize) -> Vec<f64> {
    let pad = (size / 2) as i64;
    let mut out = vec![0.0; 64 * cout];
    for row in 0..8i64 {
        for col in 0..8i64 {
            for o in 0..cout {
                let mut acc = b[o] as f64;
                for kh in 0..size as i64 {
                    for kw in 0..size as i64 {
                        let (r, c) = (row + kh - pad, col + kw - pad);
                        if !(0..8).contains(&r) || !(0..8).contains(&c) {
                            continue;
                        }
                        for i in 0..cin {
                            let x = input[((r * 8 + c) as usize) * cin + i];
                            let w = k[(((kh as usize) * size + kw as usize) * cin + i) * cout + o] as f64;
                            acc += x * w;
                        }
                    }
                }
                out[((row * 8 + col) as usize) * cout + o] = elu(acc);
            }
        }
    }
    out
}

fn dense(x: &[f64], w: &[f32], b: &[f32], act: bool) -> Vec<f64> {
    let n = b.len();
    (0..n)
        .map(|j| {
            let s = b[j] as f64 + x.iter().enumerate().map(|(i, &xi)| xi * w[i * n + j] as f64).sum::<f64>();
            if act {
                elu(s)
            } else {
                s
            }
        })
        .collect()
}

/// Naive forward pass; returns (G, B).
pub fn naive_forward(w: &NetworkWeights, input: &[f32]) -> (f64, f64) {
    let t = |name: &str| w.tensor(name).unwrap();
    let x: Vec<f64> = input.iter().map(|&v| v as f64).collect();
    let (f1, f2) = (t("conv1.bias").len(), t("conv2.bias").len());
    let h = conv(&x, PAIR_CHANNELS, t("conv1.weight"), t("conv1.bias"), 5, f1);
    let h = conv(&h, f1, t("conv2.weight"), t("conv2.bias"), 3, f2);
    let h = dense(&h, t("fc1.weight"), t("fc1.bias"), true);
    let h = dense(&h, t("fc2.weight"), t("fc2.bias"), true);
    let z = dense(&h, t("out.weight"), t("out.bias"), false);
    let (e0, e1) = (z[0].exp(), z[1].exp());
    (e0 / (e0 + e1), e1 / (e0 + e1))
}

/// Weights with entries drawn uniformly from ±scale, independent of the
/// library's initialiser.
pub fn random_weights(f1: usize, f2: usize, seed: u64, scale: f32) -> NetworkWeights {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    NetworkWeights::from_fn(f1, f2, |_, _| rng.gen_range(-scale..=scale))
}

/// A legal move tensor from a random position.
pub fn random_pair_input(seed: u64) -> Vec<f32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9);
    let board = &random_positions(1, seed, 40)[0];
    let mv = *board.legal_moves().choose(&mut rng).unwrap();
    encode_move_pair(board, &board.apply_move(mv).unwrap()).to_f32()
}
