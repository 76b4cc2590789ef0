//! Chess engine whose evaluation function scores moves, not positions: a small
//! convolutional network reads the board before and after a move and returns
//! the probability that the move is good for its mover.

pub mod chess;
pub mod encoding;
pub mod nn;
pub mod search;
pub mod harness;
pub mod cli;
