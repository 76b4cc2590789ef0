//! Move-evaluation network: SMW1 weight container and forward inference.
//!
//! Architecture over the 8x8x26 move tensor: 5x5 conv (F1 filters, elu),
//! 3x3 conv (F2 filters, elu), flatten in (row, col, channel) order, dense 500
//! (elu), dense 200 (elu), dense 2, softmax. Both convolutions use zero "same"
//! padding so the board geometry is preserved; there is no pooling. Output
//! index 0 is the probability the move is good, index 1 that it is bad.

mod forward;
pub mod golden;
pub mod smw1;
mod weights;

pub use forward::{elu, forward, forward_raw, softmax, EvalOutput};
pub use weights::{
    expected_dims, NetworkWeights, CLASSES, CONV1_SIZE, CONV2_SIZE, DEFAULT_F1, DEFAULT_F2, HIDDEN1, HIDDEN2,
    TENSOR_NAMES,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NnError {
    #[error("bad magic: not an SMW1 file")]
    BadMagic,
    #[error("unknown dtype {0}")]
    UnknownDtype(u8),
    #[error("tensor name is not valid UTF-8")]
    BadName,
    #[error("missing tensor {0}")]
    MissingTensor(String),
    #[error("duplicate tensor {0}")]
    DuplicateTensor(String),
    #[error("dimension mismatch for {name}: expected {expected:?}, found {found:?}")]
    DimMismatch { name: String, expected: Vec<usize>, found: Vec<usize> },
    #[error("truncated file")]
    TruncatedFile,
    #[error("non-finite value in {name} at index {index}")]
    NonFiniteWeight { name: String, index: usize },
    #[error("non-finite activation (corrupt weights?)")]
    NonFiniteActivation,
    #[error("input has {0} values, expected 1664")]
    InputShape(usize),
    #[error("{0}")]
    Io(String),
}
