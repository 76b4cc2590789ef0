use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::smw1::{read_tensors, write_tensors, Tensor};
use super::NnError;
use crate::encoding::PAIR_CHANNELS;

pub const CONV1_SIZE: usize = 5;
pub const CONV2_SIZE: usize = 3;
pub const HIDDEN1: usize = 500;
pub const HIDDEN2: usize = 200;
pub const CLASSES: usize = 2;

pub const DEFAULT_F1: usize = 64;
pub const DEFAULT_F2: usize = 128;

pub const TENSOR_NAMES: [&str; 10] = [
    "conv1.weight",
    "conv1.bias",
    "conv2.weight",
    "conv2.bias",
    "fc1.weight",
    "fc1.bias",
    "fc2.weight",
    "fc2.bias",
    "out.weight",
    "out.bias",
];

/// All parameters of the evaluation network. Convolution kernels are laid out
/// `(kh, kw, in, out)`; dense matrices `(in, out)` with `y = xW + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkWeights {
    pub(crate) f1: usize,
    pub(crate) f2: usize,
    pub(crate) conv1_kernel: Vec<f32>,
    pub(crate) conv1_bias: Vec<f32>,
    pub(crate) conv2_kernel: Vec<f32>,
    pub(crate) conv2_bias: Vec<f32>,
    pub(crate) fc1_weight: Vec<f32>,
    pub(crate) fc1_bias: Vec<f32>,
    pub(crate) fc2_weight: Vec<f32>,
    pub(crate) fc2_bias: Vec<f32>,
    pub(crate) out_weight: Vec<f32>,
    pub(crate) out_bias: Vec<f32>,
}

/// Expected dims of each named tensor for filter counts `f1`, `f2`.
pub fn expected_dims(name: &str, f1: usize, f2: usize) -> Vec<usize> {
    match name {
        "conv1.weight" => vec![CONV1_SIZE, CONV1_SIZE, PAIR_CHANNELS, f1],
        "conv1.bias" => vec![f1],
        "conv2.weight" => vec![CONV2_SIZE, CONV2_SIZE, f1, f2],
        "conv2.bias" => vec![f2],
        "fc1.weight" => vec![64 * f2, HIDDEN1],
        "fc1.bias" => vec![HIDDEN1],
        "fc2.weight" => vec![HIDDEN1, HIDDEN2],
        "fc2.bias" => vec![HIDDEN2],
        "out.weight" => vec![HIDDEN2, CLASSES],
        "out.bias" => vec![CLASSES],
        other => unreachable!("unknown tensor {other}"),
    }
}

impl NetworkWeights {
    pub fn f1(&self) -> usize {
        self.f1
    }

    pub fn f2(&self) -> usize {
        self.f2
    }

    fn slots(&self) -> [&Vec<f32>; 10] {
        [
            &self.conv1_kernel,
            &self.conv1_bias,
            &self.conv2_kernel,
            &self.conv2_bias,
            &self.fc1_weight,
            &self.fc1_bias,
            &self.fc2_weight,
            &self.fc2_bias,
            &self.out_weight,
            &self.out_bias,
        ]
    }

    fn slots_mut(&mut self) -> [&mut Vec<f32>; 10] {
        [
            &mut self.conv1_kernel,
            &mut self.conv1_bias,
            &mut self.conv2_kernel,
            &mut self.conv2_bias,
            &mut self.fc1_weight,
            &mut self.fc1_bias,
            &mut self.fc2_weight,
            &mut self.fc2_bias,
            &mut self.out_weight,
            &mut self.out_bias,
        ]
    }

    /// Builds weights by calling `fill(name, index)` for every parameter.
    pub fn from_fn(f1: usize, f2: usize, mut fill: impl FnMut(&str, usize) -> f32) -> NetworkWeights {
        let mut w = NetworkWeights {
            f1,
            f2,
            conv1_kernel: Vec::new(),
            conv1_bias: Vec::new(),
            conv2_kernel: Vec::new(),
            conv2_bias: Vec::new(),
            fc1_weight: Vec::new(),
            fc1_bias: Vec::new(),
            fc2_weight: Vec::new(),
            fc2_bias: Vec::new(),
            out_weight: Vec::new(),
            out_bias: Vec::new(),
        };
        for (name, slot) in TENSOR_NAMES.iter().zip(w.slots_mut()) {
            let n: usize = expected_dims(name, f1, f2).iter().product();
            *slot = (0..n).map(|i| fill(name, i)).collect();
        }
        w
    }

    pub fn zeros(f1: usize, f2: usize) -> NetworkWeights {
        NetworkWeights::from_fn(f1, f2, |_, _| 0.0)
    }

    /// Uniform fan-in scaled initialisation from a seeded ChaCha8 stream.
    pub fn random(f1: usize, f2: usize, seed: u64) -> NetworkWeights {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        NetworkWeights::from_fn(f1, f2, |name, _| {
            let dims = expected_dims(name, f1, f2);
            let fan_in: usize = if dims.len() > 1 { dims[..dims.len() - 1].iter().product() } else { dims[0] };
            let bound = (3.0 / fan_in as f64).sqrt() as f32;
            rng.gen_range(-bound..=bound)
        })
    }

    pub fn tensor(&self, name: &str) -> Option<&[f32]> {
        TENSOR_NAMES.iter().position(|n| *n == name).map(|i| self.slots()[i].as_slice())
    }

    pub fn to_tensors(&self) -> Vec<Tensor> {
        TENSOR_NAMES
            .iter()
            .zip(self.slots())
            .map(|(name, data)| Tensor::new(*name, expected_dims(name, self.f1, self.f2), data.clone()))
            .collect()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        write_tensors(&self.to_tensors())
    }

    pub fn from_tensors(tensors: Vec<Tensor>) -> Result<NetworkWeights, NnError> {
        for (i, t) in tensors.iter().enumerate() {
            if tensors[..i].iter().any(|o| o.name == t.name) {
                return Err(NnError::DuplicateTensor(t.name.clone()));
            }
        }
        let find = |name: &str| {
            tensors.iter().find(|t| t.name == name).ok_or_else(|| NnError::MissingTensor(name.to_string()))
        };
        let dim_at = |name: &str, axis: usize| -> Result<usize, NnError> {
            let t = find(name)?;
            match t.dims.get(axis) {
                Some(&d) if t.dims.len() == 4 && d > 0 => Ok(d),
                _ => Err(NnError::DimMismatch {
                    name: name.to_string(),
                    expected: expected_dims(name, 0, 0),
                    found: t.dims.clone(),
                }),
            }
        };
        let f1 = dim_at("conv1.weight", 3)?;
        let f2 = dim_at("conv2.weight", 3)?;

        let mut w = NetworkWeights::zeros(0, 0);
        w.f1 = f1;
        w.f2 = f2;
        for (name, slot) in TENSOR_NAMES.iter().zip(w.slots_mut()) {
            let t = find(name)?;
            let expected = expected_dims(name, f1, f2);
            if t.dims != expected {
                return Err(NnError::DimMismatch { name: name.to_string(), expected, found: t.dims.clone() });
            }
            if let Some(bad) = t.data.iter().position(|v| !v.is_finite()) {
                return Err(NnError::NonFiniteWeight { name: name.to_string(), index: bad });
            }
            *slot = t.data.clone();
        }
        Ok(w)
    }

    pub fn load_bytes(bytes: &[u8]) -> Result<NetworkWeights, NnError> {
        NetworkWeights::from_tensors(read_tensors(bytes)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<NetworkWeights, NnError> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| NnError::Io(format!("{}: {e}", path.display())))?;
        NetworkWeights::load_bytes(&bytes)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), NnError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_bytes()).map_err(|e| NnError::Io(format!("{}: {e}", path.display())))
    }

    /// Swaps the two output columns (and biases), exchanging G and B.
    pub fn with_swapped_outputs(&self) -> NetworkWeights {
        let mut w = self.clone();
        for row in w.out_weight.chunks_exact_mut(CLASSES) {
            row.swap(0, 1);
        }
        w.out_bias.swap(0, 1);
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file_round_trips_bit_exactly() {
        let w = NetworkWeights::random(2, 2, 11);
        let bytes = w.to_bytes();
        let back = NetworkWeights::load_bytes(&bytes).unwrap();
        assert_eq!((back.f1(), back.f2()), (2, 2));
        for name in TENSOR_NAMES {
            let a: Vec<u32> = w.tensor(name).unwrap().iter().map(|v| v.to_bits()).collect();
            let b: Vec<u32> = back.tensor(name).unwrap().iter().map(|v| v.to_bits()).collect();
            assert_eq!(a, b, "{name}");
        }
        assert_eq!(back.to_bytes(), bytes);
    }

    #[test]
    fn bad_magic() {
        let mut bytes = NetworkWeights::zeros(2, 2).to_bytes();
        bytes[..4].copy_from_slice(b"XXXX");
        assert_eq!(NetworkWeights::load_bytes(&bytes), Err(NnError::BadMagic));
    }

    #[test]
    fn fc1_in_dim_mismatch() {
        let w = NetworkWeights::zeros(2, 2);
        let mut tensors = w.to_tensors();
        let fc1 = tensors.iter_mut().find(|t| t.name == "fc1.weight").unwrap();
        fc1.dims = vec![64 * 3, HIDDEN1];
        fc1.data = vec![0.0; 64 * 3 * HIDDEN1];
        match NetworkWeights::load_bytes(&write_tensors(&tensors)) {
            Err(NnError::DimMismatch { name, expected, found }) => {
                assert_eq!(name, "fc1.weight");
                assert_eq!(expected, vec![128, 500]);
                assert_eq!(found, vec![192, 500]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_and_duplicate_tensors() {
        let mut tensors = NetworkWeights::zeros(2, 2).to_tensors();
        tensors.retain(|t| t.name != "out.bias");
        assert_eq!(
            NetworkWeights::load_bytes(&write_tensors(&tensors)),
            Err(NnError::MissingTensor("out.bias".into()))
        );
        let mut tensors = NetworkWeights::zeros(2, 2).to_tensors();
        tensors.push(tensors[1].clone());
        assert_eq!(
            NetworkWeights::load_bytes(&write_tensors(&tensors)),
            Err(NnError::DuplicateTensor("conv1.bias".into()))
        );
    }

    #[test]
    fn non_finite_weight_rejected() {
        let mut w = NetworkWeights::zeros(2, 2);
        w.fc2_bias[3] = f32::NAN;
        assert!(matches!(NetworkWeights::load_bytes(&w.to_bytes()), Err(NnError::NonFiniteWeight { .. })));
    }

    #[test]
    fn truncated_blob() {
        let bytes = NetworkWeights::zeros(2, 2).to_bytes();
        assert_eq!(NetworkWeights::load_bytes(&bytes[..bytes.len() - 3]), Err(NnError::TruncatedFile));
    }
}
