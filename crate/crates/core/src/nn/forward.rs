use super::weights::{NetworkWeights, CLASSES, CONV1_SIZE, CONV2_SIZE, HIDDEN1, HIDDEN2};
use super::NnError;
use crate::encoding::{MoveTensor, PAIR_CHANNELS, PAIR_LEN};

/// Probabilities that a move is good (`good`) or bad (`bad`) for its mover.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalOutput {
    pub good: f64,
    pub bad: f64,
}

/// Exponential linear unit with alpha = 1.
#[inline]
pub fn elu(x: f64) -> f64 {
    if x >= 0.0 {
        x
    } else {
        x.exp_m1()
    }
}

pub fn softmax(logits: [f64; 2]) -> [f64; 2] {
    let m = logits[0].max(logits[1]);
    let e0 = (logits[0] - m).exp();
    let e1 = (logits[1] - m).exp();
    let s = e0 + e1;
    [e0 / s, e1 / s]
}

/// 8x8 "same" cross-correlation with zero padding, followed by elu.
/// `input` and the result are laid out `(row, col, channel)`.
fn conv_elu(input: &[f64], in_ch: usize, kernel: &[f32], bias: &[f32], size: usize) -> Vec<f64> {
    let out_ch = bias.len();
    let pad = (size / 2) as isize;
    let mut out = vec![0.0f64; 64 * out_ch];
    for row in 0..8isize {
        for col in 0..8isize {
            let acc = &mut out[((row * 8 + col) as usize) * out_ch..][..out_ch];
            for (o, a) in acc.iter_mut().enumerate() {
                *a = bias[o] as f64;
            }
            for kr in 0..size as isize {
                let r = row + kr - pad;
                if !(0..8).contains(&r) {
                    continue;
                }
                for kc in 0..size as isize {
                    let c = col + kc - pad;
                    if !(0..8).contains(&c) {
                        continue;
                    }
                    let cell = &input[((r * 8 + c) as usize) * in_ch..][..in_ch];
                    let taps = &kernel[((kr as usize) * size + kc as usize) * in_ch * out_ch..][..in_ch * out_ch];
                    for (i, &x) in cell.iter().enumerate() {
                        if x == 0.0 {
                            continue;
                        }
                        for (a, &w) in acc.iter_mut().zip(&taps[i * out_ch..(i + 1) * out_ch]) {
                            *a += x * w as f64;
                        }
                    }
                }
            }
            for a in acc.iter_mut() {
                *a = elu(*a);
            }
        }
    }
    out
}

fn dense(input: &[f64], weight: &[f32], bias: &[f32], activate: bool) -> Vec<f64> {
    let out_dim = bias.len();
    let mut out: Vec<f64> = bias.iter().map(|&b| b as f64).collect();
    for (i, &x) in input.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (a, &w) in out.iter_mut().zip(&weight[i * out_dim..(i + 1) * out_dim]) {
            *a += x * w as f64;
        }
    }
    if activate {
        for a in out.iter_mut() {
            *a = elu(*a);
        }
    }
    out
}

/// Runs the network on a raw `8x8x26` input laid out `(row, col, channel)`.
pub fn forward_raw(weights: &NetworkWeights, input: &[f32]) -> Result<EvalOutput, NnError> {
    if input.len() != PAIR_LEN {
        return Err(NnError::InputShape(input.len()));
    }
    let x: Vec<f64> = input.iter().map(|&v| v as f64).collect();
    let h = conv_elu(&x, PAIR_CHANNELS, &weights.conv1_kernel, &weights.conv1_bias, CONV1_SIZE);
    let h = conv_elu(&h, weights.f1, &weights.conv2_kernel, &weights.conv2_bias, CONV2_SIZE);
    // Dropout sits here during training; inference is the identity.
    let h = dense(&h, &weights.fc1_weight, &weights.fc1_bias, true);
    debug_assert_eq!(h.len(), HIDDEN1);
    let h = dense(&h, &weights.fc2_weight, &weights.fc2_bias, true);
    debug_assert_eq!(h.len(), HIDDEN2);
    let logits = dense(&h, &weights.out_weight, &weights.out_bias, false);
    debug_assert_eq!(logits.len(), CLASSES);
    let [good, bad] = softmax([logits[0], logits[1]]);
    if !(good.is_finite() && bad.is_finite()) {
        return Err(NnError::NonFiniteActivation);
    }
    Ok(EvalOutput { good, bad })
}

pub fn forward(weights: &NetworkWeights, input: &MoveTensor) -> Result<EvalOutput, NnError> {
    forward_raw(weights, &input.to_f32())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chess::Board;
    use crate::encoding::encode_move_pair;

    #[test]
    fn elu_values() {
        assert_eq!(elu(0.0), 0.0);
        assert_eq!(elu(1.0), 1.0);
        assert!((elu(-1.0) - (-0.632_120_558_828_557_7)).abs() < 1e-12);
    }

    #[test]
    fn softmax_values() {
        assert_eq!(softmax([0.0, 0.0]), [0.5, 0.5]);
        let [a, b] = softmax([3f64.ln(), 0.0]);
        assert!((a - 0.75).abs() < 1e-9 && (b - 0.25).abs() < 1e-9);
        let shifted = softmax([3f64.ln() + 500.0, 500.0]);
        assert!((shifted[0] - a).abs() < 1e-12);
        let huge = softmax([1e308, -1e308]);
        assert_eq!(huge, [1.0, 0.0]);
    }

    #[test]
    fn zero_weights_give_even_odds() {
        let w = NetworkWeights::zeros(3, 2);
        let b = Board::startpos();
        let t = encode_move_pair(&b, &b.apply_uci("e2e4").unwrap());
        assert_eq!(forward(&w, &t).unwrap(), EvalOutput { good: 0.5, bad: 0.5 });
    }

    #[test]
    fn swapping_output_columns_swaps_classes() {
        let w = NetworkWeights::random(4, 4, 3);
        let b = Board::startpos();
        let t = encode_move_pair(&b, &b.apply_uci("g1f3").unwrap());
        let a = forward(&w, &t).unwrap();
        let s = forward(&w.with_swapped_outputs(), &t).unwrap();
        assert_eq!((a.good, a.bad), (s.bad, s.good));
        assert!((a.good + a.bad - 1.0).abs() < 1e-9);
    }

    #[test]
    fn wrong_input_length() {
        let w = NetworkWeights::zeros(1, 1);
        assert_eq!(forward_raw(&w, &[0.0; 10]), Err(NnError::InputShape(10)));
    }
}
