use crate::channels::{LlrVector, LLR_CAP};
use crate::code::RmCode;
use crate::pcmatrix::PcMatrix;

use super::DecodeResult;

/// Largest `|tanh(·/2)|` fed into the check-node product.
const TANH_LIMIT: f64 = 1.0 - 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BpParams {
    /// Scale applied to every check-to-variable message at the variable
    /// nodes, in `(0, 1]`.
    pub weight: f64,
    /// Maximum number of flooding iterations.
    pub iterations: usize,
}

impl Default for BpParams {
    fn default() -> Self {
        Self {
            weight: 1.0,
            iterations: 30,
        }
    }
}

/// Flooding-schedule sum-product decoder with weighted check messages.
///
/// Holds per-edge message buffers so a worker can decode many frames
/// without reallocating.
#[derive(Debug, Default)]
pub struct BpDecoder {
    to_var: Vec<f64>,
    prefix: Vec<f64>,
    tanh_channel: Vec<f64>,
    total: Vec<f64>,
    sum: Vec<f64>,
}

/// `tanh(x / 2)`, clamped away from ±1.
#[inline]
fn half_tanh(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    ((1.0 - e) / (1.0 + e)).min(TANH_LIMIT).copysign(x)
}

/// `2 atanh(p)`, clamped to the LLR range.
#[inline]
fn twice_atanh(p: f64) -> f64 {
    let p = p.clamp(-TANH_LIMIT, TANH_LIMIT);
    ((1.0 + p) / (1.0 - p)).ln().clamp(-LLR_CAP, LLR_CAP)
}

impl BpDecoder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn decode(&mut self, code: &RmCode, h: &PcMatrix, llr: &LlrVector, params: BpParams) -> DecodeResult {
        let n = code.n();
        assert_eq!(h.n(), n, "matrix width must equal the code length");
        assert_eq!(llr.len(), n, "LLR length mismatch");
        let w = params.weight;
        let gamma = llr.as_slice();

        let mut hard = llr.hard_decision();
        if params.iterations == 0 || code.is_codeword(&hard) {
            return DecodeResult::finish(code, hard, 0);
        }

        // Only check-to-variable messages are stored. The message from
        // variable i along edge e is `total_i - w * to_var[e]`, formed on the
        // fly while the checks are processed in storage order.
        self.to_var.clear();
        self.to_var.resize(h.num_edges(), 0.0);
        self.prefix.resize(h.max_row_degree() + 1, 1.0);
        self.tanh_channel.clear();
        self.tanh_channel.extend(gamma.iter().map(|&g| half_tanh(g)));
        self.total.clear();
        self.total.extend_from_slice(gamma);
        self.sum.clear();
        self.sum.resize(n, 0.0);

        for it in 1..=params.iterations {
            for j in 0..h.num_rows() {
                let cols = h.row(j);
                let base = h.row_edges(j).start;
                // tanh values go to `to_var`, then get replaced by the
                // extrinsic messages using prefix and suffix products
                self.prefix[0] = 1.0;
                for (k, &i) in cols.iter().enumerate() {
                    let i = i as usize;
                    let t = if it == 1 {
                        self.tanh_channel[i]
                    } else {
                        half_tanh((self.total[i] - w * self.to_var[base + k]).clamp(-LLR_CAP, LLR_CAP))
                    };
                    self.to_var[base + k] = t;
                    self.prefix[k + 1] = self.prefix[k] * t;
                }
                let mut suffix = 1.0;
                for (k, &i) in cols.iter().enumerate().rev() {
                    let t = self.to_var[base + k];
                    let msg = twice_atanh(self.prefix[k] * suffix);
                    self.to_var[base + k] = msg;
                    self.sum[i as usize] += msg;
                    suffix *= t;
                }
            }

            for i in 0..n {
                self.total[i] = gamma[i] + w * self.sum[i];
                self.sum[i] = 0.0;
                hard.set(i, self.total[i] < 0.0);
            }
            if code.is_codeword(&hard) {
                return DecodeResult::finish(code, hard, it);
            }
        }
        DecodeResult::finish(code, hard, params.iterations)
    }
}

/// One-shot [`BpDecoder::decode`].
pub fn bp_decode(code: &RmCode, h: &PcMatrix, llr: &LlrVector, params: BpParams) -> DecodeResult {
    BpDecoder::new().decode(code, h, llr, params)
}
