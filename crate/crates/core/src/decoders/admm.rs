//! Linear-programming decoding by the alternating direction method of
//! multipliers.
//!
//! Solves `min γᵀx` over the intersection of the per-check parity
//! polytopes. Each check keeps a replica `z_j` of its variables and a
//! multiplier `λ_j`; with penalty `μ` one iteration is
//!
//! ```text
//! x_i ← clamp01( (Σ_{j∋i} (z_j,i − λ_j,i/μ) − γ_i/μ) / d_i )
//! z_j ← Π_PP(x|_j + λ_j/μ)
//! λ_j ← λ_j + μ (x|_j − z_j)
//! ```

use crate::channels::LlrVector;
use crate::code::RmCode;
use crate::gf2::BinaryWord;
use crate::pcmatrix::PcMatrix;

use super::polytope::project_parity_polytope;
use super::DecodeResult;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmmParams {
    pub mu: f64,
    pub max_iterations: usize,
    /// Convergence threshold on `max_j ‖x|_j − z_j‖_∞`.
    pub tolerance: f64,
}

impl Default for AdmmParams {
    fn default() -> Self {
        Self {
            mu: 0.03,
            max_iterations: 1000,
            tolerance: 1e-5,
        }
    }
}

#[derive(Debug, Default)]
pub struct AdmmDecoder {
    x: Vec<f64>,
    lambda: Vec<f64>,
    pull: Vec<f64>,
    local_in: Vec<f64>,
    local_out: Vec<f64>,
}

impl AdmmDecoder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Primal iterate of the last call.
    pub fn solution(&self) -> &[f64] {
        &self.x
    }

    /// Decodes until the rounded iterate is a codeword, the replicas agree
    /// with `x` to within the tolerance, or the iteration budget runs out.
    /// The output rounds `x` at 1/2 (ties to 0).
    pub fn decode(&mut self, code: &RmCode, h: &PcMatrix, llr: &LlrVector, params: AdmmParams) -> DecodeResult {
        let n = code.n();
        assert_eq!(h.n(), n, "matrix width must equal the code length");
        assert_eq!(llr.len(), n, "LLR length mismatch");
        assert!(params.mu > 0.0, "penalty must be positive");
        let mu = params.mu;
        let inv_mu = 1.0 / mu;
        let gamma = llr.as_slice();

        self.x.clear();
        self.x.extend(gamma.iter().map(|&g| 1.0 / (1.0 + g.exp())));
        self.lambda.clear();
        self.lambda.resize(h.num_edges(), 0.0);
        // pull[i] = Σ_{e ∋ i} (z_e - λ_e/μ), refreshed during each check pass;
        // initially z_e = x_i and λ = 0
        self.pull.clear();
        self.pull.extend((0..n).map(|i| h.col_degree(i) as f64 * self.x[i]));
        let max_deg = h.max_row_degree();
        self.local_in.resize(max_deg, 0.0);
        self.local_out.resize(max_deg, 0.0);

        let mut word = BinaryWord::zeros(n);
        for it in 1..=params.max_iterations.max(1) {
            for i in 0..n {
                let deg = h.col_degree(i);
                self.x[i] = if deg == 0 {
                    // unconstrained: the LP puts x_i at the cheaper end
                    if gamma[i] < 0.0 { 1.0 } else { 0.0 }
                } else {
                    ((self.pull[i] - gamma[i] / mu) / deg as f64).clamp(0.0, 1.0)
                };
                self.pull[i] = 0.0;
            }

            let mut residual = 0.0f64;
            for j in 0..h.num_rows() {
                let cols = h.row(j);
                let base = h.row_edges(j).start;
                let deg = cols.len();
                for (k, &i) in cols.iter().enumerate() {
                    self.local_in[k] = self.x[i as usize] + self.lambda[base + k] * inv_mu;
                }
                if deg == 1 {
                    // the only even word of length one is 0
                    self.local_out[0] = 0.0;
                } else {
                    project_parity_polytope(&self.local_in[..deg], &mut self.local_out[..deg]);
                }
                for (k, &i) in cols.iter().enumerate() {
                    let i = i as usize;
                    let z = self.local_out[k];
                    let diff = self.x[i] - z;
                    let lambda = self.lambda[base + k] + mu * diff;
                    self.lambda[base + k] = lambda;
                    self.pull[i] += z - lambda * inv_mu;
                    residual = residual.max(diff.abs());
                }
            }

            for (i, &xi) in self.x.iter().enumerate() {
                word.set(i, xi > 0.5);
            }
            if code.is_codeword(&word) || residual < params.tolerance {
                return DecodeResult::finish(code, word, it);
            }
        }
        DecodeResult::finish(code, word, params.max_iterations.max(1))
    }
}

/// One-shot [`AdmmDecoder::decode`].
pub fn admm_lp_decode(code: &RmCode, h: &PcMatrix, llr: &LlrVector, params: AdmmParams) -> DecodeResult {
    AdmmDecoder::new().decode(code, h, llr, params)
}
