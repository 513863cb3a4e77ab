use rm_mwpc::decoders::{AdmmParams, BpParams, MAX_BRUTEFORCE_K};
use rm_mwpc::{count_mwpc, ChannelKind, RmCode};

use crate::error::{SimError, SimResult};

/// Decoder and its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecoderSpec {
    Peeling,
    Bp(BpParams),
    Lp(AdmmParams),
    BitFlip { max_flips: Option<usize> },
    Mrb { order: usize },
    MlBec,
    MlBruteForce,
}

impl DecoderSpec {
    /// Short name used on the command line and in result files.
    pub fn name(&self) -> &'static str {
        match self {
            DecoderSpec::Peeling => "pd",
            DecoderSpec::Bp(_) => "bp",
            DecoderSpec::Lp(_) => "lp",
            DecoderSpec::BitFlip { .. } => "bf",
            DecoderSpec::Mrb { .. } => "mrb",
            DecoderSpec::MlBec => "ml-bec",
            DecoderSpec::MlBruteForce => "ml-bf",
        }
    }

    /// Whether the decoder runs on a parity-check matrix.
    pub fn uses_matrix(&self) -> bool {
        matches!(
            self,
            DecoderSpec::Peeling | DecoderSpec::Bp(_) | DecoderSpec::Lp(_) | DecoderSpec::BitFlip { .. }
        )
    }
}

/// Which parity checks a matrix-based decoder sees in each frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MatrixPolicy {
    /// Every minimum-weight check, built once per sweep.
    Full,
    /// `rows` checks tailored to the frame's good/bad split. `fraction` is
    /// the share of positions counted as reliable; it is ignored on the
    /// erasure channel, where unerased positions are the reliable ones.
    Tailored { fraction: f64, rows: usize },
    /// `rows` distinct checks drawn uniformly from the full set per frame.
    RandomSubset { rows: usize },
}

impl MatrixPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            MatrixPolicy::Full => "full",
            MatrixPolicy::Tailored { .. } => "tailored",
            MatrixPolicy::RandomSubset { .. } => "random",
        }
    }

    pub fn rows(&self) -> Option<usize> {
        match *self {
            MatrixPolicy::Full => None,
            MatrixPolicy::Tailored { rows, .. } | MatrixPolicy::RandomSubset { rows } => Some(rows),
        }
    }

    pub fn fraction(&self) -> Option<f64> {
        match *self {
            MatrixPolicy::Tailored { fraction, .. } => Some(fraction),
            _ => None,
        }
    }
}

/// A full experiment: one code, one channel family swept over `params`,
/// one decoder.
///
/// Channel parameters are the erasure probability (BEC), the crossover
/// probability (BSC) or E_b/N_0 in dB (AWGN).
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub r: usize,
    pub m: usize,
    pub channel: ChannelKind,
    pub params: Vec<f64>,
    pub decoder: DecoderSpec,
    pub matrix: MatrixPolicy,
    pub min_block_errors: u64,
    pub max_frames: u64,
    pub seed: u64,
}

impl ExperimentConfig {
    /// Config with the default stop rule of 100 block errors.
    pub fn new(
        (r, m): (usize, usize),
        channel: ChannelKind,
        params: Vec<f64>,
        decoder: DecoderSpec,
        matrix: MatrixPolicy,
        max_frames: u64,
        seed: u64,
    ) -> Self {
        Self {
            r,
            m,
            channel,
            params,
            decoder,
            matrix,
            min_block_errors: 100,
            max_frames,
            seed,
        }
    }

    pub fn with_min_block_errors(mut self, errors: u64) -> Self {
        self.min_block_errors = errors;
        self
    }

    /// Checks everything that can be checked without running a frame.
    pub fn validate(&self) -> SimResult<()> {
        let fail = |msg: String| Err(SimError::Config(msg));
        let code_ok = self.r < self.m && self.m <= rm_mwpc::code::MAX_M;
        if !code_ok {
            return fail(format!(
                "RM({},{}) unsupported: need 0 <= r < m <= {}",
                self.r,
                self.m,
                rm_mwpc::code::MAX_M
            ));
        }
        if self.params.is_empty() {
            return fail("channel parameter list is empty".into());
        }
        if self.min_block_errors == 0 {
            return fail("min block errors must be at least 1".into());
        }
        if self.max_frames == 0 {
            return fail("frame budget must be at least 1".into());
        }
        for &p in &self.params {
            let ok = match self.channel {
                ChannelKind::Bec | ChannelKind::Bsc => (0.0..=1.0).contains(&p),
                ChannelKind::BiAwgn => p.is_finite(),
            };
            if !ok {
                return fail(format!("channel parameter {p} out of range for {}", self.channel.as_str()));
            }
        }

        let bec = self.channel == ChannelKind::Bec;
        match self.decoder {
            DecoderSpec::Peeling | DecoderSpec::MlBec if !bec => {
                return fail(format!("decoder {} needs the erasure channel", self.decoder.name()));
            }
            DecoderSpec::BitFlip { .. } if bec => {
                return fail("bit flipping needs hard decisions; use pd or ml-bec on the erasure channel".into());
            }
            DecoderSpec::Mrb { .. } if self.channel == ChannelKind::Bsc => {
                return fail("mrb needs soft reliabilities; the BSC gives all bits the same one".into());
            }
            DecoderSpec::MlBruteForce => {
                let k = rm_mwpc::code_params(self.r, self.m)?.k;
                if k > MAX_BRUTEFORCE_K {
                    return fail(format!("ml-bf needs k <= {MAX_BRUTEFORCE_K}, RM({},{}) has k = {k}", self.r, self.m));
                }
            }
            DecoderSpec::Bp(p) if !(p.weight > 0.0 && p.weight <= 1.0) => {
                return fail(format!("BP weight {} outside (0, 1]", p.weight));
            }
            DecoderSpec::Lp(p) if !(p.mu > 0.0 && p.tolerance >= 0.0) => {
                return fail("ADMM needs mu > 0 and tolerance >= 0".into());
            }
            _ => {}
        }

        if !self.decoder.uses_matrix() && self.matrix != MatrixPolicy::Full {
            return fail(format!(
                "decoder {} does not use a parity-check matrix; matrix policy must be full",
                self.decoder.name()
            ));
        }
        let total = count_mwpc(self.r, self.m)?;
        match self.matrix {
            MatrixPolicy::Full => {
                if total > rm_mwpc::code::MAX_ENUMERATED_CHECKS && self.decoder.uses_matrix() {
                    return fail(format!("RM({},{}) has {total} checks, too many to enumerate", self.r, self.m));
                }
            }
            MatrixPolicy::Tailored { fraction, rows } => {
                if self.channel == ChannelKind::Bsc {
                    return fail(
                        "tailored matrices need reliability information; on the BSC every bit is equally reliable"
                            .into(),
                    );
                }
                if !(0.0..=1.0).contains(&fraction) {
                    return fail(format!("fraction {fraction} outside [0, 1]"));
                }
                if rows == 0 || rows as u128 > total {
                    return fail(format!("row count {rows} outside 1..={total}"));
                }
            }
            MatrixPolicy::RandomSubset { rows } => {
                if total > rm_mwpc::code::MAX_ENUMERATED_CHECKS {
                    return fail(format!("RM({},{}) has {total} checks, too many to enumerate", self.r, self.m));
                }
                if rows == 0 || rows as u128 > total {
                    return fail(format!("row count {rows} outside 1..={total}"));
                }
            }
        }
        Ok(())
    }

    pub fn code(&self) -> SimResult<RmCode> {
        Ok(RmCode::new(self.r, self.m)?)
    }
}

/// Rounds `fraction · F(r, m)` to the nearest row count, at least 1.
pub fn rows_for_fraction(r: usize, m: usize, fraction: f64) -> SimResult<usize> {
    let total = count_mwpc(r, m)?;
    let rows = (fraction * total as f64).round().max(1.0);
    if !(rows <= total as f64) {
        return Err(SimError::Config(format!("fraction {fraction} of {total} checks is out of range")));
    }
    Ok(rows as usize)
}
