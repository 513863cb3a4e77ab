use std::borrow::Cow;
use std::time::Instant;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rm_mwpc::adapt::{build_tailored_matrix, AdaptError, ReliabilityPartition, TailoredMatrixConfig};
use rm_mwpc::decoders::{
    bit_flip_decode, ml_bec_decode, ml_bruteforce, mrb_decode, peel, AdmmDecoder, BpDecoder, DecodeResult,
};
use rm_mwpc::{count_mwpc, BinaryWord, Channel, ChannelKind, PcMatrix, RmCode, Verdict};

use crate::config::{DecoderSpec, ExperimentConfig, MatrixPolicy};
use crate::error::SimResult;

/// Frames decoded in parallel between two checks of the stop rule.
const BATCH: u64 = 256;

/// Block-error statistics at one channel parameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub channel_param: f64,
    pub frames: u64,
    pub block_errors: u64,
    pub bler: f64,
    /// Seconds spent on the point, including per-frame matrix construction.
    pub wall_time: f64,
    pub decoder_iters_mean: f64,
}

/// A validated experiment with its code and (when needed) the full check
/// matrix built once.
#[derive(Debug)]
pub struct Simulation {
    config: ExperimentConfig,
    code: RmCode,
    h_full: Option<PcMatrix>,
}

#[derive(Default)]
struct Scratch {
    bp: BpDecoder,
    admm: AdmmDecoder,
}

struct FrameOutcome {
    error: bool,
    iterations: usize,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Simulation {
    pub fn new(config: ExperimentConfig) -> SimResult<Self> {
        config.validate()?;
        let code = config.code()?;
        let needs_full = config.decoder.uses_matrix()
            && count_mwpc(config.r, config.m)? <= rm_mwpc::code::MAX_ENUMERATED_CHECKS;
        let h_full = if needs_full { Some(code.enumerate_mwpc()?) } else { None };
        Ok(Self { config, code, h_full })
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn code(&self) -> &RmCode {
        &self.code
    }

    pub fn run_sweep(&self) -> SimResult<Vec<SweepRecord>> {
        self.config.params.iter().map(|&p| self.run_point(p)).collect()
    }

    /// Simulates frames at `param` until `min_block_errors` errors or
    /// `max_frames` frames, whichever comes first.
    ///
    /// Frame `i` draws all of its randomness from a ChaCha stream keyed by
    /// the master seed, the parameter and `i`, so the record does not depend
    /// on the number of worker threads.
    pub fn run_point(&self, param: f64) -> SimResult<SweepRecord> {
        let start = Instant::now();
        let channel = match self.config.channel {
            ChannelKind::Bec => Channel::bec(param)?,
            ChannelKind::Bsc => Channel::bsc(param)?,
            ChannelKind::BiAwgn => Channel::bi_awgn(param, self.code.rate())?,
        };
        let point_seed = splitmix64(self.config.seed ^ splitmix64(param.to_bits()));
        let (max_frames, target) = (self.config.max_frames, self.config.min_block_errors);

        let (mut frames, mut errors, mut iterations) = (0u64, 0u64, 0u64);
        'batches: while frames < max_frames {
            let end = (frames + BATCH * rayon::current_num_threads() as u64).min(max_frames);
            let outcomes: Vec<FrameOutcome> = (frames..end)
                .into_par_iter()
                .map_init(Scratch::default, |scratch, i| self.frame(&channel, point_seed, i, scratch))
                .collect();
            for outcome in outcomes {
                frames += 1;
                iterations += outcome.iterations as u64;
                if outcome.error {
                    errors += 1;
                    if errors == target {
                        break 'batches;
                    }
                }
            }
        }

        Ok(SweepRecord {
            channel_param: param,
            frames,
            block_errors: errors,
            bler: errors as f64 / frames as f64,
            wall_time: start.elapsed().as_secs_f64(),
            decoder_iters_mean: iterations as f64 / frames as f64,
        })
    }

    fn frame(&self, channel: &Channel, point_seed: u64, index: u64, scratch: &mut Scratch) -> FrameOutcome {
        let code = &self.code;
        let mut rng = ChaCha8Rng::seed_from_u64(point_seed);
        rng.set_stream(index);

        let mut info = BinaryWord::zeros(code.k());
        for i in 0..code.k() {
            info.set(i, rng.random());
        }
        let codeword = code.encode(&info).expect("information word has length k");
        let obs = channel.transmit(&codeword, &mut rng);
        let llr = obs.llr();

        let matrix = match self.matrix_for_frame(&obs, &llr, &mut rng) {
            FrameMatrix::Use(h) => Some(h),
            FrameMatrix::NotNeeded => None,
            FrameMatrix::NothingToInfer => {
                let word = obs.hard_decision();
                return FrameOutcome {
                    error: word != codeword,
                    iterations: 0,
                };
            }
            FrameMatrix::Unavailable => {
                return FrameOutcome {
                    error: true,
                    iterations: 0,
                }
            }
        };
        let h = matrix.as_deref();
        let h = || h.expect("matrix decoders always get a matrix");

        let result: DecodeResult = match self.config.decoder {
            DecoderSpec::Peeling => peel(code, h(), &obs.hard_decision(), obs.erasures().expect("erasure channel")),
            DecoderSpec::MlBec => ml_bec_decode(code, &obs.hard_decision(), obs.erasures().expect("erasure channel")),
            DecoderSpec::Bp(params) => scratch.bp.decode(code, h(), &llr, params),
            DecoderSpec::Lp(params) => scratch.admm.decode(code, h(), &llr, params),
            DecoderSpec::BitFlip { max_flips } => {
                bit_flip_decode(code, h(), &obs.hard_decision(), max_flips.unwrap_or(2 * code.n()))
            }
            DecoderSpec::Mrb { order } => mrb_decode(code, &llr, order),
            DecoderSpec::MlBruteForce => ml_bruteforce(code, &llr).expect("dimension checked by validate"),
        };

        let error = result.word != codeword
            || (self.config.channel == ChannelKind::Bec && result.verdict != Verdict::Success);
        FrameOutcome {
            error,
            iterations: result.iterations,
        }
    }

    fn matrix_for_frame(
        &self,
        obs: &rm_mwpc::ChannelObservation,
        llr: &rm_mwpc::LlrVector,
        rng: &mut ChaCha8Rng,
    ) -> FrameMatrix<'_> {
        if !self.config.decoder.uses_matrix() {
            return FrameMatrix::NotNeeded;
        }
        let full = || match &self.h_full {
            Some(h) => FrameMatrix::Use(Cow::Borrowed(h)),
            None => FrameMatrix::Unavailable,
        };
        match self.config.matrix {
            MatrixPolicy::Full => full(),
            MatrixPolicy::RandomSubset { rows } => {
                let h = self.h_full.as_ref().expect("validated: full matrix is enumerable");
                let mut picked = index::sample(rng, h.num_rows(), rows).into_vec();
                picked.sort_unstable();
                FrameMatrix::Use(Cow::Owned(h.select_rows(&picked)))
            }
            MatrixPolicy::Tailored { fraction, rows } => {
                let partition = match obs.erasures() {
                    Some(erased) => ReliabilityPartition::from_erasures(erased),
                    None => ReliabilityPartition::classify(llr, fraction).expect("fraction validated"),
                };
                if partition.bad().is_empty() {
                    return FrameMatrix::NothingToInfer;
                }
                match build_tailored_matrix(&self.code, &partition, TailoredMatrixConfig::new(rows), rng) {
                    Ok(h) | Err(AdaptError::Saturated { partial: h, .. }) => FrameMatrix::Use(Cow::Owned(h)),
                    Err(AdaptError::Fallback { .. }) => full(),
                    Err(AdaptError::Invalid(e)) => panic!("tailored matrix parameters were validated: {e}"),
                }
            }
        }
    }
}

enum FrameMatrix<'a> {
    Use(Cow<'a, PcMatrix>),
    NotNeeded,
    /// No unreliable positions: the channel decision stands.
    NothingToInfer,
    /// Fallback to the full matrix, which is too large to build.
    Unavailable,
}

/// Runs one channel parameter of `config`.
pub fn run_point(config: &ExperimentConfig, channel_param: f64) -> SimResult<SweepRecord> {
    Simulation::new(config.clone())?.run_point(channel_param)
}

/// Runs every channel parameter of `config` in order, building the full
/// check matrix once.
pub fn run_sweep(config: &ExperimentConfig) -> SimResult<Vec<SweepRecord>> {
    Simulation::new(config.clone())?.run_sweep()
}
