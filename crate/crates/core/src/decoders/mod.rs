//! Decoders for RM codes over arbitrary parity-check matrices, plus exact
//! maximum-likelihood references.
//!
//! Every decoder reports validity against the code's reference parity
//! checks rather than against the (possibly rank-deficient) matrix it
//! decoded with.

mod admm;
mod bitflip;
mod bp;
mod ml;
mod mrb;
mod peeling;
mod polytope;

pub use admm::{admm_lp_decode, AdmmDecoder, AdmmParams};
pub use bitflip::bit_flip_decode;
pub use bp::{bp_decode, BpDecoder, BpParams};
pub use ml::{ml_bec_decode, ml_bruteforce, MAX_BRUTEFORCE_K};
pub use mrb::mrb_decode;
pub use peeling::peel;
pub use polytope::project_parity_polytope;

use crate::code::RmCode;
use crate::gf2::BinaryWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// The output is a codeword.
    Success,
    /// The decoder gave up or ended on a non-codeword.
    Failure,
    /// Erasure decoders only: the observation does not pin down a unique
    /// codeword.
    Ambiguous,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecodeResult {
    pub verdict: Verdict,
    /// Hard output. For [`Verdict::Ambiguous`] unresolved positions read 0.
    pub word: BinaryWord,
    /// Decoder-specific work count: message-passing iterations, flips,
    /// or resolved erasures.
    pub iterations: usize,
    /// Whether `word` satisfies the code's reference parity checks.
    pub valid: bool,
}

impl DecodeResult {
    pub(crate) fn finish(code: &RmCode, word: BinaryWord, iterations: usize) -> Self {
        let valid = code.is_codeword(&word);
        Self {
            verdict: if valid { Verdict::Success } else { Verdict::Failure },
            word,
            iterations,
            valid,
        }
    }

    pub fn is_success(&self) -> bool {
        self.verdict == Verdict::Success
    }
}
