//! Reed–Muller codes decoded with redundant parity-check matrices made of
//! minimum-weight dual codewords.
//!
//! - [`code`]: RM(r, m) construction and enumeration of all minimum-weight
//!   parity checks.
//! - [`adapt`]: checks through chosen positions and matrices tailored to a
//!   received word.
//! - [`channels`]: erasure, binary symmetric and BPSK/AWGN channels.
//! - [`decoders`]: peeling, weighted BP, ADMM-LP, bit flipping, MRB, and
//!   exact ML references.

pub mod adapt;
pub mod channels;
pub mod code;
pub mod decoders;
pub mod error;
pub mod gf2;
pub mod pcmatrix;

pub use adapt::{
    build_tailored_matrix, mwpc_from_positions, mwpc_support, AdaptError, ReliabilityPartition,
    TailoredMatrixConfig,
};
pub use channels::{Channel, ChannelKind, ChannelObservation, LlrVector, LLR_CAP};
pub use code::{code_params, count_mwpc, CodeParams, RmCode};
pub use decoders::{DecodeResult, Verdict};
pub use error::{Error, Result};
pub use gf2::{BinaryWord, BitMatrix};
pub use pcmatrix::PcMatrix;
