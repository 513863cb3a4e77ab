//! Monte Carlo block-error-rate simulation of Reed–Muller codes decoded
//! with full, tailored or randomly thinned minimum-weight check matrices.
//!
//! ```no_run
//! use rm_mwpc::ChannelKind;
//! use rm_sim::{run_sweep, DecoderSpec, ExperimentConfig, MatrixPolicy};
//!
//! let config = ExperimentConfig::new(
//!     (2, 5),
//!     ChannelKind::Bec,
//!     vec![0.3, 0.4],
//!     DecoderSpec::Peeling,
//!     MatrixPolicy::Full,
//!     1_000_000,
//!     7,
//! );
//! for record in run_sweep(&config).unwrap() {
//!     println!("{} {}", record.channel_param, record.bler);
//! }
//! ```

pub mod config;
pub mod error;
pub mod output;
pub mod runner;

pub use config::{rows_for_fraction, DecoderSpec, ExperimentConfig, MatrixPolicy};
pub use error::{SimError, SimResult};
pub use output::{emit, read_csv, read_json, result_rows, write_rows, OutputFormat, ResultRow};
pub use runner::{run_point, run_sweep, Simulation, SweepRecord};
