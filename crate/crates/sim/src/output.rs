use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::{DecoderSpec, ExperimentConfig};
use crate::error::{SimError, SimResult};
use crate::runner::SweepRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// One output line: the experiment settings next to one point's counts.
/// Parameters that do not apply to the decoder or matrix policy are empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub code: String,
    pub r: usize,
    pub m: usize,
    pub channel: String,
    pub param: f64,
    pub decoder: String,
    pub matrix_policy: String,
    pub f: Option<f64>,
    pub s: Option<usize>,
    pub w: Option<f64>,
    pub ell: Option<usize>,
    pub mu: Option<f64>,
    pub tmax: Option<usize>,
    pub nu: Option<usize>,
    pub seed: u64,
    pub frames: u64,
    pub block_errors: u64,
    pub bler: f64,
    pub wall_time_s: f64,
}

impl ResultRow {
    pub fn new(config: &ExperimentConfig, record: &SweepRecord) -> Self {
        let (mut w, mut ell, mut mu, mut tmax, mut nu) = (None, None, None, None, None);
        match config.decoder {
            DecoderSpec::Bp(p) => {
                w = Some(p.weight);
                ell = Some(p.iterations);
            }
            DecoderSpec::Lp(p) => {
                mu = Some(p.mu);
                tmax = Some(p.max_iterations);
            }
            DecoderSpec::Mrb { order } => nu = Some(order),
            _ => {}
        }
        let matrix = if config.decoder.uses_matrix() { Some(config.matrix) } else { None };
        Self {
            code: format!("RM({},{})", config.r, config.m),
            r: config.r,
            m: config.m,
            channel: config.channel.as_str().to_string(),
            param: record.channel_param,
            decoder: config.decoder.name().to_string(),
            matrix_policy: matrix.map_or("none", |p| p.name()).to_string(),
            f: matrix.and_then(|p| p.fraction()),
            s: matrix.and_then(|p| p.rows()),
            w,
            ell,
            mu,
            tmax,
            nu,
            seed: config.seed,
            frames: record.frames,
            block_errors: record.block_errors,
            bler: record.bler,
            wall_time_s: record.wall_time,
        }
    }
}

pub fn result_rows(config: &ExperimentConfig, records: &[SweepRecord]) -> Vec<ResultRow> {
    records.iter().map(|rec| ResultRow::new(config, rec)).collect()
}

/// Serializes rows as CSV (with header) or as a JSON array.
pub fn write_rows<W: Write>(rows: &[ResultRow], format: OutputFormat, out: W) -> SimResult<()> {
    if rows.is_empty() {
        return Err(SimError::Config("no records to write".into()));
    }
    match format {
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            for row in rows {
                writer.serialize(row)?;
            }
            writer.flush()?;
        }
        OutputFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Writes the records of one experiment to `path`.
pub fn emit(config: &ExperimentConfig, records: &[SweepRecord], format: OutputFormat, path: &Path) -> SimResult<()> {
    let rows = result_rows(config, records);
    if rows.is_empty() {
        return Err(SimError::Config("no records to write".into()));
    }
    let mut out = BufWriter::new(File::create(path)?);
    write_rows(&rows, format, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> SimResult<Vec<ResultRow>> {
    let mut reader = csv::Reader::from_reader(input);
    Ok(reader.deserialize().collect::<Result<_, _>>()?)
}

pub fn read_json<R: std::io::Read>(input: R) -> SimResult<Vec<ResultRow>> {
    Ok(serde_json::from_reader(input)?)
}
