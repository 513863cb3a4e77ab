//! Binary-input memoryless channels and their log-likelihood ratios.
//!
//! LLRs follow `γ_i = log P(y_i | c_i = 0) - log P(y_i | c_i = 1)`, so a
//! positive value favors bit 0.

use std::ops::Index;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::gf2::BinaryWord;

/// Magnitude used for LLRs that would otherwise be infinite.
pub const LLR_CAP: f64 = 1000.0;

/// Channel log-likelihood ratios, one per code bit.
#[derive(Clone, Debug, PartialEq)]
pub struct LlrVector(Vec<f64>);

impl LlrVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Sign decision; a zero LLR decides 0.
    pub fn hard_decision(&self) -> BinaryWord {
        let mut w = BinaryWord::zeros(self.len());
        for (i, &g) in self.0.iter().enumerate() {
            if g < 0.0 {
                w.set(i, true);
            }
        }
        w
    }
}

impl Index<usize> for LlrVector {
    type Output = f64;

    #[inline]
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    Bec,
    Bsc,
    BiAwgn,
}

impl ChannelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ChannelKind::Bec => "bec",
            ChannelKind::Bsc => "bsc",
            ChannelKind::BiAwgn => "awgn",
        }
    }
}

/// A channel with a validated parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Channel {
    /// Erasure probability in `[0, 1]`.
    Bec { erasure: f64 },
    /// Crossover probability in `[0, 1]`.
    Bsc { crossover: f64 },
    /// BPSK (`0 → +1`, `1 → -1`) in Gaussian noise at the given `E_b/N_0`
    /// for a code of rate `rate`.
    BiAwgn { ebn0_db: f64, rate: f64 },
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} {p} outside [0, 1]")))
    }
}

impl Channel {
    pub fn bec(erasure: f64) -> Result<Self> {
        check_probability("erasure probability", erasure)?;
        Ok(Channel::Bec { erasure })
    }

    pub fn bsc(crossover: f64) -> Result<Self> {
        check_probability("crossover probability", crossover)?;
        Ok(Channel::Bsc { crossover })
    }

    pub fn bi_awgn(ebn0_db: f64, rate: f64) -> Result<Self> {
        if !ebn0_db.is_finite() {
            return Err(Error::InvalidParameter(format!("Eb/N0 {ebn0_db} dB is not finite")));
        }
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::InvalidParameter(format!("code rate {rate} outside (0, 1]")));
        }
        Ok(Channel::BiAwgn { ebn0_db, rate })
    }

    pub fn kind(&self) -> ChannelKind {
        match self {
            Channel::Bec { .. } => ChannelKind::Bec,
            Channel::Bsc { .. } => ChannelKind::Bsc,
            Channel::BiAwgn { .. } => ChannelKind::BiAwgn,
        }
    }

    /// Sends `codeword` through the channel.
    pub fn transmit<R: Rng + ?Sized>(&self, codeword: &BinaryWord, rng: &mut R) -> ChannelObservation {
        let n = codeword.len();
        match *self {
            Channel::Bec { erasure } => {
                let mut received = codeword.clone();
                let mut erased = vec![false; n];
                for (i, e) in erased.iter_mut().enumerate() {
                    if rng.random::<f64>() < erasure {
                        *e = true;
                        received.set(i, false);
                    }
                }
                ChannelObservation::Erasure { received, erased }
            }
            Channel::Bsc { crossover } => {
                let mut received = codeword.clone();
                for i in 0..n {
                    if rng.random::<f64>() < crossover {
                        received.flip(i);
                    }
                }
                ChannelObservation::Binary {
                    received,
                    crossover,
                }
            }
            Channel::BiAwgn { ebn0_db, rate } => {
                let sigma2 = awgn_noise_variance(ebn0_db, rate);
                let sigma = sigma2.sqrt();
                let samples = (0..n)
                    .map(|i| {
                        let x = if codeword.get(i) { -1.0 } else { 1.0 };
                        let z: f64 = StandardNormal.sample(rng);
                        x + sigma * z
                    })
                    .collect();
                ChannelObservation::Gaussian { samples, sigma2 }
            }
        }
    }
}

/// Noise variance `σ² = 1 / (2 R 10^(E_b/N_0 / 10))` for unit-energy BPSK.
pub fn awgn_noise_variance(ebn0_db: f64, rate: f64) -> f64 {
    1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))
}

/// What the receiver sees for one frame.
#[derive(Clone, Debug, PartialEq)]
pub enum ChannelObservation {
    /// Erased positions carry `false` in `received`.
    Erasure {
        received: BinaryWord,
        erased: Vec<bool>,
    },
    Binary {
        received: BinaryWord,
        crossover: f64,
    },
    Gaussian {
        samples: Vec<f64>,
        sigma2: f64,
    },
}

impl ChannelObservation {
    pub fn kind(&self) -> ChannelKind {
        match self {
            ChannelObservation::Erasure { .. } => ChannelKind::Bec,
            ChannelObservation::Binary { .. } => ChannelKind::Bsc,
            ChannelObservation::Gaussian { .. } => ChannelKind::BiAwgn,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ChannelObservation::Erasure { erased, .. } => erased.len(),
            ChannelObservation::Binary { received, .. } => received.len(),
            ChannelObservation::Gaussian { samples, .. } => samples.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Per-position erasure flags; `None` for channels without erasures.
    pub fn erasures(&self) -> Option<&[bool]> {
        match self {
            ChannelObservation::Erasure { erased, .. } => Some(erased),
            _ => None,
        }
    }

    /// Channel LLRs. Known erasure-channel bits and noiseless binary
    /// symmetric channels saturate at `±LLR_CAP`.
    pub fn llr(&self) -> LlrVector {
        let signed = |bit: bool, mag: f64| if bit { -mag } else { mag };
        match self {
            ChannelObservation::Erasure { received, erased } => LlrVector(
                erased
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| if e { 0.0 } else { signed(received.get(i), LLR_CAP) })
                    .collect(),
            ),
            ChannelObservation::Binary {
                received,
                crossover,
            } => {
                let p = *crossover;
                let mag = if p <= 0.0 {
                    LLR_CAP
                } else if p >= 1.0 {
                    -LLR_CAP
                } else {
                    ((1.0 - p) / p).ln().clamp(-LLR_CAP, LLR_CAP)
                };
                LlrVector((0..received.len()).map(|i| signed(received.get(i), mag)).collect())
            }
            ChannelObservation::Gaussian { samples, sigma2 } => {
                LlrVector(samples.iter().map(|&y| 2.0 * y / sigma2).collect())
            }
        }
    }

    /// Hard decision of the raw observation (erasures read as 0).
    pub fn hard_decision(&self) -> BinaryWord {
        match self {
            ChannelObservation::Erasure { received, .. } => received.clone(),
            ChannelObservation::Binary { received, .. } => received.clone(),
            ChannelObservation::Gaussian { .. } => self.llr().hard_decision(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn word(n: usize, seed: u64) -> BinaryWord {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        BinaryWord::from_bits(&(0..n).map(|_| rng.random::<bool>() as u8).collect::<Vec<_>>())
    }

    #[test]
    fn noiseless_channels_are_transparent() {
        let c = word(64, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let bec = Channel::bec(0.0).unwrap().transmit(&c, &mut rng);
        assert_eq!(bec.hard_decision(), c);
        assert!(bec.erasures().unwrap().iter().all(|&e| !e));
        let bsc = Channel::bsc(0.0).unwrap().transmit(&c, &mut rng);
        assert_eq!(bsc.hard_decision(), c);
        assert_eq!(bsc.llr().hard_decision(), c);
    }

    #[test]
    fn invalid_parameters() {
        assert!(Channel::bec(1.5).is_err());
        assert!(Channel::bsc(-0.1).is_err());
        assert!(Channel::bi_awgn(f64::NAN, 0.5).is_err());
        assert!(Channel::bi_awgn(1.0, 0.0).is_err());
    }

    #[test]
    fn awgn_variance_at_3db() {
        let s2 = awgn_noise_variance(3.01, 0.5);
        assert!((s2 - 0.5).abs() < 2e-3, "{s2}");
        assert!((awgn_noise_variance(10.0 * 2f64.log10(), 0.5) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn llr_closed_forms() {
        let obs = ChannelObservation::Binary {
            received: BinaryWord::from_bits(&[0, 1]),
            crossover: 0.04,
        };
        let llr = obs.llr();
        assert!((llr[0] - 3.178_053_830_347_945_6).abs() < 1e-12);
        assert_eq!(llr[1], -llr[0]);

        let obs = ChannelObservation::Erasure {
            received: BinaryWord::from_bits(&[0, 1, 0]),
            erased: vec![false, false, true],
        };
        assert_eq!(obs.llr().as_slice(), &[LLR_CAP, -LLR_CAP, 0.0]);

        let obs = ChannelObservation::Gaussian {
            samples: vec![0.0, 0.5, -1.0],
            sigma2: 0.5,
        };
        assert_eq!(obs.llr().as_slice(), &[0.0, 2.0, -4.0]);
    }

    #[test]
    fn empirical_rates_within_three_sigma() {
        let n = 100_000;
        let c = BinaryWord::zeros(n);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [0.04, 0.3] {
            let sigma = (p * (1.0 - p) * n as f64).sqrt();
            let obs = Channel::bec(p).unwrap().transmit(&c, &mut rng);
            let erased = obs.erasures().unwrap().iter().filter(|&&e| e).count() as f64;
            assert!((erased - p * n as f64).abs() < 3.0 * sigma, "BEC {p}: {erased}");
            let obs = Channel::bsc(p).unwrap().transmit(&c, &mut rng);
            let flips = obs.hard_decision().weight() as f64;
            assert!((flips - p * n as f64).abs() < 3.0 * sigma, "BSC {p}: {flips}");
            // constant magnitude, sign follows the received bit
            let llr = obs.llr();
            let mag = llr[0].abs();
            assert!(llr.as_slice().iter().all(|g| g.abs() == mag));
            assert_eq!(llr.hard_decision(), obs.hard_decision());
        }
    }

    #[test]
    fn awgn_llr_mean() {
        let n = 200_000;
        let (ebn0, rate) = (2.0, 0.5);
        let c = BinaryWord::zeros(n);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let obs = Channel::bi_awgn(ebn0, rate).unwrap().transmit(&c, &mut rng);
        let llr = obs.llr();
        let mean = llr.as_slice().iter().sum::<f64>() / n as f64;
        let expect = 4.0 * rate * 10f64.powf(ebn0 / 10.0);
        // Var(γ) = 4/σ² = 2·E[γ]
        let se = (2.0 * expect / n as f64).sqrt();
        assert!((mean - expect).abs() < 3.0 * se, "mean {mean} vs {expect}");
        if let ChannelObservation::Gaussian { samples, .. } = &obs {
            for (y, g) in samples.iter().zip(llr.as_slice()) {
                assert_eq!(y.signum(), g.signum());
            }
        }
    }
}
