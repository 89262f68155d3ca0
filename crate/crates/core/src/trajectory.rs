// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Time series of atomic observables and their CSV form.

use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

pub const COLUMNS: [&str; 10] = [
    "tau", "t", "u", "v", "w", "rho11", "rho22", "rho33", "rho44", "concurrence",
];

/// Twelve significant digits in scientific notation.
pub fn format_value(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Tier {
    Full,
    #[default]
    Reduced,
    Analytic,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Full => "full",
            Tier::Reduced => "reduced",
            Tier::Analytic => "analytic",
        })
    }
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "full" => Ok(Tier::Full),
            "reduced" => Ok(Tier::Reduced),
            "analytic" => Ok(Tier::Analytic),
            other => Err(Error::Config(format!("unknown tier '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub tau: f64,
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub w: f64,
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub concurrence: f64,
}

impl Sample {
    /// Observables of a two-atom density matrix. The Bloch components are
    /// read from `ρ22`, `ρ33` and `ρ23` whether or not the state lies in
    /// the single-excitation sector.
    pub fn from_density(tau: f64, t: f64, rho: &ComplexMatrix, concurrence: f64) -> Self {
        let r23 = rho[(1, 2)];
        Self {
            tau,
            t,
            u: 2.0 * r23.re,
            v: -2.0 * r23.im,
            w: rho[(1, 1)].re - rho[(2, 2)].re,
            rho11: rho[(0, 0)].re,
            rho22: rho[(1, 1)].re,
            rho33: rho[(2, 2)].re,
            rho44: rho[(3, 3)].re,
            concurrence,
        }
    }

    fn values(&self) -> [f64; 10] {
        [
            self.tau,
            self.t,
            self.u,
            self.v,
            self.w,
            self.rho11,
            self.rho22,
            self.rho33,
            self.rho44,
            self.concurrence,
        ]
    }

    fn from_values(v: &[f64]) -> Self {
        Self {
            tau: v[0],
            t: v[1],
            u: v[2],
            v: v[3],
            w: v[4],
            rho11: v[5],
            rho22: v[6],
            rho33: v[7],
            rho44: v[8],
            concurrence: v[9],
        }
    }

    /// The sample with every value rounded to its printed precision.
    pub fn rounded(&self) -> Self {
        let v: Vec<f64> = self
            .values()
            .iter()
            .map(|x| format_value(*x).parse().expect("formatted float parses"))
            .collect();
        Self::from_values(&v)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub tier: Tier,
    /// Free-form `key=value` provenance, written next to the CSV.
    pub metadata: Vec<(String, String)>,
}

impl Trajectory {
    pub fn check(&self) -> Result<()> {
        for pair in self.samples.windows(2) {
            if !(pair[1].tau > pair[0].tau) {
                return Err(Error::InvalidGrid(format!(
                    "tau not strictly increasing at {}",
                    pair[1].tau
                )));
            }
        }
        if let Some(s) = self
            .samples
            .iter()
            .find(|s| !(0.0..=1.0).contains(&s.concurrence))
        {
            return Err(Error::InvalidState(format!(
                "concurrence {} outside [0, 1] at tau = {}",
                s.concurrence, s.tau
            )));
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(COLUMNS)?;
        for s in &self.samples {
            w.write_record(s.values().iter().map(|x| format_value(*x)))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("CSV output is ASCII"))
    }

    /// Parses samples written by [`Trajectory::write_csv`]. Metadata is not
    /// part of the CSV and comes back empty.
    pub fn read_csv<R: Read>(input: R, tier: Tier) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.clone();
        if header.iter().ne(COLUMNS.iter().copied()) {
            return Err(Error::Config(format!(
                "unexpected CSV header {:?}",
                header.iter().collect::<Vec<_>>()
            )));
        }
        let mut samples = Vec::new();
        for record in r.records() {
            let record = record?;
            let v = record
                .iter()
                .map(|f| {
                    f.parse::<f64>()
                        .map_err(|e| Error::Config(format!("bad CSV value '{f}': {e}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if v.len() != COLUMNS.len() {
                return Err(Error::Config(format!("row with {} fields", v.len())));
            }
            samples.push(Sample::from_values(&v));
        }
        Ok(Self {
            samples,
            tier,
            metadata: Vec::new(),
        })
    }

    /// Writes `path` and the metadata file `path.meta`.
    pub fn save(&self, path: &Path) -> Result<()> {
        self.write_csv(File::create(path)?)?;
        let mut meta = File::create(metadata_path(path))?;
        writeln!(meta, "tier={}", self.tier)?;
        for (k, v) in &self.metadata {
            writeln!(meta, "{k}={v}")?;
        }
        Ok(())
    }
}

pub fn metadata_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(tau: f64) -> Sample {
        Sample {
            tau,
            t: 2.0 * tau,
            u: 0.1 / 3.0,
            v: -1e-17,
            w: std::f64::consts::PI,
            rho11: 0.0,
            rho22: 0.25,
            rho33: 0.75,
            rho44: 1e-300,
            concurrence: 0.123456789012345,
        }
    }

    #[test]
    fn csv_round_trip_to_printed_precision() {
        let traj = Trajectory {
            samples: (0..5).map(|i| sample(i as f64 * 0.7)).collect(),
            tier: Tier::Analytic,
            metadata: vec![],
        };
        let text = traj.to_csv_string().unwrap();
        assert!(text.starts_with("tau,t,u,v,w,rho11,rho22,rho33,rho44,concurrence\n"));
        assert!(!text.contains('\r'));
        let back = Trajectory::read_csv(text.as_bytes(), Tier::Analytic).unwrap();
        for (a, b) in traj.samples.iter().zip(&back.samples) {
            assert_eq!(a.rounded(), *b);
        }
        assert_eq!(back.to_csv_string().unwrap(), text);
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_value(1.0 / 3.0), "3.33333333333e-1");
        assert_eq!(format_value(0.0), "0.00000000000e0");
    }

    #[test]
    fn check_rejects_bad_samples() {
        let mut traj = Trajectory {
            samples: vec![sample(0.0), sample(0.0)],
            ..Default::default()
        };
        assert!(traj.check().is_err());
        traj.samples[1].tau = 1.0;
        traj.check().unwrap();
        traj.samples[1].concurrence = 1.5;
        assert!(traj.check().is_err());
    }

    #[test]
    fn wrong_header_is_rejected() {
        assert!(Trajectory::read_csv("a,b\n1,2\n".as_bytes(), Tier::Full).is_err());
    }

    #[test]
    fn tier_parsing() {
        assert_eq!("FULL".parse::<Tier>().unwrap(), Tier::Full);
        assert!("x".parse::<Tier>().is_err());
    }

    #[test]
    fn save_writes_metadata() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.csv");
        let traj = Trajectory {
            samples: vec![sample(0.0)],
            tier: Tier::Reduced,
            metadata: vec![("g0".into(), "1".into())],
        };
        traj.save(&path).unwrap();
        let meta = std::fs::read_to_string(metadata_path(&path)).unwrap();
        assert_eq!(meta, "tier=reduced\ng0=1\n");
    }
}
