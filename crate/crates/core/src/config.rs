// Copyright 2026 The cavent Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration and its flat `key=value` file form.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::diffraction::{Variant, SCAN_POINTS};
use crate::error::{Error, Result};
use crate::geometry::{effective_params, EffectiveParams, ModeGeometry, SystemParams};
use crate::reduced::Preparation;
use crate::trajectory::Tier;

pub const MIN_STEPS: usize = 10;

/// Where atom 2 sits relative to atom 1, which is at an antinode.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Placement {
    /// Axial separation in units of the wavelength.
    Separation(f64),
    /// Displacement of atom 2 from the antinode, in wavelengths.
    Displacement(f64),
    /// Explicit coupling constants.
    Couplings(f64, f64),
}

pub fn parse_preparation(s: &str) -> Result<Preparation> {
    let t = s.trim();
    match t.to_ascii_lowercase().as_str() {
        "a" | "casea" => return Ok(Preparation::CaseA),
        "b" | "caseb" => return Ok(Preparation::CaseB),
        "c" | "casec" => return Ok(Preparation::CaseC),
        _ => {}
    }
    let inner = t
        .strip_prefix("custom(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("custom:"))
        .ok_or_else(|| Error::Config(format!("unknown initial state '{s}'")))?;
    let v: Vec<f64> = inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("bad custom component '{x}': {e}")))
        })
        .collect::<Result<_>>()?;
    match v[..] {
        [u, v, w] => {
            if u * u + v * v + w * w > 1.0 + 1e-12 {
                return Err(Error::Config(format!("custom Bloch vector {inner} is longer than 1")));
            }
            Ok(Preparation::Custom(u, v, w))
        }
        _ => Err(Error::Config(format!("custom state needs three components, got '{inner}'"))),
    }
}

pub fn format_preparation(p: &Preparation) -> String {
    match p {
        Preparation::CaseA => "caseA".into(),
        Preparation::CaseB => "caseB".into(),
        Preparation::CaseC => "caseC".into(),
        Preparation::Custom(u, v, w) => format!("custom({u},{v},{w})"),
    }
}

/// Parses a comma-separated list of scaled times; each entry may be a
/// number or a multiple of `pi` such as `9pi/2` or `pi`.
pub fn parse_tau_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| parse_tau(x.trim()))
        .collect()
}

fn parse_tau(s: &str) -> Result<f64> {
    let bad = || Error::Config(format!("bad scaled time '{s}'"));
    let lower = s.to_ascii_lowercase();
    let Some(idx) = lower.find("pi") else {
        return lower.parse().map_err(|_| bad());
    };
    let (num, rest) = lower.split_at(idx);
    let rest = &rest[2..];
    let mult = match num.trim_end_matches('*') {
        "" => 1.0,
        n => n.parse::<f64>().map_err(|_| bad())?,
    };
    let div = match rest {
        "" => 1.0,
        r => r.strip_prefix('/').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(mult * PI / div)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub g0: f64,
    pub delta: f64,
    pub gamma: f64,
    pub kappa: f64,
    pub wavelength: f64,
    pub placement: Option<Placement>,
    pub init: Preparation,
    pub tier: Tier,
    pub tau_max: f64,
    /// Integration steps; `None` picks the per-tier default.
    pub steps: Option<usize>,
    pub nmax: usize,
    pub variant: Variant,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub taus: Vec<f64>,
    /// Output rows of a trajectory.
    pub samples: usize,
    pub r_points: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            g0: 1.0,
            delta: 50.0,
            gamma: 0.0,
            kappa: 0.0,
            wavelength: 1.0,
            placement: None,
            init: Preparation::CaseA,
            tier: Tier::Reduced,
            tau_max: 4.0 * PI,
            steps: None,
            nmax: 2,
            variant: Variant::Canonical,
            out: None,
            seed: 0,
            taus: vec![PI / 2.0, 4.5 * PI, 13.5 * PI],
            samples: 401,
            r_points: SCAN_POINTS,
        }
    }
}

fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad value '{value}' for '{key}'")))
}

impl RunConfig {
    /// Applies one `key=value` setting. Placement keys replace any previous
    /// placement.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('-', "_");
        let v = value.trim();
        match key.as_str() {
            "g0" => self.g0 = num(&key, v)?,
            "delta" => self.delta = num(&key, v)?,
            "gamma" => self.gamma = num(&key, v)?,
            "kappa" => self.kappa = num(&key, v)?,
            "lambda" | "wavelength" => self.wavelength = num(&key, v)?,
            "r12" => self.placement = Some(Placement::Separation(num(&key, v)?)),
            "dr_a" => self.placement = Some(Placement::Displacement(num(&key, v)?)),
            "g1" | "g2" => {
                let x: f64 = num(&key, v)?;
                let (g1, g2) = match self.placement {
                    Some(Placement::Couplings(a, b)) => (a, b),
                    _ => (f64::NAN, f64::NAN),
                };
                let pair = if key == "g1" { (x, g2) } else { (g1, x) };
                self.placement = Some(Placement::Couplings(pair.0, pair.1));
            }
            "init" => self.init = parse_preparation(v)?,
            "tier" => self.tier = v.parse()?,
            "tau_max" => self.tau_max = parse_tau(v)?,
            "steps" => self.steps = Some(num(&key, v)?),
            "nmax" => self.nmax = num(&key, v)?,
            "variant" => self.variant = v.parse()?,
            "out" => self.out = Some(PathBuf::from(v)),
            "seed" => self.seed = num(&key, v)?,
            "taus" => self.taus = parse_tau_list(v)?,
            "samples" => self.samples = num(&key, v)?,
            "r_points" => self.r_points = num(&key, v)?,
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Parses a flat `key=value` file; `#` starts a comment.
    pub fn from_file_contents(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        let mut seen = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
            let k = k.trim().replace('-', "_");
            let group = match k.as_str() {
                "r12" | "dr_a" | "g1" | "g2" => "placement",
                _ => "",
            };
            if !group.is_empty() {
                let prev = seen.insert(group, k.clone());
                let mixed = match (prev.as_deref(), k.as_str()) {
                    (None, _) => false,
                    (Some("g1"), "g2") | (Some("g2"), "g1") => false,
                    _ => true,
                };
                if mixed {
                    return Err(Error::Config(
                        "exactly one of r12, dr_a or (g1, g2) may be given".into(),
                    ));
                }
            }
            cfg.set(&k, v)?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_file_contents(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(s) = self.steps {
            if s < MIN_STEPS {
                return Err(Error::Config(format!("steps = {s} is below {MIN_STEPS}")));
            }
        }
        if let Some(Placement::Couplings(g1, g2)) = self.placement {
            if !(g1.is_finite() && g2.is_finite()) {
                return Err(Error::Config("both g1 and g2 must be given".into()));
            }
        }
        if !(self.tau_max > 0.0) {
            return Err(Error::Config(format!("tau_max = {} must be positive", self.tau_max)));
        }
        if self.samples < 2 {
            return Err(Error::Config("samples must be at least 2".into()));
        }
        if self.nmax < 1 {
            return Err(Error::Config("nmax must be at least 1".into()));
        }
        self.system()?;
        self.geometry()?;
        Ok(())
    }

    pub fn system(&self) -> Result<SystemParams> {
        SystemParams::new(self.delta, self.gamma, self.kappa)
    }

    pub fn geometry(&self) -> Result<ModeGeometry> {
        ModeGeometry::on_axis(self.g0, self.wavelength)
    }

    pub fn placement(&self) -> Result<Placement> {
        self.placement.ok_or_else(|| {
            Error::Config("one of r12, dr_a or (g1, g2) is required".into())
        })
    }

    /// Coupling constants of atoms 1 and 2.
    pub fn couplings(&self) -> Result<(f64, f64)> {
        let geom = self.geometry()?;
        Ok(match self.placement()? {
            Placement::Separation(r) | Placement::Displacement(r) => {
                geom.coupling_pair(r * self.wavelength)
            }
            Placement::Couplings(g1, g2) => (g1, g2),
        })
    }

    pub fn effective(&self) -> Result<EffectiveParams> {
        let (g1, g2) = self.couplings()?;
        effective_params(g1, g2, &self.system()?)
    }

    /// Physical end time for `tau_max`.
    pub fn t_end(&self) -> f64 {
        crate::diffraction::tau_to_time(self.tau_max, self.g0, self.delta)
    }

    pub fn describe(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("g0".to_string(), self.g0.to_string()),
            ("delta".into(), self.delta.to_string()),
            ("gamma".into(), self.gamma.to_string()),
            ("kappa".into(), self.kappa.to_string()),
            ("lambda".into(), self.wavelength.to_string()),
        ];
        match self.placement {
            Some(Placement::Separation(r)) => out.push(("r12".into(), r.to_string())),
            Some(Placement::Displacement(r)) => out.push(("dr_a".into(), r.to_string())),
            Some(Placement::Couplings(a, b)) => {
                out.push(("g1".into(), a.to_string()));
                out.push(("g2".into(), b.to_string()));
            }
            None => {}
        }
        out.push(("init".into(), format_preparation(&self.init)));
        out.push(("tau_max".into(), self.tau_max.to_string()));
        if let Some(s) = self.steps {
            out.push(("steps".into(), s.to_string()));
        }
        out.push(("nmax".into(), self.nmax.to_string()));
        out.push(("variant".into(), self.variant.to_string()));
        out.push(("seed".into(), self.seed.to_string()));
        out
    }
}
