use std::fmt::Write as _;

use thiserror::Error;

/// Number of stored entries per weight vector (indices 0..=6).
pub const WEIGHT_SLOTS: usize = 7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightsError {
    #[error("weight {label} is negative ({value})")]
    Negative { label: String, value: f64 },
    #[error("omega_6 must equal omega_5 ({omega6} != {omega5})")]
    OmegaTail { omega5: f64, omega6: f64 },
    #[error("psi_6 must be 0, got {0}")]
    PsiTail(f64),
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("missing weight {0}")]
    Missing(String),
    #[error("weight {0} given twice")]
    Duplicate(String),
}

/// Vertex-degree weights `omega_i` and small-edge weights `psi(i)` of the
/// rank-3 measure.
///
/// Lookups past index 6 follow the tail convention `omega_i = omega_5`,
/// `psi(i) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weights {
    omega: [f64; WEIGHT_SLOTS],
    psi: [f64; WEIGHT_SLOTS],
}

impl Weights {
    pub fn new(omega: [f64; WEIGHT_SLOTS], psi: [f64; WEIGHT_SLOTS]) -> Result<Self, WeightsError> {
        for (name, vals) in [("omega", &omega), ("psi", &psi)] {
            if let Some((i, &value)) = vals.iter().enumerate().find(|(_, &x)| x.is_nan() || x < 0.0) {
                return Err(WeightsError::Negative { label: format!("{name}_{i}"), value });
            }
        }
        if omega[6] != omega[5] {
            return Err(WeightsError::OmegaTail { omega5: omega[5], omega6: omega[6] });
        }
        if psi[6] != 0.0 {
            return Err(WeightsError::PsiTail(psi[6]));
        }
        Ok(Weights { omega, psi })
    }

    /// The weight table certifying the `O(1.6755^n)` bound of the rank-3
    /// engine.
    pub fn rank3() -> Self {
        Weights {
            omega: [0.0, 0.580392137, 0.699175718, 0.730706814, 0.742114220, 0.744541491, 0.744541491],
            psi: [0.566096928, 0.436314617, 0.306532603, 0.211986294, 0.119795899, 0.035202514, 0.0],
        }
    }

    pub fn zero() -> Self {
        Weights { omega: [0.0; WEIGHT_SLOTS], psi: [0.0; WEIGHT_SLOTS] }
    }

    pub fn omega(&self, i: usize) -> f64 {
        self.omega[i.min(6)]
    }

    pub fn psi(&self, i: usize) -> f64 {
        if i >= 6 {
            0.0
        } else {
            self.psi[i]
        }
    }

    /// `omega_i - omega_{i-1}` for `i >= 1`.
    pub fn delta_omega(&self, i: usize) -> f64 {
        assert!(i >= 1, "delta_omega is defined for i >= 1");
        self.omega(i) - self.omega(i - 1)
    }

    /// `psi(i) - psi(i-1)` for `i >= 1`.
    pub fn delta_psi(&self, i: usize) -> f64 {
        assert!(i >= 1, "delta_psi is defined for i >= 1");
        self.psi(i) - self.psi(i - 1)
    }

    /// `2^{omega_5}`: the per-vertex growth base certified by these weights.
    pub fn growth_base(&self) -> f64 {
        self.omega(5).exp2()
    }

    pub fn omegas(&self) -> &[f64; WEIGHT_SLOTS] {
        &self.omega
    }

    pub fn psis(&self) -> &[f64; WEIGHT_SLOTS] {
        &self.psi
    }

    /// Returns a copy with `omega_i` replaced; the tail `omega_6 = omega_5`
    /// is kept in sync when `i` is 5.
    pub fn with_omega(mut self, i: usize, value: f64) -> Self {
        self.omega[i] = value;
        if i == 5 {
            self.omega[6] = value;
        }
        self
    }

    /// Parses the 14-line `omega_<i> <decimal>` / `psi_<i> <decimal>` format.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self, WeightsError> {
        let mut omega = [None; WEIGHT_SLOTS];
        let mut psi = [None; WEIGHT_SLOTS];
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |reason: &str| WeightsError::Syntax { line: idx + 1, reason: reason.to_string() };
            let mut toks = line.split_whitespace();
            let (Some(label), Some(value), None) = (toks.next(), toks.next(), toks.next()) else {
                return Err(syntax("expected `<label> <decimal>`"));
            };
            let value: f64 = value.parse().map_err(|_| syntax("value is not a decimal number"))?;
            let (slots, index) = if let Some(i) = label.strip_prefix("omega_") {
                (&mut omega, i)
            } else if let Some(i) = label.strip_prefix("psi_") {
                (&mut psi, i)
            } else {
                return Err(syntax("label must be omega_<i> or psi_<i>"));
            };
            let i: usize =
                index.parse().ok().filter(|&i| i < WEIGHT_SLOTS).ok_or_else(|| syntax("index must be 0..=6"))?;
            if slots[i].replace(value).is_some() {
                return Err(WeightsError::Duplicate(label.to_string()));
            }
        }
        let fill = |slots: [Option<f64>; WEIGHT_SLOTS], name: &str| {
            let mut out = [0.0; WEIGHT_SLOTS];
            for (i, s) in slots.iter().enumerate() {
                out[i] = s.ok_or_else(|| WeightsError::Missing(format!("{name}_{i}")))?;
            }
            Ok::<_, WeightsError>(out)
        };
        Weights::new(fill(omega, "omega")?, fill(psi, "psi")?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..WEIGHT_SLOTS {
            let _ = writeln!(out, "omega_{i} {}", self.omega[i]);
        }
        for i in 0..WEIGHT_SLOTS {
            let _ = writeln!(out, "psi_{i} {}", self.psi[i]);
        }
        out
    }
}
