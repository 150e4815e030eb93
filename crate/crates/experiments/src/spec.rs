use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use netsteer::Tolerances;
use serde::{Deserialize, Serialize};

use crate::error::{RunError, RunResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepKind {
    #[serde(rename = "3party-depolarizing")]
    ThreePartyDepolarizing,
    #[serde(rename = "3party-amplitude")]
    ThreePartyAmplitude,
    #[serde(rename = "4party-depolarizing")]
    FourPartyDepolarizing,
    #[serde(rename = "4party-amplitude")]
    FourPartyAmplitude,
    #[serde(rename = "distance")]
    Distance,
    #[serde(rename = "compare-bilocal")]
    CompareBilocal,
    #[serde(rename = "random-study")]
    RandomStudy,
    #[serde(rename = "witness")]
    Witness,
}

impl SweepKind {
    pub fn default_grid(self) -> usize {
        match self {
            SweepKind::FourPartyDepolarizing | SweepKind::FourPartyAmplitude => 41,
            _ => 101,
        }
    }

    /// Kinds whose closed forms assume Bell-type relay measurements.
    fn needs_right_angle(self) -> bool {
        !matches!(self, SweepKind::ThreePartyDepolarizing | SweepKind::CompareBilocal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ToleranceProfile {
    Default,
    Strict,
}

impl ToleranceProfile {
    pub fn tolerances(self) -> Tolerances {
        match self {
            ToleranceProfile::Default => Tolerances::DEFAULT,
            ToleranceProfile::Strict => Tolerances::STRICT,
        }
    }
}

/// Everything that determines a report, echoed into it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub kind: SweepKind,
    /// Points per axis (θ points for `compare-bilocal`).
    pub grid: usize,
    /// Relay measurement angle in radians.
    pub theta: f64,
    /// Attenuations for `distance`.
    pub alphas: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    /// Rank of the Ginibre matrices in `random-study`.
    pub rank: usize,
    /// Named states appended to the random samples.
    pub inject: Vec<String>,
    /// Scenario file or bundled fixture for `witness`.
    pub scenario: Option<String>,
    pub tolerance_profile: ToleranceProfile,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl SweepSpec {
    pub fn new(kind: SweepKind) -> Self {
        Self {
            kind,
            grid: kind.default_grid(),
            theta: FRAC_PI_2,
            alphas: vec![0.1, 0.2, 0.3, 0.4, 0.5],
            samples: 100,
            seed: 1,
            rank: 4,
            inject: Vec::new(),
            scenario: None,
            tolerance_profile: ToleranceProfile::Default,
            out: None,
            format: OutputFormat::Csv,
        }
    }

    pub fn validate(&self) -> RunResult<()> {
        let bad = |m: String| Err(RunError::Invalid(m));
        if self.grid < 2 {
            return bad(format!("grid must be at least 2, got {}", self.grid));
        }
        if self.samples < 1 {
            return bad("samples must be at least 1".into());
        }
        if !(1..=4).contains(&self.rank) {
            return bad(format!("rank must be in 1..=4, got {}", self.rank));
        }
        if !self.theta.is_finite() {
            return bad(format!("theta must be finite, got {}", self.theta));
        }
        if self.kind.needs_right_angle() && (self.theta - FRAC_PI_2).abs() > 1e-12 {
            return bad(format!("{:?} runs at theta = pi/2 only", self.kind));
        }
        if self.kind == SweepKind::Distance {
            if self.alphas.is_empty() {
                return bad("distance needs at least one alpha".into());
            }
            if let Some(a) = self.alphas.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
                return bad(format!("alpha must be positive and finite, got {a}"));
            }
        }
        if self.kind == SweepKind::Witness && self.scenario.is_none() {
            return bad("witness needs a scenario file or fixture".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        for kind in [
            SweepKind::ThreePartyDepolarizing,
            SweepKind::ThreePartyAmplitude,
            SweepKind::FourPartyDepolarizing,
            SweepKind::FourPartyAmplitude,
            SweepKind::Distance,
            SweepKind::CompareBilocal,
            SweepKind::RandomStudy,
        ] {
            SweepSpec::new(kind).validate().unwrap();
        }
        assert_eq!(SweepSpec::new(SweepKind::FourPartyAmplitude).grid, 41);
    }

    #[test]
    fn rejects_bad_values() {
        let base = SweepSpec::new(SweepKind::Distance);
        let cases = [
            SweepSpec { grid: 1, ..base.clone() },
            SweepSpec { samples: 0, ..base.clone() },
            SweepSpec { rank: 5, ..base.clone() },
            SweepSpec { alphas: vec![0.1, -0.2], ..base.clone() },
            SweepSpec { alphas: vec![], ..base.clone() },
            SweepSpec { theta: 0.3, ..base.clone() },
            SweepSpec { theta: f64::NAN, kind: SweepKind::ThreePartyDepolarizing, ..base.clone() },
            SweepSpec::new(SweepKind::Witness),
        ];
        for c in cases {
            assert!(matches!(c.validate(), Err(RunError::Invalid(_))), "{c:?}");
        }
        let free = SweepSpec { theta: 0.3, ..SweepSpec::new(SweepKind::ThreePartyDepolarizing) };
        free.validate().unwrap();
    }

    #[test]
    fn kind_names() {
        let s = serde_json::to_string(&SweepKind::ThreePartyDepolarizing).unwrap();
        assert_eq!(s, "\"3party-depolarizing\"");
    }
}
