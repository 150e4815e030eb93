//! TOML scenario files.
//!
//! ```toml
//! name = "example"
//! topology = "three-party"          # or "four-party"
//! theta = 1.5707963267948966        # radians; or theta_degrees = 90.0
//! # four-party files use theta_c / theta_d (or *_degrees) instead
//! alice_triad = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]  # optional
//! bob_triad = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]    # optional
//!
//! [tolerance]                        # optional, loosens state validation
//! psd = 1e-4
//! trace = 1e-3
//! herm = 1e-9
//!
//! [[source]]
//! wires = ["A", "C"]                 # order of the matrix's two factors
//! matrix = [[[re, im], ...], ...]    # 4 rows of 4 entries
//! ```
//!
//! Three-party files need sources on {A, C} and {B, C'}; four-party files on
//! {A, C}, {C', D} and {D', B}. Either wire order is accepted; sources are
//! permuted into the order the scenario types expect.

use num_complex::Complex;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::{permute_subsystems, ComplexMatrix, SubsystemDims};
use crate::network::{Scenario3, Scenario4, Wire};
use crate::quantum::{ejm_basis, AxisTriad, DensityMatrix};
use crate::tolerance::Tolerances;

/// Bundled example files as (name, TOML text).
pub const FIXTURES: [(&str, &str); 2] = [
    ("ppt-blind-1", include_str!("../fixtures/ppt_blind_1.toml")),
    ("ppt-blind-2", include_str!("../fixtures/ppt_blind_2.toml")),
];

pub fn fixture_text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn load_fixture(name: &str) -> Result<ScenarioFile> {
    let text = fixture_text(name)
        .ok_or_else(|| Error::Scenario(format!("no bundled fixture named {name:?}")))?;
    ScenarioFile::parse(text)
}

#[derive(Debug, Clone)]
pub enum Network {
    Three(Scenario3<f64>),
    Four(Scenario4<f64>),
}

#[derive(Debug, Clone)]
pub struct ScenarioFile {
    pub name: Option<String>,
    pub description: Option<String>,
    pub network: Network,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: Option<String>,
    description: Option<String>,
    topology: String,
    theta: Option<f64>,
    theta_degrees: Option<f64>,
    theta_c: Option<f64>,
    theta_c_degrees: Option<f64>,
    theta_d: Option<f64>,
    theta_d_degrees: Option<f64>,
    alice_triad: Option<[[f64; 3]; 3]>,
    bob_triad: Option<[[f64; 3]; 3]>,
    tolerance: Option<RawTolerance>,
    #[serde(default)]
    source: Vec<RawSource>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerance {
    herm: Option<f64>,
    psd: Option<f64>,
    trace: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSource {
    name: Option<String>,
    wires: [String; 2],
    matrix: Vec<Vec<[f64; 2]>>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Scenario(msg.into())
}

fn angle(rad: Option<f64>, deg: Option<f64>, key: &str) -> Result<f64> {
    match (rad, deg) {
        (Some(r), None) => Ok(r),
        (None, Some(d)) => Ok(d.to_radians()),
        (None, None) => Err(bad(format!("missing {key} (or {key}_degrees)"))),
        (Some(_), Some(_)) => Err(bad(format!("both {key} and {key}_degrees given"))),
    }
    .and_then(|t| {
        if t.is_finite() {
            Ok(t)
        } else {
            Err(bad(format!("{key} is not finite")))
        }
    })
}

fn triad(axes: Option<[[f64; 3]; 3]>) -> Result<AxisTriad<f64>> {
    axes.map_or(Ok(AxisTriad::pauli()), AxisTriad::new)
}

struct Source {
    label: String,
    wires: [Wire; 2],
    state: DensityMatrix<f64>,
}

impl RawSource {
    fn build(self, index: usize, tol: &Tolerances) -> Result<Source> {
        let label = self.name.unwrap_or_else(|| format!("source {}", index + 1));
        let mut wires = [Wire::A; 2];
        for (w, s) in wires.iter_mut().zip(&self.wires) {
            *w = Wire::parse(s).ok_or_else(|| bad(format!("{label}: unknown wire {s:?}")))?;
        }
        let rows = self
            .matrix
            .into_iter()
            .map(|r| r.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
            .collect();
        let m = ComplexMatrix::from_rows(rows).map_err(|e| bad(format!("{label}: {e}")))?;
        if m.dim() != 4 {
            return Err(bad(format!("{label}: expected a 4x4 matrix, got {}", m.dim())));
        }
        let state = DensityMatrix::with_tolerances(m, SubsystemDims::qubits(2), tol)
            .map_err(|e| bad(format!("{label}: {e}")))?;
        Ok(Source {
            label,
            wires,
            state,
        })
    }

    /// Returns the state ordered as `want`, swapping factors if needed.
    fn ordered(src: &Source, want: [Wire; 2]) -> DensityMatrix<f64> {
        if src.wires == want {
            src.state.clone()
        } else {
            let m = permute_subsystems(src.state.matrix(), src.state.dims(), &[1, 0])
                .expect("two-qubit swap");
            DensityMatrix::from_trusted(m, SubsystemDims::qubits(2))
        }
    }
}

fn take(sources: &mut Vec<Source>, want: [Wire; 2]) -> Result<DensityMatrix<f64>> {
    let pos = sources
        .iter()
        .position(|s| s.wires == want || s.wires == [want[1], want[0]])
        .ok_or_else(|| bad(format!("no source on wires {} and {}", want[0], want[1])))?;
    let src = sources.remove(pos);
    Ok(RawSource::ordered(&src, want))
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with(text, Tolerances::DEFAULT)
    }

    /// Parses with `base` as the validation tolerances; a `[tolerance]`
    /// table in the file overrides individual fields.
    pub fn parse_with(text: &str, base: Tolerances) -> Result<Self> {
        let raw: RawFile = toml::from_str(text).map_err(|e| bad(e.to_string()))?;
        let mut tol = base;
        if let Some(t) = &raw.tolerance {
            tol.herm = t.herm.unwrap_or(tol.herm);
            tol.psd = t.psd.unwrap_or(tol.psd);
            tol.trace = t.trace.unwrap_or(tol.trace);
        }
        let mut sources = raw
            .source
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.build(i, &tol))
            .collect::<Result<Vec<_>>>()?;
        let alice = triad(raw.alice_triad)?;
        let bob = triad(raw.bob_triad)?;
        let network = match raw.topology.as_str() {
            "three-party" => {
                let theta = angle(raw.theta, raw.theta_degrees, "theta")?;
                let rho_ac = take(&mut sources, [Wire::A, Wire::C])?;
                let rho_bc = take(&mut sources, [Wire::B, Wire::CPrime])?;
                Network::Three(Scenario3::new(rho_ac, rho_bc, ejm_basis(theta), alice, bob)?)
            }
            "four-party" => {
                let theta_c = angle(raw.theta_c, raw.theta_c_degrees, "theta_c")?;
                let theta_d = angle(raw.theta_d, raw.theta_d_degrees, "theta_d")?;
                let rho_ac = take(&mut sources, [Wire::A, Wire::C])?;
                let rho_cd = take(&mut sources, [Wire::CPrime, Wire::D])?;
                let rho_db = take(&mut sources, [Wire::DPrime, Wire::B])?;
                Network::Four(Scenario4::new(
                    rho_ac,
                    rho_cd,
                    rho_db,
                    ejm_basis(theta_c),
                    ejm_basis(theta_d),
                    alice,
                    bob,
                )?)
            }
            other => return Err(bad(format!("unknown topology {other:?}"))),
        };
        if let Some(extra) = sources.first() {
            return Err(bad(format!(
                "{}: wires {} and {} do not belong to a {} network",
                extra.label, extra.wires[0], extra.wires[1], raw.topology
            )));
        }
        Ok(Self {
            name: raw.name,
            description: raw.description,
            network,
        })
    }

    pub fn load(path: &std::path::Path) -> std::io::Result<Result<Self>> {
        let text = std::fs::read_to_string(path)?;
        Ok(Self::parse(&text))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SINGLETS: &str = r#"
topology = "three-party"
theta = 0.5
[[source]]
wires = ["A", "C"]
matrix = [[[0,0],[0,0],[0,0],[0,0]], [[0,0],[0.5,0],[-0.5,0],[0,0]],
          [[0,0],[-0.5,0],[0.5,0],[0,0]], [[0,0],[0,0],[0,0],[0,0]]]
[[source]]
wires = ["C'", "B"]
matrix = [[[1,0],[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0],[0,0]],
          [[0,0],[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0],[0,0]]]
"#;

    #[test]
    fn parses_and_orders_sources() {
        let f = ScenarioFile::parse(SINGLETS).unwrap();
        let Network::Three(s) = f.network else {
            panic!("expected three-party")
        };
        assert!((s.ejm.theta() - 0.5).abs() < 1e-15);
        // |00⟩ is symmetric, so the swap must leave it alone.
        assert!((s.rho_bc.matrix()[(0, 0)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn swap_applied_to_asymmetric_source() {
        // |0⟩⟨0| ⊗ |1⟩⟨1| on (C', B) becomes |1⟩⟨1| ⊗ |0⟩⟨0| on (B, C').
        let text = SINGLETS.replace(
            "[[1,0],[0,0],[0,0],[0,0]], [[0,0],[0,0],[0,0],[0,0]],",
            "[[0,0],[0,0],[0,0],[0,0]], [[0,0],[1,0],[0,0],[0,0]],",
        );
        let f = ScenarioFile::parse(&text).unwrap();
        let Network::Three(s) = f.network else {
            panic!()
        };
        assert!((s.rho_bc.matrix()[(2, 2)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(ScenarioFile::parse("topology = \"star\"\ntheta = 1.0").is_err());
        assert!(ScenarioFile::parse(&SINGLETS.replace("theta = 0.5", "")).is_err());
        assert!(ScenarioFile::parse(&SINGLETS.replace("\"C'\"", "\"E\"")).is_err());
        assert!(ScenarioFile::parse(&SINGLETS.replace("[0.5,0],[-0.5,0]", "[0.6,0],[-0.5,0]"))
            .is_err());
        assert!(ScenarioFile::parse(&format!("{SINGLETS}\nextra = 1")).is_err());
    }

    #[test]
    fn bundled_fixtures_load() {
        for (name, _) in FIXTURES {
            let f = load_fixture(name).unwrap();
            assert_eq!(f.name.as_deref(), Some(name));
            assert!(matches!(f.network, Network::Three(_)));
        }
        assert!(load_fixture("nope").is_err());
    }

    #[test]
    fn fixtures_fail_default_validation() {
        // The printed entries are rounded, so strict validation must reject them.
        let stripped = FIXTURES[0].1.replace("psd = 1e-4", "");
        assert!(ScenarioFile::parse(&stripped).is_err());
    }
}
