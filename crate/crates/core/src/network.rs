//! Repeater-network scenarios: global states, joint outcome statistics,
//! correlator tables and Charlie's conditional assemblage.
//!
//! Wires are laid out as A, C, C′, B for one relay and A, C, C′, D, D′, B for
//! two. Source matrices are permuted into that layout when the global state is
//! built; see [`Scenario3`] for how each source is ordered on input.

use crate::error::{Error, Result};
use crate::linalg::{contract_factor, kron, permute_subsystems, ComplexMatrix, SubsystemDims};
use crate::quantum::{ejm_basis, AxisTriad, DensityMatrix, EjmBasis, Observable};
use crate::scalar::Real;
use crate::tolerance::{NULL_OUTCOME, PROB_CLAMP};

/// Outcome values of a ±1 measurement in table order.
pub const SIGNS: [i8; 2] = [1, -1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wire {
    A,
    C,
    CPrime,
    D,
    DPrime,
    B,
}

impl Wire {
    pub const THREE_PARTY: [Wire; 4] = [Wire::A, Wire::C, Wire::CPrime, Wire::B];
    pub const FOUR_PARTY: [Wire; 6] = [
        Wire::A,
        Wire::C,
        Wire::CPrime,
        Wire::D,
        Wire::DPrime,
        Wire::B,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Wire::A => "A",
            Wire::C => "C",
            Wire::CPrime => "C'",
            Wire::D => "D",
            Wire::DPrime => "D'",
            Wire::B => "B",
        }
    }

    pub fn parse(s: &str) -> Option<Wire> {
        Some(match s {
            "A" => Wire::A,
            "C" => Wire::C,
            "C'" | "Cp" | "C′" => Wire::CPrime,
            "D" => Wire::D,
            "D'" | "Dp" | "D′" => Wire::DPrime,
            "B" => Wire::B,
            _ => return None,
        })
    }
}

impl std::fmt::Display for Wire {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

fn check_two_qubit<T: Real>(name: &str, rho: &DensityMatrix<T>) -> Result<()> {
    if rho.dims().as_slice() != [2, 2] {
        return Err(Error::Scenario(format!(
            "{name} must be a two-qubit state, got factors {:?}",
            rho.dims().as_slice()
        )));
    }
    Ok(())
}

/// One relay: Alice, Charlie, Bob.
///
/// `rho_ac` is ordered (A, C); `rho_bc` is ordered (B, C′).
#[derive(Debug, Clone)]
pub struct Scenario3<T> {
    pub rho_ac: DensityMatrix<T>,
    pub rho_bc: DensityMatrix<T>,
    pub ejm: EjmBasis<T>,
    pub alice_triad: AxisTriad<T>,
    pub bob_triad: AxisTriad<T>,
}

impl<T: Real> Scenario3<T> {
    pub fn new(
        rho_ac: DensityMatrix<T>,
        rho_bc: DensityMatrix<T>,
        ejm: EjmBasis<T>,
        alice_triad: AxisTriad<T>,
        bob_triad: AxisTriad<T>,
    ) -> Result<Self> {
        check_two_qubit("rho_ac", &rho_ac)?;
        check_two_qubit("rho_bc", &rho_bc)?;
        Ok(Self {
            rho_ac,
            rho_bc,
            ejm,
            alice_triad,
            bob_triad,
        })
    }

    /// Pauli triads on both ends and an EJM of angle `theta`.
    pub fn pauli(rho_ac: DensityMatrix<T>, rho_bc: DensityMatrix<T>, theta: T) -> Result<Self> {
        Self::new(
            rho_ac,
            rho_bc,
            ejm_basis(theta),
            AxisTriad::pauli(),
            AxisTriad::pauli(),
        )
    }

    /// Builds the scenario from a Charlie-first source `rho_cb` ordered (C′, B).
    pub fn from_charlie_first(
        rho_ac: DensityMatrix<T>,
        rho_cb: DensityMatrix<T>,
        ejm: EjmBasis<T>,
        alice_triad: AxisTriad<T>,
        bob_triad: AxisTriad<T>,
    ) -> Result<Self> {
        check_two_qubit("rho_cb", &rho_cb)?;
        let swapped = permute_subsystems(rho_cb.matrix(), rho_cb.dims(), &[1, 0])?;
        let rho_bc = DensityMatrix::from_trusted(swapped, SubsystemDims::qubits(2));
        Self::new(rho_ac, rho_bc, ejm, alice_triad, bob_triad)
    }
}

/// Two relays: Alice, Charlie, Dave, Bob.
///
/// `rho_ac` is ordered (A, C), `rho_cd` (C′, D) and `rho_db` (D′, B).
#[derive(Debug, Clone)]
pub struct Scenario4<T> {
    pub rho_ac: DensityMatrix<T>,
    pub rho_cd: DensityMatrix<T>,
    pub rho_db: DensityMatrix<T>,
    pub ejm_c: EjmBasis<T>,
    pub ejm_d: EjmBasis<T>,
    pub alice_triad: AxisTriad<T>,
    pub bob_triad: AxisTriad<T>,
}

impl<T: Real> Scenario4<T> {
    pub fn new(
        rho_ac: DensityMatrix<T>,
        rho_cd: DensityMatrix<T>,
        rho_db: DensityMatrix<T>,
        ejm_c: EjmBasis<T>,
        ejm_d: EjmBasis<T>,
        alice_triad: AxisTriad<T>,
        bob_triad: AxisTriad<T>,
    ) -> Result<Self> {
        check_two_qubit("rho_ac", &rho_ac)?;
        check_two_qubit("rho_cd", &rho_cd)?;
        check_two_qubit("rho_db", &rho_db)?;
        Ok(Self {
            rho_ac,
            rho_cd,
            rho_db,
            ejm_c,
            ejm_d,
            alice_triad,
            bob_triad,
        })
    }

    pub fn pauli(
        rho_ac: DensityMatrix<T>,
        rho_cd: DensityMatrix<T>,
        rho_db: DensityMatrix<T>,
        theta_c: T,
        theta_d: T,
    ) -> Result<Self> {
        Self::new(
            rho_ac,
            rho_cd,
            rho_db,
            ejm_basis(theta_c),
            ejm_basis(theta_d),
            AxisTriad::pauli(),
            AxisTriad::pauli(),
        )
    }
}

/// ρ_ac ⊗ ρ_bc on wires A, C, C′, B.
pub fn global_state3<T: Real>(s: &Scenario3<T>) -> DensityMatrix<T> {
    let cb = permute_subsystems(s.rho_bc.matrix(), s.rho_bc.dims(), &[1, 0])
        .expect("two-qubit swap");
    DensityMatrix::from_trusted(kron(s.rho_ac.matrix(), &cb), SubsystemDims::qubits(4))
}

/// ρ_ac ⊗ ρ_cd ⊗ ρ_db on wires A, C, C′, D, D′, B.
pub fn global_state4<T: Real>(s: &Scenario4<T>) -> DensityMatrix<T> {
    let m = kron(&kron(s.rho_ac.matrix(), s.rho_cd.matrix()), s.rho_db.matrix());
    DensityMatrix::from_trusted(m, SubsystemDims::qubits(6))
}

/// p(a, c, b | x, y), indexed `[a][c][b]` with a, b in [`SIGNS`] order and
/// c = 1..4 stored at 0..3.
pub type JointTable3<T> = [[[T; 2]; 4]; 2];

/// p(a, c, d, b | x, y), indexed `[a][c][d][b]`.
pub type JointTable4<T> = [[[[T; 2]; 4]; 4]; 2];

/// Clamps round-off negatives and renormalizes.
fn finish_probabilities<T: Real>(raw: &mut [T], label: impl Fn(usize) -> String) -> Result<()> {
    let clamp = T::lit(PROB_CLAMP);
    let mut total = T::zero();
    for (i, p) in raw.iter_mut().enumerate() {
        if *p < T::zero() {
            if *p < -clamp {
                return Err(Error::NegativeProbability {
                    value: p.to_f64_lossy(),
                    outcome: label(i),
                });
            }
            *p = T::zero();
        }
        total = total + *p;
    }
    for p in raw.iter_mut() {
        *p = *p / total;
    }
    Ok(())
}

fn check_setting(name: &'static str, v: usize) -> Result<()> {
    if (1..=3).contains(&v) {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange {
            name,
            value: v as f64,
            range: "1..=3",
        })
    }
}

/// Operator on (C, C′) left after Alice's and Bob's operators are contracted
/// out of the three-party global state.
fn charlie_block<T: Real>(
    global: &ComplexMatrix<T>,
    a_op: &ComplexMatrix<T>,
    b_op: &ComplexMatrix<T>,
) -> ComplexMatrix<T> {
    let after_a = contract_factor(global, &SubsystemDims::qubits(4), 0, a_op).expect("A wire");
    contract_factor(&after_a, &SubsystemDims::qubits(3), 2, b_op).expect("B wire")
}

/// Operator on (C, C′, D, D′) left after contracting Alice's and Bob's wires.
fn relay_block<T: Real>(
    global: &ComplexMatrix<T>,
    a_op: &ComplexMatrix<T>,
    b_op: &ComplexMatrix<T>,
) -> ComplexMatrix<T> {
    let after_a = contract_factor(global, &SubsystemDims::qubits(6), 0, a_op).expect("A wire");
    contract_factor(&after_a, &SubsystemDims::qubits(5), 4, b_op).expect("B wire")
}

fn joint_prob3_from<T: Real>(
    global: &ComplexMatrix<T>,
    s: &Scenario3<T>,
    x: usize,
    y: usize,
) -> Result<JointTable3<T>> {
    check_setting("x", x)?;
    check_setting("y", y)?;
    let a_obs = spin_of(&s.alice_triad, x);
    let b_obs = spin_of(&s.bob_triad, y);
    let charlie: Vec<ComplexMatrix<T>> = (1..=4).map(|c| s.ejm.projector(c)).collect();
    let mut flat = [T::zero(); 16];
    for (ai, &a) in SIGNS.iter().enumerate() {
        let pa = a_obs.outcome_projector(a);
        for (bi, &b) in SIGNS.iter().enumerate() {
            let block = charlie_block(global, &pa, &b_obs.outcome_projector(b));
            for (ci, pc) in charlie.iter().enumerate() {
                flat[ai * 8 + ci * 2 + bi] = pc.trace_product(&block).re;
            }
        }
    }
    finish_probabilities(&mut flat, |i| {
        format!("a={},c={},b={}", SIGNS[i / 8], (i / 2) % 4 + 1, SIGNS[i % 2])
    })?;
    let mut out = [[[T::zero(); 2]; 4]; 2];
    for (i, p) in flat.into_iter().enumerate() {
        out[i / 8][(i / 2) % 4][i % 2] = p;
    }
    Ok(out)
}

/// p(a, c, b | x, y) for settings x, y in 1..=3.
pub fn joint_prob3<T: Real>(s: &Scenario3<T>, x: usize, y: usize) -> Result<JointTable3<T>> {
    joint_prob3_from(global_state3(s).matrix(), s, x, y)
}

fn joint_prob4_from<T: Real>(
    global: &ComplexMatrix<T>,
    s: &Scenario4<T>,
    x: usize,
    y: usize,
) -> Result<JointTable4<T>> {
    check_setting("x", x)?;
    check_setting("y", y)?;
    let a_obs = spin_of(&s.alice_triad, x);
    let b_obs = spin_of(&s.bob_triad, y);
    let relay: Vec<ComplexMatrix<T>> = (1..=4)
        .flat_map(|c| {
            let pc = s.ejm_c.projector(c);
            (1..=4)
                .map(|d| kron(&pc, &s.ejm_d.projector(d)))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut flat = [T::zero(); 64];
    for (ai, &a) in SIGNS.iter().enumerate() {
        let pa = a_obs.outcome_projector(a);
        for (bi, &b) in SIGNS.iter().enumerate() {
            let block = relay_block(global, &pa, &b_obs.outcome_projector(b));
            for (cd, op) in relay.iter().enumerate() {
                flat[ai * 32 + cd * 2 + bi] = op.trace_product(&block).re;
            }
        }
    }
    finish_probabilities(&mut flat, |i| {
        format!(
            "a={},c={},d={},b={}",
            SIGNS[i / 32],
            (i / 8) % 4 + 1,
            (i / 2) % 4 + 1,
            SIGNS[i % 2]
        )
    })?;
    let mut out = [[[[T::zero(); 2]; 4]; 4]; 2];
    for (i, p) in flat.into_iter().enumerate() {
        out[i / 32][(i / 8) % 4][(i / 2) % 4][i % 2] = p;
    }
    Ok(out)
}

/// p(a, c, d, b | x, y) for settings x, y in 1..=3.
pub fn joint_prob4<T: Real>(s: &Scenario4<T>, x: usize, y: usize) -> Result<JointTable4<T>> {
    joint_prob4_from(global_state4(s).matrix(), s, x, y)
}

fn spin_of<T: Real>(triad: &AxisTriad<T>, setting: usize) -> Observable<T> {
    crate::quantum::spin_observable(triad.axes()[setting - 1]).expect("triad axes are unit")
}

/// Every one-, two- and three-body correlator of the one-relay scenario.
/// Indices are zero-based: `three_body[x][k][y]` holds ⟨A_{x+1} C^{k+1} B_{y+1}⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorTable3<T> {
    pub three_body: [[[T; 3]; 3]; 3],
    /// ⟨A_x C^k⟩ at `[x][k]`.
    pub two_body_ac: [[T; 3]; 3],
    /// ⟨B_y C^k⟩ at `[y][k]`.
    pub two_body_bc: [[T; 3]; 3],
    /// ⟨A_x B_y⟩ at `[x][y]`.
    pub two_body_ab: [[T; 3]; 3],
    pub one_body_a: [T; 3],
    pub one_body_b: [T; 3],
    pub one_body_c: [T; 3],
}

impl<T: Real> CorrelatorTable3<T> {
    pub fn zero() -> Self {
        let z3 = [T::zero(); 3];
        Self {
            three_body: [[z3; 3]; 3],
            two_body_ac: [z3; 3],
            two_body_bc: [z3; 3],
            two_body_ab: [z3; 3],
            one_body_a: z3,
            one_body_b: z3,
            one_body_c: z3,
        }
    }

    /// All 63 entries in a fixed order: three-body, AC, BC, AB, A, B, C.
    pub fn entries(&self) -> Vec<T> {
        let mut v = Vec::with_capacity(63);
        v.extend(self.three_body.iter().flatten().flatten());
        for t in [&self.two_body_ac, &self.two_body_bc, &self.two_body_ab] {
            v.extend(t.iter().flatten());
        }
        for t in [&self.one_body_a, &self.one_body_b, &self.one_body_c] {
            v.extend(t.iter());
        }
        v
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.entries()
            .iter()
            .zip(other.entries())
            .fold(T::zero(), |m, (a, b)| m.max((*a - b).abs()))
    }
}

/// ⟨A_x C^k D^l B_y⟩ at `four_body[x][k][l][y]`, zero-based.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatorTable4<T> {
    pub four_body: [[[[T; 3]; 3]; 3]; 3],
}

impl<T: Real> CorrelatorTable4<T> {
    pub fn zero() -> Self {
        Self {
            four_body: [[[[T::zero(); 3]; 3]; 3]; 3],
        }
    }

    pub fn entries(&self) -> Vec<T> {
        self.four_body.iter().flatten().flatten().flatten().copied().collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.entries()
            .iter()
            .zip(other.entries())
            .fold(T::zero(), |m, (a, b)| m.max((*a - b).abs()))
    }
}

/// Correlators from outcome sums over p(a, c, b | x, y).
///
/// Marginal terms are read from the x = y = 1 tables (or the relevant single
/// setting); no-signaling makes the choice immaterial.
pub fn correlators3<T: Real>(s: &Scenario3<T>) -> Result<CorrelatorTable3<T>> {
    let global = global_state3(s);
    let mut t = CorrelatorTable3::zero();
    let vertices = s.ejm.outcome_vectors();
    for x in 0..3 {
        for y in 0..3 {
            let p = joint_prob3_from(global.matrix(), s, x + 1, y + 1)?;
            for (ai, &a) in SIGNS.iter().enumerate() {
                for (ci, v) in vertices.iter().enumerate() {
                    for (bi, &b) in SIGNS.iter().enumerate() {
                        let w = p[ai][ci][bi];
                        let ab = T::lit(f64::from(a * b));
                        for k in 0..3 {
                            let ck = T::lit(f64::from(v[k]));
                            t.three_body[x][k][y] = t.three_body[x][k][y] + ab * ck * w;
                            if y == 0 {
                                t.two_body_ac[x][k] =
                                    t.two_body_ac[x][k] + T::lit(f64::from(a)) * ck * w;
                            }
                            if x == 0 {
                                t.two_body_bc[y][k] =
                                    t.two_body_bc[y][k] + T::lit(f64::from(b)) * ck * w;
                            }
                            if x == 0 && y == 0 {
                                t.one_body_c[k] = t.one_body_c[k] + ck * w;
                            }
                        }
                        t.two_body_ab[x][y] = t.two_body_ab[x][y] + ab * w;
                        if y == 0 {
                            t.one_body_a[x] = t.one_body_a[x] + T::lit(f64::from(a)) * w;
                        }
                        if x == 0 {
                            t.one_body_b[y] = t.one_body_b[y] + T::lit(f64::from(b)) * w;
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

/// Correlators as traces Tr[(A ⊗ C ⊗ B) ρ] of observable products, with the
/// identity standing in for absent parties.
pub fn correlators3_operator<T: Real>(s: &Scenario3<T>) -> CorrelatorTable3<T> {
    let global = global_state3(s);
    let id = ComplexMatrix::identity(2);
    let alice: Vec<ComplexMatrix<T>> = std::iter::once(id.clone())
        .chain(s.alice_triad.observables().iter().map(|o| o.matrix().clone()))
        .collect();
    let bob: Vec<ComplexMatrix<T>> = std::iter::once(id)
        .chain(s.bob_triad.observables().iter().map(|o| o.matrix().clone()))
        .collect();
    let charlie: Vec<ComplexMatrix<T>> = std::iter::once(ComplexMatrix::identity(4))
        .chain(s.ejm.components().iter().map(|o| o.matrix().clone()))
        .collect();
    // full[i][k][j] with index 0 meaning "party not measured"
    let mut full = [[[T::zero(); 4]; 4]; 4];
    for (i, a) in alice.iter().enumerate() {
        for (j, b) in bob.iter().enumerate() {
            let block = charlie_block(global.matrix(), a, b);
            for (k, c) in charlie.iter().enumerate() {
                full[i][k][j] = c.trace_product(&block).re;
            }
        }
    }
    let mut t = CorrelatorTable3::zero();
    for x in 0..3 {
        for k in 0..3 {
            for y in 0..3 {
                t.three_body[x][k][y] = full[x + 1][k + 1][y + 1];
            }
            t.two_body_ac[x][k] = full[x + 1][k + 1][0];
            t.two_body_bc[x][k] = full[0][k + 1][x + 1];
            t.two_body_ab[x][k] = full[x + 1][0][k + 1];
        }
        t.one_body_a[x] = full[x + 1][0][0];
        t.one_body_b[x] = full[0][0][x + 1];
        t.one_body_c[x] = full[0][x + 1][0];
    }
    t
}

/// Four-body correlators Tr[(A_x ⊗ C^k ⊗ D^l ⊗ B_y) ρ].
pub fn correlators4<T: Real>(s: &Scenario4<T>) -> CorrelatorTable4<T> {
    let global = global_state4(s);
    let alice = s.alice_triad.observables();
    let bob = s.bob_triad.observables();
    let relay: Vec<Vec<ComplexMatrix<T>>> = s
        .ejm_c
        .components()
        .iter()
        .map(|c| {
            s.ejm_d
                .components()
                .iter()
                .map(|d| kron(c.matrix(), d.matrix()))
                .collect()
        })
        .collect();
    let mut t = CorrelatorTable4::zero();
    for (x, a) in alice.iter().enumerate() {
        let after_a = contract_factor(global.matrix(), &SubsystemDims::qubits(6), 0, a.matrix())
            .expect("A wire");
        for (y, b) in bob.iter().enumerate() {
            let block = contract_factor(&after_a, &SubsystemDims::qubits(5), 4, b.matrix())
                .expect("B wire");
            for k in 0..3 {
                for l in 0..3 {
                    t.four_body[x][k][l][y] = relay[k][l].trace_product(&block).re;
                }
            }
        }
    }
    t
}

/// Four-body correlators from outcome sums over p(a, c, d, b | x, y).
pub fn correlators4_outcome_sum<T: Real>(s: &Scenario4<T>) -> Result<CorrelatorTable4<T>> {
    let global = global_state4(s);
    let vc = s.ejm_c.outcome_vectors();
    let vd = s.ejm_d.outcome_vectors();
    let mut t = CorrelatorTable4::zero();
    for x in 0..3 {
        for y in 0..3 {
            let p = joint_prob4_from(global.matrix(), s, x + 1, y + 1)?;
            for (ai, &a) in SIGNS.iter().enumerate() {
                for (bi, &b) in SIGNS.iter().enumerate() {
                    let ab = T::lit(f64::from(a * b));
                    for ci in 0..4 {
                        for di in 0..4 {
                            let w = ab * p[ai][ci][di][bi];
                            for k in 0..3 {
                                for l in 0..3 {
                                    let s = T::lit(f64::from(vc[ci][k] * vd[di][l]));
                                    t.four_body[x][k][l][y] = t.four_body[x][k][l][y] + s * w;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(t)
}

/// Outcome probability and normalized Alice–Bob state for one of Charlie's
/// outcomes. `state` is `None` when the outcome is (numerically) impossible.
#[derive(Debug, Clone)]
pub struct ConditionalState<T> {
    pub probability: T,
    pub state: Option<DensityMatrix<T>>,
}

/// σ_c^{AB} for c = 1..4, stored at 0..3.
#[derive(Debug, Clone)]
pub struct ConditionalAssemblage<T> {
    pub outcomes: [ConditionalState<T>; 4],
}

impl<T: Real> ConditionalAssemblage<T> {
    pub fn outcome(&self, c: usize) -> &ConditionalState<T> {
        &self.outcomes[c - 1]
    }

    pub fn total_probability(&self) -> T {
        self.outcomes
            .iter()
            .fold(T::zero(), |acc, o| acc + o.probability)
    }
}

/// σ̃_c = Tr_{CC′}[(1 ⊗ |Φ_c⟩⟨Φ_c| ⊗ 1) ρ], returned as p(c) = Tr σ̃_c and
/// σ_c = σ̃_c / p(c).
pub fn conditional_states<T: Real>(s: &Scenario3<T>) -> Result<ConditionalAssemblage<T>> {
    let global = global_state3(s);
    let merged = SubsystemDims::qubits(4).merge(1, 3);
    let outcomes = [1, 2, 3, 4].map(|c| {
        let unnorm = contract_factor(global.matrix(), &merged, 1, &s.ejm.projector(c))
            .expect("relay wires");
        let p = unnorm.trace().re;
        let state = (p > T::lit(NULL_OUTCOME)).then(|| {
            let m = unnorm.scale(T::one() / p).hermitian_part();
            DensityMatrix::from_trusted(m, SubsystemDims::qubits(2))
        });
        ConditionalState {
            probability: p.max(T::zero()),
            state,
        }
    });
    Ok(ConditionalAssemblage { outcomes })
}
