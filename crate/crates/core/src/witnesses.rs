//! Detection criteria: network CHSH-like steering inequalities for one and
//! two relays, the two-party CHSH-like steering inequality, the bilocal
//! inequality and the PPT test on conditional states.

use crate::error::Result;
use crate::linalg::{hermitian_eigenvalues, partial_transpose};
use crate::network::{ConditionalAssemblage, CorrelatorTable3, CorrelatorTable4};
use crate::quantum::DensityMatrix;
use crate::scalar::Real;
use crate::tolerance::{BORDERLINE, PPT_ENTANGLED};

/// Value of an inequality's left side against its bound.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessVerdict<T> {
    pub lhs: T,
    pub bound: T,
    /// `lhs > bound`, strictly and without slack.
    pub violated: bool,
    /// `|lhs - bound|` is below the borderline tolerance.
    pub inconclusive: bool,
    /// The square-root blocks summed into `lhs`.
    pub terms: Vec<T>,
}

impl<T: Real> WitnessVerdict<T> {
    fn from_terms(terms: Vec<T>, bound: T) -> Self {
        let lhs = terms.iter().fold(T::zero(), |a, &t| a + t);
        Self {
            lhs,
            bound,
            violated: lhs > bound,
            inconclusive: (lhs - bound).abs() < T::lit(BORDERLINE),
            terms,
        }
    }

    /// lhs - bound; positive when violated.
    pub fn margin(&self) -> T {
        self.lhs - self.bound
    }
}

/// Relay-side combinations C^m + (-1)^m C^n for m < n, as (m, n, sign) with
/// zero-based indices.
pub const RELAY_PAIRS: [(usize, usize, i8); 3] = [(0, 1, -1), (0, 2, -1), (1, 2, 1)];

fn root_block<T: Real>(f: impl Fn(usize, usize) -> T) -> T {
    let mut acc = T::zero();
    for x in 0..3 {
        for y in 0..3 {
            let v = f(x, y);
            acc = acc + v * v;
        }
    }
    acc.sqrt()
}

/// One relay, bound 2. Terms are the blocks for C²+C³, C¹−C² and C¹−C³.
pub fn nchsh3_lhs<T: Real>(t: &CorrelatorTable3<T>) -> WitnessVerdict<T> {
    let e = &t.three_body;
    let order = [RELAY_PAIRS[2], RELAY_PAIRS[0], RELAY_PAIRS[1]];
    let terms = order
        .iter()
        .map(|&(m, n, sign)| {
            let s = T::lit(f64::from(sign));
            root_block(|x, y| e[x][m][y] + s * e[x][n][y])
        })
        .collect();
    WitnessVerdict::from_terms(terms, T::lit(2.0))
}

/// Two relays, bound 4. Terms run over (C pair, D pair) in [`RELAY_PAIRS`]
/// order, C pair outermost.
pub fn nchsh4_lhs<T: Real>(t: &CorrelatorTable4<T>) -> WitnessVerdict<T> {
    let e = &t.four_body;
    let mut terms = Vec::with_capacity(9);
    for &(m, n, sc) in &RELAY_PAIRS {
        for &(p, q, sd) in &RELAY_PAIRS {
            let (sc, sd) = (T::lit(f64::from(sc)), T::lit(f64::from(sd)));
            terms.push(root_block(|x, y| {
                e[x][m][p][y] + sd * e[x][m][q][y] + sc * (e[x][n][p][y] + sd * e[x][n][q][y])
            }));
        }
    }
    WitnessVerdict::from_terms(terms, T::lit(4.0))
}

/// Two-party CHSH-like steering test on `corr[i][j]` = ⟨A_{i+1} B_{j+1}⟩,
/// bound 2.
pub fn chsh_steering_lhs<T: Real>(corr: &[[T; 2]; 2]) -> WitnessVerdict<T> {
    let plus = |j: usize| corr[0][j] + corr[1][j];
    let minus = |j: usize| corr[0][j] - corr[1][j];
    let terms = vec![
        (plus(0) * plus(0) + plus(1) * plus(1)).sqrt(),
        (minus(0) * minus(0) + minus(1) * minus(1)).sqrt(),
    ];
    WitnessVerdict::from_terms(terms, T::lit(2.0))
}

/// Quantities of the bilocal inequality `B ≤ 3 + 5Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(non_snake_case)]
pub struct BilocalVerdict<T> {
    pub S: T,
    pub T: T,
    pub Z: T,
    pub B: T,
    pub bound: T,
    pub violated: bool,
}

/// S sums the diagonal two-body terms (Bob's minus Alice's), T the six
/// three-body entries with x, k, y all distinct, and Z is the largest
/// magnitude among every remaining correlator: one-body terms, ⟨A_x B_y⟩,
/// off-diagonal ⟨A_x C^k⟩ and ⟨B_y C^k⟩, and three-body entries with a
/// repeated index.
#[allow(non_snake_case)]
pub fn bilocal_test<T: Real>(t: &CorrelatorTable3<T>) -> BilocalVerdict<T> {
    let mut S = T::zero();
    let mut Z = T::zero();
    let mut bump = |v: T| Z = Z.max(v.abs());
    for i in 0..3 {
        S = S + t.two_body_bc[i][i] - t.two_body_ac[i][i];
        bump(t.one_body_a[i]);
        bump(t.one_body_b[i]);
        bump(t.one_body_c[i]);
        for j in 0..3 {
            bump(t.two_body_ab[i][j]);
            if i != j {
                bump(t.two_body_ac[i][j]);
                bump(t.two_body_bc[i][j]);
            }
        }
    }
    let mut T_ = T::zero();
    for x in 0..3 {
        for k in 0..3 {
            for y in 0..3 {
                let v = t.three_body[x][k][y];
                if x != k && k != y && x != y {
                    T_ = T_ + v;
                } else {
                    bump(v);
                }
            }
        }
    }
    let B = S / T::lit(3.0) - T_;
    let bound = T::lit(3.0) + T::lit(5.0) * Z;
    BilocalVerdict {
        S,
        T: T_,
        Z,
        B,
        bound,
        violated: B > bound,
    }
}

/// Smallest eigenvalue of the partial transpose over the second qubit.
pub fn ppt_min_eigenvalue<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let pt = partial_transpose(rho.matrix(), rho.dims(), 1)?;
    Ok(hermitian_eigenvalues(&pt)?[0])
}

/// True if some possible outcome leaves Alice and Bob in a state whose
/// partial transpose has an eigenvalue below the entanglement threshold.
pub fn steering_by_entanglement<T: Real>(a: &ConditionalAssemblage<T>) -> Result<bool> {
    for o in &a.outcomes {
        if let Some(state) = &o.state {
            if ppt_min_eigenvalue(state)? < -T::lit(PPT_ENTANGLED) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
