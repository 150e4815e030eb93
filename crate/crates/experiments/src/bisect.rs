//! Threshold search by bisection on a sign change.

/// Interval width at which bisection stops.
pub const WIDTH: f64 = 1e-6;
pub const MAX_ITERATIONS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    /// Midpoint of the final bracket, or the endpoint when there was none.
    pub root: f64,
    pub iterations: usize,
    pub width: f64,
    /// False when `f` has the same sign at both ends. `root` is then the
    /// endpoint nearer to where the positive region would start.
    pub bracketed: bool,
}

/// Finds where `f` drops from positive to non-positive on `[lo, hi]`.
///
/// `f(lo) > 0 ≥ f(hi)` is the bracket. If `f(lo) ≤ 0` the positive region
/// is empty and the result is `lo`; if `f(hi) > 0` it fills the interval
/// and the result is `hi`.
pub fn bisect(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64) -> Bisection {
    assert!(lo < hi, "empty bisection interval [{lo}, {hi}]");
    let (flo, fhi) = (f(lo), f(hi));
    if flo.is_nan() || flo <= 0.0 || fhi > 0.0 {
        return Bisection {
            root: if fhi > 0.0 && flo > 0.0 { hi } else { lo },
            iterations: 0,
            width: hi - lo,
            bracketed: false,
        };
    }
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 0;
    while b - a >= WIDTH && iterations < MAX_ITERATIONS {
        let mid = 0.5 * (a + b);
        if f(mid) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
        iterations += 1;
    }
    Bisection {
        root: 0.5 * (a + b),
        iterations,
        width: b - a,
        bracketed: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let b = bisect(|x| 2.0 - x * x, 0.0, 2.0);
        assert!(b.bracketed);
        assert!(b.width < WIDTH);
        assert!((b.root - 2f64.sqrt()).abs() < WIDTH);
    }

    #[test]
    fn unbracketed_ends() {
        let none = bisect(|_| -1.0, 0.0, 1.0);
        assert_eq!((none.root, none.bracketed), (0.0, false));
        let all = bisect(|_| 1.0, 0.0, 1.0);
        assert_eq!((all.root, all.bracketed), (1.0, false));
    }

    #[test]
    fn iteration_cap() {
        let b = bisect(|x| 1e9 - x, 0.0, 1e30);
        assert_eq!(b.iterations, MAX_ITERATIONS);
    }

    #[test]
    fn root_stays_inside_bracket() {
        let root = 0.3;
        let mut probes = Vec::new();
        let b = bisect(
            |x| {
                probes.push(x);
                root - x
            },
            0.0,
            1.0,
        );
        assert!((b.root - root).abs() <= b.width / 2.0);
        assert_eq!(probes.len(), b.iterations + 2);
    }
}
