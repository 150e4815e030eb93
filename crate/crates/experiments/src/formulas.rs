//! Closed-form witness values and thresholds for the noise models, used as
//! the second route next to full simulation.

use std::f64::consts::SQRT_2;

use crate::bisect::bisect;

/// One relay, depolarized singlets.
pub fn depolarized3_lhs(v1: f64, v2: f64, theta: f64) -> f64 {
    3.0 * (1.0 - v1) * (1.0 - v2) * (1.0 + theta.sin().powi(2)).sqrt()
}

/// One relay, amplitude-damped singlets, θ = π/2.
pub fn amplitude3_lhs(p1: f64, p2: f64) -> f64 {
    let w = (1.0 - p1) * (1.0 - p2);
    (w * (2.0 - p1 - p2)).sqrt() + (w * (2.0 - p2)).sqrt() + (w * (2.0 - p1)).sqrt()
}

/// Two relays, depolarized singlets, both θ = π/2.
pub fn depolarized4_lhs(v: [f64; 3]) -> f64 {
    (1.0 - v[0]) * (1.0 - v[1]) * (1.0 - v[2]) * (6.0 + 3.0 * SQRT_2)
}

/// Nonzero four-body correlators under amplitude damping, θ = π/2.
pub fn amplitude4_correlators(p: [f64; 3]) -> [f64; 3] {
    [
        (1.0 - p[1]) * ((1.0 - p[0]) * (1.0 - p[2])).sqrt(),
        (p[2] - 1.0) * ((1.0 - p[0]) * (1.0 - p[1])).sqrt(),
        (p[0] - 1.0) * ((1.0 - p[1]) * (1.0 - p[2])).sqrt(),
    ]
}

pub fn amplitude4_lhs(p: [f64; 3]) -> f64 {
    let [u1, u2, u3] = amplitude4_correlators(p);
    (u1 * u1 + u2 * u2).sqrt()
        + (u1 * u1 + u3 * u3).sqrt()
        + (u2 * u2 + u3 * u3).sqrt()
        + 2.0 * (u1.abs() + u2.abs() + u3.abs())
}

/// Fibers of lengths l1, l2 with attenuation α, θ = π/2.
pub fn distance_lhs(alpha: f64, l1: f64, l2: f64) -> f64 {
    3.0 * SQRT_2 * (-alpha * (l1 + l2)).exp()
}

/// Largest total length l1 + l2 that still violates.
pub fn distance_bound(alpha: f64) -> f64 {
    (3.0 / SQRT_2).ln() / alpha
}

/// v1 at which the depolarized one-relay witness stops violating, given v2.
/// Zero when no v1 violates.
pub fn depolarized3_boundary(v2: f64, theta: f64) -> f64 {
    let s = 3.0 * (1.0 + theta.sin().powi(2)).sqrt() * (1.0 - v2);
    (1.0 - 2.0 / s).max(0.0)
}

/// Equal-noise steering threshold: 3(1−v)²√(1+sin²θ) = 2.
pub fn steering_threshold(theta: f64) -> f64 {
    1.0 - (2.0 / (3.0 * (1.0 + theta.sin().powi(2)).sqrt())).sqrt()
}

/// Equal-noise bilocal threshold: 3(1−v)² + (1−v)cosθ = 3.
pub fn bilocal_threshold(theta: f64) -> f64 {
    let c = theta.cos();
    1.0 - (-c + (c * c + 36.0).sqrt()) / 6.0
}

/// Bilocal quantity B for equal depolarizing noise.
pub fn bilocal_b(v: f64, theta: f64) -> f64 {
    (1.0 - v) * theta.cos() + 3.0 * (1.0 - v).powi(2)
}

/// Axis intercept p1 of the amplitude-damped one-relay region.
pub fn amplitude3_intercept() -> f64 {
    bisect(|p| amplitude3_lhs(p, 0.0) - 2.0, 0.0, 1.0).root
}

/// Axis intercept p1 of the amplitude-damped two-relay region.
pub fn amplitude4_intercept() -> f64 {
    bisect(|p| amplitude4_lhs([p, 0.0, 0.0]) - 4.0, 0.0, 1.0).root
}

pub fn depolarized4_intercept() -> f64 {
    1.0 - 4.0 / (6.0 + 3.0 * SQRT_2)
}
