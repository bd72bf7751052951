//! The five pointwise bounds on `J_n(t)` and the sweep verifying them.

use serde::{Deserialize, Serialize};

use super::eval_j;
use crate::error::{Error, Result};
use crate::report::{anchors, VerdictRecord};

/// Adopted order-decay constant; the optimal one is strictly smaller.
pub const B_LANDAU: f64 = 0.7;
/// Adopted argument-decay constant; the optimal one is strictly smaller.
pub const C_LANDAU: f64 = 0.8;

/// The pointwise bound families, each with its own validity domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BesselBoundKind {
    /// `|J_0(t)| <= sqrt(2/(pi |t|))`, `n = 0`, `t != 0`.
    Szego,
    /// `|J_n(t)| <= B |n|^{-1/3}`, `n != 0`.
    LandauOrder,
    /// `|J_n(t)| <= C |t|^{-1/3}`, `t != 0`.
    LandauArgument,
    /// `|J_n(t)| <= sqrt(2/pi) |t^2 - |n^2 - 1/4||^{-1/4}`, `n >= 1/2`, `t >= 0`.
    Krasikov,
    /// `|J_n(t)| <= (|t|^{1/4} (|n|^{1/3} + ||t|-|n||)^{1/4})^{-1}`,
    /// integer `n`, `|t| >= 1` (also real `n >= 1`).
    Fused,
    /// `|J_n(t)| <= (|n|+1)^{-1/2}`, integer `n`, `|t| <= 1`.
    SmallT,
}

impl BesselBoundKind {
    pub const ALL: [BesselBoundKind; 6] = [
        BesselBoundKind::Szego,
        BesselBoundKind::LandauOrder,
        BesselBoundKind::LandauArgument,
        BesselBoundKind::Krasikov,
        BesselBoundKind::Fused,
        BesselBoundKind::SmallT,
    ];

    pub fn anchor(self) -> &'static str {
        match self {
            BesselBoundKind::Szego => anchors::BESSEL_SZEGO,
            BesselBoundKind::LandauOrder => anchors::BESSEL_LANDAU_ORDER,
            BesselBoundKind::LandauArgument => anchors::BESSEL_LANDAU_ARG,
            BesselBoundKind::Krasikov => anchors::BESSEL_KRASIKOV,
            BesselBoundKind::Fused => anchors::BESSEL_FUSED,
            BesselBoundKind::SmallT => anchors::BESSEL_SMALL_T,
        }
    }

    /// Whether `(n, t)` lies in this bound's validity domain. `n` is real
    /// here; the integer-only bounds additionally require integrality.
    pub fn admits(self, n: f64, t: f64) -> bool {
        let is_int = n.fract() == 0.0;
        match self {
            BesselBoundKind::Szego => n == 0.0 && t != 0.0,
            BesselBoundKind::LandauOrder => n != 0.0,
            BesselBoundKind::LandauArgument => t != 0.0,
            BesselBoundKind::Krasikov => {
                n >= 0.5 && t >= 0.0 && t * t != (n * n - 0.25).abs()
            }
            BesselBoundKind::Fused => t.abs() >= 1.0 && (is_int || n >= 1.0),
            BesselBoundKind::SmallT => t.abs() <= 1.0 && is_int,
        }
    }
}

/// Closed-form value of the bound at `(n, t)`.
pub fn bound_value(kind: BesselBoundKind, n: f64, t: f64) -> Result<f64> {
    if !kind.admits(n, t) {
        return Err(Error::domain("bound_value", format!("{kind:?} does not admit (n, t) = ({n}, {t})")));
    }
    Ok(match kind {
        BesselBoundKind::Szego => (2.0 / (std::f64::consts::PI * t.abs())).sqrt(),
        BesselBoundKind::LandauOrder => B_LANDAU * n.abs().powf(-1.0 / 3.0),
        BesselBoundKind::LandauArgument => C_LANDAU * t.abs().powf(-1.0 / 3.0),
        BesselBoundKind::Krasikov => {
            (2.0 / std::f64::consts::PI).sqrt() * (t * t - (n * n - 0.25).abs()).abs().powf(-0.25)
        }
        BesselBoundKind::Fused => {
            1.0 / (t.abs().powf(0.25) * (n.abs().powf(1.0 / 3.0) + (t.abs() - n.abs()).abs()).powf(0.25))
        }
        BesselBoundKind::SmallT => 1.0 / (n.abs() + 1.0).sqrt(),
    })
}

/// Rigorous decay bound for the order-dominated regime `n > t >= 0`:
/// `J_n(t) <= exp(n (tanh a - a)) / sqrt(2 pi n tanh a)` with
/// `a = arccosh(n/t)`. Used for truncation-tail certificates.
pub fn order_decay_bound(n: i64, t: f64) -> f64 {
    order_decay_bound_f(n.unsigned_abs() as f64, t.abs())
}

pub(super) fn order_decay_bound_f(n: f64, t: f64) -> f64 {
    debug_assert!(n > 0.0);
    if t <= 0.0 {
        return if n > 0.0 { 0.0 } else { 1.0 };
    }
    if n <= t {
        return 1.0;
    }
    let ratio = n / t;
    let alpha = ratio.acosh();
    let tanh_a = alpha.tanh();
    let log_b = n * (tanh_a - alpha);
    if log_b < -700.0 {
        return 0.0;
    }
    log_b.exp() / (2.0 * std::f64::consts::PI * n * tanh_a).sqrt()
}

#[derive(Clone, Debug)]
pub struct BoundViolation {
    pub kind: BesselBoundKind,
    pub n: i64,
    pub t: f64,
    pub value: f64,
    pub bound: f64,
}

/// Checks every admissible bound on the grid; the verdict carries the worst
/// ratio `|J_n(t)| / bound` and lists violations (expected: none).
pub fn verify_pointwise_bounds(n_range: &[i64], t_grid: &[f64]) -> Result<(VerdictRecord, Vec<BoundViolation>)> {
    let mut violations = Vec::new();
    let mut worst_ratio: f64 = 0.0;
    let mut checked = 0usize;
    for &n in n_range {
        for &t in t_grid {
            let j = eval_j(n, t)?;
            let magnitude = j.value.abs();
            for kind in BesselBoundKind::ALL {
                if !kind.admits(n as f64, t) {
                    continue;
                }
                let b = bound_value(kind, n as f64, t)?;
                checked += 1;
                let ratio = (magnitude - j.abs_error).max(0.0) / b;
                if ratio > worst_ratio {
                    worst_ratio = ratio;
                }
                if magnitude - j.abs_error > b * (1.0 + crate::report::VERDICT_SLACK) {
                    violations.push(BoundViolation { kind, n, t, value: j.value, bound: b });
                }
            }
        }
    }
    let record = VerdictRecord::inequality(
        "bessel.pointwise-bounds",
        anchors::BESSEL_FUSED,
        worst_ratio,
        1.0,
    )
    .with_param("checked", checked)
    .with_param("violations", violations.len());
    Ok((record, violations))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_anchor_points() {
        // Szego at t = 2/pi gives exactly 1.
        let v = bound_value(BesselBoundKind::Szego, 0.0, 2.0 / std::f64::consts::PI).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        // Fused at n = 0, t = 1.
        let v = bound_value(BesselBoundKind::Fused, 0.0, 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        // SmallT at n = 3.
        let v = bound_value(BesselBoundKind::SmallT, 3.0, 0.4).unwrap();
        assert!((v - 0.5).abs() < 1e-14);
    }

    #[test]
    fn domains_are_enforced() {
        assert!(bound_value(BesselBoundKind::Szego, 1.0, 1.0).is_err());
        assert!(bound_value(BesselBoundKind::LandauOrder, 0.0, 1.0).is_err());
        assert!(bound_value(BesselBoundKind::Krasikov, 0.0, 1.0).is_err());
        assert!(bound_value(BesselBoundKind::Fused, 0.0, 0.5).is_err());
        assert!(bound_value(BesselBoundKind::SmallT, 2.0, 1.5).is_err());
    }

    #[test]
    fn coarse_grid_has_no_violations() {
        let n_range: Vec<i64> = (-12..=12).collect();
        let t_grid: Vec<f64> = (0..=60).map(|k| 0.25 * k as f64).collect();
        let (record, violations) = verify_pointwise_bounds(&n_range, &t_grid).unwrap();
        assert!(violations.is_empty(), "violations: {violations:?}");
        assert_eq!(record.status, crate::report::Status::Pass);
    }

    #[test]
    fn order_decay_bound_dominates() {
        for &t in &[0.5, 4.0, 20.0] {
            for n in (t as i64 + 1)..(t as i64 + 40) {
                let b = order_decay_bound(n, t);
                let j = eval_j(n, t).unwrap().value.abs();
                assert!(j <= b * (1.0 + 1e-12) + 1e-300, "n={n} t={t}: {j} > {b}");
            }
        }
    }

    #[test]
    fn order_decay_bound_is_sharp_enough() {
        // The tail certificate must reach far below f64 noise quickly.
        assert!(order_decay_bound(80, 20.0) < 1e-30);
        assert!(order_decay_bound(300, 100.0) < 1e-60);
    }
}
