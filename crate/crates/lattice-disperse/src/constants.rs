//! Closed-form constants and admissibility ranges for the dispersive and
//! resolvent bounds. Everything is evaluated lazily with explicit domain
//! errors; nothing is clamped.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;

/// Exponent tuple shared by the verifiers; each evaluator checks only the
/// subfields it needs.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ExponentConfig {
    pub d: usize,
    pub q: f64,
    pub p: f64,
    pub gamma: f64,
    pub a: f64,
    pub kappa: f64,
}

/// Interpolation constant `Gamma(q, d, gamma)` of the weighted resolvent
/// bounds; piecewise in `d` with `q = 2` set separately.
pub fn gamma_big(q: f64, d: usize, gamma: f64) -> Result<f64> {
    if d < 3 {
        return Err(Error::domain("gamma_big", format!("d = {d} < 3")));
    }
    if !(q >= 2.0) {
        return Err(Error::domain("gamma_big", format!("q = {q} < 2")));
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::domain("gamma_big", format!("gamma = {gamma} outside [0, 1]")));
    }
    if q == 2.0 {
        return if d == 4 {
            if gamma >= 1.0 {
                Err(Error::domain("gamma_big", "q = 2, d = 4 requires gamma < 1".to_string()))
            } else {
                Ok(1.0 / (1.0 - gamma))
            }
        } else {
            Ok(1.0)
        };
    }
    let df = d as f64;
    match d {
        3 => {
            let den = 12.0 - (5.0 + 2.0 * gamma) * q;
            if den <= 0.0 {
                return Err(Error::domain("gamma_big", format!("12 - (5+2g)q = {den} <= 0")));
            }
            Ok((3.0 + 12.0 * (q - 2.0) / den).powf(3.0 * (q - 2.0) / q))
        }
        4 => {
            let den = 8.0 - (3.0 + gamma) * q;
            if den <= 0.0 {
                return Err(Error::domain("gamma_big", format!("8 - (3+g)q = {den} <= 0")));
            }
            let inner = (5.0 * q - 2.0) / den;
            Ok((3.0 + 2.0 * inner.powf(1.0 + q / (4.0 * (q - 2.0)))).powf(4.0 * (q - 2.0) / q))
        }
        _ => {
            let den = 6.0 * df - (2.0 * df + 1.0 + 3.0 * gamma) * q;
            if den <= 0.0 {
                return Err(Error::domain("gamma_big", format!("6d - (2d+1+3g)q = {den} <= 0")));
            }
            Ok((3.0 + 6.0 * df * (q - 2.0) / den).powf(df * (q - 2.0) / q))
        }
    }
}

/// Kernel time-integral constant `C_d^gamma`; requires `d > 2 + 2 gamma`.
pub fn c_d_gamma(d: usize, gamma: f64) -> Result<f64> {
    if d < 3 {
        return Err(Error::domain("c_d_gamma", format!("d = {d} < 3")));
    }
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::domain("c_d_gamma", format!("gamma = {gamma} outside [0, 1]")));
    }
    if d as f64 <= 2.0 + 2.0 * gamma {
        return Err(Error::domain("c_d_gamma", format!("d = {d} <= 2 + 2 gamma = {}", 2.0 + 2.0 * gamma)));
    }
    Ok(match d {
        3 => 8.0 / (1.0 - 2.0 * gamma) + 8.0,
        4 => 4.0 / (1.0 - gamma),
        _ => 14.0 * 2f64.powf(d as f64 / 4.0) / (d as f64 - 4.0),
    })
}

/// Critical Hölder exponent `gamma_{d,q}`; callers clamp to `[0, 1]`.
pub fn gamma_dq(d: usize, q: f64) -> Result<f64> {
    if d < 3 {
        return Err(Error::domain("gamma_dq", format!("d = {d} < 3")));
    }
    if !(q >= 2.0) {
        return Err(Error::domain("gamma_dq", format!("q = {q} < 2")));
    }
    Ok(if d == 3 { 6.0 / q - 2.5 } else { 2.0 * d as f64 / q - (2.0 * d as f64 + 1.0) / 3.0 })
}

/// Weighted-decay constant `C_a = 3 (1 + 2a/(2a-1))`, `a > 1/2`.
pub fn c_a(a: f64) -> Result<f64> {
    if !(a > 0.5) {
        return Err(Error::domain("c_a", format!("a = {a} <= 1/2")));
    }
    Ok(3.0 * (1.0 + 2.0 * a / (2.0 * a - 1.0)))
}

fn check_p_gamma(what: &'static str, p: f64, gamma: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::domain(what, format!("gamma = {gamma} outside [0, 1]")));
    }
    if !(p > 2.0 + 2.0 * gamma) {
        return Err(Error::domain(what, format!("p = {p} <= 2 + 2 gamma = {}", 2.0 + 2.0 * gamma)));
    }
    Ok(())
}

/// Constant `C_p^gamma` of the weighted `L^p` Bessel integral bound.
pub fn c_p_gamma(p: f64, gamma: f64) -> Result<f64> {
    check_p_gamma("c_p_gamma", p, gamma)?;
    Ok(if p < 4.0 {
        8.0 * (1.0 / (p - 2.0 - 2.0 * gamma) + 1.0 / (4.0 - p))
    } else if p == 4.0 {
        4.0 / (1.0 - gamma)
    } else {
        14.0 * 2f64.powf(p / 4.0) / (p - 4.0)
    })
}

/// Order-decay factor `kappa_p^gamma(n)`; equals 1 at `n = 0`.
pub fn kappa_p_gamma(n: i64, p: f64, gamma: f64) -> Result<f64> {
    check_p_gamma("kappa_p_gamma", p, gamma)?;
    if n == 0 {
        return Ok(1.0);
    }
    let m = n.unsigned_abs() as f64;
    Ok(if p < 4.0 {
        m.powf(-0.5 + (1.0 + gamma) / p)
    } else if p == 4.0 {
        m.powf(-(1.0 - gamma) / 4.0) * (1.0 + m.ln()).powf(0.25)
    } else {
        m.powf(-1.0 / 3.0 + 1.0 / (3.0 * p) + gamma / p)
    })
}

/// Product `prod_j kappa_d^gamma(n_j)`; requires `d > 2 + 2 gamma`.
pub fn kappa_tilde(n: &LatticeVector, d: usize, gamma: f64) -> Result<f64> {
    if n.dim() != d {
        return Err(Error::domain("kappa_tilde", format!("point has dim {} != d = {d}", n.dim())));
    }
    check_p_gamma("kappa_tilde", d as f64, gamma)?;
    let mut prod = 1.0;
    for &c in &n.0 {
        prod *= kappa_p_gamma(c, d as f64, gamma)?;
    }
    Ok(prod)
}

/// Critical summability exponent `r_p^gamma` of the `kappa` sequence.
pub fn r_p_gamma(p: f64, gamma: f64) -> Result<f64> {
    check_p_gamma("r_p_gamma", p, gamma)?;
    Ok(if p <= 4.0 { 2.0 * p / (p - 2.0 - 2.0 * gamma) } else { 3.0 * p / (p - 1.0 - 3.0 * gamma) })
}

/// Closed-form bound on `||kappa_p^gamma||_r`, `r > r_p^gamma`; `r = inf`
/// returns the sup-norm bound (`1` for `p != 4`, `(1-gamma)^{-1}` at `p = 4`).
pub fn kappa_norm_bound(p: f64, gamma: f64, r: f64) -> Result<f64> {
    let rc = r_p_gamma(p, gamma)?;
    if !(r > rc) {
        return Err(Error::domain("kappa_norm_bound", format!("r = {r} <= r_p^gamma = {rc}")));
    }
    if r.is_infinite() {
        return Ok(if p == 4.0 { 1.0 / (1.0 - gamma) } else { 1.0 });
    }
    Ok(if p == 4.0 {
        let e = 1.0 + r / 4.0;
        (3.0 + 2.0 * (e / (r / rc - 1.0)).powf(e)).powf(1.0 / r)
    } else {
        (3.0 + 2.0 / (r / rc - 1.0)).powf(1.0 / r)
    })
}

/// Short-time Hilbert-Schmidt prefactor `D_{q,d}`; equals 1 at `q = 2`.
pub fn d_qd(q: f64, d: usize) -> Result<f64> {
    if d < 3 {
        return Err(Error::domain("d_qd", format!("d = {d} < 3")));
    }
    if !(q >= 2.0) {
        return Err(Error::domain("d_qd", format!("q = {q} < 2")));
    }
    Ok(if q == 2.0 { 1.0 } else { (q / 2.0).powf(d as f64 * (q - 2.0) / q) })
}

/// A half-open admissible range `[lo, hi)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x < self.hi
    }
}

/// The four admissibility windows of dimension `d`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AdmissibilityRanges {
    /// Weights `u, v` live in `l^q` with `q` in this range.
    pub weight_q: Range,
    /// Potentials live in `l^p` with `p` in this range.
    pub potential_p: Range,
    /// `q` range keeping the boundary resolvent Lipschitz (`d >= 5`).
    pub lipschitz_q: Option<Range>,
    /// `p` range granting a finite point spectrum (`d >= 5`).
    pub finiteness_p: Option<Range>,
}

pub fn admissibility(d: usize) -> Result<AdmissibilityRanges> {
    if d < 3 {
        return Err(Error::domain("admissibility", format!("d = {d} < 3")));
    }
    let df = d as f64;
    let weight_hi = if d == 3 { 12.0 / 5.0 } else { 6.0 * df / (2.0 * df + 1.0) };
    let potential_hi = if d == 3 { 6.0 / 5.0 } else { 3.0 * df / (2.0 * df + 1.0) };
    let (lipschitz_q, finiteness_p) = if d >= 5 {
        (
            Some(Range { lo: 2.0, hi: 6.0 * df / (2.0 * df + 4.0) }),
            Some(Range { lo: 1.0, hi: 3.0 * df / (2.0 * df + 4.0) }),
        )
    } else {
        (None, None)
    };
    Ok(AdmissibilityRanges {
        weight_q: Range { lo: 2.0, hi: weight_hi },
        potential_p: Range { lo: 1.0, hi: potential_hi },
        lipschitz_q,
        finiteness_p,
    })
}

/// Coupling threshold `(1 + C_d^0 Gamma(2p, d, 0))^{-1}` below which the
/// point and singular continuous spectra are empty.
pub fn small_coupling_threshold(p: f64, d: usize) -> Result<f64> {
    let adm = admissibility(d)?;
    if !adm.potential_p.contains(p) {
        return Err(Error::domain(
            "small_coupling_threshold",
            format!("p = {p} outside [{}, {})", adm.potential_p.lo, adm.potential_p.hi),
        ));
    }
    Ok(1.0 / (1.0 + c_d_gamma(d, 0.0)? * gamma_big(2.0 * p, d, 0.0)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_big_q2_instances() {
        assert_eq!(gamma_big(2.0, 3, 0.7).unwrap(), 1.0);
        assert_eq!(gamma_big(2.0, 5, 0.0).unwrap(), 1.0);
        assert!((gamma_big(2.0, 4, 0.5).unwrap() - 2.0).abs() < 1e-15);
        assert!(gamma_big(2.0, 4, 1.0).is_err());
    }

    #[test]
    fn gamma_big_general_value() {
        // d = 5, q = 2.1, gamma = 0: (3 + 3/6.9)^{0.5/2.1}.
        let want = (3.0 + 3.0 / 6.9f64).powf(0.5 / 2.1);
        assert!((gamma_big(2.1, 5, 0.0).unwrap() - want).abs() < 1e-14);
        assert!((want - 1.3416).abs() < 1e-3);
    }

    #[test]
    fn gamma_big_rejects_singular_denominators() {
        // 12/5 is exactly representable, the others sit a hair above the
        // critical value to dodge roundoff in the denominator.
        assert!(gamma_big(12.0 / 5.0, 3, 0.0).is_err());
        assert!(gamma_big(8.0 / 3.0 + 1e-9, 4, 0.0).is_err());
        assert!(gamma_big(30.0 / 11.0 + 1e-9, 5, 0.0).is_err());
    }

    #[test]
    fn gamma_big_monotone_in_gamma() {
        for (q, d) in [(2.2, 3), (2.4, 4), (2.5, 5), (2.6, 6)] {
            let mut prev = 0.0;
            let mut g = 0.0;
            while g <= 0.5 {
                if let Ok(v) = gamma_big(q, d, g) {
                    assert!(v >= prev - 1e-12, "Gamma not monotone at q={q}, d={d}, g={g}");
                    prev = v;
                }
                g += 0.05;
            }
        }
    }

    #[test]
    fn c_d_gamma_values() {
        assert_eq!(c_d_gamma(3, 0.0).unwrap(), 16.0);
        assert_eq!(c_d_gamma(4, 0.5).unwrap(), 8.0);
        assert_eq!(c_d_gamma(8, 0.3).unwrap(), 14.0);
        assert!(c_d_gamma(3, 0.5).is_err());
        // gamma >= 0 dominates gamma = 0 where defined.
        for d in [3usize, 4] {
            for g in [0.1, 0.3, 0.45] {
                assert!(c_d_gamma(d, g).unwrap() >= c_d_gamma(d, 0.0).unwrap());
            }
        }
    }

    #[test]
    fn gamma_dq_values() {
        assert!((gamma_dq(3, 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((gamma_dq(4, 2.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((gamma_dq(5, 2.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn c_a_values_and_limit() {
        assert_eq!(c_a(1.0).unwrap(), 9.0);
        assert_eq!(c_a(0.75).unwrap(), 12.0);
        let mut prev = f64::INFINITY;
        for a in [1.0, 2.0, 8.0, 64.0, 1024.0] {
            let v = c_a(a).unwrap();
            assert!(v < prev && v > 6.0);
            prev = v;
        }
        assert!((c_a(1e9).unwrap() - 6.0).abs() < 1e-7);
        assert!(c_a(0.5).is_err());
    }

    #[test]
    fn weighted_lp_constants() {
        assert_eq!(c_p_gamma(4.0, 0.0).unwrap(), 4.0);
        assert_eq!(c_p_gamma(3.0, 0.0).unwrap(), 16.0);
        assert_eq!(kappa_p_gamma(0, 5.0, 0.3).unwrap(), 1.0);
        let want = 8f64.powf(-5.0 / 18.0);
        assert!((kappa_p_gamma(8, 6.0, 0.0).unwrap() - want).abs() < 1e-14);
        assert!((want - 0.5613).abs() < 1e-3);
        assert!(c_p_gamma(3.0, 0.5).is_err());
    }

    #[test]
    fn kappa_tilde_products() {
        let zero = LatticeVector::zero(4);
        assert_eq!(kappa_tilde(&zero, 4, 0.0).unwrap(), 1.0);
        let n = LatticeVector::new([7, 0, 0]);
        let want = 7f64.powf(-1.0 / 6.0);
        assert!((kappa_tilde(&n, 3, 0.0).unwrap() - want).abs() < 1e-14);
        let n = LatticeVector::new([1, 2, 3, 4, 5]);
        let direct: f64 = (1..=5).map(|m| kappa_p_gamma(m, 5.0, 0.0).unwrap()).product();
        assert!((kappa_tilde(&n, 5, 0.0).unwrap() - direct).abs() < 1e-14);
    }

    #[test]
    fn r_p_gamma_and_norm_bound() {
        assert_eq!(r_p_gamma(3.0, 0.0).unwrap(), 6.0);
        assert!((r_p_gamma(6.0, 0.0).unwrap() - 3.6).abs() < 1e-15);
        assert_eq!(kappa_norm_bound(3.0, 0.0, f64::INFINITY).unwrap(), 1.0);
        assert!((kappa_norm_bound(4.0, 0.25, f64::INFINITY).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(kappa_norm_bound(3.0, 0.0, 5.0).is_err());
    }

    #[test]
    fn kappa_partial_sums_below_norm_bound() {
        // Partial l^r sums stay under the closed-form bound.
        for (p, gamma) in [(3.0, 0.0), (3.5, 0.2), (4.0, 0.0), (4.0, 0.4), (6.0, 0.5)] {
            let rc = r_p_gamma(p, gamma).unwrap();
            for rf in [1.25, 2.0, 4.0] {
                let r = rc * rf;
                let bound = kappa_norm_bound(p, gamma, r).unwrap();
                let mut s = 0.0;
                for n in -4000i64..=4000 {
                    s += kappa_p_gamma(n, p, gamma).unwrap().powf(r);
                }
                assert!(
                    s.powf(1.0 / r) <= bound * (1.0 + 1e-10),
                    "p={p} gamma={gamma} r={r}: {} > {bound}",
                    s.powf(1.0 / r)
                );
            }
        }
    }

    #[test]
    fn d_qd_values() {
        assert_eq!(d_qd(2.0, 5).unwrap(), 1.0);
        assert!((d_qd(4.0, 3).unwrap() - 2f64.powf(1.5)).abs() < 1e-14);
        // q -> 2+ continuity.
        assert!((d_qd(2.0 + 1e-9, 4).unwrap() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn admissibility_ranges() {
        let a3 = admissibility(3).unwrap();
        assert_eq!(a3.weight_q, Range { lo: 2.0, hi: 12.0 / 5.0 });
        assert_eq!(a3.potential_p, Range { lo: 1.0, hi: 6.0 / 5.0 });
        assert!(a3.lipschitz_q.is_none());
        let a4 = admissibility(4).unwrap();
        assert!((a4.weight_q.hi - 8.0 / 3.0).abs() < 1e-15);
        let a5 = admissibility(5).unwrap();
        assert!((a5.lipschitz_q.unwrap().hi - 30.0 / 14.0).abs() < 1e-15);
        assert!((a5.finiteness_p.unwrap().hi - 15.0 / 14.0).abs() < 1e-15);
    }

    #[test]
    fn weight_range_consistent_with_kappa_summability() {
        // The weight-q cap equals 2 r_d^0 / (r_d^0 - 1).
        for d in 3..=10usize {
            let r = r_p_gamma(d as f64, 0.0).unwrap();
            let derived = 2.0 * r / (r - 1.0);
            let printed = admissibility(d).unwrap().weight_q.hi;
            assert!((derived - printed).abs() < 1e-12, "d = {d}: {derived} vs {printed}");
        }
    }

    #[test]
    fn coupling_thresholds() {
        assert!((small_coupling_threshold(1.0, 3).unwrap() - 1.0 / 17.0).abs() < 1e-15);
        assert!((small_coupling_threshold(1.0, 4).unwrap() - 0.2).abs() < 1e-15);
        // Composition cross-check at an interior point.
        let p = 1.05;
        let want = 1.0 / (1.0 + c_d_gamma(5, 0.0).unwrap() * gamma_big(2.1, 5, 0.0).unwrap());
        assert!((small_coupling_threshold(p, 5).unwrap() - want).abs() < 1e-15);
        assert!(small_coupling_threshold(1.3, 3).is_err());
    }
}
