//! Adaptive panel quadrature with closed-form tail majorants.
//!
//! Panels are capped at length pi so that every oscillation of the Bessel
//! kernels is resolved; infinite upper limits require a majorant whose tail
//! integral is exact, which keeps the reported error honest.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::Complex;

/// Value, error bound and cost of one integration.
///
/// `error_bound` is rigorous for the tail part whenever a majorant was
/// supplied; the panel part is an a-posteriori estimate, and `certified`
/// records whether a rigorous tail majorant backed the run.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureResult {
    pub value: Complex,
    pub error_bound: f64,
    pub evaluations: usize,
    pub certified: bool,
}

/// Closed-form integrable majorant of `|f|` on `[T, infinity)`.
#[derive(Clone, Copy, Debug)]
pub enum TailMajorant {
    /// `|f(t)| <= coeff * t^{-exponent}` with `exponent > 1`.
    PowerLaw { coeff: f64, exponent: f64 },
    /// `|f(t)| <= coeff * exp(-rate t)` with `rate > 0`.
    Exponential { coeff: f64, rate: f64 },
}

impl TailMajorant {
    /// Exact integral of the majorant over `[t, infinity)`.
    pub fn tail_integral(&self, t: f64) -> f64 {
        match *self {
            TailMajorant::PowerLaw { coeff, exponent } => {
                debug_assert!(exponent > 1.0);
                coeff * t.powf(1.0 - exponent) / (exponent - 1.0)
            }
            TailMajorant::Exponential { coeff, rate } => coeff * (-rate * t).exp() / rate,
        }
    }

    /// Smallest cutoff with tail integral below `eps`, or None if absurd.
    fn cutoff_for(&self, eps: f64, lo: f64) -> Option<f64> {
        let mut t = lo.max(1.0);
        for _ in 0..200 {
            if self.tail_integral(t) <= eps {
                return Some(t);
            }
            t *= 1.5;
            if t > 1e12 {
                return None;
            }
        }
        None
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadratureOptions {
    /// Absolute tolerance target for panel refinement.
    pub tol: f64,
    pub max_evals: usize,
    /// Cap on panel length; pi resolves the Bessel oscillation scale.
    pub max_panel: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions { tol: 1e-10, max_evals: 20_000_000, max_panel: std::f64::consts::PI }
    }
}

// 7-point Gauss-Legendre nodes/weights on [-1, 1] (positive half).
const GL7_NODES: [f64; 4] = [0.0, 0.405845151377397167, 0.741531185599394440, 0.949107912342758525];
const GL7_WEIGHTS: [f64; 4] =
    [0.417959183673469388, 0.381830050505118945, 0.279705391489276668, 0.129484966168869693];

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half).
const GL15_NODES: [f64; 8] = [
    0.0,
    0.201194093997434522,
    0.394151347077563370,
    0.570972172608538848,
    0.724417731360170047,
    0.848206583410427216,
    0.937273392400705904,
    0.987992518020485428,
];
const GL15_WEIGHTS: [f64; 8] = [
    0.202578241925561273,
    0.198431485327111576,
    0.186161000015562211,
    0.166269205816993934,
    0.139570677926154314,
    0.107159220467171935,
    0.070366047488108125,
    0.030753241996117268,
];

fn panel_rules<F: FnMut(f64) -> Complex>(f: &mut F, lo: f64, hi: f64) -> (Complex, Complex, usize) {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let zero = Complex::new(0.0, 0.0);
    let mut i7 = zero;
    let mut i15 = zero;
    let mut evals = 0usize;
    for (k, &x) in GL7_NODES.iter().enumerate() {
        if k == 0 {
            i7 += GL7_WEIGHTS[0] * f(c);
            evals += 1;
        } else {
            i7 += GL7_WEIGHTS[k] * (f(c - h * x) + f(c + h * x));
            evals += 2;
        }
    }
    for (k, &x) in GL15_NODES.iter().enumerate() {
        if k == 0 {
            i15 += GL15_WEIGHTS[0] * f(c);
            evals += 1;
        } else {
            i15 += GL15_WEIGHTS[k] * (f(c - h * x) + f(c + h * x));
            evals += 2;
        }
    }
    (i15 * h, i7 * h, evals)
}

struct Panel {
    err: f64,
    lo: f64,
    hi: f64,
    value: Complex,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}

/// Adaptive integration of a complex-valued integrand over `[a, b]`;
/// `b = infinity` requires `tail`, whose exact tail integral is folded into
/// both the value bracket and the error bound.
pub fn integrate<F: FnMut(f64) -> Complex>(
    mut f: F,
    a: f64,
    b: f64,
    tail: Option<TailMajorant>,
    opts: QuadratureOptions,
) -> Result<QuadratureResult> {
    let (upper, tail_err, certified) = if b.is_finite() {
        (b, 0.0, false)
    } else {
        let m = tail.ok_or_else(|| {
            Error::Quadrature("infinite upper limit requires a tail majorant".into())
        })?;
        let cut = m
            .cutoff_for(0.5 * opts.tol, a)
            .ok_or_else(|| Error::Quadrature("tail majorant never reaches the tolerance".into()))?;
        (cut, m.tail_integral(cut), true)
    };
    if !(upper >= a) {
        return Err(Error::Quadrature(format!("empty range [{a}, {upper}]")));
    }
    if upper == a {
        return Ok(QuadratureResult {
            value: Complex::new(0.0, 0.0),
            error_bound: tail_err,
            evaluations: 0,
            certified,
        });
    }

    let n_init = (((upper - a) / opts.max_panel).ceil() as usize).max(1);
    if n_init * 22 > opts.max_evals {
        return Err(Error::Quadrature(format!(
            "range [{a}, {upper}] needs {n_init} panels, over the evaluation budget"
        )));
    }
    let mut heap = BinaryHeap::new();
    let mut evals = 0usize;
    let width = (upper - a) / n_init as f64;
    for i in 0..n_init {
        let lo = a + i as f64 * width;
        let hi = if i + 1 == n_init { upper } else { a + (i + 1) as f64 * width };
        let (i15, i7, e) = panel_rules(&mut f, lo, hi);
        evals += e;
        heap.push(Panel { err: (i15 - i7).norm(), lo, hi, value: i15 });
    }

    let quad_tol = 0.5 * opts.tol;
    loop {
        let total_err: f64 = heap.iter().map(|p| p.err).sum();
        if total_err <= quad_tol {
            break;
        }
        let worst = heap.pop().expect("heap nonempty");
        if evals + 44 > opts.max_evals {
            return Err(Error::Quadrature(format!(
                "evaluation budget {} exhausted with panel error {:.3e} > {:.3e}",
                opts.max_evals, total_err, quad_tol
            )));
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Panel at roundoff width; keep its estimate.
            let mut p = worst;
            p.err = 0.0;
            heap.push(p);
            continue;
        }
        let (l15, l7, e1) = panel_rules(&mut f, worst.lo, mid);
        let (r15, r7, e2) = panel_rules(&mut f, mid, worst.hi);
        evals += e1 + e2;
        heap.push(Panel { err: (l15 - l7).norm(), lo: worst.lo, hi: mid, value: l15 });
        heap.push(Panel { err: (r15 - r7).norm(), lo: mid, hi: worst.hi, value: r15 });
    }

    let mut panels: Vec<Panel> = heap.into_vec();
    // Deterministic summation order.
    panels.sort_by(|x, y| x.lo.partial_cmp(&y.lo).unwrap_or(Ordering::Equal));
    let mut value = Complex::new(0.0, 0.0);
    let mut err = tail_err;
    for p in &panels {
        value += p.value;
        err += p.err;
    }
    // Roundoff floor of the panel sum.
    err += 1e-16 * panels.len() as f64 * value.norm().max(1.0);
    Ok(QuadratureResult { value, error_bound: err, evaluations: evals, certified })
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tail: Option<TailMajorant>,
    opts: QuadratureOptions,
) -> Result<QuadratureResult> {
    integrate(|t| Complex::new(f(t), 0.0), a, b, tail, opts)
}
