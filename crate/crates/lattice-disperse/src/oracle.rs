//! Independent reference implementations used by the test and acceptance
//! suites. Nothing here shares code with the production paths it checks.

use num_bigint::BigInt;

use crate::lattice::{LatticeVector, Sequence};
use crate::Complex;

/// Fixed-point fraction bits for the series oracle; generous headroom over
/// the largest intermediate term at `t <= 1000`.
const ORACLE_FRAC_BITS: u32 = 640;

fn fixed_from_f64(x: f64) -> BigInt {
    // Every finite f64 is dyadic; the conversion below is exact.
    assert!(x.is_finite() && x >= 0.0);
    if x == 0.0 {
        return BigInt::from(0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & 0xf_ffff_ffff_ffff;
    let (mantissa, e) = if exp == 0 { (frac, -1074i64) } else { (frac | (1 << 52), exp - 1075) };
    let shift = e + ORACLE_FRAC_BITS as i64;
    assert!(shift >= 0, "argument too small for the fixed-point scale");
    BigInt::from(mantissa) << shift
}

fn fixed_to_f64(x: &BigInt) -> f64 {
    // Split into integer part and fraction to stay inside f64 range.
    let int_part = x >> ORACLE_FRAC_BITS;
    let frac_part = x - (&int_part << ORACLE_FRAC_BITS);
    let i = num_traits_to_f64(&int_part);
    let f = num_traits_to_f64(&frac_part) / 2f64.powi(ORACLE_FRAC_BITS as i32);
    i + f
}

fn num_traits_to_f64(x: &BigInt) -> f64 {
    use num_bigint::Sign;
    let (sign, digits) = x.to_u64_digits();
    let mut v = 0.0f64;
    for &d in digits.iter().rev() {
        v = v * 1.8446744073709552e19 + d as f64;
    }
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

/// `J_n(t)` by the ascending power series in exact fixed-point arithmetic.
///
/// Every multiplication truncates at `2^-640`, so the accumulated error is
/// far below `1e-100`; the alternating series is summed until the terms
/// vanish at this scale. Slow and rigorous.
pub fn bessel_j_series(n: u32, t: f64) -> f64 {
    assert!(t >= 0.0 && t <= 1000.0, "oracle range");
    if t == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let half = fixed_from_f64(t / 2.0);
    let half_sq = &half * &half >> ORACLE_FRAC_BITS;
    // term_0 = (t/2)^n / n!
    let mut term = BigInt::from(1) << ORACLE_FRAC_BITS;
    for k in 1..=n as u64 {
        term = &term * &half >> ORACLE_FRAC_BITS;
        term /= k;
    }
    let mut sum = term.clone();
    let mut negative = false;
    let zero = BigInt::from(0);
    let mut k = 1u64;
    loop {
        term = &term * &half_sq >> ORACLE_FRAC_BITS;
        term /= k * (n as u64 + k);
        negative = !negative;
        if negative {
            sum -= &term;
        } else {
            sum += &term;
        }
        // Ratio of consecutive terms is (t/2)^2 / ((k+1)(n+k+1)); once the
        // term is zero at this scale and the ratio is below one, the
        // remainder is zero at this scale too.
        if term == zero && (t / 2.0) * (t / 2.0) < ((k + 1) * (n as u64 + k + 1)) as f64 {
            break;
        }
        k += 1;
        assert!(k < 1_000_000, "series oracle did not terminate");
    }
    fixed_to_f64(&sum)
}

/// `J_n(t)` by the integral representation
/// `(1/pi) int_0^pi cos(n theta - t sin theta) d theta`, trapezoid rule.
///
/// The integrand's cosine series makes the trapezoid error a sum of Bessel
/// coefficients of order `>= 2M - n`, which is negligible once `2M` clears
/// the wavefront.
pub fn bessel_j_integral(n: u32, t: f64) -> f64 {
    let ta = t.abs();
    let m = ((n as f64 + ta + 40.0 * ta.max(1.0).cbrt() + 60.0) / 2.0).ceil() as usize;
    let h = std::f64::consts::PI / m as f64;
    // Endpoint theta = 0 contributes cos(0)/2.
    let mut s = 0.5;
    for k in 1..m {
        let theta = k as f64 * h;
        s += (n as f64 * theta - t * theta.sin()).cos();
    }
    s += 0.5 * (n as f64 * std::f64::consts::PI).cos();
    s * h / std::f64::consts::PI
}

/// Composite Simpson rule with `2 * half_panels` subintervals.
pub fn composite_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, half_panels: usize) -> f64 {
    let n = 2 * half_panels;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let x = a + k as f64 * h;
        s += f(x) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Convolution by direct evaluation at every output point of the Minkowski
/// box (a different loop structure from the production path).
pub fn convolve_double_loop(f: &Sequence, g: &Sequence) -> Sequence {
    assert_eq!(f.dim(), g.dim());
    let d = f.dim();
    if f.is_zero() || g.is_zero() {
        return Sequence::new(d);
    }
    let mut lo = vec![i64::MAX; d];
    let mut hi = vec![i64::MIN; d];
    for (n, _) in f.iter() {
        for (j, &c) in n.0.iter().enumerate() {
            lo[j] = lo[j].min(c);
            hi[j] = hi[j].max(c);
        }
    }
    let (mut glo, mut ghi) = (vec![i64::MAX; d], vec![i64::MIN; d]);
    for (n, _) in g.iter() {
        for (j, &c) in n.0.iter().enumerate() {
            glo[j] = glo[j].min(c);
            ghi[j] = ghi[j].max(c);
        }
    }
    for j in 0..d {
        lo[j] += glo[j];
        hi[j] += ghi[j];
    }
    let mut out = Sequence::new(d);
    let mut idx = lo.clone();
    'outer: loop {
        let n = LatticeVector(idx.clone());
        let mut acc = Complex::new(0.0, 0.0);
        for (m, fv) in f.iter() {
            acc += fv * g.get(&n.sub(m));
        }
        out.set(n, acc);
        // Odometer increment over the box.
        for j in (0..d).rev() {
            idx[j] += 1;
            if idx[j] <= hi[j] {
                continue 'outer;
            }
            idx[j] = lo[j];
            if j == 0 {
                break 'outer;
            }
        }
    }
    out
}

/// All eigenvalues of a complex Hermitian matrix by shifted power iteration
/// with deflation against the found eigenvectors; residual-certified.
pub fn hermitian_eigenvalues_power(mat: &nalgebra::DMatrix<Complex>, tol: f64) -> Vec<f64> {
    let n = mat.nrows();
    assert_eq!(n, mat.ncols());
    // Shift so the target eigenvalue of B = A + c I is the largest in
    // modulus; the Frobenius norm dominates ||A|| without flattening the
    // spectral gaps the way a cruder bound would.
    let shift = mat.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let b = mat + nalgebra::DMatrix::<Complex>::identity(n, n) * Complex::new(shift, 0.0);
    let mut found: Vec<(f64, nalgebra::DVector<Complex>)> = Vec::new();
    for k in 0..n {
        let mut v = nalgebra::DVector::<Complex>::from_fn(n, |i, _| {
            Complex::new(1.0 + (i as f64 + 1.0) / (n as f64 + k as f64 + 2.0), 0.3 + i as f64 * 0.1)
        });
        orthogonalize(&mut v, &found);
        v /= Complex::new(v.norm(), 0.0);
        let mut theta = 0.0;
        for _ in 0..400_000 {
            let mut w = &b * &v;
            orthogonalize(&mut w, &found);
            let norm = w.norm();
            if norm == 0.0 {
                break;
            }
            w /= Complex::new(norm, 0.0);
            theta = (w.adjoint() * &b * &w)[(0, 0)].re;
            let resid = (&b * &w - &w * Complex::new(theta, 0.0)).norm();
            v = w;
            if resid <= tol {
                break;
            }
        }
        found.push((theta - shift, v));
    }
    let mut vals: Vec<f64> = found.into_iter().map(|(t, _)| t).collect();
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    vals
}

fn orthogonalize(v: &mut nalgebra::DVector<Complex>, basis: &[(f64, nalgebra::DVector<Complex>)]) {
    for _ in 0..2 {
        for (_, u) in basis {
            let c = (u.adjoint() * &*v)[(0, 0)];
            *v -= u * c;
        }
    }
}

/// Propagator kernel by torus trapezoid quadrature. The plane-wave factor
/// splits over coordinates, so the `d`-fold integral is an exact product of
/// one-dimensional full-period trapezoid sums, each spectrally accurate.
pub fn torus_propagator_kernel(n: &LatticeVector, t: f64) -> Complex {
    n.0.iter().map(|&m| torus_phase_integral(m, t)).product()
}

fn torus_phase_integral(m: i64, t: f64) -> Complex {
    let points = ((m.unsigned_abs() as f64 + t.abs() + 40.0 * t.abs().max(1.0).cbrt() + 60.0) as usize).max(32);
    let mut acc = Complex::new(0.0, 0.0);
    for k in 0..points {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / points as f64;
        let phase = -(m as f64) * theta + t * theta.cos();
        acc += Complex::new(phase.cos(), phase.sin());
    }
    acc / points as f64
}

/// Full multidimensional torus trapezoid for the propagator kernel; used to
/// validate the factored form once at small sizes.
pub fn torus_propagator_kernel_full(n: &LatticeVector, t: f64, points: usize) -> Complex {
    let d = n.dim();
    let total = points.pow(d as u32);
    let mut acc = Complex::new(0.0, 0.0);
    for flat in 0..total {
        let mut rem = flat;
        let mut dot = 0.0;
        let mut cos_sum = 0.0;
        for j in 0..d {
            let k = rem % points;
            rem /= points;
            let theta = 2.0 * std::f64::consts::PI * k as f64 / points as f64;
            dot += n.0[j] as f64 * theta;
            cos_sum += theta.cos();
        }
        let phase = -dot + t * cos_sum;
        acc += Complex::new(phase.cos(), phase.sin());
    }
    acc / total as f64
}

/// Free resolvent kernel `(Delta - z)^{-1}(n)` by torus trapezoid quadrature;
/// valid off the real axis and for real `z` outside `[-d, d]`. The grid is
/// doubled until the value settles below `tol`.
pub fn torus_resolvent_kernel(n: &LatticeVector, z: Complex, tol: f64) -> Complex {
    let d = n.dim();
    let mut points = 32usize;
    let mut prev = torus_resolvent_at(n, z, points);
    loop {
        points *= 2;
        let cur = torus_resolvent_at(n, z, points);
        if (cur - prev).norm() <= tol || points >= 2048 * 4 / (1 << d.min(3)) {
            return cur;
        }
        prev = cur;
    }
}

fn torus_resolvent_at(n: &LatticeVector, z: Complex, points: usize) -> Complex {
    let d = n.dim();
    let total = points.pow(d as u32);
    let mut acc = Complex::new(0.0, 0.0);
    for flat in 0..total {
        let mut rem = flat;
        let mut dot = 0.0;
        let mut cos_sum = 0.0;
        for j in 0..d {
            let k = rem % points;
            rem /= points;
            let theta = 2.0 * std::f64::consts::PI * k as f64 / points as f64;
            dot += n.0[j] as f64 * theta;
            cos_sum += theta.cos();
        }
        let numer = Complex::new((-dot).cos(), (-dot).sin());
        acc += numer / (Complex::new(cos_sum, 0.0) - z);
    }
    acc / total as f64
}

/// Free resolvent kernel by the truncated Neumann series
/// `-(sum_k Delta^k / z^{k+1})(n)`, convergent for `|z| > d`.
pub fn resolvent_neumann(n: &LatticeVector, z: Complex, terms: usize) -> Complex {
    let d = n.dim();
    assert!(z.norm() > d as f64, "Neumann series needs |z| > d");
    let radius = terms as i64 + 1;
    let boxx = crate::lattice::LatticeBox::new(d, radius);
    let len = boxx.len();
    let mut cur = vec![0.0f64; len];
    cur[boxx.index_of(&LatticeVector::zero(d))] = 1.0;
    let target = boxx.index_of(n);
    let mut acc = -cur[target] / z;
    let mut zpow = z;
    let mut next = vec![0.0f64; len];
    for _ in 1..=terms {
        apply_laplacian_box(&boxx, &cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
        zpow *= z;
        acc -= cur[target] / zpow;
    }
    acc
}

/// Exact half-sum-of-neighbors Laplacian on a box with Dirichlet truncation.
pub fn apply_laplacian_box(boxx: &crate::lattice::LatticeBox, x: &[f64], y: &mut [f64]) {
    let d = boxx.dim;
    let side = boxx.side();
    let mut strides = vec![1usize; d];
    for j in (0..d.saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * side;
    }
    for v in y.iter_mut() {
        *v = 0.0;
    }
    for idx in 0..x.len() {
        if x[idx] == 0.0 {
            continue;
        }
        let half = 0.5 * x[idx];
        let mut rem = idx;
        for j in 0..d {
            let c = rem / strides[j];
            rem %= strides[j];
            if c > 0 {
                y[idx - strides[j]] += half;
            }
            if c + 1 < side {
                y[idx + strides[j]] += half;
            }
        }
    }
}
