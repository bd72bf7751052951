//! Lattice points, truncation boxes, and finitely supported sequences on `Z^d`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Complex;

/// Desk-scale cap on the lattice dimension.
pub const MAX_DIM: usize = 6;

/// A point of `Z^d`, `1 <= d <= 6`.
///
/// Ordering is lexicographic, which fixes a deterministic enumeration order
/// for all sequence and matrix assembly.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        let coords = coords.into();
        assert!(!coords.is_empty() && coords.len() <= MAX_DIM, "dimension must be 1..=6");
        LatticeVector(coords)
    }

    pub fn zero(d: usize) -> Self {
        LatticeVector::new(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Signed coordinate sum `n_1 + ... + n_d` (the exponent of `i` in the
    /// propagator kernel).
    pub fn coord_sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `l^1` length.
    pub fn norm_l1(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    /// `l^inf` length.
    pub fn norm_linf(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), other.dim());
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        debug_assert_eq!(self.dim(), other.dim());
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Product weight `rho_n = prod_j (1+|n_j|)^{-1}`, in `(0, 1]`.
pub fn rho_weight(n: &LatticeVector) -> f64 {
    n.0.iter().map(|&c| 1.0 / (1.0 + c.abs() as f64)).product()
}

/// Truncation `[-N, N]^d` of the lattice; enumeration is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBox {
    pub dim: usize,
    pub radius: i64,
}

impl LatticeBox {
    pub fn new(dim: usize, radius: i64) -> Self {
        assert!(dim >= 1 && dim <= MAX_DIM, "dimension must be 1..=6");
        assert!(radius >= 1, "radius must be >= 1");
        LatticeBox { dim, radius }
    }

    /// Points per axis, `2N+1`.
    pub fn side(&self) -> usize {
        (2 * self.radius + 1) as usize
    }

    pub fn len(&self) -> usize {
        self.side().pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: &LatticeVector) -> bool {
        n.dim() == self.dim && n.norm_linf() <= self.radius
    }

    /// Lexicographic index of a contained point.
    pub fn index_of(&self, n: &LatticeVector) -> usize {
        debug_assert!(self.contains(n));
        let side = self.side();
        let mut idx = 0usize;
        for &c in &n.0 {
            idx = idx * side + (c + self.radius) as usize;
        }
        idx
    }

    pub fn point_at(&self, mut idx: usize) -> LatticeVector {
        let side = self.side();
        let mut coords = vec![0i64; self.dim];
        for c in coords.iter_mut().rev() {
            *c = (idx % side) as i64 - self.radius;
            idx /= side;
        }
        LatticeVector(coords)
    }

    pub fn iter(&self) -> impl Iterator<Item = LatticeVector> + '_ {
        (0..self.len()).map(move |i| self.point_at(i))
    }
}

/// Finitely supported complex sequence on `Z^d`.
///
/// Entries that are exactly zero are never stored, and the support map is
/// ordered, so iteration order is deterministic.
#[derive(Clone, Debug, PartialEq)]
pub struct Sequence {
    dim: usize,
    support: BTreeMap<LatticeVector, Complex>,
}

impl Sequence {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1 && dim <= MAX_DIM);
        Sequence { dim, support: BTreeMap::new() }
    }

    /// Kronecker delta at `n`.
    pub fn delta(n: LatticeVector) -> Self {
        let mut s = Sequence::new(n.dim());
        s.set(n, Complex::new(1.0, 0.0));
        s
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (LatticeVector, Complex)>) -> Self {
        let mut s = Sequence::new(dim);
        for (n, v) in entries {
            s.set(n, v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, n: LatticeVector, v: Complex) {
        assert_eq!(n.dim(), self.dim, "dimension mismatch");
        if v == Complex::new(0.0, 0.0) {
            self.support.remove(&n);
        } else {
            self.support.insert(n, v);
        }
    }

    pub fn get(&self, n: &LatticeVector) -> Complex {
        self.support.get(n).copied().unwrap_or(Complex::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, &Complex)> {
        self.support.iter()
    }

    pub fn support_len(&self) -> usize {
        self.support.len()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Largest `l^inf` length over the support.
    pub fn support_radius(&self) -> i64 {
        self.support.keys().map(|n| n.norm_linf()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: Complex) -> Sequence {
        Sequence::from_entries(self.dim, self.iter().map(|(n, v)| (n.clone(), c * v)))
    }

    pub fn add(&self, other: &Sequence) -> Sequence {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (n, v) in other.iter() {
            let w = out.get(n) + v;
            out.set(n.clone(), w);
        }
        out
    }

    /// Weighted norm `(sum_n rho_n^{-p kappa} |f_n|^p)^{1/p}`; `p = inf`
    /// returns `sup_n rho_n^{-kappa} |f_n|`. `kappa = 0` is the plain
    /// `l^p` norm.
    pub fn norm(&self, p: f64, kappa: f64) -> Result<f64> {
        if !(p >= 1.0) {
            return Err(Error::domain("norm", format!("p = {p} < 1")));
        }
        if !(kappa >= 0.0) {
            return Err(Error::domain("norm", format!("kappa = {kappa} < 0")));
        }
        if p.is_infinite() {
            let mut sup: f64 = 0.0;
            for (n, v) in self.iter() {
                sup = sup.max(rho_weight(n).powf(-kappa) * v.norm());
            }
            return Ok(sup);
        }
        let mut acc = 0.0;
        for (n, v) in self.iter() {
            acc += rho_weight(n).powf(-p * kappa) * v.norm().powf(p);
        }
        Ok(acc.powf(1.0 / p))
    }

    /// Plain `l^p` norm.
    pub fn lp_norm(&self, p: f64) -> f64 {
        self.norm(p, 0.0).expect("p >= 1")
    }
}

/// Convolution `(f*g)_n = sum_m f_m g_{n-m}`; the support is contained in the
/// Minkowski sum of the supports.
pub fn convolve(f: &Sequence, g: &Sequence) -> Sequence {
    assert_eq!(f.dim(), g.dim());
    let mut acc: BTreeMap<LatticeVector, Complex> = BTreeMap::new();
    for (m, fv) in f.iter() {
        for (k, gv) in g.iter() {
            let n = m.add(k);
            *acc.entry(n).or_insert(Complex::new(0.0, 0.0)) += fv * gv;
        }
    }
    Sequence::from_entries(f.dim(), acc)
}

/// Exact tail bound `sum_{|n| > M} (1+|n|)^{-alpha} <= 2 (1+M)^{1-alpha} / (alpha-1)`
/// for the one-dimensional product weight, `alpha > 1`.
pub fn rho_alpha_tail(alpha: f64, m: i64) -> f64 {
    debug_assert!(alpha > 1.0 && m >= 0);
    2.0 * (1.0 + m as f64).powf(1.0 - alpha) / (alpha - 1.0)
}

/// One-dimensional sum `sum_{n in Z} (1+|n|)^{-alpha}`, by direct summation
/// to a large cutoff plus the midpoint-rule tail, whose error is far below
/// roundoff at that cutoff.
pub fn rho_alpha_sum(alpha: f64) -> f64 {
    debug_assert!(alpha > 1.0);
    let cutoff = 2_000_000i64;
    let mut s = 1.0;
    for n in 1..=cutoff {
        s += 2.0 * (1.0 + n as f64).powf(-alpha);
    }
    // sum_{k > cutoff} 2 (1+k)^{-alpha} ~ 2 int_{cutoff+1/2}^inf (1+x)^{-alpha} dx.
    s + 2.0 * (1.5 + cutoff as f64).powf(1.0 - alpha) / (alpha - 1.0)
}
