//! Named verification sweeps: each returns the verdict records the CLI and
//! the acceptance tests consume. Grids are deterministic functions of the
//! run configuration; sweeps parallelize over grid points and collect in
//! input order, so reports are byte-reproducible under a fixed seed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bessel;
use crate::constants;
use crate::error::Result;
use crate::inequalities;
use crate::lattice::{LatticeVector, Sequence};
use crate::propagator;
use crate::report::{anchors, seeded_rng, sort_records, RunConfig, Status, VerdictRecord};
use crate::resolvent::{self, SpectralPoint};
use crate::schrodinger::{self, Potential};
use crate::Complex;

/// Versioned report envelope.
#[derive(Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub seed: u64,
    pub records: Vec<VerdictRecord>,
}

pub const SCHEMA_VERSION: u32 = 1;

/// Rank-one attractive well, the standard demo.
pub fn demo_rank_one_d3() -> Potential {
    Potential::point(LatticeVector::zero(3), -5.0, 1.0)
}

/// Two-site well with symmetric and antisymmetric bound states.
pub fn demo_two_point_d3() -> Potential {
    Potential::from_entries(
        3,
        1.0,
        [(LatticeVector::zero(3), -4.5), (LatticeVector::new([1, 0, 0]), -4.5)],
    )
}

/// Mixed-sign three-site potential.
pub fn demo_three_point_d3() -> Potential {
    Potential::from_entries(
        3,
        1.0,
        [
            (LatticeVector::zero(3), 1.5),
            (LatticeVector::new([1, -1, 0]), -0.7),
            (LatticeVector::new([0, 1, 1]), 0.9),
        ],
    )
}

/// Sparse rearranged product-weight potential: support on the dilated
/// lattice `dilation * m`, value `prod_j (1 + |m_j|)^{-1}`, truncated at
/// `|m|_inf <= radius`. Spreading the sites out leaves every norm unchanged
/// while slowing the pointwise decay.
pub fn demo_sparse_rho(d: usize, dilation: i64, radius: i64, p: f64) -> Potential {
    let boxx = crate::lattice::LatticeBox::new(d, radius);
    Potential::from_entries(
        d,
        p,
        boxx.iter().map(|m| {
            let value = crate::lattice::rho_weight(&m);
            let site = LatticeVector(m.0.iter().map(|c| c * dilation).collect());
            (site, value)
        }),
    )
}

/// Discrete Young, interpolation and summation-estimate probes.
pub fn core_suite(cfg: &RunConfig) -> Result<Vec<VerdictRecord>> {
    let mut records = Vec::new();
    let trials = if cfg.quick { 120 } else { 1000 };
    let mut rng = seeded_rng(cfg.seed, "core.young");
    let exponents =
        [(1.5, 1.5, 1.5), (1.0, 1.0, f64::INFINITY), (2.0, 2.0, 1.0), (1.0, 2.0, 2.0), (1.0, 1.25, 5.0)];
    let mut worst_margin = f64::INFINITY;
    let mut young_fail = 0usize;
    for i in 0..trials {
        let f = crate::report::random_sequence(&mut rng, 1, 4, 5);
        let g = crate::report::random_sequence(&mut rng, 1, 4, 5);
        let h = crate::report::random_sequence(&mut rng, 1, 4, 5);
        let (p, s, r) = exponents[i % exponents.len()];
        let v = inequalities::verify_young(&f, &g, &h, p, s, r)?;
        if v.is_fail() {
            young_fail += 1;
        }
        worst_margin = worst_margin.min(v.margin / v.rhs.max(1e-300));
    }
    records.push(
        VerdictRecord::inequality("discrete.young-sweep", anchors::YOUNG, young_fail as f64, 0.0)
            .with_param("trials", trials)
            .with_param("worst_relative_margin", worst_margin),
    );

    let rt = inequalities::verify_riesz_thorin(
        &Sequence::delta(LatticeVector::zero(1)),
        1.0,
        1.0,
        f64::INFINITY,
        f64::INFINITY,
        0.5,
        if cfg.quick { 8 } else { 32 },
        cfg.seed,
        1e-9,
    )?;
    records.push(rt.record);
    let mut g2 = Sequence::new(1);
    g2.set(LatticeVector::new([0]), Complex::new(1.0, 0.0));
    g2.set(LatticeVector::new([1]), Complex::new(1.0, 0.0));
    let rt2 = inequalities::verify_riesz_thorin(
        &g2,
        1.0,
        1.0,
        f64::INFINITY,
        f64::INFINITY,
        0.5,
        if cfg.quick { 12 } else { 48 },
        cfg.seed,
        0.02,
    )?;
    records.push(rt2.record.with_param("kernel", "two-point"));

    // The dyadic time sweep runs at (2, 1/2); the near-critical pair
    // (1.1, 0.9) is checked at a moderate time where the exact truncation
    // tail still fits under the bound (it decays only like M^{-1/10}).
    let m = if cfg.quick { 1 << 14 } else { 1 << 17 };
    for &t in &cfg.t_grid {
        let v = inequalities::verify_summation_estimate_sized(2.0, 0.5, t, m)?;
        records.push(
            v.record.with_param("constant_variants_16_12_24", format!("{:?}", v.constant_variants)),
        );
    }
    let v = inequalities::verify_summation_estimate_sized(1.1, 0.9, 10.0, m)?;
    records
        .push(v.record.with_param("constant_variants_16_12_24", format!("{:?}", v.constant_variants)));
    Ok(records)
}

/// Pointwise Bessel bounds over the acceptance grids, plus the weighted
/// integral bound family.
pub fn bessel_suite(cfg: &RunConfig) -> Result<Vec<VerdictRecord>> {
    let mut records = Vec::new();
    let (n_cap, t_cap, t_step) = if cfg.quick { (12i64, 30.0, 0.5) } else { (50, 200.0, 0.5) };
    let n_range: Vec<i64> = (-n_cap..=n_cap).collect();
    let t_grid: Vec<f64> = (0..).map(|k| k as f64 * t_step).take_while(|t| *t <= t_cap).collect();
    let (rec, violations) = bessel::verify_pointwise_bounds(&n_range, &t_grid)?;
    records.push(rec.with_param("grid", "main"));
    debug_assert!(violations.is_empty());

    // Transition region n = t.
    let diag: Vec<i64> = (1..=if cfg.quick { 30 } else { 100 }).collect();
    let mut worst: f64 = 0.0;
    for &n in &diag {
        let t = n as f64;
        let (r, v) = bessel::verify_pointwise_bounds(&[n], &[t])?;
        worst = worst.max(r.lhs);
        if !v.is_empty() {
            records.push(r.with_param("grid", format!("transition n=t={n}")));
        }
    }
    records.push(
        VerdictRecord::inequality("bessel.pointwise-transition", anchors::BESSEL_FUSED, worst, 1.0)
            .with_param("grid", "n = t diagonal"),
    );

    // Small-argument grid.
    let n_small: Vec<i64> = (0..=n_cap).collect();
    let t_small: Vec<f64> = (0..=100).map(|k| k as f64 * 0.01).collect();
    let (rec, violations) = bessel::verify_pointwise_bounds(&n_small, &t_small)?;
    records.push(rec.with_param("grid", "small-argument"));
    debug_assert!(violations.is_empty());

    // Weighted L^p integral bounds; the (p, gamma) = (3, 1/2) pair sits
    // outside the admissible wedge and must be rejected.
    let orders: Vec<i64> = if cfg.quick { vec![0, 1, 5] } else { (0..=30).collect() };
    let combos = [(3.0, 0.0), (3.0, 0.5), (4.0, 0.0), (4.0, 0.5), (6.0, 0.0), (6.0, 0.5)];
    for (p, gamma) in combos {
        if !(p > 2.0 + 2.0 * gamma) {
            match bessel::verify_weighted_lp(p, gamma, 0) {
                Err(e) => records.push(
                    VerdictRecord::skipped("bessel.weighted-lp", anchors::BESSEL_WEIGHTED_LP, e.to_string())
                        .with_param("p", p)
                        .with_param("gamma", gamma),
                ),
                Ok(_) => records.push(
                    VerdictRecord::inequality(
                        "bessel.weighted-lp-domain",
                        anchors::BESSEL_WEIGHTED_LP,
                        1.0,
                        0.0,
                    )
                    .with_param("p", p)
                    .with_param("gamma", gamma)
                    .with_param("note", "inadmissible pair was not rejected"),
                ),
            }
            continue;
        }
        let mut batch: Vec<VerdictRecord> = orders
            .par_iter()
            .map(|&n| bessel::verify_weighted_lp(p, gamma, n))
            .collect::<Result<Vec<_>>>()?;
        records.append(&mut batch);
    }
    Ok(records)
}

/// Propagator sweeps: torus cross-validation, unitarity, smoothing,
/// weighted decay, and both dispersive bounds.
pub fn dispersive_suite(cfg: &RunConfig) -> Result<Vec<VerdictRecord>> {
    let mut records = Vec::new();
    let dims: Vec<usize> = cfg.dims.iter().copied().filter(|&d| d <= 3).collect();

    // Kernel versus torus quadrature: the plane-wave factorization makes
    // the d-dimensional comparison a product of independent 1d integrals.
    let n_cap = if cfg.quick { 3i64 } else { 10 };
    let t_list: Vec<f64> = if cfg.quick { vec![1.0, 8.0] } else { vec![1.0, 5.0, 10.0, 15.0, 20.0] };
    for &d in &dims {
        let mut worst: f64 = 0.0;
        for &t in &t_list {
            let factors: Vec<Complex> = (0..=n_cap)
                .map(|m| crate::oracle::torus_propagator_kernel(&LatticeVector::new([m]), t))
                .collect();
            let table = propagator::KernelTable::new(t, n_cap);
            let boxx = crate::lattice::LatticeBox::new(d, n_cap);
            for n in boxx.iter() {
                let got = table.value(&n);
                // The 1d torus factor at order c equals i^{|c|} J_{|c|}(t)
                // for either sign of c, so the kernel is a plain product.
                let want: Complex =
                    n.0.iter().map(|c| factors[c.unsigned_abs() as usize]).product();
                worst = worst.max((got - want).norm());
            }
        }
        records.push(
            VerdictRecord::inequality(
                "propagator.torus-cross-validation",
                anchors::PROPAGATOR_KERNEL,
                worst,
                1e-10,
            )
            .with_param("d", d)
            .with_param("n_cap", n_cap),
        );
    }

    // Unitarity.
    for &d in &dims {
        for &t in &[1.0, 5.0, 20.0] {
            let defect = propagator::unitarity_defect(t, d)?;
            records.push(
                VerdictRecord::inequality("propagator.unitarity", anchors::PROPAGATOR_UNITARY, defect, 1e-8)
                    .with_param("d", d)
                    .with_param("t", t),
            );
        }
    }

    // Smoothing estimates. The time grid stays at desk scale: the truncated
    // evolution of a compact state at t has ~(2t)^d sites.
    let mut rng = seeded_rng(cfg.seed, "dispersive.smoothing");
    let smoothing_t = [2.0, 8.0, 32.0];
    let smoothing_samples = if cfg.quick { 2 } else { 6 };
    for &d in &dims {
        for &s in &[1.0, 1.5, 2.0] {
            for &t in &smoothing_t {
                for _ in 0..smoothing_samples {
                    let f = crate::report::random_sequence(&mut rng, d, 2, 4);
                    records.push(propagator::verify_smoothing(&f, s, t)?);
                }
            }
        }
    }

    // Weighted decay.
    for &d in &dims {
        for &(a, c) in &[(1.0, 1.0), (0.75, 0.9), (1.0, 0.0), (0.6, 0.5)] {
            for &t in &cfg.t_grid {
                records.push(propagator::verify_weighted_decay(a, c, d, t)?);
            }
        }
    }

    // Unweighted dispersive bound: the full (d, q, t) grid with seeded
    // random pairs per case.
    let samples = cfg.samples;
    let cases: Vec<(usize, f64, f64)> = dims
        .iter()
        .flat_map(|&d| cfg.q_grid.iter().flat_map(move |&q| cfg.t_grid.iter().map(move |&t| (d, q, t))))
        .collect();
    let mut batch: Vec<VerdictRecord> = cases
        .par_iter()
        .map(|&(d, q, t)| {
            let mut rng = seeded_rng(cfg.seed, &format!("dispersive.et1.{d}.{q}.{t}"));
            let mut tightest = f64::INFINITY;
            let mut fails = 0usize;
            for _ in 0..samples {
                let u = crate::report::random_sequence(&mut rng, d, 2, 4);
                let v = crate::report::random_sequence(&mut rng, d, 2, 4);
                let r = propagator::verify_dispersive(&u, &v, q, 0.0, 1.0, t)?;
                if r.is_fail() {
                    fails += 1;
                }
                tightest = tightest.min(r.margin / r.rhs.max(1e-300));
            }
            Ok(VerdictRecord::inequality(
                "propagator.dispersive-sweep",
                anchors::DISPERSIVE_UNWEIGHTED,
                fails as f64,
                0.0,
            )
            .with_param("d", d)
            .with_param("q", q)
            .with_param("t", t)
            .with_param("samples", samples)
            .with_param("tightest_relative_margin", tightest))
        })
        .collect::<Result<Vec<_>>>()?;
    records.append(&mut batch);

    // Weighted dispersive bound, d = 1, q = 4, a = 1.
    let mut indicator = Sequence::new(1);
    for n in -5i64..=5 {
        indicator.set(LatticeVector::new([n]), Complex::new(1.0, 0.0));
    }
    let mut rng = seeded_rng(cfg.seed, "dispersive.et2");
    for &kappa in &[0.0, 0.25, 0.5] {
        for &t in &cfg.t_grid {
            records.push(
                propagator::verify_dispersive(&indicator, &indicator, 4.0, kappa, 1.0, t)?
                    .with_param("weights", "indicator"),
            );
            let u = crate::report::random_sequence(&mut rng, 1, 4, 6);
            let v = crate::report::random_sequence(&mut rng, 1, 4, 6);
            records.push(propagator::verify_dispersive(&u, &v, 4.0, kappa, 1.0, t)?);
        }
    }

    // Kernel time-integral bounds.
    if !cfg.quick {
        let orders: Vec<i64> = (0..=30).collect();
        let mut batch: Vec<VerdictRecord> = orders
            .par_iter()
            .map(|&m| propagator::verify_time_integral(&LatticeVector::new([m, 0, 0]), 3, 0.0))
            .collect::<Result<Vec<_>>>()?;
        records.append(&mut batch);
        records.push(propagator::verify_time_integral(&LatticeVector::new([1, 2, 3, 0, 0]), 5, 0.5)?);
    } else {
        records.push(propagator::verify_time_integral(&LatticeVector::zero(3), 3, 0.0)?);
    }
    Ok(records)
}

/// Resolvent sweeps: short-time contraction, long-time kernel bounds, and
/// the weighted operator/Hilbert-Schmidt bounds with Hölder pairs.
pub fn resolvent_suite(cfg: &RunConfig) -> Result<Vec<VerdictRecord>> {
    let mut records = Vec::new();
    let dims: Vec<usize> = cfg.dims.iter().copied().filter(|&d| (3..=5).contains(&d)).collect();
    let dims = if dims.is_empty() { vec![3] } else { dims };

    // Short-time contraction and Lipschitz continuity on a box.
    let radius = if cfg.quick { 2 } else { 4 };
    let z_pairs = [
        (SpectralPoint::interior(-2.0, -1.0)?, SpectralPoint::interior(-2.0, -2.0)?),
        (SpectralPoint::minus_i0(-2.0), SpectralPoint::minus_i0(2.0)),
        (SpectralPoint::minus_i0(0.0), SpectralPoint::interior(0.0, -0.5)?),
    ];
    for (z1, z2) in &z_pairs {
        records.extend(resolvent::verify_r01_contraction(z1, z2, 3, radius)?);
    }

    // Long-time kernel bounds across thresholds.
    let offsets = [
        LatticeVector::zero(3),
        LatticeVector::new([1, 0, 0]),
        LatticeVector::new([1, 1, 0]),
        LatticeVector::new([2, 1, 1]),
    ];
    for m in &offsets {
        for lambda in [-3.0, -1.0, 0.4, 1.0, 3.0] {
            records.push(resolvent::verify_r02_pointwise(m, &SpectralPoint::plus_i0(lambda), 3)?);
        }
        for tau in [-3.0f64, -1.0, 1.0, 3.0] {
            let z1 = SpectralPoint::plus_i0(tau - 0.025);
            let z2 = SpectralPoint::plus_i0(tau + 0.025);
            records.push(resolvent::verify_r02_holder(m, &z1, &z2, 0.4, 3)?);
        }
    }
    if dims.contains(&5) && !cfg.quick {
        let m5 = LatticeVector::new([1, 1, 0, 0, 0]);
        let z1 = SpectralPoint::interior(1.0, 0.3)?;
        let z2 = SpectralPoint::interior(1.4, 0.2)?;
        records.push(resolvent::verify_r02_holder(&m5, &z1, &z2, 1.0, 5)?);
    }

    // Weighted resolvent bounds on the boundary grid, q = 2.
    for &d in &dims {
        let df = d as f64;
        let steps = ((2.0 * df + 2.0) / cfg.lambda_step).round() as usize;
        let lambdas: Vec<f64> = (0..=steps).map(|k| -df - 1.0 + k as f64 * cfg.lambda_step).collect();
        let pair_count = if cfg.quick {
            3
        } else if d == 3 {
            20
        } else {
            8
        };
        let mut rng = seeded_rng(cfg.seed, &format!("resolvent.vrv.{d}"));
        let pairs: Vec<(Sequence, Sequence)> = (0..pair_count)
            .map(|_| {
                let radius = if d == 3 { 2 } else { 1 };
                (
                    crate::report::random_sequence(&mut rng, d, radius, 4),
                    crate::report::random_sequence(&mut rng, d, radius, 4),
                )
            })
            .collect();
        let mut batch: Vec<VerdictRecord> = lambdas
            .par_iter()
            .map(|&lambda| {
                let z = SpectralPoint::plus_i0(lambda);
                let mut worst_op: f64 = 0.0;
                let mut worst_hs: f64 = 0.0;
                let mut fails = 0usize;
                for (u, v) in &pairs {
                    let recs = resolvent::verify_resolvent_bounds(u, v, 2.0, &z, &z, 0.0)?;
                    for r in recs {
                        let scale = r.lhs / r.rhs.max(1e-300);
                        if r.check_id.contains("hs") {
                            worst_hs = worst_hs.max(scale);
                        } else {
                            worst_op = worst_op.max(scale);
                        }
                        if r.is_fail() {
                            fails += 1;
                        }
                    }
                }
                Ok(VerdictRecord::inequality(
                    "resolvent.vrv-sweep",
                    anchors::RESOLVENT_OPERATOR,
                    fails as f64,
                    0.0,
                )
                .with_param("d", d)
                .with_param("lambda", lambda)
                .with_param("pairs", pair_count)
                .with_param("worst_operator_ratio", worst_op)
                .with_param("worst_hs_ratio", worst_hs))
            })
            .collect::<Result<Vec<_>>>()?;
        records.append(&mut batch);

        // Hölder pairs straddling each threshold.
        let gamma = if d == 3 { 0.4 } else { (constants::gamma_dq(d, 2.0)?).min(1.0) * 0.8 };
        let mut rng = seeded_rng(cfg.seed, &format!("resolvent.holder.{d}"));
        let u = crate::report::random_sequence(&mut rng, d, 1, 4);
        let v = crate::report::random_sequence(&mut rng, d, 1, 4);
        let mut tau = -df;
        while tau <= df {
            let z1 = SpectralPoint::plus_i0(tau - 0.025);
            let z2 = SpectralPoint::plus_i0(tau + 0.025);
            records.extend(resolvent::verify_resolvent_bounds(&u, &v, 2.0, &z1, &z2, gamma)?);
            tau += 2.0;
        }
    }
    Ok(records)
}

/// Schrödinger sweeps: detection cross-checks, small-coupling emptiness,
/// the limiting-absorption identity, wave operators, and the
/// high-dimensional finiteness probe.
pub fn schrodinger_suite(cfg: &RunConfig) -> Result<Vec<VerdictRecord>> {
    let mut records = Vec::new();

    // Rank-one demo: detection against the boxed ground state.
    let v = demo_rank_one_d3();
    let box_radius = if cfg.quick { 10 } else { 16 };
    records.extend(schrodinger::verify_bs_correspondence(&v, box_radius)?);
    if !cfg.quick {
        records.extend(schrodinger::verify_bs_correspondence(&demo_two_point_d3(), 14)?);
    }

    // Below the coupling threshold the detection list must be empty.
    let threshold = constants::small_coupling_threshold(1.0, 3)?;
    let weak = Potential::from_entries(
        3,
        1.0,
        [
            (LatticeVector::zero(3), 0.4 * threshold),
            (LatticeVector::new([1, 0, 0]), -0.5 * threshold),
        ],
    );
    let grid: Vec<f64> = (0..=160).map(|k| -4.0 + 0.05 * k as f64).filter(|x| x.abs() > 3.0).collect();
    let detections = schrodinger::bs_scan(&weak, &grid, 1e-8)?;
    records.push(
        VerdictRecord::inequality(
            "schrodinger.small-coupling",
            anchors::BS_SMALL_COUPLING,
            detections.len() as f64,
            0.0,
        )
        .with_param("norm_l1", weak.lp_norm(1.0))
        .with_param("threshold", threshold),
    );

    // Limiting-absorption identity over the corpus at interior points.
    let corpus: Vec<(&str, Potential)> = vec![
        ("rank-one", demo_rank_one_d3()),
        ("two-point", demo_two_point_d3()),
        ("three-point", demo_three_point_d3()),
    ];
    let zs: Vec<Complex> = if cfg.quick {
        vec![Complex::new(-4.0, 0.5), Complex::new(0.0, 2.0), Complex::new(4.0, 1.0)]
    } else {
        vec![
            Complex::new(-4.0, 0.5),
            Complex::new(-4.0, -0.5),
            Complex::new(0.0, 2.0),
            Complex::new(0.0, -2.5),
            Complex::new(2.0, 1.0),
            Complex::new(4.0, 0.75),
            Complex::new(-1.0, 1.5),
            Complex::new(1.0, -1.25),
            Complex::new(3.5, 2.0),
            Complex::new(-2.5, 1.0),
        ]
    };
    let limabs_box = if cfg.quick { 24 } else { 40 };
    for (name, pot) in &corpus {
        let mut batch: Vec<VerdictRecord> = zs
            .par_iter()
            .map(|&z| {
                Ok(schrodinger::verify_resolvent_identity(pot, z, limabs_box)?
                    .with_param("potential", *name))
            })
            .collect::<Result<Vec<_>>>()?;
        records.append(&mut batch);
    }

    // Wave-operator probe at small coupling.
    let small = Potential::point(LatticeVector::zero(3), -0.05, 1.0);
    let f = Sequence::delta(LatticeVector::zero(3));
    let t_list = if cfg.quick { vec![1.0, 2.0] } else { vec![1.0, 2.0, 4.0] };
    let wave_box = if cfg.quick { 44 } else { 52 };
    let report = schrodinger::wave_operator_probe(&small, &f, &t_list, wave_box)?;
    records.extend(report.records);

    // Finiteness probe in d = 5.
    if cfg.dims.contains(&5) && !cfg.quick {
        let v5 = Potential::point(LatticeVector::zero(5), -14.0, 1.0);
        let report = schrodinger::verify_finiteness_conditions(&v5, 0.25)?;
        records.extend(report.records);
    }

    // The rearranged sparse potential demo: the scattering conditions hold
    // for any rearrangement; the scan is reported descriptively.
    if !cfg.quick {
        let sparse = demo_sparse_rho(3, 3, 2, 1.1);
        let grid: Vec<f64> =
            (0..=80).map(|k| -5.0 + 0.125 * k as f64).filter(|x| x.abs() > 3.0).collect();
        let found = schrodinger::bs_scan(&sparse, &grid, 1e-8)?;
        records.push(
            VerdictRecord::descriptive(
                "schrodinger.sparse-demo",
                anchors::BS_SCAN,
                found.len() as f64,
                f64::INFINITY,
            )
            .with_param("dilation", 3)
            .with_param("norm_p", sparse.lp_norm(sparse.p))
            .with_param("p", sparse.p),
        );
    }
    Ok(records)
}

/// Everything, sorted deterministically.
pub fn full_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    if let Some(jobs) = cfg.jobs {
        // A global pool may already exist on repeated runs; the pool size
        // only affects wall clock, never results.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let mut records = Vec::new();
    records.extend(core_suite(cfg)?);
    records.extend(bessel_suite(cfg)?);
    records.extend(dispersive_suite(cfg)?);
    records.extend(resolvent_suite(cfg)?);
    records.extend(schrodinger_suite(cfg)?);
    sort_records(&mut records);
    Ok(SuiteReport { schema_version: SCHEMA_VERSION, seed: cfg.seed, records })
}

/// True when no record failed (the CLI exit-code contract).
pub fn all_pass(records: &[VerdictRecord]) -> bool {
    records.iter().all(|r| r.status != Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes_deterministically_with_registered_anchors() {
        let cfg = RunConfig::quick_profile(7);
        let a = full_suite(&cfg).unwrap();
        let b = full_suite(&cfg).unwrap();
        assert!(!a.records.is_empty());
        for r in &a.records {
            assert_ne!(r.status, Status::Fail, "{r:?}");
            assert!(
                anchors::ALL.contains(&r.provenance.as_str()),
                "orphan provenance {}",
                r.provenance
            );
        }
        let ja = serde_json::to_string(&a.records).unwrap();
        let jb = serde_json::to_string(&b.records).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn demo_sparse_rho_shape() {
        let v = demo_sparse_rho(3, 3, 2, 1.1);
        // 5^3 sites on the dilated lattice; the norms match the compact
        // version by rearrangement invariance.
        assert_eq!(v.support().len(), 125);
        let compact = demo_sparse_rho(3, 1, 2, 1.1);
        assert!((v.lp_norm(1.1) - compact.lp_norm(1.1)).abs() < 1e-12);
        assert_eq!(v.support_radius(), 6);
    }
}
