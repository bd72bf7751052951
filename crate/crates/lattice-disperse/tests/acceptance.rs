//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line with the measured quantities. Criteria 1-9 assert their stated
//! tolerances; criterion 10 is the determinism contract.

use std::time::Instant;

use lattice_disperse::bessel::{self, BesselBoundKind};
use lattice_disperse::lattice::{LatticeBox, LatticeVector, Sequence};
use lattice_disperse::linalg::{hs_norm, lanczos_extreme, operator_norm, SpectralEnd};
use lattice_disperse::oracle;
use lattice_disperse::propagator::{self, KernelTable};
use lattice_disperse::report::{seeded_rng, RunConfig, Status};
use lattice_disperse::resolvent::{self, SpectralPoint};
use lattice_disperse::schrodinger::{self, Potential};
use lattice_disperse::suites;
use lattice_disperse::Complex;

fn criterion(n: u32, name: &str, pass: bool, detail: String) {
    println!("ACCEPTANCE {n} ({name}): {} - {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

#[test]
fn acceptance_01_bessel_accuracy() {
    let start = Instant::now();
    // Dyadic grid: 129 arguments x 101 orders, above the 10^4-point mark.
    let mut worst = 0.0f64;
    let mut worst_at = (0i64, 0.0f64);
    for j in 0..=128 {
        let t = j as f64 * (25.0 / 32.0);
        for n in -50i64..=50 {
            let got = bessel::eval_j(n, t).unwrap().value;
            let want = {
                let base = oracle::bessel_j_series(n.unsigned_abs() as u32, t);
                if n < 0 && n % 2 != 0 {
                    -base
                } else {
                    base
                }
            };
            let err = (got - want).abs();
            if err > worst {
                worst = err;
                worst_at = (n, t);
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    criterion(
        1,
        "bessel accuracy",
        worst <= 1e-12 && elapsed <= 30.0,
        format!("max |eval - series oracle| = {worst:.3e} at (n, t) = {worst_at:?}, {elapsed:.1}s over 13029 grid points"),
    );
}

#[test]
fn acceptance_02_pointwise_bound_suite() {
    let start = Instant::now();
    let n_range: Vec<i64> = (-50..=50).collect();
    let t_grid: Vec<f64> = (0..=400).map(|k| 0.5 * k as f64).collect();
    let (rec_main, v_main) = bessel::verify_pointwise_bounds(&n_range, &t_grid).unwrap();
    // Transition region n = t up to 100.
    let mut v_diag = Vec::new();
    for n in 1..=100i64 {
        let (_, mut v) = bessel::verify_pointwise_bounds(&[n], &[n as f64]).unwrap();
        v_diag.append(&mut v);
    }
    // Small-argument grid for the (|n|+1)^{-1/2} bound.
    let n_small: Vec<i64> = (0..=50).collect();
    let t_small: Vec<f64> = (0..=100).map(|k| 0.01 * k as f64).collect();
    let (_, v_small) = bessel::verify_pointwise_bounds(&n_small, &t_small).unwrap();
    let violations = v_main.len() + v_diag.len() + v_small.len();
    criterion(
        2,
        "pointwise bound suite",
        violations == 0,
        format!(
            "0 violations required, found {violations}; worst main-grid ratio {:.6} ({}s)",
            rec_main.lhs,
            start.elapsed().as_secs()
        ),
    );
}

#[test]
fn acceptance_03_weighted_lp_suite() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for (p, gamma) in [(3.0, 0.0), (4.0, 0.0), (4.0, 0.5), (6.0, 0.0), (6.0, 0.5)] {
        for n in 0..=30i64 {
            let r = bessel::verify_weighted_lp(p, gamma, n).unwrap();
            checked += 1;
            if r.status != Status::Pass {
                failures.push((p, gamma, n));
            }
        }
    }
    // Symmetry spot checks at negative orders.
    for n in [-7i64, -30] {
        let r = bessel::verify_weighted_lp(3.0, 0.0, n).unwrap();
        checked += 1;
        if r.status != Status::Pass {
            failures.push((3.0, 0.0, n));
        }
    }
    // The pair outside the admissible wedge must be rejected.
    let rejected = bessel::verify_weighted_lp(3.0, 0.5, 0).is_err();
    let elapsed = start.elapsed().as_secs_f64();
    criterion(
        3,
        "weighted lp integral suite",
        failures.is_empty() && rejected && elapsed <= 120.0,
        format!("{checked} integrals pass, (3, 1/2) rejected = {rejected}, {elapsed:.1}s"),
    );
}

#[test]
fn acceptance_04_kernel_cross_validation() {
    // Bessel-product kernel against torus trapezoid quadrature.
    let mut worst = 0.0f64;
    for d in 1..=3usize {
        for &t in &[1.0, 2.5, 5.0, 10.0, 15.0, 20.0] {
            let factors: Vec<Complex> =
                (0..=10).map(|m| oracle::torus_propagator_kernel(&LatticeVector::new([m]), t)).collect();
            let table = KernelTable::new(t, 10);
            for n in LatticeBox::new(d, 10).iter() {
                let got = table.value(&n);
                let want: Complex = n.0.iter().map(|c| factors[c.unsigned_abs() as usize]).product();
                worst = worst.max((got - want).norm());
            }
        }
    }
    // Unitarity through the kernel square sum.
    let mut worst_defect = 0.0f64;
    for d in 1..=3usize {
        for &t in &[1.0, 5.0, 20.0] {
            worst_defect = worst_defect.max(propagator::unitarity_defect(t, d).unwrap());
        }
    }
    criterion(
        4,
        "kernel cross-validation",
        worst <= 1e-10 && worst_defect <= 1e-8,
        format!("max |kernel - torus| = {worst:.3e}, max unitarity defect = {worst_defect:.3e}"),
    );
}

#[test]
fn acceptance_05_dispersive_bounds() {
    let start = Instant::now();
    let t_grid: Vec<f64> = (0..8).map(|k| 2f64.powi(k)).collect();
    let mut cases = 0usize;
    let mut failures = 0usize;
    for d in 1..=3usize {
        for &q in &[2.0, 3.0, 4.0] {
            for &t in &t_grid {
                let mut rng = seeded_rng(7, &format!("acceptance.et1.{d}.{q}.{t}"));
                for _ in 0..100 {
                    let u = lattice_disperse::report::random_sequence(&mut rng, d, 2, 4);
                    let v = lattice_disperse::report::random_sequence(&mut rng, d, 2, 4);
                    let r = propagator::verify_dispersive(&u, &v, q, 0.0, 1.0, t).unwrap();
                    cases += 1;
                    if r.status != Status::Pass {
                        failures += 1;
                    }
                }
            }
        }
    }
    // Weighted variant: d = 1, q = 4, a = 1.
    let mut indicator = Sequence::new(1);
    for n in -5i64..=5 {
        indicator.set(LatticeVector::new([n]), Complex::new(1.0, 0.0));
    }
    for &kappa in &[0.0, 0.25, 0.5] {
        for &t in &t_grid {
            let r = propagator::verify_dispersive(&indicator, &indicator, 4.0, kappa, 1.0, t).unwrap();
            cases += 1;
            if r.status != Status::Pass {
                failures += 1;
            }
        }
    }
    criterion(
        5,
        "dispersive decay bounds",
        failures == 0,
        format!("{cases} cases, {failures} failures ({:.1}s)", start.elapsed().as_secs_f64()),
    );
}

#[test]
fn acceptance_06_weighted_resolvent_bound() {
    let start = Instant::now();
    let mut rng = seeded_rng(7, "acceptance.vrv32");
    let pairs: Vec<(Sequence, Sequence)> = (0..20)
        .map(|_| {
            (
                lattice_disperse::report::random_sequence(&mut rng, 3, 2, 4),
                lattice_disperse::report::random_sequence(&mut rng, 3, 2, 4),
            )
        })
        .collect();
    let mut worst_ratio = 0.0f64;
    let mut failures = 0usize;
    let mut checked = 0usize;
    for k in 0..=160 {
        let lambda = -4.0 + 0.05 * k as f64;
        let z = SpectralPoint::plus_i0(lambda);
        for (u, v) in &pairs {
            let recs = resolvent::verify_resolvent_bounds(u, v, 2.0, &z, &z, 0.0).unwrap();
            for r in recs {
                checked += 1;
                if r.check_id == "resolvent.operator-bound" {
                    assert!((r.rhs / (u.lp_norm(2.0) * v.lp_norm(2.0)) - 17.0).abs() < 1e-9);
                    worst_ratio = worst_ratio.max(r.lhs / r.rhs);
                }
                if r.status != Status::Pass {
                    failures += 1;
                }
            }
        }
    }
    // Hölder continuity at gamma = 0.4 across every threshold.
    let mut holder_fail = 0usize;
    for tau in [-3.0f64, -1.0, 1.0, 3.0] {
        let z1 = SpectralPoint::plus_i0(tau - 0.025);
        let z2 = SpectralPoint::plus_i0(tau + 0.025);
        for (u, v) in pairs.iter().take(5) {
            let recs = resolvent::verify_resolvent_bounds(u, v, 2.0, &z1, &z2, 0.4).unwrap();
            for r in recs {
                checked += 1;
                if r.status != Status::Pass {
                    holder_fail += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    criterion(
        6,
        "weighted resolvent bound (d=3, q=2)",
        failures == 0 && holder_fail == 0 && elapsed <= 600.0,
        format!(
            "{checked} verdicts over 161 energies incl. thresholds, worst |Y0|/17|u||v| = {worst_ratio:.4}, {elapsed:.1}s"
        ),
    );
}

#[test]
fn acceptance_07_hilbert_schmidt_variants() {
    let mut failures = 0usize;
    let mut checked = 0usize;
    for d in 3..=5usize {
        let df = d as f64;
        let mut rng = seeded_rng(7, &format!("acceptance.hs.{d}"));
        let pairs: Vec<(Sequence, Sequence)> = (0..6)
            .map(|_| {
                (
                    lattice_disperse::report::random_sequence(&mut rng, d, 1, 3),
                    lattice_disperse::report::random_sequence(&mut rng, d, 1, 3),
                )
            })
            .collect();
        let mut lambda = -df - 0.5;
        while lambda <= df + 0.5 {
            let z = SpectralPoint::plus_i0(lambda);
            for (u, v) in &pairs {
                let recs = resolvent::verify_resolvent_bounds(u, v, 2.0, &z, &z, 0.0).unwrap();
                for r in recs.iter().filter(|r| r.check_id == "resolvent.hs-bound") {
                    checked += 1;
                    // D_{2,d} = 1 at q = 2: the constant is 1 + C_d^0.
                    let c = lattice_disperse::constants::c_d_gamma(d, 0.0).unwrap();
                    assert!((r.rhs / (u.lp_norm(2.0) * v.lp_norm(2.0)) - (1.0 + c)).abs() < 1e-9);
                    if r.status != Status::Pass {
                        failures += 1;
                    }
                }
            }
            lambda += 0.5;
        }
    }
    criterion(
        7,
        "Hilbert-Schmidt resolvent bounds (q=2, d=3,4,5)",
        failures == 0,
        format!("{checked} verdicts, {failures} failures"),
    );
}

#[test]
fn acceptance_08_birman_schwinger_correctness() {
    let start = Instant::now();
    // Rank-one attractive well: three routes to the bound state.
    let v = Potential::point(LatticeVector::zero(3), -5.0, 1.0);
    let grid: Vec<f64> = (0..=99).map(|k| -8.0 + 0.05 * k as f64).collect();
    let detections = schrodinger::bs_scan(&v, &grid, 1e-8).unwrap();
    let one_detection = detections.len() == 1;
    let lambda_bs = detections[0].lambda;
    // Scalar equation 1 = 5 Re R_0(0, lambda).
    let r0 = resolvent::r0_kernel(&LatticeVector::zero(3), &SpectralPoint::plus_i0(lambda_bs), 1e-10).unwrap();
    let scalar_defect = (1.0 - 5.0 * r0.value.re).abs();
    // Newton refinement of the scalar root for an independent comparison.
    let mut root = lambda_bs;
    for _ in 0..40 {
        let g = |x: f64| {
            1.0 - 5.0
                * resolvent::r0_kernel(&LatticeVector::zero(3), &SpectralPoint::plus_i0(x), 1e-11)
                    .unwrap()
                    .value
                    .re
        };
        let h = 1e-6;
        let slope = (g(root + h) - g(root - h)) / (2.0 * h);
        let step = g(root) / slope;
        root -= step;
        if step.abs() < 1e-12 {
            break;
        }
    }
    let root_gap = (root - lambda_bs).abs();
    // Boxed Hamiltonian on the stated box.
    let h = schrodinger::build_hamiltonian(&v, LatticeBox::new(3, 20)).unwrap();
    let low = lanczos_extreme(&h, SpectralEnd::Lowest, 1, 1e-10, 260);
    let box_rel = (low[0].0 - lambda_bs).abs() / lambda_bs.abs();

    // Small coupling: below 1/17 no spectrum leaves the band.
    let eps = 1e-6;
    let weak = Potential::from_entries(
        3,
        1.0,
        [(LatticeVector::zero(3), 0.03), (LatticeVector::new([1, 0, 0]), -0.025)],
    );
    assert!(weak.lp_norm(1.0) < 1.0 / 17.0);
    let wgrid: Vec<f64> =
        (0..=130).map(|k| -4.0 + 0.0625 * k as f64).filter(|x| x.abs() > 3.0).collect();
    let weak_detections = schrodinger::bs_scan(&weak, &wgrid, 1e-8).unwrap();
    let hw = schrodinger::build_hamiltonian(&weak, LatticeBox::new(3, 20)).unwrap();
    let lo = lanczos_extreme(&hw, SpectralEnd::Lowest, 1, 1e-10, 260)[0].0;
    let hi = lanczos_extreme(&hw, SpectralEnd::Highest, 1, 1e-10, 260)[0].0;
    let inside = lo >= -3.0 - eps && hi <= 3.0 + eps;
    let elapsed = start.elapsed().as_secs_f64();
    criterion(
        8,
        "Birman-Schwinger correctness",
        one_detection && scalar_defect <= 1e-8 && root_gap <= 1e-8 && box_rel <= 1e-6 && weak_detections.is_empty() && inside,
        format!(
            "detection {lambda_bs:.9}, scalar defect {scalar_defect:.2e}, root gap {root_gap:.2e}, box rel {box_rel:.2e}, weak detections {}, weak extremes [{lo:.9}, {hi:.9}] ({elapsed:.0}s)",
            weak_detections.len()
        ),
    );
}

#[test]
fn acceptance_09_limiting_absorption_identity() {
    let start = Instant::now();
    let corpus = [
        ("rank-one", suites::demo_rank_one_d3()),
        ("two-point", suites::demo_two_point_d3()),
        ("three-point", suites::demo_three_point_d3()),
    ];
    let zs = [
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
    ];
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for (name, v) in &corpus {
        for &z in &zs {
            let r = schrodinger::verify_resolvent_identity(v, z, 40).unwrap();
            worst = worst.max(r.lhs);
            if r.status == Status::Fail {
                failures += 1;
                println!("  limabs failure: {name} at {z}: defect {}", r.lhs);
            }
        }
    }
    criterion(
        9,
        "limiting-absorption identity",
        failures == 0 && worst <= 1e-6,
        format!("30 identities (3 potentials x 10 interior points), worst HS defect {worst:.3e} ({:.0}s)", start.elapsed().as_secs_f64()),
    );
}

#[test]
fn acceptance_10_determinism() {
    let start = Instant::now();
    let cfg = RunConfig::quick_profile(7);
    let a = serde_json::to_string(&suites::full_suite(&cfg).unwrap().records).unwrap();
    let b = serde_json::to_string(&suites::full_suite(&cfg).unwrap().records).unwrap();
    let identical = a == b;
    let elapsed = start.elapsed().as_secs_f64();
    criterion(
        10,
        "determinism",
        identical,
        format!("two seeded quick-profile suite runs byte-identical = {identical} ({elapsed:.0}s); full-profile wall clock covered by the ignored budget test"),
    );
}

/// Full-profile wall-clock budget; run explicitly with `--ignored`.
#[test]
#[ignore = "full-profile runtime budget; run with: cargo test --test acceptance -- --ignored"]
fn acceptance_10b_full_suite_wall_clock() {
    let start = Instant::now();
    let cfg = RunConfig::default();
    let report = suites::full_suite(&cfg).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let ok = suites::all_pass(&report.records) && elapsed <= 900.0;
    criterion(
        10,
        "full suite wall clock",
        ok,
        format!("{} records, all pass = {}, {elapsed:.0}s <= 900s", report.records.len(), suites::all_pass(&report.records)),
    );
}

/// The spectrum of a kernel matrix agrees with the independent eigensolver
/// oracle (supporting check reused by several criteria).
#[test]
fn supporting_norm_contracts() {
    let mut rng = seeded_rng(7, "acceptance.norms");
    use rand::Rng;
    let m = nalgebra::DMatrix::<Complex>::from_fn(30, 30, |_, _| {
        Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    assert!(operator_norm(&m) <= hs_norm(&m) * (1.0 + 1e-9));
}
