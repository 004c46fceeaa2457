//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::f64::consts::{LN_2, TAU};
use std::time::Instant;

use rand::Rng;

use greenpot::blaschke::{extremal_sweep, verify_product_inequality, BlaschkeProduct};
use greenpot::constants::{
    c_constant_disk, c_constant_route_b, constants_report, fekete_split, verify_sharp_inequality,
    ConstantsOptions, SigmaSource,
};
use greenpot::equilibrium::{equilibrium_disk, fekete_solve, fekete_sweep};
use greenpot::geometry::{
    green_disk, halfplane_factor_modulus, halfplane_to_disk, ComplexPoint, MoebiusMap,
};
use greenpot::riesz::{
    disk_sigma_potential, sigma_density_disk, sigma_numeric, sigma_total_mass_disk, GridSpec,
};
use greenpot::sets::CompactSet;
use greenpot::suites::{
    bernstein_walsh_suite, blaschke_suite, random_disk_point, sharp_inequality_suite, trial_rng,
};

const SEED: u64 = 20240601;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn c(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::new(re, im)
}

fn disk(r: f64) -> CompactSet {
    CompactSet::concentric_disk(r, 256).unwrap()
}

fn square() -> CompactSet {
    CompactSet::jordan_polygon(
        vec![c(-0.4, -0.4), c(0.4, -0.4), c(0.4, 0.4), c(-0.4, 0.4)],
        256,
    )
    .unwrap()
}

fn l_shape() -> CompactSet {
    CompactSet::jordan_polygon(
        vec![
            c(-0.5, -0.5),
            c(0.5, -0.5),
            c(0.5, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.5),
            c(-0.5, 0.5),
        ],
        256,
    )
    .unwrap()
}

fn riesz_mass() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for r in [0.3, 0.5, 0.7] {
        let t = Instant::now();
        let grid = sigma_numeric(&disk(r), GridSpec::for_set(&disk(r), 1.0 / 512.0)).unwrap();
        let secs = t.elapsed().as_secs_f64();
        let err = (grid.mass - sigma_total_mass_disk(r).unwrap()).abs();
        pass &= err < 5e-3 && secs < 30.0;
        parts.push(format!("r={r}: |mass-exact|={err:.2e} in {secs:.2}s"));
    }
    Outcome::new(pass, parts.join("; "))
}

fn max_density_deviation(r: f64, h: f64) -> (f64, f64) {
    let e = disk(r);
    let grid = sigma_numeric(&e, GridSpec::for_set(&e, h)).unwrap();
    let mut rel: f64 = 0.0;
    let mut abs: f64 = 0.0;
    for cell in &grid.cells {
        let m = cell.point.norm();
        if m > 0.05 && m < 0.95 {
            let exact = sigma_density_disk(r, cell.point).unwrap();
            abs = abs.max((cell.density - exact).abs());
            rel = rel.max((cell.density - exact).abs() / exact);
        }
    }
    (rel, abs)
}

fn riesz_density() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for r in [0.3, 0.5, 0.7] {
        let (rel, abs) = max_density_deviation(r, 1.0 / 512.0);
        let (_, abs_fine) = max_density_deviation(r, 1.0 / 1024.0);
        let gain = abs / abs_fine;
        pass &= rel < 0.02 && gain >= 3.0;
        parts.push(format!(
            "r={r}: max rel dev {rel:.2e}, halving h gains {gain:.2}x"
        ));
    }
    Outcome::new(pass, parts.join("; "))
}

fn representation() -> Outcome {
    let r = 0.5;
    let mut rng = trial_rng(SEED, 3);
    let worst = (0..100)
        .map(|_| {
            let z = random_disk_point(&mut rng, 0.95);
            let exact = ((1.0 + r * z.norm()) / (z.norm() + r)).ln();
            (disk_sigma_potential(r, z, 32, 256).unwrap() - exact).abs()
        })
        .fold(0.0, f64::max);
    Outcome::new(
        worst < 1e-3,
        format!("max |U^sigma - (-log d_E)| over 100 points = {worst:.2e}"),
    )
}

fn constants_cross_check() -> Outcome {
    let t = Instant::now();
    let mut pass = true;
    let mut worst: f64 = 0.0;
    for r in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let e = disk(r);
        let (rep, eq) = constants_report(&e, &ConstantsOptions::default()).unwrap();
        let closed = c_constant_disk(r).unwrap();
        // Second route again, this time against the grid Riesz measure.
        let grid = sigma_numeric(&e, GridSpec::for_set(&e, 1.0 / 256.0)).unwrap();
        let b_grid = c_constant_route_b(&eq, SigmaSource::Grid(&grid)).unwrap();
        for v in [rep.c_route_a, rep.c_route_b, b_grid] {
            worst = worst.max((v - closed).abs());
        }
    }
    pass &= worst < 1e-3;
    let c05 = c_constant_disk(0.5).unwrap();
    let value_ok = (c05 - (-0.0079051)).abs() < 1e-6;
    let secs = t.elapsed().as_secs_f64();
    pass &= value_ok && secs < 10.0;
    Outcome::new(
        pass,
        format!("max route deviation {worst:.2e}; C(0.5) = {c05:.7}; {secs:.2}s"),
    )
}

fn fekete_convergence() -> Outcome {
    let t = Instant::now();
    let sweep = fekete_sweep(&disk(0.5), &[2, 4, 8, 16, 32, 64], 8).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let monotone = sweep.monotonicity_violations.is_empty();
    let last = sweep.results.last().unwrap();
    let dev = (last.min_potential - LN_2).abs();
    let energies: Vec<String> = sweep
        .results
        .iter()
        .map(|r| format!("{:.4}", r.normalized_energy))
        .collect();
    Outcome::new(
        monotone && dev < 1e-2 && secs < 60.0,
        format!(
            "energies [{}] monotone={monotone}; |min_potential(64) - log 2| = {dev:.5}; {secs:.2}s",
            energies.join(", ")
        ),
    )
}

fn sharp_inequality() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    let sets = [
        ("D(0.5)", disk(0.5)),
        ("D(0.9)", disk(0.9)),
        ("square", square()),
        ("L-shape", l_shape()),
    ];
    for (name, e) in &sets {
        let (rep, _) = constants_report(e, &ConstantsOptions::default()).unwrap();
        let suite = sharp_inequality_suite(e, &rep, 10_000, SEED, 1e-6).unwrap();
        pass &= suite.violations == 0 && suite.min_slack >= -1e-6;
        parts.push(format!("{name}: min slack {:.3e}", suite.min_slack));
    }
    for (name, e) in &sets[..3] {
        let (rep, _) = constants_report(e, &ConstantsOptions::default()).unwrap();
        let fekete = fekete_solve(e, 64, 8).unwrap();
        let chk = verify_sharp_inequality(&fekete_split(&fekete.points).unwrap(), e, &rep).unwrap();
        pass &= chk.slack < 0.02 && chk.slack >= -1e-6;
        parts.push(format!("{name} Fekete split n=64 slack {:.4}", chk.slack));
    }
    Outcome::new(pass, parts.join("; "))
}

fn blaschke_inequality() -> Outcome {
    let r = 0.5;
    let e = disk(r);
    let (rep, _) = constants_report(&e, &ConstantsOptions::default()).unwrap();
    let suite = blaschke_suite(&e, &rep, 10_000, SEED, 1e-6).unwrap();
    let mut worst: f64 = 0.0;
    for n in [1, 5, 20, 60] {
        let b = BlaschkeProduct::from_zeros(vec![c(0.0, 0.0); n]).unwrap();
        let chk = verify_product_inequality(&[b], &e, &rep).unwrap();
        worst = worst.max((chk.slack - n as f64 * (2.0 / (1.0 + r * r)).ln()).abs());
    }
    Outcome::new(
        suite.violations == 0 && worst < 1e-10,
        format!(
            "10^4 factorizations: {} violations, min slack {:.3e}; monomial slack error {worst:.1e}",
            suite.violations, suite.min_slack
        ),
    )
}

fn extremal_arrays() -> Outcome {
    let e = disk(0.5);
    let (rep, eq) = constants_report(&e, &ConstantsOptions::default()).unwrap();
    let rows = extremal_sweep(&e, &[2, 4, 8, 16, 32, 64, 128], 8, &rep, &eq).unwrap();
    let last = rows.last().unwrap();
    let target = (-rep.c()).exp();
    let target_ok = (target - 1.007936).abs() < 1e-6;
    let ratio_dev = (last.ratio - target).abs();
    let root_dev = (last.product_norm.powf(1.0 / 128.0) - 0.5).abs();
    // Equally spaced zeros reproduce every moment below their count, so the
    // tail sits at the solver noise floor.
    let gaps: Vec<f64> = rows.iter().map(|r| r.moment_gap).collect();
    let decreasing =
        gaps.windows(2).all(|w| w[1] <= w[0] + 1e-10) && gaps[0] > *gaps.last().unwrap();
    let gap_text: Vec<String> = gaps.iter().map(|g| format!("{g:.1e}")).collect();
    Outcome::new(
        target_ok && ratio_dev < 1e-2 && root_dev < 1e-2 && decreasing,
        format!(
            "e^-C = {target:.6}; |ratio(128) - e^-C| = {ratio_dev:.2e}; |norm^(1/128) - 0.5| = {root_dev:.2e}; moment gaps [{}]",
            gap_text.join(", ")
        ),
    )
}

fn bernstein_walsh() -> Outcome {
    let e = disk(0.5);
    let eq = equilibrium_disk(0.5, 256).unwrap();
    let suite = bernstein_walsh_suite(&e, &eq, 1000, 100, SEED, 1e-6).unwrap();
    Outcome::new(
        suite.violations == 0,
        format!(
            "10^3 measures x 10^2 points: min gap {:.3e}",
            suite.min_slack
        ),
    )
}

fn conformal_invariance() -> Outcome {
    let mut rng = trial_rng(SEED, 10);
    let mut worst_disk: f64 = 0.0;
    for _ in 0..1000 {
        let m =
            MoebiusMap::new(random_disk_point(&mut rng, 0.95), rng.random::<f64>() * TAU).unwrap();
        let z = random_disk_point(&mut rng, 0.95);
        let zeta = random_disk_point(&mut rng, 0.95);
        let before = green_disk(z, zeta).unwrap().value();
        let after = green_disk(m.apply(z).unwrap(), m.apply(zeta).unwrap())
            .unwrap()
            .value();
        worst_disk = worst_disk.max((before - after).abs());
    }
    let mut worst_half: f64 = 0.0;
    for _ in 0..1000 {
        let w = c(rng.random_range(-5.0..5.0), rng.random_range(0.05..5.0));
        let w0 = c(rng.random_range(-5.0..5.0), rng.random_range(0.05..5.0));
        let g_half = -halfplane_factor_modulus(w, w0).unwrap().ln();
        let g_disk = green_disk(
            halfplane_to_disk(w).unwrap(),
            halfplane_to_disk(w0).unwrap(),
        )
        .unwrap()
        .value();
        worst_half = worst_half.max((g_half - g_disk).abs());
    }
    Outcome::new(
        worst_disk < 1e-10 && worst_half < 1e-10,
        format!("max Moebius error {worst_disk:.1e}; max half-plane error {worst_half:.1e}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Riesz mass", riesz_mass),
        ("Riesz density", riesz_density),
        ("representation", representation),
        ("constants cross-check", constants_cross_check),
        ("Fekete convergence", fekete_convergence),
        ("sharp inequality", sharp_inequality),
        ("Blaschke inequality", blaschke_inequality),
        ("extremal arrays", extremal_arrays),
        ("Bernstein-Walsh analog", bernstein_walsh),
        ("conformal invariance", conformal_invariance),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = check();
        let status = if out.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!out.pass);
        println!(
            "criterion {:>2} {status} {name}: {} [{:.1}s]",
            k + 1,
            out.detail,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
