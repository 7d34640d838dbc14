//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Reference values are closed-form expressions evaluated here, independently
//! of the library.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use plasmon_casimir::energy::{AsymptoticFits, FitWindows};
use plasmon_casimir::{
    breakdown, find_plasmonic_crossover, fit_asymptotic_constants, lifshitz_total, log_grid,
    photonic_energy_direct, plasmon_shifts, Model, Numerics,
};

const ALPHA: f64 = 1.193;
const BETA: f64 = 74.58;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn ideal_energy(l: f64) -> f64 {
    -PI.powi(2) / (720.0 * l.powi(3))
}

/// Single-interface plasmon, `ω² = ω_p²/2 + k² − sqrt(ω_p⁴/4 + k⁴)`.
fn spp_reference(wp: f64, k: f64) -> f64 {
    (wp * wp / 2.0 + k * k - (wp.powi(4) / 4.0 + k.powi(4)).sqrt()).sqrt()
}

/// Ordinary least-squares slope of `ln y` against `ln x`.
fn log_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = pts.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn ideal_limit() -> Outcome {
    let model = Model::new(1e3).unwrap();
    let e = lifshitz_total(&model, 1.0, &Numerics::default()).unwrap();
    let dev = rel(e.energy_per_area, ideal_energy(1.0));
    outcome(dev <= 5e-3, format!("E/A = {:.8e}, ideal {:.8e}, deviation {:.3}%", e.energy_per_area, ideal_energy(1.0), 100.0 * dev))
}

fn short_distance(fits: &AsymptoticFits<f64>) -> Outcome {
    let model = Model::unit();
    let cfg = Numerics::default();
    let mut pass = true;
    let mut detail = String::new();
    for x in [0.002, 0.005, 0.01] {
        let eta = breakdown(&model, x, &cfg).unwrap().eta;
        let dev = rel(eta, 1.5 * ALPHA * x);
        pass &= dev <= 0.05;
        detail += &format!("eta({x}) off by {:.2}%; ", 100.0 * dev);
    }
    let dev = rel(fits.alpha, ALPHA);
    pass &= dev <= 0.02;
    detail += &format!("alpha_fit = {:.5} ({:.2}%)", fits.alpha, 100.0 * dev);
    outcome(pass, detail)
}

fn large_distance() -> Outcome {
    let model = Model::unit();
    let cfg = Numerics::default();
    let mut pass = true;
    let mut detail = String::new();
    for x in [50.0, 100.0, 300.0] {
        let eta = breakdown(&model, x, &cfg).unwrap().eta;
        let dev = rel(eta, 1.0 - 2.0 / (PI * x));
        pass &= dev <= 0.01;
        detail += &format!("eta({x}) = {eta:.6} off by {:.4}%; ", 100.0 * dev);
    }
    outcome(pass, detail)
}

fn beta_constant(fits: &AsymptoticFits<f64>) -> Outcome {
    let b_ph = fits.beta_ph.coefficient;
    let b_pl = fits.beta_pl.coefficient;
    let dev = rel(b_ph, BETA);
    let combined = 2.0 * 0.03 * BETA;
    let pass = dev <= 0.03 && (b_ph - b_pl).abs() <= combined;
    outcome(
        pass,
        format!(
            "beta(eta_ph - 1) = {b_ph:.4} ({:.2}% off), beta(-eta_pl) = {b_pl:.4}, |diff| = {:.4}; single-term fits {:.3} / {:.3}",
            100.0 * dev,
            (b_ph - b_pl).abs(),
            fits.beta_ph_single.prefactor,
            fits.beta_pl_single.prefactor
        ),
    )
}

fn crossover(cfg: &Numerics) -> Outcome {
    match find_plasmonic_crossover(&Model::unit(), cfg) {
        Ok(c) => {
            let x = c.l_over_lambda_p;
            outcome((0.04..=0.16).contains(&x), format!("L_cross/lambda_p = {x:.6} (window [0.04, 0.16])"))
        }
        Err(e) => outcome(false, format!("no crossover: {e}")),
    }
}

fn cancellation(cfg: &Numerics) -> Outcome {
    let b = breakdown(&Model::unit(), 1.0, cfg).unwrap();
    let pass = (30.0..=42.0).contains(&b.eta_pl.abs()) && (31.0..=43.0).contains(&b.eta_ph) && b.eta_ph > b.eta_pl.abs();
    outcome(
        pass,
        format!("eta = {:.6}, eta_pl = {:.4}, eta_ph = {:.4} (|eta_pl|/eta = {:.1})", b.eta, b.eta_pl, b.eta_ph, b.eta_pl.abs() / b.eta),
    )
}

fn photonic_scaling() -> Outcome {
    let model = Model::unit();
    let cfg = Numerics::default();
    let pts: Vec<(f64, f64)> =
        log_grid(0.02, 0.1, 8).into_iter().map(|x| (x, breakdown(&model, x, &cfg).unwrap().eta_ph)).collect();
    let slope = log_slope(&pts);
    let b = breakdown(&model, 0.2, &cfg).unwrap();
    let ratio = (b.eta_ph / b.eta).abs();
    outcome(
        (slope - 4.0).abs() <= 0.3 && ratio < 0.01,
        format!("log-log slope of eta_ph = {slope:.4} (want 4 ± 0.3); |eta_ph/eta| at 0.2 = {ratio:.4} (want < 0.01)"),
    )
}

fn plasmon_limits() -> Outcome {
    let model = Model::unit();
    let mut worst_far = 0.0f64;
    for k in [0.3, 1.0, 3.0] {
        let s = plasmon_shifts(&model, k, 1e3 * model.lambda_p()).unwrap();
        let w = spp_reference(1.0, k);
        worst_far = worst_far.max(rel(s.omega_plus, w)).max(rel(s.omega_minus, w));
    }
    let mut worst_es = 0.0f64;
    let k = 50.0;
    for kl in [0.5, 1.0, 2.0] {
        let s = plasmon_shifts(&model, k, kl / k).unwrap();
        let plus = (0.5 * (1.0 + (-kl).exp())).sqrt();
        let minus = (0.5 * (1.0 - (-kl).exp())).sqrt();
        worst_es = worst_es.max(rel(s.omega_plus, plus)).max(rel(s.omega_minus, minus));
    }
    outcome(
        worst_far <= 1e-6 && worst_es <= 1e-4,
        format!("isolated-interface limit worst {worst_far:.2e} (≤ 1e-6); electrostatic limit worst {worst_es:.2e} (≤ 1e-4)"),
    )
}

fn sign_structure() -> Outcome {
    let model = Model::unit();
    let cfg = Numerics::default();
    let grid = log_grid(1e-3, 3e2, 20);
    let mut pass = true;
    let mut prev = 0.0;
    let mut notes = Vec::new();
    for &x in &grid {
        let b = breakdown(&model, x, &cfg).unwrap();
        // η is normalised by a negative energy: a repulsive share has η < 0
        let ok = b.eta_pl_plus < 0.0 && b.eta_pl_minus > 0.0 && b.eta > 0.0 && b.eta < 1.0 && b.eta > prev;
        if !ok {
            notes.push(format!("{x:.4}"));
        }
        pass &= ok;
        prev = b.eta;
    }
    outcome(pass, format!("{} L values checked, violations at {:?}", grid.len(), notes))
}

fn cross_oracle() -> Outcome {
    let model = Model::unit();
    let cfg = Numerics::default();
    let mut pass = true;
    let mut detail = String::new();
    for x in [0.3, 0.5, 1.0] {
        let l = x * model.lambda_p();
        let diff_route = breakdown(&model, x, &cfg).unwrap().eta_ph;
        match photonic_energy_direct(&model, l, &cfg) {
            Ok(d) => {
                let direct = d.energy_per_area / ideal_energy(l);
                let dev = rel(direct, diff_route);
                pass &= dev <= 0.05;
                detail += &format!("{x}: {direct:.6} vs {diff_route:.6} ({:.2e}); ", dev);
            }
            Err(e) => {
                pass = false;
                detail += &format!("{x}: {e}; ");
            }
        }
    }
    outcome(pass, detail)
}

fn robustness() -> Outcome {
    let split = Numerics::default().with_split(true);
    let c = crossover(&split);
    let r = cancellation(&split);
    outcome(c.pass && r.pass, format!("crossover: {} [{}]; cancellation: {} [{}]", c.detail, c.pass, r.detail, r.pass))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let fits = fit_asymptotic_constants(&Model::unit(), &FitWindows::default(), &Numerics::default()).unwrap();
    let default_cfg = Numerics::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("ideal-limit recovery", Box::new(ideal_limit)),
        ("short-distance law", Box::new(|| short_distance(&fits))),
        ("large-distance law", Box::new(large_distance)),
        ("beta constant", Box::new(|| beta_constant(&fits))),
        ("plasmonic crossover", Box::new(|| crossover(&default_cfg))),
        ("cancellation at L = lambda_p", Box::new(|| cancellation(&default_cfg))),
        ("photonic scaling", Box::new(photonic_scaling)),
        ("plasmon limits", Box::new(plasmon_limits)),
        ("sign structure", Box::new(sign_structure)),
        ("real-axis photonic cross-check", Box::new(cross_oracle)),
        ("robustness under light-line split", Box::new(robustness)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("{} criterion {:>2} ({name}): {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed ({:.1} s)", criteria.len() - failed, start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
