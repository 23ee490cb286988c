use std::f64::consts::{E, PI};

use kuznetsov_core::asymptotics::*;
use kuznetsov_core::measures::{nv_b, Parity, PlaceSet, ProductRegion, SpectralConfig};
use kuznetsov_core::numberfield::QuadField;
use kuznetsov_core::regions::{shell_growth_constant, Region, SpectralPoint};
use kuznetsov_core::testfunctions::gaussian_box_mass;
use kuznetsov_core::Error;

fn q5() -> QuadField {
    QuadField::new(5).unwrap()
}

fn even2() -> Vec<Parity> {
    vec![Parity::Even, Parity::Even]
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

// --- oracles --------------------------------------------------------------

/// `ν̃_b(i[a, a + w])` for `a ≥ 1`, straight from the definition.
fn interval_nv(b: f64, a: f64, w: f64) -> f64 {
    ((a + w).powf(b + 1.0) - a.powf(b + 1.0)) / (b + 1.0)
}

#[test]
fn parameter_choice_matches_substitution() {
    // mpmath: U = 2(100 − ½ ln 100), ε = √(ln 100/(2U)).
    let ln_m = -100.0;
    let u = choose_u(ln_m, 0.5, 1).unwrap();
    let eps = choose_eps(ln_m, u).unwrap();
    assert!((u - 195.394829814011908).abs() < 1e-10, "U = {u}");
    assert!((eps - 0.108555369602158654).abs() < 1e-12, "ε = {eps}");
    assert!((u * eps * eps - 2.30258509299404568).abs() < 1e-12);
}

#[test]
fn parameter_identity_and_monotonicity() {
    let p = AnalysisParams::default();
    let mut last: Option<(f64, f64)> = None;
    for k in 1..=40 {
        let ln_m = -(300.0 * 1.5f64.powi(k));
        let c = select_parameters(ln_m, &p, 2).unwrap();
        let identity = c.u * c.eps * c.eps - 0.5 * (-ln_m).ln();
        assert!(identity.abs() < 1e-12 * (-ln_m).ln(), "Uε² identity off by {identity}");
        if let Some((eps0, ue0)) = last {
            assert!(c.eps < eps0, "ε must decrease as m_ρ → 0");
            assert!(c.u * c.eps * c.eps > ue0, "Uε² must increase as m_ρ → 0");
        }
        last = Some((c.eps, c.u * c.eps * c.eps));
    }
}

#[test]
fn admissibility_window_is_enforced() {
    let d = shell_exponent(1);
    assert!((d - shell_growth_constant(1).ln()).abs() < 1e-15);
    let floor = E * E * d;
    let err = check_window(0.99 * floor, 0.1, 1).unwrap_err();
    assert!(matches!(&err, Error::InvalidInput(m) if m.contains("U ≥ e²D")), "{err}");
    let u = 1000.0;
    let err = check_window(u, 0.5 * (d / u).sqrt(), 1).unwrap_err();
    assert!(matches!(&err, Error::InvalidInput(m) if m.contains("√(D/U)")), "{err}");
    let err = check_window(u, 0.5, 1).unwrap_err();
    assert!(matches!(&err, Error::InvalidInput(m) if m.contains("e^(−1)")), "{err}");
    // At the lower end of the window e^{−Uε²} = e^{−D} = 1/R.
    let eps = (d / u).sqrt();
    check_window(u, eps, 1).unwrap();
    assert!(rel((-u * eps * eps).exp(), 1.0 / shell_growth_constant(1)) < 1e-13);

    let p = AnalysisParams::default();
    let err = select_parameters(-5.0, &p, 2).unwrap_err();
    let threshold = admissibility_threshold(p.t0, 2);
    assert!(matches!(&err, Error::InvalidInput(m) if m.contains("pre-asymptotic") && m.contains("threshold")), "{err}");
    assert!(select_parameters(-threshold * 1.001, &p, 2).is_ok());
    assert!(select_parameters(-threshold * 0.999, &p, 2).is_err());
}

#[test]
fn default_constants_follow_the_construction() {
    let p = AnalysisParams::default();
    assert!((p.t0 - 0.5 * 0.09 * 1.01).abs() < 1e-15);
    let rho1 = 1.5 - 0.45 - 0.3;
    assert!((p.rho - (rho1 + (1.0 - rho1) * 0.01)).abs() < 1e-15);
    assert!((p.big_a - (3.0 - 2.0 * 0.01)).abs() < 1e-15);
    p.validate().unwrap();
    assert!(AnalysisParams { rho: 0.65, ..p }.validate().is_err());
    assert!(AnalysisParams { big_a: 2.0, ..p }.validate().is_err());
    assert!(AnalysisParams::derived(0.3, 3.0, 0.01, 0.2).is_err());
}

#[test]
fn log_measures_match_direct_measures() {
    let cfg = SpectralConfig::default();
    let p = AnalysisParams::default();
    for &(a, w) in &[(1.0, 0.5), (3.0, 2.0), (50.0, 1.0), (1e4, 0.25)] {
        let region = ProductRegion::new(vec![Parity::Odd], vec![PlaceSet::imag_interval(a, a + w).unwrap()]).unwrap();
        let lb = LogBox::from_product(&region.parity, &region.places).unwrap();
        for b in [p.rho, 1.0] {
            // The closed form of the measures module cancels at large a;
            // agreement is within its own reported error.
            let direct = nv_b(&cfg, b, &region);
            let got = lb.ln_nv_plus(b).exp();
            assert!((got - direct.value).abs() <= (1e-12 * got).max(direct.error), "b = {b}, a = {a}");
            if a < 100.0 {
                assert!(rel(got, interval_nv(b, a, w)) < 1e-12);
            }
        }
        let npl = kuznetsov_core::measures::npl(&region).value;
        assert!(rel(lb.ln_npl().exp(), npl) < 1e-12, "npl at a = {a}");
    }
    // mpmath: ((10^4 + 1/4)^{1.7525} − 10^{4·1.7525})/1.7525.
    let lb = LogBox::hypercube(vec![Parity::Odd], &[1e4f64.ln()], 0.25).unwrap();
    assert!(rel(lb.ln_nv_plus(p.rho).exp(), 255.825654402652660705) < 1e-13);
    // Far beyond f64 range the measure is a^b w(1 + O(w/a)).
    let huge = LogBox::hypercube(vec![Parity::Even], &[5000.0], 2.0).unwrap();
    assert!((huge.ln_nv_plus(1.0) - (5000.0 + 2f64.ln())).abs() < 1e-12);
    assert!((huge.ln_npl() - (5000.0 + 4f64.ln())).abs() < 1e-12);
}

#[test]
fn m_rho_of_a_rising_interval() {
    let p = AnalysisParams::default();
    // mpmath: log(ν̃_ρ/ν̃_1) for i[a, a+1], ρ = 0.7525.
    for &(a, oracle) in &[(10.0, -0.582035787923279335), (1000.0, -1.70979315837328977)] {
        let set = BudgetSet::Box(LogBox::hypercube(vec![Parity::Even], &[f64::ln(a)], 1.0).unwrap());
        assert!((ln_m_rho(&set, &p).unwrap() - oracle).abs() < 1e-12);
    }
    // m_ρ ~ a^{ρ−1}.
    let set = BudgetSet::Box(LogBox::hypercube(vec![Parity::Even], &[1e5], 1.0).unwrap());
    let ln_m = ln_m_rho(&set, &p).unwrap();
    assert!((ln_m - (p.rho - 1.0) * 1e5).abs() < 1e-6, "log m_ρ = {ln_m}");
    assert_eq!(m_rho(&set, &p).unwrap(), 0.0);
}

#[test]
fn discrete_singleton_weights() {
    let p = AnalysisParams::default();
    let lb = LogBox::singleton(vec![Parity::Odd], &[41.0]).unwrap();
    assert!((lb.ln_nv_minus(-p.big_a) - (-p.big_a * 41f64.ln())).abs() < 1e-13);
    assert!((lb.ln_nv_minus(1.0) - 41f64.ln()).abs() < 1e-13);
    assert_eq!(lb.q_plus(), 0);
    assert!(LogBox::singleton(vec![Parity::Odd], &[40.5]).is_err());
    let empty = BudgetSet::from_region(Region::Product(ProductRegion::new(vec![Parity::Odd], vec![PlaceSet::point(2.5).unwrap()]).unwrap()), &p.spectral);
    assert!(empty.is_err(), "a set without admissible points has ν̃_1 = 0");
}

#[test]
fn shell_ratio_matches_interval_arithmetic_and_regions() {
    let cfg = SpectralConfig::default();
    let (s, eps) = (0.7, 0.03);
    let set = BudgetSet::Box(LogBox::hypercube(even2(), &[8.0, 12.0], s).unwrap());
    let c = 2.0 * eps;
    // Fattened minus shrunk side lengths, ratio of products.
    let oracle = ((s + 2.0 * c) / s).powi(2) - ((s - 2.0 * c) / s).powi(2);
    let beta = beta_eps(&set, eps, &cfg).unwrap();
    assert!(rel(beta, oracle) < 1e-13, "{beta} vs {oracle}");
    assert!((beta - 2.0 * 4.0 * c / s).abs() < 1e-12, "first order: 2ε·edge density");

    // Near |ν| = 1 the fattening crosses the weight change; compare with
    // the shells of the regions module.
    for sides in [[(1.05, 2.0), (3.0, 3.5)], [(20.0, 21.0), (1.0, 1.4)]] {
        let region = Region::imaginary_box(even2(), &sides).unwrap();
        let direct = region.shells(0.1, &cfg).unwrap().shell_nv_b(1.0, Default::default()).unwrap().value
            / region.closed_form_nv1(&cfg).value;
        let set = BudgetSet::from_region(region, &cfg).unwrap();
        assert!(rel(set.shell_ratio(0.1, &cfg).unwrap(), direct) < 1e-12);
    }
}

#[test]
fn holomorphic_budget_and_identity() {
    let f = q5();
    let p = AnalysisParams::default();
    let mut last = f64::INFINITY;
    for &pp in &[(1.0, 2.0), (10.0, 21.0), (1000.0, 4001.0)] {
        let region = Region::singleton(even2(), &[pp.0 + 0.5, pp.1 + 0.5]).unwrap();
        let main = main_term(&f, &region, &p.spectral).unwrap().value;
        let holo = 2.0 * 5f64.sqrt() / (PI * PI) * (pp.0 + 0.5) * (pp.1 + 0.5);
        assert!(rel(main, holo) < 1e-12, "main term {main} vs {holo}");
        let set = BudgetSet::from_region(region, &p.spectral).unwrap();
        let b = error_budget(&f, &set, &p, 0.0, 0.0).unwrap();
        assert!(b.u.is_none() && b.eps.is_none());
        let klo = -p.big_a * ((pp.0 + 0.5f64).ln() + (pp.1 + 0.5f64).ln());
        assert!((b.kloosterman.ln_value - klo).abs() < 1e-12);
        assert_eq!(b.smoothing.ratio + b.boundary.ratio + b.plancherel.ratio, 0.0);
        assert!(b.ratio() < last);
        last = b.ratio();
    }
    assert!(last < 1e-10);
}

#[test]
fn hypercube_budget_becomes_small() {
    let f = q5();
    let p = AnalysisParams::default();
    let mut previous: Option<ErrorBudget> = None;
    for ln_a in [1e4, 1e5, 1e6] {
        let set = BudgetSet::Box(LogBox::hypercube(even2(), &[ln_a, ln_a], 1.0).unwrap());
        let (b, choice) = auto_budget(&f, &set, &p).unwrap();
        let choice = choice.unwrap();
        // The chosen U makes the Kloosterman and smoothing pieces both
        // |log m_ρ|^{−1/2}ν̃_1(C).
        let scale = -0.5 * (-choice.ln_m_rho).ln() + b.ln_nv1;
        assert!((b.kloosterman.ln_value - scale).abs() < 1e-6 * ln_a);
        assert!((b.smoothing.ln_value - scale).abs() < 1e-9 * ln_a);
        if let Some(prev) = previous {
            for (now, before) in b.pieces().iter().zip(prev.pieces()) {
                assert!(now.1.ratio < before.1.ratio, "{} piece did not decrease", now.0);
            }
        }
        previous = Some(b);
    }
    let last = previous.unwrap();
    for (name, piece) in last.pieces() {
        assert!(piece.ratio < 0.1, "{name} piece is {} of the main term", piece.ratio);
    }
    // At desk-scale corners the choice of U is not yet admissible.
    let small = BudgetSet::Box(LogBox::hypercube(even2(), &[3f64.ln() * 3.0, 3f64.ln() * 3.0], 1.0).unwrap());
    assert!(matches!(auto_budget(&f, &small, &p), Err(Error::InvalidInput(m)) if m.contains("pre-asymptotic")));
}

#[test]
fn error_budget_rejects_bad_windows_and_degrees() {
    let p = AnalysisParams::default();
    let set = BudgetSet::Box(LogBox::hypercube(even2(), &[50.0, 50.0], 1.0).unwrap());
    assert!(matches!(error_budget(&q5(), &set, &p, 1.0, 0.1), Err(Error::InvalidInput(m)) if m.contains("U ≥ e²D")));
    assert!(error_budget(&QuadField::rationals(), &set, &p, 1e5, 0.1).is_err());
    let b = error_budget(&q5(), &set, &p, 1e5, 0.1).unwrap();
    assert!((b.plancherel.ln_value - (b.ln_nv1 - 0.5 * 1e5f64.ln())).abs() < 1e-12);
    assert!((b.smoothing.ln_value - (b.ln_nv1 - 1e5 * 0.01)).abs() < 1e-9);
}

#[test]
fn main_term_of_the_empty_set_is_zero() {
    let cfg = SpectralConfig::default();
    let region = Region::Product(ProductRegion::new(even2(), vec![PlaceSet::empty(), PlaceSet::imag_interval(1.0, 2.0).unwrap()]).unwrap());
    assert_eq!(main_term(&q5(), &region, &cfg).unwrap().value, 0.0);
}

fn decade(lo: f64) -> Vec<f64> {
    (0..5).map(|k| lo * 10f64.powf(k as f64 / 4.0)).collect()
}

#[test]
fn weyl_and_strip_constants() {
    let f = q5();
    let cfg = SpectralConfig::default();
    let weyl1 = family_asymptotic_table(&AsymptoticFamily::Weyl1 { parity: even2() }, &f, &cfg, &decade(1e3)).unwrap();
    assert!(rel(weyl1.target.constant, 2.0 * 5f64.sqrt() / (PI * PI)) < 1e-15);
    assert!(weyl1.max_deviation < 0.03, "Weyl1 deviation {}", weyl1.max_deviation);
    for plus in [vec![true, true], vec![true, false], vec![false, false]] {
        let fam = AsymptoticFamily::Weyl2 { parity: vec![Parity::Even, Parity::Odd], plus };
        let tab = family_asymptotic_table(&fam, &f, &cfg, &decade(1e3)).unwrap();
        assert!(rel(tab.target.constant, 2.0 * 5f64.sqrt() / (2.0 * 4.0 * PI * PI)) < 1e-15);
        assert!(tab.max_deviation < 0.03, "Weyl2 {fam:?}: {}", tab.max_deviation);
    }
    let strip = AsymptoticFamily::SlantedStrip { parity: even2(), a: 1.0, b: 0.0, c: 1.0 };
    let tab = family_asymptotic_table(&strip, &f, &cfg, &decade(1e3)).unwrap();
    assert!(rel(tab.target.constant, 14.0 / (3.0 * PI * PI) * 5f64.sqrt()) < 1e-15);
    assert!(tab.max_deviation < 0.02 && (tab.fitted_exponent - 3.0).abs() < 0.01);
    let rect = AsymptoticFamily::RectQuad { parity: even2(), alpha: 1.0, beta: 2.0 };
    let tab = family_asymptotic_table(&rect, &f, &cfg, &decade(1e3)).unwrap();
    assert!(tab.max_deviation < 1e-3 && (tab.fitted_exponent - 0.5).abs() < 1e-3);
    assert!(family_asymptotic_table(&strip, &f, &cfg, &[1e3, 2e3]).is_err());
}

#[test]
fn sector_and_sphere_constants_differ_from_the_published_ones() {
    let f = q5();
    let cfg = SpectralConfig::default();
    let c = 2.0 * 5f64.sqrt() / (PI * PI);
    // Sector: main term = (2√D/π²)·(q−p)/4·t^{1+α}(1 + t^{α−1}/2) to
    // leading orders; the published constant is (q−p)/4.
    let sector = AsymptoticFamily::Sector { parity: even2(), p: 1.0, q: 2.0, alpha: 0.75 };
    let tab = family_asymptotic_table(&sector, &f, &cfg, &decade(1e3)).unwrap();
    assert!((tab.fitted_exponent - 1.75).abs() < 0.02, "sector exponent {}", tab.fitted_exponent);
    for row in &tab.rows {
        let derived = c * (1.0 + 0.5 * row.t.powf(-0.25));
        assert!(rel(row.normalized, derived) < 5e-3, "t = {}: {} vs {derived}", row.t, row.normalized);
    }
    assert!(tab.constant_deviation > 0.5);
    // Sphere: main term = 2√D v_d (r/π)^d ∏m_j, half the published value.
    let sphere = AsymptoticFamily::Sphere { parity: even2(), radius: 1.0, slopes: vec![1.0, 2.0] };
    let tab = family_asymptotic_table(&sphere, &f, &cfg, &decade(10.0)).unwrap();
    for row in &tab.rows {
        assert!((row.normalized - 0.5).abs() < 1e-9, "sphere ratio {}", row.normalized);
    }
}

#[test]
fn eisenstein_bound_shape() {
    assert!((eisenstein_bound(0.0, &[0.0], 7) - 2f64.ln().powi(7)).abs() < 1e-15);
    let mut last = 0.0;
    for k in 0..20 {
        let t = k as f64 * 3.7;
        let v = eisenstein_bound(t, &[0.0, 0.0], 7);
        assert!(v > last);
        last = v;
        assert!((eisenstein_bound(t, &[], 4) - (2.0 + t).ln().powi(4)).abs() < 1e-12 * v.max(1.0));
    }
    assert_eq!(eisenstein_bound(2.0, &[1.0, -5.0], 7), eisenstein_bound(-2.0, &[5.0, -1.0], 7));
}

#[test]
fn hypercube_conditions_pass() {
    let p = AnalysisParams::default();
    let fam = ConditionFamily::Hypercube { parity: even2(), moving: vec![true, false], base: 2.0, sigma: 1.0 };
    let report = check_thm_conditions(&fam, &p, &[10.0, 100.0, 1e3, 1e4], &[]).unwrap();
    assert!(report.passed, "{report:#?}");
    let m = &report.checks[0];
    assert!((m.exponent.unwrap() - (p.rho - 1.0)).abs() < 0.01, "m_ρ decays like a^{{ρ−1}}");
}

#[test]
fn shrinking_boxes_need_alpha_below_one_half() {
    let p = AnalysisParams::default();
    let grid = [1e3, 1e4, 1e5, 1e6];
    let good = ConditionFamily::ShrinkingBox { parity: even2(), gamma: 1.0, alpha: 0.4 };
    let report = check_thm_conditions(&good, &p, &grid, &[]).unwrap();
    assert!(report.passed, "{report:#?}");
    let side = report.checks.iter().find(|c| c.name == "side-width").unwrap();
    assert!((side.exponent.unwrap() - 0.4).abs() < 1e-3);

    let bad = ConditionFamily::ShrinkingBox { parity: even2(), gamma: 1.0, alpha: 0.6 };
    let report = check_thm_conditions(&bad, &p, &grid, &[]).unwrap();
    let side = report.checks.iter().find(|c| c.name == "side-width").unwrap();
    assert!(!side.passed && (side.exponent.unwrap() - 0.6).abs() < 1e-3);
    let shell = report.checks.iter().find(|c| c.name == "shell-decay").unwrap();
    assert!(!shell.passed, "β_ε grows when the side shrinks too fast");
    assert!(!report.passed);
}

#[test]
fn endpoint_condition_flags_discrete_eigenvalues() {
    assert!(is_discrete_eigenvalue(Parity::Even, -2.0));
    assert!(!is_discrete_eigenvalue(Parity::Odd, -2.0));
    assert!(is_discrete_eigenvalue(Parity::Odd, -0.75));
    assert!(is_discrete_eigenvalue(Parity::Even, 0.0));
    assert!(!is_discrete_eigenvalue(Parity::Even, -1.9));
    let p = AnalysisParams::default();
    let fam = ConditionFamily::Holomorphic { parity: vec![Parity::Even, Parity::Odd] };
    let report = check_thm_conditions(&fam, &p, &[2.0, 4.0, 8.0], &[(Parity::Even, -2.0, 0.3)]).unwrap();
    assert!(report.checks[0].passed, "ν̃_{{−A}}/ν̃_1 decays for singletons");
    let ends = report.checks.iter().find(|c| c.name == "endpoints").unwrap();
    assert!(!ends.passed && ends.detail.contains("λ = -2"));
    let ok = check_thm_conditions(&fam, &p, &[2.0, 4.0, 8.0], &[(Parity::Odd, -2.0, 0.3)]).unwrap();
    assert!(ok.passed, "{ok:#?}");
}

// --- synthetic spectra ----------------------------------------------------

fn domain() -> ProductRegion {
    ProductRegion::new(even2(), vec![PlaceSet::imag_interval(100.0, 103.0).unwrap(); 2]).unwrap()
}

#[test]
fn synthetic_count_follows_the_main_term() {
    let f = q5();
    let cfg = SpectralConfig::default();
    let spec = synth_spectrum(&f, &domain(), WeightLaw::Unit, 7).unwrap();
    let sub = Region::imaginary_box(even2(), &[(100.5, 102.0), (100.5, 102.0)]).unwrap();
    let main = main_term(&f, &sub, &cfg).unwrap().value;
    assert!(main > 9e3 && main < 1.2e4, "expected count {main}");
    let count = spec.count(&sub);
    let tol = 3.0 / main.sqrt();
    assert!(rel(count, main) < tol, "count {count} vs main term {main}");
    assert!(rel(spec.points.len() as f64, spec.expected) < 3.0 / spec.expected.sqrt());
}

#[test]
fn synthetic_count_is_additive_monotone_and_deterministic() {
    let f = q5();
    let spec = synth_spectrum(&f, &domain(), WeightLaw::LogNormal { sigma: 0.5 }, 11).unwrap();
    let again = synth_spectrum(&f, &domain(), WeightLaw::LogNormal { sigma: 0.5 }, 11).unwrap();
    assert_eq!(spec, again);
    assert_ne!(spec.points, synth_spectrum(&f, &domain(), WeightLaw::LogNormal { sigma: 0.5 }, 12).unwrap().points);

    let in_box = |lo: f64, hi: f64| move |nu: &[SpectralPoint]| -> f64 {
        let t = nu[0].chart();
        if lo <= t && t < hi && nu[1].chart() < 102.0 {
            1.0
        } else {
            0.0
        }
    };
    let whole = spec.count_fn(in_box(100.0, 103.0));
    let parts = spec.count_fn(in_box(100.0, 101.1)) + spec.count_fn(in_box(101.1, 103.0));
    assert!((whole - parts).abs() <= 1e-12 * whole);
    let inner = spec.count(&Region::imaginary_box(even2(), &[(101.0, 102.0), (101.0, 102.0)]).unwrap());
    let outer = spec.count(&Region::imaginary_box(even2(), &[(100.5, 102.5), (101.0, 102.0)]).unwrap());
    assert!(inner <= outer);
    // Mean-one weights.
    let n = spec.points.len() as f64;
    let total: f64 = spec.points.iter().map(|p| p.weight).sum();
    let sd = ((0.25f64).exp() - 1.0).sqrt();
    assert!((total / n - 1.0).abs() < 4.0 * sd / n.sqrt());

    assert_eq!(SyntheticSpectrum::empty(even2()).count(&Region::imaginary_box(even2(), &[(1.0, 9.0), (1.0, 9.0)]).unwrap()), 0.0);
}

#[test]
fn smoothed_count_stays_within_comparison_bounds() {
    let f = q5();
    let spec = synth_spectrum(&f, &domain(), WeightLaw::Unit, 3).unwrap();
    let (a, b) = (100.8, 102.2);
    let (u, alpha) = (400.0, 0.3);
    let smoothed = spec.count_fn(|nu| nu.iter().map(|p| gaussian_box_mass(u, p.chart(), a, b)).product());
    let sharp = spec.count_fn(|nu| nu.iter().all(|p| a <= p.chart() && p.chart() <= b) as u8 as f64);
    // Points farther than α from the box boundary are counted up to
    // e^{−Uα²}; the others contribute at most 1 each.
    let near = spec.count_fn(|nu| {
        let close = nu.iter().any(|p| (p.chart() - a).abs() < alpha || (p.chart() - b).abs() < alpha);
        let inside_fat = nu.iter().all(|p| a - alpha <= p.chart() && p.chart() <= b + alpha);
        (close && inside_fat) as u8 as f64
    });
    let bound = near + 10.0 * (-u * alpha * alpha).exp() * spec.points.len() as f64;
    assert!((smoothed - sharp).abs() <= bound, "|{smoothed} − {sharp}| > {bound}");
    assert!((smoothed - sharp).abs() < 0.05 * sharp);
}
