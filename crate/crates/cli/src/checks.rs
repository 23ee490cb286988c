//! Invariant suites behind `kuznetsov check`.

use std::f64::consts::PI;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use kuznetsov_core::asymptotics::{
    main_term, select_parameters, synth_spectrum, AnalysisParams, WeightLaw,
};
use kuznetsov_core::kloosterman::{kloosterman_sum, CharacterModI};
use kuznetsov_core::measures::{Parity, PlaceSet, ProductRegion, SpectralConfig};
use kuznetsov_core::numberfield::{ratio_to_f64, FieldElement, IdealLattice, QuadField};
use kuznetsov_core::quadrature::QuadOptions;
use kuznetsov_core::regions::{shell_growth_constant, Region};
use kuznetsov_core::Result;

use crate::commands::{holomorphic_main_term, Output};
use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
pub enum Suite {
    /// Kloosterman sums against brute force over `Q`, trivial bound over quadratic fields.
    KloostermanSmall,
    /// Exact algebraic identities.
    Identities,
    /// Closed-form volumes against quadrature and Monte Carlo.
    Regions,
    /// Synthetic-spectrum counting.
    Synthetic,
    All,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Smaller grids and sample counts.
    #[arg(long)]
    quick: bool,
}

#[derive(Serialize)]
struct CheckLine {
    suite: &'static str,
    name: String,
    passed: bool,
    detail: String,
}

struct Report {
    lines: Vec<CheckLine>,
    suite: &'static str,
}

impl Report {
    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.lines.push(CheckLine { suite: self.suite, name: name.into(), passed, detail: detail.into() });
    }
}

pub fn run(cfg: &RunConfig, a: &CheckArgs) -> Result<Output> {
    let suites: Vec<Suite> = match a.suite {
        Suite::All => vec![Suite::KloostermanSmall, Suite::Identities, Suite::Regions, Suite::Synthetic],
        s => vec![s],
    };
    let mut report = Report { lines: vec![], suite: "" };
    for s in suites {
        match s {
            Suite::KloostermanSmall => {
                report.suite = "kloosterman-small";
                kloosterman_small(&mut report, a.quick)?
            }
            Suite::Identities => {
                report.suite = "identities";
                identities(&mut report)?
            }
            Suite::Regions => {
                report.suite = "regions";
                regions(&mut report, a.quick, cfg.seed)?
            }
            Suite::Synthetic => {
                report.suite = "synthetic";
                synthetic(&mut report, cfg.seed)?
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    let passed = report.lines.iter().all(|l| l.passed);
    let text = serde_json::to_string_pretty(&serde_json::json!({ "passed": passed, "checks": report.lines })).expect("report serializes");
    Ok(Output { text, success: passed })
}

/// `S(1, 1; c)` over `Q` straight from the definition.
fn brute_force_s11(c: i64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for a in 0..c {
        if a.gcd(&c) != 1 {
            continue;
        }
        let inv = (1..=c).find(|x| (a * x) % c == 1 % c).expect("unit has an inverse");
        s += Complex64::from_polar(1.0, 2.0 * PI * ((a + inv) % c) as f64 / c as f64);
    }
    s
}

fn kloosterman_small(r: &mut Report, quick: bool) -> Result<()> {
    let q = QuadField::rationals();
    let chi = CharacterModI::trivial(&IdealLattice::ring_of_integers(&q))?;
    let one = FieldElement::one();
    let c_max = if quick { 20 } else { 50 };
    let mut worst = 0.0f64;
    let mut worst_im = 0.0f64;
    for c in 1..=c_max {
        let s = kloosterman_sum(&q, &chi, &one, &one, &FieldElement::from_int(c as i128))?;
        worst = worst.max((s - brute_force_s11(c)).norm());
        worst_im = worst_im.max(s.im.abs());
    }
    r.push(format!("S(1,1;c) over Q, c ≤ {c_max}"), worst < 1e-9 && worst_im <= 1e-10, format!("max deviation {worst:.2e}, max |Im| {worst_im:.2e}"));
    let s3 = kloosterman_sum(&q, &chi, &one, &one, &FieldElement::from_int(3))?;
    let s4 = kloosterman_sum(&q, &chi, &one, &one, &FieldElement::from_int(4))?;
    r.push("S(1,1;3) = −1, S(1,1;4) = −2", (s3.re + 1.0).abs() < 1e-12 && (s4.re + 2.0).abs() < 1e-12, format!("{:.12} {:.12}", s3.re, s4.re));

    let n_max: f64 = if quick { 50.0 } else { 200.0 };
    for m in [2i64, 5] {
        let f = QuadField::new(m)?;
        let o = IdealLattice::ring_of_integers(&f);
        let chi = CharacterModI::trivial(&o)?;
        let rr = FieldElement::one();
        // Every c with both embeddings in [−2√n, 2√n] and |N(c)| ≤ n: at
        // least one associate of each such principal ideal.
        let side = 2.0 * f64::sqrt(n_max);
        let cs = o.lattice_points_in_box(&[side, side])?;
        let mut count = 0;
        let mut ok = true;
        for c in cs.iter().filter(|c| !c.is_zero()) {
            let n = ratio_to_f64(&f.norm(c)).abs();
            if n > n_max {
                continue;
            }
            let r_inv = IdealLattice::inverse_different(&f).basis()[0].clone();
            for r_choice in [&rr, &r_inv] {
                let s = kloosterman_sum(&f, &chi, r_choice, r_choice, c)?;
                ok &= s.norm() <= n * (1.0 + 1e-12);
                count += 1;
            }
        }
        r.push(format!("|S| ≤ |N(c)| over Q(√{m}), |N(c)| ≤ {n_max}"), ok && count > 0, format!("{count} sums"));
    }
    Ok(())
}

fn identities(r: &mut Report) -> Result<()> {
    let p = AnalysisParams::default();
    let mut worst = 0.0f64;
    for k in 0..30 {
        let ln_m = -(300.0 * 1.7f64.powi(k));
        let c = select_parameters(ln_m, &p, 2)?;
        worst = worst.max((c.u * c.eps * c.eps - 0.5 * (-ln_m).ln()).abs() / (-ln_m).ln());
    }
    r.push("Uε² = ½ log|log m_ρ|", worst < 1e-12, format!("max relative deviation {worst:.2e}"));

    let f = QuadField::new(5)?;
    let cfg = SpectralConfig::default();
    let mut worst = 0.0f64;
    for pp in [[1.5, 2.5], [10.5, 21.5], [100.5, 7.5]] {
        let region = Region::singleton(vec![Parity::Even; 2], &pp)?;
        let m = main_term(&f, &region, &cfg)?.value;
        worst = worst.max((m / holomorphic_main_term(f.discriminant(), &pp) - 1.0).abs());
    }
    r.push("holomorphic main term 2√D/π²·p₁p₂", worst < 1e-12, format!("max relative deviation {worst:.2e}"));

    let ok = (1..=3).all(|n| (shell_growth_constant(n) - (3.0 * (1.0 + (-1.0f64).exp())).powi(n as i32)).abs() < 1e-12);
    r.push("R(n) = (3(1 + e^{−1}))^n", ok, "");

    let opts = QuadOptions::tol(0.0, 1e-12);
    let mut worst = 0.0f64;
    for (n, y) in [(1, 3.0), (2, 4.5), (2, 7.0)] {
        let region = Region::simplex(n, y)?;
        let exact = region.closed_form_nv1(&cfg).value;
        let quad = region.nv1_quadrature(&cfg, opts)?.value;
        worst = worst.max((quad / exact - 1.0).abs());
    }
    r.push("simplex W_n(Y) closed form = quadrature", worst < 1e-9, format!("max relative deviation {worst:.2e}"));
    Ok(())
}

fn regions(r: &mut Report, quick: bool, seed: u64) -> Result<()> {
    let cfg = SpectralConfig::default();
    let samples = if quick { 100_000 } else { 1_000_000 };
    let cases = [
        Region::simplex(2, 4.5)?,
        Region::simplex(3, 6.0)?,
        Region::sphere(vec![Parity::Even; 2], &[10.0, 20.0], 1.0)?,
    ];
    for region in cases {
        let exact = region.closed_form_nv1(&cfg).value;
        let mc = region.nv1_monte_carlo(&cfg, samples, seed)?;
        // `mc.error` is three standard errors.
        r.push(
            format!("{} closed form within 3σ of Monte Carlo", region.family_name()),
            (mc.value - exact).abs() <= mc.error,
            format!("exact {exact:.6}, MC {:.6} ± {:.6} ({samples} samples)", mc.value, mc.error),
        );
    }
    for region in [
        Region::sector(vec![Parity::Even; 2], 1.0, 2.0, 0.75, 1e4)?,
        Region::slanted_strip(vec![Parity::Even; 2], 1.0, 0.0, 1.0, 1e3)?,
    ] {
        let exact = region.closed_form_nv1(&cfg).value;
        let quad = region.nv1_quadrature(&cfg, QuadOptions::tol(0.0, 1e-11))?.value;
        r.push(format!("{} closed form = quadrature", region.family_name()), (quad / exact - 1.0).abs() < 1e-8, format!("{quad:.6e} vs {exact:.6e}"));
    }
    Ok(())
}

fn synthetic(r: &mut Report, seed: u64) -> Result<()> {
    let f = QuadField::new(5)?;
    let parity = vec![Parity::Even; 2];
    let domain = ProductRegion::new(parity.clone(), vec![PlaceSet::imag_interval(100.0, 103.0)?; 2])?;
    let spec = synth_spectrum(&f, &domain, WeightLaw::Unit, seed)?;
    let sub = Region::imaginary_box(parity.clone(), &[(100.5, 102.0), (100.5, 102.0)])?;
    let main = main_term(&f, &sub, &SpectralConfig::default())?.value;
    let ratio = spec.count(&sub) / main;
    r.push("count/main term in [0.9, 1.1]", (0.9..=1.1).contains(&ratio), format!("ratio {ratio:.4} at main term {main:.1}"));
    let left = Region::imaginary_box(parity.clone(), &[(100.5, 101.25), (100.5, 102.0)])?;
    let right = Region::imaginary_box(parity.clone(), &[(101.25, 102.0), (100.5, 102.0)])?;
    // The shared face has measure zero, so almost surely no point lies on it.
    let add = spec.count(&left) + spec.count(&right) - spec.count(&sub);
    r.push("counting is additive", add.abs() < 1e-9, format!("defect {add}"));
    let inner = Region::imaginary_box(parity, &[(101.0, 101.5), (100.5, 102.0)])?;
    r.push("counting is monotone", spec.count(&inner) <= spec.count(&left), "");
    Ok(())
}
