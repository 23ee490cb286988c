use std::f64::consts::PI;

use kuznetsov_core::measures::{nv_b, Parity, PlaceSet, ProductRegion, SpectralConfig};
use kuznetsov_core::quadrature::{integrate, QuadOptions};
use kuznetsov_core::regions::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const E: Parity = Parity::Even;
const O: Parity = Parity::Odd;

fn cfg() -> SpectralConfig {
    SpectralConfig::default()
}

fn opts() -> QuadOptions {
    QuadOptions::tol(1e-12, 1e-11)
}

#[test]
fn distance_and_neighbourhoods() {
    use SpectralPoint::*;
    assert_eq!(dist_place(Principal(2.0), Principal(3.0)), 1.0);
    assert!((dist_place(Complementary(0.3), Principal(2.0)) - 2.3).abs() < 1e-15);
    assert!((dist_place(Complementary(0.1), Discrete(1.5)) - 1.4).abs() < 1e-15);
    assert!((dist_place(Principal(0.5), Discrete(1.0)) - 1.5).abs() < 1e-15);
    let nu = [Principal(4.0), Discrete(2.0)];
    assert_eq!(dist(&nu, &nu), 0.0);
    let eps = 0.2;
    assert!(neighborhood_contains(&nu, eps, &nu).unwrap());
    assert!(neighborhood_contains(&nu, eps, &[Principal(4.1), Discrete(2.0)]).unwrap());
    assert!(!neighborhood_contains(&nu, eps, &[Principal(4.0 + 0.51 * eps), Discrete(2.0)]).unwrap());
    assert!(neighborhood_contains(&nu, 0.0, &nu).is_err());
}

#[test]
fn lambda_nu_maps() {
    use SpectralPoint::*;
    assert!((Principal(2.0).lambda() - 4.25).abs() < 1e-15);
    assert_eq!(Discrete(1.5).lambda(), -2.0);
    let c = cfg();
    assert_eq!(SpectralPoint::from_lambda(-2.0, E, &c).unwrap(), Discrete(1.5));
    assert!(SpectralPoint::from_lambda(-2.0, O, &c).is_err());
    assert!(SpectralPoint::from_lambda(0.24, E, &c).is_ok());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let p = match rng.random_range(0..3) {
            0 => Principal(rng.random_range(0.0..100.0)),
            1 => Complementary(rng.random_range(1e-3..1.0 / 9.0)),
            _ => Discrete(0.5 + rng.random_range(0..50) as f64),
        };
        let back = SpectralPoint::from_lambda(p.lambda(), E, &c).unwrap();
        assert!((back.chart() - p.chart()).abs() < 1e-9 * p.modulus().max(1.0), "{p:?} → {back:?}");
    }
}

#[test]
fn shells_of_an_interval() {
    let c = cfg();
    let r = Region::imaginary_box(vec![E], &[(2.0, 5.0)]).unwrap();
    let sh = r.shells(0.5, &c).unwrap();
    match (&sh.outer, sh.inner.as_ref().unwrap()) {
        (ChartRegion::Box(o), ChartRegion::Box(i)) => {
            assert_eq!(o.sides, vec![(1.5, 5.5)]);
            assert_eq!(i.sides, vec![(2.5, 4.5)]);
        }
        _ => panic!("interval shells should be boxes"),
    }
    // ∫_{1.5}^{2.5} t dt + ∫_{4.5}^{5.5} t dt = 2 + 5
    assert!((sh.shell_nv_b(1.0, opts()).unwrap().value - 7.0).abs() < 1e-13);
    assert!(r.shells(1.6, &c).unwrap().inner.is_none());
    let zero = r.shells(0.0, &c).unwrap();
    assert!((zero.outer.nv_b(1.0, opts()).unwrap().value - r.closed_form_nv1(&c).value).abs() < 1e-14);
    assert!((zero.shell_nv_b(1.0, opts()).unwrap().value).abs() < 1e-14);
    // fattening reaches across t = 0 into the complementary range (0, ν_θ]
    let low = Region::imaginary_box(vec![E], &[(0.05, 1.0)]).unwrap().shells(0.1, &c).unwrap();
    match &low.outer {
        ChartRegion::Box(o) => {
            assert!((o.sides[0].0 + 0.05).abs() < 1e-15);
            // 0.05 on the complementary side, 1 on i[0, 1], ∫_1^{1.1} t dt = 0.105 above
            assert!((nv_b(&c, 1.0, &o.to_product()).value - 1.155).abs() < 1e-12);
        }
        _ => unreachable!(),
    }
    // and is clipped at −ν_θ
    let lower = Region::imaginary_box(vec![E], &[(0.0, 1.0)]).unwrap().shells(0.5, &c).unwrap();
    match &lower.outer {
        ChartRegion::Box(o) => assert!((o.sides[0].0 + 1.0 / 9.0).abs() < 1e-15),
        _ => unreachable!(),
    }
}

#[test]
fn chart_box_measure_matches_product_measure() {
    let c = cfg();
    let bx = ChartBox::new(vec![E, O], vec![(-0.1, 3.0), (0.5, 7.0)], &c).unwrap();
    for b in [1.0, 0.5, 2.0] {
        assert!((bx.nv_b(b).value - nv_b(&c, b, &bx.to_product()).value).abs() < 1e-12);
    }
    let region = ProductRegion::new(vec![E], vec![PlaceSet::new(vec![(0.0, 2.0)], vec![(0.0, 1.0 / 9.0)], vec![]).unwrap()]).unwrap();
    let back = ChartBox::from_product(&region, &c).unwrap();
    assert!((back.sides[0].0 + 1.0 / 9.0).abs() < 1e-15 && back.sides[0].1 == 2.0);
    let gap = ProductRegion::new(vec![E], vec![PlaceSet::new(vec![(1.0, 2.0), (3.0, 4.0)], vec![], vec![]).unwrap()]).unwrap();
    assert!(ChartBox::from_product(&gap, &c).is_err());
}

#[test]
fn shell_growth_constant_values() {
    assert!((shell_growth_constant(1) - 4.1036383).abs() < 1e-7);
    assert!((shell_growth_constant(2) - 16.839847).abs() < 1e-6);
    assert!((1..8).all(|n| shell_growth_constant(n + 1) > shell_growth_constant(n)));
}

#[test]
fn simplex_closed_form() {
    let c = cfg();
    assert!((Region::simplex(2, 4.5).unwrap().closed_form_nv1(&c).value - 0.5).abs() < 1e-15);
    assert_eq!(simplex_volume(3, 3.0), 0.0);
    assert!((simplex_volume(1, 3.25) - 1.0).abs() < 1e-15);
}

#[test]
fn simplex_recursion_by_quadrature() {
    // ν̃_1(W_n(Y)) = (1/2)∫_{5/4}^Y ν̃_1(W_{n−1}(Y − λ)) dλ
    for n in 2..=4 {
        for y in [4.0, 7.5, 12.0] {
            let rhs = 0.5 * integrate(|l: f64| simplex_volume(n - 1, y - l), 1.25, y, QuadOptions::tol(1e-14, 1e-13)).value;
            assert!((simplex_volume(n, y) - rhs).abs() < 1e-6 * rhs.max(1e-3), "n = {n}, Y = {y}");
        }
    }
    // and the planar simplex by column quadrature
    let c = cfg();
    for y in [3.0, 4.5, 9.0] {
        let r = Region::simplex(2, y).unwrap();
        let q = r.nv1_quadrature(&c, opts()).unwrap();
        assert!((q.value - simplex_volume(2, y)).abs() < 1e-9, "Y = {y}: {} vs {}", q.value, simplex_volume(2, y));
    }
}

#[test]
fn sphere_volume_is_half_the_stated_formula() {
    let c = cfg();
    let s = Region::sphere(vec![E, E], &[10.0, 20.0], 1.0).unwrap();
    assert!((s.leading_term_nv1(&c).value - 400.0 * PI).abs() < 1e-9);
    let exact = s.closed_form_nv1(&c).value;
    assert!((exact - 200.0 * PI).abs() < 1e-9);
    let q = s.nv1_quadrature(&c, opts()).unwrap();
    assert!((q.value - exact).abs() < 1e-7 * exact, "{} vs {exact}", q.value);
    let mc = s.nv1_monte_carlo(&c, 400_000, 1).unwrap();
    assert!((mc.value - exact).abs() <= mc.error, "MC {} ± {}", mc.value, mc.error);
    assert!((mc.value - 400.0 * PI).abs() > 10.0 * mc.error);
    // one place: the interval i[m − r, m + r] has ν̃_1 = 2rm = v_1 r m
    let s1 = Region::sphere(vec![E], &[5.0], 2.0).unwrap();
    assert!((s1.closed_form_nv1(&c).value - 20.0).abs() < 1e-12);
    assert!((s1.nv1_quadrature(&c, opts()).unwrap().value - 20.0).abs() < 1e-12);
    assert!(Region::sphere(vec![E, E], &[1.5, 20.0], 1.0).is_err());
}

#[test]
fn sector_exact_volume_and_leading_term() {
    let c = cfg();
    for t in [100.0, 1e4] {
        let s = Region::sector(vec![E, E], 1.0, 2.0, 0.75, t).unwrap();
        let exact = s.closed_form_nv1(&c).value;
        let q = s.nv1_quadrature(&c, opts()).unwrap();
        assert!((q.value / exact - 1.0).abs() < 1e-9, "t = {t}: quadrature {} vs exact {exact}", q.value);
        // ratio to the leading term is 1 + t^{α−1}/2
        let ratio = exact / s.leading_term_nv1(&c).value;
        assert!((ratio - (1.0 + 0.5 * t.powf(-0.25))).abs() < 1e-12);
    }
    let s = Region::sector(vec![E, E], 1.0, 2.0, 0.75, 100.0).unwrap();
    let mc = s.nv1_monte_carlo(&c, 400_000, 2).unwrap();
    let exact = s.closed_form_nv1(&c).value;
    assert!((mc.value - exact).abs() <= mc.error, "MC {} ± {} vs {exact}", mc.value, mc.error);
    assert!(Region::sector(vec![E, E], 2.0, 1.0, 0.75, 100.0).is_err());
    assert!(Region::sector(vec![E, E], 1.0, 2.0, 0.75, 1.0).is_err());
}

#[test]
fn slanted_strip_volume() {
    let c = cfg();
    let s = Region::slanted_strip(vec![E, O], 1.5, 1.0, 3.0, 1e3).unwrap();
    let exact = s.closed_form_nv1(&c).value;
    let q = s.nv1_quadrature(&c, opts()).unwrap();
    assert!((q.value / exact - 1.0).abs() < 1e-10);
    assert!((q.value / s.leading_term_nv1(&c).value - 1.0).abs() < 0.02);
    let small = Region::slanted_strip(vec![E, O], 1.5, 1.0, 3.0, 10.0).unwrap();
    let mc = small.nv1_monte_carlo(&c, 400_000, 3).unwrap();
    let exact = small.closed_form_nv1(&c).value;
    assert!((mc.value - exact).abs() <= mc.error, "MC {} ± {} vs {exact}", mc.value, mc.error);
    assert!(Region::slanted_strip(vec![E, O], 1.0, 3.0, 1.0, 10.0).is_err());
}

#[test]
fn simplex_monte_carlo() {
    let c = cfg();
    for (n, y) in [(2, 4.5), (3, 6.0)] {
        let r = Region::simplex(n, y).unwrap();
        let mc = r.nv1_monte_carlo(&c, 400_000, 4).unwrap();
        let exact = r.closed_form_nv1(&c).value;
        assert!((mc.value - exact).abs() <= mc.error, "n = {n}: MC {} ± {} vs {exact}", mc.value, mc.error);
    }
}

#[test]
fn npl_of_planar_families() {
    let c = cfg();
    // product case: npl via columns agrees with the exact product measure
    let strip = Region::slanted_strip(vec![E, E], 1.0, 0.0, 2.0, 20.0).unwrap();
    let v = strip.npl(&c, opts()).unwrap().value;
    // high in the spectrum ν̃plf(t) ≈ t, so ν̃pl ≈ 4·ν̃_1
    let nv = strip.closed_form_nv1(&c).value;
    assert!((v / (4.0 * nv) - 1.0).abs() < 1e-6, "{v} vs {}", 4.0 * nv);
    let bx = Region::imaginary_box(vec![E, O], &[(1.0, 3.0), (2.0, 5.0)]).unwrap();
    let cols = ColumnRegion::new(1.0, 3.0, |_| 2.0, |_| 5.0, None, -1.0 / 9.0).unwrap();
    let via_cols = cols
        .integrate_weighted(
            |x| 2.0 * kuznetsov_core::measures::npl_density(E, x),
            |y| kuznetsov_core::measures::w_plancherel(O, y).value,
            opts(),
        )
        .unwrap()
        .value;
    assert!((bx.npl(&c, opts()).unwrap().value - via_cols).abs() < 1e-9);
}

fn sample_grid(bbox: &[(f64, f64)], n: usize) -> Vec<Vec<f64>> {
    let axis = |(a, b): (f64, f64)| -> Vec<f64> { (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect() };
    let mut pts = vec![vec![]];
    for &side in bbox {
        let mut next = Vec::new();
        for p in &pts {
            for x in axis(side) {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        pts = next;
    }
    pts
}

#[test]
fn shell_sandwich_on_grids() {
    let c = cfg();
    let regions = vec![
        Region::imaginary_box(vec![E, O], &[(2.0, 4.0), (3.0, 3.5)]).unwrap(),
        Region::sphere(vec![E, E], &[6.0, 8.0], 2.0).unwrap(),
        Region::slanted_strip(vec![E, E], 0.5, 1.0, 2.0, 4.0).unwrap(),
        Region::sector(vec![E, E], 1.0, 2.0, 1.0, 5.0).unwrap(),
    ];
    for r in &regions {
        let base = r.chart_region(&c).unwrap();
        for cc in [0.05, 0.2, 0.6] {
            let sh = r.shells(cc, &c).unwrap();
            let bbox: Vec<(f64, f64)> = r.chart_bounding_box(&c).unwrap().iter().map(|&(a, b)| (a - 1.0, b + 1.0)).collect();
            for p in sample_grid(&bbox, 41) {
                let inside = base.contains(&p);
                if let Some(inner) = &sh.inner {
                    assert!(!inner.contains(&p) || inside, "{}: core point {p:?} outside", r.family_name());
                }
                assert!(!inside || sh.outer.contains(&p), "{}: point {p:?} not in fattening", r.family_name());
            }
        }
    }
}

#[test]
fn fattening_matches_sup_distance_definition() {
    // brute force: p ∈ C(c) ⟺ some region point lies within sup-distance c
    let c = cfg();
    let r = Region::sphere(vec![E, E], &[6.0, 8.0], 2.0).unwrap();
    let cc = 0.5;
    let sh = r.shells(cc, &c).unwrap();
    let region_pts: Vec<Vec<f64>> = sample_grid(&[(4.0, 8.0), (6.0, 10.0)], 401).into_iter().filter(|p| r.contains_chart(p)).collect();
    for p in sample_grid(&[(3.0, 9.0), (5.0, 11.0)], 25) {
        let near = region_pts.iter().any(|q| (q[0] - p[0]).abs() <= cc && (q[1] - p[1]).abs() <= cc);
        let margin = region_pts.iter().map(|q| (q[0] - p[0]).abs().max((q[1] - p[1]).abs())).fold(f64::INFINITY, f64::min);
        if (margin - cc).abs() > 0.02 {
            assert_eq!(sh.outer.contains(&p), near, "p = {p:?}");
        }
        // core: the closed cc-cube about p lies in the region
        let inner = sh.inner.as_ref().unwrap().contains(&p);
        let cube_inside = sample_grid(&[(p[0] - cc, p[0] + cc), (p[1] - cc, p[1] + cc)], 9).iter().all(|q| r.contains_chart(q));
        if inner {
            assert!(cube_inside, "core point {p:?} has a cube leaving the region");
        }
    }
}

#[test]
fn shell_growth_for_boxes_and_spheres() {
    let c = cfg();
    let eps = 0.1;
    let regions = vec![
        Region::imaginary_box(vec![E, E], &[(3.0, 4.0), (5.0, 9.0)]).unwrap(),
        Region::imaginary_box(vec![E], &[(0.5, 2.0)]).unwrap(),
        Region::sphere(vec![E, E], &[10.0, 20.0], 1.0).unwrap(),
        Region::sphere(vec![O], &[4.0], 1.5).unwrap(),
    ];
    for r in &regions {
        let nd = r.degree();
        let outer = |k: usize| r.shells(eps * k as f64, &c).unwrap().outer.nv_b(1.0, opts()).unwrap().value;
        let vols: Vec<f64> = (0..=12).map(outer).collect();
        let shells: Vec<f64> = vols.windows(2).map(|w| w[1] - w[0]).collect();
        for n in 0..10 {
            assert!(shells[n + 1] <= shell_growth_constant(nd) * shells[n], "{} n = {n}", r.family_name());
        }
    }
}

#[test]
fn bluntness() {
    let c = cfg();
    let eps = 0.1;
    let g = BluntnessGrid::default();
    let bx = Region::imaginary_box(vec![E, E], &[(2.0, 2.1), (3.0, 5.0)]).unwrap().chart_region(&c).unwrap();
    assert_eq!(bluntness_deficit(&bx, eps, g, BluntnessMode::Containing).unwrap(), 1.0);
    assert!((bluntness_deficit(&bx, eps, g, BluntnessMode::Centered).unwrap() - 0.25).abs() < 1e-12);
    let thin = Region::imaginary_box(vec![E, E], &[(2.0, 2.0 + eps / 10.0), (3.0, 5.0)]).unwrap().chart_region(&c).unwrap();
    assert!((bluntness_deficit(&thin, eps, g, BluntnessMode::Containing).unwrap() - 0.1).abs() < 1e-12);
    // a disc of radius 1: boundary curvature costs about β/(3πr) of a square
    let disc = Region::sphere(vec![E, E], &[5.0, 5.0], 1.0).unwrap().chart_region(&c).unwrap();
    let w = bluntness_deficit(&disc, eps, g, BluntnessMode::Containing).unwrap();
    assert!(w > 0.97 && w <= 1.0, "{w}");
    // centred at a boundary point of a smooth region at least about half the square is inside
    let wc = bluntness_deficit(&disc, eps, g, BluntnessMode::Centered).unwrap();
    assert!(wc > 0.45 && wc < 0.5, "{wc}");
    assert!(bluntness_deficit(&bx, 0.0, g, BluntnessMode::Containing).is_err());
}

#[test]
fn product_families() {
    let c = cfg();
    let h = Region::hypercube(vec![E, O], &[10.0, 30.0], 0.5).unwrap();
    let exact = h.closed_form_nv1(&c).value;
    assert!((exact - (10.25 * 0.5) * (30.25 * 0.5)).abs() < 1e-10);
    assert!(Region::hypercube(vec![E], &[0.5], 0.1).is_err());
    let s = Region::singleton(vec![E, O], &[2.5, 3.0]).unwrap();
    assert!((s.closed_form_nv1(&c).value - 7.5).abs() < 1e-14);
    assert!(Region::singleton(vec![E], &[3.0]).is_err());
    // λ-box [1/4, 5/4] ↦ i[0, 1]
    let l = Region::lambda_box(vec![E], &[(0.25, 1.25)]).unwrap();
    assert!((l.closed_form_nv1(&c).value - 1.0).abs() < 1e-14);
    assert!(l.contains_chart(&[0.5]) && !l.contains_chart(&[1.5]));
}

#[test]
fn region_serde_round_trip() {
    let r = Region::sector(vec![E, O], 1.0, 3.0, 0.75, 50.0).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"family\":\"sector\""));
    let back: Region = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
}
