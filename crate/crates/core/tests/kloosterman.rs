use std::f64::consts::PI;

use kuznetsov_core::kloosterman::*;
use kuznetsov_core::numberfield::*;
use num_complex::Complex64;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

/// Textbook `S(m, n; c) = Σ_{(a,c)=1} e((m a + n ā)/c)` with `ā` found by search.
fn brute_q(m: i64, n: i64, c: i64, chi: impl Fn(i64) -> Complex64) -> Complex64 {
    let cc = c.abs();
    let mut s = Complex64::new(0.0, 0.0);
    for a in 0..cc {
        if gcd(a, cc) != 1 {
            continue;
        }
        let abar = (0..cc).find(|b| (a * b).rem_euclid(cc) == 1 % cc).unwrap();
        let ph = 2.0 * PI * ((m * a + n * abar) as f64) / c as f64;
        s += chi(a) * Complex64::from_polar(1.0, ph);
    }
    s
}

fn level(f: &QuadField, g: i128) -> IdealLattice {
    IdealLattice::principal(f, &FieldElement::from_int(g)).unwrap()
}

#[test]
fn classical_values_over_q() {
    let fq = QuadField::rationals();
    let chi = CharacterModI::trivial(&level(&fq, 1)).unwrap();
    let one = FieldElement::one();
    let s3 = kloosterman_sum(&fq, &chi, &one, &one, &FieldElement::from_int(3)).unwrap();
    let s4 = kloosterman_sum(&fq, &chi, &one, &one, &FieldElement::from_int(4)).unwrap();
    assert!((s3 - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
    assert!((s4 - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
    let s1 = kloosterman_sum(&fq, &chi, &one, &one, &one).unwrap();
    assert!((s1 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
}

#[test]
fn brute_force_agreement_over_q_up_to_50() {
    let fq = QuadField::rationals();
    let chi = CharacterModI::trivial(&level(&fq, 1)).unwrap();
    for (m, n) in [(1i64, 1i64), (1, 2), (3, 5), (0, 7), (-2, 4)] {
        for c in (-50i64..=50).filter(|c| *c != 0) {
            let s = kloosterman_sum(
                &fq,
                &chi,
                &FieldElement::from_int(m as i128),
                &FieldElement::from_int(n as i128),
                &FieldElement::from_int(c as i128),
            )
            .unwrap();
            let b = brute_q(m, n, c, |_| Complex64::new(1.0, 0.0));
            assert!((s - b).norm() < 1e-10, "S({m},{n};{c}) = {s} vs {b}");
            assert!(s.im.abs() <= 1e-10);
            assert!(s.norm() <= c.abs() as f64 + 1e-9);
        }
    }
}

#[test]
fn twisted_multiplicativity_over_q() {
    let fq = QuadField::rationals();
    let chi = CharacterModI::trivial(&level(&fq, 1)).unwrap();
    let s = |m: i64, n: i64, c: i64| {
        kloosterman_sum(
            &fq,
            &chi,
            &FieldElement::from_int(m as i128),
            &FieldElement::from_int(n as i128),
            &FieldElement::from_int(c as i128),
        )
        .unwrap()
    };
    let inv = |a: i64, c: i64| (1..c).find(|b| (a * b).rem_euclid(c) == 1).unwrap();
    for (c1, c2) in [(3i64, 4i64), (5, 7), (8, 9), (4, 11)] {
        let (i1, i2) = (inv(c2 % c1, c1), inv(c1 % c2, c2));
        for (m, n) in [(1, 1), (2, 3)] {
            let lhs = s(m, n, c1 * c2);
            let rhs = s(m * i1, n * i1, c1) * s(m * i2, n * i2, c2);
            assert!((lhs - rhs).norm() < 1e-10, "c = {c1}·{c2}");
        }
    }
}

#[test]
fn weil_inequality_at_primes_over_q() {
    let fq = QuadField::rationals();
    let chi = CharacterModI::trivial(&level(&fq, 1)).unwrap();
    let one = FieldElement::one();
    for p in [3i128, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let s = kloosterman_sum(&fq, &chi, &one, &one, &FieldElement::from_int(p)).unwrap();
        assert!(s.norm() <= 2.0 * (p as f64).sqrt() + 1e-12);
        let w = weil_bound(&fq, &level(&fq, 1), &one, &one, &FieldElement::from_int(p), 0.1).unwrap();
        assert!(w.shape_only && !w.degenerate);
        assert!((w.value - (p as f64).powf(0.6)).abs() < 1e-9);
    }
    let w = weil_bound(&fq, &level(&fq, 1), &FieldElement::zero(), &one, &FieldElement::from_int(7), 0.1).unwrap();
    assert!(w.degenerate && w.value == 0.0);
}

/// The mod-5 character with `χ(2) = i`, so `χ(−1) = χ(4) = −1`.
fn chi5(fq: &QuadField) -> CharacterModI {
    CharacterModI::from_generators(&level(fq, 5), &[(FieldElement::from_int(2), Rational::new(1, 4))]).unwrap()
}

#[test]
fn characters_mod_five() {
    let fq = QuadField::rationals();
    let chi = chi5(&fq);
    assert_eq!(chi.group_order(), 4);
    assert_eq!(chi.parity(), -1);
    assert!(!chi.is_trivial());
    assert!((chi.value(&FieldElement::from_int(3)).unwrap() - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    assert_eq!(chi.value(&FieldElement::from_int(10)).unwrap(), Complex64::new(0.0, 0.0));
    assert!(compatibility_check(&chi, &CentralParity::new(vec![1]).unwrap()));
    assert!(!compatibility_check(&chi, &CentralParity::new(vec![0]).unwrap()));
    // 2 has order 4, so a value of 1/3 turn is not a homomorphism.
    assert!(CharacterModI::from_generators(&level(&fq, 5), &[(FieldElement::from_int(2), Rational::new(1, 3))]).is_err());
    // 4 generates only the subgroup {1, 4}.
    assert!(CharacterModI::from_generators(&level(&fq, 5), &[(FieldElement::from_int(4), Rational::new(1, 2))]).is_err());
    assert!(CentralParity::new(vec![2]).is_err());
}

#[test]
fn twisted_sums_match_brute_force() {
    let fq = QuadField::rationals();
    let chi = chi5(&fq);
    let dirichlet = |a: i64| {
        let k = [None, Some(0), Some(1), Some(3), Some(2)][a.rem_euclid(5) as usize];
        k.map_or(Complex64::new(0.0, 0.0), |k| Complex64::new(0.0, 1.0).powi(k))
    };
    for c in [5i64, 10, 15, 25, 35, -20] {
        for (m, n) in [(1i64, 1i64), (2, 3)] {
            let s = kloosterman_sum(
                &fq,
                &chi,
                &FieldElement::from_int(m as i128),
                &FieldElement::from_int(n as i128),
                &FieldElement::from_int(c as i128),
            )
            .unwrap();
            let b = brute_q(m, n, c, dirichlet);
            assert!((s - b).norm() < 1e-10, "c={c}: {s} vs {b}");
        }
    }
    // c must lie in I.
    assert!(kloosterman_sum(&fq, &chi, &FieldElement::one(), &FieldElement::one(), &FieldElement::from_int(3)).is_err());
}

/// Independent quadratic-field oracle: classes from a covering box deduped
/// by divisibility, inverses by search, phases in floating point.
fn brute_quadratic(f: &QuadField, r: &FieldElement, rp: &FieldElement, c: &FieldElement) -> Complex64 {
    let n = f.norm(c).to_integer().abs();
    let congruent = |a: &FieldElement, b: &FieldElement| f.div(&(a - b), c).unwrap().is_integral();
    let mut reps: Vec<FieldElement> = Vec::new();
    for y in 0..n {
        for x in 0..n {
            let a = FieldElement::from_ints(x, y);
            if !reps.iter().any(|b| congruent(&a, b)) {
                reps.push(a);
            }
        }
    }
    let one = FieldElement::one();
    let mut s = Complex64::new(0.0, 0.0);
    for a in &reps {
        if let Some(at) = reps.iter().find(|b| congruent(&f.mul(a, b), &one)) {
            let z = f.div(&(&f.mul(r, a) + &f.mul(rp, at)), c).unwrap();
            let tr: f64 = f.embed(&z).iter().sum();
            s += Complex64::from_polar(1.0, 2.0 * PI * tr);
        }
    }
    s
}

#[test]
fn brute_force_agreement_over_quadratic_fields() {
    for m in [2i64, 5] {
        let f = QuadField::new(m).unwrap();
        let chi = CharacterModI::trivial(&IdealLattice::ring_of_integers(&f)).unwrap();
        let od = IdealLattice::inverse_different(&f);
        let rs: Vec<FieldElement> = od.basis().to_vec();
        for cs in ["2", "3", "1+w", "2+w", "3*w-1", "4"] {
            let c = parse_element(&f, cs).unwrap();
            for r in &rs {
                for rp in &rs {
                    let s = kloosterman_sum(&f, &chi, r, rp, &c).unwrap();
                    let b = brute_quadratic(&f, r, rp, &c);
                    assert!((s - b).norm() < 1e-9, "m={m} c={cs}: {s} vs {b}");
                }
            }
        }
        // r outside the inverse different is rejected.
        let bad = parse_element(&f, "1/7").unwrap();
        assert!(kloosterman_sum(&f, &chi, &bad, &bad, &FieldElement::from_int(3)).is_err());
    }
}

#[test]
fn trivial_bound_holds_up_to_norm_200() {
    for m in [1i64, 2, 5] {
        let f = QuadField::new(m).unwrap();
        let chi = CharacterModI::trivial(&IdealLattice::ring_of_integers(&f)).unwrap();
        let od = IdealLattice::inverse_different(&f);
        let r = od.basis()[0].clone();
        let rp = od.basis().iter().fold(FieldElement::zero(), |s, b| &s + b);
        let ylim = if f.degree() == 1 { 0 } else { 15 };
        let mut count = 0;
        for x in -15i128..=15 {
            for y in -ylim..=ylim {
                let c = f.elem(rat(x), rat(y));
                if c.is_zero() || f.norm(&c).to_integer().abs() > 200 {
                    continue;
                }
                let s = kloosterman_sum(&f, &chi, &r, &rp, &c).unwrap();
                assert!(s.norm() <= trivial_bound(&f, &c) + 1e-9);
                assert!(s.im.abs() <= 1e-9, "trivial χ gives real sums");
                count += 1;
            }
        }
        assert!(count > 10);
    }
}

#[test]
fn representative_independence() {
    let f = QuadField::new(5).unwrap();
    let chi = CharacterModI::trivial(&IdealLattice::ring_of_integers(&f)).unwrap();
    let r = IdealLattice::inverse_different(&f).basis()[1].clone();
    let c = parse_element(&f, "3+w").unwrap();
    let base = kloosterman_sum(&f, &chi, &r, &r, &c).unwrap();
    for (u, up) in [("1", "0"), ("w", "2-w"), ("-3", "5*w")] {
        let s = kloosterman_sum_shifted(
            &f,
            &chi,
            &r,
            &r,
            &c,
            &parse_element(&f, u).unwrap(),
            &parse_element(&f, up).unwrap(),
        )
        .unwrap();
        assert!((s - base).norm() < 1e-10);
    }
    let fq = QuadField::rationals();
    let chi = chi5(&fq);
    let one = FieldElement::one();
    let base = kloosterman_sum(&fq, &chi, &one, &one, &FieldElement::from_int(15)).unwrap();
    let s = kloosterman_sum_shifted(&fq, &chi, &one, &one, &FieldElement::from_int(15), &FieldElement::from_int(4), &FieldElement::from_int(-2)).unwrap();
    assert!((s - base).norm() < 1e-10);
}

fn weight(t: &[f64]) -> Complex64 {
    let v: f64 = t.iter().map(|x| x.abs().powf(1.5) / (1.0 + x.abs().powf(1.5))).product();
    Complex64::new(v, 0.0)
}

#[test]
fn k_series_partial_sums_are_cauchy_within_tails() {
    let decay = FDecay { k_f: 1.0, exponent: 1.5 };
    let fq = QuadField::rationals();
    let chi = CharacterModI::trivial(&level(&fq, 1)).unwrap();
    let r = FieldElement::one();
    let boxes = [25.0, 100.0, 400.0];
    let res: Vec<KSeriesResult> = boxes.iter().map(|t| ksum(&fq, &chi, &r, weight, decay, *t).unwrap()).collect();
    for w in res.windows(2) {
        assert!(w[0].tail_certified);
        assert!(w[1].terms_used > w[0].terms_used);
        assert!(w[1].tail_estimate < w[0].tail_estimate);
        assert!((w[1].partial_sum - w[0].partial_sum).norm() <= w[0].tail_estimate);
    }

    let f = QuadField::new(5).unwrap();
    let chi = CharacterModI::trivial(&IdealLattice::ring_of_integers(&f)).unwrap();
    let r = IdealLattice::inverse_different(&f).basis()[1].clone();
    let res: Vec<KSeriesResult> = [8.0, 16.0, 32.0].iter().map(|t| ksum(&f, &chi, &r, weight, decay, *t).unwrap()).collect();
    for w in res.windows(2) {
        assert!(!w[0].tail_certified);
        assert!(w[1].tail_estimate < w[0].tail_estimate);
        assert!((w[1].partial_sum - w[0].partial_sum).norm() <= w[0].tail_estimate);
    }
    assert!(ksum(&fq, &CharacterModI::trivial(&level(&fq, 1)).unwrap(), &FieldElement::one(), weight, FDecay { k_f: 1.0, exponent: 0.4 }, 10.0).is_err());
}
