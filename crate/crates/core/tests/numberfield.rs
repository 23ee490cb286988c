use kuznetsov_core::numberfield::*;
use proptest::prelude::*;

fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

#[test]
fn make_field_discriminants_and_bases() {
    let f = QuadField::new(1).unwrap();
    assert_eq!((f.degree(), f.discriminant()), (1, 1));
    assert_eq!(f.embed(&f.omega()), vec![1.0]);
    let f5 = QuadField::new(5).unwrap();
    assert_eq!(f5.discriminant(), 5);
    let f2 = QuadField::new(2).unwrap();
    assert_eq!(f2.discriminant(), 8);
    // Discriminant of the minimal polynomial of ω, from (σ1(ω) − σ2(ω))².
    for m in [2i64, 3, 5, 6, 7, 13, 21] {
        let f = QuadField::new(m).unwrap();
        let e = f.omega_embeddings();
        let disc = (e[0] - e[1]).powi(2);
        assert!((disc - f.discriminant() as f64).abs() < 1e-9, "m = {m}");
        assert_eq!(f.trace(&FieldElement::one()), rat(2));
    }
    assert!(QuadField::new(4).is_err());
    assert!(QuadField::new(0).is_err());
    assert!(QuadField::new(-3).is_err());
    assert!(QuadField::new(12).is_err());
}

#[test]
fn embeddings_traces_norms() {
    let f2 = QuadField::new(2).unwrap();
    let s2 = f2.sqrt_m();
    let e = f2.embed(&s2);
    assert!((e[0] - 2f64.sqrt()).abs() < 1e-15 && (e[1] + 2f64.sqrt()).abs() < 1e-15);
    assert_eq!(f2.trace_and_norm(&s2), (rat(0), rat(-2)));
    let f5 = QuadField::new(5).unwrap();
    let w = f5.omega();
    let e = f5.embed(&w);
    assert!((e[0] - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-15);
    assert!((e[1] - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-15);
    assert_eq!(f5.trace_and_norm(&w), (rat(1), rat(-1)));
    // ω² = ω + 1 in Q(√5).
    assert_eq!(f5.mul(&w, &w), &w + &FieldElement::one());
    let fq = QuadField::rationals();
    assert_eq!(fq.trace_and_norm(&FieldElement::from_int(7)), (rat(7), rat(7)));
    assert_eq!(fq.embed(&FieldElement::from_int(3)), vec![3.0]);
}

#[test]
fn total_positivity() {
    let f5 = QuadField::new(5).unwrap();
    assert!(!f5.is_totally_positive(&f5.omega()));
    let x = parse_element(&f5, "3+sqrt(5)").unwrap();
    assert!(f5.is_totally_positive(&x));
    assert!(!f5.is_totally_positive(&FieldElement::from_int(-1)));
}

/// Brute-force trace duality: x ∈ O′ iff Tr(x) and Tr(xω) are integers.
fn in_dual(f: &QuadField, x: &FieldElement) -> bool {
    f.trace(x).is_integer() && f.trace(&f.mul(x, &f.omega())).is_integer()
}

#[test]
fn inverse_different_by_trace_duality() {
    for m in [1i64, 2, 3, 5, 13] {
        let f = QuadField::new(m).unwrap();
        let od = IdealLattice::inverse_different(&f);
        assert!(od.is_o_module());
        // Exhaustive comparison over a denominator-bounded grid.
        let den = 4 * f.discriminant() as i128;
        for a in -2 * den..=2 * den {
            for b in -2 * den..=2 * den {
                let x = f.elem(q(a, den), q(b, den));
                assert_eq!(od.contains(&x), in_dual(&f, &x), "m={m} x={x}");
            }
        }
        for g in od.basis() {
            assert!(in_dual(&f, &g));
        }
        // Enlarging by 1/p for p | D_F leaves the dual.
        for (p, _) in factor_integer(f.discriminant() as i128).unwrap() {
            assert!(od.basis().iter().any(|g| !in_dual(&f, &g.scale(&q(1, p)))));
        }
    }
    let f2 = QuadField::new(2).unwrap();
    let expect = IdealLattice::principal(&f2, &parse_element(&f2, "1/(2*sqrt(2))").unwrap()).unwrap();
    assert_eq!(IdealLattice::inverse_different(&f2), expect);
    let f5 = QuadField::new(5).unwrap();
    let expect = IdealLattice::principal(&f5, &parse_element(&f5, "1/sqrt(5)").unwrap()).unwrap();
    assert_eq!(IdealLattice::inverse_different(&f5), expect);
    let fq = QuadField::rationals();
    assert!(IdealLattice::inverse_different(&fq).is_ring_of_integers());
}

/// Brute-force residue classes: dedupe a covering box by the congruence test
/// `(a − b)/c ∈ O`.
fn brute_classes(f: &QuadField, c: &FieldElement) -> Vec<FieldElement> {
    let n = f.norm(c).to_integer().abs();
    let ylim = if f.degree() == 1 { 1 } else { n };
    let mut reps: Vec<FieldElement> = Vec::new();
    for y in 0..ylim {
        for x in 0..n {
            let a = FieldElement::from_ints(x, y);
            if !reps.iter().any(|b| f.div(&(&a - b), c).unwrap().is_integral()) {
                reps.push(a);
            }
        }
    }
    reps
}

#[test]
fn residue_rings_examples() {
    let fq = QuadField::rationals();
    let r = ResidueRing::new(&fq, &FieldElement::from_int(4)).unwrap();
    assert_eq!(r.size(), 4);
    let units: Vec<String> = r.units().iter().map(|u| u.to_string()).collect();
    assert_eq!(units, vec!["1", "3"]);
    assert_eq!(r.inverse_mod(&FieldElement::from_int(3)).unwrap(), FieldElement::from_int(3));
    assert!(r.inverse_mod(&FieldElement::from_int(2)).is_err());

    let f5 = QuadField::new(5).unwrap();
    let r = ResidueRing::new(&f5, &FieldElement::from_int(2)).unwrap();
    assert_eq!((r.size(), r.units().len()), (4, 3));

    let f2 = QuadField::new(2).unwrap();
    let r = ResidueRing::new(&f2, &f2.sqrt_m()).unwrap();
    assert_eq!(r.size(), 2);
    assert_eq!(r.units(), &[FieldElement::one()]);
    assert!(ResidueRing::new(&f2, &FieldElement::zero()).is_err());
}

#[test]
fn residue_ring_sizes_match_norms_up_to_200() {
    for m in [1i64, 2, 5] {
        let f = QuadField::new(m).unwrap();
        for x in -15i128..=15 {
            for y in -15i128..=15 {
                let c = f.elem(rat(x), rat(y));
                if c.is_zero() {
                    continue;
                }
                let n = f.norm(&c).to_integer().abs();
                if n > 200 {
                    continue;
                }
                let ring = ResidueRing::new(&f, &c).unwrap();
                assert_eq!(ring.size() as i128, n, "m={m} c={c}");
                if n <= 40 {
                    assert_eq!(brute_classes(&f, &c).len() as i128, n, "m={m} c={c}");
                    // Representatives pairwise incongruent.
                    let reps = ring.representatives();
                    for i in 0..reps.len() {
                        for j in 0..i {
                            assert!(!f.div(&(&reps[i] - &reps[j]), &c).unwrap().is_integral());
                        }
                    }
                    // Units are exactly the classes with a brute-force inverse.
                    for a in reps {
                        let has_inv = reps.iter().any(|b| {
                            f.div(&(&f.mul(a, b) - &FieldElement::one()), &c).unwrap().is_integral()
                        });
                        assert_eq!(ring.is_invertible(a).unwrap(), has_inv);
                        if has_inv {
                            let inv = ring.inverse_mod(a).unwrap();
                            let e = &f.mul(a, &inv) - &FieldElement::one();
                            assert!(f.div(&e, &c).unwrap().is_integral());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn lattice_points_examples() {
    let fq = QuadField::rationals();
    let z = IdealLattice::ring_of_integers(&fq);
    let mut pts: Vec<String> = z.lattice_points_in_box(&[2.5]).unwrap().iter().map(|p| p.to_string()).collect();
    pts.sort();
    assert_eq!(pts, vec!["-1", "-2", "1", "2"]);
    let two_z = IdealLattice::principal(&fq, &FieldElement::from_int(2)).unwrap();
    assert!(two_z.lattice_points_in_box(&[1.5]).unwrap().is_empty());
    let f2 = QuadField::new(2).unwrap();
    let o = IdealLattice::ring_of_integers(&f2);
    let mut pts: Vec<String> = o.lattice_points_in_box(&[1.5, 1.5]).unwrap().iter().map(|p| p.to_string()).collect();
    pts.sort();
    assert_eq!(pts, vec!["-1", "0+1*w", "0-1*w", "1"]);
}

fn naive_box(l: &IdealLattice, t: &[f64], range: i128) -> Vec<FieldElement> {
    let b = l.basis();
    let f = l.field();
    let mut out = Vec::new();
    for m in -range..=range {
        for n in -range..=range {
            let x = &b[0].scale(&rat(m)) + &b[1].scale(&rat(n));
            if !x.is_zero() && f.embed(&x).iter().zip(t).all(|(s, t)| s.abs() <= t * (1.0 + 1e-12)) {
                out.push(x);
            }
        }
    }
    out
}

#[test]
fn lattice_points_match_naive_enumeration() {
    for m in [2i64, 5] {
        let f = QuadField::new(m).unwrap();
        let lattices = [
            IdealLattice::ring_of_integers(&f),
            IdealLattice::principal(&f, &FieldElement::from_int(2)).unwrap(),
            IdealLattice::principal(&f, &parse_element(&f, "1+2*w").unwrap()).unwrap(),
            IdealLattice::inverse_different(&f),
        ];
        for l in &lattices {
            for t in [[3.0, 3.0], [10.0, 2.0], [1.0, 25.0]] {
                let mut a: Vec<String> = l.lattice_points_in_box(&t).unwrap().iter().map(|x| x.to_string()).collect();
                let mut b: Vec<String> = naive_box(l, &t, 120).iter().map(|x| x.to_string()).collect();
                a.sort();
                b.sort();
                assert_eq!(a, b);
            }
        }
    }
}

#[test]
fn parse_and_print_round_trip() {
    let f5 = parse_field("Q(sqrt 5)").unwrap();
    assert_eq!(f5, parse_field("Q(sqrt(5))").unwrap());
    assert_eq!(parse_field(&f5.spec()).unwrap(), f5);
    for s in ["1+w", "3/2-7/5*w", "0+1*w", "-4"] {
        let e = parse_element(&f5, s).unwrap();
        assert_eq!(parse_element(&f5, &e.to_string()).unwrap(), e);
    }
    assert_eq!(parse_element(&f5, "sqrt(5)").unwrap(), parse_element(&f5, "2*w-1").unwrap());
    assert!(parse_element(&f5, "sqrt(3)").is_err());
    assert_eq!(parse_ideal(&f5, "(2, 1+w)").unwrap().len(), 2);
    assert!(parse_field("Q(sqrt 8)").is_err());
}

#[test]
fn prime_splitting() {
    let f5 = QuadField::new(5).unwrap();
    assert_eq!(primes_above(&f5, 2).iter().map(|p| p.norm).collect::<Vec<_>>(), vec![4]);
    assert_eq!(primes_above(&f5, 11).len(), 2);
    assert_eq!(primes_above(&f5, 5).len(), 1);
    let p5 = &primes_above(&f5, 5)[0];
    let five = IdealLattice::principal(&f5, &FieldElement::from_int(5)).unwrap();
    assert_eq!(valuation(p5, &five), 2);
}

fn small_elem() -> impl Strategy<Value = (i128, i128, i128, i128)> {
    (-30i128..30, -30i128..30, 1i128..6, 1i128..6)
}

proptest! {
    #[test]
    fn norm_multiplicative_trace_additive(a in small_elem(), b in small_elem(), m in prop::sample::select(vec![1i64, 2, 3, 5, 13])) {
        let f = QuadField::new(m).unwrap();
        let x = f.elem(q(a.0, a.2), q(a.1, a.3));
        let y = f.elem(q(b.0, b.2), q(b.1, b.3));
        prop_assert_eq!(f.norm(&f.mul(&x, &y)), f.norm(&x) * f.norm(&y));
        prop_assert_eq!(f.trace(&(&x + &y)), f.trace(&x) + f.trace(&y));
        let e = f.embed(&x);
        let n: f64 = e.iter().product();
        let nn = ratio_to_f64(&f.norm(&x));
        prop_assert!((n - nn).abs() <= 1e-12 * nn.abs().max(1.0) * 10.0);
        let t: f64 = e.iter().sum();
        prop_assert!((t - ratio_to_f64(&f.trace(&x))).abs() < 1e-9);
    }
}
