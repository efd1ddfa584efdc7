use super::*;
use crate::exact_algebra::build_extension;

fn fp(p: u64) -> Gf {
    Gf::prime(p).unwrap()
}

fn x5(p: u64) -> (Curve, GfPoly) {
    let k = fp(p);
    let r = PolyRing::new(k.clone());
    let g = r.from_ints(&[12, 2, 0, 1]);
    (Curve::superelliptic(&k, 5, g.clone()).unwrap(), g)
}

fn inf(c: &Curve, n: i64) -> Divisor {
    Divisor::from_place(&c.infinite_places()[0], n)
}

#[test]
fn superelliptic_d5_basics() {
    let (c, g) = x5(61);
    assert_eq!(c.genus(), 4);
    let x = c.fn_v();
    let t = c.fn_u();
    let pinf = c.infinite_places()[0].clone();
    assert_eq!(valuation(&c, &pinf, &x).unwrap(), -3);
    assert_eq!(valuation(&c, &pinf, &t).unwrap(), -5);
    // div(x) = P1 + P2 + P3 - 3 inf, the points over the roots of g
    let dx = principal_divisor(&c, &x).unwrap();
    assert_eq!(dx.coeff(&PlaceKey::Infinite(0)), -3);
    let r = c.upoly();
    let mut zeros = Divisor::new();
    for (h, _) in factor_finite_field(&r, &g, 0).unwrap() {
        for pl in c.places_over(&h).unwrap() {
            zeros.add_term(&pl, 1);
        }
    }
    assert_eq!(zeros.degree(), 3);
    assert_eq!(dx, zeros.sub(&inf(&c, 3)));
    assert_eq!(riemann_roch_dim(&c, &inf(&c, 6)).unwrap(), 4);
    assert_eq!(riemann_roch_dim(&c, &inf(&c, 3)).unwrap(), 2);
    assert_eq!(riemann_roch_dim(&c, &inf(&c, 0)).unwrap(), 1);
    assert_eq!(riemann_roch_dim(&c, &inf(&c, -1)).unwrap(), 0);
    for n in 7..14 {
        assert_eq!(riemann_roch_dim(&c, &inf(&c, n)).unwrap() as i64, n - 3);
    }
}

#[test]
fn principal_divisors_are_recognised() {
    let (c, _) = x5(61);
    let r = c.upoly();
    let h = c.fn_linear(&r.from_ints(&[3, 1, 1]), &r.from_ints(&[1, 2]));
    let d = principal_divisor(&c, &h).unwrap();
    assert_eq!(d.degree(), 0);
    let cert = is_principal(&c, &d).unwrap().expect("principal");
    assert_eq!(principal_divisor(&c, &cert).unwrap(), d);
    // shifting by a point of degree one breaks principality
    let q = (0..61)
        .flat_map(|a| c.places_over(&r.from_ints(&[a, 1])).unwrap())
        .find(|p| p.degree == 1)
        .unwrap();
    let moved = d.add(&Divisor::from_place(&q, 1)).sub(&inf(&c, 1));
    assert!(is_principal(&c, &moved).unwrap().is_none());
}

#[test]
fn hyperelliptic_odd_and_line() {
    let k = fp(7);
    let r = PolyRing::new(k.clone());
    let c = Curve::hyperelliptic(&k, r.from_ints(&[2, 0, 0, 0, 0, 1])).unwrap();
    assert_eq!(c.genus(), 2);
    let pinf = c.infinite_places()[0].clone();
    assert_eq!(valuation(&c, &pinf, &c.fn_u()).unwrap(), -2);
    assert_eq!(valuation(&c, &pinf, &c.fn_v()).unwrap(), -5);
    for n in 0..9 {
        let expect = match n {
            0 | 1 => 1,
            2 | 3 => 2,
            _ => n - 1,
        };
        assert_eq!(riemann_roch_dim(&c, &inf(&c, n)).unwrap() as i64, expect, "n = {n}");
    }
    let line = Curve::projective_line(&k).unwrap();
    for n in 0..5 {
        assert_eq!(riemann_roch_dim(&line, &inf(&line, n)).unwrap() as i64, n + 1);
    }
    let h = line.fn_u_poly(&r.from_ints(&[1, 0, 1]));
    let d = principal_divisor(&line, &h).unwrap();
    assert_eq!(d.coeff(&PlaceKey::Infinite(0)), -2);
}

#[test]
fn hyperelliptic_even_infinity_labels() {
    let k = fp(7);
    let r = PolyRing::new(k.clone());
    let c = Curve::hyperelliptic(&k, r.from_ints(&[1, 0, 0, 0, 0, 0, 1])).unwrap();
    assert_eq!(c.infinite_places().len(), 2);
    let h = c.fn_linear(&r.from_ints(&[0, 0, 0, -1]), &r.one());
    let d = principal_divisor(&c, &h).unwrap();
    assert_eq!(d.coeff(&PlaceKey::Infinite(0)), 3);
    assert_eq!(d.coeff(&PlaceKey::Infinite(1)), -3);
    assert_eq!(d.len(), 2);
    // non-square leading coefficient: one place of degree 2
    let c3 = Curve::hyperelliptic(&k, r.from_ints(&[1, 0, 0, 0, 0, 0, 3])).unwrap();
    assert_eq!(c3.infinite_places().len(), 1);
    assert_eq!(c3.infinite_places()[0].degree, 2);
    let d = Divisor::from_place(&c3.infinite_places()[0], 3);
    assert_eq!(riemann_roch_dim(&c3, &d).unwrap(), 5);
}

#[test]
fn superelliptic_d6_and_d4() {
    let k = fp(67);
    let r = PolyRing::new(k.clone());
    let g = r.from_ints(&[12, 2, 0, 1]);
    let c = Curve::superelliptic(&k, 6, g.clone()).unwrap();
    assert_eq!(c.genus(), 4);
    assert_eq!(c.infinite_places().len(), 3);
    let mut d = Divisor::new();
    for pl in c.infinite_places() {
        d.add_term(pl, 3);
    }
    assert_eq!(riemann_roch_dim(&c, &d).unwrap(), 9 - 3);
    let h = c.fn_linear(&r.from_ints(&[1, 1]), &r.from_ints(&[0, 1]));
    assert_eq!(principal_divisor(&c, &h).unwrap().degree(), 0);

    let k = fp(13);
    let r = PolyRing::new(k.clone());
    let c = Curve::superelliptic(&k, 4, r.from_ints(&[1, 1, 0, 1])).unwrap();
    assert_eq!(c.genus(), 3);
    for n in 5..9 {
        assert_eq!(riemann_roch_dim(&c, &inf(&c, n)).unwrap() as i64, n - 2);
    }
    let pinf = c.infinite_places()[0].clone();
    assert_eq!(valuation(&c, &pinf, &c.fn_u()).unwrap(), -4);
    assert_eq!(valuation(&c, &pinf, &c.fn_v()).unwrap(), -3);
}

#[test]
fn frobenius_moves_conjugate_places() {
    let f7 = fp(7);
    let k = build_extension(&f7, 2, 1).unwrap().field;
    let r = PolyRing::new(k.clone());
    let c = Curve::hyperelliptic(&k, r.from_ints(&[2, 0, 0, 0, 0, 1])).unwrap();
    let a = k.generator();
    let pl = c.places_over(&r.linear_root(&a)).unwrap();
    let d = Divisor::from_place(&pl[0], 1);
    let fd = c.frobenius_divisor(&d, 1).unwrap();
    let (pl2, _) = fd.iter().next().unwrap();
    let PlaceKey::Affine { p, .. } = &pl2.key else { panic!() };
    assert_eq!(*p, r.linear_root(&k.frobenius(&a)));
    assert_eq!(c.frobenius_divisor(&d, 2).unwrap(), d);
}

#[test]
fn invalid_inputs() {
    let k = fp(7);
    let r = PolyRing::new(k.clone());
    assert!(Curve::hyperelliptic(&k, r.from_ints(&[0, 0, 1])).is_err());
    assert!(Curve::superelliptic(&k, 7, r.from_ints(&[1, 0, 0, 1])).is_err());
    assert!(Curve::superelliptic(&k, 5, r.from_ints(&[1, 1])).is_err());
    let (c, _) = x5(61);
    let (c2, _) = x5(67);
    let p = c2.infinite_places()[0].clone();
    assert!(matches!(valuation(&c, &p, &c.fn_u()), Err(Error::CurveMismatch(_))));
    let zero = c.fn_const(c.field().zero());
    assert!(matches!(valuation(&c, &c.infinite_places()[0], &zero), Err(Error::UndefinedValuation(_))));
}
