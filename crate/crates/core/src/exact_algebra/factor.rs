use num::bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::finite::{Gf, GfElem};
use super::poly::{Poly, PolyRing};
use super::ring::Ring;
use crate::error::{Error, Result};

pub type GfPoly = Poly<GfElem>;

/// h -> h^q mod m for q = |K|, as a K-linear map.
struct FrobeniusMod {
    m: GfPoly,
    rows: Vec<GfPoly>,
}

impl FrobeniusMod {
    fn new(r: &PolyRing<Gf>, m: &GfPoly) -> FrobeniusMod {
        let n = m.degree().unwrap();
        let xq = r.pow_mod(&r.x(), r.base.order(), m);
        let mut rows = Vec::with_capacity(n);
        let mut acc = r.rem(&r.one(), m);
        for _ in 0..n {
            rows.push(acc.clone());
            acc = r.mul_mod(&acc, &xq, m);
        }
        FrobeniusMod { m: m.clone(), rows }
    }

    fn apply(&self, r: &PolyRing<Gf>, h: &GfPoly) -> GfPoly {
        let h = r.rem(h, &self.m);
        let k = &r.base;
        let n = self.rows.len();
        let mut out = vec![k.zero(); n];
        for (j, c) in h.coeffs().iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            for (i, v) in self.rows[j].coeffs().iter().enumerate() {
                out[i] = k.add(&out[i], &k.mul(c, v));
            }
        }
        r.from_coeffs(out)
    }
}

fn pth_root(r: &PolyRing<Gf>, f: &GfPoly) -> GfPoly {
    let k = &r.base;
    let p = k.p() as usize;
    let n = k.degree();
    let coeffs: Vec<GfElem> = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| k.frobenius_pow(c, n - 1))
        .collect();
    r.from_coeffs(coeffs)
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime squarefree parts with multiplicities.
pub fn squarefree_decomposition(r: &PolyRing<Gf>, f: &GfPoly) -> Vec<(GfPoly, usize)> {
    let mut out = vec![];
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = r.base.p() as usize;
    let df = r.derivative(f);
    if df.is_zero() {
        for (h, m) in squarefree_decomposition(r, &pth_root(r, f)) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = r.gcd(f, &df);
    let mut w = r.quo(f, &c);
    let mut i = 1;
    while w.degree() != Some(0) {
        let y = r.gcd(&w, &c);
        let z = r.quo(&w, &y);
        if z.degree() != Some(0) {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = r.quo(&c, &w);
    }
    if c.degree() != Some(0) {
        for (h, m) in squarefree_decomposition(r, &pth_root(r, &c)) {
            out.push((h, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
pub fn distinct_degree(r: &PolyRing<Gf>, f: &GfPoly) -> Vec<(GfPoly, usize)> {
    let mut out = vec![];
    let Some(n) = f.degree() else { return out };
    if n == 0 {
        return out;
    }
    let frob = FrobeniusMod::new(r, f);
    let x = r.x();
    let mut h = r.rem(&x, f);
    let mut rest = f.clone();
    let mut d = 0;
    while rest.degree().unwrap() >= 2 * (d + 1) {
        d += 1;
        h = frob.apply(r, &h);
        let g = r.gcd(&r.sub(&h, &x), &rest);
        if g.degree() != Some(0) {
            rest = r.quo(&rest, &g);
            out.push((g, d));
        }
    }
    if rest.degree() != Some(0) {
        let dr = rest.degree().unwrap();
        out.push((rest, dr));
    }
    out
}

fn random_poly(r: &PolyRing<Gf>, deg_lt: usize, rng: &mut ChaCha8Rng) -> GfPoly {
    r.from_coeffs((0..deg_lt).map(|_| r.base.random(rng)).collect())
}

/// Split a squarefree monic product of degree-d irreducibles.
pub fn equal_degree(r: &PolyRing<Gf>, f: &GfPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<GfPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let k = &r.base;
    let q = k.order();
    loop {
        let a = random_poly(r, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if k.p() == 2 {
            // trace from F_{q^d} to F_2
            let total = k.degree() * d;
            let mut acc = r.rem(&a, f);
            let mut term = acc.clone();
            for _ in 1..total {
                term = r.mul_mod(&term, &term, f);
                acc = r.add(&acc, &term);
            }
            acc
        } else {
            let e: BigUint = (q.pow(d as u32) - 1u32) >> 1u32;
            r.sub(&r.pow_mod(&a, &e, f), &r.one())
        };
        let g = r.gcd(&b, f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let mut out = equal_degree(r, &g, d, rng);
            out.extend(equal_degree(r, &r.quo(f, &g), d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
pub fn factor_finite_field(r: &PolyRing<Gf>, f: &GfPoly, seed: u64) -> Result<Vec<(GfPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::DegenerateInput("factoring the zero polynomial".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = r.monic(f);
    let mut out = vec![];
    for (sq, m) in squarefree_decomposition(r, &f) {
        for (g, d) in distinct_degree(r, &sq) {
            for h in equal_degree(r, &g, d, &mut rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs())));
    Ok(out)
}

pub fn is_irreducible(r: &PolyRing<Gf>, f: &GfPoly) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let f = r.monic(f);
    if r.gcd(&f, &r.derivative(&f)).degree() != Some(0) {
        return false;
    }
    let dd = distinct_degree(r, &f);
    dd.len() == 1 && dd[0].1 == n
}

/// Distinct roots in the base field, sorted.
pub fn roots(r: &PolyRing<Gf>, f: &GfPoly, seed: u64) -> Vec<GfElem> {
    if f.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let f = r.monic(f);
    let xq = r.pow_mod(&r.x(), r.base.order(), &f);
    let g = r.gcd(&r.sub(&xq, &r.x()), &f);
    if g.degree() == Some(0) {
        return vec![];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<GfElem> = equal_degree(r, &g, 1, &mut rng)
        .into_iter()
        .map(|h| r.base.neg(&h.coeffs()[0]))
        .collect();
    out.sort();
    out
}

/// Random monic irreducible of degree m over the base field.
pub fn random_irreducible(r: &PolyRing<Gf>, m: usize, rng: &mut ChaCha8Rng) -> GfPoly {
    loop {
        let mut c: Vec<GfElem> = (0..m).map(|_| r.base.random(rng)).collect();
        c.push(r.base.one());
        let f = r.from_coeffs(c);
        if is_irreducible(r, &f) {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64) -> PolyRing<Gf> {
        PolyRing::new(Gf::prime(p).unwrap())
    }

    #[test]
    fn examples() {
        let r = ring(5);
        let f = factor_finite_field(&r, &r.from_ints(&[1, 0, 1]), 1).unwrap();
        assert_eq!(f, vec![(r.from_ints(&[2, 1]), 1), (r.from_ints(&[3, 1]), 1)]);
        let r2 = ring(2);
        let f = factor_finite_field(&r2, &r2.from_ints(&[1, 1, 1]), 1).unwrap();
        assert_eq!(f, vec![(r2.from_ints(&[1, 1, 1]), 1)]);
        let r7 = ring(7);
        let c = r7.from_ints(&[1, 3, 3, 1]);
        assert_eq!(factor_finite_field(&r7, &c, 1).unwrap(), vec![(r7.from_ints(&[1, 1]), 3)]);
    }

    #[test]
    fn pth_powers() {
        let r = ring(3);
        let a = r.from_ints(&[1, 1]);
        let b = r.from_ints(&[2, 0, 1]); // x^2 + 2 = (x+1)(x+2)
        let f = r.mul(&r.pow(&a, 7), &r.pow(&b, 3));
        let fac = factor_finite_field(&r, &f, 9).unwrap();
        let mut prod = r.one();
        for (h, m) in &fac {
            assert!(is_irreducible(&r, h));
            prod = r.mul(&prod, &r.pow(h, *m as u64));
        }
        assert_eq!(prod, f);
    }

    #[test]
    fn roots_in_extension() {
        let k = Gf::extension(3, vec![1, 0, 1]).unwrap();
        let r = PolyRing::new(k.clone());
        let f = r.from_coeffs(vec![k.one(), k.zero(), k.one()]);
        let rs = roots(&r, &f, 3);
        assert_eq!(rs.len(), 2);
        for x in rs {
            assert!(k.is_zero(&r.eval(&f, &x)));
        }
    }
}
