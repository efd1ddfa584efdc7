use num::bigint::BigUint;

use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Dense univariate polynomial, low degree first, never with a zero leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly<E> {
    c: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    pub fn coeffs(&self) -> &[E] {
        &self.c
    }
    pub fn into_coeffs(self) -> Vec<E> {
        self.c
    }
    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with the zero polynomial sent to -1; only for bound arithmetic.
    pub fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn lc(&self) -> Option<&E> {
        self.c.last()
    }
    pub fn len(&self) -> usize {
        self.c.len()
    }
}

/// Polynomials in one variable over a ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<R> {
    pub base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn from_coeffs(&self, mut c: Vec<R::Elem>) -> Poly<R::Elem> {
        while let Some(l) = c.last() {
            if self.base.is_zero(l) {
                c.pop();
            } else {
                break;
            }
        }
        Poly { c }
    }

    pub fn from_ints(&self, c: &[i64]) -> Poly<R::Elem> {
        self.from_coeffs(c.iter().map(|&x| self.base.from_int(x)).collect())
    }

    pub fn constant(&self, a: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![a])
    }

    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn monomial(&self, a: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut c = vec![self.base.zero(); k];
        c.push(a);
        self.from_coeffs(c)
    }

    /// x - a
    pub fn linear_root(&self, a: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![self.base.neg(a), self.base.one()])
    }

    pub fn coeff(&self, p: &Poly<R::Elem>, i: usize) -> R::Elem {
        p.c.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn is_constant(&self, p: &Poly<R::Elem>) -> bool {
        p.c.len() <= 1
    }

    pub fn eval(&self, p: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for c in p.c.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, x), c);
        }
        acc
    }

    /// p(q)
    pub fn compose(&self, p: &Poly<R::Elem>, q: &Poly<R::Elem>) -> Poly<R::Elem> {
        let mut acc = self.zero();
        for c in p.c.iter().rev() {
            acc = self.add(&self.mul(&acc, q), &self.constant(c.clone()));
        }
        acc
    }

    pub fn scale(&self, p: &Poly<R::Elem>, a: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(p.c.iter().map(|c| self.base.mul(c, a)).collect())
    }

    pub fn shift(&self, p: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        if p.is_zero() {
            return p.clone();
        }
        let mut c = vec![self.base.zero(); k];
        c.extend(p.c.iter().cloned());
        Poly { c }
    }

    pub fn derivative(&self, p: &Poly<R::Elem>) -> Poly<R::Elem> {
        if p.c.len() <= 1 {
            return self.zero();
        }
        self.from_coeffs(p.c.iter().enumerate().skip(1).map(|(i, c)| self.base.scale_int(c, i as i64)).collect())
    }

    /// Reverse coefficients relative to degree n (x^n p(1/x)).
    pub fn reverse(&self, p: &Poly<R::Elem>, n: usize) -> Poly<R::Elem> {
        let mut c: Vec<R::Elem> = (0..=n).map(|i| self.coeff(p, i)).collect();
        c.reverse();
        self.from_coeffs(c)
    }

    pub fn map<S: Ring>(&self, p: &Poly<R::Elem>, target: &PolyRing<S>, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S::Elem> {
        target.from_coeffs(p.c.iter().map(f).collect())
    }

    pub fn fmt_var(&self, p: &Poly<R::Elem>, var: &str) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut parts = vec![];
        for (i, c) in p.c.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let cs = self.base.fmt_elem(c);
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            let term = match (i, self.base.is_one(c)) {
                (0, _) => cs,
                (1, true) => var.to_string(),
                (1, false) => format!("{cs}*{var}"),
                (_, true) => format!("{var}^{i}"),
                (_, false) => format!("{cs}*{var}^{i}"),
            };
            parts.push(term);
        }
        parts.join(" + ")
    }
}

impl<F: Field> PolyRing<F> {
    pub fn div_rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<(Poly<F::Elem>, Poly<F::Elem>)> {
        let db = b.degree().ok_or_else(|| Error::DegenerateInput("division by the zero polynomial".into()))?;
        let Some(da) = a.degree() else { return Ok((self.zero(), self.zero())) };
        if da < db {
            return Ok((self.zero(), a.clone()));
        }
        let lc_inv = self.base.inv(b.lc().unwrap()).expect("nonzero leading coefficient");
        let mut r = a.c.clone();
        let mut q = vec![self.base.zero(); da - db + 1];
        for i in (db..=da).rev() {
            if self.base.is_zero(&r[i]) {
                continue;
            }
            let c = self.base.mul(&r[i], &lc_inv);
            for j in 0..=db {
                let t = self.base.mul(&c, &b.c[j]);
                r[i - db + j] = self.base.sub(&r[i - db + j], &t);
            }
            q[i - db] = c;
        }
        r.truncate(db);
        Ok((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.div_rem(a, b).expect("nonzero modulus").1
    }

    pub fn quo(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.div_rem(a, b).expect("nonzero divisor").0
    }

    /// b divides a
    pub fn divides(&self, b: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        self.rem(a, b).is_zero()
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.lc() {
            None => a.clone(),
            Some(l) => {
                let inv = self.base.inv(l).unwrap();
                self.scale(a, &inv)
            }
        }
    }

    pub fn is_monic(&self, a: &Poly<F::Elem>) -> bool {
        a.lc().map(|l| self.base.is_one(l)).unwrap_or(false)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// (g, u, v) with g monic, g = gcd(a, b) = u a + v b.
    pub fn xgcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<(Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::DegenerateInput("xgcd of two zero polynomials".into()));
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1)?;
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let inv = self.base.inv(r0.lc().unwrap()).unwrap();
        Ok((self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv)))
    }

    pub fn mul_mod(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    pub fn pow_mod(&self, a: &Poly<F::Elem>, e: &BigUint, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut acc = self.rem(&self.one(), m);
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.mul_mod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mul_mod(&acc, &base, m);
            }
        }
        acc
    }

    pub fn inv_mod(&self, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (g, u, _) = self.xgcd(&self.rem(a, m), m).ok()?;
        if g.degree() == Some(0) {
            Some(self.rem(&u, m))
        } else {
            None
        }
    }

    /// Newton interpolation through distinct nodes.
    pub fn interpolate(&self, xs: &[F::Elem], ys: &[F::Elem]) -> Result<Poly<F::Elem>> {
        let n = xs.len();
        if n != ys.len() {
            return Err(Error::InvalidInput("interpolation length mismatch".into()));
        }
        let k = &self.base;
        let mut dd: Vec<F::Elem> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = k.sub(&dd[i], &dd[i - 1]);
                let den = k.sub(&xs[i], &xs[i - j]);
                dd[i] = k.div(&num, &den).ok_or_else(|| Error::DegenerateInput("repeated interpolation node".into()))?;
            }
        }
        let mut acc = self.zero();
        for i in (0..n).rev() {
            acc = self.add(&self.mul(&acc, &self.linear_root(&xs[i])), &self.constant(dd[i].clone()));
        }
        Ok(acc)
    }
}

impl<R: Ring> Ring for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly { c: vec![] }
    }
    fn one(&self) -> Self::Elem {
        self.from_coeffs(vec![self.base.one()])
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.c.len().max(b.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (a.c.get(i), b.c.get(i)) {
                (Some(x), Some(y)) => self.base.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            });
        }
        self.from_coeffs(c)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.c.len().max(b.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (a.c.get(i), b.c.get(i)) {
                (Some(x), Some(y)) => self.base.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => self.base.neg(y),
                (None, None) => unreachable!(),
            });
        }
        self.from_coeffs(c)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Poly { c: a.c.iter().map(|x| self.base.neg(x)).collect() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut c = vec![self.base.zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                let t = self.base.mul(x, y);
                c[i + j] = self.base.add(&c[i + j], &t);
            }
        }
        self.from_coeffs(c)
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        let db = b.degree()?;
        let Some(da) = a.degree() else { return Some(self.zero()) };
        if da < db {
            return None;
        }
        let mut r = a.c.clone();
        let mut q = vec![self.base.zero(); da - db + 1];
        let lb = b.lc().unwrap();
        for i in (db..=da).rev() {
            if self.base.is_zero(&r[i]) {
                continue;
            }
            let c = self.base.exact_div(&r[i], lb)?;
            for j in 0..=db {
                let t = self.base.mul(&c, &b.c[j]);
                r[i - db + j] = self.base.sub(&r[i - db + j], &t);
            }
            q[i - db] = c;
        }
        if r.iter().any(|x| !self.base.is_zero(x)) {
            return None;
        }
        Some(self.from_coeffs(q))
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        self.fmt_var(a, "x")
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.c.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::finite::Gf;
    use crate::exact_algebra::rationals::Rationals;

    #[test]
    fn xgcd_examples() {
        let r = PolyRing::new(Gf::prime(5).unwrap());
        let a = r.from_ints(&[1, 0, 1]);
        let b = r.from_ints(&[-2, 1]);
        let (g, u, v) = r.xgcd(&a, &b).unwrap();
        assert_eq!(g, r.from_ints(&[3, 1]));
        assert_eq!(r.add(&r.mul(&u, &a), &r.mul(&v, &b)), g);
        let (g, u, v) = r.xgcd(&a, &r.one()).unwrap();
        assert_eq!((g, u, v), (r.one(), r.zero(), r.one()));
        assert!(r.xgcd(&r.zero(), &r.zero()).is_err());
    }

    #[test]
    fn interpolation_roundtrip() {
        let r = PolyRing::new(Rationals);
        let p = r.from_ints(&[3, -1, 0, 2]);
        let xs: Vec<_> = (0..4).map(|i| r.base.from_int(i)).collect();
        let ys: Vec<_> = xs.iter().map(|x| r.eval(&p, x)).collect();
        assert_eq!(r.interpolate(&xs, &ys).unwrap(), p);
    }

    #[test]
    fn exact_division_over_integers_like_ring() {
        let r = PolyRing::new(PolyRing::new(Rationals));
        let a = r.from_coeffs(vec![r.base.from_ints(&[0, 1]), r.base.one()]);
        let b = r.mul(&a, &a);
        assert_eq!(r.exact_div(&b, &a).unwrap(), a);
    }
}
