use super::poly::{Poly, PolyRing};
use super::ring::{Field, Ring, SqrtField};
use super::sqrt::formal_square_root;

/// Reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFn<E> {
    pub num: Poly<E>,
    pub den: Poly<E>,
}

/// The rational function field F(t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFuncs<F: Field> {
    pub poly: PolyRing<F>,
}

impl<F: Field> RatFuncs<F> {
    pub fn new(base: F) -> Self {
        RatFuncs { poly: PolyRing::new(base) }
    }

    pub fn base(&self) -> &F {
        &self.poly.base
    }

    pub fn make(&self, num: Poly<F::Elem>, den: Poly<F::Elem>) -> Option<RatFn<F::Elem>> {
        if den.is_zero() {
            return None;
        }
        let p = &self.poly;
        if num.is_zero() {
            return Some(self.zero());
        }
        let g = p.gcd(&num, &den);
        let (n, d) = if g.degree() == Some(0) { (num, den) } else { (p.quo(&num, &g), p.quo(&den, &g)) };
        let l = self.base().inv(d.lc().unwrap()).unwrap();
        Some(RatFn { num: p.scale(&n, &l), den: p.scale(&d, &l) })
    }

    pub fn from_poly(&self, num: Poly<F::Elem>) -> RatFn<F::Elem> {
        RatFn { num, den: self.poly.one() }
    }

    pub fn constant(&self, c: F::Elem) -> RatFn<F::Elem> {
        self.from_poly(self.poly.constant(c))
    }

    /// The variable t.
    pub fn t(&self) -> RatFn<F::Elem> {
        self.from_poly(self.poly.x())
    }

    pub fn is_polynomial(&self, a: &RatFn<F::Elem>) -> bool {
        a.den.degree() == Some(0)
    }

    pub fn as_polynomial(&self, a: &RatFn<F::Elem>) -> Option<Poly<F::Elem>> {
        if self.is_polynomial(a) {
            Some(a.num.clone())
        } else {
            None
        }
    }

    /// Valuation at the place t = infinity: deg den - deg num.
    pub fn valuation_infinity(&self, a: &RatFn<F::Elem>) -> Option<i64> {
        if a.num.is_zero() {
            None
        } else {
            Some(a.den.deg_i() - a.num.deg_i())
        }
    }

    /// Valuation at the place of the monic irreducible pi.
    pub fn valuation_at(&self, a: &RatFn<F::Elem>, pi: &Poly<F::Elem>) -> Option<i64> {
        if a.num.is_zero() {
            return None;
        }
        let p = &self.poly;
        let count = |mut h: Poly<F::Elem>| {
            let mut k = 0i64;
            loop {
                let (q, r) = p.div_rem(&h, pi).unwrap();
                if !r.is_zero() {
                    return k;
                }
                h = q;
                k += 1;
            }
        };
        Some(count(a.num.clone()) - count(a.den.clone()))
    }

    pub fn eval(&self, a: &RatFn<F::Elem>, x: &F::Elem) -> Option<F::Elem> {
        let d = self.poly.eval(&a.den, x);
        self.base().div(&self.poly.eval(&a.num, x), &d)
    }
}

impl<F: Field> Ring for RatFuncs<F> {
    type Elem = RatFn<F::Elem>;

    fn zero(&self) -> Self::Elem {
        RatFn { num: self.poly.zero(), den: self.poly.one() }
    }
    fn one(&self) -> Self::Elem {
        RatFn { num: self.poly.one(), den: self.poly.one() }
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let p = &self.poly;
        if a.den == b.den {
            return self.make(p.add(&a.num, &b.num), a.den.clone()).unwrap();
        }
        let n = p.add(&p.mul(&a.num, &b.den), &p.mul(&b.num, &a.den));
        self.make(n, p.mul(&a.den, &b.den)).unwrap()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFn { num: self.poly.neg(&a.num), den: a.den.clone() }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let p = &self.poly;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        if self.is_polynomial(a) && self.is_polynomial(b) {
            return self.from_poly(p.mul(&a.num, &b.num));
        }
        self.make(p.mul(&a.num, &b.num), p.mul(&a.den, &b.den)).unwrap()
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.constant(self.base().from_int(n))
    }
    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.div(a, b)
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        let n = self.poly.fmt_var(&a.num, "t");
        if self.is_polynomial(a) {
            n
        } else {
            format!("({n})/({})", self.poly.fmt_var(&a.den, "t"))
        }
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }
}

impl<F: Field> Field for RatFuncs<F> {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_zero() {
            return None;
        }
        self.make(a.den.clone(), a.num.clone())
    }
}

impl<F: SqrtField> SqrtField for RatFuncs<F> {
    fn sqrt(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.num.is_zero() {
            return Some(self.zero());
        }
        let n = formal_square_root(&self.poly, &a.num).ok()??;
        let d = formal_square_root(&self.poly, &a.den).ok()??;
        self.make(n, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::finite::Gf;

    #[test]
    fn canonical_form() {
        let k = RatFuncs::new(Gf::prime(7).unwrap());
        let p = &k.poly;
        let a = k.make(p.from_ints(&[2, 2]), p.from_ints(&[2, 4, 2])).unwrap();
        assert_eq!(a.den, p.from_ints(&[1, 1]));
        assert_eq!(a.num, p.from_ints(&[1]));
        let b = k.add(&a, &k.neg(&a));
        assert_eq!(b, k.zero());
    }
}
