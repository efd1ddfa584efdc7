//! Hyperelliptic curves y^2 = f(x) over K(t) with f monic of even degree: valuations at the
//! two places at infinity of functions A(x) + B(x) y whose norm is constant in x.

use crate::error::{Error, Result};
use crate::exact_algebra::{Gf, Laurent, Poly, PolyRing, RatFn, RatFuncs, Ring, Series};
use crate::exact_algebra::GfElem;

type Kt = RatFuncs<Gf>;
type KtElem = RatFn<GfElem>;

pub struct KtHyperelliptic {
    pub kt: Kt,
    pub f: Poly<KtElem>,
}

/// Divisor supported at infinity: coefficients of inf+ (where y / x^(g+1) -> +1) and inf-.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KtDivisor {
    pub plus: i64,
    pub minus: i64,
}

impl KtHyperelliptic {
    pub fn new(k: &Gf, f: Poly<KtElem>) -> Result<KtHyperelliptic> {
        let kt = RatFuncs::new(k.clone());
        if k.p() == 2 {
            return Err(Error::UnsupportedCurve("characteristic 2".into()));
        }
        match f.degree() {
            Some(n) if n % 2 == 0 && n >= 2 && kt.is_one(f.lc().unwrap()) => {}
            _ => return Err(Error::UnsupportedCurve("need f monic of even degree".into())),
        }
        Ok(KtHyperelliptic { kt, f })
    }

    fn half_degree(&self) -> i64 {
        self.f.degree().unwrap() as i64 / 2
    }

    /// y as a series in s = 1/x at inf+ (sign = 1) or inf- (sign = -1).
    fn y_series(&self, sign: i64, prec: usize) -> Result<Laurent<KtElem>> {
        let s = Series::new(self.kt.clone());
        let n = self.f.degree().unwrap();
        let pr = PolyRing::new(self.kt.clone());
        let rev: Vec<KtElem> = (0..=n).map(|i| self.kt.neg(&pr.coeff(&self.f, n - i))).collect();
        let cs = vec![s.from_coeffs(0, rev, prec), s.zero_mod(i64::MAX / 4), s.constant(self.kt.one(), prec)];
        let w0 = self.kt.from_int(sign);
        let w = s.newton_root(&cs, &w0, prec).ok_or_else(|| Error::InternalConsistency("square root at infinity".into()))?;
        Ok(Laurent { val: -self.half_degree(), c: w.c })
    }

    fn value(&self, a: &Poly<KtElem>, b: &Poly<KtElem>, sign: i64, prec: usize) -> Result<Laurent<KtElem>> {
        let s = Series::new(self.kt.clone());
        let x = s.monomial(self.kt.one(), -1, prec);
        let y = self.y_series(sign, prec)?;
        let ea = s.eval_poly(a.coeffs(), &x, prec);
        let eb = s.eval_poly(b.coeffs(), &x, prec);
        Ok(s.add(&ea, &s.mul(&eb, &y)))
    }

    /// Valuation of A + B y at inf+ (sign = 1) or inf- (sign = -1).
    pub fn valuation_at_infinity(&self, a: &Poly<KtElem>, b: &Poly<KtElem>, sign: i64) -> Result<i64> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::UndefinedValuation("zero function".into()));
        }
        let mut prec = 8usize + (a.len().max(b.len())) * 2;
        loop {
            if let Some(v) = self.value(a, b, sign, prec)?.valuation() {
                return Ok(v);
            }
            prec *= 2;
            if prec > 4096 {
                return Err(Error::InternalConsistency("valuation did not stabilize".into()));
            }
        }
    }

    /// Divisor of A + B y, provided its norm A^2 - B^2 f is a nonzero constant in x.
    pub fn divisor(&self, a: &Poly<KtElem>, b: &Poly<KtElem>) -> Result<KtDivisor> {
        let pr = PolyRing::new(self.kt.clone());
        let norm = pr.sub(&pr.mul(a, a), &pr.mul(&pr.mul(b, b), &self.f));
        if norm.degree() != Some(0) {
            return Err(Error::UnsupportedCurve("function has affine zeros or poles".into()));
        }
        let plus = self.valuation_at_infinity(a, b, 1)?;
        let minus = self.valuation_at_infinity(a, b, -1)?;
        if plus + minus != 0 {
            return Err(Error::InternalConsistency("principal divisor of nonzero degree".into()));
        }
        Ok(KtDivisor { plus, minus })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn y_minus_x_cubed_is_three_torsion() {
        let k = Gf::prime(67).unwrap();
        let kt = RatFuncs::new(k.clone());
        let pr = PolyRing::new(kt.clone());
        let g = kt.from_poly(PolyRing::new(k.clone()).from_ints(&[12, 2, 0, 1]));
        let mut c = vec![kt.zero(); 7];
        c[0] = g;
        c[6] = kt.one();
        let c = KtHyperelliptic::new(&k, pr.from_coeffs(c)).unwrap();
        let a = pr.monomial(kt.from_int(-1), 3);
        let b = pr.one();
        assert_eq!(c.divisor(&a, &b).unwrap(), KtDivisor { plus: 3, minus: -3 });
    }
}
