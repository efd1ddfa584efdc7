use super::{BiPoly, Curve, CurveFn, Divisor, Place};
use crate::error::{Error, Result};
use crate::exact_algebra::factor::{factor_finite_field, GfPoly};
use crate::exact_algebra::resultant::resultant;
use crate::exact_algebra::{GfElem, Laurent, PolyRing, Ring, Series};

const MAX_PREC: usize = 1 << 14;

impl Curve {
    /// h(u(s), v(s)) at a place, computed from expansions with relative precision prec.
    pub(crate) fn local_series(&self, place: &Place, h: &BiPoly, prec: usize) -> Result<Laurent<GfElem>> {
        let e = self.expansion(place, prec)?;
        let s = Series::new(place.field.clone());
        let emb = |c: &GfPoly| -> Vec<GfElem> { c.coeffs().iter().map(|x| place.embed.apply(x)).collect() };
        let mut acc: Option<Laurent<GfElem>> = None;
        for c in h.coeffs().iter().rev() {
            let cu = if c.is_zero() { s.zero_mod(i64::MAX / 4) } else { s.eval_poly(&emb(c), &e.u, prec) };
            acc = Some(match acc {
                None => cu,
                Some(a) => {
                    let v = e.v.as_ref().ok_or_else(|| Error::InvalidInput("v is not a coordinate on P^1".into()))?;
                    s.add(&s.mul(&a, v), &cu)
                }
            });
        }
        Ok(acc.unwrap_or_else(|| s.zero_mod(i64::MAX / 4)))
    }

    /// Valuation of a polynomial function at a place.
    pub fn valuation_poly(&self, place: &Place, h: &BiPoly) -> Result<i64> {
        if place.curve != self.fingerprint() {
            return Err(Error::CurveMismatch("place belongs to another curve".into()));
        }
        let h = self.reduce(h);
        if h.is_zero() {
            return Err(Error::UndefinedValuation("function is zero on the curve".into()));
        }
        let mut prec = 8usize;
        loop {
            let a = self.local_series(place, &h, prec)?;
            if let Some(v) = a.valuation() {
                return Ok(v);
            }
            if prec >= MAX_PREC {
                return Err(Error::InternalConsistency("valuation did not stabilize".into()));
            }
            prec *= 2;
        }
    }
}

pub fn valuation(curve: &Curve, place: &Place, f: &CurveFn) -> Result<i64> {
    if f.num.is_zero() {
        return Err(Error::UndefinedValuation("zero function".into()));
    }
    Ok(curve.valuation_poly(place, &f.num)? - curve.valuation_poly(place, &f.den)?)
}

/// Divisor of a nonzero polynomial function.
pub(crate) fn poly_divisor(curve: &Curve, h: &BiPoly) -> Result<Divisor> {
    let h = curve.reduce(h);
    if h.is_zero() {
        return Err(Error::UndefinedValuation("function is zero on the curve".into()));
    }
    let r = curve.upoly();
    let norm = if curve.is_line() {
        h.coeffs()[0].clone()
    } else {
        let bi = PolyRing::new(r.clone());
        let hh = if h.degree() == Some(0) {
            // Res_v(F, c) = c^deg F
            r.pow(&h.coeffs()[0], curve.deg_v() as u64)
        } else {
            resultant(&bi, curve.equation(), &h)?
        };
        hh
    };
    let mut d = Divisor::new();
    if norm.degree().unwrap_or(0) > 0 {
        for (p, m) in factor_finite_field(&r, &norm, 0)? {
            let dp = p.degree().unwrap() as i64;
            let mut weighted = 0i64;
            for pl in curve.places_over(&p)? {
                let v = curve.valuation_poly(&pl, &h)?;
                weighted += v * pl.degree as i64 / dp;
                d.add_term(&pl, v);
            }
            if weighted != m as i64 {
                return Err(Error::InternalConsistency(format!("norm multiplicity {m} but local sum {weighted}")));
            }
        }
    }
    for pl in curve.infinite_places() {
        let v = curve.valuation_poly(pl, &h)?;
        d.add_term(pl, v);
    }
    if d.degree() != 0 {
        return Err(Error::InternalConsistency(format!("principal divisor of degree {}", d.degree())));
    }
    Ok(d)
}

pub fn principal_divisor(curve: &Curve, f: &CurveFn) -> Result<Divisor> {
    if f.num.is_zero() {
        return Err(Error::UndefinedValuation("zero function".into()));
    }
    let d = poly_divisor(curve, &f.num)?.sub(&poly_divisor(curve, &f.den)?);
    if d.degree() != 0 {
        return Err(Error::InternalConsistency("principal divisor of nonzero degree".into()));
    }
    Ok(d)
}
