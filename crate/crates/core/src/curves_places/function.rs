use super::{BiPoly, Curve};
use crate::error::{Error, Result};
use crate::exact_algebra::factor::GfPoly;
use crate::exact_algebra::{GfElem, Ring};

/// A rational function num/den on a curve, both written as polynomials in v over K[u].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFn {
    pub num: BiPoly,
    pub den: BiPoly,
}

impl Curve {
    /// Reduce modulo the defining polynomial (monic in v).
    pub fn reduce(&self, h: &BiPoly) -> BiPoly {
        if self.is_line() {
            return h.clone();
        }
        let bi = self.bi();
        let f = self.equation();
        let n = f.degree().unwrap();
        let mut c: Vec<GfPoly> = h.coeffs().to_vec();
        let r = self.upoly();
        while c.len() > n {
            let top = c.pop().unwrap();
            let base = c.len() - n;
            for (i, fi) in f.coeffs().iter().take(n).enumerate() {
                c[base + i] = r.sub(&c[base + i], &r.mul(&top, fi));
            }
        }
        bi.from_coeffs(c)
    }

    pub fn fn_from(&self, num: BiPoly, den: BiPoly) -> Result<CurveFn> {
        let den = self.reduce(&den);
        if den.is_zero() {
            return Err(Error::DegenerateInput("denominator vanishes on the curve".into()));
        }
        if self.is_line() && (num.len() > 1 || den.len() > 1) {
            return Err(Error::InvalidInput("functions on P^1 involve u only".into()));
        }
        Ok(CurveFn { num: self.reduce(&num), den })
    }

    pub fn fn_poly(&self, num: BiPoly) -> CurveFn {
        CurveFn { num: self.reduce(&num), den: self.bi().one() }
    }

    /// The polynomial a(u) as a function.
    pub fn fn_u_poly(&self, a: &GfPoly) -> CurveFn {
        self.fn_poly(self.bi().constant(a.clone()))
    }

    pub fn fn_u(&self) -> CurveFn {
        self.fn_u_poly(&self.upoly().x())
    }

    pub fn fn_v(&self) -> CurveFn {
        self.fn_poly(self.bi().x())
    }

    pub fn fn_const(&self, c: GfElem) -> CurveFn {
        self.fn_u_poly(&self.upoly().constant(c))
    }

    /// Build a(u) + b(u) v.
    pub fn fn_linear(&self, a: &GfPoly, b: &GfPoly) -> CurveFn {
        self.fn_poly(self.bi().from_coeffs(vec![a.clone(), b.clone()]))
    }

    pub fn fn_mul(&self, a: &CurveFn, b: &CurveFn) -> CurveFn {
        let bi = self.bi();
        CurveFn { num: self.reduce(&bi.mul(&a.num, &b.num)), den: self.reduce(&bi.mul(&a.den, &b.den)) }
    }

    pub fn fn_div(&self, a: &CurveFn, b: &CurveFn) -> Result<CurveFn> {
        let bi = self.bi();
        self.fn_from(bi.mul(&a.num, &b.den), bi.mul(&a.den, &b.num))
    }

    pub fn fn_add(&self, a: &CurveFn, b: &CurveFn) -> CurveFn {
        let bi = self.bi();
        if a.den == b.den {
            return CurveFn { num: self.reduce(&bi.add(&a.num, &b.num)), den: a.den.clone() };
        }
        let n = bi.add(&bi.mul(&a.num, &b.den), &bi.mul(&b.num, &a.den));
        CurveFn { num: self.reduce(&n), den: self.reduce(&bi.mul(&a.den, &b.den)) }
    }

    pub fn fn_neg(&self, a: &CurveFn) -> CurveFn {
        CurveFn { num: self.bi().neg(&a.num), den: a.den.clone() }
    }

    pub fn fn_sub(&self, a: &CurveFn, b: &CurveFn) -> CurveFn {
        self.fn_add(a, &self.fn_neg(b))
    }

    pub fn fn_pow(&self, a: &CurveFn, e: u64) -> CurveFn {
        let mut acc = self.fn_const(self.field().one());
        for _ in 0..e {
            acc = self.fn_mul(&acc, a);
        }
        acc
    }

    pub fn fn_is_zero(&self, a: &CurveFn) -> bool {
        a.num.is_zero()
    }

    pub fn fmt_fn(&self, a: &CurveFn) -> String {
        let var = if matches!(self.kind(), super::CurveKind::Superelliptic { .. }) { ("t", "x") } else { ("u", "v") };
        let r = self.upoly();
        let show = |h: &BiPoly| -> String {
            let mut parts = vec![];
            for (i, c) in h.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let cs = r.fmt_var(c, var.0);
                parts.push(match i {
                    0 => cs,
                    1 => format!("({cs})*{}", var.1),
                    _ => format!("({cs})*{}^{i}", var.1),
                });
            }
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        };
        if a.den == self.bi().one() {
            show(&a.num)
        } else {
            format!("({}) / ({})", show(&a.num), show(&a.den))
        }
    }
}

