//! Truncated Laurent series in one variable over a field.

use super::ring::Field;

/// sum c[i] s^(val + i), known modulo s^(val + c.len()).
/// An empty coefficient list means "zero modulo s^val".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent<E> {
    pub val: i64,
    pub c: Vec<E>,
}

impl<E> Laurent<E> {
    /// Absolute precision: the series is known modulo s^abs_prec.
    pub fn abs_prec(&self) -> i64 {
        self.val + self.c.len() as i64
    }

    pub fn is_indeterminate(&self) -> bool {
        self.c.is_empty()
    }

    /// Valuation, if the series is not zero to its known precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Series<F: Field> {
    pub k: F,
}

impl<F: Field> Series<F> {
    pub fn new(k: F) -> Self {
        Series { k }
    }

    fn normalize(&self, mut a: Laurent<F::Elem>) -> Laurent<F::Elem> {
        let lead = a.c.iter().position(|x| !self.k.is_zero(x));
        match lead {
            Some(0) => a,
            Some(i) => {
                a.c.drain(..i);
                a.val += i as i64;
                a
            }
            None => Laurent { val: a.abs_prec(), c: vec![] },
        }
    }

    /// s^val * (c_0 + c_1 s + ...), relative precision prec.
    pub fn from_coeffs(&self, val: i64, mut c: Vec<F::Elem>, prec: usize) -> Laurent<F::Elem> {
        c.resize(prec, self.k.zero());
        self.normalize(Laurent { val, c })
    }

    pub fn constant(&self, a: F::Elem, prec: usize) -> Laurent<F::Elem> {
        self.from_coeffs(0, vec![a], prec)
    }

    /// The monomial a s^e with relative precision prec.
    pub fn monomial(&self, a: F::Elem, e: i64, prec: usize) -> Laurent<F::Elem> {
        self.from_coeffs(e, vec![a], prec)
    }

    pub fn zero_mod(&self, n: i64) -> Laurent<F::Elem> {
        Laurent { val: n, c: vec![] }
    }

    pub fn coeff(&self, a: &Laurent<F::Elem>, e: i64) -> Option<F::Elem> {
        if e >= a.abs_prec() {
            return None;
        }
        if e < a.val {
            return Some(self.k.zero());
        }
        Some(a.c[(e - a.val) as usize].clone())
    }

    pub fn add(&self, a: &Laurent<F::Elem>, b: &Laurent<F::Elem>) -> Laurent<F::Elem> {
        let n = a.abs_prec().min(b.abs_prec());
        let v = a.val.min(b.val);
        if v >= n {
            return self.zero_mod(n);
        }
        let mut c = Vec::with_capacity((n - v) as usize);
        for e in v..n {
            let x = self.coeff(a, e).unwrap();
            let y = self.coeff(b, e).unwrap();
            c.push(self.k.add(&x, &y));
        }
        self.normalize(Laurent { val: v, c })
    }

    pub fn neg(&self, a: &Laurent<F::Elem>) -> Laurent<F::Elem> {
        Laurent { val: a.val, c: a.c.iter().map(|x| self.k.neg(x)).collect() }
    }

    pub fn sub(&self, a: &Laurent<F::Elem>, b: &Laurent<F::Elem>) -> Laurent<F::Elem> {
        self.add(a, &self.neg(b))
    }

    /// a + x for an exact constant x.
    pub fn add_scalar(&self, a: &Laurent<F::Elem>, x: &F::Elem) -> Laurent<F::Elem> {
        if self.k.is_zero(x) {
            return a.clone();
        }
        let n = a.abs_prec();
        if n <= 0 {
            // x lies beyond the known precision of a
            return a.clone();
        }
        let v = a.val.min(0);
        let mut c: Vec<F::Elem> = (v..n).map(|e| self.coeff(a, e).unwrap()).collect();
        let i = (-v) as usize;
        c[i] = self.k.add(&c[i], x);
        self.normalize(Laurent { val: v, c })
    }

    pub fn scale(&self, a: &Laurent<F::Elem>, x: &F::Elem) -> Laurent<F::Elem> {
        if self.k.is_zero(x) {
            // exact zero times a: still only known to the precision of a's support
            return self.zero_mod(i64::MAX / 4);
        }
        Laurent { val: a.val, c: a.c.iter().map(|y| self.k.mul(y, x)).collect() }
    }

    pub fn mul(&self, a: &Laurent<F::Elem>, b: &Laurent<F::Elem>) -> Laurent<F::Elem> {
        if a.c.is_empty() || b.c.is_empty() {
            return self.zero_mod(a.val.saturating_add(b.val));
        }
        let len = a.c.len().min(b.c.len());
        let mut c = vec![self.k.zero(); len];
        for (i, x) in a.c.iter().take(len).enumerate() {
            if self.k.is_zero(x) {
                continue;
            }
            for (j, y) in b.c.iter().take(len - i).enumerate() {
                c[i + j] = self.k.add(&c[i + j], &self.k.mul(x, y));
            }
        }
        self.normalize(Laurent { val: a.val + b.val, c })
    }

    pub fn inv(&self, a: &Laurent<F::Elem>) -> Option<Laurent<F::Elem>> {
        if a.c.is_empty() {
            return None;
        }
        let n = a.c.len();
        let i0 = self.k.inv(&a.c[0])?;
        let mut c: Vec<F::Elem> = Vec::with_capacity(n);
        c.push(i0.clone());
        for m in 1..n {
            let mut acc = self.k.zero();
            for j in 1..=m {
                acc = self.k.add(&acc, &self.k.mul(&a.c[j], &c[m - j]));
            }
            c.push(self.k.neg(&self.k.mul(&acc, &i0)));
        }
        Some(Laurent { val: -a.val, c })
    }

    pub fn div(&self, a: &Laurent<F::Elem>, b: &Laurent<F::Elem>) -> Option<Laurent<F::Elem>> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Laurent<F::Elem>, e: u64) -> Laurent<F::Elem> {
        let mut acc: Option<Laurent<F::Elem>> = None;
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(x) => self.mul(&x, &base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc.unwrap_or_else(|| self.constant(self.k.one(), a.c.len().max(1)))
    }

    /// Evaluate a polynomial with exact coefficients at a series (Horner).
    pub fn eval_poly(&self, coeffs: &[F::Elem], x: &Laurent<F::Elem>, prec: usize) -> Laurent<F::Elem> {
        let prec = prec.max(x.c.len()).max(1);
        let mut acc: Option<Laurent<F::Elem>> = None;
        for c in coeffs.iter().rev() {
            acc = Some(match acc {
                None => self.constant(c.clone(), prec),
                Some(a) => self.add_scalar(&self.mul(&a, x), c),
            });
        }
        acc.unwrap_or_else(|| self.zero_mod(i64::MAX / 4))
    }

    /// Evaluate a polynomial whose coefficients are series (Horner).
    pub fn eval_series_poly(&self, coeffs: &[Laurent<F::Elem>], x: &Laurent<F::Elem>) -> Laurent<F::Elem> {
        let mut acc: Option<Laurent<F::Elem>> = None;
        for c in coeffs.iter().rev() {
            acc = Some(match acc {
                None => c.clone(),
                Some(a) => self.add(&self.mul(&a, x), c),
            });
        }
        acc.unwrap_or_else(|| self.zero_mod(i64::MAX / 4))
    }

    /// Newton lift of a simple root of G(Z) = sum coeffs[j] Z^j with Z(0) = z0,
    /// returning Z to relative precision prec as a power series.
    pub fn newton_root(&self, coeffs: &[Laurent<F::Elem>], z0: &F::Elem, prec: usize) -> Option<Laurent<F::Elem>> {
        let dcoeffs: Vec<Laurent<F::Elem>> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| {
                let s = self.k.from_int(j as i64);
                Laurent { val: c.val, c: c.c.iter().map(|x| self.k.mul(x, &s)).collect() }
            })
            .collect();
        let mut z = self.constant(z0.clone(), prec);
        let mut cur = 1usize;
        loop {
            let g = self.eval_series_poly(coeffs, &z);
            let dg = self.eval_series_poly(&dcoeffs, &z);
            if dg.valuation() != Some(0) {
                return None;
            }
            let step = self.div(&g, &dg)?;
            z = self.sub(&z, &step);
            z = self.truncate_abs(&z, prec as i64);
            if cur >= prec {
                break;
            }
            cur *= 2;
        }
        let g = self.eval_series_poly(coeffs, &z);
        if g.abs_prec() < prec as i64 || g.valuation().is_some_and(|v| v < prec as i64) {
            return None;
        }
        // Z as a power series starting at s^0 with exactly prec coefficients
        let c: Vec<F::Elem> = (0..prec as i64).map(|e| self.coeff(&z, e).unwrap_or_else(|| self.k.zero())).collect();
        Some(Laurent { val: 0, c })
    }

    /// Drop terms at exponents >= n.
    pub fn truncate_abs(&self, a: &Laurent<F::Elem>, n: i64) -> Laurent<F::Elem> {
        if a.abs_prec() <= n {
            return a.clone();
        }
        if a.val >= n {
            return self.zero_mod(n);
        }
        let mut c = a.c.clone();
        c.truncate((n - a.val) as usize);
        self.normalize(Laurent { val: a.val, c })
    }

    pub fn with_rel_prec(&self, a: &Laurent<F::Elem>, prec: usize) -> Laurent<F::Elem> {
        let mut c = a.c.clone();
        c.truncate(prec);
        Laurent { val: a.val, c }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::finite::Gf;
    use crate::exact_algebra::ring::Ring;

    #[test]
    fn scalar_past_precision_keeps_series() {
        let k = Gf::prime(7).unwrap();
        let s = Series::new(k.clone());
        let a = s.from_coeffs(-10, vec![k.one(), k.from_int(2)], 2);
        let b = s.add_scalar(&a, &k.from_int(3));
        assert_eq!(b.valuation(), Some(-10));
        assert_eq!(b.abs_prec(), -8);
    }

    #[test]
    fn inverse_and_newton() {
        let k = Gf::prime(7).unwrap();
        let s = Series::new(k.clone());
        // 1/(1 - s) = 1 + s + s^2 + ...
        let a = s.from_coeffs(0, vec![k.one(), k.from_int(-1)], 6);
        let b = s.inv(&a).unwrap();
        assert!(b.c.iter().all(|x| *x == k.one()));
        // Z^2 - (1 + s) = 0 with Z(0) = 1: sqrt(1 + s)
        let coeffs = vec![s.from_coeffs(0, vec![k.from_int(-1), k.from_int(-1)], 8), s.zero_mod(100), s.constant(k.one(), 8)];
        let z = s.newton_root(&coeffs, &k.one(), 8).unwrap();
        let z2 = s.mul(&z, &z);
        assert_eq!(s.coeff(&z2, 0), Some(k.one()));
        assert_eq!(s.coeff(&z2, 1), Some(k.one()));
        for e in 2..8 {
            assert_eq!(s.coeff(&z2, e), Some(k.zero()));
        }
    }
}
