//! Resultants. Convention: determinant of the Sylvester matrix whose first
//! deg(b) rows carry the coefficients of a, so Res(a, b) = lc(a)^deg(b) * prod b(alpha).

use super::linalg::{det_bareiss, Matrix};
use super::poly::{Poly, PolyRing};
use super::ring::{Field, Ring};
use crate::error::{Error, Result};

/// Sylvester matrix of a and b taken with formal degrees da >= deg a, db >= deg b.
pub fn sylvester<R: Ring>(r: &PolyRing<R>, a: &Poly<R::Elem>, b: &Poly<R::Elem>, da: usize, db: usize) -> Matrix<R::Elem> {
    let n = da + db;
    let k = &r.base;
    let mut m = vec![vec![k.zero(); n]; n];
    for i in 0..db {
        for j in 0..=da {
            m[i][i + j] = r.coeff(a, da - j);
        }
    }
    for i in 0..da {
        for j in 0..=db {
            m[db + i][i + j] = r.coeff(b, db - j);
        }
    }
    m
}

/// Resultant with formal degrees; commutes with specialization of the coefficient ring.
pub fn resultant_formal<R: Ring>(r: &PolyRing<R>, a: &Poly<R::Elem>, b: &Poly<R::Elem>, da: usize, db: usize) -> R::Elem {
    if da == 0 && db == 0 {
        return r.base.one();
    }
    det_bareiss(&r.base, &sylvester(r, a, b, da, db))
}

/// Resultant over any integral domain with exact division (Bareiss on the Sylvester matrix).
pub fn resultant<R: Ring>(r: &PolyRing<R>, a: &Poly<R::Elem>, b: &Poly<R::Elem>) -> Result<R::Elem> {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Err(Error::DegenerateInput("resultant of a zero polynomial".into()));
    };
    Ok(resultant_formal(r, a, b, da, db))
}

/// Euclidean resultant over a field; same convention as `resultant`.
pub fn resultant_field<F: Field>(r: &PolyRing<F>, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Result<F::Elem> {
    let k = &r.base;
    let (Some(_), Some(_)) = (a.degree(), b.degree()) else {
        return Err(Error::DegenerateInput("resultant of a zero polynomial".into()));
    };
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = k.one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        if db == 0 {
            return Ok(k.mul(&acc, &k.pow(&b.coeffs()[0], da as u64)));
        }
        let rem = r.rem(&a, &b);
        let Some(dr) = rem.degree() else { return Ok(k.zero()) };
        if (da * db) % 2 == 1 {
            acc = k.neg(&acc);
        }
        acc = k.mul(&acc, &k.pow(b.lc().unwrap(), (da - dr) as u64));
        a = b;
        b = rem;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::finite::Gf;
    use crate::exact_algebra::ratfunc::RatFuncs;
    use crate::exact_algebra::rationals::{qi, Rationals};

    #[test]
    fn examples() {
        let r = PolyRing::new(Rationals);
        let a = r.from_ints(&[1, 0, 1]);
        let b = r.from_ints(&[-2, 1]);
        assert_eq!(resultant(&r, &a, &b).unwrap(), qi(5));
        assert_eq!(resultant_field(&r, &a, &b).unwrap(), qi(5));
        assert_eq!(resultant(&r, &a, &a).unwrap(), qi(0));
        assert!(resultant(&r, &a, &r.zero()).is_err());

        let k = RatFuncs::new(Gf::prime(7).unwrap());
        let rx = PolyRing::new(k.clone());
        let t = k.t();
        let f = rx.from_coeffs(vec![k.neg(&t), k.zero(), k.one()]);
        let g = rx.from_coeffs(vec![k.from_int(-3), k.one()]);
        let expect = k.sub(&k.from_int(2), &t);
        assert_eq!(resultant(&rx, &f, &g).unwrap(), expect);
        assert_eq!(resultant_field(&rx, &f, &g).unwrap(), expect);
    }

    #[test]
    fn euclid_matches_sylvester() {
        let r = PolyRing::new(Rationals);
        let a = r.from_ints(&[3, -1, 4, 1, -5]);
        let b = r.from_ints(&[2, 7, 0, 3]);
        assert_eq!(resultant(&r, &a, &b).unwrap(), resultant_field(&r, &a, &b).unwrap());
        assert_eq!(resultant(&r, &b, &a).unwrap(), resultant_field(&r, &b, &a).unwrap());
    }
}
