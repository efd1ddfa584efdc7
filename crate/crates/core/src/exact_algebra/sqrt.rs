use super::poly::{Poly, PolyRing};
use super::ring::{Ring, SqrtField};
use crate::error::{Error, Result};

/// Square root of a polynomial: Ok(Some(s)) with s^2 = h, Ok(None) when h is not a square.
/// The root's leading coefficient is the field's canonical root of lc(h).
pub fn formal_square_root<F: SqrtField>(ring: &PolyRing<F>, h: &Poly<F::Elem>) -> Result<Option<Poly<F::Elem>>> {
    let k = &ring.base;
    if k.characteristic() == 2 {
        return Err(Error::UnsupportedField("square roots need odd characteristic".into()));
    }
    let Some(d) = h.degree() else {
        return Err(Error::DegenerateInput("square root of the zero polynomial".into()));
    };
    if d % 2 == 1 {
        return Ok(None);
    }
    let m = d / 2;
    let Some(s_m) = k.sqrt(h.lc().unwrap()) else { return Ok(None) };
    let two_sm_inv = k.inv(&k.add(&s_m, &s_m)).unwrap();
    // s[m - i] stored at rev[i]
    let mut rev = vec![s_m];
    for kk in 1..=m {
        let mut acc = ring.coeff(h, d - kk);
        for i in 1..kk {
            acc = k.sub(&acc, &k.mul(&rev[i], &rev[kk - i]));
        }
        rev.push(k.mul(&acc, &two_sm_inv));
    }
    rev.reverse();
    let s = ring.from_coeffs(rev);
    if ring.mul(&s, &s) == *h {
        Ok(Some(s))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::finite::Gf;

    #[test]
    fn examples() {
        let r = PolyRing::new(Gf::prime(7).unwrap());
        assert_eq!(formal_square_root(&r, &r.from_ints(&[1, 2, 1])).unwrap(), Some(r.from_ints(&[1, 1])));
        assert_eq!(formal_square_root(&r, &r.from_ints(&[0, 1, 1])).unwrap(), None);
        assert_eq!(
            formal_square_root(&r, &r.from_ints(&[1, 0, 0, 2, 0, 0, 1])).unwrap(),
            Some(r.from_ints(&[1, 0, 0, 1]))
        );
        let r3 = PolyRing::new(Gf::prime(3).unwrap());
        assert!(formal_square_root(&r3, &r3.from_ints(&[1])).unwrap().is_some());
        assert!(formal_square_root(&r, &r.zero()).is_err());
    }
}
