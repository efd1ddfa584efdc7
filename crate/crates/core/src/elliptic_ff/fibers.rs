use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::factor::{factor_finite_field, GfPoly};
use crate::exact_algebra::rationals::{q, Q};
use crate::exact_algebra::PolyRing;
use crate::exact_algebra::Gf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum KodairaType {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

/// A singular fiber: the base place (None for infinity), its degree and type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDatum {
    pub place: Option<GfPoly>,
    pub degree: usize,
    pub kind: KodairaType,
}

/// Local height contribution for sections meeting components i and j (0 = identity component).
/// I_n components are numbered cyclically; for I_n^* component 1 is the near one.
pub fn contribution(kind: KodairaType, i: u32, j: u32) -> Result<Q> {
    if i == 0 || j == 0 {
        return Ok(Q::zero());
    }
    let bad = || Error::InvalidInput(format!("component {i} or {j} out of range for {kind:?}"));
    let (i, j) = (i.min(j), i.max(j));
    match kind {
        KodairaType::I0 | KodairaType::II | KodairaType::IIStar => Err(bad()),
        KodairaType::In(n) => {
            if j >= n {
                return Err(bad());
            }
            Ok(q((i * (n - j)) as i64, n as i64))
        }
        KodairaType::III => {
            if j > 1 {
                return Err(bad());
            }
            Ok(q(1, 2))
        }
        KodairaType::IIIStar => {
            if j > 1 {
                return Err(bad());
            }
            Ok(q(3, 2))
        }
        KodairaType::IV => match j {
            1 | 2 => Ok(if i == j { q(2, 3) } else { q(1, 3) }),
            _ => Err(bad()),
        },
        KodairaType::IVStar => match j {
            1 | 2 => Ok(if i == j { q(4, 3) } else { q(2, 3) }),
            _ => Err(bad()),
        },
        KodairaType::I0Star => match j {
            1..=3 => Ok(if i == j { Q::one() } else { q(1, 2) }),
            _ => Err(bad()),
        },
        KodairaType::InStar(n) => {
            let n = n as i64;
            match (i, j) {
                (1, 1) => Ok(Q::one()),
                (1, 2) | (1, 3) => Ok(q(1, 2)),
                (2, 2) | (3, 3) => Ok(q(4 + n, 4)),
                (2, 3) => Ok(q(2 + n, 4)),
                _ => Err(bad()),
            }
        }
    }
}

/// Type of the fiber of y^2 = x^3 + c at a place where c has valuation n.
fn j_zero_type(n: usize) -> Result<KodairaType> {
    Ok(match n {
        0 => KodairaType::I0,
        1 => KodairaType::II,
        2 => KodairaType::IV,
        3 => KodairaType::I0Star,
        4 => KodairaType::IVStar,
        5 => KodairaType::IIStar,
        _ => return Err(Error::UnsupportedCurve("non-minimal model".into())),
    })
}

/// Singular fibers of y^2 = x^3 + c(t) on a rational surface (deg c <= 6), read off the valuations of c.
pub fn j_zero_fibers(k: &Gf, c: &GfPoly) -> Result<Vec<FiberDatum>> {
    let r = PolyRing::new(k.clone());
    let deg = c.degree().ok_or_else(|| Error::DegenerateInput("zero coefficient".into()))?;
    if deg > 6 {
        return Err(Error::UnsupportedCurve("surface is not rational".into()));
    }
    let mut out = vec![];
    if deg > 0 {
        for (pi, e) in factor_finite_field(&r, c, 0)? {
            let kind = j_zero_type(e)?;
            out.push(FiberDatum { degree: pi.degree().unwrap(), place: Some(pi), kind });
        }
    }
    let kind = j_zero_type(6 - deg)?;
    if kind != KodairaType::I0 {
        out.push(FiberDatum { place: None, degree: 1, kind });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::Ring;

    #[test]
    fn table_values() {
        assert_eq!(contribution(KodairaType::IV, 1, 1).unwrap(), q(2, 3));
        assert_eq!(contribution(KodairaType::IV, 1, 2).unwrap(), q(1, 3));
        assert_eq!(contribution(KodairaType::I0Star, 2, 2).unwrap(), Q::one());
        assert_eq!(contribution(KodairaType::In(5), 2, 3).unwrap(), q(4, 5));
        assert_eq!(contribution(KodairaType::InStar(2), 2, 2).unwrap(), q(3, 2));
        assert_eq!(contribution(KodairaType::IIIStar, 1, 1).unwrap(), q(3, 2));
        assert_eq!(contribution(KodairaType::II, 0, 0).unwrap(), Q::zero());
        assert!(contribution(KodairaType::II, 1, 1).is_err());
    }

    #[test]
    fn d6_fibers() {
        let k = Gf::prime(67).unwrap();
        let r = PolyRing::new(k.clone());
        let g = r.from_ints(&[12, 2, 0, 1]);
        let f1 = j_zero_fibers(&k, &g).unwrap();
        assert!(f1.iter().any(|f| f.place.is_none() && f.kind == KodairaType::I0Star));
        assert!(f1.iter().filter(|f| f.place.is_some()).all(|f| f.kind == KodairaType::II));
        let f2 = j_zero_fibers(&k, &r.mul(&g, &g)).unwrap();
        assert_eq!(f2.iter().map(|f| f.degree).sum::<usize>(), 3);
        assert!(f2.iter().all(|f| f.kind == KodairaType::IV));
    }
}
