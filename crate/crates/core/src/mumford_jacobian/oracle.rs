use rayon::prelude::*;
use serde::Serialize;

use super::{HyperellipticCurve, JacobianEnumeration, MumfordDivisor};
use crate::curves_places::{is_principal, principal_divisor, Curve, Divisor};
use crate::error::{Error, Result};
use crate::exact_algebra::{Gf, GfElem, Ring};

/// The place divisor of (a, b): at each finite place, min(v(a), v(y - b)), minus deg(a) inf.
pub fn mumford_to_divisor(curve: &Curve, d: &MumfordDivisor<GfElem>) -> Result<Divisor> {
    let inf = curve.infinite_places();
    if inf.len() != 1 {
        return Err(Error::UnsupportedCurve("expected one place at infinity".into()));
    }
    let mut out = Divisor::from_place(&inf[0], -(d.a.degree().unwrap_or(0) as i64));
    if d.a.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let r = curve.upoly();
    let da = principal_divisor(curve, &curve.fn_u_poly(&d.a))?;
    let db = principal_divisor(curve, &curve.fn_linear(&r.neg(&d.b), &r.one()))?;
    for (p, n) in da.iter() {
        if p.is_infinite() || n <= 0 {
            continue;
        }
        let m = n.min(db.coeff(&p.key).max(0));
        out.add_term(p, m);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub pairs_checked: usize,
    /// (i, j, table[i][j]) where D_i + D_j - D_k is not principal
    pub mismatches: Vec<(usize, usize, usize)>,
}

/// Checks every entry of an addition table against Riemann-Roch on free divisors.
pub fn free_divisor_check(jac: &HyperellipticCurve<Gf>, en: &JacobianEnumeration, table: &[Vec<usize>]) -> Result<OracleReport> {
    let curve = Curve::hyperelliptic(jac.field(), jac.f.clone())?;
    let divs: Vec<Divisor> = en.elements.iter().map(|d| mumford_to_divisor(&curve, d)).collect::<Result<_>>()?;
    if divs.iter().any(|d| d.degree() != 0) {
        return Err(Error::InternalConsistency("Mumford divisor of nonzero degree".into()));
    }
    let n = divs.len();
    if table.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("table does not match the enumeration".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let bad: Vec<Option<(usize, usize, usize)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let k = table[i][j];
            let d = divs[i].add(&divs[j]).sub(&divs[k]);
            Ok(is_principal(&curve, &d)?.is_none().then_some((i, j, k)))
        })
        .collect::<Result<_>>()?;
    Ok(OracleReport { pairs_checked: pairs.len(), mismatches: bad.into_iter().flatten().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::PolyRing;
    use crate::mumford_jacobian::enumerate_jacobian;

    #[test]
    fn small_table_matches() {
        let k = Gf::prime(5).unwrap();
        let r = PolyRing::new(k.clone());
        let c = HyperellipticCurve::new(k, r.from_ints(&[1, 1, 0, 0, 0, 1])).unwrap();
        let en = enumerate_jacobian(&c, 1_000_000).unwrap();
        let mut tab = en.table(&c, 1_000_000).unwrap();
        let rep = free_divisor_check(&c, &en, &tab).unwrap();
        assert!(rep.mismatches.is_empty());
        // corrupt one entry
        tab[1][2] = tab[1][3];
        let rep = free_divisor_check(&c, &en, &tab).unwrap();
        assert_eq!(rep.mismatches.len(), 1);
    }
}
