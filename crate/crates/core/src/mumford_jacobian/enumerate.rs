use std::collections::HashMap;

use num::bigint::BigInt;
use num::{One, Zero};
use rayon::prelude::*;

use super::{HyperellipticCurve, MumfordDivisor};
use crate::error::{Error, Result};
use crate::exact_algebra::factor::{factor_finite_field, GfPoly};
use crate::exact_algebra::{build_extension, compose_tower, Gf, GfElem, PolyRing, Ring, SqrtField};

/// Every reduced divisor of J(F_q), in a fixed order.
#[derive(Clone, Debug)]
pub struct JacobianEnumeration {
    pub elements: Vec<MumfordDivisor<GfElem>>,
    index: HashMap<MumfordDivisor<GfElem>, usize>,
}

impl JacobianEnumeration {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, d: &MumfordDivisor<GfElem>) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// Full addition table as indices, if |J|^2 does not exceed the budget.
    pub fn table(&self, curve: &HyperellipticCurve<Gf>, budget: u64) -> Result<Vec<Vec<usize>>> {
        let n = self.elements.len() as u64;
        if n * n > budget {
            return Err(Error::BudgetExceeded(format!("addition table of size {n}^2")));
        }
        self.elements
            .par_iter()
            .map(|x| {
                self.elements
                    .iter()
                    .map(|y| {
                        let s = curve.cantor_add(x, y)?;
                        self.index_of(&s).ok_or_else(|| Error::InternalConsistency("sum outside the enumeration".into()))
                    })
                    .collect()
            })
            .collect()
    }
}

/// All b mod p^e with b^2 = f mod p^e.
fn local_roots(curve: &HyperellipticCurve<Gf>, p: &GfPoly, e: usize) -> Result<Vec<GfPoly>> {
    let r = &curve.ring;
    let fp = r.rem(&curve.f, p);
    if fp.is_zero() {
        // f is squarefree, so p^2 does not divide f
        return Ok(if e == 1 { vec![r.zero()] } else { vec![] });
    }
    let t = compose_tower(&curve.ring.base, p, 0)?;
    let l = &t.field;
    let rl = PolyRing::new(l.clone());
    let fl = rl.from_coeffs(fp.coeffs().iter().map(|c| t.embed.apply(c)).collect());
    let val = rl.eval(&fl, &t.root);
    let Some(s) = l.sqrt(&val) else { return Ok(vec![]) };
    let mut out = vec![];
    for root in [s.clone(), l.neg(&s)] {
        let mut b = r.from_coeffs(t.to_tower(&root));
        // Hensel: b <- b - (b^2 - f) / (2b) mod p^k
        let mut k = 1;
        while k < e {
            k = (2 * k).min(e);
            let m = r.pow(p, k as u64);
            let num = r.sub(&r.mul(&b, &b), &curve.f);
            let den = r.scale(&b, &r.base.from_int(2));
            let inv = r.inv_mod(&den, &m).ok_or_else(|| Error::InternalConsistency("Hensel step".into()))?;
            b = r.rem(&r.sub(&b, &r.mul(&num, &inv)), &m);
        }
        out.push(b);
    }
    Ok(out)
}

/// CRT combination of residues modulo pairwise coprime moduli.
fn crt(r: &PolyRing<Gf>, parts: &[(GfPoly, GfPoly)]) -> GfPoly {
    let mut acc = r.zero();
    let mut m = r.one();
    for (res, modulus) in parts {
        // acc + m * ((res - acc) * m^{-1} mod modulus)
        let inv = r.inv_mod(&m, modulus).expect("coprime moduli");
        let t = r.rem(&r.mul(&r.sub(res, &acc), &inv), modulus);
        acc = r.add(&acc, &r.mul(&m, &t));
        m = r.mul(&m, modulus);
    }
    r.rem(&acc, &m)
}

fn monic_of_degree(k: &Gf, n: usize, idx: u64) -> GfPoly {
    let q = k.size_u64().unwrap();
    let mut c = Vec::with_capacity(n + 1);
    let mut i = idx;
    for _ in 0..n {
        c.push(k.from_index(i % q));
        i /= q;
    }
    c.push(k.one());
    PolyRing::new(k.clone()).from_coeffs(c)
}

/// Enumerate all reduced divisors: monic a with deg a <= g and every b mod a solving b^2 = f mod a.
pub fn enumerate_jacobian(curve: &HyperellipticCurve<Gf>, budget: u64) -> Result<JacobianEnumeration> {
    let k = curve.field();
    let q = k.size_u64().ok_or_else(|| Error::BudgetExceeded("field too large".into()))?;
    let g = curve.genus;
    let mut total: u64 = 0;
    for i in 0..=g {
        total = total.saturating_add(q.saturating_pow(i as u32));
    }
    if total > budget {
        return Err(Error::BudgetExceeded(format!("{total} candidate a-polynomials exceed budget {budget}")));
    }
    let r = &curve.ring;
    let mut candidates = vec![];
    for n in 0..=g {
        for idx in 0..q.pow(n as u32) {
            candidates.push(monic_of_degree(k, n, idx));
        }
    }
    let per_a: Vec<Vec<MumfordDivisor<GfElem>>> = candidates
        .par_iter()
        .map(|a| -> Result<Vec<MumfordDivisor<GfElem>>> {
            if a.degree() == Some(0) {
                return Ok(vec![curve.identity()]);
            }
            let mut options: Vec<(GfPoly, Vec<GfPoly>)> = vec![];
            for (p, e) in factor_finite_field(r, a, 0)? {
                let m = r.pow(&p, e as u64);
                let roots = local_roots(curve, &p, e)?;
                if roots.is_empty() {
                    return Ok(vec![]);
                }
                options.push((m, roots));
            }
            let mut out = vec![];
            let mut choice = vec![0usize; options.len()];
            loop {
                let parts: Vec<(GfPoly, GfPoly)> = options.iter().zip(&choice).map(|((m, rs), &i)| (rs[i].clone(), m.clone())).collect();
                let b = crt(r, &parts);
                out.push(MumfordDivisor { a: a.clone(), b });
                let mut j = 0;
                loop {
                    if j == options.len() {
                        out.sort();
                        return Ok(out);
                    }
                    choice[j] += 1;
                    if choice[j] < options[j].1.len() {
                        break;
                    }
                    choice[j] = 0;
                    j += 1;
                }
            }
        })
        .collect::<Result<_>>()?;
    let elements: Vec<_> = per_a.into_iter().flatten().collect();
    for d in &elements {
        if !curve.is_valid(d) {
            return Err(Error::InternalConsistency("enumerated divisor fails validation".into()));
        }
    }
    let index = elements.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
    Ok(JacobianEnumeration { elements, index })
}

/// #C(F_{q^m}) for the smooth model: affine points plus the single point at infinity.
pub fn count_points(curve: &HyperellipticCurve<Gf>, m: usize, budget: u64) -> Result<u64> {
    let k = curve.field();
    let q = k.size_u64().ok_or_else(|| Error::BudgetExceeded("field too large".into()))?;
    let size = q.checked_pow(m as u32).filter(|&s| s <= budget).ok_or_else(|| Error::BudgetExceeded(format!("F_{{{q}^{m}}} exceeds budget")))?;
    let t = build_extension(k, m, 0)?;
    let l = &t.field;
    let rl = PolyRing::new(l.clone());
    let fl = rl.from_coeffs(curve.f.coeffs().iter().map(|c| t.embed.apply(c)).collect());
    let count: u64 = (0..size)
        .into_par_iter()
        .map(|i| {
            let v = rl.eval(&fl, &l.from_index(i));
            if l.is_zero(&v) {
                1
            } else if l.is_square(&v) {
                2
            } else {
                0
            }
        })
        .sum();
    Ok(count + 1)
}

/// L(T) = sum a_i T^i with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    pub coeffs: Vec<BigInt>,
}

impl LPolynomial {
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |a, c| a + c)
    }
}

/// L-polynomial of a genus-g curve over F_q from #C(F_{q^i}), i = 1..g.
pub fn l_polynomial_from_counts(q: u64, g: usize, counts: &[u64]) -> Result<LPolynomial> {
    if counts.len() < g {
        return Err(Error::InvalidInput("need g point counts".into()));
    }
    let qb = BigInt::from(q);
    // power sums of the Frobenius eigenvalues
    let s: Vec<BigInt> = (1..=g).map(|i| qb.pow(i as u32) + 1 - BigInt::from(counts[i - 1])).collect();
    // elementary symmetric functions via Newton's identities
    let mut e = vec![BigInt::one()];
    for kk in 1..=g {
        let mut acc = BigInt::zero();
        for i in 1..=kk {
            let term = &e[kk - i] * &s[i - 1];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        if (&acc % BigInt::from(kk as u64)) != BigInt::zero() {
            return Err(Error::InternalConsistency("Newton identity not integral".into()));
        }
        e.push(acc / BigInt::from(kk as u64));
    }
    let mut a = vec![BigInt::zero(); 2 * g + 1];
    for (kk, ek) in e.iter().enumerate() {
        a[kk] = if kk % 2 == 0 { ek.clone() } else { -ek.clone() };
    }
    for kk in 0..g {
        a[2 * g - kk] = qb.pow((g - kk) as u32) * &a[kk];
    }
    Ok(LPolynomial { coeffs: a })
}

pub fn zeta_l_polynomial(curve: &HyperellipticCurve<Gf>, budget: u64) -> Result<LPolynomial> {
    let q = curve.field().size_u64().ok_or_else(|| Error::BudgetExceeded("field too large".into()))?;
    let counts: Vec<u64> = (1..=curve.genus).map(|m| count_points(curve, m, budget)).collect::<Result<_>>()?;
    l_polynomial_from_counts(q, curve.genus, &counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_and_two_counts() {
        let k = Gf::prime(5).unwrap();
        let r = PolyRing::new(k.clone());
        let e = HyperellipticCurve::new(k.clone(), r.from_ints(&[1, 0, 0, 1])).unwrap();
        let j = enumerate_jacobian(&e, 1_000_000).unwrap();
        assert_eq!(j.order(), 6);
        assert_eq!(zeta_l_polynomial(&e, 1_000_000).unwrap().at_one(), BigInt::from(6));
        assert_eq!(l_polynomial_from_counts(5, 0, &[]).unwrap().coeffs, vec![BigInt::one()]);

        let k7 = Gf::prime(7).unwrap();
        let r7 = PolyRing::new(k7.clone());
        let c = HyperellipticCurve::new(k7, r7.from_ints(&[2, 0, 0, 0, 0, 1])).unwrap();
        let j = enumerate_jacobian(&c, 1_000_000).unwrap();
        let l = zeta_l_polynomial(&c, 1_000_000).unwrap();
        assert_eq!(BigInt::from(j.order()), l.at_one());
        let tab = j.table(&c, 10_000_000).unwrap();
        for (i, row) in tab.iter().enumerate() {
            assert_eq!(row[0], i);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let k = Gf::prime(61).unwrap();
        let r = PolyRing::new(k.clone());
        let c = HyperellipticCurve::new(k, r.from_ints(&[2, 0, 0, 0, 0, 1])).unwrap();
        assert!(matches!(enumerate_jacobian(&c, 100), Err(Error::BudgetExceeded(_))));
    }
}
