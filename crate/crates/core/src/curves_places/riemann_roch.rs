use std::collections::BTreeMap;

use super::valuation::poly_divisor;
use super::{BiPoly, Curve, CurveFn, Divisor, PlaceKey, QPicClass};
use crate::error::{Error, Result};
use crate::exact_algebra::factor::GfPoly;
use crate::exact_algebra::linalg::{fp_kernel, rref};
use crate::exact_algebra::{Gf, GfElem, Laurent, Ring, Series};

/// A K-basis of L(D) = { h : div(h) + D >= 0 }, each element G / Q with G polynomial.
#[derive(Clone, Debug)]
pub struct RrSpace {
    pub basis: Vec<CurveFn>,
    /// number of monomials in the spanning set that was searched
    pub monomials: usize,
}

impl RrSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Coordinates of a field element over F_p.
fn coords(k: &Gf, a: &GfElem) -> Vec<u64> {
    let n = k.degree();
    (0..n).map(|i| a.get(i).copied().unwrap_or(0)).collect()
}

pub fn riemann_roch_space(curve: &Curve, d: &Divisor) -> Result<RrSpace> {
    for (p, _) in d.iter() {
        if p.curve != curve.fingerprint() {
            return Err(Error::CurveMismatch("divisor place from another curve".into()));
        }
    }
    if d.degree() < 0 {
        return Ok(RrSpace { basis: vec![], monomials: 0 });
    }
    let k = curve.field();
    let r = curve.upoly();
    let nk = k.degree();
    let p = k.p();

    // denominators: Q = prod p^e_p over the affine primes under supp D
    let mut primes: BTreeMap<GfPoly, Vec<(PlaceKey, i64)>> = BTreeMap::new();
    for (pl, n) in d.iter() {
        if let PlaceKey::Affine { p, .. } = &pl.key {
            primes.entry(p.clone()).or_default().push((pl.key.clone(), n));
        }
    }
    let mut qpoly = r.one();
    // (place, lower bound on v_P(G))
    let mut conditions = vec![];
    for (pp, _) in primes.iter() {
        let over = curve.places_over(pp)?;
        let pp_bi = curve.bi().constant(pp.clone());
        let mut ram = vec![];
        let mut e_p = 0i64;
        for pl in &over {
            let e = curve.valuation_poly(pl, &pp_bi)?;
            let dp = d.coeff(&pl.key);
            e_p = e_p.max(dp.div_euclid(e) + i64::from(dp.rem_euclid(e) != 0));
            ram.push(e);
        }
        qpoly = r.mul(&qpoly, &r.pow(pp, e_p as u64));
        for (pl, e) in over.into_iter().zip(ram) {
            let bound = e_p * e - d.coeff(&pl.key);
            conditions.push((pl, bound));
        }
    }
    let deg_q = qpoly.degree().unwrap() as i64;
    let infs = curve.infinite_places();
    let mut bmax = i64::MIN;
    for (j, pl) in infs.iter().enumerate() {
        let (pu, _) = curve.poles_at_infinity(j);
        let b = deg_q * pu + d.coeff(&pl.key);
        bmax = bmax.max(b);
        conditions.push((pl.clone(), -b));
    }
    // spanning monomials u^a v^b with pole order at most bmax everywhere at infinity
    let nv = curve.deg_v();
    let mut monos = vec![];
    if bmax >= 0 {
        for b in 0..nv {
            let mut a = 0i64;
            loop {
                let ord = (0..infs.len())
                    .map(|j| {
                        let (pu, pv) = curve.poles_at_infinity(j);
                        a * pu + b as i64 * pv
                    })
                    .max()
                    .unwrap();
                if ord > bmax {
                    break;
                }
                monos.push((a as usize, b));
                a += 1;
            }
        }
    }
    if monos.is_empty() {
        return Ok(RrSpace { basis: vec![], monomials: 0 });
    }
    let ncols = monos.len() * nk;
    let mut rows: Vec<Vec<u64>> = vec![];
    let basis_k: Vec<GfElem> = (0..nk).map(|i| k.from_coords(&(0..nk).map(|j| (i == j) as u64).collect::<Vec<_>>())).collect();
    for (pl, bound) in &conditions {
        let l = &pl.field;
        let s = Series::new(l.clone());
        let min_val = monos
            .iter()
            .map(|&(a, b)| if pl.is_infinite() { let j = infs.iter().position(|x| x.key == pl.key).unwrap(); let (pu, pv) = curve.poles_at_infinity(j); -(a as i64 * pu + b as i64 * pv) } else { 0 })
            .min()
            .unwrap();
        if min_val >= *bound {
            continue;
        }
        let need = (*bound - min_val) as usize + 2;
        let ser = monomial_series(curve, pl, &monos, need)?;
        let emb: Vec<GfElem> = basis_k.iter().map(|e| pl.embed.apply(e)).collect();
        let nl = l.degree();
        for e in min_val..*bound {
            let mut block = vec![vec![0u64; ncols]; nl];
            for (mi, sm) in ser.iter().enumerate() {
                let c = s.coeff(sm, e).ok_or_else(|| Error::InternalConsistency("insufficient series precision".into()))?;
                if l.is_zero(&c) {
                    continue;
                }
                for (i, ei) in emb.iter().enumerate() {
                    let prod = coords(l, &l.mul(ei, &c));
                    for (row, x) in block.iter_mut().zip(prod) {
                        row[mi * nk + i] = x;
                    }
                }
            }
            rows.extend(block.into_iter().filter(|r| r.iter().any(|&x| x != 0)));
        }
    }
    let ker = fp_kernel(rows, ncols, p);
    // K-basis from the F_p kernel
    let mut kvecs: Vec<Vec<GfElem>> = ker
        .iter()
        .map(|v| (0..monos.len()).map(|m| k.from_coords(&v[m * nk..(m + 1) * nk])).collect())
        .collect();
    let piv = rref(k, &mut kvecs);
    kvecs.truncate(piv.len());
    if kvecs.len() * nk != ker.len() {
        return Err(Error::InternalConsistency("kernel is not a K-subspace".into()));
    }
    let bi = curve.bi();
    let den = bi.constant(qpoly.clone());
    let basis = kvecs
        .into_iter()
        .map(|v| {
            let mut g: BiPoly = bi.zero();
            for (c, &(a, b)) in v.iter().zip(&monos) {
                if !k.is_zero(c) {
                    g = bi.add(&g, &bi.monomial(r.monomial(c.clone(), a), b));
                }
            }
            CurveFn { num: g, den: den.clone() }
        })
        .collect();
    Ok(RrSpace { basis, monomials: monos.len() })
}

/// Series of u^a v^b at a place with absolute precision reaching the first `need` exponents above the minimum.
fn monomial_series(curve: &Curve, pl: &super::Place, monos: &[(usize, usize)], need: usize) -> Result<Vec<Laurent<GfElem>>> {
    let s = Series::new(pl.field.clone());
    let mut prec = need + 4;
    loop {
        let e = curve.expansion(pl, prec)?;
        let amax = monos.iter().map(|m| m.0).max().unwrap();
        let bmax = monos.iter().map(|m| m.1).max().unwrap();
        let mut up = vec![s.constant(pl.field.one(), prec)];
        for _ in 0..amax {
            up.push(s.mul(up.last().unwrap(), &s.with_rel_prec(&e.u, prec)));
        }
        let mut vp = vec![s.constant(pl.field.one(), prec)];
        if bmax > 0 {
            let v = e.v.as_ref().unwrap();
            for _ in 0..bmax {
                vp.push(s.mul(vp.last().unwrap(), &s.with_rel_prec(v, prec)));
            }
        }
        let out: Vec<_> = monos.iter().map(|&(a, b)| s.mul(&up[a], &vp[b])).collect();
        let min_val = out.iter().map(|x| x.val).min().unwrap();
        if out.iter().all(|x| x.abs_prec() >= min_val + need as i64) {
            return Ok(out);
        }
        prec *= 2;
        if prec > 1 << 14 {
            return Err(Error::InternalConsistency("monomial series precision".into()));
        }
    }
}

pub fn riemann_roch_dim(curve: &Curve, d: &Divisor) -> Result<usize> {
    Ok(riemann_roch_space(curve, d)?.dim())
}

/// A function h with div(h) = D, if D is principal.
pub fn is_principal(curve: &Curve, d: &Divisor) -> Result<Option<CurveFn>> {
    if d.degree() != 0 {
        return Ok(None);
    }
    let sp = riemann_roch_space(curve, &d.neg())?;
    let Some(h) = sp.basis.into_iter().next() else { return Ok(None) };
    let got = poly_divisor(curve, &h.num)?.sub(&poly_divisor(curve, &h.den)?);
    if got != *d {
        return Err(Error::InternalConsistency("L(-D) element does not have divisor D".into()));
    }
    Ok(Some(h))
}

/// Outcome of a class comparison, with the certificate when the classes agree.
#[derive(Clone, Debug)]
pub struct ClassEquality {
    pub equal: bool,
    pub certificate: Option<CurveFn>,
}

/// Equality in Pic(Y, Q.Sigma): the difference must be the divisor of a function.
pub fn class_equal(c1: &QPicClass, c2: &QPicClass) -> Result<ClassEquality> {
    c1.check_same(c2)?;
    let diff = c1.rep.sub(&c2.rep);
    let Some(d) = diff.to_integral() else { return Ok(ClassEquality { equal: false, certificate: None }) };
    let cert = is_principal(&c1.curve, &d)?;
    Ok(ClassEquality { equal: cert.is_some(), certificate: cert })
}

