use std::collections::BTreeSet;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::factor::{factor_finite_field, GfPoly};
use crate::exact_algebra::resultant::{resultant, resultant_formal};
use crate::exact_algebra::{build_extension, compose_tower, formal_square_root, Gf, GfElem, GfEmbedding, Poly, PolyRing, Ring};

/// The surface y^2 = g(t) + x^d over k(x), d in {5, 6}, g a squarefree cubic.
#[derive(Clone, Debug)]
pub struct SectionSurface {
    pub field: Gf,
    pub d: usize,
    pub g: GfPoly,
}

/// A section (t(x), y(x)) with deg t <= 2, deg y <= 3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Section {
    pub t: GfPoly,
    pub y: GfPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Scan,
    Eliminate,
    Both,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scan" => Ok(Strategy::Scan),
            "eliminate" => Ok(Strategy::Eliminate),
            "both" => Ok(Strategy::Both),
            _ => Err(Error::InvalidInput(format!("unknown strategy {s}"))),
        }
    }
}

/// One Galois orbit of solutions (alpha, beta, gamma) found by elimination.
#[derive(Clone, Debug)]
pub struct Solution {
    /// field generated by the coordinates
    pub field: Gf,
    pub alpha: GfElem,
    pub beta: GfElem,
    pub gamma: GfElem,
    /// [field : base]
    pub orbit: usize,
}

#[derive(Clone, Debug)]
pub struct EliminationReport {
    pub eliminant_degree: usize,
    pub factor_degrees: Vec<usize>,
    pub orbits: Vec<Solution>,
    /// sum over orbits of 2 * orbit size
    pub geometric_sections: usize,
    /// false when some factor exceeded the tower bound
    pub complete: bool,
}

#[derive(Clone, Debug)]
pub struct SectionSearch {
    pub field: Gf,
    /// sections defined over the base field, sorted
    pub sections: Vec<Section>,
    pub elimination: Option<EliminationReport>,
}

impl SectionSearch {
    /// Count over the algebraic closure when elimination ran to completion.
    pub fn geometric_count(&self) -> Option<usize> {
        self.elimination.as_ref().filter(|e| e.complete).map(|e| e.geometric_sections)
    }
}

impl SectionSurface {
    pub fn new(field: Gf, d: usize, g: GfPoly) -> Result<Self> {
        if d != 5 && d != 6 {
            return Err(Error::UnsupportedCurve(format!("surface exponent {d}")));
        }
        let p = field.p();
        if p == 2 || p == 3 || (d == 5 && p == 5) {
            return Err(Error::UnsupportedField(format!("characteristic {p}")));
        }
        let r = PolyRing::new(field.clone());
        if g.degree() != Some(3) {
            return Err(Error::DegenerateInput("g must be a cubic".into()));
        }
        if r.gcd(&g, &r.derivative(&g)).degree() != Some(0) {
            return Err(Error::DegenerateInput("g is not squarefree".into()));
        }
        Ok(SectionSurface { field, d, g })
    }

    pub fn ring(&self) -> PolyRing<Gf> {
        PolyRing::new(self.field.clone())
    }

    /// g(t(x)) + x^d over an extension reached by `emb`.
    pub fn rhs_over(&self, emb: &GfEmbedding, t: &GfPoly) -> GfPoly {
        let l = PolyRing::new(emb_dst(emb));
        let mut acc = l.zero();
        for c in self.g.coeffs().iter().rev() {
            acc = l.add(&l.mul(&acc, t), &l.constant(emb.apply(c)));
        }
        l.add(&acc, &l.monomial(l.base.one(), self.d))
    }

    pub fn rhs(&self, t: &GfPoly) -> GfPoly {
        self.rhs_over(&GfEmbedding::identity(&self.field), t)
    }

    pub fn is_section(&self, s: &Section) -> bool {
        let r = self.ring();
        s.t.deg_i() <= 2 && s.y.deg_i() <= 3 && r.mul(&s.y, &s.y) == self.rhs(&s.t)
    }

    /// Sections with t = (alpha, beta, gamma) over the base field.
    fn sections_for(&self, r: &PolyRing<Gf>, t: GfPoly) -> Vec<Section> {
        let h = self.rhs(&t);
        if h.is_zero() {
            return vec![Section { t, y: r.zero() }];
        }
        match formal_square_root(r, &h) {
            Ok(Some(y)) => {
                let ny = r.neg(&y);
                if ny == y {
                    vec![Section { t, y }]
                } else {
                    vec![Section { t: t.clone(), y }, Section { t, y: ny }]
                }
            }
            _ => vec![],
        }
    }

    /// Exhaustive search over the q^3 candidates t(x).
    pub fn scan(&self, budget: u64) -> Result<Vec<Section>> {
        let q = self.field.size_u64().ok_or_else(|| Error::BudgetExceeded("field too large to scan".into()))?;
        let total = q.checked_pow(3).ok_or_else(|| Error::BudgetExceeded("scan size overflows".into()))?;
        if total > budget {
            return Err(Error::BudgetExceeded(format!("scan of {total} candidates exceeds budget {budget}")));
        }
        let r = self.ring();
        let k = &self.field;
        let mut out: Vec<Section> = (0..q)
            .into_par_iter()
            .flat_map_iter(|ia| {
                let a = k.from_index(ia);
                let mut local = vec![];
                for ib in 0..q {
                    let b = k.from_index(ib);
                    for ic in 0..q {
                        let t = r.from_coeffs(vec![k.from_index(ic), b.clone(), a.clone()]);
                        local.extend(self.sections_for(&r, t));
                    }
                }
                local
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

fn emb_dst(e: &GfEmbedding) -> Gf {
    e.dst().clone()
}

// K[alpha], K[alpha][beta], K[alpha][beta][gamma]
type R1 = PolyRing<Gf>;
type R2 = PolyRing<R1>;
type R3 = PolyRing<R2>;
type E3 = Poly<Poly<GfPoly>>;

struct Eliminants {
    ka: R1,
    kb: R2,
    kc: R3,
    /// coefficients H_0..H_6 of g(t(x)) + x^d
    h: Vec<E3>,
    e2: E3,
    e1: E3,
    e0: E3,
}

fn eliminants(s: &SectionSurface) -> Eliminants {
    let k = s.field.clone();
    let ka = PolyRing::new(k.clone());
    let kb = PolyRing::new(ka.clone());
    let kc = PolyRing::new(kb.clone());
    let kx = PolyRing::new(kc.clone());
    let alpha = kc.constant(kb.constant(ka.x()));
    let beta = kc.constant(kb.x());
    let gamma = kc.x();
    let lift = |c: &GfElem| kc.constant(kb.constant(ka.constant(c.clone())));
    let t = kx.from_coeffs(vec![gamma, beta, alpha]);
    let mut h = kx.zero();
    for c in s.g.coeffs().iter().rev() {
        h = kx.add(&kx.mul(&h, &t), &kx.constant(lift(c)));
    }
    h = kx.add(&h, &kx.monomial(kc.one(), s.d));
    let hs: Vec<E3> = (0..=6).map(|i| kx.coeff(&h, i)).collect();
    let c = |n: i64| kc.from_int(n);
    let m = |a: &E3, b: &E3| kc.mul(a, b);
    let (hh, h5, h4, h3, h2, h1, h0) = (&hs[6], &hs[5], &hs[4], &hs[3], &hs[2], &hs[1], &hs[0]);
    let m1 = kc.sub(&m(&c(4), &m(hh, h4)), &m(h5, h5));
    let m0 = kc.sub(&m(&c(8), &m(&m(hh, hh), h3)), &m(h5, &m1));
    let hp = |e: u64| kc.pow(hh, e);
    let e2 = kc.sub(&kc.add(&m(&c(4), &m(h5, &m0)), &m(&m1, &m1)), &m(&c(64), &m(&hp(3), h2)));
    let e1 = kc.sub(&m(&m1, &m0), &m(&c(64), &m(&hp(4), h1)));
    let e0 = kc.sub(&m(&m0, &m0), &m(&c(256), &m(&hp(5), h0)));
    Eliminants { ka, kb, kc, h: hs, e2, e1, e0 }
}

/// Divide a polynomial in beta by the gcd of its coefficients in K[alpha].
fn primitive_part(ka: &R1, kb: &R2, f: &Poly<GfPoly>) -> Poly<GfPoly> {
    let mut g = ka.zero();
    for c in f.coeffs() {
        g = ka.gcd(&g, c);
    }
    if g.degree().unwrap_or(0) == 0 {
        return f.clone();
    }
    kb.from_coeffs(f.coeffs().iter().map(|c| ka.quo(c, &g)).collect())
}

fn eval_k(l: &Gf, emb: &GfEmbedding, f: &GfPoly, x: &GfElem) -> GfElem {
    let mut acc = l.zero();
    for c in f.coeffs().iter().rev() {
        acc = l.add(&l.mul(&acc, x), &emb.apply(c));
    }
    acc
}

/// f(alpha0, beta) as a polynomial in beta over l.
fn eval_a(l: &Gf, emb: &GfEmbedding, f: &Poly<GfPoly>, a0: &GfElem) -> GfPoly {
    PolyRing::new(l.clone()).from_coeffs(f.coeffs().iter().map(|c| eval_k(l, emb, c, a0)).collect())
}

/// f(alpha0, beta0, gamma) as a polynomial in gamma over l.
fn eval_ab(l: &Gf, emb: &GfEmbedding, f: &E3, a0: &GfElem, b0: &GfElem) -> GfPoly {
    let r = PolyRing::new(l.clone());
    r.from_coeffs(f.coeffs().iter().map(|c| r.eval(&eval_a(l, emb, c, a0), b0)).collect())
}

fn gcd_nonzero(r: &PolyRing<Gf>, fs: &[GfPoly]) -> Option<GfPoly> {
    let nz: Vec<&GfPoly> = fs.iter().filter(|f| !f.is_zero()).collect();
    if nz.is_empty() {
        return None;
    }
    Some(nz.iter().fold(r.zero(), |acc, f| r.gcd(&acc, f)))
}

struct Level {
    field: Gf,
    /// base field -> this level
    emb: GfEmbedding,
    root: GfElem,
}

fn extend(prev: &Level, factor: &GfPoly, seed: u64) -> Result<(Level, GfEmbedding)> {
    let t = compose_tower(&prev.field, factor, seed)?;
    let emb = prev.emb.compose(&t.embed);
    Ok((Level { field: t.field.clone(), emb, root: t.root.clone() }, t.embed))
}

impl SectionSurface {
    /// Monic square-root test: h is a square over the algebraic closure.
    fn square_up_to_constant(&self, l: &Gf, h: &GfPoly) -> bool {
        let r = PolyRing::new(l.clone());
        if h.is_zero() {
            return false;
        }
        let hm = r.monic(h);
        matches!(formal_square_root(&r, &hm), Ok(Some(_)))
    }

    /// The eliminant in alpha: Res_beta(Res_gamma(E2, E1), Res_gamma(E2, E0)).
    fn alpha_eliminant(&self, el: &Eliminants, seed: u64) -> Result<(Poly<GfPoly>, Poly<GfPoly>, GfPoly)> {
        let (ka, kb) = (&el.ka, &el.kb);
        let r1 = primitive_part(ka, kb, &resultant(&el.kc, &el.e2, &el.e1)?);
        let r2 = primitive_part(ka, kb, &resultant(&el.kc, &el.e2, &el.e0)?);
        let (Some(m), Some(n)) = (r1.degree(), r2.degree()) else {
            return Err(Error::InternalConsistency("gamma-resultant vanishes identically".into()));
        };
        let adeg = |f: &Poly<GfPoly>| f.coeffs().iter().map(|c| c.deg_i().max(0) as usize).max().unwrap_or(0);
        let bound = n * adeg(&r1) + m * adeg(&r2);
        let k = &self.field;
        let base_size = k.size_u64().unwrap_or(u64::MAX);
        // nodes need bound + 1 distinct values
        let mut ext = 1;
        while base_size.checked_pow(ext as u32).map_or(false, |s| s <= bound as u64 + 1) {
            ext += 1;
        }
        let tw = build_extension(k, ext, seed)?;
        let l = tw.field.clone();
        let rl = PolyRing::new(l.clone());
        let nodes: Vec<GfElem> = (0..=bound as u64).map(|i| l.from_index(i)).collect();
        let vals: Vec<GfElem> = nodes
            .par_iter()
            .map(|a| {
                let f1 = eval_a(&l, &tw.embed, &r1, a);
                let f2 = eval_a(&l, &tw.embed, &r2, a);
                resultant_formal(&rl, &f1, &f2, m, n)
            })
            .collect();
        let big = rl.interpolate(&nodes, &vals)?;
        let coeffs: Option<Vec<GfElem>> = big.coeffs().iter().map(|c| tw.embed.preimage(c)).collect();
        let coeffs = coeffs.ok_or_else(|| Error::InternalConsistency("eliminant not defined over the base".into()))?;
        let r3 = ka.from_coeffs(coeffs);
        if r3.is_zero() {
            return Err(Error::InternalConsistency("eliminant vanishes identically".into()));
        }
        Ok((r1, r2, r3))
    }

    /// Triangular elimination, factorization and exact back-substitution.
    pub fn eliminate(&self, tower_max: usize, seed: u64) -> Result<EliminationReport> {
        let el = eliminants(self);
        let (r1, r2, r3) = self.alpha_eliminant(&el, seed)?;
        let k = &self.field;
        let ka = &el.ka;
        let base = Level { field: k.clone(), emb: GfEmbedding::identity(k), root: k.zero() };
        let factors = factor_finite_field(ka, &r3, seed)?;
        let factor_degrees: Vec<usize> = factors.iter().map(|(f, _)| f.degree().unwrap()).collect();
        // H(alpha), the coefficient of x^6
        let hpoly = el.kb.coeff(&el.kc.coeff(&el.h[6], 0), 0);
        let mut orbits = vec![];
        let mut complete = true;
        let found: Vec<Result<(Vec<Solution>, bool)>> = factors
            .par_iter()
            .map(|(phi, _)| {
                let m1 = phi.degree().unwrap();
                if m1 > tower_max {
                    return Ok((vec![], false));
                }
                if ka.divides(phi, &hpoly) {
                    return Ok((vec![], true));
                }
                let (l1, _) = extend(&base, phi, seed)?;
                self.back_substitute(&el, &r1, &r2, &l1, tower_max, seed)
            })
            .collect();
        for f in found {
            let (sols, done) = f?;
            complete &= done;
            orbits.extend(sols);
        }
        if self.d == 6 {
            let (sols, done) = self.degenerate_branch(&el, &base, tower_max, seed)?;
            complete &= done;
            orbits.extend(sols);
        }
        let geometric_sections = orbits.iter().map(|s| 2 * s.orbit).sum();
        Ok(EliminationReport { eliminant_degree: r3.degree().unwrap(), factor_degrees, orbits, geometric_sections, complete })
    }

    fn back_substitute(
        &self,
        el: &Eliminants,
        r1: &Poly<GfPoly>,
        r2: &Poly<GfPoly>,
        l1: &Level,
        tower_max: usize,
        seed: u64,
    ) -> Result<(Vec<Solution>, bool)> {
        let kdeg = self.field.degree();
        let a0 = &l1.root;
        let rb = PolyRing::new(l1.field.clone());
        let f1 = eval_a(&l1.field, &l1.emb, r1, a0);
        let f2 = eval_a(&l1.field, &l1.emb, r2, a0);
        let Some(gb) = gcd_nonzero(&rb, &[f1, f2]) else {
            return Err(Error::InternalConsistency("beta-eliminants vanish at a root of the eliminant".into()));
        };
        let mut out = vec![];
        let mut complete = true;
        if gb.degree().unwrap_or(0) == 0 {
            return Ok((out, complete));
        }
        for (psi, _) in factor_finite_field(&rb, &gb, seed)? {
            if l1.field.degree() / kdeg * psi.degree().unwrap() > tower_max {
                complete = false;
                continue;
            }
            let (l2, e12) = extend(l1, &psi, seed)?;
            let a0 = e12.apply(a0);
            let b0 = l2.root.clone();
            let rc = PolyRing::new(l2.field.clone());
            let es: Vec<GfPoly> = [&el.e2, &el.e1, &el.e0].iter().map(|e| eval_ab(&l2.field, &l2.emb, e, &a0, &b0)).collect();
            let Some(gc) = gcd_nonzero(&rc, &es) else {
                return Err(Error::InternalConsistency("gamma-equations vanish identically".into()));
            };
            if gc.degree().unwrap_or(0) == 0 {
                continue;
            }
            for (chi, _) in factor_finite_field(&rc, &gc, seed)? {
                if l2.field.degree() / kdeg * chi.degree().unwrap() > tower_max {
                    complete = false;
                    continue;
                }
                let (l3, e23) = extend(&l2, &chi, seed)?;
                let (a, b, c) = (e23.apply(&a0), e23.apply(&b0), l3.root.clone());
                if let Some(s) = self.verify_solution(&l3, a, b, c)? {
                    out.push(s);
                }
            }
        }
        Ok((out, complete))
    }

    fn verify_solution(&self, l: &Level, a: GfElem, b: GfElem, c: GfElem) -> Result<Option<Solution>> {
        let f = &l.field;
        let r = PolyRing::new(f.clone());
        let t = r.from_coeffs(vec![c.clone(), b.clone(), a.clone()]);
        let h = self.rhs_over(&l.emb, &t);
        if h.degree() != Some(6) || !self.square_up_to_constant(f, &h) {
            return Ok(None);
        }
        // the coordinates generate l exactly
        let gen = [&a, &b, &c].iter().map(|x| f.elem_degree(x)).fold(1usize, num::integer::lcm);
        if gen != f.degree() {
            return Err(Error::InternalConsistency("solution generates a proper subfield".into()));
        }
        Ok(Some(Solution { field: f.clone(), alpha: a, beta: b, gamma: c, orbit: f.degree() / self.field.degree() }))
    }

    /// d = 6 with g3 alpha^3 + 1 = 0: then beta = 0 and h is a quadratic in x^2.
    fn degenerate_branch(&self, el: &Eliminants, base: &Level, tower_max: usize, seed: u64) -> Result<(Vec<Solution>, bool)> {
        let k = &self.field;
        let ka = &el.ka;
        let kdeg = k.degree();
        let hpoly = el.kb.coeff(&el.kc.coeff(&el.h[6], 0), 0);
        let mut out = vec![];
        let mut complete = true;
        for (phi, _) in factor_finite_field(ka, &hpoly, seed)? {
            if phi.degree().unwrap() > tower_max {
                complete = false;
                continue;
            }
            let (l1, _) = extend(base, &phi, seed)?;
            let l = &l1.field;
            let rl = PolyRing::new(l.clone());
            let zero = l.zero();
            let hi = |i: usize| eval_ab(l, &l1.emb, &el.h[i], &l1.root, &zero);
            let (h4, h2, h0) = (hi(4), hi(2), hi(0));
            let disc = rl.sub(&rl.mul(&h2, &h2), &rl.scale(&rl.mul(&h4, &h0), &l.from_int(4)));
            if disc.is_zero() {
                return Err(Error::InternalConsistency("degenerate branch has a positive-dimensional family".into()));
            }
            let mut cands = vec![];
            if disc.degree().unwrap() > 0 {
                cands.extend(factor_finite_field(&rl, &disc, seed)?);
            }
            if h4.degree().unwrap_or(0) > 0 {
                cands.extend(factor_finite_field(&rl, &h4, seed)?);
            }
            let mut seen = BTreeSet::new();
            for (chi, _) in cands {
                if !seen.insert(chi.clone()) {
                    continue;
                }
                if l.degree() / kdeg * chi.degree().unwrap() > tower_max {
                    complete = false;
                    continue;
                }
                let (l2, e12) = extend(&l1, &chi, seed)?;
                let a = e12.apply(&l1.root);
                let f = &l2.field;
                let r = PolyRing::new(f.clone());
                let t = r.from_coeffs(vec![l2.root.clone(), f.zero(), a.clone()]);
                let h = self.rhs_over(&l2.emb, &t);
                if !h.is_zero() && self.square_up_to_constant(f, &h) {
                    out.push(Solution { field: f.clone(), alpha: a, beta: f.zero(), gamma: l2.root.clone(), orbit: f.degree() / kdeg });
                }
            }
        }
        Ok((out, complete))
    }

    /// Base-field sections among the elimination orbits.
    fn rational_sections(&self, rep: &EliminationReport) -> Vec<Section> {
        let r = self.ring();
        let mut out = vec![];
        for s in rep.orbits.iter().filter(|s| s.orbit == 1) {
            // degree-one orbits live in the base field itself
            let t = r.from_coeffs(vec![s.gamma.clone(), s.beta.clone(), s.alpha.clone()]);
            out.extend(self.sections_for(&r, t));
        }
        out.sort();
        out
    }
}

/// Sections over the base field by the requested strategy; "both" cross-checks the two.
pub fn section_search(
    surface: &SectionSurface,
    strategy: Strategy,
    budget: u64,
    tower_max: usize,
    seed: u64,
) -> Result<SectionSearch> {
    let field = surface.field.clone();
    match strategy {
        Strategy::Scan => Ok(SectionSearch { field, sections: surface.scan(budget)?, elimination: None }),
        Strategy::Eliminate => {
            let rep = surface.eliminate(tower_max, seed)?;
            let sections = surface.rational_sections(&rep);
            Ok(SectionSearch { field, sections, elimination: Some(rep) })
        }
        Strategy::Both => {
            let scanned = surface.scan(budget)?;
            let rep = surface.eliminate(tower_max, seed)?;
            let elim = surface.rational_sections(&rep);
            if elim != scanned {
                return Err(Error::InternalConsistency(format!(
                    "strategies disagree: scan found {}, elimination {}",
                    scanned.len(),
                    elim.len()
                )));
            }
            Ok(SectionSearch { field, sections: scanned, elimination: Some(rep) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surface(p: u64, d: usize, g: &[i64]) -> SectionSurface {
        let k = Gf::prime(p).unwrap();
        let r = PolyRing::new(k.clone());
        SectionSurface::new(k, d, r.from_ints(g)).unwrap()
    }

    #[test]
    fn constant_sections_d6() {
        let s = surface(67, 6, &[12, 2, 0, 1]);
        let r = s.ring();
        let k = &s.field;
        for a in crate::exact_algebra::factor::roots(&r, &s.g, 0) {
            for sign in [1, -1] {
                let sec = Section { t: r.constant(a.clone()), y: r.monomial(k.from_int(sign), 3) };
                assert!(s.is_section(&sec));
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let k = Gf::prime(7).unwrap();
        let r = PolyRing::new(k.clone());
        assert!(SectionSurface::new(k.clone(), 4, r.from_ints(&[1, 0, 0, 1])).is_err());
        assert!(SectionSurface::new(k.clone(), 5, r.from_ints(&[0, 0, 1, 1])).is_err());
        assert!(SectionSurface::new(Gf::prime(5).unwrap(), 5, PolyRing::new(Gf::prime(5).unwrap()).from_ints(&[1, 1, 0, 1])).is_err());
        let s = SectionSurface::new(k, 5, r.from_ints(&[1, 1, 0, 1])).unwrap();
        assert!(matches!(s.scan(10), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn strategies_agree_small() {
        let s = surface(13, 5, &[1, 1, 0, 1]);
        let res = section_search(&s, Strategy::Both, 1 << 20, 64, 1).unwrap();
        for sec in &res.sections {
            assert!(s.is_section(sec));
        }
        let rep = res.elimination.unwrap();
        assert!(rep.complete);
        assert_eq!(rep.geometric_sections, 240);
    }
}

