//! Places, valuations, divisors and Riemann-Roch spaces on the projective line,
//! hyperelliptic curves v^2 = f(u) and superelliptic curves v^d + g(u) = 0.

mod divisor;
mod function;
mod kt;
mod place;
mod riemann_roch;
mod valuation;

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

pub use divisor::{Divisor, QDivisor, QPicClass, Sigma};
pub use function::CurveFn;
pub use kt::{KtDivisor, KtHyperelliptic};
pub use place::{Expansion, Place, PlaceKey};
pub use riemann_roch::{class_equal, is_principal, riemann_roch_dim, riemann_roch_space, ClassEquality, RrSpace};
pub use valuation::{principal_divisor, valuation};

use crate::error::{Error, Result};
use crate::exact_algebra::factor::{factor_finite_field, GfPoly};
use crate::exact_algebra::{compose_tower, Gf, GfElem, GfEmbedding, Laurent, Poly, PolyRing, Ring, Series, SqrtField, Tower};
use place::Recipe;

/// Polynomial in v whose coefficients are polynomials in u.
pub type BiPoly = Poly<GfPoly>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    ProjectiveLine,
    /// v^2 = f(u)
    Hyperelliptic { f: GfPoly },
    /// v^d + g(u) = 0 with g a squarefree cubic
    Superelliptic { d: usize, g: GfPoly },
}

#[derive(Clone)]
pub struct Curve(Arc<CurveData>);

struct CurveData {
    field: Gf,
    kind: CurveKind,
    fingerprint: u64,
    /// F(u, v) as a polynomial in v, monic
    f_v: BiPoly,
    /// F(u, v) as a polynomial in u with coefficients in K[v]
    f_u: BiPoly,
    infinite: Vec<Arc<Place>>,
    pole_u: Vec<i64>,
    pole_v: Vec<i64>,
    towers: Mutex<HashMap<GfPoly, Arc<Tower>>>,
    places: Mutex<HashMap<PlaceKey, Arc<Place>>>,
}

impl std::fmt::Debug for Curve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Curve({})", self.describe())
    }
}

impl PartialEq for Curve {
    fn eq(&self, other: &Self) -> bool {
        self.0.fingerprint == other.0.fingerprint && self.0.field == other.0.field && self.0.kind == other.0.kind
    }
}

fn transpose(r: &PolyRing<Gf>, f: &BiPoly) -> BiPoly {
    let deg_u = f.coeffs().iter().map(|c| c.len()).max().unwrap_or(0);
    let rows: Vec<GfPoly> = (0..deg_u)
        .map(|i| r.from_coeffs(f.coeffs().iter().map(|c| r.coeff(c, i)).collect()))
        .collect();
    PolyRing::new(r.clone()).from_coeffs(rows)
}

impl Curve {
    pub fn projective_line(k: &Gf) -> Result<Curve> {
        Curve::build(k, CurveKind::ProjectiveLine)
    }

    pub fn hyperelliptic(k: &Gf, f: GfPoly) -> Result<Curve> {
        Curve::build(k, CurveKind::Hyperelliptic { f })
    }

    pub fn superelliptic(k: &Gf, d: usize, g: GfPoly) -> Result<Curve> {
        Curve::build(k, CurveKind::Superelliptic { d, g })
    }

    fn build(k: &Gf, kind: CurveKind) -> Result<Curve> {
        let r = PolyRing::new(k.clone());
        let bi = PolyRing::new(r.clone());
        let p = k.p();
        let f_v = match &kind {
            CurveKind::ProjectiveLine => bi.zero(),
            CurveKind::Hyperelliptic { f } => {
                if p == 2 {
                    return Err(Error::UnsupportedCurve("hyperelliptic curves need odd characteristic".into()));
                }
                let Some(n) = f.degree() else { return Err(Error::DegenerateInput("f = 0".into())) };
                if n == 0 {
                    return Err(Error::UnsupportedCurve("constant f".into()));
                }
                if r.gcd(f, &r.derivative(f)).degree() != Some(0) {
                    return Err(Error::UnsupportedCurve("f is not squarefree".into()));
                }
                bi.from_coeffs(vec![r.neg(f), r.zero(), r.one()])
            }
            CurveKind::Superelliptic { d, g } => {
                if *d < 2 {
                    return Err(Error::UnsupportedCurve("superelliptic exponent must be at least 2".into()));
                }
                if g.degree() != Some(3) {
                    return Err(Error::UnsupportedCurve("g must be a cubic".into()));
                }
                if (3 * *d as u64) % p == 0 {
                    return Err(Error::UnsupportedCurve(format!("characteristic {p} divides 3d")));
                }
                if r.gcd(g, &r.derivative(g)).degree() != Some(0) {
                    return Err(Error::UnsupportedCurve("g is not squarefree".into()));
                }
                let mut c = vec![r.zero(); d + 1];
                c[0] = g.clone();
                c[*d] = r.one();
                bi.from_coeffs(c)
            }
        };
        let f_u = transpose(&r, &f_v);
        let mut h = DefaultHasher::new();
        p.hash(&mut h);
        k.modulus().hash(&mut h);
        kind.hash(&mut h);
        let fingerprint = h.finish();
        let (infinite, pole_u, pole_v) = infinite_places(k, &kind, fingerprint)?;
        Ok(Curve(Arc::new(CurveData {
            field: k.clone(),
            kind,
            fingerprint,
            f_v,
            f_u,
            infinite,
            pole_u,
            pole_v,
            towers: Mutex::new(HashMap::new()),
            places: Mutex::new(HashMap::new()),
        })))
    }

    pub fn field(&self) -> &Gf {
        &self.0.field
    }
    pub fn kind(&self) -> &CurveKind {
        &self.0.kind
    }
    pub fn fingerprint(&self) -> u64 {
        self.0.fingerprint
    }
    pub fn upoly(&self) -> PolyRing<Gf> {
        PolyRing::new(self.0.field.clone())
    }
    pub fn bi(&self) -> PolyRing<PolyRing<Gf>> {
        PolyRing::new(self.upoly())
    }
    /// Defining polynomial as a polynomial in v (zero for the projective line).
    pub fn equation(&self) -> &BiPoly {
        &self.0.f_v
    }
    pub fn is_line(&self) -> bool {
        matches!(self.0.kind, CurveKind::ProjectiveLine)
    }
    /// Degree of F in v; 1 for the projective line (only v^0 monomials).
    pub fn deg_v(&self) -> usize {
        if self.is_line() {
            1
        } else {
            self.0.f_v.degree().unwrap()
        }
    }

    pub fn describe(&self) -> String {
        let r = self.upoly();
        match &self.0.kind {
            CurveKind::ProjectiveLine => "P^1".into(),
            CurveKind::Hyperelliptic { f } => format!("v^2 = {}", r.fmt_var(f, "u")),
            CurveKind::Superelliptic { d, g } => format!("v^{d} + {} = 0", r.fmt_var(g, "u")),
        }
    }

    pub fn genus(&self) -> usize {
        genus(&self.0.kind)
    }

    pub fn infinite_places(&self) -> &[Arc<Place>] {
        &self.0.infinite
    }

    /// Pole orders of u and v at the i-th infinite place.
    pub fn poles_at_infinity(&self, i: usize) -> (i64, i64) {
        (self.0.pole_u[i], self.0.pole_v[i])
    }

    fn tower(&self, p: &GfPoly) -> Result<Arc<Tower>> {
        if let Some(t) = self.0.towers.lock().unwrap().get(p) {
            return Ok(t.clone());
        }
        let t = Arc::new(compose_tower(&self.0.field, p, 0)?);
        self.0.towers.lock().unwrap().insert(p.clone(), t.clone());
        Ok(t)
    }

    /// F(u0, v) over the residue field of p, with u0 the class of u.
    fn fiber_poly(&self, t1: &Tower) -> GfPoly {
        let l1 = &t1.field;
        let rl = PolyRing::new(l1.clone());
        let coeffs: Vec<GfElem> = self
            .0
            .f_v
            .coeffs()
            .iter()
            .map(|c| {
                let mapped: Vec<GfElem> = c.coeffs().iter().map(|x| t1.embed.apply(x)).collect();
                rl.eval(&rl.from_coeffs(mapped), &t1.root)
            })
            .collect();
        rl.from_coeffs(coeffs)
    }

    /// All places over the zero of a monic irreducible p(u).
    pub fn places_over(&self, p: &GfPoly) -> Result<Vec<Arc<Place>>> {
        let r = self.upoly();
        let p = r.monic(p);
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput("places over a constant".into()));
        }
        if self.is_line() {
            return Ok(vec![self.place(&PlaceKey::Affine { p, q: vec![] })?]);
        }
        let t1 = self.tower(&p)?;
        let fib = self.fiber_poly(&t1);
        let rl = PolyRing::new(t1.field.clone());
        let mut out = vec![];
        for (q, _) in factor_finite_field(&rl, &fib, 0)? {
            let qk: Vec<GfPoly> = q.coeffs().iter().map(|c| r.from_coeffs(t1.to_tower(c))).collect();
            out.push(self.place(&PlaceKey::Affine { p: p.clone(), q: qk })?);
        }
        Ok(out)
    }

    /// The place with a given key.
    pub fn place(&self, key: &PlaceKey) -> Result<Arc<Place>> {
        if let PlaceKey::Infinite(i) = key {
            return self.0.infinite.get(*i).cloned().ok_or_else(|| Error::InvalidInput(format!("no infinite place {i}")));
        }
        if let Some(pl) = self.0.places.lock().unwrap().get(key) {
            return Ok(pl.clone());
        }
        let pl = Arc::new(self.build_affine(key)?);
        self.0.places.lock().unwrap().insert(key.clone(), pl.clone());
        Ok(pl)
    }

    fn build_affine(&self, key: &PlaceKey) -> Result<Place> {
        let PlaceKey::Affine { p, q } = key else { unreachable!() };
        let k = &self.0.field;
        let t1 = self.tower(p)?;
        let l1 = t1.field.clone();
        let u0 = t1.root.clone();
        if self.is_line() {
            return Ok(Place::new(key.clone(), self.0.fingerprint, l1.clone(), t1.embed.clone(), l1.degree() / k.degree(), Some(u0), None, Recipe::AffineU, PolyRing::new(k.clone()).x()));
        }
        let rl1 = PolyRing::new(l1.clone());
        let qbar = rl1.from_coeffs(q.iter().map(|c| t1.from_tower(c.coeffs())).collect());
        if qbar.degree().unwrap_or(0) == 0 || !rl1.is_monic(&qbar) {
            return Err(Error::InvalidInput("place key: q must be monic of positive degree".into()));
        }
        let fib = self.fiber_poly(&t1);
        if !rl1.divides(&qbar, &fib) {
            return Err(Error::InvalidInput("place key does not lie on the curve".into()));
        }
        let (field, embed, u0, v0) = if qbar.degree() == Some(1) {
            let v0 = l1.neg(&qbar.coeffs()[0]);
            (l1.clone(), t1.embed.clone(), u0, v0)
        } else {
            let t2 = compose_tower(&l1, &qbar, 0)?;
            let u0 = t2.embed.apply(&u0);
            (t2.field.clone(), t1.embed.compose(&t2.embed), u0, t2.root.clone())
        };
        // smoothness decides which coordinate is a local parameter
        let rf = PolyRing::new(field.clone());
        let eval_bi = |f: &BiPoly, outer: &GfElem, inner: &GfElem| -> GfElem {
            let c: Vec<GfElem> = f
                .coeffs()
                .iter()
                .map(|cc| rf.eval(&rf.from_coeffs(cc.coeffs().iter().map(|x| embed.apply(x)).collect()), inner))
                .collect();
            rf.eval(&rf.from_coeffs(c), outer)
        };
        let bi = self.bi();
        let dv = bi.derivative(&self.0.f_v);
        let du = bi.derivative(&self.0.f_u);
        let recipe = if !field.is_zero(&eval_bi(&dv, &v0, &u0)) {
            Recipe::AffineU
        } else if !field.is_zero(&eval_bi(&du, &u0, &v0)) {
            Recipe::AffineV
        } else {
            return Err(Error::UnsupportedCurve("singular affine point".into()));
        };
        let degree = field.degree() / k.degree();
        Ok(Place::new(key.clone(), self.0.fingerprint, field, embed, degree, Some(u0), Some(v0), recipe, PolyRing::new(k.clone()).x()))
    }

    /// Local expansions of u and v at a place, with relative precision at least prec.
    pub fn expansion(&self, place: &Place, prec: usize) -> Result<Expansion> {
        if place.curve != self.0.fingerprint {
            return Err(Error::CurveMismatch("place belongs to another curve".into()));
        }
        if let Some(e) = place.cached_expansion(prec) {
            return Ok(e);
        }
        let prec = prec.max(place.cached_prec() * 2).max(4);
        let e = self.compute_expansion(place, prec)?;
        place.store_expansion(e.clone());
        Ok(e)
    }

    fn compute_expansion(&self, place: &Place, prec: usize) -> Result<Expansion> {
        let l = &place.field;
        let s = Series::new(l.clone());
        let emb = |c: &GfPoly| -> Vec<GfElem> { c.coeffs().iter().map(|x| place.embed.apply(x)).collect() };
        let kr = self.upoly();
        let exact_zero = || s.zero_mod(i64::MAX / 4);
        let lost = || Error::InternalConsistency("local lifting failed".into());
        let big = prec + 8;
        let shift = |a: &Laurent<GfElem>, k: i64| Laurent { val: a.val + k, c: a.c.clone() };
        let coeffs_of = |g: &GfPoly, n: usize| -> Vec<GfElem> { (0..n).map(|i| place.embed.apply(&kr.coeff(g, i))).collect() };
        let e = match &place.recipe {
            Recipe::AffineU => {
                let u0 = place.u0.clone().unwrap();
                let u = s.from_coeffs(0, vec![u0, l.one()], big + 1);
                let v = match &place.v0 {
                    None => None,
                    Some(v0) => {
                        let cs: Vec<_> = self.0.f_v.coeffs().iter().map(|c| s.eval_poly(&emb(c), &u, big + 1)).collect();
                        let v = s.newton_root(&cs, v0, big).ok_or_else(lost)?;
                        Some(s.from_coeffs(0, v.c, big))
                    }
                };
                Expansion { u, v }
            }
            Recipe::AffineV => {
                let v0 = place.v0.clone().unwrap();
                let v = s.from_coeffs(0, vec![v0, l.one()], big + 1);
                let cs: Vec<_> = self.0.f_u.coeffs().iter().map(|c| s.eval_poly(&emb(c), &v, big + 1)).collect();
                let u = s.newton_root(&cs, place.u0.as_ref().unwrap(), big).ok_or_else(lost)?;
                Expansion { u: s.from_coeffs(0, u.c, big), v: Some(v) }
            }
            Recipe::LineInfinity => Expansion { u: s.monomial(l.one(), -1, big), v: None },
            Recipe::HypOdd { g } => {
                let CurveKind::Hyperelliptic { f } = &self.0.kind else { unreachable!() };
                let n = f.degree().unwrap();
                let fc = coeffs_of(f, n + 1);
                let p = big + 2;
                let mut cs: Vec<Laurent<GfElem>> = (0..=n)
                    .map(|i| {
                        let c = &fc[n - i];
                        if l.is_zero(c) {
                            exact_zero()
                        } else {
                            s.monomial(l.neg(c), 2, p)
                        }
                    })
                    .collect();
                cs[1] = if cs[1].c.is_empty() { s.constant(l.one(), p) } else { s.add_scalar(&cs[1], &l.one()) };
                let z = s.newton_root(&cs, &l.zero(), p).ok_or_else(lost)?;
                let z = s.from_coeffs(0, z.c, p);
                let x = s.inv(&z).ok_or_else(lost)?;
                let y = shift(&s.pow(&x, *g as u64), -1);
                Expansion { u: x, v: Some(y) }
            }
            Recipe::HypEven { g, w0 } => {
                let CurveKind::Hyperelliptic { f } = &self.0.kind else { unreachable!() };
                let n = f.degree().unwrap();
                let fc = coeffs_of(f, n + 1);
                let rev: Vec<GfElem> = (0..=n).map(|i| l.neg(&fc[n - i])).collect();
                let cs = vec![s.from_coeffs(0, rev, big), exact_zero(), s.constant(l.one(), big)];
                let w = s.newton_root(&cs, w0, big).ok_or_else(lost)?;
                let w = s.from_coeffs(0, w.c, big);
                Expansion { u: s.monomial(l.one(), -1, big), v: Some(shift(&w, -(*g as i64 + 1))) }
            }
            Recipe::SuperA { b } | Recipe::SuperB { b } => {
                let CurveKind::Superelliptic { g, .. } = &self.0.kind else { unreachable!() };
                let gc = coeffs_of(g, 4);
                let b = *b;
                let p = big + 3;
                let mut cs: Vec<Laurent<GfElem>> = vec![exact_zero(); 3 * b + 2];
                let mut put = |i: usize, val: Laurent<GfElem>| {
                    cs[i] = s.add(&cs[i], &val);
                };
                let mono = |c: &GfElem, e: i64| if l.is_zero(c) { exact_zero() } else { s.monomial(c.clone(), e, p) };
                if matches!(place.recipe, Recipe::SuperA { .. }) {
                    // z + g3 w^3 + g2 w^2 z^b + g1 w z^2b + g0 z^3b = 0, w = t/x^b, z = 1/x
                    put(0, mono(&gc[3], 3));
                    put(1, s.constant(l.one(), p));
                    put(b, mono(&gc[2], 2));
                    put(2 * b, mono(&gc[1], 1));
                    put(3 * b, mono(&gc[0], 0));
                } else {
                    // z (g3 + g2 w z^b + g1 w^2 z^2b + g0 w^3 z^3b) + w^3 = 0, w = x^b/t
                    put(0, s.monomial(l.one(), 3, p));
                    put(1, mono(&gc[3], 0));
                    put(b + 1, mono(&gc[2], 1));
                    put(2 * b + 1, mono(&gc[1], 2));
                    put(3 * b + 1, mono(&gc[0], 3));
                }
                let z = s.newton_root(&cs, &l.zero(), p).ok_or_else(lost)?;
                let z = s.from_coeffs(0, z.c, p);
                let x = s.inv(&z).ok_or_else(lost)?;
                let xb = s.pow(&x, b as u64);
                let t = if matches!(place.recipe, Recipe::SuperA { .. }) { shift(&xb, 1) } else { shift(&xb, -1) };
                Expansion { u: t, v: Some(x) }
            }
            Recipe::SuperC { m, tau0 } => {
                let CurveKind::Superelliptic { g, d } = &self.0.kind else { unreachable!() };
                let gc = coeffs_of(g, 4);
                let m = *m as i64;
                let mono = |c: &GfElem, e: i64| if l.is_zero(c) { exact_zero() } else { s.monomial(c.clone(), e, big) };
                let c0 = if l.is_zero(&gc[0]) { s.constant(l.one(), big) } else { s.add_scalar(&mono(&gc[0], *d as i64), &l.one()) };
                let cs = vec![c0, mono(&gc[1], 2 * m), mono(&gc[2], m), mono(&gc[3], 0)];
                let tau = s.newton_root(&cs, tau0, big).ok_or_else(lost)?;
                let tau = s.from_coeffs(0, tau.c, big);
                Expansion { u: shift(&tau, -m), v: Some(s.monomial(l.one(), -1, big)) }
            }
        };
        Ok(e)
    }

    /// p-power Frobenius applied k times to every coefficient of a divisor's place keys.
    /// Requires the defining equation to have prime-field coefficients.
    pub fn frobenius_divisor(&self, d: &Divisor, k: usize) -> Result<Divisor> {
        let kf = &self.0.field;
        let prime_coeffs = self.0.f_v.coeffs().iter().all(|c| c.coeffs().iter().all(|x| kf.as_prime(x).is_some()));
        if !prime_coeffs {
            return Err(Error::UnsupportedCurve("Frobenius needs an equation over the prime field".into()));
        }
        let r = self.upoly();
        let fr = |a: &GfPoly| r.from_coeffs(a.coeffs().iter().map(|x| kf.frobenius_pow(x, k)).collect());
        let mut out = Divisor::new();
        for (pl, n) in d.iter() {
            let key = match &pl.key {
                PlaceKey::Affine { p, q } => PlaceKey::Affine { p: fr(p), q: q.iter().map(&fr).collect() },
                PlaceKey::Infinite(_) => {
                    let lab = fr(&pl.label);
                    let idx = self
                        .0
                        .infinite
                        .iter()
                        .position(|x| x.label == lab)
                        .ok_or_else(|| Error::InternalConsistency("Frobenius image of an infinite place".into()))?;
                    PlaceKey::Infinite(idx)
                }
            };
            out.add_term(&self.place(&key)?, n);
        }
        Ok(out)
    }
}

pub fn genus(kind: &CurveKind) -> usize {
    match kind {
        CurveKind::ProjectiveLine => 0,
        CurveKind::Hyperelliptic { f } => (f.degree().unwrap_or(0).max(1) - 1) / 2,
        CurveKind::Superelliptic { d, .. } => {
            if d % 3 == 0 {
                d - 2
            } else {
                d - 1
            }
        }
    }
}

type InfiniteData = (Vec<Arc<Place>>, Vec<i64>, Vec<i64>);

fn infinite_places(k: &Gf, kind: &CurveKind, fp: u64) -> Result<InfiniteData> {
    let r = PolyRing::new(k.clone());
    let lam = r.x();
    let id = GfEmbedding::identity(k);
    let mk = |recipe: Recipe, field: Gf, embed: GfEmbedding, degree: usize, label: GfPoly, i: usize| {
        Arc::new(Place::new(PlaceKey::Infinite(i), fp, field, embed, degree, None, None, recipe, label))
    };
    Ok(match kind {
        CurveKind::ProjectiveLine => (vec![mk(Recipe::LineInfinity, k.clone(), id, 1, lam, 0)], vec![1], vec![0]),
        CurveKind::Hyperelliptic { f } => {
            let n = f.degree().unwrap();
            if n % 2 == 1 {
                let g = (n - 1) / 2;
                (vec![mk(Recipe::HypOdd { g }, k.clone(), id, 1, lam, 0)], vec![2], vec![n as i64])
            } else {
                let g = (n - 2) / 2;
                let lc = f.lc().unwrap().clone();
                let gv = g as i64 + 1;
                match k.sqrt(&lc) {
                    Some(root) => {
                        let neg = k.neg(&root);
                        let a = mk(Recipe::HypEven { g, w0: root.clone() }, k.clone(), id.clone(), 1, r.linear_root(&root), 0);
                        let b = mk(Recipe::HypEven { g, w0: neg.clone() }, k.clone(), id, 1, r.linear_root(&neg), 1);
                        (vec![a, b], vec![1, 1], vec![gv, gv])
                    }
                    None => {
                        let h = r.from_coeffs(vec![k.neg(&lc), k.zero(), k.one()]);
                        let t = compose_tower(k, &h, 0)?;
                        let pl = mk(Recipe::HypEven { g, w0: t.root.clone() }, t.field.clone(), t.embed.clone(), 2, h, 0);
                        (vec![pl], vec![1], vec![gv])
                    }
                }
            }
        }
        CurveKind::Superelliptic { d, g } => {
            let d = *d;
            match d % 3 {
                2 => (vec![mk(Recipe::SuperA { b: (d + 1) / 3 }, k.clone(), id, 1, lam, 0)], vec![d as i64], vec![3]),
                1 => (vec![mk(Recipe::SuperB { b: (d - 1) / 3 }, k.clone(), id, 1, lam, 0)], vec![d as i64], vec![3]),
                _ => {
                    let m = d / 3;
                    let g3 = r.coeff(g, 3);
                    let h = r.from_coeffs(vec![k.one(), k.zero(), k.zero(), g3]);
                    let mut out = vec![];
                    for (i, (phi, _)) in factor_finite_field(&r, &h, 0)?.into_iter().enumerate() {
                        let t = compose_tower(k, &phi, 0)?;
                        let deg = phi.degree().unwrap();
                        out.push(mk(Recipe::SuperC { m, tau0: t.root.clone() }, t.field.clone(), t.embed.clone(), deg, phi, i));
                    }
                    let n = out.len();
                    (out, vec![m as i64; n], vec![1; n])
                }
            }
        }
    })
}

#[cfg(test)]
mod tests;
