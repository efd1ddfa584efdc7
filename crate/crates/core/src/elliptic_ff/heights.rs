use num::Zero;

use super::fibers::{contribution, j_zero_fibers, FiberDatum, KodairaType};
use super::sections::{Section, SectionSurface};
use super::{EcPoint, EllipticCurve};
use crate::error::{Error, Result};
use crate::exact_algebra::factor::{factor_finite_field, GfPoly};
use crate::exact_algebra::rationals::{qi, Q};
use crate::exact_algebra::{compose_tower, Field, Gf, GfElem, PolyRing, RatFn, RatFuncs, Ring};

pub type KtPoint = EcPoint<RatFn<GfElem>>;

/// Intersection number of two distinct sections, affine part plus the patch at x = infinity
/// where sections are compared through t / x^2 and y / x^3.
pub fn section_intersection(k: &Gf, p: &Section, q: &Section) -> Result<i64> {
    if p == q {
        return Err(Error::SelfIntersection);
    }
    let r = PolyRing::new(k.clone());
    let dt = r.sub(&p.t, &q.t);
    let dy = r.sub(&p.y, &q.y);
    let affine = r.gcd(&dt, &dy).degree().unwrap_or(0) as i64;
    let at_inf = |f: &GfPoly, w: i64| f.degree().map(|d| w - d as i64);
    let inf = match (at_inf(&dt, 2), at_inf(&dy, 3)) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => unreachable!(),
    };
    if inf < 0 {
        return Err(Error::InvalidInput("section degrees exceed (2, 3)".into()));
    }
    Ok(affine + inf)
}

fn irreducible_kind(k: KodairaType) -> bool {
    matches!(k, KodairaType::I0 | KodairaType::In(1) | KodairaType::II)
}

/// Height pairing of polynomial sections on a rational surface (chi = 1). Such sections never meet O,
/// so the pairing is 1 - P.Q (and 2 on the diagonal) when every fiber is irreducible.
pub fn shioda_pairing(k: &Gf, p: &Section, q: &Section, fibers: &[FiberDatum]) -> Result<Q> {
    if let Some(f) = fibers.iter().find(|f| !irreducible_kind(f.kind)) {
        return Err(Error::IncompleteData(format!("component data needed at a {:?} fiber", f.kind)));
    }
    if p == q {
        return Ok(qi(2));
    }
    Ok(qi(1 - section_intersection(k, p, q)?))
}

fn cubic_disc<R: Ring>(r: &R, c: &[R::Elem; 4]) -> R::Elem {
    let [c0, c1, c2, c3] = c;
    let m = |a: &R::Elem, b: &R::Elem| r.mul(a, b);
    let t1 = m(&m(c2, c2), &m(c1, c1));
    let t2 = r.scale_int(&m(c3, &r.pow(c1, 3)), -4);
    let t3 = r.scale_int(&m(&r.pow(c2, 3), c0), -4);
    let t4 = r.scale_int(&m(&m(c3, c3), &m(c0, c0)), -27);
    let t5 = r.scale_int(&m(&m(c3, c2), &m(c1, c0)), 18);
    r.sum([&t1, &t2, &t3, &t4, &t5])
}

fn fiber_kind(m: usize, cusp: bool) -> Result<KodairaType> {
    if !cusp {
        return Ok(KodairaType::In(m as u32));
    }
    Ok(match m {
        2 => KodairaType::II,
        3 => KodairaType::III,
        4 => KodairaType::IV,
        6 => KodairaType::I0Star,
        7 => KodairaType::InStar(1),
        9 => KodairaType::IIIStar,
        10 => KodairaType::IIStar,
        _ => return Err(Error::UnsupportedCurve(format!("additive fiber with discriminant valuation {m}"))),
    })
}

impl SectionSurface {
    /// Cubic coefficients in t of g(t) + x^d as polynomials in x.
    fn cubic_in_t(&self) -> [GfPoly; 4] {
        let r = self.ring();
        let mut c: [GfPoly; 4] = std::array::from_fn(|i| r.constant(r.coeff(&self.g, i)));
        c[0] = r.add(&c[0], &r.monomial(self.field.one(), self.d));
        c
    }

    /// Is the fiber cubic a perfect cube at the root of pi (pi = None: at x = infinity, via s = 1/x)?
    fn cusp_at(&self, c: &[GfPoly; 4], pi: &GfPoly) -> Result<bool> {
        let t = compose_tower(&self.field, pi, 0)?;
        let l = &t.field;
        let r = self.ring();
        let v: Vec<GfElem> = c.iter().map(|f| r.map(f, &PolyRing::new(l.clone()), |a| t.embed.apply(a))).map(|f| PolyRing::new(l.clone()).eval(&f, &t.root)).collect();
        // triple root iff c2^2 = 3 c1 c3 and c1^2 = 3 c0 c2 (with c3 != 0)
        let three = l.from_int(3);
        Ok(l.mul(&v[2], &v[2]) == l.mul(&three, &l.mul(&v[1], &v[3])) && l.mul(&v[1], &v[1]) == l.mul(&three, &l.mul(&v[0], &v[2])))
    }

    /// Singular fibers of the elliptic surface over the x-line, from discriminant valuations.
    pub fn singular_fibers(&self) -> Result<Vec<FiberDatum>> {
        let r = self.ring();
        let c = self.cubic_in_t();
        let disc = cubic_disc(&r, &c);
        let mut out = vec![];
        for (pi, m) in factor_finite_field(&r, &disc, 0)? {
            let cusp = self.cusp_at(&c, &pi)?;
            out.push(FiberDatum { degree: pi.degree().unwrap(), kind: fiber_kind(m, cusp)?, place: Some(pi) });
        }
        // at infinity: c_i(x) -> s^(6 - 2i) c_i(1/s)
        let rev: [GfPoly; 4] = std::array::from_fn(|i| r.reverse(&c[i], 6 - 2 * i));
        let dinf = cubic_disc(&r, &rev);
        let m = dinf.coeffs().iter().position(|a| !self.field.is_zero(a)).unwrap_or(0);
        if m > 0 {
            let cusp = self.cusp_at(&rev, &r.x())?;
            out.push(FiberDatum { place: None, degree: 1, kind: fiber_kind(m, cusp)? });
        }
        Ok(out)
    }
}

/// y^2 = x^3 + c(t) over k(t) with deg c <= 6, with its singular fibers.
#[derive(Clone, Debug)]
pub struct JZeroSurface {
    pub c: GfPoly,
    pub curve: EllipticCurve<RatFuncs<Gf>>,
    pub fibers: Vec<FiberDatum>,
}

impl JZeroSurface {
    pub fn new(k: &Gf, c: GfPoly) -> Result<Self> {
        let kt = RatFuncs::new(k.clone());
        let fibers = j_zero_fibers(k, &c)?;
        let curve = EllipticCurve::short(kt.clone(), kt.zero(), kt.from_poly(c.clone()))?;
        Ok(JZeroSurface { c, curve, fibers })
    }

    fn kt(&self) -> &RatFuncs<Gf> {
        &self.curve.field
    }

    /// (P.O), summed over all places of the base.
    pub fn dot_o(&self, p: &KtPoint) -> Result<i64> {
        let EcPoint::Affine(x, _) = p else { return Err(Error::InvalidInput("P.O for P = O".into())) };
        let kt = self.kt();
        let mut total = 0i64;
        if x.den.degree().unwrap() > 0 {
            for (pi, e) in factor_finite_field(&kt.poly, &x.den, 0)? {
                if e % 2 != 0 {
                    return Err(Error::InternalConsistency("odd pole order of x".into()));
                }
                total += (e / 2 * pi.degree().unwrap()) as i64;
            }
        }
        if let Some(v) = kt.valuation_infinity(x) {
            if -v > 2 {
                total += (-v - 2) / 2;
            }
        }
        Ok(total)
    }

    /// Whether P meets a non-identity component of the fiber (only used at types IV, I0*, IV*).
    fn off_identity(&self, p: &KtPoint, f: &FiberDatum) -> bool {
        let EcPoint::Affine(x, _) = p else { return false };
        let kt = self.kt();
        match &f.place {
            Some(pi) => kt.valuation_at(x, pi).map_or(true, |v| v >= 1),
            None => kt.valuation_infinity(x).map_or(true, |v| v + 2 >= 1),
        }
    }

    pub fn height(&self, p: &KtPoint) -> Result<Q> {
        if p.is_infinity() {
            return Ok(Q::zero());
        }
        if !self.curve.contains(p) {
            return Err(Error::NotOnCurve);
        }
        let mut h = qi(2 + 2 * self.dot_o(p)?);
        for f in &self.fibers {
            if irreducible_kind(f.kind) || !self.off_identity(p, f) {
                continue;
            }
            h -= contribution(f.kind, 1, 1)? * qi(f.degree as i64);
        }
        Ok(h)
    }

    pub fn pairing(&self, p: &KtPoint, q: &KtPoint) -> Result<Q> {
        let s = self.curve.add(p, q);
        Ok((self.height(&s)? - self.height(p)? - self.height(q)?) / qi(2))
    }
}

/// E1: y^2 = x^3 + g and E2: y^2 = x^3 + g^2, targets of the two maps from y^2 = x^6 + g.
#[derive(Clone, Debug)]
pub struct BiellipticPair {
    pub field: Gf,
    pub g: GfPoly,
    pub e1: JZeroSurface,
    pub e2: JZeroSurface,
}

/// Heights of a divisor class through (Q1, Q2): h_J = (h1 + h2) / 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D6Heights {
    pub h1: Q,
    pub h2: Q,
    pub hj: Q,
}

/// Point-level maps (x, y) -> (x^2, y) and (g / x^2, g y / x^3).
pub fn bielliptic_push(pair: &BiellipticPair, x: &RatFn<GfElem>, y: &RatFn<GfElem>) -> Result<(KtPoint, KtPoint)> {
    let kt = pair.e1.kt();
    let g = kt.from_poly(pair.g.clone());
    let lhs = kt.mul(y, y);
    let rhs = kt.add(&kt.pow(x, 6), &g);
    if lhs != rhs {
        return Err(Error::NotOnCurve);
    }
    if kt.is_zero(x) {
        return Err(Error::MapUndefined("x = 0 for the second map".into()));
    }
    let q1 = EcPoint::Affine(kt.mul(x, x), y.clone());
    let xi = kt.inv(x).unwrap();
    let q2 = EcPoint::Affine(kt.mul(&g, &kt.mul(&xi, &xi)), kt.mul(&kt.mul(&g, y), &kt.pow(&xi, 3)));
    if !pair.e1.curve.contains(&q1) || !pair.e2.curve.contains(&q2) {
        return Err(Error::InternalConsistency("bielliptic image off the curve".into()));
    }
    Ok((q1, q2))
}

/// Elements r1 x + r0 of k(t)[x] / (x^2 + b x + c).
struct QuadAlgebra<'a> {
    kt: &'a RatFuncs<Gf>,
    b: RatFn<GfElem>,
    c: RatFn<GfElem>,
}

type AElem = (RatFn<GfElem>, RatFn<GfElem>);

impl QuadAlgebra<'_> {
    fn mul(&self, p: &AElem, q: &AElem) -> AElem {
        let k = self.kt;
        let hi = k.mul(&p.0, &q.0);
        let lin = k.add(&k.mul(&p.0, &q.1), &k.mul(&p.1, &q.0));
        (k.sub(&lin, &k.mul(&self.b, &hi)), k.sub(&k.mul(&p.1, &q.1), &k.mul(&self.c, &hi)))
    }

    fn scale(&self, p: &AElem, s: &RatFn<GfElem>) -> AElem {
        (self.kt.mul(&p.0, s), self.kt.mul(&p.1, s))
    }

    /// P1 + P2 for the two conjugate points (X(x_i), Y(x_i)) of a short curve y^2 = x^3 + a6.
    fn sum_conjugates(&self, e: &EllipticCurve<RatFuncs<Gf>>, xx: &AElem, yy: &AElem) -> KtPoint {
        let k = self.kt;
        let ((r1, r0), (s1, s0)) = (xx, yy);
        if k.is_zero(r1) {
            // equal X-coordinates: either opposite points or a double point
            let ysum = k.sub(&k.scale_int(s0, 2), &k.mul(&self.b, s1));
            if k.is_zero(&ysum) {
                return EcPoint::Infinity;
            }
            let p = EcPoint::Affine(r0.clone(), s0.clone());
            return e.double(&p);
        }
        let lambda = k.div(s1, r1).unwrap();
        let xsum = k.sub(&k.scale_int(r0, 2), &k.mul(&self.b, r1));
        let x3 = k.sub(&k.mul(&lambda, &lambda), &xsum);
        let shift = k.sub(s0, &k.div(&k.mul(s1, r0), r1).unwrap());
        let y3 = k.neg(&k.add(&k.mul(&lambda, &x3), &shift));
        EcPoint::Affine(x3, y3)
    }
}

impl BiellipticPair {
    pub fn new(k: &Gf, g: GfPoly) -> Result<Self> {
        let r = PolyRing::new(k.clone());
        if g.degree() != Some(3) || r.gcd(&g, &r.derivative(&g)).degree() != Some(0) {
            return Err(Error::DegenerateInput("g must be a squarefree cubic".into()));
        }
        let e1 = JZeroSurface::new(k, g.clone())?;
        let e2 = JZeroSurface::new(k, r.mul(&g, &g))?;
        Ok(BiellipticPair { field: k.clone(), g, e1, e2 })
    }

    /// pi_2(inf-) - pi_2(inf+) = 2 (0, -g): the image of the torsion class.
    pub fn torsion_image(&self) -> (KtPoint, KtPoint) {
        let kt = self.e2.kt();
        let p = EcPoint::Affine(kt.zero(), kt.neg(&kt.from_poly(self.g.clone())));
        (EcPoint::Infinity, self.e2.curve.double(&p))
    }

    /// Push the class attached to a non-constant section (t(x), y(x)) of y^2 = g(t) + x^6.
    /// deg t = 2: D = P1 + P2 - inf+ - inf-, with a_D = (t(x) - t) / alpha.
    /// deg t = 1: D = P - inf^(-s) where y = s x^3 + ..., so Q2 picks up (0, s g).
    pub fn push_section(&self, sec: &Section) -> Result<(KtPoint, KtPoint)> {
        let k = &self.field;
        let kt = self.e1.kt();
        let r = PolyRing::new(k.clone());
        let (gamma, beta, alpha) = (r.coeff(&sec.t, 0), r.coeff(&sec.t, 1), r.coeff(&sec.t, 2));
        let g = kt.from_poly(self.g.clone());
        let tvar = kt.t();
        let cst = |a: &GfElem| kt.constant(a.clone());
        let q = if !k.is_zero(&alpha) {
            let ai = kt.inv(&cst(&alpha)).unwrap();
            let alg = QuadAlgebra { kt, b: kt.mul(&cst(&beta), &ai), c: kt.mul(&kt.sub(&cst(&gamma), &tvar), &ai) };
            // y(x) reduced modulo a_D
            let mut xp: AElem = (kt.zero(), kt.one());
            let mut yy: AElem = (kt.zero(), kt.zero());
            for co in sec.y.coeffs() {
                yy = (kt.add(&yy.0, &kt.mul(&xp.0, &cst(co))), kt.add(&yy.1, &kt.mul(&xp.1, &cst(co))));
                xp = alg.mul(&xp, &(kt.one(), kt.zero()));
            }
            let x2: AElem = (kt.neg(&alg.b), kt.neg(&alg.c));
            let q1 = alg.sum_conjugates(&self.e1.curve, &x2, &yy);
            let ci = kt.inv(&alg.c).ok_or_else(|| Error::MapUndefined("a_D(0) = 0".into()))?;
            let xinv: AElem = (kt.neg(&ci), kt.neg(&kt.mul(&alg.b, &ci)));
            let xinv2 = alg.mul(&xinv, &xinv);
            let xinv3 = alg.mul(&xinv2, &xinv);
            let xx = alg.scale(&xinv2, &g);
            let y2 = alg.scale(&alg.mul(&yy, &xinv3), &g);
            let q2 = alg.sum_conjugates(&self.e2.curve, &xx, &y2);
            (q1, q2)
        } else if !k.is_zero(&beta) {
            let bi = kt.inv(&cst(&beta)).unwrap();
            let xp = kt.neg(&kt.mul(&kt.sub(&cst(&gamma), &tvar), &bi));
            let mut yp = kt.zero();
            for co in sec.y.coeffs().iter().rev() {
                yp = kt.add(&kt.mul(&yp, &xp), &cst(co));
            }
            let s = r.coeff(&sec.y, 3);
            let (q1, p2) = bielliptic_push(self, &xp, &yp)?;
            let shift = EcPoint::Affine(kt.zero(), kt.mul(&cst(&s), &g));
            (q1, self.e2.curve.add(&p2, &shift))
        } else {
            return Err(Error::InvalidInput("constant sections do not give divisor classes".into()));
        };
        if !self.e1.curve.contains(&q.0) || !self.e2.curve.contains(&q.1) {
            return Err(Error::InternalConsistency("pushforward off the curve".into()));
        }
        Ok(q)
    }

    pub fn heights(&self, q: &(KtPoint, KtPoint)) -> Result<D6Heights> {
        let h1 = self.e1.height(&q.0)?;
        let h2 = self.e2.height(&q.1)?;
        let hj = (&h1 + &h2) / qi(2);
        Ok(D6Heights { h1, h2, hj })
    }

    pub fn pairing(&self, p: &(KtPoint, KtPoint), q: &(KtPoint, KtPoint)) -> Result<Q> {
        Ok((self.e1.pairing(&p.0, &q.0)? + self.e2.pairing(&p.1, &q.1)?) / qi(2))
    }

    pub fn add(&self, p: &(KtPoint, KtPoint), q: &(KtPoint, KtPoint)) -> (KtPoint, KtPoint) {
        (self.e1.curve.add(&p.0, &q.0), self.e2.curve.add(&p.1, &q.1))
    }
}

/// Push forward a section; convenience wrapper.
pub fn d6_push(pair: &BiellipticPair, sec: &Section) -> Result<(KtPoint, KtPoint)> {
    pair.push_section(sec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rationals::q;
    use super::super::lattice::{lattice_identify, GramMatrix, LatticeType};
    use super::super::sections::{section_search, Strategy};

    fn pair() -> BiellipticPair {
        let k = Gf::prime(67).unwrap();
        let r = PolyRing::new(k.clone());
        BiellipticPair::new(&k, r.from_ints(&[12, 2, 0, 1])).unwrap()
    }

    #[test]
    fn torsion_image_has_order_three_and_height_zero() {
        let p = pair();
        let (o, t) = p.torsion_image();
        assert!(o.is_infinity());
        assert_eq!(p.e2.curve.torsion_order(&t, 10).unwrap(), Some(3));
        assert_eq!(p.e2.height(&t).unwrap(), q(0, 1));
    }

    #[test]
    fn intersection_rules() {
        let k = Gf::prime(61).unwrap();
        let r = PolyRing::new(k.clone());
        let a = Section { t: r.from_ints(&[1, 2, 3]), y: r.from_ints(&[1, 0, 0, 1]) };
        let b = Section { t: r.from_ints(&[2, 2, 4]), y: r.from_ints(&[5, 0, 0, 2]) };
        assert_eq!(section_intersection(&k, &a, &b).unwrap(), 0);
        assert_eq!(section_intersection(&k, &a, &a), Err(Error::SelfIntersection));
        let na = Section { t: a.t.clone(), y: r.neg(&a.y) };
        // meets where y vanishes: three affine points
        assert_eq!(section_intersection(&k, &a, &na).unwrap(), 3);
        assert_eq!(shioda_pairing(&k, &a, &na, &[]).unwrap(), q(-2, 1));
    }

    fn kub(u: i64) -> [i64; 4] {
        let a = -27 * u.pow(4) + 324 * u.pow(3) - 378 * u * u - 324 * u - 27;
        let b = 54 * u.pow(6) - 972 * u.pow(5) + 4050 * u.pow(4) + 4050 * u * u + 972 * u + 54;
        [b, a, 0, 1]
    }

    #[test]
    fn d5_sections_span_e8() {
        let k = Gf::prime(61).unwrap();
        let r = PolyRing::new(k.clone());
        let s5 = SectionSurface::new(k.clone(), 5, r.from_ints(&kub(22))).unwrap();
        let fib = s5.singular_fibers().unwrap();
        let secs = section_search(&s5, Strategy::Scan, 1 << 30, 4, 1).unwrap().sections;
        assert_eq!(secs.len(), 240);
        let gm = GramMatrix::from_fn(240, |i, j| shioda_pairing(&k, &secs[i], &secs[j], &fib).unwrap()).unwrap();
        let rep = lattice_identify(&gm, 10_000_000).unwrap();
        assert_eq!((rep.kind, rep.rank, rep.min_count), (LatticeType::E8, 8, 240));
    }

    #[test]
    fn d6_heights_and_e6_dual() {
        let k = Gf::prime(67).unwrap();
        let r = PolyRing::new(k.clone());
        let s6 = SectionSurface::new(k.clone(), 6, r.from_ints(&[12, 2, 0, 1])).unwrap();
        let secs = section_search(&s6, Strategy::Scan, 1 << 30, 4, 1).unwrap().sections;
        let p = pair();
        let pts: Vec<_> = secs.iter().filter(|s| s.t.degree().unwrap_or(0) > 0).map(|s| p.push_section(s).unwrap()).collect();
        assert_eq!(pts.len(), 234);
        let mut hist = std::collections::BTreeMap::new();
        for pt in &pts {
            *hist.entry(p.heights(pt).unwrap().hj).or_insert(0) += 1;
        }
        assert_eq!(hist.into_iter().collect::<Vec<_>>(), vec![(q(4, 3), 162), (q(2, 1), 72)]);
        let gm = GramMatrix::from_fn(234, |i, j| p.pairing(&pts[i], &pts[j]).unwrap()).unwrap();
        let rep = lattice_identify(&gm, 10_000_000).unwrap();
        assert_eq!((rep.kind, rep.rank, rep.min_count), (LatticeType::E6Dual, 6, 54));
        assert_eq!(rep.determinant, q(1, 3));
    }
}
