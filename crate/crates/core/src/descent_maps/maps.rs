use std::collections::HashMap;

use crate::curves_places::{is_principal, principal_divisor, riemann_roch_dim, CurveFn, CurveKind, Divisor, QDivisor, QPicClass, Sigma};
use crate::curves_places::Curve;
use crate::elliptic_ff::{EcPoint, EllipticCurve, Section};
use crate::error::{Error, Result};
use crate::exact_algebra::factor::GfPoly;
use crate::exact_algebra::{Field, Gf, GfElem, Poly, PolyRing, RatFn, RatFuncs, Ring};
use crate::mumford_jacobian::{HyperellipticCurve, MumfordDivisor};

pub type Kt = RatFuncs<Gf>;
pub type KtElem = RatFn<GfElem>;
pub type KtDivisorPair = MumfordDivisor<KtElem>;

/// The curve C: y^2 = x^d + g(t) over k(t) and the curves its descent maps land on.
#[derive(Clone, Debug)]
pub struct DescentSetting {
    pub field: Gf,
    pub d: usize,
    pub g: GfPoly,
    pub kt: Kt,
    /// x^d + g(t) = 0, in coordinates u = t, v = x
    pub x_curve: Curve,
    /// Cantor arithmetic on C (odd d only)
    pub jac: Option<HyperellipticCurve<Kt>>,
}

impl DescentSetting {
    pub fn new(field: &Gf, d: usize, g: GfPoly) -> Result<Self> {
        if d != 5 && d != 6 {
            return Err(Error::InvalidInput(format!("d = {d}: only 5 and 6 are supported")));
        }
        let p = field.p();
        if 30 % p == 0 || (d == 6 && 6 % p == 0) {
            return Err(Error::UnsupportedField(format!("characteristic {p}")));
        }
        let kt = RatFuncs::new(field.clone());
        let x_curve = Curve::superelliptic(field, d, g.clone())?;
        let jac = if d % 2 == 1 {
            let pr = PolyRing::new(kt.clone());
            let mut c = vec![kt.zero(); d + 1];
            c[0] = kt.from_poly(g.clone());
            c[d] = kt.one();
            Some(HyperellipticCurve::new(kt.clone(), pr.from_coeffs(c))?)
        } else {
            None
        };
        Ok(DescentSetting { field: field.clone(), d, g, kt, x_curve, jac })
    }

    fn kx(&self) -> PolyRing<Kt> {
        PolyRing::new(self.kt.clone())
    }

    fn jac(&self) -> Result<&HyperellipticCurve<Kt>> {
        self.jac.as_ref().ok_or_else(|| Error::UnsupportedCurve("even degree: see the d = 6 negative test".into()))
    }

    /// The Mumford pair attached to a section (t(x), y(x)) with t non-constant:
    /// a = (t(x) - t) / lc, b = y(x) mod a.
    pub fn section_divisor(&self, sec: &Section) -> Result<KtDivisorPair> {
        let k = &self.field;
        let r = PolyRing::new(k.clone());
        let kx = self.kx();
        let lift = |p: &GfPoly| kx.from_coeffs(p.coeffs().iter().map(|c| self.kt.constant(c.clone())).collect());
        let deg = sec.t.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::MapUndefined("constant t(x) gives no divisor".into()));
        }
        let lc = r.coeff(&sec.t, deg);
        let shifted = kx.sub(&lift(&sec.t), &kx.constant(self.kt.t()));
        let a = kx.scale(&shifted, &self.kt.constant(k.inv(&lc).unwrap()));
        let b = kx.rem(&lift(&sec.y), &a);
        let d = MumfordDivisor { a, b };
        if let Some(j) = &self.jac {
            return j.validate(d.a, d.b);
        }
        let e = kx.sub(&kx.mul(&d.b, &d.b), &self.c_poly());
        if !kx.divides(&d.a, &e) {
            return Err(Error::NotOnJacobian("section does not lie on the surface".into()));
        }
        Ok(d)
    }

    fn c_poly(&self) -> Poly<KtElem> {
        let mut c = vec![self.kt.zero(); self.d + 1];
        c[0] = self.kt.from_poly(self.g.clone());
        c[self.d] = self.kt.one();
        self.kx().from_coeffs(c)
    }

    /// Inverse of section_divisor on R: a = x^2 + b x + c0 + c1 t with b, c0, c1 constant.
    pub fn divisor_section(&self, d: &KtDivisorPair) -> Result<Section> {
        let k = &self.field;
        let kt = &self.kt;
        let r = PolyRing::new(k.clone());
        let not_r = || Error::NotInImage("divisor is not of the form x^2 + b x + c(t)".into());
        if d.a.degree() != Some(2) {
            return Err(not_r());
        }
        let cst = |e: &KtElem| kt.as_polynomial(e).filter(|p| p.degree().unwrap_or(0) == 0).map(|p| r.coeff(&p, 0));
        let b1 = cst(&d.a.coeffs()[1]).ok_or_else(not_r)?;
        let c = kt.as_polynomial(&d.a.coeffs()[0]).filter(|p| p.degree() == Some(1)).ok_or_else(not_r)?;
        let c1 = r.coeff(&c, 1);
        let m = k.neg(&k.inv(&c1).unwrap());
        let t = r.from_coeffs(vec![k.mul(&r.coeff(&c, 0), &m), k.mul(&b1, &m), m]);
        let mut y = r.zero();
        let mut xp = r.one();
        for co in d.b.coeffs() {
            let co = kt.as_polynomial(co).ok_or_else(not_r)?;
            y = r.add(&y, &r.mul(&r.compose(&co, &t), &xp));
            xp = r.mul(&xp, &r.x());
        }
        let mut rhs = r.compose(&self.g, &t);
        rhs = r.add(&rhs, &r.monomial(k.one(), self.d));
        if y.degree().unwrap_or(0) > 3 || r.mul(&y, &y) != rhs {
            return Err(Error::InternalConsistency("recovered section is off the surface".into()));
        }
        Ok(Section { t, y })
    }
}

/// A polynomial in one variable over k(t), read as a function of (u, v) = (t, var).
pub fn kt_poly_function(curve: &Curve, p: &Poly<KtElem>) -> Result<CurveFn> {
    let r = curve.upoly();
    let bi = curve.bi();
    let den = p.coeffs().iter().fold(r.one(), |acc, c| {
        let g = r.gcd(&acc, &c.den);
        r.mul(&acc, &r.quo(&c.den, &g))
    });
    let num: Vec<GfPoly> = p.coeffs().iter().map(|c| r.mul(&c.num, &r.quo(&den, &c.den))).collect();
    curve.fn_from(bi.from_coeffs(num), bi.constant(den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapTag {
    Phi2,
    Theta,
    FiveDescent,
}

#[derive(Clone, Debug)]
pub enum DescentImage {
    /// class of (1/2) div(a_D) in Pic(X, Q.Sigma)
    Class(QPicClass),
    /// effective theta characteristic and l(Theta)
    Theta { divisor: Divisor, l: usize },
    /// point of E: y^2 = g(t), in (t, y) coordinates
    Torsion(EcPoint<GfElem>),
}

/// A function and its claimed divisor on a curve.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub curve: Curve,
    pub function: CurveFn,
    pub divisor: Divisor,
}

impl Certificate {
    pub(crate) fn new(curve: &Curve, function: CurveFn) -> Result<Self> {
        let divisor = principal_divisor(curve, &function)?;
        if divisor.degree() != 0 {
            return Err(Error::InternalConsistency("principal divisor of nonzero degree".into()));
        }
        Ok(Certificate { curve: curve.clone(), function, divisor })
    }

    pub fn recheck(&self) -> Result<bool> {
        let d = principal_divisor(&self.curve, &self.function)?;
        Ok(d == self.divisor && d.degree() == 0)
    }
}

#[derive(Clone, Debug)]
pub struct DescentReport {
    pub tag: MapTag,
    pub input: KtDivisorPair,
    pub image: DescentImage,
    pub certificate: Certificate,
}

impl DescentReport {
    /// Re-run every principality claim from scratch.
    pub fn verify(&self) -> Result<bool> {
        if !self.certificate.recheck()? {
            return Ok(false);
        }
        let div = &self.certificate.divisor;
        Ok(match &self.image {
            DescentImage::Class(c) => c.rep.scale(&crate::exact_algebra::rationals::qi(2)) == div.to_q(),
            DescentImage::Theta { divisor, l } => {
                let inf = Divisor::from_place(&self.certificate.curve.infinite_places()[0], 6);
                divisor.scale(2).sub(&inf) == *div && riemann_roch_dim(&self.certificate.curve, divisor)? == *l
            }
            DescentImage::Torsion(t) => {
                let Some(a) = div.div_exact(5) else { return Ok(false) };
                let (e, to, _) = elliptic_model(&self.certificate.curve)?;
                let s = sum_on_curve(&self.certificate.curve, &a)?;
                s == *t && !t.is_infinity() && e.mul(5, &to(t)).is_infinity()
            }
        })
    }
}

/// phi_2: [D] -> (1/2) div(a_D) on X, as a class in Pic(X, Q.Sigma).
pub fn phi2(s: &DescentSetting, d: &KtDivisorPair, sigma: &Sigma) -> Result<DescentReport> {
    if s.d % 2 == 0 {
        return Err(Error::UnsupportedCurve("phi_2 needs odd degree; the even case is the negative test".into()));
    }
    s.jac()?.validate(d.a.clone(), d.b.clone())?;
    half_div_a(s, d, sigma, MapTag::Phi2)
}

/// (1/2) div(a_D) without the odd-degree guard; the d = 6 negative test uses this formal expression.
pub(crate) fn half_div_a(s: &DescentSetting, d: &KtDivisorPair, sigma: &Sigma, tag: MapTag) -> Result<DescentReport> {
    let f = kt_poly_function(&s.x_curve, &d.a)?;
    let cert = Certificate::new(&s.x_curve, f)?;
    let mut half = QDivisor::new();
    let h = crate::exact_algebra::rationals::q(1, 2);
    for (pl, n) in cert.divisor.iter() {
        half.add_term(pl, crate::exact_algebra::rationals::qi(n) * &h);
    }
    let class = QPicClass::new(&s.x_curve, half, sigma.clone())
        .map_err(|e| Error::InternalConsistency(format!("(1/2) div(a_D) is not integral off Sigma: {e}")))?;
    Ok(DescentReport { tag, input: d.clone(), image: DescentImage::Class(class), certificate: cert })
}

/// Theta = (1/2) div(a_D) + 3 inf on x^5 + g(t) = 0, for D in R.
pub fn theta_map(s: &DescentSetting, d: &KtDivisorPair) -> Result<DescentReport> {
    if s.d != 5 {
        return Err(Error::UnsupportedCurve("theta map is defined for d = 5".into()));
    }
    s.divisor_section(d)?;
    let f = kt_poly_function(&s.x_curve, &d.a)?;
    let cert = Certificate::new(&s.x_curve, f)?;
    let half = cert.divisor.div_exact(2).ok_or_else(|| Error::InternalConsistency("div(a_D) is not even".into()))?;
    let theta = half.add(&Divisor::from_place(&s.x_curve.infinite_places()[0], 3));
    if !theta.is_effective() {
        return Err(Error::InternalConsistency("theta characteristic is not effective".into()));
    }
    let l = riemann_roch_dim(&s.x_curve, &theta)?;
    Ok(DescentReport { tag: MapTag::Theta, input: d.clone(), image: DescentImage::Theta { divisor: theta, l }, certificate: cert })
}

/// E: y^2 = g(t) as a curve in (u, v) = (t, y).
pub fn elliptic_base(s: &DescentSetting) -> Result<Curve> {
    Curve::hyperelliptic(&s.field, s.g.clone())
}

type ModelMap = Box<dyn Fn(&EcPoint<GfElem>) -> EcPoint<GfElem>>;

/// Monic model X = c3 t, Y = c3 y of v^2 = g(u), with the coordinate change and its inverse.
fn elliptic_model(curve: &Curve) -> Result<(EllipticCurve<Gf>, ModelMap, ModelMap)> {
    let CurveKind::Hyperelliptic { f } = curve.kind() else { return Err(Error::UnsupportedCurve("need y^2 = g(t)".into())) };
    let k = curve.field().clone();
    let r = curve.upoly();
    if f.degree() != Some(3) {
        return Err(Error::UnsupportedCurve("need a cubic".into()));
    }
    let c: [GfElem; 4] = std::array::from_fn(|i| r.coeff(f, i));
    let c3 = c[3].clone();
    let c3i = k.inv(&c3).unwrap();
    let e = EllipticCurve::from_cubic(k.clone(), c)?;
    let (k1, k2) = (k.clone(), k);
    let to: ModelMap = Box::new(move |p| match p {
        EcPoint::Infinity => EcPoint::Infinity,
        EcPoint::Affine(x, y) => EcPoint::Affine(k1.mul(x, &c3), k1.mul(y, &c3)),
    });
    let from: ModelMap = Box::new(move |p| match p {
        EcPoint::Infinity => EcPoint::Infinity,
        EcPoint::Affine(x, y) => EcPoint::Affine(k2.mul(x, &c3i), k2.mul(y, &c3i)),
    });
    Ok((e, to, from))
}

/// Sum of a divisor on an elliptic curve under the group law (with O the point at infinity).
pub fn sum_on_curve(curve: &Curve, a: &Divisor) -> Result<EcPoint<GfElem>> {
    let CurveKind::Hyperelliptic { f } = curve.kind() else { unreachable!() };
    let k = curve.field();
    let r = curve.upoly();
    let mut models: HashMap<usize, EllipticCurve<Gf>> = HashMap::new();
    let e_k = elliptic_model(curve)?;
    let mut total = EcPoint::Infinity;
    for (pl, n) in a.iter() {
        if pl.is_infinite() {
            continue;
        }
        let (u0, v0) = match (&pl.u0, &pl.v0) {
            (Some(u), Some(v)) => (u.clone(), v.clone()),
            _ => return Err(Error::InternalConsistency("affine place without coordinates".into())),
        };
        let l = &pl.field;
        let emb = &pl.embed;
        let c3 = emb.apply(&r.coeff(f, 3));
        let e = models.entry(pl.degree).or_insert_with(|| {
            let c: [GfElem; 4] = std::array::from_fn(|i| emb.apply(&r.coeff(f, i)));
            EllipticCurve::from_cubic(l.clone(), c).expect("base change of a smooth cubic")
        });
        let dk = k.degree();
        let mut orbit = EcPoint::Infinity;
        let mut x = l.mul(&u0, &c3);
        let mut y = l.mul(&v0, &c3);
        for _ in 0..pl.degree {
            orbit = e.add(&orbit, &EcPoint::Affine(x.clone(), y.clone()));
            x = l.frobenius_pow(&x, dk);
            y = l.frobenius_pow(&y, dk);
        }
        let down = match orbit {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => {
                let pull = |z: &GfElem| emb.preimage(z).ok_or_else(|| Error::InternalConsistency("orbit sum not rational".into()));
                EcPoint::Affine(pull(&x)?, pull(&y)?)
            }
        };
        total = e_k.0.add(&total, &e_k.0.mul(n, &down));
    }
    Ok((e_k.2)(&total))
}

/// The 5-isogeny descent: (1/5) div(c_D) on E: y^2 = g(t), summed to a point T.
pub fn five_descent(s: &DescentSetting, e_curve: &Curve, d: &KtDivisorPair) -> Result<DescentReport> {
    if s.d != 5 {
        return Err(Error::UnsupportedCurve("five-descent is defined for d = 5".into()));
    }
    let j = s.jac()?;
    let c = j.c_polynomial(d)?;
    if !j.c_check(d, &c) {
        return Err(Error::InternalConsistency("c_D does not vanish on D".into()));
    }
    let f = kt_poly_function(e_curve, &c)?;
    let cert = Certificate::new(e_curve, f)?;
    let a = cert.divisor.div_exact(5).ok_or_else(|| Error::NotInImage("div(c_D) is not divisible by 5".into()))?;
    let t = sum_on_curve(e_curve, &a)?;
    let (e, to, _) = elliptic_model(e_curve)?;
    if t.is_infinity() || !e.mul(5, &to(&t)).is_infinity() {
        return Err(Error::NotInImage("(1/5) div(c_D) is not a nonzero 5-torsion class".into()));
    }
    Ok(DescentReport { tag: MapTag::FiveDescent, input: d.clone(), image: DescentImage::Torsion(t), certificate: cert })
}

/// Is Theta linearly equivalent to Theta'? Uses uniqueness of effective representatives when l = 1.
pub fn theta_equal(curve: &Curve, a: (&Divisor, usize), b: (&Divisor, usize)) -> Result<bool> {
    if a.0 == b.0 {
        return Ok(true);
    }
    if a.1 == 1 || b.1 == 1 {
        return Ok(false);
    }
    Ok(is_principal(curve, &a.0.sub(b.0))?.is_some())
}

/// The point of R' attached to a Kubert curve, sqrt(5) and a fifth root w as in the closed formulas.
pub fn explicit_five_torsion_section(k: &Gf, u: i64, sqrt5: &GfElem, w: &GfElem) -> Section {
    let r = PolyRing::new(k.clone());
    let n = |a: i64| k.from_int(a);
    let inv = |a: i64| k.inv(&n(a)).unwrap();
    let w2 = k.mul(w, w);
    let w3 = k.mul(&w2, w);
    let t2 = k.mul(&k.mul(&k.sub(&n(3), sqrt5), &inv(72)), &w2);
    let t0 = n(3 * u * u - 18 * u + 3);
    let y3 = k.mul(&k.mul(&k.sub(&n(2), sqrt5), &inv(216)), &w3);
    let y2c = k.add(&k.mul(&k.sub(sqrt5, &n(3)), &n(u)), &k.sub(&n(7), sqrt5));
    let y2 = k.mul(&k.mul(&y2c, &inv(24)), &w2);
    let y1 = k.neg(&k.mul(&n(3 * u - 3), w));
    Section { t: r.from_coeffs(vec![t0, w.clone(), t2]), y: r.from_coeffs(vec![n(-108 * u), y1, y2, y3]) }
}
