//! Odd-degree hyperelliptic curves y^2 = f(x): Mumford representation and Cantor's algorithm.

mod enumerate;
mod oracle;

pub use enumerate::{count_points, enumerate_jacobian, l_polynomial_from_counts, zeta_l_polynomial, JacobianEnumeration, LPolynomial};
pub use oracle::{free_divisor_check, mumford_to_divisor, OracleReport};

use crate::error::{Error, Result};
use crate::exact_algebra::resultant::resultant;
use crate::exact_algebra::{Field, Gf, GfElem, Poly, PolyRing, Ring};

#[derive(Clone, Debug)]
pub struct HyperellipticCurve<F: Field> {
    pub ring: PolyRing<F>,
    pub f: Poly<F::Elem>,
    pub genus: usize,
}

/// A semi-reduced divisor sum P_i - (deg a) inf given by (a, b).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MumfordDivisor<E> {
    pub a: Poly<E>,
    pub b: Poly<E>,
}

impl<F: Field> HyperellipticCurve<F> {
    pub fn new(k: F, f: Poly<F::Elem>) -> Result<Self> {
        let ring = PolyRing::new(k);
        if ring.base.characteristic() == 2 {
            return Err(Error::UnsupportedField("characteristic 2".into()));
        }
        let n = f.degree().unwrap_or(0);
        if n < 3 || n % 2 == 0 {
            return Err(Error::UnsupportedCurve(format!("need odd degree at least 3, got {n}")));
        }
        if ring.gcd(&f, &ring.derivative(&f)).degree() != Some(0) {
            return Err(Error::UnsupportedCurve("f is not squarefree".into()));
        }
        Ok(HyperellipticCurve { ring, f, genus: (n - 1) / 2 })
    }

    pub fn field(&self) -> &F {
        &self.ring.base
    }

    pub fn identity(&self) -> MumfordDivisor<F::Elem> {
        MumfordDivisor { a: self.ring.one(), b: self.ring.zero() }
    }

    pub fn is_identity(&self, d: &MumfordDivisor<F::Elem>) -> bool {
        d.a.degree() == Some(0)
    }

    pub fn validate(&self, a: Poly<F::Elem>, b: Poly<F::Elem>) -> Result<MumfordDivisor<F::Elem>> {
        let r = &self.ring;
        if !r.is_monic(&a) {
            return Err(Error::Malformed("a must be monic".into()));
        }
        if b.deg_i() >= a.deg_i() {
            return Err(Error::Malformed("deg b must be less than deg a".into()));
        }
        let e = r.sub(&r.mul(&b, &b), &self.f);
        if !r.divides(&a, &e) {
            return Err(Error::NotOnJacobian("a does not divide b^2 - f".into()));
        }
        Ok(MumfordDivisor { a, b })
    }

    pub fn is_valid(&self, d: &MumfordDivisor<F::Elem>) -> bool {
        self.validate(d.a.clone(), d.b.clone()).is_ok()
    }

    /// The point (alpha, beta) minus infinity.
    pub fn point(&self, alpha: &F::Elem, beta: &F::Elem) -> Result<MumfordDivisor<F::Elem>> {
        let r = &self.ring;
        self.validate(r.linear_root(alpha), r.constant(beta.clone()))
    }

    pub fn neg(&self, d: &MumfordDivisor<F::Elem>) -> MumfordDivisor<F::Elem> {
        MumfordDivisor { a: d.a.clone(), b: self.ring.neg(&d.b) }
    }

    /// Cantor composition followed by reduction.
    pub fn cantor_add(&self, d1: &MumfordDivisor<F::Elem>, d2: &MumfordDivisor<F::Elem>) -> Result<MumfordDivisor<F::Elem>> {
        let r = &self.ring;
        for d in [d1, d2] {
            if !r.divides(&d.a, &r.sub(&r.mul(&d.b, &d.b), &self.f)) {
                return Err(Error::CurveMismatch("divisor does not lie on this curve".into()));
            }
        }
        let (d0, e1, e2) = r.xgcd(&d1.a, &d2.a)?;
        let (d, c1, c2) = r.xgcd(&d0, &r.add(&d1.b, &d2.b))?;
        let s1 = r.mul(&c1, &e1);
        let s2 = r.mul(&c1, &e2);
        let s3 = c2;
        let a = r.quo(&r.mul(&d1.a, &d2.a), &r.mul(&d, &d));
        let num = r.add(
            &r.add(&r.mul(&r.mul(&s1, &d1.a), &d2.b), &r.mul(&r.mul(&s2, &d2.a), &d1.b)),
            &r.mul(&s3, &r.add(&r.mul(&d1.b, &d2.b), &self.f)),
        );
        let b = r.rem(&r.quo(&num, &d), &a);
        Ok(self.reduce(MumfordDivisor { a, b }))
    }

    /// Reduce a semi-reduced divisor until deg a <= genus.
    pub fn reduce(&self, mut d: MumfordDivisor<F::Elem>) -> MumfordDivisor<F::Elem> {
        let r = &self.ring;
        while d.a.degree().unwrap() > self.genus {
            let a2 = r.monic(&r.quo(&r.sub(&self.f, &r.mul(&d.b, &d.b)), &d.a));
            let b2 = r.rem(&r.neg(&d.b), &a2);
            d = MumfordDivisor { a: a2, b: b2 };
        }
        let a = r.monic(&d.a);
        let b = r.rem(&d.b, &a);
        MumfordDivisor { a, b }
    }

    pub fn double(&self, d: &MumfordDivisor<F::Elem>) -> Result<MumfordDivisor<F::Elem>> {
        self.cantor_add(d, d)
    }

    pub fn scalar_mul(&self, n: i64, d: &MumfordDivisor<F::Elem>) -> Result<MumfordDivisor<F::Elem>> {
        let mut base = if n < 0 { self.neg(d) } else { d.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.cantor_add(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.double(&base)?;
            }
        }
        Ok(acc)
    }

    /// c_D(y) = Res_x(a_D(x), y - b_D(x)), the monic polynomial whose roots are the y-coordinates.
    pub fn c_polynomial(&self, d: &MumfordDivisor<F::Elem>) -> Result<Poly<F::Elem>> {
        if self.is_identity(d) {
            return Err(Error::EmptyDivisor);
        }
        let r = &self.ring;
        let ry = PolyRing::new(r.clone());
        // polynomials in x with coefficients in K[y]
        let ax = ry.from_coeffs(d.a.coeffs().iter().map(|c| r.constant(c.clone())).collect());
        let mut bx: Vec<Poly<F::Elem>> = d.b.coeffs().iter().map(|c| r.constant(self.field().neg(c))).collect();
        if bx.is_empty() {
            bx.push(r.zero());
        }
        bx[0] = r.add(&bx[0], &r.x());
        let bx = ry.from_coeffs(bx);
        resultant(&ry, &ax, &bx)
    }

    /// The y-coordinate polynomial evaluated back: c_D(b_D(x)) mod a_D(x).
    pub fn c_check(&self, d: &MumfordDivisor<F::Elem>, c: &Poly<F::Elem>) -> bool {
        let r = &self.ring;
        let mut acc = r.zero();
        for co in c.coeffs().iter().rev() {
            acc = r.rem(&r.add(&r.mul(&acc, &d.b), &r.constant(co.clone())), &d.a);
        }
        acc.is_zero()
    }
}

impl HyperellipticCurve<Gf> {
    /// Apply the p-power Frobenius k times to every coefficient.
    pub fn frobenius(&self, d: &MumfordDivisor<GfElem>, k: usize) -> MumfordDivisor<GfElem> {
        let kf = self.field();
        let r = &self.ring;
        let fr = |p: &Poly<GfElem>| r.from_coeffs(p.coeffs().iter().map(|x| kf.frobenius_pow(x, k)).collect());
        MumfordDivisor { a: fr(&d.a), b: fr(&d.b) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve() -> HyperellipticCurve<Gf> {
        let k = Gf::prime(7).unwrap();
        let r = PolyRing::new(k.clone());
        HyperellipticCurve::new(k, r.from_ints(&[2, 0, 0, 0, 0, 1])).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let c = curve();
        let k = c.field().clone();
        let r = &c.ring;
        assert!(c.is_valid(&c.identity()));
        // x = 1: y^2 = 3, not a square mod 7; x = 3: 3^5 + 2 = 245 = 0 mod 7
        let p = c.point(&k.from_int(3), &k.zero()).unwrap();
        assert_eq!(c.cantor_add(&p, &c.identity()).unwrap(), p);
        assert!(c.is_identity(&c.cantor_add(&p, &c.neg(&p)).unwrap()));
        assert!(c.is_identity(&c.double(&p).unwrap()));
        assert!(matches!(c.point(&k.from_int(1), &k.one()), Err(Error::NotOnJacobian(_))));
        assert!(matches!(c.validate(r.from_ints(&[1, 1]), r.from_ints(&[1, 1])), Err(Error::Malformed(_))));
        assert!(matches!(c.validate(r.from_ints(&[1, 2]), r.zero()), Err(Error::Malformed(_))));
    }

    #[test]
    fn c_polynomial_degree_and_roots() {
        let c = curve();
        let k = c.field().clone();
        let r = &c.ring;
        // x = 0: y^2 = 2 = 3^2 + ... 3^2 = 9 = 2
        let p = c.point(&k.zero(), &k.from_int(3)).unwrap();
        assert_eq!(c.c_polynomial(&p).unwrap(), r.from_ints(&[-3, 1]));
        let q = c.point(&k.from_int(3), &k.zero()).unwrap();
        let s = c.cantor_add(&p, &q).unwrap();
        let cs = c.c_polynomial(&s).unwrap();
        assert_eq!(cs.degree(), s.a.degree());
        assert!(c.c_check(&s, &cs));
        assert_eq!(c.c_polynomial(&c.identity()), Err(Error::EmptyDivisor));
    }

    #[test]
    fn scalar_mul_consistency() {
        let c = curve();
        let k = c.field().clone();
        let p = c.point(&k.zero(), &k.from_int(3)).unwrap();
        let s = c.cantor_add(&p, &p).unwrap();
        assert_eq!(c.scalar_mul(2, &p).unwrap(), s);
        assert!(c.is_identity(&c.scalar_mul(0, &p).unwrap()));
        assert_eq!(c.scalar_mul(-3, &p).unwrap(), c.scalar_mul(3, &c.neg(&p)).unwrap());
    }
}
