//! Elliptic curves y^2 = x^3 + a2 x^2 + a4 x + a6 over finite and function fields,
//! sections of the surfaces y^2 = g(t) + x^d, Shioda heights and lattice identification.

mod fibers;
mod heights;
mod lattice;
mod sections;

pub use fibers::{contribution, j_zero_fibers, FiberDatum, KodairaType};
pub use heights::{
    bielliptic_push, d6_push, section_intersection, shioda_pairing, BiellipticPair, D6Heights, JZeroSurface, KtPoint,
};
pub use lattice::{e6_dual_gram, e6_gram, e8_gram, lattice_identify, GramMatrix, LatticeReport, LatticeType};
pub use sections::{section_search, EliminationReport, Section, SectionSearch, SectionSurface, Strategy};

use crate::error::{Error, Result};
use crate::exact_algebra::Field;

/// Curve y^2 = x^3 + a2 x^2 + a4 x + a6 (short form when a2 = 0), char != 2.
#[derive(Clone, Debug)]
pub struct EllipticCurve<F: Field> {
    pub field: F,
    pub a2: F::Elem,
    pub a4: F::Elem,
    pub a6: F::Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EcPoint<E> {
    Infinity,
    Affine(E, E),
}

impl<E> EcPoint<E> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, EcPoint::Infinity)
    }
}

impl<F: Field> EllipticCurve<F> {
    pub fn new(field: F, a2: F::Elem, a4: F::Elem, a6: F::Elem) -> Result<Self> {
        if field.characteristic() == 2 {
            return Err(Error::UnsupportedField("characteristic 2".into()));
        }
        let e = EllipticCurve { field, a2, a4, a6 };
        if e.field.is_zero(&e.cubic_discriminant()) {
            return Err(Error::DegenerateInput("singular cubic".into()));
        }
        Ok(e)
    }

    pub fn short(field: F, a: F::Elem, b: F::Elem) -> Result<Self> {
        let z = field.zero();
        Self::new(field, z, a, b)
    }

    /// Model of y^2 = c3 t^3 + c2 t^2 + c1 t + c0 via x = c3 t, y' = c3 y.
    pub fn from_cubic(field: F, c: [F::Elem; 4]) -> Result<Self> {
        let [c0, c1, c2, c3] = c;
        if field.is_zero(&c3) {
            return Err(Error::DegenerateInput("cubic has degree below 3".into()));
        }
        let a4 = field.mul(&c1, &c3);
        let a6 = field.mul(&c0, &field.mul(&c3, &c3));
        Self::new(field, c2, a4, a6)
    }

    /// Discriminant of x^3 + a2 x^2 + a4 x + a6.
    pub fn cubic_discriminant(&self) -> F::Elem {
        let k = &self.field;
        let (a, b, c) = (&self.a2, &self.a4, &self.a6);
        let t1 = k.mul(&k.mul(a, a), &k.mul(b, b));
        let t2 = k.scale_int(&k.pow(b, 3), -4);
        let t3 = k.scale_int(&k.mul(&k.pow(a, 3), c), -4);
        let t4 = k.scale_int(&k.mul(c, c), -27);
        let t5 = k.scale_int(&k.mul(&k.mul(a, b), c), 18);
        k.sum([&t1, &t2, &t3, &t4, &t5])
    }

    pub fn rhs(&self, x: &F::Elem) -> F::Elem {
        let k = &self.field;
        let mut acc = k.add(x, &self.a2);
        acc = k.add(&k.mul(&acc, x), &self.a4);
        k.add(&k.mul(&acc, x), &self.a6)
    }

    pub fn contains(&self, p: &EcPoint<F::Elem>) -> bool {
        match p {
            EcPoint::Infinity => true,
            EcPoint::Affine(x, y) => self.field.mul(y, y) == self.rhs(x),
        }
    }

    pub fn point(&self, x: F::Elem, y: F::Elem) -> Result<EcPoint<F::Elem>> {
        let p = EcPoint::Affine(x, y);
        if self.contains(&p) {
            Ok(p)
        } else {
            Err(Error::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &EcPoint<F::Elem>) -> EcPoint<F::Elem> {
        match p {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine(x, y) => EcPoint::Affine(x.clone(), self.field.neg(y)),
        }
    }

    pub fn add(&self, p: &EcPoint<F::Elem>, q: &EcPoint<F::Elem>) -> EcPoint<F::Elem> {
        let k = &self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (EcPoint::Infinity, _) => return q.clone(),
            (_, EcPoint::Infinity) => return p.clone(),
            (EcPoint::Affine(a, b), EcPoint::Affine(c, d)) => (a, b, c, d),
        };
        let lambda = if x1 == x2 {
            if k.is_zero(&k.add(y1, y2)) {
                return EcPoint::Infinity;
            }
            // tangent slope (3x^2 + 2 a2 x + a4) / 2y
            let num = k.add(&k.add(&k.scale_int(&k.mul(x1, x1), 3), &k.scale_int(&k.mul(&self.a2, x1), 2)), &self.a4);
            k.div(&num, &k.scale_int(y1, 2)).unwrap()
        } else {
            k.div(&k.sub(y2, y1), &k.sub(x2, x1)).unwrap()
        };
        let x3 = k.sub(&k.sub(&k.sub(&k.mul(&lambda, &lambda), &self.a2), x1), x2);
        let y3 = k.neg(&k.add(&k.mul(&lambda, &k.sub(&x3, x1)), y1));
        EcPoint::Affine(x3, y3)
    }

    pub fn sub(&self, p: &EcPoint<F::Elem>, q: &EcPoint<F::Elem>) -> EcPoint<F::Elem> {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &EcPoint<F::Elem>) -> EcPoint<F::Elem> {
        self.add(p, p)
    }

    pub fn mul(&self, n: i64, p: &EcPoint<F::Elem>) -> EcPoint<F::Elem> {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = EcPoint::Infinity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Least n <= bound with nP = O.
    pub fn torsion_order(&self, p: &EcPoint<F::Elem>, bound: u64) -> Result<Option<u64>> {
        if bound == 0 {
            return Err(Error::InvalidInput("torsion bound must be at least 1".into()));
        }
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_infinity() {
                return Ok(Some(n));
            }
            acc = self.add(&acc, p);
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{Gf, Ring};

    fn kubert(k: &Gf, u: i64) -> (EllipticCurve<Gf>, EcPoint<crate::exact_algebra::GfElem>) {
        let a = -27 * u.pow(4) + 324 * u.pow(3) - 378 * u * u - 324 * u - 27;
        let b = 54 * u.pow(6) - 972 * u.pow(5) + 4050 * u.pow(4) + 4050 * u * u + 972 * u + 54;
        let e = EllipticCurve::short(k.clone(), k.from_int(a), k.from_int(b)).unwrap();
        let p = e.point(k.from_int(3 * u * u - 18 * u + 3), k.from_int(-108 * u)).unwrap();
        (e, p)
    }

    #[test]
    fn kubert_five_torsion() {
        let k = Gf::prime(10007).unwrap();
        for u in 1..=3 {
            let (e, p) = kubert(&k, u);
            assert_eq!(e.torsion_order(&p, 100).unwrap(), Some(5));
            assert!(e.mul(5, &p).is_infinity());
            for j in 1..5 {
                assert!(!e.mul(j, &p).is_infinity());
            }
        }
        let (_, p) = kubert(&k, 1);
        assert_eq!(p, EcPoint::Affine(k.from_int(-12), k.from_int(-108)));
    }

    #[test]
    fn group_law_basics() {
        let k = Gf::prime(101).unwrap();
        let e = EllipticCurve::new(k.clone(), k.from_int(3), k.from_int(5), k.from_int(7)).unwrap();
        let pts: Vec<_> = k
            .elements()
            .filter_map(|x| k.sqrt(&e.rhs(&x)).map(|y| EcPoint::Affine(x, y)))
            .take(12)
            .collect();
        for a in &pts {
            assert!(e.contains(a));
            assert!(e.add(a, &e.neg(a)).is_infinity());
            for b in &pts {
                assert_eq!(e.add(a, b), e.add(b, a));
                for c in pts.iter().take(4) {
                    assert_eq!(e.add(&e.add(a, b), c), e.add(a, &e.add(b, c)));
                }
            }
        }
        assert_eq!(e.torsion_order(&EcPoint::Infinity, 1).unwrap(), Some(1));
        assert!(EllipticCurve::short(k.clone(), k.zero(), k.zero()).is_err());
    }

    use crate::exact_algebra::SqrtField;
}
