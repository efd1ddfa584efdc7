use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::{One, Signed, Zero};

use super::{Curve, Place, PlaceKey};
use crate::error::{Error, Result};
use crate::exact_algebra::factor::GfPoly;
use crate::exact_algebra::rationals::{q_to_string, Q};

/// A formal integer combination of places.
#[derive(Clone, Debug, Default)]
pub struct Divisor {
    terms: BTreeMap<PlaceKey, (Arc<Place>, i64)>,
}

impl PartialEq for Divisor {
    fn eq(&self, o: &Self) -> bool {
        self.terms.len() == o.terms.len() && self.terms.iter().zip(o.terms.iter()).all(|((k1, (_, a)), (k2, (_, b)))| k1 == k2 && a == b)
    }
}
impl Eq for Divisor {}

impl Divisor {
    pub fn new() -> Divisor {
        Divisor::default()
    }

    pub fn from_place(p: &Arc<Place>, n: i64) -> Divisor {
        let mut d = Divisor::new();
        d.add_term(p, n);
        d
    }

    pub fn add_term(&mut self, p: &Arc<Place>, n: i64) {
        if n == 0 {
            return;
        }
        let e = self.terms.entry(p.key.clone()).or_insert_with(|| (p.clone(), 0));
        e.1 += n;
        if e.1 == 0 {
            self.terms.remove(&p.key);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Arc<Place>, i64)> {
        self.terms.values().map(|(p, n)| (p, *n))
    }

    pub fn coeff(&self, k: &PlaceKey) -> i64 {
        self.terms.get(k).map(|x| x.1).unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.iter().map(|(p, n)| n * p.degree as i64).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.iter().all(|(_, n)| n >= 0)
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in o.iter() {
            d.add_term(p, n);
        }
        d
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> Divisor {
        let mut d = Divisor::new();
        for (p, n) in self.iter() {
            d.add_term(p, n * k);
        }
        d
    }

    /// Positive and negative parts.
    pub fn split(&self) -> (Divisor, Divisor) {
        let mut pos = Divisor::new();
        let mut neg = Divisor::new();
        for (p, n) in self.iter() {
            if n > 0 {
                pos.add_term(p, n);
            } else {
                neg.add_term(p, -n);
            }
        }
        (pos, neg)
    }

    /// Exact division of every coefficient; None if some coefficient is not divisible.
    pub fn div_exact(&self, k: i64) -> Option<Divisor> {
        let mut d = Divisor::new();
        for (p, n) in self.iter() {
            if n % k != 0 {
                return None;
            }
            d.add_term(p, n / k);
        }
        Some(d)
    }

    pub fn to_q(&self) -> QDivisor {
        let mut d = QDivisor::new();
        for (p, n) in self.iter() {
            d.add_term(p, Q::from_integer(n.into()));
        }
        d
    }

    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.iter().map(|(p, n)| format!("{n}*{}", describe_key(&p.key))).collect::<Vec<_>>().join(" + ")
    }
}

pub(crate) fn describe_key(k: &PlaceKey) -> String {
    match k {
        PlaceKey::Infinite(i) => format!("inf{i}"),
        PlaceKey::Affine { p, q } => {
            let show = |c: &GfPoly| format!("{:?}", c.coeffs().iter().map(|e| e.to_vec()).collect::<Vec<_>>());
            format!("[{} | {}]", show(p), q.iter().map(show).collect::<Vec<_>>().join(","))
        }
    }
}

/// A formal rational combination of places.
#[derive(Clone, Debug, Default)]
pub struct QDivisor {
    terms: BTreeMap<PlaceKey, (Arc<Place>, Q)>,
}

impl PartialEq for QDivisor {
    fn eq(&self, o: &Self) -> bool {
        self.terms.len() == o.terms.len() && self.terms.iter().zip(o.terms.iter()).all(|((k1, (_, a)), (k2, (_, b)))| k1 == k2 && a == b)
    }
}

impl QDivisor {
    pub fn new() -> QDivisor {
        QDivisor::default()
    }

    pub fn add_term(&mut self, p: &Arc<Place>, n: Q) {
        if n.is_zero() {
            return;
        }
        let e = self.terms.entry(p.key.clone()).or_insert_with(|| (p.clone(), Q::zero()));
        e.1 += n;
        if e.1.is_zero() {
            self.terms.remove(&p.key);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Arc<Place>, &Q)> {
        self.terms.values().map(|(p, n)| (p, n))
    }

    pub fn coeff(&self, k: &PlaceKey) -> Q {
        self.terms.get(k).map(|x| x.1.clone()).unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Q {
        self.iter().fold(Q::zero(), |acc, (p, n)| acc + n * Q::from_integer((p.degree as i64).into()))
    }

    pub fn add(&self, o: &QDivisor) -> QDivisor {
        let mut d = self.clone();
        for (p, n) in o.iter() {
            d.add_term(p, n.clone());
        }
        d
    }

    pub fn scale(&self, k: &Q) -> QDivisor {
        let mut d = QDivisor::new();
        for (p, n) in self.iter() {
            d.add_term(p, n * k);
        }
        d
    }

    pub fn neg(&self) -> QDivisor {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, o: &QDivisor) -> QDivisor {
        self.add(&o.neg())
    }

    /// The integral divisor, if every coefficient is an integer.
    pub fn to_integral(&self) -> Option<Divisor> {
        let mut d = Divisor::new();
        for (p, n) in self.iter() {
            if !n.is_integer() {
                return None;
            }
            let v: i64 = n.to_integer().try_into().ok()?;
            d.add_term(p, v);
        }
        Some(d)
    }

    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.iter().map(|(p, n)| format!("{}*{}", q_to_string(n), describe_key(&p.key))).collect::<Vec<_>>().join(" + ")
    }

    pub fn has_negative(&self) -> bool {
        self.iter().any(|(_, n)| n.is_negative())
    }
}

/// A finite set of places allowed to carry rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sigma {
    pub places: BTreeSet<PlaceKey>,
}

impl Sigma {
    pub fn empty() -> Sigma {
        Sigma::default()
    }

    /// Every place over the given finite base points (monic irreducible in u) and, optionally,
    /// every infinite place; the inverse image is taken with reduced structure.
    pub fn over(curve: &Curve, finite: &[GfPoly], infinity: bool) -> Result<Sigma> {
        let mut places = BTreeSet::new();
        for p in finite {
            for pl in curve.places_over(p)? {
                places.insert(pl.key.clone());
            }
        }
        if infinity {
            for pl in curve.infinite_places() {
                places.insert(pl.key.clone());
            }
        }
        Ok(Sigma { places })
    }

    pub fn contains(&self, k: &PlaceKey) -> bool {
        self.places.contains(k)
    }
}

/// A class in Pic(Y, Q.Sigma): a rational divisor with non-integral coefficients only on Sigma.
#[derive(Clone, Debug)]
pub struct QPicClass {
    pub curve: Curve,
    pub rep: QDivisor,
    pub sigma: Sigma,
}

/// Coefficient denominators this implementation accepts.
const ALLOWED_DENOMINATORS: [i64; 3] = [1, 2, 5];

impl QPicClass {
    pub fn new(curve: &Curve, rep: QDivisor, sigma: Sigma) -> Result<QPicClass> {
        for (p, n) in rep.iter() {
            if p.curve != curve.fingerprint() {
                return Err(Error::CurveMismatch("divisor place from another curve".into()));
            }
            if !n.is_integer() {
                if !sigma.contains(&p.key) {
                    return Err(Error::Malformed("rational coefficient outside Sigma".into()));
                }
                let den: i64 = n.denom().try_into().unwrap_or(i64::MAX);
                if !ALLOWED_DENOMINATORS.contains(&den) {
                    return Err(Error::UnsupportedDenominator(den.to_string()));
                }
            }
        }
        Ok(QPicClass { curve: curve.clone(), rep, sigma })
    }

    pub fn from_divisor(curve: &Curve, d: &Divisor, sigma: Sigma) -> Result<QPicClass> {
        QPicClass::new(curve, d.to_q(), sigma)
    }

    fn compatible(&self, o: &QPicClass) -> Result<()> {
        if self.curve != o.curve {
            return Err(Error::CurveMismatch("classes on different curves".into()));
        }
        if self.sigma != o.sigma {
            return Err(Error::InvalidInput("classes with different Sigma".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &QPicClass) -> Result<QPicClass> {
        self.compatible(o)?;
        Ok(QPicClass { curve: self.curve.clone(), rep: self.rep.add(&o.rep), sigma: self.sigma.clone() })
    }

    pub fn sub(&self, o: &QPicClass) -> Result<QPicClass> {
        self.compatible(o)?;
        Ok(QPicClass { curve: self.curve.clone(), rep: self.rep.sub(&o.rep), sigma: self.sigma.clone() })
    }

    pub fn scale(&self, k: i64) -> QPicClass {
        QPicClass { curve: self.curve.clone(), rep: self.rep.scale(&Q::from_integer(k.into())), sigma: self.sigma.clone() }
    }

    pub fn zero(curve: &Curve, sigma: Sigma) -> QPicClass {
        QPicClass { curve: curve.clone(), rep: QDivisor::new(), sigma }
    }

    pub(crate) fn check_same(&self, o: &QPicClass) -> Result<()> {
        self.compatible(o)
    }
}
