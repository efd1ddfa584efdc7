use std::fmt;
use std::sync::Mutex;

use crate::exact_algebra::factor::GfPoly;
use crate::exact_algebra::{Gf, GfElem, GfEmbedding, Laurent};

/// Identifies a place independently of how it was constructed.
///
/// `Affine { p, q }`: p(u) monic irreducible over K, q a monic irreducible factor of F(u0, v)
/// over K[u]/p, each coefficient written as a polynomial in u reduced mod p. Empty q on P^1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceKey {
    Affine { p: GfPoly, q: Vec<GfPoly> },
    Infinite(usize),
}

impl PlaceKey {
    pub fn is_infinite(&self) -> bool {
        matches!(self, PlaceKey::Infinite(_))
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Recipe {
    AffineU,
    AffineV,
    LineInfinity,
    HypOdd { g: usize },
    HypEven { g: usize, w0: GfElem },
    SuperA { b: usize },
    SuperB { b: usize },
    SuperC { m: usize, tau0: GfElem },
}

/// Local expansions of the coordinates in a uniformizer at a place.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub u: Laurent<GfElem>,
    /// None on the projective line
    pub v: Option<Laurent<GfElem>>,
}

impl Expansion {
    fn rel_prec(&self) -> usize {
        let a = self.u.c.len();
        match &self.v {
            Some(v) => a.min(v.c.len()),
            None => a,
        }
    }
}

pub struct Place {
    pub key: PlaceKey,
    pub(crate) curve: u64,
    /// residue field
    pub field: Gf,
    /// K -> residue field
    pub embed: GfEmbedding,
    /// [residue field : K]
    pub degree: usize,
    pub u0: Option<GfElem>,
    pub v0: Option<GfElem>,
    pub(crate) recipe: Recipe,
    /// for infinite places: a polynomial over K whose Frobenius orbit tracks the place
    pub(crate) label: GfPoly,
    cache: Mutex<Option<Expansion>>,
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Place({:?}, deg {})", self.key, self.degree)
    }
}

impl PartialEq for Place {
    fn eq(&self, o: &Self) -> bool {
        self.curve == o.curve && self.key == o.key
    }
}
impl Eq for Place {}

impl Place {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        key: PlaceKey,
        curve: u64,
        field: Gf,
        embed: GfEmbedding,
        degree: usize,
        u0: Option<GfElem>,
        v0: Option<GfElem>,
        recipe: Recipe,
        label: GfPoly,
    ) -> Place {
        Place { key, curve, field, embed, degree, u0, v0, recipe, label, cache: Mutex::new(None) }
    }

    pub fn is_infinite(&self) -> bool {
        self.key.is_infinite()
    }

    pub(crate) fn cached_expansion(&self, prec: usize) -> Option<Expansion> {
        let g = self.cache.lock().unwrap();
        g.as_ref().filter(|e| e.rel_prec() >= prec).cloned()
    }

    pub(crate) fn cached_prec(&self) -> usize {
        self.cache.lock().unwrap().as_ref().map(|e| e.rel_prec()).unwrap_or(0)
    }

    pub(crate) fn store_expansion(&self, e: Expansion) {
        let mut g = self.cache.lock().unwrap();
        if g.as_ref().map(|x| x.rel_prec()).unwrap_or(0) < e.rel_prec() {
            *g = Some(e);
        }
    }
}
