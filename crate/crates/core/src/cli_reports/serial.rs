//! JSON shapes for field data. Elements are coordinate vectors over the prime field.

use serde::{Deserialize, Serialize};

use crate::elliptic_ff::{EcPoint, Section};
use crate::error::{Error, Result};
use crate::exact_algebra::rationals::{q_from_str, q_to_string};
use crate::exact_algebra::{FieldDescriptor, Gf, GfElem, GfPoly, PolyRing, Q};

pub type ElemJson = Vec<u64>;
pub type PolyJson = Vec<ElemJson>;

pub fn elem_json(a: &GfElem) -> ElemJson {
    a.to_vec()
}

pub fn elem_from_json(k: &Gf, a: &ElemJson) -> Result<GfElem> {
    if a.len() != k.degree() || a.iter().any(|&c| c >= k.p()) {
        return Err(Error::Malformed(format!("field element {a:?}")));
    }
    Ok(k.from_coords(a))
}

pub fn poly_json(p: &GfPoly) -> PolyJson {
    p.coeffs().iter().map(elem_json).collect()
}

pub fn poly_from_json(k: &Gf, p: &PolyJson) -> Result<GfPoly> {
    let c = p.iter().map(|a| elem_from_json(k, a)).collect::<Result<Vec<_>>>()?;
    Ok(PolyRing::new(k.clone()).from_coeffs(c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionJson {
    pub t: PolyJson,
    pub y: PolyJson,
}

impl SectionJson {
    pub fn new(s: &Section) -> Self {
        SectionJson { t: poly_json(&s.t), y: poly_json(&s.y) }
    }

    pub fn decode(&self, k: &Gf) -> Result<Section> {
        Ok(Section { t: poly_from_json(k, &self.t)?, y: poly_from_json(k, &self.y)? })
    }
}

/// null for the point at infinity.
pub type PointJson = Option<(ElemJson, ElemJson)>;

pub fn point_json(p: &EcPoint<GfElem>) -> PointJson {
    match p {
        EcPoint::Infinity => None,
        EcPoint::Affine(x, y) => Some((elem_json(x), elem_json(y))),
    }
}

pub fn point_from_json(k: &Gf, p: &PointJson) -> Result<EcPoint<GfElem>> {
    Ok(match p {
        None => EcPoint::Infinity,
        Some((x, y)) => EcPoint::Affine(elem_from_json(k, x)?, elem_from_json(k, y)?),
    })
}

pub fn rational_json(x: &Q) -> String {
    q_to_string(x)
}

pub fn rational_from_json(s: &str) -> Result<Q> {
    q_from_str(s).ok_or_else(|| Error::Malformed(format!("rational {s:?}")))
}

pub fn matrix_json(m: &[Vec<Q>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(rational_json).collect()).collect()
}

pub fn matrix_from_json(m: &[Vec<String>]) -> Result<Vec<Vec<Q>>> {
    m.iter().map(|r| r.iter().map(|s| rational_from_json(s)).collect()).collect()
}

pub fn field_json(k: &Gf) -> FieldDescriptor {
    k.descriptor()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{build_extension, rationals::q, Ring};

    #[test]
    fn round_trips() {
        let k = build_extension(&Gf::prime(7).unwrap(), 3, 1).unwrap().field;
        let r = PolyRing::new(k.clone());
        let p = r.from_coeffs(vec![k.generator(), k.from_int(3), k.one()]);
        let j = serde_json::to_string(&poly_json(&p)).unwrap();
        let back: PolyJson = serde_json::from_str(&j).unwrap();
        assert_eq!(poly_from_json(&k, &back).unwrap(), p);
        let f: FieldDescriptor = serde_json::from_str(&serde_json::to_string(&field_json(&k)).unwrap()).unwrap();
        assert_eq!(f.to_field().unwrap(), k);
        assert_eq!(rational_from_json(&rational_json(&q(-4, 6))).unwrap(), q(-2, 3));
        assert_eq!(rational_json(&q(2, 1)), "2/1");
        assert!(elem_from_json(&k, &vec![1, 2]).is_err());
        assert!(rational_from_json("1/0").is_err());
    }
}
