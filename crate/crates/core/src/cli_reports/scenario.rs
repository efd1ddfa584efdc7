use serde::{Deserialize, Serialize};

use super::poly_text::{format_poly, parse_poly, parse_surface};
use crate::elliptic_ff::{SectionSurface, Strategy};
use crate::error::{Error, Result};
use crate::exact_algebra::{Gf, GfPoly, PolyRing};
use crate::rank_bounds::BoundInput;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceTag {
    D5,
    D6,
    CustomHyperelliptic,
}

/// The Kubert curve y^2 = t^3 + a t + b with 5-torsion point (3u^2 - 18u + 3, -108u); coefficients low to high.
pub fn kubert_cubic(u: i64) -> [i64; 4] {
    let a = -27 * u.pow(4) + 324 * u.pow(3) - 378 * u * u - 324 * u - 27;
    let b = 54 * u.pow(6) - 972 * u.pow(5) + 4050 * u.pow(4) + 4050 * u * u + 972 * u + 54;
    [b, a, 0, 1]
}

pub fn kubert_point(u: i64) -> (i64, i64) {
    (3 * u * u - 18 * u + 3, -108 * u)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KubertJob {
    pub p: u64,
    pub u_values: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitPointJob {
    pub p: u64,
    pub u: i64,
    /// degree of the extension holding sqrt(5) and the fifth roots w
    pub extension_degree: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JacobianOp {
    Add,
    Mul,
    CPolynomial,
    Enumerate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorText {
    pub a: String,
    pub b: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JacobianJob {
    pub operation: JacobianOp,
    #[serde(default)]
    pub operands: Vec<DivisorText>,
    #[serde(default)]
    pub n: Option<i64>,
    /// extension degrees used for point counts; defaults to the genus
    #[serde(default)]
    pub count_degrees: Option<usize>,
}

/// A scenario file. Command-line flags override seed, budget, tower_max and strategy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub surface: SurfaceTag,
    pub p: u64,
    #[serde(default)]
    pub kubert_u: Option<i64>,
    /// g(t) as a polynomial literal
    #[serde(default)]
    pub g: Option<String>,
    /// "x^d + g(t)"
    #[serde(default)]
    pub equation: Option<String>,
    /// f(x) for custom-hyperelliptic
    #[serde(default)]
    pub f: Option<String>,
    #[serde(default = "default_tower_max")]
    pub tower_max: usize,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_strategy")]
    pub strategy: Strategy,
    #[serde(default)]
    pub kubert_check: Option<KubertJob>,
    #[serde(default)]
    pub explicit_point: Option<ExplicitPointJob>,
    #[serde(default)]
    pub jacobian: Option<JacobianJob>,
    #[serde(default)]
    pub rank_bound: Option<BoundInput>,
}

fn default_tower_max() -> usize {
    1024
}
fn default_budget() -> u64 {
    1 << 30
}
fn default_seed() -> u64 {
    1
}
fn default_strategy() -> Strategy {
    Strategy::Both
}

impl Scenario {
    fn base(surface: SurfaceTag, p: u64) -> Scenario {
        Scenario {
            schema_version: super::SCHEMA_VERSION,
            surface,
            p,
            kubert_u: None,
            g: None,
            equation: None,
            f: None,
            tower_max: default_tower_max(),
            budget: default_budget(),
            seed: default_seed(),
            strategy: default_strategy(),
            kubert_check: None,
            explicit_point: None,
            jacobian: None,
            rank_bound: None,
        }
    }

    /// The documented d = 5 instance: Kubert parameter 22 over F_61, where all 240 sections are rational.
    pub fn default_d5() -> Scenario {
        Scenario {
            kubert_u: Some(22),
            kubert_check: Some(KubertJob { p: 10007, u_values: vec![1, 2, 3] }),
            explicit_point: Some(ExplicitPointJob { p: 10007, u: 1, extension_degree: 4 }),
            ..Scenario::base(SurfaceTag::D5, 61)
        }
    }

    /// The documented d = 6 instance: g = t^3 + 2t + 12 over F_67.
    pub fn default_d6() -> Scenario {
        Scenario { g: Some("t^3 + 2*t + 12".into()), ..Scenario::base(SurfaceTag::D6, 67) }
    }

    /// y^2 = x^5 + 2 over F_7, full enumeration.
    pub fn default_jacobian() -> Scenario {
        Scenario {
            f: Some("x^5 + 2".into()),
            jacobian: Some(JacobianJob { operation: JacobianOp::Enumerate, operands: vec![], n: None, count_degrees: None }),
            ..Scenario::base(SurfaceTag::CustomHyperelliptic, 7)
        }
    }

    pub fn from_json(text: &str) -> Result<Scenario> {
        let sc: Scenario = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("scenario: {e}")))?;
        if sc.schema_version != super::SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!("unsupported schema_version {}", sc.schema_version)));
        }
        Ok(sc)
    }

    pub fn field(&self) -> Result<Gf> {
        Gf::prime(self.p)
    }

    pub fn exponent(&self) -> Result<usize> {
        match self.surface {
            SurfaceTag::D5 => Ok(5),
            SurfaceTag::D6 => Ok(6),
            SurfaceTag::CustomHyperelliptic => Err(Error::InvalidInput("custom-hyperelliptic has no surface exponent".into())),
        }
    }

    /// g(t) from kubert_u, g or equation. Several may be given (a resolved echo carries
    /// both kubert_u and g) as long as they agree.
    pub fn g_poly(&self) -> Result<GfPoly> {
        let k = self.field()?;
        let d = self.exponent()?;
        let mut found: Vec<GfPoly> = vec![];
        if let Some(u) = self.kubert_u {
            found.push(PolyRing::new(k.clone()).from_ints(&kubert_cubic(u)));
        }
        if let Some(g) = &self.g {
            found.push(parse_poly(g, "t", &k)?);
        }
        if let Some(eq) = &self.equation {
            let (de, g) = parse_surface(eq, &k)?;
            if de != d {
                return Err(Error::InvalidInput(format!("equation has x^{de}, surface needs x^{d}")));
            }
            found.push(g);
        }
        let Some(g) = found.first().cloned() else {
            return Err(Error::InvalidInput("give one of kubert_u, g, equation".into()));
        };
        if found.iter().any(|h| *h != g) {
            return Err(Error::InvalidInput("kubert_u, g and equation disagree".into()));
        }
        Ok(g)
    }

    /// Loads and checks the surface: characteristic prime to 30 (d = 5) or 6 (d = 6), g a squarefree cubic.
    pub fn surface(&self) -> Result<SectionSurface> {
        let k = self.field()?;
        SectionSurface::new(k, self.exponent()?, self.g_poly()?)
    }

    pub fn f_poly(&self) -> Result<GfPoly> {
        let f = self.f.as_ref().ok_or_else(|| Error::InvalidInput("custom-hyperelliptic needs f".into()))?;
        parse_poly(f, "x", &self.field()?)
    }

    /// The scenario with g written out, as echoed in reports.
    pub fn resolved(&self) -> Result<Scenario> {
        let mut s = self.clone();
        if self.surface != SurfaceTag::CustomHyperelliptic {
            let k = self.field()?;
            s.g = Some(format_poly(&k, &self.g_poly()?, "t")?);
            s.equation = None;
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_sources_must_agree() {
        let mut sc = Scenario::default_d5();
        let echo = sc.resolved().unwrap();
        assert!(echo.kubert_u.is_some() && echo.g.is_some());
        assert_eq!(echo.g_poly().unwrap(), sc.g_poly().unwrap());
        sc.g = Some("t^3 + 1".into());
        assert!(sc.g_poly().is_err());
        sc.kubert_u = None;
        sc.g = None;
        assert!(sc.g_poly().is_err());
    }

    #[test]
    fn defaults_load() {
        let d5 = Scenario::default_d5();
        assert_eq!(d5.surface().unwrap().g, PolyRing::new(Gf::prime(61).unwrap()).from_ints(&kubert_cubic(22)));
        let text = serde_json::to_string(&d5).unwrap();
        assert_eq!(Scenario::from_json(&text).unwrap(), d5);
        assert!(Scenario::default_d6().surface().is_ok());
        let mut bad = Scenario::default_d6();
        bad.p = 3;
        assert!(bad.surface().is_err());
        let mut bad = Scenario::default_d5();
        bad.p = 5;
        assert!(bad.surface().is_err());
        let mut two = Scenario::default_d5();
        two.g = Some("t^3 + 1".into());
        assert!(two.g_poly().is_err());
    }

    #[test]
    fn rejects_unknown_fields_and_versions() {
        assert!(Scenario::from_json(r#"{"schema_version":1,"surface":"d6","p":67,"g":"t^3+1","bogus":1}"#).is_err());
        assert!(Scenario::from_json(r#"{"schema_version":2,"surface":"d6","p":67,"g":"t^3+1"}"#).is_err());
        let s = Scenario::from_json(r#"{"schema_version":1,"surface":"d6","p":67,"equation":"x^6 + t^3 + 2*t + 12"}"#).unwrap();
        assert_eq!(s.resolved().unwrap().g.as_deref(), Some("t^3 + 2*t + 12"));
        let s = Scenario::from_json(r#"{"schema_version":1,"surface":"d6","p":67,"g":"t^3 + 3*t^2 + 3*t + 1"}"#).unwrap();
        assert!(s.surface().is_err());
    }
}
