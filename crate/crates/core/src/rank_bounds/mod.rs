//! Rank bound calculators and the Pillai identity checks.

use serde::{Deserialize, Serialize};

use crate::descent_maps::{sigma2, ComponentGroupTable};
use crate::error::{Error, Result};

/// Data for the rank bounds; conductor degree and reduction data are inputs, never computed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundInput {
    pub d_a: i64,
    pub g_b: i64,
    pub conductor_degree: i64,
    #[serde(default)]
    pub dim_pic_x_2: Option<i64>,
    #[serde(default)]
    pub dim_pic_b_2: Option<i64>,
    #[serde(default)]
    pub components: Option<ComponentGroupTable>,
    /// rank known by other means, checked against both bounds
    #[serde(default)]
    pub known_rank: Option<i64>,
    /// where the conductor degree came from
    #[serde(default)]
    pub provenance: Option<String>,
}

impl BoundInput {
    pub fn validate(&self) -> Result<()> {
        let dims = [Some(self.d_a), Some(self.g_b), Some(self.conductor_degree), self.dim_pic_x_2, self.dim_pic_b_2];
        if dims.iter().flatten().any(|&x| x < 0) {
            return Err(Error::InvalidInput("dimensions and degrees must be nonnegative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundValue {
    pub value: i64,
    /// set when the value is negative, so the bound says nothing beyond rank >= 0
    pub vacuous: bool,
    pub note: String,
}

/// 2 d_A (2 g_B - 2) + deg f_A, reported as is.
pub fn geometric_bound(inp: &BoundInput) -> Result<BoundValue> {
    inp.validate()?;
    let value = 2 * inp.d_a * (2 * inp.g_b - 2) + inp.conductor_degree;
    Ok(BoundValue { value, vacuous: value < 0, note: "assumes the k(B)/k-trace of A is zero".into() })
}

/// dim Pic(X)[2] - dim Pic(B)[2] + dim H^0(B, Phi / 2 Phi).
pub fn thm13_bound(dim_pic_x_2: i64, dim_pic_b_2: i64, h0_phi_2: i64) -> Result<i64> {
    if dim_pic_x_2 < 0 || dim_pic_b_2 < 0 || h0_phi_2 < 0 {
        return Err(Error::InvalidInput("dimensions must be nonnegative".into()));
    }
    Ok(dim_pic_x_2 - dim_pic_b_2 + h0_phi_2)
}

/// The descent bound from a full input; the component term comes from the table (empty table: 0).
pub fn thm13_from_input(inp: &BoundInput) -> Result<Option<BoundValue>> {
    inp.validate()?;
    let (Some(x), Some(b)) = (inp.dim_pic_x_2, inp.dim_pic_b_2) else { return Ok(None) };
    let h0 = match &inp.components {
        Some(t) => sigma2(t, 2)?.h0_dim as i64,
        None => 0,
    };
    let value = thm13_bound(x, b, h0)?;
    Ok(Some(BoundValue { value, vacuous: false, note: format!("component term {h0}") }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PillaiChain {
    pub value: i64,
    /// (2^a, 2^b) with value = 2^a - 2^b
    pub two_powers: (u32, u32),
    /// (p, c, e) with value = p^c - p^e
    pub prime_powers: (i64, u32, u32),
    pub scale: i64,
    /// c with 2^a - p^c = 2^b - p^e = c, i.e. two solutions of 2^x - p^y = c;
    /// None for scaled chains, which are not of that form
    pub pillai_c: Option<i64>,
    pub holds: bool,
}

fn chain(value: i64, scale: i64, a: u32, b: u32, p: i64, c: u32, e: u32) -> PillaiChain {
    let two = 2i64.pow(a) - 2i64.pow(b);
    let other = scale * (p.pow(c) - p.pow(e));
    let (c1, c2) = (2i64.pow(a) - p.pow(c), 2i64.pow(b) - p.pow(e));
    let pillai_c = (scale == 1).then_some(c1);
    let pillai_ok = scale != 1 || (c1 == c2 && c1 != 0);
    PillaiChain { value, two_powers: (a, b), prime_powers: (p, c, e), scale, pillai_c, holds: two == value && other == value && pillai_ok }
}

/// 120 = 2^7 - 2^3 = 5^3 - 5, 240 = 2^8 - 2^4 = 3^5 - 3 = 2 (5^3 - 5), 6 = 2^3 - 2 = 3^2 - 3, 24 = 2^5 - 2^3 = 3^3 - 3.
pub fn pillai_checks() -> Vec<PillaiChain> {
    vec![
        chain(120, 1, 7, 3, 5, 3, 1),
        chain(240, 1, 8, 4, 3, 5, 1),
        chain(240, 2, 8, 4, 5, 3, 1),
        chain(6, 1, 3, 1, 3, 2, 1),
        chain(24, 1, 5, 3, 3, 3, 1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inp(d_a: i64, g_b: i64, f: i64) -> BoundInput {
        BoundInput { d_a, g_b, conductor_degree: f, ..Default::default() }
    }

    #[test]
    fn formula_values() {
        assert_eq!(geometric_bound(&inp(1, 0, 12)).unwrap().value, 8);
        assert_eq!(geometric_bound(&inp(2, 0, 16)).unwrap().value, 8);
        assert_eq!(geometric_bound(&inp(1, 1, 0)).unwrap().value, 0);
        let neg = geometric_bound(&inp(1, 0, 2)).unwrap();
        assert!(neg.vacuous && neg.value == -2);
        assert!(geometric_bound(&inp(-1, 0, 0)).is_err());
        assert_eq!(thm13_bound(8, 0, 0).unwrap(), 8);
        assert_eq!(thm13_bound(0, 0, 5).unwrap(), 5);
        let full = BoundInput { dim_pic_x_2: Some(8), dim_pic_b_2: Some(0), ..inp(2, 0, 16) };
        assert_eq!(thm13_from_input(&full).unwrap().unwrap().value, 8);
    }

    #[test]
    fn pillai() {
        let c = pillai_checks();
        assert_eq!(c.len(), 5);
        assert!(c.iter().all(|x| x.holds));
        let cs: Vec<i64> = c.iter().filter_map(|x| x.pillai_c).collect();
        assert_eq!(cs, vec![3, 13, -1, 5]);
    }
}
