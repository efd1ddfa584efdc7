use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::finite::is_prime_u64;
use crate::exact_algebra::linalg::fp_kernel;

/// Component group at one bad place: cyclic invariants and the residue Frobenius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentPlace {
    pub label: String,
    pub residue_degree: usize,
    /// orders n_1, ..., n_k of the cyclic factors (each >= 1)
    pub invariants: Vec<u64>,
    /// column i is the image of the i-th generator, as coefficients on the generators
    pub frobenius: Vec<Vec<i64>>,
    #[serde(default)]
    pub residue_characteristic: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentGroupTable {
    pub places: Vec<ComponentPlace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sigma2Report {
    /// labels of the places where (Phi_v / l Phi_v)(k_v) is nonzero
    pub places: Vec<String>,
    /// sum over v of dim_F_l (Phi_v / l Phi_v)(k_v)
    pub h0_dim: usize,
}

const MAX_GROUP: u64 = 1 << 20;

impl ComponentPlace {
    pub fn trivial(label: &str) -> ComponentPlace {
        ComponentPlace { label: label.into(), residue_degree: 1, invariants: vec![], frobenius: vec![], residue_characteristic: None }
    }

    pub fn cyclic(label: &str, n: u64) -> ComponentPlace {
        ComponentPlace { label: label.into(), residue_degree: 1, invariants: vec![n], frobenius: vec![vec![1]], residue_characteristic: None }
    }

    fn apply(&self, x: &[u64]) -> Vec<u64> {
        let k = self.invariants.len();
        (0..k)
            .map(|j| {
                let n = self.invariants[j] as i128;
                let s: i128 = (0..k).map(|i| self.frobenius[j][i] as i128 * x[i] as i128).sum();
                s.rem_euclid(n) as u64
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Error::Malformed(format!("component table at {}: {m}", self.label));
        let k = self.invariants.len();
        if self.residue_degree == 0 {
            return Err(bad("residue degree 0"));
        }
        if self.invariants.iter().any(|&n| n == 0) {
            return Err(bad("cyclic order 0"));
        }
        if self.frobenius.len() != k || self.frobenius.iter().any(|r| r.len() != k) {
            return Err(bad("Frobenius matrix has the wrong shape"));
        }
        // column i must send a generator of order n_i to an element killed by n_i
        for i in 0..k {
            for j in 0..k {
                let v = (self.invariants[i] as i128 * self.frobenius[j][i] as i128).rem_euclid(self.invariants[j] as i128);
                if v != 0 {
                    return Err(bad("Frobenius does not respect the cyclic orders"));
                }
            }
        }
        let order: u64 = self.invariants.iter().try_fold(1u64, |a, &n| a.checked_mul(n)).unwrap_or(u64::MAX);
        if order > MAX_GROUP {
            return Err(bad("group too large to check bijectivity"));
        }
        let mut seen = vec![false; order as usize];
        let mut x = vec![0u64; k];
        for _ in 0..order {
            let y = self.apply(&x);
            let idx = y.iter().zip(&self.invariants).fold(0u64, |a, (c, n)| a * n + c) as usize;
            if seen[idx] {
                return Err(bad("Frobenius is not an automorphism"));
            }
            seen[idx] = true;
            for (c, n) in x.iter_mut().zip(&self.invariants).rev() {
                *c += 1;
                if *c < *n {
                    break;
                }
                *c = 0;
            }
        }
        Ok(())
    }

    /// dim over F_l of the Frobenius invariants of Phi / l Phi.
    pub fn invariant_dim(&self, ell: u64) -> usize {
        let keep: Vec<usize> = (0..self.invariants.len()).filter(|&i| self.invariants[i] % ell == 0).collect();
        let n = keep.len();
        if n == 0 {
            return 0;
        }
        let rows: Vec<Vec<u64>> = keep
            .iter()
            .enumerate()
            .map(|(a, &j)| {
                keep.iter()
                    .enumerate()
                    .map(|(b, &i)| {
                        let m = self.frobenius[j][i].rem_euclid(ell as i64) as u64;
                        (m + ell - u64::from(a == b)) % ell
                    })
                    .collect()
            })
            .collect();
        fp_kernel(rows, n, ell).len()
    }
}

pub fn sigma2(table: &ComponentGroupTable, ell: u64) -> Result<Sigma2Report> {
    if !is_prime_u64(ell) {
        return Err(Error::InvalidInput(format!("{ell} is not prime")));
    }
    let mut out = Sigma2Report { places: vec![], h0_dim: 0 };
    for pl in &table.places {
        pl.validate()?;
        if pl.residue_characteristic == Some(ell) {
            return Err(Error::InvalidInput(format!("{ell} is not invertible at {}", pl.label)));
        }
        let dim = pl.invariant_dim(ell);
        if dim > 0 {
            out.places.push(pl.label.clone());
            out.h0_dim += dim;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let t = ComponentGroupTable { places: vec![ComponentPlace::trivial("a"), ComponentPlace::trivial("inf")] };
        assert_eq!(sigma2(&t, 2).unwrap(), Sigma2Report { places: vec![], h0_dim: 0 });
        let t = ComponentGroupTable { places: vec![ComponentPlace::cyclic("v", 2)] };
        assert_eq!(sigma2(&t, 2).unwrap().h0_dim, 1);
        let t = ComponentGroupTable { places: vec![ComponentPlace::cyclic("v", 3)] };
        assert!(sigma2(&t, 2).unwrap().places.is_empty());
        assert_eq!(sigma2(&t, 3).unwrap().h0_dim, 1);
    }

    #[test]
    fn frobenius_action() {
        // Z/2 x Z/2 with Frobenius swapping the factors: invariants are the diagonal
        let mut p = ComponentPlace::trivial("v");
        p.invariants = vec![2, 2];
        p.frobenius = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(p.invariant_dim(2), 1);
        // Z/4 with x -> -x: Phi / 2 Phi = Z/2, fixed
        let mut q = ComponentPlace::cyclic("w", 4);
        q.frobenius = vec![vec![-1]];
        assert_eq!(q.invariant_dim(2), 1);
        let mut bad = ComponentPlace::cyclic("b", 4);
        bad.frobenius = vec![vec![2]];
        assert!(bad.validate().is_err());
        let mut bad2 = ComponentPlace::trivial("c");
        bad2.invariants = vec![2, 4];
        bad2.frobenius = vec![vec![1, 1], vec![0, 0]];
        assert!(bad2.validate().is_err());
        assert!(sigma2(&ComponentGroupTable::default(), 4).is_err());
    }
}
