use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_algebra::linalg::{det, inverse, rank, solve};
use crate::exact_algebra::rationals::{q, qi, Rationals, Q};

/// Symmetric matrix of pairings over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<Q>>,
}

impl GramMatrix {
    pub fn new(entries: Vec<Vec<Q>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput("Gram matrix is not square".into()));
            }
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
                }
            }
        }
        Ok(GramMatrix { entries })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Q) -> Result<Self> {
        GramMatrix::new((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    fn sub(&self, idx: &[usize]) -> Vec<Vec<Q>> {
        idx.iter().map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LatticeType {
    E8,
    E6,
    E6Dual,
    A1,
    Unknown,
}

#[derive(Clone, Debug)]
pub struct LatticeReport {
    pub rank: usize,
    pub determinant: Q,
    pub min_norm: Option<Q>,
    pub min_count: usize,
    pub norm2_count: usize,
    pub kind: LatticeType,
    /// Gram matrix of an LLL-reduced basis of the generated lattice
    pub basis_gram: Vec<Vec<Q>>,
    /// false when enumeration ran out of budget
    pub complete: bool,
}

fn cartan(n: usize, edges: &[(usize, usize)]) -> GramMatrix {
    let mut m = vec![vec![Q::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = qi(2);
    }
    for &(a, b) in edges {
        m[a][b] = qi(-1);
        m[b][a] = qi(-1);
    }
    GramMatrix { entries: m }
}

pub fn e8_gram() -> GramMatrix {
    cartan(8, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)])
}

pub fn e6_gram() -> GramMatrix {
    cartan(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
}

/// Inverse of the E6 Cartan matrix: a Gram matrix of the dual lattice.
pub fn e6_dual_gram() -> GramMatrix {
    GramMatrix { entries: inverse(&Rationals, &e6_gram().entries).expect("E6 is nondegenerate") }
}

/// Row-style Hermite reduction; returns the nonzero rows spanning the same Z-module.
fn hnf_rows(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut piv = 0;
    for col in 0..ncols {
        loop {
            let best = (piv..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| rows[i][col].abs());
            let Some(b) = best else { break };
            rows.swap(piv, b);
            let mut done = true;
            for i in piv + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let f = rows[i][col].div_floor(&rows[piv][col]);
                for j in 0..ncols {
                    let v = &rows[piv][j] * &f;
                    rows[i][j] -= v;
                }
                if !rows[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if (piv..rows.len()).any(|i| !rows[i][col].is_zero()) {
            piv += 1;
        }
    }
    rows.truncate(piv);
    rows
}

fn gram_of(g: &[Vec<Q>], basis: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = g.len();
    let gb: Vec<Vec<Q>> = basis.iter().map(|b| (0..n).map(|j| (0..n).map(|i| &b[i] * &g[i][j]).sum()).collect()).collect();
    gb.iter().map(|u| basis.iter().map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum()).collect()).collect()
}

/// Exact LLL (delta = 3/4) on a Gram matrix; returns the reduced Gram.
fn lll(mut g: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let n = g.len();
    let delta = q(3, 4);
    let gso = |g: &Vec<Vec<Q>>| {
        let mut mu = vec![vec![Q::zero(); n]; n];
        let mut b = vec![Q::zero(); n];
        for i in 0..n {
            for j in 0..i {
                let mut s = g[i][j].clone();
                for k in 0..j {
                    s -= &mu[j][k] * &mu[i][k] * &b[k];
                }
                mu[i][j] = s / &b[j];
            }
            let mut s = g[i][i].clone();
            for k in 0..i {
                s -= &mu[i][k] * &mu[i][k] * &b[k];
            }
            b[i] = s;
        }
        (mu, b)
    };
    // b_i <- b_i - c b_j
    let reduce = |g: &mut Vec<Vec<Q>>, i: usize, j: usize, c: &Q| {
        for k in 0..n {
            let v = c * &g[j][k];
            g[i][k] -= v;
        }
        for k in 0..n {
            let v = c * &g[k][j];
            g[k][i] -= v;
        }
    };
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let (mu, _) = gso(&g);
            let c = mu[k][j].round();
            if !c.is_zero() {
                reduce(&mut g, k, j, &c);
            }
        }
        let (mu, b) = gso(&g);
        if b[k] >= (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1] {
            k += 1;
        } else {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            k = k.max(2) - 1;
        }
    }
    g
}

struct Enumeration {
    norms: Vec<Q>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

/// All nonzero integer vectors with norm <= bound, by Fincke-Pohst over an exact LDL^T.
fn short_vectors(g: &[Vec<Q>], bound: &Q, budget: u64) -> (Vec<Q>, bool) {
    let n = g.len();
    // Q(x) = sum_i d_i (x_i + sum_{j > i} l_ij x_j)^2
    let mut l = vec![vec![Q::zero(); n]; n];
    let mut d = vec![Q::zero(); n];
    let mut a: Vec<Vec<Q>> = g.to_vec();
    for i in 0..n {
        d[i] = a[i][i].clone();
        for j in i + 1..n {
            l[i][j] = &a[i][j] / &d[i];
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let v = &l[i][j] * &a[i][k];
                a[j][k] -= v;
            }
        }
    }
    let mut st = Enumeration { norms: vec![], nodes: 0, budget, exhausted: false };
    let mut x = vec![BigInt::zero(); n];
    fn rec(i: usize, rem: Q, x: &mut Vec<BigInt>, l: &[Vec<Q>], dd: &[Q], bound: &Q, st: &mut Enumeration) {
        st.nodes += 1;
        if st.nodes > st.budget {
            st.exhausted = true;
            return;
        }
        let n = dd.len();
        let mut c = Q::zero();
        for j in i + 1..n {
            c -= &l[i][j] * Q::from_integer(x[j].clone());
        }
        let start = c.round().to_integer();
        let visit = |v: BigInt, x: &mut Vec<BigInt>, st: &mut Enumeration| -> bool {
            let diff = Q::from_integer(v.clone()) - &c;
            let used = &dd[i] * &diff * &diff;
            if used > rem {
                return false;
            }
            x[i] = v;
            let r2 = &rem - &used;
            if i == 0 {
                if x.iter().any(|c| !c.is_zero()) {
                    st.norms.push(bound - &r2);
                }
            } else {
                rec(i - 1, r2, x, l, dd, bound, st);
            }
            true
        };
        let mut v = start.clone();
        while visit(v.clone(), x, st) && !st.exhausted {
            v += 1;
        }
        let mut v: BigInt = start - 1;
        while visit(v.clone(), x, st) && !st.exhausted {
            v -= 1;
        }
        x[i] = BigInt::zero();
    }
    if n > 0 {
        rec(n - 1, bound.clone(), &mut x, &l, &d, bound, &mut st);
    }
    (st.norms, !st.exhausted)
}

/// Rank, determinant and short vectors of the lattice generated by vectors with Gram matrix g.
pub fn lattice_identify(g: &GramMatrix, budget: u64) -> Result<LatticeReport> {
    let k = Rationals;
    // a maximal independent subset
    let mut basis_idx: Vec<usize> = vec![];
    for i in 0..g.dim() {
        let mut cand = basis_idx.clone();
        cand.push(i);
        if rank(&k, &g.sub(&cand)) == cand.len() {
            basis_idx = cand;
        }
    }
    let r = basis_idx.len();
    if r == 0 {
        return Ok(LatticeReport {
            rank: 0,
            determinant: Q::one(),
            min_norm: None,
            min_count: 0,
            norm2_count: 0,
            kind: LatticeType::Unknown,
            basis_gram: vec![],
            complete: true,
        });
    }
    let gbb = g.sub(&basis_idx);
    if det(&k, &gbb) <= Q::zero() {
        return Err(Error::InvalidInput("Gram matrix is not positive semidefinite".into()));
    }
    // coordinates of every vector in the chosen basis
    let mut coords = vec![];
    for i in 0..g.dim() {
        let rhs: Vec<Q> = basis_idx.iter().map(|&b| g.entries[b][i].clone()).collect();
        let c = solve(&k, &gbb, &rhs).ok_or_else(|| Error::InternalConsistency("coordinate solve".into()))?;
        let norm: Q = (0..r).map(|a| (0..r).map(|b| &c[a] * &gbb[a][b] * &c[b]).sum::<Q>()).sum();
        if norm != g.entries[i][i] {
            return Err(Error::InvalidInput("Gram matrix is not positive semidefinite".into()));
        }
        coords.push(c);
    }
    let den = coords.iter().flatten().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let rows: Vec<Vec<BigInt>> = coords.iter().map(|c| c.iter().map(|x| (x * Q::from_integer(den.clone())).to_integer()).collect()).collect();
    let hnf = hnf_rows(rows, r);
    let basis: Vec<Vec<Q>> = hnf.iter().map(|row| row.iter().map(|x| Q::new(x.clone(), den.clone())).collect()).collect();
    let gram = lll(gram_of(&gbb, &basis));
    let determinant = det(&k, &gram);
    let min_diag = (0..r).map(|i| gram[i][i].clone()).min().unwrap();
    let bound = if min_diag > qi(2) { min_diag.clone() } else { qi(2) };
    let (norms, complete) = short_vectors(&gram, &bound, budget);
    let min_norm = norms.iter().min().cloned();
    let min_count = min_norm.as_ref().map_or(0, |m| norms.iter().filter(|x| *x == m).count());
    let norm2_count = norms.iter().filter(|x| **x == qi(2)).count();
    let kind = if !complete {
        LatticeType::Unknown
    } else {
        match (r, &determinant, min_norm.as_ref(), min_count) {
            (8, d, Some(m), 240) if *d == qi(1) && *m == qi(2) => LatticeType::E8,
            (6, d, Some(m), 54) if *d == q(1, 3) && *m == q(4, 3) => LatticeType::E6Dual,
            (6, d, Some(m), 72) if *d == qi(3) && *m == qi(2) => LatticeType::E6,
            (1, d, _, _) if *d == qi(2) => LatticeType::A1,
            _ => LatticeType::Unknown,
        }
    };
    Ok(LatticeReport { rank: r, determinant, min_norm, min_count, norm2_count, kind, basis_gram: gram, complete })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_lattices() {
        let e8 = lattice_identify(&e8_gram(), 1_000_000).unwrap();
        assert_eq!((e8.rank, e8.kind, e8.min_count), (8, LatticeType::E8, 240));
        assert_eq!(e8.determinant, qi(1));
        let e6d = lattice_identify(&e6_dual_gram(), 1_000_000).unwrap();
        assert_eq!(e6d.kind, LatticeType::E6Dual);
        assert_eq!(e6d.determinant, q(1, 3));
        let a1 = lattice_identify(&GramMatrix::new(vec![vec![qi(2)]]).unwrap(), 100).unwrap();
        assert_eq!(a1.kind, LatticeType::A1);
        let e6 = lattice_identify(&e6_gram(), 1_000_000).unwrap();
        assert_eq!((e6.kind, e6.norm2_count), (LatticeType::E6, 72));
    }

    #[test]
    fn dependent_generators() {
        // e1, e2, e1 + e2 in A1 x A1 generate the same lattice
        let g = GramMatrix::new(vec![vec![qi(2), qi(0), qi(2)], vec![qi(0), qi(2), qi(2)], vec![qi(2), qi(2), qi(4)]]).unwrap();
        let rep = lattice_identify(&g, 10_000).unwrap();
        assert_eq!(rep.rank, 2);
        assert_eq!(rep.determinant, qi(4));
        assert_eq!(rep.min_count, 4);
        let bad = GramMatrix::new(vec![vec![qi(1), qi(2)], vec![qi(2), qi(1)]]).unwrap();
        assert!(lattice_identify(&bad, 100).is_err());
        assert!(lattice_identify(&e8_gram(), 5).unwrap().kind == LatticeType::Unknown);
    }
}
