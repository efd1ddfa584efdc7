use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::factor::{random_irreducible, roots, GfPoly};
use super::finite::{mod_inv, Gf, GfElem, GfEmbedding};
use super::poly::PolyRing;
use super::ring::Ring;
use crate::error::{Error, Result};

/// base[z]/(h) rewritten as a single-level field, with both coordinate maps.
#[derive(Clone, Debug)]
pub struct Tower {
    pub base: Gf,
    pub field: Gf,
    pub h: GfPoly,
    pub embed: GfEmbedding,
    /// image of the class of z
    pub root: GfElem,
    // field coords -> flattened tower coords (index i*n + j), and its inverse
    to_tower_m: Arc<Vec<Vec<u64>>>,
    to_field_m: Arc<Vec<Vec<u64>>>,
}

fn mat_inv_mod(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| (i == j) as u64));
            row
        })
        .collect();
    for c in 0..n {
        let pr = (c..n).find(|&i| a[i][c] != 0)?;
        a.swap(c, pr);
        let inv = mod_inv(a[c][c], p)?;
        for v in a[c].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..n {
            if i != c && a[i][c] != 0 {
                let f = p - a[i][c];
                for j in 0..2 * n {
                    a[i][j] = (a[i][j] + f * a[c][j]) % p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn mat_vec_mod(m: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| (row.iter().zip(v).map(|(a, b)| (a * b) as u128).sum::<u128>() % p as u128) as u64)
        .collect()
}

impl Tower {
    pub fn degree(&self) -> usize {
        self.h.degree().unwrap()
    }

    /// Element sum c_i z^i of the tower, c_i in base.
    pub fn from_tower(&self, c: &[GfElem]) -> GfElem {
        let n = self.base.degree();
        let mut flat = vec![0u64; n * self.degree()];
        for (i, ci) in c.iter().enumerate().take(self.degree()) {
            for j in 0..n {
                flat[i * n + j] = ci[j];
            }
        }
        self.field.from_coords(&mat_vec_mod(&self.to_field_m, &flat, self.field.p()))
    }

    pub fn to_tower(&self, e: &GfElem) -> Vec<GfElem> {
        let n = self.base.degree();
        let flat = mat_vec_mod(&self.to_tower_m, e, self.field.p());
        (0..self.degree()).map(|i| self.base.from_coords(&flat[i * n..(i + 1) * n])).collect()
    }
}

fn tower_mul(r: &PolyRing<Gf>, a: &GfPoly, b: &GfPoly, h: &GfPoly) -> GfPoly {
    r.rem(&r.mul(a, b), h)
}

fn flatten(r: &PolyRing<Gf>, a: &GfPoly, m: usize) -> Vec<u64> {
    let n = r.base.degree();
    let mut v = vec![0u64; n * m];
    for (i, c) in a.coeffs().iter().enumerate() {
        for j in 0..n {
            v[i * n + j] = c[j];
        }
    }
    v
}

/// Rewrite base[z]/(h), h monic irreducible over base, as F_p[Z]/(minpoly of a primitive element).
pub fn compose_tower(base: &Gf, h: &GfPoly, seed: u64) -> Result<Tower> {
    let r = PolyRing::new(base.clone());
    let Some(m) = h.degree() else { return Err(Error::DegenerateInput("zero modulus".into())) };
    if m == 0 {
        return Err(Error::DegenerateInput("constant modulus".into()));
    }
    let h = r.monic(h);
    let p = base.p();
    let n = base.degree();
    let big_n = n * m;
    if m == 1 {
        let root = base.neg(&h.coeffs()[0]);
        let id: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect();
        return Ok(Tower {
            base: base.clone(),
            field: base.clone(),
            h,
            embed: GfEmbedding::identity(base),
            root,
            to_tower_m: Arc::new(id.clone()),
            to_field_m: Arc::new(id),
        });
    }
    let zeta = r.constant(base.generator());
    let z = r.x();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x746f776572);
    let mut attempt = 0u64;
    loop {
        let theta = if attempt < p.min(64) {
            r.add(&z, &r.scale(&zeta, &base.from_int(attempt as i64)))
        } else {
            r.from_coeffs((0..m).map(|_| base.random(&mut rng)).collect())
        };
        attempt += 1;
        if n == 1 && attempt > 1 && attempt <= p.min(64) {
            // z + c*zeta collapses to z over a prime base
            continue;
        }
        let mut powers = Vec::with_capacity(big_n + 1);
        let mut acc = r.one();
        for _ in 0..=big_n {
            powers.push(flatten(&r, &acc, m));
            acc = tower_mul(&r, &acc, &theta, &h);
        }
        // columns are theta^i
        let mcols: Vec<Vec<u64>> = (0..big_n).map(|row| (0..big_n).map(|c| powers[c][row]).collect()).collect();
        let Some(minv) = mat_inv_mod(&mcols, p) else { continue };
        let c = mat_vec_mod(&minv, &powers[big_n], p);
        let mut modulus: Vec<u64> = c.iter().map(|&x| (p - x) % p).collect();
        modulus.push(1);
        let field = Gf::from_parts(p, modulus);
        let col = |idx: usize| -> GfElem {
            let e: Vec<u64> = (0..big_n).map(|row| minv[row][idx]).collect();
            field.from_coords(&e)
        };
        let embed = if n == 1 {
            GfEmbedding::from_generator_image(base, &field, &field.zero())?
        } else {
            GfEmbedding::from_generator_image(base, &field, &col(1))?
        };
        let root = col(n);
        return Ok(Tower { base: base.clone(), field, h, embed, root, to_tower_m: Arc::new(mcols), to_field_m: Arc::new(minv) });
    }
}

/// Extension of exact degree m with its embedding of the base.
pub fn build_extension(base: &Gf, m: usize, seed: u64) -> Result<Tower> {
    if m == 0 {
        return Err(Error::InvalidInput("extension degree must be positive".into()));
    }
    let r = PolyRing::new(base.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = if m == 1 { r.x() } else { random_irreducible(&r, m, &mut rng) };
    compose_tower(base, &h, seed)
}

/// An embedding src -> dst, sending the generator to the smallest root of src's modulus.
pub fn find_embedding(src: &Gf, dst: &Gf, seed: u64) -> Result<GfEmbedding> {
    if src.p() != dst.p() || dst.degree() % src.degree() != 0 {
        return Err(Error::InvalidInput(format!("{src:?} does not embed in {dst:?}")));
    }
    if src.degree() == 1 {
        return GfEmbedding::from_generator_image(src, dst, &dst.zero());
    }
    let r = PolyRing::new(dst.clone());
    let m = r.from_coeffs(src.modulus().iter().map(|&c| dst.elem(c)).collect());
    let rs = roots(&r, &m, seed);
    let root = rs.first().ok_or_else(|| Error::InternalConsistency("modulus has no root in the target".into()))?;
    GfEmbedding::from_generator_image(src, dst, root)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_embed() {
        let f5 = Gf::prime(5).unwrap();
        let t1 = build_extension(&f5, 1, 1).unwrap();
        assert_eq!(t1.field, f5);
        let t2 = build_extension(&f5, 2, 1).unwrap();
        assert_eq!(t2.field.order(), &25u32.into());
        for c in 0..5 {
            let e = t2.embed.apply(&f5.elem(c));
            assert_eq!(t2.field.pow(&e, 5), e);
        }
        let t4 = build_extension(&f5, 4, 2).unwrap();
        let emb = find_embedding(&t2.field, &t4.field, 0).unwrap();
        let a = t2.field.from_coords(&[2, 3]);
        let b = t2.field.from_coords(&[4, 1]);
        let k4 = &t4.field;
        assert_eq!(emb.apply(&t2.field.mul(&a, &b)), k4.mul(&emb.apply(&a), &emb.apply(&b)));
        assert_eq!(emb.preimage(&emb.apply(&a)), Some(a));
    }

    #[test]
    fn two_level_tower_roundtrip() {
        let f7 = Gf::prime(7).unwrap();
        let t2 = build_extension(&f7, 2, 5).unwrap();
        let t6 = build_extension(&t2.field, 3, 6).unwrap();
        assert_eq!(t6.field.degree(), 6);
        let r = PolyRing::new(t2.field.clone());
        let h_at_root = {
            let h = r.map(&t6.h, &PolyRing::new(t6.field.clone()), |c| t6.embed.apply(c));
            PolyRing::new(t6.field.clone()).eval(&h, &t6.root)
        };
        assert!(t6.field.is_zero(&h_at_root));
        let coords = vec![t2.field.from_coords(&[1, 2]), t2.field.from_coords(&[0, 5]), t2.field.from_coords(&[3, 0])];
        let e = t6.from_tower(&coords);
        assert_eq!(t6.to_tower(&e), coords);
        let _ = r;
    }
}
