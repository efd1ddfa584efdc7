use std::fmt;
use std::sync::{Arc, OnceLock};

use num::bigint::BigUint;
use smallvec::SmallVec;

use super::ring::{Field, Ring, SqrtField};
use crate::error::{Error, Result};

/// Coordinates over the prime field in the power basis 1, z, ..., z^(n-1).
pub type GfElem = SmallVec<[u64; 4]>;

struct GfData {
    p: u64,
    n: usize,
    /// Monic modulus, low degree first, length n + 1.
    modulus: Vec<u64>,
    order: BigUint,
    nonresidue: OnceLock<GfElem>,
}

/// A finite field F_p[z]/(m(z)); the prime field is the case deg m = 1.
#[derive(Clone)]
pub struct Gf(Arc<GfData>);

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Gf {}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.n == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}; {:?})", self.0.p, self.0.n, self.0.modulus)
        }
    }
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(p as i128) as u64)
}

// Dense polynomials over F_p as Vec<u64>, low degree first, trimmed.
pub(crate) mod fp {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += (x * y) as u128;
            }
        }
        let mut out: Vec<u64> = acc.into_iter().map(|v| (v % p as u128) as u64).collect();
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            out.push((x + p - y) % p);
        }
        trim(&mut out);
        out
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        divrem(a, m, p).1
    }

    pub fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() <= dm {
            return (vec![], r);
        }
        let lc_inv = super::mod_inv(m[dm], p).expect("nonzero leading coefficient");
        let mut q = vec![0u64; r.len() - dm];
        for i in (dm..r.len()).rev() {
            let c = r[i] * lc_inv % p;
            if c == 0 {
                continue;
            }
            q[i - dm] = c;
            let nc = p - c;
            for j in 0..=dm {
                r[i - dm + j] = (r[i - dm + j] + nc * m[j]) % p;
            }
        }
        r.truncate(dm);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() {
            return vec![];
        }
        let inv = super::mod_inv(*a.last().unwrap(), p).unwrap();
        a.iter().map(|&c| c * inv % p).collect()
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        monic(&x, p)
    }

    /// Inverse of a modulo m, when gcd(a, m) = 1.
    pub fn inv_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
        let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
        if r1.is_empty() {
            return None;
        }
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        if r0.len() != 1 {
            return None;
        }
        let c = super::mod_inv(r0[0], p)?;
        let mut out: Vec<u64> = s0.iter().map(|&x| x * c % p).collect();
        trim(&mut out);
        Some(out)
    }

    pub fn powmod_x(e: &num::BigUint, m: &[u64], p: u64) -> Vec<u64> {
        // x^e mod m
        let mut acc: Vec<u64> = vec![1];
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = rem(&mul(&acc, &acc, p), m, p);
            if e.bit(i) {
                let mut shifted = vec![0u64];
                shifted.extend_from_slice(&acc);
                acc = rem(&shifted, m, p);
            }
        }
        acc
    }

    /// Rabin's irreducibility test for a monic polynomial of degree >= 1.
    pub fn is_irreducible(m: &[u64], p: u64) -> bool {
        let n = m.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let pb = num::BigUint::from(p);
        let x = vec![0u64, 1];
        let xp_n = powmod_x(&pb.pow(n as u32), m, p);
        if sub(&xp_n, &rem(&x, m, p), p).len() != 0 {
            return false;
        }
        let mut k = n;
        let mut primes = vec![];
        let mut d = 2;
        while d * d <= k {
            if k % d == 0 {
                primes.push(d);
                while k % d == 0 {
                    k /= d;
                }
            }
            d += 1;
        }
        if k > 1 {
            primes.push(k);
        }
        for r in primes {
            let h = powmod_x(&pb.pow((n / r) as u32), m, p);
            let g = gcd(&sub(&h, &x, p), m, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl Gf {
    pub fn prime(p: u64) -> Result<Gf> {
        if !is_prime_u64(p) {
            return Err(Error::UnsupportedField(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::UnsupportedField(format!("prime {p} exceeds 2^31")));
        }
        Ok(Gf::from_parts(p, vec![0, 1]))
    }

    /// Extension of the prime field by a monic irreducible modulus (low degree first).
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Gf> {
        let base = Gf::prime(p)?;
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        fp::trim(&mut m);
        if m.len() < 2 || *m.last().unwrap() != 1 {
            return Err(Error::InvalidInput("modulus must be monic of degree >= 1".into()));
        }
        if m.len() == 2 {
            return Ok(base);
        }
        if !fp::is_irreducible(&m, p) {
            return Err(Error::InvalidInput("modulus is reducible".into()));
        }
        Ok(Gf::from_parts(p, m))
    }

    pub(crate) fn from_parts(p: u64, modulus: Vec<u64>) -> Gf {
        let n = modulus.len() - 1;
        let order = BigUint::from(p).pow(n as u32);
        Gf(Arc::new(GfData { p, n, modulus, order, nonresidue: OnceLock::new() }))
    }

    /// Random monic irreducible of degree n over F_p.
    pub fn random_irreducible_fp<R: rand::Rng>(p: u64, n: usize, rng: &mut R) -> Vec<u64> {
        loop {
            let mut m: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            m.push(1);
            if fp::is_irreducible(&m, p) {
                return m;
            }
        }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }
    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.n
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
    pub fn order(&self) -> &BigUint {
        &self.0.order
    }
    pub fn is_prime_field(&self) -> bool {
        self.0.n == 1
    }
    /// The prime subfield.
    pub fn prime_field(&self) -> Gf {
        if self.0.n == 1 {
            self.clone()
        } else {
            Gf::from_parts(self.0.p, vec![0, 1])
        }
    }

    pub fn elem(&self, c: u64) -> GfElem {
        let mut v: GfElem = SmallVec::from_elem(0, self.0.n);
        v[0] = c % self.0.p;
        v
    }

    pub fn from_coords(&self, coords: &[u64]) -> GfElem {
        let mut v: GfElem = SmallVec::from_elem(0, self.0.n);
        let p = self.0.p;
        if coords.len() <= self.0.n {
            for (i, c) in coords.iter().enumerate() {
                v[i] = c % p;
            }
            return v;
        }
        let r = fp::rem(&coords.iter().map(|c| c % p).collect::<Vec<_>>(), &self.0.modulus, p);
        for (i, c) in r.iter().enumerate() {
            v[i] = *c;
        }
        v
    }

    /// The class of z.
    pub fn generator(&self) -> GfElem {
        if self.0.n == 1 {
            // root of z + m0
            self.elem((self.0.p - self.0.modulus[0]) % self.0.p)
        } else {
            self.from_coords(&[0, 1])
        }
    }

    /// Value in 0..p for prime-field elements, None otherwise.
    pub fn as_prime(&self, a: &GfElem) -> Option<u64> {
        if a[1..].iter().all(|&c| c == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> GfElem {
        (0..self.0.n).map(|_| rng.gen_range(0..self.0.p)).collect()
    }

    /// Number of elements when it fits in u64.
    pub fn size_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..self.0.n {
            acc = acc.checked_mul(self.0.p)?;
        }
        Some(acc)
    }

    /// Element with base-p digits of `idx` as coordinates.
    pub fn from_index(&self, mut idx: u64) -> GfElem {
        let mut v: GfElem = SmallVec::from_elem(0, self.0.n);
        for c in v.iter_mut() {
            *c = idx % self.0.p;
            idx /= self.0.p;
        }
        v
    }

    pub fn index_of(&self, a: &GfElem) -> u64 {
        a.iter().rev().fold(0u64, |acc, &c| acc * self.0.p + c)
    }

    pub fn elements(&self) -> impl Iterator<Item = GfElem> + '_ {
        let n = self.size_u64().expect("field too large to enumerate");
        (0..n).map(move |i| self.from_index(i))
    }

    pub fn pow_big(&self, a: &GfElem, e: &BigUint) -> GfElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// a^p
    pub fn frobenius(&self, a: &GfElem) -> GfElem {
        self.pow(a, self.0.p)
    }

    /// a^(p^k)
    pub fn frobenius_pow(&self, a: &GfElem, k: usize) -> GfElem {
        let mut x = a.clone();
        for _ in 0..(k % self.0.n.max(1)) {
            x = self.frobenius(&x);
        }
        x
    }

    pub fn is_square(&self, a: &GfElem) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let e = (self.order() - 1u32) >> 1;
        self.is_one(&self.pow_big(a, &e))
    }

    fn nonresidue(&self) -> &GfElem {
        self.0.nonresidue.get_or_init(|| {
            let mut i = 2u64;
            loop {
                let z = self.from_index(i);
                if !self.is_square(&z) {
                    return z;
                }
                i += 1;
            }
        })
    }

    /// Degree over F_p of the subfield generated by a.
    pub fn elem_degree(&self, a: &GfElem) -> usize {
        let mut x = self.frobenius(a);
        let mut d = 1;
        while x != *a {
            x = self.frobenius(&x);
            d += 1;
        }
        d
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        if self.0.n == 1 {
            FieldDescriptor::Prime { p: self.0.p }
        } else {
            FieldDescriptor::Extension { p: self.0.p, modulus: self.0.modulus.clone() }
        }
    }
}

/// Serializable description of a supported field.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FieldDescriptor {
    Rationals,
    Prime { p: u64 },
    Extension { p: u64, modulus: Vec<u64> },
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldDescriptor::Rationals => 0,
            FieldDescriptor::Prime { p } | FieldDescriptor::Extension { p, .. } => *p,
        }
    }

    /// None stands for infinite degree over the prime field.
    pub fn degree(&self) -> Option<usize> {
        match self {
            FieldDescriptor::Rationals => None,
            FieldDescriptor::Prime { .. } => Some(1),
            FieldDescriptor::Extension { modulus, .. } => Some(modulus.len() - 1),
        }
    }

    pub fn to_field(&self) -> Result<Gf> {
        match self {
            FieldDescriptor::Rationals => Err(Error::UnsupportedField("rationals are not finite".into())),
            FieldDescriptor::Prime { p } => Gf::prime(*p),
            FieldDescriptor::Extension { p, modulus } => Gf::extension(*p, modulus.clone()),
        }
    }
}

impl Ring for Gf {
    type Elem = GfElem;

    fn zero(&self) -> GfElem {
        SmallVec::from_elem(0, self.0.n)
    }

    fn one(&self) -> GfElem {
        self.elem(1)
    }

    fn add(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = self.0.p;
        a.iter().zip(b.iter()).map(|(x, y)| {
            let s = x + y;
            if s >= p { s - p } else { s }
        }).collect()
    }

    fn sub(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = self.0.p;
        a.iter().zip(b.iter()).map(|(x, y)| if x >= y { x - y } else { x + p - y }).collect()
    }

    fn neg(&self, a: &GfElem) -> GfElem {
        let p = self.0.p;
        a.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect()
    }

    fn mul(&self, a: &GfElem, b: &GfElem) -> GfElem {
        let p = self.0.p;
        let n = self.0.n;
        if n == 1 {
            let mut v: GfElem = SmallVec::new();
            v.push(a[0] * b[0] % p);
            return v;
        }
        let mut acc = [0u128; 64];
        let mut heap;
        let buf: &mut [u128] = if 2 * n - 1 <= 64 {
            &mut acc[..2 * n - 1]
        } else {
            heap = vec![0u128; 2 * n - 1];
            &mut heap[..]
        };
        for i in 0..n {
            let x = a[i];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                buf[i + j] += (x * b[j]) as u128;
            }
        }
        let mut r: Vec<u64> = buf.iter().map(|v| (v % p as u128) as u64).collect();
        let m = &self.0.modulus;
        for i in (n..2 * n - 1).rev() {
            let c = r[i];
            if c == 0 {
                continue;
            }
            let nc = p - c;
            for j in 0..n {
                r[i - n + j] = (r[i - n + j] + nc * m[j]) % p;
            }
        }
        r.truncate(n);
        SmallVec::from_vec(r)
    }

    fn from_int(&self, n: i64) -> GfElem {
        self.elem(n.rem_euclid(self.0.p as i64) as u64)
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn exact_div(&self, a: &GfElem, b: &GfElem) -> Option<GfElem> {
        self.div(a, b)
    }

    fn fmt_elem(&self, a: &GfElem) -> String {
        if self.0.n == 1 {
            return a[0].to_string();
        }
        let terms: Vec<String> = a
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn is_zero(&self, a: &GfElem) -> bool {
        a.iter().all(|&c| c == 0)
    }
}

impl Field for Gf {
    fn inv(&self, a: &GfElem) -> Option<GfElem> {
        let p = self.0.p;
        if self.0.n == 1 {
            return mod_inv(a[0], p).map(|x| self.elem(x));
        }
        let mut av: Vec<u64> = a.to_vec();
        fp::trim(&mut av);
        if av.is_empty() {
            return None;
        }
        let r = fp::inv_mod(&av, &self.0.modulus, p)?;
        Some(self.from_coords(&r))
    }
}

impl SqrtField for Gf {
    /// Tonelli-Shanks; returns the root with lexicographically smaller coordinates.
    fn sqrt(&self, a: &GfElem) -> Option<GfElem> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if self.0.p == 2 {
            // squaring is bijective; a^(q/2)
            let e = self.order() >> 1u32;
            return Some(self.pow_big(a, &e));
        }
        if !self.is_square(a) {
            return None;
        }
        let qm1 = self.order() - 1u32;
        let s = qm1.trailing_zeros().unwrap_or(0);
        let t = &qm1 >> s;
        let z = self.nonresidue().clone();
        let mut m = s;
        let mut c = self.pow_big(&z, &t);
        let mut x = self.pow_big(a, &((&t + 1u32) >> 1u32));
        let mut b = self.pow_big(a, &t);
        while !self.is_one(&b) {
            let mut i = 0u64;
            let mut bb = b.clone();
            while !self.is_one(&bb) {
                bb = self.square(&bb);
                i += 1;
            }
            let mut f = c.clone();
            for _ in 0..(m - i - 1) {
                f = self.square(&f);
            }
            x = self.mul(&x, &f);
            c = self.square(&f);
            b = self.mul(&b, &c);
            m = i;
        }
        let nx = self.neg(&x);
        Some(if nx < x { nx } else { x })
    }
}

/// A field homomorphism between finite fields, stored by the images of the source power basis.
#[derive(Clone, Debug)]
pub struct GfEmbedding {
    pub src: Gf,
    pub dst: Gf,
    images: Vec<GfElem>,
    inverse: OnceLock<Option<PreimageData>>,
}

#[derive(Clone, Debug)]
struct PreimageData {
    // reduced row echelon data of the map F_p^n_src -> F_p^n_dst
    pivots: Vec<usize>,
    rows: Vec<Vec<u64>>,
}

impl GfEmbedding {
    pub fn identity(f: &Gf) -> GfEmbedding {
        let images = (0..f.degree()).map(|i| {
            let mut v = vec![0u64; i + 1];
            v[i] = 1;
            f.from_coords(&v)
        });
        GfEmbedding { src: f.clone(), dst: f.clone(), images: images.collect(), inverse: OnceLock::new() }
    }

    /// The homomorphism sending the class of z in `src` to `gen_image`.
    pub fn from_generator_image(src: &Gf, dst: &Gf, gen_image: &GfElem) -> Result<GfEmbedding> {
        if src.p() != dst.p() {
            return Err(Error::InvalidInput("characteristic mismatch".into()));
        }
        let mut images = Vec::with_capacity(src.degree());
        let mut acc = dst.one();
        for _ in 0..src.degree() {
            images.push(acc.clone());
            acc = dst.mul(&acc, gen_image);
        }
        // m(gen_image) must vanish
        if src.degree() > 1 {
            let m = src.modulus();
            let mut val = dst.zero();
            for c in m.iter().rev() {
                val = dst.add(&dst.mul(&val, gen_image), &dst.elem(*c));
            }
            if !dst.is_zero(&val) {
                return Err(Error::InvalidInput("generator image is not a root of the modulus".into()));
            }
        }
        Ok(GfEmbedding { src: src.clone(), dst: dst.clone(), images, inverse: OnceLock::new() })
    }

    pub fn src(&self) -> &Gf {
        &self.src
    }

    pub fn dst(&self) -> &Gf {
        &self.dst
    }

    pub fn apply(&self, a: &GfElem) -> GfElem {
        let d = &self.dst;
        if self.src.degree() == 1 {
            return d.elem(a[0]);
        }
        let p = d.p();
        let mut out: Vec<u64> = vec![0; d.degree()];
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (k, &v) in self.images[i].iter().enumerate() {
                out[k] = (out[k] + c * v) % p;
            }
        }
        d.from_coords(&out)
    }

    pub fn compose(&self, next: &GfEmbedding) -> GfEmbedding {
        let images = self.images.iter().map(|x| next.apply(x)).collect();
        GfEmbedding { src: self.src.clone(), dst: next.dst.clone(), images, inverse: OnceLock::new() }
    }

    fn preimage_data(&self) -> Option<&PreimageData> {
        self.inverse
            .get_or_init(|| {
                let p = self.dst.p();
                let ns = self.src.degree();
                let nd = self.dst.degree();
                // augmented rows: [image coords (nd) | identity (ns)]
                let mut rows: Vec<Vec<u64>> = (0..ns)
                    .map(|i| {
                        let mut r = vec![0u64; nd + ns];
                        for k in 0..nd {
                            r[k] = self.images[i][k];
                        }
                        r[nd + i] = 1;
                        r
                    })
                    .collect();
                let mut pivots = vec![];
                let mut row = 0;
                for col in 0..nd {
                    if row == ns {
                        break;
                    }
                    let Some(pr) = (row..ns).find(|&r| rows[r][col] != 0) else { continue };
                    rows.swap(row, pr);
                    let inv = mod_inv(rows[row][col], p)?;
                    for v in rows[row].iter_mut() {
                        *v = *v * inv % p;
                    }
                    for r in 0..ns {
                        if r != row && rows[r][col] != 0 {
                            let f = rows[r][col];
                            for k in 0..nd + ns {
                                rows[r][k] = (rows[r][k] + (p - f) * rows[row][k]) % p;
                            }
                        }
                    }
                    pivots.push(col);
                    row += 1;
                }
                if pivots.len() != ns {
                    return None;
                }
                Some(PreimageData { pivots, rows })
            })
            .as_ref()
    }

    /// Inverse image of b, when b lies in the image.
    pub fn preimage(&self, b: &GfElem) -> Option<GfElem> {
        if self.src.degree() == 1 {
            return if self.dst.as_prime(b).is_some() { Some(self.src.elem(b[0])) } else { None };
        }
        let data = self.preimage_data()?;
        let p = self.dst.p();
        let ns = self.src.degree();
        let nd = self.dst.degree();
        let mut out = vec![0u64; ns];
        for (r, &col) in data.pivots.iter().enumerate() {
            let c = b[col];
            if c == 0 {
                continue;
            }
            for k in 0..ns {
                out[k] = (out[k] + c * data.rows[r][nd + k]) % p;
            }
        }
        let cand = self.src.from_coords(&out);
        if self.apply(&cand) == *b {
            Some(cand)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Gf::prime(7).unwrap();
        let a = f.elem(3);
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        assert_eq!(f.sqrt(&f.elem(2)).unwrap(), f.elem(3));
        assert!(f.sqrt(&f.elem(3)).is_none());
        assert!(Gf::prime(10003).is_err());
    }

    #[test]
    fn extension_arithmetic() {
        let f = Gf::extension(5, vec![2, 0, 1]).unwrap(); // z^2 + 2
        let z = f.generator();
        assert_eq!(f.mul(&z, &z), f.elem(3));
        let x = f.from_coords(&[1, 4]);
        assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        assert_eq!(f.pow_big(&x, f.order()), x);
        let r = f.sqrt(&f.elem(2)).unwrap();
        assert_eq!(f.square(&r), f.elem(2));
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(Gf::extension(5, vec![4, 0, 1]).is_err());
    }
}
