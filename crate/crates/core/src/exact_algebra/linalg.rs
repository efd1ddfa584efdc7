use super::ring::{Field, Ring};

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(k: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !k.is_zero(&m[i][c])) else { continue };
        m.swap(r, pr);
        let inv = k.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        for i in 0..rows {
            if i != r && !k.is_zero(&m[i][c]) {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = k.mul(&f, &m[r][j]);
                    m[i][j] = k.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(k: &F, m: &Matrix<F::Elem>) -> usize {
    let mut w = m.clone();
    rref(k, &mut w).len()
}

/// Basis of {v : m v = 0}.
pub fn kernel<F: Field>(k: &F, m: &Matrix<F::Elem>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut w = m.clone();
    let pivots = rref(k, &mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![k.zero(); cols];
            v[fc] = k.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = k.neg(&w[r][fc]);
            }
            v
        })
        .collect()
}

/// Some solution of m x = b.
pub fn solve<F: Field>(k: &F, m: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut aug: Matrix<F::Elem> = m
        .iter()
        .zip(b.iter())
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let pivots = rref(k, &mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![k.zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn det<F: Field>(k: &F, m: &Matrix<F::Elem>) -> F::Elem {
    let n = m.len();
    let mut w = m.clone();
    let mut d = k.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !k.is_zero(&w[i][c])) else { return k.zero() };
        if pr != c {
            w.swap(pr, c);
            d = k.neg(&d);
        }
        d = k.mul(&d, &w[c][c]);
        let inv = k.inv(&w[c][c]).unwrap();
        for i in c + 1..n {
            if k.is_zero(&w[i][c]) {
                continue;
            }
            let f = k.mul(&w[i][c], &inv);
            for j in c..n {
                let t = k.mul(&f, &w[c][j]);
                w[i][j] = k.sub(&w[i][j], &t);
            }
        }
    }
    d
}

pub fn inverse<F: Field>(k: &F, m: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let n = m.len();
    let mut aug: Matrix<F::Elem> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { k.one() } else { k.zero() }));
            row
        })
        .collect();
    let pivots = rref(k, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_vec<R: Ring>(k: &R, m: &Matrix<R::Elem>, v: &[R::Elem]) -> Vec<R::Elem> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b))))
        .collect()
}

/// Fraction-free determinant over an integral domain with exact division.
pub fn det_bareiss<R: Ring>(k: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.len();
    if n == 0 {
        return k.one();
    }
    let mut w = m.clone();
    let mut sign = false;
    let mut prev = k.one();
    for c in 0..n - 1 {
        if k.is_zero(&w[c][c]) {
            let Some(pr) = (c + 1..n).find(|&i| !k.is_zero(&w[i][c])) else { return k.zero() };
            w.swap(pr, c);
            sign = !sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let t = k.sub(&k.mul(&w[i][j], &w[c][c]), &k.mul(&w[i][c], &w[c][j]));
                w[i][j] = k.exact_div(&t, &prev).expect("Bareiss division is exact");
            }
            w[i][c] = k.zero();
        }
        prev = w[c][c].clone();
    }
    let d = w[n - 1][n - 1].clone();
    if sign {
        k.neg(&d)
    } else {
        d
    }
}

/// Row reduction of a dense matrix over F_p in place; returns pivot columns.
pub fn fp_rref(m: &mut [Vec<u64>], ncols: usize, p: u64) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = crate::exact_algebra::finite::mod_inv(m[r][c], p).unwrap();
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        let (head, tail) = m.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().unwrap();
        for row in head.iter_mut().chain(rest.iter_mut()) {
            let f = row[c];
            if f != 0 {
                let nf = p - f;
                for j in c..ncols {
                    if pivot_row[j] != 0 {
                        row[j] = (row[j] + nf * pivot_row[j]) % p;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the kernel of a matrix over F_p.
pub fn fp_kernel(mut m: Vec<Vec<u64>>, ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let pivots = fp_rref(&mut m, ncols, p);
    let free: Vec<usize> = (0..ncols).filter(|c| pivots.binary_search(c).is_err()).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][fc]) % p;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::rationals::{qi, Rationals};

    #[test]
    fn det_agrees_with_bareiss() {
        let k = Rationals;
        let m: Matrix<_> = vec![vec![qi(2), qi(1), qi(3)], vec![qi(0), qi(4), qi(1)], vec![qi(5), qi(2), qi(0)]];
        assert_eq!(det(&k, &m), det_bareiss(&k, &m));
        assert_eq!(det(&k, &m), qi(-59));
        let inv = inverse(&k, &m).unwrap();
        let e = mat_vec(&k, &m, &inv.iter().map(|r| r[0].clone()).collect::<Vec<_>>());
        assert_eq!(e, vec![qi(1), qi(0), qi(0)]);
        let ker = kernel(&k, &vec![vec![qi(1), qi(2), qi(3)]], 3);
        assert_eq!(ker.len(), 2);
        let fk = fp_kernel(vec![vec![1, 2, 3], vec![2, 4, 6]], 3, 7);
        assert_eq!(fk.len(), 2);
        for v in fk {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % 7, 0);
        }
    }
}
