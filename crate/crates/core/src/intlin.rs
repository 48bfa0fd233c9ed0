//! Dense exact linear algebra over the integers.
//!
//! Matrices are row-major `Vec<Vec<BigInt>>`; the column count is passed
//! separately so that matrices with zero rows still carry a shape.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn transpose(a: &Matrix, cols: usize) -> Matrix {
    let mut t = zeros(cols, a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            t[j][i] = v.clone();
        }
    }
    t
}

pub fn mat_vec(a: &Matrix, x: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|row| dot(row, x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

/// `row_i -= q · row_r` on the given matrix.
fn row_sub(m: &mut Matrix, i: usize, r: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (lo, hi) = if i < r { m.split_at_mut(r) } else { m.split_at_mut(i) };
    let (ri, rr) = if i < r { (&mut lo[i], &hi[0]) } else { (&mut hi[0], &lo[r]) };
    for (x, y) in ri.iter_mut().zip(rr.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

/// Hermite-style row echelon form `U·A = H` with `U` unimodular.
pub struct Echelon {
    pub h: Matrix,
    pub u: Matrix,
    /// Pivot columns, one per nonzero row of `h`, in row order.
    pub pivots: Vec<usize>,
}

pub fn echelon(a: &Matrix, cols: usize) -> Echelon {
    let rows = a.len();
    let mut h = a.clone();
    let mut u = identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&i, &j| h[i][col].abs().cmp(&h[j][col].abs()));
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[r][col]);
                row_sub(&mut h, i, r, &q);
                row_sub(&mut u, i, r, &q);
                if !h[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                if h[r][col].is_negative() {
                    for x in h[r].iter_mut().chain(u[r].iter_mut()) {
                        *x = -&*x;
                    }
                }
                for i in 0..r {
                    let q = h[i][col].div_floor(&h[r][col]);
                    row_sub(&mut h, i, r, &q);
                    row_sub(&mut u, i, r, &q);
                }
                pivots.push(col);
                r += 1;
                break;
            }
        }
    }
    Echelon { h, u, pivots }
}

pub fn rank(a: &Matrix, cols: usize) -> usize {
    echelon(a, cols).pivots.len()
}

/// A basis of the lattice `{x ∈ Z^cols : A x = 0}`.
pub fn kernel(a: &Matrix, cols: usize) -> Vec<Vec<BigInt>> {
    let e = echelon(&transpose(a, cols), a.len());
    let r = e.pivots.len();
    e.u.into_iter().skip(r).collect()
}

/// A basis of `{y : yᵀ A = 0}`.
pub fn left_kernel(a: &Matrix, cols: usize) -> Vec<Vec<BigInt>> {
    let e = echelon(a, cols);
    let r = e.pivots.len();
    e.u.into_iter().skip(r).collect()
}

/// `(g, c)` with `g = gcd(values) ≥ 0` and `Σ c_i values_i = g`.
pub fn gcd_combination(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs = vec![BigInt::zero(); values.len()];
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let e = g.extended_gcd(v);
        for c in coeffs.iter_mut().take(i) {
            *c *= &e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for c in &mut coeffs {
            *c = -&*c;
        }
    }
    (g, coeffs)
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// An integer solution of `A x = b`, if one exists.
pub fn solve(a: &Matrix, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| row.iter().cloned().chain(std::iter::once(-bi)).collect())
        .collect();
    let ker = kernel(&aug, cols + 1);
    let lasts: Vec<BigInt> = ker.iter().map(|v| v[cols].clone()).collect();
    let (g, c) = gcd_combination(&lasts);
    if !g.is_one() {
        return None;
    }
    let mut x = vec![BigInt::zero(); cols];
    for (v, ci) in ker.iter().zip(&c) {
        if ci.is_zero() {
            continue;
        }
        for (xj, vj) in x.iter_mut().zip(v) {
            *xj += ci * vj;
        }
    }
    Some(x)
}

/// Nonzero diagonal entries of the Smith normal form, each positive and
/// dividing the next.
pub fn smith_invariants(a: &Matrix, cols: usize) -> Vec<BigInt> {
    let mut m = a.clone();
    let rows = m.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&m[t][t]);
                    row_sub(&mut m, i, t, &q);
                    if !m[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&m[t][t]);
                    for row in m.iter_mut() {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                    if !m[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                // divisibility of the remaining block by the pivot
                let bad = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !(&m[i][j] % &m[t][t]).is_zero()));
                match bad {
                    None => break,
                    Some(i) => {
                        let neg_one = -BigInt::one();
                        row_sub(&mut m, t, i, &neg_one);
                        continue;
                    }
                }
            }
            // move the smallest nonzero entry of row/column t to the corner
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Rank of `A` reduced modulo the prime `p`.
pub fn rank_mod_p(a: &Matrix, cols: usize, p: u64) -> usize {
    let pb = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = a
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    let r = v.mod_floor(&pb);
                    u64::try_from(r).expect("residue fits")
                })
                .collect()
        })
        .collect();
    let rows = m.len();
    let mut r = 0;
    for col in 0..cols {
        let Some(p_row) = (r..rows).find(|&i| m[i][col] != 0) else { continue };
        m.swap(r, p_row);
        let inv = mod_inv(m[r][col], p);
        for i in r + 1..rows {
            if m[i][col] == 0 {
                continue;
            }
            let f = mul_mod(m[i][col], inv, p);
            for j in col..cols {
                let sub = mul_mod(f, m[r][j], p);
                m[i][j] = (m[i][j] + p - sub) % p;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x + 4y + 6z = 0 : rank-2 kernel lattice
        let a = m(&[&[2, 4, 6]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(mat_vec(&a, x).iter().all(|e| e.is_zero()));
        }
        // (1,1,-1) must be an integer combination: solve in the kernel basis
        let basis_t = transpose(&k, 3);
        assert!(solve(&basis_t, 2, &v(&[1, 1, -1])).is_some());
    }

    #[test]
    fn solve_detects_divisibility() {
        let a = m(&[&[2, 0], &[0, 3]]);
        assert_eq!(solve(&a, 2, &v(&[4, 9])), Some(v(&[2, 3])));
        assert_eq!(solve(&a, 2, &v(&[1, 0])), None);
    }

    #[test]
    fn smith_of_known_matrices() {
        assert_eq!(smith_invariants(&m(&[&[2, 0], &[0, 3]]), 2), v(&[1, 6]));
        assert_eq!(smith_invariants(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3), v(&[2, 6, 12]));
        assert!(smith_invariants(&m(&[&[0, 0]]), 2).is_empty());
        assert_eq!(smith_invariants(&zeros(0, 3), 3).len(), 0);
    }

    #[test]
    fn ranks() {
        let a = m(&[&[2, 4], &[1, 2], &[0, 6]]);
        assert_eq!(rank(&a, 2), 2);
        assert_eq!(rank_mod_p(&a, 2, 2), 1);
        assert_eq!(rank_mod_p(&a, 2, 3), 1);
        assert_eq!(rank_mod_p(&a, 2, 5), 2);
    }

    #[test]
    fn gcd_combination_reaches_gcd() {
        let vals = v(&[6, 10, 15]);
        let (g, c) = gcd_combination(&vals);
        assert!(g.is_one());
        assert_eq!(dot(&vals, &c), g);
        assert_eq!(gcd_all(&v(&[0, -4, 6])), BigInt::from(2));
        assert!(is_prime(5) && !is_prime(9) && !is_prime(1));
    }

    #[test]
    fn left_kernel_vector() {
        let a = m(&[&[1, 2], &[2, 4]]);
        let l = left_kernel(&a, 2);
        assert_eq!(l.len(), 1);
        assert!(dot(&l[0], &v(&[1, 2])).is_zero());
    }
}
