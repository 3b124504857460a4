//! A dense brute-force oracle for the ring dimensions, sharing no code with
//! the library: its own rational Gaussian elimination, its own structure
//! constants for S3 and M2, and every linear condition written out in full.

#![allow(dead_code)]

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

/// Structure constants `mult[i][j][k]`: coefficient of `e_k` in `e_i e_j`.
pub struct DenseAlgebra {
    pub n: usize,
    pub mult: Vec<Vec<Vec<Q>>>,
}

impl DenseAlgebra {
    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.n];
        for i in 0..self.n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.n {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..self.n {
                    out[k] += &c * &self.mult[i][j][k];
                }
            }
        }
        out
    }

    pub fn unit_vec(&self, i: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.n];
        v[i] = Q::one();
        v
    }
}

/// `Q[S3]` on the six permutations of `{0, 1, 2}`, composing right to left,
/// and the even permutations as the subalgebra basis.
pub fn s3_over_a3() -> (DenseAlgebra, Vec<Vec<Q>>) {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let idx = |p: [usize; 3]| perms.iter().position(|x| *x == p).unwrap();
    let n = 6;
    let mut mult = vec![vec![vec![Q::zero(); n]; n]; n];
    for (i, a) in perms.iter().enumerate() {
        for (j, b) in perms.iter().enumerate() {
            let c = [a[b[0]], a[b[1]], a[b[2]]];
            mult[i][j][idx(c)] = Q::one();
        }
    }
    let inversions = |p: &[usize; 3]| (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    let alg = DenseAlgebra { n, mult };
    let b = perms
        .iter()
        .enumerate()
        .filter(|(_, p)| inversions(p) % 2 == 0)
        .map(|(i, _)| alg.unit_vec(i))
        .collect();
    (alg, b)
}

/// `M2(Q)` on matrix units `E11, E12, E21, E22` over the scalars.
pub fn m2_over_q() -> (DenseAlgebra, Vec<Vec<Q>>) {
    let n = 4;
    let mut mult = vec![vec![vec![Q::zero(); n]; n]; n];
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    if b == c {
                        mult[2 * a + b][2 * c + d][2 * a + d] = Q::one();
                    }
                }
            }
        }
    }
    let one = vec![q(1), q(0), q(0), q(1)];
    (DenseAlgebra { n, mult }, vec![one])
}

/// Row echelon basis of the row space.
pub fn row_basis(rows: Vec<Vec<Q>>) -> Vec<Vec<Q>> {
    let mut rows: Vec<Vec<Q>> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Q::one() / &rows[rank][col];
        for x in rows[rank].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

pub fn rank(rows: Vec<Vec<Q>>) -> usize {
    row_basis(rows).len()
}

/// Dimensions `(A (x)_B A, R, S, T)`.
pub struct OracleDims {
    pub square: usize,
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

pub fn dims(a: &DenseAlgebra, b: &[Vec<Q>]) -> OracleDims {
    let n = a.n;
    let nn = n * n;
    let e = |i: usize| a.unit_vec(i);
    let kron = |x: &[Q], y: &[Q]| -> Vec<Q> {
        let mut out = vec![Q::zero(); nn];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = &x[i] * &y[j];
            }
        }
        out
    };

    // x b (x) y - x (x) b y
    let mut rel = Vec::new();
    for bv in b {
        for i in 0..n {
            for j in 0..n {
                let l = kron(&a.mul(&e(i), bv), &e(j));
                let r = kron(&e(i), &a.mul(bv, &e(j)));
                rel.push(l.iter().zip(&r).map(|(x, y)| x - y).collect());
            }
        }
    }
    let rel = row_basis(rel);
    let square = nn - rel.len();

    // b x = x b, one row per (b, coordinate)
    let mut rows = Vec::new();
    for bv in b {
        for k in 0..n {
            rows.push((0..n).map(|x| a.mul(bv, &e(x))[k].clone() - a.mul(&e(x), bv)[k].clone()).collect());
        }
    }
    let r = n - rank(rows);

    // f with f(b e_k) = b f(e_k) and f(e_k b) = f(e_k) b; unknown f[r][c] at r n + c
    let mut rows = Vec::new();
    for bv in b {
        for k in 0..n {
            let bk = a.mul(bv, &e(k));
            let kb = a.mul(&e(k), bv);
            for row in 0..n {
                let mut left = vec![Q::zero(); nn];
                let mut right = vec![Q::zero(); nn];
                for c in 0..n {
                    left[row * n + c] += &bk[c];
                    right[row * n + c] += &kb[c];
                }
                for s in 0..n {
                    // (b f(e_k))_row = sum_s (b e_s)_row f[s][k]
                    left[s * n + k] -= &a.mul(bv, &e(s))[row];
                    right[s * n + k] -= &a.mul(&e(s), bv)[row];
                }
                rows.push(left);
                rows.push(right);
            }
        }
    }
    let s = nn - rank(rows);

    // w with b w - w b in the relation space, via unknowns (w, c_b)
    let d = rel.len();
    let width = nn + b.len() * d;
    let mut rows = Vec::new();
    for (bi, bv) in b.iter().enumerate() {
        let rel_ref = &rel;
        for out_idx in 0..nn {
            let mut row = vec![Q::zero(); width];
            for i in 0..n {
                for j in 0..n {
                    let lb = kron(&a.mul(bv, &e(i)), &e(j));
                    let rb = kron(&e(i), &a.mul(&e(j), bv));
                    row[i * n + j] = lb[out_idx].clone() - rb[out_idx].clone();
                }
            }
            for (k, rv) in rel_ref.iter().enumerate() {
                row[nn + bi * d + k] = -rv[out_idx].clone();
            }
            rows.push(row);
        }
    }
    let kernel = width - rank(rows);
    let t = kernel - d;
    OracleDims { square, r, s, t }
}

/// Whether some `B`-`B`-linear `E: A -> B` has `E(1) = 1`, by writing
/// `E(e_c) = sum_j y[c][j] b_j` and testing the affine system for consistency.
pub fn expectation_exists(a: &DenseAlgebra, b: &[Vec<Q>], one: &[Q]) -> bool {
    let n = a.n;
    let m = b.len();
    let var = |c: usize, j: usize| c * m + j;
    let width = n * m;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    let e = |i: usize| a.unit_vec(i);
    for bv in b {
        for k in 0..n {
            for left in [true, false] {
                let moved = if left { a.mul(bv, &e(k)) } else { a.mul(&e(k), bv) };
                for coord in 0..n {
                    let mut row = vec![Q::zero(); width];
                    for c in 0..n {
                        for j in 0..m {
                            row[var(c, j)] += &moved[c] * &b[j][coord];
                        }
                    }
                    for j in 0..m {
                        let side = if left { a.mul(bv, &b[j]) } else { a.mul(&b[j], bv) };
                        row[var(k, j)] -= &side[coord];
                    }
                    rows.push(row);
                    rhs.push(Q::zero());
                }
            }
        }
    }
    for coord in 0..n {
        let mut row = vec![Q::zero(); width];
        for c in 0..n {
            for j in 0..m {
                row[var(c, j)] += &one[c] * &b[j][coord];
            }
        }
        rows.push(row);
        rhs.push(one[coord].clone());
    }
    let augmented: Vec<Vec<Q>> = rows
        .iter()
        .zip(&rhs)
        .map(|(r, x)| r.iter().cloned().chain(std::iter::once(x.clone())).collect())
        .collect();
    rank(rows) == rank(augmented)
}

/// `M2(Q)` over its upper-triangular subalgebra `E11, E12, E22`.
pub fn m2_over_upper_triangular() -> (DenseAlgebra, Vec<Vec<Q>>) {
    let (a, _) = m2_over_q();
    let b = [0, 1, 3].iter().map(|&i| a.unit_vec(i)).collect();
    (a, b)
}
