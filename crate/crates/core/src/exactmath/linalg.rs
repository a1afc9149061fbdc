//! Small dense linear algebra over Z and over prime fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::fp::{invm, mulm};

/// Lower-triangular Hermite form of a full-rank lattice in Z^n given by
/// generating rows. Row i of the output has its pivot (positive) at column i
/// and zeros to the right; entries left of a pivot are reduced into [0, pivot).
/// Returns None if the rows do not span a rank-n lattice.
pub fn hnf_lower(rows: &[Vec<BigInt>], n: usize) -> Option<Vec<Vec<BigInt>>> {
    let mut active: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for col in (0..n).rev() {
        loop {
            let nz: Vec<usize> = (0..active.len()).filter(|&i| !active[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| active[i][col].abs()).unwrap();
            for &i in &nz {
                if i == piv {
                    continue;
                }
                let q = active[i][col].div_floor(&active[piv][col]);
                let pr = active[piv].clone();
                for (x, y) in active[i].iter_mut().zip(pr.iter()) {
                    *x -= &q * y;
                }
            }
        }
        let idx = (0..active.len()).find(|&i| !active[i][col].is_zero())?;
        let mut row = active.swap_remove(idx);
        if row[col].is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
        out[col] = row;
        active.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    for i in 0..n {
        for j in (0..i).rev() {
            let q = out[i][j].div_floor(&out[j][j]);
            if !q.is_zero() {
                let rj = out[j].clone();
                for (x, y) in out[i].iter_mut().zip(rj.iter()) {
                    *x -= &q * y;
                }
            }
        }
    }
    Some(out)
}

/// Solves x·H = v for lower-triangular H (rows are basis vectors); None if not integral.
pub fn solve_lower_int(h: &[Vec<BigInt>], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.len();
    let mut r = v.to_vec();
    let mut x = vec![BigInt::zero(); n];
    for k in (0..n).rev() {
        let (q, rem) = r[k].div_rem(&h[k][k]);
        if !rem.is_zero() {
            return None;
        }
        for j in 0..=k {
            r[j] -= &q * &h[k][j];
        }
        x[k] = q;
    }
    Some(x)
}

/// Row-reduces a matrix over F_p in place; returns the pivot columns.
pub fn rref_mod(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] % p != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = invm(m[r][c] % p, p);
        for x in m[r].iter_mut() {
            *x = mulm(*x % p, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    let t = mulm(f, m[r][j], p);
                    m[i][j] = (m[i][j] + p - t) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_mod(m: &[Vec<u64>], p: u64) -> usize {
    let mut a = m.to_vec();
    rref_mod(&mut a, p).len()
}

/// Basis of {x : x·M = 0} where M is given as rows (x has length = #rows).
pub fn left_kernel_mod(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    // transpose and take the right kernel
    let mut t: Vec<Vec<u64>> = (0..cols).map(|j| (0..rows).map(|i| m[i][j] % p).collect()).collect();
    right_kernel_from(&mut t, rows, p)
}

/// Basis of {x : M·x = 0} where M has `n` columns.
pub fn right_kernel_mod(m: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    right_kernel_from(&mut a, n, p)
}

fn right_kernel_from(a: &mut [Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let pivots = if a.is_empty() { vec![] } else { rref_mod(a, p) };
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][f] % p) % p;
            }
            v
        })
        .collect()
}

/// Rank over Q (computed modulo a large prime; exact for the small matrices used here
/// unless that prime divides a maximal minor).
pub fn rank_q(m: &[Vec<BigInt>]) -> usize {
    const P: u64 = 2_305_843_009_213_693_951; // 2^61 - 1
    let bp = BigInt::from(P);
    let a: Vec<Vec<u64>> = m
        .iter()
        .map(|r| r.iter().map(|x| x.mod_floor(&bp).to_u64().unwrap()).collect())
        .collect();
    rank_mod(&a, P)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn hnf_basic() {
        let rows = vec![b(&[2, 0]), b(&[0, 2]), b(&[1, 1])];
        let h = hnf_lower(&rows, 2).unwrap();
        assert_eq!(h, vec![b(&[2, 0]), b(&[1, 1])]);
        let x = solve_lower_int(&h, &b(&[3, 1])).unwrap();
        assert_eq!(x, b(&[1, 1]));
        assert!(solve_lower_int(&h, &b(&[1, 0])).is_none());
        assert!(hnf_lower(&[b(&[1, 1]), b(&[2, 2])], 2).is_none());
    }

    #[test]
    fn kernels() {
        let m = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let k = right_kernel_mod(&m, 3, 2);
        assert_eq!(k, vec![vec![1, 1, 1]]);
        let lk = left_kernel_mod(&[vec![1, 0], vec![1, 0], vec![0, 1]], 3);
        assert_eq!(lk, vec![vec![2, 1, 0]]);
    }
}
