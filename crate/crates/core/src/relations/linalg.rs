//! Exact rank and left kernels of rational matrices.
//!
//! The fast path finds independent rows and pivot columns modulo a 61-bit
//! prime, solves for every dependent row exactly on those columns and then
//! checks the solution on all columns. Rows independent mod p are
//! independent over Q, so a fully checked run is a certified rank. Anything
//! that does not check out falls back to [`exact_decompose`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{denominator_lcm, Rational};

const P: u64 = (1 << 61) - 1;

/// Rank data of a list of rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub rank: usize,
    /// Rows not in the span of the rows before them.
    pub independent: Vec<usize>,
    /// One primitive integer vector per dependent row, in row order. The
    /// vector for row `j` is supported on `j` and independent rows before it.
    pub kernel: Vec<Vec<BigInt>>,
}

fn clear_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = denominator_lcm(row);
    let ints = row.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    (ints, l)
}

/// Divides out the content and makes the first nonzero entry positive.
pub fn normalize(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return;
    }
    let neg = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if neg { -g } else { g };
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

/// Kernel vector `t` of the cleared rows `L_i r_i` as a kernel vector of the
/// original rows: entry `i` becomes `t_i L_i`.
fn to_original(mut t: Vec<BigInt>, scales: &[BigInt]) -> Vec<BigInt> {
    for (x, l) in t.iter_mut().zip(scales) {
        *x *= l;
    }
    normalize(&mut t);
    t
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits")
}

/// Greedy independent rows and their pivot columns modulo `P`.
fn modular_pivots(rows: &[Vec<BigInt>]) -> (Vec<usize>, Vec<usize>) {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut independent = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut x: Vec<u64> = row.iter().map(reduce).collect();
        for (piv, b) in &basis {
            let f = x[*piv];
            if f == 0 {
                continue;
            }
            for (xk, bk) in x.iter_mut().zip(b) {
                *xk = (*xk + P - mulmod(f, *bk)) % P;
            }
        }
        if let Some(piv) = x.iter().position(|&v| v != 0) {
            let inv = powmod(x[piv], P - 2);
            for xk in x.iter_mut() {
                *xk = mulmod(*xk, inv);
            }
            basis.push((piv, x));
            independent.push(i);
        }
    }
    let pivots = basis.iter().map(|(p, _)| *p).collect();
    (independent, pivots)
}

/// Solves `a · X = b` for a nonsingular square integer `a` and several
/// right-hand sides by fraction-free elimination. Returns `(det, det·X)`,
/// with `det·X` integral, or `None` if `a` is singular.
fn solve_integer(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Option<(BigInt, Vec<Vec<BigInt>>)> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().chain(rb).cloned().collect())
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !aug[i][k].is_zero())?;
        aug.swap(p, k);
        for i in k + 1..n {
            for j in k + 1..n + m {
                let v = &aug[k][k] * &aug[i][j] - &aug[i][k] * &aug[k][j];
                aug[i][j] = v / &prev;
            }
            aug[i][k] = BigInt::zero();
        }
        prev = aug[k][k].clone();
    }
    // `prev` is ± det(a), so `prev·x` is integral
    let det = prev;
    let mut x = vec![vec![BigInt::zero(); m]; n];
    for c in 0..m {
        for i in (0..n).rev() {
            let mut acc = &det * &aug[i][n + c];
            for k in i + 1..n {
                acc -= &aug[i][k] * &x[k][c];
            }
            x[i][c] = acc / &aug[i][i];
        }
    }
    Some((det, x))
}

fn modular_decompose(rows: &[Vec<BigInt>]) -> Option<(Vec<usize>, Vec<(usize, Vec<BigInt>)>)> {
    let (independent, pivots) = modular_pivots(rows);
    let r = independent.len();
    let dependent: Vec<usize> = (0..rows.len()).filter(|i| independent.binary_search(i).is_err()).collect();
    if dependent.is_empty() {
        return Some((independent, Vec::new()));
    }
    // (A^T)[c][k] = rows[I_k][C_c]
    let at: Vec<Vec<BigInt>> = pivots
        .iter()
        .map(|&c| independent.iter().map(|&i| rows[i][c].clone()).collect())
        .collect();
    let rhs: Vec<Vec<BigInt>> = pivots
        .iter()
        .map(|&c| dependent.iter().map(|&j| rows[j][c].clone()).collect())
        .collect();
    let (det, x) = if r == 0 {
        (BigInt::one(), Vec::new())
    } else {
        solve_integer(&at, &rhs)?
    };
    let mut kernel = Vec::with_capacity(dependent.len());
    for (col, &j) in dependent.iter().enumerate() {
        let mut t = vec![BigInt::zero(); rows.len()];
        t[j] = det.clone();
        for (k, &i) in independent.iter().enumerate() {
            let c = &x[k][col];
            if !c.is_zero() {
                if i > j {
                    return None;
                }
                t[i] = -c;
            }
        }
        // check on every column
        let support: Vec<usize> = (0..t.len()).filter(|&i| !t[i].is_zero()).collect();
        for col_idx in 0..rows[j].len() {
            let mut acc = BigInt::zero();
            for &i in &support {
                acc += &t[i] * &rows[i][col_idx];
            }
            if !acc.is_zero() {
                return None;
            }
        }
        kernel.push((j, t));
    }
    Some((independent, kernel))
}

/// Rank, independent rows and kernel of `rows` (all of equal length).
pub fn decompose(rows: &[Vec<Rational>]) -> Decomposition {
    let (ints, scales): (Vec<_>, Vec<_>) = rows.iter().map(|r| clear_row(r)).unzip();
    match modular_decompose(&ints) {
        Some((independent, kernel)) => Decomposition {
            rank: independent.len(),
            independent,
            kernel: kernel.into_iter().map(|(_, t)| to_original(t, &scales)).collect(),
        },
        None => exact_decompose(rows),
    }
}

/// Incremental fraction-free row echelon over the integers, tracking how
/// each reduced row is built from the input rows. Slower than
/// [`decompose`], which it backs up; it returns identical results.
pub fn exact_decompose(rows: &[Vec<Rational>]) -> Decomposition {
    let (ints, scales): (Vec<_>, Vec<_>) = rows.iter().map(|r| clear_row(r)).unzip();
    let n = rows.len();
    let mut basis: Vec<(usize, Vec<BigInt>, Vec<BigInt>)> = Vec::new();
    let mut independent = Vec::new();
    let mut kernel = Vec::new();
    for (i, row) in ints.into_iter().enumerate() {
        let mut x = row;
        let mut t = vec![BigInt::zero(); n];
        t[i] = BigInt::one();
        for (piv, b, tb) in &basis {
            if x[*piv].is_zero() {
                continue;
            }
            let (f, g) = (b[*piv].clone(), x[*piv].clone());
            for (xk, bk) in x.iter_mut().zip(b) {
                *xk = &f * &*xk - &g * bk;
            }
            for (tk, sk) in t.iter_mut().zip(tb) {
                *tk = &f * &*tk - &g * sk;
            }
            let content = x.iter().chain(t.iter()).fold(BigInt::zero(), |a, v| a.gcd(v));
            if !content.is_one() && !content.is_zero() {
                x.iter_mut().for_each(|v| *v = &*v / &content);
                t.iter_mut().for_each(|v| *v = &*v / &content);
            }
        }
        match x.iter().position(|v| !v.is_zero()) {
            Some(piv) => {
                basis.push((piv, x, t));
                independent.push(i);
            }
            None => kernel.push(to_original(t, &scales)),
        }
    }
    Decomposition {
        rank: independent.len(),
        independent,
        kernel,
    }
}

/// `(rank, kernel basis)` of the rows.
pub fn rank_and_kernel(rows: &[Vec<Rational>]) -> (usize, Vec<Vec<BigInt>>) {
    let d = decompose(rows);
    (d.rank, d.kernel)
}

/// Rank only.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    decompose(rows).rank
}

/// Whether `v` lies in the span of `basis` (all of equal length).
pub fn in_span(basis: &[Vec<BigInt>], v: &[Rational]) -> bool {
    let mut rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|b| b.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    let before = rank(&rows);
    rows.push(v.to_vec());
    rank(&rows) == before
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_has_full_rank() {
        let (r, k) = rank_and_kernel(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(r, 3);
        assert!(k.is_empty());
    }

    #[test]
    fn duplicate_row() {
        let (r, k) = rank_and_kernel(&m(&[&[0, 1, 3, 4], &[0, 2, 6, 8]]));
        assert_eq!(r, 1);
        assert_eq!(k, vec![ints(&[2, -1])]);
    }

    #[test]
    fn rational_rows_are_scaled_back() {
        let rows = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(3, 1), rat(2, 1)],
            vec![rat(0, 1), rat(0, 1)],
        ];
        let d = decompose(&rows);
        assert_eq!(d.rank, 1);
        assert_eq!(d.independent, vec![0]);
        assert_eq!(d.kernel, vec![ints(&[6, -1, 0]), ints(&[0, 0, 1])]);
        assert_eq!(d, exact_decompose(&rows));
    }

    #[test]
    fn zero_matrix() {
        let d = decompose(&m(&[&[0, 0], &[0, 0]]));
        assert_eq!(d.rank, 0);
        assert_eq!(d.kernel, vec![ints(&[1, 0]), ints(&[0, 1])]);
    }

    #[test]
    fn entries_divisible_by_the_prime_still_work() {
        let p = BigInt::from(P);
        let big = Rational::from_integer(p.clone());
        let rows = vec![
            vec![big.clone(), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
            vec![big, rat(1, 1)],
        ];
        let d = decompose(&rows);
        assert_eq!(d, exact_decompose(&rows));
        assert_eq!(d.rank, 2);
        assert_eq!(d.kernel, vec![ints(&[1, 1, -1])]);
    }

    #[test]
    fn span_membership() {
        let basis = vec![ints(&[1, 0, -1]), ints(&[0, 1, 1])];
        assert!(in_span(&basis, &[rat(2, 1), rat(-1, 3), rat(-7, 3)]));
        assert!(!in_span(&basis, &[rat(1, 1), rat(0, 1), rat(0, 1)]));
    }

    #[test]
    fn integer_solver() {
        let a = vec![ints(&[2, 1]), ints(&[1, 3])];
        let b = vec![ints(&[3]), ints(&[5])];
        let (det, x) = solve_integer(&a, &b).unwrap();
        // x = (4/5, 7/5)
        assert_eq!(&x[0][0] * 5, &det * 4);
        assert_eq!(&x[1][0] * 5, &det * 7);
        assert!(solve_integer(&[ints(&[1, 2]), ints(&[2, 4])], &[ints(&[1]), ints(&[1])]).is_none());
    }
}
