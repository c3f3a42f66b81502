//! Exact integer and rational matrix routines.
//!
//! Everything here works on `BigInt` / `BigRational`; there is no floating
//! point anywhere in a decision path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub type IntMatrix = Vec<Vec<BigInt>>;

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Leading principal minors `Δ_1, Δ_2, …` of a square matrix.
///
/// Uses Bareiss elimination without pivoting: after step `k` the pivot is
/// exactly `Δ_{k+1}`. Stops after the first zero minor (the zero is included
/// in the output), since later pivots are undefined without row exchanges.
pub fn leading_principal_minors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        out.push(pivot.clone());
        if pivot.is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    out
}

/// Solves `a · x = b` for square nonsingular integer `a` and rational `b`.
///
/// The right-hand side is cleared of denominators, the augmented integer
/// system is triangularised fraction-free, and only the back substitution
/// touches rationals. Returns `None` when `a` is singular.
pub fn solve(a: &[Vec<BigInt>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(b.len(), n, "solve: rhs length");
    if n == 0 {
        return Some(Vec::new());
    }
    let scale = b.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut aug: IntMatrix = a
        .iter()
        .zip(b)
        .map(|(row, q)| {
            let mut r = row.clone();
            r.push(q.numer() * (&scale / q.denom()));
            r
        })
        .collect();

    let mut prev = BigInt::one();
    for k in 0..n {
        if aug[k][k].is_zero() {
            let i = (k + 1..n).find(|&i| !aug[i][k].is_zero())?;
            aug.swap(i, k);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = (&aug[i][j] * &aug[k][k] - &aug[i][k] * &aug[k][j]) / &prev;
                aug[i][j] = v;
            }
            aug[i][k] = BigInt::zero();
        }
        prev = aug[k][k].clone();
    }

    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(aug[i][n].clone());
        for j in i + 1..n {
            acc -= &x[j] * Rational::from_integer(aug[i][j].clone());
        }
        x[i] = acc / Rational::from_integer(aug[i][i].clone());
    }
    let scale = Rational::from_integer(scale);
    Some(x.into_iter().map(|v| v / &scale).collect())
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<BigInt>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut a = m.to_vec();
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            for j in c + 1..cols {
                let v = (&a[i][j] * &a[r][c] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Basis of the integer kernel `{x ∈ Zⁿ : a·x = 0}` of an `m × n` matrix.
///
/// Column operations with extended gcd bring `a` into column echelon form
/// while a unimodular matrix `u` tracks them; the trailing columns of `u`
/// span the kernel, and because `u` is unimodular the result is saturated.
pub fn integer_kernel(a: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut a = a.to_vec();
    let mut u: IntMatrix = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivot_col = 0;
    for r in 0..a.len() {
        if pivot_col == ncols {
            break;
        }
        for j in pivot_col + 1..ncols {
            if a[r][j].is_zero() {
                continue;
            }
            if a[r][pivot_col].is_zero() {
                swap_cols(&mut a, pivot_col, j);
                swap_cols(&mut u, pivot_col, j);
                continue;
            }
            let p = a[r][pivot_col].clone();
            let q = a[r][j].clone();
            let eg = p.extended_gcd(&q);
            let (pg, qg) = (&p / &eg.gcd, &q / &eg.gcd);
            // [[x, -q/g], [y, p/g]] has determinant 1.
            combine_cols(&mut a, pivot_col, j, &eg.x, &eg.y, &qg, &pg);
            combine_cols(&mut u, pivot_col, j, &eg.x, &eg.y, &qg, &pg);
        }
        if !a[r][pivot_col].is_zero() {
            pivot_col += 1;
        }
    }
    let mut kernel: Vec<Vec<BigInt>> = (pivot_col..ncols)
        .map(|c| u.iter().map(|row| row[c].clone()).collect())
        .collect();
    size_reduce(&mut kernel);
    kernel
}

fn swap_cols(m: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

/// col_i ← x·col_i + y·col_j, col_j ← −qg·col_i + pg·col_j (simultaneously).
fn combine_cols(
    m: &mut [Vec<BigInt>],
    i: usize,
    j: usize,
    x: &BigInt,
    y: &BigInt,
    qg: &BigInt,
    pg: &BigInt,
) {
    for row in m.iter_mut() {
        let ci = row[i].clone();
        let cj = row[j].clone();
        row[i] = x * &ci + y * &cj;
        row[j] = pg * &cj - qg * &ci;
    }
}

/// Pairwise Euclidean size reduction of a lattice basis (keeps the span).
fn size_reduce(basis: &mut [Vec<BigInt>]) {
    let norm = |v: &[BigInt]| v.iter().map(|x| x * x).fold(BigInt::zero(), |a, b| a + b);
    let dot = |v: &[BigInt], w: &[BigInt]| {
        v.iter()
            .zip(w)
            .map(|(x, y)| x * y)
            .fold(BigInt::zero(), |a, b| a + b)
    };
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                let nj = norm(&basis[j]);
                if nj.is_zero() {
                    continue;
                }
                let d = dot(&basis[i], &basis[j]);
                // nearest integer to d / nj
                let two = BigInt::from(2);
                let mu = (&two * &d + &nj).div_floor(&(&two * &nj));
                if mu.is_zero() {
                    continue;
                }
                let bj = basis[j].clone();
                let candidate: Vec<BigInt> =
                    basis[i].iter().zip(&bj).map(|(x, y)| x - &mu * y).collect();
                if norm(&candidate) < norm(&basis[i]) {
                    basis[i] = candidate;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Nonzero invariant factors of the Smith normal form, in divisibility order.
pub fn smith_invariants(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let v = &a[i][j] - &q * &a[i][t];
                    a[i][j] = v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // pivot must divide the whole trailing block
        let offender = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
        if let Some((i, _)) = offender {
            for j in t..cols {
                let v = &a[t][j] + &a[i][j];
                a[t][j] = v;
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}
