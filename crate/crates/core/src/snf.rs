//! Smith normal form over the integers and the derived invariant-divisor data
//! over Z_m, plus exact linear solving and kernel counting/enumeration mod m.
//!
//! The Z_m Smith data is always obtained from the integer Smith normal form:
//! a unimodular transform stays invertible after reduction mod m, so the
//! invariant divisors over Z_m are `gcd(s_i, m)` for the integer invariant
//! factors `s_i`, with factors whose gcd equals m dropped (they vanish mod m).
//! This avoids pivoting among zero divisors entirely.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::matrix::IntMatrix;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: matrix has {expected} {side}, argument has {got}")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        side: &'static str,
    },
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("enumeration budget exceeded: {candidates} candidates > budget {budget}")]
    BudgetExceeded { candidates: BigInt, budget: u64 },
}

/// Integer Smith normal form: `left * M * right = diag(factors)`, with
/// `factors[i] | factors[i+1]` and `left`, `right` unimodular when requested.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub factors: Vec<BigInt>,
    pub left: Option<IntMatrix>,
    pub right: Option<IntMatrix>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// `diag(factors)` padded to the original shape.
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zero(rows, cols);
        for (i, s) in self.factors.iter().enumerate() {
            d[(i, i)] = s.clone();
        }
        d
    }
}

/// Invariant divisors of a matrix over Z_m: `d_1 | d_2 | ... | d_r`, each a
/// proper divisor of m (1 <= d_i < m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZmDivisors {
    pub modulus: u64,
    pub divisors: Vec<u64>,
}

impl ZmDivisors {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    pub fn product(&self) -> BigInt {
        self.divisors
            .iter()
            .fold(BigInt::one(), |acc, &d| acc * BigInt::from(d))
    }
}

/// Computes the integer Smith normal form of `m`.
///
/// Pivot selection is the smallest nonzero absolute value, ties broken by
/// lowest (row, column) index, which makes the elimination deterministic.
pub fn integer_snf(m: &IntMatrix, want_transforms: bool) -> SnfResult {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut left = want_transforms.then(|| IntMatrix::identity(rows));
    let mut right = want_transforms.then(|| IntMatrix::identity(cols));

    let n = rows.min(cols);
    let mut rank = n;
    for t in 0..n {
        if !reduce_pivot_block(&mut a, &mut left, &mut right, t) {
            rank = t;
            break;
        }
    }

    let factors = (0..rank).map(|i| a[(i, i)].clone()).collect();
    SnfResult { factors, left, right }
}

/// Clears row/column `t` against the submatrix below-right of it and leaves a
/// pivot at `(t, t)` dividing every remaining entry. Returns false when the
/// submatrix is all zero (no pivot exists).
fn reduce_pivot_block(
    a: &mut IntMatrix,
    left: &mut Option<IntMatrix>,
    right: &mut Option<IntMatrix>,
    t: usize,
) -> bool {
    let rows = a.rows();
    let cols = a.cols();

    loop {
        let Some((pi, pj)) = select_pivot(a, t) else {
            return false;
        };
        if pi != t {
            a.swap_rows(t, pi);
            if let Some(u) = left.as_mut() {
                u.swap_rows(t, pi);
            }
        }
        if pj != t {
            a.swap_cols(t, pj);
            if let Some(v) = right.as_mut() {
                v.swap_cols(t, pj);
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            if let Some(u) = left.as_mut() {
                u.negate_row(t);
            }
        }

        // Truncated division leaves remainders strictly smaller than the
        // pivot, so re-running pivot selection terminates.
        let mut clean = true;
        for i in t + 1..rows {
            if a[(i, t)].is_zero() {
                continue;
            }
            let q = -(&a[(i, t)] / &a[(t, t)]);
            a.add_row_multiple(i, t, &q);
            if let Some(u) = left.as_mut() {
                u.add_row_multiple(i, t, &q);
            }
            if !a[(i, t)].is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a[(t, j)].is_zero() {
                continue;
            }
            let q = -(&a[(t, j)] / &a[(t, t)]);
            a.add_col_multiple(j, t, &q);
            if let Some(v) = right.as_mut() {
                v.add_col_multiple(j, t, &q);
            }
            if !a[(t, j)].is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }

        // Enforce the divisibility chain: fold a row carrying a non-divisible
        // entry into row t and keep reducing.
        let offender = (t + 1..rows).find(|&i| {
            (t + 1..cols).any(|j| !(&a[(i, j)] % &a[(t, t)]).is_zero())
        });
        match offender {
            Some(i) => {
                let one = BigInt::one();
                a.add_row_multiple(t, i, &one);
                if let Some(u) = left.as_mut() {
                    u.add_row_multiple(t, i, &one);
                }
            }
            None => return true,
        }
    }
}

fn select_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = &a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            match &best {
                Some((b, _, _)) if *b <= abs => {}
                _ => best = Some((abs, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Invariant divisors of `m` over Z_modulus, from the integer invariant
/// factors via `d_i = gcd(s_i, modulus)`; gcds equal to the modulus are zero
/// mod m and dropped.
pub fn zm_invariant_divisors(m: &IntMatrix, modulus: u64) -> ZmDivisors {
    assert!(modulus >= 2, "modulus must be at least 2");
    let snf = integer_snf(m, false);
    let big_m = BigInt::from(modulus);
    let mut divisors = Vec::new();
    for s in &snf.factors {
        let g = s.gcd(&big_m).to_u64().expect("gcd bounded by modulus");
        if g < modulus {
            divisors.push(g);
        }
    }
    debug_assert!(divisors.windows(2).all(|w| w[1] % w[0] == 0));
    debug_assert!(divisors.iter().all(|d| modulus % d == 0));
    ZmDivisors { modulus, divisors }
}

/// Number of solutions of `Mx = 0` over Z_m: `m^(cols - r) * prod(d_i)`.
pub fn kernel_count_zm(m: &IntMatrix, modulus: u64) -> BigInt {
    let div = zm_invariant_divisors(m, modulus);
    let free = m.cols() - div.rank();
    BigInt::from(modulus).pow(free as u32) * div.product()
}

/// Solves `M x = b` over Z_m, returning one solution or `None` when the
/// system is infeasible.
///
/// With `U M V = diag(s_i)`, each congruence `s_i y_i = (U b)_i (mod m)` is
/// solvable iff `gcd(s_i, m)` divides `(U b)_i`; rows beyond the integer rank
/// require `(U b)_i = 0 (mod m)`. Then `x = V y`.
pub fn solve_linear_zm(
    m: &IntMatrix,
    b: &[BigInt],
    modulus: u64,
) -> Result<Option<Vec<u64>>, LinalgError> {
    if modulus < 2 {
        return Err(LinalgError::ModulusTooSmall(modulus));
    }
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows(),
            got: b.len(),
            side: "rows",
        });
    }

    let snf = integer_snf(m, true);
    let u = snf.left.as_ref().expect("transforms requested");
    let v = snf.right.as_ref().expect("transforms requested");
    let big_m = BigInt::from(modulus);

    let c: Vec<u64> = u
        .mat_vec(b)
        .iter()
        .map(|x| reduce_big(x, &big_m))
        .collect();

    let mut y = vec![0u64; m.cols()];
    for (i, s) in snf.factors.iter().enumerate() {
        let s_mod = reduce_big(s, &big_m);
        let ci = c[i];
        let g = if s_mod == 0 { modulus } else { s_mod.gcd(&modulus) };
        if ci % g != 0 {
            return Ok(None);
        }
        if g == modulus {
            continue; // s_i = 0 and c_i = 0 mod m: y_i free, keep 0
        }
        let m1 = modulus / g;
        let inv = mod_inverse(s_mod / g % m1, m1);
        y[i] = (u128::from(ci / g) * u128::from(inv) % u128::from(m1)) as u64;
    }
    for &ci in c.iter().skip(snf.factors.len()) {
        if ci != 0 {
            return Ok(None);
        }
    }

    let y_big: Vec<BigInt> = y.iter().map(|&x| BigInt::from(x)).collect();
    let x: Vec<u64> = v
        .mat_vec(&y_big)
        .iter()
        .map(|e| reduce_big(e, &big_m))
        .collect();

    debug_assert!({
        let x_big: Vec<BigInt> = x.iter().map(|&e| BigInt::from(e)).collect();
        m.mat_vec(&x_big)
            .iter()
            .zip(b)
            .all(|(lhs, rhs)| ((lhs - rhs) % &big_m).is_zero())
    });
    Ok(Some(x))
}

/// Exhaustively lists the kernel of `M` over Z_m; with `fix_first_zero` only
/// vectors whose first coordinate is 0 are produced.
pub fn enumerate_kernel_zm(
    m: &IntMatrix,
    modulus: u64,
    fix_first_zero: bool,
    budget: u64,
) -> Result<Vec<Vec<u64>>, LinalgError> {
    if modulus < 2 {
        return Err(LinalgError::ModulusTooSmall(modulus));
    }
    let n = m.cols();
    let free = if fix_first_zero && n > 0 { n - 1 } else { n };
    let candidates = BigInt::from(modulus).pow(free as u32);
    if candidates > BigInt::from(budget) {
        return Err(LinalgError::BudgetExceeded { candidates, budget });
    }

    let reduced = m.reduce_mod(modulus);
    let entries: Vec<Vec<u64>> = (0..reduced.rows())
        .map(|i| {
            reduced
                .row(i)
                .iter()
                .map(|x| x.to_u64().expect("reduced entry fits u64"))
                .collect()
        })
        .collect();

    let in_kernel = |x: &[u64]| {
        entries.iter().all(|row| {
            let s: u128 = row
                .iter()
                .zip(x)
                .map(|(&a, &b)| u128::from(a) * u128::from(b))
                .sum();
            s % u128::from(modulus) == 0
        })
    };

    let mut out = Vec::new();
    let mut x = vec![0u64; n];
    let start = usize::from(fix_first_zero && n > 0);
    loop {
        if in_kernel(&x) {
            out.push(x.clone());
        }
        // odometer increment over coordinates start..n
        let mut pos = n;
        while pos > start {
            let i = pos - 1;
            x[i] += 1;
            if x[i] < modulus {
                break;
            }
            x[i] = 0;
            pos -= 1;
        }
        if pos == start {
            break;
        }
    }
    Ok(out)
}

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 10_000_000;

fn reduce_big(x: &BigInt, big_m: &BigInt) -> u64 {
    let r = x % big_m;
    let r = if r.is_negative() { r + big_m } else { r };
    r.to_u64().expect("residue fits u64")
}

/// Inverse of `a` modulo `n` (requires gcd(a, n) = 1; n = 1 maps everything to 0).
fn mod_inverse(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (i128::from(a % n), i128::from(n));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "not invertible: gcd({a}, {n}) != 1");
    old_s.rem_euclid(i128::from(n)) as u64
}
