//! Spectral invariants computed exactly over Z_m: stabilizing index, cyclic
//! index with coloring certificates, signed hypergraphs, the degree-(k-1)
//! permutation representation, the twisted incidence matrix, and the covering
//! stabilizing-index formula with its block-decomposition verifier.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, SignedHypergraph};
use crate::matrix::IntMatrix;
use crate::perm::Perm;
use crate::snf::{
    enumerate_kernel_zm, solve_linear_zm, zm_invariant_divisors, LinalgError, ZmDivisors,
};
use crate::voltage::{derive, VoltageAssignment};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("hypothesis violated: the hypergraph is connected")]
    Disconnected,
    #[error("hypothesis violated: the derived covering is connected")]
    DisconnectedCover,
    #[error("hypothesis violated: gcd(m, k) = 1 (got m={m}, k={k})")]
    GcdNotOne { m: usize, k: usize },
    #[error("signed incidence matrix requires a 2-fold assignment, got k={0}")]
    FoldNotTwo(usize),
    #[error("{ell} does not divide the uniformity {m}")]
    EllDoesNotDivide { ell: u64, m: u64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// The stabilizing index together with the Z_m Smith data it came from.
#[derive(Debug, Clone)]
pub struct StabilizingIndex {
    pub s: BigInt,
    pub divisors: ZmDivisors,
}

/// An (m, l)-coloring: vertex labels in Z_m with every edge sum congruent to
/// m/l mod m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringCertificate {
    pub ell: u64,
    pub colors: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct CyclicIndex {
    pub c: u64,
    pub certificate: ColoringCertificate,
}

/// Everything the `invariants` command reports for one hypergraph.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub s: BigInt,
    pub c: u64,
    pub divisors: ZmDivisors,
    pub certificate: ColoringCertificate,
}

/// s(H) = m^(n-1-r) * prod(d_i), from the invariant divisors of the incidence
/// matrix over Z_m. Requires a connected hypergraph.
pub fn stabilizing_index(h: &Hypergraph) -> Result<StabilizingIndex, InvariantError> {
    if !h.is_connected() {
        return Err(InvariantError::Disconnected);
    }
    let m = h.uniformity() as u64;
    let divisors = zm_invariant_divisors(&h.incidence_matrix(), m);
    let s = stabilizing_index_from_divisors(h.vertex_count(), &divisors);
    Ok(StabilizingIndex { s, divisors })
}

fn stabilizing_index_from_divisors(n: usize, divisors: &ZmDivisors) -> BigInt {
    let r = divisors.rank();
    debug_assert!(r <= n - 1, "incidence rank over Z_m is at most n-1");
    BigInt::from(divisors.modulus).pow((n - 1 - r) as u32) * divisors.product()
}

/// Like [`stabilizing_index`], additionally cross-checked against the
/// exhaustive kernel model (vectors with first coordinate zero) when the
/// enumeration fits the budget. Returns `Some(matches)` when the check ran.
pub fn stabilizing_index_checked(
    h: &Hypergraph,
    budget: u64,
) -> Result<(StabilizingIndex, Option<bool>), InvariantError> {
    let result = stabilizing_index(h)?;
    let m = h.uniformity() as u64;
    match enumerate_kernel_zm(&h.incidence_matrix(), m, true, budget) {
        Ok(kernel) => {
            let matches = BigInt::from(kernel.len()) == result.s;
            Ok((result, Some(matches)))
        }
        Err(LinalgError::BudgetExceeded { .. }) => Ok((result, None)),
        Err(e) => Err(e.into()),
    }
}

/// c(H): the largest divisor l of m such that Z(H) x = (m/l) 1 is solvable
/// over Z_m, together with a solution as the coloring certificate. l = 1
/// always succeeds with the zero coloring.
pub fn cyclic_index(h: &Hypergraph) -> Result<CyclicIndex, InvariantError> {
    if !h.is_connected() {
        return Err(InvariantError::Disconnected);
    }
    let m = h.uniformity() as u64;
    let z = h.incidence_matrix();
    for ell in divisors_desc(m) {
        let target = BigInt::from(m / ell);
        let b = vec![target; h.edge_count()];
        if let Some(colors) = solve_linear_zm(&z, &b, m)? {
            return Ok(CyclicIndex {
                c: ell,
                certificate: ColoringCertificate { ell, colors },
            });
        }
    }
    unreachable!("l = 1 is always solvable");
}

/// All divisors of `m`, largest first.
pub fn divisors_desc(m: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=m).filter(|d| m % d == 0).collect();
    out.reverse();
    out
}

/// Checks every edge congruence of an (m, l)-coloring.
pub fn verify_coloring(
    h: &Hypergraph,
    cert: &ColoringCertificate,
) -> Result<bool, InvariantError> {
    let m = h.uniformity() as u64;
    if cert.ell == 0 || m % cert.ell != 0 {
        return Err(InvariantError::EllDoesNotDivide { ell: cert.ell, m });
    }
    if cert.colors.len() != h.vertex_count() {
        return Ok(false);
    }
    let target = (m / cert.ell) % m;
    Ok(h.edges().iter().all(|edge| {
        let sum: u64 = edge.iter().map(|&v| cert.colors[v] % m).sum();
        sum % m == target
    }))
}

pub fn invariant_report(h: &Hypergraph) -> Result<InvariantReport, InvariantError> {
    let stab = stabilizing_index(h)?;
    let cyc = cyclic_index(h)?;
    Ok(InvariantReport {
        s: stab.s,
        c: cyc.c,
        divisors: stab.divisors,
        certificate: cyc.certificate,
    })
}

/// The signed hypergraph of (H, phi): each edge signed by the product of the
/// signs of its incidence voltages.
pub fn signed_hypergraph(h: &Hypergraph, phi: &VoltageAssignment) -> SignedHypergraph {
    let signs = (0..h.edge_count())
        .map(|e| {
            h.edge(e)
                .iter()
                .map(|&v| phi.vertex_to_edge(e, v).sign())
                .product()
        })
        .collect();
    SignedHypergraph::new(h.clone(), signs)
}

/// The signed incidence matrix for 2-fold assignments: entry (e, v) is
/// sgn phi(e, v) when v is in e, else 0.
pub fn signed_incidence_matrix(
    h: &Hypergraph,
    phi: &VoltageAssignment,
) -> Result<IntMatrix, InvariantError> {
    if phi.fold() != 2 {
        return Err(InvariantError::FoldNotTwo(phi.fold()));
    }
    Ok(IntMatrix::from_fn(h.edge_count(), h.vertex_count(), |e, v| {
        if h.has_incidence(e, v) {
            BigInt::from(phi.edge_to_vertex(e, v).sign())
        } else {
            BigInt::from(0)
        }
    }))
}

/// Matrix of g on the sum-zero submodule, in the basis b_j = x_1 - x_j
/// (j = 2..k): g b_j = b_g(j) - b_g(1), with b_1 read as 0.
pub fn rho2_matrix(g: &Perm) -> IntMatrix {
    let k = g.degree();
    if k == 0 {
        return IntMatrix::zero(0, 0);
    }
    let mut out = IntMatrix::zero(k - 1, k - 1);
    let g1 = g.apply(0);
    for j in 1..k {
        let gj = g.apply(j);
        if gj != 0 {
            out[(gj - 1, j - 1)] += BigInt::one();
        }
        if g1 != 0 {
            out[(g1 - 1, j - 1)] -= BigInt::one();
        }
    }
    out
}

/// The permutation matrix P_g with entry (i, j) = 1 iff i = g(j).
pub fn permutation_matrix(g: &Perm) -> IntMatrix {
    let k = g.degree();
    IntMatrix::from_fn(k, k, |i, j| if g.apply(j) == i { 1 } else { 0 }.into())
}

/// The change of basis T = [all-ones | e_1 - e_2 | ... | e_1 - e_k].
/// det T = +-k, so T is invertible over Z_m exactly when gcd(m, k) = 1, and
/// P_g T = T (I_1 (+) rho2(g)) holds over the integers for every g.
pub fn transition_matrix(k: usize) -> IntMatrix {
    IntMatrix::from_fn(k, k, |i, j| {
        if j == 0 {
            1
        } else if i == 0 {
            1
        } else if i == j {
            -1
        } else {
            0
        }
        .into()
    })
}

/// Closed-form inverse of the transition matrix over Z_m: the first row is
/// k^-1 everywhere, row i subtracts e_i from it.
pub fn transition_matrix_inverse_mod(k: usize, m: u64) -> Result<IntMatrix, InvariantError> {
    if gcd(m, k as u64) != 1 {
        return Err(InvariantError::GcdNotOne { m: m as usize, k });
    }
    let kinv = BigInt::from(mod_inverse_u64(k as u64 % m, m));
    let out = IntMatrix::from_fn(k, k, |i, j| {
        if i == 0 {
            kinv.clone()
        } else if i == j {
            &kinv - BigInt::one()
        } else {
            kinv.clone()
        }
    });
    Ok(out.reduce_mod(m))
}

/// The layer matrices Z_g: one 0/1 matrix per distinct voltage value
/// g = phi(e, v) occurring on an edge-to-vertex arc; they sum to Z(H).
pub fn voltage_layer_matrices(
    h: &Hypergraph,
    phi: &VoltageAssignment,
) -> Vec<(Perm, IntMatrix)> {
    let mut layers: std::collections::BTreeMap<Perm, IntMatrix> = Default::default();
    for e in 0..h.edge_count() {
        for &v in h.edge(e) {
            let g = phi.edge_to_vertex(e, v);
            let z = layers
                .entry(g)
                .or_insert_with(|| IntMatrix::zero(h.edge_count(), h.vertex_count()));
            z[(e, v)] = BigInt::one();
        }
    }
    layers.into_iter().collect()
}

/// The twisted incidence matrix Z(H, phi) = sum_g Z_g (x) rho2(g), of shape
/// |E|(k-1) x n(k-1). For k = 2 this is the signed incidence matrix.
pub fn twisted_incidence(h: &Hypergraph, phi: &VoltageAssignment) -> IntMatrix {
    let k = phi.fold();
    let mut out = IntMatrix::zero(h.edge_count() * (k - 1), h.vertex_count() * (k - 1));
    for (g, z) in voltage_layer_matrices(h, phi) {
        out = out.add(&z.kron(&rho2_matrix(&g)));
    }
    out
}

/// Checks the exact block decomposition of the covering incidence matrix:
/// Z(H_B^phi) = sum_g Z_g (x) P_g over the integers, and, after conjugating
/// by I (x) T and permuting layers, Z(H) (+) Z(H, phi) over Z_m.
pub fn verify_block_decomposition(
    h: &Hypergraph,
    phi: &VoltageAssignment,
) -> Result<bool, InvariantError> {
    let k = phi.fold();
    let m = h.uniformity() as u64;
    if gcd(m, k as u64) != 1 {
        return Err(InvariantError::GcdNotOne { m: m as usize, k });
    }

    let cover = derive(h, phi);
    let z_cover = cover.hypergraph().incidence_matrix();

    // entrywise identity over Z: the cover's incidence matrix in block order
    // is exactly sum_g Z_g (x) P_g
    let mut assembled = IntMatrix::zero(z_cover.rows(), z_cover.cols());
    for (g, z) in voltage_layer_matrices(h, phi) {
        assembled = assembled.add(&z.kron(&permutation_matrix(&g)));
    }
    if assembled != z_cover {
        return Ok(false);
    }

    let t = transition_matrix(k);
    let t_inv = transition_matrix_inverse_mod(k, m)?;
    let conjugated = IntMatrix::identity(h.edge_count())
        .kron(&t_inv)
        .mul(&z_cover)
        .mul(&IntMatrix::identity(h.vertex_count()).kron(&t))
        .reduce_mod(m);

    // sort layer-0 coordinates in front to expose the direct sum
    let row_order = block_order(h.edge_count(), k);
    let col_order = block_order(h.vertex_count(), k);
    let permuted = conjugated.select_rows(&row_order).select_cols(&col_order);

    let expected = h
        .incidence_matrix()
        .direct_sum(&twisted_incidence(h, phi))
        .reduce_mod(m);
    Ok(permuted == expected)
}

fn block_order(blocks: usize, k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..blocks).map(|b| b * k).collect();
    for b in 0..blocks {
        for a in 1..k {
            order.push(b * k + a);
        }
    }
    order
}

/// s(H_B^phi) by the covering formula: s(H) * m^(n(k-1) - r) * prod(d_i),
/// where the d_i are the invariant divisors of the twisted incidence matrix
/// over Z_m. Requires gcd(m, k) = 1 and a connected covering.
pub fn covering_stabilizing_index(
    h: &Hypergraph,
    phi: &VoltageAssignment,
) -> Result<BigInt, InvariantError> {
    let k = phi.fold();
    let m = h.uniformity() as u64;
    if gcd(m, k as u64) != 1 {
        return Err(InvariantError::GcdNotOne { m: m as usize, k });
    }
    let cover = derive(h, phi);
    if !cover.is_connected() {
        return Err(InvariantError::DisconnectedCover);
    }
    let base = stabilizing_index(h)?;
    let twisted = zm_invariant_divisors(&twisted_incidence(h, phi), m);
    let free = h.vertex_count() * (k - 1) - twisted.rank();
    Ok(base.s * BigInt::from(m).pow(free as u32) * twisted.product())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mod_inverse_u64(a: u64, n: u64) -> u64 {
    let (mut old_r, mut r) = (i128::from(a % n), i128::from(n));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    assert_eq!(old_r, 1, "not invertible mod {n}");
    old_s.rem_euclid(i128::from(n)) as u64
}
