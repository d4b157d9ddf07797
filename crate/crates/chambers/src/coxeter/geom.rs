//! Integral geometric representation for systems with bonds in {2, 3, ∞}.
//!
//! For those bonds, `2·cos(π/m)` is 0, 1 or 2, so the standard reflection
//! representation `σ_r(v) = v − 2B(v, α_r)α_r` has integer matrices in the
//! simple-root basis.  The representation is faithful, which yields two exact
//! certificates used elsewhere:
//!
//! * element orders: reduction mod 3 is injective on finite-order subgroups
//!   of `GL_n(Z)`, so an element has finite order `n` iff its matrix mod 3
//!   has order `n` and the exact `n`-th power is the identity;
//! * infinite-order reflection products: two reflections with root vectors
//!   `v, w` generate an infinite dihedral group iff `|B(v, w)| ≥ 1`.

use super::{Bond, CoxeterSystem, OrderResult};

type Mat = Vec<i128>; // row-major n×n

/// Iteration cap for the mod-3 order loop.  Element orders of finite-order
/// integer matrices at desk-scale ranks are tiny; the cap only guards
/// pathological inputs, for which we decline to certify.
const MOD3_CAP: u64 = 500_000;

pub(crate) fn is_integral(sys: &CoxeterSystem) -> bool {
    sys.matrix().is_small_bond()
}

/// Column `j` gets the image of the basis vector `α_j` under `σ_k`.
fn gen_matrix(sys: &CoxeterSystem, k: usize) -> Mat {
    let n = sys.rank();
    let mut m = vec![0i128; n * n];
    for j in 0..n {
        m[j * n + j] = 1;
    }
    m[k * n + k] = -1;
    for j in 0..n {
        if j == k {
            continue;
        }
        // σ_k(α_j) = α_j + c α_k with c = 2·(−B(α_j, α_k)) ∈ {0, 1, 2}.
        let c = match sys.bond(k, j) {
            Bond::Finite(2) => 0,
            Bond::Finite(3) => 1,
            Bond::Infinite => 2,
            _ => unreachable!("caller guarantees small bonds"),
        };
        m[k * n + j] = c;
    }
    m
}

fn mat_mul_checked(n: usize, a: &Mat, b: &Mat) -> Option<Mat> {
    let mut out = vec![0i128; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                let prod = aik.checked_mul(b[k * n + j])?;
                out[i * n + j] = out[i * n + j].checked_add(prod)?;
            }
        }
    }
    Some(out)
}

fn is_identity(n: usize, m: &Mat) -> bool {
    m.iter().enumerate().all(|(idx, &v)| {
        let (i, j) = (idx / n, idx % n);
        v == if i == j { 1 } else { 0 }
    })
}

pub(crate) fn matrix_of(sys: &CoxeterSystem, letters: &[u8]) -> Option<Mat> {
    let n = sys.rank();
    let mut acc: Mat = (0..n * n)
        .map(|idx| if idx / n == idx % n { 1 } else { 0 })
        .collect();
    for &l in letters {
        acc = mat_mul_checked(n, &acc, &gen_matrix(sys, l as usize))?;
    }
    Some(acc)
}

fn mod3(m: &Mat) -> Vec<u8> {
    m.iter().map(|&v| v.rem_euclid(3) as u8).collect()
}

fn mat3_mul(n: usize, a: &[u8], b: &[u8]) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + aik * b[k * n + j]) % 3;
            }
        }
    }
    out
}

fn is_identity3(n: usize, m: &[u8]) -> bool {
    m.iter().enumerate().all(|(idx, &v)| {
        let (i, j) = (idx / n, idx % n);
        v == if i == j { 1 } else { 0 }
    })
}

/// Exact power by repeated squaring with overflow detection.
fn mat_pow_checked(n: usize, m: &Mat, mut e: u64) -> Option<Mat> {
    let mut base = m.clone();
    let mut acc: Mat = (0..n * n)
        .map(|idx| if idx / n == idx % n { 1 } else { 0 })
        .collect();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_checked(n, &acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul_checked(n, &base, &base)?;
        }
    }
    Some(acc)
}

/// Exact order of an element through its integer matrix, when available.
///
/// Returns `None` when the system has a bond outside {2, 3, ∞}, when matrix
/// arithmetic would overflow, or when the mod-3 loop exceeds its cap; the
/// caller then falls back to weaker certificates.
pub(crate) fn order_from_matrix(sys: &CoxeterSystem, letters: &[u8]) -> Option<OrderResult> {
    if !is_integral(sys) {
        return None;
    }
    let n = sys.rank();
    let m = matrix_of(sys, letters)?;
    if is_identity(n, &m) {
        return Some(OrderResult::Finite(1));
    }
    let m3 = mod3(&m);
    let mut p = m3.clone();
    let mut r: u64 = 1;
    while !is_identity3(n, &p) {
        p = mat3_mul(n, &p, &m3);
        r += 1;
        if r > MOD3_CAP {
            return None;
        }
    }
    // If the element had finite order k, the mod-3 image would have order
    // exactly k; so either the exact r-th power is the identity and the
    // order is r, or the element has infinite order.
    let exact = mat_pow_checked(n, &m, r)?;
    Some(if is_identity(n, &exact) {
        OrderResult::Finite(r)
    } else {
        OrderResult::InfiniteCertified
    })
}

/// Root vector of the reflection `u s u⁻¹`: the matrix of `u` applied to `α_s`.
pub(crate) fn root_vector(sys: &CoxeterSystem, u: &[u8], s: usize) -> Option<Vec<i128>> {
    let n = sys.rank();
    let m = matrix_of(sys, u)?;
    Some((0..n).map(|i| m[i * n + s]).collect())
}

/// Doubled bilinear form `2B(v, w)` evaluated on integer vectors.
fn doubled_form(sys: &CoxeterSystem, v: &[i128], w: &[i128]) -> Option<i128> {
    let n = sys.rank();
    let mut total: i128 = 0;
    for i in 0..n {
        for j in 0..n {
            let g: i128 = if i == j {
                2
            } else {
                match sys.bond(i, j) {
                    Bond::Finite(2) => 0,
                    Bond::Finite(3) => -1,
                    Bond::Infinite => -2,
                    _ => return None,
                }
            };
            if g == 0 {
                continue;
            }
            let term = v[i].checked_mul(w[j])?.checked_mul(g)?;
            total = total.checked_add(term)?;
        }
    }
    Some(total)
}

fn proportional(v: &[i128], w: &[i128]) -> bool {
    let n = v.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if v[i] * w[j] != v[j] * w[i] {
                return false;
            }
        }
    }
    true
}

/// Exact decision, where available, of whether two reflections generate an
/// infinite dihedral group.  The reflections are given by seeds `(u, s)`
/// meaning `u s u⁻¹`.  Returns `None` outside the integral representation.
pub(crate) fn reflections_generate_infinite(
    sys: &CoxeterSystem,
    seed_a: (&[u8], usize),
    seed_b: (&[u8], usize),
) -> Option<bool> {
    if !is_integral(sys) {
        return None;
    }
    let va = root_vector(sys, seed_a.0, seed_a.1)?;
    let vb = root_vector(sys, seed_b.0, seed_b.1)?;
    if proportional(&va, &vb) {
        // Same root line: same reflection, a degenerate product.
        return Some(false);
    }
    let twice_b = doubled_form(sys, &va, &vb)?;
    Some(twice_b.abs() >= 2)
}
