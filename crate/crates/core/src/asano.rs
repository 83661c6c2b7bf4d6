//! Asano contraction.
//!
//! Writing `Φ = A + B z_i + C z_j + D z_i z_j` with `A, B, C, D` free of
//! `z_i, z_j`, the contraction is `A + D z`. Variable indices here are
//! zero-based; the merged variable takes the slot `min(i, j)` and the
//! remaining variables keep their relative order.

use crate::error::{invalid, LyError, Result};
use crate::poly::MultiAffinePoly;
use crate::scalar::{czero, Scalar};

pub fn contract_pair<T: Scalar>(phi: &MultiAffinePoly<T>, i: usize, j: usize) -> Result<MultiAffinePoly<T>> {
    let n = phi.n();
    if n < 2 {
        return invalid("contraction needs at least two variables");
    }
    if i == j {
        return invalid("cannot contract a variable with itself");
    }
    if i >= n || j >= n {
        return invalid(format!("variable index out of range for {n} variables"));
    }
    let (lo, hi) = (i.min(j), i.max(j));
    let pair = (1 << lo) | (1 << hi);
    let below = (1 << hi) - 1;
    let mut out = vec![czero(); 1 << (n - 1)];
    for mask in 0..1usize << n {
        if mask & pair != 0 {
            continue;
        }
        // Drop bit `hi`; bit `lo` now carries the merged variable.
        let target = (mask & below) | ((mask >> 1) & !below);
        out[target] = phi.coeff(mask);
        out[target | 1 << lo] = phi.coeff(mask | pair);
    }
    MultiAffinePoly::from_coeffs(n - 1, out)
}

/// Coefficient-wise product computed as `n` Asano contractions of `Φ' ⊗ Φ''`.
pub fn convolve_via_contraction<T: Scalar>(
    a: &MultiAffinePoly<T>,
    b: &MultiAffinePoly<T>,
) -> Result<MultiAffinePoly<T>> {
    let n = a.n();
    if b.n() != n {
        return Err(LyError::DimensionMismatch { expected: n, found: b.n() });
    }
    let mut acc = a.tensor_product(b);
    for k in 0..n {
        acc = contract_pair(&acc, k, n)?;
    }
    Ok(acc)
}
