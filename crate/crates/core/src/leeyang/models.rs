//! Explicit Lee-Yang model families.

use num_complex::Complex;

use crate::error::{invalid, Result};
use crate::poly::MultiAffinePoly;
use crate::scalar::{cone, lit, Scalar};

/// Interaction on the pair `{j, k}` (zero-based, `j < k`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSpec<T> {
    pub j: usize,
    pub k: usize,
    pub a: Complex<T>,
    pub b: Complex<T>,
}

/// `E_X = Π_U E_{UX}` with
/// `E_{UX} = a_U` if `j ∈ X, k ∉ X`; `a_U*` if `j ∉ X, k ∈ X`;
/// `b_U` if neither; `b_U*` if both.
pub fn pair_model<T: Scalar>(n: usize, pairs: &[PairSpec<T>]) -> Result<MultiAffinePoly<T>> {
    if n < 2 {
        return invalid("a pair model needs at least two variables");
    }
    for p in pairs {
        if !(p.j < p.k && p.k < n) {
            return invalid(format!("pair ({}, {}) must satisfy j < k < {n}", p.j, p.k));
        }
        if p.b.norm() == T::zero() {
            return invalid(format!("b on pair ({}, {}) must be nonzero", p.j, p.k));
        }
    }
    let coeffs = (0..1usize << n)
        .map(|x| {
            pairs.iter().fold(cone(), |acc, p| {
                let factor = match (x >> p.j & 1 == 1, x >> p.k & 1 == 1) {
                    (true, false) => p.a,
                    (false, true) => p.a.conj(),
                    (false, false) => p.b,
                    (true, true) => p.b.conj(),
                };
                acc * factor
            })
        })
        .collect();
    MultiAffinePoly::from_coeffs(n, coeffs)
}

/// Single interaction on all of `U = {1, …, size}`:
/// `E_X = b` if `X = ∅`, `b*` if `X = U`, `1` otherwise.
/// This is `Ψ_Φ` for `Φ = (1 + z_1)⋯(1 + z_{size−1}) − (1 − b)`.
pub fn delta_model<T: Scalar>(size: usize, b: Complex<T>) -> Result<MultiAffinePoly<T>> {
    if !(3..=4).contains(&size) {
        return invalid("interaction size must be 3 or 4");
    }
    if b.norm() == T::zero() {
        return invalid("b must be nonzero");
    }
    let full = (1usize << size) - 1;
    let coeffs = (0..=full)
        .map(|x| match x {
            0 => b,
            x if x == full => b.conj(),
            _ => cone(),
        })
        .collect();
    MultiAffinePoly::from_coeffs(size, coeffs)
}

/// Whether `w` lies strictly inside the cardioid `ρ = 2(1 + cos θ)`, which
/// bounds `{(1 − z_1)(1 − z_2) : |z_1|, |z_2| < 1}`. The cusp `w = 0` is
/// counted as interior.
pub fn cardioid_contains<T: Scalar>(w: Complex<T>) -> bool {
    if w.norm() == T::zero() {
        return true;
    }
    w.norm() < lit::<T>(2.0) * (T::one() + w.arg().cos())
}
