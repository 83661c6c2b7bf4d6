//! Dense multiaffine polynomials.
//!
//! A polynomial in `n` variables that has degree at most one in each variable
//! is stored as its `2^n` coefficients `E_X`, indexed by the bitmask of the
//! subset `X`: bit `i` set means `z_{i+1}` occurs in the monomial.

use num_complex::Complex;

use crate::error::{invalid, LyError, Result};
use crate::scalar::{cone, czero, Scalar};

/// Default cap on the number of variables.
pub const DEFAULT_MAX_VARS: usize = 20;

/// A point `(z_1, …, z_n)` of `C^n`.
pub type ComplexPoint<T> = Vec<Complex<T>>;

#[derive(Debug, Clone, PartialEq)]
pub struct MultiAffinePoly<T: Scalar> {
    n: usize,
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> MultiAffinePoly<T> {
    /// Builds a polynomial from `(bitmask, coefficient)` entries; absent
    /// subsets get coefficient zero.
    pub fn new<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Complex<T>)>,
    {
        Self::new_with_limit(n, entries, DEFAULT_MAX_VARS)
    }

    pub fn new_with_limit<I>(n: usize, entries: I, max_vars: usize) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Complex<T>)>,
    {
        if n < 1 {
            return invalid("a multiaffine polynomial needs at least one variable");
        }
        if n > max_vars {
            return invalid(format!("{n} variables exceeds the limit of {max_vars}"));
        }
        let mut coeffs = vec![czero(); 1 << n];
        for (mask, value) in entries {
            if mask >> n != 0 {
                return invalid(format!("subset bitmask {mask} refers to a variable beyond z_{n}"));
            }
            coeffs[mask] = value;
        }
        Ok(Self { n, coeffs })
    }

    /// Wraps a full coefficient table. `n = 0` (a constant) is allowed here
    /// because slicing and splitting produce it.
    pub fn from_coeffs(n: usize, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if n > DEFAULT_MAX_VARS.max(usize::BITS as usize - 2) {
            return invalid(format!("{n} variables is too many"));
        }
        if coeffs.len() != 1 << n {
            return Err(LyError::DimensionMismatch { expected: 1 << n, found: coeffs.len() });
        }
        Ok(Self { n, coeffs })
    }

    pub fn zero(n: usize) -> Self {
        Self { n, coeffs: vec![czero(); 1 << n] }
    }

    /// The convolution identity: every coefficient equal to one, i.e.
    /// `(1 + z_1)⋯(1 + z_n)`.
    pub fn ones(n: usize) -> Self {
        Self { n, coeffs: vec![cone(); 1 << n] }
    }

    pub fn constant(n: usize, value: Complex<T>) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[0] = value;
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, mask: usize) -> Complex<T> {
        self.coeffs[mask]
    }

    pub fn full_mask(&self) -> usize {
        (1 << self.n) - 1
    }

    /// `E_∅`, the value at the origin.
    pub fn constant_term(&self) -> Complex<T> {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == T::zero() && c.im == T::zero())
    }

    /// True when no coefficient other than `E_∅` is nonzero.
    pub fn is_constant(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.re == T::zero() && c.im == T::zero())
    }

    pub fn max_abs(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()))
    }

    pub fn l1_norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |s, c| s + c.norm())
    }

    /// Whether some monomial containing `z_{var+1}` has a nonzero coefficient.
    pub fn depends_on(&self, var: usize) -> bool {
        let bit = 1 << var;
        self.coeffs
            .iter()
            .enumerate()
            .any(|(mask, c)| mask & bit != 0 && c.norm() > T::zero())
    }

    pub fn eval(&self, z: &[Complex<T>]) -> Result<Complex<T>> {
        if z.len() != self.n {
            return Err(LyError::DimensionMismatch { expected: self.n, found: z.len() });
        }
        Ok(self.eval_unchecked(z))
    }

    /// Folds the table one variable at a time, highest variable first.
    pub(crate) fn eval_unchecked(&self, z: &[Complex<T>]) -> Complex<T> {
        let mut buf = self.coeffs.clone();
        let mut len = buf.len();
        for var in (0..self.n).rev() {
            let half = len / 2;
            let zi = z[var];
            for mask in 0..half {
                buf[mask] = buf[mask] + zi * buf[mask + half];
            }
            len = half;
            debug_assert_eq!(half, 1 << var);
        }
        buf[0]
    }

    /// `Φ†`: the coefficient of `X` becomes the conjugate of `E_{[n]∖X}`.
    pub fn dagger(&self) -> Self {
        let full = self.full_mask();
        let coeffs = (0..self.coeffs.len()).map(|mask| self.coeffs[full ^ mask].conj()).collect();
        Self { n: self.n, coeffs }
    }

    /// Coefficient-wise (Hadamard) product.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).collect();
        Ok(Self { n: self.n, coeffs })
    }

    /// `Φ∘λ`, i.e. `z ↦ Φ(λz_1, …, λz_n)`.
    pub fn scale(&self, lambda: Complex<T>) -> Result<Self> {
        if lambda.norm() == T::zero() {
            return invalid("scale factor must be nonzero");
        }
        let mut powers = vec![cone::<T>(); self.n + 1];
        for k in 1..=self.n {
            powers[k] = powers[k - 1] * lambda;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(mask, c)| c * powers[mask.count_ones() as usize])
            .collect();
        Ok(Self { n: self.n, coeffs })
    }

    pub fn mul_scalar(&self, factor: Complex<T>) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_n(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Self { n: self.n, coeffs })
    }

    /// `Φ'(z_1…z_k) · Φ''(z_{k+1}…z_{k+m})`.
    pub fn tensor_product(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut coeffs = vec![czero(); 1 << n];
        for (y, b) in other.coeffs.iter().enumerate() {
            for (x, a) in self.coeffs.iter().enumerate() {
                coeffs[x | (y << self.n)] = a * b;
            }
        }
        Self { n, coeffs }
    }

    /// `Ψ_Φ(z_1…z_{n+1}) = z_{n+1} Φ†(z_1…z_n) + Φ(z_1…z_n)`.
    pub fn build_psi(&self) -> Self {
        let dag = self.dagger();
        let mut coeffs = self.coeffs.clone();
        coeffs.extend_from_slice(&dag.coeffs);
        Self { n: self.n + 1, coeffs }
    }

    /// Splits `Ψ = Φ0 + z_{n+1} Φ1` along the last variable.
    pub fn split_psi(&self) -> Result<(Self, Self)> {
        if self.n == 0 {
            return invalid("cannot split a polynomial without variables");
        }
        let half = 1 << (self.n - 1);
        let low = Self { n: self.n - 1, coeffs: self.coeffs[..half].to_vec() };
        let high = Self { n: self.n - 1, coeffs: self.coeffs[half..].to_vec() };
        Ok((low, high))
    }

    /// `max_X |E_X − E*_{[n]∖X}|`.
    pub fn self_dual_deviation(&self) -> T {
        let full = self.full_mask();
        (0..self.coeffs.len())
            .map(|mask| (self.coeffs[mask] - self.coeffs[full ^ mask].conj()).norm())
            .fold(T::zero(), T::max)
    }

    pub fn is_self_dual(&self, tol: T) -> bool {
        self.self_dual_deviation() <= tol
    }

    /// Renames variables: old variable `i` becomes variable `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(LyError::DimensionMismatch { expected: self.n, found: perm.len() });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return invalid("permutation is not a bijection");
            }
        }
        let mut coeffs = vec![czero(); self.coeffs.len()];
        for (mask, c) in self.coeffs.iter().enumerate() {
            coeffs[remap_mask(mask, perm)] = *c;
        }
        Ok(Self { n: self.n, coeffs })
    }

    /// Restriction to the variables in `vars` (listed in their new order),
    /// with every other variable set to zero.
    pub fn restrict_to(&self, vars: &[usize]) -> Self {
        let k = vars.len();
        let coeffs = (0..1usize << k).map(|local| self.coeffs[spread_mask(local, vars)]).collect();
        Self { n: k, coeffs }
    }

    /// Classes of variables that can be exchanged without changing any
    /// coefficient, in increasing order of their smallest member.
    pub fn symmetry_classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        'vars: for v in 0..self.n {
            for class in classes.iter_mut() {
                if self.swap_invariant(class[0], v) {
                    class.push(v);
                    continue 'vars;
                }
            }
            classes.push(vec![v]);
        }
        classes
    }

    fn swap_invariant(&self, i: usize, j: usize) -> bool {
        let (bi, bj) = (1usize << i, 1usize << j);
        (0..self.coeffs.len())
            .filter(|x| x & bi != 0 && x & bj == 0)
            .all(|x| self.coeffs[x] == self.coeffs[x ^ bi ^ bj])
    }

    /// Splits into variable-disjoint factors, finest first found.
    ///
    /// Returns `(variables, factor)` pairs whose tensor product, with the
    /// variables placed back in position, reproduces `self` within `tol`
    /// relative to the largest coefficient. A polynomial that does not depend
    /// on some variable yields the factor `1 + 0·z` for it.
    pub fn factorize(&self, tol: T) -> Vec<(Vec<usize>, Self)> {
        let mut out = Vec::new();
        let mut remaining: Vec<usize> = (0..self.n).collect();
        let mut rest = self.clone();
        // Subset enumeration below is exponential in the variable count.
        const MAX_SPLIT_VARS: usize = 14;
        while remaining.len() > 1 && remaining.len() <= MAX_SPLIT_VARS {
            match rest.split_off_first_factor(tol) {
                Some((block, factor, cofactor)) => {
                    let block_vars: Vec<usize> = block.iter().map(|&i| remaining[i]).collect();
                    let rest_vars: Vec<usize> =
                        (0..remaining.len()).filter(|i| !block.contains(i)).map(|i| remaining[i]).collect();
                    out.push((block_vars, factor));
                    remaining = rest_vars;
                    rest = cofactor;
                }
                None => break,
            }
        }
        out.push((remaining, rest));
        out
    }

    /// Finds the smallest variable set containing variable 0 that separates
    /// as a rank-one factor.
    fn split_off_first_factor(&self, tol: T) -> Option<(Vec<usize>, Self, Self)> {
        let n = self.n;
        let others = n - 1;
        let mut candidates: Vec<usize> = (0..1usize << others).collect();
        candidates.sort_by_key(|s| (s.count_ones(), *s));
        for sub in candidates {
            if sub == (1 << others) - 1 {
                break;
            }
            let block: Vec<usize> =
                std::iter::once(0).chain((0..others).filter(|b| sub >> b & 1 == 1).map(|b| b + 1)).collect();
            let rest: Vec<usize> = (0..n).filter(|i| !block.contains(i)).collect();
            if let Some((f, g)) = self.rank_one_split(&block, &rest, tol) {
                return Some((block, f, g));
            }
        }
        None
    }

    fn rank_one_split(&self, block: &[usize], rest: &[usize], tol: T) -> Option<(Self, Self)> {
        let (kb, kr) = (block.len(), rest.len());
        let entry = |x: usize, y: usize| self.coeffs[spread_mask(x, block) | spread_mask(y, rest)];
        let (mut px, mut py, mut pmax) = (0, 0, T::zero());
        for x in 0..1usize << kb {
            for y in 0..1usize << kr {
                let a = entry(x, y).norm();
                if a > pmax {
                    (px, py, pmax) = (x, y, a);
                }
            }
        }
        if pmax == T::zero() {
            return None;
        }
        let pivot = entry(px, py);
        let thresh = tol * pmax * pmax;
        for x in 0..1usize << kb {
            for y in 0..1usize << kr {
                let minor = entry(x, y) * pivot - entry(x, py) * entry(px, y);
                if minor.norm() > thresh {
                    return None;
                }
            }
        }
        let f = Self { n: kb, coeffs: (0..1usize << kb).map(|x| entry(x, py)).collect() };
        let g = Self { n: kr, coeffs: (0..1usize << kr).map(|y| entry(px, y) / pivot).collect() };
        Some((f, g))
    }

    fn check_same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(LyError::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }
}

/// Moves bit `i` of `mask` to position `perm[i]`.
pub(crate) fn remap_mask(mask: usize, perm: &[usize]) -> usize {
    perm.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0, |acc, (_, &p)| acc | 1 << p)
}

/// Places bit `i` of a local mask at position `vars[i]`.
pub(crate) fn spread_mask(local: usize, vars: &[usize]) -> usize {
    vars.iter().enumerate().filter(|(i, _)| local >> i & 1 == 1).fold(0, |acc, (_, &v)| acc | 1 << v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use crate::Poly;
    use proptest::prelude::*;

    fn p(n: usize, entries: &[(usize, (f64, f64))]) -> Poly {
        Poly::new(n, entries.iter().map(|&(m, (re, im))| (m, c(re, im)))).unwrap()
    }

    fn random_poly(n: usize, vals: &[(f64, f64)]) -> Poly {
        Poly::from_coeffs(n, vals.iter().take(1 << n).map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    #[test]
    fn construction_and_errors() {
        let phi = p(1, &[(0, (1.0, 0.0)), (1, (0.5, 0.0))]);
        assert_eq!(phi.coeffs(), &[c(1.0, 0.0), c(0.5, 0.0)]);
        let zero = p(2, &[]);
        assert!(zero.is_zero());
        assert!(Poly::new(2, [(4usize, c(1.0, 0.0))]).is_err());
        assert!(Poly::new(0, std::iter::empty()).is_err());
        assert!(Poly::new_with_limit(5, std::iter::empty(), 4).is_err());
    }

    #[test]
    fn evaluation() {
        let phi = p(1, &[(0, (1.0, 0.0)), (1, (0.5, 0.0))]);
        assert_eq!(phi.eval(&[c(0.0, 0.0)]).unwrap(), c(1.0, 0.0));
        assert_eq!(phi.eval(&[c(-2.0, 0.0)]).unwrap(), c(0.0, 0.0));
        let prod = p(2, &[(0, (1.0, 0.0)), (1, (1.0, 0.0)), (2, (1.0, 0.0)), (3, (1.0, 0.0))]);
        assert_eq!(prod.eval(&[c(-1.0, 0.0), c(7.0, 0.0)]).unwrap(), c(0.0, 0.0));
        assert!(prod.eval(&[c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn dagger_examples() {
        let phi = p(2, &[(0, (1.0, 0.0)), (1, (2.0, 0.0)), (2, (0.0, 3.0)), (3, (4.0, 0.0))]);
        let expect = p(2, &[(0, (4.0, 0.0)), (1, (0.0, -3.0)), (2, (2.0, 0.0)), (3, (1.0, 0.0))]);
        assert_eq!(phi.dagger(), expect);
        // b + a z  ↦  a* + b* z
        let lin = p(1, &[(0, (0.3, 0.2)), (1, (-0.1, 0.7))]);
        assert_eq!(lin.dagger(), p(1, &[(0, (-0.1, -0.7)), (1, (0.3, -0.2))]));
    }

    #[test]
    fn convolution_examples() {
        let a = p(1, &[(0, (1.0, 0.0)), (1, (2.0, 0.0))]);
        let b = p(1, &[(0, (3.0, 0.0)), (1, (5.0, 0.0))]);
        assert_eq!(a.convolve(&b).unwrap(), p(1, &[(0, (3.0, 0.0)), (1, (10.0, 0.0))]));
        assert_eq!(a.convolve(&Poly::ones(1)).unwrap(), a);
        assert!(a.convolve(&Poly::ones(2)).is_err());
    }

    #[test]
    fn scale_examples() {
        let a = p(1, &[(0, (1.0, 0.0)), (1, (1.0, 0.0))]);
        assert_eq!(a.scale(c(2.0, 0.0)).unwrap(), p(1, &[(0, (1.0, 0.0)), (1, (2.0, 0.0))]));
        assert_eq!(a.scale(c(1.0, 0.0)).unwrap(), a);
        assert!(a.scale(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn tensor_and_psi_examples() {
        let one_plus = p(1, &[(0, (1.0, 0.0)), (1, (1.0, 0.0))]);
        assert_eq!(one_plus.tensor_product(&one_plus), Poly::ones(2));

        let (b, a) = (c(0.8, 0.1), c(0.3, -0.4));
        let phi = Poly::new(1, [(0, b), (1, a)]).unwrap();
        let psi = phi.build_psi();
        assert_eq!(psi.coeffs(), &[b, a, a.conj(), b.conj()]);

        let constant = p(1, &[(0, (1.0, 0.0))]);
        assert_eq!(constant.build_psi(), p(2, &[(0, (1.0, 0.0)), (3, (1.0, 0.0))]));
    }

    #[test]
    fn split_examples() {
        let psi = p(2, &[(0, (1.0, 0.0)), (3, (1.0, 0.0))]);
        let (lo, hi) = psi.split_psi().unwrap();
        assert_eq!(lo, p(1, &[(0, (1.0, 0.0))]));
        assert_eq!(hi, p(1, &[(1, (1.0, 0.0))]));

        let free = p(2, &[(0, (1.0, 0.0)), (1, (2.0, 0.0))]);
        let (lo, hi) = free.split_psi().unwrap();
        assert_eq!(lo, p(1, &[(0, (1.0, 0.0)), (1, (2.0, 0.0))]));
        assert!(hi.is_zero());
    }

    #[test]
    fn self_duality_examples() {
        let phi = p(2, &[(0, (1.0, 0.5)), (1, (0.2, 0.0)), (3, (-0.3, 0.1))]);
        assert!(phi.build_psi().is_self_dual(1e-12));
        assert!(!p(1, &[(0, (1.0, 0.0)), (1, (2.0, 0.0))]).is_self_dual(1e-12));
        assert!(!phi.build_psi().mul_scalar(c(0.0, 1.0)).is_self_dual(1e-12));
    }

    #[test]
    fn factorization_recovers_blocks() {
        let a = p(1, &[(0, (1.0, 0.0)), (1, (0.5, 0.2))]);
        let b = p(2, &[(0, (2.0, 0.0)), (1, (0.1, 0.0)), (2, (0.3, 0.0)), (3, (0.7, -0.2))]);
        let t = b.tensor_product(&a).permute_vars(&[0, 2, 1]).unwrap();
        let factors = t.factorize(1e-12);
        assert_eq!(factors.len(), 2);
        assert_eq!(factors[0].0, vec![0, 2]);
        assert_eq!(factors[1].0, vec![1]);
        let irreducible = p(2, &[(0, (1.0, 0.0)), (3, (1.0, 0.0))]);
        assert_eq!(irreducible.factorize(1e-12).len(), 1);
    }

    fn coeff_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 64)
    }

    proptest! {
        #[test]
        fn dagger_is_involution(n in 1usize..=6, vals in coeff_strategy()) {
            let phi = random_poly(n, &vals);
            prop_assert_eq!(phi.dagger().dagger(), phi);
        }

        #[test]
        fn dagger_preserves_torus_modulus(n in 1usize..=5, vals in coeff_strategy(),
                                          angles in prop::collection::vec(0.0..std::f64::consts::TAU, 5)) {
            let phi = random_poly(n, &vals);
            let alpha: Vec<_> = angles[..n].iter().map(|&t| Complex::from_polar(1.0, t)).collect();
            let lhs = phi.dagger().eval(&alpha).unwrap().norm();
            let rhs = phi.eval(&alpha).unwrap().norm();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
        }

        #[test]
        fn homomorphisms(n in 1usize..=5, a in coeff_strategy(), b in coeff_strategy()) {
            let (p1, p2) = (random_poly(n, &a), random_poly(n, &b));
            let conv = p1.convolve(&p2).unwrap();
            prop_assert_eq!(conv.dagger(), p1.dagger().convolve(&p2.dagger()).unwrap());
            prop_assert_eq!(conv.build_psi(), p1.build_psi().convolve(&p2.build_psi()).unwrap());
        }

        #[test]
        fn scaling_composes(n in 1usize..=5, a in coeff_strategy(),
                            l in (-2.0..2.0f64, -2.0..2.0f64), m in (-2.0..2.0f64, -2.0..2.0f64),
                            z in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 5)) {
            prop_assume!(l.0.hypot(l.1) > 1e-3 && m.0.hypot(m.1) > 1e-3);
            let phi = random_poly(n, &a);
            let (lam, mu) = (c::<f64>(l.0, l.1), c::<f64>(m.0, m.1));
            let twice = phi.scale(lam).unwrap().scale(mu).unwrap();
            let once = phi.scale(lam * mu).unwrap();
            for (x, y) in twice.coeffs().iter().zip(once.coeffs()) {
                prop_assert!((x - y).norm() <= 1e-12 * (1.0 + y.norm()));
            }
            let pt: Vec<_> = z[..n].iter().map(|&(re, im)| c::<f64>(re, im)).collect();
            let scaled_pt: Vec<_> = pt.iter().map(|w| w * lam).collect();
            let lhs = phi.scale(lam).unwrap().eval(&pt).unwrap();
            let rhs = phi.eval(&scaled_pt).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }

        #[test]
        fn split_inverts_build(n in 1usize..=5, a in coeff_strategy()) {
            let phi = random_poly(n, &a);
            let (lo, hi) = phi.build_psi().split_psi().unwrap();
            prop_assert_eq!(lo, phi.clone());
            prop_assert_eq!(hi, phi.dagger());
        }

        #[test]
        fn tensor_evaluation_factorizes(k in 1usize..=3, m in 1usize..=3, a in coeff_strategy(), b in coeff_strategy(),
                                        z in prop::collection::vec((-1.5..1.5f64, -1.5..1.5f64), 6)) {
            let (p1, p2) = (random_poly(k, &a), random_poly(m, &b));
            let pt: Vec<_> = z[..k + m].iter().map(|&(re, im)| c::<f64>(re, im)).collect();
            let lhs = p1.tensor_product(&p2).eval(&pt).unwrap();
            let rhs = p1.eval(&pt[..k]).unwrap() * p2.eval(&pt[k..]).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn works_in_single_precision() {
        let phi = crate::Poly32::new(2, [(0, c(1.0, 0.0)), (3, c(0.5, 0.5))]).unwrap();
        assert_eq!(phi.dagger().dagger(), phi);
        assert!(phi.build_psi().is_self_dual(1e-6));
    }
}
