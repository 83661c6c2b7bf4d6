//! Higher-degree polynomials and spins.
//!
//! `ℬ_m` holds polynomials of degree `m_i` in `z_i`, written with
//! normalised coefficients `Σ_k E_k Π_i binom(m_i, k_i) z_i^{k_i}`. The
//! map `σ` sends them to multiaffine polynomials in `|m| = Σ m_i`
//! variables that are symmetric within each block.

use num_complex::Complex;

use crate::error::{invalid, LyError, Result};
use crate::leeyang::{MembershipVerdict, Status, Target};
use crate::poly::MultiAffinePoly;
use crate::radius::Verdict;
use crate::roots::roots;
use crate::scalar::{binomial, czero, lit, Scalar};
use crate::stability::{certify_grid, GridPoly};
use crate::torus::SearchOptions;

/// Element of `ℬ_m`, normalised coefficients in mixed radix with
/// variable 0 varying fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockPoly<T> {
    m: Vec<usize>,
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> BlockPoly<T> {
    pub fn new(m: Vec<usize>, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if m.is_empty() || m.contains(&0) {
            return invalid("degrees must be a nonempty list of positive integers");
        }
        let total: usize = m.iter().sum();
        if total > crate::poly::DEFAULT_MAX_VARS {
            return invalid(format!("total degree {total} exceeds {}", crate::poly::DEFAULT_MAX_VARS));
        }
        let len = m.iter().map(|d| d + 1).product::<usize>();
        if coeffs.len() != len {
            return Err(LyError::DimensionMismatch { expected: len, found: coeffs.len() });
        }
        Ok(Self { m, coeffs })
    }

    /// Builds the table from a function of the index vector `k`.
    pub fn from_fn(m: Vec<usize>, f: impl Fn(&[usize]) -> Complex<T>) -> Result<Self> {
        let len = m.iter().map(|d| d + 1).product::<usize>();
        let coeffs = (0..len).map(|idx| f(&digits(&m, idx))).collect();
        Self::new(m, coeffs)
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: &[usize]) -> Complex<T> {
        self.coeffs[index(&self.m, k)]
    }

    pub fn total_degree(&self) -> usize {
        self.m.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm() == T::zero())
    }

    /// Plain coefficients `E_k Π binom(m_i, k_i)`.
    pub fn to_grid(&self) -> GridPoly<T> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, e)| {
                let k = digits(&self.m, idx);
                let w = self.m.iter().zip(&k).fold(T::one(), |acc, (&d, &ki)| acc * binomial::<T>(d, ki));
                e * w
            })
            .collect();
        GridPoly::new(self.m.clone(), coeffs)
    }

    pub fn eval(&self, z: &[Complex<T>]) -> Result<Complex<T>> {
        if z.len() != self.m.len() {
            return Err(LyError::DimensionMismatch { expected: self.m.len(), found: z.len() });
        }
        Ok(self.to_grid().eval(z))
    }
}

fn digits(m: &[usize], mut idx: usize) -> Vec<usize> {
    m.iter()
        .map(|d| {
            let r = idx % (d + 1);
            idx /= d + 1;
            r
        })
        .collect()
}

fn index(m: &[usize], k: &[usize]) -> usize {
    m.iter().zip(k).rev().fold(0, |acc, (d, ki)| acc * (d + 1) + ki)
}

/// Per-block counts of a subset of the `|m|` lifted variables.
fn block_counts(m: &[usize], mask: usize) -> Vec<usize> {
    let mut off = 0;
    m.iter()
        .map(|&d| {
            let k = (mask >> off & ((1 << d) - 1)).count_ones() as usize;
            off += d;
            k
        })
        .collect()
}

/// `σΦ`: the subset choosing `k_i` variables of block `i` gets `E_k`.
pub fn lift_sigma<T: Scalar>(phi: &BlockPoly<T>) -> MultiAffinePoly<T> {
    let n = phi.total_degree();
    let coeffs = (0..1usize << n).map(|mask| phi.coeff(&block_counts(&phi.m, mask))).collect();
    MultiAffinePoly::from_coeffs(n, coeffs).expect("block sizes checked on construction")
}

/// `σ^{-1}Ψ`; fails if `Ψ` is not symmetric within blocks up to
/// `tol · max|E|`.
pub fn project_sigma_inv<T: Scalar>(psi: &MultiAffinePoly<T>, m: &[usize], tol: T) -> Result<BlockPoly<T>> {
    if m.iter().sum::<usize>() != psi.n() {
        return Err(LyError::DimensionMismatch { expected: psi.n(), found: m.iter().sum() });
    }
    let len = m.iter().map(|d| d + 1).product::<usize>();
    let mut coeffs = vec![None; len];
    let bound = tol * psi.max_abs();
    for (mask, &e) in psi.coeffs().iter().enumerate() {
        let idx = index(m, &block_counts(m, mask));
        match coeffs[idx] {
            None => coeffs[idx] = Some(e),
            Some(first) if (e - first).norm() > bound => {
                return invalid(format!("not symmetric within blocks at subset {mask}"));
            }
            Some(_) => {}
        }
    }
    BlockPoly::new(m.to_vec(), coeffs.into_iter().map(|c| c.expect("every index is hit")).collect())
}

/// `E'_k = E*_{m−k}`.
pub fn dagger_bm<T: Scalar>(phi: &BlockPoly<T>) -> BlockPoly<T> {
    let full = phi.coeffs.len() - 1;
    let coeffs = (0..=full).map(|idx| phi.coeffs[full - idx].conj()).collect();
    BlockPoly { m: phi.m.clone(), coeffs }
}

/// `Ψ ∈ LY_m`: neither `Ψ` nor `Ψ†` vanishes on the open unit polydisk.
///
/// When `Ψ† = CΨ` the test runs on the slice obtained by lowering the last
/// degree by one, which is `σ^{-1}` of `σΨ(…, 0)`; its zero-freeness on the
/// polydisk of radius `1 − tol` decides membership. Otherwise `Ψ` and `Ψ†`
/// are certified directly at that radius.
pub fn is_ly_bm<T: Scalar>(psi: &BlockPoly<T>, tol: T, opts: &SearchOptions) -> Result<MembershipVerdict<T>> {
    if psi.is_zero() {
        return Err(LyError::ZeroPolynomial);
    }
    let inner = T::one() - tol;
    let mut verdict = MembershipVerdict::new(Status::In);
    if let Some(slice) = self_dual_slice(psi, tol) {
        let cert = certify_grid(&slice.to_grid().scale(inner), opts);
        let outcome = cert.verdict;
        let witness = cert.witness.clone();
        verdict.certificates.push((format!("slice at radius {inner}"), cert));
        match outcome {
            Verdict::ZeroFree => {}
            Verdict::Undecided => verdict.status = Status::BoundaryUndecided,
            Verdict::HasZero => {
                verdict.status = Status::Out;
                let w: Vec<Complex<T>> = witness.expect("witness accompanies HAS_ZERO").into_iter().map(|z| z * inner).collect();
                verdict.witness = lift_slice_zero(psi, w).map(|w| (Target::Psi, w));
            }
        }
        return Ok(verdict);
    }
    for (target, poly) in [(Target::Psi, psi.clone()), (Target::PsiDagger, dagger_bm(psi))] {
        let cert = certify_grid(&poly.to_grid().scale(inner), opts);
        let label = match target {
            Target::Psi => format!("polynomial at radius {inner}"),
            Target::PsiDagger => format!("dagger at radius {inner}"),
        };
        match cert.verdict {
            Verdict::ZeroFree => {}
            Verdict::HasZero => {
                let w = cert.witness.clone().expect("witness accompanies HAS_ZERO");
                verdict.status = Status::Out;
                verdict.witness = Some((target, w.into_iter().map(|z| z * inner).collect()));
                verdict.certificates.push((label, cert));
                return Ok(verdict);
            }
            Verdict::Undecided => verdict.status = Status::BoundaryUndecided,
        }
        verdict.certificates.push((label, cert));
    }
    Ok(verdict)
}

/// `Ψ` with `E_k` restricted to `k_n < m_n`, if `Ψ† = CΨ` with `|C| = 1`.
fn self_dual_slice<T: Scalar>(psi: &BlockPoly<T>, tol: T) -> Option<BlockPoly<T>> {
    let dual = dagger_bm(psi);
    let pivot = (0..psi.coeffs.len()).max_by(|&a, &b| psi.coeffs[a].norm().partial_cmp(&psi.coeffs[b].norm()).unwrap())?;
    let ratio = dual.coeffs[pivot] / psi.coeffs[pivot];
    let top = psi.coeffs[pivot].norm();
    let close = dual.coeffs.iter().zip(&psi.coeffs).all(|(d, p)| (d - ratio * p).norm() <= tol * top);
    if !close || (ratio.norm() - T::one()).abs() > tol {
        return None;
    }
    let mut m = psi.m.clone();
    let last = m.len() - 1;
    m[last] -= 1;
    let coeffs: Vec<Complex<T>> =
        (0..psi.coeffs.len()).filter(|&idx| digits(&psi.m, idx)[last] < psi.m[last]).map(|idx| psi.coeffs[idx]).collect();
    if m[last] == 0 {
        m.pop();
    }
    if m.is_empty() {
        m.push(1);
        return BlockPoly::new(m, vec![coeffs[0], czero()]).ok();
    }
    BlockPoly::new(m, coeffs).ok()
}

/// A zero of the slice puts the last block at `(w_n, …, w_n, 0)`; Grace's
/// theorem then gives a zero of `Ψ` with last coordinate in the disk of
/// radius `|w_n|`.
fn lift_slice_zero<T: Scalar>(psi: &BlockPoly<T>, mut w: Vec<Complex<T>>) -> Option<Vec<Complex<T>>> {
    let n = psi.m.len();
    let reach = if w.len() == n { w.pop()?.norm() } else { T::zero() };
    w.truncate(n - 1);
    let grid = psi.to_grid();
    let zeta = crate::roots::min_modulus_root(&grid.level_values(n - 1, &w)).ok()??;
    if zeta.norm() > reach.max(T::zero()) + lit(1e-9) || zeta.norm() >= T::one() {
        return None;
    }
    w.push(zeta);
    (grid.eval(&w).norm() <= lit::<T>(1e-9) * grid.l1_norm()).then_some(w)
}

/// `Σ_ℓ C_ℓ z^ℓ` with a declared degree; trailing zeros are roots at ∞.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariatePoly<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> UnivariatePoly<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return invalid("a univariate polynomial needs at least one coefficient");
        }
        Ok(Self { coeffs })
    }

    /// `c Π (z − α_i)`.
    pub fn from_roots(c: Complex<T>, alphas: &[Complex<T>]) -> Self {
        let mut coeffs = vec![c];
        for &a in alphas {
            let mut next = vec![czero(); coeffs.len() + 1];
            for (i, &ci) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1] + ci;
                next[i] = next[i] - ci * a;
            }
            coeffs = next;
        }
        Self { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        crate::roots::horner(&self.coeffs, z).0
    }

    /// `Q†(z) = Σ_ℓ C*_{n−ℓ} z^ℓ`.
    pub fn dagger(&self) -> Self {
        Self { coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect() }
    }
}

/// Full declared degree and every root modulus in `[1 − tol, 1 + tol]`.
pub fn roots_on_circle<T: Scalar>(p: &UnivariatePoly<T>, tol: T) -> Result<bool> {
    let top = p.coeffs.iter().fold(T::zero(), |m, c| m.max(c.norm()));
    if top == T::zero() {
        return Err(LyError::ZeroPolynomial);
    }
    if p.coeffs[p.degree()].norm() <= lit::<T>(1e-14) * top {
        return Ok(false);
    }
    let rs = roots(&p.coeffs)?;
    Ok(rs.len() == p.degree() && rs.iter().all(|r| (r.norm() - T::one()).abs() <= tol))
}

/// `P(z) = c (z Q†(z) + Q(z))`, of degree `deg Q + 1`.
pub fn build_p_from_q<T: Scalar>(c: Complex<T>, q: &UnivariatePoly<T>) -> Result<UnivariatePoly<T>> {
    if c.norm() == T::zero() {
        return invalid("c must be nonzero");
    }
    let n = q.degree();
    let at = |l: usize| q.coeffs.get(l).copied().unwrap_or_else(czero);
    let coeffs = (0..=n + 1)
        .map(|l| {
            let dual = if l >= 1 { at(n + 1 - l).conj() } else { czero() };
            c * (at(l) + dual)
        })
        .collect();
    UnivariatePoly::new(coeffs)
}

/// The symmetric `Ψ ∈ 𝒜_n` with `Ψ(z, …, z) = P(z)`:
/// `E_X = C_{|X|} / binom(n, |X|)`.
pub fn univariate_lift<T: Scalar>(p: &UnivariatePoly<T>) -> Result<MultiAffinePoly<T>> {
    let n = p.degree();
    let coeffs = (0..1usize << n)
        .map(|x| {
            let k = x.count_ones() as usize;
            p.coeffs[k] / binomial::<T>(n, k)
        })
        .collect();
    MultiAffinePoly::from_coeffs(n, coeffs)
}

/// Ferromagnetic spin couplings
/// `W_k = −Σ_i Σ_j W_ij k_i (m_j − k_j) + b` with `W_ij = W_ji ≥ 0`.
/// Diagonal entries for `m_i = 1` do not enter and are reported as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinPairForm<T> {
    pub w: Vec<Vec<T>>,
    pub b: T,
    pub residual: T,
}

impl<T: Scalar> SpinPairForm<T> {
    pub fn energy(&self, m: &[usize], k: &[usize]) -> T {
        let mut e = self.b;
        for i in 0..m.len() {
            for j in 0..m.len() {
                e = e - self.w[i][j] * lit::<T>((k[i] * (m[j] - k[j])) as f64);
            }
        }
        e
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinRejectReason {
    /// The energies are not of the quadratic pair form.
    NotPairForm,
    /// A coupling `W_ij` is negative.
    NegativeCoupling,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinRejection<T> {
    pub reason: SpinRejectReason,
    /// Index vector `k` of the worst energy, or `[i, j]` for a coupling.
    pub index: Vec<usize>,
    pub value: T,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpinClassification<T> {
    Accepted(SpinPairForm<T>),
    Rejected(SpinRejection<T>),
}

/// Fits the pair form to real energies `w` laid out like [`BlockPoly`].
pub fn classify_high_temperature_spins<T: Scalar>(w: &[T], m: &[usize], tol: T) -> Result<SpinClassification<T>> {
    let n = m.len();
    if n == 0 || m.contains(&0) {
        return invalid("degrees must be a nonempty list of positive integers");
    }
    let len = m.iter().map(|d| d + 1).product::<usize>();
    if w.len() != len {
        return Err(LyError::DimensionMismatch { expected: len, found: w.len() });
    }
    if w.iter().any(|v| !v.is_finite()) {
        return invalid("energies must be finite");
    }
    let at = |k: &[usize]| w[index(m, k)];
    let unit = |i: usize, step: usize| {
        let mut k = vec![0; n];
        k[i] = step;
        k
    };
    let b = w[0];
    let mut pair = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        if m[i] >= 2 {
            // k_i² carries W_ii.
            pair[i][i] = (at(&unit(i, 2)) - lit::<T>(2.0) * at(&unit(i, 1)) + b) * lit(0.5);
        }
        for j in i + 1..n {
            let mut k = unit(i, 1);
            k[j] = 1;
            // k_i k_j carries 2 W_ij.
            let v = (at(&k) - at(&unit(i, 1)) - at(&unit(j, 1)) + b) * lit(0.5);
            pair[i][j] = v;
            pair[j][i] = v;
        }
    }
    let mut form = SpinPairForm { w: pair, b, residual: T::zero() };
    let mut worst = (0, T::zero());
    for idx in 0..len {
        let dev = (form.energy(m, &digits(m, idx)) - w[idx]).abs();
        if dev > worst.1 {
            worst = (idx, dev);
        }
    }
    if worst.1 > tol {
        return Ok(SpinClassification::Rejected(SpinRejection {
            reason: SpinRejectReason::NotPairForm,
            index: digits(m, worst.0),
            value: worst.1,
        }));
    }
    form.residual = worst.1;
    for i in 0..n {
        for j in i..n {
            if form.w[i][j] < -tol {
                return Ok(SpinClassification::Rejected(SpinRejection {
                    reason: SpinRejectReason::NegativeCoupling,
                    index: vec![i, j],
                    value: form.w[i][j],
                }));
            }
        }
    }
    Ok(SpinClassification::Accepted(form))
}

/// `E_k = exp(β W_k)` for real energies laid out like [`BlockPoly`].
pub fn temperature_block<T: Scalar>(w: &[T], m: &[usize], beta: T) -> Result<BlockPoly<T>> {
    if !(beta > T::zero()) {
        return invalid("β must be positive");
    }
    BlockPoly::new(m.to_vec(), w.iter().map(|&v| Complex::new((v * beta).exp(), T::zero())).collect())
}
