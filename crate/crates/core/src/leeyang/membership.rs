//! Membership in `LY_n`, the interior test and the decomposition `Ψ = c Ψ_Φ`.

use num_complex::Complex;

use super::{MembershipVerdict, Status, Target};
use crate::error::{LyError, Result};
use crate::poly::MultiAffinePoly;
use crate::radius::{certify_at_radius, oracle_min_zero, OracleOptions, SearchOptions, Verdict};
use crate::scalar::{czero, lit, Scalar};

#[derive(Debug, Clone, Copy)]
pub struct MembershipOptions {
    pub search: SearchOptions,
    /// Relative tolerance for splitting `Ψ` into variable-disjoint factors.
    pub factor_tol: f64,
    /// Run the sampling oracle when certification finds no witness for a
    /// factor that is not self-dual up to a constant.
    pub use_oracle: bool,
}

impl Default for MembershipOptions {
    fn default() -> Self {
        Self { search: SearchOptions::default(), factor_tol: 1e-10, use_oracle: true }
    }
}

/// Tests `Ψ ∈ LY_n` at tolerance `tol`.
///
/// `Ψ` is split into factors in disjoint variables; a one-variable factor
/// `E_0 + E_1 z` is Lee-Yang iff `|E_0| = |E_1|`. A larger factor `F` must
/// satisfy `F† = C F`, and then it is Lee-Yang iff its slice
/// `Φ = c^{-1} F(…, 0)` has no zero on the polydisk of radius `1 − tol`.
pub fn is_ly<T: Scalar>(psi: &MultiAffinePoly<T>, tol: T, opts: &MembershipOptions) -> Result<MembershipVerdict<T>> {
    if psi.is_zero() {
        return Err(LyError::ZeroPolynomial);
    }
    let n = psi.n();
    let inner = T::one() - tol;
    let mut verdict = MembershipVerdict::new(Status::In);
    for (vars, factor) in psi.factorize(lit(opts.factor_tol)) {
        let embed = |w: Vec<Complex<T>>| {
            let mut full = vec![czero(); n];
            for (i, &v) in vars.iter().enumerate() {
                full[v] = w[i];
            }
            full
        };
        let outcome = if factor.n() == 1 {
            linear_factor(&factor, tol)
        } else {
            block_factor(&factor, tol, inner, opts, &mut verdict, &vars)
        };
        match outcome {
            FactorOutcome::In => {}
            FactorOutcome::Undecided => verdict.status = Status::BoundaryUndecided,
            FactorOutcome::Out(target, w) => {
                verdict.status = Status::Out;
                verdict.witness = Some((target, embed(w)));
                return Ok(verdict);
            }
        }
    }
    Ok(verdict)
}

enum FactorOutcome<T> {
    In,
    Out(Target, Vec<Complex<T>>),
    Undecided,
}

fn linear_factor<T: Scalar>(f: &MultiAffinePoly<T>, tol: T) -> FactorOutcome<T> {
    let (e0, e1) = (f.coeff(0), f.coeff(1));
    if e1.norm() == T::zero() {
        return FactorOutcome::Out(Target::PsiDagger, vec![czero()]);
    }
    if e0.norm() == T::zero() {
        return FactorOutcome::Out(Target::Psi, vec![czero()]);
    }
    let rho = e0.norm() / e1.norm();
    if rho < T::one() - tol {
        FactorOutcome::Out(Target::Psi, vec![-e0 / e1])
    } else if rho > T::one() + tol {
        FactorOutcome::Out(Target::PsiDagger, vec![-e1.conj() / e0.conj()])
    } else {
        FactorOutcome::In
    }
}

fn block_factor<T: Scalar>(
    f: &MultiAffinePoly<T>,
    tol: T,
    inner: T,
    opts: &MembershipOptions,
    verdict: &mut MembershipVerdict<T>,
    vars: &[usize],
) -> FactorOutcome<T> {
    let label = |what: &str| format!("{what} on variables {vars:?} at radius {}", inner);
    if let Ok((_, phi)) = decompose_ly(f, tol) {
        let cert = certify_at_radius(&phi, inner, &opts.search);
        let status = cert.verdict;
        let witness = cert.witness.clone();
        verdict.certificates.push((label("slice"), cert));
        return match status {
            Verdict::ZeroFree => FactorOutcome::In,
            Verdict::HasZero => {
                // Ψ(w, 0) = c Φ(w).
                let mut w = witness.expect("witness accompanies HAS_ZERO");
                w.push(czero());
                FactorOutcome::Out(Target::Psi, w)
            }
            Verdict::Undecided => FactorOutcome::Undecided,
        };
    }
    for (target, poly) in [(Target::Psi, f.clone()), (Target::PsiDagger, f.dagger())] {
        let cert = certify_at_radius(&poly, inner, &opts.search);
        let found = cert.verdict == Verdict::HasZero;
        let witness = cert.witness.clone();
        verdict.certificates.push((label(if target == Target::Psi { "factor" } else { "dagger of factor" }), cert));
        if found {
            return FactorOutcome::Out(target, witness.expect("witness accompanies HAS_ZERO"));
        }
    }
    if opts.use_oracle {
        for (target, poly) in [(Target::Psi, f.clone()), (Target::PsiDagger, f.dagger())] {
            if poly.is_constant() {
                continue;
            }
            if let Ok((r, Some(w))) = oracle_min_zero(&poly, &OracleOptions::default()) {
                if r < T::one() {
                    return FactorOutcome::Out(target, w);
                }
            }
        }
    }
    FactorOutcome::Undecided
}

/// Tests membership in the interior `𝒥°`: for self-dual `Ψ = Ψ_Φ` this
/// holds iff `r(Φ) > 1`.
pub fn is_interior<T: Scalar>(psi: &MultiAffinePoly<T>, tol: T, opts: &MembershipOptions) -> Result<MembershipVerdict<T>> {
    if psi.is_zero() {
        return Err(LyError::ZeroPolynomial);
    }
    let deviation = psi.self_dual_deviation();
    if deviation > tol * psi.max_abs() {
        return Err(LyError::NotSelfDual { deviation: deviation.to_f64().unwrap_or(f64::NAN) });
    }
    let (phi, _) = psi.split_psi()?;
    let outer = certify_at_radius(&phi, T::one() + tol, &opts.search);
    let zero_free_outside = outer.verdict == Verdict::ZeroFree;
    let mut verdict = MembershipVerdict::new(Status::BoundaryUndecided);
    verdict.certificates.push((format!("slice at radius {}", T::one() + tol), outer));
    if zero_free_outside {
        verdict.status = Status::In;
        return Ok(verdict);
    }
    let inner = certify_at_radius(&phi, T::one() - tol, &opts.search);
    if inner.verdict == Verdict::HasZero {
        verdict.status = Status::Out;
        let mut w = inner.witness.clone().expect("witness accompanies HAS_ZERO");
        w.push(czero());
        verdict.witness = Some((Target::Psi, w));
    }
    verdict.certificates.push((format!("slice at radius {}", T::one() - tol), inner));
    Ok(verdict)
}

/// Recovers `(c, Φ)` with `Ψ = c Ψ_Φ`, `|c| = 1` and `arg c ∈ [0, π)`.
///
/// Only the algebraic identity is checked; whether `r(Φ) ≥ 1` is left to
/// [`is_ly`].
pub fn decompose_ly<T: Scalar>(psi: &MultiAffinePoly<T>, tol: T) -> Result<(Complex<T>, MultiAffinePoly<T>)> {
    if psi.is_zero() {
        return Err(LyError::ZeroPolynomial);
    }
    if psi.n() == 0 {
        return Err(LyError::InvalidInput("need at least one variable".into()));
    }
    let dag = psi.dagger();
    let scale = psi.max_abs();
    let pivot = (0..psi.coeffs().len())
        .max_by(|&a, &b| psi.coeff(a).norm().partial_cmp(&psi.coeff(b).norm()).unwrap())
        .unwrap();
    let big_c = dag.coeff(pivot) / psi.coeff(pivot);
    if big_c.norm() == T::zero() {
        return Err(LyError::NotLeeYang("every dagger pair is degenerate".into()));
    }
    let deviation = psi
        .coeffs()
        .iter()
        .zip(dag.coeffs())
        .fold(T::zero(), |m, (e, d)| m.max((d - big_c * e).norm()));
    if deviation > tol * scale {
        return Err(LyError::NotLeeYang(format!(
            "no constant C with Ψ† = CΨ (deviation {})",
            deviation / scale
        )));
    }
    if (big_c.norm() - T::one()).abs() > tol {
        return Err(LyError::NotLeeYang(format!("|C| = {} differs from 1", big_c.norm())));
    }
    let mut c = (Complex::new(T::one(), T::zero()) / big_c).sqrt();
    c = c / c.norm();
    if c.im < T::zero() || (c.im == T::zero() && c.re < T::zero()) {
        c = -c;
    }
    let (low, _) = psi.split_psi()?;
    Ok((c, low.mul_scalar(Complex::new(T::one(), T::zero()) / c)))
}
