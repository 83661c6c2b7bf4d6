//! Univariate root finding (Aberth–Ehrlich iteration).

use num_complex::Complex;

use crate::error::{LyError, Result};
use crate::scalar::{czero, eps, lit, Scalar};

/// Evaluates `Σ c_j z^j` and its derivative by Horner's rule.
pub fn horner<T: Scalar>(coeffs: &[Complex<T>], z: Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut p = czero();
    let mut dp = czero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All roots of `Σ c_j z^j` (ascending coefficients), with multiplicity.
///
/// Trailing zero coefficients lower the degree. A zero polynomial is an
/// error; a nonzero constant has no roots.
pub fn roots<T: Scalar>(coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let deg = match coeffs.iter().rposition(|c| c.norm() > T::zero()) {
        Some(d) => d,
        None => return Err(LyError::ZeroPolynomial),
    };
    if deg == 0 {
        return Ok(Vec::new());
    }
    // Roots at the origin are split off exactly.
    let low = coeffs.iter().position(|c| c.norm() > T::zero()).unwrap();
    let p: Vec<Complex<T>> = coeffs[low..=deg].to_vec();
    let m = deg - low;
    let mut out = vec![czero(); low];
    if m == 0 {
        return Ok(out);
    }
    if m == 1 {
        out.push(-p[0] / p[1]);
        return Ok(out);
    }
    let lead = p[m];
    let monic: Vec<Complex<T>> = p.iter().map(|c| c / lead).collect();

    // Starting radius from the geometric mean of the root moduli, capped by
    // the Cauchy bound.
    let cauchy = T::one() + monic[..m].iter().fold(T::zero(), |a, c| a.max(c.norm()));
    let geo = monic[0].norm().powf(T::one() / lit(m as f64));
    let r0 = if geo > T::zero() { geo.min(cauchy) } else { T::one() };
    let tau = T::PI() + T::PI();
    let mut z: Vec<Complex<T>> = (0..m)
        .map(|k| Complex::from_polar(r0, tau * lit(k as f64) / lit(m as f64) + lit(0.4)))
        .collect();

    let tol = eps::<T>() * lit(4.0);
    for _ in 0..800 {
        let mut moved = T::zero();
        for i in 0..m {
            let (pv, dpv) = horner(&monic, z[i]);
            if pv.norm() == T::zero() {
                continue;
            }
            let ratio = pv / dpv;
            let mut sum = czero();
            for j in 0..m {
                if i != j {
                    let diff = z[i] - z[j];
                    if diff.norm() > T::zero() {
                        sum = sum + Complex::new(T::one(), T::zero()) / diff;
                    }
                }
            }
            let denom = Complex::new(T::one(), T::zero()) - ratio * sum;
            let step = if denom.norm() > T::zero() { ratio / denom } else { ratio };
            if step.re.is_finite() && step.im.is_finite() {
                z[i] = z[i] - step;
                moved = moved.max(step.norm() / (T::one() + z[i].norm()));
            }
        }
        if moved <= tol {
            break;
        }
    }
    out.extend(z);
    Ok(out)
}

/// Root of smallest modulus, if the polynomial is not constant.
pub fn min_modulus_root<T: Scalar>(coeffs: &[Complex<T>]) -> Result<Option<Complex<T>>> {
    let r = roots(coeffs)?;
    Ok(r.into_iter().min_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap_or(std::cmp::Ordering::Equal)))
}
