//! Inner radius brackets and a sampling zero oracle.
//!
//! `r(Φ) = sup{r ≥ 0 : Φ ≠ 0 whenever |z_1|, …, |z_n| < r}`.
//! Bisection on `r` tests `Φ(r z)` against the closed unit polydisk.

use num_complex::Complex;
use serde_json::json;

use crate::error::{invalid, LyError, Result};
use crate::poly::MultiAffinePoly;
use crate::scalar::{creal, czero, eps, lit, to_c64, Scalar};
pub use crate::stability::{Certificate, Verdict};
use crate::stability::{certify, certify_grid, GridPoly};
pub use crate::torus::SearchOptions;

/// Certified bracket `r_lo ≤ r(Φ) ≤ r_hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusBounds<T> {
    pub r_lo: T,
    pub r_hi: T,
    /// Set iff the polynomial is a nonzero constant.
    pub infinite: bool,
    /// Bisection stopped early on repeated undecided probes.
    pub stalled: bool,
    /// A zero with every coordinate of modulus at most `r_hi`.
    pub witness: Option<Vec<Complex<T>>>,
    pub probes: usize,
}

impl<T: Scalar> RadiusBounds<T> {
    pub fn width(&self) -> T {
        if self.infinite {
            T::zero()
        } else {
            self.r_hi - self.r_lo
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let num = |x: T| {
            let v = x.to_f64().unwrap_or(f64::NAN);
            if v.is_finite() {
                json!(v)
            } else {
                json!("inf")
            }
        };
        json!({
            "r_lo": num(self.r_lo),
            "r_hi": num(self.r_hi),
            "infinite": self.infinite,
            "stalled": self.stalled,
            "witness": self.witness.as_ref().map(|w| w.iter().map(|z| {
                let z = to_c64(*z);
                [z.re, z.im]
            }).collect::<Vec<_>>()),
        })
    }
}

/// Decides whether `Φ` vanishes somewhere on the closed unit polydisk.
pub fn zero_free_on_unit_polydisk<T: Scalar>(phi: &MultiAffinePoly<T>, opts: &SearchOptions) -> Result<Certificate<T>> {
    if opts.grid < 8 {
        return invalid("grid must be at least 8");
    }
    if phi.is_zero() {
        return Err(LyError::ZeroPolynomial);
    }
    Ok(certify(phi, opts))
}

/// Same test on the closed polydisk of radius `r`; the witness is returned
/// in the original coordinates.
pub fn certify_at_radius<T: Scalar>(phi: &MultiAffinePoly<T>, r: T, opts: &SearchOptions) -> Certificate<T> {
    let scaled = phi.scale(creal(r)).expect("positive radius");
    let mut cert = certify(&scaled, opts);
    if let Some(w) = cert.witness.as_mut() {
        w.iter_mut().for_each(|z| *z = *z * r);
    }
    cert
}

/// Largest `r` with `Σ_{X≠∅} |E_X| r^{|X|} ≤ |E_∅|`; no zero lies in the
/// open polydisk of that radius.
pub fn analytic_lower_bound<T: Scalar>(phi: &MultiAffinePoly<T>) -> T {
    let e0 = phi.constant_term().norm();
    let mut by_degree = vec![T::zero(); phi.n() + 1];
    for (mask, c) in phi.coeffs().iter().enumerate().skip(1) {
        by_degree[mask.count_ones() as usize] = by_degree[mask.count_ones() as usize] + c.norm();
    }
    lower_bound_from_degrees(e0, &by_degree)
}

pub(crate) fn lower_bound_from_degrees<T: Scalar>(e0: T, by_degree: &[T]) -> T {
    let g = |r: T| by_degree.iter().enumerate().skip(1).fold(T::zero(), |s, (k, a)| s + *a * r.powi(k as i32));
    if e0 == T::zero() {
        return T::zero();
    }
    let mut hi = T::one();
    while g(hi) < e0 {
        hi = hi + hi;
        if !hi.is_finite() {
            return T::infinity();
        }
    }
    let mut lo = T::zero();
    for _ in 0..200 {
        let mid = (lo + hi) * lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) < e0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // The norms and the power sum are each off by a few ulps.
    lo * (T::one() - lit::<T>(64.0) * eps::<T>())
}

/// Bracket of the inner radius with `r_hi − r_lo ≤ tol` unless stalled.
pub fn inner_radius<T: Scalar>(phi: &MultiAffinePoly<T>, tol: T, opts: &SearchOptions) -> Result<RadiusBounds<T>> {
    if phi.is_zero() {
        return Err(LyError::ZeroPolynomial);
    }
    bracket(
        tol,
        phi.is_constant(),
        phi.constant_term().norm() == T::zero(),
        phi.n(),
        analytic_lower_bound(phi),
        |r| certify_at_radius(phi, r, opts),
    )
}

/// Same bracketing for polynomials of higher degree per variable.
pub fn inner_radius_grid<T: Scalar>(p: &GridPoly<T>, tol: T, opts: &SearchOptions) -> Result<RadiusBounds<T>> {
    let norm = p.l1_norm();
    if norm == T::zero() {
        return Err(LyError::ZeroPolynomial);
    }
    let c0 = p.coeffs()[0].norm();
    let constant = c0 == norm;
    let mut by_degree = vec![T::zero(); p.degs().iter().sum::<usize>() + 1];
    let radix: Vec<usize> = p.degs().iter().map(|d| d + 1).collect();
    for (idx, c) in p.coeffs().iter().enumerate().skip(1) {
        let mut rest = idx;
        let mut deg = 0;
        for r in &radix {
            deg += rest % r;
            rest /= r;
        }
        by_degree[deg] = by_degree[deg] + c.norm();
    }
    let start = lower_bound_from_degrees(c0, &by_degree);
    bracket(tol, constant, c0 == T::zero(), p.degs().len(), start, |r| {
        let mut cert = certify_grid(&p.scale(r), opts);
        if let Some(w) = cert.witness.as_mut() {
            w.iter_mut().for_each(|z| *z = *z * r);
        }
        cert
    })
}

fn bracket<T: Scalar, F>(tol: T, constant: bool, zero_at_origin: bool, n: usize, start: T, mut probe: F) -> Result<RadiusBounds<T>>
where
    F: FnMut(T) -> Certificate<T>,
{
    if !(tol > T::zero()) {
        return invalid("tolerance must be positive");
    }
    let mut out = RadiusBounds {
        r_lo: T::zero(),
        r_hi: T::infinity(),
        infinite: false,
        stalled: false,
        witness: None,
        probes: 0,
    };
    if constant {
        out.r_lo = T::infinity();
        out.infinite = true;
        return Ok(out);
    }
    if zero_at_origin {
        out.r_hi = T::zero();
        out.witness = Some(vec![czero(); n]);
        return Ok(out);
    }
    out.r_lo = start;

    // Grow until a zero is found.
    let mut r = if start > T::zero() { start + start } else { T::one() };
    let mut misses = 0;
    loop {
        out.probes += 1;
        let cert = probe(r);
        match cert.verdict {
            Verdict::ZeroFree => out.r_lo = out.r_lo.max(r),
            Verdict::HasZero => {
                out.r_hi = r;
                out.witness = cert.witness;
                break;
            }
            Verdict::Undecided => misses += 1,
        }
        if misses > 4 || r > lit(1e12) {
            out.stalled = true;
            return Ok(out);
        }
        r = r + r;
    }

    while out.r_hi - out.r_lo > tol {
        let (lo, hi) = (out.r_lo, out.r_hi);
        let mid = (lo + hi) * lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        out.probes += 1;
        let cert = probe(mid);
        match cert.verdict {
            Verdict::ZeroFree => out.r_lo = mid,
            Verdict::HasZero => {
                out.r_hi = mid;
                out.witness = cert.witness;
            }
            Verdict::Undecided => {
                let q = (hi - lo) * lit(0.25);
                let mut moved = false;
                out.probes += 2;
                if probe(lo + q).verdict == Verdict::ZeroFree {
                    out.r_lo = lo + q;
                    moved = true;
                }
                let upper = probe(hi - q);
                if upper.verdict == Verdict::HasZero {
                    out.r_hi = hi - q;
                    out.witness = upper.witness;
                    moved = true;
                }
                if !moved {
                    out.stalled = true;
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Options for [`oracle_min_zero`].
#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    /// Radial samples.
    pub radial: usize,
    /// Angular samples per variable.
    pub angular: usize,
    /// Cap on the number of sampled slices.
    pub max_samples: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self { radial: 24, angular: 24, max_samples: 1_000_000 }
    }
}

/// Upper bound on `r(Φ)` from an explicit zero.
///
/// The other variables are placed on tori `|z_j| = t`; `Φ` is affine in the
/// remaining one, which is solved exactly. The largest modulus of the
/// resulting zero bounds `r(Φ)` from above. A finer sweep along the
/// diagonal `z_2 = … = z_n` and a local refinement follow. Returns
/// `(∞, None)` when no sample produced a zero.
pub fn oracle_min_zero<T: Scalar>(phi: &MultiAffinePoly<T>, opts: &OracleOptions) -> Result<(T, Option<Vec<Complex<T>>>)> {
    if phi.is_zero() {
        return Err(LyError::ZeroPolynomial);
    }
    if phi.is_constant() {
        return invalid("oracle needs a non-constant polynomial");
    }
    let n = phi.n();
    let solve = (0..n).find(|&v| phi.depends_on(v)).expect("non-constant");
    // Move the solved variable to slot 0.
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(0, solve);
    let p = phi.permute_vars(&perm)?;
    let (a, b) = split_first(&p);

    let eval_at = |t: T, angles: &[T]| -> Option<(T, Vec<Complex<T>>)> {
        let rest: Vec<Complex<T>> = angles.iter().map(|&th| Complex::from_polar(t, th)).collect();
        let bv = b.eval_unchecked(&rest);
        if bv.norm() == T::zero() {
            return None;
        }
        let z1 = -a.eval_unchecked(&rest) / bv;
        let m = z1.norm().max(if rest.is_empty() { T::zero() } else { t });
        let mut point = vec![z1];
        point.extend(rest);
        Some((m, point))
    };

    // (max modulus, zero, torus radius, angles)
    type Best<T> = Option<(T, Vec<Complex<T>>, T, Vec<T>)>;
    let mut best: Best<T> = None;
    let consider = |t: T, angles: &[T], best: &mut Best<T>| {
        if let Some((m, pt)) = eval_at(t, angles) {
            if m.is_finite() && best.as_ref().is_none_or(|b| m < b.0) {
                *best = Some((m, pt, t, angles.to_vec()));
            }
        }
    };

    if n == 1 {
        consider(T::zero(), &[], &mut best);
    } else {
        let k = n - 1;
        let tau = T::PI() + T::PI();
        let start = analytic_lower_bound(phi).max(lit(1e-6));
        let radii: Vec<T> = (0..opts.radial).map(|i| start * lit::<T>(1e3f64.powf(i as f64 / (opts.radial.max(2) - 1) as f64))).collect();
        let per_slice = (opts.max_samples / opts.radial.max(1)).max(1);
        let ang = opts.angular.min((per_slice as f64).powf(1.0 / k as f64).floor() as usize).max(2);
        let mut angles = vec![T::zero(); k];
        for &t in &radii {
            for idx in 0..ang.pow(k as u32) {
                let mut rest = idx;
                for a in angles.iter_mut() {
                    *a = tau * lit::<T>((rest % ang) as f64) / lit(ang as f64);
                    rest /= ang;
                }
                consider(t, &angles, &mut best);
            }
        }
        // Diagonal sweep with geometric radii.
        let fine = 720;
        for i in 0..400 {
            let t = start * lit::<T>(1e3f64.powf(i as f64 / 399.0));
            for j in 0..fine {
                let th = tau * lit::<T>(j as f64) / lit(fine as f64);
                consider(t, &vec![th; k], &mut best);
            }
        }
        // Pattern search around the best sample.
        if let Some((_, _, t0, a0)) = best.clone() {
            let mut t = t0;
            let mut a = a0;
            let mut step_t = t * lit(0.05);
            let mut step_a = tau / lit(ang as f64 * 2.0);
            for _ in 0..200 {
                let current = best.as_ref().unwrap().0;
                let mut improved = false;
                for cand_t in [t - step_t, t + step_t] {
                    if cand_t > T::zero() {
                        consider(cand_t, &a, &mut best);
                    }
                }
                for i in 0..k {
                    for s in [-step_a, step_a] {
                        let mut b2 = a.clone();
                        b2[i] = b2[i] + s;
                        consider(t, &b2, &mut best);
                    }
                }
                let b = best.as_ref().unwrap();
                if b.0 < current {
                    t = b.2;
                    a = b.3.clone();
                    improved = true;
                }
                if !improved {
                    step_t = step_t * lit(0.5);
                    step_a = step_a * lit(0.5);
                    if step_a < lit(1e-12) {
                        break;
                    }
                }
            }
        }
    }

    Ok(match best {
        Some((m, pt, _, _)) => {
            let mut w = vec![czero(); n];
            for (i, &p) in perm.iter().enumerate() {
                w[i] = pt[p];
            }
            (m, Some(w))
        }
        None => (T::infinity(), None),
    })
}

/// `Φ = A(z_2…z_n) + z_1 B(z_2…z_n)`.
fn split_first<T: Scalar>(p: &MultiAffinePoly<T>) -> (MultiAffinePoly<T>, MultiAffinePoly<T>) {
    let n = p.n();
    let mut a = Vec::with_capacity(1 << (n - 1));
    let mut b = Vec::with_capacity(1 << (n - 1));
    for rest in 0..1usize << (n - 1) {
        a.push(p.coeff(rest << 1));
        b.push(p.coeff((rest << 1) | 1));
    }
    (
        MultiAffinePoly::from_coeffs(n - 1, a).expect("sizes match"),
        MultiAffinePoly::from_coeffs(n - 1, b).expect("sizes match"),
    )
}
