//! Certified zero exclusion on the closed unit polydisk.
//!
//! A polynomial `P(z_1…z_n)` of degree `m_i` in `z_i` has no zero in the
//! closed polydisk iff, for every `k`, the slice
//! `P_k = P(z_1…z_k, 0…0)` viewed as a polynomial in `ζ = z_k` has no zero
//! in the closed unit disk for every `(z_1…z_{k−1})` on the torus.
//! The univariate condition is checked with the Schur–Cohn recursion: for
//! `p(ζ) = Σ c_j ζ^j` of formal degree `M`,
//! `|c_0|² − |c_M|² > 0` and the reduced polynomial
//! `c̄_0 p − c_M p*` (degree `M − 1`) passes the same test.
//! Each discriminant is a real trigonometric polynomial in the torus angles
//! and its positivity is proved by [`crate::torus`].

use num_complex::Complex;
use serde_json::json;

use crate::poly::MultiAffinePoly;
use crate::roots::min_modulus_root;
use crate::scalar::{binomial, czero, eps, lit, to_c64, Scalar};
use crate::torus::{Outcome, Prover, SearchOptions};
use crate::trig::TrigPoly;

/// Polynomial with degree `degs[i]` in variable `i`, dense in mixed radix
/// (variable 0 varies fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoly<T: Scalar> {
    degs: Vec<usize>,
    coeffs: Vec<Complex<T>>,
}

impl<T: Scalar> GridPoly<T> {
    pub fn new(degs: Vec<usize>, coeffs: Vec<Complex<T>>) -> Self {
        assert_eq!(coeffs.len(), degs.iter().map(|d| d + 1).product::<usize>());
        Self { degs, coeffs }
    }

    pub fn from_multiaffine(p: &MultiAffinePoly<T>) -> Self {
        Self { degs: vec![1; p.n()], coeffs: p.coeffs().to_vec() }
    }

    pub fn degs(&self) -> &[usize] {
        &self.degs
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn l1_norm(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |s, c| s + c.norm())
    }

    fn digits(&self, mut idx: usize) -> Vec<usize> {
        self.degs
            .iter()
            .map(|d| {
                let r = idx % (d + 1);
                idx /= d + 1;
                r
            })
            .collect()
    }

    pub fn eval(&self, z: &[Complex<T>]) -> Complex<T> {
        let mut acc = czero();
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.norm() == T::zero() {
                continue;
            }
            let mut term = *c;
            for (i, k) in self.digits(idx).into_iter().enumerate() {
                for _ in 0..k {
                    term = term * z[i];
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// `P(r z)`, i.e. the coefficient of `z^k` times `r^{|k|}`.
    pub fn scale(&self, r: T) -> Self {
        let top: usize = self.degs.iter().sum();
        let mut pw = vec![T::one(); top + 1];
        for i in 1..=top {
            pw[i] = pw[i - 1] * r;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, c)| c * pw[self.digits(idx).iter().sum::<usize>()])
            .collect();
        Self { degs: self.degs.clone(), coeffs }
    }

    /// Coefficients of `ζ = z_v` in the slice `P(α_0…α_{v−1}, ζ, 0…0)`,
    /// as trigonometric polynomials in the angles of `α`.
    fn level_coefficients(&self, v: usize) -> Vec<TrigPoly<T>> {
        let stride: usize = self.degs[..v].iter().map(|d| d + 1).product();
        let m = self.degs[v];
        let mut terms: Vec<Vec<(Vec<i32>, Complex<T>)>> = vec![Vec::new(); m + 1];
        for idx in 0..stride * (m + 1) {
            let c = self.coeffs[idx];
            if c.norm() == T::zero() {
                continue;
            }
            let exps = self.digits(idx % stride)[..v].iter().map(|&k| k as i32).collect();
            terms[idx / stride].push((exps, c));
        }
        terms.into_iter().map(|t| TrigPoly::from_terms(v, t)).collect()
    }

    /// Numerical coefficients of the same slice at a torus point.
    pub(crate) fn level_values(&self, v: usize, alpha: &[Complex<T>]) -> Vec<Complex<T>> {
        let stride: usize = self.degs[..v].iter().map(|d| d + 1).product();
        let m = self.degs[v];
        let mut out = vec![czero(); m + 1];
        for idx in 0..stride * (m + 1) {
            let c = self.coeffs[idx];
            if c.norm() == T::zero() {
                continue;
            }
            let mut term = c;
            for (i, k) in self.digits(idx % stride)[..v].iter().enumerate() {
                for _ in 0..*k {
                    term = term * alpha[i];
                }
            }
            out[idx / stride] = out[idx / stride] + term;
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ZeroFree,
    HasZero,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ZeroFree => "ZERO_FREE",
            Verdict::HasZero => "HAS_ZERO",
            Verdict::Undecided => "UNDECIDED",
        }
    }
}

/// Outcome of a polydisk zero-exclusion check.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<T> {
    pub verdict: Verdict,
    /// A point of the closed polydisk where the polynomial vanishes, when
    /// the verdict is `HasZero`.
    pub witness: Option<Vec<Complex<T>>>,
    /// Smallest certified slack: the lower bound of a normalised
    /// discriminant, or the smallest root modulus minus one on a level
    /// solved by root finding.
    pub margin: Option<T>,
    pub grid_size: usize,
    pub cells: usize,
}

impl<T: Scalar> Certificate<T> {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "verdict": self.verdict.as_str(),
            "witness": self.witness.as_ref().map(|w| w.iter().map(|z| {
                let z = to_c64(*z);
                [z.re, z.im]
            }).collect::<Vec<_>>()),
            "margin": self.margin.and_then(|m| m.to_f64()),
            "grid_size": self.grid_size,
            "cells": self.cells,
        })
    }
}

/// Decides whether `p` has a zero in the closed unit polydisk.
pub fn certify_grid<T: Scalar>(p: &GridPoly<T>, opts: &SearchOptions) -> Certificate<T> {
    let mut cert = Certificate { verdict: Verdict::ZeroFree, witness: None, margin: None, grid_size: opts.grid, cells: 0 };
    let scale = p.l1_norm();
    let n = p.degs.len();
    if scale == T::zero() {
        cert.verdict = Verdict::HasZero;
        cert.witness = Some(vec![czero(); n]);
        return cert;
    }
    let allowance = lit::<T>(64.0) * eps::<T>() * scale;
    if p.coeffs[0].norm() <= allowance {
        cert.verdict = Verdict::HasZero;
        cert.witness = Some(vec![czero(); n]);
        return cert;
    }
    let mut undecided = false;
    for v in 0..n {
        if v == 0 && p.degs[0] >= 2 {
            // No angles yet: read the roots off directly.
            let root = min_modulus_root(&p.level_values(0, &[])).ok().flatten();
            if let Some(z) = root {
                let slack = z.norm() - T::one();
                cert.margin = Some(cert.margin.map_or(slack, |m: T| m.min(slack)));
            }
            if root.is_some_and(|z| z.norm() <= T::one()) {
                match witness_at(p, 0, &[]) {
                    Some(w) => {
                        cert.verdict = Verdict::HasZero;
                        cert.witness = Some(w);
                        return cert;
                    }
                    None => {
                        undecided = true;
                        break;
                    }
                }
            }
            continue;
        }
        let mut cs = p.level_coefficients(v);
        if cs[1..].iter().all(|c| c.is_zero()) {
            continue;
        }
        loop {
            while cs.len() > 1 && cs.last().unwrap().is_zero() {
                cs.pop();
            }
            let top = cs.len() - 1;
            let c0 = &cs[0];
            let disc = if top == 0 { c0.norm_sqr() } else { c0.norm_sqr().sub(&cs[top].norm_sqr()) };
            let mut prover = Prover::new(&disc, opts.margin_tol);
            let report = prover.run(opts);
            cert.cells += report.cells;
            let norm = disc.abs_sum();
            match report.outcome {
                Outcome::Positive { margin } => {
                    let rel = margin / norm;
                    cert.margin = Some(cert.margin.map_or(rel, |m: T| m.min(rel)));
                }
                Outcome::Negative { point, .. } => match witness_at(p, v, &point) {
                    Some(w) => {
                        cert.verdict = Verdict::HasZero;
                        cert.witness = Some(w);
                        return cert;
                    }
                    None => undecided = true,
                },
                // A touching minimum may still sit on an actual zero.
                Outcome::Unknown { point, .. } => match witness_at(p, v, &point) {
                    Some(w) => {
                        cert.verdict = Verdict::HasZero;
                        cert.witness = Some(w);
                        return cert;
                    }
                    None => undecided = true,
                },
            }
            // Past degree one the reduced constant is the discriminant just proved.
            if top <= 1 || undecided {
                break;
            }
            let c0c = cs[0].conj();
            let mut next: Vec<TrigPoly<T>> =
                (0..top).map(|j| c0c.mul(&cs[j]).sub(&cs[top].mul(&cs[top - j].conj()))).collect();
            let big = next.iter().flat_map(|t| t.terms()).fold(T::zero(), |m, (_, c)| m.max(c.norm()));
            if big > T::zero() {
                let inv = Complex::new(T::one() / big, T::zero());
                next = next.iter().map(|t| t.scale(inv)).collect();
            }
            cs = next;
        }
        if undecided {
            break;
        }
    }
    if undecided {
        cert.verdict = Verdict::Undecided;
    }
    cert
}

/// Builds a zero of `p` from torus angles where the level-`v` slice fails.
fn witness_at<T: Scalar>(p: &GridPoly<T>, v: usize, angles: &[T]) -> Option<Vec<Complex<T>>> {
    let alpha: Vec<Complex<T>> = angles.iter().map(|&t| Complex::from_polar(T::one(), t)).collect();
    let cs = p.level_values(v, &alpha);
    let mut zeta = min_modulus_root(&cs).ok()??;
    let r = zeta.norm();
    if r > T::one() {
        if r > T::one() + lit(1e-9) {
            return None;
        }
        zeta = zeta / r;
    }
    let mut w = alpha;
    w.push(zeta);
    w.resize(p.degs.len(), czero());
    let value = p.eval(&w).norm();
    (value <= lit::<T>(1e-9) * p.l1_norm()).then_some(w)
}

/// Multiaffine entry point. Variables that are exactly interchangeable are
/// first merged into one variable of higher degree: by Grace's theorem a
/// polynomial symmetric in a block vanishes on the closed disk in those
/// variables iff it vanishes at some point of the diagonal.
pub fn certify<T: Scalar>(p: &MultiAffinePoly<T>, opts: &SearchOptions) -> Certificate<T> {
    let classes = p.symmetry_classes();
    if classes.len() == p.n() {
        return certify_grid(&GridPoly::from_multiaffine(p), opts);
    }
    let mut cert = certify_grid(&collapse(p, &classes), opts);
    if let Some(w) = cert.witness.take() {
        let mut full = vec![czero(); p.n()];
        for (class, z) in classes.iter().zip(w) {
            class.iter().for_each(|&v| full[v] = z);
        }
        cert.witness = Some(full);
    }
    cert
}

/// The polynomial in one variable per class with `Ψ(ζ_1…ζ_1, ζ_2…) = P(ζ)`.
fn collapse<T: Scalar>(p: &MultiAffinePoly<T>, classes: &[Vec<usize>]) -> GridPoly<T> {
    let degs: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let len = degs.iter().map(|d| d + 1).product::<usize>();
    let coeffs = (0..len)
        .map(|mut idx| {
            let mut mask = 0usize;
            let mut weight = T::one();
            for class in classes {
                let k = idx % (class.len() + 1);
                idx /= class.len() + 1;
                mask |= class[..k].iter().fold(0, |m, &v| m | 1 << v);
                weight = weight * binomial::<T>(class.len(), k);
            }
            p.coeff(mask) * weight
        })
        .collect();
    GridPoly::new(degs, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use crate::Poly;

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn univariate_cases() {
        let inside = Poly::new(1, [(0, c(1.0, 0.0)), (1, c(2.0, 0.0))]).unwrap();
        let cert = certify(&inside, &opts());
        assert_eq!(cert.verdict, Verdict::HasZero);
        let w = cert.witness.unwrap();
        assert!((w[0] - c(-0.5, 0.0)).norm() < 1e-12);
        let outside = Poly::new(1, [(0, c(1.0, 0.0)), (1, c(0.5, 0.0))]).unwrap();
        assert_eq!(certify(&outside, &opts()).verdict, Verdict::ZeroFree);
    }

    #[test]
    fn product_with_zero_on_torus() {
        // (1 + z1)(1 + z2) vanishes at z1 = −1
        let cert = certify(&Poly::ones(2), &opts());
        assert_eq!(cert.verdict, Verdict::HasZero);
        let w = cert.witness.unwrap();
        assert!(Poly::ones(2).eval(&w).unwrap().norm() < 1e-9);
    }

    #[test]
    fn strictly_stable_two_variable() {
        // 1 + 0.3 z1 + 0.3 z2 + 0.2 z1 z2
        let p = Poly::new(2, [(0, c(1.0, 0.0)), (1, c(0.3, 0.0)), (2, c(0.3, 0.0)), (3, c(0.2, 0.0))]).unwrap();
        let cert = certify(&p, &opts());
        assert_eq!(cert.verdict, Verdict::ZeroFree);
        assert!(cert.margin.unwrap() > 0.0);
    }

    #[test]
    fn zero_at_origin() {
        let p = Poly::new(2, [(1, c(1.0, 0.0))]).unwrap();
        let cert = certify(&p, &opts());
        assert_eq!(cert.verdict, Verdict::HasZero);
        assert_eq!(cert.witness.unwrap(), vec![czero(); 2]);
    }

    #[test]
    fn zero_only_inside_multivariate() {
        // 1 + z1 z2 z3 / 0.9 vanishes at |z_i| = 0.9^{1/3} < 1
        let p = Poly::new(3, [(0, c(1.0, 0.0)), (7, c(1.0 / 0.9, 0.0))]).unwrap();
        let cert = certify(&p, &opts());
        assert_eq!(cert.verdict, Verdict::HasZero);
        assert!(p.eval(&cert.witness.unwrap()).unwrap().norm() < 1e-9);
        let q = Poly::new(3, [(0, c(1.0, 0.0)), (7, c(0.9, 0.0))]).unwrap();
        assert_eq!(certify(&q, &opts()).verdict, Verdict::ZeroFree);
    }

    #[test]
    fn higher_degree_slices() {
        // (1 − z/2)(1 − z/3) has roots 2 and 3; (z − 0.5)(z − 3) does not pass
        let good = GridPoly::<f64>::new(vec![2], vec![c(1.0, 0.0), c(-5.0 / 6.0, 0.0), c(1.0 / 6.0, 0.0)]);
        assert_eq!(certify_grid(&good, &opts()).verdict, Verdict::ZeroFree);
        let bad = GridPoly::<f64>::new(vec![2], vec![c(1.5, 0.0), c(-3.5, 0.0), c(1.0, 0.0)]);
        let cert = certify_grid(&bad, &opts());
        assert_eq!(cert.verdict, Verdict::HasZero);
        assert!((cert.witness.unwrap()[0] - c(0.5, 0.0)).norm() < 1e-9);
        // 1 + z1² z2 / 2 + z2² / 4 in two variables
        let two = GridPoly::<f64>::new(
            vec![2, 2],
            vec![c(1.0, 0.0), czero(), czero(), czero(), czero(), c(0.5, 0.0), c(0.25, 0.0), czero(), czero()],
        );
        assert_eq!(certify_grid(&two, &opts()).verdict, Verdict::ZeroFree);
    }

    #[test]
    fn single_precision_agrees() {
        let p = crate::Poly32::new(2, [(0, c(1.0, 0.0)), (1, c(0.3, 0.0)), (2, c(0.3, 0.0)), (3, c(0.2, 0.0))]).unwrap();
        assert_eq!(certify(&p, &opts()).verdict, Verdict::ZeroFree);
    }
}
