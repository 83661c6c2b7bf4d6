//! Laurent polynomials on the torus `T^d`.
//!
//! A [`TrigPoly`] is a finite sum `Σ c_k e^{i k·θ}` with integer exponent
//! vectors `k`. Restricted to the torus, `conj` maps `c_k e^{ik·θ}` to
//! `c̄_k e^{-ik·θ}`, so products like `p · conj(p)` are real-valued.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::scalar::{czero, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly<T: Scalar> {
    dims: usize,
    terms: Vec<(Vec<i32>, Complex<T>)>,
}

impl<T: Scalar> TrigPoly<T> {
    pub fn zero(dims: usize) -> Self {
        Self { dims, terms: Vec::new() }
    }

    pub fn constant(dims: usize, value: Complex<T>) -> Self {
        Self::monomial(vec![0; dims], value)
    }

    pub fn monomial(exps: Vec<i32>, value: Complex<T>) -> Self {
        let dims = exps.len();
        let terms = if value.norm() == T::zero() { Vec::new() } else { vec![(exps, value)] };
        Self { dims, terms }
    }

    /// Collects terms, summing duplicates and dropping exact zeros.
    pub fn from_terms<I: IntoIterator<Item = (Vec<i32>, Complex<T>)>>(dims: usize, terms: I) -> Self {
        let mut map: BTreeMap<Vec<i32>, Complex<T>> = BTreeMap::new();
        for (k, v) in terms {
            debug_assert_eq!(k.len(), dims);
            let e = map.entry(k).or_insert_with(czero);
            *e = *e + v;
        }
        let terms = map.into_iter().filter(|(_, v)| v.norm() != T::zero()).collect();
        Self { dims, terms }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn terms(&self) -> &[(Vec<i32>, Complex<T>)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn abs_sum(&self) -> T {
        self.terms.iter().fold(T::zero(), |s, (_, v)| s + v.norm())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.dims, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let neg = other.terms.iter().map(|(k, v)| (k.clone(), -v));
        Self::from_terms(self.dims, self.terms.iter().cloned().chain(neg))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let k = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.push((k, va * vb));
            }
        }
        Self::from_terms(self.dims, out)
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self::from_terms(self.dims, self.terms.iter().map(|(k, v)| (k.clone(), v * factor)))
    }

    /// Complex conjugate as a function on the torus.
    pub fn conj(&self) -> Self {
        Self::from_terms(
            self.dims,
            self.terms.iter().map(|(k, v)| (k.iter().map(|e| -e).collect(), v.conj())),
        )
    }

    /// `|p|²` on the torus.
    pub fn norm_sqr(&self) -> Self {
        self.mul(&self.conj())
    }

    /// Drops terms whose modulus is at most `tol · max |c_k|`.
    pub fn prune(&self, tol: T) -> Self {
        let max = self.terms.iter().fold(T::zero(), |m, (_, v)| m.max(v.norm()));
        let cut = tol * max;
        Self {
            dims: self.dims,
            terms: self.terms.iter().filter(|(_, v)| v.norm() > cut).cloned().collect(),
        }
    }

    pub fn eval(&self, theta: &[T]) -> Complex<T> {
        self.terms.iter().fold(czero(), |acc, (k, v)| acc + v * Complex::from_polar(T::one(), phase(k, theta)))
    }

    /// Value and gradient with respect to `θ`.
    pub fn eval_grad(&self, theta: &[T], grad: &mut [Complex<T>]) -> Complex<T> {
        grad.iter_mut().for_each(|g| *g = czero());
        let mut acc = czero();
        for (k, v) in &self.terms {
            let term = v * Complex::from_polar(T::one(), phase(k, theta));
            acc = acc + term;
            let dterm = Complex::new(-term.im, term.re);
            for (g, &e) in grad.iter_mut().zip(k) {
                if e != 0 {
                    *g = *g + dterm * T::from_i32(e).unwrap();
                }
            }
        }
        acc
    }

    /// Value, gradient and row-major Hessian at `theta`.
    pub fn eval_hessian(&self, theta: &[T], grad: &mut [Complex<T>], hess: &mut [Complex<T>]) -> Complex<T> {
        let d = self.dims;
        grad.iter_mut().for_each(|g| *g = czero());
        hess.iter_mut().for_each(|h| *h = czero());
        let mut acc = czero();
        for (k, v) in &self.terms {
            let term = v * Complex::from_polar(T::one(), phase(k, theta));
            acc = acc + term;
            let dterm = Complex::new(-term.im, term.re);
            for i in (0..d).filter(|&i| k[i] != 0) {
                let ki = T::from_i32(k[i]).unwrap();
                grad[i] = grad[i] + dterm * ki;
                for j in (i..d).filter(|&j| k[j] != 0) {
                    let h = term * (ki * T::from_i32(k[j]).unwrap());
                    hess[i * d + j] = hess[i * d + j] - h;
                }
            }
        }
        for i in 0..d {
            for j in 0..i {
                hess[i * d + j] = hess[j * d + i];
            }
        }
        acc
    }

    pub fn max_abs_exponent(&self, dim: usize) -> i32 {
        self.terms.iter().map(|(k, _)| k[dim].abs()).max().unwrap_or(0)
    }

    /// Writes `p = G_{-1} e^{-iθ_d} + G_0 + G_1 e^{iθ_d}` along the last
    /// coordinate. Returns `None` if that coordinate has larger exponents.
    pub fn split_last(&self) -> Option<[Self; 3]> {
        if self.dims == 0 || self.max_abs_exponent(self.dims - 1) > 1 {
            return None;
        }
        let d = self.dims - 1;
        let mut parts: [Vec<(Vec<i32>, Complex<T>)>; 3] = Default::default();
        for (k, v) in &self.terms {
            parts[(k[d] + 1) as usize].push((k[..d].to_vec(), *v));
        }
        Some(parts.map(|t| Self::from_terms(d, t)))
    }
}

#[inline]
pub(crate) fn phase<T: Scalar>(k: &[i32], theta: &[T]) -> T {
    k.iter().zip(theta).fold(T::zero(), |s, (&e, &t)| if e == 0 { s } else { s + T::from_i32(e).unwrap() * t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn norm_squared_is_real() {
        let p = TrigPoly::<f64>::from_terms(2, [(vec![0, 0], c(1.0, 0.5)), (vec![1, 0], c(0.3, -0.2)), (vec![1, 1], c(0.0, 0.7))]);
        let q = p.norm_sqr();
        for &th in &[[0.1, 0.2], [2.0, -1.0], [3.0, 0.5]] {
            let v = q.eval(&th);
            assert!(v.im.abs() < 1e-12);
            assert!((v.re - p.eval(&th).norm_sqr()).abs() < 1e-12);
        }
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let p = TrigPoly::from_terms(2, [(vec![2, -1], c(1.0, 0.5)), (vec![0, 3], c(-0.4, 0.1))]);
        let th = [0.3, -0.8];
        let mut g = [czero(); 2];
        p.eval_grad(&th, &mut g);
        let h = 1e-6;
        for i in 0..2 {
            let mut tp = th;
            tp[i] += h;
            let fd = (p.eval(&tp) - p.eval(&th)) / h;
            assert!((fd - g[i]).norm() < 1e-5);
        }
    }

    #[test]
    fn split_last_reassembles() {
        let p = TrigPoly::from_terms(2, [(vec![1, -1], c(1.0, 0.0)), (vec![0, 0], c(2.0, 0.0)), (vec![-1, 1], c(1.0, 0.0))]);
        let [m, z, pl] = p.split_last().unwrap();
        let th = [0.4, 1.3];
        let e = Complex::from_polar(1.0, th[1]);
        let v = m.eval(&th[..1]) / e + z.eval(&th[..1]) + pl.eval(&th[..1]) * e;
        assert!((v - p.eval(&th)).norm() < 1e-12);
        let high = TrigPoly::<f64>::monomial(vec![0, 2], c(1.0, 0.0));
        assert!(high.split_last().is_none());
    }
}
