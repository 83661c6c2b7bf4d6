//! High-temperature classification of energies.
//!
//! `Ψ^β ∈ LY_n` for every β > 0 iff the energies have the pair form
//! `W_X = −Σ_{j∈X} Σ_{k∉X} W_jk − i Σ_{j∈X} a_j + b` with real
//! `W_jk = W_kj ≥ 0`. Expanding `W_X = Σ_{S⊆X} w_S`, the pair form has
//! `w_S = 0` for `|S| > 2`, `w_{jk} = 2 W_jk`, `w_j = −Σ_k W_jk − i a_j`
//! and `w_∅ = b`.

use num_complex::Complex;

use super::TemperatureModel;
use crate::error::{invalid, Result};
use crate::scalar::{lit, Scalar};

/// Coefficients `w_S` of `W_X = Σ_{S ⊆ X} w_S`, indexed by bitmask.
pub fn mobius_expand<T: Scalar>(model: &TemperatureModel<T>) -> Result<Vec<Complex<T>>> {
    let mut w = model
        .energies()
        .iter()
        .enumerate()
        .map(|(mask, v)| v.ok_or(mask))
        .collect::<std::result::Result<Vec<_>, usize>>()
        .or_else(|mask| invalid(format!("energy of subset {mask} is −∞")))?;
    for bit in 0..model.n() {
        for mask in 0..w.len() {
            if mask >> bit & 1 == 1 {
                w[mask] = w[mask] - w[mask ^ (1 << bit)];
            }
        }
    }
    Ok(w)
}

/// Inverse of [`mobius_expand`].
#[cfg(test)]
fn zeta_sum<T: Scalar>(n: usize, w: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut out = w.to_vec();
    for bit in 0..n {
        for mask in 0..out.len() {
            if mask >> bit & 1 == 1 {
                out[mask] = out[mask] + out[mask ^ (1 << bit)];
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairDecomposition<T> {
    /// Symmetric, non-negative, zero diagonal.
    pub w_pair: Vec<Vec<T>>,
    pub a: Vec<T>,
    pub b: Complex<T>,
    /// Largest deviation of the reconstructed energies from the input.
    pub residual: T,
}

impl<T: Scalar> PairDecomposition<T> {
    pub fn energy(&self, x: usize) -> Complex<T> {
        let n = self.a.len();
        let mut re = T::zero();
        let mut im = T::zero();
        for j in (0..n).filter(|j| x >> j & 1 == 1) {
            im = im - self.a[j];
            for k in (0..n).filter(|k| x >> k & 1 == 0) {
                re = re - self.w_pair[j][k];
            }
        }
        Complex::new(re, im) + self.b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// A Möbius coefficient on three or more variables.
    HigherOrder,
    /// `w_{jk}` is not real.
    ComplexPair,
    /// `w_{jk}` is negative.
    NegativePair,
    /// The real part of `w_j` does not balance the pair weights.
    Unbalanced,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rejection<T> {
    pub reason: RejectReason,
    /// Bitmask of the offending subset.
    pub subset: usize,
    pub value: Complex<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classification<T> {
    Accepted(PairDecomposition<T>),
    Rejected(Rejection<T>),
}

pub fn classify_high_temperature<T: Scalar>(model: &TemperatureModel<T>, tol: T) -> Result<Classification<T>> {
    let n = model.n();
    let w = mobius_expand(model)?;
    let reject = |reason, subset: usize| Ok(Classification::Rejected(Rejection { reason, subset, value: w[subset] }));

    let worst = (0..w.len())
        .filter(|s| s.count_ones() > 2 && w[*s].norm() > tol)
        .max_by(|&a, &b| w[a].norm().partial_cmp(&w[b].norm()).unwrap());
    if let Some(s) = worst {
        return reject(RejectReason::HigherOrder, s);
    }

    let mut w_pair = vec![vec![T::zero(); n]; n];
    for j in 0..n {
        for k in j + 1..n {
            let s = (1 << j) | (1 << k);
            let half = w[s] * lit::<T>(0.5);
            if half.im.abs() > tol {
                return reject(RejectReason::ComplexPair, s);
            }
            if half.re < -tol {
                return reject(RejectReason::NegativePair, s);
            }
            w_pair[j][k] = half.re;
            w_pair[k][j] = half.re;
        }
    }

    let mut a = vec![T::zero(); n];
    for j in 0..n {
        let s = 1 << j;
        let row: T = w_pair[j].iter().fold(T::zero(), |acc, &x| acc + x);
        if (w[s].re + row).abs() > tol {
            return reject(RejectReason::Unbalanced, s);
        }
        a[j] = -w[s].im;
    }

    let mut dec = PairDecomposition { w_pair, a, b: w[0], residual: T::zero() };
    dec.residual = model
        .energies()
        .iter()
        .enumerate()
        .fold(T::zero(), |m, (x, v)| m.max((dec.energy(x) - v.expect("finite")).norm()));
    Ok(Classification::Accepted(dec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use proptest::prelude::*;

    #[test]
    fn expansion_examples() {
        let flat = TemperatureModel::<f64>::new(2, (0..4).map(|x| (x, Some(c(0.7, 0.1))))).unwrap();
        let w = mobius_expand(&flat).unwrap();
        assert_eq!(w[0], c(0.7, 0.1));
        assert!(w[1..].iter().all(|v| v.norm() == 0.0));

        let pair = TemperatureModel::pair_form(&[vec![0.0, 1.0], vec![1.0, 0.0]], &[0.0, 0.0], c(0.0, 0.0)).unwrap();
        assert_eq!(mobius_expand(&pair).unwrap(), vec![c(0.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)]);
        let hole = TemperatureModel::<f64>::new(2, [(3, None)]).unwrap();
        assert!(mobius_expand(&hole).is_err());
    }

    #[test]
    fn accepts_constructed_pair_form() {
        let pair = TemperatureModel::pair_form(&[vec![0.0, 1.0], vec![1.0, 0.0]], &[0.0, 0.0], c(0.0, 0.0)).unwrap();
        match classify_high_temperature(&pair, 1e-10).unwrap() {
            Classification::Accepted(d) => {
                assert_eq!(d.w_pair[0][1], 1.0);
                assert_eq!(d.residual, 0.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_triple_term() {
        let base = TemperatureModel::pair_form(
            &[vec![0.0, 0.3, 0.2], vec![0.3, 0.0, 0.4], vec![0.2, 0.4, 0.0]],
            &[0.1, 0.2, 0.3],
            c(0.5, 0.0),
        )
        .unwrap();
        let mut entries: Vec<_> = base.energies().iter().copied().enumerate().collect();
        entries[7].1 = entries[7].1.map(|v| v + c(0.1, 0.0));
        let bumped = TemperatureModel::new(3, entries).unwrap();
        match classify_high_temperature(&bumped, 1e-9).unwrap() {
            Classification::Rejected(r) => {
                assert_eq!(r.reason, RejectReason::HigherOrder);
                assert_eq!(r.subset, 7);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_pairs() {
        let neg = TemperatureModel::pair_form(&[vec![0.0, -1.0], vec![-1.0, 0.0]], &[0.0, 0.0], c(0.0, 0.0)).unwrap();
        assert!(matches!(
            classify_high_temperature(&neg, 1e-9).unwrap(),
            Classification::Rejected(Rejection { reason: RejectReason::NegativePair, subset: 3, .. })
        ));
        let cplx = TemperatureModel::new(2, [(3, Some(c(0.0, 1.0)))]).unwrap();
        assert!(matches!(
            classify_high_temperature(&cplx, 1e-9).unwrap(),
            Classification::Rejected(Rejection { reason: RejectReason::ComplexPair, .. })
        ));
        let lone = TemperatureModel::new(2, [(1, Some(c(0.5, 0.0))), (3, Some(c(0.5, 0.0)))]).unwrap();
        assert!(matches!(
            classify_high_temperature(&lone, 1e-9).unwrap(),
            Classification::Rejected(Rejection { reason: RejectReason::Unbalanced, subset: 1, .. })
        ));
    }

    proptest! {
        #[test]
        fn expansion_round_trip(n in 1usize..=5, vals in prop::collection::vec((-3.0..3.0f64, -3.0..3.0f64), 32)) {
            let model = TemperatureModel::<f64>::new(n, (0..1usize << n).map(|x| (x, Some(c(vals[x].0, vals[x].1))))).unwrap();
            let w = mobius_expand(&model).unwrap();
            let back = zeta_sum(n, &w);
            for (x, v) in back.iter().enumerate() {
                prop_assert!((v - model.energy(x).unwrap()).norm() <= 1e-12);
            }
        }

        #[test]
        fn pair_forms_are_accepted(n in 2usize..=5, ws in prop::collection::vec(0.0..2.0f64, 25),
                                   a in prop::collection::vec(-1.0..1.0f64, 5), b in (-1.0..1.0f64, -1.0..1.0f64)) {
            let mut m = vec![vec![0.0; n]; n];
            for j in 0..n {
                for k in j + 1..n {
                    m[j][k] = ws[j * 5 + k];
                    m[k][j] = ws[j * 5 + k];
                }
            }
            let model = TemperatureModel::pair_form(&m, &a[..n], c(b.0, b.1)).unwrap();
            match classify_high_temperature(&model, 1e-9).unwrap() {
                Classification::Accepted(d) => {
                    prop_assert!(d.residual <= 1e-10);
                    for j in 0..n {
                        prop_assert!((d.a[j] - a[j]).abs() <= 1e-10);
                        for k in 0..n {
                            prop_assert!((d.w_pair[j][k] - m[j][k]).abs() <= 1e-10);
                        }
                    }
                }
                Classification::Rejected(r) => prop_assert!(false, "rejected {:?}", r),
            }
        }
    }
}
