//! Temperature dependent models `E_X = exp(β W_X)` and β sweeps.

use num_complex::Complex;
use rayon::prelude::*;

use super::membership::{decompose_ly, is_ly, MembershipOptions};
use super::Status;
use crate::error::{invalid, Result};
use crate::poly::MultiAffinePoly;
use crate::radius::{inner_radius, RadiusBounds};
use crate::scalar::{czero, lit, Scalar};

/// Energies `W_X`; `None` stands for `−∞`, i.e. `E_X = 0` at every β.
#[derive(Debug, Clone, PartialEq)]
pub struct TemperatureModel<T> {
    n: usize,
    w: Vec<Option<Complex<T>>>,
}

impl<T: Scalar> TemperatureModel<T> {
    /// Entries not listed have energy zero.
    pub fn new<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Option<Complex<T>>)>,
    {
        if n == 0 || n > crate::poly::DEFAULT_MAX_VARS {
            return invalid(format!("unsupported variable count {n}"));
        }
        let mut w = vec![Some(czero()); 1 << n];
        for (mask, v) in entries {
            if mask >> n != 0 {
                return invalid(format!("subset bitmask {mask} out of range"));
            }
            w[mask] = v;
        }
        if w[0].is_none() {
            return invalid("W for the empty set must be finite");
        }
        Ok(Self { n, w })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn energy(&self, mask: usize) -> Option<Complex<T>> {
        self.w[mask]
    }

    pub fn energies(&self) -> &[Option<Complex<T>>] {
        &self.w
    }

    /// `W_∅ = w`, `W_U = w*` on the full set, zero elsewhere; at inverse
    /// temperature β this is the single-interaction model with `b = e^{βw}`.
    pub fn single_interaction(size: usize, w: Complex<T>) -> Result<Self> {
        Self::new(size, [(0, Some(w)), ((1 << size) - 1, Some(w.conj()))])
    }

    /// The spiral example: `W = 1 + 3i` on three variables.
    pub fn spiral() -> Self {
        Self::single_interaction(3, Complex::new(T::one(), lit(3.0))).expect("valid model")
    }

    /// Four variables with real `W_∅ = W_U = 1`, so `b = e^β`.
    pub fn quad() -> Self {
        Self::single_interaction(4, Complex::new(T::one(), T::zero())).expect("valid model")
    }

    /// `W_X = −Σ_{j∈X} Σ_{k∉X} W_jk − i Σ_{j∈X} a_j + b`.
    pub fn pair_form(w_pair: &[Vec<T>], a: &[T], b: Complex<T>) -> Result<Self> {
        let n = a.len();
        if w_pair.len() != n || w_pair.iter().any(|r| r.len() != n) {
            return invalid("pair matrix must be n × n");
        }
        let entries = (0..1usize << n).map(|x| {
            let mut re = T::zero();
            let mut im = T::zero();
            for j in (0..n).filter(|j| x >> j & 1 == 1) {
                im = im - a[j];
                for k in (0..n).filter(|k| x >> k & 1 == 0) {
                    re = re - w_pair[j][k];
                }
            }
            (x, Some(Complex::new(re, im) + b))
        });
        Self::new(n, entries)
    }
}

/// `E_X = exp(β W_X)`, with `−∞` mapped to zero.
pub fn temperature_poly<T: Scalar>(model: &TemperatureModel<T>, beta: T) -> Result<MultiAffinePoly<T>> {
    if !(beta > T::zero()) {
        return invalid("β must be positive");
    }
    let coeffs = model.w.iter().map(|w| w.map_or(czero(), |w| (w * beta).exp())).collect();
    MultiAffinePoly::from_coeffs(model.n, coeffs)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint<T> {
    pub beta: T,
    pub status: Status,
    /// Radius bracket of the slice `Φ^β`, when `Ψ^β` decomposes.
    pub radius: Option<RadiusBounds<T>>,
}

/// A status change between consecutive grid points, localised by bisection.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition<T> {
    pub beta_lo: T,
    pub beta_hi: T,
    pub beta: T,
    pub from: Status,
    pub to: Status,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep<T> {
    pub points: Vec<SweepPoint<T>>,
    pub transitions: Vec<Transition<T>>,
}

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig<T> {
    pub tol: T,
    pub membership: MembershipOptions,
    /// Bisection steps per detected transition.
    pub refine_steps: usize,
    /// Tolerance for the slice radius column; `None` skips it.
    pub radius_tol: Option<T>,
}

impl<T: Scalar> Default for SweepConfig<T> {
    fn default() -> Self {
        Self { tol: lit(1e-6), membership: MembershipOptions::default(), refine_steps: 20, radius_tol: Some(lit(1e-4)) }
    }
}

/// Runs membership on `steps` evenly spaced β in `[β_min, β_max]`.
pub fn sweep_membership<T: Scalar>(
    model: &TemperatureModel<T>,
    beta_min: T,
    beta_max: T,
    steps: usize,
    cfg: &SweepConfig<T>,
) -> Result<Sweep<T>> {
    if !(beta_min > T::zero() && beta_min < beta_max) {
        return invalid("need 0 < β_min < β_max");
    }
    if steps < 2 {
        return invalid("need at least two steps");
    }
    let status_at = |beta: T| -> Result<Status> {
        Ok(is_ly(&temperature_poly(model, beta)?, cfg.tol, &cfg.membership)?.status)
    };
    let betas: Vec<T> = (0..steps)
        .map(|i| beta_min + (beta_max - beta_min) * lit::<T>(i as f64) / lit::<T>((steps - 1) as f64))
        .collect();
    let points = betas
        .par_iter()
        .map(|&beta| {
            let psi = temperature_poly(model, beta)?;
            let status = is_ly(&psi, cfg.tol, &cfg.membership)?.status;
            let radius = match (cfg.radius_tol, decompose_ly(&psi, cfg.tol)) {
                (Some(rt), Ok((_, phi))) if phi.n() > 0 => inner_radius(&phi, rt, &cfg.membership.search).ok(),
                _ => None,
            };
            Ok(SweepPoint { beta, status, radius })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut transitions = Vec::new();
    for pair in points.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.status == b.status {
            continue;
        }
        let (mut lo, mut hi) = (a.beta, b.beta);
        for _ in 0..cfg.refine_steps {
            let mid = (lo + hi) * lit(0.5);
            if status_at(mid)? == a.status {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        transitions.push(Transition { beta_lo: lo, beta_hi: hi, beta: (lo + hi) * lit(0.5), from: a.status, to: b.status });
    }
    Ok(Sweep { points, transitions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn exponentiation_examples() {
        let flat = TemperatureModel::<f64>::new(2, []).unwrap();
        assert_eq!(temperature_poly(&flat, 1.0).unwrap(), MultiAffinePoly::ones(2));
        let pair = TemperatureModel::pair_form(&[vec![0.0, 1.0], vec![1.0, 0.0]], &[0.0, 0.0], c(0.0, 0.0)).unwrap();
        let p = temperature_poly(&pair, 1.0).unwrap();
        let e = (-1.0f64).exp();
        for (x, y) in p.coeffs().iter().zip([1.0, e, e, 1.0]) {
            assert!((x - c(y, 0.0)).norm() < 1e-15);
        }
        let hole = TemperatureModel::new(2, [(1, None)]).unwrap();
        assert_eq!(temperature_poly(&hole, 2.0).unwrap().coeff(1), c(0.0, 0.0));
        assert!(temperature_poly(&flat, 0.0).is_err());
        assert!(TemperatureModel::<f64>::new(2, [(0, None)]).is_err());
    }

    #[test]
    fn pair_model_sweeps_in() {
        let model = TemperatureModel::pair_form(
            &[vec![0.0, 0.5, 0.2], vec![0.5, 0.0, 0.7], vec![0.2, 0.7, 0.0]],
            &[0.3, -0.2, 0.1],
            c(0.4, 0.0),
        )
        .unwrap();
        let cfg = SweepConfig { radius_tol: None, ..SweepConfig::default() };
        let sweep = sweep_membership(&model, 0.1, 5.0, 6, &cfg).unwrap();
        assert!(sweep.points.iter().all(|p| p.status == Status::In));
        assert!(sweep.transitions.is_empty());
    }

    #[test]
    fn quad_model_transition() {
        let cfg = SweepConfig { radius_tol: None, ..SweepConfig::default() };
        let sweep = sweep_membership(&TemperatureModel::quad(), 0.2, 1.2, 6, &cfg).unwrap();
        assert_eq!(sweep.points[0].status, Status::Out);
        assert_eq!(sweep.points.last().unwrap().status, Status::In);
        assert_eq!(sweep.transitions.len(), 1);
        assert!((sweep.transitions[0].beta - 2f64.ln()).abs() < 1e-3, "{:?}", sweep.transitions);
    }

    #[test]
    fn sweep_argument_errors() {
        let cfg = SweepConfig::default();
        assert!(sweep_membership(&TemperatureModel::<f64>::quad(), 1.0, 1.0, 5, &cfg).is_err());
        assert!(sweep_membership(&TemperatureModel::<f64>::quad(), 0.1, 1.0, 1, &cfg).is_err());
    }
}
