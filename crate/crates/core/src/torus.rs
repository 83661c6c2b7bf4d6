//! Branch-and-bound positivity prover for real trigonometric polynomials.
//!
//! Cells are axis-aligned boxes on `[0, 2π)^D`. Each cell gets a rigorous
//! lower bound from a Taylor expansion at its centre: the exact gradient and
//! Hessian plus a third-order remainder, or a cruder first- or second-order
//! remainder when that is larger. Cells that cannot be decided are halved in
//! every direction.
//! When the last coordinate enters with exponents in `{-1, 0, 1}` it is
//! minimised in closed form: `G_0 + 2 Re(G_1 e^{iθ})` has minimum
//! `G_0 − 2|G_1|`.

use std::collections::HashMap;

use num_complex::Complex;

use crate::scalar::{czero, eps, lit, Scalar};
use crate::trig::TrigPoly;

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Initial number of cells along each coordinate.
    pub grid: usize,
    /// Total number of cell evaluations allowed.
    pub max_cells: usize,
    /// Extra safety margin, relative to the coefficient sum, that a cell
    /// bound must clear on top of the round-off allowance.
    pub margin_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { grid: 256, max_cells: 1 << 20, margin_tol: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<T> {
    /// `f > 0` everywhere; `margin` is the smallest certified cell bound.
    Positive { margin: T },
    /// `f(point) = value < 0`, beyond rounding.
    Negative { point: Vec<T>, value: T },
    /// Budget exhausted; `point` attains the smallest sampled value.
    Unknown { point: Vec<T>, value: T },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report<T> {
    pub outcome: Outcome<T>,
    pub cells: usize,
}

/// Term data prepared for repeated bound evaluation.
struct Prepared<T: Scalar> {
    poly: TrigPoly<T>,
    abs: Vec<T>,
    exps: Vec<Vec<T>>,
    grad: Vec<Complex<T>>,
    hess: Vec<Complex<T>>,
}

/// Remainder bounds of orders one to three for a given cell size.
#[derive(Debug, Clone, Copy)]
struct Remainders<T> {
    first: T,
    second: T,
    third: T,
}

impl<T: Scalar> Prepared<T> {
    fn new(poly: TrigPoly<T>) -> Self {
        let abs = poly.terms().iter().map(|(_, v)| v.norm()).collect();
        let exps = poly.terms().iter().map(|(k, _)| k.iter().map(|&e| T::from_i32(e.abs()).unwrap()).collect()).collect();
        let d = poly.dims();
        Self { poly, abs, exps, grad: vec![czero(); d], hess: vec![czero(); d * d] }
    }

    /// `Σ|c_k| min(2, s)`, `½ Σ|c_k| s²` and `⅙ Σ|c_k| s³` with `s = |k|·h`.
    fn remainders(&self, half: &[T]) -> Remainders<T> {
        let two = lit::<T>(2.0);
        let (mut first, mut second, mut third) = (T::zero(), T::zero(), T::zero());
        for (a, k) in self.abs.iter().zip(&self.exps) {
            let s = k.iter().zip(half).fold(T::zero(), |s, (&e, &h)| s + e * h);
            first = first + *a * s.min(two);
            second = second + *a * s * s;
            third = third + *a * s * s * s;
        }
        Remainders { first, second: second * lit(0.5), third: third / lit(6.0) }
    }

    /// Value, gradient and Hessian at `x`; a bound on `sup |f − f(x)|`
    /// over the cell.
    fn expand(&mut self, x: &[T], half: &[T], rem: &Remainders<T>) -> (Complex<T>, T) {
        let v = self.poly.eval_hessian(x, &mut self.grad, &mut self.hess);
        let lin = self.grad.iter().zip(half).fold(T::zero(), |s, (g, &h)| s + g.norm() * h);
        (v, rem.first.min(lin + rem.second))
    }
}

/// Lower bound of `Σ_i g_i δ_i + ½ δᵀHδ` over `|δ_i| ≤ h_i`. Diagonal terms
/// are minimised exactly with off-diagonal ones bounded in absolute value;
/// when `H` is positive definite the unconstrained minimum `−½ gᵀH⁻¹g` is
/// used if larger.
fn quadratic_floor<T: Scalar>(g: &[T], hess: &[T], half: &[T]) -> T {
    let d = g.len();
    let half_t = lit::<T>(0.5);
    let mut boxed = T::zero();
    for i in 0..d {
        let (gi, a, h) = (g[i], hess[i * d + i], half[i]);
        let edge = -(gi.abs() * h) + half_t * a * h * h;
        let inner = if a > T::zero() && gi.abs() < a * h { -(gi * gi) / (a + a) } else { edge };
        boxed = boxed + inner.min(edge);
        for j in i + 1..d {
            boxed = boxed - hess[i * d + j].abs() * h * half[j];
        }
    }
    match cholesky_solve(hess, g) {
        Some(y) => boxed.max(-half_t * g.iter().zip(&y).fold(T::zero(), |s, (a, b)| s + *a * *b)),
        None => boxed,
    }
}

/// Solves `H y = g` for symmetric positive definite `H`.
fn cholesky_solve<T: Scalar>(hess: &[T], g: &[T]) -> Option<Vec<T>> {
    let d = g.len();
    let mut l = vec![T::zero(); d * d];
    for i in 0..d {
        for j in 0..=i {
            let mut s = hess[i * d + j];
            for k in 0..j {
                s = s - l[i * d + k] * l[j * d + k];
            }
            if i == j {
                if !(s > T::zero()) {
                    return None;
                }
                l[i * d + i] = s.sqrt();
            } else {
                l[i * d + j] = s / l[j * d + j];
            }
        }
    }
    let mut y = g.to_vec();
    for i in 0..d {
        for k in 0..i {
            y[i] = y[i] - l[i * d + k] * y[k];
        }
        y[i] = y[i] / l[i * d + i];
    }
    for i in (0..d).rev() {
        for k in i + 1..d {
            y[i] = y[i] - l[k * d + i] * y[k];
        }
        y[i] = y[i] / l[i * d + i];
    }
    y.iter().all(|v| v.is_finite()).then_some(y)
}

enum Form<T: Scalar> {
    Plain(Prepared<T>),
    Eliminated { g0: Prepared<T>, g1: Prepared<T> },
}

pub struct Prover<T: Scalar> {
    form: Form<T>,
    dims: usize,
    /// Coordinate order: search coordinate `i` is original coordinate `order[i]`.
    order: Vec<usize>,
    allowance: T,
    cache: HashMap<usize, [Remainders<T>; 2]>,
}

impl<T: Scalar> Prover<T> {
    /// Prepares `f`, assumed real-valued on the torus.
    pub fn new(f: &TrigPoly<T>, margin_tol: f64) -> Self {
        let d = f.dims();
        let allowance = (lit::<T>(64.0) * eps::<T>() + lit(margin_tol)) * f.abs_sum();
        let lin = (0..d).rev().find(|&i| f.max_abs_exponent(i) <= 1);
        if let Some(e) = lin {
            let mut order: Vec<usize> = (0..d).filter(|&i| i != e).collect();
            order.push(e);
            let permuted = permute(f, &order);
            let [_, g0, g1] = permuted.split_last().expect("last coordinate is linear");
            return Self {
                form: Form::Eliminated { g0: Prepared::new(g0), g1: Prepared::new(g1) },
                dims: d - 1,
                order,
                allowance,
                cache: HashMap::new(),
            };
        }
        Self { form: Form::Plain(Prepared::new(f.clone())), dims: d, order: (0..d).collect(), allowance, cache: HashMap::new() }
    }

    pub fn allowance(&self) -> T {
        self.allowance
    }

    fn remainders(&mut self, depth: usize, half: &[T]) -> [Remainders<T>; 2] {
        if let Some(r) = self.cache.get(&depth) {
            return *r;
        }
        let zero = Remainders { first: T::zero(), second: T::zero(), third: T::zero() };
        let r = match &self.form {
            Form::Plain(p) => [p.remainders(half), zero],
            Form::Eliminated { g0, g1 } => [g0.remainders(half), g1.remainders(half)],
        };
        self.cache.insert(depth, r);
        r
    }

    /// Returns `(value at x, lower bound on the cell)`.
    fn bound(&mut self, x: &[T], half: &[T], depth: usize) -> (T, T) {
        let [r0, r1] = self.remainders(depth, half);
        let d = half.len();
        match &mut self.form {
            Form::Plain(p) => {
                let (v, drift) = p.expand(x, half, &r0);
                let g: Vec<T> = p.grad.iter().map(|z| z.re).collect();
                let h: Vec<T> = p.hess.iter().map(|z| z.re).collect();
                let taylor = v.re + quadratic_floor(&g, &h, half) - r0.third;
                (v.re, (v.re - drift).max(taylor))
            }
            Form::Eliminated { g0, g1 } => {
                let two = lit::<T>(2.0);
                let (a, da) = g0.expand(x, half, &r0);
                let (b, db) = g1.expand(x, half, &r1);
                let bn = b.norm();
                let value = a.re - two * bn;
                let separate = a.re - da - two * (bn + db);
                if bn == T::zero() {
                    return (value, separate);
                }
                // Write ū(g1(x+δ) − b) = p + iq + error. Then
                // |g1(x+δ)| ≤ |b| + p + q²/(2(|b| − |w|)) + error, and the
                // curvature of both parts enters one quadratic form, so the
                // first-order terms cancel near a minimum.
                let u = b.conj() / bn;
                let mut jd = T::zero();
                let mut q1 = T::zero();
                for i in 0..d {
                    jd = jd + g1.grad[i].norm() * half[i];
                    for j in 0..d {
                        q1 = q1 + g1.hess[i * d + j].norm() * half[i] * half[j];
                    }
                }
                let quad = q1 * lit(0.5);
                let room = bn - jd - quad;
                if !(room > T::zero()) {
                    return (value, separate);
                }
                let v: Vec<T> = g1.grad.iter().map(|q| (u * q).im).collect();
                let vh = v.iter().zip(half).fold(T::zero(), |s, (a, &h)| s + a.abs() * h);
                let g: Vec<T> = g0.grad.iter().zip(&g1.grad).map(|(p, q)| p.re - two * (u * q).re).collect();
                let mut h: Vec<T> = g0.hess.iter().zip(&g1.hess).map(|(p, q)| p.re - two * (u * q).re).collect();
                for i in 0..d {
                    for j in 0..d {
                        h[i * d + j] = h[i * d + j] - two * v[i] * v[j] / room;
                    }
                }
                let cross = (two * vh * quad + quad * quad) / room;
                let joint = value + quadratic_floor(&g, &h, half) - cross - r0.third - two * r1.third;
                (value, separate.max(joint))
            }
        }
    }

    /// Expands a search point into a point of the original torus.
    fn full_point(&self, x: &[T]) -> Vec<T> {
        let mut search = x.to_vec();
        if let Form::Eliminated { g1, .. } = &self.form {
            let b = g1.poly.eval(x);
            let theta = if b.norm() > T::zero() { (b.im).atan2(-b.re) } else { T::zero() };
            search.push(theta);
        }
        let mut out = vec![T::zero(); search.len()];
        for (i, &o) in self.order.iter().enumerate() {
            out[o] = search[i];
        }
        out
    }

    pub fn run(&mut self, opts: &SearchOptions) -> Report<T> {
        let d = self.dims;
        let tau = T::PI() + T::PI();
        let allow = self.allowance;
        if d == 0 {
            let (v, _) = self.bound(&[], &[], 0);
            let outcome = if v > allow {
                Outcome::Positive { margin: v }
            } else if v < -allow {
                Outcome::Negative { point: self.full_point(&[]), value: v }
            } else {
                Outcome::Unknown { point: self.full_point(&[]), value: v }
            };
            return Report { outcome, cells: 1 };
        }

        let cap = 1usize << 12;
        let per_dim = if d <= 1 {
            opts.grid.max(1)
        } else {
            let root = (cap as f64).powf(1.0 / d as f64).floor() as usize;
            opts.grid.min(64).min(root).max(2)
        };
        let half0 = tau / lit::<T>(2.0 * per_dim as f64);
        let mut cells = 0usize;
        let mut margin = T::infinity();
        let mut best = (T::infinity(), vec![T::zero(); d]);
        let mut stack: Vec<(Vec<T>, usize)> = Vec::new();

        // Initial grid, scanned completely so that a clear negative is
        // reported before any refinement.
        let total = per_dim.pow(d as u32);
        let half: Vec<T> = vec![half0; d];
        let mut pending = Vec::with_capacity(total);
        for idx in 0..total {
            let mut rest = idx;
            let x: Vec<T> = (0..d)
                .map(|_| {
                    let i = rest % per_dim;
                    rest /= per_dim;
                    half0 * lit::<T>((2 * i + 1) as f64)
                })
                .collect();
            let (v, lo) = self.bound(&x, &half, 0);
            cells += 1;
            if v < best.0 {
                best = (v, x.clone());
            }
            if lo > allow {
                margin = margin.min(lo);
            } else {
                pending.push(x);
            }
        }
        if best.0 < -allow {
            return Report { outcome: Outcome::Negative { point: self.full_point(&best.1), value: best.0 }, cells };
        }
        stack.extend(pending.into_iter().rev().map(|x| (x, 0)));

        let children = 1usize << d;
        while let Some((x, depth)) = stack.pop() {
            let depth = depth + 1;
            let h = half0 / lit::<T>((1u64 << depth.min(60)) as f64);
            if depth > 48 || cells + children > opts.max_cells {
                return Report { outcome: Outcome::Unknown { point: self.full_point(&best.1), value: best.0 }, cells };
            }
            let half = vec![h; d];
            for mask in (0..children).rev() {
                let y: Vec<T> = x.iter().enumerate().map(|(i, &xi)| if mask >> i & 1 == 1 { xi + h } else { xi - h }).collect();
                let (v, lo) = self.bound(&y, &half, depth);
                cells += 1;
                if v < best.0 {
                    best = (v, y.clone());
                }
                if v < -allow {
                    return Report { outcome: Outcome::Negative { point: self.full_point(&y), value: v }, cells };
                }
                if lo > allow {
                    margin = margin.min(lo);
                } else {
                    stack.push((y, depth));
                }
            }
        }
        Report { outcome: Outcome::Positive { margin }, cells }
    }
}

/// Reorders coordinates: new coordinate `i` is old coordinate `order[i]`.
fn permute<T: Scalar>(f: &TrigPoly<T>, order: &[usize]) -> TrigPoly<T> {
    TrigPoly::from_terms(f.dims(), f.terms().iter().map(|(k, v)| (order.iter().map(|&o| k[o]).collect(), *v)))
}

/// Convenience wrapper around [`Prover`].
pub fn certify_positive<T: Scalar>(f: &TrigPoly<T>, opts: &SearchOptions) -> Report<T> {
    Prover::new(f, opts.margin_tol).run(opts)
}
