//! The profile function `f(t)` of a cohomogeneity-one Kähler–Einstein metric.
//!
//! Given the pairs `(a_α, b_α) = (α(Z_0), α(Z^0))` over `α ∈ R_𝔪⁺(F)`,
//!
//! ```text
//! P(x) = Π (a_α + x b_α),   I(f) = ∫_0^f (κm − λv) P(v) dv,
//! t(f) = ∫_0^f √(P(s) / 2I(s)) ds,
//! ```
//!
//! and `f` is the inverse of `t`. Internally everything is written in the
//! scaled variable `y = f/κ`, where `b_α = b'_α/κ` with `b'_α = ⟨α, ξ_0⟩`
//! rational:
//!
//! ```text
//! Q(y) = Π (a_α + y b'_α),   J(y) = ∫_0^y (m − λy') Q(y') dy',
//! P(κy) = Q(y),   I(κy) = κ² J(y),   t(κy) = ∫_0^y √(Q / 2J).
//! ```
//!
//! `Q` and `J` have exact rational coefficients, so the domain end is located
//! by exact sign evaluation. With `d = ord_0 Q` the integrand behaves like
//! `y^{−1/2}` at the singular orbit; the substitution `y = u²` makes it
//! smooth. A closing end (zero of `J`, `λ > 0`) is handled by `y = y* − v²`.
//!
//! Floating-point values of `J` never come from its expanded coefficients,
//! whose Horner evaluation cancels catastrophically at moderate `y` once the
//! degree is large. `J` is instead integrated from the factored `Q` by a
//! Gauss–Legendre rule that is exact for its degree. Past the turning point
//! `m/λ` of a closing segment it is taken as `J(y) = ∫_y^{y*} (λs − m) Q(s) ds`
//! instead, so that the integrand has one sign in either form.

// `!(x >= 0.0)` style guards are deliberate: NaN must fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::bundle::{flag_f, kappa_z0_form, AdmissibleData};
use crate::einstein::{alg_cond, is_face_point, ricci_flat_witness, z0_form};
use crate::error::{Error, Result};
use crate::poly::{bisect_root, Poly};
use crate::quadrature::{integrate, Tolerance};
use crate::rational::{int, to_f64, Q};
use crate::rootspace::Weight;

/// How the admissible segment ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DomainEnd {
    /// The segment is a ray; `f` is defined for all `t ≥ 0`.
    Infinite,
    /// `I(f)` returns to zero (`λ > 0`): `ḟ → 0` at a finite `t`.
    Closing,
    /// The segment leaves the T-Weyl chamber where `P(f) = 0`.
    ChamberExit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub t: f64,
    pub f: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdianiReport {
    pub f0: f64,
    /// `ḟ` at the smallest fitted time.
    pub fdot_small: f64,
    pub fitted_curvature: f64,
    pub kappa: f64,
    pub relative_error: f64,
    /// `ord_0 P`; smooth closure requires `d = m − 1`.
    pub d: usize,
    pub m: usize,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct MetricProfile {
    exact_pairs: Vec<(Q, Q)>,
    kappa_sq: Q,
    kappa: f64,
    m: usize,
    lambda: Q,
    lambda_f: f64,
    d: usize,
    q: Poly,
    j: Poly,
    // Float data for evaluation.
    factors: Vec<(f64, f64)>,
    lead: f64,
    // Gauss–Legendre rule on [0, 1], exact for the degree of `(m − λy)Q`.
    rule: Vec<(f64, f64)>,
    end: DomainEnd,
    y_end: f64,
    // `m/λ` for a closing end, where `J` switches representation.
    y_turn: f64,
    y_split: f64,
    t_split: f64,
    t_sup: f64,
}

/// Relative accuracy at which an inverted time is accepted; about ten times
/// below the quadrature tolerance.
const RESOLUTION: f64 = 1e-14;

const TOL: Tolerance = Tolerance {
    abs: 1e-14,
    rel: 1e-13,
    max_intervals: 4000,
};

impl MetricProfile {
    /// Profile of the Einstein metric with constant `lambda` on `data`.
    /// For `λ = 0` the center defaults to the Ricci-flat witness.
    pub fn new(data: &AdmissibleData, lambda: &Q) -> Result<Self> {
        let xi_z0 = if lambda.is_zero() {
            ricci_flat_witness(data)?
        } else {
            z0_form(data, lambda)?
        };
        Self::with_center(data, lambda, &xi_z0)
    }

    /// Profile with an explicit center `ξ_{Z_0}` (any face point when `λ = 0`).
    pub fn with_center(data: &AdmissibleData, lambda: &Q, xi_z0: &Weight) -> Result<Self> {
        if !is_face_point(data, xi_z0) {
            return Err(Error::usage(format!(
                "{data}: center is not on the chamber face of the singular orbit"
            )));
        }
        if !alg_cond(data, lambda, xi_z0)? {
            return Err(Error::usage(format!(
                "{data}: center does not satisfy the Einstein condition for this lambda"
            )));
        }
        let xi0 = kappa_z0_form(data)?;
        let pairs = flag_f(data)
            .r_m_plus()
            .iter()
            .map(|alpha| (alpha.dot(xi_z0), alpha.dot(&xi0)))
            .collect();
        Self::from_parts(pairs, xi0.dot(&xi0), data.m(), lambda.clone())
    }

    /// Builds a profile from raw exact pairs `(a_α, b'_α = κ b_α)`.
    ///
    /// Requires `a_α ≥ 0` and `b'_α > 0` whenever `a_α = 0`. The number of
    /// vanishing `a_α` need not be `m − 1`; such profiles fail the Verdiani check.
    pub fn from_parts(pairs: Vec<(Q, Q)>, kappa_sq: Q, m: usize, lambda: Q) -> Result<Self> {
        if !kappa_sq.is_positive() {
            return Err(Error::usage("kappa^2 must be positive"));
        }
        if m == 0 {
            return Err(Error::usage("bundle rank m must be at least 1"));
        }
        if pairs.is_empty() {
            return Err(Error::usage("a profile needs at least one root pair"));
        }
        for (a, b) in &pairs {
            if a.is_negative() || (a.is_zero() && !b.is_positive()) {
                return Err(Error::usage(
                    "pairs must satisfy a >= 0, and b > 0 where a = 0",
                ));
            }
        }
        let d = pairs.iter().filter(|(a, _)| a.is_zero()).count();
        let q = Poly::product_of_linear(&pairs);
        let weight = Poly::linear(int(m as i64), -lambda.clone());
        let j = weight.mul(&q).antiderivative();
        let jt_exact = j.shift_down(d + 1);

        let (end, y_end_exact) = locate_end(&pairs, &jt_exact, m, &lambda);
        let y_end = y_end_exact.as_ref().map_or(f64::INFINITY, to_f64);
        let nodes = NonZeroUsize::new(pairs.len() / 2 + 2).expect("nonzero");
        let rule = GaussLegendre::new(nodes)
            .iter()
            .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .collect();
        let lead = pairs
            .iter()
            .filter(|(a, _)| a.is_zero())
            .map(|(_, b)| to_f64(b))
            .product();
        let factors = pairs
            .iter()
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| (to_f64(a), to_f64(b)))
            .collect();
        let kappa = to_f64(&kappa_sq).sqrt();
        let y_turn = if end == DomainEnd::Closing {
            m as f64 / to_f64(&lambda)
        } else {
            f64::INFINITY
        };
        let mut profile = MetricProfile {
            exact_pairs: pairs,
            kappa,
            kappa_sq,
            m,
            lambda_f: to_f64(&lambda),
            lambda,
            d,
            q,
            j,
            factors,
            lead,
            rule,
            end,
            y_end,
            y_turn,
            y_split: f64::INFINITY,
            t_split: f64::INFINITY,
            t_sup: f64::INFINITY,
        };
        if y_end.is_finite() {
            profile.y_split = 0.5 * y_end;
            profile.t_split = profile.lower_integral(profile.y_split.sqrt());
            profile.t_sup = profile.t_split + profile.upper_integral(0.0);
        }
        Ok(profile)
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn kappa_sq(&self) -> &Q {
        &self.kappa_sq
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> &Q {
        &self.lambda
    }

    /// Number of roots with `a_α = 0` (the order of `P` at 0).
    pub fn d(&self) -> usize {
        self.d
    }

    /// Exact `(a_α, b'_α)` with `b'_α = ⟨α, ξ_0⟩ = κ b_α`.
    pub fn exact_pairs(&self) -> &[(Q, Q)] {
        &self.exact_pairs
    }

    /// `(a_α, b_α)` as floats.
    pub fn pairs(&self) -> Vec<(f64, f64)> {
        self.exact_pairs
            .iter()
            .map(|(a, b)| (to_f64(a), to_f64(b) / self.kappa))
            .collect()
    }

    pub fn end_kind(&self) -> DomainEnd {
        self.end
    }

    /// `f_sup`; `None` when the segment is a ray.
    pub fn domain_end(&self) -> Option<f64> {
        self.y_end.is_finite().then_some(self.kappa * self.y_end)
    }

    /// `t(f_sup)`; `None` for a ray (`t` is unbounded).
    pub fn t_sup(&self) -> Option<f64> {
        self.t_sup.is_finite().then_some(self.t_sup)
    }

    /// `Q(y) = P(κy)` with exact coefficients.
    pub fn scaled_polynomial(&self) -> &Poly {
        &self.q
    }

    /// `J(y) = I(κy)/κ²` with exact coefficients.
    pub fn scaled_inner_integral(&self) -> &Poly {
        &self.j
    }

    fn qt(&self, y: f64) -> f64 {
        self.factors
            .iter()
            .fold(self.lead, |acc, &(a, b)| acc * (a + y * b))
    }

    /// `J̃(y) = J(y)/y^{d+1}`.
    fn jt(&self, y: f64) -> f64 {
        if y > self.y_turn {
            (self.y_end - y) * self.neg_kt(y)
        } else {
            self.jt_lower(y)
        }
    }

    /// `∫_0^1 (m − λyu) u^d Q̃(yu) du`.
    fn jt_lower(&self, y: f64) -> f64 {
        let d = self.d as i32;
        let m = self.m as f64;
        self.rule
            .iter()
            .map(|&(u, w)| w * (m - self.lambda_f * y * u) * u.powi(d) * self.qt(y * u))
            .sum()
    }

    /// `J̃(y)/(y* − y)` for a closing end `y*`; past `m/λ` from
    /// `J(y) = ∫_y^{y*} (λs − m) Q(s) ds`.
    fn neg_kt(&self, y: f64) -> f64 {
        if y <= self.y_turn {
            return self.jt_lower(y) / (self.y_end - y);
        }
        let d = self.d as i32;
        let m = self.m as f64;
        let width = self.y_end - y;
        let sum: f64 = self
            .rule
            .iter()
            .map(|&(u, w)| {
                let s = y + u * width;
                w * (self.lambda_f * s - m) * (s / y).powi(d) * self.qt(s)
            })
            .sum();
        sum / y
    }

    /// `P(f)`.
    pub fn p(&self, f: f64) -> f64 {
        let y = f / self.kappa;
        y.powi(self.d as i32) * self.qt(y)
    }

    /// `I(f)`.
    pub fn i(&self, f: f64) -> f64 {
        let y = f / self.kappa;
        self.kappa_sq_f() * y.powi(self.d as i32 + 1) * self.jt(y)
    }

    /// `A(f) = Σ b_α / (a_α + f b_α)`.
    pub fn a_of_f(&self, f: f64) -> f64 {
        self.pairs().iter().map(|&(a, b)| b / (a + f * b)).sum()
    }

    fn kappa_sq_f(&self) -> f64 {
        self.kappa * self.kappa
    }

    /// Integrand of `t` in `u = √y`: `√(2 Q̃(u²) / J̃(u²))`.
    fn g_lower(&self, u: f64) -> f64 {
        let y = u * u;
        (2.0 * self.qt(y) / self.jt(y)).max(0.0).sqrt()
    }

    /// Integrand of `t` in `v = √(y_end − y)`.
    fn g_upper(&self, v: f64) -> f64 {
        let y = self.y_end - v * v;
        match self.end {
            DomainEnd::Closing => (2.0 * self.qt(y) / (y * self.neg_kt(y))).max(0.0).sqrt(),
            _ => 2.0 * v * (self.qt(y) / (2.0 * y * self.jt(y))).max(0.0).sqrt(),
        }
    }

    fn lower_integral(&self, u: f64) -> f64 {
        integrate(|x| self.g_lower(x), 0.0, u, TOL).value
    }

    /// `∫_v^{v_split} g_upper`.
    fn upper_integral(&self, v: f64) -> f64 {
        let v_split = (self.y_end - self.y_split).sqrt();
        integrate(|x| self.g_upper(x), v, v_split, TOL).value
    }

    fn t_of_y(&self, y: f64) -> f64 {
        if y <= self.y_split {
            self.lower_integral(y.sqrt())
        } else {
            self.t_split + self.upper_integral((self.y_end - y).max(0.0).sqrt())
        }
    }

    /// `t(f)`, strictly increasing on `[0, f_sup)`.
    pub fn t_of_f(&self, f: f64) -> Result<f64> {
        let y = f / self.kappa;
        if !(y >= 0.0) || y >= self.y_end {
            return Err(Error::domain(format!(
                "f = {f} is outside the domain [0, {})",
                self.kappa * self.y_end
            )));
        }
        Ok(self.t_of_y(y))
    }

    /// `dt/df = √(P/2I)`.
    pub fn dt_df(&self, f: f64) -> Result<f64> {
        let y = f / self.kappa;
        if !(y > 0.0) || y >= self.y_end {
            return Err(Error::domain(format!("dt/df is undefined at f = {f}")));
        }
        Ok((self.qt(y) / (2.0 * y * self.jt(y))).max(0.0).sqrt() / self.kappa)
    }

    fn y_of_t(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) || t >= self.t_sup {
            return Err(Error::domain(format!(
                "t = {t} is outside the domain [0, {})",
                self.t_sup
            )));
        }
        if t == 0.0 {
            return Ok(0.0);
        }
        if t <= self.t_split {
            let g0 = self.g_lower(0.0);
            let hi = if self.y_split.is_finite() {
                self.y_split.sqrt()
            } else {
                let mut hi = 2.0 * t / g0;
                while self.lower_integral(hi) < t {
                    hi *= 2.0;
                    if !hi.is_finite() {
                        return Err(Error::domain(format!("t = {t} could not be bracketed")));
                    }
                }
                hi
            };
            let u = solve_monotone(
                |u| self.lower_integral(u) - t,
                |u| self.g_lower(u),
                0.0,
                hi,
                (t / g0).min(hi),
                true,
                RESOLUTION * t,
            );
            Ok(u * u)
        } else {
            let v_split = (self.y_end - self.y_split).sqrt();
            let v = solve_monotone(
                |v| self.t_split + self.upper_integral(v) - t,
                |v| -self.g_upper(v),
                0.0,
                v_split,
                0.5 * v_split,
                false,
                RESOLUTION * t,
            );
            Ok(self.y_end - v * v)
        }
    }

    /// `f(t)`, the inverse of `t(f)`.
    pub fn f_of_t(&self, t: f64) -> Result<f64> {
        Ok(self.kappa * self.y_of_t(t)?)
    }

    /// `ḟ` at `f`, from the first integral `ḟ² = 2I(f)/P(f)`.
    pub fn fdot_at(&self, f: f64) -> f64 {
        let y = f / self.kappa;
        self.kappa * (2.0 * y * self.jt(y) / self.qt(y)).max(0.0).sqrt()
    }

    /// `f̈ + ½A(f)ḟ² + λf − κm` at time `t`, with `ḟ` from the first integral
    /// and `f̈ = κm − λf − I P'/P²` (`P'` from the exact derivative polynomial).
    pub fn ode_residual(&self, t: f64) -> Result<f64> {
        let y = self.y_of_t(t)?;
        let qt = self.qt(y);
        if !(qt > 0.0) {
            return Err(Error::domain(format!(
                "P vanishes at t = {t}: the segment meets the chamber boundary"
            )));
        }
        let km = self.kappa * self.m as f64;
        let f = self.kappa * y;
        let jt = self.jt(y);
        let d = self.d as f64;
        // I P'/P² = κ J̃ (d + y Q̃'/Q̃) / Q̃, with the logarithmic derivative
        // of the product taken factor by factor (the expanded derivative
        // cancels badly near a multiple zero of P).
        let log_dq: f64 = self.factors.iter().map(|&(a, b)| b / (a + y * b)).sum();
        let fddot = km - self.lambda_f * f - self.kappa * jt * (d + y * log_dq) / qt;
        let half_a_fdot_sq = if y > 0.0 {
            let fdot_sq = 2.0 * self.kappa_sq_f() * y * jt / qt;
            0.5 * self.a_of_f(f) * fdot_sq
        } else {
            // A(f) ḟ² → 2κ d J̃(0)/Q̃(0) as f → 0.
            self.kappa * d * jt / qt
        };
        Ok(fddot + half_a_fdot_sq + self.lambda_f * f - km)
    }

    /// Residual with `ḟ`, `f̈` from five-point finite differences of `f_of_t`
    /// (step `h`); an independent check of the quadrature and inversion.
    pub fn ode_residual_fd(&self, t: f64, h: f64) -> Result<f64> {
        let f = |s: f64| self.f_of_t(s);
        let (fm2, fm1, f0, fp1, fp2) = (f(t - 2.0 * h)?, f(t - h)?, f(t)?, f(t + h)?, f(t + 2.0 * h)?);
        let fdot = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
        let fddot = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
        Ok(self.residual_at(f0, fdot, fddot))
    }

    /// `f̈ + ½A(f)ḟ² + λf − κm` for given values of `f`, `ḟ`, `f̈`.
    pub fn residual_at(&self, f: f64, fdot: f64, fddot: f64) -> f64 {
        fddot + 0.5 * self.a_of_f(f) * fdot * fdot + self.lambda_f * f - self.kappa * self.m as f64
    }

    /// Reference time scale: `t` at `y = min(1, y_end/2, 1/Σ|b'_α|/a_α)`, the
    /// scale below which `P` is close to its leading monomial.
    pub fn t_ref(&self) -> f64 {
        let spread: f64 = self.factors.iter().map(|&(a, b)| b.abs() / a).sum();
        let mut y = (0.5 * self.y_end).min(1.0);
        if spread > 0.0 {
            y = y.min(1.0 / spread);
        }
        self.t_of_y(y)
    }

    /// Smooth-closure conditions `f(0) = ḟ(0) = 0`, `f̈(0) = κ`, with `f̈(0)`
    /// fitted from `f ≈ C t²` at `t ∈ {10⁻³, 10⁻⁴, 10⁻⁵}·t_ref`.
    pub fn verdiani_check(&self) -> VerdianiReport {
        let t_ref = self.t_ref();
        let ts: Vec<f64> = [1e-3, 1e-4, 1e-5].iter().map(|s| s * t_ref).collect();
        let fs: Vec<f64> = ts
            .iter()
            .map(|&t| self.f_of_t(t).unwrap_or(f64::NAN))
            .collect();
        let num: f64 = ts.iter().zip(&fs).map(|(t, f)| f * t * t).sum();
        let den: f64 = ts.iter().map(|t| t.powi(4)).sum();
        let curvature = 2.0 * num / den;
        let relative_error = ((curvature - self.kappa) / self.kappa).abs();
        let f0 = self.f_of_t(0.0).unwrap_or(f64::NAN);
        let t_min = ts[2];
        let fdot_small = self.fdot_at(fs[2]);
        let pass = f0 == 0.0
            && relative_error < 1e-4
            && fdot_small.is_finite()
            && fdot_small <= 2.0 * self.kappa * t_min;
        VerdianiReport {
            f0,
            fdot_small,
            fitted_curvature: curvature,
            kappa: self.kappa,
            relative_error,
            d: self.d,
            m: self.m,
            pass,
        }
    }

    /// `n` samples `(t, f(t), residual)`. A finite domain is sampled at
    /// `t_sup·k/n`, `k < n`; a ray up to `t(κ·horizon)` inclusive.
    pub fn samples(&self, n: usize, horizon: f64) -> Result<Vec<Sample>> {
        if n == 0 {
            return Err(Error::usage("at least one sample is required"));
        }
        let ts: Vec<f64> = if self.t_sup.is_finite() {
            (0..n).map(|k| self.t_sup * k as f64 / n as f64).collect()
        } else {
            if !(horizon > 0.0) {
                return Err(Error::usage("the sampling horizon must be positive"));
            }
            let t_max = self.t_of_y(horizon);
            let steps = (n - 1).max(1) as f64;
            (0..n).map(|k| t_max * k as f64 / steps).collect()
        };
        ts.into_iter()
            .map(|t| {
                Ok(Sample {
                    t,
                    f: self.f_of_t(t)?,
                    residual: self.ode_residual(t)?,
                })
            })
            .collect()
    }
}

/// Exact location of the domain end in the scaled variable.
fn locate_end(pairs: &[(Q, Q)], jt: &Poly, m: usize, lambda: &Q) -> (DomainEnd, Option<Q>) {
    let exit = pairs
        .iter()
        .filter(|(_, b)| b.is_negative())
        .map(|(a, b)| -a / b)
        .min();
    if !lambda.is_positive() {
        return match exit {
            Some(y) => (DomainEnd::ChamberExit, Some(y)),
            None => (DomainEnd::Infinite, None),
        };
    }
    // J increases on (0, m/λ) and strictly decreases afterwards while Q > 0,
    // so it has at most one zero before the chamber exit.
    let turn = int(m as i64) / lambda;
    if let Some(y) = &exit {
        if *y <= turn || jt.sign_at(y).is_gt() {
            return (DomainEnd::ChamberExit, exit);
        }
    }
    let hi = match &exit {
        Some(y) => y.clone(),
        None => {
            let mut hi = &turn * int(2);
            while jt.sign_at(&hi).is_gt() {
                hi *= int(2);
            }
            hi
        }
    };
    if jt.sign_at(&hi).is_eq() {
        return (DomainEnd::Closing, Some(hi));
    }
    let width = &hi / Q::from_integer(num_bigint::BigInt::from(1u64) << 64);
    let (lo, hi) = bisect_root(jt, &turn, &hi, &width);
    (DomainEnd::Closing, Some((lo + hi) / int(2)))
}

/// Root of a monotone `F` on `[lo, hi]` (`F(lo)` and `F(hi)` of opposite
/// signs), by Newton steps with derivative `dF` that fall back to bisection
/// whenever a step leaves the current bracket. Stops once `|F| ≤ resolution`
/// or the bracket is exhausted.
fn solve_monotone(
    value: impl Fn(f64) -> f64,
    derivative: impl Fn(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    start: f64,
    increasing: bool,
    resolution: f64,
) -> f64 {
    let mut x = if start > lo && start < hi {
        start
    } else {
        0.5 * (lo + hi)
    };
    for _ in 0..200 {
        let fx = value(x);
        if fx.abs() <= resolution {
            return x;
        }
        if (fx < 0.0) == increasing {
            lo = x;
        } else {
            hi = x;
        }
        let dfx = derivative(x);
        let newton = x - fx / dfx;
        let next = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE)
            || hi - lo <= 4.0 * f64::EPSILON * hi.abs()
        {
            return next;
        }
        x = next;
    }
    x
}
