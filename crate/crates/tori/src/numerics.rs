//! Scalar quadrature, a fixed-step RK4 integrator, and monotone inversion.
//!
//! These three routines carry all the numerical weight elsewhere in the
//! crate: the isothermal coordinate on a torus of revolution is a
//! quadrature, its inverse is a monotone root solve, and the phase
//! correction of a horizontal lift is a one-dimensional ODE. Tolerances
//! are absolute throughout.

use crate::error::{Error, Result};

/// Recursion limit for adaptive Simpson bisection. 60 levels take the
/// interval width below 1e-18 of the original, so hitting the cap means
/// the integrand, not the budget, is the problem.
pub const DEFAULT_MAX_DEPTH: u32 = 60;

/// Default absolute tolerance used by callers inside the crate.
pub const DEFAULT_QUAD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    /// Sum of the per-interval Richardson error estimates; an upper
    /// indication, not a bound certificate.
    pub error_estimate: f64,
    pub evaluations: u64,
}

struct QuadCtx<'a, F: Fn(f64) -> f64> {
    f: &'a F,
    evaluations: u64,
}

impl<F: Fn(f64) -> f64> QuadCtx<'_, F> {
    fn eval(&mut self, x: f64) -> Result<f64> {
        self.evaluations += 1;
        let v = (self.f)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteEvaluation { x })
        }
    }
}

fn simpson(fa: f64, fm: f64, fb: f64, width: f64) -> f64 {
    width / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    ctx: &mut QuadCtx<'_, F>,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<(f64, f64)> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = ctx.eval(lm)?;
    let frm = ctx.eval(rm)?;
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    // Factor 15 comes from the O(h^4) convergence of Simpson's rule:
    // the halved estimate is ~16x closer, so delta/15 tracks its error.
    if delta.abs() <= 15.0 * tol {
        return Ok((left + right + delta / 15.0, delta.abs() / 15.0));
    }
    if depth == 0 {
        return Err(Error::QuadratureDepthExceeded {
            lo: a,
            hi: b,
            depth: DEFAULT_MAX_DEPTH,
        });
    }
    let (lv, le) = adapt(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
    let (rv, re) = adapt(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
    Ok((lv + rv, le + re))
}

/// Adaptive Simpson quadrature of `f` over `[lo, hi]` to absolute
/// tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadratureResult> {
    integrate_with_depth(f, lo, hi, tol, DEFAULT_MAX_DEPTH)
}

/// As [`integrate`] with an explicit recursion cap.
pub fn integrate_with_depth<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_depth: u32,
) -> Result<QuadratureResult> {
    if !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain(format!("quadrature limits must be finite, got [{lo}, {hi}]")));
    }
    if lo > hi {
        return Err(Error::domain(format!("quadrature limits out of order: {lo} > {hi}")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::domain(format!("quadrature tolerance must be positive, got {tol}")));
    }
    let mut ctx = QuadCtx { f: &f, evaluations: 0 };
    if lo == hi {
        ctx.eval(lo)?;
        return Ok(QuadratureResult { value: 0.0, error_estimate: 0.0, evaluations: ctx.evaluations });
    }
    let fa = ctx.eval(lo)?;
    let fm = ctx.eval(0.5 * (lo + hi))?;
    let fb = ctx.eval(hi)?;
    let whole = simpson(fa, fm, fb, hi - lo);
    let (value, error_estimate) = adapt(&mut ctx, lo, hi, fa, fm, fb, whole, tol, max_depth)?;
    Ok(QuadratureResult { value, error_estimate, evaluations: ctx.evaluations })
}

/// Dense output of [`solve_ivp`]: `states[k]` is the state at `times[k]`,
/// with `times` strictly increasing from `t0` to `t1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl Trajectory {
    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory holds at least the initial state")
    }
}

/// Classical fixed-step RK4 on `y' = field(t, y)` from `t0` to `t1`.
///
/// Returns `steps + 1` samples including both endpoints. Any non-finite
/// component aborts with [`Error::OdeDiverged`].
pub fn solve_ivp<F>(field: F, y0: &[f64], t0: f64, t1: f64, steps: usize) -> Result<Trajectory>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    if steps == 0 {
        return Err(Error::domain("ode step count must be at least 1"));
    }
    if !t0.is_finite() || !t1.is_finite() || t1 <= t0 {
        return Err(Error::domain(format!("ode time span must satisfy t0 < t1, got [{t0}, {t1}]")));
    }
    if y0.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("ode initial state must be finite"));
    }
    let dim = y0.len();
    let h = (t1 - t0) / steps as f64;
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    times.push(t0);
    states.push(y0.to_vec());

    let eval = |t: f64, y: &[f64]| -> Result<Vec<f64>> {
        let dy = field(t, y);
        if dy.len() != dim {
            return Err(Error::domain(format!(
                "ode field returned dimension {} for state dimension {}",
                dy.len(),
                dim
            )));
        }
        Ok(dy)
    };

    let mut y = y0.to_vec();
    for k in 0..steps {
        let t = t0 + k as f64 * h;
        let k1 = eval(t, &y)?;
        let y2: Vec<f64> = y.iter().zip(&k1).map(|(a, b)| a + 0.5 * h * b).collect();
        let k2 = eval(t + 0.5 * h, &y2)?;
        let y3: Vec<f64> = y.iter().zip(&k2).map(|(a, b)| a + 0.5 * h * b).collect();
        let k3 = eval(t + 0.5 * h, &y3)?;
        let y4: Vec<f64> = y.iter().zip(&k3).map(|(a, b)| a + h * b).collect();
        let k4 = eval(t + h, &y4)?;
        for i in 0..dim {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t_next = if k + 1 == steps { t1 } else { t0 + (k + 1) as f64 * h };
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::OdeDiverged { t: t_next });
        }
        times.push(t_next);
        states.push(y.clone());
    }
    Ok(Trajectory { times, states })
}

const MAX_ROOT_ITERATIONS: usize = 200;

/// Solve `f(x) = target` for strictly increasing `f` on `[lo, hi]`.
///
/// Illinois-damped false position with a bisection fallback; terminates
/// on the function-value criterion `|f(x) - target| <= tol`, so the
/// caller controls accuracy in the range, not the argument.
pub fn invert_monotone<F>(f: F, target: f64, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::domain(format!("inversion bracket must satisfy lo < hi, got [{lo}, {hi}]")));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::domain(format!("inversion tolerance must be positive, got {tol}")));
    }
    let f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if target < f_lo || target > f_hi {
        return Err(Error::TargetOutsideBracket { target, f_lo, f_hi });
    }
    if (f_lo - target).abs() <= tol {
        return Ok(lo);
    }
    if (f_hi - target).abs() <= tol {
        return Ok(hi);
    }

    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f_lo - target, f_hi - target);
    let mut last_side = 0i8;
    let mut best = (a, fa.abs());
    for _ in 0..MAX_ROOT_ITERATIONS {
        let x = {
            let secant = b - fb * (b - a) / (fb - fa);
            if secant.is_finite() && secant > a && secant < b {
                secant
            } else {
                0.5 * (a + b)
            }
        };
        let fx = f(x)? - target;
        if fx.abs() <= tol {
            return Ok(x);
        }
        if fx.abs() < best.1 {
            best = (x, fx.abs());
        }
        if fx < 0.0 {
            a = x;
            fa = fx;
            if last_side == -1 {
                fb *= 0.5;
            }
            last_side = -1;
        } else {
            b = x;
            fb = fx;
            if last_side == 1 {
                fa *= 0.5;
            }
            last_side = 1;
        }
        if b - a <= f64::EPSILON * a.abs().max(b.abs()).max(1.0) {
            break;
        }
    }
    Err(Error::RootNoConvergence { residual: best.1, tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const TWO_PI: f64 = 2.0 * PI;

    #[test]
    fn integrates_cosine_quarter_period() {
        let r = integrate(f64::cos, 0.0, PI / 2.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "got {}", r.value);
        assert!(r.evaluations >= 1);
    }

    #[test]
    fn poisson_kernel_at_sqrt2_integrates_to_two_pi() {
        let a = 2.0_f64.sqrt();
        let r = integrate(|x| 1.0 / (a + x.cos()), 0.0, TWO_PI, 1e-12).unwrap();
        assert!((r.value - TWO_PI).abs() < 1e-10, "got {}", r.value);
    }

    // Independent oracle: the composite trapezoid rule converges
    // spectrally on smooth periodic integrands, so 1e7 panels pin the
    // value to machine precision without sharing any code with the
    // adaptive routine.
    #[test]
    fn poisson_kernel_matches_trapezoid_oracle_and_closed_form() {
        let f = |x: f64| 1.0 / (2.0 + x.cos());
        let n = 10_000_000u64;
        let h = TWO_PI / n as f64;
        let mut acc = 0.5 * (f(0.0) + f(TWO_PI));
        for k in 1..n {
            acc += f(k as f64 * h);
        }
        let trapezoid = acc * h;
        let closed_form = TWO_PI / 3.0f64.sqrt();
        assert!((trapezoid - closed_form).abs() < 1e-12);

        let r = integrate(f, 0.0, TWO_PI, 1e-12).unwrap();
        assert!((r.value - trapezoid).abs() < 1e-10, "got {}", r.value);
        assert!((r.value - closed_form).abs() <= r.error_estimate.max(1e-10));
    }

    #[test]
    fn zero_width_interval_is_zero() {
        let r = integrate(|x| x * x, 3.0, 3.0, 1e-12).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.evaluations >= 1);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let err = integrate(|x| 1.0 / x, -1.0, 1.0, 1e-9).unwrap_err();
        assert!(matches!(err, Error::NonFiniteEvaluation { .. }), "got {err:?}");
    }

    #[test]
    fn impossible_tolerance_exhausts_depth() {
        // The cusp of sqrt keeps the refinement error a fixed fraction
        // of the leftmost cell at every depth, so an absurd tolerance
        // must run into the depth cap instead of terminating.
        let err = integrate(f64::sqrt, 0.0, 1.0, 1e-300).unwrap_err();
        assert!(matches!(err, Error::QuadratureDepthExceeded { .. }), "got {err:?}");
    }

    #[test]
    fn rejects_reversed_limits_and_bad_tolerance() {
        assert!(integrate(f64::sin, 1.0, 0.0, 1e-9).is_err());
        assert!(integrate(f64::sin, 0.0, 1.0, 0.0).is_err());
        assert!(integrate(f64::sin, 0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn rk4_exponential_growth() {
        let traj = solve_ivp(|_, y| vec![y[0]], &[1.0], 0.0, 1.0, 100).unwrap();
        let got = traj.final_state()[0];
        assert!((got - 1.0f64.exp()).abs() < 1e-8, "got {got}");
        assert_eq!(traj.times.len(), 101);
        assert_eq!(*traj.times.last().unwrap(), 1.0);
    }

    #[test]
    fn rk4_rotation_half_turn() {
        let traj = solve_ivp(|_, y| vec![-y[1], y[0]], &[1.0, 0.0], 0.0, PI, 1000).unwrap();
        let s = traj.final_state();
        assert!((s[0] + 1.0).abs() < 1e-10 && s[1].abs() < 1e-10, "got {s:?}");
    }

    #[test]
    fn rk4_detects_blowup() {
        // y' = y^2 from y(0)=2 has a pole at t = 1/2.
        let err = solve_ivp(|_, y| vec![y[0] * y[0]], &[2.0], 0.0, 1.0, 40).unwrap_err();
        assert!(matches!(err, Error::OdeDiverged { .. }), "got {err:?}");
    }

    #[test]
    fn rk4_validates_inputs() {
        assert!(solve_ivp(|_, y| vec![y[0]], &[1.0], 0.0, 1.0, 0).is_err());
        assert!(solve_ivp(|_, y| vec![y[0]], &[1.0], 1.0, 1.0, 4).is_err());
        assert!(solve_ivp(|_, _| vec![1.0, 2.0], &[1.0], 0.0, 1.0, 4).is_err());
    }

    #[test]
    fn inverts_cube() {
        let x = invert_monotone(|x| Ok(x * x * x), 10.0, 0.0, 3.0, 1e-12).unwrap();
        assert!((x - 10.0f64.cbrt()).abs() < 1e-10, "got {x}");
    }

    #[test]
    fn bracket_violation_is_reported() {
        let err = invert_monotone(Ok, 5.0, 0.0, 1.0, 1e-12).unwrap_err();
        assert!(matches!(err, Error::TargetOutsideBracket { .. }), "got {err:?}");
    }

    #[test]
    fn endpoint_targets_return_endpoints() {
        let x = invert_monotone(|x| Ok(x.exp()), 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert_eq!(x, 0.0);
    }
}
