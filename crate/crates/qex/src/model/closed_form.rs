//! Closed-form solutions of `k·dW/dt = M(t) − W` for the three parametric
//! money-supply schedules, their price paths, and the exact inflation rate.
//!
//! The exponential solution is evaluated through `expm1(x)/x`, which keeps it
//! numerically stable through the resonance point `k·q = −1` where the
//! textbook form divides by `1 + kq`; the resonance solution
//! `W(t) = e^(−t/k)·(W0 + M0·t/k)` is the continuous limit of that family and
//! falls out of the same expression.

use super::{integrate, ModelError, MoneySupplySchedule, ScenarioParams};

/// `expm1(x)/x`, continuously extended to 1 at `x = 0`.
fn exprel(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.exp_m1() / x
    }
}

/// Sales value under constant supply `M(t) = M0`:
/// `W(t) = M0 + (W0 − M0)·e^(−t/k)`.
pub fn sales_constant(level: f64, params: &ScenarioParams, t: f64) -> f64 {
    let w0 = params.initial_sales();
    level + (w0 - level) * (-t / params.k()).exp()
}

/// Sales value under linear supply `M(t) = V0·t`:
/// `W(t) = V0·(t − k) + (k·V0 + W0)·e^(−t/k)`.
pub fn sales_linear(rate: f64, params: &ScenarioParams, t: f64) -> f64 {
    let k = params.k();
    let w0 = params.initial_sales();
    rate * (t - k) + (k * rate + w0) * (-t / k).exp()
}

/// Sales value under exponential supply `M(t) = M0·e^(q t)`.
///
/// Algebraically this is
/// `W(t) = [M0·e^(q t) + e^(−t/k)·(W0 + k·q·W0 − M0)] / (1 + k·q)`,
/// rewritten as
/// `W(t) = e^(−t/k)·(W0 + (M0·t/k)·exprel((q + 1/k)·t))`
/// so that the resonance point `k·q = −1` needs no special case. The direct
/// form is used once the exponent argument is large enough that `expm1`
/// could overflow while the division by `1 + kq` is well conditioned.
pub fn sales_exponential(initial: f64, growth: f64, params: &ScenarioParams, t: f64) -> f64 {
    let k = params.k();
    let w0 = params.initial_sales();
    let x = (growth + 1.0 / k) * t;
    if x.abs() < 1.0 {
        (-t / k).exp() * (w0 + (initial * t / k) * exprel(x))
    } else {
        let one_plus_kq = 1.0 + k * growth;
        ((growth * t).exp() * initial + (-t / k).exp() * (w0 * one_plus_kq - initial))
            / one_plus_kq
    }
}

/// Price path under constant supply, `P(t) = W(t)/Y(t)`.
pub fn price_constant(level: f64, params: &ScenarioParams, t: f64) -> f64 {
    sales_constant(level, params, t) / params.output_at(t)
}

/// Price path under linear supply.
pub fn price_linear(rate: f64, params: &ScenarioParams, t: f64) -> f64 {
    sales_linear(rate, params, t) / params.output_at(t)
}

/// Price path under exponential supply.
pub fn price_exponential(initial: f64, growth: f64, params: &ScenarioParams, t: f64) -> f64 {
    sales_exponential(initial, growth, params, t) / params.output_at(t)
}

/// Closed-form sales value for the schedules that have one; `None` for the
/// output-feedback and tabulated forms.
pub fn analytic_sales(
    schedule: &MoneySupplySchedule,
    params: &ScenarioParams,
    t: f64,
) -> Option<f64> {
    match schedule {
        MoneySupplySchedule::Constant { level } => Some(sales_constant(*level, params, t)),
        MoneySupplySchedule::Linear { rate } => Some(sales_linear(*rate, params, t)),
        MoneySupplySchedule::Exponential { initial, growth } => {
            Some(sales_exponential(*initial, *growth, params, t))
        }
        _ => None,
    }
}

/// Exact inflation rate for the closed-form schedules.
///
/// Because `W` solves the relaxation equation exactly, the logarithmic price
/// derivative is
/// `c(t) = d(ln P)/dt = Ẇ/W − g = (M(t) − W(t)) / (k·W(t)) − g`,
/// which is the symbolic derivative of the printed price paths. Returns
/// `None` when the schedule has no closed form. The value is infinite if
/// `W(t) = 0` (possible only at `t = 0` with `W0 = 0`).
pub fn analytic_inflation(
    schedule: &MoneySupplySchedule,
    params: &ScenarioParams,
    t: f64,
) -> Option<f64> {
    let w = analytic_sales(schedule, params, t)?;
    let m = schedule
        .eval(t, None)
        .expect("closed-form schedules never need the sales value");
    Some((m - w) / (params.k() * w) - params.output_growth())
}

/// Inflation rate `c(t) = d(ln P)/dt` on an increasing time grid.
///
/// The closed-form schedules are evaluated exactly; the output-feedback and
/// tabulated schedules are integrated to the end of the grid and the rate is
/// read off the trajectory's finite differences by linear interpolation.
pub fn inflation_path(
    schedule: &MoneySupplySchedule,
    params: &ScenarioParams,
    t_grid: &[f64],
) -> Result<Vec<f64>, ModelError> {
    let bad = |reason: &str| ModelError::InvalidParameter {
        name: "t_grid",
        reason: reason.to_string(),
    };
    if t_grid.is_empty() {
        return Err(bad("must be non-empty"));
    }
    if t_grid.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(bad("times must be finite and non-negative"));
    }
    if t_grid.windows(2).any(|p| p[1] <= p[0]) {
        return Err(bad("times must be strictly increasing"));
    }

    if analytic_sales(schedule, params, 0.0).is_some() {
        let mut out = Vec::with_capacity(t_grid.len());
        for &t in t_grid {
            let c = analytic_inflation(schedule, params, t).expect("closed form exists");
            if !c.is_finite() {
                return Err(ModelError::NonPositiveSales { t });
            }
            out.push(c);
        }
        return Ok(out);
    }

    // No closed form: integrate over the grid span and interpolate the
    // finite-difference inflation onto the requested times.
    let t_end = *t_grid.last().expect("non-empty");
    if t_end <= 0.0 {
        return Err(bad("last grid time must be positive for integration"));
    }
    let dt = super::default_step(schedule, params);
    let traj = integrate(schedule, params, t_end, dt)?;
    let samples = traj.samples();
    let h = samples[1].t - samples[0].t;
    let last = samples.len() - 1;
    let out = t_grid
        .iter()
        .map(|&t| {
            let pos = (t / h).min(last as f64);
            let lo = (pos.floor() as usize).min(last - 1);
            let frac = pos - lo as f64;
            samples[lo].inflation * (1.0 - frac) + samples[lo + 1].inflation * frac
        })
        .collect();
    Ok(out)
}
