//! Fixed-step fourth-order Runge-Kutta integration of the relaxation
//! equation `dW/dt = (M(t) − W)/k`.
//!
//! The equation is a plain linear relaxation, so a deterministic fixed step
//! is preferred over adaptive stepping: runs are bit-reproducible. Steps
//! larger than `k/2` are rejected; below that bound the RK4 amplification
//! factor of the homogeneous mode stays in (0, 1), so the relaxation is
//! resolved and never overshoots.

use super::{ModelError, MoneySupplySchedule, ScenarioParams, Trajectory, TrajectorySample};

/// A conservative default step: one hundredth of the shortest timescale in
/// the scenario (the relaxation time `k`, and `1/|q|` for exponential
/// supply, whose forcing must be resolved as well).
pub fn default_step(schedule: &MoneySupplySchedule, params: &ScenarioParams) -> f64 {
    let mut scale = params.k();
    if let MoneySupplySchedule::Exponential { growth, .. } = schedule {
        if *growth != 0.0 {
            scale = scale.min(1.0 / growth.abs());
        }
    }
    scale / 100.0
}

fn money_at(
    schedule: &MoneySupplySchedule,
    t: f64,
    sales: f64,
) -> Result<f64, ModelError> {
    if schedule.is_output_feedback() {
        schedule.eval(t, Some(sales))
    } else {
        schedule.eval(t, None)
    }
}

/// Integrates the relaxation equation from `W(0) = W0` to `t_end` with a
/// uniform step no larger than `dt`, and derives the price level, output,
/// velocity and finite-difference inflation rate at every node.
///
/// Errors: `dt` outside `(0, min(t_end, k/2)]`; a tabulated schedule whose
/// knots do not cover `[0, t_end]`; the sales value driven non-positive
/// (reported with the first offending time).
pub fn integrate(
    schedule: &MoneySupplySchedule,
    params: &ScenarioParams,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory, ModelError> {
    schedule.validate()?;
    let k = params.k();
    if !(t_end > 0.0) || !t_end.is_finite() {
        return Err(ModelError::InvalidParameter {
            name: "t_end",
            reason: "must be a positive finite number".to_string(),
        });
    }
    if !(dt > 0.0) || !dt.is_finite() || dt > t_end {
        return Err(ModelError::InvalidParameter {
            name: "dt",
            reason: "must satisfy 0 < dt <= t_end".to_string(),
        });
    }
    if dt > k / 2.0 {
        return Err(ModelError::StepTooLarge { dt, k });
    }

    // Uniform grid: dt is treated as an upper bound so the final node lands
    // exactly on t_end.
    let n_steps = ((t_end / dt) - 1e-9).ceil().max(1.0) as usize;
    let h = t_end / n_steps as f64;

    let mut w = params.initial_sales();
    if !(w > 0.0) {
        return Err(ModelError::NonPositiveSales { t: 0.0 });
    }

    let mut times = Vec::with_capacity(n_steps + 1);
    let mut sales = Vec::with_capacity(n_steps + 1);
    times.push(0.0);
    sales.push(w);

    let deriv = |t: f64, w: f64| -> Result<f64, ModelError> {
        if !(w > 0.0) {
            return Err(ModelError::NonPositiveSales { t });
        }
        Ok((money_at(schedule, t, w)? - w) / k)
    };

    for i in 0..n_steps {
        let t = i as f64 * h;
        let k1 = deriv(t, w)?;
        let k2 = deriv(t + h / 2.0, w + h / 2.0 * k1)?;
        let k3 = deriv(t + h / 2.0, w + h / 2.0 * k2)?;
        let k4 = deriv(t + h, w + h * k3)?;
        w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let t_next = (i + 1) as f64 * h;
        if !(w > 0.0) {
            return Err(ModelError::NonPositiveSales { t: t_next });
        }
        times.push(t_next);
        sales.push(w);
    }

    let n = times.len();
    let mut log_price = Vec::with_capacity(n);
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        let t = times[i];
        let output = params.output_at(t);
        let price = sales[i] / output;
        log_price.push(price.ln());
        let money = money_at(schedule, t, sales[i])?;
        samples.push(TrajectorySample {
            t,
            money,
            sales: sales[i],
            price,
            output,
            inflation: f64::NAN, // filled below
            velocity: sales[i] / money,
        });
    }

    // d(ln P)/dt: centered in the interior, second-order one-sided at the
    // endpoints (first-order when only two nodes exist).
    for i in 0..n {
        samples[i].inflation = if n == 2 {
            (log_price[1] - log_price[0]) / h
        } else if i == 0 {
            (-3.0 * log_price[0] + 4.0 * log_price[1] - log_price[2]) / (2.0 * h)
        } else if i == n - 1 {
            (3.0 * log_price[n - 1] - 4.0 * log_price[n - 2] + log_price[n - 3]) / (2.0 * h)
        } else {
            (log_price[i + 1] - log_price[i - 1]) / (2.0 * h)
        };
    }

    Ok(Trajectory::new(samples))
}
