//! Numerical properties of the integrator against the closed forms: the two
//! routes are implemented independently, so agreement checks both.

use qex::model::{
    analytic_inflation, analytic_sales, integrate, price_exponential, sales_exponential,
    MoneySupplySchedule, ScenarioParams,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn step_for(k: f64, growth: Option<f64>) -> f64 {
    let mut scale = k;
    if let Some(q) = growth {
        if q != 0.0 {
            scale = scale.min(1.0 / q.abs());
        }
    }
    scale / 100.0
}

/// 100 random draws per schedule: the integrator must match the closed form
/// at every grid node to 1e-6 relative.
#[test]
fn integrator_matches_closed_forms_on_random_scenarios() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let k = rng.random_range(0.1f64..10.0);
        let g = rng.random_range(-0.2f64..0.2);
        let q = rng.random_range(-2.0f64..1.0);
        let m0 = rng.random_range(1.0f64..1000.0);
        let v0 = rng.random_range(1.0f64..1000.0);
        let w0 = rng.random_range(1.0f64..1000.0);
        let params = ScenarioParams::new(k, w0, 10.0, g).unwrap();
        let t_end = 5.0 * k;

        let cases = [
            (MoneySupplySchedule::Constant { level: m0 }, None),
            (MoneySupplySchedule::Linear { rate: v0 }, None),
            (
                MoneySupplySchedule::Exponential {
                    initial: m0,
                    growth: q,
                },
                Some(q),
            ),
        ];
        for (schedule, growth) in cases {
            let dt = step_for(k, growth);
            let traj = integrate(&schedule, &params, t_end, dt).unwrap();
            for s in traj.samples() {
                let exact = analytic_sales(&schedule, &params, s.t).unwrap();
                worst = worst.max(rel_err(s.sales, exact));
            }
        }
    }
    assert!(worst <= 1e-6, "worst relative error {worst:.3e} exceeds 1e-6");
}

/// Constant supply: the sales value is strictly monotone between W0 and M0
/// and never crosses the carrying capacity.
#[test]
fn constant_supply_relaxation_is_monotone_without_overshoot() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..50 {
        let k = rng.random_range(0.1f64..10.0);
        let m0 = rng.random_range(1.0f64..1000.0);
        let mut w0 = rng.random_range(1.0f64..1000.0);
        if (w0 - m0).abs() < 1e-6 {
            w0 += 1.0;
        }
        let params = ScenarioParams::new(k, w0, 10.0, 0.0).unwrap();
        let schedule = MoneySupplySchedule::Constant { level: m0 };
        let traj = integrate(&schedule, &params, 4.0 * k, k / 2.0).unwrap();
        let side = (w0 - m0).signum();
        let mut prev_gap = f64::INFINITY;
        for s in traj.samples() {
            let gap = (s.sales - m0) * side;
            assert!(gap > 0.0, "overshot the carrying capacity at t={}", s.t);
            assert!(gap < prev_gap, "relaxation not monotone at t={}", s.t);
            prev_gap = gap;
        }
    }
}

/// Exponential supply above the threshold settles on c = q - g within 1e-4
/// by T = 50·max(k, 1/|q + 1/k|).
#[test]
fn exponential_inflation_reaches_the_balanced_path() {
    for (k, q, g) in [(1.0, 0.1, 0.03), (0.5, 0.4, -0.1), (2.0, -0.3, 0.05)] {
        let params = ScenarioParams::new(k, 50.0, 10.0, g).unwrap();
        let schedule = MoneySupplySchedule::Exponential {
            initial: 100.0,
            growth: q,
        };
        let horizon = 50.0 * k.max(1.0 / (q + 1.0 / k).abs());
        let traj = integrate(&schedule, &params, horizon, step_for(k, Some(q))).unwrap();
        let c = traj.last().inflation;
        assert!(
            (c - (q - g)).abs() <= 1e-4,
            "c({horizon}) = {c}, expected {} (k={k} q={q} g={g})",
            q - g
        );
    }
}

/// Velocity asymptotes: 1/(1+kq) for exponential supply above threshold,
/// 1 for the other schedules.
#[test]
fn velocity_asymptotes() {
    let params = ScenarioParams::new(1.0, 50.0, 10.0, 0.0).unwrap();

    let exp = MoneySupplySchedule::Exponential {
        initial: 100.0,
        growth: 0.1,
    };
    let traj = integrate(&exp, &params, 50.0, 0.01).unwrap();
    assert!((traj.last().velocity - 1.0 / 1.1).abs() <= 1e-4);

    let constant = MoneySupplySchedule::Constant { level: 100.0 };
    let traj = integrate(&constant, &params, 30.0, 0.01).unwrap();
    assert!((traj.last().velocity - 1.0).abs() <= 1e-3);

    // Linear supply converges like k/t, so it needs a long horizon.
    let params2 = ScenarioParams::new(2.0, 5.0, 10.0, 0.0).unwrap();
    let linear = MoneySupplySchedule::Linear { rate: 10.0 };
    let traj = integrate(&linear, &params2, 4000.0, 0.02).unwrap();
    assert!((traj.last().velocity - 1.0).abs() <= 1e-3);

    let feedback = MoneySupplySchedule::OutputPower { exponent: 0.5 };
    let params3 = ScenarioParams::new(1.0, 4.0, 10.0, 0.0).unwrap();
    let traj = integrate(&feedback, &params3, 40.0, 0.01).unwrap();
    assert!((traj.last().velocity - 1.0).abs() <= 1e-3);
}

/// The trajectory's finite-difference inflation converges to the analytic
/// rate at second order under grid refinement.
#[test]
fn finite_difference_inflation_is_second_order() {
    let params = ScenarioParams::new(1.0, 50.0, 10.0, 0.05).unwrap();
    let schedule = MoneySupplySchedule::Exponential {
        initial: 100.0,
        growth: 0.3,
    };
    let max_err = |h: f64| -> f64 {
        let traj = integrate(&schedule, &params, 2.0, h).unwrap();
        traj.samples()
            .iter()
            .map(|s| {
                let exact = analytic_inflation(&schedule, &params, s.t).unwrap();
                (s.inflation - exact).abs()
            })
            .
            fold(0.0f64, f64::max)
    };
    let coarse = max_err(0.02);
    let fine = max_err(0.01);
    let order = (coarse / fine).log2();
    assert!(
        order >= 1.9,
        "measured order {order:.3} (errors {coarse:.3e} -> {fine:.3e})"
    );
}

/// The inflation rate used for the exponential schedule is the symbolic
/// derivative of its price path: it must match centered finite differences
/// of the price path, and the explicit derived expression
/// `c = q - g + (1+kq)(M0 - W0 - kqW0) / (k[(e^((q+1/k)t) - 1)M0 + W0 + kqW0])`.
/// The inner exponent carries the money growth rate; swapping in the output
/// growth rate is a plausible slip that visibly breaks the match.
#[test]
fn exponential_inflation_reconciles_symbolic_and_finite_difference_routes() {
    let (k, q, g, m0, w0, y0) = (1.0f64, 0.25f64, 0.07f64, 100.0f64, 50.0f64, 10.0f64);
    let params = ScenarioParams::new(k, w0, y0, g).unwrap();
    let schedule = MoneySupplySchedule::Exponential {
        initial: m0,
        growth: q,
    };

    let derived = |rate: f64, t: f64| -> f64 {
        let numer = (1.0 + k * q) * (m0 - w0 - k * q * w0);
        let denom = k * ((((rate + 1.0 / k) * t).exp() - 1.0) * m0 + w0 + k * q * w0);
        q - g + numer / denom
    };

    let h = 1e-5;
    for t in [0.1, 0.5, 1.0, 3.0, 8.0] {
        let fd = (price_exponential(m0, q, &params, t + h).ln()
            - price_exponential(m0, q, &params, t - h).ln())
            / (2.0 * h);
        let sym = derived(q, t);
        let identity = analytic_inflation(&schedule, &params, t).unwrap();
        assert!((sym - fd).abs() <= 1e-8, "t={t}: symbolic {sym} vs fd {fd}");
        assert!(
            (identity - sym).abs() <= 1e-10,
            "t={t}: identity {identity} vs symbolic {sym}"
        );
        // Both variants share the q - g asymptote, so the swap only shows
        // during the transient.
        if t <= 3.0 {
            let swapped = derived(g, t);
            assert!(
                (swapped - fd).abs() > 5e-3,
                "t={t}: the swapped-exponent variant should not match"
            );
        }
    }
}

/// The stable evaluation of the exponential solution stays accurate across
/// the resonance threshold, where the textbook form divides by 1 + kq.
#[test]
fn exponential_solution_is_stable_near_resonance() {
    let k = 2.0;
    let params = ScenarioParams::new(k, 30.0, 10.0, 0.0).unwrap();
    for offset in [-1e-3, -1e-7, 0.0, 1e-7, 1e-3] {
        let q = -1.0 / k + offset;
        let schedule = MoneySupplySchedule::Exponential {
            initial: 100.0,
            growth: q,
        };
        let traj = integrate(&schedule, &params, 10.0, 0.01).unwrap();
        for s in traj.samples().iter().step_by(100) {
            let exact = sales_exponential(100.0, q, &params, s.t);
            assert!(
                rel_err(s.sales, exact) <= 1e-7,
                "q={q}: rk4 {} vs closed form {exact} at t={}",
                s.sales,
                s.t
            );
        }
    }
}
