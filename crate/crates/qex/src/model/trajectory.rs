use std::io;

use crate::fmt::sig_digits;

/// One sampled state of a simulated scenario.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    /// Money supply `M(t)`.
    pub money: f64,
    /// Sales value `W(t) = P·Y`.
    pub sales: f64,
    /// Price level `P(t) = W/Y`.
    pub price: f64,
    /// Real output `Y(t) = Y0·e^(g t)`.
    pub output: f64,
    /// Inflation rate `c(t) = d(ln P)/dt`, by centered finite differences
    /// (second-order one-sided at the endpoints).
    pub inflation: f64,
    /// Velocity of money `v(t) = W/M`; infinite where `M = 0`.
    pub velocity: f64,
}

/// An integrated scenario: samples on a uniform time grid, immutable once
/// built.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    samples: Vec<TrajectorySample>,
}

impl Trajectory {
    pub(crate) fn new(samples: Vec<TrajectorySample>) -> Self {
        debug_assert!(samples.len() >= 2);
        Self { samples }
    }

    pub fn samples(&self) -> &[TrajectorySample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn first(&self) -> &TrajectorySample {
        &self.samples[0]
    }

    pub fn last(&self) -> &TrajectorySample {
        &self.samples[self.samples.len() - 1]
    }

    /// Writes the trajectory as CSV with header `t,M,W,P,Y,c,v`, one row per
    /// sample, 12 significant digits.
    pub fn write_csv<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,M,W,P,Y,c,v")?;
        for s in &self.samples {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                sig_digits(s.t, 12),
                sig_digits(s.money, 12),
                sig_digits(s.sales, 12),
                sig_digits(s.price, 12),
                sig_digits(s.output, 12),
                sig_digits(s.inflation, 12),
                sig_digits(s.velocity, 12),
            )?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}
