use crate::error::{Error, Result};

pub const MAX_ARGUMENT: f64 = 50.0;
const RELATIVE_STOP: f64 = 1e-14;
const MAX_TERMS: usize = 10_000;

fn non_positive_integer(v: f64) -> bool {
    v <= 0.0 && v.fract() == 0.0
}

/// Confluent hypergeometric `1F1(a; b; z)` for `|z| <= 50` by power series.
///
/// Terminates exactly when `a` is a non-positive integer. Otherwise a negative
/// argument goes through `1F1(a; b; z) = e^z 1F1(b - a; b; -z)` so the summed
/// series has no cancellation.
pub fn kummer_1f1(a: f64, b: f64, z: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(Error::Domain(format!("1F1({a}; {b}; {z}) has a non-finite argument")));
    }
    if non_positive_integer(b) {
        return Err(Error::Domain(format!("1F1 lower parameter {b} is a non-positive integer")));
    }
    if z.abs() > MAX_ARGUMENT {
        return Err(Error::Domain(format!("|z| = {} exceeds {MAX_ARGUMENT}", z.abs())));
    }
    if z < 0.0 && !non_positive_integer(a) {
        return Ok(z.exp() * series(b - a, b, -z)?);
    }
    series(a, b, z)
}

fn series(a: f64, b: f64, z: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        if a + kf == 0.0 {
            return Ok(sum);
        }
        let ratio = (a + kf) * z / ((b + kf) * (kf + 1.0));
        term *= ratio;
        sum += term;
        if term.abs() <= RELATIVE_STOP * sum.abs() && ratio.abs() < 0.5 {
            return Ok(sum);
        }
    }
    Err(Error::Solver(format!("1F1({a}; {b}; {z}) series did not converge")))
}
