//! Numeric formatting for the CSV outputs.

/// Formats `x` with `digits` significant digits, printf `%g` style: fixed
/// notation for moderate magnitudes, scientific otherwise. Non-finite values
/// print as `inf`, `-inf` or `NaN`.
pub fn sig_digits(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -4 || exp >= digits as i32 {
        format!("{:.*e}", digits - 1, x)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}
