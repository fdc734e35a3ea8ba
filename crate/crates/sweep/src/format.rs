//! Float formatting shared by every CSV writer.

/// Significant digits printed for every float.
pub const SIG_DIGITS: usize = 12;

/// Format like C's `%.{sig}g`: shortest of fixed or scientific notation with
/// trailing zeros removed. Negative zero prints as `0`.
pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn fmt(x: f64) -> String {
    fmt_sig(x, SIG_DIGITS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        assert_eq!(fmt(1.0), "1");
        assert_eq!(fmt(-0.0), "0");
        assert_eq!(fmt(0.5), "0.5");
        assert_eq!(fmt(0.20710678118654752), "0.207106781187");
        assert_eq!(fmt(50.0), "50");
        assert_eq!(fmt(0.025), "0.025");
        assert_eq!(fmt(1e-5), "1e-05");
        assert_eq!(fmt(1.5e-17), "1.5e-17");
        assert_eq!(fmt(0.0001), "0.0001");
        assert_eq!(fmt(123456789012.0), "123456789012");
        assert_eq!(fmt(1234567890123.0), "1.23456789012e+12");
        assert_eq!(fmt(-2.5), "-2.5");
        assert_eq!(fmt(0.99999999999999), "1");
        assert_eq!(fmt(f64::NAN), "nan");
    }
}
