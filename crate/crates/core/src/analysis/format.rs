/// Six significant digits in the style of C's `%g`.
pub fn format_sig6(x: f64) -> String {
    format_significant(x, 6)
}

/// `digits` significant digits in the style of C's `%.{digits}g`: fixed
/// notation for exponents in [-4, digits), scientific otherwise, trailing
/// zeros dropped.
pub fn format_significant(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    // Round first, then read the exponent, so 999999.5 becomes 1e+06.
    let sci = format!("{x:.*e}", digits - 1);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp >= -4 && exp < digits as i32 {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim(&format!("{x:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim(mantissa), exp.abs())
    }
}

fn trim(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (80.86375183, "80.8638"),
            (122.8456, "122.846"),
            (263240.7, "263241"),
            (999999.5, "1e+06"),
            (1234567.0, "1.23457e+06"),
            (0.0001234567, "0.000123457"),
            (0.00001234567, "1.23457e-05"),
            (48.75, "48.75"),
            (100000.0, "100000"),
            (f64::NAN, "nan"),
        ];
        for (x, want) in cases {
            assert_eq!(format_sig6(x), want, "{x}");
        }
    }

    #[test]
    fn four_digits() {
        assert_eq!(format_significant(2.42712, 4), "2.427");
        assert_eq!(format_significant(578.93, 4), "578.9");
        assert_eq!(format_significant(48.7503, 4), "48.75");
        assert_eq!(format_significant(12345.0, 4), "1.234e+04");
        assert_eq!(format_significant(0.0012866, 4), "0.001287");
    }

    #[test]
    fn round_trips_to_six_digits() {
        for &x in &[1.23456789, 2.718281828e-7, 6.02214076e23, 101325.0] {
            let back: f64 = format_sig6(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 5e-6);
        }
    }
}
