//! Significant-figure formatting for emitted numbers.

/// Round `x` to `digits` significant figures. Magnitudes below 0.01 are
/// written in scientific notation (`6.78e-3`), others as decimals (`0.495`).
/// Exactly zero and exactly one print as `0` and `1`.
pub fn sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".to_string();
    }
    if x == 1.0 {
        return "1".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // round once in scientific form so the exponent below is the rounded one
    let sci = format!("{:.*e}", digits - 1, x);
    let rounded: f64 = sci.parse().expect("formatted float parses");
    if rounded.abs() < 0.01 {
        return sci;
    }
    let exp = rounded.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    format!("{:.*}", decimals, rounded)
}

/// Three significant figures, the precision used for tables.
pub fn sig3(x: f64) -> String {
    sig(x, 3)
}

/// Grid coordinates: shortest decimal up to 1e-9 resolution.
pub fn coord(x: f64) -> String {
    let s = format!("{:.9}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}
