//! Plot-ready CSV: header row, `.` decimal separator, LF line endings,
//! 12 significant digits.

use std::fmt::Write;

use super::curve::{CurveGrid, EnvelopeResult};

pub const SIG_DIGITS: usize = 12;

/// `%g`-style formatting with `SIG_DIGITS` significant digits.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let s = format!("{x:.prec$e}", prec = SIG_DIGITS - 1);
        let (mantissa, e) = s.split_once('e').expect("exponent form");
        format!("{}e{e}", trim_zeros(mantissa.to_string()))
    };
    s
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Columns `p,phi,value`, p-major.
pub fn curve_csv(grid: &CurveGrid) -> String {
    let mut out = String::from("p,phi,value\n");
    for (i, &p) in grid.p_values.iter().enumerate() {
        for (j, &phi) in grid.phi_values.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", fmt_sig(p), fmt_sig(phi), fmt_sig(grid.get(i, j)));
        }
    }
    out
}

/// Columns `p,min,hull,reference`; `reference` must align with the envelope's p grid.
pub fn envelope_csv(env: &EnvelopeResult, reference: &[f64]) -> String {
    assert_eq!(reference.len(), env.p_values.len(), "reference length");
    let mut out = String::from("p,min,hull,reference\n");
    for (i, &p) in env.p_values.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_sig(p),
            fmt_sig(env.min_curve[i]),
            fmt_sig(env.hull_curve[i]),
            fmt_sig(reference[i])
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(0.416), "0.416");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(-2.5), "-2.5");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(2.0 / 3.0), "0.666666666667");
        assert_eq!(fmt_sig(123456.7891234567), "123456.789123");
        assert_eq!(fmt_sig(1.5e-17), "1.5e-17");
        assert_eq!(fmt_sig(6.02214076e23), "6.02214076e23");
        assert_eq!(fmt_sig(std::f64::consts::PI * 1e-4), "0.000314159265359");
    }

    #[test]
    fn parses_back_to_12_digits() {
        for &x in &[0.123456789012345, 9.87654321e-9, 0.7425672, 1e-300] {
            let y: f64 = fmt_sig(x).parse().unwrap();
            assert!(((x - y) / x).abs() < 1e-11);
        }
    }

    #[test]
    fn csv_shape() {
        let grid = CurveGrid {
            p_values: vec![0.0, 1.0],
            phi_values: vec![0.0, 3.0],
            samples: vec![0.0, 0.0, 1.0, 0.5],
        };
        let s = curve_csv(&grid);
        assert_eq!(s, "p,phi,value\n0,0,0\n0,3,0\n1,0,1\n1,3,0.5\n");
        let env = EnvelopeResult {
            p_values: vec![0.0, 1.0],
            min_curve: vec![0.0, 1.0],
            hull_curve: vec![0.0, 1.0],
            refined: vec![],
        };
        assert_eq!(envelope_csv(&env, &[0.0, 1.0]), "p,min,hull,reference\n0,0,0,0\n1,1,1,1\n");
    }
}
