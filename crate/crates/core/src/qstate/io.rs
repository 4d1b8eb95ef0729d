//! Plain-text state files:
//!
//! ```text
//! # comment
//! QSTATE 2
//! 0 0.70710678118654757 0
//! 1 0 0
//! 2 0 0
//! 3 0.70710678118654757 0
//! ```

use std::path::Path;

use super::PureState;
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Largest tolerated |norm − 1| before the input is rejected.
pub const NORM_INPUT_TOL: f64 = 1e-6;

pub fn parse_state(text: &str, allow_unnormalized: bool) -> Result<PureState> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing QSTATE header".into(),
    })?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("QSTATE") {
        return Err(Error::Parse {
            line: hline,
            msg: "expected `QSTATE <num_qubits>`".into(),
        });
    }
    let num_qubits: usize = fields
        .next()
        .and_then(|f| f.parse().ok())
        .filter(|&n| (1..=16).contains(&n))
        .ok_or(Error::Parse {
            line: hline,
            msg: "bad qubit count".into(),
        })?;

    let dim = 1usize << num_qubits;
    let mut amplitudes = Vec::with_capacity(dim);
    for (line, content) in lines {
        let bad = |msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let parts: Vec<&str> = content.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(bad("expected `<index> <re> <im>`"));
        }
        let index: usize = parts[0].parse().map_err(|_| bad("bad index"))?;
        if index != amplitudes.len() {
            return Err(bad("indices must be consecutive and ascending from 0"));
        }
        if index >= dim {
            return Err(bad("too many amplitude lines"));
        }
        let re: f64 = parts[1].parse().map_err(|_| bad("bad real part"))?;
        let im: f64 = parts[2].parse().map_err(|_| bad("bad imaginary part"))?;
        if !re.is_finite() || !im.is_finite() {
            return Err(bad("non-finite amplitude"));
        }
        amplitudes.push(C64::new(re, im));
    }
    if amplitudes.len() != dim {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("expected {dim} amplitude lines, found {}", amplitudes.len()),
        });
    }

    let state = PureState::new(amplitudes)?;
    let dev = (state.norm() - 1.0).abs();
    if dev > NORM_INPUT_TOL && !allow_unnormalized {
        if state.norm() == 0.0 {
            return Err(Error::ZeroNorm);
        }
        return Err(Error::NormDeviation(dev));
    }
    state.normalize()
}

pub fn read_state_file(path: &Path, allow_unnormalized: bool) -> Result<PureState> {
    parse_state(&std::fs::read_to_string(path)?, allow_unnormalized)
}

/// Serializes with 17 significant digits, enough to round-trip every f64.
pub fn write_state(s: &PureState) -> String {
    let mut out = format!("QSTATE {}\n", s.num_qubits());
    for (i, a) in s.amplitudes().iter().enumerate() {
        out.push_str(&format!("{i} {:.16e} {:.16e}\n", a.re, a.im));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::catalog_lookup;
    use proptest::prelude::*;

    #[test]
    fn parses_with_comments() {
        let text = "# bell\nQSTATE 2\n0 1 0\n# middle\n1 0 0\n2 0 0\n3 1 0\n";
        let s = parse_state(text, true).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!(matches!(parse_state(text, false), Err(Error::NormDeviation(_))));
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_state("", false).is_err());
        assert!(parse_state("QSTATE x\n", false).is_err());
        assert!(parse_state("QSTATE 1\n0 1 0\n", false).is_err());
        assert!(parse_state("QSTATE 1\n1 1 0\n0 0 0\n", false).is_err());
        assert!(parse_state("QSTATE 1\n0 1 0\n1 0\n", false).is_err());
        assert!(parse_state("QSTATE 1\n0 1 0\n1 0 0\n2 0 0\n", false).is_err());
        assert!(matches!(parse_state("QSTATE 1\n0 0 0\n1 0 0\n", true), Err(Error::ZeroNorm)));
    }

    #[test]
    fn small_deviation_is_normalized() {
        let s = parse_state("QSTATE 1\n0 1.0000001 0\n1 0 0\n", false).unwrap();
        assert_eq!(s.amplitudes()[0], C64::new(1.0, 0.0));
    }

    #[test]
    fn catalog_round_trip_is_exact() {
        let s = catalog_lookup("phi2").unwrap().state;
        assert_eq!(parse_state(&write_state(&s), false).unwrap(), s);
    }

    proptest! {
        #[test]
        fn round_trip(re in proptest::collection::vec(-1.0f64..1.0, 8), im in proptest::collection::vec(-1.0f64..1.0, 8)) {
            let amps: Vec<C64> = re.iter().zip(&im).map(|(&a, &b)| C64::new(a, b)).collect();
            prop_assume!(amps.iter().any(|a| a.norm() > 1e-3));
            let s = PureState::new(amps).unwrap().normalize().unwrap();
            let back = parse_state(&write_state(&s), false).unwrap();
            for (a, b) in s.amplitudes().iter().zip(back.amplitudes()) {
                prop_assert!((a - b).norm() < 1e-15);
            }
        }
    }
}
