use std::sync::OnceLock;

use super::{PureState, RankTwoFamily};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NamedState {
    pub key: &'static str,
    pub state: PureState,
    pub description: &'static str,
}

type Kets = &'static [(&'static str, f64)];

const SQRT2: f64 = std::f64::consts::SQRT_2;

const ENTRIES: &[(&str, Kets, &str)] = &[
    ("phi1", &[("0000", 1.0), ("1111", 1.0)], "(|0000⟩+|1111⟩)/√2, maximally entangled, class G_abcd"),
    (
        "phi2",
        &[("1111", SQRT2), ("1000", 1.0), ("0100", 1.0), ("0010", 1.0), ("0001", 1.0)],
        "(√2|1111⟩+|1000⟩+|0100⟩+|0010⟩+|0001⟩)/√6, maximally entangled, class G_abcd",
    ),
    (
        "phi3",
        &[("1111", 1.0), ("1100", 1.0), ("0010", 1.0), ("0001", 1.0)],
        "(|1111⟩+|1100⟩+|0010⟩+|0001⟩)/2, maximally entangled, class G_abcd",
    ),
    (
        "w4",
        &[("0111", 1.0), ("1011", 1.0), ("1101", 1.0), ("1110", 1.0)],
        "(|0111⟩+|1011⟩+|1101⟩+|1110⟩)/2, class L_ab3",
    ),
    ("bell", &[("00", 1.0), ("11", 1.0)], "(|00⟩+|11⟩)/√2"),
    ("ghz3", &[("000", 1.0), ("111", 1.0)], "(|000⟩+|111⟩)/√2"),
    ("w3", &[("001", 1.0), ("010", 1.0), ("100", 1.0)], "(|001⟩+|010⟩+|100⟩)/√3"),
    (
        "xi",
        &[("0000", 1.0), ("1011", 1.0), ("1101", 1.0), ("1110", 1.0)],
        "(|0000⟩+|1011⟩+|1101⟩+|1110⟩)/2, class L_7⊕1̄",
    ),
    (
        "eta",
        &[("0001", 1.0), ("0110", 1.0), ("1000", 1.0)],
        "(|0001⟩+|0110⟩+|1000⟩)/√3, class L_a4",
    ),
    ("l_abc2", &[("0000", 1.0)], "|0000⟩, class L_abc2"),
    ("l_a2b2", &[("0110", 1.0), ("0011", 1.0)], "(|0110⟩+|0011⟩)/√2, class L_a2b2"),
    (
        "l_a2_0_3p1",
        &[("0011", 1.0), ("0101", 1.0), ("0110", 1.0)],
        "(|0011⟩+|0101⟩+|0110⟩)/√3, class L_a2 0_{3⊕1̄}",
    ),
    (
        "l_0_3p1_0_3p1",
        &[("0000", 1.0), ("0111", 1.0)],
        "(|0000⟩+|0111⟩)/√2, class L_{0_{3⊕1̄} 0_{3⊕1̄}}",
    ),
    (
        "l_5p3",
        &[("0000", 1.0), ("0101", 1.0), ("1000", 1.0), ("1110", 1.0)],
        "(|0000⟩+|0101⟩+|1000⟩+|1110⟩)/2, class L_5⊕3̄",
    ),
];

/// Every named state, in a fixed order.
pub fn catalog() -> &'static [NamedState] {
    static CATALOG: OnceLock<Vec<NamedState>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        ENTRIES
            .iter()
            .map(|&(key, kets, description)| NamedState {
                key,
                state: PureState::from_kets(kets).expect("catalog kets are well formed"),
                description,
            })
            .collect()
    })
}

pub fn catalog_lookup(key: &str) -> Result<NamedState> {
    catalog()
        .iter()
        .find(|s| s.key.eq_ignore_ascii_case(key))
        .cloned()
        .ok_or_else(|| Error::UnknownKey(key.to_string()))
}

/// The rank-2 families studied here: ρ_j = p|Φ_j⟩⟨Φ_j| + (1−p)|W₄⟩⟨W₄| and
/// the three-qubit GHZ/W mixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyId {
    Rho1,
    Rho2,
    Rho3,
    GhzW,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [Self::Rho1, Self::Rho2, Self::Rho3, Self::GhzW];

    pub fn keys(self) -> (&'static str, &'static str) {
        match self {
            Self::Rho1 => ("phi1", "w4"),
            Self::Rho2 => ("phi2", "w4"),
            Self::Rho3 => ("phi3", "w4"),
            Self::GhzW => ("ghz3", "w3"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Rho1 => "rho1",
            Self::Rho2 => "rho2",
            Self::Rho3 => "rho3",
            Self::GhzW => "ghzw",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }

    pub fn family(self) -> RankTwoFamily {
        let (a, b) = self.keys();
        RankTwoFamily::new(
            catalog_lookup(a).expect("catalog key").state,
            catalog_lookup(b).expect("catalog key").state,
        )
        .expect("catalog families are orthonormal")
    }
}
