/// Limits on exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest matrix space `q^(n^2)` (or subspace/decomposition list) enumerated.
    pub enumeration: u64,
    /// Largest structure set materialized by the oracle.
    pub structures: u64,
}

impl Budget {
    pub const DEFAULT_ENUMERATION: u64 = 1 << 24;
    pub const DEFAULT_STRUCTURES: u64 = 1 << 21;

    pub fn unlimited() -> Self {
        Budget {
            enumeration: u64::MAX,
            structures: u64::MAX,
        }
    }

    pub fn with_enumeration(enumeration: u64) -> Self {
        Budget {
            enumeration,
            ..Budget::default()
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enumeration: Self::DEFAULT_ENUMERATION,
            structures: Self::DEFAULT_STRUCTURES,
        }
    }
}
