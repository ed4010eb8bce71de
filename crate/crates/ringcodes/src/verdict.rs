//! Classification results shared by the chain and matrix classifiers.

use num_bigint::BigInt;

/// Construction parameters and the dual-count difference that show a weight
/// fails to respect duality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Chain: the module rank k of the pair (C_k, D_k). Matrix: the ring size k.
    pub k: u32,
    /// Matrix only: the information module is M_{k×m}.
    pub m: Option<u32>,
    /// Matrix only: the swap rank s, or the degenerate index j.
    pub s: Option<u32>,
    /// The weight whose dual counts differ.
    pub d: u64,
    /// The nonzero dual-count difference at d. Chain: A_d(C_k^⊥) − A_d(D_k^⊥).
    /// Matrix: A_d(D^⊥) − A_d(C^⊥) for a swap pair, A_d(C_−^⊥) − A_d(C_+^⊥)
    /// for a degenerate pair.
    pub delta: BigInt,
    /// `Some(true)` once the difference was recomputed through the enumerator
    /// pipeline, `None` when the pair was too long to check.
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Respects { rule: String, reason: String },
    Fails { rule: String, witness: Witness },
    Unknown { rule: String, reason: String },
}

impl Verdict {
    pub fn respects(rule: &str, reason: impl Into<String>) -> Self {
        Verdict::Respects {
            rule: rule.into(),
            reason: reason.into(),
        }
    }

    pub fn unknown(rule: &str, reason: impl Into<String>) -> Self {
        Verdict::Unknown {
            rule: rule.into(),
            reason: reason.into(),
        }
    }

    pub fn fails(rule: &str, witness: Witness) -> Self {
        Verdict::Fails {
            rule: rule.into(),
            witness,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Respects { .. } => "respects",
            Verdict::Fails { .. } => "fails",
            Verdict::Unknown { .. } => "unknown",
        }
    }

    pub fn rule(&self) -> &str {
        match self {
            Verdict::Respects { rule, .. } | Verdict::Fails { rule, .. } | Verdict::Unknown { rule, .. } => rule,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Fails { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn is_respects(&self) -> bool {
        matches!(self, Verdict::Respects { .. })
    }
    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }
    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown { .. })
    }
}
