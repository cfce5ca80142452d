use thiserror::Error;

use crate::validate::ValidationReport;

/// Usage and construction errors. Axiom failures during validation are not
/// errors; they are reported through [`ValidationReport`]. Construction
/// refusals (equivalence laws, well-definedness) carry their witnesses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("element index {index} out of range for carrier of size {card}")]
    ElementOutOfRange { index: usize, card: usize },

    #[error("tuple has length {got}, expected {expected}")]
    TupleLength { expected: usize, got: usize },

    #[error("argument set at position {position} is empty")]
    EmptySetArgument { position: usize },

    #[error("iteration count must be at least 1")]
    ZeroIterations,

    #[error("arity out of range: need m >= 2 and n >= 2, got m={m} n={n}")]
    BadArity { m: usize, n: usize },

    #[error("carrier of size {card} exceeds the supported maximum of 64")]
    CarrierTooLarge { card: usize },

    #[error("operation table would need {entries} entries, over the supported maximum")]
    TableTooLarge { entries: u128 },

    #[error("{table} table has {got} entries, expected {expected}")]
    TableWrongSize {
        table: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("{table} entry at {tuple} is empty")]
    EmptyTableEntry { table: &'static str, tuple: String },

    #[error("{table} entry at {tuple} mentions element {index}, carrier has {card}")]
    TableValueOutOfRange {
        table: &'static str,
        tuple: String,
        index: usize,
        card: usize,
    },

    #[error("structure `{name}` failed {mode} validation: {summary}")]
    ValidationFailed {
        name: String,
        mode: &'static str,
        summary: String,
        report: Box<ValidationReport>,
    },

    #[error("subset must be nonempty")]
    EmptySubset,

    #[error("subset {subset} is not a hyperideal of `{structure}`")]
    NotHyperideal { structure: String, subset: String },

    #[error("subset {subset} is not a proper hyperideal of `{structure}`")]
    NotProperHyperideal { structure: String, subset: String },

    #[error("subset {subset} is not an n-ary multiplicative subset of `{structure}`")]
    NotMultiplicative { structure: String, subset: String },

    #[error("denominator {element} is not in the multiplicative subset {subset}")]
    DenominatorNotInSubset { element: usize, subset: String },

    #[error("fraction construction needs n >= m, got m={m} n={n}")]
    FractionArity { m: usize, n: usize },

    #[error("relation on R x S is not {law}: witness {witness}")]
    EquivalenceLawFailed { law: &'static str, witness: String },

    #[error("{0}")]
    NotWellDefined(Box<WellDefinednessWitness>),

    #[error("cosets of {ideal} do not partition the carrier: {detail}")]
    CosetsNotPartition { ideal: String, detail: String },

    #[error("maps require matching arity profiles: ({m_a},{n_a}) vs ({m_b},{n_b})")]
    ArityMismatch {
        m_a: usize,
        n_a: usize,
        m_b: usize,
        n_b: usize,
    },

    #[error("map has {got} entries, source carrier has {expected}")]
    MapWrongLength { expected: usize, got: usize },

    #[error("map sends {element} to {image}, target carrier has {card}")]
    MapValueOutOfRange {
        element: usize,
        image: usize,
        card: usize,
    },

    #[error("search space of {required} maps exceeds the cap of {cap}")]
    SearchCapExceeded { required: u128, cap: u128 },

    #[error("{check}: hypothesis violated: {hypothesis}")]
    HypothesisFailed {
        check: &'static str,
        hypothesis: String,
    },

    #[error("{what} (the structure violates a property every valid input guarantees)")]
    AssertionFailed { what: String },
}

/// Both offending representative tuples of a failed well-definedness check,
/// with the values they produce.
#[derive(Debug)]
pub struct WellDefinednessWitness {
    pub op: &'static str,
    pub class_tuple: String,
    pub rep_a: String,
    pub val_a: String,
    pub rep_b: String,
    pub val_b: String,
}

impl std::fmt::Display for WellDefinednessWitness {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            out,
            "{} is not well defined on {}: representatives {} give {}, {} give {}",
            self.op, self.class_tuple, self.rep_a, self.val_a, self.rep_b, self.val_b
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
