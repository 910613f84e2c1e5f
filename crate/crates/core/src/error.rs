//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by field construction, character evaluation, curve
/// counting, and the brute-force oracle.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field characteristic must be an odd prime, got {0}")]
    BadCharacteristic(u64),

    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,

    #[error("field size {p}^{k} exceeds the enumeration cap {cap}")]
    FieldTooLarge { p: u64, k: u32, cap: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("discrete logarithm of zero is undefined")]
    DiscreteLogOfZero,

    #[error("encoding {enc} is out of range for a field of {size} elements")]
    EncodingOutOfRange { enc: u64, size: u64 },

    #[error("character order must be 1, 2, 3, or 4, got {0}")]
    BadCharacterOrder(u32),

    #[error("character order {order} does not divide {size} - 1")]
    OrderDoesNotDivide { order: u32, size: u64 },

    #[error("sum over a trivial character is rejected")]
    TrivialCharacter,

    #[error("leading coefficient of a cubic must be nonzero")]
    NotACubic,

    #[error("curve is singular: zero discriminant")]
    SingularCurve,

    #[error("operation is undefined in characteristic 3")]
    CharacteristicThree,

    #[error(
        "trace residue is only resolvable over a prime field with p >= 17, got p = {p}, degree {k}"
    )]
    TraceNotResolvable { p: u64, k: u32 },

    #[error("congruence sum landed outside the prime subfield")]
    ResidueOutsidePrimeField,

    #[error("{0}")]
    Precondition(String),

    #[error("enumeration requires {required} evaluations, over the budget of {budget}")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
