//! Exact arithmetic in `F_p` and its extensions `F_{p^n}` (odd `p`).
//!
//! Every field is presented with a canonical modulus, so a field is identified
//! by `(p, n)` alone and the same element has the same coefficient vector in
//! every run. Subfields are related by canonical embeddings (see [`embedding`]).

mod embed;
mod field;
pub(crate) mod fp_poly;
mod upoly;

use thiserror::Error;

pub use embed::{
    degree_over, descend, embed, embedding, frobenius, minimal_polynomial, norm_to, trace_to,
    Embedding,
};
pub use field::{arith, make_field, ArithOp, ExtField, FieldElement, FieldSpec, MAX_CHARACTERISTIC};
pub use upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 unsupported")]
    EvenCharacteristic,
    #[error("characteristic {0} exceeds the supported range")]
    CharacteristicTooLarge(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("arithmetic across different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("no embedding of {from} into {to}")]
    NoEmbedding { from: String, to: String },
    #[error("element does not lie in the subfield {sub}")]
    NotInSubfield { sub: String },
    #[error("expected at most {expected} coefficients, got {got}")]
    BadCoefficientLength { expected: usize, got: usize },
}
