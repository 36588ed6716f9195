//! Exact sparse polynomial arithmetic over ℚ and GF(p).

pub mod field;
pub mod monomial;
mod parse;
pub mod poly;

pub use field::{Field, FieldError, FieldTag, PrimeField, Rationals, DEFAULT_PRIME};
pub use monomial::{Monomial, MonomialOrder, OrderError, OrderKind};
pub use poly::{AuxVar, PolyError, PolyRing, Polynomial, Show, Term, VarId, VarLayout};
