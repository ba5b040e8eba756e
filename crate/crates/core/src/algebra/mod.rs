//! Exact arithmetic and linear algebra over finite fields.

mod extension;
mod field;
mod int;
mod matrix;
pub mod poly;

pub use extension::ExtensionRep;
pub use field::{field_context, is_prime_power, FieldContext};
pub use int::{ceil_div, floor_div, gauss_number, gauss_signed, pow, ExactInt, ExactRat};
pub(crate) use matrix::dot as matrix_dot;
pub use matrix::GfMatrix;
