//! Matrices and submodules over `Z/p^N`.

pub mod matrix;
pub mod series;
pub mod span;

pub use matrix::{MatrixRepr, PMatrix};
pub use series::{mat_exp, mat_log, mat_pow_int, mat_pow_padic, pro_p_order};
pub use span::{left_kernel, saturated_left_kernel, unit_vector, Smith, Span, SpanRepr};
