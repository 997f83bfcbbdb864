//! Exact integer linear algebra over lattices.

mod abelian;
mod snf;
mod tensor;

pub use abelian::{FpAbelianGroup, GroupSummary, SublatticeQuotient};
pub use snf::{hermite_rows, hermite_rows_i64, smith_normal_form, solve_in_hermite, IntMatrix, Smith};
pub use tensor::{box_quotient, boxtimes_form, coinvariants, inclusion_indices, parse_pair, BoxQuotient, Side};
