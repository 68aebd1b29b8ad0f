//! Exact sparse polynomial arithmetic over complex coefficients and the
//! localization at `prod_j (1 + x_j^2)`.

mod cpoly;
pub mod identities;
mod localized;
mod multi_index;
mod text;

pub use cpoly::CPoly;
pub use identities::{condition_residual_expand, q_identity, q_to_p, QIdentity};
pub use localized::{localized_arith, LocalizedElement, RingOp};
pub use multi_index::MultiIndex;
pub use text::{format_poly, parse_poly};
