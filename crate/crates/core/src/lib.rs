//! Zeta-polynomials from period polynomials.
//!
//! Exact arithmetic over `Q(i)` for the Rodriguez-Villegas transform and
//! the Eichler-Shimura type relations it transports, plus a high-precision
//! numeric pipeline for critical L-values of newforms (with the weight 12
//! discriminant form built in).

pub mod error;
pub mod exactnum;
pub mod golden;
pub mod io;
pub mod lvalues;
pub mod numeric;
pub mod polyspace;
pub mod rv;
pub mod zeta;

pub use error::{Error, Result};
pub use exactnum::{GaussianRational, PowerSeries};
pub use lvalues::{NewformData, NumericPoly};
pub use numeric::{BigComplex, BigReal};
pub use polyspace::{Mat2, PolyX};
pub use rv::ZetaPoly;
