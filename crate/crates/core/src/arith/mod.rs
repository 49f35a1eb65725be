//! Exact scalar arithmetic.

mod cyclo;
mod laurent;
mod poly;
mod quantum;
mod ratfunc;
mod series;

pub use cyclo::{cyclotomic_poly, CycInt};
pub use laurent::LaurentScalar;
pub use poly::IntPoly;
pub use quantum::{qbinom, qfact, qfact_rf, qint, qint_rf};
pub use ratfunc::RatFunc;
pub use series::{expand_vinv, SeriesClass, VSeries};
