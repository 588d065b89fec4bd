//! Limiting densities: the response `ρ_{i,j,k} = ∂ log T_{i,j,k} / ∂ t_{0,0}`
//! at the all-ones point, computed exactly with first-order jets.

mod series;
mod table;

pub use series::{rho_series_coeff, series_table};
pub use table::{q_functional_check, rho_table, DensityTable, QCheckReport, QViolation};
