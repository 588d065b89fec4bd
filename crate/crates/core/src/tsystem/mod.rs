//! T-system with inhomogeneous coefficients
//! `T_{i,j,k+1} T_{i,j,k−1} = μ_j T_{i,j+1,k} T_{i,j−1,k} + λ_i T_{i+1,j,k} T_{i−1,j,k}`.
//!
//! Contents: the coefficient window, pyramid evolution from arbitrary
//! initial data, condensation on minors, the `q`-power closed forms, the
//! chip-matrix products Θ_min / Θ_max and the exchange-matrix mutation check.

mod closed;
mod cluster;
mod coeffs;
mod dodgson;
mod frame;
mod theta;

pub use closed::{q_product, soltij_closed_form};
pub use cluster::{cluster_mutation_check, ClusterReport, ExtendedExchangeMatrix, Node};
pub use coeffs::{full_range, lambda_name, mu_name, needed_range, CoeffWindow};
pub use dodgson::{dodgson, ShiftConvention};
pub use frame::{evolve, lambda_det_via_tsystem, t_name, InitialData, TSystemFrame};
pub use theta::{
    build_theta, chip_plan, chip_product, soltsys_value, theta_identity_check, ChipKind, ChipPlan,
    ChipSpec, ThetaFlavor, ThetaReport, UVChip,
};
