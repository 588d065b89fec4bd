//! Closed-form evaluators of the generalized Lambda-determinant and the
//! harness comparing them with condensation, the T-system and the network.

mod crosscheck;
mod products;
mod weights;

pub use crosscheck::{
    covariance_pair, cross_check, entry_name, generic_instance, symbolic_lambda_det,
    CrossCheckReport, GenericInstance, Method, MethodOutcome, SYMBOLIC_CAP,
};
pub use products::{b_matrix, homogeneous_lu_check, vandermonde_matrix, vandermonde_product, LuReport};
pub use weights::{
    asm_sum, asm_sum_with_cap, asm_weight, robbins_rumsey, statistics_form, WeightBreakdown,
    ASM_SUM_CAP,
};
