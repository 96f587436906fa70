//! Numerical checks of the fidelity identities and entropy inequalities.

pub mod appendix;
pub mod campaign;

pub use crate::presets::{
    maximally_mixed_pair_register, purified_rho_lambda, saturating_single_qubit_register,
};
pub use appendix::{
    check_interm, check_jonas, check_monotonicity, dephasing_map, random_density_matrix,
    random_density_matrix_from, relative_entropy, rho_lambda,
};
pub use campaign::{run_campaign, Campaign, CampaignConfig, CampaignReport, WorstCase};
