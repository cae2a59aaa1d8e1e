//! Observable estimation: link-energy moments, pair probabilities, the
//! entanglement quantities GE / GE-tilde / Q, their beta-derivatives, and
//! jackknife error bars.

mod accumulator;
mod correlator;
mod formulas;
mod jackknife;

pub use accumulator::{EntanglementReport, ObservableAccumulator};
pub use correlator::ClassCorrelator;
pub use formulas::{
    analytic_q, dge_dbeta_fluctuation, fee_profile, finite_difference_derivative,
    ge_from_energy, ge_from_probabilities, ge_tilde_from_corr_sq, ge_tilde_from_correlations,
    ge_tilde_from_probabilities, probabilities_from_moments, q_from, FeePoint, ProbabilitySet,
};
pub use jackknife::jackknife_sigma;
