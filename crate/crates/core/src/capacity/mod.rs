//! Holevo capacity: the monotone relative-entropy ascent, certificate
//! verification, closed-form optimal ensembles and the classical reduction.

mod ascent;
mod certificate;
mod classical;
mod closed_form;
mod ensemble;
mod starts;

pub use ascent::{shor_ascent, AscentOptions, RelativeEntropyAscent, StationaryReport, LOG_FLOOR};
pub use certificate::{verify_candidate, verify_candidate_with_threshold, CapacityCertificate, VERIFY_THRESHOLD};
pub use classical::{classical_capacity, cq_matrix, cq_matrix_in_basis, ClassicalCapacity, StochasticMatrix, BA_TOL};
pub use closed_form::{
    closed_form_candidate, diagonal_family_capacity, doubly_depol_optimal_ensemble, doubly_depol_signal_spectra,
    doubly_depol_t_perp, qutrit_lambda1, qutrit_optimal_ensemble, qutrit_signal_basis, qutrit_signal_spectra,
    qutrit_x, Candidate, DoublyDepolOptimum, QutritOptimum,
};
pub use ensemble::{holevo_chi, Ensemble};
pub use starts::{max_entangled_partner, random_start, random_start_vector, SearchOptions, StartRecipe};

pub(crate) use ascent::eigen_residual;
pub(crate) use ensemble::check_state;
pub(crate) use starts::run_starts;
