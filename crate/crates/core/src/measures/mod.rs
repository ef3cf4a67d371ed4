//! Output-purity functionals: entropies, p-norms, majorization and the
//! depolarizing closed forms they are compared against.

mod entropy;
mod ppt;
mod purity;
mod reference;
mod spectrum;

pub use entropy::{entropy, relative_entropy, STATE_TOL, SUPPORT_TOL};
pub use ppt::{is_ppt, min_partial_transpose_eigenvalue, PPT_TOL};
pub use purity::{
    max_output_p_norm, max_output_p_norm_with, min_output_entropy, min_output_entropy_with, PurityReport,
    StartTrace, INFINITY_SURROGATE,
};
pub use reference::{depol_output_spectrum, depol_reference, DepolMeasure};
pub use spectrum::{entropy_of_spectrum, majorizes, submajorizes, Spectrum, MAJORIZATION_TOL};
