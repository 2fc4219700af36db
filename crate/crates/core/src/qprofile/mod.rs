//! The invariants `alpha_n`, `beta_n`, `b0` and the q-function of the sheaf
//! presented by a graded matrix, and admissibility of degree profiles.

mod admissible;
mod coprime;
mod oracle;
mod profile;


pub use admissible::{check_p_admissible, implied_shift, Admissibility};
pub use coprime::{line_certificate, minor_gcd, MinorGcd, DEFAULT_MINOR_BUDGET};
pub use oracle::{is_general_morphism, q_oracle, ORACLE_BUDGET};
pub use profile::{
    alpha, beta, beta_at_closed_point, certify_locally_free, column_module_is_free, compute_b0, compute_q_profile,
    DegreeRow, LocalFreeness, ProfileOptions, QProfile, B0, PROFILE_SEED,
};
