//! Dense matrices over the supported rings: determinants, minors, Fitting
//! ideals, elementary operations, equivalence certificates and Smith normal
//! form over the Euclidean members.

mod certificate;
mod det;
mod elementary;
mod matrix;
mod snf;

pub use certificate::{
    transpose_certificate_from_diagonal, verify_certificate, EquivalenceCertificate, Tracked, Verification,
};
pub use det::{adjugate, determinant, minors, unimodular_inverse};
pub use elementary::{apply_elementary, ElementaryOp};
pub use matrix::RingMatrix;
pub use snf::{smith_normal_form, SmithForm};

use crate::error::Result;
use crate::groebner::Ideal;

/// Ideal generated by the `k x k` minors; `k = 0` gives the unit ideal.
pub fn fitting_ideal(m: &RingMatrix, k: usize) -> Result<Ideal> {
    let gens = minors(m, k)?;
    Ideal::new(m.ring(), gens)
}
