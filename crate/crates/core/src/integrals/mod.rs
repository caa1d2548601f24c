//! Integral theory: integral spaces and projections, normalized and
//! non-degenerate integrals, dual pairs, quasibases, modular automorphisms,
//! the q-trace χ, Haar integrals and structural tests (Frobenius, symmetric,
//! quasi-Frobenius).

mod functionals;
mod properties;
mod spaces;
mod structure;

pub use functionals::{
    certify_chi, chi, gram_matrix, haar, haar_split_criterion, is_nondegenerate_functional, modular_automorphism,
    quasibasis, Haar, HaarSplitCriterion, ModularData, QuasiBasis,
};
pub use properties::integral_properties;
pub use spaces::{
    dual_left_integral, integral_nondegeneracy, integral_projection, integral_projection_matrix, integral_space,
    is_nondegenerate_element, normalized_integral, semisimplicity_oracle, two_sided_integrals, DualPair,
    IntegralSpace, NondegeneracyReport, NormalizedIntegral,
};
pub use structure::{
    annihilator_duality_check, frobenius_test, symmetric_and_s4, two_sided_analysis, AnnihilatorReport,
    FrobeniusReport, S4Witness, SymmetricReport, TwoSided,
};

use crate::check::Verdict;
use crate::field::Field;
use crate::linear::{invertible_in_span, kernel_of, InvertibleSearch, Mat, Vector};

/// Common kernel of a family of n-column maps, refined block by block.
pub(crate) fn common_kernel<F: Field>(field: &F, n: usize, blocks: impl IntoIterator<Item = Mat<F>>) -> Vec<Vector<F>> {
    let mut k = Mat::identity(field, n);
    for b in blocks {
        if k.cols() == 0 {
            break;
        }
        let ker = kernel_of(&b.mul(&k));
        let next = Mat::from_columns(field, k.cols(), &ker);
        k = k.mul(&next);
    }
    k.columns()
}

/// Invertible member of a span, mapped to a three-valued verdict.
/// A failed random search is a "no" over infinite fields and "unknown" over finite ones.
pub(crate) fn search_invertible<F: Field>(field: &F, mats: &[Mat<F>], seed: u64) -> (Verdict, Option<Vector<F>>) {
    match invertible_in_span(mats, seed) {
        InvertibleSearch::Found { coefficients, .. } => (Verdict::Yes, Some(coefficients)),
        InvertibleSearch::NoneFound { exhaustive: true } => (Verdict::No, None),
        InvertibleSearch::NoneFound { exhaustive: false } => {
            if field.order().is_some() {
                (Verdict::Unknown, None)
            } else {
                (Verdict::No, None)
            }
        }
    }
}
