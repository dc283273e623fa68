//! Exact symbolic verification kit for an inductive family of smooth affine
//! hypersurfaces `X_n ⊂ C^n` cut out by entries of unipotent matrix words.
//!
//! The crate provides the building blocks and the certificate suite:
//!
//! * [`poly`] — sparse multivariate polynomials over the rationals, with the
//!   text grammar used by the command line tool;
//! * [`groebner`] — Buchberger-based ideal certificates (emptiness,
//!   membership, ideal equality, staircase dimension);
//! * [`family`] — the matrix words `M_n`, the defining polynomials `p_n`,
//!   and the structural certificates (recursion, smoothness, affine
//!   modification data, centre isomorphisms);
//! * [`forms`] — chart volume forms, divergence-free generator fields and
//!   their Lie brackets, interior products and exterior derivatives;
//! * [`flow`] — a Runge-Kutta spot-checker for flows of the generator
//!   fields, with volume-distortion tracking along a tangent frame;
//! * [`generation`] — the constructive solver expressing exact forms as
//!   images of Lie-algebra elements under the contraction map;
//! * [`homology`] — homology tables and Euler ledgers for the family,
//!   computed both by recursion and in closed form;
//! * [`report`] — the certificate record shared by every suite.
//!
//! All symbolic computation is exact; floating point appears only in the
//! numeric flow checker.

pub mod family;
pub mod flow;
pub mod forms;
pub mod generation;
pub mod groebner;
pub mod homology;
pub mod poly;
pub mod report;

pub use poly::{MonomialOrder, Polynomial};

#[cfg(test)]
mod thread_safety {
    // Every value type is an immutable datum; the suites fan certificates
    // out across threads, so the contract is pinned at compile time.
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn value_types_are_send_and_sync() {
        assert_send_sync::<crate::poly::Polynomial>();
        assert_send_sync::<crate::poly::MonomialOrder>();
        assert_send_sync::<crate::groebner::Ideal>();
        assert_send_sync::<crate::groebner::GroebnerBasis>();
        assert_send_sync::<crate::family::MatrixWord>();
        assert_send_sync::<crate::family::FamilyRecord>();
        assert_send_sync::<crate::forms::Hypersurface>();
        assert_send_sync::<crate::forms::VectorField>();
        assert_send_sync::<crate::forms::ChartForm>();
        assert_send_sync::<crate::generation::BracketExpr>();
        assert_send_sync::<crate::homology::HomologyTable>();
        assert_send_sync::<crate::report::Certificate>();
    }
}
