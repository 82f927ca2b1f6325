//! Presented algebras, structure-constant algebras, finite modules and
//! homomorphisms between them.

mod hom;
mod module;
mod presented;
mod structure;
mod truncate;

pub use hom::{compose, hom_enumerate, truncation_map, Algebra, AlgebraHom, Element};
pub use module::FiniteModule;
pub use presented::PresentedAlgebra;
pub use structure::{all_vectors, count_vectors, vector_index, Quotient, StructureAlgebra};
pub use truncate::{default_degree, finite_structure, monomials_of_degree, truncate, truncation_is_exact, Truncation};

/// Default number of candidate tuples an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Anything [`validate`] can check.
pub enum Validatable<'a> {
    Presented(&'a PresentedAlgebra),
    Structure(&'a StructureAlgebra),
    Module(&'a FiniteModule, &'a Algebra),
    Hom(&'a AlgebraHom),
}

/// Lists every violated invariant; empty means valid.
pub fn validate(obj: Validatable<'_>) -> Vec<String> {
    match obj {
        Validatable::Presented(b) => b.violations(),
        Validatable::Structure(s) => s.violations(),
        Validatable::Module(m, Algebra::Presented(b)) => m.violations_over(b),
        Validatable::Module(m, Algebra::Structure(s)) => m.violations_over_structure(s),
        Validatable::Hom(h) => h.violations(),
    }
}
