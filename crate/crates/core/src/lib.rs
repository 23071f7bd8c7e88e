//! Finite ordered-algebra workbench: lattices, lambda-lattices, ordered
//! semirings, and orthomodular pseudorings, with derived Sasaki-style
//! operation pairs, adjointness checks, and bounded countermodel search.

pub mod algebra;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod laws;
pub mod poset;
pub mod sasaki;
pub mod search;
pub mod tables;
pub mod terms;

pub use algebra::{Algebra, Kind};
pub use error::{Error, Result};
pub use poset::FinitePoset;
pub use tables::{BinaryTable, UnaryTable};
pub use terms::{check_law, check_law_sequential, parse_law, parse_term, Law, Term, Verdict};
