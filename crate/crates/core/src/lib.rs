//! Automorphism groups and isomorphism testing for directed graphs.
//!
//! The method builds a *sequence of partitions* of the vertex set: starting
//! from the trivial partition, cells are split by set refinements (available
//! degree towards a pivot cell) and vertex refinements (adjacency towards an
//! individualized vertex) until every vertex has been discarded. Levels that
//! must individualize a vertex from a cell with no better option are
//! backtracking levels.
//!
//! * [`autgroup::search_automorphisms`] explores alternatives at every
//!   backtracking level and returns generators, orbits and the group order.
//!   Alternatives are cut short at the first sub-partition of their level,
//!   and the rest of the automorphism is inferred.
//! * [`isotest::are_isomorphic`] uses those groups to match one graph's
//!   sequence against the other graph.
//!
//! ```
//! use symseq::{families, isotest, autgroup, sequence};
//!
//! let g = families::petersen();
//! let seq = sequence::generate_sequence(&g);
//! let (aut, _) = autgroup::search_automorphisms(&g, &seq);
//! assert_eq!(aut.order, 120u32.into());
//!
//! let h = g.apply_permutation(&symseq::Permutation::from_images(vec![3, 1, 4, 0, 5, 9, 2, 6, 8, 7]).unwrap()).unwrap();
//! assert_eq!(isotest::are_isomorphic(&g, &h).verdict, isotest::Verdict::Isomorphic);
//! ```

pub mod autgroup;
pub mod error;
pub mod families;
pub mod graph;
pub mod isotest;
pub mod oracle;
pub mod partition;
pub mod perm;
mod search;
pub mod sequence;

pub use error::{FamilyError, GraphError, OracleError, RefineError};
pub use graph::{AdjCode, DegreeTriple, Graph};
pub use perm::Permutation;
pub use search::SearchStats;
