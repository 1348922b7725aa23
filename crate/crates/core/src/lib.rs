//! Lattice polynomial interpolation over finite distributive lattices.
//!
//! A lattice polynomial in variables `x_1 … x_n` is anything built from the
//! variables and constants with meet and join; every such function has a
//! canonical disjunctive normal form `⋁_I (c_I ∧ ⋀_{i∈I} x_i)` with a
//! monotone coefficient table. This crate answers the interpolation question
//! for value tables given on the vertices of a cuboid
//! `{a_1, b_1} × … × {a_n, b_n}`: whether a polynomial restricts to the
//! table, which one canonically, and what *all* of them are — decided through
//! coefficientwise bounds in the Boolean extension of the lattice rather than
//! by search. A deliberately naive brute-force oracle ships alongside the
//! solver so every answer can be cross-checked by exhaustive enumeration.
//!
//! ```
//! use latpoly::{CuboidProblem, DistributiveLattice, LatticeSpec};
//!
//! // The chain 0 < 1 < 2 < 3, a one-dimensional cuboid {1, 2},
//! // and the identity table f(1) = 1, f(2) = 2.
//! let l = DistributiveLattice::build(&LatticeSpec::Chain(4)).unwrap();
//! let prob = CuboidProblem::new(
//!     &l,
//!     vec![(l.element_at(1), l.element_at(2))],
//!     vec![l.element_at(1), l.element_at(2)],
//! )
//! .unwrap();
//!
//! let sol = prob.solve();
//! assert!(sol.feasible);
//! // Four polynomials restrict to f: coefficient pairs {0,1} × {2,3}.
//! assert_eq!(prob.enumerate_solutions(1_000).unwrap().len(), 4);
//! ```
//!
//! Lattices are represented by Birkhoff duality — elements are downsets of
//! the poset of join-irreducibles, packed into bit masks — which keeps meet,
//! join, and the order test at machine-word cost and makes the Boolean
//! extension literally the full powerset ([`lattice`], [`boolean`]).
//! [`solver`] implements the feasibility test and the solution-set
//! description, [`oracle`] the independent ground truth, [`textio`] and
//! [`render`] the file format and display used by the CLI.
//!
//! The `parallel` feature (on by default) chunks enumeration work across
//! threads; output order is identical either way.

pub mod boolean;
pub mod error;
pub mod lattice;
pub mod oracle;
mod par;
pub mod polynomial;
pub mod render;
pub mod solver;
pub mod textio;

pub use boolean::BoolElement;
pub use error::{BuildError, CapExceeded, FunctionCapExceeded, ProblemError};
pub use lattice::{DistributiveLattice, LatticeElement, LatticeSpec, MAX_IRREDUCIBLES};
pub use oracle::{all_polynomial_functions, brute_b_interpolate, brute_interpolate, OracleConfig};
pub use polynomial::{Carrier, PolynomialDnf};
pub use solver::{
    check_rg, goodstein, CuboidProblem, Infeasibility, MonotoneWitness, PairStarWitness,
    RgWitness, SolutionSet, StarSide, StarWitness, MAX_ARITY,
};
pub use textio::{parse_problem, parse_utility, utility_to_problem, ParseError, ProblemFile};
