//! Exact computations with additive group actions on affine varieties.
//!
//! An action of `(K, +)` on an affine variety `X` is the same thing as a
//! locally nilpotent derivation `∂` of the coordinate ring `K[X]`. This crate
//! works with such derivations on presented rings `K[x_1, ..., x_n] / I`
//! over the rationals:
//!
//! * [`derivation`]: applying `∂`, the exponential map `exp(s∂)`, orbits,
//!   fixed points, and `∂` on rational functions;
//! * [`cylinder`]: membership in the plinth ideal `Ker ∂ ∩ Im ∂`, the
//!   decision whether a principal open set `D(h)` is an invariant cylinder
//!   (with a slice and the Dixmier trivialization as certificate), bounded
//!   slice non-existence, and principality of the plinth ideal;
//! * [`groebner`], [`linalg`], [`arith`]: the exact algebra underneath;
//! * [`io`]: the spec-file format, canonical printing and the CLI.
//!
//! ```
//! use plinth::io::{parse_spec, print_spoly};
//!
//! let spec = parse_spec("ring fp\nvars x y z\nder x = y\nder y = z\nder z = 0\n").unwrap();
//! let der = spec.derivation().unwrap();
//! let orbit = der.exp_action(&der.ring().var(0)).unwrap();
//! assert_eq!(print_spoly(&orbit, &spec.vars, "s"), "x + s*y + 1/2*s^2*z");
//! ```

pub mod arith;
pub mod cylinder;
pub mod derivation;
pub mod groebner;
pub mod io;
pub mod linalg;

pub use arith::{Monomial, MonomialOrder, Polynomial, RationalFunction, SPoly, Q};
pub use cylinder::{CylinderCertificate, Decision, PlinthCertificate, SearchBounds};
pub use derivation::{Derivation, RingPresentation};
pub use groebner::Ideal;

// The guide's code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/groebner.md")]
    mod groebner {}
    #[doc = include_str!("../../../book/src/derivations.md")]
    mod derivations {}
    #[doc = include_str!("../../../book/src/cylinders.md")]
    mod cylinders {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
