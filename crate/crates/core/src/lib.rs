//! Certified strong irreducibility and strong coprimality for integer
//! polynomials.
//!
//! A polynomial `f` is *strongly irreducible* when `f(t^k)` is irreducible
//! over ℚ for every `k ≥ 1`, and `f`, `g` are *strongly coprime* when
//! `f(t^k)` and `g(t^l)` never share a root. This crate decides both
//! properties for the cases Newton-polygon criteria and quadratic-field ideal
//! arithmetic can reach, returning replayable certificates rather than bare
//! booleans.

pub mod criteria;
pub mod exactmath;
pub mod factorpoly;
pub mod newton;
pub mod poly;
pub mod quadfield;
pub mod twistknot;

pub use criteria::{decide_strong_irreducibility, Certificate, Criterion, Verdict};
pub use exactmath::{BigInt, BigRational, Valuation};
pub use factorpoly::{factor_mod_p, factor_over_q, is_irreducible_q, Factorization};
pub use newton::{newton_polygon, NewtonEdge, NewtonPolygon};
pub use poly::{IntPolynomial, RatPolynomial};
pub use quadfield::{QuadIdeal, QuadInt};
pub use twistknot::{alexander_twist, certify_twist_coprime, Branch, TwistCoprimalityTrace};
