//! Rational-point counts of monoid schemes, punctured lines, Pell conics and
//! elliptic curves; their ceiling and floor (Puiseux) polynomials; and the
//! absolute zeta functions those polynomials determine.

pub mod arith;
pub mod elliptic;
pub mod fit;
pub mod monoid;
pub mod puiseux;
pub mod repro;
pub mod schemes;
pub mod zeta;

pub use arith::{DomainKind, DomainPoint, PrimePowerDomain};
pub use monoid::{MonoidScheme, MonoidSchemePoint};
pub use puiseux::{PuiseuxPoly, Rational};
pub use zeta::FormalProduct;
