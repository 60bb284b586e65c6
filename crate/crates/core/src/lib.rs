//! Weierstrass preparation, resultants and discriminants of power series over
//! the integers of a totally ramified p-adic field, computed at finite
//! precision.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: `O_K = Z_p[π]/(E)` modulo `π^N`, with exact valuations.
//! - [`series`], [`poly`]: truncated power series and polynomials over `O_K`,
//!   Weierstrass degree, Newton polygons.
//! - [`weierstrass`]: division and preparation `f = p·u`.
//! - [`resultant`]: `Res_n(f, g) = ∏_{f(z)=0, |z|<1} g(z)` and `Disc_n(f)`.
//! - [`hensel`]: factorisation isolating roots on the unit sphere.
//! - [`dynamics`]: iteration over `F_p`, Sen's congruences, good lifts.
//! - [`universal`]: truncated universal formulas over `Z`.
//! - [`exec`]: sequential or rayon-backed batch evaluation.
//! - [`io`]: JSON wire formats.

pub mod dynamics;
pub mod error;
pub mod exec;
pub mod field;
pub mod hensel;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod resultant;
pub mod series;
pub mod universal;
pub mod weierstrass;

pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{Certified, Field, FieldSpec, OkElement, Valuation};
pub use poly::Polynomial;
pub use series::{NewtonPolygon, PowerSeries, Segment};
pub use weierstrass::{weierstrass_divide, weierstrass_prepare, DistinguishedPoly, WeierstrassDivision, WeierstrassFactorization};
