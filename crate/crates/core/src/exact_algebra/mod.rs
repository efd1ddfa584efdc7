//! Exact arithmetic: rationals, finite fields and towers, polynomials, rational functions.

pub mod factor;
pub mod finite;
pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod rationals;
pub mod resultant;
pub mod ring;
pub mod series;
pub mod sqrt;
pub mod tower;

pub use factor::{factor_finite_field, GfPoly};
pub use finite::{FieldDescriptor, Gf, GfElem, GfEmbedding};
pub use poly::{Poly, PolyRing};
pub use ratfunc::{RatFn, RatFuncs};
pub use rationals::{Rationals, Q};
pub use resultant::{resultant, resultant_field};
pub use ring::{Field, Ring, SqrtField};
pub use series::{Laurent, Series};
pub use sqrt::formal_square_root;
pub use tower::{build_extension, compose_tower, find_embedding, Tower};
