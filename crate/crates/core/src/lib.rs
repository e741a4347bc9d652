//! Exact computations for slope stability of tangent bundles on smooth
//! projective toric varieties.

pub mod corpus;
pub mod exactlin;
pub mod fan;
pub mod formats;
pub mod hull;
pub mod kleinschmidt;
pub mod klyachko;
pub mod polytope;
pub mod stability;
pub mod surfaces;
