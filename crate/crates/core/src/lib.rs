//! Exact computations with filtered L∞ and dg Lie algebras over the rationals.

pub mod defcomplex;
pub mod exactlin;
pub mod filtered;
pub mod gauge;
pub mod linf;
pub mod mc;
pub mod morphisms;
pub mod simplicial;
pub mod tangent;
