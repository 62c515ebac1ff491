//! Graded matrix factorizations, maximal Cohen–Macaulay modules and their
//! Grothendieck-group bookkeeping over exact fields.

pub mod catalog;
pub mod field;
pub mod gb;
pub mod groebner;
pub mod kgroup;
pub mod linalg;
pub mod matfac;
pub mod matrix;
pub mod modres;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod selftest;
pub mod univariate;
