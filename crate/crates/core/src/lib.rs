//! Exact computer algebra for cluster structures compatible with
//! Belavin–Drinfeld Poisson–Lie brackets on `SL_n` and `GL_n`.

pub mod cluster;
pub mod exactnum;
pub mod genminor;
pub mod laurent;
pub mod paperscases;
pub mod rmatrix;
pub mod rootdata;
pub mod sklyanin;
