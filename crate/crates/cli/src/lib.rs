//! Command-line front end: argument parsing, dispatch, and the two small
//! file formats that are CLI-only (SVG figures and Maurer-Cartan problem
//! files).  All mathematics lives in `tropex-core`.

pub mod app;
pub mod mcfile;
pub mod svg;

pub use app::run;
