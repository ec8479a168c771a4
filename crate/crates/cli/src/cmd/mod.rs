pub mod boundary;
pub mod dynamics;
pub mod extend;
pub mod gallery;
pub mod reduced;
pub mod spectral;
pub mod validate;
