//! Spectral zeta functions of anharmonic radial oscillators: closed forms,
//! direct spectra, sum rules and functional relations.

pub mod closedform;
pub mod eigensolver;
pub mod iom;
pub mod magnus;
pub mod ptspectrum;
pub mod quadrature;
pub mod roots;
pub mod specfun;
pub mod sumrules;
pub mod spectrum;
pub mod zeta_numeric;
