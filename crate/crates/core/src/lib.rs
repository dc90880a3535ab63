//! Exact facial and tangential structure of polyhedral cones.
//!
//! Cones are described by generators (rays plus lineality) and/or
//! halfspaces (`<a, x> >= 0` plus equations). The dual uses the `>= 0`
//! convention and the polar is its negative, `<s, x> <= 0`.

pub mod cone;
pub mod error;
pub mod exactla;
pub mod facelat;
pub mod fdc;
pub mod paperbench;
pub mod report;
pub mod tangents;

pub use cone::{CanonicalForm, Cone};
pub use error::{Error, Result};
pub use exactla::{Field, Matrix, Rational, Scalar, Vector};
pub use facelat::{ExposureCertificate, Face};
pub use report::{CertificateResult, CheckReport, Status};
pub use tangents::TangentFamily;
