//! Distance sets over finite fields: field arithmetic, quadratic forms and
//! point sets, Fourier restriction data, and the explicit constructions used
//! to test sharpness.

pub mod constructions;
pub mod distance;
pub mod error;
pub mod field;
pub mod geometry;
pub mod io;
pub mod spectral;

pub use distance::{delta, delta_standard, DistanceSet};
pub use error::{Error, Result};
pub use field::{Field, FieldDescriptor, Fq};
pub use geometry::{AffineMap, CoordinatablePlane, CoordinatePlane, FormKind, PointSet, QuadraticForm};
