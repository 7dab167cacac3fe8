//! Lines on the intersection of two quadrics in `P^4`, found chart by chart
//! on the Grassmannian `Gr(2,5)`.

mod grassmannian;
mod lines;
mod quadric;

use thiserror::Error;

use crate::galois_field::FieldError;

pub use grassmannian::{
    coords_from_plucker, line_system, plucker_index, plucker_of, restrict_quadric, Chart, OneForm,
    PluckerVec, PLUCKER_PAIRS,
};
pub use lines::{
    find_lines, jacobian_det, lines_in_chart, pick_one_form, twisted_jacobian_class,
    twisted_jacobian_class_in_chart, CanonKey, Line, LINE_COUNT,
};
pub use quadric::{is_smooth_surface, monomial_index, pencil_determinant, QuadraticForm, NUM_COEFFS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate surface: {0}")]
    DegenerateSurface(String),
    #[error("line is not contained in chart {chart}")]
    NotInChart { chart: Chart },
    #[error("Jacobian determinant vanishes")]
    SingularZero,
    #[error("no one-form is non-degenerate on all lines")]
    SearchExhausted,
    #[error("one-form vanishes on the line")]
    DegenerateOneForm,
    #[error("vector violates the Plücker relations")]
    InvalidPlucker,
    #[error(transparent)]
    Field(#[from] FieldError),
}
