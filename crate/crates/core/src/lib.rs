pub mod galois_field;
pub mod linalg;
pub mod polysolve;
pub mod geometry;
pub mod gw;
pub mod pipeline;
