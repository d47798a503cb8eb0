//! Surfaces of revolution generated by the classified profiles.

mod family;
mod mesh;
mod profile;

use std::path::Path;

use thiserror::Error;

use crate::expr::EvalError;
use crate::numeric::QuadratureError;

pub use family::{canonical_param_name, parse_params, CosSubtype, FamilyKind, Interval, SurfaceFamily, SurfaceInfo};
pub use mesh::Mesh;
pub use profile::{ProfileCurve, DEFAULT_TOLERANCE};

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("an arbitrary surface needs an explicit profile f(x)")]
    NeedsProfile,
    #[error("operation needs one of the classified families")]
    NeedsFamily,
    #[error("profile depends on `{0}`; it must be a function of x only")]
    ProfileNotInX(String),
    #[error("malformed parameter `{0}`")]
    BadParameter(String),
    #[error("{family} has no parameter `{name}`")]
    UnknownParameter { family: FamilyKind, name: String },
    #[error("{family}: {message}")]
    Constraint { family: FamilyKind, message: String },
    #[error("parameter `{0}` must be numeric for this operation")]
    SymbolicParameter(String),
    #[error("{0}: the unit-speed condition holds nowhere for these parameters")]
    EmptyDomain(FamilyKind),
    #[error("x = {x} lies outside {domain}")]
    OutsideDomain { x: f64, domain: Interval },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("grid needs nx, ny >= 2, got {nx} x {ny}")]
    GridTooSmall { nx: usize, ny: usize },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Meshes `family` over the bounded part of its domain and writes an OBJ
/// file. `x_range` overrides the default range.
pub fn export_mesh(
    family: &SurfaceFamily,
    nx: usize,
    ny: usize,
    x_range: Option<(f64, f64)>,
    tol: f64,
    path: &Path,
) -> Result<Mesh, GeometryError> {
    let curve = ProfileCurve::new(family, tol)?;
    let (x0, x1) = x_range.unwrap_or_else(|| curve.domain().finite_part());
    let mesh = Mesh::from_profile(&curve, x0, x1, nx, ny)?;
    mesh.save_obj(path)?;
    Ok(mesh)
}
