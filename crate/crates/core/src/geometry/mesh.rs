//! Triangle meshes of surfaces of revolution and OBJ output.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use super::{GeometryError, ProfileCurve};

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    /// Zero-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

impl Mesh {
    /// Samples the coordinate patch on an `nx × ny` grid: `x` uniform over
    /// `[x0, x1]` including both ends, `y = 2πj/ny`. Each grid quad becomes
    /// two triangles and the `y` seam wraps around.
    pub fn from_profile(curve: &ProfileCurve, x0: f64, x1: f64, nx: usize, ny: usize) -> Result<Mesh, GeometryError> {
        if nx < 2 || ny < 2 {
            return Err(GeometryError::GridTooSmall { nx, ny });
        }
        let rows: Vec<Vec<[f64; 3]>> = (0..nx)
            .into_par_iter()
            .map(|i| {
                let x = x0 + (x1 - x0) * i as f64 / (nx - 1) as f64;
                let (v, w) = (curve.v(x)?, curve.w(x)?);
                Ok((0..ny)
                    .map(|j| {
                        let y = std::f64::consts::TAU * j as f64 / ny as f64;
                        [v, w * y.cos(), w * y.sin()]
                    })
                    .collect())
            })
            .collect::<Result<_, GeometryError>>()?;
        let vertices = rows.into_iter().flatten().collect();
        let mut triangles = Vec::with_capacity(2 * (nx - 1) * ny);
        for i in 0..nx - 1 {
            for j in 0..ny {
                let a = i * ny + j;
                let b = i * ny + (j + 1) % ny;
                let c = a + ny;
                let d = b + ny;
                triangles.push([a, c, d]);
                triangles.push([a, d, b]);
            }
        }
        Ok(Mesh { vertices, triangles })
    }

    /// Writes `v x y z` and one-based `f i j k` records.
    pub fn write_obj(&self, out: &mut impl Write) -> io::Result<()> {
        for [x, y, z] in &self.vertices {
            writeln!(out, "v {x:.17e} {y:.17e} {z:.17e}")?;
        }
        for [a, b, c] in &self.triangles {
            writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1)?;
        }
        Ok(())
    }

    pub fn save_obj(&self, path: &Path) -> Result<(), GeometryError> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_obj(&mut w)?;
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{FamilyKind, SurfaceFamily};

    #[test]
    fn counts_and_seam() {
        let s = SurfaceFamily::with_defaults(FamilyKind::Cylinder).unwrap();
        let c = ProfileCurve::new(&s, 1e-10).unwrap();
        let m = Mesh::from_profile(&c, 0.0, 1.0, 4, 4).unwrap();
        assert_eq!(m.vertices.len(), 16);
        assert_eq!(m.triangles.len(), 24);
        assert!(m.triangles.iter().flatten().all(|&k| k < 16));
        assert!(Mesh::from_profile(&c, 0.0, 1.0, 4, 1).is_err());
    }

    #[test]
    fn obj_records() {
        let s = SurfaceFamily::with_defaults(FamilyKind::Cylinder).unwrap();
        let c = ProfileCurve::new(&s, 1e-10).unwrap();
        let m = Mesh::from_profile(&c, 0.0, 1.0, 2, 3).unwrap();
        let mut buf = Vec::new();
        m.write_obj(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 6);
        assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 6);
    }
}
