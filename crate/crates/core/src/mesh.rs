use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::numerics::{finite_diff, ResidualReport};
use crate::{from_vec3, to_vec3, Vec3, Vector};

/// Row-major grid of surface points `f(s_i, λ_j)` with quad connectivity.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub rows: usize,
    pub cols: usize,
    pub points: Vec<Vec3>,
    /// Parameter of each row (along the directrix).
    pub s: Vec<f64>,
    /// Parameter of each column (along the rulings).
    pub lambda: Vec<f64>,
}

impl SurfaceMesh {
    pub fn new(s: Vec<f64>, lambda: Vec<f64>, points: Vec<Vec3>) -> Result<Self> {
        let (rows, cols) = (s.len(), lambda.len());
        if rows < 2 || cols < 2 {
            return Err(Error::GridMismatch(format!(
                "mesh must be at least 2x2, got {rows}x{cols}"
            )));
        }
        if points.len() != rows * cols {
            return Err(Error::GridMismatch(format!(
                "{} points for a {rows}x{cols} grid",
                points.len()
            )));
        }
        Ok(SurfaceMesh {
            rows,
            cols,
            points,
            s,
            lambda,
        })
    }

    pub fn at(&self, row: usize, col: usize) -> &Vec3 {
        &self.points[row * self.cols + col]
    }

    /// Zero-based quads, counter-clockwise in `(s, λ)`.
    pub fn quads(&self) -> Vec<[usize; 4]> {
        let mut quads = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows - 1 {
            for j in 0..self.cols - 1 {
                let a = i * self.cols + j;
                quads.push([a, a + self.cols, a + self.cols + 1, a + 1]);
            }
        }
        quads
    }

    /// Floors the third coordinate at `eps` (for renderers of half-space meshes).
    pub fn clamp_z(&mut self, eps: f64) {
        for p in &mut self.points {
            p.z = p.z.max(eps);
        }
    }

    /// Wavefront OBJ: `v` lines, then one-based `f` quads. Coordinates use
    /// 17 significant digits.
    pub fn write_obj<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "# {} x {} ruled surface grid", self.rows, self.cols)?;
        for p in &self.points {
            writeln!(out, "v {:.16e} {:.16e} {:.16e}", p.x, p.y, p.z)?;
        }
        for q in self.quads() {
            writeln!(out, "f {} {} {} {}", q[0] + 1, q[1] + 1, q[2] + 1, q[3] + 1)?;
        }
        Ok(())
    }
}

/// Direction of a ruling at one of its mesh points.
pub(crate) enum RulingShape {
    /// Straight rulings: the chord to the neighbouring column.
    Straight,
    /// Rulings on circles or lines: the tangent of the circle through the
    /// first, middle and last points of the row.
    Circular,
}

impl SurfaceMesh {
    fn ruling_tangent(&self, shape: &RulingShape, i: usize, j: usize) -> Vec3 {
        let cols = self.cols;
        let chord = || {
            let (a, b) = if j + 1 < cols { (j, j + 1) } else { (j - 1, j) };
            self.at(i, b) - self.at(i, a)
        };
        match shape {
            RulingShape::Straight => chord(),
            RulingShape::Circular if cols < 3 => chord(),
            RulingShape::Circular => {
                let a = self.at(i, 0);
                let u = self.at(i, cols / 2) - a;
                let v = self.at(i, cols - 1) - a;
                let w = u.cross(&v);
                if w.norm() <= 1e-12 * u.norm() * v.norm() {
                    return v;
                }
                let center = a
                    + (v.cross(&w) * u.norm_squared() + w.cross(&u) * v.norm_squared())
                        / (2.0 * w.norm_squared());
                w.cross(&(self.at(i, j) - center))
            }
        }
    }

    /// For every row, a reference plane is fixed at the column farthest from
    /// the directrix, and each point contributes `|⟨n, ∂_s f / ‖∂_s f‖⟩|`
    /// with `n = plane_normal(q0, n0, q)` the unit normal at `q` of the
    /// surface through `q0` with normal `n0`. `∂_s f` comes from finite
    /// differences across rows. Points where `∂_s f` and the ruling are
    /// nearly parallel are skipped, as are rows with no usable reference plane.
    pub(crate) fn ruling_plane_residual<F>(
        &self,
        shape: RulingShape,
        plane_normal: F,
    ) -> Result<ResidualReport>
    where
        F: Fn(&Vec3, Vec3, &Vec3) -> Vec3,
    {
        let (rows, cols) = (self.rows, self.cols);
        // ∂_s f, column by column
        let mut ds = vec![Vec3::zeros(); rows * cols];
        for j in 0..cols {
            let col: Vec<Vector> = (0..rows).map(|i| from_vec3(self.at(i, j))).collect();
            for (i, d) in finite_diff(&self.s, &col, 1)?.iter().enumerate() {
                ds[i * cols + j] = to_vec3(d);
            }
        }
        let reference = (0..cols)
            .max_by(|&a, &b| self.lambda[a].abs().total_cmp(&self.lambda[b].abs()))
            .unwrap();
        let mut per_sample = Vec::with_capacity(rows);
        for i in 0..rows {
            let n0 = ds[i * cols + reference].cross(&self.ruling_tangent(&shape, i, reference));
            if n0.norm() < 1e-12 {
                continue;
            }
            let q0 = self.at(i, reference);
            let n0 = n0.normalize();
            let mut worst = 0.0_f64;
            for j in 0..cols {
                let fs = ds[i * cols + j];
                let fl = self.ruling_tangent(&shape, i, j);
                if fs.norm() < 1e-12 || fs.normalize().cross(&fl.normalize()).norm() < 1e-6 {
                    continue;
                }
                let n = plane_normal(q0, n0, self.at(i, j));
                worst = worst.max(n.dot(&fs.normalize()).abs());
            }
            per_sample.push((self.s[i], worst));
        }
        Ok(ResidualReport::from_samples(per_sample))
    }
}
