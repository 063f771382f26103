//! Periodic Cartesian grids and sampled fields.
//!
//! Nodes are cell-centered, `x_j = lower + (j + 0.5) * spacing`, so periodic
//! wraps never duplicate a sample. Scalar fields store one `f64` per node in
//! row-major order (axis 0 slowest, last axis contiguous); that layout is the
//! canonical one used by the field file format.

use crate::error::{Error, Result};
use rayon::prelude::*;

/// Minimum nodes per axis. Coarser grids cannot carry an interface profile.
pub const MIN_DIM: usize = 8;

/// Serial work below this many elements is not worth forking for.
const PAR_CHUNK: usize = 1 << 15;

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    dims: Vec<usize>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    spacing: Vec<f64>,
}

impl Grid {
    /// Builds a periodic grid over the box `[lower, upper]` with `dims` nodes
    /// per axis.
    pub fn new(dims: &[usize], lower: &[f64], upper: &[f64]) -> Result<Grid> {
        let d = dims.len();
        if !(2..=3).contains(&d) {
            return Err(Error::InvalidGrid(format!(
                "dimension must be 2 or 3, got {d}"
            )));
        }
        if lower.len() != d || upper.len() != d {
            return Err(Error::InvalidGrid(
                "box corners must match the grid dimension".into(),
            ));
        }
        for i in 0..d {
            if dims[i] < MIN_DIM {
                return Err(Error::InvalidGrid(format!(
                    "dims[{i}] = {} is below the minimum {MIN_DIM}",
                    dims[i]
                )));
            }
            if !(lower[i].is_finite() && upper[i].is_finite()) || upper[i] <= lower[i] {
                return Err(Error::InvalidGrid(format!(
                    "degenerate box on axis {i}: [{}, {}]",
                    lower[i], upper[i]
                )));
            }
        }
        let spacing = (0..d).map(|i| (upper[i] - lower[i]) / dims[i] as f64).collect();
        Ok(Grid {
            dims: dims.to_vec(),
            lower: lower.to_vec(),
            upper: upper.to_vec(),
            spacing,
        })
    }

    /// Grid over the default box `[-0.5, 0.5]^d`.
    pub fn unit_box(dims: &[usize]) -> Result<Grid> {
        let d = dims.len();
        Grid::new(dims, &vec![-0.5; d], &vec![0.5; d])
    }

    pub fn dim(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn spacing(&self) -> &[f64] {
        &self.spacing
    }

    pub fn side(&self, axis: usize) -> f64 {
        self.upper[axis] - self.lower[axis]
    }

    /// Total node count.
    pub fn len(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// Coordinate of node `i` along `axis` (cell-centered).
    pub fn axis_coord(&self, axis: usize, i: usize) -> f64 {
        self.lower[axis] + (i as f64 + 0.5) * self.spacing[axis]
    }

    /// Row-major strides, last axis contiguous.
    pub fn strides(&self) -> Vec<usize> {
        let d = self.dims.len();
        let mut s = vec![1; d];
        for a in (0..d.saturating_sub(1)).rev() {
            s[a] = s[a + 1] * self.dims[a + 1];
        }
        s
    }

    /// Decomposes a flat index into node coordinates, writing into `out`.
    pub fn coords_of(&self, mut idx: usize, out: &mut [f64]) {
        for a in (0..self.dims.len()).rev() {
            let i = idx % self.dims[a];
            idx /= self.dims[a];
            out[a] = self.axis_coord(a, i);
        }
    }

    /// Flat index of a multi-index.
    pub fn index_of(&self, multi: &[usize]) -> usize {
        let mut idx = 0;
        for a in 0..self.dims.len() {
            idx = idx * self.dims[a] + multi[a];
        }
        idx
    }

    /// True when `x` lies inside the box (componentwise).
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && (0..self.dim()).all(|a| x[a] >= self.lower[a] && x[a] <= self.upper[a])
    }
}

#[derive(Clone, Debug)]
pub struct ScalarField {
    grid: Grid,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: &Grid) -> ScalarField {
        ScalarField {
            grid: grid.clone(),
            values: vec![0.0; grid.len()],
        }
    }

    pub fn constant(grid: &Grid, c: f64) -> ScalarField {
        ScalarField {
            grid: grid.clone(),
            values: vec![c; grid.len()],
        }
    }

    /// Samples `f` at every node. `f` receives the node coordinates.
    pub fn from_fn<F>(grid: &Grid, f: F) -> ScalarField
    where
        F: Fn(&[f64]) -> f64 + Sync,
    {
        let d = grid.dim();
        let mut values = vec![0.0; grid.len()];
        values
            .par_chunks_mut(PAR_CHUNK)
            .enumerate()
            .for_each(|(chunk, vals)| {
                let mut x = [0.0; 3];
                let base = chunk * PAR_CHUNK;
                for (off, v) in vals.iter_mut().enumerate() {
                    grid.coords_of(base + off, &mut x[..d]);
                    *v = f(&x[..d]);
                }
            });
        ScalarField {
            grid: grid.clone(),
            values,
        }
    }

    pub fn from_values(grid: &Grid, values: Vec<f64>) -> Result<ScalarField> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "value buffer has {} entries, grid has {} nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(ScalarField {
            grid: grid.clone(),
            values,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn same_grid(&self, other: &ScalarField) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Midpoint quadrature of the field over the box.
    pub fn integrate(&self) -> f64 {
        pairwise_sum(&self.values) * self.grid.cell_volume()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Applies `f` to every value in place.
    pub fn map_inplace<F>(&mut self, f: F)
    where
        F: Fn(f64) -> f64 + Sync,
    {
        self.values.par_chunks_mut(PAR_CHUNK).for_each(|chunk| {
            for v in chunk {
                *v = f(*v);
            }
        });
    }

    /// Pointwise combination `self[i] = f(self[i], other[i])`.
    pub fn zip_inplace<F>(&mut self, other: &ScalarField, f: F) -> Result<()>
    where
        F: Fn(f64, f64) -> f64 + Sync,
    {
        self.same_grid(other)?;
        self.values
            .par_chunks_mut(PAR_CHUNK)
            .zip(other.values.par_chunks(PAR_CHUNK))
            .for_each(|(a, b)| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = f(*x, *y);
                }
            });
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct VectorField {
    components: Vec<ScalarField>,
}

impl VectorField {
    pub fn new(components: Vec<ScalarField>) -> Result<VectorField> {
        let first = components
            .first()
            .ok_or_else(|| Error::InvalidGrid("vector field needs components".into()))?;
        if components.len() != first.grid().dim() {
            return Err(Error::InvalidGrid(
                "vector field needs one component per axis".into(),
            ));
        }
        for c in &components[1..] {
            if c.grid() != first.grid() {
                return Err(Error::GridMismatch);
            }
        }
        Ok(VectorField { components })
    }

    pub fn zeros(grid: &Grid) -> VectorField {
        VectorField {
            components: (0..grid.dim()).map(|_| ScalarField::zeros(grid)).collect(),
        }
    }

    pub fn grid(&self) -> &Grid {
        self.components[0].grid()
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, a: usize) -> &ScalarField {
        &self.components[a]
    }

    pub fn component_mut(&mut self, a: usize) -> &mut ScalarField {
        &mut self.components[a]
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    pub fn into_components(self) -> Vec<ScalarField> {
        self.components
    }

    /// Pointwise Euclidean norm.
    pub fn magnitude(&self) -> ScalarField {
        let grid = self.grid().clone();
        let mut out = vec![0.0; grid.len()];
        let comps: Vec<&[f64]> = self.components.iter().map(|c| c.values()).collect();
        out.par_chunks_mut(PAR_CHUNK)
            .enumerate()
            .for_each(|(chunk, vals)| {
                let base = chunk * PAR_CHUNK;
                for (off, v) in vals.iter_mut().enumerate() {
                    let i = base + off;
                    let mut s = 0.0;
                    for c in &comps {
                        s += c[i] * c[i];
                    }
                    *v = s.sqrt();
                }
            });
        ScalarField { grid, values: out }
    }
}

/// Which discrete gradient the field operators use.
///
/// Central differences are the default: normalizing `grad u / |grad u|`
/// amplifies the Gibbs oscillations a spectral derivative produces near flat
/// regions. The spectral variant is kept for convergence studies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradientMethod {
    #[default]
    CentralDifference,
    Spectral,
}

/// Gradient of a scalar field, one component per axis.
pub fn gradient(f: &ScalarField, method: GradientMethod) -> VectorField {
    match method {
        GradientMethod::CentralDifference => central_gradient(f),
        GradientMethod::Spectral => crate::spectral::spectral_gradient(f),
    }
}

/// Second-order periodic central differences along every axis.
fn central_gradient(f: &ScalarField) -> VectorField {
    let grid = f.grid();
    let comps = (0..grid.dim())
        .map(|axis| central_derivative(f, axis))
        .collect();
    VectorField { components: comps }
}

/// Periodic central difference along one axis.
pub fn central_derivative(f: &ScalarField, axis: usize) -> ScalarField {
    let grid = f.grid().clone();
    let n = grid.dims()[axis];
    let stride = grid.strides()[axis];
    let block = n * stride;
    let scale = 1.0 / (2.0 * grid.spacing()[axis]);
    let src = f.values();
    let mut out = vec![0.0; src.len()];

    // One block spans a full period of `axis`; blocks are independent.
    out.par_chunks_mut(block)
        .zip(src.par_chunks(block))
        .for_each(|(dst, s)| {
            for i in 0..n {
                let up = ((i + 1) % n) * stride;
                let dn = ((i + n - 1) % n) * stride;
                let row = i * stride;
                for inner in 0..stride {
                    dst[row + inner] = (s[up + inner] - s[dn + inner]) * scale;
                }
            }
        });
    ScalarField { grid, values: out }
}

/// Deterministic fixed-tree (pairwise) summation.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    if v.len() <= 64 {
        return v.iter().sum();
    }
    let mid = v.len() / 2;
    pairwise_sum(&v[..mid]) + pairwise_sum(&v[mid..])
}
