//! Fourier-multiplier operators on periodic grids.
//!
//! All operators share one transform pipeline: a real-to-complex FFT along the
//! last axis followed by complex passes along the remaining axes, giving a
//! half-spectrum array in the canonical row-major layout. Frequencies are
//! integer vectors `k`, and the continuous frequency used by the symbols is
//! `xi_a = k_a / L_a` for box side `L_a`.
//!
//! Symbols:
//!   - Gaussian kernel `sigma^-N exp(-pi |x|^2 / sigma^2)` has multiplier
//!     `exp(-pi sigma^2 |xi|^2)`; exact unit mass, self-dual.
//!   - The shifted Helmholtz solve `(I - dt (Lap - alpha/eps^2 I)) g = f`
//!     uses the exact continuous Laplacian symbol `-4 pi^2 |xi|^2`, matching
//!     the Gaussian above rather than a discrete stencil symbol.

use crate::error::{Error, Result};
use crate::grid::{Grid, ScalarField, VectorField};
use num_complex::Complex64;
use rayon::prelude::*;
use realfft::{ComplexToReal, RealFftPlanner, RealToComplex};
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

const PAR_CHUNK: usize = 1 << 15;

// ---------------------------------------------------------------------------
// plan and table caches
// ---------------------------------------------------------------------------

fn complex_plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    static PLANNER: OnceLock<Mutex<FftPlanner<f64>>> = OnceLock::new();
    let mut planner = PLANNER
        .get_or_init(|| Mutex::new(FftPlanner::new()))
        .lock()
        .unwrap();
    if forward {
        planner.plan_fft_forward(len)
    } else {
        planner.plan_fft_inverse(len)
    }
}

fn real_forward_plan(len: usize) -> Arc<dyn RealToComplex<f64>> {
    static PLANNER: OnceLock<Mutex<RealFftPlanner<f64>>> = OnceLock::new();
    PLANNER
        .get_or_init(|| Mutex::new(RealFftPlanner::new()))
        .lock()
        .unwrap()
        .plan_fft_forward(len)
}

fn real_inverse_plan(len: usize) -> Arc<dyn ComplexToReal<f64>> {
    static PLANNER: OnceLock<Mutex<RealFftPlanner<f64>>> = OnceLock::new();
    PLANNER
        .get_or_init(|| Mutex::new(RealFftPlanner::new()))
        .lock()
        .unwrap()
        .plan_fft_inverse(len)
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct GridKey {
    dims: Vec<usize>,
    box_bits: Vec<u64>,
}

impl GridKey {
    fn of(grid: &Grid) -> GridKey {
        GridKey {
            dims: grid.dims().to_vec(),
            box_bits: grid
                .lower()
                .iter()
                .chain(grid.upper())
                .map(|v| v.to_bits())
                .collect(),
        }
    }
}

type TableCache<K> = OnceLock<Mutex<HashMap<K, Arc<Vec<f64>>>>>;

fn cache_get<K: Clone + Eq + std::hash::Hash>(
    cache: &TableCache<K>,
    key: &K,
    build: impl FnOnce() -> Vec<f64>,
) -> Arc<Vec<f64>> {
    let mut map = cache.get_or_init(|| Mutex::new(HashMap::new())).lock().unwrap();
    if let Some(t) = map.get(key) {
        return t.clone();
    }
    if map.len() > 64 {
        map.clear();
    }
    let t = Arc::new(build());
    map.insert(key.clone(), t.clone());
    t
}

/// `|xi|^2` over the half-spectrum in canonical layout.
fn xi_squared_table(grid: &Grid) -> Arc<Vec<f64>> {
    static CACHE: TableCache<GridKey> = OnceLock::new();
    cache_get(&CACHE, &GridKey::of(grid), || {
        let hd = half_dims(grid.dims());
        let mut table = vec![0.0; hd.iter().product()];
        fill_freq_table(grid, &hd, &mut table, |xi2, _| xi2);
        table
    })
}

fn gaussian_table(grid: &Grid, sigma: f64) -> Arc<Vec<f64>> {
    static CACHE: TableCache<(GridKey, u64)> = OnceLock::new();
    cache_get(&CACHE, &(GridKey::of(grid), sigma.to_bits()), || {
        let xi2 = xi_squared_table(grid);
        xi2.iter()
            .map(|&x| (-std::f64::consts::PI * sigma * sigma * x).exp())
            .collect()
    })
}

fn helmholtz_table(grid: &Grid, dt: f64, alpha: f64, eps: f64) -> Arc<Vec<f64>> {
    static CACHE: TableCache<(GridKey, u64, u64, u64)> = OnceLock::new();
    let key = (GridKey::of(grid), dt.to_bits(), alpha.to_bits(), eps.to_bits());
    cache_get(&CACHE, &key, || {
        let xi2 = xi_squared_table(grid);
        let four_pi2 = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
        let shift = alpha / (eps * eps);
        xi2.iter()
            .map(|&x| 1.0 / (1.0 + dt * (four_pi2 * x + shift)))
            .collect()
    })
}

/// Half-spectrum dims: last axis truncated to `n/2 + 1`.
fn half_dims(dims: &[usize]) -> Vec<usize> {
    let mut hd = dims.to_vec();
    let last = hd.len() - 1;
    hd[last] = hd[last] / 2 + 1;
    hd
}

/// Integer frequency of bin `j` on a full axis of length `n`.
fn freq_of(j: usize, n: usize) -> i64 {
    if j <= n / 2 {
        j as i64
    } else {
        j as i64 - n as i64
    }
}

/// Fills `table[i] = f(|xi|^2, k_last)` over the half-spectrum.
fn fill_freq_table(
    grid: &Grid,
    hd: &[usize],
    table: &mut [f64],
    f: impl Fn(f64, i64) -> f64 + Sync,
) {
    let d = hd.len();
    let dims = grid.dims();
    table
        .par_chunks_mut(hd[d - 1])
        .enumerate()
        .for_each(|(line, chunk)| {
            // decompose line index over the leading axes
            let mut rest = line;
            let mut sq = 0.0;
            for a in (0..d - 1).rev() {
                let j = rest % hd[a];
                rest /= hd[a];
                let xi = freq_of(j, dims[a]) as f64 / grid.side(a);
                sq += xi * xi;
            }
            for (j, v) in chunk.iter_mut().enumerate() {
                let xi = j as f64 / grid.side(d - 1);
                *v = f(sq + xi * xi, j as i64);
            }
        });
}

// ---------------------------------------------------------------------------
// transform pipeline
// ---------------------------------------------------------------------------

/// Half-spectrum of a real field, canonical row-major layout.
pub struct RealSpectrum {
    grid: Grid,
    data: Vec<Complex64>,
}

/// FFT lines of `line` elements in place, in parallel.
fn fft_lines(data: &mut [Complex64], line: usize, plan: &Arc<dyn Fft<f64>>) {
    let scratch_len = plan.get_inplace_scratch_len();
    data.par_chunks_mut(line).for_each_init(
        || vec![Complex64::default(); scratch_len],
        |scratch, chunk| plan.process_with_scratch(chunk, scratch),
    );
}

/// Moves the last axis to the front: `out[(k, rest)] = in[(rest, k)]`.
fn rotate_last_to_front(src: &[Complex64], shape: &[usize], dst: &mut [Complex64]) {
    let last = shape[shape.len() - 1];
    let rest: usize = shape[..shape.len() - 1].iter().product();
    dst.par_chunks_mut(rest).enumerate().for_each(|(k, slab)| {
        for (r, v) in slab.iter_mut().enumerate() {
            *v = src[r * last + k];
        }
    });
}

/// Complex FFT passes over every axis except the (already transformed) last
/// one. `shape` is the half-spectrum shape; the data ends in canonical layout.
fn complex_passes(data: &mut Vec<Complex64>, shape: &[usize], forward: bool) {
    let d = shape.len();
    let mut cur: Vec<usize> = shape.to_vec();
    let mut scratch = vec![Complex64::default(); data.len()];
    for _ in 0..d {
        rotate_last_to_front(data, &cur, &mut scratch);
        cur.rotate_right(1);
        std::mem::swap(data, &mut scratch);
        // after the first rotation the last axis is an untransformed one
        let line = cur[d - 1];
        if cur != shape {
            let plan = complex_plan(line, forward);
            fft_lines(data, line, &plan);
        } else {
            break;
        }
    }
    debug_assert_eq!(cur, shape);
}

/// Forward real transform into the half-spectrum.
pub fn rfft(f: &ScalarField) -> RealSpectrum {
    let grid = f.grid().clone();
    let dims = grid.dims();
    let d = dims.len();
    let nl = dims[d - 1];
    let hd = half_dims(dims);
    let m = hd[d - 1];
    let lines: usize = dims[..d - 1].iter().product();

    let plan = real_forward_plan(nl);
    let scratch_len = plan.get_scratch_len();
    let mut data = vec![Complex64::default(); lines * m];
    data.par_chunks_mut(m)
        .zip(f.values().par_chunks(nl))
        .for_each_init(
            || (vec![0.0; nl], vec![Complex64::default(); scratch_len]),
            |(buf, scratch), (out, row)| {
                buf.copy_from_slice(row);
                plan.process_with_scratch(buf, out, scratch)
                    .expect("r2c length mismatch");
            },
        );

    complex_passes(&mut data, &hd, true);
    RealSpectrum { grid, data }
}

/// Inverse of [`rfft`], normalized so the round trip is the identity.
pub fn irfft(spec: &RealSpectrum) -> ScalarField {
    let grid = spec.grid.clone();
    let dims = grid.dims();
    let d = dims.len();
    let nl = dims[d - 1];
    let hd = half_dims(dims);
    let m = hd[d - 1];
    let lines: usize = dims[..d - 1].iter().product();

    let mut data = spec.data.clone();
    complex_passes(&mut data, &hd, false);

    let plan = real_inverse_plan(nl);
    let scratch_len = plan.get_scratch_len();
    let norm = 1.0 / grid.len() as f64;
    let mut values = vec![0.0; grid.len()];
    values
        .par_chunks_mut(nl)
        .zip(data.par_chunks_mut(m))
        .for_each_init(
            || vec![Complex64::default(); scratch_len],
            |scratch, (out, line)| {
                // roundoff can leave junk in the imaginary parts the real
                // inverse requires to vanish
                line[0].im = 0.0;
                if nl % 2 == 0 {
                    line[m - 1].im = 0.0;
                }
                plan.process_with_scratch(line, out, scratch)
                    .expect("c2r length mismatch");
                for v in out.iter_mut() {
                    *v *= norm;
                }
            },
        );
    ScalarField::from_values(&grid, values).expect("grid length")
}

impl RealSpectrum {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Multiplies the spectrum by a real table in the canonical layout.
    pub fn scale_by(&mut self, table: &[f64]) {
        self.data
            .par_chunks_mut(PAR_CHUNK)
            .zip(table.par_chunks(PAR_CHUNK))
            .for_each(|(d, t)| {
                for (v, s) in d.iter_mut().zip(t) {
                    *v *= *s;
                }
            });
    }
}

// ---------------------------------------------------------------------------
// public operators
// ---------------------------------------------------------------------------

/// Convolution with the unit-mass Gaussian `sigma^-N exp(-pi |x|^2/sigma^2)`.
pub fn gaussian_convolve(f: &ScalarField, sigma: f64) -> Result<ScalarField> {
    if !(sigma > 0.0) {
        return Err(Error::param("sigma", format!("must be positive, got {sigma}")));
    }
    let table = gaussian_table(f.grid(), sigma);
    let mut spec = rfft(f);
    spec.scale_by(&table);
    Ok(irfft(&spec))
}

/// Solves `(I - dt (Lap - alpha/eps^2 I)) g = f` on the periodic box.
pub fn helmholtz_inverse(f: &ScalarField, dt: f64, alpha: f64, eps: f64) -> Result<ScalarField> {
    if !(dt >= 0.0) {
        return Err(Error::param("dt", format!("must be nonnegative, got {dt}")));
    }
    if !(alpha >= 0.0) {
        return Err(Error::param("alpha", format!("must be nonnegative, got {alpha}")));
    }
    if !(eps > 0.0) {
        return Err(Error::param("eps", format!("must be positive, got {eps}")));
    }
    let table = helmholtz_table(f.grid(), dt, alpha, eps);
    let mut spec = rfft(f);
    spec.scale_by(&table);
    Ok(irfft(&spec))
}

/// Spectral gradient (exact derivative of the trigonometric interpolant,
/// Nyquist modes zeroed for symmetry).
pub fn spectral_gradient(f: &ScalarField) -> VectorField {
    let grid = f.grid().clone();
    let dims = grid.dims();
    let d = dims.len();
    let hd = half_dims(dims);
    let spec = rfft(f);
    let two_pi = 2.0 * std::f64::consts::PI;

    let comps: Vec<ScalarField> = (0..d)
        .map(|axis| {
            let mut g = RealSpectrum {
                grid: grid.clone(),
                data: spec.data.clone(),
            };
            let side = grid.side(axis);
            let n_axis = dims[axis];
            // multiply by i 2 pi xi_axis
            g.data
                .par_chunks_mut(hd[d - 1])
                .enumerate()
                .for_each(|(line, chunk)| {
                    let kq = if axis + 1 == d {
                        None
                    } else {
                        let mut rest = line;
                        let mut k = 0i64;
                        for a in (0..d - 1).rev() {
                            let j = rest % hd[a];
                            rest /= hd[a];
                            if a == axis {
                                k = freq_of(j, dims[a]);
                            }
                        }
                        Some(k)
                    };
                    match kq {
                        Some(k) => {
                            // whole line shares the same k on this axis
                            let k = if 2 * (k.unsigned_abs() as usize) == n_axis {
                                0
                            } else {
                                k
                            };
                            let mult = Complex64::new(0.0, two_pi * k as f64 / side);
                            for v in chunk.iter_mut() {
                                *v *= mult;
                            }
                        }
                        None => {
                            for (j, v) in chunk.iter_mut().enumerate() {
                                let k = if 2 * j == n_axis { 0 } else { j as i64 };
                                *v *= Complex64::new(0.0, two_pi * k as f64 / side);
                            }
                        }
                    }
                });
            irfft(&g)
        })
        .collect();
    VectorField::new(comps).expect("components share the grid")
}

// ---------------------------------------------------------------------------
// full complex buffer (round-trip contract and coefficient access)
// ---------------------------------------------------------------------------

/// Full complex Fourier coefficients of a field, indexed by integer frequency
/// vectors `k` with `|k_a| <= dims[a]/2`.
pub struct SpectralBuffer {
    grid: Grid,
    data: Vec<Complex64>,
}

impl SpectralBuffer {
    pub fn forward(f: &ScalarField) -> SpectralBuffer {
        let grid = f.grid().clone();
        let mut data: Vec<Complex64> = f
            .values()
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        let shape = grid.dims().to_vec();
        let d = shape.len();
        // FFT the last axis, then rotate through all axes
        let plan = complex_plan(shape[d - 1], true);
        fft_lines(&mut data, shape[d - 1], &plan);
        complex_passes(&mut data, &shape, true);
        SpectralBuffer { grid, data }
    }

    pub fn inverse(&self) -> ScalarField {
        let shape = self.grid.dims().to_vec();
        let d = shape.len();
        let mut data = self.data.clone();
        let plan = complex_plan(shape[d - 1], false);
        fft_lines(&mut data, shape[d - 1], &plan);
        complex_passes(&mut data, &shape, false);
        let norm = 1.0 / self.grid.len() as f64;
        let values = data.iter().map(|c| c.re * norm).collect();
        ScalarField::from_values(&self.grid, values).expect("grid length")
    }

    /// Normalized coefficient of the mode `exp(2 pi i k . x / L)`.
    pub fn coeff(&self, k: &[i64]) -> Complex64 {
        let dims = self.grid.dims();
        let mut idx = 0usize;
        for a in 0..dims.len() {
            let n = dims[a] as i64;
            let j = k[a].rem_euclid(n) as usize;
            idx = idx * dims[a] + j;
        }
        self.data[idx] / self.grid.len() as f64
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{gradient, GradientMethod};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn wavy(grid: &Grid) -> ScalarField {
        ScalarField::from_fn(grid, |x| {
            (2.0 * PI * x[0]).sin() * (4.0 * PI * x[1]).cos()
                + 0.3 * (6.0 * PI * x[0]).cos()
                + 0.1 * x[0].abs()
        })
    }

    #[test]
    fn real_round_trip() {
        for dims in [vec![16usize, 12], vec![16, 8, 12]] {
            let g = Grid::unit_box(&dims).unwrap();
            let f = wavy(&g);
            let back = irfft(&rfft(&f));
            let scale = f.max().abs().max(1.0);
            for (a, b) in f.values().iter().zip(back.values()) {
                assert!((a - b).abs() / scale < 1e-12, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn complex_buffer_round_trip() {
        let g = Grid::unit_box(&[16, 8, 12]).unwrap();
        let f = wavy(&g);
        let back = SpectralBuffer::forward(&f).inverse();
        for (a, b) in f.values().iter().zip(back.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn coeff_reads_single_mode() {
        let g = Grid::unit_box(&[16, 16]).unwrap();
        let f = ScalarField::from_fn(&g, |x| (2.0 * PI * (3.0 * x[0] + x[1])).cos());
        let spec = SpectralBuffer::forward(&f);
        let c = spec.coeff(&[3, 1]);
        assert_abs_diff_eq!(c.re, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(c.im, 0.0, epsilon = 1e-12);
        assert!(spec.coeff(&[2, 1]).norm() < 1e-12);
    }

    #[test]
    fn gaussian_fixes_constants() {
        let g = Grid::unit_box(&[16, 16, 16]).unwrap();
        let f = ScalarField::constant(&g, 1.0);
        let out = gaussian_convolve(&f, 0.07).unwrap();
        for v in out.values() {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn gaussian_scales_single_modes() {
        let g = Grid::unit_box(&[32, 32]).unwrap();
        let sigma = 0.05;
        for k in [[1i64, 0], [3, 2]] {
            let f = ScalarField::from_fn(&g, |x| {
                (2.0 * PI * (k[0] as f64 * x[0] + k[1] as f64 * x[1])).cos()
            });
            let out = gaussian_convolve(&f, sigma).unwrap();
            let k2 = (k[0] * k[0] + k[1] * k[1]) as f64;
            let expect = (-PI * sigma * sigma * k2).exp();
            for (o, i) in out.values().iter().zip(f.values()) {
                assert_abs_diff_eq!(*o, expect * i, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn gaussian_impulse_matches_direct_quadrature() {
        // Brute-force periodic spatial convolution oracle on a 16^3 grid.
        let n = 16usize;
        let g = Grid::unit_box(&[n, n, n]).unwrap();
        let sigma = 0.3;
        let mut values = vec![0.0; g.len()];
        let source = [3usize, 7, 11];
        values[g.index_of(&source)] = 1.0;
        let f = ScalarField::from_values(&g, values).unwrap();
        let out = gaussian_convolve(&f, sigma).unwrap();

        let x0: Vec<f64> = (0..3).map(|a| g.axis_coord(a, source[a])).collect();
        let cell = g.cell_volume();
        let mut x = [0.0; 3];
        for idx in 0..g.len() {
            g.coords_of(idx, &mut x);
            let mut kernel = 0.0;
            for mx in -1i32..=1 {
                for my in -1i32..=1 {
                    for mz in -1i32..=1 {
                        let dx = x[0] - x0[0] + mx as f64;
                        let dy = x[1] - x0[1] + my as f64;
                        let dz = x[2] - x0[2] + mz as f64;
                        let r2 = dx * dx + dy * dy + dz * dz;
                        kernel += (-PI * r2 / (sigma * sigma)).exp();
                    }
                }
            }
            let oracle = cell * kernel / sigma.powi(3);
            assert!(
                (out.values()[idx] - oracle).abs() < 1e-6,
                "node {idx}: {} vs {oracle}",
                out.values()[idx]
            );
        }
    }

    #[test]
    fn gaussian_preserves_mass() {
        let g = Grid::unit_box(&[24, 24]).unwrap();
        let f = ScalarField::from_fn(&g, |x| (x[0] * 3.0).exp() + (8.0 * PI * x[1]).sin());
        let before = f.integrate();
        let after = gaussian_convolve(&f, 0.04).unwrap().integrate();
        assert!((after - before).abs() <= 1e-10 * before.abs() + 1e-12);
    }

    #[test]
    fn helmholtz_constant_mode() {
        let g = Grid::unit_box(&[16, 16]).unwrap();
        let (dt, alpha, eps) = (1e-3, 2.0, 0.05);
        let f = ScalarField::constant(&g, 3.0);
        let out = helmholtz_inverse(&f, dt, alpha, eps).unwrap();
        let expect = 3.0 / (1.0 + dt * alpha / (eps * eps));
        for v in out.values() {
            assert_abs_diff_eq!(*v, expect, epsilon = 1e-12);
        }
    }

    #[test]
    fn helmholtz_eigenmode() {
        let g = Grid::unit_box(&[32, 32, 32]).unwrap();
        let (dt, alpha, eps) = (2e-4, 1.66, 2.0 / 32.0);
        let k = [2i64, 1, 3];
        let f = ScalarField::from_fn(&g, |x| {
            (2.0 * PI * (2.0 * x[0] + x[1] + 3.0 * x[2])).cos()
        });
        let out = helmholtz_inverse(&f, dt, alpha, eps).unwrap();
        let k2 = k.iter().map(|v| (v * v) as f64).sum::<f64>();
        let expect = 1.0 / (1.0 + dt * (4.0 * PI * PI * k2 + alpha / (eps * eps)));
        for (o, i) in out.values().iter().zip(f.values()) {
            assert_abs_diff_eq!(*o, expect * i, epsilon = 1e-12);
        }
    }

    #[test]
    fn helmholtz_dt_zero_is_identity() {
        let g = Grid::unit_box(&[16, 12]).unwrap();
        let f = wavy(&g);
        let out = helmholtz_inverse(&f, 0.0, 5.0, 0.1).unwrap();
        for (o, i) in out.values().iter().zip(f.values()) {
            assert_abs_diff_eq!(*o, *i, epsilon = 1e-12);
        }
    }

    #[test]
    fn helmholtz_contracts_means() {
        let g = Grid::unit_box(&[16, 16]).unwrap();
        let f = ScalarField::from_fn(&g, |x| 0.7 + x[0] * x[1]);
        let out = helmholtz_inverse(&f, 1e-3, 3.0, 0.05).unwrap();
        assert!(out.integrate().abs() <= f.integrate().abs());
    }

    #[test]
    fn helmholtz_preserves_positivity() {
        let g = Grid::unit_box(&[32, 32]).unwrap();
        let eps = 2.0 / 32.0;
        let f = ScalarField::from_fn(&g, |x| {
            let r = (x[0] * x[0] + x[1] * x[1]).sqrt();
            0.5 * (1.0 - ((r - 0.25) / eps).tanh())
        });
        let out = helmholtz_inverse(&f, eps * eps, 1.66, eps).unwrap();
        assert!(out.min() >= -1e-12, "min {}", out.min());
    }

    #[test]
    fn spectral_gradient_exact_on_modes() {
        let g = Grid::unit_box(&[32, 32]).unwrap();
        let f = ScalarField::from_fn(&g, |x| (2.0 * PI * (3.0 * x[0] + 2.0 * x[1])).sin());
        let grad = spectral_gradient(&f);
        let exact0 = ScalarField::from_fn(&g, |x| {
            3.0 * 2.0 * PI * (2.0 * PI * (3.0 * x[0] + 2.0 * x[1])).cos()
        });
        for (a, b) in grad.component(0).values().iter().zip(exact0.values()) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-10);
        }
    }

    #[test]
    fn gradient_commutes_with_convolution() {
        // Central-difference gradient of the convolution equals the
        // convolution of the gradient: both paths are Fourier multipliers.
        let g = Grid::unit_box(&[24, 24]).unwrap();
        let f = wavy(&g);
        let sigma = 0.06;
        let a = gradient(&gaussian_convolve(&f, sigma).unwrap(), GradientMethod::CentralDifference);
        let smooth = gaussian_convolve(&f, sigma).unwrap();
        let _ = smooth;
        let gb = gradient(&f, GradientMethod::CentralDifference);
        for axis in 0..2 {
            let b = gaussian_convolve(gb.component(axis), sigma).unwrap();
            for (x, y) in a.component(axis).values().iter().zip(b.values()) {
                assert!((x - y).abs() < 1e-10, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = Grid::unit_box(&[16, 16]).unwrap();
        let f = ScalarField::zeros(&g);
        assert!(gaussian_convolve(&f, 0.0).is_err());
        assert!(gaussian_convolve(&f, -1.0).is_err());
        assert!(helmholtz_inverse(&f, -1.0, 1.0, 0.1).is_err());
        assert!(helmholtz_inverse(&f, 1e-3, 1.0, 0.0).is_err());
    }
}
