//! Position–momentum entropic uncertainty and entropy squeezing of the field.
//!
//! `P(x) = ⟨x|ρ_F|x⟩` is the sum of three coherent branches, one per atomic
//! level, each squared after summation over Fock number:
//! `|Σ q_n A(n)⟨x|n⟩|² + |Σ q_n B(n+1)⟨x|n+1⟩|² + |Σ q_n C(n+1)⟨x|n+1⟩|²`.
//! Momentum uses the Fourier partner `⟨p|n⟩ = (-i)ⁿ ⟨x=p|n⟩` of the same
//! Hermite functions. Entropies are integrated with composite Simpson on a
//! uniform symmetric grid.

use alloc::vec::Vec;
use core::f64::consts::{E, PI, SQRT_2};

use num_complex::Complex64;

use crate::evolution::JointState;
use crate::special::{hermite_functions, simpson};
use crate::{Error, Result};

/// Allowed deviation of the discrete normalization from one.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;

/// Densities below this contribute nothing to `-∫ P ln P`.
pub const DENSITY_FLOOR: f64 = 1e-300;

/// Coherent-state (and vacuum) value `½(1 + ln π)` of `E_x` and `E_p`.
pub fn coherent_entropy() -> f64 {
    0.5 * (1.0 + libm::log(PI))
}

/// Uniform grid on `[-X, X]` with an odd number of points.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    points: Vec<f64>,
    spacing: f64,
    half_width: f64,
}

impl QuadratureGrid {
    pub const DEFAULT_POINTS: usize = 4001;

    pub fn new(half_width: f64, count: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "half_width",
                value: half_width,
                reason: "grid half-width must be positive",
            });
        }
        if count < 3 || count.is_multiple_of(2) {
            return Err(Error::InvalidParameter {
                name: "points",
                value: count as f64,
                reason: "Simpson's rule needs an odd number of at least 3 points",
            });
        }
        let spacing = 2.0 * half_width / (count - 1) as f64;
        let points = (0..count)
            .map(|i| -half_width + i as f64 * spacing)
            .collect();
        Ok(Self {
            points,
            spacing,
            half_width,
        })
    }

    /// `X = √2|α| + 10` with [`Self::DEFAULT_POINTS`] points.
    pub fn for_alpha(alpha: Complex64) -> Self {
        Self::new(SQRT_2 * alpha.norm() + 10.0, Self::DEFAULT_POINTS)
            .expect("default grid parameters are valid")
    }

    /// Smallest half-width that still covers a displaced coherent state.
    pub fn min_half_width(alpha: Complex64) -> f64 {
        SQRT_2 * alpha.norm() + 8.0
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Simpson integral of samples taken on this grid.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        simpson(values, self.spacing)
    }
}

/// Hermite functions `⟨x_i|n⟩` tabulated on a grid for `n = 0..=n_max+1`.
///
/// Built once and shared by every time sample of a run.
#[derive(Debug, Clone)]
pub struct HermiteTable {
    grid: QuadratureGrid,
    n_count: usize,
    // row-major: values[i * n_count + n]
    values: Vec<f64>,
}

impl HermiteTable {
    pub fn new(grid: QuadratureGrid, n_max: usize) -> Self {
        let n_count = n_max + 2;
        let mut values = alloc::vec![0.0; grid.points.len() * n_count];
        for (row, &x) in values.chunks_exact_mut(n_count).zip(grid.points.iter()) {
            hermite_functions(x, row);
        }
        Self {
            grid,
            n_count,
            values,
        }
    }

    pub fn grid(&self) -> &QuadratureGrid {
        &self.grid
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_count..(i + 1) * self.n_count]
    }
}

/// `(E_x, E_p)` and their normalized squeezing measures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyPair {
    pub e_x: f64,
    pub e_p: f64,
    pub big_e_x: f64,
    pub big_e_p: f64,
}

impl EntropyPair {
    pub fn from_entropies(e_x: f64, e_p: f64) -> Self {
        let (big_e_x, big_e_p) = entropy_squeezing(e_x, e_p);
        Self {
            e_x,
            e_p,
            big_e_x,
            big_e_p,
        }
    }

    /// `δx δp = exp(E_x + E_p)`, bounded below by `πe`.
    pub fn uncertainty_product(&self) -> f64 {
        libm::exp(self.e_x + self.e_p)
    }
}

/// Eigenfunction `⟨x|n⟩` of the number operator in position representation.
pub fn fock_position_wavefunction(n: usize, x: f64) -> f64 {
    crate::special::hermite_function(n, x)
}

/// Coefficients of the three branches, `q_n A(n)`, `q_n B(n+1)`, `q_n C(n+1)`.
fn branch_coefficients(state: &JointState<'_>, momentum: bool) -> [Vec<Complex64>; 3] {
    let q = state.q();
    let len = q.len();
    let mut out = [
        Vec::with_capacity(len),
        Vec::with_capacity(len),
        Vec::with_capacity(len),
    ];
    // (-i)^n cycles through 1, -i, -1, i
    let phase = |k: usize| match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    };
    for n in 0..len {
        let (pa, pbc) = if momentum {
            (phase(n), phase(n + 1))
        } else {
            (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
        };
        out[0].push(q[n] * state.a()[n] * pa);
        out[1].push(q[n] * state.b()[n] * pbc);
        out[2].push(q[n] * state.c()[n] * pbc);
    }
    out
}

#[inline]
fn density_at(coeffs: &[Vec<Complex64>; 3], phi: &[f64]) -> f64 {
    let len = coeffs[0].len();
    let mut sa = Complex64::new(0.0, 0.0);
    let mut sb = Complex64::new(0.0, 0.0);
    let mut sc = Complex64::new(0.0, 0.0);
    for n in 0..len {
        sa += coeffs[0][n] * phi[n];
        sb += coeffs[1][n] * phi[n + 1];
        sc += coeffs[2][n] * phi[n + 1];
    }
    sa.norm_sqr() + sb.norm_sqr() + sc.norm_sqr()
}

fn point_density(state: &JointState<'_>, x: f64, momentum: bool) -> f64 {
    let coeffs = branch_coefficients(state, momentum);
    let mut phi = alloc::vec![0.0; state.q().len() + 1];
    hermite_functions(x, &mut phi);
    density_at(&coeffs, &phi)
}

/// `P(x) = ⟨x|ρ_F|x⟩` at a single point.
pub fn position_distribution(state: &JointState<'_>, x: f64) -> f64 {
    point_density(state, x, false)
}

/// `P(p) = ⟨p|ρ_F|p⟩` at a single point.
pub fn momentum_distribution(state: &JointState<'_>, p: f64) -> f64 {
    point_density(state, p, true)
}

fn tabulated_density(state: &JointState<'_>, table: &HermiteTable, momentum: bool) -> Vec<f64> {
    assert!(
        table.n_count > state.q().len(),
        "Hermite table built for a smaller Fock cutoff than the state"
    );
    let coeffs = branch_coefficients(state, momentum);
    (0..table.grid.points.len())
        .map(|i| density_at(&coeffs, table.row(i)))
        .collect()
}

/// `P(x_i)` on every grid point of `table`.
///
/// # Panics
///
/// If `table` was built for a smaller cutoff than the state.
pub fn position_density(state: &JointState<'_>, table: &HermiteTable) -> Vec<f64> {
    tabulated_density(state, table, false)
}

/// `P(p_i)` on every grid point of `table`.
///
/// # Panics
///
/// If `table` was built for a smaller cutoff than the state.
pub fn momentum_density(state: &JointState<'_>, table: &HermiteTable) -> Vec<f64> {
    tabulated_density(state, table, true)
}

/// Shannon entropy `-∫ P ln P` of a density sampled on `grid`.
///
/// Fails with [`Error::GridTooSmall`] when the sampled density does not
/// integrate to one within [`NORMALIZATION_TOLERANCE`].
pub fn shannon_entropy(density: &[f64], grid: &QuadratureGrid) -> Result<f64> {
    assert_eq!(
        density.len(),
        grid.points.len(),
        "density/grid length mismatch"
    );
    let norm = grid.integrate(density);
    if !((norm - 1.0).abs() <= NORMALIZATION_TOLERANCE) {
        return Err(Error::GridTooSmall {
            deficit: 1.0 - norm,
        });
    }
    let integrand: Vec<f64> = density
        .iter()
        .map(|&p| {
            if p < DENSITY_FLOOR {
                0.0
            } else {
                -p * libm::log(p)
            }
        })
        .collect();
    Ok(grid.integrate(&integrand))
}

/// Normalized measures `𝐄 = (πe)^{-1/2} exp(E) - 1`; squeezing when `-1 < 𝐄 < 0`.
pub fn entropy_squeezing(e_x: f64, e_p: f64) -> (f64, f64) {
    let scale = 1.0 / libm::sqrt(PI * E);
    (scale * libm::exp(e_x) - 1.0, scale * libm::exp(e_p) - 1.0)
}

/// Full pipeline: densities on the grid, entropies, squeezing measures.
pub fn entropy_pair(state: &JointState<'_>, table: &HermiteTable) -> Result<EntropyPair> {
    let alpha = state.params().alpha();
    let needed = QuadratureGrid::min_half_width(alpha);
    if table.grid.half_width < needed {
        return Err(Error::InvalidParameter {
            name: "half_width",
            value: table.grid.half_width,
            reason: "grid must span at least sqrt(2)|alpha| + 8",
        });
    }
    let e_x = shannon_entropy(&position_density(state, table), &table.grid)?;
    let e_p = shannon_entropy(&momentum_density(state, table), &table.grid)?;
    Ok(EntropyPair::from_entropies(e_x, e_p))
}
