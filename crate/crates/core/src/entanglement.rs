//! Reduced atomic density matrix and the atom–field entanglement entropy.
//!
//! The global state is pure, so the field entropy equals the atomic one and
//! only the 3×3 matrix `ρ_A = Tr_F |ψ⟩⟨ψ|` has to be diagonalized. Its
//! eigenvalues come from the trigonometric (Cardano) solution of the
//! characteristic cubic `ξ³ + α₁ξ² + α₂ξ + α₃ = 0`:
//!
//! ```text
//! ξ_j = -α₁/3 + (2/3) √(α₁² - 3α₂) cos[β + 2π(j-1)/3]
//! β   = (1/3) arccos[(9α₁α₂ - 2α₁³ - 27α₃) / (2 (α₁² - 3α₂)^{3/2})]
//! ```
//!
//! A (near) triply degenerate spectrum makes the denominator vanish; below
//! [`DEGENERACY_THRESHOLD`] the eigenvalues come from a Jacobi sweep instead.
//! The same fallback handles a near double root (pair closer than
//! [`PAIR_SEPARATION_FLOOR`]), which the invariants only fix to about √ε.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::evolution::JointState;

/// Discriminant `α₁² - 3α₂` below which the Jacobi fallback is used.
pub const DEGENERACY_THRESHOLD: f64 = 1e-14;

/// Separation of the two closest roots below which the Jacobi fallback is used.
pub const PAIR_SEPARATION_FLOOR: f64 = 1e-7;

pub type Matrix3 = [[Complex64; 3]; 3];

/// Coefficients and angle of the closed-form solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicSolution {
    /// Eigenvalues clamped to `[0, 1]`, sorted descending.
    pub xi: [f64; 3],
    pub alpha1: f64,
    pub alpha2: f64,
    pub alpha3: f64,
    /// `None` when the degeneracy fallback produced `xi`.
    pub beta: Option<f64>,
}

/// `ρ_A` together with its spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomDensityMatrix {
    rho: Matrix3,
    cubic: CubicSolution,
}

impl AtomDensityMatrix {
    /// Diagonalizes an arbitrary Hermitian matrix.
    pub fn new(rho: Matrix3) -> Self {
        Self {
            rho,
            cubic: cardano_eigenvalues(&rho),
        }
    }

    pub fn rho(&self) -> &Matrix3 {
        &self.rho
    }

    pub fn eigenvalues(&self) -> &[f64; 3] {
        &self.cubic.xi
    }

    pub fn cubic(&self) -> &CubicSolution {
        &self.cubic
    }

    pub fn trace(&self) -> f64 {
        self.rho[0][0].re + self.rho[1][1].re + self.rho[2][2].re
    }

    /// Von Neumann entropy in nats.
    pub fn entropy(&self) -> f64 {
        von_neumann_entropy(&self.cubic.xi)
    }
}

/// `ρ_A = Tr_F |ψ⟩⟨ψ|`.
///
/// The atom-1 component of Fock number `m` carries `q_m A(m)`, atoms 2 and 3
/// carry `q_{m-1} B(m)` and `q_{m-1} C(m)`. Pairing equal photon numbers gives
/// diagonal and `ρ₂₃` terms over the same index `n`, while `ρ₁₂` and `ρ₁₃` pair
/// `q_{n+1} A(n+1)` with `q_n B(n+1)`.
pub fn reduced_density(state: &JointState<'_>) -> AtomDensityMatrix {
    let q = state.q();
    let w = state.weights();
    let (a, b, c) = (state.a(), state.b(), state.c());
    let zero = Complex64::new(0.0, 0.0);
    let mut rho = [[zero; 3]; 3];
    let (mut r11, mut r22, mut r33) = (0.0, 0.0, 0.0);
    let (mut r12, mut r13, mut r23) = (zero, zero, zero);
    for n in 0..q.len() {
        r11 += w[n] * a[n].norm_sqr();
        r22 += w[n] * b[n].norm_sqr();
        r33 += w[n] * c[n].norm_sqr();
        r23 += b[n] * c[n].conj() * w[n];
        if n + 1 < q.len() {
            let upper = q[n + 1] * a[n + 1];
            r12 += upper * (q[n] * b[n]).conj();
            r13 += upper * (q[n] * c[n]).conj();
        }
    }
    rho[0][0] = Complex64::new(r11, 0.0);
    rho[1][1] = Complex64::new(r22, 0.0);
    rho[2][2] = Complex64::new(r33, 0.0);
    rho[0][1] = r12;
    rho[1][0] = r12.conj();
    rho[0][2] = r13;
    rho[2][0] = r13.conj();
    rho[1][2] = r23;
    rho[2][1] = r23.conj();
    AtomDensityMatrix::new(rho)
}

/// Eigenvalues of a Hermitian unit-trace 3×3 matrix by the trigonometric
/// cubic formula.
///
/// The arccos argument is clamped to `[-1, 1]`. Because the pair of closest
/// roots is ill-conditioned near a double root, that pair is re-derived from
/// the isolated root through the trace and the remaining invariants. Results
/// are clamped to `[0, 1]` and sorted descending.
pub fn cardano_eigenvalues(rho: &Matrix3) -> CubicSolution {
    let r = |i: usize, j: usize| rho[i][j];
    let alpha1 = -(r(0, 0).re + r(1, 1).re + r(2, 2).re);
    let alpha2 = (r(0, 0) * r(1, 1) + r(1, 1) * r(2, 2) + r(2, 2) * r(0, 0)
        - r(0, 1) * r(1, 0)
        - r(1, 2) * r(2, 1)
        - r(2, 0) * r(0, 2))
    .re;
    let alpha3 =
        (-r(0, 0) * r(1, 1) * r(2, 2) - r(0, 1) * r(1, 2) * r(2, 0) - r(0, 2) * r(2, 1) * r(1, 0)
            + r(0, 0) * r(1, 2) * r(2, 1)
            + r(1, 1) * r(2, 0) * r(0, 2)
            + r(2, 2) * r(0, 1) * r(1, 0))
        .re;

    let fallback = || {
        let mut xi = hermitian_eigenvalues(rho);
        finish(&mut xi);
        CubicSolution {
            xi,
            alpha1,
            alpha2,
            alpha3,
            beta: None,
        }
    };
    let disc = alpha1 * alpha1 - 3.0 * alpha2;
    if !(disc >= DEGENERACY_THRESHOLD) {
        return fallback();
    }

    let ratio = (9.0 * alpha1 * alpha2 - 2.0 * alpha1 * alpha1 * alpha1 - 27.0 * alpha3)
        / (2.0 * disc * libm::sqrt(disc));
    let beta = libm::acos(ratio.clamp(-1.0, 1.0)) / 3.0;
    let radius = 2.0 / 3.0 * libm::sqrt(disc);
    let mut xi = [0.0; 3];
    for (j, x) in xi.iter_mut().enumerate() {
        *x = -alpha1 / 3.0 + radius * libm::cos(beta + 2.0 * PI * j as f64 / 3.0);
    }
    sort_desc(&mut xi);
    if refine_close_pair(&mut xi, -alpha1, alpha2, -alpha3) < PAIR_SEPARATION_FLOOR {
        return fallback();
    }
    finish(&mut xi);
    CubicSolution {
        xi,
        alpha1,
        alpha2,
        alpha3,
        beta: Some(beta),
    }
}

/// Replaces the two closest roots using `ξ_a + ξ_b = tr - ξ_iso` and
/// `ξ_a ξ_b = det / ξ_iso` (or `m₂ - ξ_iso (ξ_a + ξ_b)` for a small `ξ_iso`).
/// Returns the separation of the refined pair.
fn refine_close_pair(xi: &mut [f64; 3], trace: f64, minors: f64, det: f64) -> f64 {
    let (iso, lo, hi) = if xi[0] - xi[1] >= xi[1] - xi[2] {
        (0, 1, 2)
    } else {
        (2, 0, 1)
    };
    let isolated = xi[iso];
    let sum = trace - isolated;
    let product = if isolated.abs() >= sum.abs() && isolated != 0.0 {
        det / isolated
    } else {
        minors - isolated * sum
    };
    let half = 0.5 * sum;
    let gap = half * half - product;
    if gap <= 0.0 {
        // a numerically complex pair is a double root
        xi[lo] = half;
        xi[hi] = half;
        return 0.0;
    }
    let root = libm::sqrt(gap);
    let big = if half >= 0.0 {
        half + root
    } else {
        half - root
    };
    let small = product / big;
    xi[lo] = big.max(small);
    xi[hi] = big.min(small);
    sort_desc(xi);
    2.0 * root
}

fn finish(xi: &mut [f64; 3]) {
    for x in xi.iter_mut() {
        *x = x.clamp(0.0, 1.0);
    }
    sort_desc(xi);
}

fn sort_desc(xi: &mut [f64; 3]) {
    xi.sort_unstable_by(|a, b| b.total_cmp(a));
}

/// Eigenvalues of a Hermitian 3×3 matrix via cyclic Jacobi rotations on its
/// real 6×6 embedding `[[Re, -Im], [Im, Re]]` (every eigenvalue appears twice).
pub fn hermitian_eigenvalues(rho: &Matrix3) -> [f64; 3] {
    let mut m = [[0.0f64; 6]; 6];
    for i in 0..3 {
        for j in 0..3 {
            let z = rho[i][j];
            m[i][j] = z.re;
            m[i + 3][j + 3] = z.re;
            m[i][j + 3] = -z.im;
            m[i + 3][j] = z.im;
        }
    }
    let mut d = jacobi_eigenvalues(m);
    d.sort_unstable_by(|a, b| b.total_cmp(a));
    [
        0.5 * (d[0] + d[1]),
        0.5 * (d[2] + d[3]),
        0.5 * (d[4] + d[5]),
    ]
}

fn jacobi_eigenvalues<const N: usize>(mut m: [[f64; N]; N]) -> [f64; N] {
    for _sweep in 0..64 {
        let mut off = 0.0;
        let mut diag = 0.0;
        for i in 0..N {
            diag += m[i][i] * m[i][i];
            for j in (i + 1)..N {
                off += m[i][j] * m[i][j];
            }
        }
        if off <= 1e-34 * diag.max(1e-300) || off == 0.0 {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = m[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..N {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..N {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
            }
        }
    }
    core::array::from_fn(|i| m[i][i])
}

/// `S = -Σ ξ ln ξ` with `0 ln 0 = 0`.
pub fn von_neumann_entropy(xi: &[f64; 3]) -> f64 {
    xi.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * libm::log(x))
        .sum()
}

/// Entanglement entropy `S_F(t) = S_A(t)` of an analytic state.
pub fn field_entropy(state: &JointState<'_>) -> f64 {
    reduced_density(state).entropy()
}
