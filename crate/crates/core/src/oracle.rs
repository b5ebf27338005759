//! Brute-force check of the analytic solution: classical RK4 on
//! `i dψ/dt = V(t) ψ` over the truncated joint basis `|j, n⟩`.
//!
//! `V(t) = λ f(vt) (R σ₁₃ + σ₃₁ R† + R σ₁₂ + σ₂₁ R†)` with `R = a g(n̂)`, so the
//! only nonzero elements are `⟨1,n| V |2,n+1⟩ = ⟨1,n| V |3,n+1⟩ = λ f √(n+1) g(n+1)`.
//! `R` annihilates `|j, 0⟩`, so `g(0)` never enters.
//!
//! The oracle keeps Fock states `0..=n_max+1`, one more than the field
//! preparation, so that every component `q_n B(n+1) |2, n+1⟩` of the analytic
//! state is representable.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::entanglement::Matrix3;
use crate::evolution::JointState;
use crate::model::{FieldAmplitudes, ModelParams};
use crate::{Error, Result};

/// Largest tolerated change of `‖ψ‖²` over an integration.
pub const NORM_DRIFT_LIMIT: f64 = 1e-6;

/// Recommended step `0.01/λ`.
pub fn default_step(params: &ModelParams) -> f64 {
    0.01 / params.lambda()
}

/// Sparse Hermitian matrix in coordinate form (both triangles stored).
#[derive(Debug, Clone, PartialEq)]
pub struct SparseHermitian {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseHermitian {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let mut m = alloc::vec![alloc::vec![Complex64::new(0.0, 0.0); self.dim]; self.dim];
        for &(i, j, v) in &self.entries {
            m[i][j] += v;
        }
        m
    }

    /// `out = M x`.
    pub fn apply(&self, x: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for &(i, j, v) in &self.entries {
            out[i] += v * x[j];
        }
    }
}

/// Flat index of `|level, n⟩`, `level ∈ {1, 2, 3}`.
#[inline]
pub fn basis_index(level: usize, n: usize, fock_dim: usize) -> usize {
    (level - 1) * fock_dim + n
}

/// `V(t)` on Fock states `0..fock_dim` (dimension `3 fock_dim`).
///
/// # Panics
///
/// If `fock_dim > n_max + 2`, which would need `g` beyond the cached table.
pub fn build_interaction_generator(
    params: &ModelParams,
    fock_dim: usize,
    t: f64,
) -> SparseHermitian {
    let mut m = static_couplings(params, fock_dim);
    let f = params.shape(t);
    for e in m.entries.iter_mut() {
        e.2 *= f;
    }
    m
}

fn static_couplings(params: &ModelParams, fock_dim: usize) -> SparseHermitian {
    assert!(
        fock_dim <= params.n_max() + 2,
        "oracle basis exceeds the tabulated nonlinearity"
    );
    let mut entries = Vec::new();
    for n in 0..fock_dim.saturating_sub(1) {
        let v = params.lambda() * libm::sqrt((n + 1) as f64) * params.g(n + 1);
        let v = Complex64::new(v, 0.0);
        let top = basis_index(1, n, fock_dim);
        for level in [2, 3] {
            let low = basis_index(level, n + 1, fock_dim);
            entries.push((top, low, v));
            entries.push((low, top, v.conj()));
        }
    }
    SparseHermitian {
        dim: 3 * fock_dim,
        entries,
    }
}

/// Dense joint state on `3 (n_max + 2)` basis vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleState {
    psi: Vec<Complex64>,
    t: f64,
    fock_dim: usize,
    initial_norm: f64,
}

impl OracleState {
    /// `ψ(0) = Σ q_n |1, n⟩`.
    pub fn initial(field: &FieldAmplitudes) -> Self {
        let fock_dim = field.n_max() + 2;
        let mut psi = alloc::vec![Complex64::new(0.0, 0.0); 3 * fock_dim];
        for (n, &q) in field.q().iter().enumerate() {
            psi[basis_index(1, n, fock_dim)] = q;
        }
        let initial_norm = field.weights().iter().sum();
        Self {
            psi,
            t: 0.0,
            fock_dim,
            initial_norm,
        }
    }

    /// Embeds an analytic state: `q_n A(n)` at `|1,n⟩`, `q_n B(n+1)` at
    /// `|2,n+1⟩`, `q_n C(n+1)` at `|3,n+1⟩`.
    pub fn from_analytic(state: &JointState<'_>) -> Self {
        let fock_dim = state.n_max() + 2;
        let mut psi = alloc::vec![Complex64::new(0.0, 0.0); 3 * fock_dim];
        for (n, &q) in state.q().iter().enumerate() {
            psi[basis_index(1, n, fock_dim)] = q * state.a()[n];
            psi[basis_index(2, n + 1, fock_dim)] = q * state.b()[n];
            psi[basis_index(3, n + 1, fock_dim)] = q * state.c()[n];
        }
        let initial_norm = state.weights().iter().sum();
        Self {
            psi,
            t: state.t(),
            fock_dim,
            initial_norm,
        }
    }

    pub fn psi(&self) -> &[Complex64] {
        &self.psi
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn fock_dim(&self) -> usize {
        self.fock_dim
    }

    pub fn norm_sqr(&self) -> f64 {
        self.psi.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Amplitude `⟨level, n|ψ⟩`.
    pub fn amplitude(&self, level: usize, n: usize) -> Complex64 {
        self.psi[basis_index(level, n, self.fock_dim)]
    }

    /// Integrates from the current time to `t_end` with steps no larger than `dt`.
    pub fn advance_to(&mut self, params: &ModelParams, t_end: f64, dt: f64) -> Result<()> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "dt",
                value: dt,
                reason: "step must be positive",
            });
        }
        if !(t_end >= self.t) {
            return Err(Error::InvalidParameter {
                name: "t_end",
                value: t_end,
                reason: "integration only runs forward in time",
            });
        }
        let span = t_end - self.t;
        let steps = libm::ceil(span / dt - 1e-9).max(0.0) as usize;
        if steps == 0 {
            self.t = t_end;
            return Ok(());
        }
        let h = span / steps as f64;
        let generator = static_couplings(params, self.fock_dim);
        let mut rk = Rk4Workspace::new(self.psi.len());
        let t0 = self.t;
        for k in 0..steps {
            let t = t0 + k as f64 * h;
            rk.step(&generator, params, &mut self.psi, t, h);
        }
        self.t = t_end;
        let drift = (self.norm_sqr() - self.initial_norm).abs();
        if drift > NORM_DRIFT_LIMIT {
            return Err(Error::StepSize { dt, drift });
        }
        Ok(())
    }

    /// `Tr_F |ψ⟩⟨ψ|` summed directly over the dense vector.
    pub fn reduced_atom_density(&self) -> Matrix3 {
        let mut rho = [[Complex64::new(0.0, 0.0); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for n in 0..self.fock_dim {
                    rho[i][j] += self.amplitude(i + 1, n) * self.amplitude(j + 1, n).conj();
                }
            }
        }
        rho
    }

    /// `⟨(a†a)^k⟩`.
    pub fn number_moment(&self, k: u32) -> f64 {
        let mut sum = 0.0;
        for level in 1..=3 {
            for n in 0..self.fock_dim {
                sum += libm::pow(n as f64, f64::from(k)) * self.amplitude(level, n).norm_sqr();
            }
        }
        sum
    }

    /// `⟨aʳ⟩` by applying the ladder operator `r` times to the dense vector.
    pub fn annihilation_moment(&self, r: usize) -> Complex64 {
        let mut v = self.psi.clone();
        for _ in 0..r {
            v = self.lower(&v);
        }
        self.inner(&v)
    }

    /// `(4(Δx)² - 1, 4(Δp)² - 1)` with `x = (a+a†)/2`, `p = (a-a†)/2i`.
    pub fn quadrature_parameters(&self) -> (f64, f64) {
        let a = self.lower(&self.psi);
        let ad = self.raise(&self.psi);
        let half = Complex64::new(0.5, 0.0);
        let x: Vec<Complex64> = a.iter().zip(&ad).map(|(u, v)| (u + v) * half).collect();
        let minus_half_i = Complex64::new(0.0, -0.5);
        let p: Vec<Complex64> = a
            .iter()
            .zip(&ad)
            .map(|(u, v)| (u - v) * minus_half_i)
            .collect();
        let var = |w: &[Complex64]| {
            let mean = self.inner(w).re;
            let sq: f64 = w.iter().map(|z| z.norm_sqr()).sum();
            sq - mean * mean
        };
        (4.0 * var(&x) - 1.0, 4.0 * var(&p) - 1.0)
    }

    fn inner(&self, v: &[Complex64]) -> Complex64 {
        self.psi.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
    }

    fn lower(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.fock_dim;
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); v.len()];
        for level in 0..3 {
            for n in 1..d {
                out[level * d + n - 1] = v[level * d + n] * libm::sqrt(n as f64);
            }
        }
        out
    }

    fn raise(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.fock_dim;
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); v.len()];
        for level in 0..3 {
            for n in 0..d - 1 {
                out[level * d + n + 1] = v[level * d + n] * libm::sqrt((n + 1) as f64);
            }
        }
        out
    }
}

struct Rk4Workspace {
    k: [Vec<Complex64>; 4],
    tmp: Vec<Complex64>,
}

impl Rk4Workspace {
    fn new(dim: usize) -> Self {
        let z = alloc::vec![Complex64::new(0.0, 0.0); dim];
        Self {
            k: [z.clone(), z.clone(), z.clone(), z.clone()],
            tmp: z,
        }
    }

    /// `dψ/dt = -i f(t) V₀ ψ`.
    fn derivative(
        generator: &SparseHermitian,
        params: &ModelParams,
        t: f64,
        psi: &[Complex64],
        out: &mut [Complex64],
    ) {
        generator.apply(psi, out);
        let scale = Complex64::new(0.0, -params.shape(t));
        out.iter_mut().for_each(|z| *z *= scale);
    }

    fn step(
        &mut self,
        generator: &SparseHermitian,
        params: &ModelParams,
        psi: &mut [Complex64],
        t: f64,
        h: f64,
    ) {
        let [k1, k2, k3, k4] = &mut self.k;
        let tmp = &mut self.tmp;
        Self::derivative(generator, params, t, psi, k1);
        for i in 0..psi.len() {
            tmp[i] = psi[i] + k1[i] * (0.5 * h);
        }
        Self::derivative(generator, params, t + 0.5 * h, tmp, k2);
        for i in 0..psi.len() {
            tmp[i] = psi[i] + k2[i] * (0.5 * h);
        }
        Self::derivative(generator, params, t + 0.5 * h, tmp, k3);
        for i in 0..psi.len() {
            tmp[i] = psi[i] + k3[i] * h;
        }
        Self::derivative(generator, params, t + h, tmp, k4);
        for i in 0..psi.len() {
            psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
        }
    }
}

/// RK4 from `ψ(0) = Σ q_n |1,n⟩` up to `t_end`.
///
/// The trajectory is not renormalized; a norm drift above
/// [`NORM_DRIFT_LIMIT`] is reported as [`Error::StepSize`].
pub fn integrate(
    params: &ModelParams,
    field: &FieldAmplitudes,
    t_end: f64,
    dt: f64,
) -> Result<OracleState> {
    let mut state = OracleState::initial(field);
    state.advance_to(params, t_end, dt)?;
    Ok(state)
}

/// Largest `|ψ_oracle - ψ_analytic|` over the joint basis.
pub fn compare(oracle: &OracleState, analytic: &JointState<'_>) -> Result<f64> {
    let expected = analytic.n_max() + 2;
    if oracle.fock_dim != expected {
        return Err(Error::DimensionMismatch {
            expected: 3 * expected,
            found: oracle.psi.len(),
        });
    }
    let mapped = OracleState::from_analytic(analytic);
    Ok(oracle
        .psi
        .iter()
        .zip(&mapped.psi)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::reduced_density;
    use crate::evolution::evolve;
    use crate::model::{Motion, Nonlinearity};
    use crate::statistics::{
        field_moment, mean_photon_number, quadrature_squeezing, second_moment,
    };

    fn params(kind: Nonlinearity, motion: Motion) -> ModelParams {
        ModelParams::builder()
            .alpha_sq(4.0)
            .n_max(Some(40))
            .nonlinearity(kind)
            .motion(motion)
            .build()
            .unwrap()
    }

    #[test]
    fn moving_generator_vanishes_at_start() {
        let prm = params(Nonlinearity::Identity, Motion::Moving);
        let v = build_interaction_generator(&prm, 42, 0.0);
        assert!(v.entries().iter().all(|e| e.2 == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn generator_is_hermitian() {
        let prm = params(Nonlinearity::TrappedIon { eta: 0.2 }, Motion::Moving);
        let m = build_interaction_generator(&prm, 42, 0.77).to_dense();
        for i in 0..m.len() {
            for j in 0..m.len() {
                assert_eq!(m[i][j], m[j][i].conj());
            }
        }
    }

    #[test]
    fn two_level_truncation_matrix() {
        // Fock states {0, 1}: only |1,0⟩ couples, to |2,1⟩ and |3,1⟩, with weight λ
        let prm = ModelParams::builder()
            .alpha_sq(0.0)
            .n_max(Some(1))
            .motion(Motion::Static)
            .lambda(0.7)
            .build()
            .unwrap();
        let m = build_interaction_generator(&prm, 2, 3.0).to_dense();
        assert_eq!(m.len(), 6);
        let mut expected = [[0.0f64; 6]; 6];
        // indices: |1,0⟩=0 |1,1⟩=1 |2,0⟩=2 |2,1⟩=3 |3,0⟩=4 |3,1⟩=5
        for (i, j) in [(0, 3), (3, 0), (0, 5), (5, 0)] {
            expected[i][j] = 0.7;
        }
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(m[i][j], Complex64::new(expected[i][j], 0.0), "({i},{j})");
            }
        }
    }

    #[test]
    fn zero_duration_is_identity() {
        let prm = params(Nonlinearity::Identity, Motion::Static);
        let field = prm.coherent_field().unwrap();
        let o = integrate(&prm, &field, 0.0, 0.01).unwrap();
        assert_eq!(o, OracleState::initial(&field));
        let s = evolve(&prm, &field, 0.0);
        assert!(compare(&o, &s).unwrap() < 1e-15);
        assert_eq!(compare(&OracleState::from_analytic(&s), &s).unwrap(), 0.0);
    }

    #[test]
    fn step_validation_and_dimension_check() {
        let prm = params(Nonlinearity::Identity, Motion::Static);
        let field = prm.coherent_field().unwrap();
        assert!(integrate(&prm, &field, 1.0, 0.0).is_err());
        // RK4 blows up far outside its stability region
        assert!(matches!(
            integrate(&prm, &field, 5.0, 0.5),
            Err(Error::StepSize { .. })
        ));
        let small = ModelParams::builder()
            .alpha_sq(1.0)
            .n_max(Some(30))
            .build()
            .unwrap();
        let small_field = small.coherent_field().unwrap();
        let o = OracleState::initial(&field);
        let s = evolve(&small, &small_field, 0.0);
        assert!(matches!(
            compare(&o, &s),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn short_run_matches_analytic_state() {
        for motion in [Motion::Moving, Motion::Static] {
            for kind in [
                Nonlinearity::Identity,
                Nonlinearity::Harmonious,
                Nonlinearity::PoschlTeller { nu: 1.0 },
            ] {
                let prm = params(kind, motion);
                let field = prm.coherent_field().unwrap();
                let o = integrate(&prm, &field, 1.5, 0.002).unwrap();
                let s = evolve(&prm, &field, 1.5);
                assert!(compare(&o, &s).unwrap() < 1e-7);
            }
        }
    }

    #[test]
    fn dense_observables_match_closed_forms() {
        let prm = params(Nonlinearity::Identity, Motion::Moving);
        let field = prm.coherent_field().unwrap();
        let s = evolve(&prm, &field, 2.3);
        let embedded = OracleState::from_analytic(&s);

        let rho = reduced_density(&s);
        let dense = embedded.reduced_atom_density();
        for i in 0..3 {
            for j in 0..3 {
                assert!((rho.rho()[i][j] - dense[i][j]).norm() < 1e-12);
            }
        }
        assert!((embedded.number_moment(1) - mean_photon_number(&s)).abs() < 1e-10);
        assert!((embedded.number_moment(2) - second_moment(&s)).abs() < 1e-9);
        for r in 0..3 {
            let closed = field_moment(&s, r).unwrap();
            assert!((embedded.annihilation_moment(r) - closed).norm() < 1e-10);
        }
        let (vx, vp) = quadrature_squeezing(&s).unwrap();
        let (ox, op) = embedded.quadrature_parameters();
        assert!((vx - ox).abs() < 1e-9 && (vp - op).abs() < 1e-9);

        // short, finely stepped trajectory: partial trace agrees at 1e-10
        let o = integrate(&prm, &field, 1.0, 5e-4).unwrap();
        let s1 = evolve(&prm, &field, 1.0);
        let rho1 = reduced_density(&s1);
        let dense1 = o.reduced_atom_density();
        for i in 0..3 {
            for j in 0..3 {
                assert!((rho1.rho()[i][j] - dense1[i][j]).norm() < 1e-10);
            }
        }
    }
}
