//! Analytic state `|ψ(t)⟩ = Σ q_n [A(n,t)|1,n⟩ + B(n+1,t)|2,n+1⟩ + C(n+1,t)|3,n+1⟩]`
//! of the resonant, symmetric-coupling model.

use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::model::{theta, FieldAmplitudes, ModelParams};

/// Joint atom–field state at one instant, stored per Fock index.
///
/// `a()[n] = A(n,t)`, `b()[n] = B(n+1,t)`, `c()[n] = C(n+1,t)` for `n = 0..=n_max`.
#[derive(Debug, Clone)]
pub struct JointState<'a> {
    t: f64,
    params: &'a ModelParams,
    field: &'a FieldAmplitudes,
    a: Vec<Complex64>,
    b: Vec<Complex64>,
    c: Vec<Complex64>,
}

impl<'a> JointState<'a> {
    /// Assembles a state from explicit amplitude arrays, bypassing [`evolve`].
    ///
    /// # Panics
    ///
    /// If the arrays and the field do not all have `n_max + 1` entries.
    pub fn from_parts(
        params: &'a ModelParams,
        field: &'a FieldAmplitudes,
        t: f64,
        a: Vec<Complex64>,
        b: Vec<Complex64>,
        c: Vec<Complex64>,
    ) -> Self {
        let len = field.q().len();
        assert!(
            a.len() == len && b.len() == len && c.len() == len,
            "amplitude arrays must match the field length {len}"
        );
        Self {
            t,
            params,
            field,
            a,
            b,
            c,
        }
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn params(&self) -> &'a ModelParams {
        self.params
    }

    pub fn field(&self) -> &'a FieldAmplitudes {
        self.field
    }

    pub fn q(&self) -> &'a [Complex64] {
        self.field.q()
    }

    pub fn weights(&self) -> &'a [f64] {
        self.field.weights()
    }

    pub fn n_max(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self) -> &[Complex64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    pub fn c(&self) -> &[Complex64] {
        &self.c
    }

    /// Per-sector norm `|A(n)|² + |B(n+1)|² + |C(n+1)|²`.
    pub fn sector_norm(&self, n: usize) -> f64 {
        self.a[n].norm_sqr() + self.b[n].norm_sqr() + self.c[n].norm_sqr()
    }
}

/// `√2 λ Θ(t) √(n+1) g(n+1)`.
pub fn rabi_argument(n: usize, t: f64, params: &ModelParams) -> f64 {
    rabi_from_theta(n, params.lambda() * theta(params, t), params)
}

#[inline]
fn rabi_from_theta(n: usize, lambda_theta: f64, params: &ModelParams) -> f64 {
    SQRT_2 * lambda_theta * libm::sqrt((n + 1) as f64) * params.g(n + 1)
}

/// Fills the amplitudes `A = cos φ_n`, `B = C = sin φ_n / (i√2)` with
/// `φ_n = rabi_argument(n, t)`.
///
/// # Panics
///
/// If `field` was not prepared on the same cutoff as `params`.
pub fn evolve<'a>(params: &'a ModelParams, field: &'a FieldAmplitudes, t: f64) -> JointState<'a> {
    assert_eq!(
        field.n_max(),
        params.n_max(),
        "field amplitudes and model parameters use different Fock cutoffs"
    );
    let lambda_theta = params.lambda() * theta(params, t);
    let len = field.q().len();
    let mut a = Vec::with_capacity(len);
    let mut b = Vec::with_capacity(len);
    let mut c = Vec::with_capacity(len);
    for n in 0..len {
        let phi = rabi_from_theta(n, lambda_theta, params);
        let (s, co) = libm::sincos(phi);
        // 1/(i√2) = -i/√2
        let bc = Complex64::new(0.0, -s / SQRT_2);
        a.push(Complex64::new(co, 0.0));
        b.push(bc);
        c.push(bc);
    }
    JointState {
        t,
        params,
        field,
        a,
        b,
        c,
    }
}

/// Diagonal of the reduced atomic density matrix `(ρ₁₁, ρ₂₂, ρ₃₃)`.
pub fn atomic_populations(state: &JointState<'_>) -> (f64, f64, f64) {
    let mut pops = (0.0, 0.0, 0.0);
    for (n, &w) in state.weights().iter().enumerate() {
        pops.0 += w * state.a[n].norm_sqr();
        pops.1 += w * state.b[n].norm_sqr();
        pops.2 += w * state.c[n].norm_sqr();
    }
    pops
}
