//! Photon-number statistics and normal (quadrature) squeezing.

use num_complex::Complex64;

use crate::evolution::JointState;
use crate::{Error, Result};

/// `⟨a†a⟩` below which Mandel `Q` is reported as undefined.
pub const VACUUM_GUARD: f64 = 1e-12;

/// Low-order field moments of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldMoments {
    pub mean_n: f64,
    pub mean_n2: f64,
    /// `⟨a⟩`
    pub a1: Complex64,
    /// `⟨a²⟩`
    pub a2: Complex64,
}

impl FieldMoments {
    pub fn of(state: &JointState<'_>) -> Result<Self> {
        Ok(Self {
            mean_n: mean_photon_number(state),
            mean_n2: second_moment(state),
            a1: field_moment(state, 1)?,
            a2: field_moment(state, 2)?,
        })
    }

    pub fn variance(&self) -> f64 {
        self.mean_n2 - self.mean_n * self.mean_n
    }
}

/// `⟨a†a⟩ = Σ P_n [n |A(n)|² + (n+1)(|B(n+1)|² + |C(n+1)|²)]`.
pub fn mean_photon_number(state: &JointState<'_>) -> f64 {
    photon_sum(state, |n| n)
}

/// `⟨(a†a)²⟩ = Σ P_n [n² |A(n)|² + (n+1)² (|B(n+1)|² + |C(n+1)|²)]`.
pub fn second_moment(state: &JointState<'_>) -> f64 {
    photon_sum(state, |n| n * n)
}

fn photon_sum(state: &JointState<'_>, f: impl Fn(f64) -> f64) -> f64 {
    let (a, b, c) = (state.a(), state.b(), state.c());
    state
        .weights()
        .iter()
        .enumerate()
        .map(|(n, &w)| {
            let nf = n as f64;
            w * (f(nf) * a[n].norm_sqr() + f(nf + 1.0) * (b[n].norm_sqr() + c[n].norm_sqr()))
        })
        .sum()
}

/// Mandel `Q = (⟨n²⟩ - ⟨n⟩²)/⟨n⟩ - 1`.
///
/// Undefined (an error, never a number) when `⟨n⟩ <` [`VACUUM_GUARD`].
pub fn mandel_q(state: &JointState<'_>) -> Result<f64> {
    let mean = mean_photon_number(state);
    if !(mean >= VACUUM_GUARD) {
        return Err(Error::UndefinedStatistic {
            mean_photon_number: mean,
        });
    }
    let var = second_moment(state) - mean * mean;
    Ok(var / mean - 1.0)
}

/// `⟨aʳ⟩ = Σ_n q*_n q_{n+r} [√((n+r)!/n!) A*(n) A(n+r)
///        + √((n+r+1)!/(n+1)!) (B*(n+1) B(n+1+r) + C*(n+1) C(n+1+r))]`.
///
/// Factorial ratios are accumulated as products of square roots. The adjoint
/// moment is the complex conjugate.
pub fn field_moment(state: &JointState<'_>, r: usize) -> Result<Complex64> {
    let n_max = state.n_max();
    if r > n_max {
        return Err(Error::MomentOrder { r, n_max });
    }
    if r == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let q = state.q();
    let (a, b, c) = (state.a(), state.b(), state.c());
    let mut sum = Complex64::new(0.0, 0.0);
    for n in 0..=(n_max - r) {
        let mut lower = 1.0;
        let mut upper = 1.0;
        for k in 1..=r {
            lower *= libm::sqrt((n + k) as f64);
            upper *= libm::sqrt((n + k + 1) as f64);
        }
        let term = a[n].conj() * a[n + r] * lower
            + (b[n].conj() * b[n + r] + c[n].conj() * c[n + r]) * upper;
        sum += q[n].conj() * q[n + r] * term;
    }
    Ok(sum)
}

/// `V_x = 4(Δx)² - 1`, `V_p = 4(Δp)² - 1` for `x = (a+a†)/2`, `p = (a-a†)/2i`:
///
/// ```text
/// V_x = 2⟨a†a⟩ + ⟨a²⟩ + ⟨a†²⟩ - (⟨a⟩ + ⟨a†⟩)²
/// V_p = 2⟨a†a⟩ - ⟨a²⟩ - ⟨a†²⟩ + (⟨a⟩ - ⟨a†⟩)²
/// ```
///
/// Squeezing when `-1 < V < 0`.
pub fn quadrature_squeezing(state: &JointState<'_>) -> Result<(f64, f64)> {
    let moments = FieldMoments::of(state)?;
    Ok(squeezing_from_moments(&moments))
}

pub fn squeezing_from_moments(m: &FieldMoments) -> (f64, f64) {
    let a2_sum = m.a2 + m.a2.conj();
    let plus = m.a1 + m.a1.conj();
    let minus = m.a1 - m.a1.conj();
    let vx = Complex64::new(2.0 * m.mean_n, 0.0) + a2_sum - plus * plus;
    let vp = Complex64::new(2.0 * m.mean_n, 0.0) - a2_sum + minus * minus;
    (vx.re, vp.re)
}
