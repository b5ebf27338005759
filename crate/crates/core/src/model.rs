//! Physical parameters, nonlinearity functions `g(n)`, the atomic-motion
//! integral `Θ(t)` and the initial coherent field.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::special::laguerre;
use crate::{Error, Result};

/// Largest admissible probability mass beyond the Fock cutoff.
pub const TAIL_MASS_LIMIT: f64 = 1e-12;

/// Smallest admissible trapped-ion denominator `(k+1) L⁰_k(η²)`.
pub const LAGUERRE_DENOMINATOR_FLOOR: f64 = 1e-12;

/// Whether the atom traverses the cavity mode or sits at an antinode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Motion {
    /// Shape function `f = sin(pλt)`.
    Moving,
    /// Shape function `f ≡ 1`.
    Static,
}

/// Intensity-dependent deformation profile `g(n)` of `R = a g(n̂)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Nonlinearity {
    /// `g(n) = 1`, the ordinary Jaynes–Cummings coupling.
    Identity,
    /// Center-of-mass motion of a trapped ion, η the Lamb–Dicke parameter.
    TrappedIon { eta: f64 },
    /// `g(n) = 1/√n` (harmonious states).
    Harmonious,
    /// `g(n) = √(n+ν)` (Pöschl–Teller potential).
    PoschlTeller { nu: f64 },
    /// Tabulated values, `table[n-1] = g(n)`.
    Custom(Vec<f64>),
}

/// Evaluates `g(n)` for `n ≥ 1`.
///
/// The trapped-ion profile `L¹_k(η²) / [(k+1) L⁰_k(η²)]` is indexed from
/// `k = 0`, so argument `n` uses Laguerre index `k = n - 1` and `g(1) = 1`
/// for every η.
pub fn eval_g(kind: &Nonlinearity, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0.0,
            reason: "g(n) is only evaluated for n >= 1",
        });
    }
    let nf = n as f64;
    let value = match kind {
        Nonlinearity::Identity => 1.0,
        Nonlinearity::Harmonious => 1.0 / libm::sqrt(nf),
        Nonlinearity::PoschlTeller { nu } => libm::sqrt(nf + nu),
        Nonlinearity::TrappedIon { eta } => {
            let x = eta * eta;
            let k = n - 1;
            let denominator = nf * laguerre(k, 0, x);
            if !(denominator.abs() >= LAGUERRE_DENOMINATOR_FLOOR) {
                return Err(Error::LaguerreDenominator {
                    n,
                    eta: *eta,
                    denominator,
                });
            }
            laguerre(k, 1, x) / denominator
        }
        Nonlinearity::Custom(table) => match table.get(n - 1) {
            Some(&v) => v,
            None => {
                return Err(Error::CustomTableLength {
                    expected: n,
                    found: table.len(),
                })
            }
        },
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFiniteCoupling { n, value })
    }
}

/// Default cutoff `⌈|α|² + 10|α| + 20⌉`.
pub fn default_n_max(alpha_sq: f64) -> usize {
    libm::ceil(alpha_sq + 10.0 * libm::sqrt(alpha_sq) + 20.0) as usize
}

/// Validated, immutable model configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    lambda: f64,
    p: u32,
    alpha: Complex64,
    nonlinearity: Nonlinearity,
    n_max: usize,
    motion: Motion,
    // g(1..=n_max+1)
    couplings: Vec<f64>,
}

impl ModelParams {
    pub fn builder() -> ModelParamsBuilder {
        ModelParamsBuilder::default()
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn nonlinearity(&self) -> &Nonlinearity {
        &self.nonlinearity
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn motion(&self) -> Motion {
        self.motion
    }

    /// Cached `g(n)` for `1 ≤ n ≤ n_max + 1`.
    ///
    /// # Panics
    ///
    /// If `n` is outside that range.
    #[inline]
    pub fn g(&self, n: usize) -> f64 {
        self.couplings[n - 1]
    }

    /// Shape function `f(vt)` with the velocity fixed to `v = λL/π`.
    pub fn shape(&self, t: f64) -> f64 {
        match self.motion {
            Motion::Moving => libm::sin(f64::from(self.p) * self.lambda * t),
            Motion::Static => 1.0,
        }
    }

    /// Revival period `2π/(pλ)` of the moving atom, `None` when static.
    pub fn revival_period(&self) -> Option<f64> {
        match self.motion {
            Motion::Moving => Some(2.0 * PI / (f64::from(self.p) * self.lambda)),
            Motion::Static => None,
        }
    }

    /// Initial coherent field `|α⟩` on `0..=n_max`.
    pub fn coherent_field(&self) -> Result<FieldAmplitudes> {
        coherent_amplitudes(self.alpha, self.n_max)
    }
}

/// Builder for [`ModelParams`]; defaults are `λ = 1`, `p = 1`, `|α|² = 10`,
/// identity coupling, moving atom and the automatic cutoff.
#[derive(Debug, Clone)]
pub struct ModelParamsBuilder {
    lambda: f64,
    p: u32,
    alpha: Complex64,
    nonlinearity: Nonlinearity,
    n_max: Option<usize>,
    motion: Motion,
}

impl Default for ModelParamsBuilder {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            p: 1,
            alpha: Complex64::new(libm::sqrt(10.0), 0.0),
            nonlinearity: Nonlinearity::Identity,
            n_max: None,
            motion: Motion::Moving,
        }
    }
}

impl ModelParamsBuilder {
    pub fn lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }

    pub fn p(mut self, p: u32) -> Self {
        self.p = p;
        self
    }

    pub fn alpha(mut self, alpha: Complex64) -> Self {
        self.alpha = alpha;
        self
    }

    /// Sets `|α|²`, keeping the current phase of α.
    pub fn alpha_sq(mut self, alpha_sq: f64) -> Self {
        let phase = self.alpha.arg();
        self.alpha = Complex64::from_polar(libm::sqrt(alpha_sq.max(0.0)), phase);
        if !(alpha_sq >= 0.0) {
            self.alpha = Complex64::new(f64::NAN, 0.0);
        }
        self
    }

    pub fn nonlinearity(mut self, nonlinearity: Nonlinearity) -> Self {
        self.nonlinearity = nonlinearity;
        self
    }

    /// `None` selects [`default_n_max`].
    pub fn n_max(mut self, n_max: Option<usize>) -> Self {
        self.n_max = n_max;
        self
    }

    pub fn motion(mut self, motion: Motion) -> Self {
        self.motion = motion;
        self
    }

    pub fn build(self) -> Result<ModelParams> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: self.lambda,
                reason: "coupling constant must be positive and finite",
            });
        }
        if self.motion == Motion::Moving && self.p == 0 {
            return Err(Error::InvalidParameter {
                name: "p",
                value: 0.0,
                reason: "a moving atom needs at least one half-wavelength (p >= 1)",
            });
        }
        if !(self.alpha.re.is_finite() && self.alpha.im.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: self.alpha.norm_sqr(),
                reason: "coherent amplitude must be finite",
            });
        }
        match self.nonlinearity {
            Nonlinearity::PoschlTeller { nu } if !(nu > 0.0 && nu.is_finite()) => {
                return Err(Error::InvalidParameter {
                    name: "nu",
                    value: nu,
                    reason: "Poschl-Teller parameter must be positive",
                })
            }
            Nonlinearity::TrappedIon { eta } if !eta.is_finite() => {
                return Err(Error::InvalidParameter {
                    name: "eta",
                    value: eta,
                    reason: "Lamb-Dicke parameter must be finite",
                })
            }
            _ => {}
        }
        let n_max = self
            .n_max
            .unwrap_or_else(|| default_n_max(self.alpha.norm_sqr()));
        // rejects an insufficient cutoff before any g(n) work
        coherent_amplitudes(self.alpha, n_max)?;
        if let Nonlinearity::Custom(table) = &self.nonlinearity {
            if table.len() < n_max + 1 {
                return Err(Error::CustomTableLength {
                    expected: n_max + 1,
                    found: table.len(),
                });
            }
        }
        let couplings = (1..=n_max + 1)
            .map(|n| eval_g(&self.nonlinearity, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModelParams {
            lambda: self.lambda,
            p: self.p,
            alpha: self.alpha,
            nonlinearity: self.nonlinearity,
            n_max,
            motion: self.motion,
            couplings,
        })
    }
}

/// `Θ(t) = ∫₀ᵗ f(vt') dt'`.
///
/// Moving: `(1 - cos(pλt)) / (pλ)`, evaluated as `2 sin²(pλt/2) / (pλ)` so the
/// result never goes negative. Static: `t`.
pub fn theta(params: &ModelParams, t: f64) -> f64 {
    match params.motion {
        Motion::Moving => {
            let w = f64::from(params.p) * params.lambda;
            let s = libm::sin(0.5 * w * t);
            2.0 * s * s / w
        }
        Motion::Static => t,
    }
}

/// Initial field amplitudes `q_n` on `0..=n_max` with weights `P_n = |q_n|²`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldAmplitudes {
    q: Vec<Complex64>,
    weights: Vec<f64>,
}

impl FieldAmplitudes {
    /// Wraps arbitrary amplitudes; they must be normalized within [`TAIL_MASS_LIMIT`].
    pub fn new(q: Vec<Complex64>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::Normalization { norm: 0.0 });
        }
        let weights: Vec<f64> = q.iter().map(|z| z.norm_sqr()).collect();
        let norm: f64 = weights.iter().sum();
        if !((norm - 1.0).abs() <= TAIL_MASS_LIMIT) {
            return Err(Error::Normalization { norm });
        }
        Ok(Self { q, weights })
    }

    /// Fock state `|m⟩` on `0..=n_max`.
    pub fn number_state(m: usize, n_max: usize) -> Result<Self> {
        if m > n_max {
            return Err(Error::Truncation {
                n_max,
                tail_mass: 1.0,
            });
        }
        let mut q = alloc::vec![Complex64::new(0.0, 0.0); n_max + 1];
        q[m] = Complex64::new(1.0, 0.0);
        Self::new(q)
    }

    pub fn q(&self) -> &[Complex64] {
        &self.q
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n_max(&self) -> usize {
        self.q.len() - 1
    }

    /// Multiplies every amplitude by `e^{iφ}`.
    pub fn with_global_phase(&self, phi: f64) -> Self {
        let w = Complex64::from_polar(1.0, phi);
        Self {
            q: self.q.iter().map(|z| z * w).collect(),
            weights: self.weights.clone(),
        }
    }
}

/// Coherent-state amplitudes `q_n = e^{-|α|²/2} αⁿ / √(n!)`.
///
/// Built by the recursion `q_{n+1} = q_n α / √(n+1)`. The recursion is carried
/// past `n_max` to measure the discarded tail, which must stay below
/// [`TAIL_MASS_LIMIT`].
pub fn coherent_amplitudes(alpha: Complex64, n_max: usize) -> Result<FieldAmplitudes> {
    let alpha_sq = alpha.norm_sqr();
    let mut q = Vec::with_capacity(n_max + 1);
    let mut cur = Complex64::new(libm::exp(-0.5 * alpha_sq), 0.0);
    for n in 0..=n_max {
        q.push(cur);
        cur = cur * alpha / libm::sqrt((n + 1) as f64);
    }
    // tail: `cur` now holds q_{n_max+1}
    let mut tail = 0.0;
    let mut n = n_max + 1;
    loop {
        let w = cur.norm_sqr();
        tail += w;
        // beyond n = 2|α|² successive terms shrink by more than half
        if (n as f64) >= 2.0 * alpha_sq && w <= 1e-17 * tail {
            break;
        }
        cur = cur * alpha / libm::sqrt((n + 1) as f64);
        n += 1;
    }
    if tail > TAIL_MASS_LIMIT {
        return Err(Error::Truncation {
            n_max,
            tail_mass: tail,
        });
    }
    let weights = q.iter().map(|z| z.norm_sqr()).collect();
    Ok(FieldAmplitudes { q, weights })
}
