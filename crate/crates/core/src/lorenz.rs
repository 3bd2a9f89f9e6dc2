//! Lorenz system integration under two interval extensions of the y-derivative.
//!
//! The two extensions are algebraically identical and differ only in how
//! binary64 rounding is applied:
//!
//! ```text
//! A:  dy = x * (rho - z) - y
//! B:  dy = ((x * rho) - (x * z)) - y
//! ```
//!
//! All arithmetic here is plain `f64` with round-to-nearest-even. Rust never
//! contracts `a * b + c` into a fused multiply-add and never reassociates
//! floating-point expressions, so each kernel is evaluated exactly in the
//! order written. Do not replace these expressions with `mul_add` or build
//! with flags that enable fast-math style contraction: both variants would
//! collapse onto the same rounding and the lower bound error would vanish.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Lorenz parameters plus the fixed RK4 step size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LorenzParams {
    pub sigma: f64,
    pub rho: f64,
    pub beta: f64,
    pub h: f64,
}

impl LorenzParams {
    pub const DEFAULT_SIGMA: f64 = 16.0;
    pub const DEFAULT_RHO: f64 = 45.92;
    pub const DEFAULT_BETA: f64 = 4.0;
    pub const DEFAULT_H: f64 = 1e-6;

    pub fn new(sigma: f64, rho: f64, beta: f64, h: f64) -> Result<Self> {
        let params = Self {
            sigma,
            rho,
            beta,
            h,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.sigma, self.rho, self.beta, self.h];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "parameters must be finite, got {self:?}"
            )));
        }
        if self.h <= 0.0 {
            return Err(Error::Domain(format!(
                "step size must be positive, got {}",
                self.h
            )));
        }
        Ok(())
    }
}

impl Default for LorenzParams {
    fn default() -> Self {
        Self {
            sigma: Self::DEFAULT_SIGMA,
            rho: Self::DEFAULT_RHO,
            beta: Self::DEFAULT_BETA,
            h: Self::DEFAULT_H,
        }
    }
}

/// A point in phase space, also used for derivative vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LorenzState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl LorenzState {
    pub const ORIGIN: LorenzState = LorenzState {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// `self + factor * other`, component-wise.
    #[inline]
    fn offset(self, factor: f64, other: LorenzState) -> LorenzState {
        LorenzState {
            x: self.x + factor * other.x,
            y: self.y + factor * other.y,
            z: self.z + factor * other.z,
        }
    }

    /// True when every component has the same bit pattern.
    pub fn bit_eq(&self, other: &LorenzState) -> bool {
        self.x.to_bits() == other.x.to_bits()
            && self.y.to_bits() == other.y.to_bits()
            && self.z.to_bits() == other.z.to_bits()
    }
}

impl Default for LorenzState {
    fn default() -> Self {
        Self {
            x: 1.0,
            y: 0.5,
            z: 0.9,
        }
    }
}

/// Which interval extension of the y-derivative to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Factored form `x(rho - z) - y`.
    A,
    /// Expanded form `x*rho - x*z - y`.
    B,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::A => "A",
            Variant::B => "B",
        })
    }
}

#[inline]
fn field(s: LorenzState, p: &LorenzParams, variant: Variant) -> LorenzState {
    let dy = match variant {
        Variant::A => s.x * (p.rho - s.z) - s.y,
        Variant::B => s.x * p.rho - s.x * s.z - s.y,
    };
    LorenzState {
        x: p.sigma * (s.y - s.x),
        y: dy,
        z: s.x * s.y - p.beta * s.z,
    }
}

/// Lorenz vector field at `state`, with the y-derivative evaluated in the
/// order given by `variant`.
pub fn derivative(
    state: LorenzState,
    params: &LorenzParams,
    variant: Variant,
) -> Result<LorenzState> {
    if !state.is_finite() {
        return Err(Error::Domain(format!(
            "state must be finite, got {state:?}"
        )));
    }
    params.validate()?;
    Ok(field(state, params, variant))
}

/// One classical RK4 step of size `h` for an arbitrary autonomous field.
///
/// Stages are combined as `((k1 + 2*k2) + 2*k3) + k4`, then scaled by `h/6`.
#[inline]
pub fn rk4_step_with<F>(state: LorenzState, h: f64, f: F) -> LorenzState
where
    F: Fn(LorenzState) -> LorenzState,
{
    let half = h / 2.0;
    let k1 = f(state);
    let k2 = f(state.offset(half, k1));
    let k3 = f(state.offset(half, k2));
    let k4 = f(state.offset(h, k3));
    let sixth = h / 6.0;
    LorenzState {
        x: state.x + (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x) * sixth,
        y: state.y + (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y) * sixth,
        z: state.z + (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z) * sixth,
    }
}

/// One RK4 step of the Lorenz system.
pub fn rk4_step(
    state: LorenzState,
    params: &LorenzParams,
    variant: Variant,
) -> Result<LorenzState> {
    if !state.is_finite() {
        return Err(Error::Domain(format!(
            "state must be finite, got {state:?}"
        )));
    }
    params.validate()?;
    let next = rk4_step_with(state, params.h, |s| field(s, params, variant));
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::Blowup { variant, step: 1 })
    }
}

/// Two pseudo-orbits started from the same state, one per variant.
///
/// `samples_a()[n]` is the state after `n + 1` steps; the shared initial
/// condition is not stored as a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitPair {
    samples_a: Vec<LorenzState>,
    samples_b: Vec<LorenzState>,
    params: LorenzParams,
    initial: LorenzState,
}

impl OrbitPair {
    pub fn samples_a(&self) -> &[LorenzState] {
        &self.samples_a
    }

    pub fn samples_b(&self) -> &[LorenzState] {
        &self.samples_b
    }

    pub fn params(&self) -> &LorenzParams {
        &self.params
    }

    pub fn initial(&self) -> LorenzState {
        self.initial
    }

    pub fn len(&self) -> usize {
        self.samples_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples_a.is_empty()
    }

    /// The same pair with the two orbits exchanged.
    pub fn swapped(&self) -> OrbitPair {
        OrbitPair {
            samples_a: self.samples_b.clone(),
            samples_b: self.samples_a.clone(),
            params: self.params,
            initial: self.initial,
        }
    }

    /// First index whose y components differ bitwise, if any.
    pub fn first_y_divergence(&self) -> Option<usize> {
        self.samples_a
            .iter()
            .zip(&self.samples_b)
            .position(|(a, b)| a.y.to_bits() != b.y.to_bits())
    }
}

fn integrate(
    initial: LorenzState,
    params: &LorenzParams,
    n_steps: usize,
    variant: Variant,
) -> Result<Vec<LorenzState>> {
    let mut samples = Vec::with_capacity(n_steps);
    let mut state = initial;
    for step in 1..=n_steps {
        state = rk4_step_with(state, params.h, |s| field(s, params, variant));
        if !state.is_finite() {
            return Err(Error::Blowup { variant, step });
        }
        samples.push(state);
    }
    Ok(samples)
}

/// Integrate both variants for `n_steps` steps from the same `initial` state.
pub fn integrate_pair(
    initial: LorenzState,
    params: &LorenzParams,
    n_steps: usize,
) -> Result<OrbitPair> {
    if n_steps == 0 {
        return Err(Error::Domain("n_steps must be at least 1".into()));
    }
    if !initial.is_finite() {
        return Err(Error::Domain(format!(
            "initial state must be finite, got {initial:?}"
        )));
    }
    params.validate()?;
    let samples_a = integrate(initial, params, n_steps, Variant::A)?;
    let samples_b = integrate(initial, params, n_steps, Variant::B)?;
    Ok(OrbitPair {
        samples_a,
        samples_b,
        params: *params,
        initial,
    })
}
