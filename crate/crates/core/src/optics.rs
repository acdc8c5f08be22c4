//! Jones-calculus model of the two-arm polarization test interferometer.
//!
//! Basis: horizontal is `|0⟩`, vertical is `|1⟩`. Angles are in degrees,
//! measured from horizontal.
//!
//! Element matrices. With `c = cos θ`, `s = sin θ` and `a = (c, s)`:
//!
//! * `Rotator(θ)  = e^{2iθ} · [[c, s], [−s, c]]`
//! * `Polarizer(θ) = e^{i(π/2)·sin 2θ} · a aᵀ`
//! * `Attenuator(η) = √η · I`
//!
//! The phase factors fix the relative phase between arms carrying elements
//! at different angles. Under them, `Rotator(±45°)` sends `|1⟩` to
//! `i(|0⟩ ± |1⟩)/√2` and `Polarizer(±45°)` sends it to `i(|0⟩ ± |1⟩)/2`: a
//! common phase on both arms, so overlapping the arms leaves horizontal
//! light. Rotators still form a one-parameter group, so
//! `Rotator(θ)·Rotator(−θ) = I`. A polarizer is idempotent up to its phase
//! factor, and exactly idempotent when its axis is horizontal or vertical.
//!
//! The arms overlap as a coherent sum with no recombining beam splitter.

use num_complex::Complex64;

use crate::{Error, Result};

/// Squared norm below which an interferometer output counts as cancelled.
pub const OPTICS_NULL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JonesVector {
    pub h: Complex64,
    pub v: Complex64,
}

impl JonesVector {
    pub const fn new(h: Complex64, v: Complex64) -> Self {
        Self { h, v }
    }

    pub fn horizontal() -> Self {
        Self::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn vertical() -> Self {
        Self::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn real(h: f64, v: f64) -> Self {
        Self::new(Complex64::new(h, 0.0), Complex64::new(v, 0.0))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.h.norm_sqr() + self.v.norm_sqr()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.h * k, self.v * k)
    }

    pub fn is_finite(&self) -> bool {
        self.h.is_finite() && self.v.is_finite()
    }

    /// Largest component-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &JonesVector) -> f64 {
        (self.h - other.h).norm().max((self.v - other.v).norm())
    }

    /// Unit-norm copy with the global phase fixed: the larger-modulus
    /// component (horizontal on ties) is made real and positive.
    /// `None` when the squared norm is below `tolerance`.
    pub fn normalized(&self, tolerance: f64) -> Option<JonesVector> {
        let norm_sqr = self.norm_sqr();
        if norm_sqr.is_nan() || norm_sqr < tolerance {
            return None;
        }
        let reference = if self.h.norm() >= self.v.norm() { self.h } else { self.v };
        let phase = reference.conj() / reference.norm();
        Some(self.scale(phase / norm_sqr.sqrt()))
    }

    /// Distance between the polarization states of two vectors, ignoring
    /// global phase and intensity.
    pub fn ray_distance(&self, other: &JonesVector) -> f64 {
        match (self.normalized(0.0), other.normalized(0.0)) {
            (Some(a), Some(b)) => a.max_abs_diff(&b),
            _ => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OpticalElement {
    /// Lossless rotation of the polarization plane by `theta` degrees.
    Rotator { theta: f64 },
    /// Ideal linear polarizer with its axis `theta` degrees from horizontal.
    Polarizer { theta: f64 },
    /// Intensity transmission `eta` in `[0, 1]`.
    Attenuator { eta: f64 },
}

impl OpticalElement {
    pub fn validate(&self) -> Result<()> {
        match *self {
            OpticalElement::Rotator { theta } | OpticalElement::Polarizer { theta } => {
                if !theta.is_finite() {
                    return Err(Error::InvalidParameter(format!("angle {theta} is not finite")));
                }
            }
            OpticalElement::Attenuator { eta } => {
                if !(0.0..=1.0).contains(&eta) {
                    return Err(Error::InvalidParameter(format!(
                        "transmission {eta} is outside [0, 1]"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn angle(&self) -> Option<f64> {
        match *self {
            OpticalElement::Rotator { theta } | OpticalElement::Polarizer { theta } => Some(theta),
            OpticalElement::Attenuator { .. } => None,
        }
    }

    fn with_angle(self, theta: f64) -> Option<Self> {
        match self {
            OpticalElement::Rotator { .. } => Some(OpticalElement::Rotator { theta }),
            OpticalElement::Polarizer { .. } => Some(OpticalElement::Polarizer { theta }),
            OpticalElement::Attenuator { .. } => None,
        }
    }
}

fn rotator_phase(theta_deg: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * theta_deg.to_radians())
}

fn polarizer_phase(theta_deg: f64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_2 * (2.0 * theta_deg.to_radians()).sin())
}

pub fn apply_element(element: &OpticalElement, j: &JonesVector) -> JonesVector {
    match *element {
        OpticalElement::Rotator { theta } => {
            let (s, c) = theta.to_radians().sin_cos();
            JonesVector::new(j.h * c + j.v * s, j.v * c - j.h * s).scale(rotator_phase(theta))
        }
        OpticalElement::Polarizer { theta } => {
            let (s, c) = theta.to_radians().sin_cos();
            let along = (j.h * c + j.v * s) * polarizer_phase(theta);
            JonesVector::new(along * c, along * s)
        }
        OpticalElement::Attenuator { eta } => j.scale(Complex64::new(eta.sqrt(), 0.0)),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterferometerSpec {
    pub input: JonesVector,
    pub arm_a: Vec<OpticalElement>,
    pub arm_b: Vec<OpticalElement>,
    /// Intensity fraction sent into arm A.
    pub split_ratio: f64,
}

impl InterferometerSpec {
    /// Vertical input, one element kind per arm at `theta_a` and `theta_b`,
    /// 50:50 split.
    pub fn symmetric(kind: ElementKind, theta_a: f64, theta_b: f64) -> Self {
        Self {
            input: JonesVector::vertical(),
            arm_a: vec![kind.at(theta_a)],
            arm_b: vec![kind.at(theta_b)],
            split_ratio: 0.5,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.input.is_finite() || (self.input.norm_sqr() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(
                "interferometer input must be a finite unit Jones vector".into(),
            ));
        }
        if !(self.split_ratio > 0.0 && self.split_ratio < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "split ratio {} is outside (0, 1)",
                self.split_ratio
            )));
        }
        self.arm_a
            .iter()
            .chain(&self.arm_b)
            .try_for_each(OpticalElement::validate)
    }

    fn arm_mut(&mut self, arm: Arm) -> &mut Vec<OpticalElement> {
        match arm {
            Arm::A => &mut self.arm_a,
            Arm::B => &mut self.arm_b,
        }
    }
}

/// Angle-bearing element kinds, for building the standard setups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    Rotator,
    Polarizer,
}

impl ElementKind {
    pub fn at(self, theta: f64) -> OpticalElement {
        match self {
            ElementKind::Rotator => OpticalElement::Rotator { theta },
            ElementKind::Polarizer => OpticalElement::Polarizer { theta },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    /// Coherent sum of the arms before normalization.
    pub raw_output: JonesVector,
    /// `|raw_output|²`, the post-selection success probability.
    pub detection_probability: f64,
    pub normalized_output: Option<JonesVector>,
}

impl ExperimentResult {
    /// `|v|²` of the normalized output, or 0 when nothing came through.
    pub fn vertical_leakage(&self) -> f64 {
        self.normalized_output.map_or(0.0, |j| j.v.norm_sqr())
    }
}

pub fn run_interferometer(spec: &InterferometerSpec) -> Result<ExperimentResult> {
    spec.validate()?;
    let propagate = |share: f64, elements: &[OpticalElement]| {
        elements.iter().fold(
            spec.input.scale(Complex64::new(share.sqrt(), 0.0)),
            |j, e| apply_element(e, &j),
        )
    };
    let a = propagate(spec.split_ratio, &spec.arm_a);
    let b = propagate(1.0 - spec.split_ratio, &spec.arm_b);
    let raw_output = JonesVector::new(a.h + b.h, a.v + b.v);
    Ok(ExperimentResult {
        raw_output,
        detection_probability: raw_output.norm_sqr(),
        normalized_output: raw_output.normalized(OPTICS_NULL_TOLERANCE),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arm {
    A,
    B,
}

/// Addresses the angle of one element in one arm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngleParam {
    pub arm: Arm,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub detection_probability: f64,
    pub vertical_leakage: f64,
}

/// Re-runs the interferometer with the addressed element's angle set to each
/// value in turn. Rows follow the order of `values`.
pub fn sweep_angles(
    spec: &InterferometerSpec,
    param: AngleParam,
    values: &[f64],
) -> Result<Vec<SweepRow>> {
    let mut spec = spec.clone();
    let element = spec
        .arm_mut(param.arm)
        .get(param.index)
        .copied()
        .filter(|e| e.angle().is_some())
        .ok_or_else(|| {
            Error::ParamNotFound(format!(
                "arm {:?} has no rotator or polarizer at position {}",
                param.arm, param.index
            ))
        })?;
    values
        .iter()
        .map(|&value| {
            spec.arm_mut(param.arm)[param.index] =
                element.with_angle(value).expect("angle-bearing element");
            let result = run_interferometer(&spec)?;
            Ok(SweepRow {
                value,
                detection_probability: result.detection_probability,
                vertical_leakage: result.vertical_leakage(),
            })
        })
        .collect()
}
