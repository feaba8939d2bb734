//! Many-body potentials on (deformed) root systems, in standard, Jacobi,
//! and polar coordinates.
//!
//! The potential of the models treated here is
//!
//! ```text
//! V(q) = (m^2/16) sum_{short a~} (a~.q)^2  +  (1/2) sum_{a~} g_a V(a~.q)
//! ```
//!
//! with `V(x)` one of `1/x^2`, `1/sin^2 x`, `1/sinh^2 x`, the sums running
//! over the (possibly complex-deformed) roots, and couplings constant on
//! root length classes. All evaluation is plain complex analytic
//! continuation; there is no contour machinery, and near-pole arguments are
//! reported as singular instead of returning infinities.

use crate::ptdeform::{DeformError, DeformedSystem};
use crate::rootsys::{EmbeddingName, LengthClass, RootSystemError};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;
use std::str::FromStr;
use thiserror::Error;

/// Arguments closer to a pole than this are treated as singular.
pub const POLE_THRESHOLD: f64 = 1e-300;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum PotentialError {
    #[error("singular evaluation: potential argument {0} is at a pole")]
    Singular(Complex64),
    #[error("polar angle undefined at the origin of the (X, Y) plane")]
    UndefinedAngle,
    #[error(transparent)]
    Deform(#[from] DeformError),
    #[error(transparent)]
    Root(#[from] RootSystemError),
}

/// The pairwise potential shape. Every kind is an even function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PotentialKind {
    Rational,
    Trigonometric,
    Hyperbolic,
}

impl FromStr for PotentialKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rational" => Ok(PotentialKind::Rational),
            "trigonometric" | "trig" => Ok(PotentialKind::Trigonometric),
            "hyperbolic" => Ok(PotentialKind::Hyperbolic),
            other => Err(format!("unknown potential kind `{other}`")),
        }
    }
}

/// Evaluate the chosen `V` at a complex argument.
pub fn potential_value(kind: PotentialKind, x: Complex64) -> Result<Complex64, PotentialError> {
    let denom_root = match kind {
        PotentialKind::Rational => x,
        PotentialKind::Trigonometric => x.sin(),
        PotentialKind::Hyperbolic => x.sinh(),
    };
    let denom = denom_root * denom_root;
    if denom.norm() < POLE_THRESHOLD {
        return Err(PotentialError::Singular(x));
    }
    Ok(denom.inv())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootSubset {
    All,
    PositiveOnly,
    NegativeOnly,
}

/// A root-system many-body model: deformed roots plus couplings, mass, and
/// the choice of pairwise potential. Restricting to half of the roots
/// breaks the extended Weyl invariance; by convention the couplings are then
/// doubled so the undeformed limit reproduces the full model.
#[derive(Debug, Clone)]
pub struct CmsModel {
    pub deformed: DeformedSystem,
    pub gs: f64,
    pub gl: f64,
    pub mass: f64,
    pub kind: PotentialKind,
    pub subset: RootSubset,
    pub coupling_scale: f64,
}

impl CmsModel {
    pub fn new(deformed: DeformedSystem, gs: f64, gl: f64, mass: f64, kind: PotentialKind) -> Self {
        Self {
            deformed,
            gs,
            gl,
            mass,
            kind,
            subset: RootSubset::All,
            coupling_scale: 1.0,
        }
    }

    /// Restrict the root sum; the coupling scale defaults to 2 for half
    /// sums.
    pub fn with_subset(mut self, subset: RootSubset) -> Self {
        self.subset = subset;
        self.coupling_scale = match subset {
            RootSubset::All => 1.0,
            _ => 2.0,
        };
        self
    }

    /// Oscillator frequency fixed by the confining term:
    /// `(m^2/16) sum_short (a.q)^2 = w^2 r^2 / 2` with `w = (sqrt 3 / 2) m`.
    pub fn omega(&self) -> f64 {
        3f64.sqrt() / 2.0 * self.mass
    }

    fn selected(&self, positive: bool) -> bool {
        match self.subset {
            RootSubset::All => true,
            RootSubset::PositiveOnly => positive,
            RootSubset::NegativeOnly => !positive,
        }
    }

    /// Complex inner products `a~.q` of all selected deformed roots with a
    /// real point of the standard 3d representation, paired with the length
    /// class of their labels.
    fn root_arguments(&self, q: &[f64; 3]) -> Result<Vec<(LengthClass, Complex64)>, PotentialError> {
        let sys = &self.deformed.system;
        let emb = sys.embedding(EmbeddingName::Standard3d);
        let r = self.deformed.scheme.r_at(self.deformed.epsilon);
        let i = self.deformed.scheme.i_at(self.deformed.epsilon)?;
        let mut out = Vec::with_capacity(self.deformed.roots.len());
        for root in &self.deformed.roots {
            if !self.selected(root.label.is_positive()) {
                continue;
            }
            let ar = sys.embed(&emb, &root.vector.r_part)?;
            let ai = sys.embed(&emb, &root.vector.i_part)?;
            let dr: f64 = ar.iter().zip(q).map(|(a, b)| a * b).sum();
            let di: f64 = ai.iter().zip(q).map(|(a, b)| a * b).sum();
            out.push((
                sys.length_class(&root.label),
                Complex64::new(r * dr, i * di),
            ));
        }
        Ok(out)
    }

    /// Total potential energy at a real configuration point `q`.
    pub fn assemble_potential(&self, q: &[f64; 3]) -> Result<Complex64, PotentialError> {
        let mut pairwise = Complex64::new(0.0, 0.0);
        let mut confining = Complex64::new(0.0, 0.0);
        for (class, arg) in self.root_arguments(q)? {
            let g = match class {
                LengthClass::Short => self.gs,
                LengthClass::Long => self.gl,
            };
            if g != 0.0 {
                pairwise += 0.5 * g * self.coupling_scale * potential_value(self.kind, arg)?;
            }
            if class == LengthClass::Short {
                confining += self.mass * self.mass / 16.0 * self.coupling_scale * arg * arg;
            }
        }
        Ok(pairwise + confining)
    }

    /// `|conj(V(s_i q)) - V(q)|`: zero when the antilinearly extended
    /// reflection is a symmetry of the model.
    pub fn pt_invariance_residual(&self, i: u8, q: &[f64; 3]) -> Result<f64, PotentialError> {
        let sys = &self.deformed.system;
        let emb = sys.embedding(EmbeddingName::Standard3d);
        let qi = sys.reflect_point(&emb, i, q);
        let reflected = self.assemble_potential(&[qi[0], qi[1], qi[2]])?;
        let here = self.assemble_potential(q)?;
        Ok((reflected.conj() - here).norm())
    }
}

/// How a polar-form potential is complexified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DeformationMode {
    /// Angular shift `phi -> phi - i eps`.
    PhiShift,
    /// Radial shift `r -> r + i eps` (positive-root half, doubled coupling).
    RShiftPos,
    /// Radial shift `r -> r - i eps` (negative-root half, doubled coupling).
    RShiftNeg,
    /// Symmetrized sum of both radial shifts at half coupling.
    RShiftBoth,
}

impl FromStr for DeformationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "phi-shift" | "phishift" => Ok(DeformationMode::PhiShift),
            "r-shift-pos" | "rshiftpos" => Ok(DeformationMode::RShiftPos),
            "r-shift-neg" | "rshiftneg" => Ok(DeformationMode::RShiftNeg),
            "r-shift-both" | "rshiftboth" => Ok(DeformationMode::RShiftBoth),
            other => Err(format!("unknown deformation mode `{other}`")),
        }
    }
}

const THIRD_TURN: f64 = 2.0 * PI / 3.0;

/// Polar form of the deformed two-body potential on three particles:
/// `g sum_k V(sqrt 2 r sin(phi - i eps + 2 pi k / 3))` for the angular
/// shift, or the radially shifted variants.
pub fn polar_potential_a2(
    gs: f64,
    kind: PotentialKind,
    r: f64,
    phi: f64,
    eps: f64,
    mode: DeformationMode,
) -> Result<Complex64, PotentialError> {
    assert!(r > 0.0, "polar radius must be positive");
    let mut total = Complex64::new(0.0, 0.0);
    for k in [-1.0, 0.0, 1.0] {
        let angle = phi + k * THIRD_TURN;
        match mode {
            DeformationMode::PhiShift => {
                let z = Complex64::new(angle, -eps);
                total += gs * potential_value(kind, 2f64.sqrt() * r * z.sin())?;
            }
            DeformationMode::RShiftPos | DeformationMode::RShiftNeg => {
                let sign = if mode == DeformationMode::RShiftPos { 1.0 } else { -1.0 };
                let rc = Complex64::new(r, sign * eps);
                total += gs * potential_value(kind, 2f64.sqrt() * rc * angle.sin())?;
            }
            DeformationMode::RShiftBoth => {
                for sign in [1.0, -1.0] {
                    let rc = Complex64::new(r, sign * eps);
                    total += 0.5 * gs * potential_value(kind, 2f64.sqrt() * rc * angle.sin())?;
                }
            }
        }
    }
    Ok(total)
}

/// Polar form of the deformed G2 potential: the A2 two-body terms plus the
/// three-body terms `gl V(sqrt 6 r cos(phi - i eps + 2 pi k / 3))`.
pub fn polar_potential_g2(
    gs: f64,
    gl: f64,
    kind: PotentialKind,
    r: f64,
    phi: f64,
    eps: f64,
    mode: DeformationMode,
) -> Result<Complex64, PotentialError> {
    assert!(r > 0.0, "polar radius must be positive");
    let mut total = Complex64::new(0.0, 0.0);
    for k in [-1.0, 0.0, 1.0] {
        let angle = phi + k * THIRD_TURN;
        match mode {
            DeformationMode::PhiShift => {
                let z = Complex64::new(angle, -eps);
                total += gs * potential_value(kind, 2f64.sqrt() * r * z.sin())?;
                total += gl * potential_value(kind, 6f64.sqrt() * r * z.cos())?;
            }
            DeformationMode::RShiftPos | DeformationMode::RShiftNeg => {
                let sign = if mode == DeformationMode::RShiftPos { 1.0 } else { -1.0 };
                let rc = Complex64::new(r, sign * eps);
                total += gs * potential_value(kind, 2f64.sqrt() * rc * angle.sin())?;
                total += gl * potential_value(kind, 6f64.sqrt() * rc * angle.cos())?;
            }
            DeformationMode::RShiftBoth => {
                for sign in [1.0, -1.0] {
                    let rc = Complex64::new(r, sign * eps);
                    total += 0.5 * gs * potential_value(kind, 2f64.sqrt() * rc * angle.sin())?;
                    total += 0.5 * gl * potential_value(kind, 6f64.sqrt() * rc * angle.cos())?;
                }
            }
        }
    }
    Ok(total)
}

/// Center of mass plus the two relative Jacobi coordinates:
/// `X = (q1 - q2)/sqrt 2`, `Y = (q1 + q2 - 2 q3)/sqrt 6`.
pub fn to_jacobi(q: &[f64; 3]) -> (f64, f64, f64) {
    let com = (q[0] + q[1] + q[2]) / 3.0;
    let x = (q[0] - q[1]) / 2f64.sqrt();
    let y = (q[0] + q[1] - 2.0 * q[2]) / 6f64.sqrt();
    (com, x, y)
}

/// Polar split of the relative plane with the convention `X = r sin(phi)`,
/// `Y = r cos(phi)`.
pub fn to_polar(x: f64, y: f64) -> Result<(f64, f64), PotentialError> {
    let r = x.hypot(y);
    if r < 1e-300 {
        return Err(PotentialError::UndefinedAngle);
    }
    Ok((r, x.atan2(y)))
}

pub fn to_jacobi_polar(q: &[f64; 3]) -> Result<(f64, f64, f64), PotentialError> {
    let (com, x, y) = to_jacobi(q);
    let (r, phi) = to_polar(x, y)?;
    Ok((com, r, phi))
}

pub fn from_jacobi(com: f64, x: f64, y: f64) -> [f64; 3] {
    [
        com + x / 2f64.sqrt() + y / 6f64.sqrt(),
        com - x / 2f64.sqrt() + y / 6f64.sqrt(),
        com - 2.0 * y / 6f64.sqrt(),
    ]
}

pub fn from_jacobi_polar(com: f64, r: f64, phi: f64) -> [f64; 3] {
    from_jacobi(com, r * phi.sin(), r * phi.cos())
}
