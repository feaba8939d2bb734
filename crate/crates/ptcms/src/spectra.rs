//! Exact eigensystem of the rational (Calogero-type) models in polar form.
//!
//! After separating the center of mass and splitting the relative plane
//! into `(r, phi)`, the eigenvalue problem factorizes into
//!
//! ```text
//! (-d^2/dr^2 - (1/r) d/dr + w^2 r^2 + L^2/r^2) chi(r)        = E chi(r)
//! (-d^2/dphi^2 + 9 gs / sin^2(3 phi) + 9 gl / cos^2(3 phi)) f = L^2 f
//! ```
//!
//! solved by terminating hypergeometric series: a generalized Laguerre
//! polynomial radially and a Jacobi polynomial angularly. The angular
//! characteristic exponents are `kappa = (1 +- sqrt(1 + 4g))/4`, the
//! separation constant is quantized as `L = +-6(kappa_s + kappa_l + ell)`,
//! and the physical admissibility conditions P1-P4 select which exponent
//! branches are allowed. Complex shifts of `r` or `phi` (the deformed
//! models) relax P2 or P3 and open up extra energy branches and
//! degeneracies; everything here evaluates at complex arguments so those
//! regularized states can be handled directly.

use num_complex::Complex64;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SpectraError {
    #[error("kappa branch undefined: 1 + 4g < 0 for g = {0}")]
    KappaDomain(f64),
    #[error("hypergeometric series does not terminate: first parameter {0} is not a non-positive integer")]
    NonTerminating(f64),
    #[error("lower hypergeometric parameter {0} is a non-positive integer reached by the series")]
    DegenerateParameter(f64),
    #[error("argument {0} lies on the branch cut of a non-integer power")]
    BranchCut(Complex64),
    #[error("evaluation point {0} is singular")]
    SingularPoint(Complex64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum BranchSign {
    Plus,
    Minus,
}

impl BranchSign {
    pub fn value(self) -> f64 {
        match self {
            BranchSign::Plus => 1.0,
            BranchSign::Minus => -1.0,
        }
    }
}

impl fmt::Display for BranchSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchSign::Plus => write!(f, "+"),
            BranchSign::Minus => write!(f, "-"),
        }
    }
}

/// Characteristic exponent of the angular equation:
/// `kappa = (1 +- sqrt(1 + 4g))/4`, satisfying `4 kappa^2 - 2 kappa = g`.
pub fn kappa(g: f64, branch: BranchSign) -> Result<f64, SpectraError> {
    let disc = 1.0 + 4.0 * g;
    if disc < 0.0 {
        return Err(SpectraError::KappaDomain(g));
    }
    Ok((1.0 + branch.value() * disc.sqrt()) / 4.0)
}

/// The pair of exponents for the two length classes, with their branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KappaPair {
    pub gs: f64,
    pub gl: f64,
    pub branch_s: BranchSign,
    pub branch_l: BranchSign,
    pub kappa_s: f64,
    pub kappa_l: f64,
}

impl KappaPair {
    pub fn new(
        gs: f64,
        gl: f64,
        branch_s: BranchSign,
        branch_l: BranchSign,
    ) -> Result<Self, SpectraError> {
        Ok(Self {
            gs,
            gl,
            branch_s,
            branch_l,
            kappa_s: kappa(gs, branch_s)?,
            kappa_l: kappa(gl, branch_l)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Flag {
    Enforced,
    Relaxed,
}

/// The admissibility conditions:
/// P1 termination of the radial series (decay at infinity), P2 positivity
/// of the separation constant (finiteness at the origin), P3 choice of the
/// upper exponent branches (finite derivative), P4 termination of the
/// angular series. The angular shift lets P3 go, the radial shift lets P2
/// go.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConstraintProfile {
    pub p1: Flag,
    pub p2: Flag,
    pub p3: Flag,
    pub p4: Flag,
}

impl ConstraintProfile {
    pub fn undeformed() -> Self {
        Self {
            p1: Flag::Enforced,
            p2: Flag::Enforced,
            p3: Flag::Enforced,
            p4: Flag::Enforced,
        }
    }

    pub fn phi_shift() -> Self {
        Self {
            p3: Flag::Relaxed,
            ..Self::undeformed()
        }
    }

    pub fn r_shift() -> Self {
        Self {
            p2: Flag::Relaxed,
            ..Self::undeformed()
        }
    }

    pub fn name(&self) -> &'static str {
        if *self == Self::undeformed() {
            "undeformed"
        } else if *self == Self::phi_shift() {
            "phi-shift"
        } else if *self == Self::r_shift() {
            "r-shift"
        } else {
            "custom"
        }
    }
}

impl std::str::FromStr for ConstraintProfile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "undeformed" => Ok(Self::undeformed()),
            "phi-shift" | "phishift" => Ok(Self::phi_shift()),
            "r-shift" | "rshift" => Ok(Self::r_shift()),
            other => Err(format!("unknown constraint profile `{other}`")),
        }
    }
}

/// Which branch a level belongs to: a pair of exponent signs for the
/// angular-shift spectrum, or the sign of the separation constant for the
/// radial-shift spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Branch {
    Kappa(BranchSign, BranchSign),
    Radial(BranchSign),
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Kappa(s, l) => write!(f, "{s}{l}"),
            Branch::Radial(s) => write!(f, "r{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyLevel {
    pub n: u32,
    pub l: u32,
    pub branch: Branch,
    pub value: f64,
}

/// `E = 2|w| (2n + 6(ks + kl + ell) + 1)` for given exponent values.
pub fn kappa_energy(omega: f64, n: u32, l: u32, kappa_s: f64, kappa_l: f64) -> f64 {
    2.0 * omega.abs() * (2.0 * n as f64 + 6.0 * (kappa_s + kappa_l + l as f64) + 1.0)
}

/// `E = 2|w| (2n +- L + 1)` for a fixed separation constant.
pub fn radial_energy(omega: f64, n: u32, lambda: f64, sign: BranchSign) -> f64 {
    2.0 * omega.abs() * (2.0 * n as f64 + sign.value() * lambda + 1.0)
}

/// All energy levels of a profile on the `(n, ell)` grid, sorted by
/// `(branch, ell, n)`.
///
/// The undeformed profile admits only the upper exponent branches; when P3
/// is relaxed all four sign pairs appear; when P2 is relaxed the spectrum
/// is the radial pair `2|w|(2n +- L + 1)` with `L` still quantized through
/// P4 on the upper branches.
pub fn energy_levels(
    profile: ConstraintProfile,
    omega: f64,
    gs: f64,
    gl: f64,
    n_max: u32,
    l_max: u32,
) -> Result<Vec<EnergyLevel>, SpectraError> {
    assert!(omega != 0.0, "omega must be nonzero");
    let mut out = Vec::new();
    if profile.p2 == Flag::Relaxed {
        let ks = kappa(gs, BranchSign::Plus)?;
        let kl = kappa(gl, BranchSign::Plus)?;
        for sign in [BranchSign::Plus, BranchSign::Minus] {
            for l in 0..=l_max {
                let lambda = 6.0 * (ks + kl + l as f64);
                for n in 0..=n_max {
                    out.push(EnergyLevel {
                        n,
                        l,
                        branch: Branch::Radial(sign),
                        value: radial_energy(omega, n, lambda, sign),
                    });
                }
            }
        }
    } else {
        let branches: &[(BranchSign, BranchSign)] = if profile.p3 == Flag::Relaxed {
            &[
                (BranchSign::Plus, BranchSign::Plus),
                (BranchSign::Plus, BranchSign::Minus),
                (BranchSign::Minus, BranchSign::Plus),
                (BranchSign::Minus, BranchSign::Minus),
            ]
        } else {
            &[(BranchSign::Plus, BranchSign::Plus)]
        };
        for &(bs, bl) in branches {
            let ks = kappa(gs, bs)?;
            let kl = kappa(gl, bl)?;
            for l in 0..=l_max {
                for n in 0..=n_max {
                    out.push(EnergyLevel {
                        n,
                        l,
                        branch: Branch::Kappa(bs, bl),
                        value: kappa_energy(omega, n, l, ks, kl),
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.branch, a.l, a.n)
            .partial_cmp(&(b.branch, b.l, b.n))
            .unwrap()
    });
    Ok(out)
}

/// A degeneracy between an upper-branch level and a lower-branch level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegeneracyPair {
    pub n: u32,
    pub l: u32,
    pub n_prime: u32,
    pub l_prime: u32,
    pub energy: f64,
}

/// Degeneracies `E++(n, l) = E--(n', l')` from the closed-form condition
/// `n' - n + 3(l' - l) = (3/2) sqrt(1 + 4 gs) + (3/2) sqrt(1 + 4 gl)`,
/// each candidate verified by direct energy equality.
pub fn degeneracy_pairs(
    gs: f64,
    gl: f64,
    omega: f64,
    n_max: u32,
    l_max: u32,
) -> Result<Vec<DegeneracyPair>, SpectraError> {
    if 1.0 + 4.0 * gs < 0.0 {
        return Err(SpectraError::KappaDomain(gs));
    }
    if 1.0 + 4.0 * gl < 0.0 {
        return Err(SpectraError::KappaDomain(gl));
    }
    let rhs = 1.5 * ((1.0 + 4.0 * gs).sqrt() + (1.0 + 4.0 * gl).sqrt());
    let ksp = kappa(gs, BranchSign::Plus)?;
    let klp = kappa(gl, BranchSign::Plus)?;
    let ksm = kappa(gs, BranchSign::Minus)?;
    let klm = kappa(gl, BranchSign::Minus)?;
    let mut out = Vec::new();
    for n in 0..=n_max {
        for l in 0..=l_max {
            for n_prime in 0..=n_max {
                for l_prime in 0..=l_max {
                    let lhs = (n_prime as f64 - n as f64) + 3.0 * (l_prime as f64 - l as f64);
                    if (lhs - rhs).abs() > 1e-9 {
                        continue;
                    }
                    let e_plus = kappa_energy(omega, n, l, ksp, klp);
                    let e_minus = kappa_energy(omega, n_prime, l_prime, ksm, klm);
                    debug_assert!((e_plus - e_minus).abs() <= 1e-12 * e_plus.abs().max(1.0));
                    out.push(DegeneracyPair {
                        n,
                        l,
                        n_prime,
                        l_prime,
                        energy: e_plus,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The same list found by comparing energies directly; the independent
/// route for checking the closed-form condition.
pub fn degeneracy_pairs_by_energy(
    gs: f64,
    gl: f64,
    omega: f64,
    n_max: u32,
    l_max: u32,
) -> Result<Vec<DegeneracyPair>, SpectraError> {
    let ksp = kappa(gs, BranchSign::Plus)?;
    let klp = kappa(gl, BranchSign::Plus)?;
    let ksm = kappa(gs, BranchSign::Minus)?;
    let klm = kappa(gl, BranchSign::Minus)?;
    let mut out = Vec::new();
    for n in 0..=n_max {
        for l in 0..=l_max {
            let e_plus = kappa_energy(omega, n, l, ksp, klp);
            for n_prime in 0..=n_max {
                for l_prime in 0..=l_max {
                    let e_minus = kappa_energy(omega, n_prime, l_prime, ksm, klm);
                    if (e_plus - e_minus).abs() <= 1e-12 * e_plus.abs().max(1.0) {
                        out.push(DegeneracyPair {
                            n,
                            l,
                            n_prime,
                            l_prime,
                            energy: e_plus,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn factorial(n: u32) -> f64 {
    assert!(n <= 170, "factorial overflows f64 beyond 170");
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Rising product `x (x+1) ... (x+n-1)`.
pub fn pochhammer(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (x + k as f64))
}

/// Generalized binomial `x (x-1) ... (x-k+1) / k!`.
fn binom_general(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x - j as f64)) / factorial(k)
}

/// Generalized Laguerre polynomial by the stable three-term recurrence;
/// valid for any real upper index, including negative integers.
pub fn laguerre(n: u32, alpha: f64, z: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = Complex64::new(1.0 + alpha, 0.0) - z;
    for k in 1..n {
        let kf = k as f64;
        let next = ((Complex64::new(2.0 * kf + 1.0 + alpha, 0.0) - z) * cur
            - (kf + alpha) * prev)
            / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Jacobi polynomial through the binomial-sum closed form, which stays
/// well-defined for the degenerate parameter combinations (negative
/// half-integers) that the three-term recurrence cannot handle.
pub fn jacobi(n: u32, a: f64, b: f64, z: Complex64) -> Complex64 {
    let half_minus = (z - 1.0) / 2.0;
    let half_plus = (z + 1.0) / 2.0;
    let mut acc = Complex64::new(0.0, 0.0);
    for s in 0..=n {
        let coeff = binom_general(n as f64 + a, n - s) * binom_general(n as f64 + b, s);
        acc += coeff * half_minus.powu(s) * half_plus.powu(n - s);
    }
    acc
}

/// Terminating Kummer series with first parameter `-n`.
pub fn hyp1f1_terminating(n: u32, c: f64, z: Complex64) -> Result<Complex64, SpectraError> {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let denom = c + k as f64;
        if denom.abs() < 1e-12 {
            return Err(SpectraError::DegenerateParameter(c));
        }
        term *= (k as f64 - n as f64) / (denom * (k as f64 + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

/// Terminating Gauss series with first parameter `-n`.
pub fn hyp2f1_terminating(
    n: u32,
    b: f64,
    c: f64,
    z: Complex64,
) -> Result<Complex64, SpectraError> {
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    for k in 0..n {
        let denom = c + k as f64;
        if denom.abs() < 1e-12 {
            return Err(SpectraError::DegenerateParameter(c));
        }
        term *= (k as f64 - n as f64) * (b + k as f64) / (denom * (k as f64 + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

/// Residual of the reflection identity
/// `z^(m-n) n! L_n^(m-n)(z^2) = (-z)^(n-m) m! L_m^(n-m)(z^2)`
/// relating Laguerre polynomials of opposite integer upper index.
pub fn laguerre_identity_residual(n: u32, m: u32, z: Complex64) -> f64 {
    let d = m as i32 - n as i32;
    let z2 = z * z;
    let lhs = z.powi(d) * factorial(n) * laguerre(n, d as f64, z2);
    let rhs = (-z).powi(-d) * factorial(m) * laguerre(m, -d as f64, z2);
    (lhs - rhs).norm()
}

/// Everything needed to evaluate one separated eigenfunction: frequency,
/// quantum numbers, exponents, separation constant, and the complex
/// argument shift of the deformed models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveFunctionSpec {
    pub omega: f64,
    pub n: u32,
    pub l: u32,
    pub kappa_s: f64,
    pub kappa_l: f64,
    pub lambda: f64,
    pub shift: Complex64,
}

impl WaveFunctionSpec {
    /// Build with the separation constant quantized by the angular
    /// termination condition, `L = 6(ks + kl + ell)`.
    pub fn quantized(
        omega: f64,
        n: u32,
        l: u32,
        kappa_s: f64,
        kappa_l: f64,
        shift: Complex64,
    ) -> Self {
        Self {
            omega,
            n,
            l,
            kappa_s,
            kappa_l,
            lambda: 6.0 * (kappa_s + kappa_l + l as f64),
            shift,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn from_couplings(
        omega: f64,
        n: u32,
        l: u32,
        gs: f64,
        gl: f64,
        branch_s: BranchSign,
        branch_l: BranchSign,
        shift: Complex64,
    ) -> Result<Self, SpectraError> {
        Ok(Self::quantized(
            omega,
            n,
            l,
            kappa(gs, branch_s)?,
            kappa(gl, branch_l)?,
            shift,
        ))
    }

    /// Radial-only state with an explicit separation constant (either
    /// sign), as used by the radial-shift branches.
    pub fn radial_with_lambda(omega: f64, n: u32, lambda: f64, shift: Complex64) -> Self {
        Self {
            omega,
            n,
            l: 0,
            kappa_s: 0.0,
            kappa_l: 0.0,
            lambda,
            shift,
        }
    }

    /// The radial eigenvalue `2|w|(2n + L + 1)` paired with this state.
    pub fn energy(&self) -> f64 {
        2.0 * self.omega.abs() * (2.0 * self.n as f64 + self.lambda + 1.0)
    }

    /// Couplings recovered from the exponents via `g = 4k^2 - 2k`.
    pub fn gs(&self) -> f64 {
        4.0 * self.kappa_s * self.kappa_s - 2.0 * self.kappa_s
    }

    pub fn gl(&self) -> f64 {
        4.0 * self.kappa_l * self.kappa_l - 2.0 * self.kappa_l
    }
}

/// Principal-branch complex power with an exact integer fast path; flags
/// arguments on the negative real axis for non-integer exponents.
fn cpow(base: Complex64, exponent: f64) -> Result<Complex64, SpectraError> {
    let rounded = exponent.round();
    if (exponent - rounded).abs() <= 1e-9 && rounded.abs() <= i32::MAX as f64 {
        return Ok(base.powi(rounded as i32));
    }
    if base.im == 0.0 && base.re < 0.0 {
        return Err(SpectraError::BranchCut(base));
    }
    Ok(base.powf(exponent))
}

/// Radial eigenfunction
/// `chi_n^L(r) = n! w^(L/2) r^L exp(-w r^2 / 2) L_n^L(w r^2)`,
/// evaluated at `r + shift` with principal-branch powers.
pub fn radial_wavefunction(spec: &WaveFunctionSpec, r: Complex64) -> Result<Complex64, SpectraError> {
    assert!(spec.omega > 0.0, "radial evaluation expects omega > 0");
    let rt = r + spec.shift;
    if rt.norm() < 1e-300 {
        if spec.lambda < 0.0 {
            return Err(SpectraError::SingularPoint(rt));
        }
        if spec.lambda > 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
    }
    let x = spec.omega * rt * rt;
    let power = cpow(rt, spec.lambda)?;
    Ok(factorial(spec.n)
        * spec.omega.powf(spec.lambda / 2.0)
        * power
        * (-x / 2.0).exp()
        * laguerre(spec.n, spec.lambda, x))
}

/// Angular eigenfunction
/// `f(phi) = sin^(2 ks)(3 phi) cos^(2 kl)(3 phi)
///           2F1[ks + kl - L/6, ks + kl + L/6; 2 ks + 1/2; sin^2(3 phi)]`,
/// evaluated at `phi + shift`. The series must terminate: the first
/// parameter has to be a non-positive integer, which is the angular
/// quantization condition.
pub fn angular_wavefunction(
    spec: &WaveFunctionSpec,
    phi: Complex64,
) -> Result<Complex64, SpectraError> {
    let z = phi + spec.shift;
    let arg = 3.0 * z;
    let s = arg.sin();
    let c = arg.cos();
    let a = spec.kappa_s + spec.kappa_l - spec.lambda / 6.0;
    let rounded = a.round();
    if (a - rounded).abs() > 1e-9 || rounded > 0.0 {
        return Err(SpectraError::NonTerminating(a));
    }
    let ell = (-rounded) as u32;
    let b = spec.kappa_s + spec.kappa_l + spec.lambda / 6.0;
    let lower = 2.0 * spec.kappa_s + 0.5;
    let series = hyp2f1_terminating(ell, b, lower, s * s)?;
    let prefactor = cpow(s, 2.0 * spec.kappa_s)? * cpow(c, 2.0 * spec.kappa_l)?;
    Ok(prefactor * series)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OdeKind {
    Radial,
    Angular,
}

/// Residual of the separated eigenvalue equation at one complex point,
/// with derivatives from five-point central differences along the real
/// direction of the shifted argument and the result normalized by
/// `max(|f|, 1)` over the stencil.
pub fn ode_residual(
    kind: OdeKind,
    spec: &WaveFunctionSpec,
    point: Complex64,
    h: f64,
) -> Result<f64, SpectraError> {
    let eigen = match kind {
        OdeKind::Radial => spec.energy(),
        OdeKind::Angular => spec.lambda * spec.lambda,
    };
    ode_residual_at_energy(kind, spec, point, h, eigen)
}

/// Same as [`ode_residual`] with an explicit eigenvalue, for negative
/// controls.
pub fn ode_residual_at_energy(
    kind: OdeKind,
    spec: &WaveFunctionSpec,
    point: Complex64,
    h: f64,
    eigen: f64,
) -> Result<f64, SpectraError> {
    assert!(h > 0.0, "stencil spacing must be positive");
    let eval = |x: Complex64| match kind {
        OdeKind::Radial => radial_wavefunction(spec, x),
        OdeKind::Angular => angular_wavefunction(spec, x),
    };
    let mut f = [Complex64::new(0.0, 0.0); 5];
    for (k, slot) in f.iter_mut().enumerate() {
        *slot = eval(point + Complex64::new((k as f64 - 2.0) * h, 0.0))?;
    }
    let fpp = (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12.0 * h * h);
    let fp = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h);
    let z = point + spec.shift;
    let residual = match kind {
        OdeKind::Radial => {
            if z.norm() < 1e-12 {
                return Err(SpectraError::SingularPoint(z));
            }
            let w2 = spec.omega * spec.omega;
            -fpp - fp / z + w2 * z * z * f[2] + spec.lambda * spec.lambda / (z * z) * f[2]
                - eigen * f[2]
        }
        OdeKind::Angular => {
            let s = (3.0 * z).sin();
            let c = (3.0 * z).cos();
            if s.norm() < 1e-9 || c.norm() < 1e-9 {
                return Err(SpectraError::SingularPoint(z));
            }
            -fpp + (9.0 * spec.gs() / (s * s) + 9.0 * spec.gl() / (c * c)) * f[2] - eigen * f[2]
        }
    };
    let scale = f.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
    Ok(residual.norm() / scale)
}
