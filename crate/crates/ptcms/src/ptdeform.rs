//! Complex deformations of the A2/G2 root systems that stay invariant under
//! the antilinearly extended Weyl group.
//!
//! Each deformed root is stored symbolically as a pair of exact rational
//! vectors `(r, i)` meaning `R(eps)*r + i*I(eps)*i` in the simple-root
//! basis, where `R` and `I` are the scheme's deformation functions with
//! `R(0) = 1`, `I(0) = 0`. The extended reflections act exactly on the
//! symbolic pair, so orbit closure is checked with exact arithmetic and the
//! numbers `R(eps)`, `I(eps)` only enter when a root is evaluated.
//!
//! Two deformation families are built in:
//! - type A: the imaginary part of a seed root is a weight-lattice vector
//!   orthogonal to the seed, propagated through the whole orbit;
//! - type B: every root `a` is deformed in place to `+-R a + i I a`, which
//!   keeps the orbit only up to an overall sign and does not preserve
//!   inner products.

use crate::rootsys::{rat_to_f64, GroupName, Rat, RationalVector, RootSystem, WeylWord};
use num_complex::Complex64;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum DeformError {
    #[error("scheme was built for {expected}, not {found}")]
    SchemeGroupMismatch { expected: GroupName, found: GroupName },
    #[error("operation requires a {expected:?} scheme")]
    VariantMismatch { expected: Variant },
    #[error("I(eps) = eps/r depends on the dynamical variables; realize it as a coordinate shift instead")]
    DynamicalDeformation,
    #[error("orbit closure failed at word {word}: label {label} reached with two different imaginary parts")]
    ClosureFailure { word: String, label: String },
    #[error("type B deformation expects a positive root, got {0}")]
    NotPositive(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    TypeA,
    TypeB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeedSign {
    Plus,
    Minus,
}

impl SeedSign {
    fn factor(self) -> Rat {
        match self {
            SeedSign::Plus => Rat::from_integer(1),
            SeedSign::Minus => Rat::from_integer(-1),
        }
    }
}

/// Real deformation function multiplying the real part; `R(0) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RFunction {
    Cosh,
    One,
}

impl RFunction {
    pub fn eval(self, eps: f64) -> f64 {
        match self {
            RFunction::Cosh => eps.cosh(),
            RFunction::One => 1.0,
        }
    }
}

/// Real deformation function multiplying the imaginary part; `I(0) = 0`.
/// `EpsilonOverR` names the choice `I = eps/r`, which depends on the
/// dynamical variables and therefore cannot be evaluated here; the potential
/// module realizes it as the coordinate shift `r -> r +- i eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IFunction {
    Sqrt3Sinh,
    InvSqrt3Sinh,
    Sinh,
    EpsilonOverR,
}

impl IFunction {
    pub fn eval(self, eps: f64) -> Result<f64, DeformError> {
        match self {
            IFunction::Sqrt3Sinh => Ok(3f64.sqrt() * eps.sinh()),
            IFunction::InvSqrt3Sinh => Ok(eps.sinh() / 3f64.sqrt()),
            IFunction::Sinh => Ok(eps.sinh()),
            IFunction::EpsilonOverR => Err(DeformError::DynamicalDeformation),
        }
    }
}

/// A closed registry of deformation recipes. For type A the seeds carry the
/// weight-lattice coefficients of their imaginary parts (coefficients over
/// the fundamental weights l1, l2).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeformationScheme {
    pub variant: Variant,
    pub group: GroupName,
    pub r_function: RFunction,
    pub i_function: IFunction,
    pub seed_sign: SeedSign,
    /// Type A only: per simple-root seed, the coefficients of the imaginary
    /// part over (l1, l2), before the seed sign is applied.
    pub seed_weight_coeffs: Option<[[i64; 2]; 2]>,
}

impl DeformationScheme {
    /// The inner-product-preserving type A recipe: `R = cosh`, with
    /// `I = sqrt(3) sinh` for A2 and `I = sinh / sqrt(3)` for G2. The seed
    /// imaginary parts are `+- l2` for the first simple root and
    /// `-+ l1` (A2) / `-+ 3 l1` (G2) for the second.
    pub fn type_a_canonical(group: GroupName, seed_sign: SeedSign) -> Self {
        let (i_function, coeffs) = match group {
            GroupName::A2 => (IFunction::Sqrt3Sinh, [[0, 1], [-1, 0]]),
            GroupName::G2 => (IFunction::InvSqrt3Sinh, [[0, 1], [-3, 0]]),
        };
        Self {
            variant: Variant::TypeA,
            group,
            r_function: RFunction::Cosh,
            i_function,
            seed_sign,
            seed_weight_coeffs: Some(coeffs),
        }
    }

    /// The in-place type B recipe `a -> +-R a + i I a`.
    pub fn type_b(group: GroupName, r_function: RFunction, i_function: IFunction) -> Self {
        Self {
            variant: Variant::TypeB,
            group,
            r_function,
            i_function,
            seed_sign: SeedSign::Plus,
            seed_weight_coeffs: None,
        }
    }

    pub fn r_at(&self, eps: f64) -> f64 {
        self.r_function.eval(eps)
    }

    pub fn i_at(&self, eps: f64) -> Result<f64, DeformError> {
        self.i_function.eval(eps)
    }

    fn expect_group(&self, system: &RootSystem) -> Result<(), DeformError> {
        if self.group != system.name {
            return Err(DeformError::SchemeGroupMismatch {
                expected: self.group,
                found: system.name,
            });
        }
        Ok(())
    }
}

/// Symbolic complex vector `R(eps)*r_part + i*I(eps)*i_part` in the
/// simple-root basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeformedVector {
    pub r_part: RationalVector,
    pub i_part: RationalVector,
}

impl DeformedVector {
    pub fn new(r_part: RationalVector, i_part: RationalVector) -> Self {
        Self { r_part, i_part }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.r_part + other.r_part, self.i_part + other.i_part)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.r_part, -self.i_part)
    }

    /// Numeric coefficients over the simple roots at a given deformation
    /// strength.
    pub fn complex_coeffs(
        &self,
        scheme: &DeformationScheme,
        eps: f64,
    ) -> Result<[Complex64; 2], DeformError> {
        let r = scheme.r_at(eps);
        let i = scheme.i_at(eps)?;
        let rp = self.r_part.to_f64();
        let ip = self.i_part.to_f64();
        Ok([
            Complex64::new(r * rp[0], i * ip[0]),
            Complex64::new(r * rp[1], i * ip[1]),
        ])
    }
}

impl fmt::Display for DeformedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({}) + iI({})", self.r_part, self.i_part)
    }
}

/// Antilinear extended reflection: the ordinary Weyl reflection composed
/// with complex conjugation, `v -> s_i(Re v) - i s_i(Im v)`, acting exactly
/// on the symbolic pair.
pub fn extended_reflect(system: &RootSystem, i: u8, v: &DeformedVector) -> DeformedVector {
    DeformedVector::new(
        system.weyl_reflect(i, v.r_part),
        -system.weyl_reflect(i, v.i_part),
    )
}

/// Apply a word of extended reflections left to right.
pub fn apply_extended_word(
    system: &RootSystem,
    word: &WeylWord,
    v: &DeformedVector,
) -> DeformedVector {
    word.letters()
        .iter()
        .fold(*v, |acc, &i| extended_reflect(system, i, &acc))
}

/// The same antilinear reflection acting on evaluated complex coefficients
/// over the simple roots; used to measure float drift of the orbit against
/// the exact symbolic images.
pub fn extended_reflect_numeric(
    system: &RootSystem,
    i: u8,
    v: [Complex64; 2],
) -> [Complex64; 2] {
    assert!(i == 1 || i == 2);
    let j = (i - 1) as usize;
    let conj = [v[0].conj(), v[1].conj()];
    let mut coeff = Complex64::new(0.0, 0.0);
    for (k, z) in conj.iter().enumerate() {
        coeff += z * system.cartan.entries[k][j] as f64;
    }
    let mut out = conj;
    out[j] -= coeff;
    out
}

/// One deformed root: the exact undeformed label, the symbolic value, and
/// the deformation it was built with.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedRoot {
    pub label: RationalVector,
    pub vector: DeformedVector,
    pub scheme: DeformationScheme,
    pub epsilon: f64,
}

impl DeformedRoot {
    pub fn complex_coeffs(&self) -> Result<[Complex64; 2], DeformError> {
        self.vector.complex_coeffs(&self.scheme, self.epsilon)
    }

    /// `|Re . Im|` of the evaluated root. Zero (to rounding) for type A
    /// since the weight-lattice imaginary part is orthogonal to the label.
    pub fn orthogonality_residual(&self, system: &RootSystem) -> Result<f64, DeformError> {
        let r = self.scheme.r_at(self.epsilon);
        let i = self.scheme.i_at(self.epsilon)?;
        let exact = system.inner(&self.vector.r_part, &self.vector.i_part);
        Ok((r * i * rat_to_f64(exact)).abs())
    }
}

/// Seed deformation of simple root `index` (1-based) for a type A scheme:
/// real part `R(eps) * a_index`, imaginary part the scheme's weight
/// combination, sign-flipped by the scheme's seed sign.
pub fn deform_seed_type_a(
    system: &RootSystem,
    index: u8,
    scheme: &DeformationScheme,
    eps: f64,
) -> Result<DeformedRoot, DeformError> {
    if scheme.variant != Variant::TypeA {
        return Err(DeformError::VariantMismatch {
            expected: Variant::TypeA,
        });
    }
    scheme.expect_group(system)?;
    assert!(index == 1 || index == 2, "seed index must be 1 or 2");
    let coeffs = scheme.seed_weight_coeffs.expect("type A scheme has seeds");
    let weights = system.fundamental_weights();
    let row = coeffs[(index - 1) as usize];
    let im = (weights[0].scale(Rat::from_integer(row[0]))
        + weights[1].scale(Rat::from_integer(row[1])))
    .scale(scheme.seed_sign.factor());
    Ok(DeformedRoot {
        label: system.simple_roots[(index - 1) as usize],
        vector: DeformedVector::new(system.simple_roots[(index - 1) as usize], im),
        scheme: scheme.clone(),
        epsilon: eps,
    })
}

/// In-place type B deformation of a positive root: `+-R a + i I a`.
pub fn deform_type_b(
    root: &RationalVector,
    sign: SeedSign,
    scheme: &DeformationScheme,
    eps: f64,
) -> Result<DeformedRoot, DeformError> {
    if scheme.variant != Variant::TypeB {
        return Err(DeformError::VariantMismatch {
            expected: Variant::TypeB,
        });
    }
    if !root.is_positive() {
        return Err(DeformError::NotPositive(root.to_string()));
    }
    let r_part = root.scale(sign.factor());
    Ok(DeformedRoot {
        label: r_part,
        vector: DeformedVector::new(r_part, *root),
        scheme: scheme.clone(),
        epsilon: eps,
    })
}

/// The full set of deformed roots, one per undeformed root.
#[derive(Debug, Clone)]
pub struct DeformedSystem {
    pub system: RootSystem,
    pub scheme: DeformationScheme,
    pub epsilon: f64,
    pub roots: Vec<DeformedRoot>,
}

/// Report of `max |ai~.aj~ - ai.aj|` over all pairs of deformed roots,
/// using the complex bilinear (non-conjugated) product.
#[derive(Debug, Clone, Serialize)]
pub struct InnerProductReport {
    pub max_drift: f64,
    pub worst_pair: (String, String),
}

impl DeformedSystem {
    /// Construct the deformed system.
    ///
    /// Type A closes the seed roots under the extended reflections and
    /// demands that each undeformed label is reached with one unambiguous
    /// imaginary part; type B deforms every root in place and then checks
    /// that extended reflections map the set into itself up to an overall
    /// sign.
    pub fn generate(
        system: &RootSystem,
        scheme: &DeformationScheme,
        eps: f64,
    ) -> Result<Self, DeformError> {
        scheme.expect_group(system)?;
        // Reject eps/r here: it is not a function of eps alone.
        scheme.i_at(eps)?;
        let roots = match scheme.variant {
            Variant::TypeA => Self::close_type_a(system, scheme, eps)?,
            Variant::TypeB => Self::build_type_b(system, scheme, eps)?,
        };
        Ok(Self {
            system: system.clone(),
            scheme: scheme.clone(),
            epsilon: eps,
            roots,
        })
    }

    fn close_type_a(
        system: &RootSystem,
        scheme: &DeformationScheme,
        eps: f64,
    ) -> Result<Vec<DeformedRoot>, DeformError> {
        let seeds = [
            deform_seed_type_a(system, 1, scheme, eps)?.vector,
            deform_seed_type_a(system, 2, scheme, eps)?.vector,
        ];
        let mut found: Vec<(DeformedVector, Vec<u8>)> =
            seeds.iter().map(|v| (*v, Vec::new())).collect();
        let mut queue = found.clone();
        while let Some((v, word)) = queue.pop() {
            for i in [1u8, 2u8] {
                let img = extended_reflect(system, i, &v);
                if found.iter().any(|(w, _)| *w == img) {
                    continue;
                }
                let mut next_word = word.clone();
                next_word.push(i);
                // Same label with a different imaginary part means the
                // orbit is inconsistent.
                if let Some((clash, _)) = found.iter().find(|(w, _)| w.r_part == img.r_part) {
                    debug_assert_ne!(clash.i_part, img.i_part);
                    return Err(DeformError::ClosureFailure {
                        word: WeylWord::new(&next_word).to_string(),
                        label: img.r_part.to_string(),
                    });
                }
                found.push((img, next_word.clone()));
                queue.push((img, next_word));
            }
        }
        let mut roots: Vec<DeformedRoot> = found
            .into_iter()
            .map(|(vector, _)| DeformedRoot {
                label: vector.r_part,
                vector,
                scheme: scheme.clone(),
                epsilon: eps,
            })
            .collect();
        roots.sort_by_key(|a| a.label);
        debug_assert_eq!(roots.len(), system.all_roots.len());
        Ok(roots)
    }

    fn build_type_b(
        system: &RootSystem,
        scheme: &DeformationScheme,
        eps: f64,
    ) -> Result<Vec<DeformedRoot>, DeformError> {
        let mut roots = Vec::new();
        for alpha in system.positive_roots() {
            roots.push(deform_type_b(alpha, SeedSign::Plus, scheme, eps)?);
            roots.push(deform_type_b(alpha, SeedSign::Minus, scheme, eps)?);
        }
        // Invariance up to overall sign.
        for root in &roots {
            for i in [1u8, 2u8] {
                let img = extended_reflect(system, i, &root.vector);
                let hit = roots
                    .iter()
                    .any(|r| r.vector == img || r.vector == img.neg());
                if !hit {
                    return Err(DeformError::ClosureFailure {
                        word: format!("s{i}"),
                        label: root.label.to_string(),
                    });
                }
            }
        }
        roots.sort_by_key(|a| a.label);
        Ok(roots)
    }

    pub fn root_by_label(&self, label: &RationalVector) -> Option<&DeformedRoot> {
        self.roots.iter().find(|r| r.label == *label)
    }

    /// Complex bilinear product of two symbolic vectors at this system's
    /// deformation strength.
    pub fn bilinear(&self, a: &DeformedVector, b: &DeformedVector) -> Result<Complex64, DeformError> {
        let r = self.scheme.r_at(self.epsilon);
        let i = self.scheme.i_at(self.epsilon)?;
        let rr = rat_to_f64(self.system.inner(&a.r_part, &b.r_part));
        let ii = rat_to_f64(self.system.inner(&a.i_part, &b.i_part));
        let ri = rat_to_f64(self.system.inner(&a.r_part, &b.i_part));
        let ir = rat_to_f64(self.system.inner(&a.i_part, &b.r_part));
        Ok(Complex64::new(r * r * rr - i * i * ii, r * i * (ri + ir)))
    }

    /// Largest `|Re . Im|` over the deformed roots.
    pub fn max_orthogonality_residual(&self) -> Result<f64, DeformError> {
        let mut worst = 0.0f64;
        for root in &self.roots {
            worst = worst.max(root.orthogonality_residual(&self.system)?);
        }
        Ok(worst)
    }

    /// Compare all pairwise bilinear products against the undeformed Gram
    /// values of the labels.
    pub fn check_inner_products(&self) -> Result<InnerProductReport, DeformError> {
        let mut max_drift = 0.0f64;
        let mut worst_pair = (String::new(), String::new());
        for a in &self.roots {
            for b in &self.roots {
                let deformed = self.bilinear(&a.vector, &b.vector)?;
                let exact = rat_to_f64(self.system.inner(&a.label, &b.label));
                let drift = (deformed - Complex64::new(exact, 0.0)).norm();
                if drift > max_drift {
                    max_drift = drift;
                    worst_pair = (a.label.to_string(), b.label.to_string());
                }
            }
        }
        Ok(InnerProductReport {
            max_drift,
            worst_pair,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{EmbeddingName, RootSystem};
    use proptest::prelude::*;

    fn rv(c1: i64, c2: i64) -> RationalVector {
        RationalVector::from_ints(c1, c2)
    }

    fn rv3(c1: i64, c2: i64) -> RationalVector {
        rv(c1, c2).scale(Rat::new(1, 3))
    }

    #[test]
    fn a2_seed_matches_weight_combination() {
        let a2 = RootSystem::build(GroupName::A2);
        let scheme = DeformationScheme::type_a_canonical(GroupName::A2, SeedSign::Plus);
        let s1 = deform_seed_type_a(&a2, 1, &scheme, 0.3).unwrap();
        assert_eq!(s1.vector.r_part, rv(1, 0));
        assert_eq!(s1.vector.i_part, rv3(1, 2)); // l2 = (a1 + 2 a2)/3
        let s2 = deform_seed_type_a(&a2, 2, &scheme, 0.3).unwrap();
        assert_eq!(s2.vector.i_part, -rv3(2, 1)); // -l1

        // eps = 0 evaluates exactly to the undeformed roots.
        let c = s1.vector.complex_coeffs(&scheme, 0.0).unwrap();
        assert_eq!(c[0], Complex64::new(1.0, 0.0));
        assert_eq!(c[1], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn g2_seed_uses_three_times_first_weight() {
        let g2 = RootSystem::build(GroupName::G2);
        let scheme = DeformationScheme::type_a_canonical(GroupName::G2, SeedSign::Plus);
        let s2 = deform_seed_type_a(&g2, 2, &scheme, 0.5).unwrap();
        assert_eq!(s2.vector.i_part, rv(2, 1).scale(Rat::from_integer(-3)));
    }

    #[test]
    fn scheme_group_mismatch_is_an_error() {
        let g2 = RootSystem::build(GroupName::G2);
        let scheme = DeformationScheme::type_a_canonical(GroupName::A2, SeedSign::Plus);
        assert!(matches!(
            deform_seed_type_a(&g2, 1, &scheme, 0.1),
            Err(DeformError::SchemeGroupMismatch { .. })
        ));
    }

    #[test]
    fn deformation_functions_limits() {
        for f in [RFunction::Cosh, RFunction::One] {
            assert_eq!(f.eval(0.0), 1.0);
        }
        for f in [IFunction::Sqrt3Sinh, IFunction::InvSqrt3Sinh, IFunction::Sinh] {
            assert_eq!(f.eval(0.0).unwrap(), 0.0);
        }
        assert!(matches!(
            IFunction::EpsilonOverR.eval(0.2),
            Err(DeformError::DynamicalDeformation)
        ));
    }

    #[test]
    fn extended_reflection_examples() {
        let a2 = RootSystem::build(GroupName::A2);
        let scheme = DeformationScheme::type_a_canonical(GroupName::A2, SeedSign::Plus);
        let a1t = deform_seed_type_a(&a2, 1, &scheme, 0.3).unwrap().vector;
        let a2t = deform_seed_type_a(&a2, 2, &scheme, 0.3).unwrap().vector;

        assert_eq!(extended_reflect(&a2, 1, &a1t), a1t.neg());
        assert_eq!(extended_reflect(&a2, 2, &a1t), a1t.add(&a2t));
        assert_eq!(extended_reflect(&a2, 1, &a2t), a1t.add(&a2t));
        assert_eq!(extended_reflect(&a2, 2, &a2t), a2t.neg());
        // The second seed is reached from the first through the long word.
        let w = apply_extended_word(&a2, &WeylWord::new(&[1, 2, 1]), &a1t);
        assert_eq!(w.neg(), a2t);

        let g2 = RootSystem::build(GroupName::G2);
        let scheme_g = DeformationScheme::type_a_canonical(GroupName::G2, SeedSign::Plus);
        let b1 = deform_seed_type_a(&g2, 1, &scheme_g, 0.3).unwrap().vector;
        let b2 = deform_seed_type_a(&g2, 2, &scheme_g, 0.3).unwrap().vector;
        // s~1(a2~) = 3 a1~ + a2~
        let mut three_b1 = b1;
        three_b1.r_part = b1.r_part.scale(Rat::from_integer(3));
        three_b1.i_part = b1.i_part.scale(Rat::from_integer(3));
        assert_eq!(extended_reflect(&g2, 1, &b2), three_b1.add(&b2));
    }

    #[test]
    fn type_a_orbits_close_with_expected_counts() {
        for (name, count) in [(GroupName::A2, 6), (GroupName::G2, 12)] {
            let sys = RootSystem::build(name);
            for sign in [SeedSign::Plus, SeedSign::Minus] {
                let scheme = DeformationScheme::type_a_canonical(name, sign);
                let ds = DeformedSystem::generate(&sys, &scheme, 0.4).unwrap();
                assert_eq!(ds.roots.len(), count);
                // Labels biject with the undeformed roots.
                let mut labels: Vec<_> = ds.roots.iter().map(|r| r.label).collect();
                labels.sort();
                assert_eq!(labels, sys.all_roots);
            }
        }
    }

    #[test]
    fn type_a_images_follow_the_undeformed_table() {
        for name in [GroupName::A2, GroupName::G2] {
            let sys = RootSystem::build(name);
            let scheme = DeformationScheme::type_a_canonical(name, SeedSign::Plus);
            let ds = DeformedSystem::generate(&sys, &scheme, 0.7).unwrap();
            for root in &ds.roots {
                for i in [1, 2] {
                    let img = extended_reflect(&sys, i, &root.vector);
                    let target = ds.root_by_label(&sys.weyl_reflect(i, root.label)).unwrap();
                    assert_eq!(img, target.vector);
                }
            }
        }
    }

    #[test]
    fn type_a_sum_decomposition_is_preserved() {
        for name in [GroupName::A2, GroupName::G2] {
            let sys = RootSystem::build(name);
            let scheme = DeformationScheme::type_a_canonical(name, SeedSign::Plus);
            let ds = DeformedSystem::generate(&sys, &scheme, 0.9).unwrap();
            let s1 = ds.root_by_label(&rv(1, 0)).unwrap().vector;
            let s2 = ds.root_by_label(&rv(0, 1)).unwrap().vector;
            for root in &ds.roots {
                let c = root.label.coeffs;
                let combo = DeformedVector::new(
                    s1.r_part.scale(c[0]) + s2.r_part.scale(c[1]),
                    s1.i_part.scale(c[0]) + s2.i_part.scale(c[1]),
                );
                assert_eq!(root.vector, combo, "{}", root.label);
            }
        }
    }

    #[test]
    fn orthogonality_type_a_and_violation_type_b() {
        let a2 = RootSystem::build(GroupName::A2);
        let scheme = DeformationScheme::type_a_canonical(GroupName::A2, SeedSign::Plus);
        let ds = DeformedSystem::generate(&a2, &scheme, 0.7).unwrap();
        assert!(ds.max_orthogonality_residual().unwrap() <= 1e-12);

        let scheme_b =
            DeformationScheme::type_b(GroupName::A2, RFunction::Cosh, IFunction::Sinh);
        let eps = 0.7;
        let root = deform_type_b(&rv(1, 0), SeedSign::Plus, &scheme_b, eps).unwrap();
        let residual = root.orthogonality_residual(&a2).unwrap();
        let expected = eps.cosh() * eps.sinh() * 2.0; // R I a1^2, parallel parts
        assert!((residual - expected).abs() <= 1e-12);

        // eps = 0 always gives a vanishing residual.
        let root0 = deform_type_b(&rv(1, 0), SeedSign::Plus, &scheme_b, 0.0).unwrap();
        assert_eq!(root0.orthogonality_residual(&a2).unwrap(), 0.0);
    }

    #[test]
    fn inner_products_preserved_for_canonical_type_a() {
        let eps = 0.4;
        let a2 = RootSystem::build(GroupName::A2);
        let scheme = DeformationScheme::type_a_canonical(GroupName::A2, SeedSign::Plus);
        let ds = DeformedSystem::generate(&a2, &scheme, eps).unwrap();
        let s1 = ds.root_by_label(&rv(1, 0)).unwrap().vector;
        let s2 = ds.root_by_label(&rv(0, 1)).unwrap().vector;
        let p12 = ds.bilinear(&s1, &s2).unwrap();
        assert!((p12 - Complex64::new(-1.0, 0.0)).norm() <= 1e-12);
        let p11 = ds.bilinear(&s1, &s1).unwrap();
        assert!((p11 - Complex64::new(2.0, 0.0)).norm() <= 1e-12);
        assert!(ds.check_inner_products().unwrap().max_drift <= 1e-12);

        let g2 = RootSystem::build(GroupName::G2);
        let scheme_g = DeformationScheme::type_a_canonical(GroupName::G2, SeedSign::Plus);
        let dg = DeformedSystem::generate(&g2, &scheme_g, eps).unwrap();
        let t1 = dg.root_by_label(&rv(1, 0)).unwrap().vector;
        let t2 = dg.root_by_label(&rv(0, 1)).unwrap().vector;
        assert!((dg.bilinear(&t2, &t2).unwrap() - Complex64::new(6.0, 0.0)).norm() <= 1e-12);
        assert!((dg.bilinear(&t1, &t2).unwrap() - Complex64::new(-3.0, 0.0)).norm() <= 1e-12);
        assert!(dg.check_inner_products().unwrap().max_drift <= 1e-12);
    }

    #[test]
    fn both_seed_signs_preserve_inner_products() {
        for name in [GroupName::A2, GroupName::G2] {
            let sys = RootSystem::build(name);
            for sign in [SeedSign::Plus, SeedSign::Minus] {
                let scheme = DeformationScheme::type_a_canonical(name, sign);
                let ds = DeformedSystem::generate(&sys, &scheme, 0.6).unwrap();
                assert!(ds.check_inner_products().unwrap().max_drift <= 1e-12);
                assert!(ds.max_orthogonality_residual().unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn deformation_is_continuous_at_zero() {
        let g2 = RootSystem::build(GroupName::G2);
        let scheme = DeformationScheme::type_a_canonical(GroupName::G2, SeedSign::Plus);
        let ds = DeformedSystem::generate(&g2, &scheme, 1e-9).unwrap();
        for root in &ds.roots {
            let c = root.complex_coeffs().unwrap();
            let label = root.label.to_f64();
            for k in 0..2 {
                assert!((c[k] - Complex64::new(label[k], 0.0)).norm() <= 1e-8);
            }
        }
    }

    #[test]
    fn type_b_breaks_inner_products() {
        let a2 = RootSystem::build(GroupName::A2);
        let scheme = DeformationScheme::type_b(GroupName::A2, RFunction::Cosh, IFunction::Sinh);
        let ds = DeformedSystem::generate(&a2, &scheme, 0.5).unwrap();
        // a1~+ . a1~+ = (R + iI)^2 * 2, so the drift is far from zero.
        let s1 = ds.root_by_label(&rv(1, 0)).unwrap().vector;
        let z = Complex64::new(0.5f64.cosh(), 0.5f64.sinh());
        assert!((ds.bilinear(&s1, &s1).unwrap() - z * z * 2.0).norm() <= 1e-12);
        assert!(ds.check_inner_products().unwrap().max_drift > 0.01);
    }

    #[test]
    fn type_b_table_for_a2() {
        let a2 = RootSystem::build(GroupName::A2);
        let scheme = DeformationScheme::type_b(GroupName::A2, RFunction::Cosh, IFunction::Sinh);
        let eps = 0.3;
        let plus = |r: RationalVector| deform_type_b(&r, SeedSign::Plus, &scheme, eps).unwrap().vector;
        let minus =
            |r: RationalVector| deform_type_b(&r, SeedSign::Minus, &scheme, eps).unwrap().vector;
        let a1p = plus(rv(1, 0));
        let a2p = plus(rv(0, 1));
        let a1m = minus(rv(1, 0));
        let a2m = minus(rv(0, 1));
        assert_ne!(a1m, a1p.neg(), "opposite signs are independent roots");

        assert_eq!(extended_reflect(&a2, 1, &a1p), a1m);
        assert_eq!(extended_reflect(&a2, 1, &a2p), a1m.add(&a2m).neg());
        // The diagonal entry of the second reflection: the image is the
        // deformation attached to -a2 itself, not its negative, matching
        // additivity of the extended reflection across the row.
        assert_eq!(extended_reflect(&a2, 2, &a2p), a2m);
        assert_eq!(extended_reflect(&a2, 2, &a1p), a1m.add(&a2m).neg());
        assert_eq!(
            extended_reflect(&a2, 2, &a1p.add(&a2p)),
            a1m.neg()
        );
        // Long-word row.
        let w = WeylWord::new(&[1, 2, 1]);
        assert_eq!(apply_extended_word(&a2, &w, &a1p), a2m);
        assert_eq!(apply_extended_word(&a2, &w, &a2p), a1m);
        assert_eq!(apply_extended_word(&a2, &w, &a1p.add(&a2p)), a1m.add(&a2m));
    }

    #[test]
    fn epsilon_over_r_cannot_build_a_system() {
        let a2 = RootSystem::build(GroupName::A2);
        let scheme =
            DeformationScheme::type_b(GroupName::A2, RFunction::One, IFunction::EpsilonOverR);
        assert!(matches!(
            DeformedSystem::generate(&a2, &scheme, 0.2),
            Err(DeformError::DynamicalDeformation)
        ));
    }

    #[test]
    fn evaluated_roots_are_orthogonal_pairs_in_embedding() {
        // Cross-check the symbolic orthogonality against embedded floats.
        let g2 = RootSystem::build(GroupName::G2);
        let e = g2.embedding(EmbeddingName::Plane2d);
        let scheme = DeformationScheme::type_a_canonical(GroupName::G2, SeedSign::Plus);
        let ds = DeformedSystem::generate(&g2, &scheme, 0.6).unwrap();
        for root in &ds.roots {
            let re = g2.embed(&e, &root.vector.r_part).unwrap();
            let im = g2.embed(&e, &root.vector.i_part).unwrap();
            let dot: f64 = re.iter().zip(&im).map(|(a, b)| a * b).sum();
            assert!(dot.abs() <= 1e-12, "{}", root.label);
        }
    }

    proptest! {
        #[test]
        fn extended_reflections_are_involutions(
            r1 in -12i64..12, r2 in -12i64..12,
            i1 in -12i64..12, i2 in -12i64..12,
            i in 1u8..3,
        ) {
            let v = DeformedVector::new(rv(r1, r2), rv(i1, i2));
            for name in [GroupName::A2, GroupName::G2] {
                let sys = RootSystem::build(name);
                prop_assert_eq!(extended_reflect(&sys, i, &extended_reflect(&sys, i, &v)), v);
            }
        }
    }
}
