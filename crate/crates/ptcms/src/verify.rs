//! The runnable invariant suite behind `ptcms verify`: one named check per
//! structural property, each returning a pass flag and the measured
//! residual. All randomness is seeded, so reports are byte-reproducible.

use crate::cmsmodel::{
    from_jacobi_polar, polar_potential_a2, polar_potential_g2, to_jacobi, to_jacobi_polar,
    CmsModel, DeformationMode, PotentialKind, RootSubset,
};
use crate::ptdeform::{
    apply_extended_word, extended_reflect_numeric, DeformationScheme, DeformedSystem, IFunction,
    RFunction, SeedSign,
};
use crate::rootsys::{rat_to_f64, EmbeddingName, GroupName, RationalVector, RootSystem, WeylWord};
use crate::spectra::{
    self, angular_wavefunction, degeneracy_pairs, degeneracy_pairs_by_energy, energy_levels,
    kappa, laguerre_identity_residual, ode_residual, ode_residual_at_energy, radial_wavefunction,
    Branch, BranchSign, ConstraintProfile, OdeKind, WaveFunctionSpec,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: Option<f64>,
    pub detail: String,
}

impl Check {
    fn bounded(name: &str, residual: f64, bound: f64, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass: residual <= bound,
            residual: Some(residual),
            detail: detail.into(),
        }
    }

    fn flag(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            pass,
            residual: None,
            detail: detail.into(),
        }
    }
}

/// Reflection tables for the positive roots, encoded as
/// `(word, [(root, image); ...])` with simple-root coefficients.
type TableRow = (&'static [u8], &'static [((i64, i64), (i64, i64))]);

const A2_TABLE: &[TableRow] = &[
    (&[1], &[((1, 0), (-1, 0)), ((0, 1), (1, 1)), ((1, 1), (0, 1))]),
    (&[2], &[((1, 0), (1, 1)), ((0, 1), (0, -1)), ((1, 1), (1, 0))]),
    (
        &[1, 2, 1],
        &[((1, 0), (0, -1)), ((0, 1), (-1, 0)), ((1, 1), (-1, -1))],
    ),
];

const G2_TABLE: &[TableRow] = &[
    (
        &[1],
        &[
            ((1, 0), (-1, 0)),
            ((1, 1), (2, 1)),
            ((2, 1), (1, 1)),
            ((0, 1), (3, 1)),
            ((3, 1), (0, 1)),
            ((3, 2), (3, 2)),
        ],
    ),
    (
        &[2],
        &[
            ((1, 0), (1, 1)),
            ((1, 1), (1, 0)),
            ((2, 1), (2, 1)),
            ((0, 1), (0, -1)),
            ((3, 1), (3, 2)),
            ((3, 2), (3, 1)),
        ],
    ),
    (
        &[2, 1, 2],
        &[
            ((1, 0), (2, 1)),
            ((1, 1), (-1, -1)),
            ((2, 1), (1, 0)),
            ((0, 1), (-3, -2)),
            ((3, 1), (3, 1)),
            ((3, 2), (0, -1)),
        ],
    ),
    (
        &[1, 2, 1],
        &[
            ((1, 0), (-2, -1)),
            ((1, 1), (1, 1)),
            ((2, 1), (-1, 0)),
            ((0, 1), (3, 2)),
            ((3, 1), (-3, -1)),
            ((3, 2), (0, 1)),
        ],
    ),
    (
        &[1, 2, 1, 2, 1],
        &[
            ((1, 0), (-1, -1)),
            ((1, 1), (-1, 0)),
            ((2, 1), (-2, -1)),
            ((0, 1), (0, 1)),
            ((3, 1), (-3, -2)),
            ((3, 2), (-3, -1)),
        ],
    ),
    (
        &[2, 1, 2, 1, 2],
        &[
            ((1, 0), (1, 0)),
            ((1, 1), (-2, -1)),
            ((2, 1), (-1, -1)),
            ((0, 1), (-3, -1)),
            ((3, 1), (0, -1)),
            ((3, 2), (-3, -2)),
        ],
    ),
];

fn table_check(name: &str, group: GroupName, table: &[TableRow]) -> Check {
    let sys = RootSystem::build(group);
    let mut failures = 0usize;
    let mut total = 0usize;
    for (word, entries) in table {
        let w = WeylWord::new(word);
        for ((c1, c2), (d1, d2)) in entries.iter() {
            total += 1;
            let image = sys.apply_word(&w, RationalVector::from_ints(*c1, *c2));
            if image != RationalVector::from_ints(*d1, *d2) {
                failures += 1;
            }
        }
    }
    Check::flag(
        name,
        failures == 0,
        format!("{total} table entries, {failures} mismatches"),
    )
}

fn root_structure_check() -> Check {
    let mut ok = true;
    let mut detail = String::new();
    for group in [GroupName::A2, GroupName::G2] {
        let sys = RootSystem::build(group);
        let expected = sys.rank * sys.coxeter_number;
        ok &= sys.all_roots.len() == expected;
        for root in &sys.all_roots {
            ok &= sys.all_roots.contains(&-*root);
            for i in [1, 2] {
                ok &= sys.all_roots.contains(&sys.weyl_reflect(i, *root));
            }
        }
        detail.push_str(&format!("{group}:{} roots ", sys.all_roots.len()));
    }
    let g2 = RootSystem::build(GroupName::G2);
    for root in g2.short_roots() {
        for i in [1, 2] {
            ok &= g2.length_class(&g2.weyl_reflect(i, *root)) == crate::rootsys::LengthClass::Short;
        }
    }
    Check::flag("roots-structure", ok, detail.trim().to_string())
}

fn weights_check() -> Check {
    let mut ok = true;
    for group in [GroupName::A2, GroupName::G2] {
        let sys = RootSystem::build(group);
        let weights = sys.fundamental_weights();
        for (i, w) in weights.iter().enumerate() {
            for (j, a) in sys.simple_roots.iter().enumerate() {
                let v = crate::rootsys::Rat::from_integer(2) * sys.inner(w, a)
                    / sys.root_square(a);
                ok &= v == crate::rootsys::Rat::from_integer(i64::from(i == j));
            }
        }
    }
    Check::flag("weights-duality", ok, "2 li.aj/aj^2 = delta_ij, exact")
}

#[allow(clippy::needless_range_loop)]
fn embedding_check() -> Check {
    let mut worst = 0.0f64;
    for group in [GroupName::A2, GroupName::G2] {
        let sys = RootSystem::build(group);
        for name in [EmbeddingName::Standard3d, EmbeddingName::Plane2d] {
            let e = sys.embedding(name);
            let g = e.gram();
            for i in 0..2 {
                for j in 0..2 {
                    worst = worst.max((g[i][j] - rat_to_f64(sys.gram[i][j])).abs());
                }
            }
        }
    }
    Check::bounded("embedding-gram", worst, 1e-12, "both groups, both embeddings")
}

fn all_words_up_to(len: usize) -> Vec<Vec<u8>> {
    let mut words: Vec<Vec<u8>> = vec![vec![]];
    let mut frontier: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for i in [1u8, 2u8] {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words
}

fn orbit_closure_check() -> Check {
    let mut worst = 0.0f64;
    let words = all_words_up_to(5);
    for group in [GroupName::A2, GroupName::G2] {
        let sys = RootSystem::build(group);
        let scheme = DeformationScheme::type_a_canonical(group, SeedSign::Plus);
        for eps in [0.1, 0.5, 1.0] {
            let ds = match DeformedSystem::generate(&sys, &scheme, eps) {
                Ok(ds) => ds,
                Err(e) => return Check::flag("deform-orbit-closure", false, e.to_string()),
            };
            for root in &ds.roots {
                let start = root.complex_coeffs().unwrap();
                for word in &words {
                    // Float orbit against the exact symbolic image.
                    let mut numeric = start;
                    for &i in word {
                        numeric = extended_reflect_numeric(&sys, i, numeric);
                    }
                    let target = apply_extended_word(&sys, &WeylWord::new(word), &root.vector)
                        .complex_coeffs(&scheme, eps)
                        .unwrap();
                    for k in 0..2 {
                        worst = worst.max((numeric[k] - target[k]).norm());
                    }
                }
            }
        }
    }
    Check::bounded(
        "deform-orbit-closure",
        worst,
        1e-12,
        "all words of length <= 5, eps in {0.1, 0.5, 1.0}",
    )
}

fn orthogonality_check() -> Check {
    let mut worst = 0.0f64;
    for group in [GroupName::A2, GroupName::G2] {
        let sys = RootSystem::build(group);
        let scheme = DeformationScheme::type_a_canonical(group, SeedSign::Plus);
        for eps in [0.1, 0.5, 1.0] {
            let ds = DeformedSystem::generate(&sys, &scheme, eps).unwrap();
            worst = worst.max(ds.max_orthogonality_residual().unwrap());
        }
    }
    Check::bounded("deform-orthogonality", worst, 1e-12, "Re.Im over all roots")
}

fn inner_product_check() -> Check {
    let mut worst = 0.0f64;
    for group in [GroupName::A2, GroupName::G2] {
        let sys = RootSystem::build(group);
        let scheme = DeformationScheme::type_a_canonical(group, SeedSign::Plus);
        for eps in [0.1, 0.5, 1.0] {
            let ds = DeformedSystem::generate(&sys, &scheme, eps).unwrap();
            worst = worst.max(ds.check_inner_products().unwrap().max_drift);
        }
    }
    let mut check = Check::bounded(
        "deform-inner-products",
        worst,
        1e-12,
        "cosh/sinh recipe preserves the Gram data",
    );
    // Negative control: the in-place deformation must violate preservation.
    let a2 = RootSystem::build(GroupName::A2);
    let scheme_b = DeformationScheme::type_b(GroupName::A2, RFunction::Cosh, IFunction::Sinh);
    let drift = DeformedSystem::generate(&a2, &scheme_b, 0.5)
        .unwrap()
        .check_inner_products()
        .unwrap()
        .max_drift;
    if drift <= 0.01 {
        check.pass = false;
        check.detail = format!("in-place deformation unexpectedly preserved products ({drift})");
    }
    check
}

fn coordinates_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let g2 = RootSystem::build(GroupName::G2);
    let emb = g2.embedding(EmbeddingName::Standard3d);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let q = [
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        ];
        let (_, x, y) = to_jacobi(&q);
        let (r, phi) = match to_jacobi_polar(&q) {
            Ok((_, r, phi)) => (r, phi),
            Err(_) => continue,
        };
        n += 1;
        let third = 2.0 * std::f64::consts::PI / 3.0;
        let rel = |a: f64, b: f64| (a - b).abs();
        worst = worst.max(rel(q[0] - q[1], 2f64.sqrt() * r * phi.sin()));
        worst = worst.max(rel(q[2] - q[0], -(2f64.sqrt()) * r * (third - phi).sin()));
        worst = worst.max(rel(q[2] - q[1], -(2f64.sqrt()) * r * (third + phi).sin()));
        worst = worst.max(rel(
            q[1] + q[2] - 2.0 * q[0],
            6f64.sqrt() * r * (third + phi).cos(),
        ));
        worst = worst.max(rel(
            q[0] + q[2] - 2.0 * q[1],
            6f64.sqrt() * r * (third - phi).cos(),
        ));
        worst = worst.max(rel(
            2.0 * q[2] - q[0] - q[1],
            -(6f64.sqrt()) * r * phi.cos(),
        ));
        worst = worst.max(rel(q[0] - q[1], 2f64.sqrt() * x));
        worst = worst.max(rel(2.0 * q[2] - q[0] - q[1], -(6f64.sqrt()) * y));
        for i in [1, 2] {
            let qi = g2.reflect_point(&emb, i, &q);
            let (_, xi, yi) = to_jacobi(&[qi[0], qi[1], qi[2]]);
            worst = worst.max((xi.hypot(yi) - r).abs());
        }
        // Confining term identity for both groups.
        for group in [GroupName::A2, GroupName::G2] {
            let sys = RootSystem::build(group);
            let e = sys.embedding(EmbeddingName::Standard3d);
            let mass = 1.3;
            let sum: f64 = sys
                .short_roots()
                .map(|root| {
                    let a = sys.embed(&e, root).unwrap();
                    let d: f64 = a.iter().zip(&q).map(|(u, v)| u * v).sum();
                    d * d
                })
                .sum();
            let lhs = mass * mass / 16.0 * sum;
            let omega = 3f64.sqrt() / 2.0 * mass;
            let rhs = omega * omega * r * r / 2.0;
            worst = worst.max((lhs - rhs).abs());
        }
    }
    Check::bounded(
        "coords-identities",
        worst,
        1e-12,
        "inner products in all coordinate systems, radius invariance, confining term",
    )
}

fn type_a_model(group: GroupName, sign: SeedSign, eps: f64, gs: f64, gl: f64, mass: f64) -> CmsModel {
    let sys = RootSystem::build(group);
    let scheme = DeformationScheme::type_a_canonical(group, sign);
    let ds = DeformedSystem::generate(&sys, &scheme, eps).unwrap();
    CmsModel::new(ds, gs, gl, mass, PotentialKind::Rational)
}

fn cross_representation_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let r = rng.gen_range(0.6..1.8);
        let phi = rng.gen_range(0.05..std::f64::consts::PI / 6.0 - 0.05);
        let eps = rng.gen_range(0.1..0.6);
        let q = from_jacobi_polar(0.0, r, phi);

        let a2 = type_a_model(GroupName::A2, SeedSign::Minus, eps, 1.0, 0.0, 0.0);
        let lhs = a2.assemble_potential(&q).unwrap();
        let rhs =
            polar_potential_a2(1.0, PotentialKind::Rational, r, phi, eps, DeformationMode::PhiShift)
                .unwrap();
        worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));

        let g2 = type_a_model(GroupName::G2, SeedSign::Plus, eps, 1.0, 0.7, 0.0);
        let lhs = g2.assemble_potential(&q).unwrap();
        let rhs = polar_potential_g2(
            1.0,
            0.7,
            PotentialKind::Rational,
            r,
            phi,
            eps,
            DeformationMode::PhiShift,
        )
        .unwrap();
        worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }
    let mut check = Check::bounded(
        "potential-cross-representation",
        worst,
        1e-10,
        "polar angular shift vs deformed-root assembly, 100 points",
    );
    // Three-body switch-off reduces the polar potentials to each other.
    let mut reduction_worst = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..100 {
        let r = rng.gen_range(0.6..1.8);
        let phi = rng.gen_range(0.05..std::f64::consts::PI / 6.0 - 0.05);
        let eps = rng.gen_range(0.1..0.6);
        let a = polar_potential_a2(1.3, PotentialKind::Rational, r, phi, eps, DeformationMode::PhiShift)
            .unwrap();
        let g = polar_potential_g2(
            1.3,
            0.0,
            PotentialKind::Rational,
            r,
            phi,
            eps,
            DeformationMode::PhiShift,
        )
        .unwrap();
        reduction_worst = reduction_worst.max((a - g).norm());
    }
    if reduction_worst > 1e-12 {
        check.pass = false;
        check.detail = format!("three-body switch-off drift {reduction_worst}");
    }
    check
}

fn pt_invariance_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut worst = 0.0f64;
    for group in [GroupName::A2, GroupName::G2] {
        let model = type_a_model(group, SeedSign::Plus, 0.3, 1.0, 0.8, 1.0);
        for i in [1, 2] {
            let mut n = 0;
            while n < 50 {
                let q = [
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                ];
                // Stay away from potential poles so the absolute residual
                // reflects symmetry rather than catastrophic magnitudes.
                if !arguments_bounded(&model, &q, 0.15) {
                    continue;
                }
                n += 1;
                worst = worst.max(model.pt_invariance_residual(i, &q).unwrap());
            }
        }
    }
    let mut check = Check::bounded(
        "pt-invariance",
        worst,
        1e-12,
        "conj(V(s q)) = V(q), 50 points per generator per group",
    );
    // Negative control: the in-place deformation restricted to half of the
    // roots is not symmetric, since its negative-root images are not minus
    // the positive ones.
    let a2 = RootSystem::build(GroupName::A2);
    let scheme_b = DeformationScheme::type_b(GroupName::A2, RFunction::Cosh, IFunction::Sinh);
    let ds = DeformedSystem::generate(&a2, &scheme_b, 0.3).unwrap();
    let broken = CmsModel::new(ds, 1.0, 0.0, 0.0, PotentialKind::Rational)
        .with_subset(RootSubset::PositiveOnly);
    let res = broken.pt_invariance_residual(1, &[0.9, 0.2, -0.6]).unwrap();
    if res <= 0.1 {
        check.pass = false;
        check.detail = format!("half-sum model unexpectedly symmetric ({res})");
    }
    check
}

fn arguments_bounded(model: &CmsModel, q: &[f64; 3], floor: f64) -> bool {
    let sys = &model.deformed.system;
    let emb = sys.embedding(EmbeddingName::Standard3d);
    let scheme = &model.deformed.scheme;
    let eps = model.deformed.epsilon;
    let r = scheme.r_at(eps);
    let i = scheme.i_at(eps).unwrap();
    for root in &model.deformed.roots {
        let ar = sys.embed(&emb, &root.vector.r_part).unwrap();
        let ai = sys.embed(&emb, &root.vector.i_part).unwrap();
        let dr: f64 = ar.iter().zip(q).map(|(a, b)| a * b).sum();
        let di: f64 = ai.iter().zip(q).map(|(a, b)| a * b).sum();
        if Complex64::new(r * dr, i * di).norm() < floor {
            return false;
        }
    }
    true
}

fn angular_reduction_check() -> Check {
    // (gs/2) sum_{short} 1/(a.q)^2 = (9 gs/2) / (r^2 sin^2(3 phi)).
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let gs = 1.9;
    let model = type_a_model(GroupName::A2, SeedSign::Plus, 0.0, gs, 0.0, 0.0);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let q = [
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        ];
        let (_, r, phi) = match to_jacobi_polar(&q) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let s3 = (3.0 * phi).sin();
        if s3.abs() < 5e-2 {
            continue;
        }
        n += 1;
        let lhs = model.assemble_potential(&q).unwrap();
        let rhs = 4.5 * gs / (r * r * s3 * s3);
        worst = worst.max((lhs - Complex64::new(rhs, 0.0)).norm() / (1.0 + rhs.abs()));
    }
    Check::bounded(
        "calogero-angular-identity",
        worst,
        1e-10,
        "two-body sum vs 9g/(2 r^2 sin^2(3 phi)) form",
    )
}

fn spectrum_values_check() -> Check {
    let levels = energy_levels(ConstraintProfile::phi_shift(), 1.0, 2.0, 2.0, 2, 2).unwrap();
    let pp = Branch::Kappa(BranchSign::Plus, BranchSign::Plus);
    let mm = Branch::Kappa(BranchSign::Minus, BranchSign::Minus);
    let e_pp = levels
        .iter()
        .find(|e| e.branch == pp && e.n == 0 && e.l == 0)
        .map(|e| e.value);
    let e_mm = levels
        .iter()
        .find(|e| e.branch == mm && e.n == 0 && e.l == 0)
        .map(|e| e.value);
    let mut ok = e_pp == Some(26.0) && e_mm == Some(-10.0);

    // The undeformed spectrum sits inside the deformed one level by level.
    let plain = energy_levels(ConstraintProfile::undeformed(), 1.0, 2.0, 2.0, 2, 2).unwrap();
    for level in &plain {
        ok &= levels
            .iter()
            .any(|e| e.branch == pp && e.n == level.n && e.l == level.l && e.value == level.value);
    }
    for level in levels.iter().chain(&plain) {
        ok &= level.value.is_finite();
    }
    Check::flag(
        "spectrum-values",
        ok,
        format!("E00(++) = {:?}, E00(--) = {:?}", e_pp, e_mm),
    )
}

fn degeneracy_check() -> Check {
    let closed = degeneracy_pairs(2.0, 2.0, 1.0, 12, 12).unwrap();
    let brute = degeneracy_pairs_by_energy(2.0, 2.0, 1.0, 12, 12).unwrap();
    let mut ok = closed == brute && !closed.is_empty();
    ok &= degeneracy_pairs(1.0, 0.0, 1.0, 12, 12).unwrap().is_empty();
    Check::flag(
        "degeneracy-routes-agree",
        ok,
        format!("{} pairs from both routes at gs = gl = 2", closed.len()),
    )
}

fn special_function_identities_check() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let z = Complex64::new(rng.gen_range(0.2..1.5), rng.gen_range(-0.8..0.8));
        worst = worst.max(laguerre_identity_residual(0, 2, z));
        worst = worst.max(laguerre_identity_residual(1, 3, z));
        let (a, b) = (1.5, -0.5);
        for l in 0..5u32 {
            let lhs = spectra::hyp2f1_terminating(l, a + b + l as f64 + 1.0, a + 1.0, z).unwrap();
            let rhs = spectra::factorial(l) / spectra::pochhammer(a + 1.0, l)
                * spectra::jacobi(l, a, b, Complex64::new(1.0, 0.0) - 2.0 * z);
            worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
        }
    }
    Check::bounded(
        "hypergeometric-identities",
        worst,
        1e-10,
        "Laguerre reflection and Gauss-to-Jacobi reduction, 20 points",
    )
}

fn anyonic_check() -> Check {
    let mut worst = 0.0f64;
    for (n, n_prime) in [(0u32, 2u32), (1, 3)] {
        let lambda = (n_prime - n) as f64;
        let shift = Complex64::new(0.0, 0.25);
        let plus = WaveFunctionSpec::radial_with_lambda(1.0, n, lambda, shift);
        let minus = WaveFunctionSpec::radial_with_lambda(1.0, n_prime, -lambda, shift);
        let phase = (-1.0f64).powi((n_prime - n) as i32);
        for k in 0..10 {
            let r = Complex64::new(0.3 + 0.2 * k as f64, 0.0);
            let lhs = radial_wavefunction(&plus, r).unwrap();
            let rhs = phase * radial_wavefunction(&minus, r).unwrap();
            worst = worst.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
        }
    }
    Check::bounded(
        "anyonic-pairing",
        worst,
        1e-10,
        "opposite-lambda radial states at shifted argument",
    )
}

/// The grid of eigenfunction parameters used by the residual checks.
fn residual_grid() -> Vec<(u32, u32, f64, f64)> {
    let mut grid = Vec::new();
    for &g in &[0.75, 2.0] {
        for &eps in &[0.0, 0.2] {
            for n in 0..=5u32 {
                for l in 0..=5u32 {
                    grid.push((n, l, g, eps));
                }
            }
        }
    }
    grid
}

fn ode_radial_check() -> Check {
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for (n, l, g, eps) in residual_grid() {
        let ks = kappa(g, BranchSign::Plus).unwrap();
        let spec = WaveFunctionSpec::quantized(1.0, n, l, ks, ks, Complex64::new(0.0, eps));
        let res = ode_residual(OdeKind::Radial, &spec, Complex64::new(3.0, 0.0), 1e-3).unwrap();
        if res > worst {
            worst = res;
            worst_at = format!("n={n} l={l} g={g} eps={eps}");
        }
    }
    Check::bounded("ode-residual-radial", worst, 1e-6, format!("worst at {worst_at}"))
}

fn ode_angular_check() -> Check {
    // The stencil spacing is set so that the five-point truncation envelope
    // (lambda h)^4 lambda^2 / 90 stays below the 1e-6 bound up to the
    // largest separation constant in the grid (lambda = 42).
    let h = 2.5e-4;
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for (_, l, g, eps) in residual_grid() {
        let ks = kappa(g, BranchSign::Plus).unwrap();
        let spec = WaveFunctionSpec::quantized(1.0, 0, l, ks, ks, Complex64::new(0.0, -eps));
        let res = ode_residual(OdeKind::Angular, &spec, Complex64::new(0.3, 0.0), h).unwrap();
        if res > worst {
            worst = res;
            worst_at = format!("l={l} g={g} eps={eps}");
        }
    }
    Check::bounded("ode-residual-angular", worst, 1e-6, format!("worst at {worst_at}"))
}

fn ode_scaling_check() -> Check {
    // Halving the spacing must cut a discretization-dominated residual by
    // at least the second-order factor; the five-point scheme gives ~16.
    let ks = kappa(2.0, BranchSign::Plus).unwrap();
    let spec = WaveFunctionSpec::quantized(1.0, 0, 3, ks, ks, Complex64::new(0.0, -0.2));
    let coarse = ode_residual(OdeKind::Angular, &spec, Complex64::new(0.3, 0.0), 1e-3).unwrap();
    let fine = ode_residual(OdeKind::Angular, &spec, Complex64::new(0.3, 0.0), 5e-4).unwrap();
    let ratio = coarse / fine;
    Check::flag(
        "ode-residual-scaling",
        ratio > 3.5,
        format!("halving h changed the residual by {ratio:.1}x"),
    )
}

fn wrong_energy_check() -> Check {
    let ks = kappa(2.0, BranchSign::Plus).unwrap();
    let spec = WaveFunctionSpec::quantized(1.0, 2, 2, ks, ks, Complex64::new(0.0, 0.0));
    let rad = ode_residual_at_energy(
        OdeKind::Radial,
        &spec,
        Complex64::new(3.0, 0.0),
        1e-3,
        spec.energy() + 1.0,
    )
    .unwrap();
    let ang = ode_residual_at_energy(
        OdeKind::Angular,
        &spec,
        Complex64::new(0.3, 0.0),
        1e-3,
        spec.lambda * spec.lambda + 1.0,
    )
    .unwrap();
    Check::flag(
        "wrong-energy-control",
        rad > 1e-2 && ang > 1e-2,
        format!("radial {rad:.3e}, angular {ang:.3e}"),
    )
}

fn angular_regularization_check() -> Check {
    // Lower-branch angular functions are finite once the angle leaves the
    // real axis, including at the would-be divergence points.
    let ks = kappa(2.0, BranchSign::Minus).unwrap();
    let mut ok = true;
    for l in 0..4u32 {
        let spec = WaveFunctionSpec::quantized(1.0, 0, l, ks, ks, Complex64::new(0.0, -0.2));
        for phi in [0.0, std::f64::consts::PI / 6.0, 0.31] {
            match angular_wavefunction(&spec, Complex64::new(phi, 0.0)) {
                Ok(v) => ok &= v.norm().is_finite(),
                Err(_) => ok = false,
            }
        }
    }
    Check::flag(
        "angular-regularization",
        ok,
        "lower-branch states finite off the real line",
    )
}

/// Run the whole suite in a fixed order.
pub fn run_all() -> Vec<Check> {
    vec![
        table_check("reflection-table-a2", GroupName::A2, A2_TABLE),
        table_check("reflection-table-g2", GroupName::G2, G2_TABLE),
        root_structure_check(),
        weights_check(),
        embedding_check(),
        orbit_closure_check(),
        orthogonality_check(),
        inner_product_check(),
        coordinates_check(),
        cross_representation_check(),
        pt_invariance_check(),
        angular_reduction_check(),
        spectrum_values_check(),
        degeneracy_check(),
        special_function_identities_check(),
        anyonic_check(),
        angular_regularization_check(),
        ode_radial_check(),
        ode_angular_check(),
        ode_scaling_check(),
        wrong_energy_check(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_green() {
        let checks = run_all();
        for check in &checks {
            assert!(
                check.pass,
                "check {} failed: {} (residual {:?})",
                check.name, check.detail, check.residual
            );
        }
    }

    #[test]
    fn suite_is_deterministic() {
        let a = serde_json::to_string(&run_all()).unwrap();
        let b = serde_json::to_string(&run_all()).unwrap();
        assert_eq!(a, b);
    }
}
