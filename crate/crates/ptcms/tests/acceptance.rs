//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines for passing criteria too.

use num_complex::Complex64;
use ptcms::cmsmodel::{
    from_jacobi_polar, polar_potential_a2, polar_potential_g2, to_jacobi, to_jacobi_polar,
    CmsModel, DeformationMode, PotentialKind, RootSubset,
};
use ptcms::ptdeform::{
    apply_extended_word, extended_reflect_numeric, DeformationScheme, DeformedSystem, IFunction,
    RFunction, SeedSign,
};
use ptcms::rootsys::{EmbeddingName, GroupName, RationalVector, RootSystem, WeylWord};
use ptcms::spectra::{
    degeneracy_pairs, degeneracy_pairs_by_energy, energy_levels, factorial, hyp2f1_terminating,
    jacobi, kappa, laguerre_identity_residual, ode_residual, ode_residual_at_energy, pochhammer,
    radial_wavefunction, Branch, BranchSign, ConstraintProfile, OdeKind, WaveFunctionSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn rv(c1: i64, c2: i64) -> RationalVector {
    RationalVector::from_ints(c1, c2)
}

/// Reflection tables of both groups on their positive roots:
/// `(word, [(root, image); ..])` in simple-root coefficients.
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

#[test]
fn criterion_01_reflection_tables() {
    let mut mismatches = Vec::new();
    let mut total = 0;
    for (group, table) in [
        (GroupName::A2, A2_TABLE),
        (GroupName::G2, G2_TABLE),
    ] {
        let sys = RootSystem::build(group);
        for (word, entries) in table {
            let w = WeylWord::new(word);
            for ((c1, c2), (d1, d2)) in entries.iter() {
                total += 1;
                let image = sys.apply_word(&w, rv(*c1, *c2));
                if image != rv(*d1, *d2) {
                    mismatches.push(format!("{group} {w} on ({c1},{c2})"));
                }
            }
        }
    }
    let pass = mismatches.is_empty() && total == 45;
    report("01 reflection tables", pass, &format!("{total} entries, {} mismatches", mismatches.len()));
    assert!(pass, "mismatched entries: {mismatches:?}");
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

#[test]
fn criterion_02_orbit_closure() {
    let words = all_words_up_to(5);
    let mut worst = 0.0f64;
    for (group, count) in [(GroupName::A2, 6), (GroupName::G2, 12)] {
        let sys = RootSystem::build(group);
        let scheme = DeformationScheme::type_a_canonical(group, SeedSign::Plus);
        for eps in [0.1, 0.5, 1.0] {
            let ds = DeformedSystem::generate(&sys, &scheme, eps).expect("orbit closes");
            assert_eq!(ds.roots.len(), count);
            for root in &ds.roots {
                let start = root.complex_coeffs().unwrap();
                for word in &words {
                    let mut numeric = start;
                    for &i in word {
                        numeric = extended_reflect_numeric(&sys, i, numeric);
                    }
                    let exact = apply_extended_word(&sys, &WeylWord::new(word), &root.vector)
                        .complex_coeffs(&scheme, eps)
                        .unwrap();
                    for k in 0..2 {
                        worst = worst.max((numeric[k] - exact[k]).norm());
                    }
                }
            }
        }
    }
    let pass = worst <= 1e-12;
    report("02 orbit closure", pass, &format!("drift {worst:.3e} over words <= 5"));
    assert!(pass);
}

#[test]
fn criterion_03_orthogonality() {
    let mut worst = 0.0f64;
    for group in [GroupName::A2, GroupName::G2] {
        let sys = RootSystem::build(group);
        let scheme = DeformationScheme::type_a_canonical(group, SeedSign::Plus);
        for eps in [0.1, 0.5, 1.0] {
            let ds = DeformedSystem::generate(&sys, &scheme, eps).unwrap();
            worst = worst.max(ds.max_orthogonality_residual().unwrap());
        }
    }
    let pass = worst <= 1e-12;
    report("03 orthogonality", pass, &format!("max |Re.Im| = {worst:.3e}"));
    assert!(pass);
}

#[test]
fn criterion_04_inner_products() {
    let mut worst = 0.0f64;
    for group in [GroupName::A2, GroupName::G2] {
        let sys = RootSystem::build(group);
        let scheme = DeformationScheme::type_a_canonical(group, SeedSign::Plus);
        for eps in [0.1, 0.5, 1.0] {
            let ds = DeformedSystem::generate(&sys, &scheme, eps).unwrap();
            worst = worst.max(ds.check_inner_products().unwrap().max_drift);
        }
    }
    let a2 = RootSystem::build(GroupName::A2);
    let scheme_b = DeformationScheme::type_b(GroupName::A2, RFunction::Cosh, IFunction::Sinh);
    let violation = DeformedSystem::generate(&a2, &scheme_b, 0.5)
        .unwrap()
        .check_inner_products()
        .unwrap()
        .max_drift;
    let pass = worst <= 1e-12 && violation > 0.01;
    report(
        "04 inner products",
        pass,
        &format!("preserved drift {worst:.3e}, in-place violation {violation:.3e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_05_coordinate_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    let g2 = RootSystem::build(GroupName::G2);
    let emb = g2.embedding(EmbeddingName::Standard3d);
    let third = 2.0 * std::f64::consts::PI / 3.0;
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let q = [
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        ];
        let (r, phi) = match to_jacobi_polar(&q) {
            Ok((_, r, phi)) => (r, phi),
            Err(_) => continue,
        };
        n += 1;
        let checks = [
            (q[0] - q[1], 2f64.sqrt() * r * phi.sin()),
            (q[2] - q[0], -(2f64.sqrt()) * r * (third - phi).sin()),
            (q[2] - q[1], -(2f64.sqrt()) * r * (third + phi).sin()),
            (q[1] + q[2] - 2.0 * q[0], 6f64.sqrt() * r * (third + phi).cos()),
            (q[0] + q[2] - 2.0 * q[1], 6f64.sqrt() * r * (third - phi).cos()),
            (2.0 * q[2] - q[0] - q[1], -(6f64.sqrt()) * r * phi.cos()),
        ];
        for (dot, polar) in checks {
            worst = worst.max((dot - polar).abs());
        }
        for i in [1, 2] {
            let qi = g2.reflect_point(&emb, i, &q);
            let (_, xi, yi) = to_jacobi(&[qi[0], qi[1], qi[2]]);
            worst = worst.max((xi.hypot(yi) - r).abs());
        }
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
            let omega = 3f64.sqrt() / 2.0 * mass;
            worst = worst.max((mass * mass / 16.0 * sum - omega * omega * r * r / 2.0).abs());
        }
    }
    let pass = worst <= 1e-12;
    report("05 coordinate identities", pass, &format!("worst residual {worst:.3e}"));
    assert!(pass);
}

fn type_a_model(group: GroupName, sign: SeedSign, eps: f64, gs: f64, gl: f64, mass: f64) -> CmsModel {
    let sys = RootSystem::build(group);
    let scheme = DeformationScheme::type_a_canonical(group, sign);
    let ds = DeformedSystem::generate(&sys, &scheme, eps).unwrap();
    CmsModel::new(ds, gs, gl, mass, PotentialKind::Rational)
}

#[test]
fn criterion_06_cross_representation_potential() {
    let mut rng = ChaCha8Rng::seed_from_u64(203);
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
    // Switching the three-body coupling off reduces G2 to A2.
    let mut reduction = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(204);
    for _ in 0..100 {
        let r = rng.gen_range(0.6..1.8);
        let phi = rng.gen_range(0.05..std::f64::consts::PI / 6.0 - 0.05);
        let eps = rng.gen_range(0.1..0.6);
        let q = from_jacobi_polar(0.0, r, phi);
        let g2 = type_a_model(GroupName::G2, SeedSign::Plus, eps, 1.3, 0.0, 0.0);
        let a2 = type_a_model(GroupName::A2, SeedSign::Minus, eps, 1.3, 0.0, 0.0);
        reduction = reduction.max(
            (g2.assemble_potential(&q).unwrap() - a2.assemble_potential(&q).unwrap()).norm(),
        );
    }
    let pass = worst <= 1e-10 && reduction <= 1e-12;
    report(
        "06 cross-representation potential",
        pass,
        &format!("oracle drift {worst:.3e}, reduction drift {reduction:.3e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_07_pt_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(207);
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
                let res = match model.pt_invariance_residual(i, &q) {
                    Ok(r) => r,
                    Err(_) => continue,
                };
                // Keep the points away from near-pole configurations where
                // the absolute comparison is dominated by magnitudes.
                if model.assemble_potential(&q).unwrap().norm() > 1e3 {
                    continue;
                }
                n += 1;
                worst = worst.max(res);
            }
        }
    }
    // Negative control: the in-place deformation restricted to the
    // positive roots loses the symmetry.
    let sys = RootSystem::build(GroupName::A2);
    let scheme_b = DeformationScheme::type_b(GroupName::A2, RFunction::Cosh, IFunction::Sinh);
    let ds = DeformedSystem::generate(&sys, &scheme_b, 0.3).unwrap();
    let broken = CmsModel::new(ds, 1.0, 0.0, 0.0, PotentialKind::Rational)
        .with_subset(RootSubset::PositiveOnly);
    let control = broken.pt_invariance_residual(1, &[0.9, 0.2, -0.6]).unwrap();
    let pass = worst <= 1e-12 && control > 0.1;
    report(
        "07 pt invariance",
        pass,
        &format!("full-model residual {worst:.3e}, half-sum control {control:.3e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_08_eigenfunction_residuals() {
    let h = 1e-3;
    let radial_point = Complex64::new(3.0, 0.0);
    let angular_point = Complex64::new(0.3, 0.0);
    let mut failures = Vec::new();
    let mut worst_radial = 0.0f64;
    let mut worst_angular = 0.0f64;
    for &g in &[0.75, 2.0] {
        let ks = kappa(g, BranchSign::Plus).unwrap();
        for &eps in &[0.0, 0.2] {
            for l in 0..=5u32 {
                for n in 0..=5u32 {
                    let spec =
                        WaveFunctionSpec::quantized(1.0, n, l, ks, ks, Complex64::new(0.0, eps));
                    let res = ode_residual(OdeKind::Radial, &spec, radial_point, h).unwrap();
                    worst_radial = worst_radial.max(res);
                    if res >= 1e-6 {
                        failures.push(format!("radial n={n} l={l} g={g} eps={eps}: {res:.3e}"));
                    }
                }
                // The angular problem does not involve n.
                let spec =
                    WaveFunctionSpec::quantized(1.0, 0, l, ks, ks, Complex64::new(0.0, -eps));
                let res = ode_residual(OdeKind::Angular, &spec, angular_point, h).unwrap();
                worst_angular = worst_angular.max(res);
                if res >= 1e-6 {
                    failures.push(format!("angular l={l} g={g} eps={eps}: {res:.3e}"));
                }
            }
        }
    }
    // Negative control.
    let ks = kappa(2.0, BranchSign::Plus).unwrap();
    let spec = WaveFunctionSpec::quantized(1.0, 2, 2, ks, ks, Complex64::new(0.0, 0.0));
    let bad_rad =
        ode_residual_at_energy(OdeKind::Radial, &spec, radial_point, h, spec.energy() + 1.0)
            .unwrap();
    let bad_ang = ode_residual_at_energy(
        OdeKind::Angular,
        &spec,
        angular_point,
        h,
        spec.lambda * spec.lambda + 1.0,
    )
    .unwrap();
    let controls_ok = bad_rad > 1e-2 && bad_ang > 1e-2;
    let pass = failures.is_empty() && controls_ok;
    report(
        "08 eigenfunction residuals",
        pass,
        &format!(
            "worst radial {worst_radial:.3e}, worst angular {worst_angular:.3e}, {} cells over 1e-6, controls {}",
            failures.len(),
            if controls_ok { "ok" } else { "failed" }
        ),
    );
    for f in &failures {
        println!("  over tolerance: {f}");
    }
    assert!(
        pass,
        "residual cells over 1e-6 at h=1e-3: {failures:#?}; the five-point truncation floor \
         (lambda*h)^4 * lambda^2 / 90 exceeds 1e-6 once lambda > ~20, so the shifted angular \
         states with lambda up to 42 cannot meet this tolerance at this stencil spacing \
         (they do at h = 2.5e-4; see the `verify` suite)"
    );
}

#[test]
fn criterion_09_spectrum_numbers() {
    let levels = energy_levels(ConstraintProfile::phi_shift(), 1.0, 2.0, 2.0, 2, 2).unwrap();
    let pp = Branch::Kappa(BranchSign::Plus, BranchSign::Plus);
    let mm = Branch::Kappa(BranchSign::Minus, BranchSign::Minus);
    let e_pp = levels
        .iter()
        .find(|e| e.branch == pp && e.n == 0 && e.l == 0)
        .unwrap()
        .value;
    let e_mm = levels
        .iter()
        .find(|e| e.branch == mm && e.n == 0 && e.l == 0)
        .unwrap()
        .value;
    let closed = degeneracy_pairs(2.0, 2.0, 1.0, 12, 12).unwrap();
    let brute = degeneracy_pairs_by_energy(2.0, 2.0, 1.0, 12, 12).unwrap();
    let pass = e_pp == 26.0 && e_mm == -10.0 && closed == brute && !closed.is_empty();
    report(
        "09 spectrum numbers",
        pass,
        &format!(
            "E00(++) = {e_pp}, E00(--) = {e_mm}, degeneracy routes agree on {} pairs",
            closed.len()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_10_identity_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(210);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let z = Complex64::new(rng.gen_range(0.2..1.5), rng.gen_range(-0.8..0.8));
        worst = worst.max(laguerre_identity_residual(0, 2, z));
        worst = worst.max(laguerre_identity_residual(1, 3, z));
        let (a, b) = (1.5, -0.5);
        for l in 0..5u32 {
            let lhs = hyp2f1_terminating(l, a + b + l as f64 + 1.0, a + 1.0, z).unwrap();
            let rhs = factorial(l) / pochhammer(a + 1.0, l)
                * jacobi(l, a, b, Complex64::new(1.0, 0.0) - 2.0 * z);
            worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
        }
    }
    // Opposite-lambda pairing of the radial states at shifted argument.
    let mut anyonic_worst = 0.0f64;
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
            anyonic_worst = anyonic_worst.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
        }
    }
    let pass = worst <= 1e-10 && anyonic_worst <= 1e-10;
    report(
        "10 identity suite",
        pass,
        &format!("polynomial identities {worst:.3e}, opposite-lambda pairing {anyonic_worst:.3e}"),
    );
    assert!(pass);
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_ptcms"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn criterion_11_cli_determinism() {
    let (code_a, verify_a) = run_cli(&["verify", "--format", "json"]);
    let (code_b, verify_b) = run_cli(&["verify", "--format", "json"]);
    let spectrum_args = [
        "spectrum", "--group", "g2", "--gs", "2", "--gl", "2", "--omega", "1", "--profile",
        "phi-shift", "--nmax", "2", "--lmax", "2", "--format", "csv",
    ];
    let (_, spec_a) = run_cli(&spectrum_args);
    let (_, spec_b) = run_cli(&spectrum_args);
    let (fig_code, fig) = run_cli(&[
        "figure", "--group", "g2", "--epsilon", "0.5", "--format", "csv",
    ]);
    let fig_rows = fig.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count();

    let pass = code_a == 0
        && code_b == 0
        && verify_a == verify_b
        && spec_a == spec_b
        && fig_code == 0
        && fig_rows == 13; // header + 12 roots
    report(
        "11 cli determinism",
        pass,
        &format!(
            "verify exit {code_a}, byte-identical reports: verify {}, spectrum {}",
            verify_a == verify_b,
            spec_a == spec_b
        ),
    );
    assert!(pass);
}
