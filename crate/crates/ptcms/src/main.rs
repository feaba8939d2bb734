//! Command-line front end: root and deformation tables, potential
//! evaluation, spectrum and degeneracy reports, the invariant suite, and
//! plot-ready root geometry.
//!
//! Reports are deterministic: rows are sorted (roots by label, levels by
//! branch/ell/n), randomness is seeded, JSON keys are ordered, and CSV
//! numbers carry 17 significant digits. Exit codes: 0 on success, 1 when a
//! verification check fails, 2 on bad usage.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use ptcms::cmsmodel::{
    polar_potential_a2, polar_potential_g2, CmsModel, DeformationMode, PotentialKind, RootSubset,
};
use ptcms::ptdeform::{DeformationScheme, DeformedSystem, IFunction, RFunction, SeedSign, Variant};
use ptcms::rootsys::{EmbeddingName, GroupName, RootSystem};
use ptcms::spectra::{degeneracy_pairs, energy_levels, ConstraintProfile};
use ptcms::verify;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "ptcms", version, about = "Deformed Coxeter root systems and their many-body models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    A2,
    G2,
}

impl From<GroupArg> for GroupName {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::A2 => GroupName::A2,
            GroupArg::G2 => GroupName::G2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    TypeA,
    TypeB,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmbeddingArg {
    Standard3d,
    Plane2d,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Rational,
    Trigonometric,
    Hyperbolic,
}

impl From<KindArg> for PotentialKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Rational => PotentialKind::Rational,
            KindArg::Trigonometric => PotentialKind::Trigonometric,
            KindArg::Hyperbolic => PotentialKind::Hyperbolic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    PhiShift,
    RShiftPos,
    RShiftNeg,
    RShiftBoth,
}

impl From<ModeArg> for DeformationMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::PhiShift => DeformationMode::PhiShift,
            ModeArg::RShiftPos => DeformationMode::RShiftPos,
            ModeArg::RShiftNeg => DeformationMode::RShiftNeg,
            ModeArg::RShiftBoth => DeformationMode::RShiftBoth,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SubsetArg {
    All,
    PositiveOnly,
    NegativeOnly,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Undeformed,
    PhiShift,
    RShift,
}

impl From<ProfileArg> for ConstraintProfile {
    fn from(p: ProfileArg) -> Self {
        match p {
            ProfileArg::Undeformed => ConstraintProfile::undeformed(),
            ProfileArg::PhiShift => ConstraintProfile::phi_shift(),
            ProfileArg::RShift => ConstraintProfile::r_shift(),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Structured output format; omit for a human-readable table.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Write the structured report to this path instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the root table of a group with embedded coordinates.
    Roots {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long, value_enum, default_value = "standard3d")]
        embedding: EmbeddingArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build a deformed root system and report its closure, orthogonality,
    /// and inner-product checks.
    Deform {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum, default_value = "plus")]
        seed_sign: SignArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the model potential at a configuration point or in polar
    /// form.
    Potential {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long, value_enum, default_value = "type-a")]
        scheme: SchemeArg,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 1.0)]
        gs: f64,
        #[arg(long, default_value_t = 0.0)]
        gl: f64,
        #[arg(long, default_value_t = 0.0)]
        mass: f64,
        #[arg(long, value_enum, default_value = "rational")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "all")]
        subset: SubsetArg,
        #[arg(long, value_enum, default_value = "plus")]
        seed_sign: SignArg,
        /// Configuration point, comma separated: q1,q2,q3.
        #[arg(long, value_delimiter = ',', conflicts_with = "polar")]
        q: Option<Vec<f64>>,
        /// Polar point, comma separated: r,phi.
        #[arg(long, value_delimiter = ',')]
        polar: Option<Vec<f64>>,
        /// Complexification used with --polar.
        #[arg(long, value_enum, default_value = "phi-shift")]
        mode: ModeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Energy levels of a constraint profile, with degeneracy pairs.
    Spectrum {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        gs: f64,
        #[arg(long, default_value_t = 0.0)]
        gl: f64,
        #[arg(long)]
        omega: f64,
        #[arg(long, value_enum)]
        profile: ProfileArg,
        #[arg(long, default_value_t = 3)]
        nmax: u32,
        #[arg(long, default_value_t = 3)]
        lmax: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full invariant suite; exits 0 only if every check passes.
    Verify {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Plot-ready real and imaginary parts of the deformed roots.
    Figure {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long, value_enum, default_value = "type-a")]
        scheme: SchemeArg,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, value_enum, default_value = "plane2d")]
        embedding: EmbeddingArg,
        #[arg(long, value_enum, default_value = "plus")]
        seed_sign: SignArg,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Serialize)]
struct Report {
    meta: Map<String, Value>,
    data: Vec<Value>,
    checks: Vec<verify::Check>,
}

/// 17 significant digits: round-trip exact for f64.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn scheme_for(
    group: GroupName,
    scheme: SchemeArg,
    seed_sign: SignArg,
) -> DeformationScheme {
    let sign = match seed_sign {
        SignArg::Plus => SeedSign::Plus,
        SignArg::Minus => SeedSign::Minus,
    };
    match scheme {
        SchemeArg::TypeA => DeformationScheme::type_a_canonical(group, sign),
        SchemeArg::TypeB => DeformationScheme::type_b(group, RFunction::Cosh, IFunction::Sinh),
    }
}

fn emit(report: &Report, output: &OutputArgs, csv_header: &[&str], csv_rows: Vec<Vec<String>>,
        human: String) -> Result<()> {
    let rendered = match output.format {
        Some(FormatArg::Json) => serde_json::to_string_pretty(report)? + "\n",
        Some(FormatArg::Csv) => {
            let mut s = String::new();
            s.push_str(&csv_header.join(","));
            s.push('\n');
            for row in csv_rows {
                s.push_str(&row.join(","));
                s.push('\n');
            }
            s
        }
        None => human,
    };
    match &output.out {
        Some(path) => {
            std::fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{rendered}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Roots { group, embedding, output } => {
            let sys = RootSystem::build(group.into());
            let name = match embedding {
                EmbeddingArg::Standard3d => EmbeddingName::Standard3d,
                EmbeddingArg::Plane2d => EmbeddingName::Plane2d,
            };
            let emb = sys.embedding(name);
            let mut meta = Map::new();
            meta.insert("command".into(), json!("roots"));
            meta.insert("group".into(), json!(sys.name.to_string()));
            meta.insert("embedding".into(), json!(format!("{name:?}")));
            meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            let mut data = Vec::new();
            let mut rows = Vec::new();
            let mut human = format!("{} roots of {}\n", sys.all_roots.len(), sys.name);
            for root in &sys.all_roots {
                let coords = sys.embed(&emb, root)?;
                data.push(json!({
                    "label": root.to_string(),
                    "class": format!("{:?}", sys.length_class(root)),
                    "coords": coords,
                }));
                let mut row = vec![root.to_string(), format!("{:?}", sys.length_class(root))];
                row.extend(coords.iter().map(|c| fmt_f64(*c)));
                human.push_str(&format!(
                    "  {:10} {:6} [{}]\n",
                    root.to_string(),
                    format!("{:?}", sys.length_class(root)),
                    coords.iter().map(|c| format!("{c:+.6}")).collect::<Vec<_>>().join(", ")
                ));
                rows.push(row);
            }
            let header: Vec<&str> = if emb.dim() == 3 {
                vec!["label", "class", "x1", "x2", "x3"]
            } else {
                vec!["label", "class", "x1", "x2"]
            };
            emit(&Report { meta, data, checks: vec![] }, &output, &header, rows, human)?;
            Ok(0)
        }
        Command::Deform { group, scheme, epsilon, seed_sign, output } => {
            validate_epsilon(epsilon)?;
            let sys = RootSystem::build(group.into());
            let sch = scheme_for(sys.name, scheme, seed_sign);
            let ds = DeformedSystem::generate(&sys, &sch, epsilon)?;
            let ortho = ds.max_orthogonality_residual()?;
            let inner = ds.check_inner_products()?;
            let mut meta = Map::new();
            meta.insert("command".into(), json!("deform"));
            meta.insert("group".into(), json!(sys.name.to_string()));
            meta.insert("scheme".into(), json!(format!("{:?}", sch.variant)));
            meta.insert("epsilon".into(), json!(epsilon));
            meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            let mut data = Vec::new();
            let mut rows = Vec::new();
            let mut human = format!(
                "{} deformed roots of {} at eps = {}\n",
                ds.roots.len(),
                sys.name,
                epsilon
            );
            for root in &ds.roots {
                let c = root.complex_coeffs()?;
                data.push(json!({
                    "label": root.label.to_string(),
                    "re": [c[0].re, c[1].re],
                    "im": [c[0].im, c[1].im],
                }));
                rows.push(vec![
                    root.label.to_string(),
                    fmt_f64(c[0].re),
                    fmt_f64(c[1].re),
                    fmt_f64(c[0].im),
                    fmt_f64(c[1].im),
                ]);
                human.push_str(&format!(
                    "  {:10} re = ({:+.6}, {:+.6})  im = ({:+.6}, {:+.6})\n",
                    root.label.to_string(),
                    c[0].re,
                    c[1].re,
                    c[0].im,
                    c[1].im
                ));
            }
            let checks = vec![
                verify::Check {
                    name: "closure".into(),
                    pass: ds.roots.len() == sys.all_roots.len(),
                    residual: None,
                    detail: format!("{} of {} labels", ds.roots.len(), sys.all_roots.len()),
                },
                verify::Check {
                    name: "orthogonality".into(),
                    pass: sch.variant != Variant::TypeA || ortho <= 1e-12,
                    residual: Some(ortho),
                    detail: "max |Re.Im|".into(),
                },
                verify::Check {
                    name: "inner-products".into(),
                    pass: sch.variant != Variant::TypeA || inner.max_drift <= 1e-12,
                    residual: Some(inner.max_drift),
                    detail: if inner.max_drift > 0.0 {
                        format!("worst pair ({}, {})", inner.worst_pair.0, inner.worst_pair.1)
                    } else {
                        "exact".into()
                    },
                },
            ];
            for check in &checks {
                human.push_str(&format!(
                    "  check {:15} {} ({}{})\n",
                    check.name,
                    if check.pass { "pass" } else { "FAIL" },
                    check.detail,
                    check
                        .residual
                        .map(|r| format!(", residual {r:.3e}"))
                        .unwrap_or_default()
                ));
            }
            let all_pass = checks.iter().all(|c| c.pass);
            emit(
                &Report { meta, data, checks },
                &output,
                &["label", "re1", "re2", "im1", "im2"],
                rows,
                human,
            )?;
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Potential {
            group,
            scheme,
            epsilon,
            gs,
            gl,
            mass,
            kind,
            subset,
            seed_sign,
            q,
            polar,
            mode,
            output,
        } => {
            validate_epsilon(epsilon)?;
            let group: GroupName = group.into();
            let mut meta = Map::new();
            meta.insert("command".into(), json!("potential"));
            meta.insert("group".into(), json!(group.to_string()));
            meta.insert("epsilon".into(), json!(epsilon));
            meta.insert("gs".into(), json!(gs));
            meta.insert("gl".into(), json!(gl));
            meta.insert("kind".into(), json!(format!("{:?}", PotentialKind::from(kind))));
            meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            let value: Complex64;
            let at: String;
            if let Some(qv) = q {
                if qv.len() != 3 {
                    return Err(anyhow!("--q expects exactly three coordinates"));
                }
                let sys = RootSystem::build(group);
                let sch = scheme_for(group, scheme, seed_sign);
                let ds = DeformedSystem::generate(&sys, &sch, epsilon)?;
                let model = CmsModel::new(ds, gs, gl, mass, kind.into()).with_subset(match subset {
                    SubsetArg::All => RootSubset::All,
                    SubsetArg::PositiveOnly => RootSubset::PositiveOnly,
                    SubsetArg::NegativeOnly => RootSubset::NegativeOnly,
                });
                let point = [qv[0], qv[1], qv[2]];
                value = model.assemble_potential(&point)?;
                at = format!("q = ({}, {}, {})", qv[0], qv[1], qv[2]);
                meta.insert("q".into(), json!(qv));
            } else if let Some(rp) = polar {
                if rp.len() != 2 {
                    return Err(anyhow!("--polar expects exactly r,phi"));
                }
                let (r, phi) = (rp[0], rp[1]);
                if r <= 0.0 {
                    return Err(anyhow!("polar radius must be positive"));
                }
                value = match group {
                    GroupName::A2 => {
                        polar_potential_a2(gs, kind.into(), r, phi, epsilon, mode.into())?
                    }
                    GroupName::G2 => {
                        polar_potential_g2(gs, gl, kind.into(), r, phi, epsilon, mode.into())?
                    }
                };
                at = format!("polar (r, phi) = ({r}, {phi})");
                meta.insert("polar".into(), json!(rp));
                meta.insert("mode".into(), json!(format!("{:?}", DeformationMode::from(mode))));
            } else {
                return Err(anyhow!("provide either --q q1,q2,q3 or --polar r,phi"));
            }
            let data = vec![json!({"re": value.re, "im": value.im})];
            let rows = vec![vec![fmt_f64(value.re), fmt_f64(value.im)]];
            let human = format!("V at {at}: {:+.12e} {:+.12e} i\n", value.re, value.im);
            emit(&Report { meta, data, checks: vec![] }, &output, &["re", "im"], rows, human)?;
            Ok(0)
        }
        Command::Spectrum { group, gs, gl, omega, profile, nmax, lmax, output } => {
            if omega == 0.0 || !omega.is_finite() {
                return Err(anyhow!("omega must be finite and nonzero"));
            }
            let group: GroupName = group.into();
            // The two-body-only model has no long roots.
            let gl = if group == GroupName::A2 { 0.0 } else { gl };
            let prof: ConstraintProfile = profile.into();
            let levels = energy_levels(prof, omega, gs, gl, nmax, lmax)?;
            // Cross-branch degeneracies: the closed-form pairs for the
            // angular shift, direct equal-energy pairs between the two
            // radial branches for the radial shift, none otherwise.
            let pairs = match profile {
                ProfileArg::PhiShift => degeneracy_pairs(gs, gl, omega, nmax, lmax)?,
                ProfileArg::RShift => radial_degeneracies(&levels),
                ProfileArg::Undeformed => Vec::new(),
            };
            let mut meta = Map::new();
            meta.insert("command".into(), json!("spectrum"));
            meta.insert("group".into(), json!(group.to_string()));
            meta.insert("profile".into(), json!(prof.name()));
            meta.insert("gs".into(), json!(gs));
            meta.insert("gl".into(), json!(gl));
            meta.insert("omega".into(), json!(omega));
            meta.insert("nmax".into(), json!(nmax));
            meta.insert("lmax".into(), json!(lmax));
            meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            let mut data = Vec::new();
            let mut rows = Vec::new();
            let mut human = format!(
                "spectrum: profile {} gs {} gl {} omega {}\n",
                prof.name(),
                gs,
                gl,
                omega
            );
            for level in &levels {
                data.push(json!({
                    "kind": "level",
                    "branch": level.branch.to_string(),
                    "l": level.l,
                    "n": level.n,
                    "energy": level.value,
                }));
                rows.push(vec![
                    "level".into(),
                    level.branch.to_string(),
                    level.l.to_string(),
                    level.n.to_string(),
                    fmt_f64(level.value),
                ]);
                human.push_str(&format!(
                    "  E[{}] l={} n={}  = {:+.6}\n",
                    level.branch, level.l, level.n, level.value
                ));
            }
            for p in &pairs {
                data.push(json!({
                    "kind": "degeneracy",
                    "plus": [p.n, p.l],
                    "minus": [p.n_prime, p.l_prime],
                    "energy": p.energy,
                }));
                rows.push(vec![
                    "degeneracy".into(),
                    format!("({} {})", p.n, p.l),
                    format!("({} {})", p.n_prime, p.l_prime),
                    String::new(),
                    fmt_f64(p.energy),
                ]);
                human.push_str(&format!(
                    "  degenerate: (n={}, l={})++  with  (n={}, l={})--  at E = {:+.6}\n",
                    p.n, p.l, p.n_prime, p.l_prime, p.energy
                ));
            }
            emit(
                &Report { meta, data, checks: vec![] },
                &output,
                &["kind", "branch", "l", "n", "energy"],
                rows,
                human,
            )?;
            Ok(0)
        }
        Command::Verify { output } => {
            let checks = verify::run_all();
            let mut meta = Map::new();
            meta.insert("command".into(), json!("verify"));
            meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            let mut human = String::new();
            for check in &checks {
                human.push_str(&format!(
                    "{} {}{}\n",
                    if check.pass { "PASS" } else { "FAIL" },
                    check.name,
                    match check.residual {
                        Some(r) => format!(" (residual {r:.3e})"),
                        None => format!(" ({})", check.detail),
                    }
                ));
            }
            let first_failure = checks.iter().find(|c| !c.pass).map(|c| c.name.clone());
            let all_pass = first_failure.is_none();
            human.push_str(&match &first_failure {
                None => format!("all {} checks passed\n", checks.len()),
                Some(name) => format!("FAILED: first failing check is {name}\n"),
            });
            let rows = checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.pass.to_string(),
                        c.residual.map(fmt_f64).unwrap_or_default(),
                    ]
                })
                .collect();
            emit(
                &Report { meta, data: vec![], checks },
                &output,
                &["name", "pass", "residual"],
                rows,
                human,
            )?;
            Ok(if all_pass { 0 } else { 1 })
        }
        Command::Figure { group, scheme, epsilon, embedding, seed_sign, output } => {
            validate_epsilon(epsilon)?;
            let sys = RootSystem::build(group.into());
            let name = match embedding {
                EmbeddingArg::Standard3d => EmbeddingName::Standard3d,
                EmbeddingArg::Plane2d => EmbeddingName::Plane2d,
            };
            let emb = sys.embedding(name);
            let sch = scheme_for(sys.name, scheme, seed_sign);
            let ds = DeformedSystem::generate(&sys, &sch, epsilon)?;
            let r = sch.r_at(epsilon);
            let i = sch.i_at(epsilon)?;
            let mut meta = Map::new();
            meta.insert("command".into(), json!("figure"));
            meta.insert("group".into(), json!(sys.name.to_string()));
            meta.insert("scheme".into(), json!(format!("{:?}", sch.variant)));
            meta.insert("epsilon".into(), json!(epsilon));
            meta.insert("embedding".into(), json!(format!("{name:?}")));
            meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            let mut data = Vec::new();
            let mut rows = Vec::new();
            let mut human = format!(
                "deformed {} roots at eps = {} in {:?} coordinates\n",
                sys.name, epsilon, name
            );
            for root in &ds.roots {
                let re: Vec<f64> = sys
                    .embed(&emb, &root.vector.r_part)?
                    .iter()
                    .map(|c| r * c)
                    .collect();
                let im: Vec<f64> = sys
                    .embed(&emb, &root.vector.i_part)?
                    .iter()
                    .map(|c| i * c)
                    .collect();
                data.push(json!({
                    "label": root.label.to_string(),
                    "re": re,
                    "im": im,
                }));
                let mut row = vec![root.label.to_string()];
                row.extend(re.iter().map(|c| fmt_f64(*c)));
                row.extend(im.iter().map(|c| fmt_f64(*c)));
                rows.push(row);
                human.push_str(&format!(
                    "  {:10} re [{}]  im [{}]\n",
                    root.label.to_string(),
                    re.iter().map(|c| format!("{c:+.6}")).collect::<Vec<_>>().join(", "),
                    im.iter().map(|c| format!("{c:+.6}")).collect::<Vec<_>>().join(", ")
                ));
            }
            let header: Vec<&str> = if emb.dim() == 3 {
                vec!["label", "re1", "re2", "re3", "im1", "im2", "im3"]
            } else {
                vec!["label", "re1", "re2", "im1", "im2"]
            };
            emit(&Report { meta, data, checks: vec![] }, &output, &header, rows, human)?;
            Ok(0)
        }
    }
}

fn validate_epsilon(epsilon: f64) -> Result<()> {
    if !epsilon.is_finite() || epsilon < 0.0 {
        return Err(anyhow!("epsilon must be finite and non-negative"));
    }
    Ok(())
}

/// Equal-energy pairs between the two radial branches of an emitted level
/// list.
fn radial_degeneracies(levels: &[ptcms::spectra::EnergyLevel]) -> Vec<ptcms::spectra::DegeneracyPair> {
    use ptcms::spectra::{Branch, BranchSign, DegeneracyPair};
    let mut out = Vec::new();
    for plus in levels.iter().filter(|e| e.branch == Branch::Radial(BranchSign::Plus)) {
        for minus in levels.iter().filter(|e| e.branch == Branch::Radial(BranchSign::Minus)) {
            if (plus.value - minus.value).abs() <= 1e-12 * plus.value.abs().max(1.0) {
                out.push(DegeneracyPair {
                    n: plus.n,
                    l: plus.l,
                    n_prime: minus.n,
                    l_prime: minus.l,
                    energy: plus.value,
                });
            }
        }
    }
    out
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}
