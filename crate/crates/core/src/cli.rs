//! The `compatlie` command line tool. Exit codes: 0 when every verdict
//! holds, 1 when a checked property fails, 2 on input or usage errors.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::algebra::{extract_constraints, CompatAlgebra, IdentityReport, DEFAULT_WITNESS_LIMIT};
use crate::cohomology::{
    compat_2cocycle_report, is_lie_2cocycle, make_psi, pencil_nilindex_bound, z2_compat_space,
    z2_dimension,
};
use crate::constraints::Status;
use crate::derivations::{
    compat_derivation_space, derivation_space, diagonal_derivations, inner_derivations,
    outer_dimension, space_is_nil, DerivationSpace,
};
use crate::error::{Error, Result};
use crate::extensions::{
    base_is_nilradical, build_semidirect, check_extension_conditions, nonexistence_probe,
    reduce_constraints,
};
use crate::families::make_family;
use crate::filiform::{adapted_basis, is_filiform};
use crate::io::{
    contradiction_text, origin_text, parse_extension, read_algebra, serialize_algebra,
    witness_text, Report,
};
use crate::linalg::Subspace;
use crate::scalar::{fmt_rational, Rational, Scalar};
use crate::structure::{
    center, derived_series, is_solvable, lower_central_series, nilindex, WitnessConfig,
};

#[derive(Parser, Debug)]
#[command(
    name = "compatlie",
    version,
    about = "Exact checks for compatible Lie algebras"
)]
pub struct Cli {
    /// Seed for every randomized witness.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Append wall-clock timings (reports stop being reproducible).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jacobi identity of both brackets and the mixed identity.
    Check {
        file: PathBuf,
    },
    /// Lower central and derived series.
    Series {
        file: PathBuf,
    },
    Center {
        file: PathBuf,
    },
    /// Derivation algebras of each bracket and of the pair.
    Derivations {
        file: PathBuf,
        #[arg(long, conflicts_with = "inner")]
        diagonal: bool,
        #[arg(long)]
        inner: bool,
    },
    /// 2-cocycles: a `Psi_{k,r}` cochain, a cochain pair, or Z^2 dimensions.
    Cocycles {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["K", "R"], conflicts_with = "pair")]
        psi: Option<Vec<usize>>,
        /// Algebra file whose two brackets are the cochains.
        #[arg(long)]
        pair: Option<PathBuf>,
    },
    /// The pair `(l1 b1 + l2 b2, m1 b1 + m2 b2)`.
    Pencil {
        file: PathBuf,
        l1: String,
        l2: String,
        m1: String,
        m2: String,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Polynomial constraints on the parameters, reduced.
    Constraints {
        file: PathBuf,
    },
    /// Semidirect extension by generators read from a spec file.
    Extend {
        file: PathBuf,
        #[arg(long)]
        spec: PathBuf,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Generic extension by `r` non-nilpotent generators, reduced per branch.
    Nonexistence {
        file: PathBuf,
        #[arg(long)]
        rank: usize,
    },
    /// Writes a named algebra; for `ls` the argument is a series like `3,3`.
    Families {
        name: String,
        arg: Option<String>,
        #[arg(short = 'o')]
        out: Option<PathBuf>,
    },
    /// Everything applicable to one file.
    Report {
        file: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let started = Instant::now();
    match execute(&cli) {
        Ok(Output::Report(mut r)) => {
            if cli.timings {
                r.timing("total", started.elapsed().as_millis());
            }
            let stdout = if cli.json { r.to_json() } else { r.to_text() };
            Outcome {
                code: if r.all_hold() { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            }
        }
        Ok(Output::Text(stdout)) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

enum Output {
    Report(Report),
    Text(String),
}

fn echo(cli: &Cli) -> String {
    let name = |p: &Path| p.display().to_string();
    match &cli.command {
        Command::Check { file } => format!("check {}", name(file)),
        Command::Series { file } => format!("series {}", name(file)),
        Command::Center { file } => format!("center {}", name(file)),
        Command::Derivations {
            file,
            diagonal,
            inner,
        } => format!(
            "derivations {}{}{}",
            name(file),
            if *diagonal { " --diagonal" } else { "" },
            if *inner { " --inner" } else { "" }
        ),
        Command::Cocycles { file, psi, pair } => match (psi, pair) {
            (Some(p), _) => format!("cocycles {} --psi {} {}", name(file), p[0], p[1]),
            (_, Some(q)) => format!("cocycles {} --pair {}", name(file), name(q)),
            _ => format!("cocycles {}", name(file)),
        },
        Command::Pencil {
            file,
            l1,
            l2,
            m1,
            m2,
            ..
        } => {
            format!("pencil {} {l1} {l2} {m1} {m2}", name(file))
        }
        Command::Constraints { file } => format!("constraints {}", name(file)),
        Command::Extend { file, spec, .. } => {
            format!("extend {} --spec {}", name(file), name(spec))
        }
        Command::Nonexistence { file, rank } => {
            format!("nonexistence {} --rank {rank}", name(file))
        }
        Command::Families { name: n, arg, .. } => {
            format!(
                "families {n}{}",
                arg.as_deref().map(|a| format!(" {a}")).unwrap_or_default()
            )
        }
        Command::Report { file } => format!("report {}", name(file)),
    }
}

fn rational(s: &str) -> Result<Rational> {
    match crate::scalar::parse_expr(s)? {
        Scalar::Rational(r) => Ok(r),
        Scalar::Poly(_) => Err(Error::Invalid(format!("`{s}` is not a rational number"))),
    }
}

fn write_or_return(text: String, out: &Option<PathBuf>) -> Result<Option<String>> {
    match out {
        Some(p) => {
            std::fs::write(p, text)?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

fn add_identity(r: &mut Report, name: &str, rep: &IdentityReport, labels: &[String]) {
    r.verdict(name, rep.holds);
    for w in &rep.witnesses {
        r.witness(witness_text(w, labels));
    }
}

fn dims_text(d: &[usize]) -> String {
    d.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn subspace_text(s: &Subspace, labels: &[String]) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let vecs: Vec<String> = s
        .basis()
        .iter()
        .map(|v| {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(i, c)| {
                    if num_traits::One::is_one(c) {
                        labels[i].clone()
                    } else {
                        format!("{}*{}", fmt_rational(c), labels[i])
                    }
                })
                .collect();
            terms.join(" + ")
        })
        .collect();
    format!("span{{{}}}", vecs.join(", "))
}

fn check_section(r: &mut Report, a: &CompatAlgebra) {
    use crate::algebra::{jacobiator, mixed_jacobiator, Identity};
    let labels = a.labels();
    let parts = [
        (
            "bracket1 satisfies Jacobi",
            jacobiator(a.bracket1()).report(Identity::Jacobi1, DEFAULT_WITNESS_LIMIT),
        ),
        (
            "bracket2 satisfies Jacobi",
            jacobiator(a.bracket2()).report(Identity::Jacobi2, DEFAULT_WITNESS_LIMIT),
        ),
        (
            "mixed Jacobi identity holds",
            mixed_jacobiator(a).report(Identity::Mixed, DEFAULT_WITNESS_LIMIT),
        ),
    ];
    for (name, rep) in parts {
        add_identity(r, name, &rep, labels);
        if rep.failures > rep.witnesses.len() {
            r.fact(
                format!("{name}: nonzero residual coefficients"),
                rep.failures,
            );
        }
    }
}

fn series_section(r: &mut Report, a: &CompatAlgebra) -> Result<()> {
    let lc = lower_central_series(a)?;
    let ds = derived_series(a)?;
    r.fact("lower central dims", dims_text(&lc.dims()));
    r.fact("lower central limit", subspace_text(lc.limit(), a.labels()));
    r.fact("nilpotent", lc.reaches_zero());
    if let Some(k) = lc.nilindex {
        r.fact("nilindex", k);
    }
    r.fact("derived dims", dims_text(&ds.dims()));
    r.fact("solvable", ds.reaches_zero());
    Ok(())
}

fn derivation_section(
    r: &mut Report,
    a: &CompatAlgebra,
    diagonal: bool,
    inner: bool,
) -> Result<()> {
    let spaces: [(&str, Result<DerivationSpace>); 3] = [
        ("bracket1", derivation_space(a.bracket1())),
        ("bracket2", derivation_space(a.bracket2())),
        ("pair", compat_derivation_space(a)),
    ];
    for (name, space) in spaces {
        let space = space?;
        r.fact(format!("dim Der({name})"), space.dim());
        if diagonal {
            r.fact(
                format!("dim torus({name})"),
                diagonal_derivations(&space)?.dim(),
            );
        }
        if name == "pair" {
            r.fact("Der(pair) consists of nilpotent maps", space_is_nil(&space));
        }
    }
    if inner {
        for (name, t) in [("bracket1", a.bracket1()), ("bracket2", a.bracket2())] {
            r.fact(format!("dim Inner({name})"), inner_derivations(t)?.dim());
            r.fact(format!("dim Outer({name})"), outer_dimension(t)?);
        }
    }
    Ok(())
}

fn filiform_section(r: &mut Report, a: &CompatAlgebra, seed: u64) -> Result<()> {
    let fil = is_filiform(a)?;
    r.fact("filiform", fil);
    if fil {
        match adapted_basis(a, seed) {
            Ok(ab) => {
                r.fact("adapted series", &ab.series);
                r.fact("adapted basis attempts", ab.attempts);
            }
            Err(e @ Error::RetryBudgetExhausted { .. }) => r.fact("adapted basis", e),
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn status_name(s: &Status) -> &'static str {
    match s {
        Status::Open => "open",
        Status::Solved => "solved",
        Status::Inconsistent(_) => "inconsistent",
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    let mut r = Report::new(echo(cli), cli.seed);
    match &cli.command {
        Command::Check { file } => {
            let a = read_algebra(file)?;
            r.fact("dimension", a.dim());
            if a.is_parametric() {
                r.fact("parameters", a.parameters().join(","));
            }
            check_section(&mut r, &a);
        }
        Command::Series { file } => {
            let a = read_algebra(file)?;
            series_section(&mut r, &a)?;
        }
        Command::Center { file } => {
            let a = read_algebra(file)?;
            let z = center(&a)?;
            r.fact("dim center", z.dim());
            r.fact("center", subspace_text(&z, a.labels()));
        }
        Command::Derivations {
            file,
            diagonal,
            inner,
        } => {
            let a = read_algebra(file)?;
            derivation_section(&mut r, &a, *diagonal, *inner)?;
        }
        Command::Cocycles { file, psi, pair } => {
            let a = read_algebra(file)?;
            a.require_rational()?;
            if let Some(p) = psi {
                let (k, rr) = (p[0], p[1]);
                let n = a
                    .dim()
                    .checked_sub(1)
                    .ok_or(Error::Invalid("empty algebra".into()))?;
                let phi = make_psi(n, k, rr)?;
                r.verdict(
                    format!("Psi_{{{k},{rr}}} is a 2-cocycle of bracket1"),
                    is_lie_2cocycle(a.bracket1(), &phi)?,
                );
                let value = phi.product(k, k + 1);
                let unit = value.len() == 1 && value.get(&rr).is_some_and(|c| c.is_one());
                r.verdict(format!("Psi(e{k},e{}) = e{rr}", k + 1), unit);
            } else if let Some(q) = pair {
                let c = read_algebra(q)?;
                let rep = compat_2cocycle_report(&a, c.bracket1(), c.bracket2())?;
                add_identity(&mut r, "compatible 2-cocycle pair", &rep, a.labels());
            } else {
                for (name, t) in [("bracket1", a.bracket1()), ("bracket2", a.bracket2())] {
                    match z2_dimension(t) {
                        Ok(d) => r.fact(format!("dim Z2({name})"), d),
                        Err(e) => r.fact(format!("dim Z2({name})"), e),
                    }
                }
                r.fact("dim Z2(pair)", z2_compat_space(&a)?.dim());
            }
        }
        Command::Pencil {
            file,
            l1,
            l2,
            m1,
            m2,
            out,
        } => {
            let a = read_algebra(file)?;
            let [l1, l2, m1, m2] = [l1, l2, m1, m2].map(|s| rational(s));
            let (l1, l2, m1, m2) = (l1?, l2?, m1?, m2?);
            let s = |x: &Rational| Scalar::Rational(x.clone());
            let b1 = crate::algebra::pencil(&a, &s(&l1), &s(&l2));
            let b2 = crate::algebra::pencil(&a, &s(&m1), &s(&m2));
            let p = a.map_brackets(b1, b2)?;
            check_section(&mut r, &p);
            if !a.is_parametric() {
                if let Some(k) = nilindex(&a)? {
                    let bound = pencil_nilindex_bound(&a, &l1, &l2, &m1, &m2)?;
                    r.fact("nilindex of input", k);
                    r.fact("nilindex of pencil", bound);
                    r.verdict("nilindex does not grow", bound <= k);
                }
            }
            if let Some(text) = write_or_return(serialize_algebra(&p), out)? {
                r.fact("pencil algebra", format!("\n{}", text.trim_end()));
            }
        }
        Command::Constraints { file } => {
            let a = read_algebra(file)?;
            let set = extract_constraints(&a);
            r.fact("equations", set.len());
            for (o, p) in set.by_origin() {
                r.fact(origin_text(&o, a.labels()), p);
            }
            let reduced = reduce_constraints(set);
            for (name, value) in reduced.assignments() {
                r.fact(format!("{name} :="), value);
            }
            for c in reduced.equations() {
                r.fact("remaining", &c.equation);
            }
            r.fact("status", status_name(reduced.status()));
            if let Status::Inconsistent(w) = reduced.status() {
                for c in w {
                    r.witness(contradiction_text(c, a.labels()));
                }
            }
            r.verdict("constraints are consistent", !reduced.is_inconsistent());
        }
        Command::Extend { file, spec, out } => {
            let a = read_algebra(file)?;
            let spec = parse_extension(&std::fs::read_to_string(spec)?, &a)?;
            let conditions = check_extension_conditions(&spec)?;
            let ext = crate::extensions::assemble(&spec)?;
            add_identity(
                &mut r,
                "extension conditions hold",
                &conditions,
                ext.labels(),
            );
            r.fact("dimension", ext.dim());
            check_section(&mut r, &ext);
            if !ext.is_parametric() && is_solvable(&ext)? {
                r.verdict("solvable", true);
                let cfg = WitnessConfig {
                    seed: cli.seed,
                    ..WitnessConfig::default()
                };
                r.verdict(
                    "base is the special nilradical",
                    base_is_nilradical(&ext, a.dim(), cfg)?,
                );
            } else if !ext.is_parametric() {
                r.verdict("solvable", false);
            }
            if conditions.holds {
                let built = build_semidirect(&spec);
                if let (Ok(b), Some(_)) = (&built, out) {
                    write_or_return(serialize_algebra(b), out)?;
                }
            }
        }
        Command::Nonexistence { file, rank } => {
            let a = read_algebra(file)?;
            let branches = nonexistence_probe(&a, *rank)?;
            r.fact("branches", branches.len());
            let mut all = true;
            for b in &branches {
                let order: Vec<String> = b.order.iter().map(|o| (o + 1).to_string()).collect();
                r.fact(
                    format!("branch ({})", order.join(",")),
                    status_name(b.constraints.status()),
                );
                all &= b.is_inconsistent();
                for c in b.contradictions() {
                    r.witness(contradiction_text(c, b.algebra.labels()));
                }
            }
            r.verdict(format!("no extension of rank {rank}"), all);
        }
        Command::Families { name, arg, out } => {
            let a = make_family(name, arg.as_deref().unwrap_or("7"))?;
            let text = serialize_algebra(&a);
            return Ok(match write_or_return(text, out)? {
                Some(t) => Output::Text(t),
                None => Output::Text(String::new()),
            });
        }
        Command::Report { file } => {
            let a = read_algebra(file)?;
            r.fact("dimension", a.dim());
            r.fact("labels", a.labels().join(","));
            check_section(&mut r, &a);
            if a.is_parametric() {
                r.fact("parameters", a.parameters().join(","));
                let reduced = reduce_constraints(extract_constraints(&a));
                r.fact("constraint status", status_name(reduced.status()));
            } else {
                series_section(&mut r, &a)?;
                let z = center(&a)?;
                r.fact("center", subspace_text(&z, a.labels()));
                derivation_section(&mut r, &a, true, false)?;
                filiform_section(&mut r, &a, cli.seed)?;
            }
        }
    }
    Ok(Output::Report(r))
}
