//! Command-line front end.

mod parse;
mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::biproduct::{classical_rules, quantum_rules, RewriteSystem};
use crate::cartan::{catalog, catalog_names, CartanAux, CartanMatrix};
use crate::datum::{
    build_omega, build_quantum_datum, check_alpha, check_bound_classical, check_bound_quantum,
    check_full_rank, ClassicalDatum, QuantumDatum,
};
use crate::error::{Error, Result};
use crate::exact::Field;
use crate::morphisms::{
    quantum_borel_assignment, verify_classical_borel, verify_quantum_borel, verify_quantum_weyl,
    verify_weyl_embedding, MorphismReport,
};
use crate::ncpoly::NCPoly;
use crate::report::{all_pass, Entry};

pub use parse::{parse_matrix, parse_symmetrizer, MatrixInput};
pub use report::{render_matrix, Check, DatumSummary, Flavor, MatrixEcho, Report, Section, REPORT_VERSION};

#[derive(Parser, Debug)]
#[command(name = "weylcheck", version, about = "Exact checks of skew Laurent models for Kac-Moody Borel algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the derived Cartan data.
    Analyze(MatrixArgs),
    /// Run the verification pipeline.
    Verify(VerifyArgs),
    /// Print the normal form of a word in the enveloping algebra.
    Rewrite(RewriteArgs),
}

#[derive(Args, Debug, Clone)]
pub struct MatrixArgs {
    /// Inline matrix, rows separated by `;`.
    #[arg(long, group = "source")]
    pub matrix: Option<String>,
    /// File: `n`, then `n` rows, then an optional `d:` line.
    #[arg(long, group = "source")]
    pub matrix_file: Option<std::path::PathBuf>,
    /// Built-in matrix by name.
    #[arg(long, group = "source")]
    pub catalog: Option<String>,
    /// Symmetrizer override, e.g. `1,2`.
    #[arg(long)]
    pub symmetrizer: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long, value_enum, default_value = "both")]
    pub mode: ModeArg,
    /// Comma-separated checks; all by default.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub checks: Vec<Check>,
    #[arg(long, default_value_t = 4)]
    pub degree_bound: usize,
    /// Replace the corrections by zero (negative control).
    #[arg(long, hide = true)]
    pub corrupt_beta: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RewriteArgs {
    #[command(flatten)]
    pub matrix: MatrixArgs,
    #[arg(long, value_enum, default_value = "classical")]
    pub mode: ModeArg,
    /// Word such as `F1*E1`; letters E_i, H_i or K_i, K_i^-1, F_i.
    pub word: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Classical,
    Quantum,
    Both,
}

impl ModeArg {
    fn flavors(self) -> Vec<Flavor> {
        match self {
            ModeArg::Classical => vec![Flavor::Classical],
            ModeArg::Quantum => vec![Flavor::Quantum],
            ModeArg::Both => vec![Flavor::Classical, Flavor::Quantum],
        }
    }
}

/// Rounds allowed for the diagnostic bounded completion.
const COMPLETION_ROUNDS: usize = 8;

/// A fully resolved verification job.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub matrix: CartanMatrix,
    pub d: Option<Vec<i64>>,
    pub flavors: Vec<Flavor>,
    pub checks: Vec<Check>,
    pub degree_bound: usize,
    pub corrupt_beta: bool,
}

impl JobSpec {
    pub fn new(matrix: CartanMatrix, mode: ModeArg, checks: &[Check]) -> Self {
        JobSpec {
            matrix,
            d: None,
            flavors: mode.flavors(),
            checks: if checks.is_empty() { Check::ALL.to_vec() } else { checks.to_vec() },
            degree_bound: 4,
            corrupt_beta: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.checks.is_empty() {
            return Err(Error::Shape("no checks selected".into()));
        }
        if self.checks.contains(&Check::Biproduct) && self.degree_bound < 2 {
            return Err(Error::Shape("degree bound must be at least 2".into()));
        }
        Ok(())
    }
}

pub fn load_matrix(args: &MatrixArgs) -> Result<MatrixInput> {
    let mut input = if let Some(text) = &args.matrix {
        parse_matrix(text)?
    } else if let Some(path) = &args.matrix_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Shape(format!("cannot read {}: {e}", path.display())))?;
        parse_matrix(&text)?
    } else if let Some(name) = &args.catalog {
        MatrixInput {
            matrix: catalog(name).ok_or_else(|| {
                Error::UnknownSymbol(format!("{name} (known: {})", catalog_names().join(", ")))
            })?,
            d: None,
        }
    } else {
        return Err(Error::Shape("one of --matrix, --matrix-file, --catalog is required".into()));
    };
    if let Some(s) = &args.symmetrizer {
        input.d = Some(parse_symmetrizer(s)?);
    }
    Ok(input)
}

fn claim(check: Check, flavor: Flavor) -> &'static str {
    match (check, flavor) {
        (Check::Datum, Flavor::Classical) => "the canonical datum is bound by the matrix and has full rank",
        (Check::Datum, Flavor::Quantum) => "the quantum datum satisfies the binding conditions",
        (Check::BorelUpper, _) => "the upper Borel subalgebra maps into the skew model with localizable denominators",
        (Check::BorelLower, _) => "the lower Borel subalgebra maps into the skew model with localizable denominators",
        (Check::WeylEmbedding, _) => "the bound algebra embeds into a Weyl algebra after localizing at the h_i",
        (Check::QuantumWeyl, _) => "the quantum model is a localization of a quantum Weyl algebra",
        (Check::Biproduct, _) => "the rewriting system of the enveloping algebra is locally confluent up to the degree bound",
    }
}

/// Shared derived data for one job.
struct Context {
    classical: Option<ClassicalDatum>,
    quantum: Option<QuantumDatum>,
    aux: CartanAux,
}

fn from_morphism(s: &mut Section, rep: MorphismReport) {
    s.entries = rep.relations;
    s.witness = Some(rep.witness);
    s.orientation = rep.orientation;
    s.notes.extend(rep.notes);
    s.pass = rep.pass;
}

fn run_biproduct<S: Field + Send + Sync>(s: &mut Section, sys: Result<RewriteSystem<S>>, bound: usize) -> Result<()> {
    let sys = sys?;
    s.entries = sys.mixed_relation_check()?;
    let conf = sys.check_local_confluence(bound)?;
    s.pass = all_pass(&s.entries) && conf.pass();
    if !conf.pass() {
        let (_, comp) = sys.complete(bound, COMPLETION_ROUNDS)?;
        s.notes.push(format!(
            "the Serre rules alone are not confluent to degree {bound}; bounded completion adds {} rule(s) in {} round(s) and then {}",
            comp.added.len(),
            comp.rounds,
            if comp.report.pass() { "every ambiguity resolves" } else { "ambiguities remain" }
        ));
    }
    s.confluence = Some(conf);
    Ok(())
}

fn run_section(job: &JobSpec, ctx: &Context, check: Check, flavor: Flavor) -> Result<Section> {
    let mut s = Section::new(check, flavor, claim(check, flavor));
    let c = &job.matrix;
    match (check, flavor) {
        (Check::Datum, Flavor::Classical) => {
            let d = ctx.classical.as_ref().expect("classical datum");
            s.entries = check_alpha(&d.ctx, &d.alpha)?;
            s.entries.extend(check_bound_classical(d)?);
            let fr = check_full_rank(d)?;
            s.pass = all_pass(&s.entries) && fr.independent;
            s.datum = Some(DatumSummary {
                method: format!("{:?}", d.method),
                b: d.b.iter().map(|p| p.to_string()).collect(),
                beta: d.beta.iter().map(|p| p.to_string()).collect(),
                full_rank: Some(fr),
                omega: Vec::new(),
            });
        }
        (Check::Datum, Flavor::Quantum) => {
            let d = ctx.quantum.as_ref().expect("quantum datum");
            let (_, a) = quantum_borel_assignment(d, true, &vec![1; c.n()])?;
            let (_, b) = quantum_borel_assignment(d, false, &vec![-1; c.n()])?;
            let e: Vec<_> = (1..=c.n()).map(|i| a.image(&format!("E{i}")).cloned()).collect::<Result<_>>()?;
            let f: Vec<_> = (1..=c.n()).map(|i| b.image(&format!("F{i}")).cloned()).collect::<Result<_>>()?;
            let rep = check_bound_quantum(d, &e, Some(&f))?;
            s.entries = rep.scaling;
            s.entries.extend(rep.localized);
            s.informational = rep
                .plain
                .into_iter()
                .map(|e| {
                    let expected = if e.label.contains("= 0)") { "expected to hold" } else { "expected to fail" };
                    e.with_note(format!("plain reading with sigma_i; {expected} (a_ij {})",
                        if expected == "expected to hold" { "= 0" } else { "< 0" }))
                })
                .collect();
            s.notes.push(
                "binding conditions are read after localizing at the images K_i^-1 X_i; the plain reading is listed as information"
                    .into(),
            );
            s.pass = all_pass(&s.entries);
            s.datum = Some(DatumSummary {
                method: "torus".into(),
                b: d.b.iter().map(|p| p.to_string()).collect(),
                beta: Vec::new(),
                full_rank: None,
                omega: Vec::new(),
            });
        }
        (Check::BorelUpper | Check::BorelLower, Flavor::Classical) => {
            let d = ctx.classical.as_ref().expect("classical datum");
            from_morphism(&mut s, verify_classical_borel(d, check == Check::BorelUpper)?);
            if job.corrupt_beta {
                s.notes.push("corrections replaced by zero".into());
            }
        }
        (Check::BorelUpper | Check::BorelLower, Flavor::Quantum) => {
            let d = ctx.quantum.as_ref().expect("quantum datum");
            from_morphism(&mut s, verify_quantum_borel(d, check == Check::BorelUpper)?);
        }
        (Check::WeylEmbedding, _) => {
            let d = ctx.classical.as_ref().expect("classical datum");
            from_morphism(&mut s, verify_weyl_embedding(d)?);
        }
        (Check::QuantumWeyl, _) => {
            let d = ctx.quantum.as_ref().expect("quantum datum");
            let omega = build_omega(d)?;
            let stated = omega.scaling.entries(false);
            let literal = verify_quantum_weyl(d, &omega, false)?;
            let corrected = verify_quantum_weyl(d, &omega, true)?;
            s.entries = stated;
            s.entries.extend(literal.relations);
            s.witness = Some(literal.witness);
            s.informational = omega
                .scaling
                .entries(true)
                .into_iter()
                .chain(corrected.relations)
                .map(|e| e.with_note("exponents d_i g_i"))
                .collect();
            if !omega.scaling.stated_holds() && omega.scaling.corrected_holds() {
                s.notes.push(
                    "omega_i scales by q^(d_i g_i) along m_i; the exponents g_i hold only when every d_i = 1".into(),
                );
            }
            s.pass = all_pass(&s.entries) && literal.pass;
            s.datum = Some(DatumSummary {
                method: "omega".into(),
                omega: omega.omega.iter().map(|w| w.to_string()).collect(),
                ..DatumSummary::default()
            });
        }
        (Check::Biproduct, Flavor::Classical) => {
            run_biproduct(&mut s, Ok(classical_rules(c)), job.degree_bound)?;
        }
        (Check::Biproduct, Flavor::Quantum) => {
            run_biproduct(&mut s, quantum_rules(c, &ctx.aux.d), job.degree_bound)?;
        }
    }
    Ok(s)
}

fn applicable(check: Check, flavor: Flavor) -> bool {
    !matches!(
        (check, flavor),
        (Check::WeylEmbedding, Flavor::Quantum) | (Check::QuantumWeyl, Flavor::Classical)
    )
}

/// Runs a job; engine errors become failed sections.
pub fn run(job: &JobSpec) -> Result<Report> {
    job.validate()?;
    let aux = CartanAux::derive_with(&job.matrix, job.d.clone())?;
    let classical = if job.flavors.contains(&Flavor::Classical)
        || job.checks.contains(&Check::WeylEmbedding)
    {
        let d = ClassicalDatum::canonical(&job.matrix, &aux)?;
        Some(if job.corrupt_beta { d.with_zero_beta()? } else { d })
    } else {
        None
    };
    let quantum = if job.flavors.contains(&Flavor::Quantum) || job.checks.contains(&Check::QuantumWeyl) {
        Some(build_quantum_datum(&job.matrix, &aux)?)
    } else {
        None
    };
    let ctx = Context { classical, quantum, aux };
    let mut plan = Vec::new();
    for &check in &job.checks {
        for &flavor in &job.flavors {
            if applicable(check, flavor) {
                plan.push((check, flavor));
            }
        }
        if job.flavors.len() == 1 && !applicable(check, job.flavors[0]) {
            let other = if job.flavors[0] == Flavor::Classical { Flavor::Quantum } else { Flavor::Classical };
            plan.push((check, other));
        }
    }
    let sections: Vec<Section> = plan
        .par_iter()
        .map(|&(check, flavor)| {
            let t = Instant::now();
            let mut s = run_section(job, &ctx, check, flavor).unwrap_or_else(|e| {
                let mut s = Section::new(check, flavor, claim(check, flavor));
                s.error = Some(e.to_string());
                s
            });
            s.elapsed_ms = t.elapsed().as_millis() as u64;
            s
        })
        .collect();
    let pass = sections.iter().all(|s| s.pass);
    Ok(Report {
        version: REPORT_VERSION.into(),
        matrix: MatrixEcho::new(&job.matrix, &ctx.aux),
        sections,
        pass,
    })
}

/// Normal form of `word` in the chosen flavor.
pub fn rewrite(c: &CartanMatrix, d: Option<Vec<i64>>, flavor: Flavor, word: &str) -> Result<String> {
    match flavor {
        Flavor::Classical => {
            let sys = classical_rules(c);
            let p = NCPoly::word(sys.word(word)?);
            Ok(sys.display(&sys.normal_form(&p)?))
        }
        Flavor::Quantum => {
            let aux = CartanAux::derive_with(c, d)?;
            let sys = quantum_rules(c, &aux.d)?;
            let p = NCPoly::word(sys.word(word)?);
            Ok(sys.display(&sys.normal_form(&p)?))
        }
    }
}

/// Runs the command line; returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Writes `text`; a closed reader (as with `| head`) is not an error.
fn emit(out: &mut dyn std::io::Write, text: &str) -> Result<()> {
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
            Err(Error::Internal(format!("write failed: {e}")))
        }
        _ => Ok(()),
    }
}

fn execute(cli: Cli, out: &mut dyn std::io::Write) -> Result<i32> {
    match cli.command {
        Command::Analyze(m) => {
            let input = load_matrix(&m)?;
            let aux = CartanAux::derive_with(&input.matrix, input.d)?;
            let echo = MatrixEcho::new(&input.matrix, &aux);
            match m.format {
                Format::Text => emit(out, &render_matrix(&echo))?,
                Format::Structured => {
                    let doc = serde_json::json!({ "version": REPORT_VERSION, "matrix": echo });
                    emit(out, &format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")))?
                }
            }
            Ok(0)
        }
        Command::Verify(v) => {
            let input = load_matrix(&v.matrix)?;
            let mut job = JobSpec::new(input.matrix, v.mode, &v.checks);
            job.d = input.d;
            job.degree_bound = v.degree_bound;
            job.corrupt_beta = v.corrupt_beta;
            let report = run(&job)?;
            match v.matrix.format {
                Format::Text => emit(out, &report.to_text())?,
                Format::Structured => emit(out, &format!("{}\n", report.to_json()))?,
            }
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Rewrite(r) => {
            let input = load_matrix(&r.matrix)?;
            let flavor = match r.mode {
                ModeArg::Classical => Flavor::Classical,
                ModeArg::Quantum => Flavor::Quantum,
                ModeArg::Both => return Err(Error::Shape("rewrite needs --mode classical or quantum".into())),
            };
            let nf = rewrite(&input.matrix, input.d, flavor, &r.word)?;
            match r.matrix.format {
                Format::Text => emit(out, &format!("{nf}\n"))?,
                Format::Structured => {
                    let doc = serde_json::json!({
                        "version": REPORT_VERSION,
                        "input": r.word,
                        "normal_form": nf,
                    });
                    emit(out, &format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")))?
                }
            }
            Ok(0)
        }
    }
}

/// Entry helper for callers assembling their own sections.
pub fn entry_all_pass(entries: &[Entry]) -> bool {
    all_pass(entries)
}
