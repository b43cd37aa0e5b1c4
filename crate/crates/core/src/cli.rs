//! Command-line front end. `run` is the whole program; the binary only
//! forwards `std::env::args` and the process streams.
//!
//! Exit codes: 0 success, 1 Unsupported, 2 usage or input error,
//! 4 a verification or comparison reported FAIL.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{g_mumford_relations, mumford_relations, reduce, LambdaPoly, RelationSet};
use crate::anomaly::{gamma2, AmplitudeDoc};
use crate::arith::Rational;
use crate::hodge::{self, Outcome};
use crate::mirror::{MirrorFrame, DEFAULT_WORKING_ORDER};
use crate::picard_fuchs::{apply_displayed_pf_operator, apply_pf_operator, bk_series};
use crate::reference;
use crate::series::Series;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSUPPORTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "c3z3", version, about = "Exact orbifold invariants of C^3/Z3")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Picard-Fuchs solutions
    #[command(subcommand)]
    Pf(PfCommand),
    /// Mirror map and genus-0 invariants
    #[command(subcommand)]
    Mirror(MirrorCommand),
    /// Hodge-integral route to unpointed invariants
    #[command(subcommand)]
    Hodge(HodgeCommand),
    /// Lambda-class relations and normal forms
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Genus-2 anomaly functional
    #[command(subcommand)]
    Anomaly(AnomalyCommand),
    /// Embedded reference values
    #[command(subcommand)]
    Reference(ReferenceCommand),
}

#[derive(Subcommand, Debug)]
enum PfCommand {
    /// Coefficients of B_k
    Series {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=2))]
        k: i64,
        #[arg(long, default_value_t = DEFAULT_WORKING_ORDER)]
        order: usize,
    },
    /// Check that the operator annihilates B_1 and B_2
    Verify {
        #[arg(long, default_value_t = DEFAULT_WORKING_ORDER)]
        order: usize,
    },
}

#[derive(Subcommand, Debug)]
enum MirrorCommand {
    /// N_{0,k} for k = 1..kmax
    Genus0 {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        kmax: u32,
        #[arg(long, default_value_t = DEFAULT_WORKING_ORDER)]
        order: usize,
        /// Diff against the embedded table
        #[arg(long)]
        compare: bool,
    },
}

#[derive(Args, Debug)]
struct GenusArg {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    g: u32,
}

#[derive(Subcommand, Debug)]
enum HodgeCommand {
    /// int lambda_g lambda_{g-1} lambda_{g-2}
    Fp(GenusArg),
    /// Disc integrand before and after reduction
    Disc(GenusArg),
    /// Connected-cover contribution
    Conn(GenusArg),
    /// Unpointed invariant
    Unpointed {
        #[command(flatten)]
        genus: GenusArg,
        /// Euler characteristic for the constant-map comparison
        #[arg(long)]
        chi: Option<Rational>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum RelationKind {
    Mumford,
    Gmumford,
}

#[derive(Subcommand, Debug)]
enum AlgebraCommand {
    /// Relation generators
    Relations {
        #[arg(long, value_enum)]
        kind: RelationKind,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        g: u32,
    },
    /// Normal form of a polynomial read from a file
    Reduce {
        #[arg(long, value_enum)]
        kind: RelationKind,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        g: u32,
        #[arg(long)]
        poly: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum AnomalyCommand {
    /// Gamma_2 of an amplitude document
    Gamma2 {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum ReferenceCommand {
    /// The N_{g,k} table and unmarked formulas
    Table,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub label: String,
    pub value: String,
    /// Plain output prints only the value.
    #[serde(skip)]
    bare: bool,
}

impl Row {
    fn new(label: impl Into<String>, value: impl ToString) -> Row {
        Row {
            label: label.into(),
            value: value.to_string(),
            bare: false,
        }
    }

    fn bare(label: impl Into<String>, value: impl ToString) -> Row {
        Row {
            bare: true,
            ..Row::new(label, value)
        }
    }
}

#[derive(Serialize, Debug)]
struct Report {
    command: String,
    params: serde_json::Map<String, serde_json::Value>,
    working_order: Option<usize>,
    results: Vec<Row>,
    #[serde(skip)]
    plain: Option<String>,
    #[serde(skip)]
    exit: i32,
}

impl Report {
    fn new(command: &str) -> Report {
        Report {
            command: command.to_string(),
            params: serde_json::Map::new(),
            working_order: None,
            results: Vec::new(),
            plain: None,
            exit: EXIT_OK,
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Report {
        self.params.insert(
            key.to_string(),
            serde_json::Value::String(value.to_string()),
        );
        self
    }

    fn order(mut self, order: usize) -> Report {
        self.working_order = Some(order);
        self
    }

    fn push(&mut self, row: Row) {
        self.results.push(row);
    }

    fn header(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(n) = self.working_order {
            out.push(format!("# working_order={n}"));
            for (k, v) in &self.params {
                out.push(format!("# {k}={}", v.as_str().unwrap_or_default()));
            }
        }
        out
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => {
                let body = self.plain.clone().unwrap_or_else(|| {
                    self.results
                        .iter()
                        .map(|r| {
                            if r.bare {
                                r.value.clone()
                            } else {
                                format!("{} {}", r.label, r.value)
                            }
                        })
                        .collect::<Vec<_>>()
                        .join("\n")
                });
                let mut lines = self.header();
                lines.push(body);
                lines.join("\n") + "\n"
            }
            Format::Csv => {
                let mut lines = self.header();
                lines.push("label,value".to_string());
                lines.extend(
                    self.results
                        .iter()
                        .map(|r| format!("{},{}", csv_field(&r.label), csv_field(&r.value))),
                );
                lines.join("\n") + "\n"
            }
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Error carried up to `run`, already mapped to an exit code.
struct Failure {
    code: i32,
    message: String,
}

fn usage(e: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn relations(kind: RelationKind, g: u32) -> Result<RelationSet, Failure> {
    match kind {
        RelationKind::Mumford => mumford_relations(g),
        RelationKind::Gmumford => g_mumford_relations(g),
    }
    .map_err(usage)
}

fn unsupported(report: &mut Report, label: &str, u: crate::Unsupported) {
    report.push(Row::bare(label, format!("Unsupported: {u}")));
    report.exit = EXIT_UNSUPPORTED;
}

fn pf(cmd: PfCommand) -> Result<Report, Failure> {
    match cmd {
        PfCommand::Series { k, order } => {
            let b = bk_series(k, order).map_err(usage)?;
            let mut r = Report::new("pf series").param("k", k).order(order);
            for (e, c) in b.terms() {
                r.push(Row::new(format!("psi^{e}"), c));
            }
            Ok(r)
        }
        PfCommand::Verify { order } => {
            let mut r = Report::new("pf verify").order(order);
            let x = Series::from_terms("x", order, [(1, Rational::from(-3))]);
            for k in 1..=2 {
                let b = bk_series(k, order).map_err(usage)?;
                let ok = apply_pf_operator(&b).is_zero();
                r.push(Row::new(format!("B_{k}"), pass_fail(ok)));
                let pulled = b.compose(&x).map_err(usage)?;
                let ok2 = apply_displayed_pf_operator(&pulled).is_zero();
                r.push(Row::new(format!("B_{k}(-3x)"), pass_fail(ok2)));
                if !(ok && ok2) {
                    r.exit = EXIT_CHECK_FAILED;
                }
            }
            Ok(r)
        }
    }
}

fn mirror(cmd: MirrorCommand) -> Result<Report, Failure> {
    let MirrorCommand::Genus0 {
        kmax,
        order,
        compare,
    } = cmd;
    let frame = MirrorFrame::new(order).map_err(usage)?;
    let values = frame.genus0_invariants(kmax as usize).map_err(usage)?;
    let mut r = Report::new("mirror genus0")
        .param("kmax", kmax)
        .order(order);
    if compare {
        r = r.param("compare", true);
    }
    for (i, v) in values.iter().enumerate() {
        r.push(Row::new(format!("k={}", i + 1), v));
    }
    if compare {
        for (i, v) in values.iter().enumerate() {
            let k = i as u32 + 1;
            if reference::ngk(0, k).is_err() {
                r.push(Row::bare(
                    format!("compare k={k}"),
                    format!("no reference for N_{{0,{k}}}"),
                ));
                continue;
            }
            let c = reference::compare(v, 0, k);
            if !c.pass {
                r.exit = EXIT_CHECK_FAILED;
            }
            r.push(Row::bare(format!("compare k={k}"), c));
        }
    }
    Ok(r)
}

fn hodge_cmd(cmd: HodgeCommand) -> Result<Report, Failure> {
    match cmd {
        HodgeCommand::Fp(GenusArg { g }) => {
            let mut r = Report::new("hodge fp").param("g", g);
            r.push(Row::bare("fp", hodge::fp_integral(g).map_err(usage)?));
            Ok(r)
        }
        HodgeCommand::Disc(GenusArg { g }) => {
            let d = hodge::disc_integrand_reduction(g).map_err(usage)?;
            let mut r = Report::new("hodge disc").param("g", g);
            r.push(Row::new("pre_reduction", &d.pre_reduction));
            r.push(Row::new("reduced", &d.reduced));
            match &d.coefficient {
                Some(c) => r.push(Row::new("coefficient", c)),
                None => r.push(Row::new("coefficient", "not proportional")),
            }
            r.push(Row::new("fp", hodge::fp_integral(g).map_err(usage)?));
            r.push(Row::new("weight_check", pass_fail(d.weight_check)));
            Ok(r)
        }
        HodgeCommand::Conn(GenusArg { g }) => {
            let mut r = Report::new("hodge conn").param("g", g);
            match hodge::conn_contribution(g).map_err(usage)? {
                Outcome::Exact(v) => r.push(Row::bare("conn", v)),
                Outcome::Unsupported(u) => unsupported(&mut r, "conn", u),
            }
            Ok(r)
        }
        HodgeCommand::Unpointed {
            genus: GenusArg { g },
            chi,
        } => {
            let mut r = Report::new("hodge unpointed").param("g", g);
            match hodge::unpointed_invariant(g).map_err(usage)? {
                Outcome::Exact(v) => r.push(Row::bare("unpointed", v)),
                Outcome::Unsupported(u) => unsupported(&mut r, "unpointed", u),
            }
            if let Some(chi) = chi {
                r = r.param("chi", &chi);
                r.push(Row::new(
                    "constant_map",
                    hodge::constant_map_invariant(g, &chi).map_err(usage)?,
                ));
                if let Ok(v) = reference::n_g0_formula(g, &chi) {
                    r.push(Row::new("physics_formula", v));
                }
            }
            Ok(r)
        }
    }
}

fn algebra(cmd: AlgebraCommand) -> Result<Report, Failure> {
    match cmd {
        AlgebraCommand::Relations { kind, g } => {
            let rel = relations(kind, g)?;
            let mut r = Report::new("algebra relations")
                .param("kind", format!("{kind:?}").to_lowercase())
                .param("g", g);
            let gens: Vec<String> = rel.generators().iter().map(ToString::to_string).collect();
            r.push(Row::new("generators", gens.join(" ")));
            for p in rel.relations() {
                let d = p.degrees().into_iter().next().unwrap_or(0);
                r.push(Row::new(format!("deg={d}"), p));
            }
            Ok(r)
        }
        AlgebraCommand::Reduce { kind, g, poly } => {
            let rel = relations(kind, g)?;
            let p: LambdaPoly = read_input(&poly)?.trim().parse().map_err(usage)?;
            let nf = reduce(&p, &rel);
            let mut r = Report::new("algebra reduce")
                .param("kind", format!("{kind:?}").to_lowercase())
                .param("g", g)
                .param("poly", &p);
            r.push(Row::bare("normal_form", &nf));
            r.push(Row::new("in_ideal", nf.is_zero()));
            Ok(r)
        }
    }
}

fn anomaly(cmd: AnomalyCommand) -> Result<Report, Failure> {
    let AnomalyCommand::Gamma2 { input } = cmd;
    let doc: AmplitudeDoc = serde_json::from_str(&read_input(&input)?).map_err(usage)?;
    let data = doc.into_data().map_err(usage)?;
    let mut r = Report::new("anomaly gamma2").param("modulus_count", data.r);
    r.push(Row::bare("gamma2", gamma2(&data)));
    Ok(r)
}

fn reference_cmd(cmd: ReferenceCommand) -> Result<Report, Failure> {
    let ReferenceCommand::Table = cmd;
    let t = reference::table();
    let mut r = Report::new("reference table");
    for e in &t.marked {
        r.push(Row::new(format!("N_{{{},{}}}", e.g, e.k), &e.value));
    }
    let mut unmarked = Vec::new();
    for f in &t.unmarked_formulas {
        r.push(Row::new(
            format!("N_{{{},0}} constant", f.g),
            &f.constant_term,
        ));
        r.push(Row::new(format!("N_{{{},0}} chi", f.g), &f.chi_coefficient));
        unmarked.push(format!(
            "N_{{{},0}} = {} + chi * {}",
            f.g, f.constant_term, f.chi_coefficient
        ));
    }
    r.plain = Some(format!(
        "{}\n\n{}",
        reference::plain_table(),
        unmarked.join("\n")
    ));
    Ok(r)
}

/// Parse `argv` (including the program name), write results to `out` and
/// diagnostics to `err`, return the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Pf(c) => pf(c),
        Command::Mirror(c) => mirror(c),
        Command::Hodge(c) => hodge_cmd(c),
        Command::Algebra(c) => algebra(c),
        Command::Anomaly(c) => anomaly(c),
        Command::Reference(c) => reference_cmd(c),
    };
    match result {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.format).as_bytes());
            report.exit
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
