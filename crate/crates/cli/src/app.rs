use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rough_matroid::ingest::{decision_target, indiscernibility_partition, InformationTable};
use rough_matroid::matroid::DEFAULT_ENUMERATION_CAP;
use rough_matroid::oracle::checks::Property;
use rough_matroid::oracle::{random_instance, BlockLaw, InstanceSpec};
use rough_matroid::parametric::{
    bases_closed_form, circuits_closed_form, closure_closed_form, decompose,
    parametric_matroid_with, rank_closed_form, DEFAULT_BASES_CAP,
};
use rough_matroid::{Error, ParametricInstance, Representation, SetFamily, Subset, Universe};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::campaign::{run_campaign, Report};
use crate::instance_file::{
    instance_digest, parse_instance, serialize_compact, serialize_instance, to_raw,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_VIOLATION: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "rmat",
    version,
    about = "Rough-set approximations and the parametric matroid M_X"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower or upper approximation, or the lower approximation number, of a set.
    Approx {
        #[arg(value_enum)]
        op: ApproxOp,
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated element identifiers; may be empty.
        #[arg(long)]
        set: String,
    },
    /// Queries on M_X.
    Matroid(MatroidArgs),
    /// The partition-circuit and free summands of M_X.
    Decompose {
        #[arg(long)]
        input: PathBuf,
    },
    /// Verify properties on one instance or a seeded campaign.
    Check(CheckArgs),
    /// Build an instance from a CSV information table.
    Ingest(IngestArgs),
    /// Print a seeded random instance.
    Generate(GenerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApproxOp {
    Lower,
    Upper,
    Fnum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatroidQuery {
    Independents,
    Bases,
    Circuits,
    Rank,
    Closure,
}

#[derive(Debug, Args)]
pub struct MatroidArgs {
    #[arg(value_enum)]
    pub query: MatroidQuery,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, conflicts_with = "brute")]
    pub closed_form: bool,
    /// Enumerate through the independence oracle instead of a closed form.
    #[arg(long)]
    pub brute: bool,
    #[arg(long, default_value = "fnum", value_parser = parse_rep)]
    pub rep: Representation,
    /// Required by `rank` and `closure`.
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// One of axioms, reps, theorem1, rank, closure, circuits, bases, lemmas, all.
    #[arg(value_parser = parse_properties)]
    pub property: PropertySel,
    /// Check this instance instead of a random campaign.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub size: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "restaurant", value_parser = parse_law)]
    pub law: BlockLaw,
    #[arg(long, default_value_t = 0.5, value_parser = parse_density)]
    pub density: f64,
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[arg(long)]
    pub csv: PathBuf,
    /// Comma-separated condition attributes.
    #[arg(long)]
    pub attrs: String,
    /// Identifier column; defaults to the first column.
    #[arg(long)]
    pub id_column: Option<String>,
    /// Decision attribute whose `--value` class becomes the parameter set.
    #[arg(long, requires = "value")]
    pub decision: Option<String>,
    #[arg(long, requires = "decision")]
    pub value: Option<String>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    pub size: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value = "restaurant", value_parser = parse_law)]
    pub law: BlockLaw,
    #[arg(long, default_value_t = 0.5, value_parser = parse_density)]
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertySel(pub Vec<Property>);

fn parse_properties(s: &str) -> Result<PropertySel, String> {
    if s == "all" {
        Ok(PropertySel(Property::ALL.to_vec()))
    } else {
        s.parse().map(|p| PropertySel(vec![p]))
    }
}

fn parse_rep(s: &str) -> Result<Representation, String> {
    s.parse()
}

fn parse_law(s: &str) -> Result<BlockLaw, String> {
    s.parse()
}

fn parse_density(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(d) if (0.0..=1.0).contains(&d) => Ok(d),
        _ => Err(format!("`{s}` is not a probability in [0, 1]")),
    }
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::CapExceeded { .. } | Error::OutputCapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Machine-format envelope. Field order is part of the format.
#[derive(Serialize)]
struct Document<'a> {
    query: &'a str,
    instance_digest: Option<&'a str>,
    result: Value,
}

struct Rendered {
    query: String,
    digest: Option<String>,
    text: String,
    result: Value,
    code: i32,
}

impl Rendered {
    fn ok(query: String, digest: Option<String>, text: String, result: Value) -> Rendered {
        Rendered {
            query,
            digest,
            text,
            result,
            code: EXIT_OK,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Text => r.text,
                Format::Machine => {
                    let doc = Document {
                        query: &r.query,
                        instance_digest: r.digest.as_deref(),
                        result: r.result,
                    };
                    serde_json::to_string_pretty(&doc).expect("documents serialize") + "\n"
                }
            };
            Outcome {
                code: r.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin()).map_err(|e| invalid(format!("stdin: {e}")))
    } else {
        fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
    }
}

fn load(path: &Path) -> Result<ParametricInstance, Failure> {
    parse_instance(&read_input(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn parse_set(u: &Universe, text: &str) -> Result<Subset, Failure> {
    let ids = text.split(',').map(str::trim).filter(|t| !t.is_empty());
    Ok(u.subset(ids)?)
}

fn ids(u: &Universe, s: &Subset) -> Vec<String> {
    u.ids(s).map(str::to_owned).collect()
}

fn family_ids(u: &Universe, f: &SetFamily) -> Vec<Vec<String>> {
    f.iter().map(|s| ids(u, s)).collect()
}

fn execute(command: &Command) -> Result<Rendered, Failure> {
    match command {
        Command::Approx { op, input, set } => {
            let inst = load(input)?;
            let u = inst.universe();
            let x = parse_set(u, set)?;
            let space = inst.space();
            let query = format!("approx {} --set {}", op_name(*op), ids(u, &x).join(","));
            let digest = Some(instance_digest(&inst));
            Ok(match op {
                ApproxOp::Fnum => {
                    let f = space.lower_approx_number(&x)?;
                    Rendered::ok(query, digest, format!("{f}\n"), json!(f))
                }
                ApproxOp::Lower | ApproxOp::Upper => {
                    let s = if *op == ApproxOp::Lower {
                        space.lower_approx(&x)?
                    } else {
                        space.upper_approx(&x)?
                    };
                    Rendered::ok(
                        query,
                        digest,
                        format!("{}\n", u.format_subset(&s)),
                        json!(ids(u, &s)),
                    )
                }
            })
        }
        Command::Matroid(a) => matroid(a),
        Command::Decompose { input } => {
            let inst = load(input)?;
            let u = inst.universe();
            let d = decompose(&inst);
            let pc_ground = d.partition_circuit.ground();
            let circuits = circuits_closed_form(&inst);
            let text = format!(
                "lower approximation of x: {}\npartition-circuit summand: ground {}, circuits {}\nfree summand: ground {}\n",
                u.format_subset(inst.lower_x()),
                u.format_subset(pc_ground),
                u.format_family(&circuits),
                u.format_subset(d.free.ground()),
            );
            let result = json!({
                "lower_x": ids(u, inst.lower_x()),
                "partition_circuit": {"ground": ids(u, pc_ground), "circuits": family_ids(u, &circuits)},
                "free": {"ground": ids(u, d.free.ground())},
            });
            Ok(Rendered::ok(
                "decompose".into(),
                Some(instance_digest(&inst)),
                text,
                result,
            ))
        }
        Command::Check(a) => check(a),
        Command::Ingest(a) => {
            let file =
                fs::File::open(&a.csv).map_err(|e| invalid(format!("{}: {e}", a.csv.display())))?;
            let table = InformationTable::from_csv(file, a.id_column.as_deref())?;
            let attrs: Vec<&str> = a
                .attrs
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let partition = indiscernibility_partition(&table, &attrs)?;
            let x = match (&a.decision, &a.value) {
                (Some(d), Some(v)) => decision_target(&table, d, v)?,
                _ => table.objects().empty_set(),
            };
            let inst = ParametricInstance::from_partition(partition, x)?;
            let mut query = format!("ingest --attrs {}", attrs.join(","));
            if let (Some(d), Some(v)) = (&a.decision, &a.value) {
                query += &format!(" --decision {d} --value {v}");
            }
            Ok(emit_instance(query, &inst))
        }
        Command::Generate(a) => {
            let inst = random_instance(&InstanceSpec {
                seed: a.seed,
                universe_size: a.size as usize,
                block_law: a.law,
                x_density: a.density,
            });
            let query = format!(
                "generate --size {} --seed {} --law {} --density {}",
                a.size, a.seed, a.law, a.density
            );
            Ok(emit_instance(query, &inst))
        }
    }
}

fn emit_instance(query: String, inst: &ParametricInstance) -> Rendered {
    let result = serde_json::to_value(to_raw(inst)).expect("instances serialize");
    Rendered::ok(
        query,
        Some(instance_digest(inst)),
        serialize_instance(inst),
        result,
    )
}

fn op_name(op: ApproxOp) -> &'static str {
    match op {
        ApproxOp::Lower => "lower",
        ApproxOp::Upper => "upper",
        ApproxOp::Fnum => "fnum",
    }
}

fn query_name(q: MatroidQuery) -> &'static str {
    match q {
        MatroidQuery::Independents => "independents",
        MatroidQuery::Bases => "bases",
        MatroidQuery::Circuits => "circuits",
        MatroidQuery::Rank => "rank",
        MatroidQuery::Closure => "closure",
    }
}

fn matroid(a: &MatroidArgs) -> Result<Rendered, Failure> {
    let inst = load(&a.input)?;
    let u = inst.universe();
    let m = parametric_matroid_with(&inst, a.rep).with_cap(a.cap);
    let method = if a.brute { "--brute" } else { "--closed-form" };
    let mut query = format!(
        "matroid {} {method} --rep {}",
        query_name(a.query),
        a.rep.name()
    );
    let digest = Some(instance_digest(&inst));
    let family = |f: SetFamily| {
        (
            format!("{}\n", u.format_family(&f)),
            json!(family_ids(u, &f)),
        )
    };

    let (text, result) = match a.query {
        MatroidQuery::Independents => family(m.independents()?),
        MatroidQuery::Bases if a.brute => family(m.bases()?),
        MatroidQuery::Bases => family(bases_closed_form(&inst, DEFAULT_BASES_CAP)?),
        MatroidQuery::Circuits if a.brute => family(m.circuits()?),
        MatroidQuery::Circuits => family(circuits_closed_form(&inst)),
        MatroidQuery::Rank | MatroidQuery::Closure => {
            let set = a.set.as_deref().ok_or_else(|| {
                usage(format!("`matroid {}` requires --set", query_name(a.query)))
            })?;
            let y = parse_set(u, set)?;
            query += &format!(" --set {}", ids(u, &y).join(","));
            if a.query == MatroidQuery::Rank {
                let r = if a.brute {
                    m.rank_by_search(&y)?
                } else {
                    rank_closed_form(&inst, &y)?
                };
                (format!("{r}\n"), json!(r))
            } else {
                let c = if a.brute {
                    m.closure_by_search(&y)?
                } else {
                    closure_closed_form(&inst, &y)?
                };
                (format!("{}\n", u.format_subset(&c)), json!(ids(u, &c)))
            }
        }
    };
    Ok(Rendered::ok(query, digest, text, result))
}

#[derive(Serialize)]
struct PropertyLine {
    property: &'static str,
    checks: u64,
    violations: u64,
}

#[derive(Serialize)]
struct WitnessDoc {
    property: &'static str,
    trial: usize,
    seed: Option<u64>,
    what: String,
    subset: Option<Vec<String>>,
    instance: Value,
}

fn check(a: &CheckArgs) -> Result<Rendered, Failure> {
    let props = &a.property.0;
    let prop_name = if props.len() == 1 {
        props[0].name()
    } else {
        "all"
    };
    let (instances, header, query, seeds) = match &a.input {
        Some(path) => {
            let inst = load(path)?;
            let header = format!("check {prop_name}: instance {}\n", instance_digest(&inst));
            let query = format!("check {prop_name} --cap {}", a.cap);
            (vec![inst], header, query, None)
        }
        None => {
            if a.size as usize > a.cap {
                return Err(Error::CapExceeded {
                    size: a.size as usize,
                    cap: a.cap,
                }
                .into());
            }
            let seeds: Vec<u64> = (0..a.trials).map(|k| a.seed.wrapping_add(k)).collect();
            let instances = seeds
                .iter()
                .map(|&seed| {
                    random_instance(&InstanceSpec {
                        seed,
                        universe_size: a.size as usize,
                        block_law: a.law,
                        x_density: a.density,
                    })
                })
                .collect();
            let settings = format!(
                "--size {} --trials {} --seed {} --law {} --density {} --cap {}",
                a.size, a.trials, a.seed, a.law, a.density, a.cap
            );
            let header = format!("check {prop_name} {settings}\n");
            (
                instances,
                header,
                format!("check {prop_name} {settings}"),
                Some(seeds),
            )
        }
    };
    let digest = campaign_digest(&instances);
    let report = run_campaign(&instances, props, a.cap)?;
    let text = header + &report_text(&report, seeds.as_deref());

    let lines: Vec<PropertyLine> = report
        .totals
        .iter()
        .map(|t| PropertyLine {
            property: t.property.name(),
            checks: t.checks,
            violations: t.violations,
        })
        .collect();
    let witness = report.failure.as_ref().map(|f| {
        let u = f.witness.universe();
        WitnessDoc {
            property: f.property.name(),
            trial: f.trial,
            seed: seeds.as_ref().map(|s| s[f.trial]),
            what: f.violation.what.clone(),
            subset: f.violation.subset.as_ref().map(|s| ids(u, s)),
            instance: serde_json::to_value(to_raw(&f.witness)).expect("instances serialize"),
        }
    });
    let result = json!({
        "verdict": if report.passed() { "ok" } else { "violation" },
        "trials": instances.len(),
        "properties": lines,
        "witness": witness,
    });
    let mut r = Rendered::ok(query, Some(digest), text, result);
    if !report.passed() {
        r.code = EXIT_VIOLATION;
    }
    Ok(r)
}

/// Digest over the structured serializations of every instance, in order.
fn campaign_digest(instances: &[ParametricInstance]) -> String {
    if let [one] = instances {
        return instance_digest(one);
    }
    let mut h = Sha256::new();
    for inst in instances {
        h.update(serialize_instance(inst).as_bytes());
    }
    hex::encode(h.finalize())
}

fn report_text(report: &Report, seeds: Option<&[u64]>) -> String {
    let mut out = String::new();
    for t in &report.totals {
        let status = if t.violations == 0 { "ok" } else { "VIOLATION" };
        out += &format!("{:<9} {status:<9} {} checks\n", t.property.name(), t.checks);
    }
    match &report.failure {
        None => out += "verdict: ok\n",
        Some(f) => {
            let u = f.witness.universe();
            out += "verdict: violation\n";
            out += &format!("property: {}\n", f.property.name());
            out += &format!("trial: {}\n", f.trial);
            if let Some(seeds) = seeds {
                out += &format!("seed: {}\n", seeds[f.trial]);
            }
            out += &format!("what: {}\n", f.violation.what);
            if let Some(s) = &f.violation.subset {
                out += &format!("subset: {}\n", u.format_subset(s));
            }
            out += "witness:\n";
            out += &serialize_compact(&f.witness);
        }
    }
    out
}
