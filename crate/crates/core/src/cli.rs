//! Command-line front end. The `nilbound` binary only forwards to [`main`].

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::bignum;
use crate::bounds::{f_closed, f_upper, is_prime, BoundReport, BoundsError};
use crate::constructions::{ConstructionError, GroupBlueprint, Observed, Prediction};
use crate::group::{exact_log, GroupError, GroupJson, PermGroup};
use crate::search::{
    audit_row, fnil_exact_with, reference_row, AuditReport, Dedupe, EnumerateOptions,
    SearchError, SearchRow, DEFAULT_BUDGET,
};

/// Failure of one invocation, with its exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refused(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Refused(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::TableFormulaMismatch { .. } => CliError::Invariant(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded(_) | SearchError::DegreeTooLarge { .. } => {
                CliError::Refused(e.to_string())
            }
            SearchError::Construction(c) => c.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::TooLarge { ref prediction, .. } => CliError::Refused(format!(
                "{e}\npredicted: {}",
                serde_json::to_string(prediction).expect("serializable")
            )),
            ConstructionError::Group(_) => CliError::Invariant(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nilbound",
    version,
    about = "Order bounds, witness groups and exhaustive search for nilpotent transitive permutation groups"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper and lower bounds on log_p of the maximum order at degree p^k.
    Bound {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        c: u32,
    },
    /// Realize a group blueprint (JSON file, or `-` for stdin) and check it.
    Construct { input: PathBuf },
    /// Analyze a group given as JSON (file, or `-` for stdin).
    Analyze { input: PathBuf },
    /// Exhaustive search over the Sylow subgroup of Sym(p^k).
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        cmax: u32,
        /// Maximum number of subgroups to store.
        #[arg(long, env = "NILBOUND_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Keep every subgroup instead of one per conjugacy class.
        #[arg(long)]
        all_subgroups: bool,
    },
    /// Print one of the tables.
    Table(TableArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("which").required(true).args(["table1", "table2"])))]
pub struct TableArgs {
    /// F(k,c) for c <= 4 with a closed-form check column.
    #[arg(long)]
    table1: bool,
    /// log_p F_Nil(p^k, c) by exhaustive search, plus reference rows.
    #[arg(long)]
    table2: bool,
    #[arg(long, default_value_t = 20)]
    kmax: u32,
    /// Prime for the search table.
    #[arg(long, default_value_t = 2)]
    p: u64,
    #[arg(long, env = "NILBOUND_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

/// Everything `analyze` reports about a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub degree: usize,
    #[serde(with = "bignum")]
    pub order: BigUint,
    pub p: Option<u64>,
    pub log_p_order: Option<u32>,
    pub transitive: bool,
    pub regular: bool,
    /// `None` when the group is not nilpotent.
    pub class: Option<usize>,
    /// `None` when the center is out of reach.
    #[serde(with = "bignum::option")]
    pub center_order: Option<BigUint>,
    #[serde(with = "bignum::vec")]
    pub lower_central_orders: Vec<BigUint>,
}

impl Analysis {
    pub fn of(g: &PermGroup) -> Self {
        let order = g.order();
        // every prime factor of the order is at most the degree
        let p = (2..=g.degree() as u64)
            .filter(|&q| is_prime(q))
            .find(|&q| exact_log(&order, q).is_some_and(|e| e > 0));
        let series = g.lower_central_series();
        Analysis {
            degree: g.degree(),
            log_p_order: p.and_then(|p| exact_log(&order, p)),
            p,
            order,
            transitive: g.is_transitive(),
            regular: g.is_regular(),
            class: series.class,
            center_order: g.center().ok().map(|z| z.order()),
            lower_central_orders: series.orders(),
        }
    }
}

#[derive(Debug, Serialize)]
struct ConstructOutput {
    blueprint: GroupBlueprint,
    prediction: Prediction,
    observed: Observed,
    group: GroupJson,
}

#[derive(Debug, Serialize)]
struct SearchOutput<'a> {
    #[serde(flatten)]
    row: &'a SearchRow,
    audit: &'a AuditReport,
}

#[derive(Debug, Serialize)]
struct Table1Entry {
    k: u32,
    c: u32,
    #[serde(with = "bignum")]
    f_upper: BigUint,
    #[serde(with = "bignum")]
    f_closed: BigUint,
    agrees: bool,
}

#[derive(Debug, Serialize)]
struct Table2Row {
    p: u64,
    k: u32,
    exponents: Vec<u32>,
    status: &'static str,
}

const TABLE2_COLUMNS: u32 = 16;

/// Runs one invocation and returns the text to print.
pub fn run<I, T>(args: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => return Ok(e.to_string()),
        Err(e) => {
            let text = e.to_string();
            let text = text.strip_prefix("error: ").unwrap_or(&text);
            return Err(CliError::Usage(text.to_string()));
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Bound { p, k, c } => cmd_bound(*p, *k, *c, cli.json),
        Command::Construct { input } => cmd_construct(&read_input(input)?, cli.json),
        Command::Analyze { input } => cmd_analyze(&read_input(input)?, cli.json),
        Command::Search {
            p,
            k,
            cmax,
            budget,
            all_subgroups,
        } => {
            let dedupe = if *all_subgroups {
                Dedupe::Set
            } else {
                Dedupe::Conjugacy
            };
            cmd_search(*p, *k, *cmax, *budget, dedupe, cli.json)
        }
        Command::Table(t) if t.table1 => cmd_table1(t.kmax, cli.json),
        Command::Table(t) => cmd_table2(t.p, t.budget, cli.json),
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    match run(std::env::args_os()) {
        Ok(text) => {
            let mut out = io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.to_string().trim_end());
            e.exit_code()
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn cmd_bound(p: u64, k: u32, c: u32, json: bool) -> Result<String, CliError> {
    let r = BoundReport::new(p, k, c)?;
    if json {
        return Ok(to_json(&r));
    }
    let opt = |v: &Option<BigUint>| v.as_ref().map_or("-".to_string(), |x| x.to_string());
    let parts: Vec<String> = r.witness_composition.parts().iter().map(u32::to_string).collect();
    let mut s = String::new();
    writeln!(s, "exponents of p = {p} at degree p^{k}, class <= {c}").unwrap();
    writeln!(s, "  upper bound F(k,c)      {}", r.f_upper).unwrap();
    writeln!(s, "  maximizing composition  ({})", parts.join(", ")).unwrap();
    writeln!(s, "  elementary upper bound  {}", r.elementary).unwrap();
    writeln!(s, "  exact at class two      {}", opt(&r.class2_exact)).unwrap();
    writeln!(s, "  lower bound (c | k)     {}", opt(&r.binomial_lower)).unwrap();
    writeln!(
        s,
        "  leading coefficient     {}/{}",
        r.asymptotic_coefficient.num, r.asymptotic_coefficient.den
    )
    .unwrap();
    Ok(s)
}

pub fn cmd_construct(input: &str, json: bool) -> Result<String, CliError> {
    let blueprint: GroupBlueprint =
        serde_json::from_str(input).map_err(|e| CliError::Usage(format!("bad blueprint: {e}")))?;
    let prediction = blueprint.predict()?;
    let group = blueprint.realize()?;
    let observed = Observed::of(&group, prediction.p);
    let mismatches = observed.mismatches(&prediction);
    if !mismatches.is_empty() {
        return Err(CliError::Invariant(mismatches.join("; ")));
    }
    let out = ConstructOutput {
        blueprint,
        prediction,
        observed,
        group: group.to_json(),
    };
    if json {
        return Ok(to_json(&out));
    }
    let mut s = String::new();
    writeln!(s, "degree {}", out.observed.degree).unwrap();
    writeln!(s, "order {}", out.observed.order).unwrap();
    if let (Some(p), Some(e)) = (out.prediction.p, out.observed.log_p_order) {
        writeln!(s, "log_{p} order {e}").unwrap();
    }
    let class = out.observed.class.expect("checked against the prediction");
    let kind = if out.prediction.class_exact {
        "predicted"
    } else {
        "bound"
    };
    writeln!(s, "class {class} ({kind} {})", out.prediction.class_bound).unwrap();
    writeln!(s, "transitive {}", out.observed.transitive).unwrap();
    writeln!(s, "generators {}", out.group.generators.len()).unwrap();
    writeln!(s, "{}", serde_json::to_string(&out.group).expect("serializable")).unwrap();
    Ok(s)
}

/// Accepts a group JSON, or the output of `construct`.
fn parse_group(input: &str) -> Result<PermGroup, CliError> {
    let value: Value =
        serde_json::from_str(input).map_err(|e| CliError::Usage(format!("bad JSON: {e}")))?;
    let value = match value {
        Value::Object(mut map) if map.contains_key("group") => map.remove("group").unwrap(),
        v => v,
    };
    let json: GroupJson =
        serde_json::from_value(value).map_err(|e| CliError::Usage(format!("bad group: {e}")))?;
    PermGroup::from_json(&json).map_err(|e: GroupError| CliError::Usage(e.to_string()))
}

pub fn cmd_analyze(input: &str, json: bool) -> Result<String, CliError> {
    let g = parse_group(input)?;
    let a = Analysis::of(&g);
    if json {
        return Ok(to_json(&a));
    }
    let mut s = String::new();
    writeln!(s, "degree {}", a.degree).unwrap();
    writeln!(s, "order {}", a.order).unwrap();
    if let (Some(p), Some(e)) = (a.p, a.log_p_order) {
        writeln!(s, "log_{p} order {e}").unwrap();
    }
    writeln!(s, "transitive {}", a.transitive).unwrap();
    writeln!(s, "regular {}", a.regular).unwrap();
    match a.class {
        Some(c) => writeln!(s, "class {c}").unwrap(),
        None => writeln!(s, "class: not nilpotent").unwrap(),
    }
    match &a.center_order {
        Some(z) => writeln!(s, "center order {z}").unwrap(),
        None => writeln!(s, "center order: too large to compute").unwrap(),
    }
    let orders: Vec<String> = a.lower_central_orders.iter().map(|o| o.to_string()).collect();
    writeln!(s, "lower central series orders {}", orders.join(" > ")).unwrap();
    Ok(s)
}

pub fn cmd_search(
    p: u64,
    k: u32,
    c_max: u32,
    budget: usize,
    dedupe: Dedupe,
    json: bool,
) -> Result<String, CliError> {
    let options = EnumerateOptions {
        dedupe,
        max_count: budget,
    };
    let row = fnil_exact_with(p, k, c_max, &options)?;
    let audit = audit_row(&row);
    if !audit.passed() {
        let failures: Vec<&str> = audit.failures().map(|c| c.detail.as_str()).collect();
        return Err(CliError::Invariant(failures.join("; ")));
    }
    if json {
        return Ok(to_json(&SearchOutput {
            row: &row,
            audit: &audit,
        }));
    }
    let mut s = String::new();
    let exps: Vec<String> = row.exponents.iter().map(u32::to_string).collect();
    writeln!(s, "log_{p} F_Nil({p}^{k}, c) for c = 1..{c_max}: {}", exps.join(" ")).unwrap();
    for (c, w) in row.witnesses.iter().enumerate() {
        writeln!(
            s,
            "  c={}: {}",
            c + 1,
            serde_json::to_string(w).expect("serializable")
        )
        .unwrap();
    }
    writeln!(s, "audit: {} checks passed", audit.checks.len()).unwrap();
    Ok(s)
}

pub fn cmd_table1(kmax: u32, json: bool) -> Result<String, CliError> {
    if kmax == 0 {
        return Err(CliError::Usage("kmax must be positive".into()));
    }
    let mut entries = Vec::new();
    for k in 1..=kmax {
        for c in 1..=4 {
            let upper = f_upper(k, c)?.value;
            let closed = f_closed(k, c)?;
            entries.push(Table1Entry {
                k,
                c,
                agrees: upper == closed,
                f_upper: upper,
                f_closed: closed,
            });
        }
    }
    if let Some(bad) = entries.iter().find(|e| !e.agrees) {
        return Err(CliError::Invariant(format!(
            "F({},{}) = {} but the closed form gives {}",
            bad.k, bad.c, bad.f_upper, bad.f_closed
        )));
    }
    if json {
        return Ok(to_json(&entries));
    }
    let width = entries
        .iter()
        .map(|e| e.f_upper.to_string().len())
        .max()
        .unwrap_or(1)
        .max(6);
    let mut s = String::new();
    write!(s, "{:>4} |", "k\\c").unwrap();
    for c in 1..=4 {
        write!(s, " {c:>width$}").unwrap();
    }
    writeln!(s, " | closed form").unwrap();
    for row in entries.chunks(4) {
        write!(s, "{:>4} |", row[0].k).unwrap();
        for e in row {
            write!(s, " {:>width$}", e.f_upper.to_string()).unwrap();
        }
        writeln!(s, " | agrees").unwrap();
    }
    Ok(s)
}

pub fn cmd_table2(p: u64, budget: usize, json: bool) -> Result<String, CliError> {
    let options = EnumerateOptions {
        dedupe: Dedupe::Conjugacy,
        max_count: budget,
    };
    let mut rows = Vec::new();
    for k in 1.. {
        if p.checked_pow(k).is_none_or(|d| d > crate::search::EXHAUSTIVE_DEGREE_LIMIT) {
            break;
        }
        let row = fnil_exact_with(p, k, TABLE2_COLUMNS, &options)?;
        let audit = audit_row(&row);
        if !audit.passed() {
            let failures: Vec<&str> = audit.failures().map(|c| c.detail.as_str()).collect();
            return Err(CliError::Invariant(failures.join("; ")));
        }
        rows.push(Table2Row {
            p,
            k,
            exponents: row.exponents,
            status: "exact",
        });
    }
    let next = rows.len() as u32 + 1;
    for k in next.. {
        let Some(r) = reference_row(p, k) else { break };
        rows.push(Table2Row {
            p,
            k,
            exponents: r.exponents.to_vec(),
            status: "reference (not recomputed)",
        });
    }
    if json {
        return Ok(to_json(&rows));
    }
    let mut s = String::new();
    writeln!(s, "log_{p} F_Nil({p}^k, c)").unwrap();
    write!(s, "{:>4} |", "k\\c").unwrap();
    for c in 1..=TABLE2_COLUMNS {
        write!(s, " {c:>3}").unwrap();
    }
    writeln!(s).unwrap();
    for r in &rows {
        write!(s, "{:>4} |", r.k).unwrap();
        for e in &r.exponents {
            write!(s, " {e:>3}").unwrap();
        }
        writeln!(s, "   {}", r.status).unwrap();
    }
    Ok(s)
}
