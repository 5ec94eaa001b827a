//! Command-line front end: structure tables, censuses, completability,
//! bases, model exports and reference-table reproduction.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use autotopism::tables::check_structure_table;
use autotopism::{
    basis_from_shape, candidate_sizes, census_up_to, completability_census, completability_census_by_class,
    count_autotopism_structures, count_completions, decode_solution, delta_full, enumerate_autotopism_structures,
    export_ideal, export_ip, homogeneous_basis, is_theta_completable, parastrophic_class_representatives,
    parse_assignment, reproduce, size_bounds, structure::cs_nm_table, Error, ExportOptions, Isotopism,
    IsotopismStructure, PartialLatinSquare, SearchOptions, ShapeMode, ShapeSet, Table, WeightedModel,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "autotopism", version, about = "Partial Latin squares invariant under an isotopism")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count admissible cycle structures for every order up to N.
    Structures(StructuresArgs),
    /// Count invariant partial Latin squares by size.
    Census(CensusArgs),
    /// Test whether a partial Latin square extends to an invariant Latin square.
    Complete(CompleteArgs),
    /// Count Θ-completable invariant squares by size.
    Ccensus(CcensusArgs),
    /// Build a basis of the invariant Latin squares.
    Basis(BasisArgs),
    /// Write the integer program or the polynomial system.
    Export(ExportArgs),
    /// Turn a solver assignment back into a square.
    Decode(DecodeArgs),
    /// Recompute a reference table and diff it cell by cell.
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct StructuresArgs {
    #[arg(long)]
    n: usize,
    /// Also list every admissible structure of order N.
    #[arg(long)]
    list: bool,
    /// Also list one representative per parastrophic class of order N.
    #[arg(long)]
    parastrophic: bool,
    #[arg(long)]
    json: bool,
}

/// Selects the isotopism, either explicitly or by cycle structure.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct ThetaSource {
    /// `α;β;γ` in cycle notation, e.g. "(12)(3);(12)(3);()". One component
    /// stands for an automorphism.
    #[arg(long)]
    theta: Option<String>,
    /// Cycle structure such as "2.1,2.1,1^3"; a canonical isotopism is used.
    #[arg(long)]
    z: Option<String>,
}

#[derive(Args)]
struct ThetaArgs {
    #[command(flatten)]
    source: ThetaSource,
    /// Degree of the explicit isotopism when it cannot be inferred.
    #[arg(long)]
    n: Option<usize>,
}

impl ThetaArgs {
    fn isotopism(&self) -> Result<Isotopism, CliError> {
        match (&self.source.theta, &self.source.z) {
            (Some(spec), _) => Ok(Isotopism::parse(spec, self.n)?),
            (None, Some(z)) => {
                let z: IsotopismStructure = z.parse()?;
                if let Some(n) = self.n {
                    if n != z.degree() {
                        return Err(Error::DegreeMismatch { expected: n, found: z.degree() }.into());
                    }
                }
                Ok(Isotopism::canonical(&z))
            }
            (None, None) => unreachable!("clap requires one source"),
        }
    }
}

#[derive(Args)]
struct BudgetArgs {
    /// Worker threads (0 = all cores). Results do not depend on it.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    max_nodes: Option<u64>,
    #[arg(long)]
    timeout_secs: Option<f64>,
}

impl BudgetArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            jobs: self.jobs,
            max_nodes: self.max_nodes,
            timeout: self.timeout_secs.map(Duration::from_secs_f64),
        }
    }
}

#[derive(Args)]
#[group(multiple = false)]
struct FormatArgs {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct CensusArgs {
    #[command(flatten)]
    theta: ThetaArgs,
    /// Print the size bounds and candidate sizes instead of counting.
    #[arg(long)]
    sizes: bool,
    /// Only count full Latin squares.
    #[arg(long, conflicts_with = "sizes")]
    full_only: bool,
    /// Skip sizes above this bound.
    #[arg(long)]
    max_size: Option<usize>,
    #[command(flatten)]
    format: FormatArgs,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct CompleteArgs {
    #[command(flatten)]
    theta: ThetaArgs,
    /// Square as a text grid or JSON; `-` reads stdin.
    #[arg(long)]
    pls: PathBuf,
    /// Count all completions instead of stopping at the first.
    #[arg(long)]
    count: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct CcensusArgs {
    #[command(flatten)]
    theta: ThetaArgs,
    /// Check one square per isotopism class (order ≤ 3 only).
    #[arg(long)]
    by_class: bool,
    #[command(flatten)]
    format: FormatArgs,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct BasisArgs {
    #[command(flatten)]
    theta: ThetaArgs,
    /// 1-based pairs such as "1,1;1,2". Defaults to fixed rows × fixed columns.
    #[arg(long)]
    shape: Option<String>,
    #[arg(long, default_value = "rc")]
    mode: String,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Lp,
    Ideal,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    theta: ThetaArgs,
    /// Required size of the square.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value_t = ExportFormat::Lp)]
    format: ExportFormat,
    /// One symmetry equation per triple instead of one chain per orbit.
    #[arg(long)]
    raw: bool,
    /// Omit symmetry generators that are identically zero.
    #[arg(long)]
    skip_trivial: bool,
    /// Objective weights, one `r c s w` line each (1-based).
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Output file; stdout when absent or `-`.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    n: usize,
    /// `name value` lines; `-` reads stdin.
    file: PathBuf,
    /// Accept the all-zero assignment as the empty square.
    #[arg(long)]
    allow_empty: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ReproduceArgs {
    /// 1, 2, 3 or 5.
    #[arg(long)]
    table: u32,
    /// Exit successfully when the only differences are listed errata.
    #[arg(long)]
    accept_errata: bool,
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(String),
    Mismatch(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::BudgetExceeded { .. }) => 3,
            CliError::Lib(
                Error::Parse(_)
                | Error::DegreeMismatch { .. }
                | Error::InvalidArgument(_)
                | Error::NotAutotopismStructure(_)
                | Error::NotInvariant
                | Error::EmptySquare
                | Error::LatinViolation(_)
                | Error::ShapeNotInvariant,
            ) => 2,
            CliError::Io(_) => 2,
            CliError::Mismatch(_) => 4,
            CliError::Lib(_) => 1,
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn cmd_structures(a: &StructuresArgs, out: &mut String) -> Result<(), CliError> {
    if a.n == 0 || a.n > 63 {
        return Err(Error::InvalidArgument(format!("--n must be in 1..=63, got {}", a.n)).into());
    }
    let table = cs_nm_table(a.n);
    let mut rows = Vec::new();
    for n in 1..=a.n {
        let count = count_autotopism_structures(n)?;
        let cs: Vec<String> = table[n][1..=n / 2].iter().map(|c| c.to_string()).collect();
        if a.json {
            rows.push(serde_json::json!({
                "n": n,
                "cs_nm": cs,
                "structures": count.structures.to_string(),
                "classes": count.classes.to_string(),
            }));
        } else {
            out.push_str(&format!("{n}: {}, {}", count.structures, count.classes));
            if !cs.is_empty() {
                out.push_str(&format!("  (|CS_n,m| for m=1..{}: {})", n / 2, cs.join(", ")));
            }
            out.push('\n');
        }
    }
    if a.json {
        let mut doc = serde_json::json!({ "rows": rows });
        if a.list {
            let list: Vec<String> = enumerate_autotopism_structures(a.n).iter().map(|z| z.to_string()).collect();
            doc["structures"] = list.into();
        }
        if a.parastrophic {
            let reps: Vec<String> = parastrophic_class_representatives(a.n).iter().map(|z| z.to_string()).collect();
            doc["classes"] = reps.into();
        }
        out.push_str(&json(&doc));
        out.push('\n');
        return Ok(());
    }
    if a.list {
        out.push_str(&format!("structures of order {}:\n", a.n));
        for z in enumerate_autotopism_structures(a.n) {
            out.push_str(&format!("({z})\n"));
        }
    }
    if a.parastrophic {
        out.push_str(&format!("parastrophic class representatives of order {}:\n", a.n));
        for z in parastrophic_class_representatives(a.n) {
            out.push_str(&format!("({z})\n"));
        }
    }
    Ok(())
}

fn size_table(
    title: &str,
    per_size: &std::collections::BTreeMap<usize, num_bigint::BigUint>,
    total: &num_bigint::BigUint,
) -> String {
    let mut s = format!("{title}\n{:>6}  count\n", "size");
    for (k, v) in per_size {
        s.push_str(&format!("{k:>6}  {v}\n"));
    }
    s.push_str(&format!("{:>6}  {total}\n", "total"));
    s
}

fn cmd_census(a: &CensusArgs, out: &mut String) -> Result<(), CliError> {
    let t = a.theta.isotopism()?;
    let z = t.structure();
    let opts = a.budget.options();
    if a.sizes {
        let b = size_bounds(&z)?;
        let sizes: Vec<String> = candidate_sizes(&z)?.iter().map(|s| s.to_string()).collect();
        if a.format.json {
            let doc =
                serde_json::json!({ "structure": z.to_string(), "lower": b.lower, "upper": b.upper, "sizes": sizes });
            out.push_str(&json(&doc));
            out.push('\n');
        } else {
            out.push_str(&format!("({z}): sizes {}..={}; candidates {}\n", b.lower, b.upper, sizes.join(" ")));
        }
        return Ok(());
    }
    if a.full_only {
        let d = delta_full(&t, &opts)?;
        if a.format.json {
            out.push_str(&json(&serde_json::json!({ "structure": z.to_string(), "latin_squares": d.to_string() })));
            out.push('\n');
        } else {
            out.push_str(&format!("{d}\n"));
        }
        return Ok(());
    }
    let n2 = t.degree() * t.degree();
    let r = census_up_to(&t, a.max_size.unwrap_or(n2).min(n2), &opts)?;
    if a.format.json {
        out.push_str(&json(&r));
        out.push('\n');
    } else if a.format.csv {
        out.push_str(&r.to_csv());
    } else {
        out.push_str(&size_table(&format!("invariant squares for Θ = {} ({z})", t), &r.per_size, &r.total));
    }
    Ok(())
}

fn cmd_complete(a: &CompleteArgs, out: &mut String) -> Result<(), CliError> {
    let t = a.theta.isotopism()?;
    let p = PartialLatinSquare::parse_any(&read_input(&a.pls)?)?;
    let opts = a.budget.options();
    if a.count {
        let c = count_completions(&t, &p, &opts)?;
        let verdict = if c > 0u32.into() { "Θ-completable" } else { "not Θ-completable" };
        out.push_str(&format!("{verdict}, {c} completions\n"));
    } else if is_theta_completable(&t, &p, &opts)? {
        out.push_str("Θ-completable\n");
    } else {
        out.push_str("not Θ-completable\n");
    }
    Ok(())
}

fn cmd_ccensus(a: &CcensusArgs, out: &mut String) -> Result<(), CliError> {
    let t = a.theta.isotopism()?;
    let opts = a.budget.options();
    let r = if a.by_class { completability_census_by_class(&t, &opts)? } else { completability_census(&t, &opts)? };
    if a.format.json {
        out.push_str(&json(&r));
        out.push('\n');
    } else if a.format.csv {
        out.push_str(&r.to_csv());
    } else {
        out.push_str(&size_table(
            &format!("Θ-completable squares for Θ = {} ({})", t, r.structure),
            &r.per_size,
            &r.total,
        ));
    }
    Ok(())
}

fn parse_shape(text: &str, n: usize, mode: ShapeMode) -> Result<ShapeSet, CliError> {
    let mut pairs = Vec::new();
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let nums: Vec<usize> = item
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad shape pair {item:?}")))?;
        match nums[..] {
            [a, b] if a >= 1 && b >= 1 => pairs.push((a - 1, b - 1)),
            _ => return Err(Error::Parse(format!("bad shape pair {item:?}")).into()),
        }
    }
    Ok(ShapeSet::new(n, pairs, mode)?)
}

fn cmd_basis(a: &BasisArgs, out: &mut String) -> Result<(), CliError> {
    let t = a.theta.isotopism()?;
    let opts = a.budget.options();
    let basis = match &a.shape {
        Some(text) => basis_from_shape(&t, &parse_shape(text, t.degree(), a.mode.parse()?)?, &opts)?,
        None => homogeneous_basis(&t, &opts)?,
    };
    if a.json {
        out.push_str(&json(&basis));
        out.push('\n');
    } else {
        out.push_str(&format!(
            "{} elements, {}homogeneous, {} invariant Latin squares\n\n",
            basis.len(),
            if basis.homogeneous { "" } else { "not " },
            basis.total()
        ));
        out.push_str(&basis.to_text());
    }
    Ok(())
}

fn read_weights(path: &Path, mut model: WeightedModel) -> Result<WeightedModel, CliError> {
    for (i, line) in read_input(path)?.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        let bad = || CliError::Lib(Error::Parse(format!("weights line {}: expected `r c s w`", i + 1)));
        if f.len() != 4 {
            return Err(bad());
        }
        let idx: Vec<usize> = f[..3].iter().map(|x| x.parse::<usize>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        if idx.contains(&0) {
            return Err(bad());
        }
        let w: f64 = f[3].parse().map_err(|_| bad())?;
        model = model.with_weight([idx[0] - 1, idx[1] - 1, idx[2] - 1], w)?;
    }
    Ok(model)
}

fn cmd_export(a: &ExportArgs, out: &mut String) -> Result<(), CliError> {
    let t = a.theta.isotopism()?;
    let mut model = WeightedModel::new(t);
    if let Some(m) = a.m {
        model = model.with_size(m)?;
    }
    if let Some(w) = &a.weights {
        model = read_weights(w, model)?;
    }
    let opts = ExportOptions { raw_symmetry: a.raw, skip_trivial: a.skip_trivial };
    let (text, summary) = match a.format {
        ExportFormat::Lp => {
            let r = export_ip(&model, opts);
            let s = format!("{} constraint rows, {} binary variables", r.rows, r.variables);
            (r.text, s)
        }
        ExportFormat::Ideal => {
            let r = export_ideal(&model, opts)?;
            let s = format!("{} generators in {} variables", r.rows, r.variables);
            (r.text, s)
        }
    };
    match &a.out {
        Some(p) if p != Path::new("-") => {
            fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            out.push_str(&format!("{summary}\n"));
        }
        _ => {
            out.push_str(&text);
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn cmd_decode(a: &DecodeArgs, out: &mut String) -> Result<(), CliError> {
    let assignment = parse_assignment(&read_input(&a.file)?)?;
    let p = decode_solution(a.n, &assignment, a.allow_empty)?;
    if a.json {
        out.push_str(&p.to_json());
        out.push('\n');
    } else {
        out.push_str(&p.to_text());
    }
    Ok(())
}

fn cmd_reproduce(a: &ReproduceArgs, out: &mut String) -> Result<(), CliError> {
    let table = Table::from_number(a.table)?;
    let check = match table {
        Table::Structures => check_structure_table(17)?,
        _ => reproduce(table, &a.budget.options())?,
    };
    if a.json {
        out.push_str(&json(&check));
        out.push('\n');
    } else {
        out.push_str(&format!("{check}\n"));
    }
    if check.is_match() || (a.accept_errata && check.is_match_except_errata()) {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("table {} differs from the reference", a.table)))
    }
}

fn run(cli: &Cli, out: &mut String) -> Result<(), CliError> {
    match &cli.command {
        Command::Structures(a) => cmd_structures(a, out),
        Command::Census(a) => cmd_census(a, out),
        Command::Complete(a) => cmd_complete(a, out),
        Command::Ccensus(a) => cmd_ccensus(a, out),
        Command::Basis(a) => cmd_basis(a, out),
        Command::Export(a) => cmd_export(a, out),
        Command::Decode(a) => cmd_decode(a, out),
        Command::Reproduce(a) => cmd_reproduce(a, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Lib(err) => eprintln!("error: {err}"),
                CliError::Io(msg) | CliError::Mismatch(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
