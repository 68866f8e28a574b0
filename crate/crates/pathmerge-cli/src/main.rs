use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pathmerge::aa::aa_merging_identity;
use pathmerge::blocks::{block_decomposition, check_blocks};
use pathmerge::codec::{decode, decode_identical, encode, MergingSequence};
use pathmerge::constructions::{bound_table, fixture, fixture_names, BoundQuery, ConstructionRecipe, Family};
use pathmerge::merge::find_mergings;
use pathmerge::network::MergeNetwork;
use pathmerge::reroute::{is_reroutable, residual_reroutable};
use pathmerge::search::{
    count_extremal_two_n, search_m, search_m_star, search_with_added_path, verify_known_table, EntryStatus, Limits,
    SearchOutcome,
};
use pathmerge::{dot, io, Error};

#[derive(Parser)]
#[command(name = "pathmerge", version, about = "Merging counts for groups of edge-disjoint paths")]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member or a named fixture.
    Gen(GenArgs),
    /// Report mergings, reroutability, walks and blocks of a network.
    Analyze(AnalyzeArgs),
    /// Exhaustive search for an extremal merging count.
    Search(SearchArgs),
    /// Count the non-isomorphic extremal (2,n)-graphs.
    Count(CountArgs),
    /// Closed-form lower and upper bounds.
    Bounds(BoundsArgs),
    /// Check the generators and the table of known values.
    Verify(VerifyArgs),
    /// Convert between JSON, sequence text and DOT.
    Export(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Seq,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, conflicts_with = "fixture", required_unless_present_any = ["fixture", "list"])]
    family: Option<String>,
    #[arg(long)]
    fixture: Option<String>,
    /// List families and fixtures.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Explicit parameter list, overriding --m, --k and --n.
    #[arg(long, value_delimiter = ',')]
    params: Vec<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct Input {
    /// JSON file, or `-` for standard input.
    #[arg(conflicts_with_all = ["fixture", "seq"], required_unless_present_any = ["fixture", "seq"])]
    path: Option<PathBuf>,
    #[arg(long)]
    fixture: Option<String>,
    /// A merging sequence such as "2 2 : (1,1) (2,1)".
    #[arg(long)]
    seq: Option<String>,
    /// Decode --seq with a shared source.
    #[arg(long)]
    identical: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchType {
    M,
    Mstar,
    Count,
    AddedPath,
}

#[derive(Args)]
struct LimitArgs {
    #[arg(long, default_value_t = Limits::default().max_nodes)]
    max_nodes: usize,
    #[arg(long, default_value_t = Limits::default().max_seconds)]
    max_seconds: u64,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits { max_nodes: self.max_nodes, max_seconds: self.max_seconds }
    }
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long = "type", value_enum)]
    kind: SearchType,
    /// Cuts, e.g. `2,3`; a single n for mstar and count; `1,2,2` for added-path.
    #[arg(long, value_delimiter = ',', required = true)]
    params: Vec<usize>,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, required_unless_present = "chain")]
    n: Option<usize>,
    #[arg(long, conflicts_with_all = ["star", "chain"])]
    m: Option<usize>,
    /// Shared-source bounds for two groups of cut n.
    #[arg(long)]
    star: bool,
    /// Shared-source bounds for these non-decreasing cuts.
    #[arg(long, value_delimiter = ',', conflicts_with = "n")]
    chain: Vec<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Skip the generator sweeps.
    #[arg(long)]
    table_only: bool,
    #[command(flatten)]
    limits: LimitArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum InFormat {
    Json,
    Seq,
}

#[derive(Args)]
struct ExportArgs {
    /// Input file, or `-` for standard input.
    input: PathBuf,
    /// Guessed from the content when absent.
    #[arg(long, value_enum)]
    from: Option<InFormat>,
    #[arg(long, value_enum)]
    to: Format,
    /// Decode sequence input with a shared source.
    #[arg(long)]
    identical: bool,
}

/// Failures, split by exit code.
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Gen(a) => gen(a),
        Command::Analyze(a) => analyze(a),
        Command::Search(a) => search(a),
        Command::Count(a) => count(a),
        Command::Bounds(a) => bounds(a),
        Command::Verify(a) => verify(a),
        Command::Export(a) => export(a),
    };
    let (text, code) = match result {
        Ok(text) => (text, 0),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
        Err(Failure::Check(text)) => (text, 2),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}

fn read_source(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_seq(text: &str, identical: bool) -> Result<MergeNetwork, Failure> {
    let seq: MergingSequence = text.trim().parse()?;
    Ok(if identical { decode_identical(&seq)? } else { decode(&seq)? })
}

fn render(net: &MergeNetwork, format: Format, native: Option<MergingSequence>) -> Outcome {
    Ok(match format {
        Format::Json => io::to_json(net) + "\n",
        Format::Dot => dot::to_dot(net),
        Format::Seq => match native {
            Some(s) => format!("{s}\n"),
            None => format!("{}\n", encode(net)?),
        },
    })
}

fn gen(a: &GenArgs) -> Outcome {
    if a.list {
        let mut out = String::from("families: two-n e f h ones-two-chain ones-two-grid ones-n one-two-n mn-lower concat-fg back-to-back shifted concat-chain\nfixtures:");
        for f in fixture_names() {
            write!(out, " {f}").unwrap();
        }
        out.push('\n');
        return Ok(out);
    }
    if let Some(name) = &a.fixture {
        return render(&fixture(name)?, a.format, None);
    }
    let family: Family = a.family.as_deref().unwrap().parse().map_err(|e| Failure::Input(format!("--family: {e}")))?;
    let params = if a.params.is_empty() { [a.m, a.k, a.n].into_iter().flatten().collect() } else { a.params.clone() };
    let recipe = ConstructionRecipe::new(family, &params).map_err(|e| Failure::Input(format!("--m/--k/--n/--params: {e}")))?;
    render(&recipe.build()?, a.format, recipe.sequence())
}

fn load(input: &Input) -> Result<MergeNetwork, Failure> {
    if let Some(name) = &input.fixture {
        return Ok(fixture(name)?);
    }
    if let Some(text) = &input.seq {
        return parse_seq(text, input.identical).map_err(|e| match e {
            Failure::Input(m) => Failure::Input(format!("--seq: {m}")),
            other => other,
        });
    }
    let path = input.path.as_ref().unwrap();
    io::from_json(&read_source(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn analyze(a: &AnalyzeArgs) -> Outcome {
    let net = load(&a.input)?;
    let dag = net.dag();
    let mergings = find_mergings(&net);
    let semi = is_reroutable(&net);
    let residual = residual_reroutable(&net);
    let aa = aa_merging_identity(&net);
    let blocks = block_decomposition(&net);
    if a.json {
        let mut v = serde_json::json!({
            "mergings": mergings.len(),
            "reroutable": semi,
            "residual_reroutable": residual,
            "cuts": net.cuts(),
            "mode": net.mode(),
            "merging_list": mergings.iter().map(|m| serde_json::json!({
                "head": dag.name(m.head), "tail": dag.name(m.tail), "run": m.run, "participants": m.participants,
            })).collect::<Vec<_>>(),
        });
        if let Ok(id) = &aa {
            v["aa"] = serde_json::json!({
                "lengths": id.walks.iter().map(|w| w.length).collect::<Vec<_>>(),
                "total": id.total_length, "offset": id.offset, "holds": id.holds, "all_positive": id.all_positive,
            });
        }
        if let Ok(bd) = &blocks {
            v["blocks"] = serde_json::json!({ "x": bd.x, "y": bd.y, "z": bd.z, "check": check_blocks(&net, bd)? });
        }
        return Ok(serde_json::to_string_pretty(&v).unwrap() + "\n");
    }
    let mut out = format!("reroutable: {semi}; mergings: {}\n", mergings.len());
    let cuts: Vec<String> = net.cuts().iter().map(|c| c.to_string()).collect();
    writeln!(out, "cuts: ({}), {:?} sources", cuts.join(","), net.mode()).unwrap();
    writeln!(out, "residual check: {}", if residual { "reroutable" } else { "non-reroutable" }).unwrap();
    for (k, m) in mergings.iter().enumerate() {
        let who: Vec<String> = m.participants.iter().map(|(g, i)| format!("{}.{}", g + 1, i + 1)).collect();
        writeln!(out, "merging {}: {} -> {} over {} edge(s), paths {}", k + 1, dag.name(m.head), dag.name(m.tail), m.run.len(), who.join(" ")).unwrap();
    }
    match &aa {
        Ok(id) => {
            let lengths: Vec<String> = id.walks.iter().map(|w| w.length.to_string()).collect();
            writeln!(
                out,
                "aa lengths: {}; ({} - {})/2 = {}; identity {}",
                lengths.join(" "),
                id.total_length,
                id.offset,
                id.rhs(),
                if id.holds { "holds" } else { "fails" }
            )
            .unwrap();
        }
        Err(e) => writeln!(out, "aa: not available ({e})").unwrap(),
    }
    match &blocks {
        Ok(bd) => {
            let c = check_blocks(&net, bd)?;
            writeln!(
                out,
                "blocks: x={} y={} z={}; n=x-(y-z) {}; count=2x-(y-z) {}; x>=2y-z {}; count<=3n-1 {}",
                bd.x, bd.y, bd.z, c.paths_identity, c.count_identity, c.x_at_least_2y_minus_z, c.within_bound
            )
            .unwrap();
        }
        Err(e) => writeln!(out, "blocks: not available ({e})").unwrap(),
    }
    Ok(out)
}

fn outcome_json(o: &SearchOutcome) -> String {
    serde_json::to_string_pretty(&serde_json::to_value(o).unwrap()).unwrap() + "\n"
}

fn search(a: &SearchArgs) -> Outcome {
    let limits = a.limits.limits();
    let p = &a.params;
    let bad = |what: &str| Failure::Input(format!("--params: {what}"));
    let o = match a.kind {
        SearchType::M => match p[..] {
            [m, n] => search_m(m, n, limits)?,
            _ => return Err(bad("expected m,n")),
        },
        SearchType::Mstar => match p[..] {
            [n] | [n, _] if p.iter().all(|&x| x == n) => search_m_star(n, limits)?,
            _ => return Err(bad("expected n")),
        },
        SearchType::Count => match p[..] {
            [n] => count_extremal_two_n(n, limits)?,
            _ => return Err(bad("expected n")),
        },
        SearchType::AddedPath => {
            let mut cuts = p.clone();
            cuts.sort_unstable();
            if cuts.len() < 3 || cuts[..cuts.len() - 2].iter().any(|&c| c != 1) {
                return Err(bad("expected ones followed by two cuts, e.g. 1,2,2"));
            }
            let (m, n) = (cuts[cuts.len() - 2], cuts[cuts.len() - 1]);
            search_with_added_path(m, n, cuts.len() - 2, limits)?
        }
    };
    if !o.complete {
        eprintln!("warning: limits reached; the value is a lower bound");
    }
    Ok(outcome_json(&o))
}

fn count(a: &CountArgs) -> Outcome {
    let o = count_extremal_two_n(a.n, a.limits.limits())?;
    if !o.complete {
        eprintln!("warning: limits reached; the count may be short");
    }
    Ok(outcome_json(&o))
}

fn bounds(a: &BoundsArgs) -> Outcome {
    let query = if !a.chain.is_empty() {
        BoundQuery::MStarChain { cuts: a.chain.clone() }
    } else if a.star {
        BoundQuery::MStar { n: a.n.unwrap() }
    } else {
        let n = a.n.unwrap();
        BoundQuery::M { m: a.m.unwrap_or(n), n }
    };
    let t = bound_table(query)?;
    if a.json {
        return Ok(serde_json::to_string_pretty(&serde_json::to_value(&t).unwrap()).unwrap() + "\n");
    }
    let upper = t.upper.map_or("none".to_string(), |u| u.to_string());
    let mut out = format!("lower {} upper {upper}\n", t.lower);
    for f in &t.formulas {
        writeln!(out, "  {f}").unwrap();
    }
    Ok(out)
}

fn sweep(out: &mut String) -> bool {
    let mut ok = true;
    let mut line = |name: String, pass: bool, detail: String| {
        ok &= pass;
        writeln!(out, "{} {name}: {detail}", if pass { "PASS" } else { "FAIL" }).unwrap();
    };
    let cases: Vec<(Family, Vec<Vec<usize>>)> = vec![
        (Family::TwoN, (1..=20).map(|n| vec![n]).collect()),
        (Family::E, (1..=8).map(|n| vec![n]).collect()),
        (Family::F, (1..=8).map(|n| vec![n]).collect()),
        (Family::H, (1..=8).map(|n| vec![n]).collect()),
        (Family::MnLower, (1..=6).flat_map(|m| (m..=6).map(move |n| vec![m, n])).collect()),
        (Family::OnesTwoChain, (1..=10).map(|k| vec![k]).collect()),
        (Family::OnesTwoGrid, (1..=10).map(|k| vec![k]).collect()),
        (Family::OnesN, (1..=6).flat_map(|k| (1..=6).map(move |n| vec![k, n])).collect()),
        (Family::OneTwoN, (4..=8).map(|n| vec![n]).collect()),
    ];
    for (family, params) in cases {
        let mut bad = Vec::new();
        for p in &params {
            let recipe = ConstructionRecipe::new(family, p).expect("sweep parameters are valid");
            let built = recipe.build();
            let good = built.as_ref().is_ok_and(|net| {
                pathmerge::merge::count_mergings(net) == recipe.expected_mergings && is_reroutable(net) != recipe.expected_nonreroutable
            });
            if !good {
                bad.push(format!("{p:?}"));
            }
        }
        let detail = if bad.is_empty() { format!("{} instances", params.len()) } else { format!("mismatch at {}", bad.join(" ")) };
        line(format!("family {family:?}"), bad.is_empty(), detail);
    }
    ok
}

fn verify(a: &VerifyArgs) -> Outcome {
    let mut out = String::new();
    let mut ok = true;
    if !a.table_only {
        ok &= sweep(&mut out);
    }
    let report = verify_known_table(a.limits.limits());
    for e in &report.entries {
        let found = e.found.map_or("-".into(), |v| v.to_string());
        let status = serde_json::to_value(e.status).unwrap();
        let tag = if e.status == EntryStatus::Mismatch { "FAIL" } else { "PASS" };
        writeln!(out, "{tag} {} expected {} found {found} [{}] {}", e.name, e.expected, status.as_str().unwrap(), e.note).unwrap();
    }
    ok &= report.ok();
    if ok {
        Ok(out)
    } else {
        Err(Failure::Check(out))
    }
}

fn export(a: &ExportArgs) -> Outcome {
    let text = read_source(&a.input)?;
    let from = a.from.unwrap_or(if text.trim_start().starts_with('{') { InFormat::Json } else { InFormat::Seq });
    let net = match from {
        InFormat::Json => io::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", a.input.display())))?,
        InFormat::Seq => parse_seq(&text, a.identical).map_err(|e| match e {
            Failure::Input(m) => Failure::Input(format!("{}: {m}", a.input.display())),
            other => other,
        })?,
    };
    render(&net, a.to, None)
}
