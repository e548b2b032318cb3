//! Command-line front end. [`dispatch`] does all the work and returns the
//! exit code with the text to print, so tests can drive it without a
//! subprocess.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hyperarr::derivations::{
    basis_even_pair, basis_thm44, basis_uneven_pair, rank2_multiarrangement, saito_check, Derivation,
};
use hyperarr::digraph::{row_walk, WeightTuple};
use hyperarr::families::{n_ish_b, FamilySpec, GRAMMAR};
use hyperarr::freeness::{
    flag_accurate_certify_with, free_certify_with, replay, Certificate, FlagStatus, FreeStatus, Multiarrangement,
    RuleOptions,
};
use hyperarr::poset::{charpoly, ss_exponents, supersolvable};
use hyperarr::quasipoly::{characteristic_quasipoly_with, count_complement_with, report_of, QuasiConfig};
use hyperarr::scan::{conjecture_scan, forms_scan, shi_ish_search};
use hyperarr::{Arrangement, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hyperarr", version, about = "Exact computations on integral hyperplane arrangements")]
struct Cli {
    /// Emit JSON (JSON-lines for scans).
    #[arg(long, global = true)]
    json: bool,
    /// Point budget per modulus when counting.
    #[arg(long, global = true, value_name = "PTS")]
    budget: Option<u64>,
    /// Smallest modulus used for quasi-polynomial sampling.
    #[arg(long, global = true)]
    qmin: Option<u64>,
    /// Extra consecutive moduli on which to check a quasi-polynomial.
    #[arg(long, global = true)]
    window: Option<u64>,
    /// Nesting budget for deletion steps in freeness proofs.
    #[arg(long, global = true)]
    depth: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    /// Cone the arrangement first.
    #[arg(long)]
    cone: bool,
    /// Read the arrangement from a JSON file instead.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Family name and parameters, e.g. `descB l=2 m=1 p=2 k=1`.
    family: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the hyperplanes.
    Build(FamilyArgs),
    /// Characteristic polynomial, factored over the integers where possible.
    Charpoly(FamilyArgs),
    /// Constituents of the characteristic quasi-polynomial and the samples behind them.
    Quasipoly(FamilyArgs),
    /// lcm period, minimum period and whether the period collapses.
    Periods(FamilyArgs),
    /// Supersolvability of the arrangement (coned if affine).
    Ss(FamilyArgs),
    /// Freeness certificate (coned if affine).
    Free(FamilyArgs),
    /// Flag-accuracy certificate (coned if affine).
    Flag(FamilyArgs),
    /// Exponents of a certified free arrangement (coned if affine).
    Exponents(FamilyArgs),
    /// Check an explicit basis of logarithmic derivations by Saito's criterion.
    SaitoVerify(SaitoArgs),
    /// Exhaustive scans over upward digraphs.
    #[command(subcommand)]
    Scan(ScanCmd),
    /// Walk a row of the type B descendant matrix by coking elimination.
    Rowwalk {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: usize,
    },
    /// Search the arrangements between Cox(B3) and Ish(B3) for the
    /// characteristic polynomial of Shi(B3) without x1 = 1.
    #[command(name = "counterexample-1-3")]
    Counterexample13,
    /// Re-run the invocation recorded in a JSON output and compare.
    Replay { file: PathBuf },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SaitoArgs {
    /// Basis for the cone of the N-Ish arrangement with N_i = [-m_i, m_i].
    #[arg(long, value_delimiter = ',')]
    m: Option<Vec<usize>>,
    /// Rank-2 basis for multiplicities (n1, n2, 1, 1) with uneven sizes.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pair: Option<Vec<usize>>,
    /// Rank-2 basis for multiplicities (n, n, 1, 1) with n even.
    #[arg(long)]
    even: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum ScanCmd {
    /// Compare chi of the deleted Shi and Ish arrangements of every digraph.
    Conjecture {
        #[arg(long)]
        l: usize,
    },
    /// Check digraph forms against obstructions, supersolvability and freeness.
    Forms {
        #[arg(long)]
        l: usize,
        /// Certify the cones of every n-th digraph only.
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
}

struct Ctx {
    json: bool,
    invocation: Vec<String>,
    quasi: QuasiConfig,
    window: Option<u64>,
    rules: RuleOptions,
}

struct Out {
    code: i32,
    text: String,
}

impl Out {
    fn ok(text: String) -> Self {
        Self { code: EXIT_OK, text }
    }

    fn flagged(violation: bool, text: String) -> Self {
        Self { code: if violation { EXIT_VIOLATION } else { EXIT_OK }, text }
    }
}

/// Run one command line (including the program name) and return the exit
/// code with everything that should be printed.
pub fn dispatch<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let mut text = e.render().to_string();
            if code == EXIT_USAGE {
                text.push('\n');
                text.push_str(GRAMMAR);
                text.push('\n');
            }
            return (code, text);
        }
    };
    let mut quasi = QuasiConfig::default();
    if let Some(b) = cli.budget {
        quasi.budget = b;
    }
    quasi.q_min = cli.qmin;
    let mut rules = RuleOptions::default();
    if let Some(d) = cli.depth {
        rules.depth = d;
    }
    let ctx = Ctx { json: cli.json, invocation: argv[1..].to_vec(), quasi, window: cli.window, rules };
    match run(&ctx, &cli.cmd) {
        Ok(out) => (out.code, out.text),
        Err(e) => (EXIT_USAGE, format!("error: {e}\n")),
    }
}

impl Ctx {
    fn envelope(&self, command: &str, result: Value) -> String {
        let v = json!({ "invocation": self.invocation, "command": command, "result": result });
        format!("{}\n", serde_json::to_string(&v).expect("serializable"))
    }
}

struct Loaded {
    spec: String,
    arrangement: Arrangement,
    coned: bool,
    warnings: Vec<String>,
}

fn load(f: &FamilyArgs, force_central: bool) -> hyperarr::Result<Loaded> {
    let (spec, a, warnings) = match (&f.input, f.family.is_empty()) {
        (Some(path), true) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse { line: 0, message: format!("{}: {e}", path.display()) })?;
            let parsed = Arrangement::from_json(&text)?;
            (path.display().to_string(), parsed.arrangement, parsed.warnings)
        }
        (None, false) => {
            let spec: FamilySpec = f.family.join(" ").parse()?;
            (spec.to_string(), spec.build()?, Vec::new())
        }
        _ => {
            return Err(Error::Parse {
                line: 1,
                message: format!("give either a family or --input FILE\n{GRAMMAR}"),
            })
        }
    };
    let coned = f.cone || (force_central && !a.is_central());
    let arrangement = if coned { a.cone() } else { a };
    Ok(Loaded { spec, arrangement, coned, warnings })
}

impl Loaded {
    fn header(&self) -> String {
        let mut s = String::new();
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }

    fn name(&self) -> String {
        if self.coned {
            format!("cone of {}", self.spec)
        } else {
            self.spec.clone()
        }
    }

    fn json_base(&self) -> serde_json::Map<String, Value> {
        let mut m = serde_json::Map::new();
        m.insert("family".into(), json!(self.spec));
        m.insert("coned".into(), json!(self.coned));
        m
    }
}

fn run(ctx: &Ctx, cmd: &Cmd) -> hyperarr::Result<Out> {
    match cmd {
        Cmd::Build(f) => build(ctx, f),
        Cmd::Charpoly(f) => cmd_charpoly(ctx, f),
        Cmd::Quasipoly(f) => cmd_quasipoly(ctx, f),
        Cmd::Periods(f) => periods(ctx, f),
        Cmd::Ss(f) => ss(ctx, f),
        Cmd::Free(f) => free(ctx, f),
        Cmd::Flag(f) => flag(ctx, f),
        Cmd::Exponents(f) => exponents(ctx, f),
        Cmd::SaitoVerify(s) => saito(ctx, s),
        Cmd::Scan(ScanCmd::Conjecture { l }) => scan_conjecture(ctx, *l),
        Cmd::Scan(ScanCmd::Forms { l, stride }) => scan_forms(ctx, *l, *stride),
        Cmd::Rowwalk { l, m, p } => rowwalk(ctx, *l, *m, *p),
        Cmd::Counterexample13 => counterexample(ctx),
        Cmd::Replay { file } => replay_file(file),
    }
}

fn build(ctx: &Ctx, f: &FamilyArgs) -> hyperarr::Result<Out> {
    let l = load(f, false)?;
    if ctx.json {
        let mut m = l.json_base();
        let a: Value = serde_json::from_str(&l.arrangement.to_json()).expect("valid json");
        m.insert("arrangement".into(), a);
        return Ok(Out::ok(ctx.envelope("build", Value::Object(m))));
    }
    Ok(Out::ok(format!("{}{}\n{}", l.header(), l.name(), l.arrangement)))
}

fn cmd_charpoly(ctx: &Ctx, f: &FamilyArgs) -> hyperarr::Result<Out> {
    let l = load(f, false)?;
    let chi = charpoly(&l.arrangement)?;
    if ctx.json {
        let mut m = l.json_base();
        m.insert("charpoly".into(), json!(chi));
        m.insert("expanded".into(), json!(chi.to_string()));
        m.insert("factored".into(), json!(chi.factored()));
        return Ok(Out::ok(ctx.envelope("charpoly", Value::Object(m))));
    }
    Ok(Out::ok(format!("{}{}\n", l.header(), chi.factored())))
}

fn cmd_quasipoly(ctx: &Ctx, f: &FamilyArgs) -> hyperarr::Result<Out> {
    let l = load(f, false)?;
    let qp = characteristic_quasipoly_with(&l.arrangement, ctx.quasi)?;
    let mut rows: Vec<(u64, u64)> = qp.samples.clone();
    if let Some(w) = ctx.window {
        for q in qp.q_min..qp.q_min + w {
            if !rows.iter().any(|&(x, _)| x == q) {
                rows.push((q, count_complement_with(&l.arrangement, q, ctx.quasi.budget)?));
            }
        }
    }
    rows.sort_unstable();
    let table: Vec<(u64, u64, u64, String)> =
        rows.iter().map(|&(q, c)| (q, q % qp.period, c, qp.eval(q).to_string())).collect();
    let mismatches = table.iter().filter(|r| r.2.to_string() != r.3).count();
    if ctx.json {
        let mut m = l.json_base();
        m.insert("quasipolynomial".into(), json!(qp));
        m.insert("report".into(), json!(report_of(&qp)));
        m.insert("table".into(), json!(table));
        m.insert("mismatches".into(), json!(mismatches));
        return Ok(Out::flagged(mismatches > 0, ctx.envelope("quasipoly", Value::Object(m))));
    }
    let mut s = l.header();
    let _ = writeln!(s, "{}: lcm period {}, q_min {}", l.name(), qp.period, qp.q_min);
    for (k, c) in qp.constituents.iter().enumerate() {
        let _ = writeln!(s, "f^{} = {}", k + 1, c.factored());
    }
    let _ = writeln!(s, "{:>6} {:>8} {:>14} {:>14}", "q", "q mod p", "count", "predicted");
    for (q, r, c, p) in &table {
        let _ = writeln!(s, "{q:>6} {r:>8} {c:>14} {p:>14}");
    }
    if mismatches > 0 {
        let _ = writeln!(s, "{mismatches} counts disagree with the quasi-polynomial");
    }
    Ok(Out::flagged(mismatches > 0, s))
}

fn periods(ctx: &Ctx, f: &FamilyArgs) -> hyperarr::Result<Out> {
    let l = load(f, false)?;
    let qp = characteristic_quasipoly_with(&l.arrangement, ctx.quasi)?;
    let r = report_of(&qp);
    if ctx.json {
        let mut m = l.json_base();
        m.insert("report".into(), json!(r));
        return Ok(Out::ok(ctx.envelope("periods", Value::Object(m))));
    }
    Ok(Out::ok(format!(
        "{}lcm {}, min {}, collapse {}\n",
        l.header(),
        r.lcm_period,
        r.minimum_period,
        r.collapse
    )))
}

fn ss(ctx: &Ctx, f: &FamilyArgs) -> hyperarr::Result<Out> {
    let l = load(f, true)?;
    let s = supersolvable(&l.arrangement)?;
    let exps = s.chain().map(|c| ss_exponents(c, l.arrangement.dim()));
    if ctx.json {
        let mut m = l.json_base();
        m.insert("supersolvable".into(), json!(s.is_supersolvable()));
        m.insert("chain_steps".into(), json!(s.chain().map(|c| c.steps())));
        m.insert("exponents".into(), json!(exps));
        return Ok(Out::ok(ctx.envelope("ss", Value::Object(m))));
    }
    let text = match (s.chain(), exps) {
        (Some(c), Some(e)) => format!(
            "{}: supersolvable, chain steps {:?}, exponents {}\n",
            l.name(),
            c.steps(),
            fmt_multiset(&e)
        ),
        _ => format!("{}: not supersolvable\n", l.name()),
    };
    Ok(Out::ok(l.header() + &text))
}

fn fmt_multiset(e: &[usize]) -> String {
    let mut s = String::from("{");
    let mut i = 0;
    while i < e.len() {
        let k = e[i..].iter().take_while(|&&x| x == e[i]).count();
        if i > 0 {
            s.push_str(", ");
        }
        if k > 1 {
            let _ = write!(s, "{}^{k}", e[i]);
        } else {
            let _ = write!(s, "{}", e[i]);
        }
        i += k;
    }
    s.push('}');
    s
}

fn rule_name(c: &Certificate) -> String {
    match c {
        Certificate::LowRank { rank } => format!("rank {rank}"),
        Certificate::Supersolvable { .. } => "supersolvable".into(),
        Certificate::Rank3 { multi_exponents: [a, b], .. } => format!("rank-3 criterion ({a}, {b})"),
        Certificate::Division { restriction, .. } => format!("division via {}", rule_name(restriction)),
        Certificate::Deletion { .. } => "addition-deletion".into(),
    }
}

fn describe(status: &FreeStatus) -> String {
    match status {
        FreeStatus::Free { exponents, certificate } => {
            format!("free, exponents {} by {}", fmt_multiset(exponents), rule_name(certificate))
        }
        FreeStatus::NonFree { witness } => {
            format!("not free: {}", serde_json::to_string(witness).expect("serializable"))
        }
        FreeStatus::Unknown { reason } => format!("unknown: {reason}"),
    }
}

fn free(ctx: &Ctx, f: &FamilyArgs) -> hyperarr::Result<Out> {
    let l = load(f, true)?;
    let st = free_certify_with(&l.arrangement, ctx.rules)?;
    if ctx.json {
        let mut m = l.json_base();
        m.insert("arrangement".into(), serde_json::from_str(&l.arrangement.to_json()).expect("valid json"));
        m.insert("status".into(), json!(st));
        return Ok(Out::ok(ctx.envelope("free", Value::Object(m))));
    }
    Ok(Out::ok(format!("{}{}: {}\n", l.header(), l.name(), describe(&st))))
}

fn flag(ctx: &Ctx, f: &FamilyArgs) -> hyperarr::Result<Out> {
    let l = load(f, true)?;
    let st = flag_accurate_certify_with(&l.arrangement, ctx.rules)?;
    if ctx.json {
        let mut m = l.json_base();
        m.insert("flag".into(), json!(st));
        return Ok(Out::ok(ctx.envelope("flag", Value::Object(m))));
    }
    let mut s = l.header();
    match &st {
        FlagStatus::Flag(cert) => {
            let _ = writeln!(s, "{}: flag-accurate", l.name());
            for (i, step) in cert.steps.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  X_{} dim {} on {} hyperplanes, exponents {}",
                    i + 1,
                    step.dim,
                    step.hyperplanes.len(),
                    fmt_multiset(&step.exponents)
                );
            }
        }
        FlagStatus::Unknown { reason } => {
            let _ = writeln!(s, "{}: unknown: {reason}", l.name());
        }
    }
    Ok(Out::ok(s))
}

fn exponents(ctx: &Ctx, f: &FamilyArgs) -> hyperarr::Result<Out> {
    let l = load(f, true)?;
    let st = free_certify_with(&l.arrangement, ctx.rules)?;
    let exps = st.exponents().map(<[usize]>::to_vec);
    if ctx.json {
        let mut m = l.json_base();
        m.insert("exponents".into(), json!(exps));
        return Ok(Out::ok(ctx.envelope("exponents", Value::Object(m))));
    }
    let text = match exps {
        Some(e) => format!("{}\n", fmt_multiset(&e)),
        None => format!("no exponents: {}\n", describe(&st)),
    };
    Ok(Out::ok(l.header() + &text))
}

fn saito(ctx: &Ctx, s: &SaitoArgs) -> hyperarr::Result<Out> {
    let (label, ma, basis): (String, Multiarrangement, Vec<Derivation>) = if let Some(m) = &s.m {
        let n = WeightTuple::new(m.iter().map(|&k| (-(k as i64)..=k as i64).collect()).collect());
        let a = n_ish_b(&n)?.cone();
        (format!("cone of nishB N={n}"), Multiarrangement::simple(a)?, basis_thm44(m)?)
    } else if let Some(p) = &s.pair {
        let [n1, n2] = p[..] else {
            return Err(Error::BadParams("--pair takes two sizes n1,n2".into()));
        };
        let label = format!("x1^{n1} x2^{n2} (x1-x2)(x1+x2)");
        (label, rank2_multiarrangement(n1, n2)?, basis_uneven_pair(n1, n2)?)
    } else {
        let n = s.even.expect("clap group requires one option");
        (format!("x1^{n} x2^{n} (x1-x2)(x1+x2)"), rank2_multiarrangement(n, n)?, basis_even_pair(n)?)
    };
    let ok = match saito_check(&ma, &basis) {
        Ok(b) => b,
        Err(Error::NotMembers(_)) => false,
        Err(e) => return Err(e),
    };
    let degrees: Vec<u32> = basis.iter().map(|t| t.degree().unwrap_or(0)).collect();
    if ctx.json {
        let r = json!({
            "arrangement": label,
            "basis": basis.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "degrees": degrees,
            "verified": ok,
        });
        return Ok(Out::flagged(!ok, ctx.envelope("saito-verify", r)));
    }
    let mut out = format!("{label}\n");
    for t in &basis {
        let _ = writeln!(out, "  [{}] {t}", t.degree().unwrap_or(0));
    }
    let _ = writeln!(out, "{}", if ok { "Saito criterion holds" } else { "Saito criterion FAILS" });
    Ok(Out::flagged(!ok, out))
}

fn scan_conjecture(ctx: &Ctx, l: usize) -> hyperarr::Result<Out> {
    let (records, summary) = conjecture_scan(l)?;
    let violation = summary.counterexamples + summary.inconsistent > 0;
    let mut s = String::new();
    if ctx.json {
        for r in &records {
            let _ = writeln!(s, "{}", serde_json::to_string(r).expect("serializable"));
        }
        s.push_str(&ctx.envelope("scan conjecture", json!(summary)));
        return Ok(Out::flagged(violation, s));
    }
    for r in records.iter().filter(|r| !r.equal) {
        let tag = if r.consistent { "counterexample" } else { "inconsistent" };
        let _ = writeln!(s, "{tag}: #{} {} chi_S = {} chi_I = {}", r.index, r.digraph, r.chi_s, r.chi_i);
    }
    let _ = write!(s, "{} digraphs, {} counterexamples", summary.digraphs, summary.counterexamples);
    if summary.inconsistent > 0 {
        let _ = write!(s, ", {} inconsistent", summary.inconsistent);
    }
    s.push('\n');
    Ok(Out::flagged(violation, s))
}

fn scan_forms(ctx: &Ctx, l: usize, stride: usize) -> hyperarr::Result<Out> {
    let (records, summary) = forms_scan(l, stride)?;
    let violation = summary.disagreements > 0;
    let mut s = String::new();
    if ctx.json {
        for r in &records {
            let _ = writeln!(s, "{}", serde_json::to_string(r).expect("serializable"));
        }
        s.push_str(&ctx.envelope("scan forms", json!(summary)));
        return Ok(Out::flagged(violation, s));
    }
    for r in records.iter().filter(|r| !r.agrees) {
        let _ = writeln!(s, "disagreement: #{} {} form {:?}", r.index, r.digraph, r.form);
    }
    let _ = writeln!(
        s,
        "{} digraphs, {} certified, {} disagreements",
        summary.digraphs, summary.certified, summary.disagreements
    );
    Ok(Out::flagged(violation, s))
}

fn rowwalk(ctx: &Ctx, l: usize, m: usize, p: usize) -> hyperarr::Result<Out> {
    let steps = row_walk(l, m, p)?;
    let violation = steps.iter().any(|st| !st.matches_constructor);
    if ctx.json {
        let r: Vec<Value> = steps
            .iter()
            .map(|st| {
                json!({
                    "k": st.k,
                    "digraph": st.digraph.to_string(),
                    "hyperplanes": st.arrangement.len(),
                    "matches_constructor": st.matches_constructor,
                })
            })
            .collect();
        return Ok(Out::flagged(violation, ctx.envelope("rowwalk", json!(r))));
    }
    let mut s = String::new();
    for st in &steps {
        let mark = if st.matches_constructor { "ok" } else { "MISMATCH" };
        let _ = writeln!(s, "k={} {} ({} hyperplanes) {mark}", st.k, st.digraph, st.arrangement.len());
    }
    Ok(Out::flagged(violation, s))
}

fn counterexample(ctx: &Ctx) -> hyperarr::Result<Out> {
    let r = shi_ish_search()?;
    let found = !r.matches.is_empty();
    if ctx.json {
        let v = json!({
            "target": r.target,
            "target_expanded": r.target.to_string(),
            "candidates": r.candidates,
            "matches": r.matches,
        });
        return Ok(Out::flagged(found, ctx.envelope("counterexample-1-3", v)));
    }
    let mut s = format!("chi = {}\n{} candidates, {} matches\n", r.target, r.candidates, r.matches.len());
    for m in &r.matches {
        let hs: Vec<String> = m.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "  match: {}", hs.join(", "));
    }
    Ok(Out::flagged(found, s))
}

/// Re-runs the recorded invocation and compares outputs byte for byte. For
/// `free` the recorded certificate is also checked against the recorded
/// arrangement.
fn replay_file(path: &PathBuf) -> hyperarr::Result<Out> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, message: format!("{}: {e}", path.display()) })?;
    let last = text.lines().last().unwrap_or_default();
    let env: Value = serde_json::from_str(last).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
    let invocation: Vec<String> = serde_json::from_value(env["invocation"].clone())
        .map_err(|e| Error::Parse { line: 1, message: format!("no invocation recorded: {e}") })?;
    if invocation.first().is_some_and(|c| c == "replay") {
        return Err(Error::BadParams("refusing to replay a replay".into()));
    }
    let mut argv = vec!["hyperarr".to_string()];
    argv.extend(invocation);
    let (_, again) = dispatch(argv);
    let mut same = again == text;
    let mut notes = String::new();
    if env["command"] == "free" {
        let a = Arrangement::from_json(&env["result"]["arrangement"].to_string())?.arrangement;
        let st: FreeStatus = serde_json::from_value(env["result"]["status"].clone())
            .map_err(|e| Error::Parse { line: 1, message: e.to_string() })?;
        let valid = replay(&a, &st)?;
        let _ = writeln!(notes, "certificate {}", if valid { "replays" } else { "does NOT replay" });
        same &= valid;
    }
    let verdict = if same { "identical" } else { "DIFFERS" };
    Ok(Out::flagged(!same, format!("{notes}replay {verdict}\n")))
}
