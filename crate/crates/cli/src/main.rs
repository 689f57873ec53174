//! `berrykit`: command-line front end to the arithmetic kernel, the proof
//! checker and generators, the naming relations and the Berry engine.

mod config;
mod sample;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::Num;
use serde_json::{json, Value};

use berrykit::berry::{self, Backend, BerryError, PhiProvider};
use berrykit::coding::{self, CodingError};
use berrykit::demo::{self, DemoError, DemoParams, Status};
use berrykit::meta::{self, RelationVerdict};
use berrykit::proof::{self, Budget, Derivation, ProofError, Theory};
use berrykit::semantics::{eval_budgeted, EvalError, TruthVerdict};
use berrykit::syntax::{
    self, classify, length, parse, parse_formula, render, render_formula, Expr, Formula, SyntacticClass,
};

use config::{FileConfig, Settings};
use sample::Sampler;

#[derive(Parser, Debug)]
#[command(name = "berrykit", version, about = "Executable metamathematics for first-order arithmetic")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true, env = "BERRYKIT_JSON")]
    json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, env = "BERRYKIT_SEED")]
    seed: Option<u64>,
    /// Evaluation and witness-search budget.
    #[arg(long, global = true, env = "BERRYKIT_BUDGET")]
    budget: Option<u64>,
    /// Feasibility cap on enumeration length bounds.
    #[arg(long, global = true, env = "BERRYKIT_CAP")]
    cap: Option<u64>,
    /// TOML file with defaults for budget, cap, seed and json.
    #[arg(long, global = true, env = "BERRYKIT_CONFIG")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a term or formula and print its canonical form and length.
    Parse { text: String },
    /// Gödel numbers.
    Gn {
        #[command(subcommand)]
        op: GnOp,
    },
    /// Evaluate a sentence in the standard model within the budget.
    Eval { sentence: String },
    /// Report whether a formula is Δ0, Σ1, Σ or none of these.
    Classify { formula: String },
    /// The relations on Gödel numbers.
    Rel {
        #[arg(long, value_enum, default_value_t = TheoryArg::Q)]
        theory: TheoryArg,
        #[command(subcommand)]
        rel: RelOp,
    },
    /// Check a proof file.
    CheckProof {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = TheoryArg::Q)]
        theory: TheoryArg,
        /// Also require the derivation to conclude this formula.
        #[arg(long)]
        goal: Option<String>,
    },
    /// Produce a Q-derivation of a true Σ sentence.
    ProveSigma {
        sentence: String,
        /// Write the proof file here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the least number not named by a formula shorter than the bound.
    Berry {
        #[arg(long)]
        max_len: u64,
        #[arg(long, value_enum, default_value_t = BackendArg::Semantic)]
        backend: BackendArg,
    },
    /// Certify the length-bound chain for ψ.
    Bounds {
        #[command(flatten)]
        phi: PhiArgs,
    },
    /// Emit the sentence ψ(n, t).
    Boolos {
        #[command(flatten)]
        phi: PhiArgs,
        /// The numeral n; omitted, a `#n` placeholder is printed.
        #[arg(long)]
        n: Option<u64>,
    },
    /// Build or replay a demonstration report for one of the five theorems.
    Demo {
        /// Which theorem, 1 to 5.
        id: Option<u8>,
        /// Replay the checked claims of a saved report.
        #[arg(long, conflicts_with = "id")]
        replay: Option<PathBuf>,
        /// Save the report here.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_len: u64,
        #[arg(long, default_value_t = 10)]
        witnesses: u64,
        #[arg(long, default_value_t = 7)]
        toy_len: u64,
        #[arg(long, value_name = "LEN:OCC", default_value = "50:2")]
        mock: String,
    },
    /// Print random formulas.
    Sample {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        /// Variables are drawn from v0 .. v(vars-1).
        #[arg(long, default_value_t = 3)]
        vars: u32,
    },
}

#[derive(Subcommand, Debug)]
enum GnOp {
    /// Gödel number of a term or formula.
    Encode {
        text: String,
        #[arg(long)]
        hex: bool,
    },
    /// The expression with the given Gödel number.
    Decode {
        code: String,
        #[arg(long)]
        hex: bool,
    },
    /// The bound g(j) on codes of formulas shorter than j.
    G {
        j: u64,
        #[arg(long)]
        hex: bool,
    },
}

#[derive(Subcommand, Debug)]
enum RelOp {
    /// I codes a formula with no free variable other than v0.
    Fm { i: String },
    /// I codes a formula of length less than J.
    Lh { i: String, j: u64 },
    /// The formula coded by J names the number I.
    Nm { i: u64, j: String },
    /// Some formula of length less than J names I.
    B { i: u64, j: u64 },
    /// I codes a sentence.
    Snt { i: String },
    /// J codes the negation of the sentence coded by I.
    Neg { i: String, j: String },
    /// I is not a sentence, or its negation is provable.
    Prc { i: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoryArg {
    /// Robinson arithmetic.
    Q,
    /// Q plus every true Δ0 sentence.
    Delta0Truth,
    /// Q plus every sentence whose budgeted evaluation is true.
    Ta,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BackendArg {
    Semantic,
    Prover,
}

#[derive(clap::Args, Debug)]
#[group(required = true, multiple = false)]
struct PhiArgs {
    /// File holding φ(v0, v1).
    #[arg(long)]
    phi_file: Option<PathBuf>,
    /// A mock φ given by its length and the free occurrences of v1 in ψ.
    #[arg(long, value_name = "LEN:OCC")]
    phi_mock: Option<String>,
}

/// A failure, carrying its exit code.
#[derive(Debug)]
enum Failure {
    /// A check or verdict came out negative.
    Verdict(String),
    Input(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verdict(_) => 1,
            Failure::Input(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verdict(m) | Failure::Input(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<syntax::ParseError> for Failure {
    fn from(e: syntax::ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<CodingError> for Failure {
    fn from(e: CodingError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Overflow => Failure::Budget(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<ProofError> for Failure {
    fn from(e: ProofError) -> Self {
        match e {
            ProofError::False(_) | ProofError::Internal(_) => Failure::Verdict(e.to_string()),
            ProofError::BudgetExhausted { .. } | ProofError::Unsupported(_) => Failure::Budget(e.to_string()),
            ProofError::NotSigma(_) | ProofError::NotSentence(_) | ProofError::Precondition(_) => {
                Failure::Input(e.to_string())
            }
        }
    }
}

impl From<BerryError> for Failure {
    fn from(e: BerryError) -> Self {
        match e {
            BerryError::Enumeration(_) | BerryError::Provider(_) => Failure::Input(e.to_string()),
            BerryError::UnknownDominated { .. } => Failure::Budget(e.to_string()),
            BerryError::Refused { .. } => Failure::Verdict(e.to_string()),
            BerryError::Eval(e) => e.into(),
            BerryError::Proof(e) => e.into(),
        }
    }
}

impl From<DemoError> for Failure {
    fn from(e: DemoError) -> Self {
        match e {
            DemoError::Berry(e) => e.into(),
            DemoError::Proof(e) => e.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CmdResult = Result<u8, Failure>;

/// The argument text, or standard input when it is `-`.
fn input(text: &str) -> Result<String, Failure> {
    if text != "-" {
        return Ok(text.to_string());
    }
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
    Ok(s)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_code(text: &str, hex: bool) -> Result<BigUint, Failure> {
    let text = text.trim();
    let (digits, radix) = if hex { (text.trim_start_matches("0x"), 16) } else { (text, 10) };
    BigUint::from_str_radix(digits, radix).map_err(|_| Failure::Input(format!("not a number: {text}")))
}

fn show_code(n: &BigUint, hex: bool) -> String {
    if hex {
        format!("0x{}", n.to_str_radix(16))
    } else {
        n.to_string()
    }
}

fn theory_of(t: TheoryArg, budget: u64) -> Theory {
    match t {
        TheoryArg::Q => Theory::q(),
        TheoryArg::Delta0Truth => Theory::delta0_truth().with_q(),
        TheoryArg::Ta => Theory::true_arithmetic(budget),
    }
}

fn class_name(c: SyntacticClass) -> &'static str {
    match c {
        SyntacticClass::Delta0 => "delta0",
        SyntacticClass::Sigma1 => "sigma1",
        SyntacticClass::SigmaSyntactic => "sigma",
        SyntacticClass::Other => "other",
    }
}

fn verdict_name(v: &TruthVerdict) -> String {
    match v {
        TruthVerdict::True => "true".into(),
        TruthVerdict::False => "false".into(),
        TruthVerdict::Unknown { budget } => format!("unknown (budget {budget})"),
    }
}

fn verdict_code(v: &TruthVerdict) -> u8 {
    match v {
        TruthVerdict::True => 0,
        TruthVerdict::False => 1,
        TruthVerdict::Unknown { .. } => 3,
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value serializes"));
}

fn phi_provider(p: &PhiArgs) -> Result<PhiProvider, Failure> {
    if let Some(spec) = &p.phi_mock {
        return mock_provider(spec);
    }
    let path = p.phi_file.as_ref().expect("clap requires one of the φ options");
    Ok(PhiProvider::Concrete(parse_formula(&read_file(path)?)?))
}

fn mock_provider(spec: &str) -> Result<PhiProvider, Failure> {
    let bad = || Failure::Input(format!("expected LEN:OCC, got {spec}"));
    let (l, o) = spec.split_once(':').ok_or_else(bad)?;
    let length = l.trim().parse().map_err(|_| bad())?;
    let occurrences = o.trim().parse().map_err(|_| bad())?;
    Ok(PhiProvider::Mock { length, occurrences })
}

fn cmd_parse(text: &str, s: &Settings) -> CmdResult {
    let e = parse(&input(text)?)?;
    let class = match &e {
        Expr::Formula(f) => Some(class_name(classify(f))),
        Expr::Term(_) => None,
    };
    if s.json {
        print_json(&json!({
            "v": 1,
            "text": render(&e),
            "length": length(&e),
            "class": class,
            "ast": syntax::json::to_json(&e),
        }));
    } else {
        println!("{}", render(&e));
        println!("length {}", length(&e));
        if let Some(c) = class {
            println!("class {c}");
        }
    }
    Ok(0)
}

fn cmd_gn(op: &GnOp, s: &Settings) -> CmdResult {
    let (out, extra) = match op {
        GnOp::Encode { text, hex } => {
            let e = parse(&input(text)?)?;
            (show_code(&coding::encode(&e), *hex), json!({ "text": render(&e) }))
        }
        GnOp::Decode { code, hex } => {
            let e = coding::decode(&parse_code(&input(code)?, *hex)?)?;
            (render(&e), json!({ "length": length(&e) }))
        }
        GnOp::G { j, hex } => (show_code(&coding::g(*j)?, *hex), json!({ "j": j })),
    };
    if s.json {
        print_json(&json!({ "v": 1, "result": out, "info": extra }));
    } else {
        println!("{out}");
    }
    Ok(0)
}

fn cmd_eval(text: &str, s: &Settings) -> CmdResult {
    let f = parse_formula(&input(text)?)?;
    if !f.is_sentence() {
        return Err(Failure::Input(format!("not a sentence: {}", render_formula(&f))));
    }
    let e = eval_budgeted(&f, s.budget)?;
    if s.json {
        print_json(&json!({ "v": 1, "sentence": render_formula(&f), "verdict": e.verdict, "witness": e.witness }));
    } else {
        match e.witness {
            Some(w) => println!("{} (witness {w})", verdict_name(&e.verdict)),
            None => println!("{}", verdict_name(&e.verdict)),
        }
    }
    Ok(if matches!(e.verdict, TruthVerdict::Unknown { .. }) { 3 } else { 0 })
}

fn cmd_classify(text: &str, s: &Settings) -> CmdResult {
    let f = parse_formula(&input(text)?)?;
    let c = class_name(classify(&f));
    if s.json {
        print_json(&json!({ "v": 1, "formula": render_formula(&f), "class": c }));
    } else {
        println!("{c}");
    }
    Ok(0)
}

fn cmd_rel(theory: TheoryArg, op: &RelOp, s: &Settings) -> CmdResult {
    let t = theory_of(theory, s.budget);
    let budget = Budget::with_witness(s.budget);
    let bool_verdict = |b: bool| RelationVerdict {
        holds: if b { TruthVerdict::True } else { TruthVerdict::False },
        evidence: Vec::new(),
    };
    let code = |x: &str| parse_code(x, false);
    let (name, v) = match op {
        RelOp::Fm { i } => ("fm", bool_verdict(meta::fm(&code(i)?))),
        RelOp::Lh { i, j } => ("lh", bool_verdict(meta::lh(&code(i)?, *j))),
        RelOp::Nm { i, j } => ("nm", meta::nm(*i, &code(j)?, &t, budget)),
        RelOp::B { i, j } => ("b", meta::b_rel(*i, *j, &t, budget, s.cap).map_err(|e| Failure::Input(e.to_string()))?),
        RelOp::Snt { i } => ("snt", bool_verdict(meta::snt(&code(i)?))),
        RelOp::Neg { i, j } => ("neg", bool_verdict(meta::neg(&code(i)?, &code(j)?))),
        RelOp::Prc { i } => ("prc", meta::prc(&code(i)?, &t, budget)),
    };
    if s.json {
        let mut out = v.to_json();
        out["v"] = json!(1);
        out["relation"] = json!(name);
        out["theory"] = json!(t.name);
        print_json(&out);
    } else {
        println!("{}", verdict_name(&v.holds));
        for e in &v.evidence {
            match e {
                meta::Evidence::Formula(f) => println!("witness formula: {}", render_formula(f)),
                meta::Evidence::Derivation(d) => println!("derivation: {} steps", d.len()),
                meta::Evidence::Counterexample(j) => println!("counterexample: {j}"),
            }
        }
    }
    Ok(verdict_code(&v.holds))
}

fn cmd_check_proof(file: &Path, theory: TheoryArg, goal: Option<&str>, s: &Settings) -> CmdResult {
    let d = Derivation::from_jsonl(&read_file(file)?).map_err(|e| Failure::Input(e.to_string()))?;
    if d.is_empty() {
        return Err(Failure::Input("empty proof file".into()));
    }
    let t = theory_of(theory, s.budget);
    let result = match goal {
        Some(g) => proof::check_proves(&d, &t, &parse_formula(g)?),
        None => proof::check(&d, &t),
    };
    let concl = render_formula(d.conclusion().expect("non-empty"));
    if s.json {
        let err = result.as_ref().err().map(|e| json!({ "step": e.step, "reason": e.reason }));
        print_json(&json!({ "v": 1, "valid": result.is_ok(), "steps": d.len(), "conclusion": concl, "error": err }));
    } else {
        match &result {
            Ok(()) => println!("valid: {} steps proving {concl}", d.len()),
            Err(e) => println!("invalid: {e}"),
        }
    }
    Ok(if result.is_ok() { 0 } else { 1 })
}

fn cmd_prove_sigma(text: &str, output: Option<&Path>, s: &Settings) -> CmdResult {
    let f = parse_formula(&input(text)?)?;
    let d = proof::prove_sigma(&f, s.budget)?;
    let body = d.to_jsonl();
    match output {
        Some(path) => {
            write_file(path, &body)?;
            if s.json {
                print_json(&json!({ "v": 1, "sentence": render_formula(&f), "steps": d.len(), "file": path }));
            } else {
                println!("{} steps written to {}", d.len(), path.display());
            }
        }
        None => print!("{body}"),
    }
    Ok(0)
}

fn cmd_berry(max_len: u64, backend: BackendArg, s: &Settings) -> CmdResult {
    let backend = match backend {
        BackendArg::Semantic => Backend::Semantic,
        BackendArg::Prover => Backend::Prover,
    };
    let r = berry::berry_number(max_len, backend, s.budget, s.cap)?;
    if s.json {
        print_json(&r.to_json());
    } else {
        println!("n_{max_len} = {} ({} backend, budget {}, {} formulas)", r.n, backend.id(), s.budget, r.formula_count);
        for c in &r.certificates {
            println!("  {} named by {}", c.number, render_formula(&c.witness));
        }
        println!("  {}: {} formulas refuted, {} undecided", r.n, r.exhaustion.refuted, r.exhaustion.unknown);
    }
    Ok(0)
}

fn cmd_bounds(phi: &PhiArgs, s: &Settings) -> CmdResult {
    let cert = berry::certify_bounds(&phi_provider(phi)?)?;
    if s.json {
        print_json(&cert.to_json());
    } else {
        let c = &cert.constants;
        println!("k1 = {}, k2 = {}, k = {}, |t| = {}, t = {}", c.k1, c.k2, c.k, c.t_len, c.t_value);
        let kind = if cert.psi_t_len_exact { "exact" } else { "worst case" };
        println!("|psi(v0,t)| = {} ({kind})", cert.psi_t_len);
        for ch in &cert.checks {
            let op = if ch.strict { "<" } else { "<=" };
            println!("  [{}] {}: {} {op} {}", if ch.holds { "ok" } else { "FAIL" }, ch.name, ch.lhs, ch.rhs);
        }
    }
    Ok(if cert.holds() { 0 } else { 1 })
}

fn cmd_boolos(phi: &PhiArgs, n: Option<u64>, s: &Settings) -> CmdResult {
    let b = berry::boolos_sentence(&phi_provider(phi)?, n)?;
    if s.json {
        print_json(&json!({
            "v": 1,
            "sentence": b.text,
            "length": b.length.to_string(),
            "length_exact": b.length_exact,
            "t": b.t_value.to_string(),
        }));
    } else {
        println!("{}", b.text);
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_demo(
    id: Option<u8>,
    replay: Option<&Path>,
    output: Option<&Path>,
    max_len: u64,
    witnesses: u64,
    toy_len: u64,
    mock: &str,
    s: &Settings,
) -> CmdResult {
    let (report, replaying) = match (id, replay) {
        (_, Some(path)) => (demo::DemoReport::from_json(&read_file(path)?)?, true),
        (Some(id), None) => {
            let PhiProvider::Mock { length, occurrences } = mock_provider(mock)? else { unreachable!() };
            let p = DemoParams {
                max_len,
                budget: s.budget,
                cap: s.cap,
                mock_len: length,
                mock_occ: occurrences,
                witnesses,
                toy_len,
            };
            (demo::demo(id, &p)?, false)
        }
        (None, None) => return Err(Failure::Input("give a theorem number 1 to 5 or --replay FILE".into())),
    };
    if let Some(path) = output {
        write_file(path, &serde_json::to_string_pretty(&report.to_json()).expect("report serializes"))?;
    }
    let summary = replaying.then(|| demo::replay(&report));
    if s.json {
        let mut v = report.to_json();
        if let Some(r) = &summary {
            v["replay"] = json!({
                "ok": r.ok(),
                "checked": r.checked,
                "evidence": r.evidence,
                "failures": r.failures.iter().map(|(i, m)| json!({ "claim": i, "reason": m })).collect::<Vec<_>>(),
            });
        }
        print_json(&v);
    } else {
        println!("[{}] {}", report.id, report.title);
        for (i, c) in report.claims.iter().enumerate() {
            match &c.status {
                Status::Checked { evidence } => println!("  {i}. CHECKED ({} items) {}", evidence.len(), c.statement),
                Status::Asserted { basis } => println!("  {i}. ASSERTED {}\n       basis: {basis}", c.statement),
            }
        }
        println!("{}", report.summary);
        if let Some(r) = &summary {
            println!(
                "replay: {} checked claims, {} evidence items, {} failures",
                r.checked,
                r.evidence,
                r.failures.len()
            );
            for (i, m) in &r.failures {
                println!("  claim {i}: {m}");
            }
        }
    }
    Ok(match summary {
        Some(r) if !r.ok() => 1,
        _ => 0,
    })
}

fn cmd_sample(count: usize, depth: u32, vars: u32, s: &Settings) -> CmdResult {
    let mut g = Sampler::new(s.seed, vars);
    let fs: Vec<Formula> = (0..count).map(|_| g.formula(depth)).collect();
    if s.json {
        print_json(&json!({ "v": 1, "seed": s.seed, "formulas": fs.iter().map(render_formula).collect::<Vec<_>>() }));
    } else {
        for f in &fs {
            println!("{}", render_formula(f));
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> CmdResult {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p).map_err(Failure::Input)?,
        None => FileConfig::default(),
    };
    let s = Settings::resolve(cli.budget, cli.cap, cli.seed, cli.json, &file);
    match &cli.command {
        Command::Parse { text } => cmd_parse(text, &s),
        Command::Gn { op } => cmd_gn(op, &s),
        Command::Eval { sentence } => cmd_eval(sentence, &s),
        Command::Classify { formula } => cmd_classify(formula, &s),
        Command::Rel { theory, rel } => cmd_rel(*theory, rel, &s),
        Command::CheckProof { file, theory, goal } => cmd_check_proof(file, *theory, goal.as_deref(), &s),
        Command::ProveSigma { sentence, output } => cmd_prove_sigma(sentence, output.as_deref(), &s),
        Command::Berry { max_len, backend } => cmd_berry(*max_len, *backend, &s),
        Command::Bounds { phi } => cmd_bounds(phi, &s),
        Command::Boolos { phi, n } => cmd_boolos(phi, *n, &s),
        Command::Demo { id, replay, output, max_len, witnesses, toy_len, mock } => {
            cmd_demo(*id, replay.as_deref(), output.as_deref(), *max_len, *witnesses, *toy_len, mock, &s)
        }
        Command::Sample { count, depth, vars } => cmd_sample(*count, *depth, *vars, &s),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
