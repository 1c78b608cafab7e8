//! Command-line front end: ring parsing, subcommands, machine-readable output.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::assoc_graded::{gr_betti, gr_hilbert, OrdContext};
use crate::betti::BettiTable;
use crate::construction::{construct_free_betti, construct_gr_betti, ses_hilbert_check, ConstructionTrace};
use crate::error::{Error, Result};
use crate::field::{is_prime, DEFAULT_CHARACTERISTIC};
use crate::koszul_check::{default_bound, koszul_verdict, lin_acyclicity, linear_part, KoszulReport, Verdict};
use crate::module::{FreeElement, FreeModule, FreeModuleSpec};
use crate::monomial::Monomial;
use crate::resolution::resolve_module;
use crate::ring::RingSpec;
use crate::truncation::{elimination_variable, layer_count, trunc_free_gens};

/// Environment variable overriding the default characteristic.
pub const CHAR_ENV: &str = "NSKOSZUL_CHAR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Parses `name=weight,...[@p]` with characteristic 32003 unless given.
pub fn parse_ring_spec(s: &str) -> Result<RingSpec> {
    parse_ring_spec_with(s, DEFAULT_CHARACTERISTIC)
}

pub fn parse_ring_spec_with(s: &str, default_char: u32) -> Result<RingSpec> {
    let err = |position: usize, message: String| Error::Parse { position, message };
    let (body, characteristic) = match s.find('@') {
        Some(at) => {
            let text = &s[at + 1..];
            let p: u64 = text.trim().parse().map_err(|_| err(at + 1, format!("bad characteristic {text:?}")))?;
            if !is_prime(p) || p > u32::MAX as u64 {
                return Err(err(at + 1, format!("characteristic {p} is not a supported prime")));
            }
            (&s[..at], p as u32)
        }
        None => (s, default_char),
    };
    if body.trim().is_empty() {
        return Err(err(0, "no variables".into()));
    }
    let mut names: Vec<String> = Vec::new();
    let mut weights = Vec::new();
    let mut offset = 0;
    for part in body.split(',') {
        let start = offset + (part.len() - part.trim_start().len());
        offset += part.len() + 1;
        let Some((name, weight)) = part.split_once('=') else {
            return Err(err(start, format!("expected name=weight, found {:?}", part.trim())));
        };
        let name = name.trim();
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(err(start, format!("invalid variable name {name:?}")));
        }
        if names.iter().any(|n| n == name) {
            return Err(err(start, format!("duplicate variable {name:?}")));
        }
        let wpos = start + part.trim_start().find('=').unwrap_or(0) + 1;
        let w: i64 = weight.trim().parse().map_err(|_| err(wpos, format!("bad weight {:?}", weight.trim())))?;
        if w <= 0 || w > u16::MAX as i64 {
            return Err(err(wpos, format!("weight of {name} must be positive, found {w}")));
        }
        names.push(name.to_string());
        weights.push(w as u32);
    }
    RingSpec::new(names, weights, characteristic)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "nskoszul", version, about = "Koszulness of truncations over weighted polynomial rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct CaseArgs {
    /// Ring as `name=weight,...`, optionally followed by `@p`.
    #[arg(long)]
    pub ring: String,
    /// Truncation threshold.
    #[arg(long, allow_hyphen_values = true)]
    pub e: i64,
    /// Internal degree bound; defaults to max(e,0) + n*maxweight + n.
    #[arg(long)]
    pub bound: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Default characteristic when the ring has no `@p`.
    #[arg(long = "char", env = CHAR_ENV)]
    pub characteristic: Option<u32>,
}

#[derive(Args, Debug, Clone)]
pub struct TwistArgs {
    /// Generator degrees t_j of a free module sum S(-t_j); omit for the ring itself.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub twists: Vec<i64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimal generators of the truncation.
    Gens {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        twists: TwistArgs,
    },
    /// Minimal resolution over the weighted ring.
    Resolve {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        twists: TwistArgs,
        /// Print differential matrices.
        #[arg(long)]
        differentials: bool,
        /// Keep the Schreyer frame unminimized.
        #[arg(long)]
        no_minimize: bool,
        /// Write a Macaulay2 script computing the same resolution.
        #[arg(long)]
        emit_cas: Option<PathBuf>,
    },
    /// Betti table of the associated graded module.
    GrBetti {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        twists: TwistArgs,
    },
    /// Hilbert function of the associated graded module.
    GrHilbert {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        twists: TwistArgs,
    },
    /// Acyclicity of the linear part of the minimal resolution.
    LinCheck {
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Predicted gr Betti table from the layer construction.
    Construct {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        twists: TwistArgs,
        /// Include the construction steps.
        #[arg(long)]
        trace: bool,
    },
    /// All three Koszulness tests.
    Koszul {
        #[command(flatten)]
        case: CaseArgs,
        /// Include the construction steps.
        #[arg(long)]
        trace: bool,
        /// Write a Macaulay2 script checking the same case.
        #[arg(long)]
        emit_cas: Option<PathBuf>,
    },
    /// Hilbert additivity along the layer short exact sequences.
    SesCheck {
        #[command(flatten)]
        case: CaseArgs,
        /// A single layer; all layers when omitted.
        #[arg(long)]
        layer: Option<i64>,
    },
    /// Koszul verdicts over a grid of weight multisets and thresholds.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Largest number of variables.
    #[arg(long)]
    pub max_vars: usize,
    /// Largest variable weight.
    #[arg(long)]
    pub max_weight: u32,
    /// Largest threshold.
    #[arg(long)]
    pub max_e: i64,
    /// Smallest threshold.
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub min_e: i64,
    /// Fixed bound for every case instead of the per-case default.
    #[arg(long)]
    pub bound: Option<i64>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,
    #[arg(long = "char", env = CHAR_ENV)]
    pub characteristic: Option<u32>,
}

/// What a command produced: printable output and an exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub status: i32,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, status: EXIT_OK }
    }

    fn from_verdicts(output: String, verdicts: impl IntoIterator<Item = Verdict>) -> Self {
        let all = verdicts.into_iter().fold(Verdict::True, Verdict::and);
        Outcome { output, status: exit_code(all) }
    }
}

pub fn exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::True => EXIT_OK,
        Verdict::False => EXIT_FALSE,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Parsed and validated inputs of one case.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub ring: RingSpec,
    pub e: i64,
    pub bound: i64,
    pub format: OutputFormat,
}

impl JobSpec {
    pub fn from_args(args: &CaseArgs) -> Result<Self> {
        let ring = parse_ring_spec_with(&args.ring, args.characteristic.unwrap_or(DEFAULT_CHARACTERISTIC))?;
        let bound = args.bound.unwrap_or_else(|| default_bound(&ring, args.e));
        if bound < 0 {
            return Err(Error::Range { what: "degree bound", value: bound });
        }
        Ok(JobSpec { ring, e: args.e, bound, format: args.format })
    }
}

fn ring_json(ring: &RingSpec) -> Value {
    json!({ "names": ring.names(), "weights": ring.weights(), "characteristic": ring.characteristic() })
}

/// The machine-readable report: always exactly the fields `ring`, `e`,
/// `bound`, `betti`, `verdicts`, `trace`.
pub fn report_json(
    ring: &RingSpec,
    e: i64,
    bound: Option<i64>,
    betti: &BettiTable,
    verdicts: &[(&str, Verdict)],
    trace: Option<&ConstructionTrace>,
) -> Value {
    let verdicts: serde_json::Map<String, Value> =
        verdicts.iter().map(|(k, v)| (k.to_string(), Value::String(v.as_str().into()))).collect();
    json!({
        "ring": ring_json(ring),
        "e": e,
        "bound": bound,
        "betti": betti,
        "verdicts": verdicts,
        "trace": trace,
    })
}

fn to_line(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// JSON rendering of a [`KoszulReport`].
pub fn koszul_report_json(r: &KoszulReport, with_trace: bool) -> Value {
    report_json(&r.ring, r.e, Some(r.bound), &r.gr_betti, &r.verdicts.named(), with_trace.then_some(&r.trace))
}

pub fn koszul_report_text(r: &KoszulReport, with_trace: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ring {}  e = {}  bound = {}", r.ring.render(), r.e, r.bound);
    let gens: Vec<String> = r.generators.iter().map(|m| r.ring.render_monomial(m)).collect();
    let _ = writeln!(s, "generators ({}): {}", gens.len(), gens.join(", "));
    let _ = writeln!(s, "\nweighted resolution:\n{}", r.resolution_betti());
    let _ = writeln!(s, "linear part:\n{}", r.lin_betti());
    let obstructions = r.lin.obstructions();
    if obstructions.is_empty() {
        let _ = writeln!(s, "lin homology: zero in positive homological degrees, j <= {}", r.bound);
    } else {
        let _ = writeln!(s, "lin homology (i, j, dim): {obstructions:?}");
    }
    let _ = writeln!(s, "\ngr Betti table:\n{}", r.gr_betti);
    let _ = writeln!(s, "constructed table:\n{}", r.construct_betti);
    if with_trace {
        s.push_str(&trace_text(&r.trace));
    }
    for (name, v) in r.verdicts.named() {
        let _ = writeln!(s, "{name}: {v}");
    }
    s
}

fn trace_text(t: &ConstructionTrace) -> String {
    let mut s = String::new();
    match (t.variable, t.variable_weight, t.layers) {
        (Some(v), Some(d), Some(n)) => {
            let _ = writeln!(s, "eliminate variable {v} (weight {d}), N = {n}");
        }
        _ => {
            let _ = writeln!(s, "base case: free");
        }
    }
    let flat = |b: &BettiTable| format!("{:?}", b.iter().collect::<Vec<_>>());
    for st in &t.steps {
        let _ = writeln!(
            s,
            "layer {}: construct({:?}, {}) = {}; tensor -> {}; horseshoe {} -> {}",
            st.layer,
            st.sub_weights,
            st.sub_threshold,
            flat(&st.sub_betti),
            flat(&st.after_tensor),
            flat(&st.before_horseshoe),
            flat(&st.after_horseshoe)
        );
    }
    s
}

fn truncation_elements(ring: &RingSpec, twists: &[i64], e: i64) -> Result<(Vec<FreeElement>, Vec<i64>)> {
    let gen_degrees = if twists.is_empty() { vec![0] } else { twists.to_vec() };
    let ambient = FreeModule::new(ring.clone(), FreeModuleSpec::new(gen_degrees.clone()));
    let elems = trunc_free_gens(ring, &gen_degrees, e)
        .into_iter()
        .map(|(c, m)| FreeElement::monomial(&ambient, c, m))
        .collect::<Result<_>>()?;
    Ok((elems, gen_degrees))
}

fn ord_context(ring: &RingSpec, twists: &[i64], e: i64) -> Result<OrdContext> {
    let gen_degrees = if twists.is_empty() { vec![0] } else { twists.to_vec() };
    OrdContext::new(ring, trunc_free_gens(ring, &gen_degrees, e))
}

fn m2_monomial(ring: &RingSpec, m: &Monomial) -> String {
    ring.render_monomial(m)
}

/// Macaulay2 script resolving the truncated module, for manual cross-checks.
pub fn emit_cas(ring: &RingSpec, twists: &[i64], e: i64) -> String {
    let gen_degrees = if twists.is_empty() { vec![0] } else { twists.to_vec() };
    let mut s = String::new();
    let _ = writeln!(s, "-- truncation at e = {e} of the free module with generator degrees {gen_degrees:?}");
    let _ = writeln!(s, "kk = ZZ/{};", ring.characteristic());
    let weights: Vec<String> = ring.weights().iter().map(|w| w.to_string()).collect();
    let _ = writeln!(s, "S = kk[{}, Degrees => {{{}}}];", ring.names().join(", "), weights.join(", "));
    let twisted: Vec<String> = gen_degrees.iter().map(|t| format!("-{t}")).collect();
    let _ = writeln!(s, "F = S^{{{}}};", twisted.join(", "));
    let r = gen_degrees.len();
    let columns: Vec<String> = trunc_free_gens(ring, &gen_degrees, e)
        .iter()
        .map(|(c, m)| {
            let entries: Vec<String> =
                (0..r).map(|k| if k == *c { m2_monomial(ring, m) } else { "0".into() }).collect();
            format!("{{{}}}", entries.join(", "))
        })
        .collect();
    let _ = writeln!(s, "M = image map(F, , transpose matrix {{{}}});", columns.join(", "));
    let _ = writeln!(s, "C = res M;");
    let _ = writeln!(s, "print betti C;");
    s
}

fn write_cas(path: &PathBuf, ring: &RingSpec, twists: &[i64], e: i64) -> Result<()> {
    std::fs::write(path, emit_cas(ring, twists, e)).map_err(|err| Error::Internal(format!("{}: {err}", path.display())))
}

fn cmd_gens(case: &CaseArgs, twists: &TwistArgs) -> Result<Outcome> {
    let job = JobSpec::from_args(case)?;
    let gen_degrees = if twists.twists.is_empty() { vec![0] } else { twists.twists.clone() };
    let gens = trunc_free_gens(&job.ring, &gen_degrees, job.e);
    let table = BettiTable::from_entries(
        gens.iter().map(|(c, m)| (0, gen_degrees[*c] + m.weighted_degree(job.ring.weights()), 1)),
    );
    Ok(Outcome::ok(match job.format {
        OutputFormat::Json => to_line(&report_json(&job.ring, job.e, None, &table, &[], None)),
        OutputFormat::Csv => {
            let mut s = String::from("component,monomial,degree\n");
            for (c, m) in &gens {
                let _ = writeln!(s, "{c},{},{}", job.ring.render_monomial(m), gen_degrees[*c] + m.weighted_degree(job.ring.weights()));
            }
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for (c, m) in &gens {
                let deg = gen_degrees[*c] + m.weighted_degree(job.ring.weights());
                if gen_degrees.len() > 1 {
                    let _ = writeln!(s, "[{c}] {}  (degree {deg})", job.ring.render_monomial(m));
                } else {
                    let _ = writeln!(s, "{}  (degree {deg})", job.ring.render_monomial(m));
                }
            }
            s
        }
    }))
}

fn cmd_resolve(case: &CaseArgs, twists: &TwistArgs, differentials: bool, no_minimize: bool, cas: &Option<PathBuf>) -> Result<Outcome> {
    let job = JobSpec::from_args(case)?;
    let (elems, _) = truncation_elements(&job.ring, &twists.twists, job.e)?;
    let c = resolve_module(&elems, !no_minimize)?;
    if let Some(path) = cas {
        write_cas(path, &job.ring, &twists.twists, job.e)?;
    }
    let table = c.betti_table();
    Ok(Outcome::ok(match job.format {
        OutputFormat::Json => to_line(&report_json(&job.ring, job.e, None, &table, &[], None)),
        OutputFormat::Csv => betti_csv(&table),
        OutputFormat::Text => {
            let mut s = String::new();
            for (i, m) in c.modules().iter().enumerate() {
                let _ = writeln!(s, "F{i}: twists {:?}", m.degrees);
            }
            let _ = writeln!(s, "\n{table}");
            if differentials {
                for i in 1..=c.length() {
                    let _ = writeln!(s, "d{i}:\n{}\n", c.differential(i).render(c.ring()));
                }
            }
            s
        }
    }))
}

fn betti_csv(t: &BettiTable) -> String {
    let mut s = String::from("i,j,rank\n");
    for (i, j, r) in t.iter() {
        let _ = writeln!(s, "{i},{j},{r}");
    }
    s
}

fn cmd_gr_betti(case: &CaseArgs, twists: &TwistArgs) -> Result<Outcome> {
    let job = JobSpec::from_args(case)?;
    let table = gr_betti(&ord_context(&job.ring, &twists.twists, job.e)?, job.bound)?;
    let n = job.ring.num_vars() as i64;
    let verdict = if !table.is_diagonal() {
        Verdict::False
    } else if job.bound < n {
        Verdict::Inconclusive
    } else {
        Verdict::True
    };
    let output = match job.format {
        OutputFormat::Json => to_line(&report_json(&job.ring, job.e, Some(job.bound), &table, &[("gr_linear", verdict)], None)),
        OutputFormat::Csv => betti_csv(&table),
        OutputFormat::Text => format!("{table}gr_linear: {verdict} (j <= {})\n", job.bound),
    };
    Ok(Outcome::from_verdicts(output, [verdict]))
}

fn cmd_gr_hilbert(case: &CaseArgs, twists: &TwistArgs) -> Result<Outcome> {
    let job = JobSpec::from_args(case)?;
    let dims = gr_hilbert(&ord_context(&job.ring, &twists.twists, job.e)?, job.bound);
    Ok(Outcome::ok(match job.format {
        OutputFormat::Json => to_line(&json!({ "degree_dims": dims })),
        OutputFormat::Csv | OutputFormat::Text => {
            let mut s = String::from("degree,dim\n");
            for (d, v) in dims.iter().enumerate() {
                let _ = writeln!(s, "{d},{v}");
            }
            s
        }
    }))
}

fn cmd_lin_check(case: &CaseArgs) -> Result<Outcome> {
    let job = JobSpec::from_args(case)?;
    let (elems, _) = truncation_elements(&job.ring, &[], job.e)?;
    let f = resolve_module(&elems, true)?;
    let lin = linear_part(&f, &job.ring)?;
    let a = lin_acyclicity(&lin, job.bound);
    let table = lin.betti_table();
    let output = match job.format {
        OutputFormat::Json => to_line(&report_json(&job.ring, job.e, Some(job.bound), &table, &[("lin_acyclic", a.verdict)], None)),
        OutputFormat::Csv => {
            let mut s = String::from("i,j,dim\n");
            for ((i, j), d) in &a.homology {
                let _ = writeln!(s, "{i},{j},{d}");
            }
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for i in 1..=lin.length() {
                let _ = writeln!(s, "d{i}:\n{}\n", lin.differential(i).render(lin.ring()));
            }
            let _ = writeln!(s, "nonzero positive homology (i, j, dim): {:?}", a.obstructions());
            let _ = writeln!(s, "lin_acyclic: {} (j <= {})", a.verdict, job.bound);
            s
        }
    };
    Ok(Outcome::from_verdicts(output, [a.verdict]))
}

fn cmd_construct(case: &CaseArgs, twists: &TwistArgs, trace: bool) -> Result<Outcome> {
    let job = JobSpec::from_args(case)?;
    let (table, tr) = if twists.twists.is_empty() {
        construct_gr_betti(job.ring.weights(), job.e)?
    } else {
        let (_, tr) = construct_gr_betti(job.ring.weights(), job.e)?;
        (construct_free_betti(job.ring.weights(), &twists.twists, job.e)?, tr)
    };
    Ok(Outcome::ok(match job.format {
        OutputFormat::Json => to_line(&report_json(&job.ring, job.e, None, &table, &[], trace.then_some(&tr))),
        OutputFormat::Csv => betti_csv(&table),
        OutputFormat::Text => {
            let mut s = if trace { trace_text(&tr) } else { String::new() };
            let _ = write!(s, "{table}");
            s
        }
    }))
}

fn cmd_koszul(case: &CaseArgs, trace: bool, cas: &Option<PathBuf>) -> Result<Outcome> {
    let job = JobSpec::from_args(case)?;
    let r = koszul_verdict(&job.ring, job.e, job.bound)?;
    if let Some(path) = cas {
        write_cas(path, &job.ring, &[], job.e)?;
    }
    let output = match job.format {
        OutputFormat::Json => to_line(&koszul_report_json(&r, trace)),
        OutputFormat::Csv => {
            let mut s = String::from(SWEEP_HEADER_PREFIX);
            let n = r.ring.num_vars();
            for k in 0..=n {
                let _ = write!(s, ",beta_total_{k}");
            }
            s.push('\n');
            s.push_str(&sweep_row(&r, n));
            s
        }
        OutputFormat::Text => koszul_report_text(&r, trace),
    };
    Ok(Outcome::from_verdicts(output, r.verdicts.named().map(|p| p.1)))
}

fn cmd_ses_check(case: &CaseArgs, layer: Option<i64>) -> Result<Outcome> {
    let job = JobSpec::from_args(case)?;
    let w = job.ring.weights();
    let layers: Vec<i64> = match layer {
        Some(i) => vec![i],
        None if w.len() < 2 || job.e <= 0 => Vec::new(),
        None => (0..layer_count(job.e, w[elimination_variable(w).expect("nonempty")])).collect(),
    };
    let checks = layers.iter().map(|&i| ses_hilbert_check(w, job.e, i, job.bound)).collect::<Result<Vec<_>>>()?;
    let verdict = if checks.iter().all(|c| c.holds) { Verdict::True } else { Verdict::False };
    let output = match job.format {
        OutputFormat::Json => to_line(&report_json(&job.ring, job.e, Some(job.bound), &BettiTable::new(), &[("ses_exact", verdict)], None)),
        OutputFormat::Csv | OutputFormat::Text => {
            let mut s = String::from("layer,holds,middle,sub,quotient\n");
            for c in &checks {
                let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
                let _ = writeln!(s, "{},{},{},{},{}", c.layer, c.holds, join(&c.middle), join(&c.sub), join(&c.quotient));
            }
            s
        }
    };
    Ok(Outcome::from_verdicts(output, [verdict]))
}

const SWEEP_HEADER_PREFIX: &str = "vars,weights,e,bound,lin_acyclic,gr_linear,construction_match";

/// Nondecreasing weight vectors of every length `1..=max_vars`, sorted lexicographically.
pub fn weight_multisets(max_vars: usize, max_weight: u32) -> Vec<Vec<u32>> {
    fn rec(len: usize, min: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for w in min..=max {
            cur.push(w);
            rec(len, w, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for len in 1..=max_vars {
        rec(len, 1, max_weight, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

fn sweep_row(r: &KoszulReport, max_vars: usize) -> String {
    let w: Vec<String> = r.ring.weights().iter().map(|x| x.to_string()).collect();
    let mut s = format!(
        "{},\"{}\",{},{},{},{},{}",
        r.ring.num_vars(),
        w.join(","),
        r.e,
        r.bound,
        r.verdicts.lin_acyclic,
        r.verdicts.gr_linear,
        r.verdicts.construction_match
    );
    let totals = r.gr_betti.totals();
    for k in 0..=max_vars {
        let _ = write!(s, ",{}", totals.get(k).copied().unwrap_or(0));
    }
    s.push('\n');
    s
}

/// One computed sweep case.
pub struct SweepCase {
    pub report: KoszulReport,
    pub seconds: f64,
}

/// Runs every case of the grid; results come back sorted by weights, then `e`.
pub fn run_sweep(args: &SweepArgs) -> Result<Vec<SweepCase>> {
    let characteristic = args.characteristic.unwrap_or(DEFAULT_CHARACTERISTIC);
    let mut jobs = Vec::new();
    for w in weight_multisets(args.max_vars, args.max_weight) {
        let ring = RingSpec::with_weights(&w)?.with_characteristic(characteristic)?;
        for e in args.min_e..=args.max_e {
            let bound = args.bound.unwrap_or_else(|| default_bound(&ring, e));
            jobs.push((ring.clone(), e, bound));
        }
    }
    let run = || {
        jobs.par_iter()
            .map(|(ring, e, bound)| {
                let start = Instant::now();
                let report = koszul_verdict(ring, *e, *bound)?;
                Ok(SweepCase { report, seconds: start.elapsed().as_secs_f64() })
            })
            .collect::<Result<Vec<_>>>()
    };
    let mut cases = if args.workers == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(args.workers)
            .build()
            .map_err(|err| Error::Internal(err.to_string()))?
            .install(run)?
    };
    cases.sort_by(|a, b| a.report.ring.weights().cmp(b.report.ring.weights()).then(a.report.e.cmp(&b.report.e)));
    Ok(cases)
}

fn cmd_sweep(args: &SweepArgs) -> Result<Outcome> {
    let cases = run_sweep(args)?;
    // failing rows first, each group in canonical order
    let mut ordered: Vec<&SweepCase> = cases.iter().filter(|c| c.report.verdicts.overall() == Verdict::False).collect();
    ordered.extend(cases.iter().filter(|c| c.report.verdicts.overall() != Verdict::False));
    let output = match args.format {
        OutputFormat::Csv => {
            let mut s = String::from(SWEEP_HEADER_PREFIX);
            for k in 0..=args.max_vars {
                let _ = write!(s, ",beta_total_{k}");
            }
            s.push('\n');
            for c in &ordered {
                s.push_str(&sweep_row(&c.report, args.max_vars));
            }
            s
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = ordered.iter().map(|c| koszul_report_json(&c.report, false)).collect();
            to_line(&rows)
        }
        OutputFormat::Text => {
            let mut s = String::new();
            for c in &ordered {
                let v = &c.report.verdicts;
                let _ = writeln!(
                    s,
                    "{:?} e={} bound={}: lin_acyclic={} gr_linear={} construction_match={} totals={:?} ({:.3}s)",
                    c.report.ring.weights(),
                    c.report.e,
                    c.report.bound,
                    v.lin_acyclic,
                    v.gr_linear,
                    v.construction_match,
                    c.report.gr_betti.totals(),
                    c.seconds
                );
            }
            let _ = writeln!(s, "{} cases", cases.len());
            s
        }
    };
    Ok(Outcome::from_verdicts(output, cases.iter().map(|c| c.report.verdicts.overall())))
}

/// Runs a parsed command.
pub fn run_command(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Gens { case, twists } => cmd_gens(case, twists),
        Command::Resolve { case, twists, differentials, no_minimize, emit_cas } => {
            cmd_resolve(case, twists, *differentials, *no_minimize, emit_cas)
        }
        Command::GrBetti { case, twists } => cmd_gr_betti(case, twists),
        Command::GrHilbert { case, twists } => cmd_gr_hilbert(case, twists),
        Command::LinCheck { case } => cmd_lin_check(case),
        Command::Construct { case, twists, trace } => cmd_construct(case, twists, *trace),
        Command::Koszul { case, trace, emit_cas } => cmd_koszul(case, *trace, emit_cas),
        Command::SesCheck { case, layer } => cmd_ses_check(case, *layer),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

/// Entry point shared by the binary: parses `args`, prints, returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run_command(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(outcome.output.as_bytes());
            outcome.status
        }
        Err(err) => {
            eprintln!("error: {err}");
            EXIT_USAGE
        }
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn render_round_trips(w in prop::collection::vec(1u32..=9, 1..=5), p in prop::sample::select(vec![2u32, 3, 101, 32003, 65521])) {
            let ring = RingSpec::with_weights(&w).unwrap().with_characteristic(p).unwrap();
            prop_assert_eq!(parse_ring_spec(&ring.render()).unwrap(), ring);
        }
    }
}
