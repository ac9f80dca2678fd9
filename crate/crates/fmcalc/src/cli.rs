use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fmcalc_core::formal_module::hazewinkel_log;
use fmcalc_core::gamma::compute_gamma;
use fmcalc_core::number_ring::{find_nonsplit_prime, TowerDescriptor};
use fmcalc_core::torsion::{local_cohomology_degreewise, realizability_obstruction, SearchBounds};
use fmcalc_core::BigInt;
use serde_json::{json, Map, Value};

use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, CliResult};
use crate::json;
use crate::suites::{run_suite, SuiteOptions};

#[derive(Parser, Debug)]
#[command(name = "fmcalc", version, about = "Exact computations with formal A-modules and their classifying rings")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default)]
pub struct GlobalArgs {
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Residue degree (first irreducible polynomial of that degree).
    #[arg(long, global = true)]
    pub f: Option<usize>,
    /// Ramification degree (Eisenstein polynomial x^e - p).
    #[arg(long, global = true)]
    pub e: Option<usize>,
    /// Eisenstein coefficients over Q_p, constant first: "-2,0,1".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eis: Option<String>,
    /// Unramified polynomial, constant first: "1,1,1".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub unram: Option<String>,
    #[arg(long = "N", global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub weight_bound: Option<u64>,
    #[arg(long, global = true)]
    pub kmax: Option<u64>,
    #[arg(long, global = true)]
    pub mmax: Option<u64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputArg>,
    #[arg(long, global = true, env = "FMCALC_CONFIG")]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutputArg {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a tower and print its data.
    Tower {
        #[command(subcommand)]
        action: TowerAction,
    },
    /// Hazewinkel logarithm coefficients up to N.
    Log,
    /// Images of v_1..v_N under the comparison map from Q_p (or the
    /// unramified subtower) into the tower.
    Gamma {
        #[arg(long, value_enum, default_value = "base")]
        from: GammaSource,
    },
    /// Run a verification suite.
    Verify { suite: String },
    /// Certificate for a cyclic module given as JSON.
    Obstruct { spec: PathBuf },
    /// Smallest suitable nonsplit prime for a monic integer polynomial.
    Splitting {
        poly: String,
        #[arg(long, default_value_t = 100)]
        pmax: u64,
    },
    /// Degreewise local cohomology at (p) from presentation matrices.
    Localcoh { matrices: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum TowerAction {
    Check,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GammaSource {
    Base,
    Unramified,
}

/// Parse `argv`, run, write the report to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, format, ok)) => {
            let text = match format {
                OutputFormat::Json => json::canonical(&report),
                OutputFormat::Text => render_text(&report),
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let diag = json!({"error": e.name(), "message": e.to_string()});
            let _ = err.write_all(json::canonical(&diag).as_bytes());
            e.exit_code()
        }
    }
}

fn merged_config(g: &GlobalArgs) -> CliResult<RunConfig> {
    let mut cfg = RunConfig::discover(g.config.as_ref())?;
    if let Some(tower) = flag_tower(g)? {
        cfg.tower = Some(tower);
        cfg.towers = None;
    }
    cfg.n = g.n.or(cfg.n);
    cfg.weight_bound = g.weight_bound.or(cfg.weight_bound);
    cfg.k_max = g.kmax.or(cfg.k_max);
    cfg.m_max = g.mmax.or(cfg.m_max);
    cfg.seed = g.seed.or(cfg.seed);
    if let Some(o) = g.output {
        cfg.output = Some(match o {
            OutputArg::Json => OutputFormat::Json,
            OutputArg::Text => OutputFormat::Text,
        });
    }
    cfg.validate()?;
    Ok(cfg)
}

fn flag_tower(g: &GlobalArgs) -> CliResult<Option<Value>> {
    let Some(p) = g.p else {
        if g.f.is_some() || g.e.is_some() || g.eis.is_some() || g.unram.is_some() {
            return Err(CliError::Usage("tower flags need --p".into()));
        }
        return Ok(None);
    };
    let mut obj = Map::new();
    obj.insert("p".into(), json!(p));
    if let Some(f) = g.f {
        obj.insert("f".into(), json!(f));
    }
    if let Some(e) = g.e {
        obj.insert("e".into(), json!(e));
    }
    if let Some(s) = &g.eis {
        obj.insert("eis".into(), Value::Array(json::parse_coeff_list(s)?));
    }
    if let Some(s) = &g.unram {
        obj.insert("unram".into(), Value::Array(json::parse_coeff_list(s)?));
    }
    Ok(Some(Value::Object(obj)))
}

fn single_tower(cfg: &RunConfig) -> CliResult<std::sync::Arc<TowerDescriptor>> {
    let values = cfg.tower_values();
    let v = values
        .first()
        .ok_or_else(|| CliError::Usage("no tower given (use --p/--f/--e/--eis/--unram or a config file)".into()))?;
    json::tower_from_json(v)
}

fn read_json(path: &PathBuf) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Report, output format, and whether every check passed.
fn execute(cli: &Cli) -> CliResult<(Value, OutputFormat, bool)> {
    let cfg = merged_config(&cli.global)?;
    let seed = cfg.seed();
    let (mut report, ok) = match &cli.command {
        Command::Tower { action: TowerAction::Check } => (json::tower_to_json(&*single_tower(&cfg)?), true),
        Command::Log => {
            let t = single_tower(&cfg)?;
            let n = cfg.n.unwrap_or(4);
            let logs = hazewinkel_log(&t, n)?;
            let entries: Vec<Value> = logs
                .entries()
                .iter()
                .enumerate()
                .map(|(k, l)| json!({"n": k + 1, "log": json::poly_to_json(l)}))
                .collect();
            (json!({"tower": json::tower_to_json(&t), "N": n, "coefficients": entries}), true)
        }
        Command::Gamma { from } => {
            let t = single_tower(&cfg)?;
            let source = match from {
                GammaSource::Base => TowerDescriptor::base(t.p())?,
                GammaSource::Unramified => t.unramified_subtower(),
            };
            let table = compute_gamma(&source, &t, cfg.n.unwrap_or(4))?;
            (json::gamma_to_json(&table), true)
        }
        Command::Verify { suite } => {
            let towers = cfg
                .tower_values()
                .iter()
                .map(json::tower_from_json)
                .collect::<CliResult<Vec<_>>>()?;
            let opts = SuiteOptions {
                towers,
                n: cfg.n,
                weight_bound: cfg.weight_bound,
                m_max: cfg.m_max(),
                seed,
            };
            let report = run_suite(suite, &opts)?;
            let ok = report["passed"] == json!(true);
            (report, ok)
        }
        Command::Obstruct { spec } => {
            let mut module = json::module_from_json(&read_json(spec)?)?;
            if let Some(b) = cfg.weight_bound {
                module = module.with_weight_bound(b);
            }
            let bounds = SearchBounds {
                k_max: cfg.k_max(),
                m_max: cfg.m_max(),
            };
            let cert = realizability_obstruction(&module, bounds)?;
            (json::certificate_to_json(&cert), true)
        }
        Command::Splitting { poly, pmax } => {
            let coeffs = parse_univariate(poly)?;
            let r = find_nonsplit_prime(&coeffs, *pmax)?;
            (
                json!({
                    "poly": poly,
                    "pmax": pmax,
                    "prime": r.prime,
                    "factor_degrees": r.factor_degrees,
                    "ramified": r.ramified,
                    "splits_completely": r.splits_completely,
                }),
                true,
            )
        }
        Command::Localcoh { matrices } => {
            let (p, degrees) = json::localcoh_input(&read_json(matrices)?)?;
            (json::localcoh_to_json(&local_cohomology_degreewise(p, &degrees)?), true)
        }
    };
    if let Value::Object(map) = &mut report {
        map.insert("seed".into(), json!(seed));
    }
    Ok((report, cfg.output(), ok))
}

/// `"x^3 - 2"`, `"2*x^2+x-1"`, … into integer coefficients, constant first.
pub fn parse_univariate(s: &str) -> CliResult<Vec<BigInt>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(CliError::Usage("empty polynomial".into()));
    }
    let bad = || CliError::Usage(format!("cannot parse polynomial {s:?}"));
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in compact.char_indices() {
        if (c == '+' || c == '-') && i > 0 && !compact[..i].ends_with('^') {
            terms.push(&compact[start..i]);
            start = i;
        }
    }
    terms.push(&compact[start..]);
    let mut coeffs: Vec<BigInt> = Vec::new();
    for term in terms {
        let (coef, power) = match term.find('x') {
            Some(at) => {
                let head = term[..at].trim_end_matches('*');
                let coef = match head {
                    "" | "+" => BigInt::from(1),
                    "-" => BigInt::from(-1),
                    h => BigInt::from_str(h.trim_start_matches('+')).map_err(|_| bad())?,
                };
                let tail = &term[at + 1..];
                let power = match tail.strip_prefix('^') {
                    Some(k) => k.parse::<usize>().map_err(|_| bad())?,
                    None if tail.is_empty() => 1,
                    None => return Err(bad()),
                };
                (coef, power)
            }
            None => (BigInt::from_str(term.trim_start_matches('+')).map_err(|_| bad())?, 0),
        };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, BigInt::from(0));
        }
        coeffs[power] += coef;
    }
    Ok(coeffs)
}

/// Flattened `path: value` lines.
pub fn render_text(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let path = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&path, x, out);
                }
            }
            Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            leaf => {
                out.push_str(prefix);
                out.push_str(": ");
                match leaf {
                    Value::String(s) => out.push_str(s),
                    other => out.push_str(&other.to_string()),
                }
                out.push('\n');
            }
        }
    }
    let mut out = String::new();
    walk("", v, &mut out);
    out
}
