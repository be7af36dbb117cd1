//! Command-line driver: one job per invocation, a JSON artifact on stdout (or `--out`),
//! structured JSON errors on stderr.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cartan::{CartanDatum, CartanError};
use crate::charring::{chi_mu, qq_constant, verify_qq, CharError};
use crate::hopfpair::{hopf_pair, verify_antipode_lemma, HopfError, MonomialWord};
use crate::lweights::{check_a_ratio, LWeight, LWeightError};
use crate::scalars::{parse_point, scalar_to_string, ParseError};
use crate::shuffle::{
    shuffle_product, wheel_membership, ShuffleElement, ShuffleError, ShuffleJson,
};
use crate::simplemod::{
    dim_weight_space, qcharacter_reports, DimConfig, Pipeline, SimpleError, SupportPoint,
};

/// Environment variable naming the results cache directory.
pub const CACHE_ENV: &str = "QSHUFFLE_CACHE_DIR";

pub const SCHEMA_VERSION: &str = "1";

#[derive(Parser, Debug)]
#[command(
    name = "qshuffle",
    version,
    about = "Shuffle-algebra computations for quantum loop algebra modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Command,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Ignore the results cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Args, Debug, Clone)]
pub struct CartanArg {
    /// Preset name (A1, A2, A3, B2, G2, A2hat) or a symmetrized matrix "2,-1;-1,2".
    #[arg(long, default_value = "A1")]
    pub cartan: String,
}

#[derive(Args, Debug, Clone)]
pub struct ElementArg {
    /// Product of generators e_{i,d}, e.g. "(1,0),(2,-1)".
    #[arg(long, conflicts_with = "f")]
    pub gens: Option<String>,
    /// A shuffle element as JSON.
    #[arg(long)]
    pub f: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct WindowArgs {
    /// Laurent window W (default 3 + max pole order).
    #[arg(long)]
    pub w: Option<usize>,
    /// Exponent window D (default W + max pole order).
    #[arg(long)]
    pub d: Option<usize>,
    /// Lattice radius K.
    #[arg(long, default_value_t = 4)]
    pub lattice: usize,
    /// Maximal number of window enlargements.
    #[arg(long, default_value_t = 3)]
    pub cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Shuffle product of generators or of JSON elements.
    Shuffle {
        #[command(flatten)]
        cartan: CartanArg,
        /// Generators e_{i,d} multiplied left to right, e.g. "(1,0),(1,-1)".
        #[arg(long)]
        gens: Option<String>,
        /// Elements to multiply, in order.
        #[arg(long, num_args = 1..)]
        inputs: Vec<PathBuf>,
    },
    /// Hopf pairing <e-word, F>.
    Pair {
        #[command(flatten)]
        cartan: CartanArg,
        /// Word e_{i1,d1} ... e_{in,dn}, e.g. "(1,0),(1,2)".
        #[arg(long)]
        word: String,
        #[command(flatten)]
        elem: ElementArg,
    },
    /// Dimension of one l-weight space.
    Dim {
        #[command(flatten)]
        cartan: CartanArg,
        /// l-weight, one component per color separated by ';',
        /// e.g. "q | zeros: a*q^-1 | poles: a*q".
        #[arg(long)]
        psi: String,
        /// Degree per color, e.g. "2" or "1,1".
        #[arg(long)]
        n: String,
        /// Points per color separated by ';', e.g. "1*a^1, 1*a^1*q^-2".
        #[arg(long)]
        x: String,
        #[command(flatten)]
        win: WindowArgs,
        /// borel or shifted.
        #[arg(long, default_value = "borel")]
        pipeline: String,
    },
    /// Truncated q-character of L(psi).
    Qchar {
        #[command(flatten)]
        cartan: CartanArg,
        /// l-weight, one component per color separated by ';',
        /// e.g. "q | zeros: a*q^-1 | poles: a*q".
        #[arg(long)]
        psi: String,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[command(flatten)]
        win: WindowArgs,
    },
    /// Normalization character chi^mu.
    ChiMu {
        #[command(flatten)]
        cartan: CartanArg,
        /// Coweight in fundamental coordinates, e.g. "1,0".
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// QQ-system check on truncated characters.
    VerifyQq {
        #[command(flatten)]
        cartan: CartanArg,
        /// 1-based node.
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long, default_value = "1*a^1")]
        a: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Defaults to the depth.
        #[arg(long)]
        nmax: Option<usize>,
        #[command(flatten)]
        win: WindowArgs,
    },
    /// Both sides of the antipode identity for <e-word psi, F>.
    VerifyAntipode {
        #[command(flatten)]
        cartan: CartanArg,
        /// l-weight, one component per color separated by ';',
        /// e.g. "q | zeros: a*q^-1 | poles: a*q".
        #[arg(long)]
        psi: String,
        /// Word e_{i1,d1} ... e_{in,dn}, e.g. "(1,0),(1,2)".
        #[arg(long)]
        word: String,
        #[command(flatten)]
        elem: ElementArg,
        /// Series truncation T (default from the degrees involved).
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Wheel membership of an element, or of random generator products.
    WheelCheck {
        #[command(flatten)]
        cartan: CartanArg,
        #[command(flatten)]
        elem: ElementArg,
        /// Number of random products of at most `max_gens` generators to test instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_gens: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The constant left over in psi~ ratios divided by A^{-1}_{i,a}.
    ARatio {
        #[command(flatten)]
        cartan: CartanArg,
        /// 1-based node; all nodes if omitted.
        #[arg(long)]
        i: Option<usize>,
        #[arg(long, default_value = "1*a^1")]
        a: String,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    LWeight(#[from] LWeightError),
    #[error(transparent)]
    Shuffle(#[from] ShuffleError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Simple(#[from] SimpleError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    fn simple(&self) -> Option<&SimpleError> {
        match self {
            CliError::Simple(e) | CliError::Char(CharError::Simple(e)) => Some(e),
            _ => None,
        }
    }

    /// 0 ok, 1 parse, 2 not stabilized, 3 unsupported Cartan class.
    pub fn exit_code(&self) -> i32 {
        if let Some(e) = self.simple() {
            return match e {
                SimpleError::NotStabilized { .. } => 2,
                SimpleError::Unsupported(_) | SimpleError::Cartan(CartanError::NotFinite) => 3,
                _ => 1,
            };
        }
        match self {
            CliError::Shuffle(ShuffleError::Unsupported(_))
            | CliError::Cartan(CartanError::NotFinite)
            | CliError::Char(CharError::Cartan(CartanError::NotFinite)) => 3,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "not_stabilized",
            3 => "unsupported_cartan",
            _ => match self {
                CliError::Parse(_) | CliError::LWeight(LWeightError::Parse(_)) => "parse",
                CliError::Usage(_) => "usage",
                CliError::Io(_) => "io",
                _ => "error",
            },
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": { "kind": self.kind(), "message": self.to_string() } });
        let pos = match self {
            CliError::Parse(p) | CliError::LWeight(LWeightError::Parse(p)) => Some(p.pos),
            CliError::Shuffle(ShuffleError::Parse(p)) | CliError::Hopf(HopfError::Parse(p)) => {
                Some(p.pos)
            }
            _ => None,
        };
        if let Some(p) = pos {
            v["error"]["position"] = json!(p);
        }
        if let Some(SimpleError::NotStabilized { n, x, trace }) = self.simple() {
            v["error"]["n"] = json!(n);
            v["error"]["x"] = json!(x);
            v["error"]["rank_trace"] = json!(trace);
        }
        v
    }
}

pub fn parse_cartan(s: &str) -> Result<CartanDatum, CliError> {
    match CartanDatum::preset(s) {
        Ok(c) => Ok(c),
        Err(CartanError::UnknownPreset(_))
            if s.contains(',') || s.trim().parse::<i64>().is_ok() =>
        {
            Ok(CartanDatum::parse_matrix(s)?)
        }
        Err(e) => Err(e.into()),
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>, ParseError> {
    let mut out = Vec::new();
    let mut off = 0;
    for part in s.split(',') {
        let t = part.trim();
        out.push(t.parse().map_err(|_| ParseError {
            pos: off + part.len() - part.trim_start().len(),
            msg: format!("expected integer, found '{}'", t),
        })?);
        off += part.len() + 1;
    }
    Ok(out)
}

fn generators(c: &CartanDatum, s: &str) -> Result<ShuffleElement, CliError> {
    let w = MonomialWord::parse(s)?;
    if let Some((i, _)) = w.0.iter().find(|(i, _)| *i >= c.rank()) {
        return Err(CliError::Usage(format!(
            "color {} exceeds the rank {}",
            i + 1,
            c.rank()
        )));
    }
    let gens: Vec<ShuffleElement> =
        w.0.iter()
            .map(|&(i, d)| ShuffleElement::generator(c.rank(), i, d as i32))
            .collect();
    Ok(shuffle_product(c, &gens)?)
}

fn read_element(p: &PathBuf) -> Result<ShuffleElement, CliError> {
    let j: ShuffleJson = serde_json::from_str(&std::fs::read_to_string(p)?)?;
    Ok(ShuffleElement::from_json(&j)?)
}

fn element(c: &CartanDatum, e: &ElementArg) -> Result<ShuffleElement, CliError> {
    match (&e.gens, &e.f) {
        (Some(g), _) => generators(c, g),
        (None, Some(p)) => read_element(p),
        (None, None) => Err(CliError::Usage("give --gens or --f".into())),
    }
}

fn dim_config(win: &WindowArgs, cache: Option<PathBuf>) -> DimConfig {
    DimConfig {
        w: win.w,
        d: win.d,
        k: win.lattice,
        cap: win.cap,
        cache_dir: cache,
    }
}

fn node(c: &CartanDatum, i: usize) -> Result<usize, CliError> {
    if i == 0 || i > c.rank() {
        return Err(CliError::Usage(format!(
            "node {} outside 1..={}",
            i,
            c.rank()
        )));
    }
    Ok(i - 1)
}

/// Runs one job and returns (operation name, echoed inputs, outputs).
fn dispatch(
    cmd: &Command,
    cache: Option<PathBuf>,
) -> Result<(&'static str, Value, Value), CliError> {
    Ok(match cmd {
        Command::Shuffle {
            cartan,
            gens,
            inputs,
        } => {
            let c = parse_cartan(&cartan.cartan)?;
            let e = match gens {
                Some(g) => generators(&c, g)?,
                None => {
                    let es = inputs
                        .iter()
                        .map(read_element)
                        .collect::<Result<Vec<_>, _>>()?;
                    if es.is_empty() {
                        return Err(CliError::Usage("give --gens or --inputs".into()));
                    }
                    shuffle_product(&c, &es)?
                }
            };
            (
                "shuffle",
                json!({ "cartan": c.name, "gens": gens, "inputs": inputs }),
                json!({ "element": e.to_json() }),
            )
        }
        Command::Pair { cartan, word, elem } => {
            let c = parse_cartan(&cartan.cartan)?;
            let w = MonomialWord::parse(word)?;
            let f = element(&c, elem)?;
            let v = hopf_pair(&c, &w, &f);
            (
                "pair",
                json!({ "cartan": c.name, "word": w.to_string(), "f": f.to_json() }),
                json!({ "value": scalar_to_string(&v) }),
            )
        }
        Command::Dim {
            cartan,
            psi,
            n,
            x,
            win,
            pipeline,
        } => {
            let c = parse_cartan(&cartan.cartan)?;
            let psi = LWeight::parse_rank(psi, c.rank())?;
            let n: Vec<usize> = parse_ints(n)?
                .into_iter()
                .map(|k| k.max(0) as usize)
                .collect();
            let x = SupportPoint::parse(x, c.rank())?;
            let p = match pipeline.as_str() {
                "borel" => Pipeline::Borel,
                "shifted" => Pipeline::Shifted,
                other => return Err(CliError::Usage(format!("unknown pipeline '{}'", other))),
            };
            let cfg = dim_config(win, cache);
            let r = dim_weight_space(&c, &psi, &n, &x, &cfg, p)?;
            (
                "dim",
                json!({ "cartan": c.name, "psi": psi.to_string(), "n": n, "x": x.to_json(), "pipeline": pipeline }),
                json!({ "reports": [r.to_json()] }),
            )
        }
        Command::Qchar {
            cartan,
            psi,
            nmax,
            win,
        } => {
            let c = parse_cartan(&cartan.cartan)?;
            let psi = LWeight::parse_rank(psi, c.rank())?;
            let cfg = dim_config(win, cache);
            let (qc, reps) = qcharacter_reports(&c, &psi, *nmax, &cfg)?;
            let nonzero: Vec<_> = reps
                .iter()
                .filter(|r| r.dimension > 0)
                .map(|r| r.to_json())
                .collect();
            (
                "qchar",
                json!({ "cartan": c.name, "psi": psi.to_string(), "nmax": nmax, "lattice": win.lattice }),
                json!({ "qcharacter": qc.to_json(), "reports": nonzero, "points_tested": reps.len(), "text": qc.to_string() }),
            )
        }
        Command::ChiMu { cartan, mu, depth } => {
            let c = parse_cartan(&cartan.cartan)?;
            let mu = parse_ints(mu)?;
            if mu.len() != c.rank() {
                return Err(CliError::Usage(format!("mu needs {} entries", c.rank())));
            }
            let s = chi_mu(&c, &mu, *depth)?;
            (
                "chi-mu",
                json!({ "cartan": c.name, "mu": mu, "depth": depth }),
                json!({ "series": s.to_json(), "text": s.to_string() }),
            )
        }
        Command::VerifyQq {
            cartan,
            i,
            a,
            depth,
            nmax,
            win,
        } => {
            let c = parse_cartan(&cartan.cartan)?;
            let i0 = node(&c, *i)?;
            let a = parse_point(a)?;
            let nmax = nmax.unwrap_or(*depth);
            let cfg = dim_config(win, cache);
            let r = verify_qq(&c, i0, &a, *depth, nmax, &cfg)?;
            (
                "verify-qq",
                json!({ "cartan": c.name, "i": i, "a": a.to_string(), "depth": depth, "nmax": nmax }),
                json!({
                    "holds": r.holds,
                    "lhs": r.lhs.to_json(),
                    "rhs": r.rhs.to_json(),
                    "chi": qq_constant(&c, i0, *depth)?.to_json(),
                    "lhs_text": r.lhs.to_string(),
                    "rhs_text": r.rhs.to_string(),
                    "qchar_sizes": r.qchar_sizes,
                }),
            )
        }
        Command::VerifyAntipode {
            cartan,
            psi,
            word,
            elem,
            trunc,
        } => {
            let c = parse_cartan(&cartan.cartan)?;
            let psi = LWeight::parse_rank(psi, c.rank())?;
            let w = MonomialWord::parse(word)?;
            let f = element(&c, elem)?;
            let r = verify_antipode_lemma(&c, &w, &psi, &f, *trunc)?;
            (
                "verify-antipode",
                json!({ "cartan": c.name, "psi": psi.to_string(), "word": w.to_string(), "f": f.to_json(), "trunc": trunc }),
                json!({ "equal": r.equal, "lhs": scalar_to_string(&r.lhs), "rhs": scalar_to_string(&r.rhs), "trunc": r.trunc }),
            )
        }
        Command::WheelCheck {
            cartan,
            elem,
            random,
            max_gens,
            seed,
        } => {
            let c = parse_cartan(&cartan.cartan)?;
            match random {
                None => {
                    let f = element(&c, elem)?;
                    let ok = wheel_membership(&c, &f)?;
                    (
                        "wheel-check",
                        json!({ "cartan": c.name, "f": f.to_json() }),
                        json!({ "member": ok }),
                    )
                }
                Some(k) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    let mut cases = Vec::new();
                    let mut all = true;
                    for _ in 0..*k {
                        let len = rng.gen_range(1..=(*max_gens).max(1));
                        let word: Vec<(usize, i64)> = (0..len)
                            .map(|_| (rng.gen_range(0..c.rank()), rng.gen_range(-2..=2)))
                            .collect();
                        let text = MonomialWord(word).to_string();
                        let ok = wheel_membership(&c, &generators(&c, &text)?)?;
                        all &= ok;
                        cases.push(json!({ "gens": text, "member": ok }));
                    }
                    (
                        "wheel-check",
                        json!({ "cartan": c.name, "random": k, "max_gens": max_gens, "seed": seed }),
                        json!({ "all_members": all, "cases": cases }),
                    )
                }
            }
        }
        Command::ARatio { cartan, i, a } => {
            let c = parse_cartan(&cartan.cartan)?;
            let a = parse_point(a)?;
            let nodes: Vec<usize> = match i {
                Some(i) => vec![node(&c, *i)?],
                None => (0..c.rank()).collect(),
            };
            let mut rows = Vec::new();
            for i0 in nodes {
                let (is_one, k) = check_a_ratio(&c, i0, &a)?;
                rows.push(json!({ "i": i0 + 1, "identity": is_one, "constant": k.iter().map(scalar_to_string).collect::<Vec<_>>() }));
            }
            (
                "a-ratio",
                json!({ "cartan": c.name, "a": a.to_string(), "i": i }),
                json!({ "ratios": rows }),
            )
        }
    })
}

/// The artifact for a parsed command line; timing is the only nondeterministic field.
pub fn run(cli: &Cli) -> Result<Value, CliError> {
    let cache = if cli.no_cache {
        None
    } else {
        std::env::var_os(CACHE_ENV).map(PathBuf::from)
    };
    let t = Instant::now();
    let (op, inputs, outputs) = dispatch(&cli.cmd, cache)?;
    Ok(json!({
        "schema": format!("qshuffle/{}/v{}", op, SCHEMA_VERSION),
        "operation": op,
        "inputs": inputs,
        "outputs": outputs,
        "timing_ms": t.elapsed().as_millis() as u64,
    }))
}

/// Entry point for the binary: returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = write!(std::io::stdout(), "{}", e);
            return 0;
        }
        Err(e) => {
            eprintln!(
                "{}",
                json!({ "error": { "kind": "usage", "message": e.to_string() } })
            );
            return 1;
        }
    };
    match run(&cli) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("json values serialize");
            match &cli.out {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text + "\n") {
                        eprintln!("{}", CliError::Io(e).to_json());
                        return 1;
                    }
                }
                // A closed pipe (e.g. `| head`) is not an error worth reporting.
                None => {
                    let _ = writeln!(std::io::stdout(), "{}", text);
                }
            }
            0
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
