//! The `fse` command line: argument grammar, file formats and the
//! subcommand implementations, kept in a library so tests can drive them.

pub mod error;
pub mod io;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fse_core::counting::{self, DavisMethod};
use fse_core::enumerate::{self, Method};
use fse_core::fse::{self as fs, Solution};
use fse_core::funcgraph;
use fse_core::{EndoMap, Perm};
use num_bigint::BigUint;

pub use error::CliError;
use io::Document;

/// Environment variable fixing the worker count; unset means auto-detect.
pub const THREADS_ENV: &str = "FSE_THREADS";

const MAX_AUTF_BRUTE_N: usize = 8;
const MAX_BRUIJN_UPTO: usize = 40;

#[derive(Parser, Debug)]
#[command(name = "fse", version, about = "Set-theoretic Frobenius-Separability solutions on finite sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the FS and braid equations; exit 0 iff the FS equation holds.
    Verify { file: PathBuf },
    /// Print class flags, finite order and normal-form data of a solution.
    Classify { file: PathBuf },
    /// Enumerate solution classes on n points.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Keep only classes with this flag (e.g. bijective, indecomposable_left_nondeg).
        #[arg(long)]
        class: Option<String>,
        #[arg(long, value_enum, default_value_t = MethodArg::ViaQuadruple)]
        method: MethodArg,
        /// Directory receiving one file per representative.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Print an exact table of a counting sequence.
    Count {
        #[arg(long, value_enum)]
        series: Series,
        #[arg(long)]
        upto: usize,
        /// Evaluation route for `d`; the partition sum is limited to upto <= 40.
        #[arg(long, value_enum, default_value_t = DArg::Euler)]
        method: DArg,
    },
    /// Automorphism group of a self-map.
    Autf {
        file: PathBuf,
        /// Also filter the symmetric group and list generators (n ≤ 8).
        #[arg(long)]
        brute: bool,
    },
    /// Canonical code of a solution or a self-map.
    Canon { file: PathBuf },
    /// A permutation conjugating the first self-map into the second.
    Conjugate { f: PathBuf, g: PathBuf },
    /// Write the functional digraph of a self-map in dot format.
    ExportDot {
        file: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Cross-check generators and formulas for every size up to n (n ≤ 5).
    Selftest {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    ViaPointed,
    ViaQuadruple,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::ViaPointed => Method::ViaPointed,
            MethodArg::ViaQuadruple => Method::ViaQuadruple,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DArg {
    Bruijn,
    Euler,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Series {
    P,
    D,
    C,
    #[value(name = "T")]
    T,
    Fs1,
    Fsb,
    Unitary,
    IdempotentTotal,
    FiniteOrder,
    Landau,
}

impl Series {
    fn max_upto(self) -> usize {
        match self {
            Series::FiniteOrder => 40,
            Series::IdempotentTotal => 200,
            _ => 500,
        }
    }
}

/// Text for stdout and the process status (0 valid, 1 invalid).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Output {
    pub text: String,
    pub status: u8,
}

fn ok(text: String) -> Output {
    Output { text, status: 0 }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn endo_code(f: &EndoMap) -> String {
    String::from_utf8(funcgraph::canonical_code(f)).expect("codes are ASCII")
}

fn perm_text(p: &Perm) -> String {
    format!("{:?}", p.as_slice())
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Verify { file } => verify(&io::read_solution(file)?),
        Command::Classify { file } => classify(io::read_solution(file)?),
        Command::Enumerate { n, class, method, out } => enumerate(*n, class.as_deref(), (*method).into(), out.as_ref()),
        Command::Count { series, upto, method } => count(*series, *upto, *method),
        Command::Autf { file, brute } => autf(&io::read_endo(file)?, *brute),
        Command::Canon { file } => Ok(ok(match io::read_document(file)? {
            Document::Endo(f) => format!("{}\n", endo_code(&f)),
            Document::Solution(pm) => {
                let s = Solution::new(pm)?;
                format!("{}\n", hex(&fs::canonical_form(&s)))
            }
        })),
        Command::Conjugate { f, g } => {
            let (f, g) = (io::read_endo(f)?, io::read_endo(g)?);
            Ok(match funcgraph::are_conjugate(&f, &g) {
                Some(p) => ok(format!("{}\n", perm_text(&p))),
                None => Output { text: "none\n".into(), status: 1 },
            })
        }
        Command::ExportDot { file, out } => {
            let f = io::read_endo(file)?;
            io::write_text(out, &funcgraph::export_dot(&f))?;
            Ok(ok(format!("wrote {}\n", out.display())))
        }
        Command::Selftest { n } => selftest(*n),
    }
}

fn verify(pm: &fse_core::PairMap) -> Result<Output, CliError> {
    let r = fs::verify_fs(pm);
    let mut text = String::new();
    match r.witness {
        None => text.push_str("fs: valid\n"),
        Some((x, y, z)) => {
            let _ = writeln!(text, "fs: invalid (witness x = {x}, y = {y}, z = {z})");
        }
    }
    let braid = fs::verify_braid(pm);
    let _ = writeln!(text, "braid: {}", if braid { "valid" } else { "invalid" });
    Ok(Output { text, status: if r.valid { 0 } else { 1 } })
}

fn classify(pm: fse_core::PairMap) -> Result<Output, CliError> {
    let s = match Solution::new(pm) {
        Ok(s) => s,
        Err(fse_core::Error::NotASolution { witness }) => {
            let (x, y, z) = witness;
            return Ok(Output { text: format!("fs: invalid (witness x = {x}, y = {y}, z = {z})\n"), status: 1 });
        }
        Err(e) => return Err(e.into()),
    };
    let flags = fs::classify(&s)?;
    let q = fs::to_quadruple(&s);
    let mut text = String::new();
    for (name, v) in flags.named() {
        let _ = writeln!(text, "{name}: {v}");
    }
    match flags.finite_order {
        Some(o) => {
            let _ = writeln!(text, "finite_order: {o}");
        }
        None => text.push_str("finite_order: none\n"),
    }
    let _ = writeln!(text, "quadruple: a = {}, b = {}", q.a(), q.b());
    let _ = writeln!(text, "theta_prime: {:?}", q.theta_prime().as_slice());
    let _ = writeln!(text, "theta_prime_code: {}", endo_code(q.theta_prime()));
    match fs::aut_group(&s) {
        Ok(g) => {
            let _ = writeln!(text, "aut_order: {}", g.order);
        }
        Err(fse_core::Error::TooLarge { .. }) => text.push_str("aut_order: too large to compute\n"),
        Err(e) => return Err(e.into()),
    }
    Ok(ok(text))
}

fn enumerate(n: usize, class: Option<&str>, method: Method, out: Option<&PathBuf>) -> Result<Output, CliError> {
    let table = enumerate::solution_classes(n, method)?;
    if let Some(c) = class {
        if !table.counts.contains_key(c) {
            let names: Vec<&str> = table.counts.keys().map(String::as_str).collect();
            return Err(CliError::Usage(format!("unknown class \"{c}\"; expected one of {}", names.join(", "))));
        }
    }
    let selected: Vec<&enumerate::SolutionClass> = table
        .classes
        .iter()
        .filter(|cl| match class {
            None => true,
            Some(c) => enumerate::flag_counts(std::slice::from_ref(*cl)).get(c).copied() == Some(1),
        })
        .collect();
    let mut text = format!(
        "n = {n}, method = {}, class = {}: {} classes\n",
        method.name(),
        class.unwrap_or("all"),
        selected.len()
    );
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        for (i, cl) in selected.iter().enumerate() {
            let path = dir.join(format!("class_{i:04}.json"));
            io::write_text(&path, &io::solution_to_string(cl.representative.pm()))?;
        }
        let _ = writeln!(text, "wrote {} files to {}", selected.len(), dir.display());
    }
    Ok(ok(text))
}

fn count(series: Series, upto: usize, method: DArg) -> Result<Output, CliError> {
    if upto == 0 || upto > series.max_upto() {
        return Err(CliError::Usage(format!("--upto must be in 1..={}", series.max_upto())));
    }
    if series == Series::D && method == DArg::Bruijn && upto > MAX_BRUIJN_UPTO {
        return Err(CliError::Usage(format!("--method bruijn needs --upto <= {MAX_BRUIJN_UPTO}")));
    }
    let dm = match method {
        DArg::Bruijn => DavisMethod::BruijnSum,
        DArg::Euler => DavisMethod::EulerProduct,
    };
    let values: Vec<BigUint> = match series {
        Series::P => counting::partition_p(upto).coeffs[1..].to_vec(),
        Series::D => counting::davis_d(upto, dm).coeffs[1..].to_vec(),
        Series::C => counting::harary_c(upto).coeffs[1..].to_vec(),
        Series::T => counting::rooted_trees_t(upto).coeffs[1..].to_vec(),
        Series::Fs1 => counting::divisor_sums(&counting::davis_d(upto, dm))[1..].to_vec(),
        Series::Fsb => counting::divisor_sums(&counting::partition_p(upto))[1..].to_vec(),
        Series::Unitary => (1..=upto).map(counting::unitary_count).collect(),
        Series::IdempotentTotal => (1..=upto).map(counting::idempotent_total).collect(),
        Series::FiniteOrder => (1..=upto).map(counting::finite_order_count).collect(),
        Series::Landau => (1..=upto).map(counting::landau_g).collect(),
    };
    let mut text = String::new();
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(text, "{}\t{v}", i + 1);
    }
    Ok(ok(text))
}

/// Greedy generating set: keep an element if it is not yet generated.
fn greedy_generators(n: usize, elements: &[Perm]) -> Vec<Perm> {
    let mut gens: Vec<Perm> = Vec::new();
    let mut group: HashSet<Perm> = HashSet::from([Perm::identity(n)]);
    for p in elements {
        if group.contains(p) {
            continue;
        }
        gens.push(p.clone());
        let mut frontier: Vec<Perm> = group.iter().cloned().collect();
        while let Some(q) = frontier.pop() {
            for g in &gens {
                let r = q.compose(g).expect("same size");
                if group.insert(r.clone()) {
                    frontier.push(r);
                }
            }
        }
    }
    gens
}

fn autf(f: &EndoMap, brute: bool) -> Result<Output, CliError> {
    let (order, desc) = funcgraph::aut_order(f);
    let mut text = format!("order: {order}\n");
    for c in &desc.classes {
        let trees: Vec<String> = c.tree_orders.iter().map(ToString::to_string).collect();
        let _ = writeln!(
            text,
            "component {} x{}: cycle {}, rotations {}, tree orders [{}], order {}",
            c.code,
            c.multiplicity,
            c.cycle_len,
            c.rotations,
            trees.join(", "),
            c.component_order
        );
    }
    if brute {
        if f.len() > MAX_AUTF_BRUTE_N {
            return Err(CliError::Usage(format!("--brute needs n <= {MAX_AUTF_BRUTE_N}")));
        }
        let all = funcgraph::aut_brute(f)?;
        let _ = writeln!(text, "brute order: {}", all.len());
        for g in greedy_generators(f.len(), &all) {
            let _ = writeln!(text, "generator: {}", perm_text(&g));
        }
    }
    Ok(ok(text))
}

fn selftest(n: usize) -> Result<Output, CliError> {
    let report = enumerate::selftest(n)?;
    let mut text = String::new();
    for (line, pass) in &report.lines {
        let _ = writeln!(text, "{} {line}", if *pass { "PASS" } else { "FAIL" });
    }
    let passed = report.passed();
    let _ = writeln!(text, "{}", if passed { "all checks passed" } else { "some checks FAILED" });
    Ok(Output { text, status: if passed { 0 } else { 1 } })
}

/// Configures the global worker pool from [`THREADS_ENV`].
pub fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let k: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got \"{v}\"")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(k)
        .build_global()
        .map_err(|e| CliError::Usage(format!("{THREADS_ENV}: {e}")))
}
