use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use tanner_zx::effective::coupled_layer_scan;
use tanner_zx::pauli::build_hamiltonian;
use tanner_zx::process::{extract_defect, extract_minimal_coupling, extract_product, AncillaState};
use tanner_zx::sim::{qubit, x_superposition, Qubit};
use tanner_zx::{
    apply_process, check_product, exact_spectrum, fit_power_law, pq_product, tensor_product,
    verify_duality, verify_product, AncillaOverrides, ClassicalCode, DenseState, Probe,
    ProductKind, QuantumProcess, Realization,
};

use crate::alist::{emit_alist, parse_alist, parse_dense};
use crate::document::{from_json, to_json};
use crate::error::CliError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Amplitudes below this are left out of printed states.
const PRINT_FLOOR: f64 = 1e-12;

#[derive(Debug, Parser)]
#[command(name = "tanner-zx", version, about = "Kramers-Wannier processes for classical LDPC codes")]
pub struct Cli {
    /// Read parity checks as rows of 0/1 instead of alist.
    #[arg(long, global = true)]
    dense: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect or transform a single code.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Build a product code.
    Product {
        #[command(subcommand)]
        kind: ProductAction,
    },
    /// Extract a process realizing the KW map of a code.
    Extract {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = RealizationArg::Defect)]
        realization: RealizationArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extract the merge process of two layers.
    ExtractProduct {
        #[arg(value_enum)]
        kind: KindArg,
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the operator relations of a process: `<code> <proc>` or `<A> <B> <proc>`.
    Verify {
        #[arg(num_args = 2..=3, required = true)]
        files: Vec<PathBuf>,
    },
    /// Run a process on a product input state.
    Simulate {
        process: PathBuf,
        #[arg(long, value_enum, default_value_t = InputArg::Plus)]
        input: InputArg,
        /// `[<wire>=]<state>` with state plus|minus|zero|one|default or `a,b` for a|+⟩+b|−⟩.
        #[arg(long)]
        ancilla: Vec<String>,
        /// Expected output, in the printed amplitude format.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Lowest eigenvalues of `-J Σ checks - h Σ X`.
    Spectrum {
        code: PathBuf,
        #[arg(long = "J", default_value_t = 1.0, allow_negative_numbers = true)]
        j: f64,
        #[arg(long = "h", default_value_t = 0.0, allow_negative_numbers = true)]
        h: f64,
        #[arg(short = 'k', default_value_t = 4)]
        k: usize,
    },
    /// Effective amplitude of an emergent operator in a coupled-layer model.
    Perturbation {
        #[arg(value_enum)]
        kind: KindArg,
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        h1: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        h2: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        lambdas: Vec<f64>,
        #[arg(long, value_enum, default_value_t = ProbeArg::Flip)]
        probe: ProbeArg,
    },
}

#[derive(Debug, Subcommand)]
enum CodeAction {
    /// Size, rank and symmetry/redundancy bases.
    Info { input: PathBuf },
    /// The code checked by Hᵀ.
    Transpose {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A check matrix for the dual code.
    Perp {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum ProductAction {
    /// Codewords are arrays whose rows and columns are codewords.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check matrix H₂ ⊗ H₁.
    Check {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Checks drawn from every q-subset of the factors.
    Pq {
        #[arg(long)]
        q: usize,
        #[arg(num_args = 2.., required = true)]
        codes: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RealizationArg {
    Defect,
    Minimal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Tensor,
    Check,
}

impl From<KindArg> for ProductKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Tensor => ProductKind::Tensor,
            KindArg::Check => ProductKind::Check,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InputArg {
    Plus,
    Zero,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProbeArg {
    Flip,
    Plaquette,
}

/// Parses `argv` and runs the command; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_ERROR
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_PASS
            };
        }
    };
    match execute(&cli, out) {
        Ok(status) => status,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::from(e).in_file(path.display().to_string()))
}

fn read_code(path: &Path, dense: bool) -> Result<ClassicalCode, CliError> {
    let text = read(path)?;
    let parsed = if dense { parse_dense(&text) } else { parse_alist(&text) };
    parsed.map_err(|e| e.in_file(path.display().to_string()))
}

fn read_process(path: &Path) -> Result<QuantumProcess, CliError> {
    from_json(&read(path)?).map_err(|e| e.in_file(path.display().to_string()))
}

/// Writes `text` to `path`, or to `out` when no path is given.
fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::from(e).in_file(p.display().to_string())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn supports(sets: &[Vec<usize>]) -> String {
    sets.iter()
        .map(|s| format!("  {}\n", s.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")))
        .collect()
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let code = |p: &PathBuf| read_code(p, cli.dense);
    match &cli.command {
        Command::Code { action } => match action {
            CodeAction::Info { input } => {
                let c = code(input)?;
                let mut text = String::new();
                let _ = writeln!(text, "n {}\nm {}\nrank {}\nk {}\nk_transpose {}", c.n(), c.m(), c.rank(), c.k(), c.k_transpose());
                let _ = write!(text, "symmetries\n{}", supports(&c.symmetries()));
                let _ = write!(text, "redundancies\n{}", supports(&c.redundancies()));
                out.write_all(text.as_bytes())?;
            }
            CodeAction::Transpose { input, output } => {
                emit(&emit_alist(&code(input)?.transpose_code()), output.as_deref(), out)?;
            }
            CodeAction::Perp { input, output } => {
                emit(&emit_alist(&code(input)?.perp_code()), output.as_deref(), out)?;
            }
        },
        Command::Product { kind } => {
            let (result, output) = match kind {
                ProductAction::Tensor { a, b, output } => (tensor_product(&code(a)?, &code(b)?), output),
                ProductAction::Check { a, b, output } => (check_product(&code(a)?, &code(b)?), output),
                ProductAction::Pq { q, codes, output } => {
                    let codes = codes.iter().map(code).collect::<Result<Vec<_>, _>>()?;
                    (pq_product(&codes, *q)?, output)
                }
            };
            emit(&emit_alist(&result), output.as_deref(), out)?;
        }
        Command::Extract { input, realization, output } => {
            let c = code(input)?;
            let p = match realization {
                RealizationArg::Defect => extract_defect(&c),
                RealizationArg::Minimal => extract_minimal_coupling(&c),
            };
            emit(&to_json(&p), output.as_deref(), out)?;
        }
        Command::ExtractProduct { kind, a, b, output } => {
            let p = extract_product(&code(a)?, &code(b)?, (*kind).into());
            emit(&to_json(&p), output.as_deref(), out)?;
        }
        Command::Verify { files } => return verify(files, cli.dense, out),
        Command::Simulate { process, input, ancilla, expect } => {
            return simulate(process, *input, ancilla, expect.as_deref(), out);
        }
        Command::Spectrum { code: path, j, h, k } => {
            let c = code(path)?;
            let energies = exact_spectrum(&build_hamiltonian(&c, *j, *h), *k)?;
            let mut text = format!("wires {}\n", c.n());
            for (idx, e) in energies.iter().enumerate() {
                let _ = writeln!(text, "{idx} {}", fixed(*e));
            }
            out.write_all(text.as_bytes())?;
        }
        Command::Perturbation { kind, a, b, h1, h2, lambdas, probe } => {
            let probe = match probe {
                ProbeArg::Flip => Probe::Flip,
                ProbeArg::Plaquette => Probe::Plaquette,
            };
            let samples = coupled_layer_scan(&code(a)?, &code(b)?, (*kind).into(), *h1, *h2, lambdas, probe)?;
            let mut text = String::from("lambda amplitude\n");
            for (l, amp) in &samples {
                let _ = writeln!(text, "{l} {amp:.9e}");
            }
            if samples.len() >= 2 {
                match fit_power_law(&samples) {
                    Ok(fit) => {
                        let _ = writeln!(
                            text,
                            "fit exponent {:.4} constant {:.6e} residual {:.2e}",
                            fit.exponent, fit.constant, fit.residual
                        );
                    }
                    Err(e) => {
                        let _ = writeln!(text, "fit unavailable: {e}");
                    }
                }
            }
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(EXIT_PASS)
}

fn verify(files: &[PathBuf], dense: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let (proc_path, codes) = files.split_last().expect("clap requires at least two files");
    let p = read_process(proc_path)?;
    let codes = codes.iter().map(|c| read_code(c, dense)).collect::<Result<Vec<_>, _>>()?;
    let report = match (codes.as_slice(), p.realization()) {
        ([c], Realization::Defect | Realization::MinimalCoupling) => {
            if (p.n_in(), p.n_out()) != (c.n(), c.m()) {
                return Err(CliError::Usage(format!(
                    "process maps {} to {} wires but the code has n={} m={}",
                    p.n_in(),
                    p.n_out(),
                    c.n(),
                    c.m()
                )));
            }
            verify_duality(c, &p)?
        }
        ([a, b], Realization::TensorMerge | Realization::CheckMerge) => {
            let sites = a.n() * b.n();
            if (p.n_in(), p.n_out()) != (2 * sites, sites) {
                return Err(CliError::Usage(format!(
                    "process maps {} to {} wires, layers need {} to {sites}",
                    p.n_in(),
                    p.n_out(),
                    2 * sites
                )));
            }
            let kind = if p.realization() == Realization::TensorMerge {
                ProductKind::Tensor
            } else {
                ProductKind::Check
            };
            verify_product(a, b, kind, &p)?
        }
        _ => {
            return Err(CliError::Usage(
                "KW processes take one code, merge processes take two".into(),
            ))
        }
    };
    writeln!(out, "{report}")?;
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

/// `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
fn parse_complex(text: &str) -> Option<Complex64> {
    let t = text.trim();
    let Some(body) = t.strip_suffix('i') else {
        return t.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is not the leading one or an exponent sign
    let split = body
        .char_indices()
        .filter(|&(k, c)| (c == '+' || c == '-') && k > 0 && !matches!(body.as_bytes()[k - 1], b'e' | b'E'))
        .map(|(k, _)| k)
        .next_back();
    let (re, im) = match split {
        Some(k) => (body[..k].parse().ok()?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        s => s.parse().ok()?,
    };
    Some(Complex64::new(re, im))
}

fn parse_qubit(text: &str) -> Result<Option<Qubit>, CliError> {
    let named = match text {
        "default" => return Ok(None),
        "plus" => Some(AncillaState::Plus),
        "minus" => Some(AncillaState::Minus),
        "zero" => Some(AncillaState::Zero),
        "one" => Some(AncillaState::One),
        _ => None,
    };
    if let Some(state) = named {
        return Ok(Some(qubit(state)));
    }
    let bad = || CliError::Usage(format!("cannot read ancilla state `{text}`"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let (a, b) = (parse_complex(a).ok_or_else(bad)?, parse_complex(b).ok_or_else(bad)?);
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if norm == 0.0 {
        return Err(CliError::Usage("ancilla state has zero norm".into()));
    }
    Ok(Some(x_superposition(a / norm, b / norm)))
}

fn overrides(p: &QuantumProcess, specs: &[String]) -> Result<AncillaOverrides, CliError> {
    let mut map = AncillaOverrides::new();
    for spec in specs {
        let (wires, state) = match spec.split_once('=') {
            Some((w, s)) => {
                let w: usize = w
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad ancilla wire in `{spec}`")))?;
                (vec![w], s)
            }
            None => (p.ancillas().iter().map(|a| a.wire).collect(), spec.as_str()),
        };
        for w in wires {
            match parse_qubit(state.trim())? {
                Some(q) => {
                    map.insert(w, q);
                }
                None => {
                    map.remove(&w);
                }
            }
        }
    }
    Ok(map)
}

/// Fixed-point rendering with negative zero folded away.
fn fixed(v: f64) -> String {
    let v = if v.abs() < 5e-13 { 0.0 } else { v };
    format!("{v:.12}")
}

fn bitstring(index: usize, wires: usize) -> String {
    (0..wires).map(|k| if index >> k & 1 == 1 { '1' } else { '0' }).collect()
}

/// The printed amplitude format: `<bits> <re> <im>`, wire 0 leftmost.
pub fn format_state(state: &DenseState) -> String {
    state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > PRINT_FLOOR)
        .map(|(idx, a)| format!("{} {} {}\n", bitstring(idx, state.wires()), fixed(a.re), fixed(a.im)))
        .collect()
}

/// Reads the printed amplitude format; missing basis states are zero.
pub fn parse_state(text: &str, wires: usize) -> Result<DenseState, CliError> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << wires];
    for (idx, line) in text.lines().enumerate() {
        let toks: Vec<&str> = line.split_whitespace().collect();
        // simulate output can be fed back verbatim
        if toks.is_empty() || toks[0] == "probability" {
            continue;
        }
        let bad = |msg: String| CliError::Parse { line: idx + 1, message: msg };
        if !(2..=3).contains(&toks.len()) {
            return Err(bad("expected `<bits> <re> [<im>]`".into()));
        }
        let bits = toks[0];
        if bits.len() != wires || bits.chars().any(|c| c != '0' && c != '1') {
            return Err(bad(format!("`{bits}` is not a {wires}-bit string")));
        }
        let index = bits.chars().enumerate().fold(0usize, |acc, (k, c)| acc | usize::from(c == '1') << k);
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("`{s}` is not a number")));
        let re = num(toks[1])?;
        let im = toks.get(2).map_or(Ok(0.0), |s| num(s))?;
        amps[index] = Complex64::new(re, im);
    }
    Ok(DenseState::new(wires, amps)?)
}

fn simulate(
    path: &Path,
    input: InputArg,
    specs: &[String],
    expect: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let p = read_process(path)?;
    let map = overrides(&p, specs)?;
    let state = match input {
        InputArg::Plus => AncillaState::Plus,
        InputArg::Zero => AncillaState::Zero,
    };
    let psi = DenseState::uniform(p.n_in(), state)?;
    let (phi, probability) = apply_process(&p, &psi, &map)?;
    let mut text = format!("probability {probability:.12}\n");
    text.push_str(&format_state(&phi));
    out.write_all(text.as_bytes())?;
    let Some(expect) = expect else {
        return Ok(EXIT_PASS);
    };
    let want = parse_state(&read(expect)?, p.n_out()).map_err(|e| e.in_file(expect.display().to_string()))?;
    let fidelity = phi.fidelity(&want);
    let ok = fidelity >= 1.0 - 1e-10;
    writeln!(out, "expect {} fidelity {fidelity:.12}", if ok { "match" } else { "MISMATCH" })?;
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}
