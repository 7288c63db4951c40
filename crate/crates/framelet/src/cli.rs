//! Command-line dispatch.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 computation or I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use framelet_core::analysis::{
    d_real, separation_report, verify_tight, SeparationBound, DEFAULT_GRID,
};
use framelet_core::construct::{derive_all, derive_default, derive_shortest_bank, ConstructParams};
use framelet_core::optimize::{optimize_bank, OptimizeOptions};
use framelet_core::render::{cascade_phi, tensor_generators, wavelet_from_phi, Grid2D, DEFAULT_ITERS};
use framelet_core::FilterBank;

use crate::bankfile::{parse_bank, serialize_bank, BankFile};
use crate::export::{csv_1d, csv_2d, pgm, save};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "framelet", version, about = "Complex tight framelet filter banks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the tightness identities.
    Verify {
        bank: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Print d_R, d_A, d_B and the worst bound violation.
    Analyze {
        bank: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Write `xi,A,B` rows.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// The bound A and the pointwise optimal magnitudes of a low-pass filter.
    Lowerbound {
        bank: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        /// Write `xi,A,|bp(xi+pi)|,|bn(xi)|,|bp(xi)|,|bn(xi+pi)|` rows.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Shortest-support tight completion of a low-pass filter.
    Construct(ConstructArgs),
    /// Minimize d_B over lattice rotations of a bank.
    Optimize {
        bank: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long, conflicts_with = "complex")]
        real: bool,
        #[arg(long)]
        complex: bool,
        #[arg(long, default_value_t = 64)]
        starts: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cascade samples and the 2D tensor generators.
    Render {
        bank: PathBuf,
        #[arg(long, default_value_t = 8)]
        levels: u32,
        #[arg(long, value_enum, default_value_t = Format::Pgm)]
        format: Format,
        #[arg(long, default_value = ".")]
        outdir: PathBuf,
    },
}

#[derive(Args, Debug)]
struct ConstructArgs {
    bank: PathBuf,
    #[arg(long)]
    eps: Option<u8>,
    #[arg(long)]
    s1: Option<u8>,
    #[arg(long)]
    s2: Option<u8>,
    #[arg(long)]
    factor_index: Option<usize>,
    #[arg(long)]
    solution_index: Option<usize>,
    /// Every bank of the sweep. With `--out` the path is a directory.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Pgm,
    Csv,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<framelet_core::Error> for Failure {
    fn from(e: framelet_core::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl From<crate::export::ExportError> for Failure {
    fn from(e: crate::export::ExportError) -> Self {
        Failure::Compute(e.to_string())
    }
}

/// `%.12g`-style formatting.
pub fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let e = format!("{v:.11e}");
    let (mant, exp) = e.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let s = format!("{:.*}", (11 - exp).max(0) as usize, v);
        trim_zeros(&s).to_string()
    } else {
        format!("{}e{}{:02}", trim_zeros(mant), if exp < 0 { '-' } else { '+' }, exp.abs())
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn read_bank(path: &Path) -> Result<BankFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))?;
    parse_bank(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_bank(f: &BankFile, path: &Path) -> Result<FilterBank, Failure> {
    f.to_bank().map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => Ok(save(p, text.as_bytes())?),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Compute(e.to_string())),
    }
}

fn params_line(p: &ConstructParams) -> String {
    format!(
        "eps={} s1={} s2={} factor_index={} solution_index={}",
        p.eps, p.s1, p.s2, p.factor_index, p.solution_index
    )
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut s = String::new();
    let code = match cmd {
        Cmd::Verify { bank, tol } => {
            let b = to_bank(&read_bank(&bank)?, &bank)?;
            let t = verify_tight(&b, tol);
            let _ = writeln!(s, "tight: {}", if t.ok { "yes" } else { "no" });
            let _ = writeln!(s, "residual: {}", sig12(t.residual));
            if t.ok {
                EXIT_OK
            } else {
                EXIT_VERIFY
            }
        }
        Cmd::Analyze { bank, grid, csv } => {
            let b = to_bank(&read_bank(&bank)?, &bank)?;
            let r = separation_report(&b, grid)?;
            let _ = writeln!(s, "d_R: {}", sig12(r.d_r));
            let _ = writeln!(s, "d_A: {}", sig12(r.d_a));
            let _ = writeln!(s, "d_A quadrature error: {}", sig12(r.d_a_error));
            let _ = writeln!(s, "d_B: {}", sig12(r.d_b));
            let _ = writeln!(s, "max A - B: {}", sig12(r.max_bound_violation));
            if let Some(p) = csv {
                let mut c = String::new();
                for (xi, a, bv) in &r.grid {
                    let _ = writeln!(c, "{xi},{a},{bv}");
                }
                save(&p, c.as_bytes())?;
            }
            EXIT_OK
        }
        Cmd::Lowerbound { bank, grid, csv } => {
            let f = read_bank(&bank)?;
            let a = f.lowpass();
            let n = grid.max(2) + grid % 2;
            let bound = SeparationBound::new(a);
            let (d_a, err) = framelet_core::analysis::d_a(a, n)?;
            let _ = writeln!(s, "d_R: {}", sig12(d_real(a)));
            let _ = writeln!(s, "d_A: {}", sig12(d_a));
            let _ = writeln!(s, "d_A quadrature error: {}", sig12(err));
            if let Some(p) = csv {
                let mut c = String::new();
                for i in 0..=n {
                    let xi = std::f64::consts::PI * i as f64 / n as f64;
                    let o = bound.optimum(xi)?;
                    let _ = writeln!(
                        c,
                        "{xi},{},{},{},{},{}",
                        bound.value(xi)?,
                        o.bp_xi_pi.norm(),
                        o.bn_xi.norm(),
                        o.bp_xi.norm(),
                        o.bn_xi_pi.norm()
                    );
                }
                save(&p, c.as_bytes())?;
            }
            EXIT_OK
        }
        Cmd::Construct(c) => construct(c, out)?,
        Cmd::Optimize {
            bank,
            order,
            real,
            complex,
            starts,
            seed,
            out: path,
        } => {
            let b = to_bank(&read_bank(&bank)?, &bank)?;
            let opts = OptimizeOptions {
                order,
                real_mode: match (real, complex) {
                    (true, _) => Some(true),
                    (_, true) => Some(false),
                    _ => None,
                },
                starts,
                seed,
            };
            let r = optimize_bank(&b, &opts)?;
            let lat = &r.lattice;
            let angles: Vec<String> = lat.theta.iter().map(|t| sig12(*t)).collect();
            let _ = writeln!(s, "# d_B: {}", sig12(r.d_b));
            let _ = writeln!(s, "# mode: {}", if r.real_mode { "real" } else { "complex" });
            let _ = writeln!(s, "# start: {}", r.start);
            let _ = writeln!(s, "# theta: {}", angles.join(" "));
            if !r.real_mode {
                let phi: Vec<String> = lat.phi.iter().map(|t| sig12(*t)).collect();
                let _ = writeln!(s, "# phi: {}", phi.join(" "));
            }
            let _ = writeln!(s, "# reflect: {}", lat.reflect);
            let text = serialize_bank(&BankFile::from_bank(&r.bank(&b.a)));
            match path {
                Some(p) => {
                    save(&p, format!("{s}{text}").as_bytes())?;
                }
                None => s.push_str(&text),
            }
            EXIT_OK
        }
        Cmd::Render {
            bank,
            levels,
            format,
            outdir,
        } => {
            let b = to_bank(&read_bank(&bank)?, &bank)?;
            let c = cascade_phi(&b.a, levels, DEFAULT_ITERS)?;
            let psi_p = wavelet_from_phi(&c.grid, &b.highpass[0]);
            let t = tensor_generators(&c.grid, &psi_p)?;
            std::fs::create_dir_all(&outdir)
                .map_err(|e| Failure::Compute(format!("{}: {e}", outdir.display())))?;
            let _ = writeln!(
                s,
                "cascade: {:?} after {} iterations, sup-diff {}",
                c.status,
                c.iterations,
                sig12(c.sup_diff)
            );
            let write2d = |g: &Grid2D| -> Result<PathBuf, Failure> {
                let (ext, bytes) = match format {
                    Format::Pgm => ("pgm", pgm(g)),
                    Format::Csv => ("csv", csv_2d(g).into_bytes()),
                };
                let p = outdir.join(format!("{}.{ext}", g.label));
                save(&p, &bytes)?;
                Ok(p)
            };
            if let Format::Csv = format {
                save(&outdir.join("phi.csv"), csv_1d(&c.grid).as_bytes())?;
                save(&outdir.join("psi_p.csv"), csv_1d(&psi_p).as_bytes())?;
            }
            let p = write2d(&t.scaling)?;
            let _ = writeln!(s, "{}", p.display());
            for (dir, g) in &t.generators {
                let p = write2d(g)?;
                let _ = writeln!(s, "{} {:?}", p.display(), dir);
            }
            EXIT_OK
        }
    };
    out.write_all(s.as_bytes())
        .map_err(|e| Failure::Compute(e.to_string()))?;
    Ok(code)
}

fn construct(c: ConstructArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let f = read_bank(&c.bank)?;
    let a = f.lowpass();
    if c.all {
        let banks = derive_all(a)?;
        match &c.out {
            Some(dir) => {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Failure::Compute(format!("{}: {e}", dir.display())))?;
                for (i, (p, b)) in banks.iter().enumerate() {
                    let text = format!("# {}\n{}", params_line(p), serialize_bank(&BankFile::from_bank(b)));
                    save(&dir.join(format!("bank-{i}.bank")), text.as_bytes())?;
                }
            }
            None => {
                let mut s = String::new();
                for (p, b) in &banks {
                    let _ = writeln!(s, "# {}", params_line(p));
                    s.push_str(&serialize_bank(&BankFile::from_bank(b)));
                }
                emit(out, None, &s)?;
            }
        }
        return Ok(EXIT_OK);
    }
    let explicit = c.eps.is_some()
        || c.s1.is_some()
        || c.s2.is_some()
        || c.factor_index.is_some()
        || c.solution_index.is_some();
    let (p, bank) = if explicit {
        let p = ConstructParams {
            eps: c.eps.unwrap_or(0),
            s1: c.s1.unwrap_or(0),
            s2: c.s2.unwrap_or(0),
            factor_index: c.factor_index.unwrap_or(0),
            solution_index: c.solution_index.unwrap_or(0),
        };
        (p, derive_shortest_bank(a, &p)?)
    } else {
        derive_default(a)?
    };
    let text = format!("# {}\n{}", params_line(&p), serialize_bank(&BankFile::from_bank(&bank)));
    emit(out, c.out.as_deref(), &text)?;
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command, writing
/// reports to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Compute(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_COMPUTE
        }
    }
}
