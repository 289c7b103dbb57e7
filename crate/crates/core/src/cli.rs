//! Command-line front end for the `excess-kit` binary.
//!
//! Exit codes: 0 when the bound is satisfied (or a command simply succeeds),
//! 1 when the input is obstructed, 2 on hypothesis failure, usage errors and
//! input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cover::branched_double_cover;
use crate::engine::{excess_check_validated, plane_family_audit, single_surface_sweep, AuditOptions, Verdict};
use crate::format::{parse_vectors, Catalog, FamilyDocument};
use crate::gf2::{max_zero_sum_subset, rank, zero_sum_subcollection, Gf2Error, Gf2Vector};
use crate::invariants::ValidatedProfile;
use crate::report::{
    audit_text, cover_text, profile_text, report_text, to_canonical_json, tube_text, ProfileSummary,
};
use crate::surface::{massey_admissible_set, tube, SurfaceDatum, SurfaceFamily, TubedSurface};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OBSTRUCTED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "excess-kit",
    version,
    about = "Integer obstruction checks for Euler numbers of disjoint nonorientable surfaces in oriented 4-manifolds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or show catalog profiles
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
        #[arg(long, value_enum, default_value_t, global = true)]
        format: Format,
    },
    /// Print D(M), B(M) and b2 over F2 for a profile
    Bound {
        /// Catalog name or profile file
        #[arg(long)]
        manifold: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run the excess check on a surface family
    Check {
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Audit a family of projective planes with |e| > 2
    Audit {
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        planes: PathBuf,
        /// Also run the exact zero-sum maximizer
        #[arg(long)]
        exact: bool,
        /// Node budget for --exact (0 = automatic)
        #[arg(long, default_value_t = 0)]
        effort: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Tube a family into one surface
    Tube {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Invariants of the branched double cover along one surface
    Cover {
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        genus: u64,
        #[arg(long, allow_hyphen_values = true)]
        euler: i64,
        /// Mod-2 class as a bit string (default: zero)
        #[arg(long)]
        class: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Zero-sum subcollection of a vector list
    Zerosum {
        #[arg(long)]
        vectors: PathBuf,
        /// Exact maximum instead of the constructive certificate
        #[arg(long)]
        exact: bool,
        /// Node budget for --exact (0 = automatic)
        #[arg(long, default_value_t = 0)]
        effort: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Massey admissible Euler numbers for a genus
    Massey {
        #[arg(long)]
        genus: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Excess check over all single surfaces up to a genus and |e|
    Sweep {
        #[arg(long)]
        manifold: String,
        #[arg(long, default_value_t = 64)]
        max_genus: u64,
        #[arg(long, default_value_t = 200)]
        max_euler: i64,
        /// Worker threads (0 = rayon default)
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let first = e.to_string();
                    let first = first.lines().next().unwrap_or("usage error");
                    let _ = writeln!(err, "{first}");
                    EXIT_ERROR
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", to_canonical_json(value))?,
        Format::Text => write!(out, "{}", text())?,
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn resolve(catalog: &Catalog, reference: &str) -> Result<ValidatedProfile> {
    catalog.resolve(reference, None).map_err(|e| anyhow!("--manifold: {e}"))
}

/// Loads a family file and the profile its `ambient` key names.
fn load_family(catalog: &Catalog, path: &Path) -> Result<(ValidatedProfile, SurfaceFamily)> {
    let with_ext = path.with_extension("toml");
    let path = if !path.exists() && path.extension().is_none() && with_ext.exists() {
        with_ext.as_path()
    } else {
        path
    };
    let src = read(path)?;
    let doc = FamilyDocument::parse(&src).map_err(|e| anyhow!("{}: {e}", path.display()))?;
    let ambient = catalog
        .resolve(doc.ambient(), path.parent())
        .map_err(|e| anyhow!("{}: field `ambient`: {e}", path.display()))?;
    let family = doc
        .into_family(ambient.b2_f2() as usize)
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;
    Ok((ambient, family))
}

fn load_family_for(catalog: &Catalog, manifold: &ValidatedProfile, path: &Path) -> Result<SurfaceFamily> {
    let (ambient, family) = load_family(catalog, path)?;
    if !ambient.same_invariants(manifold) {
        bail!(
            "{}: field `ambient`: profile `{}` does not match --manifold `{}`",
            path.display(),
            ambient.name(),
            manifold.name()
        );
    }
    Ok(family)
}

#[derive(Serialize)]
struct CertificateOutput {
    certificate: crate::gf2::SubsetCertificate,
    method: &'static str,
    length: usize,
    rank: usize,
}

#[derive(Serialize)]
struct MasseyOutput {
    genus: u64,
    admissible: Vec<i64>,
}

#[derive(Serialize)]
struct SweepSummary {
    entries: Vec<crate::engine::SweepEntry>,
    bound_satisfied: usize,
    obstructed: usize,
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    let catalog = Catalog::load_default()?;
    match command {
        Command::Catalog { action, format } => match action {
            CatalogAction::List => {
                let all: Vec<ProfileSummary> = catalog.profiles().iter().map(ProfileSummary::from).collect();
                emit(out, format, &all, || catalog.profiles().iter().map(profile_text).collect())?;
            }
            CatalogAction::Show { name } => {
                let p = catalog
                    .get(&name)
                    .ok_or_else(|| anyhow!("no catalog profile named `{name}`"))?;
                emit(out, format, &ProfileSummary::from(p), || profile_text(p))?;
            }
        },
        Command::Bound { manifold, format } => {
            let p = resolve(&catalog, &manifold)?;
            let budget = p.budget();
            emit(out, format, &budget, || {
                format!(
                    "b2_f2: {}\nD(M): {} (upper bound on the excess)\nB(M): {} (upper bound on disjoint planes with |e| > 2)\n",
                    budget.b2_f2, budget.d_of_m, budget.b_of_m
                )
            })?;
        }
        Command::Check { manifold, family, format } => {
            let m = resolve(&catalog, &manifold)?;
            let f = load_family_for(&catalog, &m, &family)?;
            let report = excess_check_validated(&m, &f)?;
            emit(out, format, &report, || report_text(&report))?;
            return Ok(report.verdict.exit_code());
        }
        Command::Audit { manifold, planes, exact, effort, format } => {
            let m = resolve(&catalog, &manifold)?;
            let f = load_family_for(&catalog, &m, &planes)?;
            let report = plane_family_audit(&m, &f, AuditOptions { exact, effort_limit: effort })?;
            emit(out, format, &report, || audit_text(&report))?;
            return Ok(report.verdict.exit_code());
        }
        Command::Tube { family, format } => {
            let (_, f) = load_family(&catalog, &family)?;
            let t = tube(&f);
            emit(out, format, &t, || tube_text(&t))?;
        }
        Command::Cover { manifold, genus, euler, class, format } => {
            let m = resolve(&catalog, &manifold)?;
            let class = match class {
                Some(bits) => bits.parse::<Gf2Vector>().map_err(|e| anyhow!("--class: {e}"))?,
                None => Gf2Vector::zero(m.b2_f2() as usize),
            };
            let s = SurfaceDatum::new(genus, euler, class).map_err(|e| anyhow!("--genus/--euler: {e}"))?;
            let c = branched_double_cover(&m, &TubedSurface::from_single(&s))?;
            emit(out, format, &c, || cover_text(&c))?;
        }
        Command::Zerosum { vectors, exact, effort, format } => {
            let src = read(&vectors)?;
            let c = parse_vectors(&src).map_err(|e| anyhow!("{}: {e}", vectors.display()))?;
            let (certificate, method) = if exact {
                match max_zero_sum_subset(&c, effort) {
                    Ok(cert) => (cert, "exact"),
                    Err(Gf2Error::EffortExceeded { required, limit, fallback }) => bail!(
                        "--effort: exact search needs {required} nodes, budget is {limit}; constructive certificate {fallback}"
                    ),
                    Err(e) => return Err(e.into()),
                }
            } else {
                (zero_sum_subcollection(&c), "constructive")
            };
            let output = CertificateOutput {
                length: c.len(),
                rank: rank(&c),
                certificate,
                method,
            };
            emit(out, format, &output, || {
                format!(
                    "{}\nsize {} ({}; length {}, rank {})\n",
                    output.certificate,
                    output.certificate.size(),
                    output.method,
                    output.length,
                    output.rank
                )
            })?;
        }
        Command::Massey { genus, format } => {
            let admissible = massey_admissible_set(genus).map_err(|e| anyhow!("--genus: {e}"))?;
            let output = MasseyOutput { genus, admissible };
            emit(out, format, &output, || {
                let vals: Vec<String> = output.admissible.iter().map(i64::to_string).collect();
                format!("{}\n", vals.join(" "))
            })?;
        }
        Command::Sweep { manifold, max_genus, max_euler, threads, format } => {
            let m = resolve(&catalog, &manifold)?;
            if max_euler < 0 {
                bail!("--max-euler: must be nonnegative");
            }
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
            let entries = pool.install(|| single_surface_sweep(&m, max_genus, max_euler));
            let obstructed = entries.iter().filter(|e| e.verdict == Verdict::Obstructed).count();
            let summary = SweepSummary {
                bound_satisfied: entries.len() - obstructed,
                obstructed,
                entries,
            };
            emit(out, format, &summary, || sweep_text(&summary, max_genus))?;
        }
    }
    Ok(EXIT_OK)
}

fn sweep_text(s: &SweepSummary, max_genus: u64) -> String {
    let mut text = String::new();
    for g in 1..=max_genus {
        let largest = s
            .entries
            .iter()
            .filter(|e| e.genus == g && e.verdict == Verdict::BoundSatisfied)
            .map(|e| e.euler_number.abs())
            .max();
        match largest {
            Some(x) => text.push_str(&format!("g={g}: bound satisfied for |e| <= {x}\n")),
            None => text.push_str(&format!("g={g}: obstructed for every e in range\n")),
        }
    }
    text.push_str(&format!(
        "total: {} satisfied, {} obstructed\n",
        s.bound_satisfied, s.obstructed
    ));
    text
}
