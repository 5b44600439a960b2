//! Driver behind the `omega3` binary: argument parsing, structure-table
//! caching, and dispatch into the core solver.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

use omega3_core::invariance::{
    omega2_invariance, reducibility, solve_full, solve_special_values, verify_at,
};
use omega3_core::parabolic::deleted_components;
use omega3_core::report::{
    BuildRecord, Document, Omega2Record, SelftestRecord, SubmoduleRecord, VerifyRecord,
};
use omega3_core::{
    build_chevalley, build_root_system, fmt_rational, parse_rational, selftest, AlgebraType,
    Context, Error, Rational, Status, StructureTable,
};

/// Environment variable naming a directory for cached structure tables.
pub const CACHE_DIR_ENV: &str = "OMEGA3_CACHE_DIR";

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_UNSUPPORTED: u8 = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Build and validate the structure table, grading and V⁻ components.
    Build,
    /// Solve for the special values (s, t) of every V⁻ component.
    SpecialValues,
    /// Check the annihilation equations at a given (s, t).
    Verify,
    /// Solve for s on the ω₂ systems of the deleted-diagram components.
    Omega2Check,
    /// Succeeds iff no V⁻ component admits a special value.
    Nonexist,
    /// Run the property batteries.
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::SpecialValues => "special-values",
            Command::Verify => "verify",
            Command::Omega2Check => "omega2-check",
            Command::Nonexist => "nonexist",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("`{s}` is not a rational number (expected p or p/q)"))
}

#[derive(Debug, Parser)]
#[command(
    name = "omega3",
    version,
    about = "Special values of third-order conformally invariant systems"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Algebra, e.g. A2, D4, E6.
    #[arg(long = "type", value_name = "TYPE")]
    pub algebra: String,
    /// Line-bundle parameter s (verify only), as p or p/q.
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub s: Option<Rational>,
    /// Coefficient t of the correction term (verify only), as p or p/q.
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    pub t: Option<Rational>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Structure-constant cache file. Created if missing, validated if present.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Restrict verify / special-values to one V⁻ component (1-based).
    #[arg(long)]
    pub component: Option<usize>,
    /// Also solve with s free (resultant elimination) as a cross-check.
    #[arg(long)]
    pub full: bool,
    /// Seed for the randomized self-test suites.
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub algebra: String,
    pub command: Command,
    pub s: Option<Rational>,
    pub t: Option<Rational>,
    pub format: Format,
    pub cache_path: Option<PathBuf>,
    pub component: Option<usize>,
    pub full: bool,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(algebra: impl Into<String>, command: Command) -> Self {
        Self {
            algebra: algebra.into(),
            command,
            s: None,
            t: None,
            format: Format::Text,
            cache_path: None,
            component: None,
            full: false,
            seed: 0x5eed,
        }
    }

    /// Resolves the cache path from the flag or, failing that, from
    /// [`CACHE_DIR_ENV`].
    pub fn from_cli(cli: Cli) -> Self {
        let cache_path = cli.cache.or_else(|| {
            std::env::var_os(CACHE_DIR_ENV)
                .map(|d| Path::new(&d).join(format!("{}.ntab", cli.algebra)))
        });
        Self {
            algebra: cli.algebra,
            command: cli.command,
            s: cli.s,
            t: cli.t,
            format: cli.format,
            cache_path,
            component: cli.component,
            full: cli.full,
            seed: cli.seed,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        let has_point = self.s.is_some() || self.t.is_some();
        match self.command {
            Command::Verify if self.s.is_none() || self.t.is_none() => {
                Err("verify requires both --s and --t".into())
            }
            Command::Verify => Ok(()),
            _ if has_point => Err(format!("{} does not accept --s/--t", self.command.name())),
            _ => Ok(()),
        }
    }
}

/// Exit code plus whatever should be printed.
#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub document: Option<Document>,
    pub message: Option<String>,
}

impl Outcome {
    fn report(code: u8, document: Document) -> Self {
        Self {
            code,
            document: Some(document),
            message: None,
        }
    }

    fn error(code: u8, message: String) -> Self {
        Self {
            code,
            document: None,
            message: Some(message),
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedAlgebra(_) => EXIT_UNSUPPORTED,
        _ => EXIT_FAIL,
    }
}

/// Loads the table from the cache if present, otherwise builds it (and
/// writes the cache if a path was given). Returns the table and a note on
/// what happened to the cache.
fn load_table(
    ty: AlgebraType,
    cache: Option<&Path>,
) -> omega3_core::Result<(StructureTable, Option<String>)> {
    let rs = build_root_system(ty);
    match cache {
        Some(path) if path.exists() => {
            let tab = StructureTable::read_cache(&rs, BufReader::new(File::open(path)?))?;
            Ok((tab, Some(format!("loaded {}", path.display()))))
        }
        Some(path) => {
            let tab = build_chevalley(&rs)?;
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            let mut w = BufWriter::new(File::create(path)?);
            tab.write_cache(&mut w)?;
            w.flush()?;
            Ok((tab, Some(format!("wrote {}", path.display()))))
        }
        None => Ok((build_chevalley(&rs)?, None)),
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    if let Err(msg) = config.validate() {
        return Outcome::error(EXIT_USAGE, msg);
    }
    let ty: AlgebraType = match config.algebra.parse() {
        Ok(t) => t,
        Err(e) => return Outcome::error(EXIT_UNSUPPORTED, e.to_string()),
    };
    match dispatch(config, ty) {
        Ok(o) => o,
        Err(e) => Outcome::error(error_code(&e), e.to_string()),
    }
}

fn dispatch(config: &RunConfig, ty: AlgebraType) -> omega3_core::Result<Outcome> {
    let (tab, cache_note) = load_table(ty, config.cache_path.as_deref())?;
    let ctx = Context::from_table(tab)?;
    let rs = ctx.root_system();
    let mut doc = Document::new(ty.to_string(), config.command.name());

    let components: Vec<_> = match config.component {
        Some(k) if k == 0 || k > ctx.components().len() => {
            return Ok(Outcome::error(
                EXIT_USAGE,
                format!("--component must lie in 1..={}", ctx.components().len()),
            ))
        }
        Some(k) => vec![ctx.components()[k - 1].clone()],
        None => ctx.components().to_vec(),
    };

    let code = match config.command {
        Command::Build => {
            let jacobi_checks = selftest::jacobi(&ctx, config.seed);
            doc.build = Some(BuildRecord {
                dim: ctx.table().dim(),
                positive_roots: rs.num_positive(),
                highest_root: rs.highest_root().coords().to_vec(),
                grading: ctx.grading().dims(),
                components: ctx
                    .components()
                    .iter()
                    .map(|c| {
                        c.roots
                            .iter()
                            .map(|&r| rs.root(r).coords().to_vec())
                            .collect()
                    })
                    .collect(),
                deleted_diagram: deleted_components(rs)
                    .components
                    .iter()
                    .map(|c| c.iter().map(|i| i + 1).collect())
                    .collect(),
                jacobi_checks: jacobi_checks.checks,
                cache: cache_note,
            });
            if jacobi_checks.passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Command::SpecialValues | Command::Nonexist => {
            let mut all_absent = true;
            for e in &components {
                let r = solve_special_values(&ctx, e)?;
                all_absent &= r.status == Status::NotExists;
                let mut rec = SubmoduleRecord::from_report(rs, &r);
                if config.full {
                    rec = rec.with_audit(&solve_full(&ctx, e)?);
                }
                if let Some((s0, t0)) = r.solutions.first() {
                    rec = rec.with_reducibility(&reducibility(&ctx, e, s0, t0)?);
                }
                doc.submodules.push(rec);
            }
            match config.command {
                Command::Nonexist if !all_absent => EXIT_FAIL,
                _ => EXIT_PASS,
            }
        }
        Command::Verify => {
            let (s, t) = (config.s.clone().unwrap(), config.t.clone().unwrap());
            let mut merged: Option<VerifyRecord> = None;
            for e in &components {
                let rec = VerifyRecord::new(rs, &s, &t, &verify_at(&ctx, e, &s, &t)?);
                match merged.as_mut() {
                    Some(m) => m.absorb(rec),
                    None => merged = Some(rec),
                }
            }
            let rec = merged.unwrap_or(VerifyRecord {
                s: fmt_rational(&s),
                t: fmt_rational(&t),
                checks: 0,
                failures: vec![],
                operator_nonzero: false,
                passed: false,
            });
            let code = if rec.passed { EXIT_PASS } else { EXIT_FAIL };
            doc.verify = Some(rec);
            code
        }
        Command::Omega2Check => {
            let mut ok = true;
            for comp in deleted_components(rs).components {
                let r = omega2_invariance(&ctx, &comp)?;
                ok &= r.status == Status::Exists;
                doc.omega2.push(Omega2Record::from(&r));
            }
            if ok {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Command::Selftest => {
            let rep = selftest::run(&ctx, config.seed)?;
            let rec = SelftestRecord::from(&rep);
            let code = if rec.passed { EXIT_PASS } else { EXIT_FAIL };
            doc.selftest = Some(rec);
            code
        }
    };
    Ok(Outcome::report(code, doc))
}

/// Runs `config` and writes the report to `out`, errors to `err`.
pub fn execute(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let outcome = run(config);
    if let Some(doc) = &outcome.document {
        let text = match config.format {
            Format::Json => doc.to_json() + "\n",
            Format::Text => doc.to_text(),
        };
        let _ = out.write_all(text.as_bytes());
    }
    if let Some(msg) = &outcome.message {
        let _ = writeln!(err, "omega3: {msg}");
    }
    outcome.code
}
