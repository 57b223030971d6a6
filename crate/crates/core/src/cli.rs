//! Command-line surface. [`run`] is the whole program minus process plumbing,
//! so it can be driven from tests.
//!
//! Exit codes: 0 success or property true, 1 property false, 2 usage, parse
//! or precondition error.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use crate::conjectures::{universal_audit, PredicateId};
use crate::constructions::{build, ConstructionSpec};
use crate::dual_analysis::check_abundance_bounds;
use crate::family::{dual, is_union_closed, SetFamily};
use crate::inequality::{pnk_inequality_holds_from, pnk_inequality_sides};
use crate::io::{emit_family, parse_family, AnalysisDocument};
use crate::search::{min_f_search, EnumFilter, SearchReport};
use crate::twins::is_twin_free;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ucf",
    version,
    about = "Build, check and search finite union-closed set families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a named construction as a family document.
    Build {
        /// One of p83, p94bar, q95, r106, pnk, rnkbar, pplus23, pplus4, smallk.
        id: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check union-closure and/or twin-freeness (both when neither flag is given).
    Check {
        #[arg(default_value = "-")]
        file: String,
        #[arg(long)]
        union_closed: bool,
        #[arg(long)]
        twin_free: bool,
    },
    /// Report frequencies and abundant elements.
    Analyze {
        #[arg(default_value = "-")]
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Write the dual family `{M \ A}`.
    Dual {
        #[arg(default_value = "-")]
        file: String,
    },
    /// Evaluate the (f,k,n) abundance bounds on a family.
    Bounds {
        #[arg(default_value = "-")]
        file: String,
    },
    /// Decide the binomial inequality for P(k,n), or scan for its threshold.
    Inequality {
        #[arg(long)]
        k: u32,
        #[arg(long, conflicts_with = "cap", required_unless_present = "cap")]
        n: Option<u32>,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Exhaustive minimum-f search over small union-closed families.
    Search {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        k_min: Option<usize>,
        /// Largest set of size exactly n (default: at most n).
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check a conjecture on every family of its class up to size n.
    Audit {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        conjecture: String,
    },
}

/// Failure that ends a command with exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

struct Ctx<'a> {
    stdin: &'a mut dyn Read,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn read_family(&mut self, file: &str) -> Result<SetFamily, Usage> {
        let text = if file == "-" {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            s
        } else {
            fs::read_to_string(file).map_err(|e| Usage(format!("{file}: {e}")))?
        };
        parse_family(&text).map_err(|e| Usage(format!("{file}: {e}")))
    }

    fn print(&mut self, s: &str) -> Result<(), Usage> {
        self.out.write_all(s.as_bytes())?;
        Ok(())
    }
}

fn verdict(b: bool) -> i32 {
    if b {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

/// Parses `args` (including the program name) and executes the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let mut ctx = Ctx { stdin, out };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx<'_>) -> Result<i32, Usage> {
    match command {
        Command::Build { id, k, n, out } => {
            let family = build(ConstructionSpec::from_id(&id, k, n)?)?;
            let doc = emit_family(&family);
            match out {
                Some(path) => {
                    fs::write(&path, doc).map_err(|e| Usage(format!("{}: {e}", path.display())))?
                }
                None => ctx.print(&doc)?,
            }
            Ok(EXIT_OK)
        }
        Command::Check {
            file,
            union_closed,
            twin_free,
        } => {
            let family = ctx.read_family(&file)?;
            let both = !union_closed && !twin_free;
            let mut ok = true;
            if union_closed || both {
                let b = is_union_closed(&family);
                ctx.print(&format!("union_closed {b}\n"))?;
                ok &= b;
            }
            if twin_free || both {
                let b = is_twin_free(&family);
                ctx.print(&format!("twin_free {b}\n"))?;
                ok &= b;
            }
            Ok(verdict(ok))
        }
        Command::Analyze { file, json } => {
            let family = ctx.read_family(&file)?;
            let doc = AnalysisDocument::of(&family)?;
            if json {
                ctx.print(&doc.to_json())?;
                ctx.print("\n")?;
            } else {
                ctx.print(&doc.to_table())?;
            }
            Ok(EXIT_OK)
        }
        Command::Dual { file } => {
            let family = ctx.read_family(&file)?;
            ctx.print(&emit_family(&dual(&family)?))?;
            Ok(EXIT_OK)
        }
        Command::Bounds { file } => {
            let family = ctx.read_family(&file)?;
            let report = check_abundance_bounds(&family)?;
            ctx.print(&serde_json::to_string_pretty(&report)?)?;
            ctx.print("\n")?;
            Ok(verdict(report.all_hold()))
        }
        Command::Inequality { k, n, cap } => match (n, cap) {
            (Some(n), _) => {
                let sides = pnk_inequality_sides(k, n)?;
                ctx.print(&format!("{}\n", sides.holds()))?;
                Ok(verdict(sides.holds()))
            }
            (None, Some(cap)) => match pnk_inequality_holds_from(k, cap) {
                Ok(n0) => {
                    ctx.print(&format!("holds for {n0} <= n <= {cap}\n"))?;
                    Ok(EXIT_OK)
                }
                Err(crate::Error::NotFound(_)) => {
                    ctx.print(&format!("false at n = {cap}\n"))?;
                    Ok(EXIT_FALSE)
                }
                Err(e) => Err(e.into()),
            },
            (None, None) => Err(Usage("inequality needs --n or --cap".into())),
        },
        Command::Search {
            n,
            k_min,
            exact,
            jobs,
            json,
        } => {
            let mut filter = if exact {
                EnumFilter::exactly(n)
            } else {
                EnumFilter::at_most(n)
            };
            if let Some(k) = k_min {
                filter = filter.with_k_min(k);
            }
            let report = min_f_search(&filter, jobs)?;
            if json {
                ctx.print(&format!("{:#}\n", search_json(&report)))?;
            } else {
                ctx.print(&search_text(&report))?;
            }
            Ok(EXIT_OK)
        }
        Command::Audit { n, conjecture } => {
            let id: PredicateId = conjecture.parse()?;
            let holds = universal_audit(n, id)?;
            ctx.print(&format!("{id} n<={n} {holds}\n"))?;
            Ok(verdict(holds))
        }
    }
}

fn search_text(report: &SearchReport) -> String {
    let mut s = format!("families {}\n", report.total_families);
    match report.min_f {
        Some(f) => s.push_str(&format!("min_f {f}\n")),
        None => s.push_str("min_f none\n"),
    }
    s.push_str("k n min_f\n");
    for ((k, n), f) in &report.per_kn_table {
        s.push_str(&format!("{k} {n} {f}\n"));
    }
    for w in &report.witnesses {
        let sets: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("witness {}\n", sets.join(" ")));
    }
    s
}

fn search_json(report: &SearchReport) -> serde_json::Value {
    let table: Vec<_> = report
        .per_kn_table
        .iter()
        .map(|(&(k, n), &f)| json!({ "k": k, "n": n, "min_f": f }))
        .collect();
    let witnesses: Vec<_> = report.witnesses.iter().map(emit_family).collect();
    json!({
        "total_families": report.total_families,
        "min_f": report.min_f,
        "per_kn": table,
        "witnesses": witnesses,
    })
}
