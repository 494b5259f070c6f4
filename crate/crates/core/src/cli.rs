//! Command-line front end. Exit codes: 0 success or predicate true, 1
//! predicate false, 2 invalid input, 3 cap exceeded.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};

use crate::catalog::{all_examples, get_example, EXAMPLE_NAMES};
use crate::compare::{
    aut_group, check_affine_hypothesis, check_weight_monoid_hypothesis, compare_delzant, compare_homogeneous, DelzantData,
    HypothesisCheck,
};
use crate::datum::{chamber_counterexample, fmt_vec, little_weyl_group, validate_datum, SphericalDatum};
use crate::error::{Error, Result};
use crate::format::{parse_delzant, parse_document, serialize_datum, serialize_delzant, serialize_document, Document};
use crate::localize::localize_at_weight_int;
use crate::monoid::{is_hidden, HiddenVerdict};
use crate::rootsys::DEFAULT_GROUP_CAP;
use crate::Int;

#[derive(Parser, Debug)]
#[command(name = "spherical", version, about = "Exact invariants of spherical homogeneous spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the structural conditions on a datum.
    Validate {
        /// JSON file or catalog entry name.
        file: String,
    },
    /// Compare two data at one of three levels.
    Compare {
        #[arg(long, value_enum)]
        level: Level,
        file1: String,
        file2: String,
    },
    /// Localize at a non-invertible weight-monoid element.
    Localize {
        file: String,
        /// Ambient weight coordinates, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Decide for every color whether it is hidden.
    Hidden { file: String },
    /// Equivariant automorphism group.
    Aut { file: String },
    /// Little Weyl group order and randomized chamber check.
    Weyl {
        file: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Compare two momentum polytopes with isotropy labels.
    Delzant { file1: String, file2: String },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    List,
    Show { name: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Level {
    Monoid,
    Affine,
    Homogeneous,
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => (e.exit_code(), format!("error: {e}\n")),
    }
}

fn read_text(arg: &str) -> Result<String> {
    if Path::new(arg).is_file() {
        return std::fs::read_to_string(arg).map_err(|e| Error::InvalidInput(format!("{arg}: {e}")));
    }
    if EXAMPLE_NAMES.contains(&arg) {
        let e = get_example(arg)?;
        return Ok(serialize_document(&Document { datum: e.datum, delzant: e.delzant }));
    }
    Err(Error::InvalidInput(format!("{arg}: no such file or catalog entry")))
}

fn load(arg: &str) -> Result<SphericalDatum> {
    let text = read_text(arg)?;
    parse_document(&text).map(|d| d.datum).map_err(|e| Error::InvalidInput(format!("{arg}: {}", e.message())))
}

fn load_delzant(arg: &str) -> Result<DelzantData> {
    let text = read_text(arg)?;
    parse_delzant(&text).map_err(|e| Error::InvalidInput(format!("{arg}: {}", e.message())))
}

fn parse_vector(s: &str) -> Result<Vec<Int>> {
    let s = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|x| x.trim().parse::<Int>().map_err(|_| Error::InvalidInput(format!("bad vector entry {x:?}"))))
        .collect()
}

fn verdict(ok: bool, out: String) -> Result<(i32, String)> {
    Ok((if ok { 0 } else { 1 }, out))
}

fn dispatch(cmd: Command) -> Result<(i32, String)> {
    let mut out = String::new();
    match cmd {
        Command::Validate { file } => {
            let d = load(&file)?;
            let rep = validate_datum(&d);
            write!(out, "{rep}").unwrap();
            verdict(rep.is_valid(), out)
        }
        Command::Compare { level, file1, file2 } => {
            let (d1, d2) = (load(&file1)?, load(&file2)?);
            let (check, bijections, what): (HypothesisCheck, _, &str) = match level {
                Level::Monoid => (
                    check_weight_monoid_hypothesis(&d1, &d2)?,
                    vec![],
                    "equal weight monoids; for smooth affine spherical varieties this forces a G-isomorphism",
                ),
                Level::Affine => (
                    check_affine_hypothesis(&d1, &d2)?,
                    vec![],
                    "equal weight monoids and valuation cones; for affine spherical varieties this forces a G-isomorphism",
                ),
                Level::Homogeneous => {
                    let (c, b) = compare_homogeneous(&d1, &d2)?;
                    (c, b, "equal weight lattices, valuation cones and colors; the homogeneous spaces are G-isomorphic")
                }
            };
            if check.holds() {
                writeln!(out, "hypothesis holds: {what}").unwrap();
                for b in &bijections {
                    writeln!(out, "  color bijection {b}").unwrap();
                }
            } else {
                writeln!(out, "hypothesis fails:").unwrap();
                for diff in &check.differences {
                    writeln!(out, "  {diff}").unwrap();
                }
            }
            verdict(check.holds(), out)
        }
        Command::Localize { file, mu } => {
            let d = load(&file)?;
            let mu = parse_vector(&mu)?;
            let res = localize_at_weight_int(&d, &mu)?;
            writeln!(out, "levi: {}", res.levi).unwrap();
            writeln!(out, "dropped colors: {}", res.dropped_colors.join(", ")).unwrap();
            for n in &res.notes {
                writeln!(out, "note: {n}").unwrap();
            }
            out.push_str(&serialize_datum(&res.section_datum));
            Ok((0, out))
        }
        Command::Hidden { file } => {
            let d = load(&file)?;
            let rep = validate_datum(&d);
            if !rep.is_valid() {
                return Err(Error::InvalidInput(format!("datum fails validation: {}", rep.failure_summary())));
            }
            let Some(m) = d.monoid_in_lattice_coords()? else {
                return Err(Error::InvalidInput("hidden colors need the weight monoid".into()));
            };
            let mut all = true;
            for c in d.colors() {
                match is_hidden(&c.phi, &m)? {
                    HiddenVerdict::Hidden => writeln!(out, "{}: hidden", c.id).unwrap(),
                    HiddenVerdict::NotHidden { mu, coefficients, value } => {
                        all = false;
                        let terms: Vec<String> = coefficients
                            .iter()
                            .zip(m.generators())
                            .filter(|(k, _)| !num_traits::Zero::is_zero(*k))
                            .map(|(k, g)| format!("{k}*{}", fmt_vec(&d.weight_lattice().point(g))))
                            .collect();
                        writeln!(
                            out,
                            "{}: not hidden, witness mu = {} = {}, phi(mu) = {value}",
                            c.id,
                            fmt_vec(&d.weight_lattice().point(&mu)),
                            terms.join(" + ")
                        )
                        .unwrap();
                    }
                }
            }
            verdict(all, out)
        }
        Command::Aut { file } => {
            let d = load(&file)?;
            let a = aut_group(&d)?;
            writeln!(out, "Aut: {a}").unwrap();
            writeln!(out, "X/Lambda: {}", a.structure).unwrap();
            match a.order() {
                Some(o) => writeln!(out, "order: {o}").unwrap(),
                None => writeln!(out, "order: infinite").unwrap(),
            }
            for b in &a.character_basis {
                writeln!(out, "  generator class {}", fmt_vec(b)).unwrap();
            }
            Ok((0, out))
        }
        Command::Weyl { file, samples, seed } => {
            let d = load(&file)?;
            let w = little_weyl_group(&d, DEFAULT_GROUP_CAP)?;
            writeln!(out, "little Weyl group order: {}", w.order()).unwrap();
            let bad = chamber_counterexample(&d, samples, seed)?;
            match &bad {
                None => writeln!(out, "valuation cone is a fundamental chamber ({samples} samples, seed {seed})").unwrap(),
                Some((v, hits)) => {
                    writeln!(out, "chamber check fails: orbit of {} meets the cone {hits} times", fmt_vec(v)).unwrap()
                }
            }
            verdict(bad.is_none(), out)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                for e in all_examples() {
                    writeln!(out, "{:<20} {}", e.name, e.summary).unwrap();
                }
                Ok((0, out))
            }
            CatalogAction::Show { name } => {
                let e = get_example(&name)?;
                out.push_str(&serialize_document(&Document { datum: e.datum, delzant: e.delzant }));
                Ok((0, out))
            }
        },
        Command::Delzant { file1, file2 } => {
            let (m1, m2) = (load_delzant(&file1)?, load_delzant(&file2)?);
            let same = compare_delzant(&m1, &m2)?;
            if same {
                writeln!(out, "momentum polytopes and principal isotropy agree").unwrap();
            } else {
                writeln!(out, "Delzant data differ").unwrap();
                out.push_str(&serialize_delzant(&m1));
                out.push_str(&serialize_delzant(&m2));
            }
            verdict(same, out)
        }
    }
}
