//! Command-line front end: load function and point documents, run the
//! checks, solvers, and characterizations, and print deterministic reports.
//!
//! Exit codes: 0 when the queried property holds or a solution is produced
//! and verified; 1 when it fails (a witness is printed); 2 on usage,
//! schema, or size errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use abmaj::characterize::{
    characterize, witness_shift_signed, witness_shift_super, Family,
};
use abmaj::ground::{all_permutations, all_sign_vectors, Permutation, SignVector};
use abmaj::majorization::{ab_compare, Order, ScalingShift};
use abmaj::optimize::{
    check_exchange_optimality, least_element, LeastElementRequest, ShiftedQuadratic,
};
use abmaj::polyhedra::{greedy_vertex, signed_greedy_vertex, Point, Polyhedron};
use abmaj::rat::{parse_csv, Rat};
use abmaj::setfn::{BisetFunction, CheckMode, Kind, SetFunction};
use abmaj_cli::{
    load_biset_function, load_points, load_set_function, points_to_value, report_to_value,
    CliError, CliResult,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "abmaj",
    version,
    about = "Submodular, supermodular, base, and bisubmodular polyhedra: checks, greedy vertices, least majorized elements, and recognition procedures, all in exact rational arithmetic."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FnOrBifn {
    /// Set-function document (JSON).
    #[arg(long = "fn", value_name = "FILE")]
    func: Option<PathBuf>,
    /// Biset-function document (JSON).
    #[arg(long, value_name = "FILE")]
    bifn: Option<PathBuf>,
}

enum Source {
    Set(SetFunction),
    Biset(BisetFunction),
}

impl FnOrBifn {
    fn load(&self) -> CliResult<Source> {
        match (&self.func, &self.bifn) {
            (Some(p), None) => Ok(Source::Set(load_set_function(p)?)),
            (None, Some(p)) => Ok(Source::Biset(load_biset_function(p)?)),
            _ => Err(CliError::new("usage", "exactly one of --fn or --bifn is required")),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Local,
    Pairs,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Full,
    Sub,
    Super,
    Abs,
}

impl From<OrderArg> for Order {
    fn from(o: OrderArg) -> Order {
        match o {
            OrderArg::Full => Order::Full,
            OrderArg::Sub => Order::WeakSub,
            OrderArg::Super => Order::WeakSuper,
            OrderArg::Abs => Order::WeakAbs,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "Psup", alias = "psup")]
    Psup,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "Btilde", alias = "btilde")]
    Btilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum CharFamilyArg {
    Super,
    Sub,
    Base,
    Bisub,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check (bi)submodularity of a function document.
    Check {
        #[command(flatten)]
        source: FnOrBifn,
        /// Check strategy for set functions (biset tables always use pairs).
        #[arg(long, value_enum, default_value = "local")]
        mode: ModeArg,
    },
    /// Print the greedy extreme point for a permutation (and sign vector).
    Vertex {
        #[command(flatten)]
        source: FnOrBifn,
        /// Permutation as 1-based indices, e.g. 2,1,3.
        #[arg(long)]
        pi: String,
        /// Sign vector for biset functions, e.g. +,-,+.
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
    },
    /// List all integral points of a polyhedron.
    Enumerate {
        #[command(flatten)]
        source: FnOrBifn,
        /// Family for set functions: P or B (biset functions use Btilde).
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Bounding box lo:hi,lo:hi,... (required for unbounded families).
        #[arg(long = "box", value_name = "LO:HI,...", allow_hyphen_values = true)]
        window: Option<String>,
    },
    /// Compare two vectors in a majorization order.
    Compare {
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        y: String,
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, value_enum)]
        order: OrderArg,
    },
    /// Compute a least majorized element of a polyhedron.
    Least {
        #[command(flatten)]
        source: FnOrBifn,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum)]
        kind: OrderArg,
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        a: String,
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        b: String,
        /// Solve over the integral polyhedron (requires a = 1).
        #[arg(long)]
        integral: bool,
    },
    /// Check the pairwise-exchange optimality condition at a point of B(f).
    Condition {
        /// Set-function document (JSON).
        #[arg(long = "fn", value_name = "FILE")]
        func: PathBuf,
        #[arg(long, value_name = "CSV", allow_hyphen_values = true)]
        x: String,
        /// Objective family: quadratic or quadratic:b1,b2,...
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// Decide whether a point set is (sandwiched by) one of the polyhedra.
    Characterize {
        #[arg(long, value_name = "FILE")]
        points: PathBuf,
        #[arg(long, value_enum)]
        family: CharFamilyArg,
        /// Read the set as itself instead of as a vertex list.
        #[arg(long)]
        integral: bool,
    },
    /// Print the shift vector that certifies non-existence for a
    /// permutation (and sign vector).
    Witness {
        #[arg(long, value_name = "FILE")]
        points: PathBuf,
        #[arg(long)]
        pi: String,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<String>,
    },
}

fn parse_point(csv: &str, what: &str) -> CliResult<Point> {
    parse_csv(csv)
        .map(Point::new)
        .map_err(|_| CliError::new("usage", format!("unreadable {what} vector {csv:?}")))
}

fn parse_pi(s: &str, n: usize) -> CliResult<Permutation> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::new("usage", format!("unreadable permutation {s:?}")))?;
    if parts.len() != n {
        return Err(CliError::new("usage", format!("permutation must list all {n} indices")));
    }
    Ok(Permutation::from_one_based(&parts)?)
}

fn parse_sign(s: &str, n: usize) -> CliResult<SignVector> {
    let signs: Vec<i8> = s
        .split(',')
        .map(|t| match t.trim() {
            "+" | "+1" | "1" => Ok(1),
            "-" | "-1" => Ok(-1),
            other => Err(CliError::new("usage", format!("unreadable sign {other:?}"))),
        })
        .collect::<CliResult<_>>()?;
    if signs.len() != n {
        return Err(CliError::new("usage", format!("sign vector must have {n} entries")));
    }
    Ok(SignVector::new(signs)?)
}

fn parse_window(s: &str, n: usize) -> CliResult<Vec<(Rat, Rat)>> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != n {
        return Err(CliError::new("usage", format!("box must give {n} lo:hi ranges")));
    }
    parts
        .iter()
        .map(|p| {
            let (lo, hi) = p
                .split_once(':')
                .ok_or_else(|| CliError::new("usage", format!("range {p:?} is not lo:hi")))?;
            let lo = Rat::from_str(lo.trim())
                .map_err(|_| CliError::new("usage", format!("unreadable bound {lo:?}")))?;
            let hi = Rat::from_str(hi.trim())
                .map_err(|_| CliError::new("usage", format!("unreadable bound {hi:?}")))?;
            Ok((lo, hi))
        })
        .collect()
}

fn scaling(a: Option<&str>, b: Option<&str>, n: usize) -> CliResult<ScalingShift> {
    let a = match a {
        Some(s) => parse_point(s, "scaling")?,
        None => Point::new((0..n).map(|_| Rat::one()).collect()),
    };
    let b = match b {
        Some(s) => parse_point(s, "shift")?,
        None => Point::zeros(n),
    };
    if a.len() != n || b.len() != n {
        return Err(CliError::new("usage", format!("scaling/shift must have {n} entries")));
    }
    Ok(ScalingShift::new(a, b)?)
}

/// Candidate vertices for the internal re-verification of a least-element
/// result: the greedy vertices of the base polyhedron inside the family.
fn spot_check_candidates(source: &Source, family: FamilyArg) -> CliResult<Vec<Point>> {
    const PERM_CAP: usize = 720;
    let mut out = Vec::new();
    match source {
        Source::Set(f) => {
            let base_fn = match family {
                FamilyArg::P | FamilyArg::B => f.clone(),
                FamilyArg::Psup => f.dual(),
                FamilyArg::Btilde => unreachable!(),
            };
            for pi in all_permutations(f.n()).into_iter().take(PERM_CAP) {
                out.push(greedy_vertex(&base_fn, &pi));
            }
        }
        Source::Biset(h) => {
            'outer: for pi in all_permutations(h.n()) {
                for s in all_sign_vectors(h.n()) {
                    out.push(signed_greedy_vertex(h, &pi, &s));
                    if out.len() >= PERM_CAP {
                        break 'outer;
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.cmd {
        Cmd::Check { source, mode } => {
            let mode = match mode {
                ModeArg::Local => CheckMode::LocalExchange,
                ModeArg::Pairs => CheckMode::AllPairs,
            };
            match source.load()? {
                Source::Set(f) => {
                    let label = match f.kind() {
                        Kind::Submodular => "submodular",
                        Kind::Supermodular => "supermodular",
                    };
                    match f.check_kind(mode) {
                        Ok(()) => {
                            println!("{label}: true");
                            Ok(0)
                        }
                        Err((a, b)) => {
                            println!("{label}: false");
                            println!("witness: A={a}, B={b}");
                            Ok(1)
                        }
                    }
                }
                Source::Biset(h) => match h.check_bisubmodular(false)? {
                    Ok(()) => {
                        println!("bisubmodular: true");
                        Ok(0)
                    }
                    Err((u, v)) => {
                        println!("bisubmodular: false");
                        println!("witness: U={u}, V={v}");
                        Ok(1)
                    }
                },
            }
        }
        Cmd::Vertex { source, pi, sign } => match source.load()? {
            Source::Set(f) => {
                if f.kind() != Kind::Submodular {
                    return Err(CliError::new("schema", "greedy vertices require a submodular document"));
                }
                let pi = parse_pi(&pi, f.n())?;
                println!("{}", greedy_vertex(&f, &pi));
                Ok(0)
            }
            Source::Biset(h) => {
                let pi = parse_pi(&pi, h.n())?;
                let sign = sign.ok_or_else(|| {
                    CliError::new("usage", "--sign is required with a biset function")
                })?;
                let s = parse_sign(&sign, h.n())?;
                println!("{}", signed_greedy_vertex(&h, &pi, &s));
                Ok(0)
            }
        },
        Cmd::Enumerate { source, family, window } => {
            let (poly_points, n) = match source.load()? {
                Source::Set(f) => {
                    let family = family.ok_or_else(|| {
                        CliError::new("usage", "--family P|B is required with a set function")
                    })?;
                    let poly = match family {
                        FamilyArg::P => Polyhedron::submodular(&f)?,
                        FamilyArg::B => Polyhedron::base(&f)?,
                        FamilyArg::Psup => Polyhedron::supermodular(&f)?,
                        FamilyArg::Btilde => {
                            return Err(CliError::new("usage", "Btilde requires --bifn"))
                        }
                    };
                    let bx = window.map(|w| parse_window(&w, f.n())).transpose()?;
                    (poly.enumerate_integral_points(bx.as_deref())?, f.n())
                }
                Source::Biset(h) => {
                    let poly = Polyhedron::bisubmodular(&h);
                    let bx = window.map(|w| parse_window(&w, h.n())).transpose()?;
                    (poly.enumerate_integral_points(bx.as_deref())?, h.n())
                }
            };
            println!("{}", points_to_value(n, &poly_points));
            Ok(0)
        }
        Cmd::Compare { x, y, a, b, order } => {
            let x = parse_point(&x, "x")?;
            let y = parse_point(&y, "y")?;
            if x.len() != y.len() {
                return Err(CliError::new("usage", "x and y must have equal lengths"));
            }
            let ab = scaling(a.as_deref(), b.as_deref(), x.len())?;
            let kind: Order = order.into();
            let verdict = ab_compare(&x, &y, &ab, kind)?;
            let tag = match kind {
                Order::Full => "full",
                Order::WeakSub => "sub",
                Order::WeakSuper => "super",
                Order::WeakAbs => "abs",
            };
            println!("x \u{227a} y [{tag}]: {verdict}");
            Ok(if verdict { 0 } else { 1 })
        }
        Cmd::Least { source, family, kind, a, b, integral } => {
            let source = source.load()?;
            let n = match &source {
                Source::Set(f) => f.n(),
                Source::Biset(h) => h.n(),
            };
            let ab = scaling(Some(&a), Some(&b), n)?;
            let order: Order = kind.into();
            let poly = match (&source, family) {
                (Source::Set(f), FamilyArg::P) => Polyhedron::submodular(f)?,
                (Source::Set(f), FamilyArg::B) => Polyhedron::base(f)?,
                (Source::Set(f), FamilyArg::Psup) => Polyhedron::supermodular(f)?,
                (Source::Biset(h), FamilyArg::Btilde) => Polyhedron::bisubmodular(h),
                _ => return Err(CliError::new("usage", "family does not match the document type")),
            };
            let req = LeastElementRequest { polyhedron: poly, ab: ab.clone(), order, integral };
            let x = least_element(&req)?;

            // re-verify before printing: membership, then domination of the
            // greedy vertices in the requested order
            if !poly.is_member(&x)? {
                return Err(CliError::new("internal", "solver output failed the membership check"));
            }
            for v in spot_check_candidates(&source, family)? {
                if poly.is_member(&v)? && !ab_compare(&x, &v, &ab, order)? {
                    return Err(CliError::new(
                        "internal",
                        format!("solver output is not below the vertex {v}"),
                    ));
                }
            }
            println!("{x}");
            Ok(0)
        }
        Cmd::Condition { func, x, phi } => {
            let f = load_set_function(&func)?;
            if f.kind() != Kind::Submodular {
                return Err(CliError::new("schema", "condition checks require a submodular document"));
            }
            let x = parse_point(&x, "x")?;
            let oracle = match phi.split_once(':') {
                None if phi == "quadratic" => ShiftedQuadratic::new(vec![Rat::zero(); f.n()]),
                Some(("quadratic", rest)) => {
                    let b = parse_point(rest, "phi shift")?;
                    if b.len() != f.n() {
                        return Err(CliError::new("usage", "phi shift has the wrong length"));
                    }
                    ShiftedQuadratic::new(b.coords().to_vec())
                }
                _ => {
                    return Err(CliError::new(
                        "usage",
                        format!("unknown objective family {phi:?}; use quadratic[:bCSV]"),
                    ))
                }
            };
            let base = Polyhedron::base(&f)?;
            match check_exchange_optimality(&base, &x, &oracle)? {
                None => {
                    println!("condition 1: holds");
                    Ok(0)
                }
                Some((i, k)) => {
                    println!("condition 1: violated at (i,k)=({},{})", i + 1, k + 1);
                    Ok(1)
                }
            }
        }
        Cmd::Characterize { points, family, integral } => {
            let c = load_points(&points)?;
            let family = match family {
                CharFamilyArg::Super => Family::Super,
                CharFamilyArg::Sub => Family::Sub,
                CharFamilyArg::Base => Family::Base,
                CharFamilyArg::Bisub => Family::Bisub,
            };
            let report = characterize(&c, family, integral)?;
            println!("{}", report_to_value(&report));
            Ok(if report.holds { 0 } else { 1 })
        }
        Cmd::Witness { points, pi, sign } => {
            let c = load_points(&points)?;
            let pi = parse_pi(&pi, c.n())?;
            let b = match sign {
                None => witness_shift_super(&c, &pi)?,
                Some(s) => {
                    let s = parse_sign(&s, c.n())?;
                    witness_shift_signed(&c, &pi, &s)?
                }
            };
            println!("{b}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; usage problems exit 2
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
