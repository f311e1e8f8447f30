use clap::{ArgGroup, Args, Parser, Subcommand};

use geoindep::arith::{parse_rational, Polynomial, Rational};
use geoindep::sets::Set;

fn set_spec(s: &str) -> Result<Set, String> {
    s.parse().map_err(|e: geoindep::Error| e.to_string())
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn poly(s: &str) -> Result<Polynomial, String> {
    s.parse().map_err(|e: geoindep::Error| e.to_string())
}

/// Independent events for the geometric measure on the naturals, computed exactly.
///
/// Sets are written `fin(1,4,6)` or `ep(P=0;pre=;Q=2;off=1)`, ratios as `p/q`,
/// polynomials as `poly(c0,c1,...)` with ascending coefficients.
#[derive(Debug, Parser)]
#[command(name = "geoindep", version, color = clap::ColorChoice::Never)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Measure of a set, as a rational function of r or at a given r.
    Measure(MeasureArgs),
    /// Mutual independence of two or more sets.
    Indep(IndepArgs),
    /// Build one of the explicit constructions.
    Construct {
        #[command(subcommand)]
        which: Construct,
    },
    /// Certified decimals of the threshold t_m.
    Threshold {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 12)]
        digits: usize,
    },
    /// Brute-force searches at a fixed rational ratio.
    Search {
        #[command(subcommand)]
        which: Search,
    },
    /// Independent pair in the finite space {1..n} with P(k) = q^k.
    FiniteSpace {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["symbolic", "r", "numeric"])))]
pub struct MeasureArgs {
    #[arg(long, value_name = "SPEC", value_parser = set_spec)]
    pub set: Set,
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long = "r", value_name = "RAT", value_parser = rational)]
    pub r: Option<Rational>,
    /// Truncated-series value at a floating-point ratio.
    #[arg(long, value_name = "FLOAT")]
    pub numeric: Option<f64>,
    /// Tolerance for --numeric.
    #[arg(
        long,
        value_name = "FLOAT",
        default_value_t = 1e-12,
        requires = "numeric"
    )]
    pub tol: f64,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["symbolic", "r", "minpoly", "given"])))]
pub struct IndepArgs {
    #[arg(long, value_name = "SPEC", value_parser = set_spec, required = true)]
    pub set: Vec<Set>,
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long = "r", value_name = "RAT", value_parser = rational)]
    pub r: Option<Rational>,
    #[arg(long, value_name = "POLY", value_parser = poly)]
    pub minpoly: Option<Polynomial>,
    /// Conditional independence of exactly two sets given this one.
    #[arg(long, value_name = "SPEC", value_parser = set_spec)]
    pub given: Option<Set>,
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// A = {0, n-1} + T together with B(n).
    Pair {
        #[arg(long)]
        n: usize,
        #[arg(long = "T", value_name = "SPEC", value_parser = set_spec)]
        t: Set,
    },
    /// A1, A2 and B(n) built from the sub-blocks of length b-1.
    Triple {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: usize,
        #[arg(long = "T", value_name = "SPEC", value_parser = set_spec)]
        t: Set,
    },
    /// ({1,4,6}, odds) and r^4 + r^2 - 1.
    Remark1,
    /// {1..n} and {n, 2n, 3n, ...}.
    Remark2 {
        #[arg(long)]
        n: usize,
    },
    /// Iterated family S_0, ..., S_j.
    Sequence {
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        params: Vec<usize>,
    },
    /// Union of the blocks of B(n) indexed by a set of class indices.
    Lift {
        #[arg(long)]
        n: usize,
        #[arg(long = "S", value_name = "SPEC", value_parser = set_spec)]
        s: Set,
    },
    /// Lift followed by the sum with {0, n-1}.
    Lower {
        #[arg(long)]
        n: usize,
        #[arg(long = "S", value_name = "SPEC", value_parser = set_spec)]
        s: Set,
    },
}

#[derive(Debug, Subcommand)]
pub enum Search {
    /// Every independent partner of B(n) inside {0..max}, checked against {0,n-1}+T.
    Converse {
        #[arg(long)]
        n: usize,
        #[arg(long = "r", value_name = "RAT", value_parser = rational)]
        r: Rational,
        #[arg(long, value_name = "NMAX")]
        max: usize,
    },
    /// Every nontrivial A inside {0..max} independent of the given set.
    Enum {
        #[arg(long, value_name = "SPEC", value_parser = set_spec)]
        set: Set,
        #[arg(long = "r", value_name = "RAT", value_parser = rational)]
        r: Rational,
        #[arg(long, value_name = "NMAX")]
        max: usize,
    },
    /// Tail bound for a finite set avoiding B(n).
    Bound {
        #[arg(long, value_name = "SPEC", value_parser = set_spec)]
        set: Set,
        #[arg(long)]
        n: usize,
        #[arg(long = "r", value_name = "RAT", value_parser = rational)]
        r: Rational,
    },
}
