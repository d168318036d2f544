use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modfvec::{Error, FVector, FamilySpec, TowerKind};

mod commands;
mod output;
mod seeds;

/// Exact m-modular f-vectors of polytope families.
#[derive(Parser, Debug)]
#[command(name = "modfvec", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the f-vector of one family member.
    Fvector {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the m-modular f-vector of a family member or of explicit counts.
    Modular {
        #[command(flatten)]
        family: OptionalFamilyArgs,
        #[arg(long)]
        k: Option<usize>,
        /// Proper face counts f_0,...,f_{d-1} instead of a family member.
        #[arg(long, value_delimiter = ',')]
        counts: Option<Vec<u64>>,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tabulate f^m/f^1 and its sup-distance to uniform over a k range.
    Converge {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        kmin: Option<usize>,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = 12)]
        digits: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Smallest K after which the distance stays below epsilon.
    Threshold {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        m: usize,
        /// Accepts p/q, decimals and scientific notation.
        #[arg(long)]
        eps: String,
        #[arg(long)]
        kmin: Option<usize>,
        /// Scan cap.
        #[arg(long, default_value_t = 200)]
        kmax: usize,
    },
    /// Compare closed formulas against brute-force enumeration.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyTarget::All)]
        family: VerifyTarget,
        /// Largest dimension for stacked and cyclic checks.
        #[arg(long)]
        dmax: Option<usize>,
        /// Largest tower index.
        #[arg(long)]
        kmax: Option<usize>,
        /// Swap in a known-bad formula to confirm mismatches are caught.
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Check the circulant-matrix identities exactly.
    Identities {
        /// Run every identity family.
        #[arg(long, conflicts_with = "family")]
        all: bool,
        #[arg(long, value_enum)]
        family: Option<IdentityFamily>,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        kmax: usize,
        /// Excess vertices for stacked/cyclic; all of 0..=5 when omitted.
        #[arg(long)]
        n: Option<usize>,
        /// Seed preset for tower identities; standard seeds when omitted.
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Reduced spread of powers of B = (I+Q)^{2m}.
    Spread {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        jmax: usize,
        #[arg(long, default_value_t = 12)]
        digits: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[command(flatten)]
    params: FamilyParams,
}

#[derive(Args, Debug, Clone)]
struct OptionalFamilyArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[command(flatten)]
    params: FamilyParams,
}

#[derive(Args, Debug, Clone)]
struct FamilyParams {
    #[arg(long, value_enum, default_value_t = KindArg::Prism)]
    kind: KindArg,
    /// point, segment, square, cube[:d], simplex:d, crosspolytope:d
    #[arg(long, default_value = "point", conflicts_with = "seed_counts")]
    seed: String,
    /// Explicit proper face counts of the seed, e.g. 4,4.
    #[arg(long, value_delimiter = ',')]
    seed_counts: Option<Vec<u64>>,
    #[arg(long, default_value_t = 0)]
    n: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FamilyKind {
    Tower,
    Stacked,
    Cyclic,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum KindArg {
    Prism,
    Pyramid,
    Bipyramid,
}

impl From<KindArg> for TowerKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Prism => TowerKind::Prism,
            KindArg::Pyramid => TowerKind::Pyramid,
            KindArg::Bipyramid => TowerKind::Bipyramid,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum VerifyTarget {
    All,
    Tower,
    Stacked,
    Cyclic,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Fault {
    /// Stacked formula with C(d+1, i) in place of C(d+1, i+1).
    StackedBinomial,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum IdentityFamily {
    Prism,
    Pyramid,
    Bipyramid,
    Stacked,
    Cyclic,
}

impl FamilyParams {
    fn seed(&self) -> Result<FVector, Failure> {
        match &self.seed_counts {
            Some(counts) => Ok(modfvec::exact::make_fvector(counts.iter().copied())?),
            None => seeds::parse_seed(&self.seed),
        }
    }

    fn spec(&self, kind: FamilyKind) -> Result<FamilySpec, Failure> {
        Ok(match kind {
            FamilyKind::Tower => FamilySpec::Tower {
                kind: self.kind.into(),
                seed: self.seed()?,
            },
            FamilyKind::Stacked => FamilySpec::Stacked { n: self.n },
            FamilyKind::Cyclic => FamilySpec::Cyclic { n: self.n },
        })
    }
}

impl FamilyArgs {
    fn spec(&self) -> Result<FamilySpec, Failure> {
        self.params.spec(self.family)
    }
}

/// Terminal outcome of a command; maps onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// A verification or identity check failed (exit 1).
    Check(String),
    /// Bad parameters (exit 2).
    Usage(String),
    /// Resource cap or scan cap hit (exit 3).
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceCap { .. } => Failure::Cap(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Check(m) | Failure::Usage(m) | Failure::Cap(m) => m,
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Fvector { family, k, format } => commands::fvector(&family.spec()?, k, format),
        Command::Modular {
            family,
            k,
            counts,
            m,
            format,
        } => {
            let f = match (family.family, counts) {
                (Some(kind), None) => {
                    let k =
                        k.ok_or_else(|| Failure::Usage("--k is required with --family".into()))?;
                    modfvec::families::family_fvector(&family.params.spec(kind)?, k)?
                }
                (None, Some(counts)) => modfvec::exact::make_fvector(counts)?,
                _ => {
                    return Err(Failure::Usage(
                        "give exactly one of --family or --counts".into(),
                    ))
                }
            };
            commands::modular(&f, m, format)
        }
        Command::Converge {
            family,
            m,
            kmin,
            kmax,
            digits,
            format,
        } => {
            let spec = family.spec()?;
            let kmin = kmin.unwrap_or(spec.first_index());
            commands::converge(&spec, m, kmin, kmax, digits, format)
        }
        Command::Threshold {
            family,
            m,
            eps,
            kmin,
            kmax,
        } => {
            let spec = family.spec()?;
            let kmin = kmin.unwrap_or(spec.first_index());
            commands::threshold(&spec, m, &eps, kmin, kmax)
        }
        Command::Verify {
            family,
            dmax,
            kmax,
            inject_fault,
        } => commands::verify(family, dmax, kmax, inject_fault),
        Command::Identities {
            all,
            family,
            m,
            kmax,
            n,
            seed,
            format,
        } => {
            let families = match (all, family) {
                (true, _) | (false, None) => vec![
                    IdentityFamily::Prism,
                    IdentityFamily::Pyramid,
                    IdentityFamily::Bipyramid,
                    IdentityFamily::Stacked,
                    IdentityFamily::Cyclic,
                ],
                (false, Some(f)) => vec![f],
            };
            commands::identities(&families, m, kmax, n, seed.as_deref(), format)
        }
        Command::Spread {
            m,
            jmax,
            digits,
            format,
        } => commands::spread(m, jmax, digits, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
