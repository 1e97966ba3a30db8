//! `solenoid` — exact calculations on truncated solenoids from the shell.
//!
//! Every verb prints either plain text or, with `--json`, a deterministic
//! JSON object. Exit codes: 0 on success, 1 when the mathematics refuses
//! (domain errors), 2 when the input cannot be read (parse errors).

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::Zero;
use solenoid_core::{
    classify_periodic, construct_periodic_witness, count_periodic, degree, euler_totient,
    fiber_oracle, fiber_over_identity, is_q_divisible, oracle_min_depth, orbit, Arc, OrbitResult,
    PadicRational, PeriodicClass, PrimeSeqSpec, SClassification, TruncatedPoint,
};
use std::process::ExitCode;

/// Exact arithmetic on truncated solenoids: sequence descriptions, power
/// maps and their fibers, membership, and periodic points.
#[derive(Parser)]
#[command(name = "solenoid", version, about)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stable sheet count of the k-th power map over a sequence.
    Degree {
        /// Sequence description, e.g. 'prefix=[5];cycle=[2]' or 'universal=exclude[2]'.
        #[arg(long)]
        seq: String,
        /// Power-map index, any positive integer.
        #[arg(long)]
        k: String,
    },
    /// Fiber of the k-th power map over the identity.
    Fiber {
        /// Sequence description.
        #[arg(long)]
        seq: String,
        /// Power-map index, any positive integer.
        #[arg(long)]
        k: String,
        /// Depth of the reported points; may only deepen the default.
        #[arg(long)]
        depth: Option<usize>,
        /// Compute by torsion enumeration instead of the generator route.
        #[arg(long)]
        oracle: bool,
    },
    /// Shape of the set of k-periodic points.
    Classify {
        /// Sequence description.
        #[arg(long)]
        seq: String,
        /// Power-map index, any positive integer.
        #[arg(long)]
        k: String,
    },
    /// Construct a k-periodic point inside an arc.
    Witness {
        /// Sequence description.
        #[arg(long)]
        seq: String,
        /// Power-map index.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        /// 1-based level the arc constraint applies to.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        level: u64,
        /// Arc as 'start+length' in fractions of a turn, e.g. '1/10+1/10'.
        #[arg(long)]
        arc: String,
        /// Torsion prime to build the point from.
        #[arg(long)]
        q: u64,
        /// Minimum depth of the reported point.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Iterate the k-th power map and report the eventual cycle.
    Orbit {
        /// Starting point as JSON: {"seq": "...", "coords": ["1/2", ...]}.
        #[arg(long)]
        point: String,
        /// Power-map index, any positive integer.
        #[arg(long)]
        k: String,
        /// Iteration budget.
        #[arg(long, default_value_t = 1000)]
        max_steps: u64,
    },
    /// Whether two sequence descriptions present the same solenoid.
    Equiv {
        /// First sequence description.
        #[arg(long)]
        left: String,
        /// Second sequence description.
        #[arg(long)]
        right: String,
    },
    /// Whether a rational belongs to the fraction group of a sequence.
    Member {
        /// Sequence description.
        #[arg(long)]
        seq: String,
        /// Rational to test, e.g. '5/8' or '-3/1024'.
        #[arg(long)]
        x: String,
    },
    /// Whether dividing by a prime keeps members inside the fraction group.
    Divisible {
        /// Sequence description.
        #[arg(long)]
        seq: String,
        /// Prime divisor to test.
        #[arg(long)]
        q: u64,
        /// Divide this member once instead of answering in general.
        #[arg(long)]
        x: Option<String>,
    },
    /// Number of points of period dividing m under the k-th power map.
    CountPeriodic {
        /// Sequence description.
        #[arg(long)]
        seq: String,
        /// Power-map index.
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        k: u64,
        /// Period bound.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Euler's totient of n.
    Totient {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
}

enum Failure {
    /// Input could not be read: exit code 2.
    Parse(String),
    /// Input was read but the requested object does not exist: exit code 1.
    Domain(String),
}

impl From<solenoid_core::ParseError> for Failure {
    fn from(e: solenoid_core::ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl From<solenoid_core::Error> for Failure {
    fn from(e: solenoid_core::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Parse(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            println!("{output}");
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Parse(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn parse_seq(text: &str) -> Result<PrimeSeqSpec, Failure> {
    Ok(text.parse::<PrimeSeqSpec>()?)
}

fn parse_k(text: &str) -> Result<BigUint, Failure> {
    let k = text
        .trim()
        .parse::<BigUint>()
        .map_err(|_| Failure::Parse(format!("k must be a positive integer, got '{text}'")))?;
    if k.is_zero() {
        return Err(Failure::Parse("k must be at least 1".into()));
    }
    Ok(k)
}

fn coords_line(point: &TruncatedPoint) -> String {
    point
        .coords()
        .iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: &Cli) -> Result<String, Failure> {
    Ok(match &cli.command {
        Command::Degree { seq, k } => {
            let spec = parse_seq(seq)?;
            let k = parse_k(k)?;
            let d = degree(&spec, &k);
            if cli.json {
                serde_json::json!({
                    "seq": spec.to_string(),
                    "k": k.to_string(),
                    "degree": d.to_string(),
                })
                .to_string()
            } else {
                d.to_string()
            }
        }

        Command::Fiber {
            seq,
            k,
            depth,
            oracle,
        } => {
            let spec = parse_seq(seq)?;
            let k = parse_k(k)?;
            let default_depth = oracle_min_depth(&spec, &k);
            let depth = depth.map_or(default_depth, |d| d.max(default_depth));
            let report = if *oracle {
                let small = u64::try_from(&k).map_err(|_| {
                    Failure::Domain("the enumeration route needs k below 2^64".into())
                })?;
                fiber_oracle(&spec, small, depth)?
            } else {
                fiber_over_identity(&spec, &k, depth)?
            };
            if cli.json {
                serde_json::to_string(&report)?
            } else {
                let mut out = format!(
                    "k: {}\ndegree: {}\nstabilization_level: {}",
                    report.k, report.degree, report.stabilization_level,
                );
                for representative in &report.representatives {
                    out.push_str("\nrepresentative: ");
                    out.push_str(&coords_line(representative));
                }
                out
            }
        }

        Command::Classify { seq, k } => {
            let spec = parse_seq(seq)?;
            let k = parse_k(k)?;
            match classify_periodic(&spec, &k) {
                PeriodicClass::AllPoints => {
                    if cli.json {
                        serde_json::json!({"class": "all-points"}).to_string()
                    } else {
                        "all-points (h^1 is the identity map)".into()
                    }
                }
                PeriodicClass::OnlyIdentity { blocking } if blocking.is_empty() => {
                    if cli.json {
                        serde_json::json!({"class": "only-identity", "proposition": 5})
                            .to_string()
                    } else {
                        "only-identity (Prop 5)".into()
                    }
                }
                PeriodicClass::OnlyIdentity { blocking } => {
                    if cli.json {
                        serde_json::json!({
                            "class": "only-identity",
                            "proposition": 7,
                            "blocking": blocking,
                        })
                        .to_string()
                    } else {
                        let primes = blocking
                            .iter()
                            .map(|q| q.to_string())
                            .collect::<Vec<_>>()
                            .join(",");
                        format!("only-identity (Prop 7, S(P) primes {primes} all divide k)")
                    }
                }
                PeriodicClass::Dense { q } => {
                    let proposition = match spec.s_classification() {
                        SClassification::Infinite => 6,
                        _ => 7,
                    };
                    if cli.json {
                        serde_json::json!({
                            "class": "dense",
                            "proposition": proposition,
                            "q": q,
                        })
                        .to_string()
                    } else {
                        format!("dense (Prop {proposition}, q={q})")
                    }
                }
            }
        }

        Command::Witness {
            seq,
            k,
            level,
            arc,
            q,
            depth,
        } => {
            let spec = parse_seq(seq)?;
            let arc: Arc = arc.parse()?;
            let witness =
                construct_periodic_witness(&spec, *k, *level as usize, &arc, *q, *depth)?;
            if cli.json {
                serde_json::to_string(&witness)?
            } else {
                format!(
                    "q: {}\nm: {}\nclaimed_period: {}\nleast_period: {}\narc_level: {}\narc: {}\npoint: {}",
                    witness.q,
                    witness.m,
                    witness.claimed_period,
                    witness.least_period,
                    witness.arc_level,
                    witness.arc,
                    coords_line(&witness.point),
                )
            }
        }

        Command::Orbit {
            point,
            k,
            max_steps,
        } => {
            let point: TruncatedPoint = serde_json::from_str(point)?;
            let k = parse_k(k)?;
            match orbit(&point, &k, *max_steps) {
                OrbitResult::Found { pre_period, period } => {
                    if cli.json {
                        serde_json::json!({"pre_period": pre_period, "period": period})
                            .to_string()
                    } else {
                        format!("pre_period: {pre_period}\nperiod: {period}")
                    }
                }
                OrbitResult::NotFoundWithin(steps) => {
                    if cli.json {
                        serde_json::json!({"not_found_within": steps}).to_string()
                    } else {
                        format!("no repeat within {steps} steps")
                    }
                }
            }
        }

        Command::Equiv { left, right } => {
            let l = parse_seq(left)?;
            let r = parse_seq(right)?;
            let verdict = l.equivalent(&r);
            if cli.json {
                serde_json::json!({
                    "left": l.to_string(),
                    "right": r.to_string(),
                    "equivalent": verdict,
                })
                .to_string()
            } else if verdict {
                "equivalent".into()
            } else {
                "not equivalent".into()
            }
        }

        Command::Member { seq, x } => {
            let spec = parse_seq(seq)?;
            let value: PadicRational = x.parse()?;
            let verdict = value.is_member(&spec);
            if cli.json {
                serde_json::json!({
                    "seq": spec.to_string(),
                    "value": value.to_string(),
                    "member": verdict,
                })
                .to_string()
            } else if verdict {
                "member".into()
            } else {
                "not a member".into()
            }
        }

        Command::Divisible { seq, q, x } => {
            let spec = parse_seq(seq)?;
            match x {
                None => {
                    let verdict = is_q_divisible(&spec, *q)?;
                    if cli.json {
                        serde_json::json!({
                            "seq": spec.to_string(),
                            "q": q,
                            "divisible": verdict,
                        })
                        .to_string()
                    } else if verdict {
                        "divisible".into()
                    } else {
                        "not divisible".into()
                    }
                }
                Some(text) => {
                    let value: PadicRational = text.parse()?;
                    let quotient = value.divide_witness(&spec, *q)?;
                    if cli.json {
                        serde_json::json!({
                            "seq": spec.to_string(),
                            "q": q,
                            "value": value.to_string(),
                            "quotient": quotient.as_ref().map(|r| r.to_string()),
                        })
                        .to_string()
                    } else {
                        match quotient {
                            Some(r) => r.to_string(),
                            None => "no quotient within the group".into(),
                        }
                    }
                }
            }
        }

        Command::CountPeriodic { seq, k, m } => {
            let spec = parse_seq(seq)?;
            let count = count_periodic(&spec, *k, *m);
            if cli.json {
                serde_json::json!({
                    "seq": spec.to_string(),
                    "k": k,
                    "m": m,
                    "count": count.to_string(),
                })
                .to_string()
            } else {
                count.to_string()
            }
        }

        Command::Totient { n } => {
            let value = euler_totient(*n);
            if cli.json {
                serde_json::json!({"n": n, "totient": value}).to_string()
            } else {
                value.to_string()
            }
        }
    })
}
