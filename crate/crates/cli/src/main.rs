use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use trigonal::coefficients::verify_range;
use trigonal::format::{self, FibreJson};
use trigonal::forward::{construct, verify_predictions};
use trigonal::inverse::{invert, roundtrip_etale, roundtrip_special, TetragonalCover};
use trigonal::report::CheckReport;
use trigonal::toolkit::{configs_for, run_batch, sample_tower, ProfileMix, SampleConfig, Suite};
use trigonal::tower::{Tower, TowerMode, ValidationOptions};

mod markdown;

#[derive(Parser)]
#[command(name = "trigonal", version, about = "Trigonal construction toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Args)]
struct Io {
    /// Input JSON file (`-` for stdin).
    #[arg(long = "in", default_value = "-")]
    input: String,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check a tower against every invariant and report all violations.
    Validate {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        allow_low_genus: bool,
    },
    /// Run the forward construction on a tower.
    Construct {
        #[command(flatten)]
        io: Io,
        /// Emit the prediction checks instead of the construction.
        #[arg(long)]
        check: bool,
    },
    /// Run the inverse construction on a tetragonal cover.
    Invert {
        #[command(flatten)]
        io: Io,
    },
    /// Fibre types and stratum of a tetragonal cover.
    Classify {
        #[command(flatten)]
        io: Io,
    },
    /// Sample random towers.
    Sample {
        #[arg(long)]
        genus: u64,
        #[arg(long, default_value = "general")]
        mode: TowerMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of towers; more than one gives a JSON array.
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Number of 3-cycle branch points of the trigonal map.
        #[arg(long, default_value_t = 0)]
        three_cycles: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Round trip through both constructions. Special mode reads a tower,
    /// etale mode a tetragonal cover.
    Roundtrip {
        #[arg(long)]
        mode: RoundtripMode,
        #[command(flatten)]
        io: Io,
    },
    /// Exact sweep of the coefficient identities.
    VerifyCoefficients {
        #[arg(long, default_value_t = 200)]
        gmax: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Sample and check many instances.
    Batch {
        #[arg(long)]
        suite: Suite,
        /// Genus or range, e.g. `5`, `3-8` or `3,5,7`.
        #[arg(long, default_value = "3-8")]
        genus: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Record wall-clock time in the report (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum RoundtripMode {
    Special,
    Etale,
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render<T: Serialize>(format: Format, value: &T, md: impl FnOnce() -> String) -> Result<String> {
    Ok(match format {
        Format::Json => format::to_pretty(value)?,
        Format::Md => md(),
    })
}

fn parse_genera(s: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((a, b)) = part.split_once('-') {
            let (a, b): (u64, u64) = (a.trim().parse()?, b.trim().parse()?);
            if a > b {
                bail!("empty genus range {part}");
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse()?);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct Violation {
    code: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    message: String,
}

#[derive(Serialize)]
struct ValidationReport {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<TowerMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<u64>,
    low_genus: bool,
    violations: Vec<Violation>,
}

#[derive(Serialize)]
struct Classification {
    genus: u64,
    stratum: String,
    fibres: Vec<FibreJson>,
}

fn read_tower(input: &str) -> Result<Tower> {
    Ok(format::read_tower(&read_input(input)?, ValidationOptions::default())?)
}

fn read_tetragonal(input: &str) -> Result<TetragonalCover> {
    Ok(TetragonalCover::new(format::read_cover(&read_input(input)?)?)?)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate { io, allow_low_genus } => {
            let j: format::TowerJson = format::from_str(&read_input(&io.input)?)?;
            let (cover, blocks) = format::tower_parts_from_json(&j)?;
            let rep = match Tower::validate_with(cover, blocks, ValidationOptions { allow_low_genus }) {
                Ok(t) => ValidationReport {
                    valid: true,
                    mode: Some(t.mode()),
                    genus: Some(t.genus()),
                    low_genus: t.low_genus(),
                    violations: Vec::new(),
                },
                Err(e) => ValidationReport {
                    valid: false,
                    mode: None,
                    genus: None,
                    low_genus: false,
                    violations: e
                        .0
                        .iter()
                        .map(|v| Violation {
                            code: v.code(),
                            label: v.label().map(String::from),
                            message: v.to_string(),
                        })
                        .collect(),
                },
            };
            let text = render(io.format, &rep, || markdown::validation(&rep))?;
            emit(io.out.as_ref(), &text)?;
            Ok(rep.valid)
        }
        Command::Construct { io, check } => {
            let t = read_tower(&io.input)?;
            let r = construct(&t);
            if check {
                let rep = verify_predictions(&t, &r);
                emit(io.out.as_ref(), &render(io.format, &rep, || markdown::checks("Predictions", &rep))?)?;
                return Ok(rep.passed());
            }
            let j = format::forward_to_json(&r);
            emit(io.out.as_ref(), &render(io.format, &j, || markdown::forward(&t, &r))?)?;
            Ok(true)
        }
        Command::Invert { io } => {
            let x = read_tetragonal(&io.input)?;
            let r = invert(&x);
            let j = format::inverse_to_json(&r);
            emit(io.out.as_ref(), &render(io.format, &j, || markdown::inverse(&x, &r))?)?;
            Ok(true)
        }
        Command::Classify { io } => {
            let x = read_tetragonal(&io.input)?;
            let r = invert(&x);
            let c = Classification {
                genus: x.genus(),
                stratum: x.stratum().to_string(),
                fibres: format::inverse_to_json(&r).fibres,
            };
            let text = render(io.format, &c, || {
                markdown::classification(c.genus, &c.stratum, &r.fibres)
            })?;
            emit(io.out.as_ref(), &text)?;
            Ok(true)
        }
        Command::Sample {
            genus,
            mode,
            seed,
            count,
            three_cycles,
            out,
            format,
        } => {
            let transpositions = (2 * genus as usize + 4)
                .checked_sub(2 * three_cycles)
                .context("too many 3-cycles for this genus")?;
            let mix = ProfileMix {
                transpositions,
                three_cycles,
            };
            let towers = (0..count)
                .map(|i| sample_tower(&SampleConfig::new(genus, mode, seed.wrapping_add(i as u64)).with_mix(mix)))
                .collect::<Result<Vec<_>, _>>()?;
            let jsons: Vec<format::TowerJson> = towers.iter().map(format::tower_to_json).collect();
            let text = match (format, jsons.len()) {
                (Format::Md, _) => markdown::towers(&towers),
                (Format::Json, 1) => format::to_pretty(&jsons[0])?,
                (Format::Json, _) => format::to_pretty(&jsons)?,
            };
            emit(out.as_ref(), &text)?;
            Ok(true)
        }
        Command::Roundtrip { mode, io } => {
            let rep: CheckReport = match mode {
                RoundtripMode::Special => roundtrip_special(&read_tower(&io.input)?)?,
                RoundtripMode::Etale => roundtrip_etale(&read_tetragonal(&io.input)?)?,
            };
            emit(io.out.as_ref(), &render(io.format, &rep, || markdown::checks("Round trip", &rep))?)?;
            Ok(rep.passed())
        }
        Command::VerifyCoefficients { gmax, report, format } => {
            let rep = verify_range(gmax)?;
            emit(report.as_ref(), &render(format, &rep, || markdown::coefficients(&rep))?)?;
            if report.is_some() {
                eprintln!(
                    "g = 3..={gmax}: {}; 2^k variant differs at {} genera",
                    if rep.all_passed { "all identities hold" } else { "FAILURES" },
                    rep.with_two_power_mismatches.len()
                );
            }
            Ok(rep.all_passed)
        }
        Command::Batch {
            suite,
            genus,
            count,
            seed,
            threads,
            timing,
            out,
            format,
        } => {
            let genera = parse_genera(&genus)?;
            let cfgs = configs_for(suite, &genera, count, seed);
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
            let start = Instant::now();
            let mut rep = pool.install(|| run_batch(suite, &cfgs));
            if timing {
                rep.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            emit(out.as_ref(), &render(format, &rep, || markdown::batch(&rep))?)?;
            if out.is_some() {
                eprintln!("{}: {}/{} instances passed", rep.suite, rep.passed, rep.instances);
            }
            Ok(rep.all_passed())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
