use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tiltlab::cache::{cached_decomposition_numbers, Cache};
use tiltlab::fixtures::{reproduce_appendix, FixtureCorpus};
use tiltlab::functor::inverse_simple;
use tiltlab::mullineux::{mullineux, mullineux_conjugate, mullineux_trace};
use tiltlab::rank_one::{andersen_haboush_check, premet_criterion, sl2_endomorphism_report, steinberg_counterexample};
use tiltlab::schur::decomp::{decomposition_row, factors_from_map, DecompTable, Factor};
use tiltlab::schur::Engine;
use tiltlab::tilting::{tilting_socle, tmc_check_weight, tmc_scan, TmcOptions, TmcVerdict};
use tiltlab::weights::{hat_partition, partition_to_weight, weight_to_partition, DominantWeight};
use tiltlab::{Error, Partition};

const EXIT_DOMAIN: u8 = 1;
const EXIT_GUARD: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "tiltlab", version, about = "Tilting socles, decomposition numbers and Mullineux maps over GF(p)")]
struct Cli {
    /// More logging (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    /// Neither read nor write the decomposition-number cache.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The Mullineux image M_p(λ) of a p-regular partition.
    Mullineux {
        #[arg(long)]
        p: u32,
        #[arg(long, value_parser = parse_partition)]
        partition: Partition,
        /// Also print the removal trace as JSON.
        #[arg(long)]
        trace: bool,
    },
    /// Converts between SL_n weights (fundamental coordinates) and partitions.
    Bridge(BridgeArgs),
    /// Decomposition numbers [∇(λ):L(μ)] for S(n, d).
    Decnums {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        /// Only the row of this partition.
        #[arg(long, value_parser = parse_partition)]
        partition: Option<Partition>,
        #[arg(long)]
        json: bool,
    },
    /// Composition factors of G^m_n(L(σ)) inside ∇(σ) over GL_m.
    Gfunctor {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_partition)]
        partition: Partition,
        #[arg(long)]
        json: bool,
    },
    /// The S(n, d)-socle of the tilting module T(μ).
    TiltingSocle {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, value_parser = parse_partition)]
        partition: Partition,
        #[arg(long)]
        json: bool,
    },
    /// Tilting module conjecture check for SL_N over X_1.
    Tmc {
        #[arg(long)]
        p: u32,
        /// N for SL_N.
        #[arg(long)]
        rank: usize,
        /// A single restricted weight a,b,… (N−1 fundamental coordinates).
        #[arg(long, value_parser = parse_weight)]
        weight: Option<DominantWeight>,
        /// Also scan the σ outside the dominance window and require zero multiplicity.
        #[arg(long)]
        verify_pruned: bool,
        #[arg(long)]
        json: bool,
    },
    /// Indecomposability of ∇(λ) over G_1T for SL_2.
    Premet {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        max_lambda: u32,
        /// Decide each case from the endomorphism algebra and compare.
        #[arg(long)]
        direct: bool,
        #[arg(long)]
        json: bool,
    },
    /// ch ∇((p^r−1)ρ + p^rγ) = ch St_r · ch ∇(γ)^(r) and the resulting decomposable module.
    AndersenHaboush {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        r: u32,
        /// N for SL_N.
        #[arg(long)]
        rank: usize,
        #[arg(long, value_parser = parse_weight)]
        gamma: DominantWeight,
        #[arg(long)]
        json: bool,
    },
    /// Recomputes the S(4,12), p = 3 tables for all 3-part partitions of 12 and diffs them.
    ReproduceAppendix {
        /// Fixture file; must match the pinned checksum.
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct BridgeArgs {
    /// Fundamental coordinates a,b,….
    #[arg(long, value_parser = parse_weight, required_unless_present = "partition", conflicts_with = "partition")]
    weight: Option<DominantWeight>,
    /// A partition to convert to an SL_n weight (needs --n).
    #[arg(long, value_parser = parse_partition, requires = "n")]
    partition: Option<Partition>,
    #[arg(long)]
    n: Option<usize>,
    /// With --weight: also print λ̂ and M_p(λ̂)′.
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    json: bool,
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_weight(s: &str) -> Result<DominantWeight, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_guard() { EXIT_GUARD } else { EXIT_DOMAIN };
        Failure { code, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Error::from(e).into()
    }
}

fn domain(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_DOMAIN, message: message.into() }
}

type Out = Result<String, Failure>;

fn json<T: Serialize>(v: &T) -> Out {
    Ok(serde_json::to_string(v)?)
}

fn factor_list(factors: &[Factor]) -> String {
    factors.iter().map(|f| if f.mult == 1 { format!("({})", f.mu) } else { format!("({})x{}", f.mu, f.mult) }).collect::<Vec<_>>().join(" ")
}

fn ascending(map: &BTreeMap<Partition, u64>) -> Vec<Factor> {
    map.iter().map(|(mu, &mult)| Factor { mu: mu.clone(), mult }).collect()
}

fn coords(w: &DominantWeight) -> String {
    w.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

struct Ctx {
    engine: Engine,
    cache: Option<Cache>,
}

impl Ctx {
    fn warm(&self, n: usize, d: u32, p: u32) {
        if let Some(c) = &self.cache {
            c.warm(&self.engine, n, d, p);
        }
    }
}

fn run(cli: Cli) -> Out {
    let ctx = Ctx { engine: Engine::default(), cache: (!cli.no_cache).then(Cache::from_env) };
    match cli.command {
        Command::Mullineux { p, partition, trace } => {
            let image = mullineux(&partition, p)?;
            if trace {
                Ok(format!("{image}\n{}", serde_json::to_string_pretty(&mullineux_trace(&partition, p)?)?))
            } else {
                Ok(image.to_string())
            }
        }
        Command::Bridge(args) => bridge(args),
        Command::Decnums { p, n, d, partition, json: as_json } => {
            let table = match &partition {
                Some(lambda) => {
                    if lambda.size() != d || lambda.len() > n {
                        return Err(domain(format!("partition {lambda} is not in Λ⁺({n},{d})")));
                    }
                    ctx.warm(n, d, p);
                    let row = decomposition_row(&ctx.engine, lambda, n, p)?;
                    DecompTable { n, d, p, rows: vec![tiltlab::schur::decomp::DecompRow { lambda: lambda.clone(), factors: factors_from_map(&row) }] }
                }
                None => cached_decomposition_numbers(&ctx.engine, ctx.cache.as_ref(), n, d, p)?,
            };
            if as_json {
                return json(&table);
            }
            Ok(table.rows.iter().map(|r| format!("{}: {}", r.lambda, factor_list(&r.factors))).collect::<Vec<_>>().join("\n"))
        }
        Command::Gfunctor { p, n, m, partition, json: as_json } => {
            ctx.warm(m, partition.size(), p);
            let r = inverse_simple(&ctx.engine, &partition, n, m, p)?;
            if as_json {
                return json(&r);
            }
            Ok(format!(
                "G^{m}_{n}(L({})), p = {p}: dim {} of {}\nfactors: {}",
                r.sigma,
                r.submodule_dim,
                r.nabla_dim,
                factor_list(&r.factors)
            ))
        }
        Command::TiltingSocle { p, n, d, partition, json: as_json } => {
            if partition.size() != d {
                return Err(domain(format!("partition {partition} has size {}, not {d}", partition.size())));
            }
            let r = tilting_socle(&ctx.engine, &partition, n, p)?;
            let socle = ascending(&r.socle_map());
            if as_json {
                #[derive(Serialize)]
                struct SocleOut<'a> {
                    mu: &'a Partition,
                    n: usize,
                    d: u32,
                    p: u32,
                    pivot: &'a Partition,
                    m: usize,
                    fastpath_used: bool,
                    socle: &'a [Factor],
                }
                return json(&SocleOut { mu: &r.mu, n, d, p, pivot: &r.pivot, m: r.m, fastpath_used: r.fastpath_used, socle: &socle });
            }
            let parts: Vec<String> = socle.iter().map(|f| if f.mult == 1 { format!("L({})", f.mu) } else { format!("L({})^{}", f.mu, f.mult) }).collect();
            Ok(format!("soc T({}) over S({n},{d}) = {}", r.mu, parts.join(" + ")))
        }
        Command::Tmc { p, rank, weight, verify_pruned, json: as_json } => {
            let opts = TmcOptions { prune: true, verify_pruned };
            match weight {
                Some(w) => {
                    if w.n() != rank {
                        return Err(domain(format!("weight {w} has {} coordinates, SL_{rank} needs {}", w.coords.len(), rank.saturating_sub(1))));
                    }
                    let v = tmc_check_weight(&ctx.engine, &w, p, opts)?;
                    if as_json {
                        return json(&v);
                    }
                    Ok(verdict_line(&v))
                }
                None => {
                    let scan = tmc_scan(&ctx.engine, rank, p, opts)?;
                    let text = if as_json {
                        serde_json::to_string(&scan)?
                    } else {
                        let mut lines: Vec<String> = scan.verdicts.iter().map(verdict_line).collect();
                        lines.extend(scan.skipped.iter().map(|s| format!("{}: skipped (d = {}): {}", s.lambda, s.d, s.reason)));
                        let held = scan.verdicts.iter().filter(|v| v.holds).count();
                        lines.push(format!("SL_{rank}, p = {p}: {held} of {} weights hold, {} skipped", scan.verdicts.len(), scan.skipped.len()));
                        lines.join("\n")
                    };
                    if scan.skipped.is_empty() {
                        Ok(text)
                    } else {
                        println!("{text}");
                        Err(Failure { code: EXIT_GUARD, message: format!("{} weights exceeded the size guards", scan.skipped.len()) })
                    }
                }
            }
        }
        Command::Premet { p, max_lambda, direct, json: as_json } => premet(p, max_lambda, direct, as_json),
        Command::AndersenHaboush { p, r, rank, gamma, json: as_json } => {
            if gamma.n() != rank {
                return Err(domain(format!("γ = {gamma} has {} coordinates, SL_{rank} needs {}", gamma.coords.len(), rank.saturating_sub(1))));
            }
            let holds = andersen_haboush_check(rank, p, r, &gamma)?;
            let example = if gamma.is_zero() { None } else { Some(steinberg_counterexample(rank, p, r, &gamma)?) };
            if as_json {
                #[derive(Serialize)]
                struct AhOut {
                    identity_holds: bool,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    counterexample: Option<tiltlab::rank_one::SteinbergCounterexample>,
                }
                return json(&AhOut { identity_holds: holds, counterexample: example });
            }
            let mut out = format!("identity {}", if holds { "holds" } else { "FAILS" });
            if let Some(c) = example {
                let part: Vec<String> = c.partition.iter().map(|x| x.to_string()).collect();
                out.push_str(&format!(
                    "\nweight {} = partition ({}), d = {}: {} summands isomorphic to St_{r}",
                    c.weight,
                    part.join(","),
                    c.d,
                    c.summand_count
                ));
            }
            if holds {
                Ok(out)
            } else {
                Err(Failure { code: EXIT_DOMAIN, message: out })
            }
        }
        Command::ReproduceAppendix { fixture, json: as_json } => {
            let corpus = match fixture {
                Some(path) => FixtureCorpus::load(&path)?,
                None => FixtureCorpus::appendix()?,
            };
            cached_decomposition_numbers(&ctx.engine, ctx.cache.as_ref(), corpus.m, corpus.d, corpus.p)?;
            let report = reproduce_appendix(&ctx.engine, &corpus)?;
            let text = if as_json {
                serde_json::to_string(&report)?
            } else {
                let mut lines = Vec::new();
                for (e, listed) in report.entries.iter().zip(&corpus.entries) {
                    if e.nabla_ok && e.g43_ok {
                        lines.push(format!("{}: ok", e.sigma));
                        continue;
                    }
                    lines.push(format!("{}: MISMATCH", e.sigma));
                    if !e.nabla_ok {
                        lines.push(format!("  ∇ computed {}", factor_list(&e.nabla_computed)));
                        lines.push(format!("  ∇ listed   {}", factor_list(&listed.nabla_factors)));
                    }
                    if !e.g43_ok {
                        lines.push(format!("  G computed {}", factor_list(&e.g43_computed)));
                        lines.push(format!("  G listed   {}", factor_list(&listed.g43_factors)));
                    }
                }
                lines.join("\n")
            };
            let bad = report.mismatches().count();
            if bad == 0 {
                Ok(text)
            } else {
                println!("{text}");
                Err(domain(format!("{bad} of {} entries differ from the fixture", report.entries.len())))
            }
        }
    }
}

fn verdict_line(v: &TmcVerdict) -> String {
    let state = if v.holds { "holds" } else { "FAILS" };
    let mut line = format!("{}: {state} (d = {}, hat {}, pivot {}, m = {})", v.lambda, v.d, v.hat, v.pivot, v.m);
    if let Some(from) = &v.mirrored_from {
        line.push_str(&format!(", dual of {from}"));
    } else if !v.holds {
        let bad: Vec<String> = v.witness.iter().filter(|w| w.mult > 0).map(|w| format!("({})x{}", w.sigma, w.mult)).collect();
        line.push_str(&format!(", witness {}", bad.join(" ")));
    }
    line
}

fn bridge(args: BridgeArgs) -> Out {
    #[derive(Serialize, Default)]
    struct BridgeOut {
        weight: DominantWeight,
        partition: Partition,
        #[serde(skip_serializing_if = "Option::is_none")]
        hat: Option<Partition>,
        #[serde(skip_serializing_if = "Option::is_none")]
        pivot: Option<Partition>,
    }
    let mut out = BridgeOut::default();
    if let Some(w) = args.weight {
        out.partition = weight_to_partition(&w);
        if let Some(p) = args.p {
            let hat = hat_partition(&w, p, 1, w.n())?;
            out.pivot = Some(mullineux_conjugate(&hat, p)?);
            out.hat = Some(hat);
        }
        out.weight = w;
    } else if let (Some(mu), Some(n)) = (args.partition, args.n) {
        out.weight = partition_to_weight(&mu, n)?;
        out.partition = mu;
    }
    if args.json {
        return json(&out);
    }
    let mut lines = vec![format!("weight {}", coords(&out.weight)), format!("partition {}", out.partition)];
    if let (Some(h), Some(v)) = (&out.hat, &out.pivot) {
        lines.push(format!("hat {h}"));
        lines.push(format!("pivot {v}"));
    }
    Ok(lines.join("\n"))
}

fn premet(p: u32, max_lambda: u32, direct: bool, as_json: bool) -> Out {
    #[derive(Serialize)]
    struct Row {
        lambda: u32,
        indecomposable: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        direct: Option<bool>,
    }
    let mut rows = Vec::new();
    for lambda in 0..=max_lambda {
        let predicted = premet_criterion(lambda, p);
        let seen = if direct { Some(sl2_endomorphism_report(lambda, p)?.indecomposable) } else { None };
        rows.push(Row { lambda, indecomposable: predicted, direct: seen });
    }
    let disagree: Vec<u32> = rows.iter().filter(|r| r.direct.is_some_and(|d| d != r.indecomposable)).map(|r| r.lambda).collect();
    let text = if as_json {
        serde_json::to_string(&rows)?
    } else {
        rows.iter()
            .map(|r| {
                let word = if r.indecomposable { "indecomposable" } else { "decomposable" };
                match r.direct {
                    Some(d) if d == r.indecomposable => format!("{}: {word} (confirmed)", r.lambda),
                    Some(_) => format!("{}: {word} (endomorphism algebra disagrees)", r.lambda),
                    None => format!("{}: {word}", r.lambda),
                }
            })
            .collect::<Vec<_>>()
            .join("\n")
    };
    if disagree.is_empty() {
        Ok(text)
    } else {
        println!("{text}");
        Err(Failure { code: EXIT_DOMAIN, message: format!("criterion and endomorphism algebra disagree at λ = {disagree:?}") })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(cli) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
