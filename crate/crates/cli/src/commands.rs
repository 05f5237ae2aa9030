use std::path::PathBuf;

use ar_iet::analysis::{
    birkhoff_frequencies, eigenvalue_scan, preimage_clusters, tourab_patterns, twm_pattern,
    two_measure_experiment, xi_sequence,
};
use ar_iet::gasket::{
    directing_prefix, omega_lengths, partial_quotients, reconstruct_triple, DirectingPrefix,
    PrefixExit, Triple,
};
use ar_iet::iet::{build_ar9, trajectory, Ar9Map, OrderTag, Partition};
use ar_iet::induction::{check_stage, induce_step, iterate_induction};
use ar_iet::rational::{format_rational, ratio, Rational};
use ar_iet::towers::{
    adjacency_check, level_component_counts, partition_check, tower_heights, towers_at_stage,
};
use ar_iet::words::{heights_by_matrix, project, stabilized_complexity, stage_words, Alphabet, Word};
use clap::{Args, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::CliError;
use crate::{order_arg, prefix_arg, rational_arg, Format, MapArgs, PqArgs};

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn build_map(cfg: &RunConfig, args: &MapArgs) -> Result<Ar9Map, CliError> {
    let triple = match (&args.triple, &args.prefix) {
        (Some(t), _) => t.clone(),
        (None, Some(p)) => reconstruct_triple(p, &cfg.seed)?,
        (None, None) => return Err(CliError::usage("one of --triple or --prefix is required")),
    };
    Ok(build_ar9(&triple, args.order, args.gaps.0.clone())?)
}

fn exit_reason(exit: &PrefixExit) -> String {
    match exit {
        PrefixExit::Exhausted => "Exhausted".into(),
        PrefixExit::NotInGasket { at_step, .. } => format!("NotInGasket@{at_step}"),
    }
}

pub fn gasket(
    cfg: &RunConfig,
    triple: Option<Triple>,
    prefix: Option<DirectingPrefix>,
    steps: usize,
) -> Result<String, CliError> {
    if let Some(t) = triple {
        let run = directing_prefix(&t, steps);
        let pq = partial_quotients(&run.prefix).ok();
        return Ok(to_json(&json!({
            "schema": "ar-iet/gasket/1",
            "triple": t,
            "steps": steps,
            "prefix": run.prefix,
            "exit_reason": exit_reason(&run.exit),
            "exit": run.exit,
            "triples": run.triples,
            "partial_quotients": pq,
        })));
    }
    let Some(prefix) = prefix else {
        return Err(CliError::usage("one of --triple or --prefix is required"));
    };
    let t = reconstruct_triple(&prefix, &cfg.seed)?;
    let omegas: Vec<String> = omega_lengths(&t).iter().map(format_rational).collect();
    Ok(to_json(&json!({
        "schema": "ar-iet/gasket-reconstruct/1",
        "prefix": prefix,
        "seed": cfg.seed,
        "triple": t,
        "omega_lengths": omegas,
    })))
}

fn word_key(alphabet: Alphabet, l: u8) -> String {
    match alphabet {
        Alphabet::A3 => alphabet.letter_name(l).to_uppercase(),
        _ => alphabet.letter_name(l),
    }
}

pub fn words(
    cfg: &RunConfig,
    prefix: &DirectingPrefix,
    alphabet: Alphabet,
    stage: Option<usize>,
) -> Result<String, CliError> {
    let k = stage.unwrap_or(prefix.len());
    if k > prefix.len() {
        return Err(ar_iet::words::WordsError::NotEnoughDirectingData {
            requested: k,
            available: prefix.len(),
        }
        .into());
    }
    let p = prefix.truncated(k);
    let ws = stage_words(&p, alphabet, cfg.max_word_letters)?;
    let mut obj = serde_json::Map::new();
    obj.insert("schema".into(), json!("ar-iet/words/1"));
    obj.insert("prefix".into(), json!(p));
    obj.insert("alphabet".into(), json!(alphabet));
    obj.insert("heights".into(), json!(heights_by_matrix(&p).last()));
    for (l, w) in ws.iter().enumerate() {
        obj.insert(word_key(alphabet, l as u8), json!(w));
    }
    Ok(to_json(&Value::Object(obj)))
}

pub fn orbit(
    cfg: &RunConfig,
    args: &MapArgs,
    x: &Rational,
    steps: usize,
    partition: Partition,
    format: Format,
) -> Result<String, CliError> {
    if steps == 0 || steps > cfg.max_steps {
        return Err(CliError::usage(format!("--steps must be in 1..={}", cfg.max_steps)));
    }
    let m = build_map(cfg, args)?;
    let freq = birkhoff_frequencies(&m, x, steps)?;
    if format == Format::Csv {
        return Ok(freq.to_csv());
    }
    let word = trajectory(&m, x, steps, partition)?;
    let mut end = x.clone();
    for _ in 0..steps {
        end = m.apply(&end)?.0;
    }
    Ok(to_json(&json!({
        "schema": "ar-iet/orbit/1",
        "x": format_rational(x),
        "steps": steps,
        "alphabet": partition.alphabet(),
        "word": word,
        "end": format_rational(&end),
        "counts": freq.counts,
    })))
}

pub fn induct(cfg: &RunConfig, args: &MapArgs, steps: usize) -> Result<String, CliError> {
    let m = build_map(cfg, args)?;
    let mut cur = m.clone();
    let mut stages = Vec::with_capacity(steps);
    for index in 1..=steps {
        let stage = induce_step(&cur, index)?;
        let check = check_stage(&cur, &stage);
        stages.push(json!({ "stage": stage.report(), "check": check }));
        cur = stage.map;
    }
    Ok(to_json(&json!({
        "schema": "ar-iet/induct/1",
        "initial": m.table(),
        "stages": stages,
    })))
}

pub fn towers(cfg: &RunConfig, args: &MapArgs, stage: usize, format: Format) -> Result<String, CliError> {
    let m = build_map(cfg, args)?;
    let stages = iterate_induction(&m, stage)?;
    let f = towers_at_stage(&m, &stages, stage)?;
    if format == Format::Csv {
        let mut out = String::from("tower,level,lo,hi\n");
        for t in &f.nine {
            for (j, level) in t.levels.iter().enumerate() {
                for iv in level.parts() {
                    out.push_str(&format!(
                        "{},{j},{},{}\n",
                        t.label,
                        format_rational(&iv.lo),
                        format_rational(&iv.hi)
                    ));
                }
            }
        }
        return Ok(out);
    }
    let counts = level_component_counts(&f);
    Ok(to_json(&json!({
        "schema": "ar-iet/towers-report/1",
        "heights": tower_heights(&stages)[stage],
        "checks": [partition_check(&f), adjacency_check(&f)],
        "component_counts": counts,
        "components_within_bounds": counts.within_bounds(),
        "family": f,
    })))
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Run every check (the default when none is selected).
    #[arg(long)]
    pub all: bool,
    #[arg(long)]
    pub partition: bool,
    #[arg(long)]
    pub adjacency: bool,
    #[arg(long)]
    pub components: bool,
    #[arg(long)]
    pub induction: bool,
    #[arg(long)]
    pub coding: bool,
    #[arg(long, value_parser = prefix_arg)]
    pub prefix: Option<DirectingPrefix>,
    /// One directing prefix per line; `#` starts a comment.
    #[arg(long)]
    pub prefix_file: Option<PathBuf>,
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    #[arg(long, value_parser = order_arg, default_value = "first")]
    pub order: OrderTag,
    /// Random points per prefix for the coding check.
    #[arg(long, default_value_t = 20)]
    pub points: usize,
}

#[derive(Debug, Clone, Copy)]
struct Selection {
    partition: bool,
    adjacency: bool,
    components: bool,
    induction: bool,
    coding: bool,
}

#[derive(Debug, Serialize)]
struct Outcome {
    check: &'static str,
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(check: &'static str, failures: &[String]) -> Self {
        Outcome {
            check,
            passed: failures.is_empty(),
            detail: failures.join("; "),
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, m: &Ar9Map) -> Rational {
    let dom = m.domain();
    let breaks = m.breakpoints();
    loop {
        let part = &dom.parts()[rng.gen_range(0..dom.parts().len())];
        let den: i64 = rng.gen_range(1000..5000);
        let x = &part.lo + part.len() * ratio(rng.gen_range(0..den), den);
        if !breaks.contains(&x) {
            return x;
        }
    }
}

fn check_prefix(
    cfg: &RunConfig,
    args: &CheckArgs,
    sel: Selection,
    prefix: &DirectingPrefix,
    rng_seed: u64,
) -> Result<(usize, Vec<Outcome>), CliError> {
    // A prefix of length n only pins down n stages.
    let depth = args.depth.min(prefix.len());
    let t = reconstruct_triple(prefix, &cfg.seed)?;
    let m = build_ar9(&t, args.order, [ratio(0, 1), ratio(0, 1)])?;
    let stages = iterate_induction(&m, depth)?;
    let mut out = Vec::new();
    if sel.induction {
        let mut bad = Vec::new();
        let mut parent = &m;
        for s in &stages {
            if !check_stage(parent, s).passed {
                bad.push(format!("stage {}", s.index));
            }
            parent = &s.map;
        }
        out.push(Outcome::new("induction", &bad));
    }
    if sel.partition || sel.adjacency || sel.components {
        let (mut part, mut adj, mut comp) = (Vec::new(), Vec::new(), Vec::new());
        for k in 0..=depth {
            let f = towers_at_stage(&m, &stages, k)?;
            let p = partition_check(&f);
            if !p.passed {
                part.push(format!("k={k}: {}", p.detail));
            }
            let a = adjacency_check(&f);
            if !a.passed {
                adj.push(format!("k={k}: {}", a.detail));
            }
            let c = level_component_counts(&f);
            if !c.within_bounds() {
                comp.push(format!("k={k}: {c:?}"));
            }
        }
        if sel.partition {
            out.push(Outcome::new("partition", &part));
        }
        if sel.adjacency {
            out.push(Outcome::new("adjacency", &adj));
        }
        if sel.components {
            out.push(Outcome::new("components", &comp));
        }
    }
    if sel.coding {
        let mut bad = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let steps = cfg.max_steps.min(2000);
        for _ in 0..args.points {
            let x = random_point(&mut rng, &m);
            let nine = trajectory(&m, &x, steps, Partition::Nine)?;
            let three = trajectory(&m, &x, steps, Partition::Three)?;
            if project(&nine, Alphabet::A3) != three {
                bad.push(format!("projection at x={}", format_rational(&x)));
            }
        }
        for (k, s) in stages.iter().enumerate() {
            let words = stage_words(&prefix.truncated(k + 1), Alphabet::A9, cfg.max_word_letters)?;
            for l in 0..9u8 {
                let w = &words[l as usize];
                if trajectory(&m, &s.map.piece(l).lo, w.len(), Partition::Nine)? != *w {
                    bad.push(format!("return word {} at stage {}", l + 1, k + 1));
                }
            }
        }
        out.push(Outcome::new("coding", &bad));
    }
    Ok((depth, out))
}

fn read_prefixes(args: &CheckArgs) -> Result<Vec<DirectingPrefix>, CliError> {
    let mut prefixes: Vec<DirectingPrefix> = args.prefix.iter().cloned().collect();
    if let Some(path) = &args.prefix_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let p = line
                .parse()
                .map_err(|e| CliError::usage(format!("{}:{}: {e}", path.display(), n + 1)))?;
            prefixes.push(p);
        }
    }
    if prefixes.is_empty() {
        return Err(CliError::usage("give --prefix or a non-empty --prefix-file"));
    }
    Ok(prefixes)
}

/// Runs the selected checks; also returns the number of failed checks.
pub fn check(cfg: &RunConfig, args: &CheckArgs) -> Result<(String, usize), CliError> {
    let none = !(args.partition || args.adjacency || args.components || args.induction || args.coding);
    let every = args.all || none;
    let sel = Selection {
        partition: every || args.partition,
        adjacency: every || args.adjacency,
        components: every || args.components,
        induction: every || args.induction,
        coding: every || args.coding,
    };
    let prefixes = read_prefixes(args)?;
    let results: Vec<Result<(usize, Vec<Outcome>), CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = prefixes
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let seed = cfg.rng_seed.wrapping_add(i as u64);
                scope.spawn(move || check_prefix(cfg, args, sel, p, seed))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check threads do not panic"))
            .collect()
    });
    let mut failed = 0usize;
    let mut rows = Vec::with_capacity(prefixes.len());
    for (p, r) in prefixes.iter().zip(results) {
        match r {
            Ok((depth, outcomes)) => {
                failed += outcomes.iter().filter(|o| !o.passed).count();
                rows.push(json!({ "prefix": p, "depth": depth, "checks": outcomes }));
            }
            Err(e) => {
                failed += 1;
                rows.push(json!({ "prefix": p, "error": serde_json::from_str::<Value>(&e.to_json()).unwrap() }));
            }
        }
    }
    let text = to_json(&json!({
        "schema": "ar-iet/check/1",
        "max_depth": args.depth,
        "order": args.order,
        "results": rows,
        "passed": failed == 0,
    }));
    Ok((text, failed))
}

#[derive(Debug, Subcommand)]
pub enum Experiment {
    /// ξ series, Σ 1/k_n, weak-mixing and tower patterns of a sequence.
    Conditions {
        #[command(flatten)]
        pq: PqArgs,
    },
    /// Frequencies along orbits started in two different towers.
    TwoMeasure {
        #[command(flatten)]
        pq: PqArgs,
        /// Induction depth; the last multiplicative time by default.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Necessary condition for `exp(2πiθ)` to be an eigenvalue.
    Eigen {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long, value_parser = rational_arg)]
        theta: Rational,
    },
    /// Points sharing a three-letter coding.
    Preimage {
        #[command(flatten)]
        map: MapArgs,
        /// Target word over `a,b,c`.
        #[arg(long, conflicts_with = "x")]
        target: Option<String>,
        /// Use the coding of this point instead.
        #[arg(long, value_parser = rational_arg)]
        x: Option<Rational>,
        #[arg(long, default_value_t = 200)]
        length: usize,
    },
    /// Factor complexity of the three-letter language.
    Complexity {
        #[arg(long, value_parser = prefix_arg)]
        prefix: DirectingPrefix,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
    },
}

pub fn experiment(cfg: &RunConfig, kind: Experiment) -> Result<String, CliError> {
    match kind {
        Experiment::Conditions { pq } => {
            let pq = pq.resolve()?;
            Ok(to_json(&json!({
                "schema": "ar-iet/experiment-conditions/1",
                "conditions": xi_sequence(&pq, &cfg.analysis),
                "twm": twm_pattern(&pq),
                "tourab": tourab_patterns(&pq),
            })))
        }
        Experiment::TwoMeasure {
            pq,
            depth,
            steps,
            format,
        } => {
            let pq = pq.resolve()?;
            let depth = depth.unwrap_or(pq.time(pq.len()) as usize);
            if steps == 0 || steps > cfg.max_steps {
                return Err(CliError::usage(format!("--steps must be in 1..={}", cfg.max_steps)));
            }
            let r = two_measure_experiment(&pq, &cfg.seed, depth, steps)?;
            if format == Format::Csv {
                let mut out = String::from("point,letter,count,frequency,decimal\n");
                for (i, v) in r.vectors.iter().enumerate() {
                    for line in v.to_csv().lines().skip(1) {
                        out.push_str(&format!("{i},{line}\n"));
                    }
                }
                return Ok(out);
            }
            let passes = r.l1_distance >= cfg.analysis.l1_threshold;
            Ok(to_json(&json!({
                "report": r,
                "l1_threshold": format_rational(&cfg.analysis.l1_threshold),
                "distinct_measures_evidence": passes,
                "schema": "ar-iet/experiment-two-measure/1",
            })))
        }
        Experiment::Eigen { pq, theta } => {
            let pq = pq.resolve()?;
            Ok(to_json(&eigenvalue_scan(&pq, &theta, &cfg.analysis)))
        }
        Experiment::Preimage {
            map,
            target,
            x,
            length,
        } => {
            let m = build_map(cfg, &map)?;
            let word = match (target, x) {
                (Some(t), _) => Word::parse(Alphabet::A3, &t)?,
                (None, Some(x)) => trajectory(&m, &x, length, Partition::Three)?,
                (None, None) => return Err(CliError::usage("one of --target or --x is required")),
            };
            if word.len() > cfg.max_depth {
                return Err(CliError::usage(format!(
                    "target length {} exceeds max_depth {}",
                    word.len(),
                    cfg.max_depth
                )));
            }
            Ok(to_json(&preimage_clusters(&m, &word)?))
        }
        Experiment::Complexity { prefix, n_max } => {
            let mut directing = prefix.clone();
            let profile = loop {
                match stabilized_complexity(&directing, n_max, cfg.max_word_letters) {
                    Ok(p) => break p,
                    Err(e) if directing.len() >= 20 * prefix.len().max(1) => return Err(e.into()),
                    Err(_) => {
                        let mut syms = directing.symbols().to_vec();
                        syms.extend_from_slice(prefix.symbols());
                        directing = DirectingPrefix::new(syms);
                    }
                }
            };
            let linear = profile.counts.iter().enumerate().all(|(i, &c)| c == 2 * i + 3);
            Ok(to_json(&json!({
                "schema": "ar-iet/complexity/1",
                "prefix": prefix,
                "directing_length": directing.len(),
                "stage": profile.stage,
                "counts": profile.counts,
                "equals_2n_plus_1": linear,
            })))
        }
    }
}

pub fn render(cfg: &RunConfig, args: &MapArgs, induction: bool) -> Result<String, CliError> {
    let m = build_map(cfg, args)?;
    let induced = if induction {
        Some(induce_step(&m, 1)?.map)
    } else {
        None
    };
    Ok(crate::svg::render_layout(&m, induced.as_ref()))
}
