use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use resfin::detect::{detect, verify_certificate, GeneratorFile, GeneratorSet, Target};
use resfin::error::Error;
use resfin::groups::lemmas::default_rep;
use resfin::groups::{group_order_mod, index_report, ChevalleyGroup, Level, DEFAULT_CAP};
use resfin::harness::{
    build_witness, chebotarev_experiment, constants_table, ideal_table, min_detecting_congruence_quotient,
    witness_lower_bound_check, witness_modulus_check, SmallGrowth, WitnessRing,
};
use resfin::lie::{check_codim_lemma, random_small_codim_pair, ChevalleyAlgebra};
use resfin::polyarith::prime::next_prime;
use resfin::polyarith::{FiniteField, FiniteRing, Poly, ResidueRing, YPoly};
use resfin::rootsys::{CartanType, RootDatum};

use crate::config::{Config, RingDescriptor};
use crate::output::Output;
use crate::{Cli, Command};

fn parse_group(s: &str) -> Result<RootDatum> {
    let (k, l) = CartanType::parse(s)?;
    Ok(RootDatum::new(k, l)?)
}

fn parse_word(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().with_context(|| format!("bad letter {x:?} in word {s:?}")))
        .collect()
}

#[derive(Args)]
pub struct DetectArgs {
    /// Generator file (JSON).
    #[arg(long, value_name = "FILE")]
    pub gens: Option<PathBuf>,
    /// Comma-separated letters; `-i` is the inverse of generator `i`. Repeatable.
    #[arg(long, required = true, allow_hyphen_values = true)]
    pub word: Vec<String>,
}

#[derive(Args)]
pub struct GrowthArgs {
    /// Root datum, e.g. `A1`.
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub q: u64,
    /// Work over `Z/q^k` (q prime).
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Largest word length (default: the diameter).
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub group: String,
    /// Work over `F_p[t]`; omitted means `Z`.
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub r: u64,
    /// Congruence level: an integer, or a polynomial in `t`.
    #[arg(long, default_value = "1")]
    pub level: String,
    /// Largest modulus norm searched.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Largest norm for the explicit reduction check.
    #[arg(long, default_value_t = 64)]
    pub check_norm: u64,
}

#[derive(Args)]
pub struct ChebArgs {
    #[arg(long)]
    pub p: u64,
    /// Polynomial in `y` with coefficients in `F_p[t]`.
    #[arg(long, allow_hyphen_values = true)]
    pub f: String,
    /// Order of the Galois group.
    #[arg(long)]
    pub galois: u64,
    /// Degree of the constant field extension.
    #[arg(long, default_value_t = 1)]
    pub m: u64,
    #[arg(long, default_value_t = 1)]
    pub x_min: usize,
    #[arg(long, default_value_t = 8)]
    pub x_max: usize,
}

#[derive(Args)]
pub struct LieCheckArgs {
    #[arg(long, default_value = "A2")]
    pub group: String,
    #[arg(long, default_value_t = 4)]
    pub q: u64,
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Args)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
}

pub fn run(cli: &Cli) -> Result<Output> {
    let cfg = Config::load(cli.global.config.as_deref())?;
    let seed = cli.global.seed.or(cfg.seed).unwrap_or(0);
    match &cli.command {
        Command::Detect(a) => run_detect(a, &cfg),
        Command::Growth(a) => run_growth(a, &cfg),
        Command::Witness(a) => run_witness(a, &cfg),
        Command::Cheb(a) => run_cheb(a),
        Command::Tables => run_tables(),
        Command::LieCheck(a) => run_lie_check(a, &cfg, seed),
        Command::GroupOrder(a) => run_group_order(a),
        Command::MinimalIndex(a) => run_minimal_index(a),
    }
}

fn run_detect(a: &DetectArgs, cfg: &Config) -> Result<Output> {
    let file: GeneratorFile = match &a.gens {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => cfg.generators.clone().ok_or_else(|| anyhow!("no generators: pass --gens or set them in --config"))?,
    };
    let set = GeneratorSet::from_file(file)?;
    let mut certs = Vec::new();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for w in &a.word {
        let word = parse_word(w)?;
        let c = detect(&set, &word)?;
        if !verify_certificate(&set, &c)? {
            violations.push(format!("certificate for {w} failed replay"));
        }
        let target = match &c.target {
            Target::Prime { p, point } => format!("p={p} point={point:?}"),
            Target::Field { p, modulus, .. } => format!("F_{p}[t]/({})", Poly::new(*p, modulus.clone())),
        };
        rows.push(vec![w.clone(), target, c.field_size.to_string(), c.size_bound.to_string(), c.quotient_order_bound.clone()]);
        certs.push(serde_json::to_value(&c)?);
    }
    let report = if certs.len() == 1 { certs.pop().unwrap() } else { Value::Array(certs) };
    let mut out = Output::new(report).table(&["word", "target", "field_size", "size_bound", "quotient_order_bound"], rows);
    out.violations = violations;
    Ok(out)
}

fn growth_on<R: FiniteRing>(d: &RootDatum, ring: &R, cap: usize) -> Result<SmallGrowth> {
    let g = ChevalleyGroup::new(d.clone(), default_rep(d), ring)?;
    Ok(SmallGrowth::new(&g.m, &g.generators(), cap)?)
}

fn run_growth(a: &GrowthArgs, cfg: &Config) -> Result<Output> {
    let d = parse_group(&a.group)?;
    let cap = cfg.cap.unwrap_or(DEFAULT_CAP);
    let sg = if a.k == 1 {
        growth_on(&d, &FiniteField::of_order(a.q)?, cap)?
    } else {
        growth_on(&d, &ResidueRing::integers(a.q, a.k)?, cap)?
    };
    let n_max = a.n_max.or(cfg.n_max).unwrap_or_else(|| sg.diameter());
    let recs = sg.records(n_max);
    let mut violations = Vec::new();
    for r in &recs {
        if r.max_subgroup_index > r.max_normal_index {
            violations.push(format!("n={}: subgroup index exceeds normal index", r.n));
        }
    }
    for w in recs.windows(2) {
        if w[1].max_normal_index < w[0].max_normal_index || w[1].max_subgroup_index < w[0].max_subgroup_index {
            violations.push(format!("records decrease at n={}", w[1].n));
        }
    }
    let rows = recs
        .iter()
        .map(|r| {
            let word: Vec<String> = r.argmax_word.iter().map(|x| x.to_string()).collect();
            vec![r.n.to_string(), r.max_normal_index.to_string(), r.max_subgroup_index.to_string(), word.join(",")]
        })
        .collect();
    let report = json!({
        "group": d.label(),
        "q": a.q,
        "k": a.k,
        "order": sg.group.order(),
        "diameter": sg.diameter(),
        "normal_subgroups": sg.num_normal,
        "subgroups": sg.num_subgroups,
        "records": recs,
    });
    let mut out = Output::new(report).table(&["n", "max_normal_index", "max_subgroup_index", "argmax_word"], rows);
    out.violations = violations;
    Ok(out)
}

fn run_witness(a: &WitnessArgs, cfg: &Config) -> Result<Output> {
    let d = parse_group(&a.group)?;
    let ring = match (a.p, cfg.ring) {
        (Some(p), _) => WitnessRing::FpT { p },
        (None, Some(RingDescriptor::FpT { p })) => WitnessRing::FpT { p },
        _ => WitnessRing::Integers,
    };
    let level = match &ring {
        WitnessRing::Integers => Level::Int(a.level.trim().parse().with_context(|| format!("bad level {:?}", a.level))?),
        WitnessRing::FpT { p } => Level::Poly(Poly::parse(*p, &a.level)?),
    };
    let w = build_witness(&d, ring.clone(), a.r, &level)?;
    let floor = match &ring {
        WitnessRing::Integers => next_prime(a.r),
        WitnessRing::FpT { p } => p.checked_pow(a.r as u32 + 1).ok_or_else(|| anyhow!("budget overflow"))?,
    };
    let budget = a.budget.or(cfg.budget).unwrap_or(floor);
    let cap = cfg.cap.unwrap_or(DEFAULT_CAP);
    let search = min_detecting_congruence_quotient(&d, &w.congruence_element(), budget)?;
    let check = witness_modulus_check(&w, a.check_norm)?;
    let mut violations = Vec::new();
    let bounds = match witness_lower_bound_check(&w, &search.hit.modulus, cap) {
        Ok(r) => {
            for row in r.rows.iter().filter(|x| !x.holds) {
                violations.push(format!("{}: index {} below {}", row.description, row.index, row.bound));
            }
            serde_json::to_value(&r)?
        }
        Err(Error::Unsupported(m)) | Err(Error::Infeasible(m)) => json!({ "skipped": m }),
        Err(e) => return Err(e.into()),
    };
    let report = json!({ "witness": w, "search": search, "modulus_check": check, "lower_bounds": bounds });
    let rows = vec![vec![
        w.label.clone(),
        w.r.to_string(),
        w.proxy_length.to_string(),
        search.hit.modulus.label(),
        search.hit.order.to_string(),
    ]];
    let mut out = Output::new(report).table(&["group", "r", "proxy_length", "modulus", "order"], rows);
    out.violations = violations;
    Ok(out)
}

fn run_cheb(a: &ChebArgs) -> Result<Output> {
    let f = YPoly::parse(a.p, &a.f)?;
    let t = chebotarev_experiment(&f, a.galois, a.m, a.x_min..=a.x_max)?;
    let rows = t
        .rows
        .iter()
        .map(|r| vec![r.x.to_string(), r.observed.to_string(), r.predicted.to_string(), r.bound.to_string(), r.within.to_string()])
        .collect();
    let violations = t.violations().iter().map(|x| format!("x={x}: count outside the bound")).collect();
    let mut out = Output::new(serde_json::to_value(&t)?).table(&["x", "observed", "predicted", "bound", "within"], rows);
    out.violations = violations;
    Ok(out)
}

fn run_tables() -> Result<Output> {
    let consts = constants_table()?;
    let ideals = ideal_table()?;
    let mut violations: Vec<String> =
        consts.iter().filter(|r| !r.matches()).map(|r| format!("{}: ({}, {})", r.family, r.dim, r.a)).collect();
    violations.extend(ideals.iter().filter(|r| !r.matches()).map(|r| format!("{} over F_{}: {:?}", r.label, r.p, r.max_dim)));
    let rows = consts
        .iter()
        .map(|r| vec![r.family.to_string(), r.rank.to_string(), r.dim.to_string(), r.a.to_string()])
        .collect();
    let mut out = Output::new(json!({ "constants": consts, "ideals": ideals })).table(&["family", "rank", "dim", "a"], rows);
    out.violations = violations;
    Ok(out)
}

fn run_lie_check(a: &LieCheckArgs, cfg: &Config, seed: u64) -> Result<Output> {
    let d = parse_group(&a.group)?;
    let g = ChevalleyAlgebra::new(d, FiniteField::of_order(a.q)?);
    let samples = a.samples.or(cfg.samples).unwrap_or(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut checked, mut skipped) = (0usize, 0usize);
    let mut violations = Vec::new();
    let mut rows = Vec::new();
    while checked < samples {
        let (u, v) = random_small_codim_pair(&g, &mut rng);
        let alpha = rng.gen_range(0..g.datum().num_roots());
        match check_codim_lemma(&g, alpha, &u, &v) {
            Ok(r) => {
                checked += 1;
                if !r.holds {
                    violations.push(format!("sample {checked}: root {alpha}"));
                }
                rows.push(vec![checked.to_string(), alpha.to_string(), r.codim_sum.to_string(), r.bound.to_string(), r.line_in_bracket.to_string()]);
            }
            Err(Error::Precondition(_)) => {
                skipped += 1;
                if skipped > 100 * samples {
                    bail!("no admissible root");
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    let report = json!({
        "algebra": g.datum().label(),
        "q": a.q,
        "seed": seed,
        "samples": checked,
        "skipped_roots": skipped,
        "violations": violations.len(),
    });
    let mut out = Output::new(report).table(&["sample", "root", "codim_sum", "bound", "line_in_bracket"], rows);
    out.violations = violations;
    Ok(out)
}

fn run_group_order(a: &GroupArgs) -> Result<Output> {
    let d = parse_group(&a.group)?;
    let order = group_order_mod(&d, a.q, a.k)?;
    let rows = vec![vec![d.label(), a.q.to_string(), a.k.to_string(), order.to_string()]];
    Ok(Output::new(json!({ "group": d.label(), "q": a.q, "k": a.k, "order": order.to_string() }))
        .table(&["group", "q", "k", "order"], rows))
}

fn run_minimal_index(a: &GroupArgs) -> Result<Output> {
    let d = parse_group(&a.group)?;
    if a.k != 1 {
        bail!("minimal index is for fields (k = 1)");
    }
    let r = index_report(&d, a.q)?;
    let rows = vec![vec![r.label.clone(), a.q.to_string(), r.index.to_string(), r.a.to_string(), r.holds().to_string()]];
    let mut out = Output::new(serde_json::to_value(&r)?).table(&["group", "q", "index", "a", "sandwich"], rows);
    if !r.holds() {
        out.violations.push(format!("index {} outside [q^a/2, 2q^a]", r.index));
    }
    Ok(out)
}
