use clap::{Parser, Subcommand};
use cremona_core::birmap::{self, Budget, MonomialMap, RationalTriple};
use cremona_core::numbers::{classify_number, enumerate_salem_with_limit, DEFAULT_NODE_LIMIT};
use cremona_core::orbits::{lambda_sequence, DEFAULT_KMAX};
use cremona_core::reduction::{self, inflated_instance, realizable_jonquieres, PointConfiguration};
use cremona_core::spectral::spectrum_report;
use cremona_core::weyl::{noether_report, normalize_increasing, partial_degrees};
use cremona_core::{BubbleSpace, ClassVector, IntPolynomial, ParseError, WeylElement, WeylWord};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "cremona", version, about = "Lattice dynamics of plane birational maps")]
struct Cli {
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = cremona_core::DEFAULT_TOL)]
    tol: f64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the dominant root of a monic integer polynomial.
    ClassifyNumber { poly: String },
    /// All Salem numbers of degree at most D below a bound.
    SalemEnum {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        bound: f64,
        #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
        node_limit: u64,
    },
    /// Realize a word and print its action on e0.
    WeylEval {
        word: String,
        /// Also apply the element to this class.
        #[arg(long)]
        class: Option<String>,
    },
    /// Rewrite a word so that its quadratic letters raise the degree of a class.
    WeylNormalize {
        word: String,
        #[arg(long, default_value = "e0")]
        class: String,
    },
    /// Isometry type, dynamical degree and axis data.
    Spectrum { word: String },
    /// Conjugate down to degree at most 24 lambda^3, one JSON line per step.
    Reduce {
        /// Word to reduce; omit to build an instance from --seed and --pairs.
        word: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        pairs: usize,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
    },
    /// Check the Jonquières realizability conditions on a point configuration.
    Realizable {
        /// JSON text, or a path to a JSON file.
        #[arg(long)]
        config: String,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Spectral radii of the quadratic orbit family for k = 2..=kmax.
    FkSpectrum {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: u32,
    },
    /// Degree sequence of a triple, a built-in map or a monomial map.
    Degseq {
        /// Triple such as "[y*z : z*x : x*y]", or sigma, identity, henon(d).
        #[arg(long, conflicts_with = "monomial")]
        map: Option<String>,
        /// Exponent matrix "a,b,c,d" of (X^a Y^b, X^c Y^d).
        #[arg(long)]
        monomial: Option<String>,
        #[arg(short = 'n', default_value_t = 5)]
        n: usize,
        /// Compute modulo 2^62 - 57 instead of over the rationals.
        #[arg(long)]
        prime: bool,
    },
    /// Explicit constants for a dynamical degree and/or a pair of degrees.
    Bounds {
        #[arg(long)]
        lambda: Option<f64>,
        /// "df,dg"
        #[arg(long)]
        degrees: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

fn parse_element(word: &str, space: &mut BubbleSpace) -> Result<(WeylWord, WeylElement), Failure> {
    let w = WeylWord::parse(word, space)?;
    let h = WeylElement::realize(&w);
    Ok((w, h))
}

fn classify_cmd(poly: &str, tol: f64) -> Result<Value, Failure> {
    let p = IntPolynomial::parse(poly)?;
    let c = classify_number(&p, tol);
    Ok(json!({
        "kind": c.kind.as_str(),
        "root": round6(c.dominant_root),
        "root_full": c.dominant_root,
        "stripped": c.stripped.to_string(),
        "cyclotomic_factors": c.cyclotomic_factors,
        "x_power": c.x_power,
        "notes": c.notes,
    }))
}

fn run(cli: Cli) -> Result<Vec<Value>, Failure> {
    let tol = cli.tol;
    let mut space = BubbleSpace::new();
    match cli.cmd {
        Cmd::ClassifyNumber { poly } => Ok(vec![classify_cmd(&poly, tol)?]),
        Cmd::SalemEnum {
            degree,
            bound,
            node_limit,
        } => {
            let found = enumerate_salem_with_limit(degree, bound, node_limit).map_err(domain)?;
            let list: Vec<Value> = found
                .iter()
                .map(|e| json!({"poly": e.poly.to_string(), "root": e.root, "degree": e.degree}))
                .collect();
            Ok(vec![json!({"degree_bound": degree, "bound": bound, "count": list.len(), "salem": list})])
        }
        Cmd::WeylEval { word, class } => {
            let (w, h) = parse_element(&word, &mut space)?;
            let mut out = json!({
                "word": w.render(&space),
                "degree": h.degree().to_string(),
                "image_e0": h.render_image_of_e0(&space),
                "image_e0_json": h.image_of_e0().to_json(&space),
                "support": h.support().iter().map(|p| space.label(*p)).collect::<Vec<_>>(),
                "noether": noether_report(&h),
            });
            if let Some(c) = class {
                let v = ClassVector::parse(&c, &mut space)?;
                let img = h.apply(&v);
                out["class"] = json!(v.render(&space));
                out["class_image"] = json!(img.render(&space));
            }
            Ok(vec![out])
        }
        Cmd::WeylNormalize { word, class } => {
            let w = WeylWord::parse(&word, &mut space)?;
            let v = ClassVector::parse(&class, &mut space)?;
            let n = normalize_increasing(&w, &v, &mut space).map_err(domain)?;
            let same = WeylElement::realize(&n).apply(&v) == WeylElement::realize(&w).apply(&v);
            let degs: Vec<String> = partial_degrees(&n, &v).iter().map(|d| d.to_string()).collect();
            Ok(vec![json!({
                "word": w.render(&space),
                "class": v.render(&space),
                "normalized": n.render(&space),
                "image": WeylElement::realize(&n).apply(&v).render(&space),
                "partial_degrees": degs,
                "same_image": same,
            })])
        }
        Cmd::Spectrum { word } => {
            let (w, h) = parse_element(&word, &mut space)?;
            let mut v = serde_json::to_value(spectrum_report(&h, tol)).map_err(domain)?;
            v["word"] = json!(w.render(&space));
            Ok(vec![v])
        }
        Cmd::Reduce {
            word,
            seed,
            pairs,
            budget,
        } => reduce_cmd(word, seed, pairs, budget, &mut space),
        Cmd::Realizable { config, m } => {
            let text = if config.trim_start().starts_with('{') {
                config
            } else {
                std::fs::read_to_string(&config).map_err(|e| Failure::Usage(format!("{config}: {e}")))?
            };
            let cfg = PointConfiguration::from_json(&text, &mut space).map_err(|e| match e {
                reduction::ReductionError::BadConfig(s) => Failure::Usage(s),
                other => domain(other),
            })?;
            let m = m.unwrap_or(cfg.points.len().div_ceil(2));
            let rep = realizable_jonquieres(&cfg, m, &space).map_err(domain)?;
            let mut v = serde_json::to_value(&rep).map_err(domain)?;
            v["m"] = json!(m);
            Ok(vec![v])
        }
        Cmd::FkSpectrum { m, kmax } => {
            if kmax < 2 {
                return Err(Failure::Usage("--kmax must be at least 2".into()));
            }
            let ks: Vec<u32> = (2..=kmax).collect();
            let seq = lambda_sequence(m, &ks, tol).map_err(domain)?;
            let table: Vec<Value> = seq
                .entries
                .iter()
                .map(|e| json!({"k": e.k, "lambda": e.lambda, "class": e.class.as_str()}))
                .collect();
            Ok(vec![json!({
                "m": m,
                "stated_limit": seq.stated_limit,
                "leading_block_root": seq.leading_block_root,
                "table": table,
                "checks": seq.checks,
            })])
        }
        Cmd::Degseq {
            map,
            monomial,
            n,
            prime,
        } => degseq_cmd(map, monomial, n, prime),
        Cmd::Bounds { lambda, degrees } => {
            let degs = match degrees {
                None => None,
                Some(s) => {
                    let parts: Vec<Result<u64, _>> = s.split(',').map(|x| x.trim().parse::<u64>()).collect();
                    match parts.as_slice() {
                        [Ok(a), Ok(b)] => Some((*a, *b)),
                        _ => return Err(Failure::Usage(format!("--degrees expects 'df,dg', got '{s}'"))),
                    }
                }
            };
            let r = reduction::bounds(lambda, degs).map_err(domain)?;
            Ok(vec![serde_json::to_value(r).map_err(domain)?])
        }
    }
}

fn reduce_cmd(
    word: Option<String>,
    seed: u64,
    pairs: usize,
    budget: usize,
    space: &mut BubbleSpace,
) -> Result<Vec<Value>, Failure> {
    let mut lines = Vec::new();
    let h = match word {
        Some(w) => parse_element(&w, space)?.1,
        None => {
            let inst = inflated_instance(seed, pairs, space);
            lines.push(json!({
                "instance": {
                    "seed": seed,
                    "pairs": pairs,
                    "core": inst.core_word.render(space),
                    "core_lambda": inst.lambda,
                    "conjugator": inst.conjugator.render(space),
                }
            }));
            inst.element
        }
    };
    let trace = reduction::reduce(&h, budget, space).map_err(domain)?;
    lines.push(json!({
        "lambda": trace.lambda,
        "delta": trace.delta,
        "threshold": trace.threshold,
        "initial_degree": trace.initial_degree.to_string(),
        "initial_cosh": trace.initial_cosh,
        "step_bound": trace.step_bound,
    }));
    let mut prev = h.clone();
    for (i, s) in trace.steps.iter().enumerate() {
        let g = WeylElement::realize(&s.conjugator);
        let verified = g.compose(&prev).compose(&g.inverse()) == s.element;
        lines.push(json!({
            "step": i + 1,
            "criterion": s.criterion,
            "hypothesis": s.hypothesis,
            "root": space.label(s.root),
            "omega": s.omega.iter().map(|p| space.label(*p)).collect::<Vec<_>>(),
            "conjugator": s.conjugator.render(space),
            "degree_before": s.degree_before.to_string(),
            "degree_after": s.degree_after.to_string(),
            "cosh_before": s.cosh_before,
            "cosh_after": s.cosh_after,
            "predicted": s.predicted,
            "achieved": s.achieved,
            "conjugation_verified": verified,
        }));
        prev = s.element.clone();
    }
    let c = WeylElement::realize(&trace.conjugator);
    let verified = c.compose(&h).compose(&c.inverse()) == trace.final_element;
    lines.push(json!({
        "terminal": trace.terminal,
        "steps": trace.steps.len(),
        "final_degree": trace.final_element.degree().to_string(),
        "conjugator": trace.conjugator.render(space),
        "conjugation_verified": verified,
        "warnings": trace.warnings,
    }));
    Ok(lines)
}

fn degseq_cmd(map: Option<String>, monomial: Option<String>, n: usize, prime: bool) -> Result<Vec<Value>, Failure> {
    if let Some(m) = monomial {
        let e: Vec<i64> = m
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| Failure::Usage(format!("--monomial expects 'a,b,c,d', got '{m}'")))?;
        let [a, b, c, d] = e[..] else {
            return Err(Failure::Usage(format!("--monomial expects four entries, got {}", e.len())));
        };
        let f = MonomialMap::from_i64([[a, b], [c, d]]).map_err(domain)?;
        let degs: Vec<String> = f.iterates(n as u32).iter().map(|x| x.to_string()).collect();
        return Ok(vec![json!({"monomial": [[a, b], [c, d]], "degrees": degs, "lambda": f.lambda()})]);
    }
    let Some(text) = map else {
        return Err(Failure::Usage("one of --map or --monomial is required".into()));
    };
    let f: RationalTriple = if text.trim_start().starts_with('[') {
        RationalTriple::parse(&text).map_err(|e| match e {
            birmap::BirmapError::Parse(p) => Failure::Usage(p.to_string()),
            e @ birmap::BirmapError::NotHomogeneous(..) => Failure::Usage(e.to_string()),
            other => domain(other),
        })?
    } else {
        birmap::builtin(&text).map_err(|e| Failure::Usage(e.to_string()))?
    };
    let budget = Budget::default();
    let seq = if prime {
        let fp = f
            .reduce_mod::<{ birmap::DEFAULT_PRIME }>()
            .ok_or_else(|| Failure::Domain("map degenerates modulo the prime".into()))?;
        birmap::iterate_degrees(&fp, n, &budget)
    } else {
        birmap::iterate_degrees(&f, n, &budget)
    };
    let mut v = serde_json::to_value(seq).map_err(domain)?;
    v["map"] = json!(f.to_string());
    v["field"] = json!(if prime { "prime" } else { "rational" });
    Ok(vec![v])
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(lines) => {
            for l in lines {
                println!("{l}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("{}", json!({"error": m}));
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("{}", json!({"error": m}));
            ExitCode::from(1)
        }
    }
}
