use std::io::{self, BufRead};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gauss_bij::algz::{gamma_forward, gamma_inverse, refined_forward, refined_inverse, ZInput, ZOutput};
use gauss_bij::chi::{chi_forward_steps, chi_inverse, gamma_of, render_steps, RElement, SElement};
use gauss_bij::krank::{
    classify_source, classify_target, eta_forward, eta_inverse, sigma_apply, verify_monotonicity, zeta_apply, KTuple,
};
use gauss_bij::oracle::{self, enumerate, Certificate, Family, DEFAULT_CAP};
use gauss_bij::phi::{phi_forward, phi_inverse, AElement};
use gauss_bij::psi::{psi_forward, psi_inverse, render_table, render_trace, CElement, DElement};
use gauss_bij::qseries::{gaussian, inv_pochhammer, nk_series, Terms};
use gauss_bij::{Error, PaddedPartition, Partition};

#[derive(Parser)]
#[command(name = "gauss-bij", version, about = "Partition bijections, q-series and exhaustive verification")]
struct Cli {
    /// Emit JSON (schema 1) instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Algorithm Z: merge ξ (N entries) and δ (M entries), or undo it with `--invert`.
    Algz {
        #[arg(long = "M")]
        m: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, required_unless_present = "invert")]
        xi: Option<String>,
        #[arg(long, required_unless_present = "invert")]
        delta: Option<String>,
        /// Recover (ξ, δ) from --alpha and --gamma.
        #[arg(long, requires_all = ["alpha", "gamma"])]
        invert: bool,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
        /// Use the variant whose α keeps δ as its parts at most M (experimental).
        #[arg(long)]
        refined: bool,
    },
    /// ψ on δ ∈ C_{M,N}; `-` reads one δ per line from stdin.
    Psi {
        #[arg(long = "M")]
        m: usize,
        #[arg(long = "N")]
        n: usize,
        input: String,
        /// Print every peeling pass.
        #[arg(long)]
        trace: bool,
    },
    /// ψ⁻¹ on (π, μ) ∈ D_{M,N}.
    PsiInv {
        #[arg(long = "M")]
        m: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        pi: String,
        #[arg(long)]
        mu: String,
        /// Print the fill table.
        #[arg(long)]
        table: bool,
    },
    /// φ_M on (α, β) ∈ A_{M,N}.
    Phi {
        #[arg(long = "M")]
        m: usize,
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// φ_M⁻¹ on γ with N entries; `-` reads stdin.
    PhiInv {
        #[arg(long = "M")]
        m: usize,
        input: String,
    },
    /// χ on λ for R_{k,m}; `-` reads stdin.
    Chi {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        input: String,
        /// Check a supplied δ against the forced one.
        #[arg(long)]
        delta: Option<String>,
        /// Print every intermediate object.
        #[arg(long)]
        steps: bool,
    },
    /// χ⁻¹ on an element of S_{k,m}.
    ChiInv {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        /// Durfee sides s_1,..,s_k.
        #[arg(long)]
        s: String,
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "")]
        beta: String,
        #[arg(long, default_value = "")]
        xi: String,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// η on a partition with at least k-1 successive Durfee squares; `-` reads stdin.
    Eta {
        #[arg(long)]
        k: usize,
        input: String,
    },
    /// η⁻¹ on a tuple (JSON or `α | β | γ;.. | d,..`); `-` reads stdin.
    EtaInv { input: String },
    /// Source and target classes of a tuple.
    Classify { input: String },
    /// The weight-raising injection on a tuple.
    Sigma { input: String },
    /// The left inverse of σ^label.
    Zeta {
        #[arg(long)]
        label: u8,
        input: String,
    },
    /// Print a truncated series as `n<TAB>c_n` lines.
    Series {
        #[arg(long, value_enum, default_value = "nk")]
        kind: SeriesKind,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        m: i64,
        #[arg(long = "M", default_value_t = 0)]
        big_m: usize,
        #[arg(long = "N", default_value_t = 0)]
        big_n: usize,
        /// First exponent of the Pochhammer reciprocal.
        #[arg(long, default_value_t = 1)]
        a: usize,
        /// Number of Pochhammer factors; all of them if omitted.
        #[arg(long)]
        terms: Option<usize>,
        #[arg(long, default_value_t = 20)]
        cap: usize,
    },
    /// Count a family at one weight by enumeration.
    Count {
        #[arg(long, value_enum)]
        family: FamilyTag,
        #[arg(long = "M", default_value_t = 0)]
        big_m: usize,
        #[arg(long = "N", default_value_t = 0)]
        big_n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        m: i64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Also list the elements.
        #[arg(long)]
        list: bool,
    },
    /// Exhaustively certify a map over a grid such as `M<=3,N<=4,n<=24`.
    Certify {
        #[arg(long, value_enum)]
        map: MapName,
        #[arg(long, default_value = "")]
        grid: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Audit N_k(m,n+1) >= N_k(m,n) and the injection behind it.
    VerifyMonotonicity {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        m_max: i64,
        #[arg(long, default_value_t = 25)]
        n_max: u64,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long = "M")]
        big_m: Option<usize>,
        #[arg(long = "N")]
        big_n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m_max: Option<i64>,
        #[arg(long)]
        n_max: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Nk,
    Gaussian,
    Pochhammer,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyTag {
    Plain,
    Box,
    C,
    D,
    A,
    B,
    R,
    S,
    Q,
    P,
    ZDomain,
    ZCodomain,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapName {
    Gamma,
    Psi,
    Phi,
    Chi,
    Eta,
}

/// Text and JSON renderings of one result; `passed` is false for a failed verification.
struct Report {
    text: String,
    json: Value,
    passed: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, passed: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(reports) => {
            let mut passed = true;
            for r in &reports {
                passed &= r.passed;
                if cli.json {
                    let mut v = r.json.clone();
                    if let Value::Object(map) = &mut v {
                        map.insert("schema".into(), json!(1));
                        map.insert("passed".into(), json!(r.passed));
                    }
                    println!("{v}");
                } else {
                    println!("{}", r.text.trim_end());
                }
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let internal = matches!(e.downcast_ref::<Error>(), Some(Error::Internal(_)));
            if cli.json {
                println!("{}", json!({"schema": 1, "error": format!("{e:#}")}));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(if internal { 1 } else { 2 })
        }
    }
}

/// The input itself, or every non-empty stdin line when it is `-`.
fn inputs(input: &str) -> anyhow::Result<Vec<String>> {
    if input != "-" {
        return Ok(vec![input.to_string()]);
    }
    let mut out = Vec::new();
    for line in io::stdin().lock().lines() {
        let line = line.context("reading stdin")?;
        if !line.trim().is_empty() {
            out.push(line);
        }
    }
    Ok(out)
}

fn batch(input: &str, f: impl Fn(&str) -> anyhow::Result<Report>) -> anyhow::Result<Vec<Report>> {
    inputs(input)?.iter().map(|s| f(s)).collect()
}

fn partition(s: &str) -> anyhow::Result<Partition> {
    s.parse().with_context(|| format!("parsing partition `{s}`"))
}

/// A padded partition of exactly `len` entries; shorter inputs get trailing zeros.
fn padded(s: &str, len: usize) -> anyhow::Result<PaddedPartition> {
    let p: PaddedPartition = s.parse().with_context(|| format!("parsing `{s}`"))?;
    if p.len() > len {
        bail!("`{s}` has {} entries, more than {len}", p.len());
    }
    let mut parts = p.parts().to_vec();
    parts.resize(len, 0);
    Ok(PaddedPartition::new(parts)?)
}

fn shifts(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("parsing shift `{t}`")))
        .collect()
}

fn tuple(s: &str) -> anyhow::Result<KTuple> {
    Ok(s.parse::<KTuple>()?)
}

fn paren(p: &impl std::fmt::Display) -> String {
    let s = p.to_string();
    if s.is_empty() {
        "∅".into()
    } else {
        format!("({s})")
    }
}

fn multiset(p: &Partition) -> String {
    if p.is_empty() {
        "∅".into()
    } else {
        format!("({})", p.frequency_string())
    }
}

fn run(cmd: &Cmd) -> anyhow::Result<Vec<Report>> {
    Ok(match cmd {
        Cmd::Algz {
            m,
            n,
            xi,
            delta,
            invert,
            alpha,
            gamma,
            refined,
        } => {
            let (m, n) = (*m, *n);
            let text = |v: &Option<String>| v.clone().unwrap_or_default();
            let report = match (*invert, *refined) {
                (false, false) => {
                    let input = ZInput {
                        xi: padded(&text(xi), n)?,
                        delta: padded(&text(delta), m)?,
                    };
                    let out = gamma_forward(&input)?;
                    let g: Vec<String> = out.gamma.iter().map(usize::to_string).collect();
                    Report::ok(
                        format!("α = {}\nγ = ({})", paren(&out.alpha), g.join(",")),
                        json!({"command": "algz", "alpha": out.alpha, "gamma": out.gamma}),
                    )
                }
                (true, false) => {
                    let out = ZOutput {
                        alpha: padded(&text(alpha), m + n)?,
                        gamma: shifts(&text(gamma))?,
                    };
                    let input = gamma_inverse(&out, n, m)?;
                    Report::ok(
                        format!("ξ = {}\nδ = {}", paren(&input.xi), paren(&input.delta)),
                        json!({"command": "algz", "xi": input.xi, "delta": input.delta}),
                    )
                }
                (false, true) => {
                    let (a, g) = refined_forward(&partition(&text(xi))?, &partition(&text(delta))?, n, m)?;
                    Report::ok(
                        format!("α = {}\nγ = {}", multiset(&a), paren(&g)),
                        json!({"command": "algz", "refined": true, "alpha": a, "gamma": g}),
                    )
                }
                (true, true) => {
                    let (x, d) = refined_inverse(&partition(&text(alpha))?, &padded(&text(gamma), n)?, n, m)?;
                    Report::ok(
                        format!("ξ = {}\nδ = {}", multiset(&x), multiset(&d)),
                        json!({"command": "algz", "refined": true, "xi": x, "delta": d}),
                    )
                }
            };
            vec![report]
        }
        Cmd::Psi { m, n, input, trace } => batch(input, |s| {
            let c = CElement {
                m: *m,
                delta: padded(s, *n)?,
            };
            let (d, tr) = psi_forward(&c)?;
            let mut text = format!("μ = {}\nπ = {}", paren(&d.mu), multiset(&d.pi));
            if *trace {
                text = format!("{}\n{text}", render_trace(&tr).trim_end());
            }
            Ok(Report::ok(
                text,
                json!({"command": "psi", "M": m, "N": n, "delta": c.delta, "mu": d.mu, "pi": d.pi, "passes": tr.q()}),
            ))
        })?,
        Cmd::PsiInv { m, n, pi, mu, table } => {
            let d = DElement {
                m: *m,
                pi: partition(pi)?,
                mu: padded(mu, *n)?,
            };
            let c = psi_inverse(&d)?;
            let mut text = format!("δ = {}", paren(&c.delta));
            let t = render_table(&d)?;
            if *table {
                text = format!("{t}\n{text}");
            }
            vec![Report::ok(
                text,
                json!({"command": "psi-inv", "M": m, "N": n, "delta": c.delta, "column_sums": t.column_sums()}),
            )]
        }
        Cmd::Phi { m, n, alpha, beta } => {
            let a = AElement {
                m: *m,
                n: *n,
                alpha: partition(alpha)?,
                beta: partition(beta)?,
            };
            let g = phi_forward(&a)?;
            vec![Report::ok(format!("γ = {}", paren(&g)), json!({"command": "phi", "gamma": g}))]
        }
        Cmd::PhiInv { m, input } => batch(input, |s| {
            let g: PaddedPartition = s.parse()?;
            let a = phi_inverse(*m, &g)?;
            Ok(Report::ok(
                format!("α = {}\nβ = {}", paren(&a.alpha), multiset(&a.beta)),
                json!({"command": "phi-inv", "alpha": a.alpha, "beta": a.beta}),
            ))
        })?,
        Cmd::Chi { k, m, input, delta, steps } => batch(input, |s| {
            let lambda = partition(s)?;
            let r = match delta {
                Some(d) => RElement::with_delta(*k, *m, lambda, &partition(d)?)?,
                None => RElement { k: *k, m: *m, lambda },
            };
            if *k == 0 {
                bail!("k must be positive");
            }
            let st = chi_forward_steps(&r)?;
            let o = &st.result;
            let sides: Vec<String> = o.s.iter().map(u64::to_string).collect();
            let mut text = format!(
                "s = ({})\nα = {}\nβ = {}\nγ = {}\nξ = {}",
                sides.join(","),
                paren(&o.alpha),
                paren(&o.beta),
                paren(&o.gamma),
                paren(&o.xi)
            );
            if *steps {
                text = format!("{}\n{text}", render_steps(&st).trim_end());
            }
            Ok(Report::ok(text, json!({"command": "chi", "result": o})))
        })?,
        Cmd::ChiInv { k, m, s, alpha, beta, xi, gamma } => {
            let sides = s
                .split(',')
                .filter(|v| !v.trim().is_empty())
                .map(|v| v.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .context("parsing s")?;
            let el = SElement {
                k: *k,
                m: *m,
                s: sides,
                alpha: partition(alpha)?,
                beta: partition(beta)?,
                gamma: match gamma {
                    Some(g) => partition(g)?,
                    None => gamma_of(*m),
                },
                xi: partition(xi)?,
            };
            el.check().map_err(|r| anyhow!("not in S_{{k,m}}: {r}"))?;
            let r = chi_inverse(&el)?;
            vec![Report::ok(
                format!("λ = {}\nδ = {}", paren(&r.lambda), paren(&r.delta())),
                json!({"command": "chi-inv", "lambda": r.lambda, "delta": r.delta()}),
            )]
        }
        Cmd::Eta { k, input } => batch(input, |s| {
            let t = eta_forward(&partition(s)?, *k)?;
            Ok(Report::ok(
                format!("{t}\nm = {}, n = {}", t.m(), t.weight()),
                json!({"command": "eta", "tuple": t, "m": t.m(), "n": t.weight()}),
            ))
        })?,
        Cmd::EtaInv { input } => batch(input, |s| {
            let p = eta_inverse(&tuple(s)?)?;
            Ok(Report::ok(format!("π = {}", paren(&p)), json!({"command": "eta-inv", "partition": p})))
        })?,
        Cmd::Classify { input } => batch(input, |s| {
            let t = tuple(s)?;
            let src = classify_source(&t)?;
            let tgt = classify_target(&t)?;
            let tgt_text: Vec<String> = tgt.iter().map(|i| format!("P_{{k,{i}}}")).collect();
            Ok(Report::ok(
                format!(
                    "source class: P^{src}\ntarget classes: {}",
                    if tgt.is_empty() { "none".to_string() } else { tgt_text.join(", ") }
                ),
                json!({"command": "classify", "source": src, "targets": tgt}),
            ))
        })?,
        Cmd::Sigma { input } => batch(input, |s| {
            let t = tuple(s)?;
            let (img, i) = sigma_apply(&t).map_err(|e| match e {
                Error::Exceptional(_) => anyhow!("exceptional element (monotonicity exception): {t}"),
                other => other.into(),
            })?;
            Ok(Report::ok(
                format!("σ^{i}: {img}"),
                json!({"command": "sigma", "label": i, "image": img, "line": img.compact()}),
            ))
        })?,
        Cmd::Zeta { label, input } => batch(input, |s| {
            let pre = zeta_apply(&tuple(s)?, *label)?;
            Ok(Report::ok(
                format!("ζ^{label}: {pre}"),
                json!({"command": "zeta", "label": label, "preimage": pre, "line": pre.compact()}),
            ))
        })?,
        Cmd::Series { kind, k, m, big_m, big_n, a, terms, cap } => {
            let s = match kind {
                SeriesKind::Nk => {
                    if *k == 0 {
                        bail!("k must be positive");
                    }
                    nk_series(*k, *m, *cap)
                }
                SeriesKind::Gaussian => gaussian(*big_m, *big_n).as_series(*cap),
                SeriesKind::Pochhammer => {
                    if *a == 0 {
                        bail!("the first exponent must be positive");
                    }
                    inv_pochhammer(*a, terms.map_or(Terms::Infinite, Terms::Finite), *cap)
                }
            };
            let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
            vec![Report::ok(s.to_string(), json!({"command": "series", "coefficients": coeffs}))]
        }
        Cmd::Count { family, big_m, big_n, k, m, n, cap, list } => {
            let fam = family_of(*family, *big_m, *big_n, *k, *m);
            let items = enumerate(fam, *n, *cap)?;
            let mut text = format!("#{fam}({n}) = {}", items.len());
            if *list {
                for e in &items {
                    text.push_str(&format!("\n{e}"));
                }
            }
            let mut v = json!({"command": "count", "family": fam.to_string(), "n": n, "count": items.len()});
            if *list {
                v["elements"] = json!(items);
            }
            vec![Report::ok(text, v)]
        }
        Cmd::Certify { map, grid, cap } => {
            let g = Grid::parse(grid)?;
            vec![certificate_report(certify(*map, &g, *cap)?)]
        }
        Cmd::VerifyMonotonicity { k, m_max, n_max } => vec![monotonicity(*k, *m_max, *n_max)?],
        Cmd::Verify { suite, big_m, big_n, k, m_max, n_max } => {
            let g = Grid {
                m: *big_m,
                n: *big_n,
                k: *k,
                rank: *m_max,
                weight: *n_max,
            };
            vec![verify_suite(suite, &g)?]
        }
    })
}

fn family_of(tag: FamilyTag, big_m: usize, big_n: usize, k: usize, m: i64) -> Family {
    match tag {
        FamilyTag::Plain => Family::Plain,
        FamilyTag::Box => Family::Box { m: big_m, n: big_n },
        FamilyTag::C => Family::C { m: big_m, n: big_n },
        FamilyTag::D => Family::D { m: big_m, n: big_n },
        FamilyTag::A => Family::A { m: big_m, n: big_n },
        FamilyTag::B => Family::B { n: big_n },
        FamilyTag::R => Family::R { k, m },
        FamilyTag::S => Family::S { k, m },
        FamilyTag::Q => Family::Q { k, m },
        FamilyTag::P => Family::P { k, m },
        FamilyTag::ZDomain => Family::ZDomain { m: big_m, n: big_n },
        FamilyTag::ZCodomain => Family::ZCodomain { m: big_m, n: big_n },
    }
}

/// Upper bounds for a sweep; unset entries take per-map defaults.
#[derive(Default)]
struct Grid {
    m: Option<usize>,
    n: Option<usize>,
    k: Option<usize>,
    rank: Option<i64>,
    weight: Option<u64>,
}

impl Grid {
    /// Parses `M<=3,N<=4,k<=3,m<=2,n<=24`; `|m|` is accepted for `m`.
    fn parse(s: &str) -> anyhow::Result<Self> {
        let mut g = Grid::default();
        for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (key, value) = item
                .split_once("<=")
                .ok_or_else(|| anyhow!("grid entry `{item}` is not of the form key<=value"))?;
            let value = value.trim();
            let bad = || anyhow!("grid entry `{item}` has a bad bound");
            match key.trim() {
                "M" => g.m = Some(value.parse().map_err(|_| bad())?),
                "N" => g.n = Some(value.parse().map_err(|_| bad())?),
                "k" => g.k = Some(value.parse().map_err(|_| bad())?),
                "m" | "|m|" => g.rank = Some(value.parse().map_err(|_| bad())?),
                "n" => g.weight = Some(value.parse().map_err(|_| bad())?),
                other => bail!("unknown grid key `{other}`"),
            }
        }
        Ok(g)
    }
}

fn certify(map: MapName, g: &Grid, cap: usize) -> anyhow::Result<Certificate> {
    Ok(match map {
        MapName::Gamma => oracle::certify_gamma(g.m.or(g.n).unwrap_or(3), g.weight.unwrap_or(12), cap)?,
        MapName::Psi => oracle::certify_psi(g.m.unwrap_or(3), g.n.unwrap_or(4), g.weight.unwrap_or(24), cap)?,
        MapName::Phi => oracle::certify_phi(g.m.unwrap_or(2), g.n.unwrap_or(4), g.weight.unwrap_or(20), cap)?,
        MapName::Chi => oracle::certify_chi(g.k.unwrap_or(3), g.rank.unwrap_or(2), g.weight.unwrap_or(24), cap)?,
        MapName::Eta => {
            let ks: Vec<usize> = (3..=g.k.unwrap_or(4).max(3)).collect();
            oracle::certify_eta(&ks, g.rank.unwrap_or(4), g.weight.unwrap_or(18), cap)?
        }
    })
}

fn certificate_report(c: Certificate) -> Report {
    let passed = c.passed();
    let text = match &c.counterexample {
        None => format!("{}: pass ({} cells, {} elements)", c.map, c.cells.len(), c.elements_checked),
        Some(bad) => format!("{}: FAIL\ncounterexample: {bad}", c.map),
    };
    Report {
        text,
        json: json!({"command": "certify", "certificate": c}),
        passed,
    }
}

fn monotonicity(k: usize, m_max: i64, n_max: u64) -> anyhow::Result<Report> {
    let r = verify_monotonicity(k, m_max, n_max)?;
    let drops: Vec<String> = r.cells.iter().filter(|c| c.decreases).map(|c| format!("(m={},n={})", c.m, c.n)).collect();
    let mut text = format!(
        "k={k}, 0<=m<={m_max}, n<={n_max}: {} cells; decreases at {}",
        r.cells.len(),
        if drops.is_empty() { "none".to_string() } else { drops.join(" ") }
    );
    if !r.passed() {
        text.push_str(&format!("\n{} violations:\n{}", r.violations.len(), r.violations.join("\n")));
    }
    Ok(Report {
        text,
        passed: r.passed(),
        json: json!({"command": "verify-monotonicity", "report": r}),
    })
}

fn verify_suite(name: &str, g: &Grid) -> anyhow::Result<Report> {
    let map = match name {
        "algorithm-z" | "theorem-1.1" => Some(MapName::Gamma),
        "psi" | "theorem-1.6" => Some(MapName::Psi),
        "phi" | "theorem-1.2" => Some(MapName::Phi),
        "chi" | "theorem-1.4" => Some(MapName::Chi),
        "eta" | "theorem-5.2" => Some(MapName::Eta),
        "monotonicity" | "theorem-1.8" => None,
        other => bail!(
            "unknown suite `{other}`; expected algorithm-z, psi, phi, chi, eta or monotonicity"
        ),
    };
    match map {
        Some(map) => Ok(certificate_report(certify(map, g, DEFAULT_CAP)?)),
        None => {
            let ks: Vec<usize> = match g.k {
                Some(k) => vec![k],
                None => vec![3, 4],
            };
            let mut text = Vec::new();
            let mut reports = Vec::new();
            let mut passed = true;
            for k in ks {
                let r = monotonicity(k, g.rank.unwrap_or(5), g.weight.unwrap_or(25))?;
                passed &= r.passed;
                text.push(r.text);
                reports.push(r.json);
            }
            Ok(Report {
                text: text.join("\n"),
                json: json!({"command": "verify", "suite": name, "reports": reports}),
                passed,
            })
        }
    }
}
