//! Acceptance suite. Prints one `[PASS]`/`[FAIL]` line per criterion; every comparison is
//! exact (tolerance 0). Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use gauss_bij::algz::gamma_forward;
use gauss_bij::chi::{chi_forward_steps, chi_inverse, delta_of, gamma_of, RElement};
use gauss_bij::krank::{classify_source, eta_forward, eta_inverse, sigma_apply, verify_monotonicity, zeta_apply, KTuple};
use gauss_bij::oracle::{self, enumerate, Element, Family, DEFAULT_CAP};
use gauss_bij::phi::{phi_forward, phi_inverse, AElement};
use gauss_bij::psi::{check_c, check_trace, psi_forward, psi_inverse, render_table, CElement};
use gauss_bij::qseries::{gaussian, inv_pochhammer, nk_count, nk_series, Terms};
use gauss_bij::{PaddedPartition, Partition};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn pp(s: &str) -> PaddedPartition {
    s.parse().unwrap()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn tuple(s: &str) -> KTuple {
    s.parse().unwrap()
}

const INJECTIONS: [(u8, &str, &str); 15] = [
    (1, "2,1,1 | 1,1 | 2; | 3,2,2", "2,1,1 | 1,1 | 3; | 3,2,2"),
    (2, "1,1,1 | 1,1 | ; | 1,1,1", "1,1 | 1 | ; | 2,1,1"),
    (3, " | | ; | 2,2,2", "1,1 | 1,1 | ; | 2,2,1"),
    (4, " | | | 3,3", "1,1,1 | 1,1,1 | | 3,2"),
    (5, "2,1,1 | 1 | | 3,3", "3,1,1 | 1 | | 3,3"),
    (6, "2 | 1 | ; | 2,2,2", "1 | 1 | ; | 3,2,1"),
    (7, "2 | 2 | ; | 2,2,2", " | | ; | 3,2,2"),
    (8, "2,1 | 1 | ; | 2,2,2", "1,1,1 | 1,1 | ; | 2,2,2"),
    (9, "3,1 | 1 | | 3,3", "1,1,1 | 2,1 | | 3,3"),
    (10, "3,3 | 1,1 | | 3,3", "3,3 | 2,1 | | 3,3"),
    (11, "3,3,1 | 3,2 | | 3,3", "3,1 | 2 | | 4,3"),
    (12, "2,2,2,1,1 | | | 2,2", "2,2,1,1,1,1 | 1 | | 2,2"),
    (13, "2,2,1,1 | | ; | 2,2,2", "1,1,1,1 | | ;1 | 3,2,1"),
    (14, "3,3,2,2,1 | | | 3,3", "2,2,2,1,1 | | 1,1 | 4,2"),
    (15, "2,2 | | | 2,2", "1,1,1 | 2 | | 2,2"),
];

fn worked_examples() -> Outcome {
    let mut done = 0;
    // ψ
    let c = CElement {
        m: 2,
        delta: pp("28,26,20,12,6,6,5,3,1,1"),
    };
    let (d, trace) = psi_forward(&c).map_err(|e| e.to_string())?;
    expect("ψ μ", d.mu.clone(), pp("2,1,1,1,1,1,1,1,0,0"))?;
    expect("ψ π", d.pi.clone(), p("3^2,4^3,5^3,6^2,7,9^3,10^2"))?;
    let deltas = ["23,21,15,7,1,1,1,1,1,0", "14,12,6,1,1,1,1,1,1,0", "4,2,1,1,1,1,1,1,1,0", "2,1,1,1,1,1,1,1,0,0"];
    let pis: [[&str; 10]; 4] = [
        ["5", "5", "5", "5", "5", "5", "", "4", "", "3"],
        ["9,5", "9,5", "9,5", "5", "5", "", "7,4", "4", "", "3"],
        ["10,9,5", "10,9,5", "5", "5", "", "7,4", "4", "9,6,4", "", "3"],
        ["10,9,5", "5", "5", "", "7,4", "4", "9,6,4", "", "10,9,6,3", "3"],
    ];
    expect("ψ passes", trace.steps.len(), 4)?;
    for (i, step) in trace.steps.iter().enumerate() {
        expect(&format!("δ^{}", i + 1), step.delta.clone(), pp(deltas[i]))?;
        let want: Vec<Partition> = pis[i].iter().map(|s| p(s)).collect();
        expect(&format!("Π^{}", i + 1), step.pis.clone(), want)?;
    }
    done += 1;
    // ψ⁻¹ and its fill table
    let table = render_table(&d).map_err(|e| e.to_string())?;
    expect("table sums", table.column_sums(), vec![26, 6, 6, 1, 12, 5, 20, 1, 28, 3])?;
    expect(
        "table markers",
        table.markers.clone(),
        vec![(1, 8), (1, 4), (2, 10), (2, 6), (2, 3), (2, 2), (3, 5), (4, 7), (4, 1), (5, 9)],
    )?;
    expect("ψ⁻¹", psi_inverse(&d).map_err(|e| e.to_string())?, c)?;
    done += 1;
    // φ
    let a = AElement {
        m: 2,
        n: 10,
        alpha: p("2,1,1,1,1,1,1,1"),
        beta: p("3^2,4^3,5^3,6^2,7,8^10,9^7,10^8,11^2,12^2"),
    };
    expect("A weight", a.weight(), 330)?;
    let g = phi_forward(&a).map_err(|e| e.to_string())?;
    expect("φ", g.clone(), pp("108,82,65,37,22,6,5,3,1,1"))?;
    expect("φ⁻¹", phi_inverse(2, &g).map_err(|e| e.to_string())?, a)?;
    done += 1;
    // χ
    let r = RElement::with_delta(3, 1, p("11,10,10,9,8,7,6,5,5,4,3,1,1"), &p("4")).map_err(|e| e.to_string())?;
    expect("R weight", r.weight(), 84)?;
    let st = chi_forward_steps(&r).map_err(|e| e.to_string())?;
    expect("ν", st.nu.clone(), vec![pp("10,2"), pp("4")])?;
    expect("b̄¹", st.b_bar[0].clone(), p("4,2"))?;
    expect("r̄", st.r_bar.clone(), vec![p("6"), p("4")])?;
    let s = &st.result;
    expect("s", s.s.clone(), vec![6, 4, 3])?;
    expect("χ α", s.alpha.clone(), p("11,9,9,8,7,7,6,6,5,5,3,3,3"))?;
    expect("χ β, γ, ξ", (s.beta.clone(), s.gamma.clone(), s.xi.clone()), (p(""), p("1"), p("1")))?;
    expect("χ⁻¹", chi_inverse(s).map_err(|e| e.to_string())?, r)?;
    done += 1;
    // η
    let pi = p("12,9,8,6,5,4,3,1");
    let t = eta_forward(&pi, 3).map_err(|e| e.to_string())?;
    expect("η", t.clone(), tuple("2,1,1,1 | 1 | 7,4,2 | 5,2"))?;
    expect("η (m, n)", (t.m(), t.weight()), (3, 48))?;
    expect("η⁻¹", eta_inverse(&t).map_err(|e| e.to_string())?, pi)?;
    done += 1;
    // σ^1..σ^15
    for (i, src, dst) in INJECTIONS {
        let (src, dst) = (tuple(src), tuple(dst));
        expect(&format!("class of σ^{i} example"), classify_source(&src).map_err(|e| e.to_string())?, i)?;
        expect(&format!("σ^{i}"), sigma_apply(&src).map_err(|e| e.to_string())?, (dst.clone(), i))?;
        expect(&format!("ζ^{i}"), zeta_apply(&dst, i).map_err(|e| e.to_string())?, src)?;
        done += 1;
    }
    Ok(format!("{done}/20 worked examples exact"))
}

fn sweeps() -> Outcome {
    let runs = [
        ("Algorithm Z, N,M <= 3, weight <= 12", oracle::certify_gamma(3, 12, DEFAULT_CAP)),
        ("ψ, M <= 3, N <= 4, n <= 24", oracle::certify_psi(3, 4, 24, DEFAULT_CAP)),
        ("φ, M <= 2, N <= 4, n <= 20", oracle::certify_phi(2, 4, 20, DEFAULT_CAP)),
        ("χ, k <= 3, |m| <= 2, n <= 24", oracle::certify_chi(3, 2, 24, DEFAULT_CAP)),
        ("η, k in {3,4}, |m| <= 4, n <= 18", oracle::certify_eta(&[3, 4], 4, 18, DEFAULT_CAP)),
    ];
    let mut summary = Vec::new();
    for (name, cert) in runs {
        let cert = cert.map_err(|e| format!("{name}: {e}"))?;
        if let Some(bad) = cert.counterexample {
            return Err(format!("{name}: {bad}"));
        }
        println!("    {name}: {} cells, {} elements round-tripped", cert.cells.len(), cert.elements_checked);
        summary.push(cert.elements_checked);
    }
    Ok(format!("5 bijections certified, {} elements checked", summary.iter().sum::<usize>()))
}

fn series_agreement() -> Outcome {
    let mut checks = 0usize;
    for m in 0..=5 {
        for n in 0..=5 {
            let g = gaussian(m, n).as_series(25);
            for w in 0..=25u64 {
                let count = enumerate(Family::Box { m, n }, w, DEFAULT_CAP).map_err(|e| e.to_string())?.len();
                expect(&format!("Gaussian M={m} N={n} q^{w}"), g.coeff(w as usize), count.into())?;
                checks += 1;
            }
            let lhs = inv_pochhammer(1, Terms::Finite(n), 40);
            let rhs = &inv_pochhammer(m + 1, Terms::Finite(n), 40) * &gaussian(m, n).as_series(40);
            expect(&format!("product identity M={m} N={n}"), lhs.coeffs(), rhs.coeffs())?;
            checks += 1;
        }
    }
    for k in 2..=4 {
        for m in -5i64..=5 {
            for n in 0..=22u64 {
                let count = enumerate(Family::Q { k, m }, n, DEFAULT_CAP).map_err(|e| e.to_string())?.len();
                expect(&format!("N_{k}({m},{n})"), nk_count(k, m, n as usize), count.into())?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} coefficient identities exact"))
}

fn monotonicity() -> Outcome {
    let mut cells = 0;
    for k in [3, 4] {
        let report = verify_monotonicity(k, 5, 25).map_err(|e| e.to_string())?;
        if let Some(v) = report.violations.first() {
            return Err(format!("{} violations, first: {v}", report.violations.len()));
        }
        let drops: Vec<String> = report
            .cells
            .iter()
            .filter(|c| c.decreases)
            .map(|c| format!("(m={},n={})", c.m, c.n))
            .collect();
        println!("    k={k}: decreases only at {}", drops.join(" "));
        cells += report.cells.len();
    }
    Ok(format!("{cells} cells audited, exceptions exactly at n=|m|+k-1 and (3,0,8)"))
}

fn failure_set(k: usize) -> BTreeSet<(usize, i64, usize)> {
    let mut out = BTreeSet::new();
    for m in 0..=6 {
        let s = nk_series(k, m, 30);
        for n in 1..=30 {
            if s.coeff(n) < s.coeff(n - 1) {
                out.insert((k, m, n));
            }
        }
    }
    out
}

fn small_k_cross_check() -> Outcome {
    let extra: [(usize, i64, usize); 7] = [(1, 2, 5), (1, 3, 10), (1, 4, 9), (1, 6, 13), (2, 1, 7), (2, 0, 8), (2, 3, 11)];
    for k in 1..=3usize {
        let mut want: BTreeSet<(usize, i64, usize)> = (0..=6).map(|m| (k, m, m as usize + k)).collect();
        want.extend(extra.iter().filter(|t| t.0 == k));
        if k == 3 {
            want.insert((3, 0, 9));
        }
        let got = failure_set(k);
        if got != want {
            let missing: Vec<_> = want.difference(&got).collect();
            let unexpected: Vec<_> = got.difference(&want).collect();
            return Err(format!("k={k}: missing {missing:?}, unexpected {unexpected:?}"));
        }
    }
    Ok("failure sets for k = 1, 2, 3 match exactly".into())
}

fn property_suites() -> Outcome {
    let mut traces = 0usize;
    for m in 0..=3 {
        for n in 1..=4 {
            for w in 0..=24 {
                for e in enumerate(Family::C { m, n }, w, DEFAULT_CAP).map_err(|e| e.to_string())? {
                    let Element::C(c) = e else { unreachable!() };
                    let (d, trace) = psi_forward(&c).map_err(|e| e.to_string())?;
                    check_trace(&trace).map_err(|e| format!("{c:?}: {e}"))?;
                    for step in &trace.steps {
                        let w2 = step.delta.weight() + step.pis.iter().map(Partition::weight).sum::<u64>();
                        expect("trace weight", w2, c.weight())?;
                    }
                    traces += 1;
                    let back = psi_inverse(&d).map_err(|e| e.to_string())?;
                    check_c(back.delta.parts(), m, n).map_err(|e| format!("difference bounds: {e}"))?;
                }
                for e in enumerate(Family::D { m, n }, w, DEFAULT_CAP).map_err(|e| e.to_string())? {
                    let Element::D(d) = e else { unreachable!() };
                    let back = psi_inverse(&d).map_err(|e| e.to_string())?;
                    check_c(back.delta.parts(), m, n).map_err(|e| format!("difference bounds: {e}"))?;
                }
            }
        }
    }
    let mut shifts = 0usize;
    for m in 0..=3 {
        for n in 0..=3 {
            for w in 0..=12 {
                for e in enumerate(Family::ZDomain { m, n }, w, DEFAULT_CAP).map_err(|e| e.to_string())? {
                    let Element::ZIn(z) = e else { unreachable!() };
                    let out = gamma_forward(&z).map_err(|e| e.to_string())?;
                    for (i, &g) in out.gamma.iter().enumerate() {
                        let d = z.delta.part(i + 1);
                        for t in 0..=n {
                            let bound = z.xi.part(n - t);
                            if (d as i64 - t as i64 <= bound as i64 || bound == u64::MAX)
                                && g > t {
                                    return Err(format!("shift bound fails on {z:?} at i={} t={t}", i + 1));
                                }
                        }
                    }
                    shifts += 1;
                }
            }
        }
    }
    for k in 1..=6usize {
        for m in -6i64..=6 {
            let lhs = gamma_of(m).weight() as i64;
            let rhs = delta_of(k, m).weight() as i64 - k as i64 * m * m;
            expect(&format!("ledger k={k} m={m}"), lhs, rhs)?;
        }
    }
    Ok(format!("{traces} ψ traces, {shifts} Algorithm Z inputs, 78 ledger cases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("worked-example fidelity", worked_examples),
        ("exhaustive bijectivity sweeps", sweeps),
        ("series and enumeration agreement", series_agreement),
        ("k-rank monotonicity and injection audit", monotonicity),
        ("small-k monotonicity failure sets", small_k_cross_check),
        ("structural property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {} {name} (tolerance 0): {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {} {name} (tolerance 0): {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
