//! Brute-force enumeration of every partition family used by the maps, and a harness that
//! certifies a pair of maps as mutually inverse, weight-preserving bijections.
//!
//! Generators work directly from the defining inequalities and share no code with the
//! maps they check. Part sequences come out in lexicographically descending order;
//! composite elements are ordered component by component.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algz::{gamma_forward, gamma_inverse, ZInput, ZOutput};
use crate::chi::{chi_forward, chi_inverse, delta_of, gamma_of, RElement, SElement};
use crate::error::{Error, Result};
use crate::krank::{eta_forward, eta_inverse, KTuple};
use crate::partition::{PaddedPartition, Partition};
use crate::phi::{phi_forward, phi_inverse, AElement};
use crate::psi::{check_c, check_d, psi_forward, psi_inverse, CElement, DElement};

pub const DEFAULT_CAP: usize = 1_000_000;

/// A family of partition-like objects, with every parameter except the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Plain,
    /// At most `m` parts, each at most `n`.
    Box { m: usize, n: usize },
    C { m: usize, n: usize },
    D { m: usize, n: usize },
    A { m: usize, n: usize },
    /// Partitions with at most `n` parts, padded to `n` entries.
    B { n: usize },
    R { k: usize, m: i64 },
    S { k: usize, m: i64 },
    Q { k: usize, m: i64 },
    P { k: usize, m: i64 },
    /// `(ξ, δ)` with `ξ` padded to `n` entries and `δ` padded to `m`.
    ZDomain { m: usize, n: usize },
    /// `(α, γ)` with `α` padded to `m+n` entries and `γ` a non-increasing `m`-vector in `[0, n]`.
    ZCodomain { m: usize, n: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Plain => write!(f, "Plain"),
            Family::Box { m, n } => write!(f, "Box(M={m},N={n})"),
            Family::C { m, n } => write!(f, "C(M={m},N={n})"),
            Family::D { m, n } => write!(f, "D(M={m},N={n})"),
            Family::A { m, n } => write!(f, "A(M={m},N={n})"),
            Family::B { n } => write!(f, "B(N={n})"),
            Family::R { k, m } => write!(f, "R(k={k},m={m})"),
            Family::S { k, m } => write!(f, "S(k={k},m={m})"),
            Family::Q { k, m } => write!(f, "Q(k={k},m={m})"),
            Family::P { k, m } => write!(f, "P(k={k},m={m})"),
            Family::ZDomain { m, n } => write!(f, "ZDomain(M={m},N={n})"),
            Family::ZCodomain { m, n } => write!(f, "ZCodomain(M={m},N={n})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(untagged)]
pub enum Element {
    Partition(Partition),
    Padded(PaddedPartition),
    C(CElement),
    D(DElement),
    A(AElement),
    R(RElement),
    S(SElement),
    K(KTuple),
    ZIn(ZInput),
    ZOut(ZOutput),
}

impl Element {
    pub fn weight(&self) -> u64 {
        match self {
            Element::Partition(p) => p.weight(),
            Element::Padded(p) => p.weight(),
            Element::C(c) => c.weight(),
            Element::D(d) => d.weight(),
            Element::A(a) => a.weight(),
            Element::R(r) => r.weight(),
            Element::S(s) => s.weight(),
            Element::K(t) => t.weight(),
            Element::ZIn(z) => z.weight(),
            Element::ZOut(z) => z.weight(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Partition(p) => write!(f, "({p})"),
            Element::Padded(p) => write!(f, "({p})"),
            Element::K(t) => write!(f, "{t}"),
            other => write!(f, "{}", serde_json::to_string(other).unwrap_or_default()),
        }
    }
}

/// Partitions of `w` with parts in `[lo, hi]` and at most `max_len` parts, in
/// lexicographically descending order.
pub fn partitions_with(w: u64, lo: u64, hi: u64, max_len: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    walk(w, lo.max(1), hi, max_len, &mut stack, &mut |p| {
        out.push(Partition::new(p.to_vec()).expect("generated parts are non-increasing"));
        true
    });
    out
}

/// Partitions of `w` with parts at most `max_part` and at most `max_len` parts.
pub fn partitions_bounded(w: u64, max_part: u64, max_len: usize) -> Vec<Partition> {
    partitions_with(w, 1, max_part, max_len)
}

fn walk(w: u64, lo: u64, hi: u64, max_len: usize, stack: &mut Vec<u64>, emit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
    if w == 0 {
        return emit(stack);
    }
    if max_len == 0 {
        return true;
    }
    let top = hi.min(w);
    let mut v = top;
    while v >= lo {
        // the remaining weight must fit in max_len - 1 further parts of size at most v
        if w - v <= v.saturating_mul(max_len as u64 - 1) {
            stack.push(v);
            let go = walk(w - v, lo, v, max_len - 1, stack, emit);
            stack.pop();
            if !go {
                return false;
            }
        }
        v -= 1;
    }
    true
}

fn all_partitions(w: u64) -> Vec<Partition> {
    partitions_bounded(w, w, w as usize)
}

/// Non-increasing sequences of `len` positive sides with squared sum at most `budget`.
fn square_profiles(len: usize, budget: u64) -> Vec<Vec<u64>> {
    fn go(len: usize, budget: u64, hi: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let left = (len - cur.len()) as u64;
        let mut d = hi;
        while d >= 1 {
            // the remaining squares each take at least 1
            if d * d + (left - 1) <= budget {
                cur.push(d);
                go(len, budget - d * d, d, cur, out);
                cur.pop();
            }
            d -= 1;
        }
    }
    let mut out = Vec::new();
    let hi = (budget as f64).sqrt() as u64 + 1;
    go(len, budget, hi, &mut Vec::new(), &mut out);
    out
}

/// Every weight-`n` tuple for the k-rank with `ℓ(α) - ℓ(β) = m`.
pub fn k_tuples(k: usize, m: i64, n: u64) -> Vec<KTuple> {
    let mut out = Vec::new();
    if k < 2 {
        return out;
    }
    for squares in square_profiles(k - 1, n) {
        let rest = n - squares.iter().map(|d| d * d).sum::<u64>();
        let last = squares[k - 2];
        // components: α, β, γ^1..γ^{k-2} as (max part, max length)
        let mut bounds = vec![(last, usize::MAX), (last, usize::MAX)];
        for i in 0..k - 2 {
            bounds.push((u64::MAX, (squares[i] - squares[i + 1]) as usize));
        }
        let mut chosen = Vec::with_capacity(bounds.len());
        fill_components(&bounds, rest, &mut chosen, &mut |parts| {
            if parts[0].len() as i64 - parts[1].len() as i64 == m {
                out.push(KTuple {
                    alpha: parts[0].clone(),
                    beta: parts[1].clone(),
                    gammas: parts[2..].to_vec(),
                    squares: squares.clone(),
                });
            }
        });
    }
    out
}

fn fill_components(
    bounds: &[(u64, usize)],
    rest: u64,
    chosen: &mut Vec<Partition>,
    emit: &mut dyn FnMut(&[Partition]),
) {
    let i = chosen.len();
    if i == bounds.len() {
        if rest == 0 {
            emit(chosen);
        }
        return;
    }
    let (max_part, max_len) = bounds[i];
    let lens = max_len.min(rest as usize);
    for w in (0..=rest).rev() {
        if i + 1 == bounds.len() && w != rest {
            continue;
        }
        for p in partitions_bounded(w, max_part.min(w.max(1)), lens) {
            chosen.push(p);
            fill_components(bounds, rest - w, chosen, emit);
            chosen.pop();
        }
    }
}

struct Capped {
    family: Family,
    n: u64,
    cap: usize,
    items: Vec<Element>,
}

impl Capped {
    fn push(&mut self, e: Element) -> Result<()> {
        if self.items.len() >= self.cap {
            return Err(Error::CapExceeded {
                family: self.family.to_string(),
                n: self.n,
                cap: self.cap,
            });
        }
        self.items.push(e);
        Ok(())
    }
}

/// Every element of weight `n` in `family`, or [`Error::CapExceeded`] past `cap` elements.
pub fn enumerate(family: Family, n: u64, cap: usize) -> Result<Vec<Element>> {
    let mut c = Capped {
        family,
        n,
        cap,
        items: Vec::new(),
    };
    let pad = |p: &Partition, len: usize| p.pad(len).expect("length checked by the generator");
    match family {
        Family::Plain => {
            for p in all_partitions(n) {
                c.push(Element::Partition(p))?;
            }
        }
        Family::Box { m, n: side } => {
            for p in partitions_bounded(n, side as u64, m) {
                c.push(Element::Partition(p))?;
            }
        }
        Family::B { n: len } => {
            for p in partitions_bounded(n, n, len) {
                c.push(Element::Padded(pad(&p, len)))?;
            }
        }
        Family::C { m, n: len } => {
            for p in partitions_bounded(n, n, len) {
                let delta = pad(&p, len);
                if check_c(delta.parts(), m, len).is_ok() {
                    c.push(Element::C(CElement { m, delta }))?;
                }
            }
        }
        Family::D { m, n: len } => {
            let (lo, hi) = (m as u64 + 1, (m + len) as u64);
            for w in (0..=n).rev() {
                for pi in partitions_with(w, lo, hi.saturating_sub(1), usize::MAX) {
                    if check_d(&pi, &vec![0; len], m, len).is_err() {
                        continue;
                    }
                    for mu in partitions_bounded(n - w, m as u64, len) {
                        c.push(Element::D(DElement {
                            m,
                            pi: pi.clone(),
                            mu: pad(&mu, len),
                        }))?;
                    }
                }
            }
        }
        Family::A { m, n: len } => {
            let (lo, hi) = (m as u64 + 1, (m + len) as u64);
            for w in (0..=n).rev() {
                for alpha in partitions_bounded(w, m as u64, len) {
                    for beta in partitions_with(n - w, lo, hi, usize::MAX) {
                        c.push(Element::A(AElement {
                            m,
                            n: len,
                            alpha: alpha.clone(),
                            beta,
                        }))?;
                    }
                }
            }
        }
        Family::R { k, m } => {
            let forced = delta_of(k, m).weight();
            if n >= forced {
                for lambda in all_partitions(n - forced) {
                    c.push(Element::R(RElement { k, m, lambda }))?;
                }
            }
        }
        Family::S { k, m } => enumerate_s(&mut c, k, m, n)?,
        Family::Q { k, m } => {
            if k >= 2 {
                for p in all_partitions(n) {
                    if p.durfee_chain(k - 1).side(k - 1) >= 1 && p.k_rank(k) == m {
                        c.push(Element::Partition(p))?;
                    }
                }
            }
        }
        Family::P { k, m } => {
            for t in k_tuples(k, m, n) {
                c.push(Element::K(t))?;
            }
        }
        Family::ZDomain { m, n: len } => {
            for w in (0..=n).rev() {
                for xi in partitions_bounded(w, w, len) {
                    for delta in partitions_bounded(n - w, n - w, m) {
                        c.push(Element::ZIn(ZInput {
                            xi: pad(&xi, len),
                            delta: pad(&delta, m),
                        }))?;
                    }
                }
            }
        }
        Family::ZCodomain { m, n: len } => {
            for w in (0..=n).rev() {
                for alpha in partitions_bounded(w, w, m + len) {
                    for gamma in partitions_bounded(n - w, len as u64, m) {
                        c.push(Element::ZOut(ZOutput {
                            alpha: pad(&alpha, m + len),
                            gamma: pad(&gamma, m).parts().iter().map(|&g| g as usize).collect(),
                        }))?;
                    }
                }
            }
        }
    }
    Ok(c.items)
}

fn enumerate_s(c: &mut Capped, k: usize, m: i64, n: u64) -> Result<()> {
    if k == 0 {
        return Ok(());
    }
    let gamma = gamma_of(m);
    let Some(rest) = n.checked_sub(gamma.weight()) else {
        return Ok(());
    };
    let a = m.unsigned_abs();
    for wa in (0..=rest).rev() {
        for alpha in all_partitions(wa) {
            let s = alpha.durfee_chain(k).sides().to_vec();
            let sk = s[k - 1];
            if sk < a || alpha.len() as u64 != s.iter().sum::<u64>() {
                continue;
            }
            if alpha.parts().last().is_some_and(|&p| p < sk) {
                continue;
            }
            let rows = (sk as i64 + m) as usize;
            let cols = (sk as i64 - m) as u64;
            for wb in (0..=rest - wa).rev() {
                for beta in partitions_with(wb, sk + 1, 2 * sk, usize::MAX) {
                    for xi in partitions_bounded(rest - wa - wb, cols, rows) {
                        let e = SElement {
                            k,
                            m,
                            s: s.clone(),
                            alpha: alpha.clone(),
                            beta: beta.clone(),
                            gamma: gamma.clone(),
                            xi,
                        };
                        if e.check().is_ok() {
                            c.push(Element::S(e))?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// One `(parameters, weight)` point of a certification grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridCell {
    pub domain: Family,
    pub codomain: Family,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub domain: String,
    pub codomain: String,
    pub n: u64,
    pub domain_count: usize,
    pub codomain_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub map: String,
    pub cells: Vec<CellReport>,
    pub elements_checked: usize,
    /// The first failure in grid order, then enumeration order.
    pub counterexample: Option<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

type MapFn<'a> = &'a (dyn Fn(&GridCell, &Element) -> Result<Element> + Sync);

/// Checks on every grid cell that the two families have equal size, that both maps
/// preserve weight and land in the other family, and that both round trips are the
/// identity.
pub fn certify(name: &str, grid: &[GridCell], forward: MapFn<'_>, backward: MapFn<'_>, cap: usize) -> Result<Certificate> {
    let results: Vec<(CellReport, usize, Option<String>)> = grid
        .par_iter()
        .map(|cell| certify_cell(cell, forward, backward, cap))
        .collect::<Result<_>>()?;
    let mut cells = Vec::with_capacity(results.len());
    let mut checked = 0;
    let mut counterexample = None;
    for (report, n, bad) in results {
        cells.push(report);
        checked += n;
        if counterexample.is_none() {
            counterexample = bad;
        }
    }
    Ok(Certificate {
        map: name.to_string(),
        cells,
        elements_checked: checked,
        counterexample,
    })
}

fn certify_cell(cell: &GridCell, forward: MapFn<'_>, backward: MapFn<'_>, cap: usize) -> Result<(CellReport, usize, Option<String>)> {
    let dom = enumerate(cell.domain, cell.n, cap)?;
    let cod = enumerate(cell.codomain, cell.n, cap)?;
    let report = CellReport {
        domain: cell.domain.to_string(),
        codomain: cell.codomain.to_string(),
        n: cell.n,
        domain_count: dom.len(),
        codomain_count: cod.len(),
    };
    let at = format!("{} -> {} at n = {}", cell.domain, cell.codomain, cell.n);
    if dom.len() != cod.len() {
        return Ok((report, 0, Some(format!("{at}: {} elements vs {}", dom.len(), cod.len()))));
    }
    let dom_set: HashSet<&Element> = dom.iter().collect();
    let cod_set: HashSet<&Element> = cod.iter().collect();
    let mut checked = 0;
    for (x, other, map, inv, dir) in [
        (&dom, &cod_set, forward, backward, "forward"),
        (&cod, &dom_set, backward, forward, "backward"),
    ] {
        for e in x.iter() {
            checked += 1;
            let fail = |why: String| Some(format!("{at}: {dir} map on {e}: {why}"));
            let y = match map(cell, e) {
                Ok(y) => y,
                Err(err) => return Ok((report, checked, fail(err.to_string()))),
            };
            if y.weight() != e.weight() {
                return Ok((report, checked, fail(format!("weight changed to {}", y.weight()))));
            }
            if !other.contains(&y) {
                return Ok((report, checked, fail(format!("image {y} is outside the target family"))));
            }
            match inv(cell, &y) {
                Ok(back) if back == *e => {}
                Ok(back) => return Ok((report, checked, fail(format!("round trip gave {back}")))),
                Err(err) => return Ok((report, checked, fail(format!("inverse failed: {err}")))),
            }
        }
    }
    Ok((report, checked, None))
}

fn wrong(expected: &str) -> Error {
    crate::error::internal(format!("expected an element of {expected}"))
}

fn dims(cell: &GridCell) -> (usize, usize) {
    match cell.domain {
        Family::ZDomain { m, n } | Family::C { m, n } | Family::A { m, n } => (m, n),
        _ => (0, 0),
    }
}

/// Algorithm Z on `M, N <= max_side`, weights up to `w_max`.
pub fn certify_gamma(max_side: usize, w_max: u64, cap: usize) -> Result<Certificate> {
    let grid = grid_mn(0..=max_side, 0..=max_side, w_max, |m, n| (Family::ZDomain { m, n }, Family::ZCodomain { m, n }));
    let fwd = |_: &GridCell, e: &Element| match e {
        Element::ZIn(z) => gamma_forward(z).map(Element::ZOut),
        _ => Err(wrong("the Algorithm Z domain")),
    };
    let bwd = |c: &GridCell, e: &Element| match e {
        Element::ZOut(z) => {
            let (m, n) = dims(c);
            gamma_inverse(z, n, m).map(Element::ZIn)
        }
        _ => Err(wrong("the Algorithm Z codomain")),
    };
    certify("gamma", &grid, &fwd, &bwd, cap)
}

/// `ψ` on `M <= m_max`, `1 <= N <= n_max`.
pub fn certify_psi(m_max: usize, n_max: usize, w_max: u64, cap: usize) -> Result<Certificate> {
    let grid = grid_mn(0..=m_max, 1..=n_max, w_max, |m, n| (Family::C { m, n }, Family::D { m, n }));
    let fwd = |_: &GridCell, e: &Element| match e {
        Element::C(c) => psi_forward(c).map(|(d, _)| Element::D(d)),
        _ => Err(wrong("C")),
    };
    let bwd = |_: &GridCell, e: &Element| match e {
        Element::D(d) => psi_inverse(d).map(Element::C),
        _ => Err(wrong("D")),
    };
    certify("psi", &grid, &fwd, &bwd, cap)
}

/// `φ_M` on `M <= m_max`, `1 <= N <= n_max`.
pub fn certify_phi(m_max: usize, n_max: usize, w_max: u64, cap: usize) -> Result<Certificate> {
    certify_phi_with(m_max, n_max, w_max, cap, &|a| phi_forward(a))
}

/// As [`certify_phi`] with a replacement forward map; used to test the harness itself.
pub fn certify_phi_with(
    m_max: usize,
    n_max: usize,
    w_max: u64,
    cap: usize,
    forward: &(dyn Fn(&AElement) -> Result<PaddedPartition> + Sync),
) -> Result<Certificate> {
    let grid = grid_mn(0..=m_max, 1..=n_max, w_max, |m, n| (Family::A { m, n }, Family::B { n }));
    let fwd = |_: &GridCell, e: &Element| match e {
        Element::A(a) => forward(a).map(Element::Padded),
        _ => Err(wrong("A")),
    };
    let bwd = |c: &GridCell, e: &Element| match e {
        Element::Padded(g) => phi_inverse(dims(c).0, g).map(Element::A),
        _ => Err(wrong("B")),
    };
    certify("phi", &grid, &fwd, &bwd, cap)
}

/// `χ` on `1 <= k <= k_max`, `|m| <= rank_max`.
pub fn certify_chi(k_max: usize, rank_max: i64, w_max: u64, cap: usize) -> Result<Certificate> {
    let grid = grid_rank(1..=k_max, rank_max, 0, w_max, |k, m| (Family::R { k, m }, Family::S { k, m }));
    let fwd = |_: &GridCell, e: &Element| match e {
        Element::R(r) => chi_forward(r).map(Element::S),
        _ => Err(wrong("R")),
    };
    let bwd = |_: &GridCell, e: &Element| match e {
        Element::S(s) => chi_inverse(s).map(Element::R),
        _ => Err(wrong("S")),
    };
    certify("chi", &grid, &fwd, &bwd, cap)
}

/// `η` on the given `k`, `|m| <= rank_max`, weights from `k-1`.
pub fn certify_eta(ks: &[usize], rank_max: i64, w_max: u64, cap: usize) -> Result<Certificate> {
    let mut grid = Vec::new();
    for &k in ks {
        grid.extend(grid_rank(k..=k, rank_max, k as u64 - 1, w_max, |k, m| (Family::Q { k, m }, Family::P { k, m })));
    }
    let fwd = |c: &GridCell, e: &Element| match (e, c.domain) {
        (Element::Partition(p), Family::Q { k, .. }) => eta_forward(p, k).map(Element::K),
        _ => Err(wrong("Q")),
    };
    let bwd = |_: &GridCell, e: &Element| match e {
        Element::K(t) => eta_inverse(t).map(Element::Partition),
        _ => Err(wrong("P")),
    };
    certify("eta", &grid, &fwd, &bwd, cap)
}

fn grid_mn(
    ms: std::ops::RangeInclusive<usize>,
    ns: std::ops::RangeInclusive<usize>,
    w_max: u64,
    fam: impl Fn(usize, usize) -> (Family, Family),
) -> Vec<GridCell> {
    let mut grid = Vec::new();
    for m in ms {
        for n in ns.clone() {
            let (domain, codomain) = fam(m, n);
            grid.extend((0..=w_max).map(|w| GridCell { domain, codomain, n: w }));
        }
    }
    grid
}

fn grid_rank(
    ks: std::ops::RangeInclusive<usize>,
    rank_max: i64,
    w_min: u64,
    w_max: u64,
    fam: impl Fn(usize, i64) -> (Family, Family),
) -> Vec<GridCell> {
    let mut grid = Vec::new();
    for k in ks {
        for m in -rank_max..=rank_max {
            let (domain, codomain) = fam(k, m);
            grid.extend((w_min..=w_max).map(|w| GridCell { domain, codomain, n: w }));
        }
    }
    grid
}
