//! The bijection `ψ` between difference-bounded sequences and (π, μ) pairs, together with
//! its inverse built from a fill table.
//!
//! `C_{M,N}(n)`: sequences `δ` of `N` non-negative entries with
//! `0 <= δ_i - δ_{i+1} <= M + N - i` (where `δ_{N+1} = 0`).
//!
//! `D_{M,N}(n)`: pairs `(π, μ)` where every part of `π` lies in `[M+1, M+N-1]`, the part
//! `M+i` appears at most `N-i` times, and `μ` has `N` non-negative entries at most `M`.
//!
//! `ψ` repeatedly peels the entries above `M`, merges them back with Algorithm Z, and
//! records the shifts as distinct partitions `Π^{i,1..N}`. Every step is kept in a
//! [`PsiTrace`], and the structural facts the construction relies on are checked on
//! every run.

use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::algz::{conjugate_counts, gamma_forward, ZInput};
use crate::error::{internal, not_in_set, Result};
use crate::partition::{PaddedPartition, Partition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CElement {
    pub m: usize,
    pub delta: PaddedPartition,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DElement {
    pub m: usize,
    pub pi: Partition,
    pub mu: PaddedPartition,
}

impl CElement {
    pub fn n(&self) -> usize {
        self.delta.len()
    }

    pub fn weight(&self) -> u64 {
        self.delta.weight()
    }
}

impl DElement {
    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn weight(&self) -> u64 {
        self.pi.weight() + self.mu.weight()
    }
}

/// Why `δ` fails the difference bounds, if it does.
pub fn check_c(delta: &[u64], m: usize, n: usize) -> std::result::Result<(), String> {
    if delta.len() != n {
        return Err(format!("expected {n} entries, found {}", delta.len()));
    }
    for i in 1..=n {
        let here = delta[i - 1];
        let next = if i < n { delta[i] } else { 0 };
        if here < next {
            return Err(format!("entries {i} and {} increase", i + 1));
        }
        let bound = (m + n - i) as u64;
        if here - next > bound {
            return Err(format!(
                "difference at position {i} is {} > M+N-i = {bound}",
                here - next
            ));
        }
    }
    Ok(())
}

pub fn is_in_c(delta: &[u64], m: usize, n: usize) -> bool {
    check_c(delta, m, n).is_ok()
}

/// Why `(π, μ)` fails the `D` constraints, if it does.
pub fn check_d(pi: &Partition, mu: &[u64], m: usize, n: usize) -> std::result::Result<(), String> {
    if mu.len() != n {
        return Err(format!("μ must have {n} entries, found {}", mu.len()));
    }
    if mu.windows(2).any(|w| w[0] < w[1]) {
        return Err("μ is not non-increasing".into());
    }
    if let Some(&v) = mu.iter().find(|&&v| v > m as u64) {
        return Err(format!("μ has entry {v} > M = {m}"));
    }
    for (&v, &c) in &pi.frequencies().0 {
        if v <= m as u64 || v + 1 > (m + n) as u64 {
            return Err(format!("π has part {v} outside [M+1, M+N-1] = [{}, {}]", m + 1, (m + n) as i64 - 1));
        }
        let i = (v - m as u64) as usize;
        if c > n - i {
            return Err(format!("part {v} appears {c} times, more than N-{i} = {}", n - i));
        }
    }
    Ok(())
}

pub fn is_in_d(pi: &Partition, mu: &[u64], m: usize, n: usize) -> bool {
    check_d(pi, mu, m, n).is_ok()
}

/// One pass of the peeling loop, taking state `i` to state `i+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiStep {
    /// Number of entries of `δ^i` exceeding `M`.
    pub k: usize,
    /// `(δ_{k+1}, .., δ_N)`, the `ξ` input to Algorithm Z.
    pub overline_delta: PaddedPartition,
    /// `(δ_1 - M - 1, .., δ_k - M - 1)`, the `δ` input to Algorithm Z.
    pub tilde_delta: PaddedPartition,
    pub gamma: Vec<usize>,
    /// The reindexing permutation, `f[j-1] = f(j)`.
    pub f: Vec<usize>,
    pub delta: PaddedPartition,
    pub pis: Vec<Partition>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiTrace {
    pub m: usize,
    pub initial: PaddedPartition,
    pub steps: Vec<PsiStep>,
}

impl PsiTrace {
    /// Number of passes before the largest entry drops to `M` or below.
    pub fn q(&self) -> usize {
        self.steps.len()
    }

    /// `Π^{i,·}` for `i = 0..=q`.
    pub fn pis(&self, i: usize) -> Vec<Partition> {
        if i == 0 {
            vec![Partition::empty(); self.initial.len()]
        } else {
            self.steps[i - 1].pis.clone()
        }
    }

    /// The composition `f^{i-1} ∘ .. ∘ f^0` as a vector over `t = 1..=N`; identity for `i = 0`.
    pub fn composed_reindexing(&self, i: usize) -> Vec<usize> {
        let n = self.initial.len();
        let mut comp: Vec<usize> = (1..=n).collect();
        for step in &self.steps[..i] {
            for c in comp.iter_mut() {
                *c = step.f[*c - 1];
            }
        }
        comp
    }
}

pub fn psi_forward(c: &CElement) -> Result<(DElement, PsiTrace)> {
    let m = c.m;
    let n = c.n();
    check_c(c.delta.parts(), m, n).map_err(|r| not_in_set("C_{M,N}", r))?;

    let mut delta = c.delta.clone();
    let mut pis = vec![Partition::empty(); n];
    let mut steps = Vec::new();
    let threshold = m as u64 + 1;
    while delta.part(1) >= threshold && n > 0 {
        if steps.len() >= n {
            return Err(internal("peeling loop exceeded N passes"));
        }
        let i = steps.len();
        let k = delta.parts().iter().take_while(|&&v| v >= threshold).count();
        let overline = PaddedPartition::new(delta.parts()[k..].to_vec())?;
        let tilde = PaddedPartition::new(delta.parts()[..k].iter().map(|v| v - threshold).collect())?;
        let z = gamma_forward(&ZInput {
            xi: overline.clone(),
            delta: tilde.clone(),
        })?;
        let gamma = z.gamma;
        let rest = n - k;
        let conj = conjugate_counts(&gamma, rest);
        let f: Vec<usize> = (1..=n)
            .map(|j| {
                if j <= k {
                    rest - gamma[j - 1] + j
                } else {
                    j - k + conj[n - j]
                }
            })
            .collect();

        let mut next = vec![Partition::empty(); n];
        for t in 1..=n {
            let piece = if t > k {
                pis[t - 1].clone()
            } else {
                extend_piece(&pis, t, gamma[t - 1], i, m)?
            };
            next[f[t - 1] - 1] = piece;
        }
        delta = z.alpha;
        pis = next;
        steps.push(PsiStep {
            k,
            overline_delta: overline,
            tilde_delta: tilde,
            gamma,
            f,
            delta: delta.clone(),
            pis: pis.clone(),
        });
    }

    let pi = pis.iter().fold(Partition::empty(), |acc, p| acc.union(p));
    let d = DElement { m, pi, mu: delta };
    let trace = PsiTrace {
        m,
        initial: c.delta.clone(),
        steps,
    };
    check_trace(&trace)?;
    check_d(&d.pi, d.mu.parts(), m, n).map_err(|r| internal(format!("ψ left D: {r}")))?;
    Ok((d, trace))
}

/// `Π̄^{i,j}`: adds to each part of `Π^{i,j}` the number of pieces among the last `γ_j`
/// whose length matches, and appends a new smallest part.
fn extend_piece(pis: &[Partition], j: usize, g: usize, i: usize, m: usize) -> Result<Partition> {
    let n = pis.len();
    let old = &pis[j - 1];
    if old.len() != i {
        return Err(internal(format!(
            "piece {j} has length {} at pass {i}, expected {i}",
            old.len()
        )));
    }
    let tail = &pis[n - g..];
    let count_len = |len: usize| tail.iter().filter(|p| p.len() == len).count() as u64;
    let mut parts: Vec<u64> = (1..=i).map(|s| old.part(s) + count_len(i - s + 1)).collect();
    parts.push(m as u64 + 1 + count_len(0));
    Partition::new(parts).map_err(|e| internal(format!("extended piece is not a partition: {e}")))
}

/// Checks the structural facts of a completed trace: reindexing maps are permutations, the
/// peel counts strictly decrease, weight is conserved, pieces are distinct partitions given
/// by the closed form, and piece lengths follow the peel counts.
pub fn check_trace(trace: &PsiTrace) -> Result<()> {
    let m = trace.m;
    let n = trace.initial.len();
    let total = trace.initial.weight();
    let ks: Vec<usize> = trace.steps.iter().map(|s| s.k).collect();
    if ks.windows(2).any(|w| w[0] <= w[1]) {
        return Err(internal(format!("peel counts {ks:?} do not strictly decrease")));
    }
    for (i, step) in trace.steps.iter().enumerate() {
        let mut seen = vec![false; n];
        for &v in &step.f {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return Err(internal(format!("f^{i} is not a permutation")));
            }
        }
        let w = step.delta.weight() + step.pis.iter().map(Partition::weight).sum::<u64>();
        if w != total {
            return Err(internal(format!("weight drifted at pass {i}: {w} != {total}")));
        }
        for (t, p) in step.pis.iter().enumerate() {
            if p.parts().windows(2).any(|w| w[0] == w[1]) {
                return Err(internal(format!("Π^{},{} has a repeated part", i + 1, t + 1)));
            }
        }
        check_closed_form(&step.pis, m).map_err(|e| internal(format!("state {}: {e}", i + 1)))?;
    }
    for i in 0..=trace.q() {
        let comp = trace.composed_reindexing(i);
        let pis = trace.pis(i);
        for t in 1..=n {
            let s = ks.iter().filter(|&&k| k >= t).count();
            let expected = s.min(i);
            let got = pis[comp[t - 1] - 1].len();
            if got != expected {
                return Err(internal(format!(
                    "state {i}: piece for t={t} has length {got}, expected {expected}"
                )));
            }
        }
    }
    Ok(())
}

/// `Π^{w}_s = M + 1 + #{j : ℓ(Π^j) <= ℓ(Π^w) - 1 - s} + #{j > w : ℓ(Π^j) = ℓ(Π^w) - s}`.
fn check_closed_form(pis: &[Partition], m: usize) -> std::result::Result<(), String> {
    let lens: Vec<i64> = pis.iter().map(|p| p.len() as i64).collect();
    for (w, p) in pis.iter().enumerate() {
        let l = lens[w];
        for s in 1..=p.len() {
            let s_i = s as i64;
            let shorter = lens.iter().filter(|&&x| x <= l - 1 - s_i).count();
            let later = lens[w + 1..].iter().filter(|&&x| x == l - s_i).count();
            let expected = (m + 1 + shorter + later) as u64;
            if p.part(s) != expected {
                return Err(format!(
                    "part {s} of piece {} is {}, closed form gives {expected}",
                    w + 1,
                    p.part(s)
                ));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cell {
    Empty,
    Mu(u64),
    Filled(u64),
    /// Marker `F_i`.
    Marker(usize),
    Deleted,
}

/// The `(N+1) x N` table; row 0 holds `μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FillTable {
    /// `cells[r][c - 1]` is row `r`, column `c`.
    pub cells: Vec<Vec<Cell>>,
    /// `(row, column)` of `F_1..F_N`.
    pub markers: Vec<(usize, usize)>,
}

impl FillTable {
    pub fn n(&self) -> usize {
        self.markers.len()
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.n())
            .map(|c| {
                self.cells
                    .iter()
                    .map(|row| match row[c] {
                        Cell::Mu(v) | Cell::Filled(v) => v,
                        _ => 0,
                    })
                    .sum()
            })
            .collect()
    }

    /// `δ_{N+1-i}` is the sum of the column holding `F_i`.
    pub fn delta(&self) -> Vec<u64> {
        let sums = self.column_sums();
        let n = self.n();
        let mut delta = vec![0; n];
        for (i, &(_, col)) in self.markers.iter().enumerate() {
            delta[n - 1 - i] = sums[col - 1];
        }
        delta
    }
}

impl fmt::Display for FillTable {
    /// Columns `C1..CN`, rows `R0..RN`, `/` for deleted cells, then the column sums.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        let cell = |c: &Cell| match c {
            Cell::Empty => String::new(),
            Cell::Mu(v) | Cell::Filled(v) => v.to_string(),
            Cell::Marker(i) => format!("F{i}"),
            Cell::Deleted => "/".into(),
        };
        let mut out = String::from("   ");
        for c in 1..=n {
            let _ = write!(out, " {:>4}", format!("C{c}"));
        }
        out.push('\n');
        for (r, row) in self.cells.iter().enumerate() {
            let _ = write!(out, "{:<3}", format!("R{r}"));
            for c in row {
                let _ = write!(out, " {:>4}", cell(c));
            }
            out.push('\n');
        }
        out.push_str("sum");
        for s in self.column_sums() {
            let _ = write!(out, " {s:>4}");
        }
        f.write_str(&out)
    }
}

pub fn render_table(d: &DElement) -> Result<FillTable> {
    let m = d.m;
    let n = d.n();
    check_d(&d.pi, d.mu.parts(), m, n).map_err(|r| not_in_set("D_{M,N}", r))?;
    let mut cells = vec![vec![Cell::Empty; n]; n + 1];
    for (c, &v) in d.mu.parts().iter().enumerate() {
        cells[0][c] = Cell::Mu(v);
    }
    // The cursor walks rows downward and, within a row, columns from N to 1.
    let mut cursor = (1usize, n);
    let mut next_cell = |cells: &Vec<Vec<Cell>>| -> Result<(usize, usize)> {
        loop {
            let (r, c) = cursor;
            if r > n {
                return Err(internal("fill table ran out of rows"));
            }
            cursor = if c > 1 { (r, c - 1) } else { (r + 1, n) };
            if cells[r][c - 1] == Cell::Empty {
                return Ok((r, c));
            }
        }
    };
    let mut markers = Vec::with_capacity(n);
    for i in 1..=n {
        let value = (m + i) as u64;
        for _ in 0..d.pi.multiplicity(value) {
            let (r, c) = next_cell(&cells)?;
            cells[r][c - 1] = Cell::Filled(value);
        }
        let (r, c) = next_cell(&cells)?;
        cells[r][c - 1] = Cell::Marker(i);
        for row in cells.iter_mut().skip(r + 1) {
            row[c - 1] = Cell::Deleted;
        }
        markers.push((r, c));
    }
    let mut cols: Vec<usize> = markers.iter().map(|&(_, c)| c).collect();
    cols.sort_unstable();
    cols.dedup();
    if cols.len() != n {
        return Err(internal("two markers share a column"));
    }
    Ok(FillTable { cells, markers })
}

pub fn psi_inverse(d: &DElement) -> Result<CElement> {
    let table = render_table(d)?;
    let delta = table.delta();
    check_c(&delta, d.m, d.n()).map_err(|r| internal(format!("ψ⁻¹ left C: {r}")))?;
    let c = CElement {
        m: d.m,
        delta: PaddedPartition::new(delta)?,
    };
    if c.weight() != d.weight() {
        return Err(internal("ψ⁻¹ changed the weight"));
    }
    Ok(c)
}

fn tuple_of(parts: &[Partition]) -> String {
    let inner: Vec<String> = parts
        .iter()
        .map(|p| if p.is_empty() { "∅".to_string() } else { format!("({p})") })
        .collect();
    format!("({})", inner.join(", "))
}

/// Human-readable dump of every pass.
pub fn render_trace(trace: &PsiTrace) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "δ^0 = ({})", trace.initial);
    for (i, s) in trace.steps.iter().enumerate() {
        let f: Vec<String> = s.f.iter().map(|v| v.to_string()).collect();
        let g: Vec<String> = s.gamma.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "k_{i} = {}", s.k);
        let _ = writeln!(out, "overline δ^{i} = ({})", s.overline_delta);
        let _ = writeln!(out, "tilde δ^{i} = ({})", s.tilde_delta);
        let _ = writeln!(out, "γ^{} = ({})", i + 1, g.join(","));
        let _ = writeln!(out, "f^{i} = ({})", f.join(","));
        let _ = writeln!(out, "δ^{} = ({})", i + 1, s.delta);
        let _ = writeln!(out, "Π^{} = {}", i + 1, tuple_of(&s.pis));
    }
    let _ = writeln!(out, "q = {}", trace.q());
    out
}
