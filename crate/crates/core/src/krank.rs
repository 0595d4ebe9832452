//! Garvan's k-rank in tuple form.
//!
//! A partition with at least `k-1` successive Durfee squares corresponds, through
//! [`eta_forward`], to a tuple `(α, β, γ^1..γ^{k-2}, ϖ^1..ϖ^{k-1})` whose `m = ℓ(α) - ℓ(β)`
//! is the k-rank. The tuples of weight `n` split into sixteen source classes; classes
//! 1 to 15 each carry a weight-raising injection `σ^i` into a target class of weight
//! `n+1`, with left inverse `ζ^i`. Class 16 holds the elements with no image.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{internal, not_in_image, not_in_set, Error, Result};
use crate::oracle;
use crate::partition::Partition;
use crate::phi::{phi_forward, phi_inverse, AElement};
use crate::qseries::nk_series;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KTuple {
    pub alpha: Partition,
    pub beta: Partition,
    pub gammas: Vec<Partition>,
    /// Sides `d_1 >= .. >= d_{k-1}` of the squares `ϖ^i = (d_i^{d_i})`.
    pub squares: Vec<u64>,
}

impl KTuple {
    pub fn k(&self) -> usize {
        self.squares.len() + 1
    }

    pub fn m(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn weight(&self) -> u64 {
        self.alpha.weight()
            + self.beta.weight()
            + self.gammas.iter().map(Partition::weight).sum::<u64>()
            + self.squares.iter().map(|d| d * d).sum::<u64>()
    }

    /// `d_i` counting from 1.
    pub fn d(&self, i: usize) -> u64 {
        self.squares[i - 1]
    }

    fn last_side(&self) -> u64 {
        *self.squares.last().unwrap_or(&0)
    }

    /// Swaps `α` and `β`, negating `m`.
    pub fn reflect(&self) -> Self {
        Self {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
            ..self.clone()
        }
    }

    pub fn check(&self) -> std::result::Result<(), String> {
        let k = self.k();
        if k < 2 {
            return Err("need at least one square".into());
        }
        if self.gammas.len() != k - 2 {
            return Err(format!("expected {} γ partitions, found {}", k - 2, self.gammas.len()));
        }
        if self.squares.windows(2).any(|w| w[0] < w[1]) {
            return Err("square sides must be non-increasing".into());
        }
        let last = self.last_side();
        if last == 0 {
            return Err("square sides must be positive".into());
        }
        if self.alpha.largest() > last || self.beta.largest() > last {
            return Err(format!("α and β parts must be at most d_{{k-1}} = {last}"));
        }
        for (i, g) in self.gammas.iter().enumerate() {
            let room = self.squares[i] - self.squares[i + 1];
            if g.len() as u64 > room {
                return Err(format!("γ^{} has more than d_{} - d_{} = {room} parts", i + 1, i + 1, i + 2));
            }
        }
        Ok(())
    }
}

impl KTuple {
    /// The line form `α | β | γ^1;..;γ^{k-2} | d_1,..,d_{k-1}` accepted by [`str::parse`].
    pub fn compact(&self) -> String {
        let gammas: Vec<String> = self.gammas.iter().map(Partition::to_string).collect();
        let squares: Vec<String> = self.squares.iter().map(u64::to_string).collect();
        format!("{} | {} | {} | {}", self.alpha, self.beta, gammas.join(";"), squares.join(","))
    }
}

impl FromStr for KTuple {
    type Err = Error;

    /// Accepts the JSON object form or the line form of [`KTuple::compact`].
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let t = if s.starts_with('{') {
            serde_json::from_str(s).map_err(|e| not_in_set("k-rank tuples", e.to_string()))?
        } else {
            let f: Vec<&str> = s.split('|').map(str::trim).collect();
            if f.len() != 4 {
                return Err(not_in_set("k-rank tuples", "expected `α | β | γ^1;..;γ^{k-2} | d_1,..,d_{k-1}`"));
            }
            let squares = f[3]
                .split(',')
                .map(|v| v.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| not_in_set("k-rank tuples", format!("square sides: {e}")))?;
            let gammas = if squares.len() < 2 {
                if !f[2].is_empty() {
                    return Err(not_in_set("k-rank tuples", "k = 2 has no γ partitions"));
                }
                Vec::new()
            } else {
                f[2].split(';').map(str::parse).collect::<Result<Vec<Partition>>>()?
            };
            KTuple {
                alpha: f[0].parse()?,
                beta: f[1].parse()?,
                gammas,
                squares,
            }
        };
        t.check().map_err(|r| not_in_set("P_k", r))?;
        Ok(t)
    }
}

impl fmt::Display for KTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |p: &Partition| {
            if p.is_empty() {
                "∅".to_string()
            } else {
                format!("({p})")
            }
        };
        let mut items = vec![show(&self.alpha), show(&self.beta)];
        items.extend(self.gammas.iter().map(show));
        items.extend(self.squares.iter().map(|d| format!("{d}^{d}")));
        write!(f, "({})", items.join(", "))
    }
}

pub fn eta_forward(pi: &Partition, k: usize) -> Result<KTuple> {
    if k < 2 {
        return Err(not_in_set("Q_k", "k must be at least 2"));
    }
    let d = pi.durfee_chain(k - 1).sides().to_vec();
    if d[k - 2] == 0 {
        return Err(not_in_set("Q_k", format!("fewer than {} successive Durfee squares", k - 1)));
    }
    let columns = Partition::from_unsorted(pi.conjugate().parts().iter().skip(d[0] as usize).copied());
    let mut gammas = Vec::with_capacity(k - 2);
    let mut start = d[0] as usize;
    for i in 0..k - 2 {
        let (hi, lo) = (d[i], d[i + 1]);
        let rows = &pi.parts()[start..start + lo as usize];
        let below = Partition::from_unsorted(rows.iter().map(|&v| v - lo)).conjugate();
        let gamma = phi_forward(&AElement {
            m: lo as usize,
            n: (hi - lo) as usize,
            alpha: below,
            beta: columns.parts_between(lo + 1, hi),
        })?;
        gammas.push(gamma.strip());
        start += lo as usize;
    }
    let t = KTuple {
        alpha: columns.parts_between(1, d[k - 2]),
        beta: pi.rows_below(start),
        gammas,
        squares: d,
    };
    if t.m() != pi.k_rank(k) {
        return Err(internal("tuple length difference disagrees with the k-rank"));
    }
    Ok(t)
}

pub fn eta_inverse(t: &KTuple) -> Result<Partition> {
    t.check().map_err(|r| not_in_set("P_k", r))?;
    let k = t.k();
    let d = &t.squares;
    let mut columns = t.alpha.clone();
    let mut lower_blocks = Vec::with_capacity(k - 2);
    for i in 0..k - 2 {
        let (hi, lo) = (d[i], d[i + 1]);
        let a = phi_inverse(lo as usize, &t.gammas[i].pad((hi - lo) as usize)?)?;
        columns = columns.union(&a.beta);
        lower_blocks.push(a.alpha.conjugate());
    }
    let right = columns.conjugate();
    let mut rows: Vec<u64> = (1..=d[0] as usize).map(|j| d[0] + right.part(j)).collect();
    for (i, block) in lower_blocks.iter().enumerate() {
        let side = d[i + 1];
        rows.extend((1..=side as usize).map(|j| side + block.part(j)));
    }
    rows.extend_from_slice(t.beta.parts());
    Partition::new(rows).map_err(|e| internal(format!("η⁻¹ assembly: {e}")))
}

fn all_gammas_empty(t: &KTuple) -> bool {
    t.gammas.iter().all(Partition::is_empty)
}

/// Whether `t` lies in source class `i` (1..=16); `t` must have `m >= 0`.
pub fn in_source(t: &KTuple, i: u8) -> bool {
    let k = t.k();
    let d1 = t.d(1);
    let dl = t.last_side();
    let (a, b) = (&t.alpha, &t.beta);
    let flat = d1 == dl;
    let n = t.weight() as i64;
    let m = t.m();
    match i {
        1 => d1 != dl,
        2 => flat && d1 == 1 && n >= m + k as i64,
        3 => k >= 4 && flat && d1 >= 2 && a.is_empty(),
        4 => k == 3 && flat && d1 >= 3 && a.is_empty(),
        5 => flat && d1 >= 2 && 1 <= a.part(1) && a.part(1) < d1,
        6 => flat && d1 >= 2 && a.part(1) == d1 && a.part(2) == 0 && b.part(1) < d1,
        7 => flat && d1 >= 2 && a.part(1) == d1 && a.part(2) == 0 && b.part(1) == d1,
        8 | 9 => {
            let parity = if i == 8 { 1 } else { 0 };
            flat && d1 >= 2
                && a.part(1) == d1
                && d1 > a.part(2)
                && a.part(2) >= 1
                && (a.part(1) - a.part(2)) % 2 == parity
        }
        10 => flat && d1 >= 2 && a.part(1) == d1 && a.part(2) == d1 && 1 <= b.part(1) && b.part(1) < d1,
        11 => flat && d1 >= 2 && a.part(1) == d1 && a.part(2) == d1 && b.part(1) == d1,
        12 => flat && d1 >= 2 && a.part(3) == d1 && a.part(1) == d1 && b.is_empty(),
        13..=15 => {
            let shape = flat && a.part(1) == d1 && a.part(2) == d1 && a.part(3) < d1 && b.is_empty();
            shape
                && match i {
                    13 => k >= 4 && d1 >= 2,
                    14 => k == 3 && d1 >= 3,
                    _ => k == 3 && d1 == 2,
                }
        }
        16 => {
            (flat && d1 == 1 && n == m + k as i64 - 1) || (k == 3 && flat && d1 == 2 && a.is_empty())
        }
        _ => false,
    }
}

/// `d_1 = d_j + 1` for `2 <= j <= k-2` and `d_1 = d_{k-1} + gap`.
fn stepped(t: &KTuple, gap: u64) -> bool {
    let k = t.k();
    let d1 = t.d(1);
    (2..=k - 2).all(|j| t.d(j) + 1 == d1) && t.d(k - 1) + gap == d1
}

/// Whether `t` lies in target class `i` (1..=15); `t` must have `m >= 0`.
pub fn in_target(t: &KTuple, i: u8) -> bool {
    let k = t.k();
    let d1 = t.d(1);
    let dl = t.last_side();
    let (a, b) = (&t.alpha, &t.beta);
    let flat = d1 == dl;
    let ones = |p: &Partition, c: u64| p.len() as u64 == c && p.largest() == 1;
    match i {
        1 => match (1..k - 1).find(|&j| t.d(j) > t.d(j + 1)) {
            Some(j) => {
                let g = &t.gammas[j - 1];
                g.part(1) > g.part(2)
            }
            None => false,
        },
        2 => all_gammas_empty(t) && d1 == 2 && (2..k).all(|j| t.d(j) == 1),
        3 => {
            k >= 4
                && all_gammas_empty(t)
                && (1..=k - 2).all(|j| t.d(j) == d1)
                && dl + 1 == d1
                && d1 >= 2
                && ones(a, d1)
                && ones(b, d1)
        }
        4 => k == 3 && all_gammas_empty(t) && t.d(2) + 1 == d1 && d1 >= 3 && ones(a, d1) && ones(b, d1),
        5 => flat && d1 >= 2 && a.part(1) > a.part(2) && a.part(1) >= 2,
        6 => stepped(t, 2) && d1 >= 3 && all_gammas_empty(t) && a.part(1) + 2 == d1 && a.part(2) == 0,
        7 => stepped(t, 1) && d1 >= 3 && all_gammas_empty(t) && a.is_empty(),
        8 => {
            flat && d1 >= 2
                && a.part(1) >= 1
                && a.part(1) == a.part(2)
                && a.part(1) < d1
                && (d1 - a.part(1)) % 2 == 1
                && b.multiplicity(1) as u64 * 2 > d1 - a.part(1)
        }
        9 => {
            flat && d1 >= 2
                && a.part(1) >= 1
                && a.part(1) == a.part(2)
                && a.part(1) < d1
                && (d1 - a.part(1)).is_multiple_of(2)
        }
        10 => flat && d1 >= 2 && a.part(1) == d1 && a.part(2) == d1 && b.part(1) > b.part(2) && b.part(1) >= 2,
        11 => stepped(t, 1) && d1 >= 3 && all_gammas_empty(t) && a.part(1) + 1 == d1,
        12 => {
            flat && d1 >= 2
                && a.part(1) == d1
                && a.part(2) == d1
                && a.multiplicity(d1 - 1) >= 1
                && b.parts() == [1]
        }
        13 => {
            k >= 4
                && stepped(t, 2)
                && d1 >= 3
                && t.gammas[..k - 3].iter().all(Partition::is_empty)
                && t.gammas[k - 3].parts() == [1]
                && a.part(1) == dl
                && a.part(2) == dl
                && b.is_empty()
        }
        14 => {
            k == 3
                && t.d(2) + 2 == d1
                && d1 >= 4
                && t.gammas[0].parts() == [1, 1]
                && a.part(1) == t.d(2)
                && a.part(1) >= 1
                && a.multiplicity(a.part(1) - 1) >= 1
        }
        15 => {
            k == 3
                && d1 == 2
                && t.d(2) == 2
                && a.part(1) == 1
                && a.part(2) == 1
                && a.part(3) == 1
                && a.len() >= 3
                && b.parts() == [2]
        }
        _ => false,
    }
}

fn require_k3(t: &KTuple) -> Result<()> {
    t.check().map_err(|r| not_in_set("P_k", r))?;
    if t.k() < 3 {
        return Err(not_in_set("P_k", "the injections need k >= 3"));
    }
    Ok(())
}

/// The unique source class of `t`. Tuples with `m < 0` are classified through their
/// reflection.
pub fn classify_source(t: &KTuple) -> Result<u8> {
    require_k3(t)?;
    let t = if t.m() < 0 { t.reflect() } else { t.clone() };
    let hits: Vec<u8> = (1..=16).filter(|&i| in_source(&t, i)).collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        _ => Err(internal(format!("tuple {t} matches source classes {hits:?}"))),
    }
}

/// The target classes containing `t`; at most one for a consistent construction.
pub fn classify_target(t: &KTuple) -> Result<Vec<u8>> {
    require_k3(t)?;
    let t = if t.m() < 0 { t.reflect() } else { t.clone() };
    Ok((1..=15).filter(|&i| in_target(&t, i)).collect())
}

fn ones(c: u64) -> Partition {
    Partition::rectangle(1, c as usize)
}

fn with_parts(p: &[u64]) -> Result<Partition> {
    Partition::new(p.to_vec()).map_err(|e| internal(e.to_string()))
}

fn squares_with(t: &KTuple, first: u64, last: u64) -> Vec<u64> {
    let mut s = t.squares.clone();
    s[0] = first;
    let k = t.k();
    s[k - 2] = last;
    s
}

fn empty_gammas(k: usize) -> Vec<Partition> {
    vec![Partition::empty(); k - 2]
}

/// Applies `σ^i` to a tuple of class `i` with `m >= 0`.
fn sigma_raw(t: &KTuple, i: u8) -> Result<KTuple> {
    let k = t.k();
    let d1 = t.d(1);
    let dl = t.last_side();
    let a = t.alpha.parts();
    let b = t.beta.parts();
    let mut out = t.clone();
    match i {
        1 => {
            let j = (1..k - 1)
                .find(|&j| t.d(j) > t.d(j + 1))
                .ok_or_else(|| internal("class 1 without a strict square drop"))?;
            let mut g = t.gammas[j - 1].parts().to_vec();
            if g.is_empty() {
                g.push(1);
            } else {
                g[0] += 1;
            }
            out.gammas[j - 1] = with_parts(&g)?;
        }
        2 => {
            out.alpha = ones(t.alpha.len() as u64 - 1);
            out.beta = ones(t.beta.len() as u64 - 1);
            out.squares = std::iter::once(2).chain(std::iter::repeat_n(1, k - 2)).collect();
        }
        3 | 4 => {
            out.alpha = ones(d1);
            out.beta = ones(d1);
            out.squares[k - 2] = dl - 1;
        }
        5 => {
            let mut p = a.to_vec();
            p[0] += 1;
            out.alpha = with_parts(&p)?;
        }
        6 => {
            out.alpha = Partition::from_unsorted([a[0] - 1]);
            out.squares = squares_with(t, d1 + 1, dl - 1);
        }
        7 => {
            out.alpha = Partition::empty();
            out.beta = Partition::empty();
            out.squares[0] = d1 + 1;
        }
        8 => {
            let c = (a[0] - a[1]).div_ceil(2);
            let mut p = vec![a[1]];
            p.extend_from_slice(&a[1..]);
            p.extend(std::iter::repeat_n(1, c as usize));
            out.alpha = with_parts(&p)?;
            out.beta = t.beta.union(&ones(c));
        }
        9 => {
            let c = (a[0] - a[1]) / 2;
            let mut p = vec![a[1]];
            p.extend_from_slice(&a[1..]);
            p.extend(std::iter::repeat_n(1, c as usize));
            out.alpha = with_parts(&p)?;
            out.beta = t.beta.union(&Partition::from_unsorted([2])).union(&ones(c - 1));
        }
        10 => {
            let mut p = b.to_vec();
            p[0] += 1;
            out.beta = with_parts(&p)?;
        }
        11 => {
            out.alpha = with_parts(&a[1..])?;
            out.beta = with_parts(&b[1..])?;
            out.squares[0] = d1 + 1;
        }
        12 => {
            let t_idx = a.iter().take_while(|&&v| v == d1).count();
            let mut p = a.to_vec();
            p[t_idx - 1] -= 1;
            p.push(1);
            out.alpha = with_parts(&p)?;
            out.beta = Partition::from_unsorted([1]);
        }
        13 => {
            let mut p = a.to_vec();
            p[0] -= 1;
            p[1] -= 1;
            out.alpha = with_parts(&p)?;
            out.gammas[k - 3] = Partition::from_unsorted([1]);
            out.squares = squares_with(t, d1 + 1, dl - 1);
        }
        14 => {
            let t_idx = a.iter().take_while(|&&v| v + 1 >= d1).count();
            let mut p = vec![a[0] - 1];
            p.extend_from_slice(&a[2..t_idx]);
            p.push(a[1] - 2);
            p.extend_from_slice(&a[t_idx..]);
            out.alpha = with_parts(&p)?;
            out.gammas[0] = Partition::from_unsorted([1, 1]);
            out.squares = vec![d1 + 1, t.d(2) - 1];
        }
        15 => {
            let mut p = vec![a[0] - 1, a[1] - 1, 1];
            p.extend_from_slice(&a[2..]);
            out.alpha = with_parts(&p)?;
            out.beta = Partition::from_unsorted([2]);
        }
        _ => return Err(internal(format!("no injection for class {i}"))),
    }
    Ok(out)
}

/// Candidate preimage under `σ^i`, before any membership checks.
fn zeta_raw(t: &KTuple, i: u8) -> Option<KTuple> {
    let k = t.k();
    let d1 = t.d(1);
    let dl = t.last_side();
    let a = t.alpha.parts();
    let b = t.beta.parts();
    let mut out = t.clone();
    let parts = |p: Vec<u64>| Partition::new(p).ok();
    match i {
        1 => {
            let j = t.gammas.iter().position(|g| !g.is_empty())?;
            let mut g = t.gammas[j].parts().to_vec();
            g[0] -= 1;
            out.gammas[j] = Partition::from_unsorted(g);
        }
        2 => {
            out.alpha = ones(t.alpha.len() as u64 + 1);
            out.beta = ones(t.beta.len() as u64 + 1);
            out.squares = vec![1; k - 1];
        }
        3 | 4 => {
            out.alpha = Partition::empty();
            out.beta = Partition::empty();
            out.squares[k - 2] = dl + 1;
        }
        5 => {
            let mut p = a.to_vec();
            *p.first_mut()? -= 1;
            out.alpha = parts(p)?;
        }
        6 => {
            out.alpha = Partition::from_unsorted([*a.first()? + 1]);
            out.squares = squares_with(t, d1.checked_sub(1)?, dl + 1);
        }
        7 => {
            out.alpha = Partition::from_unsorted([d1.checked_sub(1)?]);
            out.beta = Partition::from_unsorted([d1 - 1]);
            out.squares[0] = d1 - 1;
        }
        8 | 9 => {
            let gap = d1.checked_sub(*a.first()?)?;
            let (c_alpha, c_beta) = if i == 8 { (gap.div_ceil(2), gap.div_ceil(2)) } else { (gap / 2, (gap / 2).checked_sub(1)?) };
            let keep_a = a.len().checked_sub(c_alpha as usize)?;
            if keep_a < 1 {
                return None;
            }
            let mut p = vec![d1];
            p.extend_from_slice(&a[1..keep_a]);
            out.alpha = parts(p)?;
            let mut q = b[..b.len().checked_sub(c_beta as usize)?].to_vec();
            if i == 9 {
                let pos = q.iter().position(|&v| v == 2)?;
                q.remove(pos);
            }
            out.beta = parts(q)?;
        }
        10 => {
            let mut p = b.to_vec();
            *p.first_mut()? -= 1;
            out.beta = Partition::from_unsorted(p);
        }
        11 => {
            let top = d1.checked_sub(1)?;
            let mut p = vec![top];
            p.extend_from_slice(a);
            let mut q = vec![top];
            q.extend_from_slice(b);
            out.alpha = parts(p)?;
            out.beta = parts(q)?;
            out.squares[0] = top;
        }
        12 => {
            let j = a.iter().take_while(|&&v| v == d1).count();
            let mut p = a.to_vec();
            *p.get_mut(j)? += 1;
            p.pop()?;
            out.alpha = parts(p)?;
            out.beta = Partition::empty();
        }
        13 => {
            let mut p = a.to_vec();
            *p.get_mut(0)? += 1;
            *p.get_mut(1)? += 1;
            out.alpha = parts(p)?;
            out.gammas = empty_gammas(k);
            out.squares = squares_with(t, d1.checked_sub(1)?, dl + 1);
        }
        14 => {
            let first = *a.first()?;
            let j = (1..a.len()).find(|&j| a[j] + 1 == first)?;
            let mut p = vec![first + 1, a[j] + 2];
            p.extend_from_slice(&a[1..j]);
            p.extend_from_slice(&a[j + 1..]);
            out.alpha = parts(p)?;
            out.gammas = empty_gammas(k);
            out.squares = vec![d1.checked_sub(1)?, t.d(2) + 1];
        }
        15 => {
            if a.len() < 3 {
                return None;
            }
            let mut p = vec![a[0] + 1, a[1] + 1];
            p.extend_from_slice(&a[2..a.len() - 1]);
            out.alpha = parts(p)?;
            out.beta = Partition::empty();
        }
        _ => return None,
    }
    Some(out)
}

/// Applies the injection for the source class of `t`. Returns the image and the target
/// class it lands in.
pub fn sigma_apply(t: &KTuple) -> Result<(KTuple, u8)> {
    let i = classify_source(t)?;
    if i == 16 {
        return Err(Error::Exceptional(format!(
            "{t} has no image; monotonicity fails at this weight"
        )));
    }
    let flip = t.m() < 0;
    let base = if flip { t.reflect() } else { t.clone() };
    let img = sigma_raw(&base, i)?;
    img.check()
        .map_err(|r| internal(format!("σ^{i} left P_k: {r}")))?;
    if img.weight() != t.weight() + 1 || img.m() != base.m() {
        return Err(internal(format!("σ^{i} broke the weight or rank")));
    }
    if !in_target(&img, i) {
        return Err(internal(format!("σ^{i} image {img} is outside its target class")));
    }
    Ok((if flip { img.reflect() } else { img }, i))
}

/// Left inverse of `σ^i`. Rejects tuples outside the image of `σ^i`.
pub fn zeta_apply(t: &KTuple, i: u8) -> Result<KTuple> {
    require_k3(t)?;
    if !(1..=15).contains(&i) {
        return Err(not_in_set("injection labels", format!("{i} is not in 1..=15")));
    }
    let flip = t.m() < 0;
    let base = if flip { t.reflect() } else { t.clone() };
    let reject = |why: &str| not_in_image(format!("σ^{i}"), format!("{t}: {why}"));
    let pre = zeta_raw(&base, i).ok_or_else(|| reject("shape does not match"))?;
    if pre.check().is_err() || pre.weight() + 1 != base.weight() {
        return Err(reject("candidate preimage is not a valid tuple"));
    }
    if !in_source(&pre, i) || classify_source(&pre)? != i {
        return Err(reject("candidate preimage is in the wrong class"));
    }
    if sigma_raw(&pre, i)? != base {
        return Err(reject("candidate preimage does not map back"));
    }
    Ok(if flip { pre.reflect() } else { pre })
}

/// One `(m, n)` cell of the monotonicity audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityCell {
    pub m: i64,
    pub n: u64,
    pub count: usize,
    pub count_next: usize,
    pub series: i64,
    pub series_next: i64,
    pub decreases: bool,
    pub expected_exception: bool,
    /// Source class sizes, index 0 for class 1.
    pub classes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub k: usize,
    pub m_max: i64,
    pub n_max: u64,
    pub cells: Vec<MonotonicityCell>,
    pub violations: Vec<String>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Whether the count can drop from weight `n` to `n+1`.
pub fn is_exception(k: usize, m: i64, n: u64) -> bool {
    n as i64 == m.abs() + k as i64 - 1 || (k == 3 && m == 0 && n == 8)
}

/// Audits `N_k(m, n+1) >= N_k(m, n)` and the injection behind it for `0 <= m <= m_max`
/// and `k-1 <= n <= n_max`.
pub fn verify_monotonicity(k: usize, m_max: i64, n_max: u64) -> Result<MonotonicityReport> {
    if k < 3 {
        return Err(not_in_set("monotonicity audit", "k must be at least 3"));
    }
    let cap = n_max as usize + 1;
    let series: Vec<Vec<i64>> = (0..=m_max)
        .map(|m| {
            nk_series(k, m, cap)
                .coeffs()
                .iter()
                .map(|c| i64::try_from(c).unwrap_or(i64::MAX))
                .collect()
        })
        .collect();
    let grid: Vec<(i64, u64)> = (0..=m_max)
        .flat_map(|m| (k as u64 - 1..=n_max).map(move |n| (m, n)))
        .collect();
    let results: Vec<(MonotonicityCell, Vec<String>)> = grid
        .par_iter()
        .map(|&(m, n)| audit_cell(k, m, n, &series[m as usize]))
        .collect::<Result<_>>()?;
    let mut cells = Vec::with_capacity(results.len());
    let mut violations = Vec::new();
    for (cell, v) in results {
        cells.push(cell);
        violations.extend(v);
    }
    Ok(MonotonicityReport {
        k,
        m_max,
        n_max,
        cells,
        violations,
    })
}

fn audit_cell(k: usize, m: i64, n: u64, series: &[i64]) -> Result<(MonotonicityCell, Vec<String>)> {
    let here = oracle::k_tuples(k, m, n);
    let next = oracle::k_tuples(k, m, n + 1);
    let mut v = Vec::new();
    let tag = format!("k={k} m={m} n={n}");
    let (s_here, s_next) = (series[n as usize], series[n as usize + 1]);
    if here.len() as i64 != s_here || next.len() as i64 != s_next {
        v.push(format!("{tag}: tuple counts ({}, {}) differ from series ({s_here}, {s_next})", here.len(), next.len()));
    }
    let decreases = next.len() < here.len();
    let expected = is_exception(k, m, n);
    if decreases != expected {
        v.push(format!("{tag}: count goes {} -> {}, exception expected: {expected}", here.len(), next.len()));
    }
    let mut classes = vec![0usize; 16];
    let mut images = HashSet::with_capacity(here.len());
    for t in &here {
        let hits: Vec<u8> = (1..=16).filter(|&i| in_source(t, i)).collect();
        if hits.len() != 1 {
            v.push(format!("{tag}: {t} lies in source classes {hits:?}"));
            continue;
        }
        let i = hits[0];
        classes[i as usize - 1] += 1;
        if i == 16 {
            continue;
        }
        let (img, label) = sigma_apply(t)?;
        let targets: Vec<u8> = (1..=15).filter(|&j| in_target(&img, j)).collect();
        if label != i || targets != [i] {
            v.push(format!("{tag}: σ^{i}({t}) = {img} lies in target classes {targets:?}"));
        }
        if !images.insert(img.clone()) {
            v.push(format!("{tag}: σ is not injective at {img}"));
        }
        match zeta_apply(&img, i) {
            Ok(back) if back == *t => {}
            other => v.push(format!("{tag}: ζ^{i}({img}) gave {other:?}, expected {t}")),
        }
    }
    for t in &next {
        let targets: Vec<u8> = (1..=15).filter(|&j| in_target(t, j)).collect();
        if targets.len() > 1 {
            v.push(format!("{tag}: {t} lies in target classes {targets:?}"));
        }
    }
    let exceptional = classes[15];
    if exceptional != usize::from(expected) {
        v.push(format!("{tag}: {exceptional} exceptional tuples, expected {}", usize::from(expected)));
    }
    Ok((
        MonotonicityCell {
            m,
            n,
            count: here.len(),
            count_next: next.len(),
            series: s_here,
            series_next: s_next,
            decreases,
            expected_exception: expected,
            classes,
        },
        v,
    ))
}
