//! Zeilberger's Algorithm Z: merges `ξ` (N entries) with `δ` (M entries) into `α` (M+N
//! entries) and records how far each `δ_i` was shifted in `γ`.

use serde::Serialize;

use crate::error::{internal, not_in_image, not_in_set, Result};
use crate::partition::{PaddedPartition, Partition};
use crate::phi::{phi_forward, phi_inverse, AElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ZInput {
    pub xi: PaddedPartition,
    pub delta: PaddedPartition,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ZOutput {
    pub alpha: PaddedPartition,
    /// Non-increasing, entries in `[0, N]`.
    pub gamma: Vec<usize>,
}

impl ZInput {
    pub fn weight(&self) -> u64 {
        self.xi.weight() + self.delta.weight()
    }
}

impl ZOutput {
    pub fn weight(&self) -> u64 {
        self.alpha.weight() + self.gamma.iter().map(|&g| g as u64).sum::<u64>()
    }
}

/// `γ'_j = #{i : γ_i >= j}` for `j = 1..=n`, stored at index `j - 1`.
pub(crate) fn conjugate_counts(gamma: &[usize], n: usize) -> Vec<usize> {
    (1..=n).map(|j| gamma.iter().filter(|&&g| g >= j).count()).collect()
}

/// The unique `g` in `[0, N]` with `ξ_{N-g} >= δ_i - g >= ξ_{N-g+1}`, where `ξ_0 = ∞` and
/// `ξ_{N+1} = 0`.
fn shift_of(xi: &PaddedPartition, d: u64) -> Result<usize> {
    let n = xi.len();
    let fits = |g: usize| {
        let v = d as i64 - g as i64;
        let upper = xi.part(n - g);
        let lower = xi.part(n - g + 1) as i64;
        (upper == u64::MAX || v <= upper as i64) && v >= lower
    };
    let g = (0..=n)
        .find(|&g| fits(g))
        .ok_or_else(|| internal(format!("no shift found for part {d}")))?;
    debug_assert!(
        (g + 1..=n).all(|h| !fits(h)),
        "shift of part {d} is not unique"
    );
    Ok(g)
}

pub fn gamma_forward(input: &ZInput) -> Result<ZOutput> {
    let xi = &input.xi;
    let delta = &input.delta;
    let n = xi.len();
    let m = delta.len();
    let gamma = delta
        .parts()
        .iter()
        .map(|&d| shift_of(xi, d))
        .collect::<Result<Vec<_>>>()?;
    let conj = conjugate_counts(&gamma, n);

    let mut slots: Vec<Option<u64>> = vec![None; m + n];
    let mut place = |pos: usize, v: u64| -> Result<()> {
        match slots.get_mut(pos - 1) {
            Some(slot @ None) => {
                *slot = Some(v);
                Ok(())
            }
            _ => Err(internal(format!("merge position {pos} reused or out of range"))),
        }
    };
    for t in 1..=n {
        place(t + conj[n - t], xi.part(t))?;
    }
    for (i, &g) in gamma.iter().enumerate() {
        place(n - g + i + 1, delta.part(i + 1) - g as u64)?;
    }
    let alpha = PaddedPartition::new(slots.into_iter().map(|s| s.unwrap_or_default()).collect())
        .map_err(|e| internal(format!("merged sequence is not a partition: {e}")))?;
    let out = ZOutput { alpha, gamma };
    if out.weight() != input.weight() {
        return Err(internal("Algorithm Z changed the weight"));
    }
    Ok(out)
}

/// Reads `δ_i = α_{N-γ_i+i} + γ_i` and the remaining positions as `ξ`.
pub fn gamma_inverse(out: &ZOutput, n: usize, m: usize) -> Result<ZInput> {
    let alpha = &out.alpha;
    let gamma = &out.gamma;
    if alpha.len() != m + n || gamma.len() != m {
        return Err(not_in_set(
            "Algorithm Z outputs",
            format!("expected {} merged entries and {m} shifts", m + n),
        ));
    }
    if gamma.iter().any(|&g| g > n) || gamma.windows(2).any(|w| w[0] < w[1]) {
        return Err(not_in_set(
            "Algorithm Z outputs",
            format!("shifts must be non-increasing in [0, {n}]"),
        ));
    }
    let mut taken = vec![false; m + n];
    let mut delta = Vec::with_capacity(m);
    for (i, &g) in gamma.iter().enumerate() {
        let pos = n - g + i + 1;
        if pos == 0 || pos > m + n || taken[pos - 1] {
            return Err(not_in_image("Algorithm Z", "shift positions are not a permutation"));
        }
        taken[pos - 1] = true;
        delta.push(alpha.part(pos) + g as u64);
    }
    let xi: Vec<u64> = (1..=m + n)
        .filter(|&p| !taken[p - 1])
        .map(|p| alpha.part(p))
        .collect();
    let input = ZInput {
        xi: PaddedPartition::new(xi).map_err(|e| not_in_image("Algorithm Z", e.to_string()))?,
        delta: PaddedPartition::new(delta).map_err(|e| not_in_image("Algorithm Z", e.to_string()))?,
    };
    if gamma_forward(&input)? != *out {
        return Err(not_in_image("Algorithm Z", "reconstruction does not merge back"));
    }
    Ok(input)
}

/// The bijection in its conjugated form: `ξ` with at most `N` parts and `δ` with parts at
/// most `M` map to `α` with parts at most `M+N` and `γ` with `N` parts each at most `M`.
pub fn gamma_conjugated(
    xi: &Partition,
    delta: &Partition,
    n: usize,
    m: usize,
) -> Result<(Partition, PaddedPartition)> {
    if delta.largest() > m as u64 {
        return Err(not_in_set("partitions with parts at most M", delta.to_string()));
    }
    let input = ZInput {
        xi: xi.pad(n)?,
        delta: delta.conjugate().pad(m)?,
    };
    let out = gamma_forward(&input)?;
    let gamma = Partition::from_unsorted(out.gamma.iter().map(|&g| g as u64))
        .conjugate()
        .pad(n)?;
    Ok((out.alpha.strip().conjugate(), gamma))
}

/// Inverse of [`gamma_conjugated`].
pub fn gamma_conjugated_inverse(
    alpha: &Partition,
    gamma: &PaddedPartition,
    n: usize,
    m: usize,
) -> Result<(Partition, Partition)> {
    if alpha.largest() > (m + n) as u64 || gamma.len() != n || gamma.part(1) > m as u64 {
        return Err(not_in_set(
            "Algorithm Z outputs",
            "expected parts of alpha at most M+N and N shifts at most M",
        ));
    }
    let shifts = gamma.strip().conjugate().pad(m)?;
    let out = ZOutput {
        alpha: alpha.conjugate().pad(m + n)?,
        gamma: shifts.parts().iter().map(|&g| g as usize).collect(),
    };
    let input = gamma_inverse(&out, n, m)?;
    Ok((input.xi.strip(), input.delta.strip().conjugate()))
}

/// A bijection in the conjugated form whose `α` keeps `δ` as its parts at most `M`:
/// `φ_M⁻¹(ξ) = (α', β)` gives `α = δ ∪ β` and `γ = α'` padded to `N` entries.
pub fn refined_forward(xi: &Partition, delta: &Partition, n: usize, m: usize) -> Result<(Partition, PaddedPartition)> {
    if delta.largest() > m as u64 {
        return Err(not_in_set("partitions with parts at most M", delta.to_string()));
    }
    let a = phi_inverse(m, &xi.pad(n)?)?;
    Ok((delta.union(&a.beta), a.alpha.pad(n)?))
}

/// Inverse of [`refined_forward`].
pub fn refined_inverse(alpha: &Partition, gamma: &PaddedPartition, n: usize, m: usize) -> Result<(Partition, Partition)> {
    if alpha.largest() > (m + n) as u64 || gamma.len() != n || gamma.part(1) > m as u64 {
        return Err(not_in_set(
            "Algorithm Z outputs",
            "expected parts of alpha at most M+N and N shifts at most M",
        ));
    }
    let m64 = m as u64;
    let a = AElement {
        m,
        n,
        alpha: gamma.strip(),
        beta: alpha.parts_between(m64 + 1, m64 + n as u64),
    };
    let xi = phi_forward(&a)?.strip();
    Ok((xi, alpha.parts_between(1, m64)))
}
