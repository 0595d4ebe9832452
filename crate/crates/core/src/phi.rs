//! The bijection `φ_M` from pairs `(α, β)` to partitions with at most `N` parts.
//!
//! `α` has at most `N` parts each at most `M`; `β` has parts in `[M+1, M+N]` with
//! unrestricted multiplicities `g_i` of `M+i`. Writing `g_i = d_i (N-i+1) + h_i`, the
//! remainders feed `ψ⁻¹` and the quotients become a staircase added on top.

use serde::Serialize;

use crate::error::{internal, not_in_set, Result};
use crate::partition::{PaddedPartition, Partition};
use crate::psi::{psi_forward, psi_inverse, CElement, DElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AElement {
    pub m: usize,
    pub n: usize,
    pub alpha: Partition,
    pub beta: Partition,
}

impl AElement {
    pub fn weight(&self) -> u64 {
        self.alpha.weight() + self.beta.weight()
    }

    pub fn check(&self) -> std::result::Result<(), String> {
        let (m, n) = (self.m as u64, self.n);
        if self.alpha.len() > n {
            return Err(format!("α has {} parts, more than N = {n}", self.alpha.len()));
        }
        if self.alpha.largest() > m {
            return Err(format!("α has a part larger than M = {m}"));
        }
        if let Some(&v) = self
            .beta
            .parts()
            .iter()
            .find(|&&v| v <= m || v > m + n as u64)
        {
            return Err(format!("β has part {v} outside [{}, {}]", m + 1, m + n as u64));
        }
        Ok(())
    }
}

#[allow(clippy::needless_range_loop)]
pub fn phi_forward(a: &AElement) -> Result<PaddedPartition> {
    a.check().map_err(|r| not_in_set("A_{M,N}", r))?;
    let (m, n) = (a.m, a.n);
    let mut quotients = vec![0u64; n + 1];
    let mut eps = Vec::new();
    for i in 1..=n {
        let value = (m + i) as u64;
        let g = a.beta.multiplicity(value) as u64;
        let width = (n - i + 1) as u64;
        quotients[i] = g / width;
        eps.extend(std::iter::repeat_n(value, (g % width) as usize));
    }
    let d = DElement {
        m,
        pi: Partition::from_unsorted(eps),
        mu: a.alpha.pad(n)?,
    };
    let eta = psi_inverse(&d)?;
    // γ_i = η_i + Σ_{j=i..N} d_{N+1-j} (M+N+1-j)
    let mut gamma = vec![0u64; n];
    let mut stair = 0u64;
    for i in (1..=n).rev() {
        stair += quotients[n + 1 - i] * (m + n + 1 - i) as u64;
        gamma[i - 1] = eta.delta.part(i) + stair;
    }
    let gamma = PaddedPartition::new(gamma).map_err(|e| internal(format!("φ output: {e}")))?;
    if gamma.weight() != a.weight() {
        return Err(internal("φ changed the weight"));
    }
    Ok(gamma)
}

#[allow(clippy::needless_range_loop)]
pub fn phi_inverse(m: usize, gamma: &PaddedPartition) -> Result<AElement> {
    let n = gamma.len();
    let mut quotients = vec![0u64; n + 1];
    let mut remainders = vec![0u64; n + 1];
    for i in 1..=n {
        let diff = gamma.part(i) - gamma.part(i + 1);
        let width = (m + n + 1 - i) as u64;
        quotients[n + 1 - i] = diff / width;
        remainders[n + 1 - i] = diff % width;
    }
    let delta: Vec<u64> = (1..=n).map(|i| remainders[1..=n + 1 - i].iter().sum()).collect();
    let c = CElement {
        m,
        delta: PaddedPartition::new(delta).map_err(|e| internal(format!("φ⁻¹ staircase: {e}")))?,
    };
    let (d, _) = psi_forward(&c)?;
    let mut beta = Vec::new();
    for i in 1..=n {
        let value = (m + i) as u64;
        let count = quotients[i] * (n + 1 - i) as u64 + d.pi.multiplicity(value) as u64;
        beta.extend(std::iter::repeat_n(value, count as usize));
    }
    let a = AElement {
        m,
        n,
        alpha: d.mu.strip(),
        beta: Partition::from_unsorted(beta),
    };
    if a.weight() != gamma.weight() {
        return Err(internal("φ⁻¹ changed the weight"));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked() -> AElement {
        AElement {
            m: 2,
            n: 10,
            alpha: "2,1,1,1,1,1,1,1".parse().unwrap(),
            beta: "3^2,4^3,5^3,6^2,7,8^10,9^7,10^8,11^2,12^2".parse().unwrap(),
        }
    }

    #[test]
    fn worked_example() {
        let a = worked();
        assert_eq!(a.weight(), 330);
        let g = phi_forward(&a).unwrap();
        assert_eq!(g, "108,82,65,37,22,6,5,3,1,1".parse().unwrap());
        assert_eq!(phi_inverse(2, &g).unwrap(), a);
    }

    #[test]
    fn empty_beta_pads_alpha() {
        let a = AElement {
            m: 3,
            n: 4,
            alpha: "3,2,2".parse().unwrap(),
            beta: Partition::empty(),
        };
        assert_eq!(phi_forward(&a).unwrap(), "3,2,2,0".parse().unwrap());
    }

    #[test]
    fn small_instance_from_the_k_rank_example() {
        let a = AElement {
            m: 2,
            n: 3,
            alpha: "2,1".parse().unwrap(),
            beta: "4,3,3".parse().unwrap(),
        };
        let g = phi_forward(&a).unwrap();
        assert_eq!(g, "7,4,2".parse().unwrap());
        assert_eq!(phi_inverse(2, &g).unwrap(), a);
    }

    #[test]
    fn zero_width_and_zero_length() {
        let a = AElement {
            m: 0,
            n: 2,
            alpha: Partition::empty(),
            beta: "2,1,1,1".parse().unwrap(),
        };
        let g = phi_forward(&a).unwrap();
        assert_eq!(phi_inverse(0, &g).unwrap(), a);
        let empty = AElement {
            m: 4,
            n: 0,
            alpha: Partition::empty(),
            beta: Partition::empty(),
        };
        assert_eq!(phi_forward(&empty).unwrap().len(), 0);
    }

    #[test]
    fn rejects_out_of_range() {
        let a = AElement {
            m: 1,
            n: 2,
            alpha: "2".parse().unwrap(),
            beta: Partition::empty(),
        };
        assert!(phi_forward(&a).is_err());
    }
}
