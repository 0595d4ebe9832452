//! The correspondence `χ` from `R_{k,m}` (a partition `λ` plus a forced partition `δ`) to
//! `S_{k,m}` (a Durfee-square profile `s`, and partitions `α, β, γ, ξ`).
//!
//! `λ` is cut along successive rectangles with `n_i` rows and `n_i + 2|m|` columns. The
//! pieces right of and below each rectangle are pushed through `φ` twice, which moves
//! `|m|` columns from each rectangle into a square of side `s_i = n_i + |m|`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{internal, not_in_set, Result};
use crate::partition::{PaddedPartition, Partition};
use crate::phi::{phi_forward, phi_inverse, AElement};

/// `(2k+1)(m-i) + k + 1` for `i = 1..m` when `m >= 0`, and `(2k+1)(|m|-i) + k` otherwise.
pub fn delta_of(k: usize, m: i64) -> Partition {
    let a = m.unsigned_abs();
    let k = k as u64;
    let shift = if m >= 0 { k + 1 } else { k };
    Partition::from_unsorted((1..=a).map(|i| (2 * k + 1) * (a - i) + shift))
}

/// `(m, .., 1)` when `m >= 0`, and `(|m|-1, .., 1)` otherwise.
pub fn gamma_of(m: i64) -> Partition {
    let top = if m >= 0 { m as u64 } else { m.unsigned_abs() - 1 };
    Partition::from_unsorted((1..=top).rev())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RElement {
    pub k: usize,
    pub m: i64,
    pub lambda: Partition,
}

impl RElement {
    /// Checks a supplied `δ` against the forced one.
    pub fn with_delta(k: usize, m: i64, lambda: Partition, delta: &Partition) -> Result<Self> {
        if *delta != delta_of(k, m) {
            return Err(not_in_set(
                "R_{k,m}",
                format!("δ must be ({}) for k={k}, m={m}", delta_of(k, m)),
            ));
        }
        Ok(Self { k, m, lambda })
    }

    pub fn delta(&self) -> Partition {
        delta_of(self.k, self.m)
    }

    pub fn weight(&self) -> u64 {
        self.lambda.weight() + self.delta().weight()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SElement {
    pub k: usize,
    pub m: i64,
    pub s: Vec<u64>,
    pub alpha: Partition,
    pub beta: Partition,
    pub gamma: Partition,
    pub xi: Partition,
}

impl SElement {
    pub fn weight(&self) -> u64 {
        self.alpha.weight() + self.beta.weight() + self.gamma.weight() + self.xi.weight()
    }

    pub fn check(&self) -> std::result::Result<(), String> {
        let k = self.k;
        let a = self.m.unsigned_abs();
        if k == 0 {
            return Err("k must be positive".into());
        }
        if self.s.len() != k || self.s.windows(2).any(|w| w[0] < w[1]) {
            return Err(format!("s must be {k} non-increasing sides"));
        }
        let sk = self.s[k - 1];
        if sk < a {
            return Err(format!("s_k = {sk} is smaller than |m| = {a}"));
        }
        if self.alpha.durfee_chain(k).sides() != self.s.as_slice() {
            return Err("successive Durfee sides of α differ from s".into());
        }
        let covered: u64 = self.s.iter().sum();
        if self.alpha.len() as u64 != covered {
            return Err("α has rows below its k-th Durfee square".into());
        }
        if self.alpha.parts().last().is_some_and(|&p| p < sk) {
            return Err(format!("α has a part smaller than s_k = {sk}"));
        }
        if self.beta.parts().iter().any(|&v| v <= sk || v > 2 * sk) {
            return Err(format!("β parts must lie in ({sk}, {}]", 2 * sk));
        }
        if self.gamma != gamma_of(self.m) {
            return Err(format!("γ must be ({})", gamma_of(self.m)));
        }
        let rows = (sk as i64 + self.m) as usize;
        let cols = (sk as i64 - self.m) as u64;
        if self.xi.len() > rows || self.xi.largest() > cols {
            return Err(format!("ξ must fit in {rows} rows of length at most {cols}"));
        }
        Ok(())
    }
}

/// Rectangle sides `n_1..n_k` and the pieces cut from `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaDecomposition {
    pub n: Vec<u64>,
    /// Rows of the first rectangle, minus its columns.
    pub t: Partition,
    /// `r^i`: columns of `T` with length in `[n_{i+1}+1, n_i]`, read as parts.
    pub r: Vec<Partition>,
    /// `b^i` for `i < k`: rows of rectangle `i+1` beyond its columns; `b^k`: rows below.
    pub b: Vec<Partition>,
}

pub fn decompose(lambda: &Partition, k: usize, m: i64) -> LambdaDecomposition {
    let two_a = 2 * m.unsigned_abs();
    let n = lambda.durfee_rectangle_chain(two_a, k);
    let parts = lambda.parts();
    let mut start = 0usize;
    let mut t = Partition::empty();
    let mut b = Vec::with_capacity(k);
    for (i, &ni) in n.iter().enumerate() {
        let rows = &parts[start..start + ni as usize];
        let piece = Partition::from_unsorted(rows.iter().map(|&v| v - ni - two_a));
        if i == 0 {
            t = piece;
        } else {
            b.push(piece);
        }
        start += ni as usize;
    }
    b.push(lambda.rows_below(start));
    let tc = t.conjugate();
    let r = (0..k)
        .map(|i| {
            let lo = if i + 1 < k { n[i + 1] + 1 } else { 1 };
            tc.parts_between(lo, n[i])
        })
        .collect();
    LambdaDecomposition { n, t, r, b }
}

/// Rebuilds `λ` from the rectangles and pieces.
pub fn reassemble(d: &LambdaDecomposition, m: i64) -> Partition {
    let two_a = 2 * m.unsigned_abs();
    let k = d.n.len();
    let t = d.r.iter().fold(Partition::empty(), |acc, r| acc.union(r)).conjugate();
    let mut rows = Vec::new();
    for i in 0..k {
        let ni = d.n[i];
        let extra = if i == 0 { &t } else { &d.b[i - 1] };
        rows.extend((1..=ni as usize).map(|j| ni + two_a + extra.part(j)));
    }
    rows.extend_from_slice(d.b[k - 1].parts());
    Partition::from_unsorted(rows)
}

/// Every intermediate object of the ten steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiSteps {
    pub decomposition: LambdaDecomposition,
    /// `ν^i = φ_{n_{i+1}}((b^i)', r^i)`.
    pub nu: Vec<PaddedPartition>,
    /// `(b̄^i, r̄^i) = φ⁻¹_{n_{i+1}+|m|}(ν^i)`.
    pub b_bar: Vec<Partition>,
    pub r_bar: Vec<Partition>,
    /// `φ⁻¹_{n_k+2|m|}((r^k)')`.
    pub r_k1: Partition,
    pub r_k2: Partition,
    /// `b^k` split at `n_k + |m|`.
    pub b_k1: Partition,
    pub b_k2: Partition,
    /// `ℛ = r̄^1 ∪ .. ∪ r̄^{k-1} ∪ b^{k,1}`.
    pub script_r: Partition,
    pub result: SElement,
}

pub fn chi_forward(r: &RElement) -> Result<SElement> {
    Ok(chi_forward_steps(r)?.result)
}

pub fn chi_forward_steps(r: &RElement) -> Result<ChiSteps> {
    let (k, m) = (r.k, r.m);
    if k == 0 {
        return Err(not_in_set("R_{k,m}", "k must be positive"));
    }
    let a = m.unsigned_abs();
    let dec = decompose(&r.lambda, k, m);
    let n = &dec.n;

    let mut nu = Vec::new();
    let mut b_bar = Vec::new();
    let mut r_bar = Vec::new();
    for i in 0..k - 1 {
        let (hi, lo) = (n[i], n[i + 1]);
        let width = (hi - lo) as usize;
        let v = phi_forward(&AElement {
            m: lo as usize,
            n: width,
            alpha: dec.b[i].conjugate(),
            beta: dec.r[i].clone(),
        })?;
        let back = phi_inverse((lo + a) as usize, &v)?;
        nu.push(v);
        b_bar.push(back.alpha);
        r_bar.push(back.beta);
    }

    let nk = n[k - 1];
    let split = phi_inverse((nk + 2 * a) as usize, &dec.r[k - 1].conjugate().pad(nk as usize)?)?;
    let (r_k1, r_k2) = (split.alpha, split.beta);
    let bk = &dec.b[k - 1];
    let b_k1 = bk.parts_between(1, nk + a);
    let b_k2 = bk.parts_between(nk + a + 1, u64::MAX);

    let s: Vec<u64> = n.iter().map(|&v| v + a).collect();
    let mut script_parts: Vec<u64> = Vec::new();
    for rb in &r_bar {
        script_parts.extend_from_slice(rb.parts());
    }
    script_parts.extend_from_slice(b_k1.parts());
    let script_r = Partition::new(script_parts)
        .map_err(|e| internal(format!("stacked pieces are out of order: {e}")))?;

    let mut rows = Vec::new();
    for (i, &side) in s.iter().enumerate() {
        let extra = if i == 0 { script_r.conjugate() } else { b_bar[i - 1].conjugate() };
        if extra.len() as u64 > side {
            return Err(internal(format!("piece for square {} is too tall", i + 1)));
        }
        rows.extend((1..=side as usize).map(|j| side + extra.part(j)));
    }
    let alpha = Partition::new(rows).map_err(|e| internal(format!("α assembly: {e}")))?;
    let xi = if m >= 0 { r_k1.conjugate() } else { r_k1.clone() };
    let result = SElement {
        k,
        m,
        s,
        alpha,
        beta: r_k2.union(&b_k2),
        gamma: gamma_of(m),
        xi,
    };
    result
        .check()
        .map_err(|e| internal(format!("χ left S: {e}")))?;
    if result.weight() != r.weight() {
        return Err(internal("χ changed the weight"));
    }
    Ok(ChiSteps {
        decomposition: dec,
        nu,
        b_bar,
        r_bar,
        r_k1,
        r_k2,
        b_k1,
        b_k2,
        script_r,
        result,
    })
}

pub fn chi_inverse(s: &SElement) -> Result<RElement> {
    s.check().map_err(|r| not_in_set("S_{k,m}", r))?;
    let (k, m) = (s.k, s.m);
    let a = m.unsigned_abs();
    let n: Vec<u64> = s.s.iter().map(|&v| v - a).collect();
    let nk = n[k - 1];

    let r_k1 = if m >= 0 { s.xi.conjugate() } else { s.xi.clone() };
    let r_k2 = s.beta.parts_between(nk + 2 * a + 1, u64::MAX);
    let b_k2 = s.beta.parts_between(1, nk + 2 * a);

    let mut start = 0usize;
    let mut blocks = Vec::with_capacity(k);
    for &side in &s.s {
        let rows = &s.alpha.parts()[start..start + side as usize];
        blocks.push(Partition::from_unsorted(rows.iter().map(|&v| v - side)).conjugate());
        start += side as usize;
    }
    let script_r = &blocks[0];

    let mut r = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    for i in 0..k - 1 {
        let (hi, lo) = (n[i], n[i + 1]);
        let width = (hi - lo) as usize;
        let v = phi_forward(&AElement {
            m: (lo + a) as usize,
            n: width,
            alpha: blocks[i + 1].clone(),
            beta: script_r.parts_between(lo + a + 1, hi + a),
        })?;
        let back = phi_inverse(lo as usize, &v)?;
        b.push(back.alpha.conjugate());
        r.push(back.beta);
    }
    let rho = phi_forward(&AElement {
        m: (nk + 2 * a) as usize,
        n: nk as usize,
        alpha: r_k1,
        beta: r_k2,
    })?;
    r.push(rho.strip().conjugate());
    b.push(script_r.parts_between(1, nk + a).union(&b_k2));

    let dec = LambdaDecomposition {
        n,
        t: Partition::empty(),
        r,
        b,
    };
    let lambda = reassemble(&dec, m);
    let out = RElement { k, m, lambda };
    if out.weight() != s.weight() {
        return Err(internal("χ⁻¹ changed the weight"));
    }
    Ok(out)
}

/// Labelled dump of every intermediate object.
pub fn render_steps(st: &ChiSteps) -> String {
    let mut out = String::new();
    let d = &st.decomposition;
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    let _ = writeln!(out, "n = ({})", join(&d.n));
    let _ = writeln!(out, "T = ({})  T' = ({})", d.t, d.t.conjugate());
    for (i, r) in d.r.iter().enumerate() {
        let _ = writeln!(out, "r^{} = ({})", i + 1, r);
    }
    for (i, b) in d.b.iter().enumerate() {
        let _ = writeln!(out, "b^{} = ({})", i + 1, b);
    }
    for (i, v) in st.nu.iter().enumerate() {
        let _ = writeln!(out, "ν^{} = ({})", i + 1, v);
    }
    for (i, (bb, rb)) in st.b_bar.iter().zip(&st.r_bar).enumerate() {
        let _ = writeln!(out, "b̄^{0} = ({1})  r̄^{0} = ({2})", i + 1, bb, rb);
    }
    let k = d.n.len();
    let _ = writeln!(out, "r^{{{k},1}} = ({})  r^{{{k},2}} = ({})", st.r_k1, st.r_k2);
    let _ = writeln!(out, "b^{{{k},1}} = ({})  b^{{{k},2}} = ({})", st.b_k1, st.b_k2);
    let _ = writeln!(out, "ℛ = ({})", st.script_r);
    let res = &st.result;
    let _ = writeln!(out, "s = ({})", join(&res.s));
    let _ = writeln!(
        out,
        "(α, β, γ, ξ) = (({}), ({}), ({}), ({}))",
        res.alpha, res.beta, res.gamma, res.xi
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn worked() -> RElement {
        RElement::with_delta(3, 1, p("11,10,10,9,8,7,6,5,5,4,3,1,1"), &p("4")).unwrap()
    }

    #[test]
    fn forced_partitions() {
        assert_eq!(delta_of(3, 1), p("4"));
        assert_eq!(delta_of(2, -2), p("7,2"));
        assert_eq!(gamma_of(-2), p("1"));
        assert!(delta_of(4, 0).is_empty() && gamma_of(0).is_empty());
        for k in 1..=6 {
            for m in -6i64..=6 {
                let lhs = delta_of(k, m).weight() - gamma_of(m).weight();
                assert_eq!(lhs, k as u64 * (m * m) as u64, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn worked_decomposition() {
        let d = decompose(&worked().lambda, 3, 1);
        assert_eq!(d.n, vec![5, 3, 2]);
        assert_eq!(d.t, p("4,3,3,2,1"));
        assert_eq!(d.t.conjugate(), p("5,4,3,1"));
        assert_eq!(d.r, vec![p("5,4"), p("3"), p("1")]);
        assert_eq!(d.b, vec![p("2,1"), p("1"), p("3,1,1")]);
        assert_eq!(reassemble(&d, 1), worked().lambda);
    }

    #[test]
    fn worked_forward_and_back() {
        let st = chi_forward_steps(&worked()).unwrap();
        assert_eq!(st.nu, vec!["10,2".parse().unwrap(), "4".parse().unwrap()]);
        assert_eq!(st.b_bar[0], p("4,2"));
        assert_eq!(st.r_bar, vec![p("6"), p("4")]);
        assert_eq!(st.script_r, p("6,4,3,1,1"));
        let s = &st.result;
        assert_eq!(s.s, vec![6, 4, 3]);
        assert_eq!(s.alpha, p("11,9,9,8,7,7,6,6,5,5,3,3,3"));
        assert!(s.beta.is_empty());
        assert_eq!(s.gamma, p("1"));
        assert_eq!(s.xi, p("1"));
        assert_eq!(s.weight(), 84);
        assert_eq!(chi_inverse(s).unwrap(), worked());
    }

    #[test]
    fn empty_input() {
        for k in 1..=4 {
            let r = RElement {
                k,
                m: 0,
                lambda: Partition::empty(),
            };
            let s = chi_forward(&r).unwrap();
            assert_eq!(s.s, vec![0; k]);
            assert!(s.alpha.is_empty() && s.beta.is_empty() && s.xi.is_empty());
            assert_eq!(chi_inverse(&s).unwrap(), r);
        }
    }

    #[test]
    fn negative_m_round_trip() {
        let r = RElement {
            k: 2,
            m: -1,
            lambda: p("6,5,3,3,2,1"),
        };
        let s = chi_forward(&r).unwrap();
        assert_eq!(chi_inverse(&s).unwrap(), r);
    }

    #[test]
    fn rejects_wrong_delta_and_bad_profiles() {
        assert!(RElement::with_delta(3, 1, p("1"), &p("3")).is_err());
        let bad = SElement {
            k: 1,
            m: 1,
            s: vec![0],
            alpha: Partition::empty(),
            beta: Partition::empty(),
            gamma: p("1"),
            xi: Partition::empty(),
        };
        assert!(chi_inverse(&bad).is_err());
    }
}
