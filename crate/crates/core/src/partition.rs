//! Integer partitions and the geometric statistics built on their Ferrers diagrams.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite non-increasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
    weight: u64,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates that `parts` is non-increasing and strictly positive.
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!(
                "part {} is zero; zero parts are only allowed in padded partitions",
                pos + 1
            )));
        }
        check_non_increasing(&parts)?;
        let weight = parts.iter().sum();
        Ok(Self { parts, weight })
    }

    /// Sorts the values into non-increasing order and discards zeros.
    pub fn from_unsorted<I: IntoIterator<Item = u64>>(values: I) -> Self {
        let mut parts: Vec<u64> = values.into_iter().filter(|&v| v > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let weight = parts.iter().sum();
        Self { parts, weight }
    }

    /// `count` copies of `value`.
    pub fn rectangle(value: u64, count: usize) -> Self {
        if value == 0 {
            return Self::empty();
        }
        Self {
            parts: vec![value; count],
            weight: value * count as u64,
        }
    }

    pub fn from_frequencies(freq: &FrequencyView) -> Self {
        Self::from_unsorted(
            freq.0
                .iter()
                .flat_map(|(&v, &c)| std::iter::repeat_n(v, c)),
        )
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    /// Largest part, 0 for the empty partition.
    pub fn largest(&self) -> u64 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// The `j`-th part counting from 1; 0 past the end and `u64::MAX` at index 0.
    pub fn part(&self, j: usize) -> u64 {
        if j == 0 {
            return u64::MAX;
        }
        self.parts.get(j - 1).copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, value: u64) -> usize {
        self.parts.iter().filter(|&&p| p == value).count()
    }

    pub fn frequencies(&self) -> FrequencyView {
        let mut map = BTreeMap::new();
        for &p in &self.parts {
            *map.entry(p).or_insert(0) += 1;
        }
        FrequencyView(map)
    }

    pub fn conjugate(&self) -> Self {
        let width = self.largest() as usize;
        let mut parts = vec![0u64; width];
        for &p in &self.parts {
            for slot in parts.iter_mut().take(p as usize) {
                *slot += 1;
            }
        }
        Self {
            parts,
            weight: self.weight,
        }
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &Self) -> Self {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.len() || j < other.len() {
            let take_left = j >= other.len() || (i < self.len() && self.parts[i] >= other.parts[j]);
            if take_left {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        Self {
            parts,
            weight: self.weight + other.weight,
        }
    }

    /// Parts `v` with `lo <= v <= hi`.
    pub fn parts_between(&self, lo: u64, hi: u64) -> Self {
        Self::from_unsorted(self.parts.iter().copied().filter(|&v| lo <= v && v <= hi))
    }

    /// The rows strictly below the first `rows` rows.
    pub fn rows_below(&self, rows: usize) -> Self {
        Self::from_unsorted(self.parts.iter().skip(rows).copied())
    }

    /// Side of the Durfee square: the largest `j` with `λ_j >= j`.
    pub fn durfee_side(&self) -> u64 {
        self.rectangle_side(0)
    }

    /// Rows of the largest rectangle with `j` rows and `j + extra` columns.
    fn rectangle_side(&self, extra: u64) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .take_while(|&(i, &p)| p >= i as u64 + 1 + extra)
            .count() as u64
    }

    /// Successive Durfee squares, each taken on the rows strictly below the previous one.
    pub fn durfee_chain(&self, depth: usize) -> DurfeeChain {
        let mut sides = Vec::with_capacity(depth);
        let mut start = 0usize;
        for _ in 0..depth {
            let rest = Self::from_unsorted(self.parts.iter().skip(start).copied());
            let d = rest.durfee_side();
            sides.push(d);
            start += d as usize;
        }
        DurfeeChain(sides)
    }

    /// Successive rectangles with `n_i` rows and `n_i + two_m` columns, each taken on the
    /// rows strictly below the previous rectangle.
    pub fn durfee_rectangle_chain(&self, two_m: u64, depth: usize) -> Vec<u64> {
        let mut sides = Vec::with_capacity(depth);
        let mut start = 0usize;
        for _ in 0..depth {
            let n = self.parts[start.min(self.len())..]
                .iter()
                .enumerate()
                .take_while(|&(i, &p)| p >= i as u64 + 1 + two_m)
                .count();
            sides.push(n as u64);
            start += n;
        }
        sides
    }

    /// Garvan's k-rank. Zero when the partition has fewer than `k - 1` Durfee squares.
    pub fn k_rank(&self, k: usize) -> i64 {
        assert!(k >= 2, "k-rank needs k >= 2");
        let chain = self.durfee_chain(k - 1);
        let last = chain.side(k - 1);
        if last == 0 {
            return 0;
        }
        let d1 = chain.side(1) as usize;
        let columns = self
            .conjugate()
            .parts
            .iter()
            .skip(d1)
            .filter(|&&c| c <= last)
            .count();
        let covered: u64 = chain.sides().iter().sum();
        let below = self.len() - covered as usize;
        columns as i64 - below as i64
    }

    pub fn pad(&self, n: usize) -> Result<PaddedPartition> {
        if self.len() > n {
            return Err(Error::InvalidPartition(format!(
                "cannot pad a partition with {} parts to length {}",
                self.len(),
                n
            )));
        }
        let mut parts = self.parts.clone();
        parts.resize(n, 0);
        Ok(PaddedPartition { parts })
    }

    /// ASCII Ferrers diagram, one row per part.
    pub fn ferrers(&self) -> String {
        self.parts
            .iter()
            .map(|&p| "*".repeat(p as usize))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Ascending `v^c` notation, e.g. `3^2,4^3,7`.
    pub fn frequency_string(&self) -> String {
        self.frequencies().to_string()
    }
}

fn check_non_increasing(parts: &[u64]) -> Result<()> {
    if let Some(i) = parts.windows(2).position(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(format!(
            "parts {} and {} increase ({} < {})",
            i + 1,
            i + 2,
            parts[i],
            parts[i + 1]
        )));
    }
    Ok(())
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma(f, &self.parts)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts the flat form `5,3,3`, the exponent form `3^2,5`, and ascending multiset
    /// notation such as `1,3,3,5`. Lists that go both up and down are rejected.
    fn from_str(s: &str) -> Result<Self> {
        let values = parse_values(s)?;
        if values.contains(&0) {
            return Err(Error::InvalidPartition(
                "zero parts are only allowed in padded partitions".into(),
            ));
        }
        if s.contains('^') || values.windows(2).all(|w| w[0] <= w[1]) {
            Ok(Self::from_unsorted(values))
        } else {
            Self::new(values)
        }
    }
}

fn write_comma(f: &mut fmt::Formatter<'_>, parts: &[u64]) -> fmt::Result {
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    Ok(())
}

fn parse_values(s: &str) -> Result<Vec<u64>> {
    let s = s.trim();
    let s = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s)
        .trim();
    if s.is_empty() || s == "∅" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for item in s.split(',') {
        let item = item.trim();
        let (value, count) = match item.split_once('^') {
            Some((v, c)) => (v.trim(), c.trim()),
            None => (item, "1"),
        };
        let value: u64 = value
            .parse()
            .map_err(|_| Error::InvalidPartition(format!("`{item}` is not a non-negative integer")))?;
        let count: usize = count
            .parse()
            .map_err(|_| Error::InvalidPartition(format!("bad multiplicity in `{item}`")))?;
        out.extend(std::iter::repeat_n(value, count));
    }
    Ok(out)
}

/// A fixed-length non-increasing sequence of non-negative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PaddedPartition {
    parts: Vec<u64>,
}

impl PaddedPartition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        check_non_increasing(&parts)?;
        Ok(Self { parts })
    }

    pub fn zeros(n: usize) -> Self {
        Self { parts: vec![0; n] }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// The `j`-th entry counting from 1; 0 past the end and `u64::MAX` at index 0.
    pub fn part(&self, j: usize) -> u64 {
        if j == 0 {
            return u64::MAX;
        }
        self.parts.get(j - 1).copied().unwrap_or(0)
    }

    pub fn strip(&self) -> Partition {
        Partition::from_unsorted(self.parts.iter().copied())
    }
}

impl TryFrom<Vec<u64>> for PaddedPartition {
    type Error = Error;
    fn try_from(parts: Vec<u64>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<PaddedPartition> for Vec<u64> {
    fn from(p: PaddedPartition) -> Self {
        p.parts
    }
}

impl fmt::Display for PaddedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_comma(f, &self.parts)
    }
}

impl FromStr for PaddedPartition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_values(s)?)
    }
}

/// Part value to multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrequencyView(pub BTreeMap<u64, usize>);

impl FrequencyView {
    pub fn get(&self, value: u64) -> usize {
        self.0.get(&value).copied().unwrap_or(0)
    }
}

impl fmt::Display for FrequencyView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, c)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if *c == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{c}")?;
            }
        }
        Ok(())
    }
}

/// Sides `d_1 >= d_2 >= ...` of successive Durfee squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DurfeeChain(Vec<u64>);

impl DurfeeChain {
    pub fn sides(&self) -> &[u64] {
        &self.0
    }

    /// `d_i` counting from 1; 0 past the computed depth.
    pub fn side(&self, i: usize) -> u64 {
        self.0.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }
}
