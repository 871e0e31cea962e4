//! Integer partitions and bipartitions.
//!
//! Partitions are stored canonically (weakly decreasing, no zero parts), so
//! structural equality is mathematical equality. Everything here is exact
//! integer arithmetic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(u32, u32),
    #[error("partition of {size} has the wrong parity for type {family}")]
    Parity { size: u32, family: ClassicalFamily },
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("arithmetic overflow")]
    Overflow,
}

/// The classical families whose nilpotent orbits are constrained partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassicalFamily {
    B,
    C,
    D,
}

impl fmt::Display for ClassicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassicalFamily::B => "B",
            ClassicalFamily::C => "C",
            ClassicalFamily::D => "D",
        };
        f.write_str(s)
    }
}

impl ClassicalFamily {
    /// Parts of this parity must occur with even multiplicity.
    fn constrained_parity(self) -> u32 {
        match self {
            ClassicalFamily::C => 1,
            ClassicalFamily::B | ClassicalFamily::D => 0,
        }
    }

    fn check_size(self, size: u32) -> Result<(), PartitionError> {
        let odd = size % 2 == 1;
        let ok = match self {
            ClassicalFamily::B => odd,
            ClassicalFamily::C | ClassicalFamily::D => !odd,
        };
        if ok {
            Ok(())
        } else {
            Err(PartitionError::Parity { size, family: self })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
    size: u32,
}

impl Partition {
    /// Builds a partition from parts in any order; zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition {
            parts: Vec::new(),
            size: 0,
        }
    }

    /// The one-row partition (n).
    pub fn row(n: u32) -> Self {
        Partition::new(vec![n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part i, or 0 past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiplicity of each distinct part, largest part first.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// Compact label in the style "531"; parts of two or more digits are
    /// separated by dots ("10.2") to keep the label unambiguous.
    pub fn compact_label(&self) -> String {
        if self.parts.iter().all(|&p| p < 10) {
            self.parts.iter().map(|p| p.to_string()).collect()
        } else {
            let v: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
            v.join(".")
        }
    }

    /// Parses "(3,1)", "3,1", "3 1", "531" (single digits) or "10.2".
    /// Inside parentheses each number is a part, so "(10)" is one part.
    pub fn parse(s: &str) -> Result<Self, PartitionError> {
        let bracketed = s.trim().starts_with('(');
        let t = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if t.is_empty() || t == "-" {
            return Ok(Partition::empty());
        }
        let err = || PartitionError::Parse(s.to_string());
        let parts: Result<Vec<u32>, _> =
            if bracketed || t.contains(',') || t.contains('.') || t.contains(' ') {
                t.split([',', '.', ' '])
                    .filter(|x| !x.is_empty())
                    .map(|x| x.trim().parse::<u32>().map_err(|_| err()))
                    .collect()
            } else {
                t.chars().map(|c| c.to_digit(10).ok_or_else(err)).collect()
            };
        let parts = parts?;
        if parts.contains(&0) {
            return Err(err());
        }
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", v.join(","))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the part sequences.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.parts.cmp(&other.parts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub first: Partition,
    pub second: Partition,
}

impl Bipartition {
    pub fn new(first: Partition, second: Partition) -> Self {
        Bipartition { first, second }
    }

    pub fn size(&self) -> u32 {
        self.first.size() + self.second.size()
    }

    /// Parses "(2,1).(1)" or "21.1"; an empty side may be written "" or "-".
    pub fn parse(s: &str) -> Result<Self, PartitionError> {
        let (a, b) = s
            .split_once('.')
            .filter(|_| s.matches('.').count() == 1)
            .ok_or_else(|| PartitionError::Parse(s.to_string()))?;
        Ok(Bipartition::new(Partition::parse(a)?, Partition::parse(b)?))
    }
}

/// Rendered as "(2,1).(1)"; the empty side prints as "()".
impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.first, self.second)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartitionConstraint {
    Unconstrained,
    /// Every part is a power of ℓ (1 included).
    PowersOf(u32),
    /// No part is repeated ℓ or more times.
    Regular(u32),
    OrbitValid(ClassicalFamily),
}

impl PartitionConstraint {
    pub fn admits(&self, p: &Partition) -> bool {
        match *self {
            PartitionConstraint::Unconstrained => true,
            PartitionConstraint::PowersOf(l) => p.parts().iter().all(|&x| is_power_of(x, l)),
            PartitionConstraint::Regular(l) => p.multiplicities().values().all(|&m| m < l),
            PartitionConstraint::OrbitValid(fam) => {
                fam.check_size(p.size()).is_ok() && valid_unchecked(p, fam)
            }
        }
    }

    fn check(&self) -> Result<(), PartitionError> {
        match *self {
            PartitionConstraint::PowersOf(l) | PartitionConstraint::Regular(l) if !is_prime(l) => {
                Err(PartitionError::NotPrime(l))
            }
            _ => Ok(()),
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn is_power_of(mut x: u32, l: u32) -> bool {
    if x == 0 {
        return false;
    }
    while x.is_multiple_of(l) {
        x /= l;
    }
    x == 1
}

pub fn transpose(p: &Partition) -> Partition {
    let cols = p.part(0) as usize;
    let mut out = vec![0u32; cols];
    for &r in p.parts() {
        for c in out.iter_mut().take(r as usize) {
            *c += 1;
        }
    }
    Partition::new(out)
}

pub fn dominance_leq(p: &Partition, q: &Partition) -> Result<bool, PartitionError> {
    if p.size() != q.size() {
        return Err(PartitionError::SizeMismatch(p.size(), q.size()));
    }
    let (mut sp, mut sq) = (0u32, 0u32);
    for i in 0..p.len().max(q.len()) {
        sp += p.part(i);
        sq += q.part(i);
        if sp > sq {
            return Ok(false);
        }
    }
    Ok(true)
}

fn valid_unchecked(p: &Partition, fam: ClassicalFamily) -> bool {
    let bad = fam.constrained_parity();
    p.multiplicities()
        .iter()
        .all(|(&part, &m)| part % 2 != bad || m % 2 == 0)
}

pub fn is_valid_orbit_partition(
    p: &Partition,
    fam: ClassicalFamily,
) -> Result<bool, PartitionError> {
    fam.check_size(p.size())?;
    Ok(valid_unchecked(p, fam))
}

/// Dominance-largest valid partition below `p`.
///
/// Greedy repair: take the largest part of the forbidden parity that occurs
/// an odd number of times, lower its last occurrence by one and raise the
/// first later part that is smaller by at least two. Repeat until valid.
pub fn collapse(p: &Partition, fam: ClassicalFamily) -> Result<Partition, PartitionError> {
    fam.check_size(p.size())?;
    let bad = fam.constrained_parity();
    let mut parts = p.parts().to_vec();
    loop {
        let q = Partition::new(parts.clone());
        let offender = q
            .multiplicities()
            .iter()
            .rev()
            .find(|(&part, &m)| part % 2 == bad && m % 2 == 1)
            .map(|(&part, _)| part);
        let Some(v) = offender else {
            return Ok(q);
        };
        parts = q.parts().to_vec();
        let last = parts
            .iter()
            .rposition(|&x| x == v)
            .expect("offending part present");
        parts[last] -= 1;
        match parts.iter().skip(last + 1).position(|&x| x + 1 < v) {
            Some(off) => parts[last + 1 + off] += 1,
            None => parts.push(1),
        }
    }
}

/// Row-wise sum with zero padding.
pub fn add_padded(p: &Partition, q: &Partition) -> Partition {
    let n = p.len().max(q.len());
    Partition::new((0..n).map(|i| p.part(i) + q.part(i)).collect())
}

/// All partitions of n with parts at most `max`, lexicographically descending.
fn partitions_bounded(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition::new(prefix.clone()));
        return;
    }
    for first in (1..=max.min(n)).rev() {
        prefix.push(first);
        partitions_bounded(n - first, first, prefix, out);
        prefix.pop();
    }
}

fn all_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    partitions_bounded(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of n admitted by `c`, in lexicographically descending order.
pub fn enumerate_partitions(
    n: u32,
    c: PartitionConstraint,
) -> Result<Vec<Partition>, PartitionError> {
    c.check()?;
    Ok(all_partitions(n)
        .into_iter()
        .filter(|p| c.admits(p))
        .collect())
}

/// Bipartitions of n, optionally with both sides ℓ-regular.
///
/// Order: by size of the first component descending, then each side
/// lexicographically descending. So ((n), ()) comes first.
pub fn enumerate_bipartitions(
    n: u32,
    l_regular: Option<u32>,
) -> Result<Vec<Bipartition>, PartitionError> {
    let c = match l_regular {
        Some(l) => PartitionConstraint::Regular(l),
        None => PartitionConstraint::Unconstrained,
    };
    let mut out = Vec::new();
    for j in (0..=n).rev() {
        let firsts = enumerate_partitions(j, c)?;
        let seconds = enumerate_partitions(n - j, c)?;
        for a in &firsts {
            for b in &seconds {
                out.push(Bipartition::new(a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// Number of partitions of n (Euler's pentagonal recurrence).
pub fn partition_count(n: u32) -> u128 {
    let n = n as usize;
    let mut p = vec![0i128; n + 1];
    p[0] = 1;
    for i in 1..=n {
        let mut s = 0i128;
        let mut k = 1usize;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            s += sign * p[i - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                s += sign * p[i - g2];
            }
            k += 1;
        }
        p[i] = s;
    }
    p[n] as u128
}

/// Number of bipartitions of n: Σ_j p(j)·p(n−j).
pub fn bipartition_count(n: u32) -> u128 {
    (0..=n)
        .map(|j| partition_count(j) * partition_count(n - j))
        .sum()
}

/// Number of standard Young tableaux of shape p, by the hook-length formula.
///
/// Exact for |p| ≤ 34 (the factorial must fit in 128 bits).
pub fn standard_count(p: &Partition) -> Result<u128, PartitionError> {
    let t = transpose(p);
    let mut num: u128 = 1;
    for k in 2..=p.size() as u128 {
        num = num.checked_mul(k).ok_or(PartitionError::Overflow)?;
    }
    let mut den: u128 = 1;
    for (i, &row) in p.parts().iter().enumerate() {
        for j in 0..row as usize {
            let hook = (row as usize - j - 1) + (t.part(j) as usize - i - 1) + 1;
            den *= hook as u128;
        }
    }
    Ok(num / den)
}

pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

pub fn factorial(n: u32) -> u128 {
    (2..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose(&p(&[3, 1])), p(&[2, 1, 1]));
        assert_eq!(transpose(&Partition::empty()), Partition::empty());
        assert_eq!(transpose(&p(&[2, 2, 2])), p(&[3, 3]));
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[2, 2, 2]), &p(&[4, 2])).unwrap());
        assert!(dominance_leq(&p(&[6, 4, 2]), &p(&[12])).unwrap());
        assert!(!dominance_leq(&p(&[3, 3]), &p(&[3, 2, 1])).unwrap());
        assert!(dominance_leq(&p(&[3]), &p(&[2])).is_err());
    }

    #[test]
    fn validity_examples() {
        use ClassicalFamily::*;
        assert!(is_valid_orbit_partition(&p(&[2, 2]), C).unwrap());
        assert!(is_valid_orbit_partition(&p(&[5, 3, 1]), B).unwrap());
        assert!(!is_valid_orbit_partition(&p(&[3, 2, 1]), C).unwrap());
        assert!(is_valid_orbit_partition(&p(&[3, 2]), C).is_err());
    }

    #[test]
    fn collapse_examples() {
        use ClassicalFamily::*;
        assert_eq!(collapse(&p(&[6, 2]), C).unwrap(), p(&[6, 2]));
        assert_eq!(collapse(&p(&[9]), B).unwrap(), p(&[9]));
        assert_eq!(collapse(&p(&[3, 2, 1]), C).unwrap(), p(&[2, 2, 2]));
        assert_eq!(collapse(&p(&[4]), D).unwrap(), p(&[3, 1]));
        assert_eq!(
            collapse(&p(&[3]), C).unwrap_err(),
            PartitionError::Parity { size: 3, family: C }
        );
    }

    #[test]
    fn add_padded_examples() {
        assert_eq!(add_padded(&p(&[4, 2]), &p(&[2])), p(&[6, 2]));
        assert_eq!(add_padded(&p(&[4, 2]), &Partition::empty()), p(&[4, 2]));
        assert_eq!(add_padded(&p(&[2, 2]), &p(&[1, 1, 1])), p(&[3, 3, 1]));
    }

    #[test]
    fn enumeration_examples() {
        let three = PartitionConstraint::PowersOf(3);
        assert_eq!(enumerate_partitions(2, three).unwrap(), vec![p(&[1, 1])]);
        assert_eq!(
            enumerate_partitions(3, three).unwrap(),
            vec![p(&[3]), p(&[1, 1, 1])]
        );
        assert_eq!(
            enumerate_partitions(0, three).unwrap(),
            vec![Partition::empty()]
        );
        assert!(enumerate_partitions(3, PartitionConstraint::PowersOf(4)).is_err());
        assert_eq!(enumerate_bipartitions(4, None).unwrap().len(), 20);
        assert_eq!(enumerate_bipartitions(2, Some(3)).unwrap().len(), 5);
        assert_eq!(enumerate_bipartitions(3, Some(3)).unwrap().len(), 8);
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(standard_count(&p(&[5])).unwrap(), 1);
        assert_eq!(standard_count(&p(&[2, 1])).unwrap(), 2);
        assert_eq!(standard_count(&p(&[2, 2])).unwrap(), 2);
        assert_eq!(standard_count(&p(&[3, 2, 1])).unwrap(), 16);
    }

    #[test]
    fn labels_round_trip() {
        let q = p(&[5, 3, 1]);
        assert_eq!(q.compact_label(), "531");
        assert_eq!(Partition::parse("531").unwrap(), q);
        assert_eq!(Partition::parse("(5,3,1)").unwrap(), q);
        assert_eq!(Partition::parse("10.2").unwrap(), p(&[10, 2]));
        assert_eq!(p(&[10, 2]).compact_label(), "10.2");
        let b = Bipartition::new(p(&[2, 1]), Partition::empty());
        assert_eq!(b.to_string(), "(2,1).()");
        assert_eq!(Bipartition::parse(&b.to_string()).unwrap(), b);
    }

    #[test]
    fn counts() {
        let ps: Vec<u128> = (0..8).map(partition_count).collect();
        assert_eq!(ps, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(bipartition_count(4), 20);
        assert_eq!(binomial(6, 2), 15);
    }
}
