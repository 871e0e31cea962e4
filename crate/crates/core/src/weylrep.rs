//! Character tables of Weyl groups.
//!
//! Symmetric and hyperoctahedral tables are built from the
//! Murnaghan–Nakayama rule. Exceptional tables are never built here; they are
//! read from TSV files and validated by the orthogonality relations before
//! use. Blocks come from the congruence of central characters, which is exact
//! for rational groups.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{
    binomial, enumerate_bipartitions, enumerate_partitions, factorial, is_prime, standard_count,
    Bipartition, Partition, PartitionConstraint, PartitionError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("size mismatch: character of {0} evaluated on a class of {1}")]
    SizeMismatch(u32, u32),
    #[error("tables are only built for symmetric and hyperoctahedral groups, not {0}")]
    UnsupportedKind(String),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("ℓ = 2 is not supported for wreath-product counts")]
    EvenPrime,
    #[error("degree {degree} has larger {l}-valuation than the group order {order}")]
    DefectOverflow { degree: u128, order: u128, l: u32 },
    #[error("central character of {label} is not integral on class {class}")]
    NonIntegralCentralCharacter { label: String, class: String },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("table validation failed: {0}")]
    Invalid(String),
    #[error("fusion is missing class {0}")]
    IncompleteFusion(String),
    #[error("non-integral multiplicity of {0} in the induced character")]
    NonIntegralMultiplicity(String),
    #[error("unknown character label {0}")]
    UnknownLabel(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExceptionalType {
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl ExceptionalType {
    /// Fundamental degrees; |W| is their product.
    pub fn degrees(self) -> &'static [u32] {
        match self {
            ExceptionalType::G2 => &[2, 6],
            ExceptionalType::F4 => &[2, 6, 8, 12],
            ExceptionalType::E6 => &[2, 5, 6, 8, 9, 12],
            ExceptionalType::E7 => &[2, 6, 8, 10, 12, 14, 18],
            ExceptionalType::E8 => &[2, 8, 12, 14, 18, 20, 24, 30],
        }
    }

    pub fn rank(self) -> u32 {
        self.degrees().len() as u32
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "G2" => Some(ExceptionalType::G2),
            "F4" => Some(ExceptionalType::F4),
            "E6" => Some(ExceptionalType::E6),
            "E7" => Some(ExceptionalType::E7),
            "E8" => Some(ExceptionalType::E8),
            _ => None,
        }
    }
}

impl fmt::Display for ExceptionalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylDescriptor {
    Symmetric(u32),
    Hyperoctahedral(u32),
    Exceptional(ExceptionalType),
    Product(Vec<WeylDescriptor>),
}

impl WeylDescriptor {
    pub fn order(&self) -> u128 {
        weyl_order(self)
    }

    /// Accepts "S5", "B4" (hyperoctahedral), "E8", "W(E8)" and products "B2xS3".
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if s.contains('x') {
            let parts: Option<Vec<_>> = s.split('x').map(WeylDescriptor::parse).collect();
            return parts.map(WeylDescriptor::Product);
        }
        let s = s
            .strip_prefix("W(")
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        if let Some(e) = ExceptionalType::parse(s) {
            return Some(WeylDescriptor::Exceptional(e));
        }
        let (head, n) = s.split_at(1);
        let n: u32 = n.parse().ok()?;
        match head {
            "S" => Some(WeylDescriptor::Symmetric(n)),
            "B" | "C" => Some(WeylDescriptor::Hyperoctahedral(n)),
            _ => None,
        }
    }
}

impl fmt::Display for WeylDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylDescriptor::Symmetric(n) => write!(f, "S{n}"),
            WeylDescriptor::Hyperoctahedral(n) => write!(f, "B{n}"),
            WeylDescriptor::Exceptional(e) => write!(f, "{e}"),
            WeylDescriptor::Product(v) => {
                let s: Vec<String> = v.iter().map(|w| w.to_string()).collect();
                if s.is_empty() {
                    f.write_str("1")
                } else {
                    f.write_str(&s.join("x"))
                }
            }
        }
    }
}

pub fn weyl_order(g: &WeylDescriptor) -> u128 {
    match g {
        WeylDescriptor::Symmetric(n) => factorial(*n),
        WeylDescriptor::Hyperoctahedral(n) => (1u128 << n) * factorial(*n),
        WeylDescriptor::Exceptional(e) => e.degrees().iter().map(|&d| d as u128).product(),
        WeylDescriptor::Product(v) => v.iter().map(weyl_order).product(),
    }
}

/// Conjugacy class of the hyperoctahedral group: cycle lengths of the
/// underlying permutation, split by the sign of the cycle product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedCycleType {
    pub positive_part: Partition,
    pub negative_part: Partition,
}

impl fmt::Display for SignedCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.positive_part, self.negative_part)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IrrLabel {
    Partition(Partition),
    Bipartition(Bipartition),
    Named(String),
}

impl fmt::Display for IrrLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrLabel::Partition(p) => write!(f, "{p}"),
            IrrLabel::Bipartition(b) => write!(f, "{b}"),
            IrrLabel::Named(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterTable {
    pub group: WeylDescriptor,
    pub irr_labels: Vec<IrrLabel>,
    pub class_labels: Vec<String>,
    pub class_sizes: Vec<u64>,
    /// values[χ][C]
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn degree(&self, chi: usize) -> u128 {
        self.values[chi][0] as u128
    }

    pub fn degrees(&self) -> Vec<u128> {
        (0..self.irr_labels.len()).map(|i| self.degree(i)).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.irr_labels.iter().position(|l| l.to_string() == label)
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.class_labels.iter().position(|l| l == label)
    }

    /// Checks the class equation, the identity column, and both
    /// orthogonality relations, all exactly.
    pub fn validate(&self) -> Result<(), WeylError> {
        let k = self.class_labels.len();
        let bad = |m: String| Err(WeylError::Invalid(m));
        if self.class_sizes.len() != k || self.irr_labels.len() != k || self.values.len() != k {
            return bad(format!(
                "{} classes, {} sizes, {} labels, {} rows",
                k,
                self.class_sizes.len(),
                self.irr_labels.len(),
                self.values.len()
            ));
        }
        if let Some(r) = self.values.iter().position(|r| r.len() != k) {
            return bad(format!(
                "row {} has {} entries",
                self.irr_labels[r],
                self.values[r].len()
            ));
        }
        let order = self.order() as i128;
        let total: i128 = self.class_sizes.iter().map(|&s| s as i128).sum();
        if total != order {
            return bad(format!(
                "class sizes sum to {total}, group order is {order}"
            ));
        }
        if k == 0 || self.class_sizes[0] != 1 {
            return bad("first class is not the identity".into());
        }
        for (i, row) in self.values.iter().enumerate() {
            if row[0] < 1 {
                return bad(format!("degree of {} is {}", self.irr_labels[i], row[0]));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for l in &self.irr_labels {
            if !seen.insert(l.to_string()) {
                return bad(format!("duplicate character label {l}"));
            }
        }
        for i in 0..k {
            for j in i..k {
                let s: i128 = (0..k)
                    .map(|c| {
                        self.class_sizes[c] as i128
                            * self.values[i][c] as i128
                            * self.values[j][c] as i128
                    })
                    .sum();
                let want = if i == j { order } else { 0 };
                if s != want {
                    return bad(format!(
                        "rows {} and {} have inner product {s}, expected {want}",
                        self.irr_labels[i], self.irr_labels[j]
                    ));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let s: i128 = (0..k)
                    .map(|i| self.values[i][c] as i128 * self.values[i][d] as i128)
                    .sum();
                let want = if c == d {
                    order / self.class_sizes[c] as i128
                } else {
                    0
                };
                if s != want {
                    return bad(format!(
                        "columns {} and {} have inner product {s}, expected {want}",
                        self.class_labels[c], self.class_labels[d]
                    ));
                }
            }
        }
        Ok(())
    }

    /// Serializes in the TSV format read by [`load_character_table`].
    pub fn to_tsv(&self) -> String {
        let mut s = format!("#group {}\n", self.group);
        s.push_str(&format!("#classes {}\n", self.class_labels.join("\t")));
        let sizes: Vec<String> = self.class_sizes.iter().map(|x| x.to_string()).collect();
        s.push_str(&format!("#sizes {}\n", sizes.join("\t")));
        for (l, row) in self.irr_labels.iter().zip(&self.values) {
            let v: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{}\t{}\n", l, v.join("\t")));
        }
        s
    }
}

/// Beta-set rim-hook removal: every partition obtained from `p` by removing
/// an r-rim-hook, with the sign (−1)^(leg length).
fn remove_rim_hooks(p: &Partition, r: u32) -> Vec<(Partition, i64)> {
    let len = p.len() as u32;
    let beta: Vec<u32> = p
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &x)| x + len - 1 - i as u32)
        .collect();
    let mut out = Vec::new();
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let leg = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut nb = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let parts: Vec<u32> = nb
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (len - 1 - j as u32))
            .collect();
        let sign = if leg % 2 == 0 { 1 } else { -1 };
        out.push((Partition::new(parts), sign));
    }
    out
}

fn mn_value(
    lambda: &Partition,
    cycles: &[u32],
    memo: &mut HashMap<(Partition, usize), i64>,
) -> i64 {
    if cycles.is_empty() {
        return if lambda.is_empty() { 1 } else { 0 };
    }
    let key = (lambda.clone(), cycles.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let v = remove_rim_hooks(lambda, cycles[0])
        .into_iter()
        .map(|(rest, sign)| sign * mn_value(&rest, &cycles[1..], memo))
        .sum();
    memo.insert(key, v);
    v
}

/// χ_λ on the class of cycle type α (Murnaghan–Nakayama).
pub fn symmetric_character_value(lambda: &Partition, alpha: &Partition) -> Result<i64, WeylError> {
    if lambda.size() != alpha.size() {
        return Err(WeylError::SizeMismatch(lambda.size(), alpha.size()));
    }
    Ok(mn_value(lambda, alpha.parts(), &mut HashMap::new()))
}

type BMemo = HashMap<(Partition, Partition, usize), i64>;

/// Signed Murnaghan–Nakayama: a cycle is removed as a rim hook from either
/// side; removing a negative cycle from the second side costs an extra sign.
fn bn_value(lambda: &Partition, mu: &Partition, cycles: &[(u32, bool)], memo: &mut BMemo) -> i64 {
    if cycles.is_empty() {
        return if lambda.is_empty() && mu.is_empty() {
            1
        } else {
            0
        };
    }
    let key = (lambda.clone(), mu.clone(), cycles.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let (r, negative) = cycles[0];
    let mut v = 0;
    for (rest, sign) in remove_rim_hooks(lambda, r) {
        v += sign * bn_value(&rest, mu, &cycles[1..], memo);
    }
    let twist = if negative { -1 } else { 1 };
    for (rest, sign) in remove_rim_hooks(mu, r) {
        v += twist * sign * bn_value(lambda, &rest, &cycles[1..], memo);
    }
    memo.insert(key, v);
    v
}

pub fn hyperoctahedral_character_value(
    chi: &Bipartition,
    class: &SignedCycleType,
) -> Result<i64, WeylError> {
    let n = class.positive_part.size() + class.negative_part.size();
    if chi.size() != n {
        return Err(WeylError::SizeMismatch(chi.size(), n));
    }
    let mut cycles: Vec<(u32, bool)> = class
        .positive_part
        .parts()
        .iter()
        .map(|&r| (r, false))
        .collect();
    cycles.extend(class.negative_part.parts().iter().map(|&r| (r, true)));
    cycles.sort_by_key(|c| std::cmp::Reverse(c.0));
    Ok(bn_value(
        &chi.first,
        &chi.second,
        &cycles,
        &mut HashMap::new(),
    ))
}

/// Centralizer order in S_n of an element of cycle type α.
fn z_symmetric(alpha: &Partition) -> u128 {
    alpha
        .multiplicities()
        .iter()
        .map(|(&r, &m)| (r as u128).pow(m) * factorial(m))
        .product()
}

/// Centralizer order in the hyperoctahedral group.
fn z_signed(c: &SignedCycleType) -> u128 {
    let side = |p: &Partition| -> u128 {
        p.multiplicities()
            .iter()
            .map(|(&r, &m)| (2 * r as u128).pow(m) * factorial(m))
            .product()
    };
    side(&c.positive_part) * side(&c.negative_part)
}

/// Classes of the hyperoctahedral group, identity first.
pub fn signed_cycle_types(n: u32) -> Vec<SignedCycleType> {
    let mut out = Vec::new();
    for j in (0..=n).rev() {
        let mut pos = enumerate_partitions(j, PartitionConstraint::Unconstrained).unwrap();
        pos.reverse();
        let mut neg = enumerate_partitions(n - j, PartitionConstraint::Unconstrained).unwrap();
        neg.reverse();
        for a in &pos {
            for b in &neg {
                out.push(SignedCycleType {
                    positive_part: a.clone(),
                    negative_part: b.clone(),
                });
            }
        }
    }
    out
}

/// Degree of the hyperoctahedral character (λ, μ): C(n,|λ|)·f^λ·f^μ.
pub fn bipartition_degree(b: &Bipartition) -> Result<u128, WeylError> {
    Ok(binomial(b.size(), b.first.size()) * standard_count(&b.first)? * standard_count(&b.second)?)
}

/// Largest n for which tables are built; larger tables are impractical and
/// never needed.
pub const MAX_BUILD_RANK: u32 = 10;

pub fn build_character_table(g: &WeylDescriptor) -> Result<CharacterTable, WeylError> {
    match *g {
        WeylDescriptor::Symmetric(n) if n <= MAX_BUILD_RANK => {
            let irr = enumerate_partitions(n, PartitionConstraint::Unconstrained)?;
            let mut classes = irr.clone();
            classes.reverse();
            let order = factorial(n);
            let mut values = Vec::with_capacity(irr.len());
            // memo keys only carry the remaining cycle count, so one memo per class
            for lambda in &irr {
                values.push(
                    classes
                        .iter()
                        .map(|a| mn_value(lambda, a.parts(), &mut HashMap::new()))
                        .collect(),
                );
            }
            Ok(CharacterTable {
                group: g.clone(),
                irr_labels: irr.into_iter().map(IrrLabel::Partition).collect(),
                class_labels: classes.iter().map(|c| c.to_string()).collect(),
                class_sizes: classes
                    .iter()
                    .map(|a| (order / z_symmetric(a)) as u64)
                    .collect(),
                values,
            })
        }
        WeylDescriptor::Hyperoctahedral(n) if n <= MAX_BUILD_RANK => {
            let irr = enumerate_bipartitions(n, None)?;
            let classes = signed_cycle_types(n);
            let order = weyl_order(g);
            let mut values = Vec::with_capacity(irr.len());
            for chi in &irr {
                let row = classes
                    .iter()
                    .map(|c| {
                        let mut cycles: Vec<(u32, bool)> = c
                            .positive_part
                            .parts()
                            .iter()
                            .map(|&r| (r, false))
                            .collect();
                        cycles.extend(c.negative_part.parts().iter().map(|&r| (r, true)));
                        cycles.sort_by_key(|c| std::cmp::Reverse(c.0));
                        bn_value(&chi.first, &chi.second, &cycles, &mut HashMap::new())
                    })
                    .collect();
                values.push(row);
            }
            Ok(CharacterTable {
                group: g.clone(),
                irr_labels: irr.into_iter().map(IrrLabel::Bipartition).collect(),
                class_labels: classes.iter().map(|c| c.to_string()).collect(),
                class_sizes: classes
                    .iter()
                    .map(|c| (order / z_signed(c)) as u64)
                    .collect(),
                values,
            })
        }
        _ => Err(WeylError::UnsupportedKind(g.to_string())),
    }
}

fn valuation(mut x: u128, l: u32) -> u32 {
    let l = l as u128;
    let mut v = 0;
    while x > 0 && x.is_multiple_of(l) {
        x /= l;
        v += 1;
    }
    v
}

/// v_ℓ(|W|) − v_ℓ(degree).
pub fn defect(degree: u128, group_order: u128, l: u32) -> Result<u32, WeylError> {
    if !is_prime(l) {
        return Err(WeylError::NotPrime(l));
    }
    let (vd, vo) = (valuation(degree, l), valuation(group_order, l));
    if vd > vo {
        return Err(WeylError::DefectOverflow {
            degree,
            order: group_order,
            l,
        });
    }
    Ok(vo - vd)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    pub prime: u32,
    pub labels: Vec<String>,
    /// Indices into `labels`, each block sorted, blocks ordered by their
    /// smallest member.
    pub blocks: Vec<Vec<usize>>,
    pub defects: Vec<u32>,
}

impl BlockPartition {
    pub fn block_of(&self, chi: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&chi))
            .expect("blocks cover all characters")
    }

    pub fn block_of_label(&self, label: &str) -> Option<usize> {
        let i = self.labels.iter().position(|l| l == label)?;
        Some(self.block_of(i))
    }

    pub fn defect_zero(&self) -> Vec<usize> {
        (0..self.labels.len())
            .filter(|&i| self.defects[i] == 0)
            .collect()
    }

    /// Blocks with at least two characters.
    pub fn nontrivial_blocks(&self) -> Vec<&Vec<usize>> {
        self.blocks.iter().filter(|b| b.len() > 1).collect()
    }
}

/// ℓ-blocks: χ and ψ share a block iff their central characters
/// ω(C) = |C|·χ(C)/χ(1) agree mod ℓ on every class.
pub fn l_blocks(t: &CharacterTable, l: u32) -> Result<BlockPartition, WeylError> {
    if !is_prime(l) {
        return Err(WeylError::NotPrime(l));
    }
    let k = t.class_labels.len();
    let mut groups: BTreeMap<Vec<i128>, Vec<usize>> = BTreeMap::new();
    for (i, row) in t.values.iter().enumerate() {
        let d = row[0] as i128;
        let mut omega = Vec::with_capacity(k);
        for (c, &v) in row.iter().enumerate() {
            let num = t.class_sizes[c] as i128 * v as i128;
            if num % d != 0 {
                return Err(WeylError::NonIntegralCentralCharacter {
                    label: t.irr_labels[i].to_string(),
                    class: t.class_labels[c].clone(),
                });
            }
            omega.push((num / d).rem_euclid(l as i128));
        }
        groups.entry(omega).or_default().push(i);
    }
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    blocks.sort_by_key(|b| b[0]);
    let order = t.order();
    let defects = t
        .degrees()
        .iter()
        .map(|&d| defect(d, order, l))
        .collect::<Result<Vec<_>, _>>()?;
    for b in &blocks {
        if b.len() > 1 && b.iter().any(|&i| defects[i] == 0) {
            return Err(WeylError::Invalid(
                "a defect-0 character shares its block".into(),
            ));
        }
    }
    Ok(BlockPartition {
        prime: l,
        labels: t.irr_labels.iter().map(|x| x.to_string()).collect(),
        blocks,
        defects,
    })
}

/// Number of ℓ-modular irreducibles of Π_i (Z/2 ≀ S_{m_i}): the product of
/// the numbers of ℓ-regular bipartitions of the m_i.
pub fn modular_irr_count_wreath(m: &[u32], l: u32) -> Result<u128, WeylError> {
    if l == 2 {
        return Err(WeylError::EvenPrime);
    }
    if !is_prime(l) {
        return Err(WeylError::NotPrime(l));
    }
    let mut out = 1u128;
    for &mi in m {
        out *= enumerate_bipartitions(mi, Some(l))?.len() as u128;
    }
    Ok(out)
}

/// Induces the character `chi` of `sub` to `amb` by Frobenius reciprocity;
/// `fusion[c]` is the ambient class of the sub-class c. Returns the nonzero
/// constituents in the ambient table's order.
pub fn induce_character(
    sub: &CharacterTable,
    amb: &CharacterTable,
    fusion: &[usize],
    chi: usize,
) -> Result<Vec<(IrrLabel, u64)>, WeylError> {
    if fusion.len() != sub.class_labels.len() {
        let missing = sub
            .class_labels
            .get(fusion.len())
            .cloned()
            .unwrap_or_default();
        return Err(WeylError::IncompleteFusion(missing));
    }
    let order = sub.order() as i128;
    let mut out = Vec::new();
    for (j, psi) in amb.values.iter().enumerate() {
        let s: i128 = (0..fusion.len())
            .map(|c| {
                sub.class_sizes[c] as i128 * sub.values[chi][c] as i128 * psi[fusion[c]] as i128
            })
            .sum();
        if s % order != 0 || s < 0 {
            return Err(WeylError::NonIntegralMultiplicity(
                amb.irr_labels[j].to_string(),
            ));
        }
        if s != 0 {
            out.push((amb.irr_labels[j].clone(), (s / order) as u64));
        }
    }
    Ok(out)
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> WeylError {
    WeylError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a header payload on tabs, or on spaces if it has no tabs.
fn fields(s: &str) -> Vec<&str> {
    if s.contains('\t') {
        s.split('\t')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .collect()
    } else {
        s.split_whitespace().collect()
    }
}

fn irr_label_from(s: &str, g: &WeylDescriptor) -> IrrLabel {
    match g {
        WeylDescriptor::Symmetric(_) => Partition::parse(s)
            .map(IrrLabel::Partition)
            .unwrap_or_else(|_| IrrLabel::Named(s.to_string())),
        WeylDescriptor::Hyperoctahedral(_) => Bipartition::parse(s)
            .map(IrrLabel::Bipartition)
            .unwrap_or_else(|_| IrrLabel::Named(s.to_string())),
        _ => IrrLabel::Named(s.to_string()),
    }
}

/// Reads a character table in TSV form and validates it.
///
/// Header lines are `#group <name>`, `#classes <labels>`, `#sizes <ints>`;
/// other lines starting with `#` are comments. Each remaining line is
/// `<label>\t<v1>\t…\t<vk>`.
pub fn load_character_table(src: &str) -> Result<CharacterTable, WeylError> {
    let mut group = None;
    let mut classes: Option<Vec<String>> = None;
    let mut sizes: Option<Vec<u64>> = None;
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for (ln, raw) in src.lines().enumerate() {
        let line = ln + 1;
        if raw.trim().is_empty() {
            continue;
        }
        if let Some(rest) = raw.strip_prefix("#group") {
            let name = rest.trim();
            group = Some(
                WeylDescriptor::parse(name)
                    .ok_or_else(|| perr(line, 8, format!("unknown group {name:?}")))?,
            );
        } else if let Some(rest) = raw.strip_prefix("#classes") {
            classes = Some(fields(rest).into_iter().map(String::from).collect());
        } else if let Some(rest) = raw.strip_prefix("#sizes") {
            let mut v = Vec::new();
            for (i, f) in fields(rest).into_iter().enumerate() {
                v.push(
                    f.parse::<u64>()
                        .map_err(|_| perr(line, i + 2, format!("bad class size {f:?}")))?,
                );
            }
            sizes = Some(v);
        } else if raw.starts_with('#') {
            continue;
        } else {
            let g = group
                .as_ref()
                .ok_or_else(|| perr(line, 1, "character row before #group"))?;
            let k = classes
                .as_ref()
                .ok_or_else(|| perr(line, 1, "character row before #classes"))?
                .len();
            let cells: Vec<&str> = raw.split('\t').collect();
            if cells.len() != k + 1 {
                return Err(perr(
                    line,
                    cells.len().min(k + 1),
                    format!("expected {} fields, found {}", k + 1, cells.len()),
                ));
            }
            labels.push(irr_label_from(cells[0].trim(), g));
            let mut row = Vec::with_capacity(k);
            for (i, c) in cells[1..].iter().enumerate() {
                row.push(
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| perr(line, i + 2, format!("bad value {c:?}")))?,
                );
            }
            values.push(row);
        }
    }
    let group = group.ok_or_else(|| perr(0, 0, "missing #group header"))?;
    let class_labels = classes.ok_or_else(|| perr(0, 0, "missing #classes header"))?;
    let class_sizes = sizes.ok_or_else(|| perr(0, 0, "missing #sizes header"))?;
    let t = CharacterTable {
        group,
        irr_labels: labels,
        class_labels,
        class_sizes,
        values,
    };
    t.validate()?;
    Ok(t)
}

/// Reads a class fusion `<sub-class>\t<amb-class>` and checks that it is
/// total and that every ambient character restricts to a genuine character.
pub fn load_fusion(
    src: &str,
    sub: &CharacterTable,
    amb: &CharacterTable,
) -> Result<Vec<usize>, WeylError> {
    let mut map: Vec<Option<usize>> = vec![None; sub.class_labels.len()];
    for (ln, raw) in src.lines().enumerate() {
        let line = ln + 1;
        if raw.trim().is_empty() || raw.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = raw.split('\t').map(str::trim).collect();
        if cells.len() != 2 {
            return Err(perr(line, cells.len(), "expected two fields"));
        }
        let s = sub
            .class_index(cells[0])
            .ok_or_else(|| perr(line, 1, format!("unknown class {:?}", cells[0])))?;
        let a = amb
            .class_index(cells[1])
            .ok_or_else(|| perr(line, 2, format!("unknown class {:?}", cells[1])))?;
        if map[s].replace(a).is_some() {
            return Err(perr(line, 1, format!("class {:?} fused twice", cells[0])));
        }
    }
    let fusion: Vec<usize> = map
        .iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| WeylError::IncompleteFusion(sub.class_labels[i].clone())))
        .collect::<Result<_, _>>()?;
    if fusion[0] != 0 {
        return Err(WeylError::Invalid(
            "identity does not fuse to identity".into(),
        ));
    }
    let order = sub.order() as i128;
    for (j, psi) in amb.values.iter().enumerate() {
        for (i, chi) in sub.values.iter().enumerate() {
            let s: i128 = (0..fusion.len())
                .map(|c| sub.class_sizes[c] as i128 * chi[c] as i128 * psi[fusion[c]] as i128)
                .sum();
            if s < 0 || s % order != 0 {
                return Err(WeylError::Invalid(format!(
                    "restriction of {} has non-integral multiplicity of {}",
                    amb.irr_labels[j], sub.irr_labels[i]
                )));
            }
        }
    }
    Ok(fusion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn mn_examples() {
        assert_eq!(
            symmetric_character_value(&p(&[4]), &p(&[2, 1, 1])).unwrap(),
            1
        );
        assert_eq!(
            symmetric_character_value(&p(&[1, 1, 1]), &p(&[3])).unwrap(),
            1
        );
        assert_eq!(
            symmetric_character_value(&p(&[2, 1]), &p(&[2, 1])).unwrap(),
            0
        );
        assert_eq!(
            symmetric_character_value(&p(&[1, 1, 1]), &p(&[2, 1])).unwrap(),
            -1
        );
        assert!(symmetric_character_value(&p(&[2]), &p(&[1])).is_err());
    }

    #[test]
    fn small_tables() {
        let s3 = build_character_table(&WeylDescriptor::Symmetric(3)).unwrap();
        assert_eq!(s3.degrees(), vec![1, 2, 1]);
        s3.validate().unwrap();
        let b4 = build_character_table(&WeylDescriptor::Hyperoctahedral(4)).unwrap();
        assert_eq!(b4.irr_labels.len(), 20);
        let sq: u128 = b4.degrees().iter().map(|d| d * d).sum();
        assert_eq!(sq, 384);
        b4.validate().unwrap();
        let b2 = build_character_table(&WeylDescriptor::Hyperoctahedral(2)).unwrap();
        let i = b2.index_of("(1).(1)").unwrap();
        assert_eq!(b2.degree(i), 2);
        assert!(build_character_table(&WeylDescriptor::Exceptional(ExceptionalType::E8)).is_err());
    }

    #[test]
    fn degrees_match_formula() {
        let b5 = build_character_table(&WeylDescriptor::Hyperoctahedral(5)).unwrap();
        for (l, row) in b5.irr_labels.iter().zip(&b5.values) {
            let IrrLabel::Bipartition(b) = l else {
                panic!()
            };
            assert_eq!(row[0] as u128, bipartition_degree(b).unwrap());
        }
    }

    #[test]
    fn blocks_examples() {
        let s3 = build_character_table(&WeylDescriptor::Symmetric(3)).unwrap();
        assert_eq!(l_blocks(&s3, 3).unwrap().blocks.len(), 1);
        assert_eq!(l_blocks(&s3, 5).unwrap().blocks.len(), 3);
        let b4 = build_character_table(&WeylDescriptor::Hyperoctahedral(4)).unwrap();
        let bp = l_blocks(&b4, 3).unwrap();
        assert_eq!(bp.defect_zero().len(), 8);
        for i in bp.defect_zero() {
            assert_eq!(bp.blocks[bp.block_of(i)].len(), 1);
        }
    }

    #[test]
    fn defect_examples() {
        assert_eq!(defect(6, 384, 3).unwrap(), 0);
        assert_eq!(defect(1, 384, 3).unwrap(), 1);
        assert_eq!(defect(8, 384, 3).unwrap(), 1);
        assert!(defect(9, 384, 3).is_err());
    }

    #[test]
    fn wreath_counts() {
        assert_eq!(modular_irr_count_wreath(&[2], 3).unwrap(), 5);
        assert_eq!(modular_irr_count_wreath(&[0, 1], 3).unwrap(), 2);
        assert_eq!(modular_irr_count_wreath(&[], 7).unwrap(), 1);
        assert_eq!(
            modular_irr_count_wreath(&[1], 2).unwrap_err(),
            WeylError::EvenPrime
        );
    }

    #[test]
    fn orders() {
        assert_eq!(weyl_order(&WeylDescriptor::Hyperoctahedral(4)), 384);
        assert_eq!(weyl_order(&WeylDescriptor::Symmetric(5)), 120);
        assert_eq!(
            weyl_order(&WeylDescriptor::Exceptional(ExceptionalType::E8)),
            696_729_600
        );
    }

    #[test]
    fn induction_from_s2() {
        let s3 = build_character_table(&WeylDescriptor::Symmetric(3)).unwrap();
        let s2 = build_character_table(&WeylDescriptor::Symmetric(2)).unwrap();
        // S2 classes: (1,1), (2) -> S3 classes (1,1,1), (2,1)
        let fusion = vec![
            s3.class_index("(1,1,1)").unwrap(),
            s3.class_index("(2,1)").unwrap(),
        ];
        let ind = induce_character(&s2, &s3, &fusion, 0).unwrap();
        let got: Vec<String> = ind.iter().map(|(l, m)| format!("{l}:{m}")).collect();
        assert_eq!(got, vec!["(3):1", "(2,1):1"]);
        let id: Vec<usize> = (0..3).collect();
        let same = induce_character(&s3, &s3, &id, 1).unwrap();
        assert_eq!(same, vec![(s3.irr_labels[1].clone(), 1)]);
    }

    #[test]
    fn tsv_round_trip_and_corruption() {
        let b3 = build_character_table(&WeylDescriptor::Hyperoctahedral(3)).unwrap();
        let text = b3.to_tsv();
        assert_eq!(load_character_table(&text).unwrap(), b3);
        let corrupted = text.replacen("\t3\t", "\t4\t", 1);
        assert!(load_character_table(&corrupted).is_err());
        let truncated: String = text.lines().take(5).collect::<Vec<_>>().join("\n");
        assert!(load_character_table(&truncated).is_err());
    }
}
