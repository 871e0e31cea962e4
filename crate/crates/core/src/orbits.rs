//! Group descriptors, nilpotent orbits of classical groups, component groups
//! and rather-good primes.
//!
//! A reductive group is described by its simply connected cover G̃ (a list of
//! quasi-simple factors), the rank of its central torus, and a finite kernel
//! K_0 ⊂ Z(G̃) with G/Z(G)° = G̃/K_0.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{
    dominance_leq, enumerate_partitions, is_prime, ClassicalFamily, Partition, PartitionConstraint,
    PartitionError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrbitError {
    #[error("exceptional factor {0}: orbit data is ingested, not computed")]
    Exceptional(Family),
    #[error("expected a single quasi-simple factor, got {0}")]
    NotSingleFactor(usize),
    #[error("component groups of Spin groups are not implemented")]
    SpinComponentGroup,
    #[error("unsupported group: {0}")]
    Unsupported(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("orbits live in different groups")]
    AmbientMismatch,
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Family {
    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }

    pub fn classical(self) -> Option<ClassicalFamily> {
        match self {
            Family::B => Some(ClassicalFamily::B),
            Family::C => Some(ClassicalFamily::C),
            Family::D => Some(ClassicalFamily::D),
            _ => None,
        }
    }

    fn exceptional_rank(self) -> Option<u32> {
        match self {
            Family::G2 => Some(2),
            Family::F4 => Some(4),
            Family::E6 => Some(6),
            Family::E7 => Some(7),
            Family::E8 => Some(8),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    GL,
    SO,
    Spin,
    Sp,
    /// A type-A factor divided by a proper nontrivial part of its center.
    Intermediate,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub family: Family,
    pub rank: u32,
    pub isogeny: Isogeny,
}

impl Factor {
    /// Orders of the cyclic factors of the center of the simply connected
    /// form. D_n with n even has center Z/2 × Z/2.
    pub fn center_invariants(&self) -> Vec<u32> {
        let r = self.rank;
        match self.family {
            Family::A if r >= 1 => vec![r + 1],
            Family::B | Family::C if r >= 1 => vec![2],
            Family::D if r >= 2 && r.is_multiple_of(2) => vec![2, 2],
            Family::D if r >= 3 => vec![4],
            Family::E6 => vec![3],
            Family::E7 => vec![2],
            _ => vec![],
        }
    }

    /// Bad primes of the root system. Small ranks with a type-A root system
    /// (B1, C1, D2, D3) have none.
    pub fn bad_primes(&self) -> &'static [u32] {
        match self.family {
            Family::A => &[],
            Family::B | Family::C if self.rank >= 2 => &[2],
            Family::D if self.rank >= 4 => &[2],
            Family::B | Family::C | Family::D => &[],
            Family::G2 | Family::F4 | Family::E6 | Family::E7 => &[2, 3],
            Family::E8 => &[2, 3, 5],
        }
    }

    /// True when the root system of this factor is of type A (possibly
    /// empty or reducible, as for D2).
    pub fn is_type_a(&self) -> bool {
        match self.family {
            Family::A => true,
            Family::B | Family::C => self.rank <= 1,
            Family::D => self.rank <= 3,
            _ => false,
        }
    }

    /// Dimension of the natural representation for classical factors.
    pub fn natural_dim(&self) -> Option<u32> {
        match self.family {
            Family::A => Some(self.rank + 1),
            Family::B => Some(2 * self.rank + 1),
            Family::C | Family::D => Some(2 * self.rank),
            _ => None,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.natural_dim();
        match (self.isogeny, n) {
            (Isogeny::GL, Some(n)) => write!(f, "GL({n})"),
            (Isogeny::Sp, Some(n)) => write!(f, "Sp({n})"),
            (Isogeny::SO, Some(n)) => write!(f, "SO({n})"),
            (Isogeny::Spin, Some(n)) => write!(f, "Spin({n})"),
            (Isogeny::SimplyConnected, Some(n)) if self.family == Family::A => write!(f, "SL({n})"),
            (Isogeny::Adjoint, Some(n)) if self.family == Family::A => write!(f, "PGL({n})"),
            (iso, _) => match self.family.exceptional_rank() {
                Some(_) => write!(f, "{}[{iso:?}]", self.family),
                None => write!(f, "{}{}[{iso:?}]", self.family, self.rank),
            },
        }
    }
}

/// A reductive group up to the data the combinatorics needs.
///
/// `kernel` holds generators of K_0 as flat residue vectors over the
/// concatenated center invariants of all factors. It is kept in a canonical
/// form, so `==` compares groups rather than presentations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupForm {
    pub factors: Vec<Factor>,
    pub central_torus_rank: u32,
    kernel: Vec<Vec<u32>>,
}

impl GroupForm {
    pub fn new(
        factors: Vec<Factor>,
        central_torus_rank: u32,
        kernel: Vec<Vec<u32>>,
    ) -> Result<Self, OrbitError> {
        for f in &factors {
            let ok = match f.isogeny {
                Isogeny::Sp => f.family == Family::C,
                Isogeny::SO | Isogeny::Spin => matches!(f.family, Family::B | Family::D),
                Isogeny::GL | Isogeny::Intermediate => f.family == Family::A,
                Isogeny::SimplyConnected | Isogeny::Adjoint => true,
            };
            if !ok {
                return Err(OrbitError::InvalidGroup(format!(
                    "isogeny {:?} on family {}",
                    f.isogeny, f.family
                )));
            }
            if let Some(r) = f.family.exceptional_rank() {
                if r != f.rank {
                    return Err(OrbitError::InvalidGroup(format!(
                        "{} has rank {r}",
                        f.family
                    )));
                }
            }
        }
        let mut g = GroupForm {
            factors,
            central_torus_rank,
            kernel: Vec::new(),
        };
        let inv = g.center_invariants();
        for k in &kernel {
            if k.len() != inv.len() {
                return Err(OrbitError::InvalidGroup(
                    "kernel generator has wrong length".into(),
                ));
            }
        }
        let kernel: Vec<Vec<u32>> = kernel
            .into_iter()
            .map(|k| k.iter().zip(&inv).map(|(&x, &m)| x % m).collect())
            .collect();
        g.kernel = canonical_generators(&span(&kernel, &inv), &inv);
        Ok(g)
    }

    fn single(
        family: Family,
        rank: u32,
        isogeny: Isogeny,
        torus: u32,
        kernel: Vec<Vec<u32>>,
    ) -> Self {
        GroupForm::new(
            vec![Factor {
                family,
                rank,
                isogeny,
            }],
            torus,
            kernel,
        )
        .expect("built-in group forms are consistent")
    }

    /// Sp(2n). Panics if `dim` is odd.
    pub fn sp(dim: u32) -> Self {
        assert!(dim.is_multiple_of(2), "Sp needs an even dimension");
        Self::single(Family::C, dim / 2, Isogeny::Sp, 0, vec![])
    }

    /// SO(m). SO(2) is recorded as the rank-one D factor, which has no roots.
    pub fn so(m: u32) -> Self {
        let (fam, r) = if m % 2 == 1 {
            (Family::B, m / 2)
        } else {
            (Family::D, m / 2)
        };
        let f = Factor {
            family: fam,
            rank: r,
            isogeny: Isogeny::SO,
        };
        let kernel = match f.center_invariants().as_slice() {
            [2] => vec![vec![1]],
            [4] => vec![vec![2]],
            [2, 2] => vec![vec![1, 1]],
            _ => vec![],
        };
        let torus = u32::from(fam == Family::D && r == 1);
        Self::single(fam, r, Isogeny::SO, torus, kernel)
    }

    pub fn spin(m: u32) -> Self {
        let (fam, r) = if m % 2 == 1 {
            (Family::B, m / 2)
        } else {
            (Family::D, m / 2)
        };
        let torus = u32::from(fam == Family::D && r == 1);
        Self::single(fam, r, Isogeny::Spin, torus, vec![])
    }

    /// GL(n): SL(n) times a central torus, with G/Z° = PGL(n).
    pub fn gl(n: u32) -> Self {
        assert!(n >= 1);
        let kernel = if n >= 2 { vec![vec![1]] } else { vec![] };
        Self::single(Family::A, n - 1, Isogeny::GL, 1, kernel)
    }

    pub fn sl(n: u32) -> Self {
        assert!(n >= 1);
        Self::single(Family::A, n - 1, Isogeny::SimplyConnected, 0, vec![])
    }

    pub fn pgl(n: u32) -> Self {
        assert!(n >= 1);
        let kernel = if n >= 2 { vec![vec![1]] } else { vec![] };
        Self::single(Family::A, n - 1, Isogeny::Adjoint, 0, kernel)
    }

    /// Simply connected exceptional group.
    pub fn exceptional(family: Family) -> Result<Self, OrbitError> {
        let r = family
            .exceptional_rank()
            .ok_or_else(|| OrbitError::InvalidGroup(format!("{family} is not exceptional")))?;
        GroupForm::new(
            vec![Factor {
                family,
                rank: r,
                isogeny: Isogeny::SimplyConnected,
            }],
            0,
            vec![],
        )
    }

    /// Direct product; kernels are concatenated blockwise.
    pub fn product(parts: &[GroupForm]) -> Self {
        let mut factors = Vec::new();
        let mut torus = 0;
        let widths: Vec<usize> = parts.iter().map(|g| g.center_invariants().len()).collect();
        let total: usize = widths.iter().sum();
        let mut kernel = Vec::new();
        let mut offset = 0;
        for (g, w) in parts.iter().zip(&widths) {
            factors.extend(g.factors.iter().cloned());
            torus += g.central_torus_rank;
            for k in &g.kernel {
                let mut v = vec![0; total];
                v[offset..offset + w].copy_from_slice(k);
                kernel.push(v);
            }
            offset += w;
        }
        GroupForm::new(factors, torus, kernel).expect("product of valid groups")
    }

    pub fn kernel(&self) -> &[Vec<u32>] {
        &self.kernel
    }

    pub fn center_invariants(&self) -> Vec<u32> {
        self.factors
            .iter()
            .flat_map(|f| f.center_invariants())
            .collect()
    }

    /// |Z(G)/Z(G)°| = |Z(G̃)| / |K_0|.
    pub fn component_group_of_center_order(&self) -> u64 {
        let inv = self.center_invariants();
        let total: u64 = inv.iter().map(|&m| m as u64).product();
        total / span(&self.kernel, &inv).len() as u64
    }

    pub fn is_single_factor(&self) -> bool {
        self.factors.len() == 1
    }

    /// The unique factor, or an error for products.
    pub fn factor(&self) -> Result<&Factor, OrbitError> {
        match self.factors.as_slice() {
            [f] => Ok(f),
            fs => Err(OrbitError::NotSingleFactor(fs.len())),
        }
    }

    /// Family and natural dimension of a single classical factor.
    pub fn classical(&self) -> Result<(Family, u32, Isogeny), OrbitError> {
        let f = self.factor()?;
        if !f.family.is_classical() {
            return Err(OrbitError::Exceptional(f.family));
        }
        Ok((f.family, f.natural_dim().expect("classical"), f.isogeny))
    }
}

impl fmt::Display for GroupForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        f.write_str(&s.join(" x "))
    }
}

/// All elements of the subgroup generated by `gens` in Π Z/inv_i.
fn span(gens: &[Vec<u32>], inv: &[u32]) -> BTreeSet<Vec<u32>> {
    let mut seen = BTreeSet::new();
    let zero = vec![0; inv.len()];
    seen.insert(zero.clone());
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y: Vec<u32> = x
                .iter()
                .zip(g)
                .zip(inv)
                .map(|((a, b), m)| (a + b) % m)
                .collect();
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

/// Greedy generating set: walk the subgroup in sorted order and keep each
/// element not yet in the span of those kept.
fn canonical_generators(sub: &BTreeSet<Vec<u32>>, inv: &[u32]) -> Vec<Vec<u32>> {
    let mut gens: Vec<Vec<u32>> = Vec::new();
    let mut cur = span(&gens, inv);
    for x in sub {
        if !cur.contains(x) {
            gens.push(x.clone());
            cur = span(&gens, inv);
        }
    }
    gens
}

/// Image of a subgroup under x ↦ p^N x, i.e. its p'-part.
fn prime_to_part(gens: &[Vec<u32>], inv: &[u32], p: u32) -> Vec<Vec<u32>> {
    gens.iter()
        .map(|g| {
            g.iter()
                .zip(inv)
                .map(|(&x, &m)| {
                    let mut y = x as u64;
                    for _ in 0..32 {
                        y = (y * p as u64) % m as u64;
                    }
                    y as u32
                })
                .collect()
        })
        .collect()
}

/// A prime is rather good when it is good for every factor and does not
/// divide |Z(G)/Z(G)°|.
pub fn rather_good(g: &GroupForm, l: u32) -> bool {
    if !is_prime(l) {
        return false;
    }
    if g.factors.iter().any(|f| f.bad_primes().contains(&l)) {
        return false;
    }
    !g.component_group_of_center_order().is_multiple_of(l as u64)
}

/// Semisimple group G' = G̃/K covering G/Z(G)°, split as a type-A part times
/// simply connected factors of other types. K is K_0, its 2'-part, or its
/// {2,3}'-part according to the factor types present.
pub fn cogood_reduce(g: &GroupForm) -> GroupForm {
    let inv = g.center_invariants();
    let has_exc = g.factors.iter().any(|f| !f.family.is_classical());
    let has_bcd = g.factors.iter().any(|f| !f.is_type_a());
    let mut k = g.kernel.clone();
    if has_bcd {
        k = prime_to_part(&k, &inv, 2);
    }
    if has_exc {
        k = prime_to_part(&k, &inv, 3);
    }
    let sub = span(&k, &inv);
    let mut factors = Vec::new();
    let mut offset = 0;
    for f in &g.factors {
        let w = f.center_invariants().len();
        let isogeny = if !f.is_type_a() {
            match f.family {
                Family::B | Family::D => Isogeny::Spin,
                Family::C => Isogeny::Sp,
                _ => Isogeny::SimplyConnected,
            }
        } else {
            let proj: BTreeSet<Vec<u32>> =
                sub.iter().map(|x| x[offset..offset + w].to_vec()).collect();
            let full: usize = f.center_invariants().iter().map(|&m| m as usize).product();
            if proj.len() == 1 {
                match f.family {
                    Family::A => Isogeny::SimplyConnected,
                    Family::C => Isogeny::Sp,
                    _ => Isogeny::Spin,
                }
            } else if proj.len() == full && f.family == Family::A {
                Isogeny::Adjoint
            } else if f.family == Family::A {
                Isogeny::Intermediate
            } else {
                // B1, D2, D3 keep their classical name.
                f.isogeny
            }
        };
        factors.push(Factor {
            family: f.family,
            rank: f.rank,
            isogeny,
        });
        offset += w;
    }
    GroupForm::new(factors, 0, k).expect("reduction keeps a valid kernel")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VeryEvenTag {
    I,
    II,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NilpotentOrbit {
    pub partition: Partition,
    pub very_even_tag: Option<VeryEvenTag>,
}

impl NilpotentOrbit {
    pub fn new(partition: Partition) -> Self {
        NilpotentOrbit {
            partition,
            very_even_tag: None,
        }
    }
}

impl fmt::Display for NilpotentOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition.compact_label())?;
        if self.partition.is_empty() {
            f.write_str("0")?;
        }
        match self.very_even_tag {
            Some(t) => write!(f, "{t:?}"),
            None => Ok(()),
        }
    }
}

fn is_very_even(p: &Partition) -> bool {
    !p.is_empty()
        && p.multiplicities()
            .iter()
            .all(|(&x, &m)| x % 2 == 0 && m % 2 == 0)
}

/// Nilpotent orbits of a single classical factor, as partitions of the
/// natural dimension, lexicographically descending.
pub fn enumerate_orbits(g: &GroupForm) -> Result<Vec<NilpotentOrbit>, OrbitError> {
    let (fam, n, _) = g.classical()?;
    let constraint = match fam.classical() {
        Some(c) => PartitionConstraint::OrbitValid(c),
        None => PartitionConstraint::Unconstrained,
    };
    let mut out = Vec::new();
    for p in enumerate_partitions(n, constraint)? {
        if fam == Family::D && is_very_even(&p) {
            for t in [VeryEvenTag::I, VeryEvenTag::II] {
                out.push(NilpotentOrbit {
                    partition: p.clone(),
                    very_even_tag: Some(t),
                });
            }
        } else {
            out.push(NilpotentOrbit::new(p));
        }
    }
    Ok(out)
}

/// Closure order as dominance; the two classes of a very even partition are
/// incomparable.
pub fn closure_leq(o1: &NilpotentOrbit, o2: &NilpotentOrbit) -> Result<bool, OrbitError> {
    if o1.partition == o2.partition {
        return Ok(o1.very_even_tag == o2.very_even_tag);
    }
    Ok(dominance_leq(&o1.partition, &o2.partition)?)
}

pub fn is_distinguished(g: &GroupForm, o: &NilpotentOrbit) -> Result<bool, OrbitError> {
    let (fam, n, _) = g.classical()?;
    let p = o.partition.parts();
    let distinct = p.windows(2).all(|w| w[0] > w[1]);
    Ok(match fam {
        Family::A => p == [n] || n == 0,
        Family::C => distinct && p.iter().all(|x| x % 2 == 0),
        _ => distinct && p.iter().all(|x| x % 2 == 1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentGroup {
    Trivial,
    ElementaryAbelian2 { rank: u32 },
    Cyclic { order: u32 },
}

impl ComponentGroup {
    pub fn order(&self) -> u64 {
        match self {
            ComponentGroup::Trivial => 1,
            ComponentGroup::ElementaryAbelian2 { rank } => 1u64 << rank,
            ComponentGroup::Cyclic { order } => *order as u64,
        }
    }

    /// Irreducible characters, which for these abelian groups are as many
    /// as elements.
    pub fn characters(&self) -> Vec<LocalSystem> {
        match *self {
            ComponentGroup::Trivial => vec![LocalSystem::Subset(vec![])],
            ComponentGroup::ElementaryAbelian2 { rank } => (0u64..1 << rank)
                .map(|mask| LocalSystem::Subset((0..rank).filter(|i| mask >> i & 1 == 1).collect()))
                .collect(),
            ComponentGroup::Cyclic { order } => (0..order).map(LocalSystem::Residue).collect(),
        }
    }

    fn normalized(self) -> Self {
        match self {
            ComponentGroup::ElementaryAbelian2 { rank: 0 }
            | ComponentGroup::Cyclic { order: 1 } => ComponentGroup::Trivial,
            c => c,
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A_G(x) for GL, SL, Sp and SO. Spin is refused rather than guessed.
pub fn component_group(g: &GroupForm, o: &NilpotentOrbit) -> Result<ComponentGroup, OrbitError> {
    let (fam, n, iso) = g.classical()?;
    let p = &o.partition;
    let distinct = |parity: u32| {
        p.multiplicities()
            .keys()
            .filter(|&&x| x % 2 == parity)
            .count() as u32
    };
    let c = match (fam, iso) {
        (_, Isogeny::Spin) => return Err(OrbitError::SpinComponentGroup),
        (Family::A, Isogeny::GL) => ComponentGroup::Trivial,
        (Family::A, Isogeny::SimplyConnected) => ComponentGroup::Cyclic {
            order: p.parts().iter().fold(n, |a, &x| gcd(a, x)),
        },
        (Family::C, Isogeny::Sp) => ComponentGroup::ElementaryAbelian2 { rank: distinct(0) },
        (Family::B | Family::D, Isogeny::SO) => ComponentGroup::ElementaryAbelian2 {
            rank: distinct(1).saturating_sub(1),
        },
        _ => return Err(OrbitError::Unsupported(format!("component groups for {g}"))),
    };
    Ok(c.normalized())
}

/// A character of a component group: the set of generators acting by −1
/// for elementary abelian groups, a residue for cyclic ones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LocalSystem {
    Subset(Vec<u32>),
    Residue(u32),
}

impl LocalSystem {
    pub fn is_trivial(&self) -> bool {
        match self {
            LocalSystem::Subset(s) => s.is_empty(),
            LocalSystem::Residue(r) => *r == 0,
        }
    }
}

impl fmt::Display for LocalSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            l if l.is_trivial() => f.write_str("triv"),
            LocalSystem::Subset(s) => {
                let v: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                write!(f, "eps{{{}}}", v.join(","))
            }
            LocalSystem::Residue(r) => write!(f, "chi{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub orbit: NilpotentOrbit,
    pub local_system: LocalSystem,
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.orbit, self.local_system)
    }
}

pub fn enumerate_pairs(g: &GroupForm) -> Result<Vec<Pair>, OrbitError> {
    let mut out = Vec::new();
    for o in enumerate_orbits(g)? {
        for ls in component_group(g, &o)?.characters() {
            out.push(Pair {
                orbit: o.clone(),
                local_system: ls,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orbit(parts: &[u32]) -> NilpotentOrbit {
        NilpotentOrbit::new(Partition::new(parts.to_vec()))
    }

    #[test]
    fn sp4_orbits_and_pairs() {
        let g = GroupForm::sp(4);
        let o: Vec<String> = enumerate_orbits(&g)
            .unwrap()
            .iter()
            .map(|o| o.to_string())
            .collect();
        assert_eq!(o, ["4", "22", "211", "1111"]);
        assert_eq!(enumerate_pairs(&g).unwrap().len(), 7);
        assert_eq!(
            component_group(&g, &orbit(&[2, 2])).unwrap(),
            ComponentGroup::ElementaryAbelian2 { rank: 1 }
        );
    }

    #[test]
    fn so_orbits() {
        let o = enumerate_orbits(&GroupForm::so(3)).unwrap();
        assert_eq!(o, vec![orbit(&[3]), orbit(&[1, 1, 1])]);
        let so9 = GroupForm::so(9);
        assert!(enumerate_orbits(&so9).unwrap().contains(&orbit(&[5, 3, 1])));
        assert_eq!(
            component_group(&so9, &orbit(&[3, 2, 2, 1, 1])).unwrap(),
            ComponentGroup::ElementaryAbelian2 { rank: 1 }
        );
        let pairs = enumerate_pairs(&so9).unwrap();
        assert_eq!(
            pairs
                .iter()
                .filter(|p| p.orbit == orbit(&[5, 3, 1]))
                .count(),
            4
        );
        // very even classes come in pairs
        let so8 = enumerate_orbits(&GroupForm::so(8)).unwrap();
        assert_eq!(
            so8.iter().filter(|o| o.partition.parts() == [4, 4]).count(),
            2
        );
    }

    #[test]
    fn gl_sl() {
        assert_eq!(enumerate_pairs(&GroupForm::gl(3)).unwrap().len(), 3);
        // Σ_λ gcd(λ) over partitions of 4: 4+1+2+1+1
        assert_eq!(enumerate_pairs(&GroupForm::sl(4)).unwrap().len(), 9);
        assert!(matches!(
            component_group(&GroupForm::spin(7), &orbit(&[7])),
            Err(OrbitError::SpinComponentGroup)
        ));
    }

    #[test]
    fn closure_and_distinguished() {
        assert!(closure_leq(&orbit(&[2, 2, 2]), &orbit(&[6])).unwrap());
        assert!(closure_leq(&orbit(&[6, 4, 2]), &orbit(&[12])).unwrap());
        assert!(!closure_leq(&orbit(&[4, 2]), &orbit(&[2, 2, 2])).unwrap());
        assert!(is_distinguished(&GroupForm::sp(12), &orbit(&[6, 4, 2])).unwrap());
        assert!(is_distinguished(&GroupForm::so(9), &orbit(&[5, 3, 1])).unwrap());
        assert!(!is_distinguished(&GroupForm::sp(4), &orbit(&[2, 2])).unwrap());
    }

    #[test]
    fn rather_good_examples() {
        assert!(rather_good(&GroupForm::gl(2), 2));
        assert!(!rather_good(&GroupForm::sl(2), 2));
        assert!(rather_good(&GroupForm::exceptional(Family::E8).unwrap(), 7));
        assert!(!rather_good(
            &GroupForm::exceptional(Family::E8).unwrap(),
            5
        ));
        assert!(!rather_good(&GroupForm::sp(4), 2));
        assert!(rather_good(&GroupForm::so(3), 2));
    }

    #[test]
    fn cogood_examples() {
        assert_eq!(cogood_reduce(&GroupForm::pgl(2)), GroupForm::pgl(2));
        assert_eq!(cogood_reduce(&GroupForm::so(9)), GroupForm::spin(9));
        let e8 = GroupForm::exceptional(Family::E8).unwrap();
        assert_eq!(cogood_reduce(&e8), e8);
        assert_eq!(cogood_reduce(&GroupForm::gl(3)), GroupForm::pgl(3));
        let mixed = GroupForm::product(&[GroupForm::gl(6), GroupForm::sp(4)]);
        let r = cogood_reduce(&mixed);
        assert_eq!(r.factors[0].isogeny, Isogeny::Intermediate);
        assert_eq!(r.component_group_of_center_order(), 2 * 2);
        assert_eq!(cogood_reduce(&r), r);
    }
}
