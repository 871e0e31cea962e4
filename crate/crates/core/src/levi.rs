//! Levi classes of classical groups, embeddings between them, induced
//! orbits and relative Weyl groups.
//!
//! A Levi class is GL(b_1) × … × GL(b_s) × G_r where G_r is the classical
//! group of the same family and rank r (type A has no residual factor).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::orbits::{Family, GroupForm, Isogeny, NilpotentOrbit, OrbitError};
use crate::partitions::{
    add_padded, collapse, dominance_leq, enumerate_partitions, is_valid_orbit_partition, Partition,
    PartitionConstraint, PartitionError,
};
use crate::weylrep::WeylDescriptor;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeviError {
    #[error("levi classes live in different groups")]
    AmbientMismatch,
    #[error("orbit data does not fit the levi class: {0}")]
    InconsistentData(String),
    #[error("{0} does not embed in {1}")]
    NotEmbedded(String, String),
    #[error("unsupported ambient group: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeviClass {
    /// GL block sizes, largest first.
    pub gl_blocks: Partition,
    pub residual_rank: u32,
    pub ambient: GroupForm,
}

impl LeviClass {
    pub fn new(
        ambient: &GroupForm,
        gl_blocks: Partition,
        residual_rank: u32,
    ) -> Result<Self, LeviError> {
        let (fam, _, _) = ambient.classical()?;
        let rank = ambient.factor()?.rank;
        let total = match fam {
            Family::A => rank + 1,
            _ => rank,
        };
        if gl_blocks.size() + residual_rank != total || (fam == Family::A && residual_rank != 0) {
            return Err(LeviError::InconsistentData(format!(
                "blocks {gl_blocks} and residual rank {residual_rank} in {ambient}"
            )));
        }
        Ok(LeviClass {
            gl_blocks,
            residual_rank,
            ambient: ambient.clone(),
        })
    }

    fn family(&self) -> Family {
        self.ambient.factors[0].family
    }

    /// Natural dimension of the residual classical factor.
    pub fn residual_dim(&self) -> u32 {
        match self.family() {
            Family::A => 0,
            Family::B => 2 * self.residual_rank + 1,
            _ => 2 * self.residual_rank,
        }
    }

    /// The residual factor as a group of its own.
    pub fn residual_group(&self) -> Option<GroupForm> {
        let f = &self.ambient.factors[0];
        let d = self.residual_dim();
        match (f.family, f.isogeny) {
            (Family::A, _) => None,
            (Family::C, _) => Some(GroupForm::sp(d)),
            (_, Isogeny::Spin) => Some(GroupForm::spin(d)),
            _ => Some(GroupForm::so(d)),
        }
    }
}

impl fmt::Display for LeviClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (&b, &m) in self.gl_blocks.multiplicities().iter().rev() {
            if m == 1 {
                parts.push(format!("GL({b})"));
            } else {
                parts.push(format!("GL({b})^{m}"));
            }
        }
        if let Some(r) = self.residual_group().filter(|_| self.residual_rank > 0) {
            parts.push(r.to_string());
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        f.write_str(&parts.join(" x "))
    }
}

/// Orbit data on a Levi: one partition per GL block (aligned with
/// `gl_blocks`) and an orbit of the residual factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LeviOrbitData {
    pub gl_orbits: Vec<Partition>,
    pub residual_orbit: NilpotentOrbit,
}

impl LeviOrbitData {
    /// Zero orbit everywhere.
    pub fn zero(l: &LeviClass) -> Self {
        LeviOrbitData {
            gl_orbits: l
                .gl_blocks
                .parts()
                .iter()
                .map(|&b| Partition::new(vec![1; b as usize]))
                .collect(),
            residual_orbit: NilpotentOrbit::new(Partition::new(vec![1; l.residual_dim() as usize])),
        }
    }

    /// Regular orbits on the GL blocks with the given residual orbit.
    pub fn regular_gl(l: &LeviClass, residual: Partition) -> Self {
        LeviOrbitData {
            gl_orbits: l
                .gl_blocks
                .parts()
                .iter()
                .map(|&b| Partition::row(b))
                .collect(),
            residual_orbit: NilpotentOrbit::new(residual),
        }
    }

    fn check(&self, l: &LeviClass) -> Result<(), LeviError> {
        let sizes: Vec<u32> = self.gl_orbits.iter().map(|p| p.size()).collect();
        if sizes != l.gl_blocks.parts() || self.residual_orbit.partition.size() != l.residual_dim()
        {
            return Err(LeviError::InconsistentData(format!("orbit data for {l}")));
        }
        if let Some(c) = l.family().classical() {
            if !is_valid_orbit_partition(&self.residual_orbit.partition, c)? {
                return Err(LeviError::InconsistentData(format!(
                    "{} is not a type {c} orbit",
                    self.residual_orbit.partition
                )));
            }
        }
        Ok(())
    }
}

/// Levi classes of a single classical factor: by residual rank descending,
/// then block multiset lexicographically descending. Type D skips residual
/// rank one, since SO(2) is a GL(1).
pub fn enumerate_levi_classes(g: &GroupForm) -> Result<Vec<LeviClass>, LeviError> {
    let (fam, n, _) = g.classical()?;
    let rank = g.factor()?.rank;
    let mut out = Vec::new();
    if fam == Family::A {
        for p in enumerate_partitions(n, PartitionConstraint::Unconstrained)? {
            out.push(LeviClass {
                gl_blocks: p,
                residual_rank: 0,
                ambient: g.clone(),
            });
        }
        return Ok(out);
    }
    for r in (0..=rank).rev() {
        if fam == Family::D && r == 1 {
            continue;
        }
        for p in enumerate_partitions(rank - r, PartitionConstraint::Unconstrained)? {
            out.push(LeviClass {
                gl_blocks: p,
                residual_rank: r,
                ambient: g.clone(),
            });
        }
    }
    Ok(out)
}

/// Where each GL block of a smaller Levi L goes inside a larger Levi M:
/// `target[i] = Some(j)` puts block i into M's GL block j, `None` into the
/// residual factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub target: Vec<Option<usize>>,
}

/// Every way of placing L's blocks in M, deduplicated up to permuting equal
/// blocks of L.
pub fn embeddings(l: &LeviClass, m: &LeviClass) -> Result<Vec<Embedding>, LeviError> {
    if l.ambient != m.ambient {
        return Err(LeviError::AmbientMismatch);
    }
    if l.residual_rank > m.residual_rank {
        return Ok(Vec::new());
    }
    let mut cap: Vec<u32> = m.gl_blocks.parts().to_vec();
    let mut res_cap = m.residual_rank - l.residual_rank;
    let blocks = l.gl_blocks.parts();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(blocks.len());
    place(blocks, 0, &mut cap, &mut res_cap, &mut cur, &mut out);
    Ok(out)
}

fn place(
    blocks: &[u32],
    i: usize,
    cap: &mut [u32],
    res_cap: &mut u32,
    cur: &mut Vec<Option<usize>>,
    out: &mut Vec<Embedding>,
) {
    if i == blocks.len() {
        if cap.iter().all(|&c| c == 0) && *res_cap == 0 {
            out.push(Embedding {
                target: cur.clone(),
            });
        }
        return;
    }
    let b = blocks[i];
    // equal consecutive blocks are placed in non-decreasing target order
    let floor = if i > 0 && blocks[i - 1] == b {
        cur[i - 1]
    } else {
        None
    };
    if floor.is_none() && *res_cap >= b {
        *res_cap -= b;
        cur.push(None);
        place(blocks, i + 1, cap, res_cap, cur, out);
        cur.pop();
        *res_cap += b;
    }
    let start = floor.unwrap_or(0);
    for j in start..cap.len() {
        if cap[j] >= b {
            cap[j] -= b;
            cur.push(Some(j));
            place(blocks, i + 1, cap, res_cap, cur, out);
            cur.pop();
            cap[j] += b;
        }
    }
}

/// Whether L is conjugate into M: L's blocks fill M's blocks exactly, with
/// the rest absorbed by the residual factor.
pub fn embeds(l: &LeviClass, m: &LeviClass) -> Result<bool, LeviError> {
    Ok(!embeddings(l, m)?.is_empty())
}

fn doubled(p: &Partition) -> Partition {
    Partition::new(p.parts().iter().map(|x| 2 * x).collect())
}

/// Induction from L to M along an embedding. GL blocks landing in the same
/// GL block of M are summed row-wise; blocks landing in the residual factor
/// are added with doubled parts and the result is collapsed.
pub fn induce_to_levi(
    l: &LeviClass,
    d: &LeviOrbitData,
    m: &LeviClass,
    e: &Embedding,
) -> Result<LeviOrbitData, LeviError> {
    d.check(l)?;
    let mut gl: Vec<Partition> = vec![Partition::empty(); m.gl_blocks.len()];
    let mut residual = d.residual_orbit.partition.clone();
    for (i, t) in e.target.iter().enumerate() {
        match t {
            Some(j) => gl[*j] = add_padded(&gl[*j], &d.gl_orbits[i]),
            None => residual = add_padded(&residual, &doubled(&d.gl_orbits[i])),
        }
    }
    for (p, &b) in gl.iter().zip(m.gl_blocks.parts()) {
        if p.size() != b {
            return Err(LeviError::NotEmbedded(l.to_string(), m.to_string()));
        }
    }
    if let Some(c) = m.family().classical() {
        residual = collapse(&residual, c)?;
    }
    let tag = if residual == d.residual_orbit.partition {
        d.residual_orbit.very_even_tag
    } else {
        None
    };
    Ok(LeviOrbitData {
        gl_orbits: gl,
        residual_orbit: NilpotentOrbit {
            partition: residual,
            very_even_tag: tag,
        },
    })
}

/// Induced orbit in the ambient group.
pub fn induce_orbit(l: &LeviClass, d: &LeviOrbitData) -> Result<NilpotentOrbit, LeviError> {
    d.check(l)?;
    if l.family() == Family::A {
        let p = d
            .gl_orbits
            .iter()
            .fold(Partition::empty(), |acc, p| add_padded(&acc, p));
        return Ok(NilpotentOrbit::new(p));
    }
    let g = LeviClass {
        gl_blocks: Partition::empty(),
        residual_rank: l.ambient.factor()?.rank,
        ambient: l.ambient.clone(),
    };
    let e = Embedding {
        target: vec![None; l.gl_blocks.len()],
    };
    Ok(induce_to_levi(l, d, &g, &e)?.residual_orbit)
}

/// Componentwise closure order of orbit data on the same Levi.
pub fn data_leq(a: &LeviOrbitData, b: &LeviOrbitData) -> Result<bool, LeviError> {
    if a.gl_orbits.len() != b.gl_orbits.len() {
        return Err(LeviError::InconsistentData("different block counts".into()));
    }
    for (x, y) in a.gl_orbits.iter().zip(&b.gl_orbits) {
        if !dominance_leq(x, y)? {
            return Ok(false);
        }
    }
    Ok(crate::orbits::closure_leq(
        &a.residual_orbit,
        &b.residual_orbit,
    )?)
}

/// N_G(M)/M for a Levi carrying a cuspidal datum: a product of
/// hyperoctahedral groups (types B/C, and D with a nonzero residual factor)
/// or of symmetric groups (type A), one per distinct block size.
pub fn relative_weyl(g: &GroupForm, m: &LeviClass) -> Result<WeylDescriptor, LeviError> {
    if &m.ambient != g {
        return Err(LeviError::AmbientMismatch);
    }
    let fam = m.family();
    if fam == Family::D && m.residual_rank == 0 && !m.gl_blocks.is_empty() {
        return Err(LeviError::Unsupported(
            "type D with no residual factor has an index-two relative group".into(),
        ));
    }
    let mults: Vec<u32> = m
        .gl_blocks
        .multiplicities()
        .values()
        .rev()
        .copied()
        .collect();
    let parts: Vec<WeylDescriptor> = mults
        .iter()
        .map(|&k| match fam {
            Family::A => WeylDescriptor::Symmetric(k),
            _ => WeylDescriptor::Hyperoctahedral(k),
        })
        .collect();
    Ok(match parts.len() {
        0 => WeylDescriptor::Product(vec![]),
        1 => parts.into_iter().next().expect("one part"),
        _ => WeylDescriptor::Product(parts),
    })
}
