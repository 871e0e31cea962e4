//! Cuspidal data in characteristic 0 and ℓ, the order ≼ between them, and the
//! partition of ℓ-cuspidal data into 0-series.
//!
//! Supported groups: Sp(2n), SO(m), Spin(m), GL(n), SL(n). The Sp case is
//! the fully checked one; the others follow the same pattern.
//!
//! Characteristic 0 is encoded as ℓ = 0 throughout.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::levi::{
    data_leq, embeddings, induce_to_levi, relative_weyl, LeviClass, LeviError, LeviOrbitData,
};
use crate::orbits::{rather_good, Family, GroupForm, Isogeny, NilpotentOrbit, OrbitError};
use crate::partitions::{
    bipartition_count, enumerate_bipartitions, enumerate_partitions, is_prime, partition_count,
    Partition, PartitionConstraint, PartitionError,
};
use crate::weylrep::{modular_irr_count_wreath, weyl_order, WeylError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CuspidalError {
    #[error("{l} is not rather good for {group}")]
    NotRatherGood { l: u32, group: String },
    #[error("unsupported group: {0}")]
    Unsupported(String),
    #[error("inconsistent 0-series computation: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Levi(#[from] LeviError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A character of Z(G)/Z(G)°.
///
/// `Residue` is the character x ↦ ζ^(value·x) of a cyclic group of order
/// `modulus`. `NonTrivial` is the opaque label used for the Spin family
/// whose exact character is not pinned down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CentralCharacter {
    Trivial,
    Residue { modulus: u32, value: u32 },
    NonTrivial,
}

impl CentralCharacter {
    fn residue(modulus: u32, value: u32) -> Self {
        if value.is_multiple_of(modulus) {
            CentralCharacter::Trivial
        } else {
            CentralCharacter::Residue {
                modulus,
                value: value % modulus,
            }
        }
    }
}

impl fmt::Display for CentralCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralCharacter::Trivial => f.write_str("triv"),
            CentralCharacter::Residue { modulus, value } => write!(f, "{value}/{modulus}"),
            CentralCharacter::NonTrivial => f.write_str("nontriv"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CuspidalDatum {
    pub levi: LeviClass,
    pub orbit_data: LeviOrbitData,
    pub central_char: CentralCharacter,
    /// 0 or the prime ℓ.
    pub char_tag: u32,
}

impl CuspidalDatum {
    /// The GL block sizes ν.
    pub fn nu(&self) -> &Partition {
        &self.levi.gl_blocks
    }

    pub fn residual_orbit(&self) -> &NilpotentOrbit {
        &self.orbit_data.residual_orbit
    }
}

impl fmt::Display for CuspidalDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nu={} ", self.levi, self.levi.gl_blocks)?;
        if self.levi.residual_group().is_some() && self.levi.residual_rank > 0 {
            write!(f, "O={} ", self.orbit_data.residual_orbit)?;
        }
        write!(f, "chi={} l={}", self.central_char, self.char_tag)
    }
}

fn check_l(g: &GroupForm, l: u32) -> Result<(), CuspidalError> {
    if l != 0 && !(is_prime(l) && rather_good(g, l)) {
        return Err(CuspidalError::NotRatherGood {
            l,
            group: g.to_string(),
        });
    }
    Ok(())
}

/// Block multisets of total size t·unit: ν ∈ Part(t, ℓ) scaled by `unit`,
/// or all ones when ℓ = 0.
fn block_choices(t: u32, l: u32, unit: u32) -> Result<Vec<Partition>, CuspidalError> {
    let base = if l == 0 {
        vec![Partition::new(vec![1; t as usize])]
    } else {
        enumerate_partitions(t, PartitionConstraint::PowersOf(l))?
    };
    Ok(base
        .into_iter()
        .map(|p| Partition::new(p.parts().iter().map(|x| x * unit).collect()))
        .collect())
}

/// (2k, 2k−2, …, 2).
fn sp_cuspidal_orbit(k: u32) -> Partition {
    Partition::new((1..=k).map(|i| 2 * i).collect())
}

/// (2k−1, 2k−3, …, 1).
fn so_square_orbit(k: u32) -> Partition {
    Partition::new((1..=k).map(|i| 2 * i - 1).collect())
}

/// (2j−1, 2j−5, …), a partition of j(j+1)/2.
fn spin_triangular_orbit(j: u32) -> Partition {
    let mut parts = Vec::new();
    let mut x = 2 * j as i64 - 1;
    while x > 0 {
        parts.push(x as u32);
        x -= 4;
    }
    Partition::new(parts)
}

/// A residual family: residual natural dimension, cuspidal orbit, character.
type Residual = (u32, Partition, CentralCharacter);

fn residual_families(g: &GroupForm) -> Result<Vec<Residual>, CuspidalError> {
    let (fam, n, iso) = g.classical()?;
    let mut out = Vec::new();
    match (fam, iso) {
        (Family::C, Isogeny::Sp) => {
            let mut k = 0;
            while k * (k + 1) <= n {
                let t = k * (k + 1) / 2;
                out.push((
                    2 * t,
                    sp_cuspidal_orbit(k),
                    CentralCharacter::residue(2, t % 2),
                ));
                k += 1;
            }
        }
        (Family::B | Family::D, Isogeny::SO | Isogeny::Spin) => {
            let mut k = 0;
            while k * k <= n {
                if (n - k * k) % 2 == 0 {
                    out.push((k * k, so_square_orbit(k), CentralCharacter::Trivial));
                }
                k += 1;
            }
            if iso == Isogeny::Spin {
                let mut j = 2;
                while j * (j + 1) / 2 <= n {
                    let t = j * (j + 1) / 2;
                    if (n - t) % 2 == 0 {
                        out.push((t, spin_triangular_orbit(j), CentralCharacter::NonTrivial));
                    }
                    j += 1;
                }
            }
        }
        _ => return Err(CuspidalError::Unsupported(g.to_string())),
    }
    Ok(out)
}

/// ℓ-cuspidal data (ℓ = 0 for characteristic 0), ordered by residual family
/// and then by ν lexicographically descending.
pub fn enumerate_cuspidal_data(g: &GroupForm, l: u32) -> Result<Vec<CuspidalDatum>, CuspidalError> {
    check_l(g, l)?;
    let (fam, n, iso) = g.classical()?;
    let mut out = Vec::new();
    if fam == Family::A {
        let chars: Vec<(u32, CentralCharacter)> = match iso {
            Isogeny::GL => vec![(1, CentralCharacter::Trivial)],
            Isogeny::SimplyConnected => (0..n)
                .map(|r| (n / gcd(r, n), CentralCharacter::residue(n, r)))
                .collect(),
            _ => return Err(CuspidalError::Unsupported(g.to_string())),
        };
        for (unit, chi) in chars {
            for nu in block_choices(n / unit, l, unit)? {
                let levi = LeviClass::new(g, nu, 0)?;
                let orbit_data = LeviOrbitData::regular_gl(&levi, Partition::empty());
                out.push(CuspidalDatum {
                    levi,
                    orbit_data,
                    central_char: chi,
                    char_tag: l,
                });
            }
        }
        return Ok(out);
    }
    for (dim, orbit, chi) in residual_families(g)? {
        let t = (n - dim) / 2;
        for nu in block_choices(t, l, 1)? {
            let levi = LeviClass::new(g, nu, dim / 2)?;
            let orbit_data = LeviOrbitData::regular_gl(&levi, orbit.clone());
            out.push(CuspidalDatum {
                levi,
                orbit_data,
                central_char: chi,
                char_tag: l,
            });
        }
    }
    Ok(out)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cuspidal pairs of G itself in characteristic 0.
pub fn zero_cuspidal_pair(
    g: &GroupForm,
) -> Result<Vec<(NilpotentOrbit, CentralCharacter)>, CuspidalError> {
    let (fam, n, _) = g.classical()?;
    Ok(enumerate_cuspidal_data(g, 0)?
        .into_iter()
        .filter(|d| match fam {
            Family::A => d.nu().parts() == [n],
            _ => d.nu().is_empty(),
        })
        .map(|d| {
            let o = match fam {
                Family::A => NilpotentOrbit::new(Partition::row(n)),
                _ => d.orbit_data.residual_orbit.clone(),
            };
            (o, d.central_char)
        })
        .collect())
}

/// Central character recomputed from the datum's shape. GL blocks carry
/// trivial local systems and contribute nothing. For SL the character is
/// not determined by the Levi and the stored one is returned.
pub fn central_character_of(d: &CuspidalDatum) -> CentralCharacter {
    let f = &d.levi.ambient.factors[0];
    let res = d.orbit_data.residual_orbit.partition.parts();
    match (f.family, f.isogeny) {
        (Family::C, _) => {
            let k = res.len() as u32;
            CentralCharacter::residue(2, k * (k + 1) / 2)
        }
        (Family::B | Family::D, _) => {
            let square =
                res.windows(2).all(|w| w[0] == w[1] + 2) && res.last().is_none_or(|&x| x == 1);
            if square {
                CentralCharacter::Trivial
            } else {
                CentralCharacter::NonTrivial
            }
        }
        (Family::A, Isogeny::GL) => CentralCharacter::Trivial,
        _ => d.central_char,
    }
}

/// d1 ≼ d2: equal central characters, L1 conjugate into L2, and the orbit of
/// d2 in the closure of the orbit induced from d1 to L2.
pub fn order_leq(d1: &CuspidalDatum, d2: &CuspidalDatum) -> Result<bool, CuspidalError> {
    if d1.levi.ambient != d2.levi.ambient {
        return Err(LeviError::AmbientMismatch.into());
    }
    if central_character_of(d1) != central_character_of(d2) || d1.central_char != d2.central_char {
        return Ok(false);
    }
    for e in embeddings(&d1.levi, &d2.levi)? {
        let induced = induce_to_levi(&d1.levi, &d1.orbit_data, &d2.levi, &e)?;
        if data_leq(&d2.orbit_data, &induced)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The characteristic-0 datum with the same residual family and central
/// character and all GL blocks minimal.
pub fn k_projection(d: &CuspidalDatum) -> Result<CuspidalDatum, CuspidalError> {
    let zero = enumerate_cuspidal_data(&d.levi.ambient, 0)?;
    zero.into_iter()
        .find(|z| {
            z.central_char == d.central_char
                && z.levi.residual_rank == d.levi.residual_rank
                && z.orbit_data.residual_orbit == d.orbit_data.residual_orbit
        })
        .ok_or_else(|| {
            CuspidalError::Inconsistent(format!("no characteristic-0 datum matches {d}"))
        })
}

/// The ≼-largest 0-cuspidal datum below `d`, cross-checked against the
/// k-projection.
pub fn zero_series_of(d: &CuspidalDatum) -> Result<CuspidalDatum, CuspidalError> {
    let zero = enumerate_cuspidal_data(&d.levi.ambient, 0)?;
    let mut below = Vec::new();
    for z in zero {
        if order_leq(&z, d)? {
            below.push(z);
        }
    }
    let mut maxima = Vec::new();
    for m in &below {
        let mut top = true;
        for x in &below {
            if !order_leq(x, m)? {
                top = false;
                break;
            }
        }
        if top {
            maxima.push(m.clone());
        }
    }
    let [max] = maxima.as_slice() else {
        return Err(CuspidalError::Inconsistent(format!(
            "{} maximal 0-cuspidal data below {d}",
            maxima.len()
        )));
    };
    let proj = k_projection(d)?;
    if &proj != max {
        return Err(CuspidalError::Inconsistent(format!(
            "maximum {max} but projection {proj}"
        )));
    }
    Ok(max.clone())
}

/// Fibers of `zero_series_of`, in the order of the 0-cuspidal data.
pub fn partition_into_zero_series(
    g: &GroupForm,
    l: u32,
) -> Result<Vec<(CuspidalDatum, Vec<CuspidalDatum>)>, CuspidalError> {
    let mut fibers: Vec<(CuspidalDatum, Vec<CuspidalDatum>)> = enumerate_cuspidal_data(g, 0)?
        .into_iter()
        .map(|z| (z, Vec::new()))
        .collect();
    for d in enumerate_cuspidal_data(g, l)? {
        let z = zero_series_of(&d)?;
        let slot = fibers
            .iter_mut()
            .find(|(k, _)| *k == z)
            .ok_or_else(|| CuspidalError::Inconsistent(format!("unknown 0-datum {z}")))?;
        slot.1.push(d);
    }
    Ok(fibers)
}

/// Multiplicities of the distinct block sizes of ν, largest size first.
fn block_multiplicities(nu: &Partition) -> Vec<u32> {
    nu.multiplicities().values().rev().copied().collect()
}

/// Number of pairs in the series of `d`: the number of simple modules of the
/// relative Weyl group over a field of characteristic `d.char_tag`.
pub fn series_size(g: &GroupForm, d: &CuspidalDatum) -> Result<u128, CuspidalError> {
    // validates the relative group, which is unsupported for split type D
    relative_weyl(g, &d.levi)?;
    let m = block_multiplicities(d.nu());
    let l = d.char_tag;
    if g.factors[0].family == Family::A {
        let mut out = 1u128;
        for &k in &m {
            out *= if l == 0 {
                partition_count(k)
            } else {
                enumerate_partitions(k, PartitionConstraint::Regular(l))?.len() as u128
            };
        }
        return Ok(out);
    }
    if l == 0 {
        return Ok(m.iter().map(|&k| bipartition_count(k)).product());
    }
    Ok(modular_irr_count_wreath(&m, l)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    pub n: u32,
    pub l: u32,
    pub lhs: u128,
    pub rhs: u128,
    pub equal: bool,
}

/// Σ_{ν ∈ Part(n, ℓ)} Π_i |ℓ-regular Bipart(m_i(ν))| against |Bipart(n)|.
pub fn verify_counting_identity(n: u32, l: u32) -> Result<CountingReport, CuspidalError> {
    let mut lhs = 0u128;
    for nu in enumerate_partitions(n, PartitionConstraint::PowersOf(l))? {
        lhs += modular_irr_count_wreath(&block_multiplicities(&nu), l)?;
    }
    let rhs = enumerate_bipartitions(n, None)?.len() as u128;
    Ok(CountingReport {
        n,
        l,
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// Whether ℓ divides no |N_G(L)/L| over the ℓ-cuspidal data with central
/// character χ.
pub fn lusztig_hypothesis(
    g: &GroupForm,
    chi: CentralCharacter,
    l: u32,
) -> Result<bool, CuspidalError> {
    for d in enumerate_cuspidal_data(g, l)? {
        if d.central_char == chi
            && weyl_order(&relative_weyl(g, &d.levi)?).is_multiple_of(l as u128)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    const FAITHFUL: CentralCharacter = CentralCharacter::Residue {
        modulus: 2,
        value: 1,
    };

    #[test]
    fn zero_cuspidal_pairs() {
        let sp6 = zero_cuspidal_pair(&GroupForm::sp(6)).unwrap();
        assert_eq!(sp6, vec![(NilpotentOrbit::new(p(&[4, 2])), FAITHFUL)]);
        assert!(zero_cuspidal_pair(&GroupForm::sp(4)).unwrap().is_empty());
        let so9 = zero_cuspidal_pair(&GroupForm::so(9)).unwrap();
        assert_eq!(
            so9,
            vec![(
                NilpotentOrbit::new(p(&[5, 3, 1])),
                CentralCharacter::Trivial
            )]
        );
        assert_eq!(zero_cuspidal_pair(&GroupForm::gl(1)).unwrap().len(), 1);
        assert!(zero_cuspidal_pair(&GroupForm::gl(2)).unwrap().is_empty());
        // φ(4) = 2 faithful characters
        assert_eq!(zero_cuspidal_pair(&GroupForm::sl(4)).unwrap().len(), 2);
        let spin6 = zero_cuspidal_pair(&GroupForm::spin(6)).unwrap();
        assert_eq!(
            spin6,
            vec![(
                NilpotentOrbit::new(p(&[5, 1])),
                CentralCharacter::NonTrivial
            )]
        );
    }

    #[test]
    fn sp_enumeration() {
        let d = enumerate_cuspidal_data(&GroupForm::sp(4), 3).unwrap();
        let got: Vec<(Vec<u32>, usize)> = d
            .iter()
            .map(|d| (d.nu().parts().to_vec(), d.residual_orbit().partition.len()))
            .collect();
        assert_eq!(got, vec![(vec![1, 1], 0), (vec![1], 1)]);
        assert_eq!(
            enumerate_cuspidal_data(&GroupForm::sp(8), 3).unwrap().len(),
            5
        );
        assert_eq!(
            enumerate_cuspidal_data(&GroupForm::sp(4), 0).unwrap().len(),
            2
        );
        assert!(enumerate_cuspidal_data(&GroupForm::sp(4), 2).is_err());
    }

    #[test]
    fn central_characters() {
        let d = enumerate_cuspidal_data(&GroupForm::sp(12), 0).unwrap();
        assert_eq!(central_character_of(&d[0]), CentralCharacter::Trivial);
        assert_eq!(central_character_of(&d[2]), FAITHFUL);
        for x in &d {
            assert_eq!(central_character_of(x), x.central_char);
        }
    }

    #[test]
    fn order_examples() {
        let d = enumerate_cuspidal_data(&GroupForm::sp(12), 0).unwrap();
        assert!(order_leq(&d[1], &d[2]).unwrap());
        assert!(!order_leq(&d[2], &d[1]).unwrap());
        assert!(!order_leq(&d[0], &d[1]).unwrap());
        assert!(order_leq(&d[0], &d[3]).unwrap());
        for x in &d {
            assert!(order_leq(x, x).unwrap());
        }
    }

    #[test]
    fn zero_series_examples() {
        let g = GroupForm::sp(8);
        let data = enumerate_cuspidal_data(&g, 3).unwrap();
        let d = data.iter().find(|d| d.nu() == &p(&[3])).unwrap();
        let z = zero_series_of(d).unwrap();
        assert_eq!(z.nu(), &p(&[1, 1, 1]));
        assert_eq!(z.residual_orbit().partition, p(&[2]));
        let fibers = partition_into_zero_series(&g, 3).unwrap();
        let sizes: Vec<usize> = fibers.iter().map(|f| f.1.len()).collect();
        assert_eq!(sizes, vec![2, 2, 1]);
        let sizes: Vec<usize> = partition_into_zero_series(&GroupForm::sp(4), 5)
            .unwrap()
            .iter()
            .map(|f| f.1.len())
            .collect();
        assert_eq!(sizes, vec![1, 1]);
    }

    #[test]
    fn series_sizes() {
        let g = GroupForm::sp(4);
        let zero = enumerate_cuspidal_data(&g, 0).unwrap();
        assert_eq!(series_size(&g, &zero[0]).unwrap(), 5);
        let three = enumerate_cuspidal_data(&g, 3).unwrap();
        assert_eq!(series_size(&g, &three[0]).unwrap(), 5);
        assert_eq!(series_size(&g, &three[1]).unwrap(), 2);
    }

    #[test]
    fn counting_examples() {
        for (n, v) in [(0, 1), (2, 5), (3, 10)] {
            let r = verify_counting_identity(n, 3).unwrap();
            assert_eq!((r.lhs, r.rhs, r.equal), (v, v, true));
        }
    }

    #[test]
    fn hypothesis_examples() {
        assert!(lusztig_hypothesis(&GroupForm::sp(6), FAITHFUL, 5).unwrap());
        assert!(lusztig_hypothesis(&GroupForm::sp(6), FAITHFUL, 3).unwrap());
        assert!(!lusztig_hypothesis(&GroupForm::sp(20), CentralCharacter::Trivial, 3).unwrap());
    }
}
