//! One line per acceptance criterion: `[PASS|FAIL] <n> <name> (<time>) <detail>`.
//! Exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use modspringer::cuspidal::{
    enumerate_cuspidal_data, k_projection, order_leq, series_size, verify_counting_identity,
    CuspidalDatum,
};
use modspringer::levi::{
    embeddings, enumerate_levi_classes, induce_orbit, induce_to_levi, LeviClass, LeviOrbitData,
};
use modspringer::orbits::{
    component_group, enumerate_orbits, enumerate_pairs, rather_good, GroupForm, NilpotentOrbit,
};
use modspringer::partitions::{
    collapse, dominance_leq, is_prime, is_valid_orbit_partition, partition_count, transpose,
    ClassicalFamily, Partition,
};
use modspringer::springerdata::{reproduce_report, DataSource, ReportCase};
use modspringer::weylrep::{build_character_table, induce_character, l_blocks, WeylDescriptor};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Time budgets, in seconds; measured on the test profile in use.
const BUDGET_IDENTITY: f64 = 5.0;
const BUDGET_COLLAPSE: f64 = 30.0;
const BUDGET_E8: f64 = 10.0;

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec())
}

/// Independent generator: partitions of n with parts at most `max`.
fn gen(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition::new(prefix.clone()));
    }
    for first in 1..=max.min(n) {
        prefix.push(first);
        gen(n - first, first, prefix, out);
        prefix.pop();
    }
}

fn all_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    gen(n, n, &mut Vec::new(), &mut out);
    out
}

/// Parts of the constrained parity occur with even multiplicity.
fn valid_oracle(q: &Partition, fam: ClassicalFamily) -> bool {
    let bad = if fam == ClassicalFamily::C { 1 } else { 0 };
    q.parts()
        .iter()
        .all(|&x| x % 2 != bad || q.parts().iter().filter(|&&y| y == x).count() % 2 == 0)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Duration, budget: f64) -> Result<(), String> {
    ensure(t.as_secs_f64() < budget, || {
        format!("took {:.2}s, budget {budget}s", t.as_secs_f64())
    })
}

fn c1_counting_identity() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for l in [3, 5, 7, 11] {
        for n in 0..=12 {
            let r = verify_counting_identity(n, l).map_err(|e| e.to_string())?;
            ensure(r.equal, || format!("n={n} l={l}: {} != {}", r.lhs, r.rhs))?;
            checked += 1;
        }
    }
    within(t.elapsed(), BUDGET_IDENTITY)?;
    Ok(format!("{checked} cases"))
}

fn c2_census() -> Outcome {
    let mut sp4 = String::new();
    for l in [3, 5, 7] {
        for n in 1..=6 {
            let g = GroupForm::sp(2 * n);
            let pairs = enumerate_pairs(&g).map_err(|e| e.to_string())?.len() as u128;
            let data = enumerate_cuspidal_data(&g, l).map_err(|e| e.to_string())?;
            let sizes: Vec<u128> = data
                .iter()
                .map(|d| series_size(&g, d))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            let total: u128 = sizes.iter().sum();
            ensure(total == pairs, || {
                format!("Sp({}) l={l}: {total} != {pairs}", 2 * n)
            })?;
            if n == 2 && l == 3 {
                let mut s = sizes.clone();
                s.sort_unstable_by(|a, b| b.cmp(a));
                ensure(pairs == 7 && s == vec![5, 2], || {
                    format!("Sp(4) l=3: {pairs} = {s:?}")
                })?;
                sp4 = "Sp(4) l=3: 7 = 5+2".to_string();
            }
        }
    }
    Ok(sp4)
}

/// Induced orbit of the zero orbit on the GL1 blocks times `cusp` on the
/// residual factor of rank `rank`.
fn induced_from(g: &GroupForm, gl: u32, rank: u32, cusp: Partition) -> Result<Partition, String> {
    let l =
        LeviClass::new(g, Partition::new(vec![1; gl as usize]), rank).map_err(|e| e.to_string())?;
    let d = LeviOrbitData {
        gl_orbits: vec![p(&[1]); gl as usize],
        residual_orbit: NilpotentOrbit::new(cusp),
    };
    Ok(induce_orbit(&l, &d).map_err(|e| e.to_string())?.partition)
}

fn c3_closed_forms() -> Outcome {
    let mut cases = 0;
    for n in 1..=12u32 {
        let g = GroupForm::sp(2 * n);
        let mut prev: Option<Partition> = None;
        let mut k = 0;
        while k * (k + 1) / 2 <= n {
            let cusp = Partition::new((1..=k).rev().map(|i| 2 * i).collect());
            let got = induced_from(&g, n - k * (k + 1) / 2, k * (k + 1) / 2, cusp)?;
            let mut want = vec![2 * n - k * (k + 1) + 2 * k];
            want.extend((1..k).rev().map(|i| 2 * i));
            ensure(got == p(&want), || {
                format!("Sp({}) k={k}: {got} != {}", 2 * n, p(&want))
            })?;
            if let Some(q) = &prev {
                ensure(dominance_leq(&got, q).unwrap(), || {
                    format!("Sp({}) k={k}: {got} not below {q}", 2 * n)
                })?;
            }
            prev = Some(got);
            cases += 1;
            k += 1;
        }
    }
    for m in 3..=15u32 {
        let g = GroupForm::so(m);
        let mut prev: Option<Partition> = None;
        let mut k = m % 2;
        while k * k <= m {
            let cusp = Partition::new((1..=k).rev().map(|i| 2 * i - 1).collect());
            let got = induced_from(&g, (m - k * k) / 2, k * k / 2, cusp)?;
            let want = if k == 0 {
                p(&[m - 1, 1])
            } else {
                let mut w = vec![m - k * k + 2 * k - 1];
                w.extend((1..k).rev().map(|i| 2 * i - 1));
                p(&w)
            };
            ensure(got == want, || format!("SO({m}) k={k}: {got} != {want}"))?;
            if let Some(q) = &prev {
                ensure(dominance_leq(&got, q).unwrap(), || {
                    format!("SO({m}) k={k}: {got} not below {q}")
                })?;
            }
            prev = Some(got);
            cases += 1;
            k += 2;
        }
    }
    Ok(format!("{cases} (group, k) cases"))
}

fn c4_collapse_oracle() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for fam in [ClassicalFamily::B, ClassicalFamily::C, ClassicalFamily::D] {
        for n in 1..=16u32 {
            if (fam == ClassicalFamily::B) != (n % 2 == 1) {
                continue;
            }
            let parts = all_partitions(n);
            ensure(parts.len() as u128 == partition_count(n), || {
                format!("p({n})")
            })?;
            let valid: Vec<&Partition> = parts.iter().filter(|q| valid_oracle(q, fam)).collect();
            for x in &parts {
                let below: Vec<&&Partition> = valid
                    .iter()
                    .filter(|q| dominance_leq(q, x).unwrap())
                    .collect();
                let maxima: Vec<&Partition> = below
                    .iter()
                    .filter(|m| below.iter().all(|q| dominance_leq(q, m).unwrap()))
                    .map(|m| **m)
                    .collect();
                ensure(
                    is_valid_orbit_partition(x, fam).unwrap() == valid_oracle(x, fam),
                    || format!("{fam} validity of {x}"),
                )?;
                let got = collapse(x, fam).map_err(|e| e.to_string())?;
                ensure(maxima.len() == 1 && *maxima[0] == got, || {
                    format!("{fam} {x}: collapse {got}, brute force {maxima:?}")
                })?;
                checked += 1;
            }
        }
    }
    within(t.elapsed(), BUDGET_COLLAPSE)?;
    Ok(format!("{checked} partitions"))
}

fn leq(a: &CuspidalDatum, b: &CuspidalDatum) -> bool {
    order_leq(a, b).unwrap()
}

fn c5_total_order() -> Outcome {
    for n in 1..=10 {
        let data = enumerate_cuspidal_data(&GroupForm::sp(2 * n), 0).map_err(|e| e.to_string())?;
        for a in &data {
            for b in &data {
                if a.central_char == b.central_char {
                    ensure(leq(a, b) || leq(b, a), || {
                        format!("Sp({}): {a} and {b} incomparable", 2 * n)
                    })?;
                }
            }
        }
    }
    let mut pairs = 0;
    for n in 1..=6 {
        for l in [0, 3, 5, 7] {
            let data =
                enumerate_cuspidal_data(&GroupForm::sp(2 * n), l).map_err(|e| e.to_string())?;
            for a in &data {
                for b in &data {
                    ensure(a == b || !(leq(a, b) && leq(b, a)), || {
                        format!("{a} and {b} equivalent")
                    })?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "total on Sp(2n) n<=10; antisymmetric over {pairs} ordered pairs"
    ))
}

fn c6_zero_series() -> Outcome {
    let mut checked = 0;
    for n in 1..=8 {
        let g = GroupForm::sp(2 * n);
        let zero = enumerate_cuspidal_data(&g, 0).map_err(|e| e.to_string())?;
        for l in [3, 5] {
            for d in enumerate_cuspidal_data(&g, l).map_err(|e| e.to_string())? {
                let below: Vec<&CuspidalDatum> = zero.iter().filter(|z| leq(z, &d)).collect();
                let maxima: Vec<&&CuspidalDatum> = below
                    .iter()
                    .filter(|m| below.iter().all(|x| leq(x, m)))
                    .collect();
                let proj = k_projection(&d).map_err(|e| e.to_string())?;
                ensure(maxima.len() == 1 && **maxima[0] == proj, || {
                    format!("{d}: {} maxima, projection {proj}", maxima.len())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cuspidal data"))
}

fn a_group_criterion(g: &GroupForm, l: u32) -> bool {
    enumerate_orbits(g).unwrap().iter().all(|o| {
        !component_group(g, o)
            .unwrap()
            .order()
            .is_multiple_of(l as u64)
    })
}

fn c7_rather_good() -> Outcome {
    let primes: Vec<u32> = (2..=13).filter(|&x| is_prime(x)).collect();
    let mut groups: Vec<GroupForm> = (1..=8).map(|n| GroupForm::sp(2 * n)).collect();
    groups.extend((3..=13).map(GroupForm::so));
    for g in &groups {
        for &l in &primes {
            let a = a_group_criterion(g, l);
            ensure(a == rather_good(g, l), || {
                format!("{g} l={l}: A-groups say {a}")
            })?;
        }
    }
    ensure(rather_good(&GroupForm::gl(2), 2), || "GL(2) at 2".into())?;
    ensure(!rather_good(&GroupForm::sl(2), 2), || "SL(2) at 2".into())?;
    Ok(format!(
        "{} groups x {} primes; GL(2),2 true; SL(2),2 false",
        groups.len(),
        primes.len()
    ))
}

fn report(case: ReportCase) -> Result<modspringer::springerdata::Report, String> {
    let r = reproduce_report(case, &DataSource::bundled()).map_err(|e| e.to_string())?;
    if let Some(c) = r.checks.iter().find(|c| !c.pass) {
        return Err(format!("{}: {}", c.name, c.detail));
    }
    ensure(r.pass, || "report failed".into())?;
    Ok(r)
}

fn c8_b4() -> Outcome {
    let r = report(ReportCase::B4L3)?;
    ensure(r.defect_zero_characters == 8, || {
        format!("{} defect-0 characters", r.defect_zero_characters)
    })?;
    let labelled = r.blocks.iter().filter(|b| b.idempotent.is_some()).count();
    ensure(labelled == 4, || format!("{labelled} blocks"))?;
    ensure(r.rows.iter().all(|x| x.pass), || {
        "table row outside its block".into()
    })?;
    let b = r
        .blocks
        .iter()
        .find(|b| b.pairs.iter().any(|p| p.to_string() == "(111111111,triv)"))
        .ok_or("(111111111,triv) in no block")?;
    ensure(
        b.pairs.iter().any(|p| p.to_string() == "(22221,triv)"),
        || "(22221,triv) separated".into(),
    )?;
    Ok(format!(
        "8 defect-0 characters, 4 blocks, {} rows",
        r.rows.len()
    ))
}

fn c9_e8() -> Outcome {
    let t = Instant::now();
    let r = report(ReportCase::E8L7)?;
    within(t.elapsed(), BUDGET_E8)?;
    ensure(r.rows.len() == 14 && r.rows.iter().all(|x| x.pass), || {
        "idempotent rows".into()
    })?;
    let labelled: BTreeSet<usize> = r.blocks.iter().filter_map(|b| b.idempotent).collect();
    ensure(labelled.len() == 4, || format!("{} blocks", labelled.len()))?;
    Ok(format!(
        "45 listed pairs defect 0, 14 pairs in 4 blocks; {}",
        r.notes.join("; ")
    ))
}

fn c10_induction() -> Outcome {
    let (e7, e8, fusion) = DataSource::bundled().e7_e8().map_err(|e| e.to_string())?;
    let chi = e7.index_of("phi_{1,0}").ok_or("no phi_{1,0}")?;
    let got: BTreeSet<String> = induce_character(&e7, &e8, &fusion, chi)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|(l, m)| format!("{l}:{m}"))
        .collect();
    let want: BTreeSet<String> = [
        "phi_{1,0}",
        "phi_{35,2}",
        "phi_{84,4}",
        "phi_{8,1}",
        "phi_{112,3}",
    ]
    .iter()
    .map(|s| format!("{s}:1"))
    .collect();
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("1_0 + 35_2 + 84_4 + 8_1 + 112_3".into())
}

fn partition_suite() -> Result<(), String> {
    for n in 0..=12 {
        let ps = all_partitions(n);
        for a in &ps {
            ensure(transpose(&transpose(a)) == *a, || {
                format!("transpose of {a}")
            })?;
            ensure(dominance_leq(a, a).unwrap(), || {
                format!("reflexivity at {a}")
            })?;
            for b in &ps {
                let ab = dominance_leq(a, b).unwrap();
                ensure(!(ab && dominance_leq(b, a).unwrap()) || a == b, || {
                    format!("antisymmetry {a} {b}")
                })?;
                ensure(
                    ab == dominance_leq(&transpose(b), &transpose(a)).unwrap(),
                    || format!("duality {a} {b}"),
                )?;
                if ab && n <= 9 {
                    for c in &ps {
                        ensure(
                            !dominance_leq(b, c).unwrap() || dominance_leq(a, c).unwrap(),
                            || format!("transitivity {a} {b} {c}"),
                        )?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn weyl_suite() -> Result<(), String> {
    let mut groups: Vec<WeylDescriptor> = (1..=7).map(WeylDescriptor::Symmetric).collect();
    groups.extend((1..=5).map(WeylDescriptor::Hyperoctahedral));
    for w in &groups {
        let t = build_character_table(w).map_err(|e| e.to_string())?;
        t.validate().map_err(|e| format!("{w}: {e}"))?;
        let sq: u128 = t.degrees().iter().map(|d| d * d).sum();
        ensure(sq == w.order(), || {
            format!("{w}: sum of squared degrees {sq}")
        })?;
    }
    let s3 = build_character_table(&WeylDescriptor::Symmetric(3)).map_err(|e| e.to_string())?;
    let b = l_blocks(&s3, 3).map_err(|e| e.to_string())?;
    ensure(
        b.defect_zero().is_empty() && (0..3).all(|c| b.block_of(c) == b.block_of(0)),
        || "S3 at 3 is not a single block".into(),
    )
}

fn all_data(l: &LeviClass) -> Vec<LeviOrbitData> {
    let mut out = vec![LeviOrbitData::zero(l)];
    for (i, &b) in l.gl_blocks.parts().iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|d| {
                all_partitions(b).into_iter().map(move |q| {
                    let mut d = d.clone();
                    d.gl_orbits[i] = q;
                    d
                })
            })
            .collect();
    }
    let residual = match l.residual_group() {
        Some(r) if l.residual_rank > 0 => enumerate_orbits(&r).unwrap(),
        _ => vec![LeviOrbitData::zero(l).residual_orbit],
    };
    out.into_iter()
        .flat_map(|d| {
            residual.iter().map(move |o| LeviOrbitData {
                residual_orbit: o.clone(),
                ..d.clone()
            })
        })
        .collect()
}

fn levi_suite() -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=5 {
        let g = GroupForm::sp(2 * n);
        let classes = enumerate_levi_classes(&g).map_err(|e| e.to_string())?;
        for l in &classes {
            let data = all_data(l);
            for m in &classes {
                for e in embeddings(l, m).map_err(|e| e.to_string())? {
                    for d in &data {
                        let mid = induce_to_levi(l, d, m, &e).map_err(|e| e.to_string())?;
                        let two = induce_orbit(m, &mid).map_err(|e| e.to_string())?;
                        let one = induce_orbit(l, d).map_err(|e| e.to_string())?;
                        ensure(one == two, || {
                            format!("{l} -> {m} on {d:?}: {one} vs {two}")
                        })?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

fn c11_properties() -> Outcome {
    partition_suite().map_err(|e| format!("partitions: {e}"))?;
    weyl_suite().map_err(|e| format!("weylrep: {e}"))?;
    let k = levi_suite().map_err(|e| format!("levi: {e}"))?;
    Ok(format!(
        "partitions n<=12, S1..S7 and B1..B5 tables, {k} induction chains"
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("counting identity", c1_counting_identity),
        ("census", c2_census),
        ("induced-orbit closed forms", c3_closed_forms),
        ("collapse oracle", c4_collapse_oracle),
        ("total order", c5_total_order),
        ("0-series maximum", c6_zero_series),
        ("rather-good equivalence", c7_rather_good),
        ("B4 blocks", c8_b4),
        ("E8 blocks", c9_e8),
        ("character induction", c10_induction),
        ("property suites", c11_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("[PASS] {:>2} {name} ({secs:.2}s) {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("[FAIL] {:>2} {name} ({secs:.2}s) {e}", i + 1)
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
