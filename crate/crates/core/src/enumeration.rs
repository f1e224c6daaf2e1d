//! The maximal structures over a group: all unital regular subsets, or all
//! regular subsets, as one quiver under translation.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holomorph::{partition_profile, Holomorph, RegularSubset};
use crate::named::{lookup, named_subsets};
use crate::quiver::{ComponentReport, LabelledQuiver};
use crate::structures::{dsb_from_subgroup_family, DsbJson, DynamicalSkewBrace};

pub const DEFAULT_CAP: u128 = 100_000_000;

/// Vertex `i` is the subset of rank `i`; the unital ones are `0..unital_count`.
#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub holomorph: Holomorph,
    pub full: bool,
    pub quiver: LabelledQuiver,
    pub components: ComponentReport,
    pub unital_count: usize,
}

impl EnumerationResult {
    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn vertex(&self, i: usize) -> RegularSubset {
        self.holomorph.unrank(i as u64)
    }

    pub fn vertices(&self) -> Vec<RegularSubset> {
        (0..self.num_vertices()).map(|i| self.vertex(i)).collect()
    }

    pub fn is_unital(&self, i: usize) -> bool {
        i < self.unital_count
    }

    /// Name the vertices `s0..`, `r0..` where such names exist (cyclic:3 and
    /// cyclic:4); other vertices keep `v{i}`.
    pub fn with_example_names(mut self) -> Self {
        if let Some(names) = named_subsets(self.holomorph.group()) {
            let vs = (0..self.num_vertices())
                .map(|v| match lookup(&names, &self.vertex(v)) {
                    Some(n) => n.to_string(),
                    None => format!("v{v}"),
                })
                .collect();
            self.quiver = self.quiver.with_vertex_names(vs);
        }
        self
    }

    /// Components of the unital part alone.
    pub fn unital_components(&self) -> ComponentReport {
        if !self.full {
            return self.components.clone();
        }
        let n = self.quiver.num_labels();
        LabelledQuiver::from_targets(
            self.unital_count,
            self.quiver.labels().to_vec(),
            self.quiver.targets()[..self.unital_count * n].to_vec(),
        )
        .expect("unital part is closed")
        .connected_components()
    }

    /// The whole family as one dynamical skew brace.
    pub fn dsb(&self) -> Result<DynamicalSkewBrace> {
        let all: Vec<usize> = (0..self.num_vertices()).collect();
        self.dsb_on(&all)
    }

    /// Vertices of one component, re-indexed from 0 but keeping their names.
    pub fn component_dsb(&self, c: usize) -> Result<DynamicalSkewBrace> {
        self.dsb_on(&self.components.members(c))
    }

    /// The dynamical skew brace on one component (or on everything) with
    /// the automorphisms and regular subsets behind its vertices.
    pub fn to_json(&self, component: Option<usize>) -> Result<EnumerationJson> {
        let members = match component {
            Some(c) if c >= self.components.count() => {
                return Err(Error::Input(format!(
                    "component {c} does not exist ({} components)",
                    self.components.count()
                )))
            }
            Some(c) => self.components.members(c),
            None => (0..self.num_vertices()).collect(),
        };
        Ok(EnumerationJson {
            dsb: self.dsb_on(&members)?.to_json(),
            automorphisms: self.holomorph.automorphisms().iter().map(|f| f.images.clone()).collect(),
            assignments: members.iter().map(|&v| self.vertex(v).assignment).collect(),
        })
    }

    fn dsb_on(&self, members: &[usize]) -> Result<DynamicalSkewBrace> {
        let n = self.holomorph.group().order();
        let cells = members.len() as u128 * (n * n) as u128;
        if cells > 50_000_000 {
            return Err(Error::Resource { required: cells, cap: 50_000_000 });
        }
        let family: Vec<RegularSubset> = members.iter().map(|&v| self.vertex(v)).collect();
        let names = members.iter().map(|&v| self.quiver.vertex_name(v)).collect();
        dsb_from_subgroup_family(&self.holomorph, &family)?.with_vertex_names(names)
    }
}

/// `enumerate --json` output; reads back as a plain [`DsbJson`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationJson {
    #[serde(flatten)]
    pub dsb: DsbJson,
    pub automorphisms: Vec<Vec<usize>>,
    pub assignments: Vec<Vec<usize>>,
}

fn enumerate(hol: &Holomorph, full: bool, cap: u128) -> Result<EnumerationResult> {
    let n = hol.group().order();
    let k = hol.aut_count();
    let total = hol.family_size(!full);
    let unital_total = hol.family_size(true);
    if total > cap || total >= u32::MAX as u128 {
        return Err(Error::Resource { required: total, cap: cap.min(u32::MAX as u128 - 1) });
    }
    let total = total as usize;
    let mut pow = vec![1u64; n];
    for i in (0..n.saturating_sub(1)).rev() {
        pow[i] = pow[i + 1] * k as u64;
    }
    let mut targets = vec![0u32; total * n];
    targets.par_chunks_mut(n).enumerate().for_each(|(i, out)| {
        let mut digits = [0usize; 16];
        let mut r = i as u64;
        for c in (0..n).rev() {
            digits[c] = (r % k as u64) as usize;
            r /= k as u64;
        }
        let g = hol.group();
        for (a, slot) in out.iter_mut().enumerate() {
            let fa = digits[a];
            let fi = hol.aut_inv(fa);
            let mut rank = 0u64;
            for c in 0..n {
                let ac = g.mul(a, hol.eval(fa, c));
                rank += hol.compose(fi, digits[ac]) as u64 * pow[c];
            }
            *slot = rank as u32;
        }
    });
    let labels = hol.group().element_names().to_vec();
    let quiver = LabelledQuiver::from_targets(total, labels, targets)?;
    let components = quiver.connected_components();
    Ok(EnumerationResult {
        holomorph: hol.clone(),
        full,
        quiver,
        components,
        unital_count: unital_total as usize,
    })
}

/// All regular subsets with `assignment[0] = id`.
pub fn enumerate_unital(hol: &Holomorph, cap: u128) -> Result<EnumerationResult> {
    enumerate(hol, false, cap)
}

/// All regular subsets, including the initial vertices.
pub fn enumerate_full(hol: &Holomorph, cap: u128) -> Result<EnumerationResult> {
    enumerate(hol, true, cap)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl RelationCheck {
    fn new(name: &str, holds: bool, detail: impl Into<String>) -> Self {
        RelationCheck { name: name.to_string(), holds, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub id: usize,
    pub size: usize,
    pub degree: Option<usize>,
    pub representative: Vec<usize>,
    pub partition: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTable {
    pub group: String,
    pub order: usize,
    pub aut_order: usize,
    pub unital_vertices: u128,
    #[serde(rename = "N")]
    pub n_s: BTreeMap<usize, usize>,
    #[serde(rename = "inCounts", default, skip_serializing_if = "Option::is_none")]
    pub in_s: Option<BTreeMap<usize, usize>>,
    pub components: Vec<ComponentSummary>,
    pub checks: Vec<RelationCheck>,
}

impl InvariantTable {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn n(&self, s: usize) -> usize {
        self.n_s.get(&s).copied().unwrap_or(0)
    }
}

/// `N_s` (and with `full`, `in_s`) together with the relations they obey.
pub fn invariants(hol: &Holomorph, cap: u128, full: bool) -> Result<InvariantTable> {
    let res = enumerate(hol, full, cap)?;
    let unital = res.unital_components();
    let n = hol.group().order();
    let k = hol.aut_count();
    let mut n_s = BTreeMap::new();
    for c in 0..unital.count() {
        *n_s.entry(unital.size(c)).or_insert(0usize) += 1;
    }
    let mut checks = Vec::new();
    let sum: u128 = n_s.iter().map(|(&s, &c)| (s * c) as u128).sum();
    let expected = hol.family_size(true);
    checks.push(RelationCheck::new("sum s*N_s = |Aut|^(|A|-1)", sum == expected, format!("{sum} vs {expected}")));
    let bad: Vec<usize> = n_s.keys().copied().filter(|&s| n % s != 0).collect();
    checks.push(RelationCheck::new("N_s = 0 unless s | |A|", bad.is_empty(), format!("offending sizes {bad:?}")));
    let incomplete = (0..unital.count()).find(|&c| unital.degree(c) != Some(n / unital.size(c)));
    checks.push(RelationCheck::new(
        "components complete of degree |A|/s",
        incomplete.is_none(),
        match incomplete {
            Some(c) => format!("component {c} fails"),
            None => "all".to_string(),
        },
    ));
    let isolated = (0..res.unital_count)
        .filter(|&v| (0..n).all(|a| res.quiver.target(v, a) == v))
        .count();
    checks.push(RelationCheck::new(
        "N_1 = isolated vertices = skew braces on A",
        isolated == n_s.get(&1).copied().unwrap_or(0),
        format!("{isolated} isolated"),
    ));

    let mut components: Vec<ComponentSummary> = (0..unital.count())
        .map(|c| {
            let rep = hol.unrank(unital.representative(c) as u64);
            ComponentSummary {
                id: c,
                size: unital.size(c),
                degree: unital.degree(c),
                partition: partition_profile(&rep, k),
                representative: rep.assignment,
                initial: None,
            }
        })
        .collect();

    let mut in_s = None;
    if full {
        let ic = initial_counts_with(&res, &unital)?;
        for (c, summary) in components.iter_mut().enumerate() {
            summary.initial = Some(ic.per_component[c]);
        }
        let total: u128 = components
            .iter()
            .map(|c| (c.size + c.initial.unwrap_or(0)) as u128)
            .sum();
        let all = hol.family_size(false);
        checks.extend(ic.checks);
        checks.push(RelationCheck::new(
            "sum (s + in_s)*N_s = |Aut|^|A|",
            total == all,
            format!("{total} vs {all}"),
        ));
        let constancy = partition_constancy(&res);
        checks.push(RelationCheck::new(
            "part(S) constant on components",
            constancy.is_ok(),
            match constancy {
                Ok(()) => "all".to_string(),
                Err((c, a, b)) => format!("component {c}: vertices {a} and {b} differ"),
            },
        ));
        in_s = Some(ic.in_s);
    }

    Ok(InvariantTable {
        group: hol.group().name().to_string(),
        order: n,
        aut_order: k,
        unital_vertices: expected,
        n_s,
        in_s,
        components,
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialCounts {
    /// Indexed by component of the unital part.
    pub per_component: Vec<usize>,
    pub in_s: BTreeMap<usize, usize>,
    pub checks: Vec<RelationCheck>,
}

impl InitialCounts {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Initial vertices with arrows into each unital component.
pub fn initial_counts(res: &EnumerationResult) -> Result<InitialCounts> {
    if !res.full {
        return Err(Error::Input("initial counts need the full enumeration".into()));
    }
    initial_counts_with(res, &res.unital_components())
}

fn initial_counts_with(res: &EnumerationResult, unital: &ComponentReport) -> Result<InitialCounts> {
    let n = res.quiver.num_labels();
    let k = res.holomorph.aut_count();
    let mut per_component = vec![0usize; unital.count()];
    let mut spread: Option<String> = None;
    let mut counts: Vec<(usize, usize)> = Vec::with_capacity(n);
    for r in res.unital_count..res.num_vertices() {
        counts.clear();
        let c0 = unital.component_of(res.quiver.target(r, 0));
        for a in 0..n {
            let t = res.quiver.target(r, a);
            if t >= res.unital_count || unital.component_of(t) != c0 {
                spread.get_or_insert(format!("initial vertex {r} reaches two components or an initial vertex"));
            }
            match counts.iter_mut().find(|(v, _)| *v == t) {
                Some(e) => e.1 += 1,
                None => counts.push((t, 1)),
            }
        }
        let s = unital.size(c0);
        if counts.len() != s || counts.iter().any(|&(_, m)| m * s != n) {
            spread.get_or_insert(format!("initial vertex {r}: arrows not equidistributed over component {c0}"));
        }
        per_component[c0] += 1;
    }
    let mut checks = vec![RelationCheck::new(
        "initial arrows land in one component, |A|/s per vertex",
        spread.is_none(),
        spread.unwrap_or_else(|| "all".to_string()),
    )];
    let mut in_s = BTreeMap::new();
    let mut formula_ok = true;
    let mut consistent = true;
    for c in 0..unital.count() {
        let s = unital.size(c);
        formula_ok &= per_component[c] == s * (k - 1);
        let prev = *in_s.entry(s).or_insert(per_component[c]);
        consistent &= prev == per_component[c];
    }
    checks.push(RelationCheck::new("in_K = s(|Aut|-1)", formula_ok, format!("{in_s:?}")));
    checks.push(RelationCheck::new("in_K depends only on s", consistent, format!("{in_s:?}")));
    Ok(InitialCounts { per_component, in_s, checks })
}

/// First component of the enumerated quiver on which `part(S)` varies.
pub fn partition_constancy(res: &EnumerationResult) -> std::result::Result<(), (usize, usize, usize)> {
    let k = res.holomorph.aut_count();
    let comp = &res.components;
    let mut first: Vec<Option<(usize, Vec<usize>)>> = vec![None; comp.count()];
    for v in 0..res.num_vertices() {
        let p = partition_profile(&res.vertex(v), k);
        let c = comp.component_of(v);
        match &first[c] {
            None => first[c] = Some((v, p)),
            Some((w, q)) if *q != p => return Err((c, *w, v)),
            Some(_) => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn hol(s: &str) -> Holomorph {
        Holomorph::new(build_group(s).unwrap())
    }

    #[test]
    fn z3_and_z4_counts() {
        let t = invariants(&hol("cyclic:3"), DEFAULT_CAP, true).unwrap();
        assert_eq!(t.n_s, BTreeMap::from([(1, 1), (3, 1)]));
        assert_eq!(t.in_s, Some(BTreeMap::from([(1, 1), (3, 3)])));
        assert!(t.all_hold(), "{:?}", t.checks);
        let t = invariants(&hol("cyclic:4"), DEFAULT_CAP, true).unwrap();
        assert_eq!(t.n_s, BTreeMap::from([(1, 2), (2, 1), (4, 1)]));
        assert_eq!(t.in_s, Some(BTreeMap::from([(1, 1), (2, 2), (4, 4)])));
        assert!(t.all_hold(), "{:?}", t.checks);
    }

    #[test]
    fn trivial_group() {
        let h = hol("trivial");
        let r = enumerate_full(&h, DEFAULT_CAP).unwrap();
        assert_eq!(r.num_vertices(), 1);
        assert_eq!(r.quiver.target(0, 0), 0);
        let t = invariants(&h, DEFAULT_CAP, true).unwrap();
        assert_eq!(t.in_s, Some(BTreeMap::from([(1, 0)])));
    }

    #[test]
    fn cap_is_enforced() {
        let h = hol("klein4");
        assert!(matches!(enumerate_unital(&h, 100), Err(Error::Resource { required: 216, .. })));
        assert!(invariants(&hol("quaternion8"), DEFAULT_CAP, false).is_err());
    }

    #[test]
    fn fast_translate_matches_literal() {
        let h = hol("sym:3");
        let r = enumerate_unital(&h, DEFAULT_CAP).unwrap();
        for v in (0..r.num_vertices()).step_by(7) {
            let s = r.vertex(v);
            for a in 0..6 {
                assert_eq!(r.vertex(r.quiver.target(v, a)), h.translate(&s, a));
            }
        }
    }
}
