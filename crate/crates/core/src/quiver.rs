//! Labelled quivers in functional form: one arrow `[λ‖a]` per vertex and
//! label, with target `φ(λ, a)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelledQuiver {
    vertex_names: Option<Vec<String>>,
    labels: Vec<String>,
    num_vertices: usize,
    targets: Vec<u32>,
}

impl LabelledQuiver {
    pub fn from_targets(num_vertices: usize, labels: Vec<String>, targets: Vec<u32>) -> Result<Self> {
        let n = labels.len();
        if targets.len() != num_vertices * n {
            return input(format!(
                "transition table has {} entries, expected {}",
                targets.len(),
                num_vertices * n
            ));
        }
        if let Some(i) = targets.iter().position(|&t| t as usize >= num_vertices) {
            return input(format!(
                "phi(vertex {}, label {}) = {} is not a vertex",
                i / n.max(1),
                i % n.max(1),
                targets[i]
            ));
        }
        Ok(LabelledQuiver {
            vertex_names: None,
            labels,
            num_vertices,
            targets,
        })
    }

    pub fn from_rows(vertices: Vec<String>, labels: Vec<String>, phi: &[Vec<usize>]) -> Result<Self> {
        if phi.len() != vertices.len() {
            return input(format!("phi has {} rows for {} vertices", phi.len(), vertices.len()));
        }
        let mut targets = Vec::with_capacity(vertices.len() * labels.len());
        for (v, row) in phi.iter().enumerate() {
            if row.len() != labels.len() {
                return input(format!("phi row {v} has {} entries, expected {}", row.len(), labels.len()));
            }
            targets.extend(row.iter().map(|&t| u32::try_from(t).unwrap_or(u32::MAX)));
        }
        Ok(Self::from_targets(vertices.len(), labels, targets)?.with_vertex_names(vertices))
    }

    pub fn with_vertex_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.num_vertices);
        self.vertex_names = Some(names);
        self
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arrow_count(&self) -> usize {
        self.targets.len()
    }

    #[inline]
    pub fn target(&self, v: usize, a: usize) -> usize {
        self.targets[v * self.labels.len() + a] as usize
    }

    pub fn targets(&self) -> &[u32] {
        &self.targets
    }

    pub fn vertex_name(&self, v: usize) -> String {
        match &self.vertex_names {
            Some(ns) => ns[v].clone(),
            None => format!("v{v}"),
        }
    }

    pub fn vertex_names(&self) -> Vec<String> {
        (0..self.num_vertices).map(|v| self.vertex_name(v)).collect()
    }

    pub fn phi_rows(&self) -> Vec<Vec<usize>> {
        (0..self.num_vertices)
            .map(|v| (0..self.num_labels()).map(|a| self.target(v, a)).collect())
            .collect()
    }

    /// Labels of arrows `from -> to`, ascending.
    pub fn arrows_between(&self, from: usize, to: usize) -> Vec<usize> {
        (0..self.num_labels()).filter(|&a| self.target(from, a) == to).collect()
    }

    /// Whether some arrow ends at each vertex.
    pub fn has_incoming(&self) -> Vec<bool> {
        let mut m = vec![false; self.num_vertices];
        for &t in &self.targets {
            m[t as usize] = true;
        }
        m
    }

    /// Paths of length 2 as `(λ, a, b)`: `[λ‖a]` followed by `[φ(λ,a)‖b]`.
    pub fn paths2(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let n = self.num_labels();
        (0..self.num_vertices).flat_map(move |v| (0..n).flat_map(move |a| (0..n).map(move |b| (v, a, b))))
    }

    /// Paths of length 3 as `(λ, a, b, c)`.
    pub fn paths3(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        let n = self.num_labels();
        self.paths2().flat_map(move |(v, a, b)| (0..n).map(move |c| (v, a, b, c)))
    }

    pub fn connected_components(&self) -> ComponentReport {
        let mut uf = UnionFind::new(self.num_vertices);
        let n = self.num_labels();
        for v in 0..self.num_vertices {
            for a in 0..n {
                uf.union(v as u32, self.targets[v * n + a]);
            }
        }
        ComponentReport::build(self, &mut uf)
    }

    /// Degree `d` of a component, or the first ordered pair breaking it.
    pub fn completeness_degree(&self, report: &ComponentReport, component: usize) -> Completeness {
        let members = report.members(component);
        complete_on(self, &members, report)
    }

    /// Weight `|labels|` when every component is complete, else the first
    /// failing component.
    pub fn is_homogeneous(&self) -> std::result::Result<usize, HomogeneityFailure> {
        let report = self.connected_components();
        for c in 0..report.count() {
            if let Some(witness) = report.failures[c].clone() {
                return Err(HomogeneityFailure { component: c, witness });
            }
        }
        Ok(self.num_labels())
    }

    pub fn export_dot(&self, options: &DotOptions) -> String {
        let mut out = String::from("digraph Q {\n");
        for v in 0..self.num_vertices {
            let _ = writeln!(out, "  \"{}\";", escape(&self.vertex_name(v)));
        }
        for v in 0..self.num_vertices {
            let src = escape(&self.vertex_name(v));
            if options.collapse_labels {
                let mut by_target: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
                for a in 0..self.num_labels() {
                    by_target.entry(self.target(v, a)).or_default().push(a);
                }
                for (t, ls) in by_target {
                    let names: Vec<&str> = ls.iter().map(|&a| self.labels[a].as_str()).collect();
                    let mut label = names.join(",");
                    if ls.len() > 1 {
                        let _ = write!(label, " ×{}", ls.len());
                    }
                    let _ = writeln!(
                        out,
                        "  \"{}\" -> \"{}\" [label=\"{}\"];",
                        src,
                        escape(&self.vertex_name(t)),
                        escape(&label)
                    );
                }
            } else {
                for a in 0..self.num_labels() {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -> \"{}\" [label=\"{}\"];",
                        src,
                        escape(&self.vertex_name(self.target(v, a))),
                        escape(&self.labels[a])
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            vertices: self.vertex_names(),
            labels: self.labels.clone(),
            phi: self.phi_rows(),
        }
    }

    pub fn from_json(j: &QuiverJson) -> Result<Self> {
        Self::from_rows(j.vertices.clone(), j.labels.clone(), &j.phi)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// `quiver_of_dynamical_set`: arrows `[λ‖a] : λ -> φ(λ, a)`.
pub fn quiver_of_dynamical_set(
    vertices: Vec<String>,
    labels: Vec<String>,
    phi: impl Fn(usize, usize) -> usize,
) -> Result<LabelledQuiver> {
    let n = labels.len();
    let rows: Vec<Vec<usize>> = (0..vertices.len())
        .map(|v| (0..n).map(|a| phi(v, a)).collect())
        .collect();
    LabelledQuiver::from_rows(vertices, labels, &rows)
}

#[derive(Debug, Clone, Default)]
pub struct DotOptions {
    pub collapse_labels: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Completeness {
    Complete(usize),
    NotComplete { from: usize, to: usize, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneityFailure {
    pub component: usize,
    pub witness: Completeness,
}

/// Undirected components, numbered by smallest member.
#[derive(Debug, Clone)]
pub struct ComponentReport {
    component_of: Vec<u32>,
    sizes: Vec<usize>,
    representatives: Vec<usize>,
    degrees: Vec<Option<usize>>,
    failures: Vec<Option<Completeness>>,
    offsets: Vec<usize>,
    flat_members: Vec<u32>,
}

impl ComponentReport {
    pub(crate) fn build(q: &LabelledQuiver, uf: &mut UnionFind) -> Self {
        let nv = q.num_vertices();
        let mut root_id = vec![u32::MAX; nv];
        let mut component_of = vec![0u32; nv];
        let mut representatives = Vec::new();
        for v in 0..nv {
            let r = uf.find(v as u32) as usize;
            if root_id[r] == u32::MAX {
                root_id[r] = representatives.len() as u32;
                representatives.push(v);
            }
            component_of[v] = root_id[r];
        }
        let count = representatives.len();
        let mut sizes = vec![0usize; count];
        for &c in &component_of {
            sizes[c as usize] += 1;
        }
        let mut offsets = vec![0usize; count + 1];
        for c in 0..count {
            offsets[c + 1] = offsets[c] + sizes[c];
        }
        let mut fill = offsets.clone();
        let mut flat_members = vec![0u32; nv];
        for v in 0..nv {
            let c = component_of[v] as usize;
            flat_members[fill[c]] = v as u32;
            fill[c] += 1;
        }
        let mut report = ComponentReport {
            component_of,
            sizes,
            representatives,
            degrees: vec![None; count],
            failures: vec![None; count],
            offsets,
            flat_members,
        };
        for c in 0..count {
            let members = report.members(c);
            match complete_on(q, &members, &report) {
                Completeness::Complete(d) => report.degrees[c] = Some(d),
                w => report.failures[c] = Some(w),
            }
        }
        report
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v] as usize
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    pub fn degree(&self, c: usize) -> Option<usize> {
        self.degrees[c]
    }

    pub fn members(&self, c: usize) -> Vec<usize> {
        self.flat_members[self.offsets[c]..self.offsets[c + 1]]
            .iter()
            .map(|&v| v as usize)
            .collect()
    }
}

fn complete_on(q: &LabelledQuiver, members: &[usize], report: &ComponentReport) -> Completeness {
    let s = members.len();
    let mut pos = BTreeMap::new();
    for (i, &v) in members.iter().enumerate() {
        pos.insert(v, i);
    }
    let mut expected = None;
    let mut counts = vec![0usize; s];
    for &v in members {
        counts.iter_mut().for_each(|c| *c = 0);
        for a in 0..q.num_labels() {
            let t = q.target(v, a);
            debug_assert_eq!(report.component_of(t), report.component_of(v));
            counts[pos[&t]] += 1;
        }
        for (j, &cnt) in counts.iter().enumerate() {
            let d = *expected.get_or_insert(cnt);
            if cnt != d || d == 0 {
                return Completeness::NotComplete {
                    from: v,
                    to: members[j],
                    expected: d.max(1),
                    found: cnt,
                };
            }
        }
    }
    Completeness::Complete(expected.unwrap_or(0))
}

/// Union by size with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = self.parent[x as usize];
        }
        x
    }

    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub labels: Vec<String>,
    pub phi: Vec<Vec<usize>>,
}
