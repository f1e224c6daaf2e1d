use std::collections::HashMap;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::report::{first_failure, Check, Report, Witness};
use crate::error::{input, Result};
use crate::group::{FiniteGroup, GroupJson};
use crate::holomorph::{Holomorph, RegularSubset};
use crate::quiver::LabelledQuiver;

/// `(A, Λ, φ, ·, {•_λ})` with flat tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicalSkewBrace {
    group: FiniteGroup,
    vertex_names: Vec<String>,
    n: usize,
    phi: Vec<u32>,
    ops: Vec<u8>,
}

impl DynamicalSkewBrace {
    pub fn new(
        group: FiniteGroup,
        vertex_names: Vec<String>,
        phi: &[Vec<usize>],
        ops: &[Vec<Vec<usize>>],
    ) -> Result<Self> {
        let n = group.order();
        let nv = vertex_names.len();
        if phi.len() != nv || ops.len() != nv {
            return input(format!(
                "{} vertices but {} phi rows and {} operation tables",
                nv,
                phi.len(),
                ops.len()
            ));
        }
        let mut flat_phi = Vec::with_capacity(nv * n);
        let mut flat_ops = Vec::with_capacity(nv * n * n);
        for v in 0..nv {
            if phi[v].len() != n {
                return input(format!("phi row {} has length {}, expected {n}", vertex_names[v], phi[v].len()));
            }
            for (a, &t) in phi[v].iter().enumerate() {
                if t >= nv {
                    return input(format!("phi({}, {a}) = {t} is not a vertex", vertex_names[v]));
                }
                flat_phi.push(t as u32);
            }
            if ops[v].len() != n || ops[v].iter().any(|r| r.len() != n) {
                return input(format!("operation table of {} is not {n}x{n}", vertex_names[v]));
            }
            for (a, row) in ops[v].iter().enumerate() {
                for (b, &x) in row.iter().enumerate() {
                    if x >= n {
                        return input(format!("{a} •_{} {b} = {x} is out of range", vertex_names[v]));
                    }
                    flat_ops.push(x as u8);
                }
            }
        }
        Self::from_flat(group, vertex_names, flat_phi, flat_ops)
    }

    pub(crate) fn from_flat(
        group: FiniteGroup,
        vertex_names: Vec<String>,
        phi: Vec<u32>,
        ops: Vec<u8>,
    ) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = vertex_names.iter().find(|v| !seen.insert(v.as_str())) {
            return input(format!("duplicate vertex name {dup}"));
        }
        let n = group.order();
        debug_assert_eq!(phi.len(), vertex_names.len() * n);
        debug_assert_eq!(ops.len(), vertex_names.len() * n * n);
        Ok(DynamicalSkewBrace {
            group,
            vertex_names,
            n,
            phi,
            ops,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn with_vertex_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.num_vertices() {
            return input("wrong number of vertex names");
        }
        self.vertex_names = names;
        Self::from_flat(self.group, self.vertex_names, self.phi, self.ops)
    }

    #[inline]
    pub fn target(&self, v: usize, a: usize) -> usize {
        self.phi[v * self.n + a] as usize
    }

    #[inline]
    pub fn bullet(&self, v: usize, a: usize, b: usize) -> usize {
        self.ops[(v * self.n + a) * self.n + b] as usize
    }

    pub fn table(&self, v: usize) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.bullet(v, a, b)).collect())
            .collect()
    }

    pub(crate) fn flat_phi(&self) -> &[u32] {
        &self.phi
    }

    pub(crate) fn flat_ops(&self) -> &[u8] {
        &self.ops
    }

    pub fn is_zero_symmetric_at(&self, v: usize) -> bool {
        (0..self.n).all(|a| self.bullet(v, 0, a) == a)
    }

    pub fn is_zero_symmetric(&self) -> bool {
        (0..self.num_vertices()).all(|v| self.is_zero_symmetric_at(v))
    }

    pub fn quiver(&self) -> LabelledQuiver {
        LabelledQuiver::from_targets(
            self.num_vertices(),
            self.group.element_names().to_vec(),
            self.phi.clone(),
        )
        .expect("targets validated")
        .with_vertex_names(self.vertex_names.clone())
    }

    /// Sub-structure on a set of vertices closed under `φ`.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            index.insert(v, i);
        }
        let mut phi = Vec::with_capacity(vertices.len() * self.n);
        let mut ops = Vec::with_capacity(vertices.len() * self.n * self.n);
        for &v in vertices {
            for a in 0..self.n {
                let t = self.target(v, a);
                match index.get(&t) {
                    Some(&i) => phi.push(i as u32),
                    None => {
                        return input(format!(
                            "vertex set not closed: phi({}, {a}) = {}",
                            self.vertex_names[v], self.vertex_names[t]
                        ))
                    }
                }
            }
            ops.extend_from_slice(&self.ops[v * self.n * self.n..(v + 1) * self.n * self.n]);
        }
        let names = vertices.iter().map(|&v| self.vertex_names[v].clone()).collect();
        Self::from_flat(self.group.clone(), names, phi, ops)
    }

    pub fn to_json(&self) -> DsbJson {
        DsbJson {
            group: self.group.to_json(),
            vertices: self.vertex_names.clone(),
            phi: (0..self.num_vertices())
                .map(|v| (0..self.n).map(|a| self.target(v, a)).collect())
                .collect(),
            ops: (0..self.num_vertices())
                .map(|v| (self.vertex_names[v].clone(), self.table(v)))
                .collect(),
        }
    }

    pub fn from_json(j: &DsbJson) -> Result<Self> {
        let group = FiniteGroup::from_json(&j.group)?;
        let mut ops = Vec::with_capacity(j.vertices.len());
        for v in &j.vertices {
            match j.ops.get(v) {
                Some(t) => ops.push(t.clone()),
                None => return input(format!("no operation table for vertex {v}")),
            }
        }
        if j.ops.len() != j.vertices.len() {
            return input("operation tables for unknown vertices");
        }
        Self::new(group, j.vertices.clone(), &j.phi, &ops)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsbJson {
    pub group: GroupJson,
    pub vertices: Vec<String>,
    pub phi: Vec<Vec<usize>>,
    pub ops: IndexMap<String, Vec<Vec<usize>>>,
}

/// Vertices are the sorted family; `φ(S, a) = (a, f_a)⁻¹S` and
/// `a •_S b = a·f_a(b)`.
pub fn dsb_from_subgroup_family(
    hol: &Holomorph,
    family: &[RegularSubset],
) -> Result<DynamicalSkewBrace> {
    let mut fam = family.to_vec();
    fam.sort();
    fam.dedup();
    for s in &fam {
        hol.check_subset(s)?;
    }
    let index: HashMap<&RegularSubset, usize> = fam.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let n = hol.group().order();
    let mut phi = Vec::with_capacity(fam.len() * n);
    let mut ops = Vec::with_capacity(fam.len() * n * n);
    for (i, s) in fam.iter().enumerate() {
        for a in 0..n {
            let t = hol.translate(s, a);
            match index.get(&t) {
                Some(&j) => phi.push(j as u32),
                None => {
                    return input(format!(
                        "family not closed: translate(v{i} = {:?}, {a}) = {:?} is missing",
                        s.assignment, t.assignment
                    ))
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                ops.push(hol.bullet(s, a, b) as u8);
            }
        }
    }
    let names = (0..fam.len()).map(|i| format!("v{i}")).collect();
    DynamicalSkewBrace::from_flat(hol.group().clone(), names, phi, ops)
}

#[derive(Debug, Clone)]
pub struct DsbReport {
    pub left_quasigroup: Check,
    pub dynamical_associativity: Check,
    pub brace_compatibility: Check,
    pub transition: Check,
    pub computation_rules: Check,
    /// Per vertex: does the identity act trivially on the left.
    pub unital: Vec<bool>,
}

impl DsbReport {
    pub fn zero_symmetric(&self) -> bool {
        self.unital.iter().all(|&u| u)
    }
}

impl Report for DsbReport {
    fn entries(&self) -> Vec<(&'static str, &Check)> {
        vec![
            ("leftQuasigroup", &self.left_quasigroup),
            ("DA", &self.dynamical_associativity),
            ("BC", &self.brace_compatibility),
            ("transition", &self.transition),
            ("computationRules", &self.computation_rules),
        ]
    }
}

pub fn verify_dsb(d: &DynamicalSkewBrace) -> DsbReport {
    let n = d.order();
    let g = d.group();
    let nv = d.num_vertices();
    let name = |v: usize| d.vertex_name(v).to_string();

    let left_quasigroup = first_failure(nv, |v| {
        for a in 0..n {
            let mut seen = vec![usize::MAX; n];
            for b in 0..n {
                let x = d.bullet(v, a, b);
                if seen[x] != usize::MAX {
                    return Err(Witness::new("leftQuasigroup", name(v), &[a, seen[x], b], x, x));
                }
                seen[x] = b;
            }
        }
        Ok(())
    });

    let dynamical_associativity = first_failure(nv, |v| {
        for a in 0..n {
            let mu = d.target(v, a);
            for b in 0..n {
                let ab = d.bullet(v, a, b);
                for c in 0..n {
                    let lhs = d.bullet(v, a, d.bullet(mu, b, c));
                    let rhs = d.bullet(v, ab, c);
                    if lhs != rhs {
                        return Err(Witness::new("DA", name(v), &[a, b, c], lhs, rhs));
                    }
                }
            }
        }
        Ok(())
    });

    let brace_compatibility = first_failure(nv, |v| {
        for a in 0..n {
            let ai = g.inv(a);
            for b in 0..n {
                let ab = d.bullet(v, a, b);
                for c in 0..n {
                    let lhs = d.bullet(v, a, g.mul(b, c));
                    let rhs = g.mul(g.mul(ab, ai), d.bullet(v, a, c));
                    if lhs != rhs {
                        return Err(Witness::new("BC", name(v), &[a, b, c], lhs, rhs));
                    }
                }
            }
        }
        Ok(())
    });

    let transition = first_failure(nv, |v| {
        for a in 0..n {
            for b in 0..n {
                let lhs = d.target(v, d.bullet(v, a, b));
                let rhs = d.target(d.target(v, a), b);
                if lhs != rhs {
                    return Err(Witness::new("transition", name(v), &[a, b], name(lhs), name(rhs)));
                }
            }
        }
        Ok(())
    });

    let computation_rules = first_failure(nv, |v| {
        for a in 0..n {
            for b in 0..n {
                let ab = d.bullet(v, a, b);
                for c in 0..n {
                    let ac = d.bullet(v, a, c);
                    let lhs = d.bullet(v, a, g.mul(g.inv(b), c));
                    let rhs = g.mul(g.mul(a, g.inv(ab)), ac);
                    if lhs != rhs {
                        return Err(Witness::new("computationRule1", name(v), &[a, b, c], lhs, rhs));
                    }
                    let lhs = d.bullet(v, a, g.mul(b, g.inv(c)));
                    let rhs = g.mul(g.mul(ab, g.inv(ac)), a);
                    if lhs != rhs {
                        return Err(Witness::new("computationRule2", name(v), &[a, b, c], lhs, rhs));
                    }
                }
            }
        }
        Ok(())
    });

    DsbReport {
        left_quasigroup,
        dynamical_associativity,
        brace_compatibility,
        transition,
        computation_rules,
        unital: (0..nv).map(|v| d.is_zero_symmetric_at(v)).collect(),
    }
}
