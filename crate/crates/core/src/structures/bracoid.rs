use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::dsb::DynamicalSkewBrace;
use super::report::{first_failure, Check, Report, Witness};
use crate::error::{input, Result};
use crate::group::{FiniteGroup, GroupJson};
use crate::quiver::LabelledQuiver;

const NONE: u8 = u8::MAX;

/// Semiloopoid product `•` on composable arrows together with a group
/// operation `·_λ` on each out-star. Arrows are `(vertex, label)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewBracoid {
    group: Option<FiniteGroup>,
    vertex_names: Vec<String>,
    labels: Vec<String>,
    n: usize,
    phi: Vec<u32>,
    bullet: Vec<u8>,
    dot: Vec<u8>,
    units: Vec<Option<usize>>,
    // derived
    ldiv: Vec<u8>,
    dot_identity: Vec<Option<usize>>,
    dot_inv: Vec<u8>,
}

impl SkewBracoid {
    pub fn new(
        vertex_names: Vec<String>,
        labels: Vec<String>,
        phi: &[Vec<usize>],
        bullet: &[Vec<Vec<usize>>],
        dot: &[Vec<Vec<usize>>],
        units: Vec<Option<usize>>,
    ) -> Result<Self> {
        let nv = vertex_names.len();
        let n = labels.len();
        if n >= NONE as usize {
            return input("too many labels");
        }
        if phi.len() != nv || bullet.len() != nv || dot.len() != nv || units.len() != nv {
            return input("bracoid tables do not match the vertex count");
        }
        let mut fphi = Vec::with_capacity(nv * n);
        let mut fb = Vec::with_capacity(nv * n * n);
        let mut fd = Vec::with_capacity(nv * n * n);
        for v in 0..nv {
            if phi[v].len() != n {
                return input(format!("phi row of {} has wrong length", vertex_names[v]));
            }
            for &t in &phi[v] {
                if t >= nv {
                    return input(format!("phi row of {} leaves the vertex set", vertex_names[v]));
                }
                fphi.push(t as u32);
            }
            for (what, tab, out) in [("ops", &bullet[v], &mut fb), ("dot", &dot[v], &mut fd)] {
                if tab.len() != n || tab.iter().any(|r| r.len() != n) {
                    return input(format!("{what} table of {} is not {n}x{n}", vertex_names[v]));
                }
                for row in tab {
                    for &x in row {
                        if x >= n {
                            return input(format!("{what} table of {} has entry {x}", vertex_names[v]));
                        }
                        out.push(x as u8);
                    }
                }
            }
            if let Some(u) = units[v] {
                if u >= n {
                    return input(format!("unit of {} out of range", vertex_names[v]));
                }
            }
        }
        Self::from_flat(None, vertex_names, labels, fphi, fb, fd, units)
    }

    pub(crate) fn from_flat(
        group: Option<FiniteGroup>,
        vertex_names: Vec<String>,
        labels: Vec<String>,
        phi: Vec<u32>,
        bullet: Vec<u8>,
        dot: Vec<u8>,
        units: Vec<Option<usize>>,
    ) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = vertex_names.iter().find(|v| !seen.insert(v.as_str())) {
            return input(format!("duplicate vertex name {dup}"));
        }
        let nv = vertex_names.len();
        let n = labels.len();
        let mut ldiv = vec![NONE; nv * n * n];
        for v in 0..nv {
            for a in 0..n {
                let row = (v * n + a) * n;
                for b in 0..n {
                    let x = bullet[row + b] as usize;
                    ldiv[row + x] = b as u8;
                }
            }
        }
        let mut dot_identity = vec![None; nv];
        let mut dot_inv = vec![NONE; nv * n];
        for v in 0..nv {
            let base = v * n * n;
            let d = |a: usize, b: usize| dot[base + a * n + b] as usize;
            let e = (0..n).find(|&e| (0..n).all(|x| d(e, x) == x && d(x, e) == x));
            dot_identity[v] = e;
            if let Some(e) = e {
                for a in 0..n {
                    if let Some(b) = (0..n).find(|&b| d(a, b) == e && d(b, a) == e) {
                        dot_inv[v * n + a] = b as u8;
                    }
                }
            }
        }
        Ok(SkewBracoid {
            group,
            vertex_names,
            labels,
            n,
            phi,
            bullet,
            dot,
            units,
            ldiv,
            dot_identity,
            dot_inv,
        })
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        self.group.as_ref()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_labels(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
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

    #[inline]
    pub fn target(&self, v: usize, a: usize) -> usize {
        self.phi[v * self.n + a] as usize
    }

    /// `[v‖a] • [φ(v,a)‖b]`, as a label at `v`.
    #[inline]
    pub fn bullet(&self, v: usize, a: usize, b: usize) -> usize {
        self.bullet[(v * self.n + a) * self.n + b] as usize
    }

    #[inline]
    pub fn dot(&self, v: usize, a: usize, b: usize) -> usize {
        self.dot[(v * self.n + a) * self.n + b] as usize
    }

    pub fn unit(&self, v: usize) -> Option<usize> {
        self.units[v]
    }

    pub fn is_unital(&self, v: usize) -> bool {
        self.units[v].is_some()
    }

    /// `e` with `[v‖c] • [φ(v,c)‖e] = [v‖d]`.
    #[inline]
    pub fn left_div(&self, v: usize, c: usize, d: usize) -> Option<usize> {
        match self.ldiv[(v * self.n + c) * self.n + d] {
            NONE => None,
            e => Some(e as usize),
        }
    }

    pub fn dot_identity(&self, v: usize) -> Option<usize> {
        self.dot_identity[v]
    }

    #[inline]
    pub fn dot_inv(&self, v: usize, a: usize) -> Option<usize> {
        match self.dot_inv[v * self.n + a] {
            NONE => None,
            b => Some(b as usize),
        }
    }

    /// `x ⇀ y = x⁻¹ ·_v (x • y)` for `x = [v‖a]`, `y = [φ(v,a)‖b]`.
    #[inline]
    pub fn left_action(&self, v: usize, a: usize, b: usize) -> Option<usize> {
        Some(self.dot(v, self.dot_inv(v, a)?, self.bullet(v, a, b)))
    }

    /// Two-sided `•`-inverse of `[v‖a]`, found by search.
    pub fn inverse(&self, v: usize, a: usize) -> Option<(usize, usize)> {
        let mu = self.target(v, a);
        let (uv, um) = (self.units[v]?, self.units[mu]?);
        (0..self.n)
            .find(|&b| self.target(mu, b) == v && self.bullet(v, a, b) == uv && self.bullet(mu, b, a) == um)
            .map(|b| (mu, b))
    }

    pub fn quiver(&self) -> LabelledQuiver {
        LabelledQuiver::from_targets(self.num_vertices(), self.labels.clone(), self.phi.clone())
            .expect("targets validated")
            .with_vertex_names(self.vertex_names.clone())
    }

    /// Rename every out-star: `perms[v][old] = new`.
    pub fn relabel(&self, perms: &[Vec<usize>]) -> Result<Self> {
        let (nv, n) = (self.num_vertices(), self.n);
        if perms.len() != nv {
            return input("one permutation per vertex required");
        }
        for p in perms {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return input(format!("{p:?} is not a permutation of the labels"));
            }
        }
        let mut phi = vec![0u32; nv * n];
        let mut bullet = vec![0u8; nv * n * n];
        let mut dot = vec![0u8; nv * n * n];
        for v in 0..nv {
            let p = &perms[v];
            for a in 0..n {
                let mu = self.target(v, a);
                phi[v * n + p[a]] = mu as u32;
                for b in 0..n {
                    bullet[(v * n + p[a]) * n + perms[mu][b]] = p[self.bullet(v, a, b)] as u8;
                    dot[(v * n + p[a]) * n + p[b]] = p[self.dot(v, a, b)] as u8;
                }
            }
        }
        let units = (0..nv).map(|v| self.units[v].map(|u| perms[v][u])).collect();
        Self::from_flat(None, self.vertex_names.clone(), self.labels.clone(), phi, bullet, dot, units)
    }

    /// Sub-bracoid on a `φ`-closed vertex set.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut index = std::collections::HashMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            index.insert(v, i);
        }
        let mut phi = Vec::new();
        let mut bullet = Vec::new();
        let mut dot = Vec::new();
        for &v in vertices {
            for a in 0..n {
                match index.get(&self.target(v, a)) {
                    Some(&i) => phi.push(i as u32),
                    None => return input(format!("vertex set not closed at {}", self.vertex_names[v])),
                }
            }
            bullet.extend_from_slice(&self.bullet[v * n * n..(v + 1) * n * n]);
            dot.extend_from_slice(&self.dot[v * n * n..(v + 1) * n * n]);
        }
        Self::from_flat(
            self.group.clone(),
            vertices.iter().map(|&v| self.vertex_names[v].clone()).collect(),
            self.labels.clone(),
            phi,
            bullet,
            dot,
            vertices.iter().map(|&v| self.units[v]).collect(),
        )
    }

    fn table(&self, flat: &[u8], v: usize) -> Vec<Vec<usize>> {
        let n = self.n;
        (0..n)
            .map(|a| (0..n).map(|b| flat[(v * n + a) * n + b] as usize).collect())
            .collect()
    }

    pub fn to_json(&self) -> BracoidJson {
        let names = &self.vertex_names;
        BracoidJson {
            group: self.group.as_ref().map(|g| g.to_json()),
            vertices: names.clone(),
            phi: (0..self.num_vertices())
                .map(|v| (0..self.n).map(|a| self.target(v, a)).collect())
                .collect(),
            ops: (0..names.len()).map(|v| (names[v].clone(), self.table(&self.bullet, v))).collect(),
            units: (0..names.len())
                .filter_map(|v| self.units[v].map(|u| (names[v].clone(), u)))
                .collect(),
            dot: (0..names.len()).map(|v| (names[v].clone(), self.table(&self.dot, v))).collect(),
        }
    }

    pub fn from_json(j: &BracoidJson) -> Result<Self> {
        let n = match (&j.group, j.phi.first()) {
            (Some(g), _) => g.order,
            (None, Some(row)) => row.len(),
            (None, None) => return input("empty bracoid"),
        };
        let get = |m: &IndexMap<String, Vec<Vec<usize>>>, what: &str| -> Result<Vec<Vec<Vec<usize>>>> {
            if m.len() != j.vertices.len() {
                return input(format!("{what}: expected one table per vertex"));
            }
            j.vertices
                .iter()
                .map(|v| m.get(v).cloned().ok_or_else(|| crate::error::Error::Input(format!("{what}: no table for {v}"))))
                .collect()
        };
        let ops = get(&j.ops, "ops")?;
        let dot = get(&j.dot, "dot")?;
        if let Some(k) = j.units.keys().find(|k| !j.vertices.contains(k)) {
            return input(format!("unit given for unknown vertex {k}"));
        }
        let units = j.vertices.iter().map(|v| j.units.get(v).copied()).collect();
        let group = j.group.as_ref().map(FiniteGroup::from_json).transpose()?;
        let labels = match &group {
            Some(g) => g.element_names().to_vec(),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let mut b = Self::new(j.vertices.clone(), labels, &j.phi, &ops, &dot, units)?;
        b.group = group;
        Ok(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracoidJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    pub vertices: Vec<String>,
    pub phi: Vec<Vec<usize>>,
    pub ops: IndexMap<String, Vec<Vec<usize>>>,
    pub units: IndexMap<String, usize>,
    pub dot: IndexMap<String, Vec<Vec<usize>>>,
}

/// `[λ‖a]•[φ(λ,a)‖b] = [λ‖a •_λ b]`, `·_λ` the group law on labels,
/// units `[λ‖0]` on zero-symmetric vertices.
pub fn semiloopoid_of_dsb(d: &DynamicalSkewBrace) -> SkewBracoid {
    let n = d.order();
    let g = d.group();
    let nv = d.num_vertices();
    let mut dot = Vec::with_capacity(nv * n * n);
    for _ in 0..nv {
        for a in 0..n {
            for b in 0..n {
                dot.push(g.mul(a, b) as u8);
            }
        }
    }
    let units = (0..nv).map(|v| d.is_zero_symmetric_at(v).then_some(0)).collect();
    SkewBracoid::from_flat(
        Some(g.clone()),
        d.vertex_names().to_vec(),
        g.element_names().to_vec(),
        d.flat_phi().to_vec(),
        d.flat_ops().to_vec(),
        dot,
        units,
    )
    .expect("dsb vertex names are distinct")
}

#[derive(Debug, Clone)]
pub struct BracoidReport {
    pub semiloopoid: Check,
    pub per_vertex_groups: Check,
    pub bracoid_compat: Check,
    pub equiv_ii: Check,
    pub equiv_iii: Check,
}

impl Report for BracoidReport {
    fn entries(&self) -> Vec<(&'static str, &Check)> {
        vec![
            ("groupoidOrSemiloopoid", &self.semiloopoid),
            ("perVertexGroups", &self.per_vertex_groups),
            ("bracoidCompat", &self.bracoid_compat),
            ("equivII", &self.equiv_ii),
            ("equivIII", &self.equiv_iii),
        ]
    }
}

fn no_group(b: &SkewBracoid, v: usize, axiom: &str) -> Witness {
    Witness::new(axiom, b.vertex_name(v), &[], "no group structure on out-star", "group")
}

pub fn verify_bracoid(b: &SkewBracoid) -> BracoidReport {
    let n = b.num_labels();
    let nv = b.num_vertices();
    let name = |v: usize| b.vertex_name(v).to_string();
    let incoming = b.quiver().has_incoming();

    let semiloopoid = first_failure(nv, |v| {
        if b.is_unital(v) != incoming[v] {
            return Err(Witness::new(
                "unitalVertices",
                name(v),
                &[],
                format!("unit={:?}", b.unit(v)),
                format!("incoming={}", incoming[v]),
            ));
        }
        for a in 0..n {
            let mut seen = vec![false; n];
            for c in 0..n {
                if std::mem::replace(&mut seen[b.bullet(v, a, c)], true) {
                    return Err(Witness::new("leftBijective", name(v), &[a, c], b.bullet(v, a, c), "distinct"));
                }
            }
        }
        for a in 0..n {
            let mu = b.target(v, a);
            for c in 0..n {
                let ac = b.bullet(v, a, c);
                let lhs = b.target(v, ac);
                let rhs = b.target(mu, c);
                if lhs != rhs {
                    return Err(Witness::new("productTarget", name(v), &[a, c], name(lhs), name(rhs)));
                }
                for e in 0..n {
                    let lhs = b.bullet(v, ac, e);
                    let rhs = b.bullet(v, a, b.bullet(mu, c, e));
                    if lhs != rhs {
                        return Err(Witness::new("associativity", name(v), &[a, c, e], lhs, rhs));
                    }
                }
            }
            let Some(u) = b.unit(mu) else {
                return Err(Witness::new("rightUnit", name(v), &[a], "target without unit", name(mu)));
            };
            if b.target(mu, u) != mu || b.bullet(v, a, u) != a {
                return Err(Witness::new("rightUnit", name(v), &[a, u], b.bullet(v, a, u), a));
            }
        }
        if let Some(u) = b.unit(v) {
            for c in 0..n {
                if b.bullet(v, u, c) != c {
                    return Err(Witness::new("leftUnit", name(v), &[u, c], b.bullet(v, u, c), c));
                }
            }
            for a in 0..n {
                if b.inverse(v, a).is_none() {
                    return Err(Witness::new("inverse", name(v), &[a], "none", "two-sided inverse"));
                }
            }
        }
        Ok(())
    });

    let per_vertex_groups = first_failure(nv, |v| {
        for x in 0..n {
            for y in 0..n {
                let xy = b.dot(v, x, y);
                for z in 0..n {
                    let lhs = b.dot(v, xy, z);
                    let rhs = b.dot(v, x, b.dot(v, y, z));
                    if lhs != rhs {
                        return Err(Witness::new("dotAssociative", name(v), &[x, y, z], lhs, rhs));
                    }
                }
            }
        }
        let Some(e) = b.dot_identity(v) else {
            return Err(Witness::new("dotIdentity", name(v), &[], "none", "identity"));
        };
        if let Some(x) = (0..n).find(|&x| b.dot_inv(v, x).is_none()) {
            return Err(Witness::new("dotInverse", name(v), &[x], "none", "inverse"));
        }
        if let Some(u) = b.unit(v) {
            if u != e {
                return Err(Witness::new("unitIsDotIdentity", name(v), &[], u, e));
            }
        }
        Ok(())
    });

    let bracoid_compat = first_failure(nv, |v| {
        for a in 0..n {
            let mu = b.target(v, a);
            let Some(ai) = b.dot_inv(v, a) else {
                return Err(no_group(b, v, "bracoidCompat"));
            };
            for y in 0..n {
                let ay = b.bullet(v, a, y);
                for z in 0..n {
                    let lhs = b.bullet(v, a, b.dot(mu, y, z));
                    let rhs = b.dot(v, b.dot(v, ay, ai), b.bullet(v, a, z));
                    if lhs != rhs {
                        return Err(Witness::new("bracoidCompat", name(v), &[a, y, z], lhs, rhs));
                    }
                }
            }
        }
        Ok(())
    });

    let equiv_ii = first_failure(nv, |v| {
        for a in 0..n {
            let mu = b.target(v, a);
            for c in 0..n {
                let ac = b.bullet(v, a, c);
                for e in 0..n {
                    let lhs = b.left_action(v, ac, e);
                    let rhs = b.left_action(mu, c, e).and_then(|w| b.left_action(v, a, w));
                    match (lhs, rhs) {
                        (Some(l), Some(r)) if l == r => {}
                        (Some(l), Some(r)) => return Err(Witness::new("equivII", name(v), &[a, c, e], l, r)),
                        _ => return Err(no_group(b, v, "equivII")),
                    }
                }
            }
        }
        Ok(())
    });

    let equiv_iii = first_failure(nv, |v| {
        for a in 0..n {
            let mu = b.target(v, a);
            for c in 0..n {
                for e in 0..n {
                    let lhs = b.left_action(v, a, b.dot(mu, c, e));
                    let rhs = b
                        .left_action(v, a, c)
                        .zip(b.left_action(v, a, e))
                        .map(|(x, y)| b.dot(v, x, y));
                    match (lhs, rhs) {
                        (Some(l), Some(r)) if l == r => {}
                        (Some(l), Some(r)) => return Err(Witness::new("equivIII", name(v), &[a, c, e], l, r)),
                        _ => return Err(no_group(b, v, "equivIII")),
                    }
                }
            }
        }
        Ok(())
    });

    BracoidReport {
        semiloopoid,
        per_vertex_groups,
        bracoid_compat,
        equiv_ii,
        equiv_iii,
    }
}
