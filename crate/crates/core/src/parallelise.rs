//! From connected skew bracoids back to dynamical skew braces, and the
//! correspondence between braided groupoids of pairs and heaps.

use crate::error::{input, Error, Result};
use crate::group::FiniteGroup;
use crate::structures::{
    verify_dsb, Check, DynamicalSkewBrace, QuiverBraiding, Report, SkewBracoid, Witness,
};

/// One arrow `λ -> μ` for every ordered pair, `arrows[λ * V + μ]` its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurianSubgroupoid {
    pub base: usize,
    /// Label at the base of the chosen arrow `ζ -> λ`.
    pub transversal: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl SchurianSubgroupoid {
    pub fn arrow(&self, from: usize, to: usize) -> usize {
        self.arrows[from * self.transversal.len() + to]
    }
}

fn require_groupoid(b: &SkewBracoid) -> Result<()> {
    if let Some(v) = (0..b.num_vertices()).find(|&v| !b.is_unital(v)) {
        return input(format!("vertex {} has no unit; a zero-symmetric (groupoid) input is required", b.vertex_name(v)));
    }
    Ok(())
}

/// `G'(λ, μ) = {x_λ^{-•} • x_μ}` with `x_ζ` the unit and otherwise the
/// smallest-labelled arrow `ζ -> λ`.
pub fn schurian_transversal(b: &SkewBracoid, zeta: usize) -> Result<SchurianSubgroupoid> {
    require_groupoid(b)?;
    let nv = b.num_vertices();
    let n = b.num_labels();
    if zeta >= nv {
        return input(format!("base vertex {zeta} out of range"));
    }
    let mut transversal = vec![usize::MAX; nv];
    transversal[zeta] = b.unit(zeta).unwrap();
    for a in 0..n {
        let t = b.target(zeta, a);
        if transversal[t] == usize::MAX {
            transversal[t] = a;
        }
    }
    if let Some(v) = transversal.iter().position(|&x| x == usize::MAX) {
        return input(format!(
            "disconnected input: {} is unreachable from {}",
            b.vertex_name(v),
            b.vertex_name(zeta)
        ));
    }
    let mut inverse = Vec::with_capacity(nv);
    for (v, &x) in transversal.iter().enumerate() {
        match b.inverse(zeta, x) {
            Some((w, y)) if w == v => inverse.push(y),
            _ => return Err(Error::Assertion(format!("[{}‖{x}] has no inverse", b.vertex_name(zeta)))),
        }
    }
    let mut arrows = vec![0; nv * nv];
    for l in 0..nv {
        for m in 0..nv {
            arrows[l * nv + m] = b.bullet(l, inverse[l], transversal[m]);
        }
    }
    let g = SchurianSubgroupoid { base: zeta, transversal, arrows };
    for l in 0..nv {
        if g.arrow(l, l) != b.unit(l).unwrap() {
            return Err(Error::Assertion(format!("missing unit at {}", b.vertex_name(l))));
        }
        for m in 0..nv {
            let x = g.arrow(l, m);
            if b.target(l, x) != m {
                return Err(Error::Assertion("transversal arrow has the wrong target".into()));
            }
            if b.inverse(l, x) != Some((m, g.arrow(m, l))) {
                return Err(Error::Assertion("transversal not closed under inverse".into()));
            }
            for k in 0..nv {
                if b.bullet(l, x, g.arrow(m, k)) != g.arrow(l, k) {
                    return Err(Error::Assertion("transversal not closed under composition".into()));
                }
            }
        }
    }
    Ok(g)
}

/// Per-vertex bijections `φ_λ` from the out-star of `λ` to a common label set.
#[derive(Debug, Clone)]
pub struct MsLabelling {
    pub base: usize,
    pub transversal: Vec<usize>,
    /// `maps[λ][old label] = new label`.
    pub maps: Vec<Vec<usize>>,
    pub group: FiniteGroup,
}

/// Unit loop first, then arrows by (target, label).
pub fn default_base_bijection(b: &SkewBracoid, zeta: usize) -> Vec<usize> {
    let u = b.unit(zeta).unwrap_or(0);
    let mut order: Vec<usize> = (0..b.num_labels()).filter(|&a| a != u).collect();
    order.sort_by_key(|&a| (b.target(zeta, a), a));
    order.insert(0, u);
    let mut phi = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        phi[old] = new;
    }
    phi
}

/// Relabel a connected skew bracoid so that every out-star carries the same
/// group law; returns the labelling and the resulting dynamical skew brace.
pub fn ms_labelling(
    b: &SkewBracoid,
    zeta: usize,
    phi_zeta: Option<&[usize]>,
) -> Result<(MsLabelling, DynamicalSkewBrace)> {
    let t = schurian_transversal(b, zeta)?;
    let nv = b.num_vertices();
    let n = b.num_labels();
    let phi_zeta = match phi_zeta {
        Some(p) => p.to_vec(),
        None => default_base_bijection(b, zeta),
    };
    if !is_permutation(&phi_zeta, n) {
        return input(format!("{phi_zeta:?} is not a bijection of the base out-star"));
    }
    let mut maps = Vec::with_capacity(nv);
    for l in 0..nv {
        let x = t.transversal[l];
        let m: Vec<usize> = (0..n)
            .map(|u| b.left_action(zeta, x, u).map(|w| phi_zeta[w]))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Assertion("out-star of the base is not a group".into()))?;
        if !is_permutation(&m, n) {
            return Err(Error::Assertion(format!("labelling at {} is not bijective", b.vertex_name(l))));
        }
        maps.push(m);
    }
    let inverse: Vec<Vec<usize>> = maps.iter().map(|m| invert(m)).collect();
    let transported = |l: usize, p: usize, q: usize| maps[l][b.dot(l, inverse[l][p], inverse[l][q])];
    for l in 0..nv {
        for p in 0..n {
            for q in 0..n {
                let (lhs, rhs) = (transported(l, p, q), transported(zeta, p, q));
                if lhs != rhs {
                    return Err(Error::Assertion(format!(
                        "{}",
                        Witness::new("labellingIndependence", b.vertex_name(l), &[p, q], lhs, rhs)
                    )));
                }
            }
        }
    }
    let table: Vec<Vec<usize>> = (0..n).map(|p| (0..n).map(|q| transported(zeta, p, q)).collect()).collect();
    let (group, relabel) = FiniteGroup::from_table_with_relabel("transported", &table, None)
        .map_err(|e| Error::Assertion(format!("transported law is not a group: {e}")))?;
    let maps: Vec<Vec<usize>> = maps.iter().map(|m| m.iter().map(|&x| relabel[x]).collect()).collect();
    let inverse: Vec<Vec<usize>> = maps.iter().map(|m| invert(m)).collect();
    let mut phi = vec![vec![0; n]; nv];
    let mut ops = vec![vec![vec![0; n]; n]; nv];
    for l in 0..nv {
        for p in 0..n {
            let a = inverse[l][p];
            let mu = b.target(l, a);
            phi[l][p] = mu;
            for q in 0..n {
                ops[l][p][q] = maps[l][b.bullet(l, a, inverse[mu][q])];
            }
        }
    }
    let dsb = DynamicalSkewBrace::new(group.clone(), b.vertex_names().to_vec(), &phi, &ops)?;
    let report = verify_dsb(&dsb);
    if let Some((name, w)) = report.failures().first() {
        return Err(Error::Assertion(format!("relabelled structure fails {name}: {w}")));
    }
    if !report.zero_symmetric() {
        return Err(Error::Assertion("relabelled structure is not zero-symmetric".into()));
    }
    Ok((MsLabelling { base: zeta, transversal: t.transversal, maps, group }, dsb))
}

/// [`ms_labelling`] on each connected component, based at its smallest vertex.
pub fn ms_labelling_per_component(b: &SkewBracoid) -> Result<Vec<(Vec<usize>, MsLabelling, DynamicalSkewBrace)>> {
    let comps = b.quiver().connected_components();
    (0..comps.count())
        .map(|c| {
            let members = comps.members(c);
            let sub = b.restrict(&members)?;
            let (l, d) = ms_labelling(&sub, 0, None)?;
            Ok((members, l, d))
        })
        .collect()
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

/// A vertex bijection with per-vertex label bijections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowBijection {
    pub vertices: Vec<usize>,
    pub labels: Vec<Vec<usize>>,
}

/// First (lexicographic) arrow bijection between two quivers carrying
/// braidings that intertwines them, found by exhaustive search.
pub fn find_braided_isomorphism(
    b1: &SkewBracoid,
    s1: &QuiverBraiding,
    b2: &SkewBracoid,
    s2: &QuiverBraiding,
) -> Option<ArrowBijection> {
    let nv = b1.num_vertices();
    let n = b1.num_labels();
    if nv != b2.num_vertices() || n != b2.num_labels() {
        return None;
    }
    let mut found = None;
    for_each_permutation(nv, &mut |pi| {
        let mut labels: Vec<Option<Vec<usize>>> = vec![None; nv];
        if search_labels(b1, s1, b2, s2, pi, 0, &mut labels) {
            found = Some(ArrowBijection {
                vertices: pi.to_vec(),
                labels: labels.into_iter().map(|l| l.unwrap()).collect(),
            });
            return true;
        }
        false
    });
    found
}

fn for_each_permutation(k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                if rec(k, cur, used, f) {
                    return true;
                }
                cur.pop();
                used[x] = false;
            }
        }
        false
    }
    rec(k, &mut Vec::new(), &mut vec![false; k], f);
}

fn search_labels(
    b1: &SkewBracoid,
    s1: &QuiverBraiding,
    b2: &SkewBracoid,
    s2: &QuiverBraiding,
    pi: &[usize],
    v: usize,
    labels: &mut Vec<Option<Vec<usize>>>,
) -> bool {
    let nv = b1.num_vertices();
    if v == nv {
        return true;
    }
    let n = b1.num_labels();
    let mut candidates = Vec::new();
    label_bijections(b1, b2, pi, v, &mut vec![usize::MAX; n], &mut vec![false; n], 0, &mut candidates);
    for psi in candidates {
        labels[v] = Some(psi);
        if consistent(b1, s1, s2, pi, labels) && search_labels(b1, s1, b2, s2, pi, v + 1, labels) {
            return true;
        }
    }
    labels[v] = None;
    false
}

#[allow(clippy::too_many_arguments)]
fn label_bijections(
    b1: &SkewBracoid,
    b2: &SkewBracoid,
    pi: &[usize],
    v: usize,
    cur: &mut Vec<usize>,
    used: &mut Vec<bool>,
    a: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let n = b1.num_labels();
    if a == n {
        out.push(cur.clone());
        return;
    }
    let want = pi[b1.target(v, a)];
    for x in 0..n {
        if !used[x] && b2.target(pi[v], x) == want {
            used[x] = true;
            cur[a] = x;
            label_bijections(b1, b2, pi, v, cur, used, a + 1, out);
            used[x] = false;
        }
    }
}

fn consistent(
    b1: &SkewBracoid,
    s1: &QuiverBraiding,
    s2: &QuiverBraiding,
    pi: &[usize],
    labels: &[Option<Vec<usize>>],
) -> bool {
    let n = b1.num_labels();
    for (v, psi_v) in labels.iter().enumerate() {
        let Some(psi_v) = psi_v else { continue };
        for a in 0..n {
            let mu = b1.target(v, a);
            let Some(psi_mu) = &labels[mu] else { continue };
            for bb in 0..n {
                let (c, e) = s1.apply(v, a, bb);
                let rho = b1.target(v, c);
                let Some(psi_rho) = &labels[rho] else { continue };
                if s2.apply(pi[v], psi_v[a], psi_mu[bb]) != (psi_v[c], psi_rho[e]) {
                    return false;
                }
            }
        }
    }
    true
}

/// A ternary operation, `table[(a * n + b) * n + c] = ⟨a,b,c⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryHeap {
    names: Vec<String>,
    table: Vec<usize>,
}

impl TernaryHeap {
    pub fn from_fn(names: Vec<String>, f: impl Fn(usize, usize, usize) -> usize) -> Result<Self> {
        let n = names.len();
        let mut table = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let x = f(a, b, c);
                    if x >= n {
                        return input(format!("<{a},{b},{c}> = {x} is out of range"));
                    }
                    table.push(x);
                }
            }
        }
        Ok(TernaryHeap { names, table })
    }

    /// `⟨a,b,c⟩ = a·b⁻¹·c`.
    pub fn of_group(g: &FiniteGroup) -> Self {
        Self::from_fn(g.element_names().to_vec(), |a, b, c| g.mul(g.mul(a, g.inv(b)), c)).unwrap()
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.size();
        self.table[(a * n + b) * n + c]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, x: usize) {
        let n = self.size();
        self.table[(a * n + b) * n + c] = x;
    }

    pub fn rows(&self) -> Vec<(usize, usize, usize, usize)> {
        let n = self.size();
        (0..n * n * n).map(|i| (i / (n * n), (i / n) % n, i % n, self.table[i])).collect()
    }
}

/// A ternary table with unknown cells.
#[derive(Debug, Clone)]
pub struct PartialHeap {
    names: Vec<String>,
    cells: Vec<Option<usize>>,
}

impl PartialHeap {
    pub fn new(names: Vec<String>) -> Self {
        let n = names.len();
        PartialHeap { names, cells: vec![None; n * n * n] }
    }

    fn idx(&self, a: usize, b: usize, c: usize) -> usize {
        let n = self.names.len();
        (a * n + b) * n + c
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        self.cells[self.idx(a, b, c)]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, x: usize) -> Result<()> {
        let i = self.idx(a, b, c);
        match self.cells[i] {
            Some(y) if y != x => input(format!(
                "conflicting values for <{},{},{}>: {} and {}",
                self.names[a], self.names[b], self.names[c], self.names[y], self.names[x]
            )),
            _ => {
                self.cells[i] = Some(x);
                Ok(())
            }
        }
    }

    /// `⟨i,i,j⟩ = j` and `⟨i,j,j⟩ = i`.
    pub fn fill_maltsev(&mut self) -> Result<()> {
        let n = self.names.len();
        for i in 0..n {
            for j in 0..n {
                self.set(i, i, j, j)?;
                self.set(i, j, j, i)?;
            }
        }
        Ok(())
    }

    pub fn known(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    /// Fill unknown cells from `⟨a,b,d⟩ = ⟨⟨a,b,c⟩,c,d⟩` until nothing changes.
    pub fn complete(mut self) -> Result<TernaryHeap> {
        let n = self.names.len();
        loop {
            let mut changed = false;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let Some(e) = self.get(a, b, c) else { continue };
                        for d in 0..n {
                            let lhs = self.get(a, b, d);
                            let rhs = self.get(e, c, d);
                            match (lhs, rhs) {
                                (None, Some(x)) => {
                                    self.set(a, b, d, x)?;
                                    changed = true;
                                }
                                (Some(x), None) => {
                                    self.set(e, c, d, x)?;
                                    changed = true;
                                }
                                (Some(x), Some(y)) if x != y => {
                                    return input(format!(
                                        "completion conflict: <{0},{1},{3}> = {4} but <<{0},{1},{2}>,{2},{3}> = {5}",
                                        self.names[a], self.names[b], self.names[c], self.names[d],
                                        self.names[x], self.names[y]
                                    ));
                                }
                                _ => {}
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        if let Some(i) = self.cells.iter().position(|c| c.is_none()) {
            let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
            return input(format!(
                "cannot complete <{},{},{}>",
                self.names[a], self.names[b], self.names[c]
            ));
        }
        let cells = self.cells;
        TernaryHeap::from_fn(self.names, |a, b, c| cells[(a * n + b) * n + c].unwrap())
    }
}

#[derive(Debug, Clone)]
pub struct HeapReport {
    pub m1: Check,
    pub m2: Check,
    pub a1: Check,
    pub a2: Check,
    pub a: Check,
    pub abelian: bool,
    /// With M1 and M2, A holds iff A1 and A2 both hold.
    pub equivalence: Check,
}

impl Report for HeapReport {
    fn entries(&self) -> Vec<(&'static str, &Check)> {
        vec![
            ("M1", &self.m1),
            ("M2", &self.m2),
            ("A1", &self.a1),
            ("A2", &self.a2),
            ("A", &self.a),
            ("A<=>A1+A2", &self.equivalence),
        ]
    }
}

pub fn verify_heap(t: &TernaryHeap) -> HeapReport {
    let n = t.size();
    let name = |x: usize| t.names[x].clone();
    let first = |f: &dyn Fn() -> Check| f();
    let m1 = first(&|| {
        for a in 0..n {
            for b in 0..n {
                if t.get(a, b, b) != a {
                    return Err(Witness::new("M1", "-", &[a, b], name(t.get(a, b, b)), name(a)));
                }
            }
        }
        Ok(())
    });
    let m2 = first(&|| {
        for a in 0..n {
            for b in 0..n {
                if t.get(a, a, b) != b {
                    return Err(Witness::new("M2", "-", &[a, b], name(t.get(a, a, b)), name(b)));
                }
            }
        }
        Ok(())
    });
    let a1 = first(&|| {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs = t.get(a, b, d);
                        let rhs = t.get(t.get(a, b, c), c, d);
                        if lhs != rhs {
                            return Err(Witness::new("A1", "-", &[a, b, c, d], name(lhs), name(rhs)));
                        }
                    }
                }
            }
        }
        Ok(())
    });
    let a2 = first(&|| {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let lhs = t.get(a, c, d);
                        let rhs = t.get(a, b, t.get(b, c, d));
                        if lhs != rhs {
                            return Err(Witness::new("A2", "-", &[a, b, c, d], name(lhs), name(rhs)));
                        }
                    }
                }
            }
        }
        Ok(())
    });
    let a = first(&|| {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let abc = t.get(a, b, c);
                    for d in 0..n {
                        for e in 0..n {
                            let lhs = t.get(a, b, t.get(c, d, e));
                            let rhs = t.get(abc, d, e);
                            if lhs != rhs {
                                return Err(Witness::new("A", "-", &[a, b, c, d, e], name(lhs), name(rhs)));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    });
    let abelian = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t.get(a, b, c) == t.get(c, b, a))));
    let equivalence = if m1.is_ok() && m2.is_ok() && a.is_ok() != (a1.is_ok() && a2.is_ok()) {
        Err(Witness::new("A<=>A1+A2", "-", &[], a.is_ok(), a1.is_ok() && a2.is_ok()))
    } else {
        Ok(())
    };
    HeapReport { m1, m2, a1, a2, a, abelian, equivalence }
}

/// `a·b = ⟨a,ζ,b⟩` with unit `ζ`; also returns vertex -> element index.
pub fn group_from_pointed_heap(t: &TernaryHeap, zeta: usize) -> Result<(FiniteGroup, Vec<usize>)> {
    let report = verify_heap(t);
    if let Some((name, w)) = report.failures().first() {
        return Err(Error::Assertion(format!("not a heap: {name} fails: {w}")));
    }
    let n = t.size();
    if zeta >= n {
        return input(format!("point {zeta} out of range"));
    }
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| t.get(a, zeta, b)).collect()).collect();
    let (g, relabel) = FiniteGroup::from_table_with_relabel(
        format!("pointed at {}", t.names[zeta]),
        &table,
        Some(t.names.clone()),
    )?;
    debug_assert_eq!(relabel[zeta], 0);
    Ok((g, relabel))
}

/// For a complete quiver of degree 1, `lab[a][b]` is the label of `a -> b`.
fn pair_labels(b: &SkewBracoid) -> Result<Vec<Vec<usize>>> {
    let nv = b.num_vertices();
    if b.num_labels() != nv {
        return input(format!(
            "not a groupoid of pairs: {} labels on {} vertices",
            b.num_labels(),
            nv
        ));
    }
    let mut lab = vec![vec![usize::MAX; nv]; nv];
    for (v, row) in lab.iter_mut().enumerate() {
        for a in 0..nv {
            let t = b.target(v, a);
            if row[t] != usize::MAX {
                return input(format!(
                    "not a groupoid of pairs: two arrows {} -> {}",
                    b.vertex_name(v),
                    b.vertex_name(t)
                ));
            }
            row[t] = a;
        }
    }
    Ok(lab)
}

/// `⟨a,b,c⟩` is the middle vertex of `σ([a,b] ⊗ [b,c])`.
pub fn ternary_of_braiding(b: &SkewBracoid, s: &QuiverBraiding) -> Result<TernaryHeap> {
    let lab = pair_labels(b)?;
    TernaryHeap::from_fn(b.vertex_names().to_vec(), |x, y, z| {
        let (c, _) = s.apply(x, lab[x][y], lab[y][z]);
        b.target(x, c)
    })
}

/// Groupoid of pairs on the heap's elements (arrow `[a, x]` labelled `x`)
/// with `σ([a,x] ⊗ [x,y]) = [a,⟨a,x,y⟩] ⊗ [⟨a,x,y⟩,y]`.
pub fn braiding_from_heap(t: &TernaryHeap) -> Result<(SkewBracoid, QuiverBraiding)> {
    let report = verify_heap(t);
    if let Some((name, w)) = report.failures().first() {
        return Err(Error::Assertion(format!("not a heap: {name} fails: {w}")));
    }
    let n = t.size();
    let phi: Vec<Vec<usize>> = (0..n).map(|_| (0..n).collect()).collect();
    let bullet: Vec<Vec<Vec<usize>>> = (0..n).map(|_| (0..n).map(|_| (0..n).collect()).collect()).collect();
    let dot: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|a| (0..n).map(|x| (0..n).map(|y| t.get(x, a, y)).collect()).collect())
        .collect();
    let units = (0..n).map(Some).collect();
    let b = SkewBracoid::new(t.names.clone(), t.names.clone(), &phi, &bullet, &dot, units)?;
    let s = QuiverBraiding::from_fn(n, n, |a, x, y| (t.get(a, x, y), y));
    Ok((b, s))
}

/// Checks `⟨v,ζ,w⟩ = t([ζ‖ℓ(v) ·_ζ ℓ(w)])` where `ℓ(v)` labels the
/// arrow `ζ -> v`: the pointed heap group is the labelled out-star group.
pub fn pointed_heap_matches_labelling(b: &SkewBracoid, t: &TernaryHeap, zeta: usize) -> Result<Check> {
    let lab = pair_labels(b)?;
    let n = b.num_vertices();
    for v in 0..n {
        for w in 0..n {
            let lhs = t.get(v, zeta, w);
            let rhs = b.target(zeta, b.dot(zeta, lab[zeta][v], lab[zeta][w]));
            if lhs != rhs {
                return Ok(Err(Witness::new(
                    "pointedHeapGroup",
                    b.vertex_name(zeta),
                    &[v, w],
                    b.vertex_name(lhs),
                    b.vertex_name(rhs),
                )));
            }
        }
    }
    Ok(Ok(()))
}

/// Labels of the arrows leaving `zeta`, indexed by target.
pub fn compatible_labelling(b: &SkewBracoid, zeta: usize) -> Result<Vec<usize>> {
    Ok(pair_labels(b)?[zeta].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use crate::structures::{braiding_of_qtsb, semiloopoid_of_dsb, verify_braiding};

    fn single_vertex(g: &FiniteGroup) -> SkewBracoid {
        let n = g.order();
        let rows = g.rows();
        SkewBracoid::new(
            vec!["x".into()],
            g.element_names().to_vec(),
            &[vec![0; n]],
            &[rows.clone()],
            &[rows],
            vec![Some(0)],
        )
        .unwrap()
    }

    #[test]
    fn single_vertex_brace_is_unchanged() {
        let g = build_group("cyclic:4").unwrap();
        let b = single_vertex(&g);
        let (l, d) = ms_labelling(&b, 0, None).unwrap();
        assert_eq!(l.maps, vec![vec![0, 1, 2, 3]]);
        assert_eq!(d.table(0), g.rows());
        let t = schurian_transversal(&b, 0).unwrap();
        assert_eq!(t.arrows, vec![0]);
    }

    #[test]
    fn group_heap_round_trip() {
        for s in ["cyclic:4", "sym:3", "cyclic:2"] {
            let g = build_group(s).unwrap();
            let t = TernaryHeap::of_group(&g);
            let r = verify_heap(&t);
            assert!(r.passed(), "{s}");
            assert_eq!(r.abelian, g.is_abelian());
            let (h, relabel) = group_from_pointed_heap(&t, 0).unwrap();
            assert_eq!(relabel, (0..g.order()).collect::<Vec<_>>());
            assert_eq!(h.rows(), g.rows());
            let (b, sigma) = braiding_from_heap(&t).unwrap();
            let br = verify_braiding(&b, &sigma);
            assert!(br.passed(), "{s}: {:?}", br.failures());
            assert_eq!(br.is_involutive(), g.is_abelian());
            assert_eq!(ternary_of_braiding(&b, &sigma).unwrap(), t);
            assert_eq!(braiding_of_qtsb(&b).unwrap(), sigma);
        }
    }

    #[test]
    fn tampered_heap_fails_m1() {
        let g = build_group("cyclic:3").unwrap();
        let mut t = TernaryHeap::of_group(&g);
        t.set(1, 2, 2, 0);
        assert!(verify_heap(&t).m1.is_err());
    }

    #[test]
    fn completion_from_maltsev_and_a_few_cells() {
        let g = build_group("cyclic:3").unwrap();
        let full = TernaryHeap::of_group(&g);
        let mut p = PartialHeap::new(full.names().to_vec());
        p.fill_maltsev().unwrap();
        assert!(p.clone().complete().is_err());
        // the cells with three distinct entries determine the rest
        for (a, b, c, x) in full.rows() {
            if a != b && b != c && a != c {
                p.set(a, b, c, x).unwrap();
            }
        }
        assert_eq!(p.complete().unwrap(), full);
        let mut p = PartialHeap::new(full.names().to_vec());
        p.fill_maltsev().unwrap();
        assert!(p.set(0, 0, 1, 2).is_err());
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let h = crate::holomorph::Holomorph::new(build_group("cyclic:3").unwrap());
        let r = crate::enumeration::enumerate_unital(&h, 1000).unwrap();
        let b = semiloopoid_of_dsb(&r.dsb().unwrap());
        let err = ms_labelling(&b, 0, None).unwrap_err();
        assert!(err.to_string().contains("unreachable"), "{err}");
        assert_eq!(ms_labelling_per_component(&b).unwrap().len(), 2);
    }
}
