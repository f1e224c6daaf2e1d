//! Finite groups given by Cayley tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GroupError;

pub const MAX_ORDER: usize = 16;

/// A finite group with the identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    names: Vec<String>,
}

/// An automorphism, stored as its images array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Automorphism {
    pub images: Vec<usize>,
}

impl Automorphism {
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn compose(&self, g: &Automorphism) -> Automorphism {
        Automorphism {
            images: g.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Automorphism { images }
    }
}

impl FiniteGroup {
    /// Validate a row-major Cayley table and move the identity to index 0.
    pub fn from_table(
        name: impl Into<String>,
        table: &[Vec<usize>],
        names: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let (g, _) = Self::from_table_with_relabel(name, table, names)?;
        Ok(g)
    }

    /// As [`FiniteGroup::from_table`], also returning the map from input
    /// indices to canonical indices.
    pub fn from_table_with_relabel(
        name: impl Into<String>,
        table: &[Vec<usize>],
        names: Option<Vec<String>>,
    ) -> Result<(Self, Vec<usize>), GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Ragged {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            if let Some((c, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::OutOfRange {
                    row: r,
                    col: c,
                    value: v,
                });
            }
        }
        for (r, row) in table.iter().enumerate() {
            let mut seen = vec![false; n];
            for (c, &v) in row.iter().enumerate() {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GroupError::NotLatin {
                        row: r,
                        col: c,
                        value: v,
                        axis: "row",
                    });
                }
            }
        }
        let mut seen = vec![vec![false; n]; n];
        for (r, row) in table.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if std::mem::replace(&mut seen[c][v], true) {
                    return Err(GroupError::NotLatin {
                        row: r,
                        col: c,
                        value: v,
                        axis: "column",
                    });
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = table[table[a][b]][c];
                    let rhs = table[a][table[b][c]];
                    if lhs != rhs {
                        return Err(GroupError::NotAssociative { a, b, c, lhs, rhs });
                    }
                }
            }
        }
        let order: Vec<usize> = std::iter::once(e).chain((0..n).filter(|&x| x != e)).collect();
        let mut relabel = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let mut flat = vec![0; n * n];
        for (i, &a) in order.iter().enumerate() {
            for (j, &b) in order.iter().enumerate() {
                flat[i * n + j] = relabel[table[a][b]];
            }
        }
        let names = match names {
            Some(ns) if ns.len() == n => order.iter().map(|&o| ns[o].clone()).collect(),
            _ => order.iter().map(|o| o.to_string()).collect(),
        };
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n).find(|&b| flat[a * n + b] == 0).unwrap();
        }
        Ok((
            FiniteGroup {
                name: name.into(),
                n,
                table: flat,
                inverses,
                names,
            },
            relabel,
        ))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, as a membership mask.
    pub fn generated(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        mask[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    stack.push(y);
                }
            }
        }
        mask
    }

    /// Greedy generating sequence: each element not yet generated is added.
    pub fn generating_sequence(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut mask = self.generated(&gens);
        for a in 1..self.n {
            if !mask[a] {
                gens.push(a);
                mask = self.generated(&gens);
            }
        }
        gens
    }

    /// All isomorphisms `self -> other`, as image arrays, sorted.
    pub fn isomorphisms(&self, other: &FiniteGroup) -> Vec<Vec<usize>> {
        if self.n != other.n {
            return Vec::new();
        }
        let gens = self.generating_sequence();
        let mut out = Vec::new();
        let mut imgs = Vec::with_capacity(gens.len());
        self.search_isos(other, &gens, &mut imgs, &mut out);
        out.sort();
        out
    }

    /// First isomorphism `self -> other` in lexicographic order, if any.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        self.isomorphisms(other).into_iter().next()
    }

    fn search_isos(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        imgs: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(map) = self.extend_hom(other, &gens[..imgs.len()], imgs) else {
            return;
        };
        if imgs.len() == gens.len() {
            let map: Vec<usize> = map.into_iter().map(|m| m.unwrap()).collect();
            debug_assert!((0..self.n).all(|a| (0..self.n)
                .all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b]))));
            out.push(map);
            return;
        }
        let g = gens[imgs.len()];
        let ord = self.element_order(g);
        for y in 0..other.n {
            if other.element_order(y) == ord && map.iter().all(|m| *m != Some(y)) {
                imgs.push(y);
                self.search_isos(other, gens, imgs, out);
                imgs.pop();
            }
        }
    }

    /// Extend `gens[i] -> imgs[i]` to an injective homomorphism on the
    /// generated subgroup, or `None` on conflict.
    fn extend_hom(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        imgs: &[usize],
    ) -> Option<Vec<Option<usize>>> {
        let mut map = vec![None; self.n];
        let mut used = vec![false; other.n];
        map[0] = Some(0);
        used[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            let fx = map[x].unwrap();
            for (&g, &h) in gens.iter().zip(imgs) {
                let z = self.mul(x, g);
                let w = other.mul(fx, h);
                match map[z] {
                    Some(v) if v != w => return None,
                    Some(_) => {}
                    None => {
                        if std::mem::replace(&mut used[w], true) {
                            return None;
                        }
                        map[z] = Some(w);
                        stack.push(z);
                    }
                }
            }
        }
        Some(map)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            name: self.name.clone(),
            order: self.n,
            identity: 0,
            table: self.rows(),
        }
    }

    pub fn from_json(j: &GroupJson) -> Result<Self, GroupError> {
        if j.order != j.table.len() {
            return Err(GroupError::Ragged {
                row: j.table.len(),
                len: j.table.len(),
                expected: j.order,
            });
        }
        let (g, relabel) = Self::from_table_with_relabel(j.name.clone(), &j.table, None)?;
        if j.identity >= j.order || relabel[j.identity] != 0 {
            return Err(GroupError::NoIdentity);
        }
        Ok(g)
    }
}

/// Sorted automorphism list; index 0 is the identity.
pub fn automorphism_group(g: &FiniteGroup) -> Vec<Automorphism> {
    g.isomorphisms(g)
        .into_iter()
        .map(|images| Automorphism { images })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub order: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

/// A preset group name with parameters, e.g. `cyclic:4` or
/// `prod:cyclic:2,cyclic:2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    Klein4,
    Dihedral(usize),
    Sym(usize),
    Quaternion8,
    Product(Vec<GroupSpec>),
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("prod:") {
            let parts = rest
                .split(',')
                .map(|p| {
                    let p: GroupSpec = p.parse()?;
                    if matches!(p, GroupSpec::Product(_)) {
                        return Err(GroupError::BadParameter(s.to_string()));
                    }
                    Ok(p)
                })
                .collect::<Result<Vec<_>, _>>()?;
            if parts.is_empty() {
                return Err(GroupError::BadParameter(s.to_string()));
            }
            return Ok(GroupSpec::Product(parts));
        }
        let normal = s.replace('(', ":").replace(')', "");
        let (head, param) = match normal.split_once(':') {
            Some((h, p)) => (h, Some(p)),
            None => (normal.as_str(), None),
        };
        let num = || -> Result<usize, GroupError> {
            param
                .and_then(|p| p.trim().parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| GroupError::BadParameter(s.to_string()))
        };
        match head {
            "trivial" if param.is_none() => Ok(GroupSpec::Trivial),
            "klein4" if param.is_none() => Ok(GroupSpec::Klein4),
            "quaternion8" if param.is_none() => Ok(GroupSpec::Quaternion8),
            "cyclic" => Ok(GroupSpec::Cyclic(num()?)),
            "dihedral" => Ok(GroupSpec::Dihedral(num()?)),
            "sym" => match num()? {
                k @ 1..=3 => Ok(GroupSpec::Sym(k)),
                _ => Err(GroupError::BadParameter(s.to_string())),
            },
            _ => Err(GroupError::UnknownPreset(s.to_string())),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => write!(f, "trivial"),
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Klein4 => write!(f, "klein4"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Quaternion8 => write!(f, "quaternion8"),
            GroupSpec::Product(ps) => {
                write!(f, "prod:")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

impl GroupSpec {
    /// Number of elements, without building the table.
    pub fn order(&self) -> usize {
        match self {
            GroupSpec::Trivial => 1,
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Klein4 => 4,
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Sym(n) => (1..=*n).product(),
            GroupSpec::Quaternion8 => 8,
            GroupSpec::Product(ps) => ps.iter().map(|p| p.order()).product(),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        let order = self.order();
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let (table, names) = self.raw();
        FiniteGroup::from_table(self.to_string(), &table, Some(names))
    }

    fn raw(&self) -> (Vec<Vec<usize>>, Vec<String>) {
        match self {
            GroupSpec::Trivial => (vec![vec![0]], vec!["e".into()]),
            GroupSpec::Cyclic(n) => {
                let n = *n;
                let t = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
                (t, (0..n).map(|i| i.to_string()).collect())
            }
            GroupSpec::Klein4 => {
                let t = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
                (t, ["e", "a", "b", "c"].map(String::from).to_vec())
            }
            GroupSpec::Dihedral(n) => {
                // r^i at i, s r^i at n + i
                let n = *n;
                let mul = |x: usize, y: usize| {
                    let (sx, i) = (x / n, x % n);
                    let (sy, j) = (y / n, y % n);
                    match (sx, sy) {
                        (0, 0) => (i + j) % n,
                        (0, _) => n + (j + n - i) % n,
                        (_, 0) => n + (i + j) % n,
                        _ => (j + n - i) % n,
                    }
                };
                let t = (0..2 * n).map(|x| (0..2 * n).map(|y| mul(x, y)).collect()).collect();
                let names = (0..2 * n)
                    .map(|x| {
                        let (s, i) = (x / n, x % n);
                        match (s, i) {
                            (0, 0) => "e".to_string(),
                            (0, 1) => "r".to_string(),
                            (0, _) => format!("r^{i}"),
                            (_, 0) => "s".to_string(),
                            (_, 1) => "sr".to_string(),
                            _ => format!("sr^{i}"),
                        }
                    })
                    .collect();
                (t, names)
            }
            GroupSpec::Sym(k) => {
                let perms = permutations(*k);
                let idx = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
                let t = perms
                    .iter()
                    .map(|p| {
                        perms
                            .iter()
                            .map(|q| idx(&q.iter().map(|&x| p[x]).collect()))
                            .collect()
                    })
                    .collect();
                let names = perms
                    .iter()
                    .map(|p| p.iter().map(|x| (x + 1).to_string()).collect())
                    .collect();
                (t, names)
            }
            GroupSpec::Quaternion8 => {
                // index = 2 * unit + sign, units 1, i, j, k
                const UNIT: [[(usize, usize); 4]; 4] = [
                    [(0, 0), (1, 0), (2, 0), (3, 0)],
                    [(1, 0), (0, 1), (3, 0), (2, 1)],
                    [(2, 0), (3, 1), (0, 1), (1, 0)],
                    [(3, 0), (2, 0), (1, 1), (0, 1)],
                ];
                let t = (0..8)
                    .map(|x: usize| {
                        (0..8)
                            .map(|y: usize| {
                                let (u, s) = UNIT[x / 2][y / 2];
                                2 * u + (s ^ (x % 2) ^ (y % 2))
                            })
                            .collect()
                    })
                    .collect();
                let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
                    .map(String::from)
                    .to_vec();
                (t, names)
            }
            GroupSpec::Product(ps) => {
                let mut acc: (Vec<Vec<usize>>, Vec<String>) = (vec![vec![0]], vec![String::new()]);
                for p in ps {
                    let (t2, n2) = p.raw();
                    let (t1, n1) = acc;
                    let (a, b) = (t1.len(), t2.len());
                    let t = (0..a * b)
                        .map(|x| {
                            (0..a * b)
                                .map(|y| t1[x / b][y / b] * b + t2[x % b][y % b])
                                .collect()
                        })
                        .collect();
                    let names = (0..a * b)
                        .map(|x| {
                            if n1[x / b].is_empty() {
                                n2[x % b].clone()
                            } else {
                                format!("{},{}", n1[x / b], n2[x % b])
                            }
                        })
                        .collect();
                    acc = (t, names);
                }
                let names = acc
                    .1
                    .into_iter()
                    .map(|s| if ps.len() > 1 { format!("({s})") } else { s })
                    .collect();
                (acc.0, names)
            }
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 0..k {
            if !cur.contains(&x) {
                cur.push(x);
                rec(k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut out);
    out
}

/// Parse a preset and build it.
pub fn build_group(spec: &str) -> Result<FiniteGroup, GroupError> {
    spec.parse::<GroupSpec>()?.build()
}

/// Preset groups up to the given order, one per family member (products of
/// small cyclic groups included).
pub fn presets_up_to(max_order: usize) -> Vec<GroupSpec> {
    let mut out = vec![GroupSpec::Trivial];
    for n in 2..=max_order {
        out.push(GroupSpec::Cyclic(n));
    }
    if max_order >= 4 {
        out.push(GroupSpec::Klein4);
    }
    for n in 3..=max_order / 2 {
        out.push(GroupSpec::Dihedral(n));
    }
    if max_order >= 6 {
        out.push(GroupSpec::Sym(3));
        out.push(GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(3)]));
    }
    if max_order >= 8 {
        out.push(GroupSpec::Quaternion8);
        out.push(GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(4)]));
        out.push(GroupSpec::Product(vec![
            GroupSpec::Cyclic(2),
            GroupSpec::Cyclic(2),
            GroupSpec::Cyclic(2),
        ]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_table() {
        let g = build_group("cyclic:3").unwrap();
        assert_eq!(g.order(), 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(g.mul(i, j), (i + j) % 3);
            }
        }
    }

    #[test]
    fn trivial_group() {
        let g = build_group("trivial").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
        assert!(g.is_abelian());
    }

    #[test]
    fn repeated_row_entry_is_reported() {
        let t = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 0, 1]];
        match FiniteGroup::from_table("bad", &t, None) {
            Err(GroupError::NotLatin { row: 1, col: 1, axis: "row", .. }) => {}
            other => panic!("{other:?}"),
        }
        let t = vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 0, 1]];
        assert!(matches!(
            FiniteGroup::from_table("bad", &t, None),
            Err(GroupError::NotLatin { row: 1, col: 2, axis: "row", .. })
        ));
    }

    #[test]
    fn non_associative_latin_square() {
        // a Latin square with identity 0 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table("loop", &t, None),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn identity_is_moved_first() {
        // Z/2 with identity at index 1
        let t = vec![vec![1, 0], vec![0, 1]];
        let (g, relabel) = FiniteGroup::from_table_with_relabel("z2", &t, None).unwrap();
        assert_eq!(relabel, vec![1, 0]);
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.element_name(0), "1");
    }

    #[test]
    fn aut_counts() {
        let count = |s: &str| automorphism_group(&build_group(s).unwrap()).len();
        assert_eq!(count("cyclic:3"), 2);
        assert_eq!(count("cyclic:4"), 2);
        assert_eq!(count("klein4"), 6);
        assert_eq!(count("sym:3"), 6);
        assert_eq!(count("dihedral:4"), 8);
        assert_eq!(count("quaternion8"), 24);
        assert_eq!(count("prod:cyclic:2,cyclic:2,cyclic:2"), 168);
        assert_eq!(count("cyclic:8"), 4);
        assert_eq!(count("trivial"), 1);
    }

    #[test]
    fn aut_order_and_identity_first() {
        let g = build_group("cyclic:3").unwrap();
        let auts = automorphism_group(&g);
        assert!(auts[0].is_identity());
        assert_eq!(auts[1].images, vec![0, 2, 1]);
    }

    #[test]
    fn abelian_predicate() {
        assert!(build_group("cyclic:4").unwrap().is_abelian());
        assert!(!build_group("sym:3").unwrap().is_abelian());
        assert!(!build_group("quaternion8").unwrap().is_abelian());
        assert!(build_group("prod:cyclic:2,cyclic:4").unwrap().is_abelian());
    }

    #[test]
    fn sym3_is_dihedral3() {
        let a = build_group("sym:3").unwrap();
        let b = build_group("dihedral:3").unwrap();
        assert!(a.find_isomorphism(&b).is_some());
        let c = build_group("cyclic:6").unwrap();
        assert!(a.find_isomorphism(&c).is_none());
    }

    #[test]
    fn spec_round_trip() {
        for s in ["trivial", "cyclic:5", "klein4", "dihedral:4", "sym:3", "quaternion8",
                  "prod:cyclic:2,cyclic:2"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        assert!("cyclic:0".parse::<GroupSpec>().is_err());
        assert!("foo".parse::<GroupSpec>().is_err());
        assert!(matches!(build_group("cyclic:17"), Err(GroupError::TooLarge(17))));
        assert_eq!("cyclic(4)".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(4));
    }

    #[test]
    fn json_round_trip() {
        let g = build_group("dihedral:3").unwrap();
        let j = g.to_json();
        let h = FiniteGroup::from_json(&j).unwrap();
        assert_eq!(h.rows(), g.rows());
    }
}
