//! Named vertices of the unital and full families over `Z/3` and `Z/4`.

use crate::group::FiniteGroup;
use crate::holomorph::RegularSubset;

// automorphism 0 is the identity and 1 is negation in both groups
const Z3: &[(&str, [usize; 3])] = &[
    ("s0", [0, 0, 0]),
    ("s2", [0, 0, 1]),
    ("s1", [0, 1, 0]),
    ("s3", [0, 1, 1]),
    ("r3", [1, 0, 0]),
    ("r2", [1, 0, 1]),
    ("r1", [1, 1, 0]),
    ("r0", [1, 1, 1]),
];

const Z4: &[(&str, [usize; 4])] = &[
    ("s0", [0, 0, 0, 0]),
    ("s6", [0, 0, 0, 1]),
    ("s5", [0, 0, 1, 0]),
    ("s2", [0, 0, 1, 1]),
    ("s4", [0, 1, 0, 0]),
    ("s1", [0, 1, 0, 1]),
    ("s3", [0, 1, 1, 0]),
    ("s7", [0, 1, 1, 1]),
];

fn is_cyclic(g: &FiniteGroup, n: usize) -> bool {
    g.order() == n && (0..n).any(|a| g.element_order(a) == n)
}

/// Named subsets for `Z/3` and `Z/4`, if `g` is one of them.
pub fn named_subsets(g: &FiniteGroup) -> Option<Vec<(String, RegularSubset)>> {
    let out: Vec<(String, RegularSubset)> = if is_cyclic(g, 3) && g.name() == "cyclic:3" {
        Z3.iter().map(|(s, a)| (s.to_string(), RegularSubset::new(a.to_vec()))).collect()
    } else if is_cyclic(g, 4) && g.name() == "cyclic:4" {
        Z4.iter().map(|(s, a)| (s.to_string(), RegularSubset::new(a.to_vec()))).collect()
    } else {
        return None;
    };
    Some(out)
}

/// Name of a subset under [`named_subsets`].
pub fn lookup<'a>(names: &'a [(String, RegularSubset)], s: &RegularSubset) -> Option<&'a str> {
    names.iter().find(|(_, t)| t == s).map(|(n, _)| n.as_str())
}

/// The named subset, if any.
pub fn subset<'a>(names: &'a [(String, RegularSubset)], name: &str) -> Option<&'a RegularSubset> {
    names.iter().find(|(n, _)| n == name).map(|(_, s)| s)
}
