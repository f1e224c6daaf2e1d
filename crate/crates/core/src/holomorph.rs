//! The holomorph `A ⋊ Aut(A)`, regular subsets and their translates.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{automorphism_group, Automorphism, FiniteGroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HolElement {
    pub elem: usize,
    pub aut: usize,
}

/// `{(a, f_a) : a ∈ A}` stored as `assignment[a] = f_a` (automorphism index).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RegularSubset {
    pub assignment: Vec<usize>,
}

impl RegularSubset {
    pub fn new(assignment: Vec<usize>) -> Self {
        RegularSubset { assignment }
    }

    pub fn is_unital(&self) -> bool {
        self.assignment[0] == 0
    }

    pub fn pair(&self, a: usize) -> HolElement {
        HolElement {
            elem: a,
            aut: self.assignment[a],
        }
    }
}

/// A group together with its automorphisms and the tables needed for
/// holomorph arithmetic.
#[derive(Debug, Clone)]
pub struct Holomorph {
    group: FiniteGroup,
    auts: Vec<Automorphism>,
    n: usize,
    k: usize,
    // compose[f * k + g] = f ∘ g
    compose: Vec<usize>,
    aut_inv: Vec<usize>,
    // eval[f * n + a] = f(a)
    eval: Vec<usize>,
}

impl Holomorph {
    pub fn new(group: FiniteGroup) -> Self {
        let auts = automorphism_group(&group);
        let n = group.order();
        let k = auts.len();
        let index = |f: &Automorphism| auts.binary_search(f).expect("closed under composition");
        let mut compose = vec![0; k * k];
        for f in 0..k {
            for g in 0..k {
                compose[f * k + g] = index(&auts[f].compose(&auts[g]));
            }
        }
        let aut_inv = auts.iter().map(|f| index(&f.inverse())).collect();
        let eval = auts.iter().flat_map(|f| f.images.iter().copied()).collect();
        Holomorph {
            group,
            auts,
            n,
            k,
            compose,
            aut_inv,
            eval,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.auts
    }

    pub fn aut_count(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn eval(&self, f: usize, a: usize) -> usize {
        self.eval[f * self.n + a]
    }

    #[inline]
    pub fn compose(&self, f: usize, g: usize) -> usize {
        self.compose[f * self.k + g]
    }

    #[inline]
    pub fn aut_inv(&self, f: usize) -> usize {
        self.aut_inv[f]
    }

    /// `(a,f)·(b,g) = (a·f(b), f∘g)`
    pub fn hol_mul(&self, x: HolElement, y: HolElement) -> HolElement {
        HolElement {
            elem: self.group.mul(x.elem, self.eval(x.aut, y.elem)),
            aut: self.compose(x.aut, y.aut),
        }
    }

    /// `(a,f)⁻¹ = (f⁻¹(a⁻¹), f⁻¹)`
    pub fn hol_inv(&self, x: HolElement) -> HolElement {
        let fi = self.aut_inv(x.aut);
        HolElement {
            elem: self.eval(fi, self.group.inv(x.elem)),
            aut: fi,
        }
    }

    pub fn hol_identity(&self) -> HolElement {
        HolElement { elem: 0, aut: 0 }
    }

    /// `a •_S b = a·f_a(b)`
    #[inline]
    pub fn bullet(&self, s: &RegularSubset, a: usize, b: usize) -> usize {
        self.group.mul(a, self.eval(s.assignment[a], b))
    }

    /// `(a, f_a)⁻¹ · S`, computed literally in the holomorph.
    pub fn translate(&self, s: &RegularSubset, a: usize) -> RegularSubset {
        let x = self.hol_inv(s.pair(a));
        let mut out = vec![usize::MAX; self.n];
        for b in 0..self.n {
            let y = self.hol_mul(x, s.pair(b));
            assert!(
                out[y.elem] == usize::MAX,
                "translate of a regular subset is not regular"
            );
            out[y.elem] = y.aut;
        }
        RegularSubset::new(out)
    }

    /// Same value as [`Holomorph::translate`], via
    /// `f'_c = f_a⁻¹ ∘ f_{a •_S c}`.
    pub fn translate_fast(&self, s: &RegularSubset, a: usize) -> RegularSubset {
        let fi = self.aut_inv(s.assignment[a]);
        RegularSubset::new(
            (0..self.n)
                .map(|c| self.compose(fi, s.assignment[self.bullet(s, a, c)]))
                .collect(),
        )
    }

    pub fn check_subset(&self, s: &RegularSubset) -> Result<()> {
        if s.assignment.len() != self.n || s.assignment.iter().any(|&f| f >= self.k) {
            return Err(Error::Input(format!(
                "assignment {:?} is not a map from {} elements to {} automorphisms",
                s.assignment, self.n, self.k
            )));
        }
        Ok(())
    }

    /// `|Aut|^{|A|}` (or `^{|A|-1}` for the unital family) as u128.
    pub fn family_size(&self, unital: bool) -> u128 {
        let e = if unital { self.n - 1 } else { self.n };
        (self.k as u128).checked_pow(e as u32).unwrap_or(u128::MAX)
    }

    /// Mixed-radix rank, element 0 most significant; order preserving.
    pub fn rank(&self, s: &RegularSubset) -> u64 {
        s.assignment
            .iter()
            .fold(0u64, |acc, &f| acc * self.k as u64 + f as u64)
    }

    pub fn unrank(&self, mut r: u64) -> RegularSubset {
        let mut out = vec![0; self.n];
        for slot in out.iter_mut().rev() {
            *slot = (r % self.k as u64) as usize;
            r /= self.k as u64;
        }
        RegularSubset::new(out)
    }

    /// Smallest translate-closed family containing `seed`, sorted.
    pub fn orbit_closure(&self, seed: &RegularSubset, cap: u128) -> Result<Vec<RegularSubset>> {
        self.check_subset(seed)?;
        let mut seen = BTreeSet::new();
        seen.insert(seed.clone());
        let mut stack = vec![seed.clone()];
        while let Some(s) = stack.pop() {
            for a in 0..self.n {
                let t = self.translate_fast(&s, a);
                if !seen.contains(&t) {
                    if seen.len() as u128 >= cap {
                        return Err(Error::Resource {
                            required: seen.len() as u128 + 1,
                            cap,
                        });
                    }
                    seen.insert(t.clone());
                    stack.push(t);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Multiset of automorphism multiplicities, decreasing.
    pub fn partition_profile(&self, s: &RegularSubset) -> Vec<usize> {
        partition_profile(s, self.k)
    }
}

/// `part(S)`: counts of each automorphism in the assignment, decreasing.
pub fn partition_profile(s: &RegularSubset, aut_count: usize) -> Vec<usize> {
    let mut counts = vec![0usize; aut_count];
    for &f in &s.assignment {
        counts[f] += 1;
    }
    let mut p: Vec<usize> = counts.into_iter().filter(|&c| c > 0).collect();
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}
