use rayon::prelude::*;

use super::bracoid::SkewBracoid;
use super::report::{first_failure, Check, Report, Witness};
use crate::error::{Error, Result};

/// Explicit pair map on paths of length 2, `(v, a, b) -> (c, e)`, meaning
/// `σ([v‖a|b]) = [v‖c|e]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverBraiding {
    num_vertices: usize,
    n: usize,
    images: Vec<(u8, u8)>,
}

/// `[x, y, x⇀y, x↼y]`, arrows as `(vertex, label)`.
pub type BraidingEntry = [(String, usize); 4];

impl QuiverBraiding {
    pub fn from_fn(num_vertices: usize, n: usize, f: impl Fn(usize, usize, usize) -> (usize, usize) + Sync) -> Self {
        let images = (0..num_vertices * n * n)
            .into_par_iter()
            .map(|i| {
                let (c, e) = f(i / (n * n), (i / n) % n, i % n);
                (c as u8, e as u8)
            })
            .collect();
        QuiverBraiding { num_vertices, n, images }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_labels(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn apply(&self, v: usize, a: usize, b: usize) -> (usize, usize) {
        let (c, e) = self.images[(v * self.n + a) * self.n + b];
        (c as usize, e as usize)
    }

    pub fn to_json(&self, b: &SkewBracoid) -> Vec<BraidingEntry> {
        let n = self.n;
        let name = |v: usize| b.vertex_name(v).to_string();
        let mut out = Vec::with_capacity(self.images.len());
        for v in 0..self.num_vertices {
            for a in 0..n {
                let mu = b.target(v, a);
                for bb in 0..n {
                    let (c, e) = self.apply(v, a, bb);
                    out.push([(name(v), a), (name(mu), bb), (name(v), c), (name(b.target(v, c)), e)]);
                }
            }
        }
        out
    }

    pub fn from_json(b: &SkewBracoid, entries: &[BraidingEntry]) -> Result<Self> {
        let n = b.num_labels();
        let nv = b.num_vertices();
        let mut images = vec![None; nv * n * n];
        for [x, y, p, q] in entries {
            let idx = |name: &str| {
                b.vertex_index(name)
                    .ok_or_else(|| Error::Input(format!("unknown vertex {name} in braiding")))
            };
            let (v, a) = (idx(&x.0)?, x.1);
            let (c, e) = (p.1, q.1);
            if a >= n || y.1 >= n || c >= n || e >= n {
                return Err(Error::Input("braiding label out of range".into()));
            }
            if idx(&y.0)? != b.target(v, a) || idx(&p.0)? != v || idx(&q.0)? != b.target(v, c) {
                return Err(Error::Input(format!("braiding entry at {}‖{a}|{} is not composable", x.0, y.1)));
            }
            images[(v * n + a) * n + y.1] = Some((c as u8, e as u8));
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| Error::Input(format!("braiding undefined on path {i}"))))
            .collect::<Result<_>>()?;
        Ok(QuiverBraiding { num_vertices: nv, n, images })
    }
}

/// `x⇀y = x⁻¹·(x•y)` in the out-star group and `x↼y = (x⇀y)\(x•y)`.
pub fn braiding_of_qtsb(b: &SkewBracoid) -> Result<QuiverBraiding> {
    let n = b.num_labels();
    let nv = b.num_vertices();
    for v in 0..nv {
        for a in 0..n {
            if b.dot_inv(v, a).is_none() {
                return Err(Error::Assertion(format!("no ·-inverse of [{}‖{a}]", b.vertex_name(v))));
            }
            for c in 0..n {
                if b.left_div(v, a, c).is_none() {
                    return Err(Error::Assertion(format!("•_{} is not left-bijective", b.vertex_name(v))));
                }
            }
        }
    }
    Ok(QuiverBraiding::from_fn(nv, n, |v, a, bb| {
        let d = b.bullet(v, a, bb);
        let c = b.left_action(v, a, bb).unwrap();
        (c, b.left_div(v, c, d).unwrap())
    }))
}

#[derive(Debug, Clone)]
pub struct BraidingReport {
    pub morphism: Check,
    pub bijective: Check,
    pub ybe: Check,
    pub bg1: Check,
    pub bg2: Check,
    pub bg3: Check,
    pub bg4: Check,
    pub bg5: Check,
    pub left_nondeg: Check,
    pub right_nondeg: Check,
    pub involutive: Check,
}

impl BraidingReport {
    pub fn is_involutive(&self) -> bool {
        self.involutive.is_ok()
    }
}

impl Report for BraidingReport {
    /// Involutivity is a property, not an axiom, and is left out.
    fn entries(&self) -> Vec<(&'static str, &Check)> {
        vec![
            ("quiverMorphism", &self.morphism),
            ("bijective", &self.bijective),
            ("YBE", &self.ybe),
            ("BG1", &self.bg1),
            ("BG2", &self.bg2),
            ("BG3", &self.bg3),
            ("BG4", &self.bg4),
            ("BG5", &self.bg5),
            ("leftNonDeg", &self.left_nondeg),
            ("rightNonDeg", &self.right_nondeg),
        ]
    }
}

pub fn verify_braiding(b: &SkewBracoid, s: &QuiverBraiding) -> BraidingReport {
    let n = b.num_labels();
    let nv = b.num_vertices();
    let name = |v: usize| b.vertex_name(v).to_string();
    let t = |v: usize, a: usize| b.target(v, a);
    if s.num_vertices != nv || s.n != n {
        let w = Witness::new("shape", "-", &[], (s.num_vertices, s.n), (nv, n));
        let e: Check = Err(w);
        return BraidingReport {
            morphism: e.clone(),
            bijective: e.clone(),
            ybe: e.clone(),
            bg1: e.clone(),
            bg2: e.clone(),
            bg3: e.clone(),
            bg4: e.clone(),
            bg5: e.clone(),
            left_nondeg: e.clone(),
            right_nondeg: e.clone(),
            involutive: e,
        };
    }

    let morphism = first_failure(nv, |v| {
        for a in 0..n {
            for bb in 0..n {
                let (c, e) = s.apply(v, a, bb);
                let lhs = t(t(v, c), e);
                let rhs = t(t(v, a), bb);
                if lhs != rhs {
                    return Err(Witness::new("quiverMorphism", name(v), &[a, bb], name(lhs), name(rhs)));
                }
            }
        }
        Ok(())
    });

    let bijective = first_failure(nv, |v| {
        let mut seen = vec![usize::MAX; n * n];
        for a in 0..n {
            for bb in 0..n {
                let (c, e) = s.apply(v, a, bb);
                let k = c * n + e;
                if seen[k] != usize::MAX {
                    return Err(Witness::new("bijective", name(v), &[a, bb], (c, e), (seen[k] / n, seen[k] % n)));
                }
                seen[k] = a * n + bb;
            }
        }
        Ok(())
    });

    // states are (v, a, b, c) on paths of length 3
    let s12 = |(v, a, bb, c): (usize, usize, usize, usize)| {
        let (x, y) = s.apply(v, a, bb);
        (v, x, y, c)
    };
    let s23 = |(v, a, bb, c): (usize, usize, usize, usize)| {
        let (x, y) = s.apply(t(v, a), bb, c);
        (v, a, x, y)
    };
    let ybe = first_failure(nv, |v| {
        for a in 0..n {
            for bb in 0..n {
                for c in 0..n {
                    let p = (v, a, bb, c);
                    let lhs = s12(s23(s12(p)));
                    let rhs = s23(s12(s23(p)));
                    if lhs != rhs {
                        return Err(Witness::new("YBE", name(v), &[a, bb, c], lhs, rhs));
                    }
                }
            }
        }
        Ok(())
    });

    let bg1 = first_failure(nv, |v| {
        let Some(u) = b.unit(v) else { return Ok(()) };
        for a in 0..n {
            let Some(ut) = b.unit(t(v, a)) else { continue };
            let got = s.apply(v, a, ut);
            if got != (u, a) {
                return Err(Witness::new("BG1", name(v), &[a, ut], got, (u, a)));
            }
        }
        Ok(())
    });

    let bg2 = first_failure(nv, |v| {
        let Some(u) = b.unit(v) else { return Ok(()) };
        for a in 0..n {
            let Some(ut) = b.unit(t(v, a)) else { continue };
            let got = s.apply(v, u, a);
            if got != (a, ut) {
                return Err(Witness::new("BG2", name(v), &[u, a], got, (a, ut)));
            }
        }
        Ok(())
    });

    let bg3 = first_failure(nv, |v| {
        for a in 0..n {
            let mu = t(v, a);
            for bb in 0..n {
                let (c1, e1) = s.apply(v, a, bb);
                let rho = t(v, c1);
                for c in 0..n {
                    let yz = b.bullet(mu, bb, c);
                    let (p, q) = s.apply(v, a, yz);
                    let (c2, e2) = s.apply(rho, e1, c);
                    let left = b.bullet(v, c1, c2);
                    if p != left {
                        return Err(Witness::new("BG3", name(v), &[a, bb, c], p, left));
                    }
                    let lhs = (t(v, p), q);
                    let rhs = (t(rho, c2), e2);
                    if lhs != rhs {
                        return Err(Witness::new("BG3", name(v), &[a, bb, c], lhs, rhs));
                    }
                }
            }
        }
        Ok(())
    });

    let bg4 = first_failure(nv, |v| {
        for a in 0..n {
            let mu = t(v, a);
            for bb in 0..n {
                let d = b.bullet(v, a, bb);
                for c in 0..n {
                    let (p, q) = s.apply(v, d, c);
                    let (c1, e1) = s.apply(mu, bb, c);
                    let (c2, e2) = s.apply(v, a, c1);
                    if p != c2 {
                        return Err(Witness::new("BG4", name(v), &[a, bb, c], p, c2));
                    }
                    let w = t(v, c2);
                    let lhs = (t(v, p), q);
                    let rhs = (w, b.bullet(w, e2, e1));
                    if lhs != rhs {
                        return Err(Witness::new("BG4", name(v), &[a, bb, c], lhs, rhs));
                    }
                }
            }
        }
        Ok(())
    });

    let bg5 = first_failure(nv, |v| {
        for a in 0..n {
            for bb in 0..n {
                let (c, e) = s.apply(v, a, bb);
                let lhs = b.bullet(v, c, e);
                let rhs = b.bullet(v, a, bb);
                if lhs != rhs {
                    return Err(Witness::new("BG5", name(v), &[a, bb], lhs, rhs));
                }
            }
        }
        Ok(())
    });

    let left_nondeg = first_failure(nv, |v| {
        for a in 0..n {
            let mut seen = vec![false; n];
            for bb in 0..n {
                let (c, _) = s.apply(v, a, bb);
                if std::mem::replace(&mut seen[c], true) {
                    return Err(Witness::new("leftNonDeg", name(v), &[a, bb], c, "injective"));
                }
            }
        }
        Ok(())
    });

    // arrows into each vertex from unital sources
    let mut incoming: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
    for v in (0..nv).filter(|&v| b.is_unital(v)) {
        for a in 0..n {
            incoming[t(v, a)].push((v, a));
        }
    }
    let right_nondeg = first_failure(nv, |mu| {
        if !b.is_unital(mu) {
            return Ok(());
        }
        for bb in 0..n {
            let target = t(mu, bb);
            let mut images = Vec::with_capacity(incoming[mu].len());
            for &(v, a) in &incoming[mu] {
                let (c, e) = s.apply(v, a, bb);
                let src = t(v, c);
                if !b.is_unital(src) {
                    return Err(Witness::new("rightNonDeg", name(mu), &[bb], name(src), "unital source"));
                }
                images.push((src, e));
            }
            images.sort_unstable();
            images.dedup();
            if images.len() != incoming[mu].len() || images.len() != incoming[target].len() {
                return Err(Witness::new(
                    "rightNonDeg",
                    name(mu),
                    &[bb],
                    images.len(),
                    (incoming[mu].len(), incoming[target].len()),
                ));
            }
        }
        Ok(())
    });

    let involutive = first_failure(nv, |v| {
        for a in 0..n {
            for bb in 0..n {
                let (c, e) = s.apply(v, a, bb);
                let back = s.apply(v, c, e);
                if back != (a, bb) {
                    return Err(Witness::new("involutive", name(v), &[a, bb], back, (a, bb)));
                }
            }
        }
        Ok(())
    });

    BraidingReport {
        morphism,
        bijective,
        ybe,
        bg1,
        bg2,
        bg3,
        bg4,
        bg5,
        left_nondeg,
        right_nondeg,
        involutive,
    }
}
