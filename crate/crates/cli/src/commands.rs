use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use dynbrace::enumeration::{enumerate_full, enumerate_unital, invariants as compute_invariants, EnumerationResult};
use dynbrace::group::{build_group, presets_up_to};
use dynbrace::holomorph::Holomorph;
use dynbrace::parallelise::{
    group_from_pointed_heap, ms_labelling, ms_labelling_per_component, pointed_heap_matches_labelling,
    ternary_of_braiding, verify_heap,
};
use dynbrace::quiver::{DotOptions, LabelledQuiver, QuiverJson};
use dynbrace::structures::{
    braiding_of_qtsb, semiloopoid_of_dsb, verify_braiding, verify_bracoid, verify_dsb, BraidingEntry, BracoidJson,
    DsbJson, DynamicalSkewBrace, QuiverBraiding, Report, SkewBracoid,
};
use dynbrace::Error;
use serde::Serialize;
use thiserror::Error as ThisError;

use crate::{Common, Emit};

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Input(String),
    #[error("verification failed:\n{0}")]
    Verification(String),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Core(Error::Resource { .. }) => 3,
            CliError::Core(Error::Assertion(_)) | CliError::Verification(_) => 1,
            CliError::Core(_) | CliError::Input(_) | CliError::Io(..) => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn set_workers(workers: Option<usize>) -> Result<()> {
    if let Some(w) = workers {
        if w == 0 {
            return Err(CliError::Input("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    Ok(())
}

fn holomorph(spec: Option<&str>) -> Result<Holomorph> {
    let spec = spec.ok_or_else(|| CliError::Input("a group is required (positional or --group)".into()))?;
    let g = build_group(spec).map_err(Error::from)?;
    Ok(Holomorph::new(g))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(p.display().to_string(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(x: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(x).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn run_enumeration(hol: &Holomorph, common: &Common, full: bool, seed: bool) -> Result<EnumerationResult> {
    set_workers(common.workers)?;
    let mut res = if full { enumerate_full(hol, common.cap)? } else { enumerate_unital(hol, common.cap)? };
    if seed {
        res = res.with_example_names();
    }
    Ok(res)
}

fn members(res: &EnumerationResult, component: Option<usize>) -> Result<Vec<usize>> {
    match component {
        Some(c) if c >= res.components.count() => Err(CliError::Input(format!(
            "component {c} does not exist ({} components)",
            res.components.count()
        ))),
        Some(c) => Ok(res.components.members(c)),
        None => Ok((0..res.num_vertices()).collect()),
    }
}

fn selected_dsb(res: &EnumerationResult, component: Option<usize>) -> Result<DynamicalSkewBrace> {
    Ok(match component {
        Some(c) => {
            members(res, Some(c))?;
            res.component_dsb(c)?
        }
        None => res.dsb()?,
    })
}

pub fn enumerate(
    spec: Option<&str>,
    common: &Common,
    full: bool,
    json: bool,
    what: Emit,
    component: Option<usize>,
    seed: bool,
) -> Result<()> {
    let hol = holomorph(spec)?;
    let res = run_enumeration(&hol, common, full, seed)?;
    let text = if json {
        if what == Emit::Dsb {
            to_json(&res.to_json(component)?)?
        } else {
            let dsb = selected_dsb(&res, component)?;
            let b = semiloopoid_of_dsb(&dsb);
            match what {
                Emit::Bracoid => to_json(&b.to_json())?,
                Emit::Braiding => to_json(&braiding_of_qtsb(&b)?.to_json(&b))?,
                _ => to_json(&dsb.quiver().to_json())?,
            }
        }
    } else {
        enumeration_text(&res, component)?
    };
    emit(common.out.as_deref(), &text)
}

fn enumeration_text(res: &EnumerationResult, component: Option<usize>) -> Result<String> {
    let hol = &res.holomorph;
    let g = hol.group();
    let q = &res.quiver;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "group {}  |A|={}  |Aut|={}  vertices={} ({})",
        g.name(),
        g.order(),
        hol.aut_count(),
        res.num_vertices(),
        if res.full { "all regular subsets" } else { "unital" }
    );
    let _ = writeln!(s, "automorphisms:");
    for (i, f) in hol.automorphisms().iter().enumerate() {
        let _ = writeln!(s, "  {i}: {:?}", f.images);
    }
    let comps: Vec<usize> = match component {
        Some(c) => {
            members(res, Some(c))?;
            vec![c]
        }
        None => (0..res.components.count()).collect(),
    };
    for c in comps {
        let degree = match res.components.degree(c) {
            Some(d) => d.to_string(),
            None => "not complete".to_string(),
        };
        let _ = writeln!(s, "component {c}: size {}, degree {degree}", res.components.size(c));
        for v in res.components.members(c) {
            let targets: Vec<String> = (0..g.order()).map(|a| q.vertex_name(q.target(v, a))).collect();
            let _ = writeln!(
                s,
                "  {}{} {:?} -> {}",
                q.vertex_name(v),
                if res.is_unital(v) { "" } else { " (initial)" },
                res.vertex(v).assignment,
                targets.join(" ")
            );
        }
    }
    Ok(s)
}

pub fn invariants(spec: Option<&str>, common: &Common, full: bool, json: bool, check: bool) -> Result<()> {
    set_workers(common.workers)?;
    let hol = holomorph(spec)?;
    let table = compute_invariants(&hol, common.cap, full)?;
    let text = if json {
        to_json(&table)?
    } else {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "group {}  |A|={}  |Aut|={}  unital subsets={}",
            table.group, table.order, table.aut_order, table.unital_vertices
        );
        let _ = writeln!(s, "{:<4} {:<8} {:<8} {:<24} part", "s", "N_s", "in_s", "representative");
        for (&size, &count) in &table.n_s {
            let of_size: Vec<_> = table.components.iter().filter(|c| c.size == size).collect();
            let rep = format!("{:?}", of_size[0].representative).replace(' ', "");
            let parts: BTreeSet<String> = of_size
                .iter()
                .map(|c| format!("({})", c.partition.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                .collect();
            let in_s = match &table.in_s {
                Some(m) => m.get(&size).map(|x| x.to_string()).unwrap_or_default(),
                None => "-".to_string(),
            };
            let _ = writeln!(
                s,
                "{:<4} {:<8} {:<8} {:<24} {}",
                size,
                count,
                in_s,
                rep,
                parts.into_iter().collect::<Vec<_>>().join(" ")
            );
        }
        let _ = writeln!(s, "N_1 = {} (skew braces on (A,.))", table.n(1));
        for c in &table.checks {
            let _ = writeln!(s, "{} {}: {}", if c.holds { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        s
    };
    emit(common.out.as_deref(), &text)?;
    if check && !table.all_hold() {
        let failed: Vec<String> = table
            .checks
            .iter()
            .filter(|c| !c.holds)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        return Err(CliError::Verification(failed.join("\n")));
    }
    Ok(())
}

/// A structure file: a dynamical skew brace (possibly from `enumerate`) or
/// a skew bracoid.
struct Loaded {
    dsb: Option<DynamicalSkewBrace>,
    bracoid: SkewBracoid,
}

fn load(path: &Path) -> Result<Loaded> {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let bad = |e: serde_json::Error| CliError::Input(format!("{}: {e}", path.display()));
    if value.get("dot").is_some() {
        let j: BracoidJson = serde_json::from_value(value).map_err(bad)?;
        Ok(Loaded { dsb: None, bracoid: SkewBracoid::from_json(&j)? })
    } else if value.get("ops").is_some() {
        let j: DsbJson = serde_json::from_value(value).map_err(bad)?;
        let d = DynamicalSkewBrace::from_json(&j)?;
        Ok(Loaded { bracoid: semiloopoid_of_dsb(&d), dsb: Some(d) })
    } else {
        Err(CliError::Input(format!(
            "{}: expected a dynamical skew brace or skew bracoid file",
            path.display()
        )))
    }
}

pub fn verify(input: &Path, braiding: Option<&Path>, workers: Option<usize>) -> Result<()> {
    set_workers(workers)?;
    let loaded = load(input)?;
    let mut lines = Vec::new();
    if let Some(d) = &loaded.dsb {
        let r = verify_dsb(d);
        lines.extend(r.lines());
        lines.push(format!("INFO zeroSymmetric={}", r.zero_symmetric()));
    }
    let b = &loaded.bracoid;
    let br = verify_bracoid(b);
    lines.extend(br.lines());
    let sigma = match braiding {
        Some(p) => {
            let entries: Vec<BraidingEntry> =
                serde_json::from_str(&read(p)?).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            Some(QuiverBraiding::from_json(b, &entries)?)
        }
        None if br.passed() => Some(braiding_of_qtsb(b)?),
        None => None,
    };
    if let Some(s) = sigma {
        let r = verify_braiding(b, &s);
        lines.extend(r.lines());
        lines.push(format!("INFO involutive={}", r.is_involutive()));
    } else {
        lines.push("SKIP braiding (bracoid checks failed)".to_string());
    }
    let mut out = lines.join("\n");
    out.push('\n');
    print!("{out}");
    let failures: Vec<&String> = lines.iter().filter(|l| l.starts_with("FAIL")).collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failures.iter().map(|s| s.as_str()).collect::<Vec<_>>().join("\n")))
    }
}

fn vertex(b: &SkewBracoid, name: &str) -> Result<usize> {
    b.vertex_index(name)
        .ok_or_else(|| CliError::Input(format!("no vertex named {name}")))
}

pub fn parallelise(input: &Path, base: Option<&str>, out: Option<&Path>, per_component: bool) -> Result<()> {
    let b = load(input)?.bracoid;
    let text = if per_component {
        let parts = ms_labelling_per_component(&b)?;
        let dsbs: Vec<DsbJson> = parts.iter().map(|(_, _, d)| d.to_json()).collect();
        to_json(&dsbs)?
    } else {
        let zeta = match base {
            Some(name) => vertex(&b, name)?,
            None => 0,
        };
        let (_, d) = ms_labelling(&b, zeta, None)?;
        to_json(&d.to_json())?
    };
    emit(out, &text)
}

pub fn heap(input: &Path, point: Option<&str>, out: Option<&Path>) -> Result<()> {
    let b = load(input)?.bracoid;
    let sigma = braiding_of_qtsb(&b)?;
    let t = ternary_of_braiding(&b, &sigma)?;
    let name = |x: usize| t.names()[x].as_str();
    let mut s = String::new();
    for (a, bb, c, x) in t.rows() {
        let _ = writeln!(s, "<{},{},{}> = {}", name(a), name(bb), name(c), name(x));
    }
    let report = verify_heap(&t);
    for l in report.lines() {
        let _ = writeln!(s, "{l}");
    }
    let _ = writeln!(s, "INFO abelian={}", report.abelian);
    let mut failure = report.failures().first().map(|(n, w)| format!("{n}: {w}"));
    if let Some(p) = point {
        let zeta = vertex(&b, p)?;
        let (g, relabel) = group_from_pointed_heap(&t, zeta)?;
        let _ = writeln!(s, "group with unit {p}:");
        let by_element: BTreeMap<usize, usize> = relabel.iter().enumerate().map(|(v, &e)| (e, v)).collect();
        let header: Vec<&str> = (0..g.order()).map(|y| name(by_element[&y])).collect();
        let _ = writeln!(s, "  {} | {}", " ".repeat(name(by_element[&0]).len()), header.join(" "));
        for x in 0..g.order() {
            let row: Vec<&str> = (0..g.order()).map(|y| name(by_element[&g.mul(x, y)])).collect();
            let _ = writeln!(s, "  {} | {}", name(by_element[&x]), row.join(" "));
        }
        let preset = presets_up_to(g.order())
            .into_iter()
            .filter(|p| p.order() == g.order())
            .find_map(|p| {
                let h = p.build().ok()?;
                g.find_isomorphism(&h).map(|iso| (p, h, iso))
            });
        match preset {
            Some((p, h, iso)) => {
                let pairs: Vec<String> = (0..g.order())
                    .map(|x| format!("{}->{}", name(by_element[&x]), h.element_name(iso[x])))
                    .collect();
                let _ = writeln!(s, "isomorphic to {p} via {}", pairs.join(", "));
            }
            None => {
                let _ = writeln!(s, "no preset of order {} is isomorphic", g.order());
            }
        }
        match pointed_heap_matches_labelling(&b, &t, zeta)? {
            Ok(()) => {
                let _ = writeln!(s, "PASS pointedHeapGroup");
            }
            Err(w) => {
                let _ = writeln!(s, "FAIL pointedHeapGroup {w}");
                failure.get_or_insert(w.to_string());
            }
        }
    }
    emit(out, &s)?;
    match failure {
        Some(f) => Err(CliError::Verification(f)),
        None => Ok(()),
    }
}

pub fn export_dot(
    spec: Option<&str>,
    input: Option<&Path>,
    common: &Common,
    full: bool,
    collapse_labels: bool,
    component: Option<usize>,
    seed: bool,
) -> Result<()> {
    let quiver = match input {
        Some(p) => {
            let text = read(p)?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
            if value.get("labels").is_some() && value.get("ops").is_none() {
                let j: QuiverJson =
                    serde_json::from_value(value).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
                LabelledQuiver::from_json(&j)?
            } else {
                load(p)?.bracoid.quiver()
            }
        }
        None => {
            let hol = holomorph(spec)?;
            let res = run_enumeration(&hol, common, full, seed)?;
            match component {
                Some(c) => {
                    members(&res, Some(c))?;
                    let d = res.component_dsb(c)?;
                    d.quiver()
                }
                None => res.quiver.clone(),
            }
        }
    };
    let dot = quiver.export_dot(&DotOptions { collapse_labels });
    emit(common.out.as_deref(), &dot)
}
