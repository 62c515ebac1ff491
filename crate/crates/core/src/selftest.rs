//! The acceptance suite and catalog self-checks as named pass/fail records.

use std::fmt;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{
    catalog_files, gaussian_substitution, get_classes, get_extension, get_mf, get_model, get_resolution_pattern,
    get_sequence, r1_in_ab, rao_module, reformat, takes_level, verify_data_dir, EXTENSION_NAMES, MF_NAMES, MODEL_NAMES,
    PATTERN_NAMES, SEQUENCE_NAMES,
};
use crate::field::{Field, Gaussian};
use crate::kgroup::{
    build_gprime, c1_of_vector, check_condition_c, is_multiple_of_hyperplane, is_orientable, veronese_m_invariant,
    ClassModel, SheafClassVector,
};
use crate::matfac::{
    double_branched_cover, equivalent_up_to_twist, knoerrer_periodicity, periodic_resolution_check,
    random_factorization, try_split, verify_mf, MatrixFactorization, SplitOutcome,
};
use crate::modres::{check_extension, is_sequence_exact};
use crate::ring::GradedRing;

type K = Gaussian;

/// One named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "CHECK {} {}", self.name, status)
        } else {
            write!(f, "CHECK {} {} {}", self.name, status, self.detail)
        }
    }
}

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    pub seed: u64,
    /// Data directory to verify against the built-in catalog, if any.
    pub data_dir: Option<PathBuf>,
    /// Random factorizations for the transform soundness criterion.
    pub random_cases: usize,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { seed: 0, data_dir: None, random_cases: 100 }
    }
}

/// Criterion numbers with a short title.
pub const CRITERIA: [(u8, &str); 10] = [
    (1, "factorization verification"),
    (2, "Knörrer soundness"),
    (3, "split reconstruction"),
    (4, "extensions"),
    (5, "exact sequences"),
    (6, "Hilbert numerics"),
    (7, "condition (C)"),
    (8, "m-invariant"),
    (9, "periodic resolutions and Rao modules"),
    (10, "round trip"),
];

/// Prefix of every check name belonging to criterion `k`.
pub fn criterion_prefix(k: u8) -> String {
    format!("c{k:02}.")
}

/// Catalog levels exercised by the suite.
pub const LEVELS: std::ops::RangeInclusive<u32> = 1..=4;

fn levels(name: &str) -> Vec<u32> {
    if takes_level(name) {
        LEVELS.collect()
    } else {
        vec![1]
    }
}

fn tag(name: &str, l: u32) -> String {
    if takes_level(name) {
        format!("{name}.l{l}")
    } else {
        name.to_string()
    }
}

fn err(name: String, e: impl fmt::Display) -> Check {
    Check::new(name, false, format!("error: {e}"))
}

/// A variable name based on `base` not used by `ring`.
pub fn fresh_name<F: Field>(ring: &GradedRing<F>, base: &str) -> String {
    if ring.var_index(base).is_none() {
        return base.to_string();
    }
    (1..).map(|k| format!("{base}{k}")).find(|n| ring.var_index(n).is_none()).unwrap()
}

/// Catalog factorizations at every level, in catalog order.
pub fn catalog_mfs() -> Vec<(String, MatrixFactorization<K>)> {
    let mut out = Vec::new();
    for name in MF_NAMES {
        for l in levels(name) {
            out.push((tag(name, l), get_mf::<K>(name, l).expect("catalog template")));
        }
    }
    out
}

/// A single-entry perturbation must break verification. Zero entries get
/// a one, nonzero entries are doubled.
fn perturbations_detected(m: &MatrixFactorization<K>) -> Result<usize, String> {
    let n = m.size();
    let mut count = 0;
    for in_phi in [true, false] {
        for i in 0..n {
            for j in 0..n {
                let mat = if in_phi { m.phi() } else { m.psi() };
                let p = mat.get(i, j);
                let q = if p.is_zero() { m.ring().one() } else { p.scale(&K::from_i64(2)) };
                let bad = if in_phi { m.with_phi_entry(i, j, q) } else { m.with_psi_entry(i, j, q) };
                if verify_mf(&bad).pass() {
                    let which = if in_phi { "phi" } else { "psi" };
                    return Err(format!("perturbing {which} ({},{}) went undetected", i + 1, j + 1));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

fn c1_mf_verification() -> Vec<Check> {
    let mut out = Vec::new();
    for (tag, m) in catalog_mfs() {
        let r = verify_mf(&m);
        let detail = r.failure.as_ref().map(|f| f.to_string()).unwrap_or_else(|| format!("{}x{}", m.size(), m.size()));
        out.push(Check::new(format!("c01.verify.{tag}"), r.pass(), detail));
        out.push(match perturbations_detected(&m) {
            Ok(k) => Check::new(format!("c01.perturb.{tag}"), true, format!("{k} perturbations detected")),
            Err(e) => Check::new(format!("c01.perturb.{tag}"), false, e),
        });
    }
    out
}

fn transforms_verify(m: &MatrixFactorization<K>) -> Result<(), String> {
    let (u, v) = (fresh_name(m.ring(), "u"), fresh_name(m.ring(), "v"));
    let v = if v == u { fresh_name(m.ring(), "w") } else { v };
    let k = knoerrer_periodicity(m, &u, &v).map_err(|e| format!("knoerrer: {e}"))?;
    if let Some(f) = verify_mf(&k).failure {
        return Err(format!("knoerrer output: {f}"));
    }
    let y = fresh_name(m.ring(), "y");
    let d = double_branched_cover(m, &y).map_err(|e| format!("double cover: {e}"))?;
    if let Some(f) = verify_mf(&d).failure {
        return Err(format!("double cover output: {f}"));
    }
    Ok(())
}

/// Verified blocks the random generator draws from: the `S = k[x,t]`
/// family and the `x² + y²` family.
pub fn random_block_families() -> Vec<Vec<MatrixFactorization<K>>> {
    let bgs = ["bgs-i", "bgs-ii", "bgs-iii"];
    let r1 = ["r1-a", "r1-b", "r1-c", "r1-d", "r1-e"];
    [&bgs[..], &r1[..]]
        .iter()
        .map(|names| {
            names
                .iter()
                .flat_map(|n| {
                    let ls: Vec<u32> = if takes_level(n) { vec![1, 2] } else { vec![1] };
                    ls.into_iter().map(move |l| get_mf::<K>(n, l).expect("catalog template"))
                })
                .collect()
        })
        .collect()
}

fn c2_knoerrer_soundness(opts: &SelftestOptions) -> Vec<Check> {
    let mut out = Vec::new();
    for (tag, m) in catalog_mfs() {
        let r = transforms_verify(&m);
        out.push(Check::new(format!("c02.catalog.{tag}"), r.is_ok(), r.err().unwrap_or_default()));
    }
    let families = random_block_families();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut failures = Vec::new();
    let mut sizes = 0;
    for case in 0..opts.random_cases {
        let fam = &families[case % families.len()];
        let m = match random_factorization(fam, 3, &mut rng) {
            Ok(m) => m,
            Err(e) => {
                failures.push(format!("case {case}: {e}"));
                continue;
            }
        };
        sizes += m.size();
        if !verify_mf(&m).pass() {
            failures.push(format!("case {case}: generated factorization does not verify"));
        } else if let Err(e) = transforms_verify(&m) {
            failures.push(format!("case {case}: {e}"));
        }
    }
    let detail = match failures.first() {
        None => format!("{} cases, total size {sizes}, 0 failures", opts.random_cases),
        Some(f) => format!("{} failures, first: {f}", failures.len()),
    };
    out.push(Check::new("c02.random", failures.is_empty(), detail));
    out
}

/// Splits the double cover of `source` after `a = x + iy` and matches the
/// blocks with `expected` up to order and twist.
pub fn split_double_cover(
    source: &MatrixFactorization<K>,
    expected: &[MatrixFactorization<K>],
    seed: u64,
) -> Result<String, String> {
    let y = fresh_name(source.ring(), "y");
    let m = double_branched_cover(source, &y).map_err(|e| e.to_string())?;
    let sub = gaussian_substitution::<K>(m.ring()).map_err(|e| e.to_string())?;
    let blocks = match try_split(&m, Some(&sub), seed).map_err(|e| e.to_string())? {
        SplitOutcome::Blocks(b) => b,
        SplitOutcome::NoSplit => return Err("no split found".into()),
    };
    if blocks.len() != expected.len() {
        return Err(format!("{} blocks, expected {}", blocks.len(), expected.len()));
    }
    let mut used = vec![false; expected.len()];
    let mut shifts = Vec::new();
    for (bi, b) in blocks.iter().enumerate() {
        let hit = expected
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .find_map(|(k, e)| equivalent_up_to_twist(b, e, seed).map(|(s, _)| (k, s)));
        match hit {
            Some((k, s)) => {
                used[k] = true;
                shifts.push(format!("block {} ~ expected {} twisted by {s}", bi + 1, k + 1));
            }
            None => return Err(format!("block {} ({}x{}) matches no expected summand", bi + 1, b.size(), b.size())),
        }
    }
    Ok(shifts.join("; "))
}

fn c3_split_reconstruction(opts: &SelftestOptions) -> Vec<Check> {
    let mut cases: Vec<(String, &str, u32, [&str; 2])> = vec![("c03.bgs-ii".into(), "bgs-ii", 1, ["r1-b", "r1-c"])];
    for l in LEVELS {
        cases.push((format!("c03.bgs-iii.l{l}"), "bgs-iii", l, ["r1-d", "r1-e"]));
    }
    cases
        .into_iter()
        .map(|(name, src, l, exp)| {
            let run = || -> Result<String, String> {
                let source = get_mf::<K>(src, l).map_err(|e| e.to_string())?;
                let expected: Vec<_> =
                    exp.iter().map(|n| r1_in_ab::<K>(n, l)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
                split_double_cover(&source, &expected, opts.seed)
            };
            match run() {
                Ok(d) => Check::new(name, true, d),
                Err(e) => Check::new(name, false, e),
            }
        })
        .collect()
}

pub const EXTENSION_CUTOFF: i64 = 12;
pub const SEQUENCE_CUTOFF: i64 = 12;

fn c4_extensions(opts: &SelftestOptions) -> Vec<Check> {
    let mut out = Vec::new();
    for name in EXTENSION_NAMES {
        for l in LEVELS {
            let check = format!("c04.{name}.l{l}");
            let t = match get_extension::<K>(name, l) {
                Ok(t) => t,
                Err(e) => {
                    out.push(err(check, e));
                    continue;
                }
            };
            out.push(match check_extension(&t.e, &t.sub, &t.quot, None, EXTENSION_CUTOFF, opts.seed) {
                Ok(r) if r.pass() => Check::new(check, true, format!("degrees through {EXTENSION_CUTOFF}")),
                Ok(r) => {
                    let why = match r.checks.iter().find(|c| !c.pass) {
                        Some(c) => format!("{} fails in degree {}: {}", c.condition, c.degree, c.detail),
                        None => "no surjection from the quotient found".into(),
                    };
                    Check::new(check, false, why)
                }
                Err(e) => err(check, e),
            });
        }
    }
    out
}

fn c5_sequences() -> Vec<Check> {
    SEQUENCE_NAMES
        .iter()
        .map(|name| {
            let check = format!("c05.{name}");
            match get_sequence::<K>(name, 1) {
                Ok(s) => {
                    let r = is_sequence_exact(&s.first, &s.second, SEQUENCE_CUTOFF);
                    match r.first_failure() {
                        None => Check::new(check, true, format!("degrees through {SEQUENCE_CUTOFF}")),
                        Some(c) => Check::new(
                            check,
                            false,
                            format!("{} fails in degree {}: {}", c.condition, c.degree, c.detail),
                        ),
                    }
                }
                Err(e) => err(check, e),
            }
        })
        .collect()
}

fn c6_hilbert() -> Vec<Check> {
    let model = match get_model::<K>("cubic-scroll") {
        Ok(m) => m,
        Err(e) => return vec![err("c06.scroll".into(), e)],
    };
    let mut out = Vec::new();
    let e0 = model.module("E0").expect("scroll E0");
    let got = (e0.hilbert(1), e0.hilbert(2));
    out.push(Check::new("c06.extension-sheaf", got == (0, 6), format!("h0(F(1)) = {}, h0(F(2)) = {}", got.0, got.1)));
    let want = [("O", -2, 1), ("I_F", -1, 3), ("I_H-F", -1, 2), ("I_H-2F", -1, 3)];
    for (label, a, w) in want {
        let l = model.twisted(label, a).expect("scroll rank one module");
        let (h1, h2) = (l.hilbert(1), l.hilbert(2));
        out.push(Check::new(
            format!("c06.rank-one.{label}({a})"),
            h1 == 0 && h2 == w,
            format!("h0(L(1)) = {h1}, h0(L(2)) = {h2}, expected 0 and {w}"),
        ));
    }
    out
}

/// Condition (C) for `v`, with a readable witness.
fn condition_c_check(name: String, model: &str, v: &SheafClassVector, want: bool) -> Check {
    let run = || -> Result<(bool, String), String> {
        let m = get_model::<K>(model).map_err(|e| e.to_string())?;
        let g = build_gprime(&m, SEQUENCE_CUTOFF);
        let c = check_condition_c(&m.classes, &g.group, v).map_err(|e| e.to_string())?;
        let w = match &c.witness {
            Some(w) if w.is_empty() => "witness: trivial".to_string(),
            Some(w) => {
                format!("witness: {}", w.iter().map(|(k, m)| format!("{m}*{k}")).collect::<Vec<_>>().join(" + "))
            }
            None => "no witness".to_string(),
        };
        Ok((c.holds, w))
    };
    match run() {
        Ok((holds, w)) => Check::new(name, holds == want, format!("{v}: holds = {holds}, expected {want}; {w}")),
        Err(e) => Check::new(name, false, e),
    }
}

/// A random vector over the generators of `classes` that is orientable.
pub fn random_orientable(classes: &ClassModel, rng: &mut ChaCha8Rng) -> SheafClassVector {
    loop {
        let mut v = SheafClassVector::new();
        for (label, _) in &classes.generators {
            let copies = rng.gen_range(0..=3);
            for _ in 0..copies {
                v = v.with(label, rng.gen_range(-2..=2), 1);
            }
        }
        if v.entries.is_empty() {
            continue;
        }
        if is_orientable(classes, &v).unwrap_or(false) {
            return v;
        }
    }
}

fn c7_condition_c(opts: &SelftestOptions) -> Vec<Check> {
    let p = |s: &str| SheafClassVector::parse(s).expect("vector");
    let mut out = vec![condition_c_check("c07.quadric-surface".into(), "quadric-surface", &p("I_L + I_M"), true)];
    for n in -2..=3 {
        let v = SheafClassVector::new().with("I_L", 0, 1).with("I_L", n, 1);
        out.push(condition_c_check(format!("c07.cone.n{n:+}"), "quadric-cone-p3", &v, true));
    }
    let scroll = get_classes("cubic-scroll").expect("scroll classes");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(7));
    let mut failures = Vec::new();
    for k in 0..50 {
        let v = random_orientable(&scroll, &mut rng);
        let c = condition_c_check(format!("c07.scroll.{k}"), "cubic-scroll", &v, true);
        if !c.pass || !c.detail.contains("witness:") {
            failures.push(c.detail);
        }
    }
    out.push(Check::new(
        "c07.scroll-random",
        failures.is_empty(),
        match failures.first() {
            None => "50 orientable vectors reduce to r*O with witnesses".into(),
            Some(f) => format!("{} failures, first: {f}", failures.len()),
        },
    ));
    out.push(condition_c_check("c07.veronese".into(), "veronese", &p("2*I_C"), false));
    out
}

fn c8_m_invariant(opts: &SelftestOptions) -> Vec<Check> {
    let classes = get_classes("veronese").expect("veronese classes");
    let mut cases: Vec<(String, &str, Option<i64>, i64)> = vec![
        ("point".into(), "point", None, 2),
        ("two-points".into(), "two-points", None, 0),
        ("three-general".into(), "three-general", None, -2),
        ("three-collinear".into(), "three-collinear", None, 2),
        ("six-points".into(), "six-points", None, 4),
    ];
    for n in [2, 4] {
        cases.push((format!("determinantal.n{n}"), "determinantal", Some(n), -n));
    }
    let mut out = Vec::new();
    for (tag, pattern, n, want) in cases {
        let name = format!("c08.{tag}");
        out.push(match get_resolution_pattern(pattern, n) {
            Ok((e, nn)) => match veronese_m_invariant(&classes, &e, &nn) {
                Ok(m) => Check::new(name, m == want && m % 2 == 0, format!("m = {m}, expected {want}")),
                Err(x) => err(name, x),
            },
            Err(x) => err(name, x),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(8));
    let mut failures = Vec::new();
    for k in 0..50 {
        let pattern = PATTERN_NAMES[rng.gen_range(0..PATTERN_NAMES.len())];
        let n = (pattern == "determinantal").then(|| 2 * rng.gen_range(1..=3));
        let (e, nn) = get_resolution_pattern(pattern, n).expect("pattern");
        let mut d = SheafClassVector::new();
        for _ in 0..rng.gen_range(1..=3) {
            d = d.with("O", rng.gen_range(-3..=3), 1);
        }
        let before = veronese_m_invariant(&classes, &e, &nn);
        let after = veronese_m_invariant(&classes, &e.concat(&d), &nn.concat(&d));
        match (before, after) {
            (Ok(a), Ok(b)) if a == b && a % 2 == 0 => {}
            (a, b) => failures.push(format!("case {k} ({pattern} + {d}): {a:?} vs {b:?}")),
        }
    }
    out.push(Check::new(
        "c08.dissocie-invariance",
        failures.is_empty(),
        match failures.first() {
            None => "50 perturbations leave m unchanged".into(),
            Some(f) => format!("{} failures, first: {f}", failures.len()),
        },
    ));
    out
}

pub const PERIODIC_STEPS: usize = 4;
pub const PERIODIC_CUTOFF: i64 = 10;
pub const RAO_DEGREES: std::ops::RangeInclusive<u32> = 1..=5;

fn c9_periodic() -> Vec<Check> {
    let mut out = Vec::new();
    for (tag, m) in catalog_mfs() {
        let r = periodic_resolution_check(&m, PERIODIC_STEPS, PERIODIC_CUTOFF);
        let detail = match r.first_failure() {
            None => format!("{} checks", r.checks.len()),
            Some(c) => c.to_string(),
        };
        out.push(Check::new(format!("c09.periodic.{tag}"), r.pass(), detail));
    }
    for d in RAO_DEGREES {
        let name = format!("c09.rao.d{d}");
        out.push(match rao_module::<K>(d) {
            Ok(m) => {
                let hf: Vec<usize> = (0..=d as i64 + 2).map(|k| m.hilbert(k)).collect();
                let mut want = vec![1; d as usize];
                want.extend([0, 0, 0]);
                Check::new(name, hf == want, format!("HF = {hf:?}"))
            }
            Err(e) => err(name, e),
        });
    }
    out
}

fn c10_round_trip(opts: &SelftestOptions) -> Vec<Check> {
    let mut out: Vec<Check> = catalog_files()
        .into_iter()
        .map(|(file, text)| {
            let name = format!("c10.{file}");
            match reformat(&file, &text) {
                Ok(back) if back == text => Check::new(name, true, format!("{} bytes", text.len())),
                Ok(_) => Check::new(name, false, "format(parse(text)) differs from text"),
                Err(e) => err(name, e),
            }
        })
        .collect();
    if let Some(dir) = &opts.data_dir {
        out.push(match verify_data_dir(dir) {
            Ok(files) => Check::new("c10.data-dir", true, format!("{} files match {}", files.len(), dir.display())),
            Err(e) => Check::new("c10.data-dir", false, e.to_string()),
        });
    }
    out
}

/// Checks for criterion `k` (1 to 10).
pub fn run_criterion(k: u8, opts: &SelftestOptions) -> Vec<Check> {
    match k {
        1 => c1_mf_verification(),
        2 => c2_knoerrer_soundness(opts),
        3 => c3_split_reconstruction(opts),
        4 => c4_extensions(opts),
        5 => c5_sequences(),
        6 => c6_hilbert(),
        7 => c7_condition_c(opts),
        8 => c8_m_invariant(opts),
        9 => c9_periodic(),
        10 => c10_round_trip(opts),
        _ => vec![Check::new(format!("c{k:02}"), false, "no such criterion")],
    }
}

/// Self-checks of the catalog beyond the numbered criteria.
pub fn catalog_checks(_opts: &SelftestOptions) -> Vec<Check> {
    let mut out = Vec::new();
    for l in LEVELS {
        let name = format!("catalog.knoerrer-cone.l{l}");
        let run = || -> Result<String, String> {
            let cone = get_mf::<K>("cone-4x4", l).map_err(|e| e.to_string())?;
            let k = knoerrer_periodicity(&get_mf::<K>("bgs-iii", l).map_err(|e| e.to_string())?, "u", "v")
                .map_err(|e| e.to_string())?;
            let k = crate::matfac::rename_into(&k, cone.ring().clone()).map_err(|e| e.to_string())?;
            if k == cone {
                Ok("identical".into())
            } else if crate::matfac::equivalence(&k, &cone, 0).is_some() {
                Ok("equivalent".into())
            } else {
                Err("not equivalent".into())
            }
        };
        out.push(match run() {
            Ok(d) => Check::new(name, true, d),
            Err(e) => Check::new(name, false, e),
        });
    }
    let veronese = get_classes("veronese").expect("veronese classes");
    for pattern in PATTERN_NAMES {
        let n = (pattern == "determinantal").then_some(2);
        let name = format!("catalog.pattern-orientable.{pattern}");
        let (e, nn) = get_resolution_pattern(pattern, n).expect("pattern");
        let c = |v: &SheafClassVector| c1_of_vector(&veronese, v).expect("class");
        let mut diff = c(&nn);
        diff.add_scaled(&c(&e), -1);
        let ok = is_multiple_of_hyperplane(&veronese, &diff);
        let side = |v: &SheafClassVector| {
            if is_orientable(&veronese, v).unwrap_or(false) {
                "orientable"
            } else {
                "not orientable"
            }
        };
        let detail = format!("c1(N) - c1(E) = {}; E {}, N {}", diff.format(&veronese.basis), side(&e), side(&nn));
        out.push(Check::new(name, ok, detail));
    }
    for model in MODEL_NAMES {
        let name = format!("catalog.gprime.{model}");
        out.push(match get_model::<K>(model) {
            Ok(m) => {
                let g = build_gprime(&m, SEQUENCE_CUTOFF);
                let failed: Vec<&str> = g.sequences.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
                let mut detail = format!("{} relations", g.group.relations.len());
                if !failed.is_empty() {
                    detail.push_str(&format!("; uncertified: {}", failed.join(", ")));
                }
                for w in &g.warnings {
                    detail.push_str(&format!("; {w}"));
                }
                Check::new(name, failed.is_empty(), detail)
            }
            Err(e) => err(name, e),
        });
    }
    out
}

/// Every criterion and catalog self-check, sorted by check name.
pub fn selftest(opts: &SelftestOptions) -> Vec<Check> {
    let mut out = catalog_checks(opts);
    for (k, _) in CRITERIA {
        out.extend(run_criterion(k, opts));
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}
