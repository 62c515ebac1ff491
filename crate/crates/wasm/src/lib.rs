//! Bindings for `www/index.html`: verify a factorization, apply a
//! construction to it, and compute the Veronese invariant `m(Z)`.
//!
//! Every export takes and returns plain strings so the page needs no glue
//! beyond the generated module.

use wasm_bindgen::prelude::*;

use mfx_core::catalog::{gaussian_substitution, get_classes, get_mf, takes_level, MF_NAMES};
use mfx_core::field::Gaussian;
use mfx_core::kgroup::{veronese_m_invariant, SheafClassVector};
use mfx_core::matfac::{
    change_of_variables, double_branched_cover, dual_mf, knoerrer_periodicity, periodic_resolution_check, try_split,
    verify_mf, MatrixFactorization, SplitOutcome,
};
use mfx_core::selftest::fresh_name;

type K = Gaussian;

fn parse(text: &str) -> Result<MatrixFactorization<K>, String> {
    MatrixFactorization::from_text(text).map_err(|e| format!("error: {e}"))
}

fn flatten(r: Result<String, String>) -> String {
    r.unwrap_or_else(|e| e)
}

/// Names of the catalog factorizations, one per line.
#[wasm_bindgen]
pub fn catalog_names() -> String {
    MF_NAMES.join("\n")
}

/// The catalog factorization `name` at level `level` in MFX text.
#[wasm_bindgen]
pub fn catalog_mfx(name: &str, level: u32) -> String {
    let l = if takes_level(name) { level } else { 1 };
    flatten(get_mf::<K>(name, l).map(|m| m.to_text()).map_err(|e| format!("error: {e}")))
}

/// Verification report: the defining identities, entry degrees and the
/// periodic resolution through `cutoff`.
#[wasm_bindgen]
pub fn verify(text: &str, steps: u32, cutoff: i32) -> String {
    flatten(parse(text).map(|m| {
        let v = verify_mf(&m);
        let mut out = match v.failure {
            None => format!("PASS  phi*psi = psi*phi = f*I ({0}x{0})\n", m.size()),
            Some(f) => format!("FAIL  {f}\n"),
        };
        let p = periodic_resolution_check(&m, steps as usize, cutoff as i64);
        match p.first_failure() {
            None => out.push_str(&format!("PASS  periodic resolution, {steps} steps through degree {cutoff}\n")),
            Some(c) => out.push_str(&format!("FAIL  periodic resolution: {c}\n")),
        }
        out
    }))
}

/// Applies `op` (`dual`, `knoerrer`, `double-cover`, `gaussian` or
/// `split`) and returns the result as MFX text.
#[wasm_bindgen]
pub fn transform(text: &str, op: &str) -> String {
    flatten(transform_inner(text, op))
}

fn transform_inner(text: &str, op: &str) -> Result<String, String> {
    let m = parse(text)?;
    if let Some(f) = verify_mf(&m).failure {
        return Err(format!("error: input does not verify: {f}"));
    }
    let e = |x: &dyn std::fmt::Display| format!("error: {x}");
    let out = match op {
        "dual" => dual_mf(&m),
        "knoerrer" => {
            let (u, v) = (fresh_name(m.ring(), "u"), fresh_name(m.ring(), "v"));
            knoerrer_periodicity(&m, &u, &v).map_err(|x| e(&x))?
        }
        "double-cover" => double_branched_cover(&m, &fresh_name(m.ring(), "y")).map_err(|x| e(&x))?,
        "gaussian" => {
            let s = gaussian_substitution(m.ring()).map_err(|x| e(&x))?;
            change_of_variables(&m, s.target, &s.images).map_err(|x| e(&x))?
        }
        "split" => {
            let s = gaussian_substitution(m.ring()).ok();
            return match try_split(&m, s.as_ref(), 0).map_err(|x| e(&x))? {
                SplitOutcome::NoSplit => Ok("no split found\n".into()),
                SplitOutcome::Blocks(b) => Ok(b
                    .iter()
                    .enumerate()
                    .map(|(k, m)| format!("# block {}\n{}", k + 1, m.to_text()))
                    .collect::<Vec<_>>()
                    .join("\n")),
            };
        }
        _ => return Err(format!("error: unknown operation `{op}`")),
    };
    Ok(out.to_text())
}

/// `m(Z)` for `0 -> E -> N -> I_Z(a) -> 0` on the Veronese surface.
#[wasm_bindgen]
pub fn m_invariant(kernel: &str, middle: &str) -> String {
    let run = || -> Result<i64, String> {
        let classes = get_classes("veronese").map_err(|e| e.to_string())?;
        let e = SheafClassVector::parse(kernel).map_err(|e| e.to_string())?;
        let n = SheafClassVector::parse(middle).map_err(|e| e.to_string())?;
        veronese_m_invariant(&classes, &e, &n).map_err(|e| e.to_string())
    };
    match run() {
        Ok(m) => format!("m = {m}"),
        Err(e) => format!("error: {e}"),
    }
}
