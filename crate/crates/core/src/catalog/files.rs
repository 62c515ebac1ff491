//! Text serialization of the catalog and tamper checks on a data directory.

use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{get_mf, get_model, rao_module, takes_level, MF_NAMES, MODEL_NAMES};
use crate::field::Gaussian;
use crate::matfac::MatrixFactorization;
use crate::modres::GradedModule;
use crate::ring::GradedRing;

pub const MANIFEST_NAME: &str = "MANIFEST";
const VERSION_LINE: &str = "# mfx catalog data, format version 1";
const LEVELS: std::ops::RangeInclusive<u32> = 1..=4;
const RAO_DEGREES: std::ops::RangeInclusive<u32> = 1..=5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{file}: {reason}")]
pub struct DataError {
    pub file: String,
    pub reason: String,
}

/// Every catalog file as `(file name, contents)`, sorted by name, over ℚ(i).
pub fn catalog_files() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for name in MF_NAMES {
        let levels: Vec<u32> = if takes_level(name) { LEVELS.collect() } else { vec![1] };
        for l in levels {
            let m = get_mf::<Gaussian>(name, l).expect("catalog template");
            let file = if takes_level(name) { format!("{name}-l{l}.mfx") } else { format!("{name}.mfx") };
            out.push((file, m.to_text()));
        }
    }
    for name in MODEL_NAMES {
        let model = get_model::<Gaussian>(name).expect("catalog model");
        out.push((format!("{name}.ring"), model.ring.to_block()));
        for (label, m) in &model.modules {
            out.push((format!("{name}.{label}.mod"), m.to_text()));
        }
    }
    for d in RAO_DEGREES {
        out.push((format!("rao-d{d}.mod"), rao_module::<Gaussian>(d).expect("rao module").to_text()));
    }
    out.sort();
    out
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// `MANIFEST` contents for the given files.
pub fn manifest(files: &[(String, String)]) -> String {
    let mut s = format!("{VERSION_LINE}\n");
    for (name, text) in files {
        s.push_str(&format!("{}  {}\n", sha256_hex(text.as_bytes()), name));
    }
    s
}

/// Parses `text` according to the file extension and formats it back.
pub fn reformat(file: &str, text: &str) -> Result<String, String> {
    if file.ends_with(".mfx") {
        MatrixFactorization::<Gaussian>::from_text(text).map(|m| m.to_text()).map_err(|e| e.to_string())
    } else if file.ends_with(".mod") {
        GradedModule::<Gaussian>::from_text(text).map(|m| m.to_text()).map_err(|e| e.to_string())
    } else if file.ends_with(".ring") {
        GradedRing::<Gaussian>::from_block(text).map(|r| r.to_block()).map_err(|e| e.to_string())
    } else {
        Err("unknown file type".into())
    }
}

/// Checks the manifest digests, that every listed file parses and formats
/// back byte for byte, and that it matches the built-in construction.
/// Returns the checked file names.
pub fn verify_data_dir(dir: &Path) -> Result<Vec<String>, DataError> {
    let read = |name: &str| {
        fs::read_to_string(dir.join(name)).map_err(|e| DataError { file: name.to_string(), reason: e.to_string() })
    };
    let manifest_text = read(MANIFEST_NAME)?;
    let mut lines = manifest_text.lines();
    if lines.next() != Some(VERSION_LINE) {
        return Err(DataError { file: MANIFEST_NAME.into(), reason: "missing or unsupported version line".into() });
    }
    let builtin = catalog_files();
    let mut checked = Vec::new();
    for line in lines {
        let Some((digest, file)) = line.split_once("  ") else {
            return Err(DataError { file: MANIFEST_NAME.into(), reason: format!("malformed line `{line}`") });
        };
        let text = read(file)?;
        let fail = |reason: String| DataError { file: file.to_string(), reason };
        if sha256_hex(text.as_bytes()) != digest {
            return Err(fail("digest mismatch".into()));
        }
        match reformat(file, &text) {
            Ok(back) if back == text => {}
            Ok(_) => return Err(fail("does not round-trip byte for byte".into())),
            Err(e) => return Err(fail(e)),
        }
        match builtin.iter().find(|(n, _)| n == file) {
            Some((_, t)) if *t == text => {}
            Some(_) => return Err(fail("differs from the built-in construction".into())),
            None => return Err(fail("not a catalog file".into())),
        }
        checked.push(file.to_string());
    }
    if checked.len() != builtin.len() {
        return Err(DataError {
            file: MANIFEST_NAME.into(),
            reason: format!("lists {} files, catalog has {}", checked.len(), builtin.len()),
        });
    }
    Ok(checked)
}

/// Writes all catalog files and the manifest into `dir`.
pub fn write_data_dir(dir: &Path) -> std::io::Result<usize> {
    fs::create_dir_all(dir)?;
    let files = catalog_files();
    for (name, text) in &files {
        fs::write(dir.join(name), text)?;
    }
    fs::write(dir.join(MANIFEST_NAME), manifest(&files))?;
    Ok(files.len())
}
