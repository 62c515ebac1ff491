use std::fs;
use std::path::PathBuf;

use mfx_core::catalog::{catalog_files, verify_data_dir, write_data_dir, MANIFEST_NAME};

fn repo_data() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
fn shipped_data_matches_the_catalog() {
    let files = verify_data_dir(&repo_data()).expect("data directory is current");
    assert_eq!(files.len(), catalog_files().len());
}

#[test]
fn export_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let n = write_data_dir(dir.path()).unwrap();
    assert_eq!(verify_data_dir(dir.path()).unwrap().len(), n);
}

#[test]
fn tampering_is_reported_with_the_file_name() {
    let dir = tempfile::tempdir().unwrap();
    write_data_dir(dir.path()).unwrap();

    // an edited file no longer matches its digest
    let f = dir.path().join("cone-4x4-l2.mfx");
    let text = fs::read_to_string(&f).unwrap();
    fs::write(&f, text.replacen("-x", "x", 1)).unwrap();
    let e = verify_data_dir(dir.path()).unwrap_err();
    assert_eq!(e.file, "cone-4x4-l2.mfx");
    assert!(e.reason.contains("digest"));

    // a consistent manifest does not hide a change to the mathematics
    let manifest = fs::read_to_string(dir.path().join(MANIFEST_NAME)).unwrap();
    let new_digest = mfx_core::catalog::sha256_hex(fs::read(&f).unwrap().as_slice());
    let fixed: String = manifest
        .lines()
        .map(
            |l| if l.ends_with("  cone-4x4-l2.mfx") { format!("{new_digest}  cone-4x4-l2.mfx") } else { l.to_string() },
        )
        .map(|l| l + "\n")
        .collect();
    fs::write(dir.path().join(MANIFEST_NAME), fixed).unwrap();
    let e = verify_data_dir(dir.path()).unwrap_err();
    assert_eq!(e.file, "cone-4x4-l2.mfx");
    assert!(e.reason.contains("built-in"), "{}", e.reason);
}

#[test]
fn missing_file_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    write_data_dir(dir.path()).unwrap();
    fs::remove_file(dir.path().join("rao-d3.mod")).unwrap();
    assert_eq!(verify_data_dir(dir.path()).unwrap_err().file, "rao-d3.mod");
}

#[test]
fn every_file_round_trips_byte_for_byte() {
    for (name, text) in catalog_files() {
        assert_eq!(mfx_core::catalog::reformat(&name, &text).unwrap(), text, "{name}");
    }
}
