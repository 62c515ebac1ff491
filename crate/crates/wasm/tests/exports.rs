use mfx_wasm::{catalog_mfx, catalog_names, m_invariant, transform, verify};

#[test]
fn every_catalog_entry_loads_and_verifies() {
    for name in catalog_names().lines() {
        let text = catalog_mfx(name, 2);
        let report = verify(&text, 2, 6);
        assert!(report.lines().all(|l| l.starts_with("PASS")), "{name}: {report}");
    }
}

#[test]
fn knoerrer_of_bgs_iii_verifies() {
    let out = transform(&catalog_mfx("bgs-iii", 1), "knoerrer");
    assert!(out.starts_with("mf\n"), "{out}");
    assert!(verify(&out, 2, 6).starts_with("PASS"));
}

#[test]
fn split_of_a_double_cover() {
    let cover = transform(&catalog_mfx("bgs-ii", 1), "double-cover");
    let out = transform(&cover, "split");
    assert_eq!(out.matches("# block").count(), 2, "{out}");
}

#[test]
fn errors_are_text() {
    assert!(verify("garbage", 2, 4).starts_with("error:"));
    assert!(transform(&catalog_mfx("bgs-i", 1), "rotate").starts_with("error:"));
    assert_eq!(m_invariant("O(-1)", "2*I_C"), "m = 2");
    assert!(m_invariant("O(-1)", "I_C").starts_with("error:"));
}
