//! The checked-in header declares every exported function.

use std::fs;
use std::path::Path;

#[test]
fn header_lists_every_export() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let src = fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let header = fs::read_to_string(dir.join("include/domkit.h")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() > 20);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "`{name}` missing from domkit.h");
    }
    for ty in ["DkBasis", "DkTrace", "DK_STATUS_CAP_EXCEEDED", "DK_STOP_REASON_CONVERGED"] {
        assert!(header.contains(ty), "{ty}");
    }
}
