//! Byte-exact regression reports. Regenerate with `UPDATE_GOLDEN=1`.

use std::path::PathBuf;

use green_etale_cli::config::{Format, RunConfig};
use green_etale_cli::pipeline::{run_box, run_pipeline};
use green_etale_cli::report::{box_text, emit_etale, etale_from_json};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn config(name: &str) -> RunConfig {
    RunConfig::load(&root().join("../../configs").join(format!("{name}.toml"))).unwrap()
}

fn check(file: &str, actual: &str) {
    let path = root().join("tests/golden").join(file);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(expected == actual, "{file} differs from the golden copy:\n{actual}");
}

#[test]
fn etale_reports_match_golden() {
    for name in ["artin_schreier_f2", "kummer_f5_n2", "kummer_f7_n3", "constant_f4_n4"] {
        let r = run_pipeline(&config(name)).unwrap();
        check(&format!("{name}.txt"), &emit_etale(&r, Format::Text));
        let json = emit_etale(&r, Format::Json);
        check(&format!("{name}.json"), &json);
        assert_eq!(etale_from_json(&json).unwrap(), r);
    }
}

#[test]
fn box_report_matches_golden() {
    check("kummer_f5_n2.box.txt", &box_text(&run_box(&config("kummer_f5_n2")).unwrap()));
}

#[test]
fn reports_are_deterministic() {
    let c = config("kummer_f5_n4");
    let a = emit_etale(&run_pipeline(&c).unwrap(), Format::Json);
    let b = emit_etale(&run_pipeline(&c).unwrap(), Format::Json);
    assert_eq!(a, b);
    assert!(a.contains("\"schema_version\": 1"));
}
