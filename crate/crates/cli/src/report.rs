//! Serializable reports and their text/JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaleReport {
    pub schema_version: u32,
    pub extension: String,
    pub base_field: String,
    pub n: usize,
    pub levels: Vec<LevelReport>,
    pub structure_maps: Vec<MapValue>,
    pub products: Vec<ProductValue>,
    pub norms: Vec<MapValue>,
    pub classical: ClassicalReport,
    pub constant_iso: Option<ViolationsReport>,
    pub certificate: Option<CertificateReport>,
    pub generator_checks: Option<ChecksReport>,
    pub decomposition: Option<DecompositionReport>,
    pub oracles: Vec<OracleReport>,
    pub notices: Vec<String>,
    pub verdict: VerdictReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub level: usize,
    pub ambient_dim: usize,
    pub relation_rank: usize,
    pub box_dim: usize,
    pub basis: Vec<String>,
    pub ideal_dim: usize,
    pub ideal_generators: Vec<String>,
    pub square_dim: usize,
    /// Basis of `I² ∩ I`, the witness for the `I = I²` verdict.
    pub square_basis: Vec<String>,
    pub ideal_eq_square: bool,
    pub kahler_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapValue {
    pub map: String,
    pub argument: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductValue {
    pub level: usize,
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalReport {
    pub degree: usize,
    pub tensor_dim: usize,
    pub ideal_dim: usize,
    pub square_dim: usize,
    pub separability_idempotent: Option<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationsReport {
    pub claim: String,
    pub violations: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub claim: String,
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    /// Matrix of the witness at each level, rows joined by `;`.
    pub components: Vec<String>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactReport {
    pub fact: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub kind: String,
    pub witnesses: Vec<WitnessReport>,
    pub facts: Vec<FactReport>,
    pub violations: Vec<String>,
    pub valid: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub level: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksReport {
    pub total: usize,
    pub passed: usize,
    pub checks: Vec<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub zeta: String,
    pub levels: Vec<usize>,
    /// `dims[i][j]`: dimension of piece `i` at `levels[j]`.
    pub dims: Vec<Vec<usize>>,
    pub violations: Vec<String>,
    pub reconstruction: bool,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub differences: Vec<String>,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub ideal_eq_square: bool,
    pub kahler_zero: bool,
    pub projective: Option<bool>,
    pub generator_checks: Option<bool>,
    pub oracles_agree: bool,
    pub green_etale: bool,
}

impl VerdictReport {
    pub fn all_positive(&self) -> bool {
        self.green_etale && self.oracles_agree && self.generator_checks.unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxReport {
    pub schema_version: u32,
    pub description: String,
    pub n: usize,
    pub levels: Vec<BoxLevel>,
    pub structure_maps: Vec<MapValue>,
    pub products: Vec<ProductValue>,
    pub axiom_violations: Vec<String>,
    pub green_violations: Vec<String>,
    pub symmetry_violations: Vec<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxLevel {
    pub level: usize,
    pub ambient_dim: usize,
    pub relation_rank: usize,
    pub dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub schema_version: u32,
    pub extension: String,
    pub dims: Vec<usize>,
    pub decomposition: Option<DecompositionReport>,
    pub certificate: CertificateReport,
    pub notices: Vec<String>,
    pub holds: bool,
}

/// JSON with struct field order, so equal reports give equal bytes.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn etale_from_json(text: &str) -> Result<EtaleReport, CliError> {
    let r: EtaleReport = serde_json::from_str(text).map_err(|e| CliError::Config(format!("report JSON: {e}")))?;
    if r.schema_version != SCHEMA_VERSION {
        return Err(CliError::Config(format!("unsupported schema version {}", r.schema_version)));
    }
    Ok(r)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "(none)".into()
    } else {
        items.join(", ")
    }
}

fn write_maps(out: &mut String, title: &str, maps: &[MapValue]) {
    if maps.is_empty() {
        return;
    }
    writeln!(out, "\n{title}:").unwrap();
    for m in maps {
        writeln!(out, "  {}({}) = {}", m.map, m.argument, m.value).unwrap();
    }
}

fn write_products(out: &mut String, products: &[ProductValue]) {
    if products.is_empty() {
        return;
    }
    writeln!(out, "\nproducts:").unwrap();
    for p in products {
        writeln!(out, "  level {}: ({})·({}) = {}", p.level, p.left, p.right, p.value).unwrap();
    }
}

fn write_certificate(out: &mut String, c: &CertificateReport) {
    writeln!(out, "\ncertificate: {} (valid: {})", c.kind, yes(c.valid)).unwrap();
    for w in &c.witnesses {
        writeln!(out, "  witness {}: dims {:?} → {:?}, isomorphism: {}", w.claim, w.source_dims, w.target_dims, yes(w.verified)).unwrap();
    }
    for f in &c.facts {
        writeln!(out, "  fact {}: {}", f.fact, yes(f.holds)).unwrap();
    }
    for v in &c.violations {
        writeln!(out, "  violation: {v}").unwrap();
    }
}

fn write_decomposition(out: &mut String, d: &DecompositionReport) {
    writeln!(out, "\neigen decomposition (ζ = {}):", d.zeta).unwrap();
    let header: Vec<String> = d.levels.iter().map(|m| format!("m={m}")).collect();
    writeln!(out, "  piece  {}", header.join(" ")).unwrap();
    for (i, row) in d.dims.iter().enumerate() {
        let cells: Vec<String> = row.iter().zip(&header).map(|(v, h)| format!("{v:>w$}", w = h.len())).collect();
        writeln!(out, "  {i:>5}  {}", cells.join(" ")).unwrap();
    }
    writeln!(out, "  identities: {}, reconstruction: {}", yes(d.violations.is_empty()), yes(d.reconstruction)).unwrap();
    for v in &d.violations {
        writeln!(out, "  violation: {v}").unwrap();
    }
}

pub fn etale_text(r: &EtaleReport) -> String {
    let mut out = String::new();
    writeln!(out, "green-etale report (schema {})", r.schema_version).unwrap();
    writeln!(out, "extension: {}", r.extension).unwrap();
    writeln!(out, "base field: {}, group C_{}", r.base_field, r.n).unwrap();
    for l in &r.levels {
        writeln!(out, "\nlevel {}: box dim {} (ambient {}, relation rank {})", l.level, l.box_dim, l.ambient_dim, l.relation_rank).unwrap();
        writeln!(out, "  basis: {}", list(&l.basis)).unwrap();
        writeln!(out, "  I: dim {}, generators: {}", l.ideal_dim, list(&l.ideal_generators)).unwrap();
        writeln!(out, "  I² ∩ I: dim {}, basis: {}", l.square_dim, list(&l.square_basis)).unwrap();
        writeln!(out, "  I = I²: {}, Kähler dim: {}", yes(l.ideal_eq_square), l.kahler_dim).unwrap();
    }
    write_maps(&mut out, "structure maps", &r.structure_maps);
    write_products(&mut out, &r.products);
    write_maps(&mut out, "norms", &r.norms);
    let c = &r.classical;
    writeln!(out, "\nclassical: L ⊗ L dim {}, I dim {}, I² dim {}, étale: {}", c.tensor_dim, c.ideal_dim, c.square_dim, yes(c.holds)).unwrap();
    if let Some(e) = &c.separability_idempotent {
        writeln!(out, "  separability idempotent: {e}").unwrap();
    }
    if let Some(v) = &r.constant_iso {
        writeln!(out, "\n{}: {}", v.claim, yes(v.holds)).unwrap();
        for x in &v.violations {
            writeln!(out, "  violation: {x}").unwrap();
        }
    }
    if let Some(c) = &r.certificate {
        write_certificate(&mut out, c);
    }
    if let Some(g) = &r.generator_checks {
        writeln!(out, "\ngenerator checks: {}/{} passed", g.passed, g.total).unwrap();
        for c in g.checks.iter().filter(|c| !c.passed) {
            writeln!(out, "  failed at level {}: {}", c.level, c.name).unwrap();
        }
    }
    if let Some(d) = &r.decomposition {
        write_decomposition(&mut out, d);
    }
    if !r.oracles.is_empty() {
        writeln!(out, "\noracles:").unwrap();
        for o in &r.oracles {
            writeln!(out, "  {}: {}", o.name, if o.agrees { "agrees" } else { "DISAGREES" }).unwrap();
            for d in &o.differences {
                writeln!(out, "    {d}").unwrap();
            }
        }
    }
    if !r.notices.is_empty() {
        writeln!(out, "\nnotices:").unwrap();
        for n in &r.notices {
            writeln!(out, "  {n}").unwrap();
        }
    }
    let v = &r.verdict;
    writeln!(out, "\nI = I² at every level: {}", yes(v.ideal_eq_square)).unwrap();
    writeln!(out, "Kähler differentials vanish: {}", yes(v.kahler_zero)).unwrap();
    if let Some(p) = v.projective {
        writeln!(out, "projective over K^c: {}", yes(p)).unwrap();
    }
    if let Some(g) = v.generator_checks {
        writeln!(out, "generator identities: {}", yes(g)).unwrap();
    }
    writeln!(out, "oracles agree: {}", yes(v.oracles_agree)).unwrap();
    writeln!(out, "verdict: Green-étale: {}", yes(v.green_etale)).unwrap();
    out
}

pub fn box_text(r: &BoxReport) -> String {
    let mut out = String::new();
    writeln!(out, "green-etale box product (schema {})", r.schema_version).unwrap();
    writeln!(out, "{}", r.description).unwrap();
    for l in &r.levels {
        writeln!(out, "\nlevel {}: dim {} (ambient {}, relation rank {})", l.level, l.dim, l.ambient_dim, l.relation_rank).unwrap();
        writeln!(out, "  basis: {}", list(&l.basis)).unwrap();
    }
    write_maps(&mut out, "structure maps", &r.structure_maps);
    write_products(&mut out, &r.products);
    writeln!(out).unwrap();
    for (name, v) in [("Mackey axioms", &r.axiom_violations), ("Green axioms", &r.green_violations), ("symmetry", &r.symmetry_violations)] {
        writeln!(out, "{name}: {}", if v.is_empty() { "hold".to_string() } else { format!("{} violations", v.len()) }).unwrap();
        for x in v {
            writeln!(out, "  {x}").unwrap();
        }
    }
    out
}

pub fn decompose_text(r: &DecomposeReport) -> String {
    let mut out = String::new();
    writeln!(out, "green-etale decomposition (schema {})", r.schema_version).unwrap();
    writeln!(out, "extension: {}", r.extension).unwrap();
    writeln!(out, "L^fix dims by level: {:?}", r.dims).unwrap();
    if let Some(d) = &r.decomposition {
        write_decomposition(&mut out, d);
    }
    write_certificate(&mut out, &r.certificate);
    for n in &r.notices {
        writeln!(out, "notice: {n}").unwrap();
    }
    writeln!(out, "holds: {}", yes(r.holds)).unwrap();
    out
}

pub fn emit_etale(r: &EtaleReport, format: Format) -> String {
    match format {
        Format::Text => etale_text(r),
        Format::Json => to_json(r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> EtaleReport {
        EtaleReport {
            schema_version: SCHEMA_VERSION,
            extension: "x".into(),
            base_field: "F_2".into(),
            n: 2,
            levels: vec![],
            structure_maps: vec![MapValue { map: "res".into(), argument: "a".into(), value: "b".into() }],
            products: vec![],
            norms: vec![],
            classical: ClassicalReport { degree: 2, tensor_dim: 4, ideal_dim: 2, square_dim: 2, separability_idempotent: None, holds: true },
            constant_iso: None,
            certificate: None,
            generator_checks: None,
            decomposition: None,
            oracles: vec![],
            notices: vec![],
            verdict: VerdictReport {
                ideal_eq_square: true,
                kahler_zero: true,
                projective: Some(true),
                generator_checks: None,
                oracles_agree: true,
                green_etale: true,
            },
        }
    }

    #[test]
    fn json_round_trip_and_key_order() {
        let r = sample();
        let s = to_json(&r);
        assert!(s.starts_with("{\n  \"schema_version\": 1,\n  \"extension\""));
        assert_eq!(etale_from_json(&s).unwrap(), r);
    }

    #[test]
    fn rejects_other_schema_versions() {
        let s = to_json(&sample()).replace("\"schema_version\": 1", "\"schema_version\": 7");
        assert!(etale_from_json(&s).is_err());
    }
}
