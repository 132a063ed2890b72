//! Config → extension → functors → boxes → ideals → certificates → verdict.

use green_etale::algebra::CommAlgebra;
use green_etale::boxprod::{box_mackey, box_product, compare, norm_on_c2_box, relative_box, symmetry_violations, BoxFactor, BoxProduct};
use green_etale::display::normalize;
use green_etale::etale::{
    analyze_extension, classical_oracle, ideal_and_square, level_verdicts, mult_map, mult_violations, generator_checks, ClassicalEtale,
    IdealData, LevelVerdict,
};
use green_etale::extension::{alpha_label, Flavor, GaloisExtension};
use green_etale::green::{constant_field, constant_functor, fix_functor, GreenFunctor, NormRule};
use green_etale::lattice::Lattice;
use green_etale::linalg::{unit_vector, vec_sub, Matrix};
use green_etale::modules::{
    constant_box_violations, eigen_decompose, fix_reconstruction, projectivity_certificate, ProjectivityCertificate,
};
use green_etale::oracles::{coequalizer_oracle, lewis_oracle};
use green_etale::{Error, Field};

use crate::config::{ExtensionKind, RunConfig};
use crate::report::*;
use crate::CliError;

enum Subject {
    Galois(Box<GaloisExtension>),
    Constant(CommAlgebra),
}

/// The Green functor `T` under study and the relative box `T □_{K^c} T`.
struct Setup {
    subject: Subject,
    t: GreenFunctor,
    rule: NormRule,
    base: GreenFunctor,
    boxed: BoxProduct,
}

impl Setup {
    fn describe(&self) -> String {
        match &self.subject {
            Subject::Galois(e) => e.describe(),
            Subject::Constant(a) => format!("constant C_{} functor of a degree-{} algebra over {}", self.t.n(), a.dim(), a.field()),
        }
    }
}

fn setup(cfg: &RunConfig) -> Result<Setup, CliError> {
    let subject = match cfg.extension.kind {
        ExtensionKind::Constant => Subject::Constant(cfg.constant_algebra()?),
        _ => Subject::Galois(Box::new(cfg.extension()?)),
    };
    let (t, rule) = match &subject {
        Subject::Galois(e) => fix_functor(e)?,
        Subject::Constant(a) => {
            let lat = Lattice::new(cfg.order()?)?;
            let names: Vec<String> = (0..a.dim()).map(alpha_label).collect();
            constant_functor(a, &names, &lat)?
        }
    };
    let base = constant_field(t.field(), t.lattice());
    let boxed = relative_box(&t, &base)?;
    Ok(Setup { subject, t, rule, base, boxed })
}

fn render_basis(b: &BoxProduct, m: usize, vs: &[Vec<green_etale::Scalar>]) -> Vec<String> {
    vs.iter().map(|v| b.render(m, &normalize(b.field(), v))).collect()
}

pub fn fmt_matrix(k: &Field, m: &Matrix) -> String {
    (0..m.rows()).map(|i| m.row(i).iter().map(|c| k.fmt_scalar(c)).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("; ")
}

fn box_levels(b: &BoxProduct) -> Vec<BoxLevel> {
    b.lattice()
        .divisors()
        .iter()
        .map(|&m| {
            let l = b.level(m);
            BoxLevel { level: m, ambient_dim: l.ambient_dim(), relation_rank: l.relation_rank(), dim: l.dim(), basis: b.basis_names(m) }
        })
        .collect()
}

/// `res` of every basis element on each covering pair, then `tr`.
fn structure_maps(b: &BoxProduct) -> Vec<MapValue> {
    let k = b.field();
    let mut out = Vec::new();
    for &(d, m) in b.lattice().covering_pairs() {
        for (i, name) in b.basis_names(m).into_iter().enumerate() {
            let v = b.res(d, m, &unit_vector(k, b.dim(m), i));
            out.push(MapValue { map: format!("res_{{{d}←{m}}}"), argument: name, value: b.render(d, &v) });
        }
    }
    for &(d, m) in b.lattice().covering_pairs() {
        for (i, name) in b.basis_names(d).into_iter().enumerate() {
            let v = b.tr(d, m, &unit_vector(k, b.dim(d), i));
            out.push(MapValue { map: format!("tr_{{{m}←{d}}}"), argument: name, value: b.render(m, &v) });
        }
    }
    out
}

/// All basis products at the fixed level.
fn fixed_products(b: &BoxProduct) -> Result<Vec<ProductValue>, CliError> {
    let k = b.field();
    let n = b.lattice().n();
    let names = b.basis_names(n);
    let dim = b.dim(n);
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            let v = b.mul(n, &unit_vector(k, dim, i), &unit_vector(k, dim, j))?;
            out.push(ProductValue { level: n, left: names[i].clone(), right: names[j].clone(), value: b.render(n, &v) });
        }
    }
    Ok(out)
}

fn level_reports(b: &BoxProduct, data: &IdealData, verdicts: &[LevelVerdict]) -> Vec<LevelReport> {
    verdicts
        .iter()
        .map(|v| {
            let m = v.level;
            let lev = b.level(m);
            let ideal = &data.ideal[&m];
            LevelReport {
                level: m,
                ambient_dim: lev.ambient_dim(),
                relation_rank: lev.relation_rank(),
                box_dim: v.box_dim,
                basis: b.basis_names(m),
                ideal_dim: v.ideal_dim,
                ideal_generators: render_basis(b, m, &ideal.basis()),
                square_dim: v.square_dim,
                square_basis: render_basis(b, m, &data.square[&m].intersection(ideal).basis()),
                ideal_eq_square: v.ideal_eq_square(),
                kahler_dim: v.kahler_dim,
            }
        })
        .collect()
}

/// Squares of the rendered ideal generators, witnessing idempotence.
fn generator_squares(b: &BoxProduct, data: &IdealData) -> Result<Vec<ProductValue>, CliError> {
    let k = b.field();
    let mut out = Vec::new();
    for &m in b.lattice().divisors() {
        for v in data.ideal[&m].basis() {
            let v = normalize(k, &v);
            let s = b.render(m, &v);
            out.push(ProductValue { level: m, left: s.clone(), right: s, value: b.render(m, &b.mul(m, &v, &v)?) });
        }
    }
    Ok(out)
}

fn classical_report(c: &ClassicalEtale, alg: &CommAlgebra) -> ClassicalReport {
    let k = alg.field();
    let names: Vec<String> = (0..alg.dim()).flat_map(|i| (0..alg.dim()).map(move |j| format!("{}⊗{}", alpha_label(i), alpha_label(j)))).collect();
    ClassicalReport {
        degree: c.degree,
        tensor_dim: c.tensor_dim,
        ideal_dim: c.ideal_dim,
        square_dim: c.square_dim,
        separability_idempotent: c.separability.as_ref().map(|e| green_etale::display::render(k, e, &names)),
        holds: c.holds(),
    }
}

pub fn certificate_report(c: &ProjectivityCertificate) -> CertificateReport {
    let witnesses = c
        .witnesses
        .iter()
        .map(|w| {
            let k = w.source.field();
            WitnessReport {
                claim: w.claim.clone(),
                source_dims: w.source.dims(),
                target_dims: w.target.dims(),
                components: w.source.lattice().divisors().iter().map(|&m| format!("m={m}: {}", fmt_matrix(k, w.map.component(m)))).collect(),
                verified: w.map.verify_iso(&w.source, &w.target).is_empty(),
            }
        })
        .collect();
    CertificateReport {
        kind: c.kind.name().into(),
        witnesses,
        facts: c.facts.iter().map(|(f, ok)| FactReport { fact: f.clone(), holds: *ok }).collect(),
        violations: c.violations(),
        valid: c.is_valid(),
    }
}

fn decomposition_report(t: &GreenFunctor, zeta: &green_etale::Scalar) -> Result<DecompositionReport, CliError> {
    let f = t.mackey();
    let dec = eigen_decompose(f, zeta)?;
    let violations: Vec<String> = dec.violations().iter().map(|v| v.to_string()).collect();
    let reconstruction = match fix_reconstruction(f) {
        Ok((fix, phi)) => phi.verify_iso(f, &fix).is_empty(),
        Err(Error::Internal(_)) => false,
        Err(e) => return Err(e.into()),
    };
    Ok(DecompositionReport {
        zeta: t.field().fmt_scalar(zeta),
        levels: t.lattice().divisors().to_vec(),
        dims: dec.dims(),
        holds: violations.is_empty() && reconstruction,
        violations,
        reconstruction,
    })
}

fn oracle(name: &str, diffs: Result<Vec<String>, Error>) -> OracleReport {
    let differences = match diffs {
        Ok(d) => d,
        Err(e) => vec![format!("oracle failed: {e}")],
    };
    OracleReport { name: name.into(), agrees: differences.is_empty(), differences }
}

fn oracle_reports(s: &Setup) -> Vec<OracleReport> {
    let k = s.t.field();
    let mut out = Vec::new();
    if k.is_prime_field() || k.characteristic() == 0 {
        out.push(oracle("absolute box ≡ relative box", box_product(&s.t, &s.t).map(|a| compare(&a, &s.boxed))));
        if s.t.lattice().is_prime_order() {
            out.push(oracle(
                "box ≡ prime-order closed form",
                lewis_oracle(&BoxFactor::green(&s.t), &BoxFactor::green(&s.t)).map(|l| compare(&s.boxed, &l)),
            ));
        }
    }
    if k.is_prime_field() {
        out.push(oracle("relative box ≡ coequalizer", coequalizer_oracle(&s.t, &s.base).map(|c| compare(&s.boxed, &c))));
    }
    out
}

fn notices(s: &Setup) -> Vec<String> {
    let mut out = vec!["Tambara ideals I^{>1} involving norms are not computed; verdicts concern the Green ideal I".to_string()];
    if s.t.n() != 2 {
        out.push(format!("norms on box products are computed for C_2 only; none are reported for C_{}", s.t.n()));
    }
    if matches!(s.subject, Subject::Constant(_)) {
        out.push("the constant box isomorphism is checked for cyclic groups only".into());
    }
    out
}

fn norms(s: &Setup) -> Result<Vec<MapValue>, CliError> {
    let b = &s.boxed;
    if s.t.n() != 2 || s.t.dim(1) < 2 {
        return Ok(Vec::new());
    }
    let k = b.field();
    let d = s.t.dim(1);
    let one = unit_vector(k, d, 0);
    let alpha = unit_vector(k, d, 1);
    let u = b.pure(1, &one, &alpha);
    let v = b.pure(1, &alpha, &one);
    let mut out = Vec::new();
    for (arg, x) in [("1⊗α + α⊗1", green_etale::linalg::vec_add(k, &u, &v)), ("1⊗α − α⊗1", vec_sub(k, &u, &v))] {
        let nx = norm_on_c2_box(b, (s.rule, s.rule), &x)?;
        out.push(MapValue { map: "norm_{2←1}".into(), argument: arg.into(), value: b.render(2, &nx) });
    }
    Ok(out)
}

pub fn run_pipeline(cfg: &RunConfig) -> Result<EtaleReport, CliError> {
    let s = setup(cfg)?;
    let flags = &cfg.pipeline;
    let k = s.t.field().clone();
    let b = &s.boxed;

    let (data, classical, certificate, checks, decomposition, constant_iso) = match &s.subject {
        Subject::Galois(ext) => {
            let an = analyze_extension(ext)?;
            if !compare(&an.boxed, b).is_empty() {
                return Err(CliError::Internal("analysis box differs from the pipeline box".into()));
            }
            let classical = classical_report(&an.verdict.classical, ext.algebra());
            let certificate = if flags.certificates { Some(certificate_report(&an.verdict.certificate)) } else { None };
            let kummer = match ext.flavor() {
                Flavor::Kummer { zeta, .. } => Some(zeta.clone()),
                _ => None,
            };
            let checks = match (&kummer, flags.generators) {
                (Some(_), true) => {
                    let rep = generator_checks(b, ext, &an.ideals)?;
                    let checks: Vec<CheckReport> =
                        rep.checks.iter().map(|c| CheckReport { name: c.name.clone(), level: c.level, passed: c.passed }).collect();
                    Some(ChecksReport { total: checks.len(), passed: checks.iter().filter(|c| c.passed).count(), checks })
                }
                _ => None,
            };
            let decomposition = match (&kummer, flags.decomposition) {
                (Some(z), true) => Some(decomposition_report(&s.t, z)?),
                _ => None,
            };
            (an.ideals, classical, certificate, checks, decomposition, None)
        }
        Subject::Constant(alg) => {
            let mult = mult_map(b)?;
            let bad = mult_violations(b, &mult)?;
            if !bad.is_empty() {
                return Err(CliError::Internal(format!("multiplication is not a Green morphism: {}", bad[0])));
            }
            let data = ideal_and_square(b, &mult)?;
            let ll = alg.tensor(alg);
            let names: Vec<String> = (0..ll.dim()).map(|i| format!("t{i}")).collect();
            let (target, _) = constant_functor(&ll, &names, s.t.lattice())?;
            let violations = constant_box_violations(b, &target)?;
            let iso = ViolationsReport { claim: "L^c □_{K^c} L^c ≅ (L ⊗ L)^c".into(), holds: violations.is_empty(), violations };
            (data, classical_report(&classical_oracle(alg), alg), None, None, None, Some(iso))
        }
    };

    let verdicts = level_verdicts(b, &data);
    let levels = level_reports(b, &data, &verdicts);
    let mut products = fixed_products(b)?;
    products.extend(generator_squares(b, &data)?);
    let oracles = if flags.oracles { oracle_reports(&s) } else { Vec::new() };
    let norms = if flags.norms { norms(&s)? } else { Vec::new() };

    let ideal_eq_square = levels.iter().all(|l| l.ideal_eq_square);
    let kahler_zero = levels.iter().all(|l| l.kahler_dim == 0);
    let projective = certificate.as_ref().map(|c| c.valid);
    let iso_ok = constant_iso.as_ref().is_none_or(|c| c.holds);
    let verdict = VerdictReport {
        ideal_eq_square,
        kahler_zero,
        projective,
        generator_checks: checks.as_ref().map(|c| c.passed == c.total),
        oracles_agree: oracles.iter().all(|o| o.agrees),
        green_etale: ideal_eq_square && kahler_zero && projective.unwrap_or(true) && iso_ok,
    };
    Ok(EtaleReport {
        schema_version: SCHEMA_VERSION,
        extension: s.describe(),
        base_field: k.to_string(),
        n: s.t.n(),
        levels,
        structure_maps: if flags.structure_maps { structure_maps(b) } else { Vec::new() },
        products,
        norms,
        classical,
        constant_iso,
        certificate,
        generator_checks: checks,
        decomposition,
        oracles,
        notices: notices(&s),
        verdict,
    })
}

pub fn run_box(cfg: &RunConfig) -> Result<BoxReport, CliError> {
    let s = setup(cfg)?;
    let b = &s.boxed;
    let axiom_violations: Vec<String> = b.functor().check_axioms().iter().map(|v| v.to_string()).collect();
    let green_violations: Vec<String> = b.green().map(|g| g.check_green().iter().map(|v| v.to_string()).collect()).unwrap_or_default();
    let symmetry = symmetry_violations(b)?;
    Ok(BoxReport {
        schema_version: SCHEMA_VERSION,
        description: format!("T □_{{K^c}} T for T the {} of {}", if matches!(s.subject, Subject::Galois(_)) { "fixed-point functor" } else { "constant functor" }, s.describe()),
        n: s.t.n(),
        levels: box_levels(b),
        structure_maps: structure_maps(b),
        products: fixed_products(b)?,
        holds: axiom_violations.is_empty() && green_violations.is_empty() && symmetry.is_empty(),
        axiom_violations,
        green_violations,
        symmetry_violations: symmetry,
    })
}

pub fn run_decompose(cfg: &RunConfig) -> Result<DecomposeReport, CliError> {
    let ext = cfg.extension()?;
    let (t, _) = fix_functor(&ext)?;
    let certificate = certificate_report(&projectivity_certificate(&ext)?);
    let mut notices = Vec::new();
    let decomposition = match ext.flavor() {
        Flavor::Kummer { zeta, .. } => Some(decomposition_report(&t, zeta)?),
        _ => {
            notices.push("no primitive root of unity is given, so the eigen decomposition is skipped and a normal basis certifies projectivity".into());
            None
        }
    };
    let holds = certificate.valid && decomposition.as_ref().is_none_or(|d| d.holds);
    Ok(DecomposeReport { schema_version: SCHEMA_VERSION, extension: ext.describe(), dims: t.mackey().dims(), decomposition, certificate, notices, holds })
}

/// Boxes of two Mackey functors, used by the fuzz harness.
pub fn box_pair_agreement(a: &green_etale::mackey::MackeyFunctor, b: &green_etale::mackey::MackeyFunctor) -> Result<Vec<String>, Error> {
    let engine = box_mackey(a, b)?;
    let closed = lewis_oracle(&BoxFactor::mackey(a), &BoxFactor::mackey(b))?;
    Ok(compare(&engine, &closed))
}
