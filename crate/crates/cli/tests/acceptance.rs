//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use green_etale::algebra::CommAlgebra;
use green_etale::boxprod::{box_mackey, box_product, compare, norm_on_c2_box, relative_box, BoxFactor, BoxProduct};
use green_etale::etale::{analyze_extension, constant_etale_check, generator_checks, EtaleAnalysis};
use green_etale::extension::{build_extension, ExtensionSpec, GaloisExtension};
use green_etale::green::{constant_field, fix_functor, GreenFunctor, NormRule};
use green_etale::lattice::Lattice;
use green_etale::linalg::{unit_vector, vec_add, vec_sub, Matrix, Vector};
use green_etale::modules::{constant_box_lemma_check, eigen_decompose, fix_reconstruction, projectivity_certificate, CertificateKind};
use green_etale::oracles::{coequalizer_oracle, lewis_oracle};
use green_etale::random::random_mackey;
use green_etale::random::random_constant_module;
use green_etale::{Field, Scalar};
use green_etale_cli::config::{Format, RunConfig};
use green_etale_cli::fuzz::fuzz;
use green_etale_cli::pipeline::run_pipeline;
use green_etale_cli::report::emit_etale;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ints(k: &Field, v: &[i64]) -> Vector {
    v.iter().map(|&c| k.from_int(c)).collect()
}

fn artin_schreier() -> GaloisExtension {
    let k = Field::prime(2).unwrap();
    build_extension(&k, &ExtensionSpec::ArtinSchreier { a: k.one() }).unwrap()
}

fn kummer(p: u64, n: usize, a: i64, z: i64) -> GaloisExtension {
    let k = Field::prime(p).unwrap();
    build_extension(&k, &ExtensionSpec::Kummer { n, a: k.from_int(a), zeta: k.from_int(z) }).unwrap()
}

fn fix(ext: &GaloisExtension) -> GreenFunctor {
    fix_functor(ext).unwrap().0
}

fn analyze(ext: &GaloisExtension) -> EtaleAnalysis {
    analyze_extension(ext).unwrap()
}

/// Ideal and square agree and every Kähler dimension is zero.
fn idempotent_everywhere(an: &EtaleAnalysis) -> Result<(), String> {
    for l in &an.verdict.levels {
        ensure(l.ideal_eq_square() && l.kahler_dim == 0, format!("I ≠ I² at level {}", l.level))?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let an = analyze(&artin_schreier());
    let b = &an.boxed;
    let k = b.field().clone();
    ensure(b.dim(2) == 2 && b.basis_names(2) == ["1⊗1", "[α⊗α]"], format!("level 2 basis {:?}", b.basis_names(2)))?;
    let gen = ints(&k, &[1, 1]);
    let ideal = &an.ideals.ideal[&2];
    ensure(ideal.dim() == 1 && ideal.contains(&gen), "I(C_2/C_2) is not spanned by 1⊗1 + [α⊗α]")?;
    ensure(b.mul(2, &gen, &gen).unwrap() == gen, "generator is not idempotent")?;
    idempotent_everywhere(&an)?;
    Ok("fixed level {1⊗1, [α⊗α]}, I = ⟨1⊗1 + [α⊗α]⟩ idempotent, Kähler dims 0".into())
}

fn criterion_2() -> Outcome {
    let an = analyze(&kummer(5, 2, 2, 4));
    let b = &an.boxed;
    let k = b.field().clone();
    let a = 2;
    ensure(b.basis_names(2) == ["1⊗1", "[α⊗α]"], "unexpected fixed-level basis")?;
    let g = ints(&k, &[2 * a, -1]);
    ensure(an.ideals.ideal[&2].dim() == 1 && an.ideals.ideal[&2].contains(&g), "I(C_2/C_2) is not spanned by 2a − [α⊗α]")?;
    let c = ints(&k, &[0, 1]);
    ensure(b.mul(2, &c, &c).unwrap() == ints(&k, &[4 * a * a, 0]), "[α⊗α]² ≠ 4a²")?;
    ensure(b.mul(2, &g, &g).unwrap() == ints(&k, &[8 * a * a, -4 * a]), "(2a − [α⊗α])² ≠ 8a² − 4a[α⊗α]")?;
    idempotent_everywhere(&an)?;
    Ok("I = ⟨2a − [α⊗α]⟩, [α⊗α]² = 4a², (2a − [α⊗α])² = 8a² − 4a[α⊗α], Kähler dims 0".into())
}

fn golden(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(p).unwrap()
}

fn config(name: &str) -> RunConfig {
    RunConfig::load(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(format!("{name}.toml"))).unwrap()
}

fn criterion_3() -> Outcome {
    let k2 = Field::prime(2).unwrap();
    let b = analyze(&artin_schreier()).boxed;
    ensure(b.res(1, 2, &ints(&k2, &[0, 1])) == ints(&k2, &[1, 1, 1, 0]), "case 1: res[α⊗α] ≠ α⊗1 + 1⊗α + 1⊗1")?;
    ensure(b.tr(1, 2, &ints(&k2, &[0, 1, 0, 0])) == ints(&k2, &[1, 0]), "case 1: tr(1⊗α) ≠ 1⊗1")?;
    let k5 = Field::prime(5).unwrap();
    let b = analyze(&kummer(5, 2, 2, 4)).boxed;
    ensure(b.res(1, 2, &ints(&k5, &[0, 1])) == ints(&k5, &[0, 0, 0, 2]), "case 2: res[α⊗α] ≠ 2(α⊗α)")?;
    ensure(b.tr(1, 2, &ints(&k5, &[1, 0, 0, 0])) == ints(&k5, &[2, 0]), "case 2: tr(1⊗1) ≠ 2")?;
    let lines = [
        ("artin_schreier_f2", "  res_{1←2}([α⊗α]) = 1⊗1 + 1⊗α + α⊗1\n"),
        ("artin_schreier_f2", "  tr_{2←1}(1⊗α) = 1⊗1\n"),
        ("kummer_f5_n2", "  res_{1←2}([α⊗α]) = 2·α⊗α\n"),
        ("kummer_f5_n2", "  tr_{2←1}(1⊗1) = 2·1⊗1\n"),
    ];
    for (name, line) in lines {
        let g = golden(&format!("{name}.txt"));
        ensure(g.contains(line), format!("{name}.txt lacks {line:?}"))?;
        ensure(emit_etale(&run_pipeline(&config(name)).unwrap(), Format::Text) == g, format!("{name} report differs from its golden copy"))?;
        ensure(emit_etale(&run_pipeline(&config(name)).unwrap(), Format::Json) == golden(&format!("{name}.json")), format!("{name} JSON differs"))?;
    }
    Ok("res and tr values match in both cases; golden reports byte-identical".into())
}

fn c2_norm(b: &BoxProduct, k: &Field, sign: i64) -> Vector {
    let one = unit_vector(k, 2, 0);
    let alpha = unit_vector(k, 2, 1);
    let u = b.pure(1, &one, &alpha);
    let v = b.pure(1, &alpha, &one);
    let x = if sign > 0 { vec_add(k, &u, &v) } else { vec_sub(k, &u, &v) };
    norm_on_c2_box(b, (NormRule::FixedPoint, NormRule::FixedPoint), &x).unwrap()
}

fn criterion_4() -> Outcome {
    let k2 = Field::prime(2).unwrap();
    let b1 = box_product(&fix(&artin_schreier()), &fix(&artin_schreier())).unwrap();
    let n1 = c2_norm(&b1, &k2, 1);
    let k5 = Field::prime(5).unwrap();
    let t = fix(&kummer(5, 2, 2, 4));
    let b2 = box_product(&t, &t).unwrap();
    let n2 = c2_norm(&b2, &k5, -1);
    let a = 2;
    let stated = ints(&k5, &[2 * a, -1]);
    // independent route: res(norm x) = x·τx at the free level
    let one = unit_vector(&k5, 2, 0);
    let alpha = unit_vector(&k5, 2, 1);
    let x = vec_sub(&k5, &b2.pure(1, &one, &alpha), &b2.pure(1, &alpha, &one));
    let tau = b2.functor().weyl(1).apply(&x);
    let via_res = b2.res(1, 2, &n2) == b2.mul(1, &x, &tau).unwrap();
    let stated_res = b2.res(1, 2, &stated) == b2.mul(1, &x, &tau).unwrap();
    ensure(n1 == ints(&k2, &[1, 1]), format!("case 1: norm(1⊗α + α⊗1) = {}", b1.render(2, &n1)))?;
    ensure(
        n2 == stated,
        format!(
            "case 1 holds; case 2: norm(1⊗α − α⊗1) = {} = −2a + [α⊗α], stated 2a − [α⊗α] = {}; res(norm x) = x·τx holds for the computed value: {via_res}, for the stated value: {stated_res}",
            b2.render(2, &n2),
            b2.render(2, &stated)
        ),
    )?;
    Ok("norm(1⊗α + α⊗1) = 1⊗1 + [α⊗α]; norm(1⊗α − α⊗1) = 2a − [α⊗α]".into())
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    for ext in [kummer(7, 3, 3, 2), kummer(5, 4, 2, 2)] {
        let an = analyze(&ext);
        idempotent_everywhere(&an)?;
        let rep = generator_checks(&an.boxed, &ext, &an.ideals).unwrap();
        if let Some(f) = rep.failures().first() {
            return Err(format!("{}: {} at level {}", ext.describe(), f.name, f.level));
        }
        if ext.degree() == 4 {
            let mid = rep.checks.iter().filter(|c| c.level == 4 && c.name.ends_with("for d = 2")).count();
            ensure(mid > 0, "no checks with intermediate origin d = 2 at m = 4")?;
        }
        total += rep.checks.len();
    }
    Ok(format!("I = I² at all levels for n = 3, 4; {total} generator checks pass, including d = 2 at m = 4"))
}

fn random_pairs(k: &Field, p: usize, count: u64, offset: u64) -> Result<usize, String> {
    let lat = Lattice::new(p).unwrap();
    for s in 0..count {
        let a = random_mackey(k, &lat, 3, offset + 2 * s).unwrap();
        let b = random_mackey(k, &lat, 3, offset + 2 * s + 1).unwrap();
        let engine = box_mackey(&a, &b).unwrap();
        let closed = lewis_oracle(&BoxFactor::mackey(&a), &BoxFactor::mackey(&b)).unwrap();
        let d = compare(&engine, &closed);
        ensure(d.is_empty(), format!("C_{p} over {k}, seed {}: {:?}", offset + 2 * s, d.first()))?;
    }
    Ok(count as usize)
}

fn criterion_6() -> Outcome {
    let cases: [(u64, GaloisExtension, u64); 4] =
        [(2, artin_schreier(), 2), (2, kummer(5, 2, 2, 4), 5), (3, kummer(7, 3, 3, 2), 7), (5, kummer(11, 5, 2, 3), 11)];
    let mut pairs = 0;
    for (p, ext, q) in &cases {
        let t = fix(ext);
        let k = t.field().clone();
        let c = constant_field(&k, t.lattice());
        for (name, f) in [("L^fix", &t), ("K^c", &c)] {
            let engine = box_product(f, f).unwrap();
            let closed = lewis_oracle(&BoxFactor::green(f), &BoxFactor::green(f)).unwrap();
            let d = compare(&engine, &closed);
            ensure(d.is_empty(), format!("{name}□{name} for C_{p} over F_{q}: {:?}", d.first()))?;
        }
    }
    for p in [2usize, 3, 5] {
        pairs += random_pairs(&Field::prime(p as u64).unwrap(), p, 50, 1000 * p as u64)?;
        let other = match p {
            2 => 5,
            3 => 7,
            _ => 11,
        };
        pairs += random_pairs(&Field::prime(other).unwrap(), p, 50, 5000 * p as u64)?;
    }
    for ext in [artin_schreier(), kummer(5, 2, 2, 4), kummer(7, 3, 3, 2), kummer(5, 4, 2, 2)] {
        let t = fix(&ext);
        let base = constant_field(t.field(), t.lattice());
        let d = compare(&relative_box(&t, &base).unwrap(), &coequalizer_oracle(&t, &base).unwrap());
        ensure(d.is_empty(), format!("coequalizer for {}: {:?}", ext.describe(), d.first()))?;
    }
    Ok(format!("L^fix and K^c boxes match the closed form; {pairs} random pairs (100 per prime); coequalizer matches for 4 extensions"))
}

fn criterion_7() -> Outcome {
    let ext = kummer(5, 4, 2, 2);
    let k = ext.base().clone();
    let t = fix(&ext);
    let dec = eigen_decompose(t.mackey(), &k.from_int(2)).unwrap();
    let levels = [1usize, 2, 4];
    for p in &dec.pieces {
        for (j, &m) in levels.iter().enumerate() {
            let want = usize::from(p.index % m == 0);
            ensure(p.functor.dims()[j] == want, format!("piece {} at level {m} has dim {}", p.index, p.functor.dims()[j]))?;
        }
        let span = &p.inclusion[&1];
        ensure(span.cols() == 1 && Matrix::from_cols(&k, 4, &[span.col(0), ext.alpha_power(p.index)]).rank() == 1, format!("piece {} is not span{{α^{}}}", p.index, p.index))?;
    }
    let v = dec.violations();
    ensure(v.is_empty(), format!("projector identities: {}", v.first().map(|x| x.to_string()).unwrap_or_default()))?;
    let mut done = 0;
    for (p, n) in [(7u64, 3usize), (5, 4)] {
        let kk = Field::prime(p).unwrap();
        let lat = Lattice::new(n).unwrap();
        for s in 0..50 {
            let m = random_constant_module(&kk, &lat, 3, s).unwrap();
            let (f, phi) = fix_reconstruction(&m).map_err(|e| format!("n = {n}, seed {s}: {e}"))?;
            ensure(phi.verify_iso(&m, &f).is_empty(), format!("n = {n}, seed {s}: not an isomorphism"))?;
            done += 1;
        }
    }
    Ok(format!("eigen table matches (piece i nonzero at m iff m | i); projector and res∘tr identities hold; {done} reconstructions"))
}

fn two_sided(w: &green_etale::modules::Witness) -> bool {
    if !w.map.verify_iso(&w.source, &w.target).is_empty() {
        return false;
    }
    match w.map.inverse() {
        Ok(inv) => inv.compose(&w.map).is_identity() && w.map.compose(&inv).is_identity() && inv.verify(&w.target, &w.source).is_empty(),
        Err(_) => false,
    }
}

fn criterion_8() -> Outcome {
    let cases = [
        (artin_schreier(), CertificateKind::NormalBasis),
        (kummer(5, 2, 2, 4), CertificateKind::PlusMinus),
        (kummer(7, 3, 3, 2), CertificateKind::EigenFree),
        (kummer(5, 4, 2, 2), CertificateKind::EigenFree),
    ];
    let mut witnesses = 0;
    for (ext, kind) in &cases {
        let c = projectivity_certificate(ext).unwrap();
        ensure(c.kind == *kind, format!("{}: got {}", ext.describe(), c.kind.name()))?;
        ensure(c.is_valid(), format!("{}: {:?}", ext.describe(), c.violations()))?;
        for w in &c.witnesses {
            ensure(two_sided(w), format!("{}: witness {} is not a two-sided isomorphism", ext.describe(), w.claim))?;
            witnesses += 1;
        }
    }
    let k = Field::prime(5).unwrap();
    let dec = eigen_decompose(fix(&kummer(5, 2, 2, 4)).mackey(), &k.from_int(4)).unwrap();
    ensure(dec.pieces[1].functor.dim(2) == 0, "(L^fix)^− is nonzero at the fixed level")?;
    Ok(format!("normal_basis, plus_minus and eigen_free certificates valid; {witnesses} witnesses invert on both sides"))
}

fn f4(k: &Field) -> CommAlgebra {
    CommAlgebra::monogenic(k, &[k.one(), k.one(), k.one()]).unwrap()
}

fn criterion_9() -> Outcome {
    let k2 = Field::prime(2).unwrap();
    for n in [2, 4] {
        let v = constant_box_lemma_check(&f4(&k2), &f4(&k2), n).unwrap();
        ensure(v.holds(), format!("F_4^c □ F_4^c over C_{n}: {:?}", v.violations))?;
        let e = constant_etale_check(&k2, &f4(&k2), n).unwrap();
        ensure(e.holds(), format!("constant_etale_check(F_2 ⊂ F_4, n = {n}) fails"))?;
    }
    let k5 = Field::prime(5).unwrap();
    let f25: Vec<Scalar> = ints(&k5, &[-2, 0, 1]);
    let e = constant_etale_check(&k5, &CommAlgebra::monogenic(&k5, &f25).unwrap(), 3).unwrap();
    ensure(e.holds(), "constant_etale_check(F_5 ⊂ F_25, n = 3) fails")?;
    Ok("F_4^c □ F_4^c ≅ (F_4 ⊗ F_4)^c for C_2, C_4; constant checks pass for F_4/F_2 (n = 2, 4) and F_25/F_5 (n = 3)".into())
}

fn criterion_10() -> Outcome {
    let k = Field::prime(5).unwrap();
    let mut caught = 0;
    for n in [2usize, 3, 4, 6] {
        let s = fuzz(&k, n, 77 + n as u64, 100, 3, true).unwrap();
        ensure(s.all_pass(), format!("C_{n}: {:?}", s.failures.first()))?;
        ensure(s.mackey_axioms.run == 100 && s.green_axioms.run == 100, "fewer than 100 samples")?;
        let c = s.corruptions_detected.as_ref().unwrap();
        ensure(c.run >= 100, format!("C_{n}: only {} corruptions injected", c.run))?;
        caught += c.passed;
        ensure(fuzz(&k, n, 77 + n as u64, 100, 3, true).unwrap() == s, format!("C_{n}: replay differs"))?;
    }
    Ok(format!("400 Mackey, 400 Green and 400 module samples pass; {caught} corruptions caught; replays identical"))
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for (i, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {i}: {detail}"),
            Err(detail) => {
                println!("FAIL criterion {i}: {detail}");
                failed.push(i);
            }
        }
    }
    println!("{}/10 criteria pass", 10 - failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
