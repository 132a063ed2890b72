//! Seeded property runs over random functors.

use serde::{Deserialize, Serialize};

use green_etale::lattice::Lattice;
use green_etale::modules::fix_reconstruction;
use green_etale::random::{corrupt_green, corrupt_mackey, random_constant_module, random_green, random_mackey};
use green_etale::{Error, Field};

use crate::pipeline::box_pair_agreement;
use crate::report::SCHEMA_VERSION;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub run: usize,
    pub passed: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.run += 1;
        self.passed += ok as usize;
    }

    pub fn all(&self) -> bool {
        self.run == self.passed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzFailure {
    pub suite: String,
    /// Replays with `--seed <sample_seed> --count 1`.
    pub sample_seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub schema_version: u32,
    pub field: String,
    pub n: usize,
    pub seed: u64,
    pub count: usize,
    pub mackey_axioms: Tally,
    pub green_axioms: Tally,
    pub constant_modules: Tally,
    pub box_vs_closed_form: Option<Tally>,
    pub reconstruction: Option<Tally>,
    pub corruptions_detected: Option<Tally>,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzSummary {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn text(&self) -> String {
        let mut out = format!("fuzz C_{} over {}, seed {}, count {}\n", self.n, self.field, self.seed, self.count);
        let mut line = |name: &str, t: &Tally| out.push_str(&format!("  {name}: {}/{}\n", t.passed, t.run));
        line("Mackey axioms", &self.mackey_axioms);
        line("Green axioms", &self.green_axioms);
        line("constant modules", &self.constant_modules);
        for (name, t) in [
            ("box vs closed form", &self.box_vs_closed_form),
            ("fixed-point reconstruction", &self.reconstruction),
            ("corruptions detected", &self.corruptions_detected),
        ] {
            if let Some(t) = t {
                line(name, t);
            }
        }
        for f in &self.failures {
            out.push_str(&format!("  FAIL {} (sample seed {}): {}\n", f.suite, f.sample_seed, f.detail));
        }
        out.push_str(if self.all_pass() { "all pass\n" } else { "failures found\n" });
        out
    }
}

fn first<T: std::fmt::Display>(v: &[T]) -> String {
    v.first().map(|x| x.to_string()).unwrap_or_default()
}

/// Runs `count` samples with seeds `seed, seed + 1, …`.
///
/// Every sample checks the axioms of a random Mackey functor, a random Green
/// functor and a random module over the constant functor. For prime `n` and
/// prime-field scalars it compares the box engine with the prime-order
/// closed form; for invertible `n` it checks the fixed-point
/// reconstruction. With `corrupt` set, each sample also breaks one identity
/// of both random functors and expects the checks to notice.
pub fn fuzz(field: &Field, n: usize, seed: u64, count: usize, max_atoms: usize, corrupt: bool) -> Result<FuzzSummary, Error> {
    let lat = Lattice::new(n)?;
    let closed_form = lat.is_prime_order() && field.is_prime_field();
    let invertible = !field.is_zero(&field.from_int(n as i64));
    let mut s = FuzzSummary {
        schema_version: SCHEMA_VERSION,
        field: field.to_string(),
        n,
        seed,
        count,
        mackey_axioms: Tally::default(),
        green_axioms: Tally::default(),
        constant_modules: Tally::default(),
        box_vs_closed_form: closed_form.then(Tally::default),
        reconstruction: invertible.then(Tally::default),
        corruptions_detected: corrupt.then(Tally::default),
        failures: Vec::new(),
    };
    let fail = |failures: &mut Vec<FuzzFailure>, suite: &str, sample_seed: u64, detail: String| {
        failures.push(FuzzFailure { suite: suite.into(), sample_seed, detail });
    };
    for i in 0..count {
        let ss = seed.wrapping_add(i as u64);
        let m = random_mackey(field, &lat, max_atoms, ss)?;
        let bad = m.check_axioms();
        s.mackey_axioms.record(bad.is_empty());
        if !bad.is_empty() {
            fail(&mut s.failures, "Mackey axioms", ss, first(&bad));
        }

        let g = random_green(field, &lat, ss)?;
        let mut bad = g.mackey().check_axioms();
        bad.extend(g.check_green());
        s.green_axioms.record(bad.is_empty());
        if !bad.is_empty() {
            fail(&mut s.failures, "Green axioms", ss, first(&bad));
        }

        let c = random_constant_module(field, &lat, max_atoms, ss)?;
        let ok = c.check_axioms().is_empty() && c.is_constant_module();
        s.constant_modules.record(ok);
        if !ok {
            fail(&mut s.failures, "constant modules", ss, first(&c.constant_module_violations()));
        }

        if let Some(t) = s.reconstruction.as_mut() {
            let ok = match fix_reconstruction(&c) {
                Ok((fix, phi)) => phi.verify_iso(&c, &fix).is_empty(),
                Err(_) => false,
            };
            t.record(ok);
            if !ok {
                fail(&mut s.failures, "fixed-point reconstruction", ss, "not an isomorphism".into());
            }
        }

        if let Some(t) = s.box_vs_closed_form.as_mut() {
            let other = random_mackey(field, &lat, max_atoms, ss.wrapping_add(1 << 32))?;
            let diffs = box_pair_agreement(&m, &other)?;
            t.record(diffs.is_empty());
            if !diffs.is_empty() {
                fail(&mut s.failures, "box vs closed form", ss, first(&diffs));
            }
        }

        if let Some(t) = s.corruptions_detected.as_mut() {
            // a functor that vanishes where the corruption would go is skipped
            match corrupt_mackey(&m, ss) {
                Ok((bm, what)) => {
                    let caught = !bm.check_axioms().is_empty();
                    t.record(caught);
                    if !caught {
                        fail(&mut s.failures, "corruption detection", ss, what);
                    }
                }
                Err(Error::Usage(_)) => {}
                Err(e) => return Err(e),
            }
            match corrupt_green(&g, ss) {
                Ok((bg, what)) => {
                    let caught = !bg.mackey().check_axioms().is_empty() || !bg.check_green().is_empty();
                    t.record(caught);
                    if !caught {
                        fail(&mut s.failures, "corruption detection", ss, what);
                    }
                }
                Err(Error::Usage(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(s)
}
