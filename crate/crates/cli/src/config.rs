//! TOML run configuration.

use serde::{Deserialize, Serialize};

use green_etale::algebra::CommAlgebra;
use green_etale::extension::{build_extension, ExtensionSpec, GaloisExtension};
use green_etale::{Field, Scalar};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: FieldSection,
    pub extension: ExtensionSection,
    #[serde(default)]
    pub pipeline: PipelineSection,
    #[serde(default)]
    pub fuzz: FuzzSection,
    #[serde(default)]
    pub output: OutputSection,
}

/// Base field: `F_p`, `F_p[t]/(modulus)` or `Q`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub p: Option<u64>,
    /// Coefficients of the defining polynomial, constant term first.
    pub modulus: Option<Vec<u64>>,
    #[serde(default)]
    pub rationals: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionKind {
    Kummer,
    ArtinSchreier,
    Explicit,
    /// The constant functor of `K[x]/(algebra_modulus)`.
    Constant,
}

/// A scalar given as an integer or as coefficients over the prime field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Coeffs(Vec<u64>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSection {
    pub kind: ExtensionKind,
    pub n: Option<usize>,
    pub a: Option<ScalarSpec>,
    pub zeta: Option<ScalarSpec>,
    pub minimal_poly: Option<Vec<ScalarSpec>>,
    pub sigma_alpha: Option<Vec<ScalarSpec>>,
    pub algebra_modulus: Option<Vec<ScalarSpec>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PipelineSection {
    pub oracles: bool,
    pub certificates: bool,
    pub generators: bool,
    pub norms: bool,
    pub decomposition: bool,
    pub structure_maps: bool,
}

impl Default for PipelineSection {
    fn default() -> Self {
        PipelineSection { oracles: true, certificates: true, generators: true, norms: true, decomposition: true, structure_maps: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FuzzSection {
    pub seed: u64,
    pub count: usize,
    pub corrupt: bool,
    pub max_atoms: usize,
}

impl Default for FuzzSection {
    fn default() -> Self {
        FuzzSection { seed: 0, count: 100, corrupt: false, max_atoms: 3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub format: Format,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection { format: Format::Text }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<RunConfig, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &std::path::Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        RunConfig::parse(&text)
    }

    pub fn base_field(&self) -> Result<Field, CliError> {
        let f = &self.field;
        let field = match (f.rationals, f.p, &f.modulus) {
            (true, None, None) => Ok(Field::rationals()),
            (false, Some(p), None) => Field::prime(p),
            (false, Some(p), Some(m)) => Field::extension(p, m.clone()),
            _ => return Err(CliError::Config("[field] needs either `p` (and optional `modulus`) or `rationals = true`".into())),
        };
        field.map_err(CliError::from)
    }

    /// Group order `n`; the Artin–Schreier case defaults to 2.
    pub fn order(&self) -> Result<usize, CliError> {
        match (self.extension.kind, self.extension.n) {
            (ExtensionKind::ArtinSchreier, None | Some(2)) => Ok(2),
            (ExtensionKind::ArtinSchreier, Some(n)) => Err(CliError::Config(format!("Artin–Schreier extensions have n = 2, got {n}"))),
            (_, Some(n)) if n >= 1 => Ok(n),
            (_, Some(0)) => Err(CliError::Config("n must be positive".into())),
            _ => Err(CliError::Config("[extension] needs `n`".into())),
        }
    }

    pub fn extension(&self) -> Result<GaloisExtension, CliError> {
        let k = self.base_field()?;
        let e = &self.extension;
        let need = |s: &Option<ScalarSpec>, name: &str| -> Result<Scalar, CliError> {
            scalar(&k, s.as_ref().ok_or_else(|| CliError::Config(format!("[extension] needs `{name}`")))?)
        };
        let list = |s: &Option<Vec<ScalarSpec>>, name: &str| -> Result<Vec<Scalar>, CliError> {
            s.as_ref()
                .ok_or_else(|| CliError::Config(format!("[extension] needs `{name}`")))?
                .iter()
                .map(|c| scalar(&k, c))
                .collect()
        };
        let spec = match e.kind {
            ExtensionKind::Kummer => ExtensionSpec::Kummer { n: self.order()?, a: need(&e.a, "a")?, zeta: need(&e.zeta, "zeta")? },
            ExtensionKind::ArtinSchreier => {
                self.order()?;
                ExtensionSpec::ArtinSchreier { a: need(&e.a, "a")? }
            }
            ExtensionKind::Explicit => {
                ExtensionSpec::Explicit { minimal_poly: list(&e.minimal_poly, "minimal_poly")?, sigma_alpha: list(&e.sigma_alpha, "sigma_alpha")? }
            }
            ExtensionKind::Constant => return Err(CliError::Config("constant runs have no Galois extension".into())),
        };
        Ok(build_extension(&k, &spec)?)
    }

    /// The algebra `K[x]/(f)` of a constant run.
    pub fn constant_algebra(&self) -> Result<CommAlgebra, CliError> {
        let k = self.base_field()?;
        let coeffs = self
            .extension
            .algebra_modulus
            .as_ref()
            .ok_or_else(|| CliError::Config("[extension] kind = \"constant\" needs `algebra_modulus`".into()))?;
        let f: Vec<Scalar> = coeffs.iter().map(|c| scalar(&k, c)).collect::<Result<_, _>>()?;
        Ok(CommAlgebra::monogenic(&k, &f)?)
    }
}

pub fn scalar(k: &Field, s: &ScalarSpec) -> Result<Scalar, CliError> {
    match s {
        ScalarSpec::Int(i) => Ok(k.from_int(*i)),
        ScalarSpec::Coeffs(c) => Ok(k.from_coeffs(c)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_kummer_config() {
        let c = RunConfig::parse("[field]\np = 5\n[extension]\nkind = \"kummer\"\nn = 4\na = 2\nzeta = 2\n").unwrap();
        assert_eq!(c.order().unwrap(), 4);
        assert_eq!(c.extension().unwrap().degree(), 4);
        assert_eq!(c.output.format, Format::Text);
        assert!(c.pipeline.oracles);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_parameters() {
        assert!(matches!(RunConfig::parse("[field]\np = 5\nq = 1\n[extension]\nkind = \"kummer\"\n"), Err(CliError::Config(_))));
        let c = RunConfig::parse("[field]\np = 5\n[extension]\nkind = \"kummer\"\nn = 4\na = 4\nzeta = 2\n").unwrap();
        assert!(matches!(c.extension(), Err(CliError::Math(_))));
        let c = RunConfig::parse("[field]\np = 2\n[extension]\nkind = \"artin_schreier\"\nn = 3\na = 1\n").unwrap();
        assert!(c.extension().is_err());
    }
}
