//! JSON input documents and their validation.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use toric_core::exactnum::{parse_rational, LogLinear, Rational};
use toric_core::geom::LatticeVector;
use toric_core::MonomialPair;

/// Failure of a command, carrying its exit status.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Core(toric_core::Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use toric_core::Error as E;
        match self {
            CliError::Parse(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e {
                E::Parse(_) | E::ZeroValue | E::NotPrime(_) => 2,
                E::CapExceeded { .. } => 4,
                E::NonFullLattice(_)
                | E::FloorTooHigh
                | E::NotAFace
                | E::OutsideDomain
                | E::UnsupportedDimension(_)
                | E::DimensionMismatch { .. }
                | E::LengthMismatch { .. }
                | E::Empty(_)
                | E::InvalidArgument(_) => 3,
                E::PrimeTooLarge(_) | E::NonLinearProduct => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<toric_core::Error> for CliError {
    fn from(e: toric_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// A rational given as a JSON string (`"1/3"`) or integer.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalText {
    Text(String),
    Int(i64),
}

impl RationalText {
    fn parse(&self, field: &str) -> CliResult<Rational> {
        match self {
            RationalText::Text(s) => parse_rational(s).map_err(|e| CliError::Parse(format!("{field}: {e}"))),
            RationalText::Int(n) => Ok(Rational::from_integer((*n).into())),
        }
    }
}

/// `{"exponents": [[..], ..], "coefficients": ["1", "4", ..], "name": ..}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub exponents: Vec<Vec<i64>>,
    pub coefficients: Vec<RationalText>,
}

impl PairDocument {
    pub fn from_pair(pair: &MonomialPair, name: Option<String>) -> CliResult<Self> {
        let exponents = pair
            .exponents()
            .iter()
            .map(|e| e.iter().map(|x| i64::try_from(x).map_err(|_| CliError::Parse("exponent exceeds 64 bits".into()))).collect())
            .collect::<CliResult<_>>()?;
        let coefficients = pair.coefficients().iter().map(|c| RationalText::Text(c.to_string())).collect();
        Ok(PairDocument { name, exponents, coefficients })
    }

    pub fn to_pair(&self) -> CliResult<MonomialPair> {
        let exps = lattice_vectors(&self.exponents, "exponents")?;
        if self.coefficients.len() != exps.len() {
            return Err(CliError::Parse(format!(
                "{} exponents but {} coefficients",
                exps.len(),
                self.coefficients.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(exps.len());
        for (i, c) in self.coefficients.iter().enumerate() {
            let field = format!("coefficients[{i}]");
            let q = c.parse(&field)?;
            if q == Rational::from_integer(0.into()) {
                return Err(CliError::Parse(format!("{field}: coefficient is zero; drop that coordinate")));
            }
            coeffs.push(q);
        }
        MonomialPair::new(exps, coeffs).map_err(|e| CliError::Parse(e.to_string()))
    }
}

/// `{"exponents": [[..], ..], "weights": ["log(2)", 0, {"constant": "1"}, ..]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightDocument {
    #[serde(default)]
    pub name: Option<String>,
    pub exponents: Vec<Vec<i64>>,
    pub weights: Vec<Value>,
}

impl WeightDocument {
    pub fn parse(&self) -> CliResult<(Vec<LatticeVector>, Vec<LogLinear>)> {
        let exps = lattice_vectors(&self.exponents, "exponents")?;
        if self.weights.len() != exps.len() {
            return Err(CliError::Parse(format!("{} exponents but {} weights", exps.len(), self.weights.len())));
        }
        let weights = self
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| LogLinear::from_json(w).map_err(|e| CliError::Parse(format!("weights[{i}]: {e}"))))
            .collect::<CliResult<_>>()?;
        Ok((exps, weights))
    }
}

/// `{"matrix": [[..], ..], "coefficients": [..]}` for a monomial image.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub matrix: Vec<Vec<u64>>,
    pub coefficients: Vec<RationalText>,
}

impl MapDocument {
    pub fn parse(&self) -> CliResult<(Vec<Vec<u64>>, Vec<Rational>)> {
        let beta = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| c.parse(&format!("coefficients[{i}]")))
            .collect::<CliResult<_>>()?;
        Ok((self.matrix.clone(), beta))
    }
}

/// A polytope: a list of points with integer or rational coordinates, or a
/// document with an `exponents` field.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PolytopeDocument {
    Points(Vec<Vec<RationalText>>),
    Exponents { exponents: Vec<Vec<RationalText>> },
}

impl PolytopeDocument {
    pub fn points(&self, field: &str) -> CliResult<Vec<Vec<Rational>>> {
        let rows = match self {
            PolytopeDocument::Points(p) => p,
            PolytopeDocument::Exponents { exponents } => exponents,
        };
        if rows.is_empty() {
            return Err(CliError::Parse(format!("{field}: no points")));
        }
        rows.iter()
            .enumerate()
            .map(|(i, r)| r.iter().enumerate().map(|(j, x)| x.parse(&format!("{field}[{i}][{j}]"))).collect())
            .collect()
    }
}

fn lattice_vectors(rows: &[Vec<i64>], field: &str) -> CliResult<Vec<LatticeVector>> {
    let n = rows.first().ok_or_else(|| CliError::Parse(format!("{field}: empty list")))?.len();
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            if r.len() != n {
                return Err(CliError::Parse(format!("{field}[{i}]: length {} but {field}[0] has length {n}", r.len())));
            }
            Ok(r.iter().map(|&x| BigInt::from(x)).collect())
        })
        .collect()
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }
}

/// Parses JSON text; syntax and schema errors report the line and column.
pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

pub fn load<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    parse_json(&read_input(path)?, &path.display().to_string())
}
