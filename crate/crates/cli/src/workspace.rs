//! The workspace document: field, algebras, morphisms, bimodules, tasks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    #[default]
    Rational,
    Prime(u32),
}

impl FromStr for FieldSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "q" | "Q" => Ok(FieldSpec::Rational),
            t => {
                let p = t
                    .strip_prefix("p=")
                    .and_then(|n| n.trim().parse::<u32>().ok())
                    .ok_or_else(|| format!("field must be \"q\" or \"p=<prime>\", got {s:?}"))?;
                if !is_prime(p) {
                    return Err(format!("{p} is not prime"));
                }
                Ok(FieldSpec::Prime(p))
            }
        }
    }
}

fn is_prime(p: u32) -> bool {
    p < (1 << 31) && gvbimod::scalar::is_prime(p)
}

impl TryFrom<String> for FieldSpec {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "p={p}"),
        }
    }
}

/// A scalar written as an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Int(n) => write!(f, "{n}"),
            Num::Text(s) => write!(f, "{s}"),
        }
    }
}

pub type NumMatrix = Vec<Vec<Num>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Workspace {
    #[serde(default)]
    pub field: FieldSpec,
    #[serde(default)]
    pub algebras: Vec<AlgebraDef>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDef>,
    #[serde(default)]
    pub bimodules: Vec<BimoduleDef>,
    #[serde(default)]
    pub tasks: Vec<TaskDef>,
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("workspace serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDef {
    pub name: String,
    #[serde(flatten)]
    pub source: AlgebraSource,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraSource {
    Builtin(BuiltinAlgebra),
    Explicit(ExplicitAlgebra),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BuiltinAlgebra {
    GroundField,
    DualNumbers,
    A3,
    TruncatedPolynomial(usize),
    MatrixAlgebra(usize),
    UpperTriangular(usize),
}

/// Structure constants as sparse `[i, j, k, c]` entries meaning
/// `e_i e_j` has coefficient `c` at `e_k`. The unit defaults to `e_0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitAlgebra {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Num>>,
    pub products: Vec<(usize, usize, usize, Num)>,
}

/// An algebra morphism; without a matrix it is the unit inclusion of a
/// one-dimensional source.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDef {
    pub name: String,
    pub source: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<NumMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BimoduleDef {
    pub name: String,
    #[serde(flatten)]
    pub source: BimoduleSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindDef {
    #[default]
    Tensor,
    Cotensor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideDef {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BimoduleSource {
    /// The regular bimodule of the named algebra.
    Regular(String),
    /// The one-dimensional simple bimodule of a local algebra.
    Simple(String),
    /// The linear dual of the named bimodule.
    Dual(String),
    Zero { left: String, right: String },
    DirectSum(Vec<String>),
    Tensor {
        left: String,
        right: String,
        #[serde(default)]
        kind: KindDef,
    },
    Twist { module: String, morphism: String, side: SideDef },
    Restrict { module: String, morphism: String },
    Induce { module: String, morphism: String },
    Coinduce { module: String, morphism: String },
    Explicit {
        left: String,
        right: String,
        dim: usize,
        left_actions: Vec<NumMatrix>,
        right_actions: Vec<NumMatrix>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantDef {
    #[default]
    Plain,
    Tilde,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Operation {
    Validate { target: String },
    Radical { algebra: String },
    Describe { module: String },
    Socle { module: String, side: SideDef },
    HomSpace { source: String, target: String },
    Isomorphic { left: String, right: String },
    Projectivity { module: String },
    Tensor {
        left: String,
        right: String,
        #[serde(default)]
        kind: KindDef,
    },
    InternalHom { side: SideDef, source: String, target: String },
    Varpi { x: String, y: String },
    Distributor {
        side: SideDef,
        args: [String; 3],
        #[serde(default)]
        variant: VariantDef,
    },
    Pentagons { args: [String; 4] },
    Triangles { args: [String; 2] },
    Strongness { module: String, corpus: Vec<String> },
    Flatness { module: String, sequences_from: Vec<String> },
    FlatnessImplications { args: [String; 3], sequences_from: Vec<String> },
    Adjunctions { morphism: String, module: String, other: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaskDef {
    #[serde(flatten)]
    pub op: Operation,
    /// Name under which a bimodule result is made available to later tasks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bind: Option<String>,
    /// Expected values, keyed by dotted paths into the result.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, serde_json::Value>,
}
