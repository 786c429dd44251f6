//! Self-describing JSON files. Every file is one object with a `"type"` field.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use ennea_core::baxter::CoalgebraData;
use ennea_core::deformation::BaxterDeformationData;
use ennea_core::graphalg::WeightedDigraph;
use ennea_core::relations::Presentation;
use ennea_core::splitting::{EnneaStructure, TrialgebraStructure};
use ennea_core::{FiniteAlgebra, LinearOperator, Matrix, Scalar, Tensor3};

use crate::error::CliError;

/// `[i, j, k, "p/q"]`: `e_i ◇ e_j ∋ c e_k`, or `Δ(e_i) ∋ c e_j ⊗ e_k`.
pub type Entry = (usize, usize, usize, Scalar);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub dim: usize,
    pub mult: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDoc {
    pub matrix: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoproductDoc {
    pub dim: usize,
    pub delta: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnneaDoc {
    pub dim: usize,
    pub t: Scalar,
    pub ops: BTreeMap<String, Vec<Entry>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialgebraDoc {
    pub dim: usize,
    pub prec: Vec<Entry>,
    pub succ: Vec<Entry>,
    pub circ: Vec<Entry>,
}

/// Data for the Baxter-operator deformations: an algebra, two coproducts and
/// their parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationDoc {
    pub algebra: AlgebraDoc,
    pub delta: Vec<Entry>,
    pub t: Scalar,
    pub delta1: Vec<Entry>,
    pub r1: Scalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Document {
    Algebra(AlgebraDoc),
    Operator(OperatorDoc),
    Coproduct(CoproductDoc),
    Ennea(EnneaDoc),
    Graph(WeightedDigraph),
    Presentation(Presentation),
    Trialgebra(TrialgebraDoc),
    Deformation(DeformationDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Algebra(_) => "algebra",
            Document::Operator(_) => "operator",
            Document::Coproduct(_) => "coproduct",
            Document::Ennea(_) => "ennea",
            Document::Graph(_) => "graph",
            Document::Presentation(_) => "presentation",
            Document::Trialgebra(_) => "trialgebra",
            Document::Deformation(_) => "deformation",
        }
    }
}

pub fn parse_document(text: &str, origin: &str) -> Result<Document, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("{origin}: {e}")))
}

pub fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_document(&text, &path.display().to_string())
}

pub fn write_document(path: &Path, doc: &Document) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc).expect("documents serialize");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

macro_rules! expect_kind {
    ($name:ident, $variant:ident, $ty:ty) => {
        pub fn $name(path: &Path) -> Result<$ty, CliError> {
            match read_document(path)? {
                Document::$variant(d) => Ok(d),
                other => Err(CliError::Input(format!("{}: expected type {:?}, found {:?}", path.display(), stringify!($name).trim_start_matches("read_"), other.kind()))),
            }
        }
    };
}

expect_kind!(read_algebra, Algebra, AlgebraDoc);
expect_kind!(read_operator, Operator, OperatorDoc);
expect_kind!(read_coproduct, Coproduct, CoproductDoc);
expect_kind!(read_ennea, Ennea, EnneaDoc);
expect_kind!(read_graph, Graph, WeightedDigraph);
expect_kind!(read_presentation, Presentation, Presentation);
expect_kind!(read_trialgebra, Trialgebra, TrialgebraDoc);
expect_kind!(read_deformation, Deformation, DeformationDoc);

pub fn tensor(dim: usize, entries: &[Entry]) -> Result<Tensor3, CliError> {
    Ok(Tensor3::from_entries(dim, entries.iter().cloned())?)
}

pub fn entries(t: &Tensor3) -> Vec<Entry> {
    t.entries().map(|(i, j, k, c)| (i, j, k, c.clone())).collect()
}

impl AlgebraDoc {
    pub fn build(&self) -> Result<FiniteAlgebra, CliError> {
        Ok(FiniteAlgebra::new(tensor(self.dim, &self.mult)?, self.unit.clone(), self.labels.clone())?)
    }

    pub fn from_algebra(a: &FiniteAlgebra) -> Self {
        AlgebraDoc { dim: a.dim(), mult: entries(&a.mult), unit: a.unit.clone(), labels: a.labels.clone() }
    }
}

impl OperatorDoc {
    pub fn build(&self) -> Result<LinearOperator, CliError> {
        Ok(LinearOperator::new(Matrix::from_rows(self.matrix.clone())?)?)
    }
}

impl CoproductDoc {
    pub fn build(&self) -> Result<CoalgebraData, CliError> {
        Ok(CoalgebraData::from_entries(self.dim, self.delta.iter().cloned())?)
    }

    pub fn from_coalgebra(c: &CoalgebraData) -> Self {
        CoproductDoc { dim: c.dim, delta: c.entries() }
    }
}

impl EnneaDoc {
    pub fn build(&self) -> Result<EnneaStructure, CliError> {
        let ops = self.ops.iter().map(|(k, v)| Ok((k.clone(), tensor(self.dim, v)?))).collect::<Result<BTreeMap<_, _>, CliError>>()?;
        Ok(EnneaStructure::from_ops(self.dim, self.t.clone(), &ops)?)
    }

    pub fn from_ennea(e: &EnneaStructure) -> Self {
        let ops = e.ops().iter().map(|(k, v)| (k.clone(), entries(v))).collect();
        EnneaDoc { dim: e.dim(), t: e.t.clone(), ops }
    }
}

impl TrialgebraDoc {
    pub fn build(&self) -> Result<TrialgebraStructure, CliError> {
        let n = self.dim;
        Ok(TrialgebraStructure::new(tensor(n, &self.prec)?, tensor(n, &self.succ)?, tensor(n, &self.circ)?)?)
    }

    pub fn from_trialgebra(s: &TrialgebraStructure) -> Self {
        TrialgebraDoc { dim: s.dim(), prec: entries(&s.prec), succ: entries(&s.succ), circ: entries(&s.circ) }
    }
}

impl DeformationDoc {
    pub fn build(&self) -> Result<BaxterDeformationData, CliError> {
        let alg = self.algebra.build()?;
        let n = alg.dim();
        Ok(BaxterDeformationData {
            delta: CoalgebraData::from_entries(n, self.delta.iter().cloned())?,
            delta1: CoalgebraData::from_entries(n, self.delta1.iter().cloned())?,
            alg,
            t: self.t.clone(),
            r1: self.r1.clone(),
        })
    }
}
