//! Versioned JSON documents for everything the command line emits.
//!
//! Every document carries a top-level `schema_version` and a `kind` tag.
//! Coefficients travel as decimal strings so arbitrary-precision values
//! survive JSON; term and tableau order is canonical, so serializing the
//! same data twice yields byte-identical output.

use crate::action::{ActionTable, BasisContext, UnitriMatrix};
use crate::basis::TableauVector;
use crate::error::{Error, Result};
use crate::partition::WeightVector;
use crate::poly::{poly_from_terms, CliffordPoly};
use crate::scalar::Scalar;
use crate::tableau::Ssyt;
use crate::verify::{SuiteReport, VerifyOptions};
use serde::de::Error as DeError;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Version stamped into every document this crate writes.
pub const SCHEMA_VERSION: u32 = 1;

/// Rejects documents from a different schema version or of the wrong kind.
fn check_envelope(version: u32, kind: &str, expected: &str) -> Result<()> {
    if version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema version {version} is not the supported {SCHEMA_VERSION}"
        )));
    }
    if kind != expected {
        return Err(Error::Parse(format!(
            "document of kind {kind:?} where {expected:?} was expected"
        )));
    }
    Ok(())
}

/// Serializes any document as pretty JSON with a trailing newline — the
/// exact bytes the command line prints.
pub fn to_json_string<S: Serialize>(value: &S) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Parse(format!("serialization failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Output of `enumerate`: the ordered tableau basis of one weight space.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TableauListDoc {
    pub schema_version: u32,
    pub kind: String,
    pub n: usize,
    pub p: usize,
    pub weight: Vec<u32>,
    pub count: usize,
    pub tableaux: Vec<Ssyt>,
}

impl TableauListDoc {
    pub fn new(mu: &WeightVector, p: usize, tableaux: Vec<Ssyt>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "tableaux".into(),
            n: mu.len(),
            p,
            weight: mu.entries().to_vec(),
            count: tableaux.len(),
            tableaux,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_envelope(self.schema_version, &self.kind, "tableaux")?;
        if self.count != self.tableaux.len() {
            return Err(Error::Parse(format!(
                "count {} disagrees with {} listed tableaux",
                self.count,
                self.tableaux.len()
            )));
        }
        Ok(())
    }
}

/// Output of `vector`: one basis vector as an explicit polynomial, either
/// normalized or scaled back by the column factorial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorDoc<T> {
    pub tableau: Ssyt,
    pub n: usize,
    pub p: usize,
    pub normalized: bool,
    pub zero: bool,
    pub terms: CliffordPoly<T>,
}

impl<T: Scalar> VectorDoc<T> {
    pub fn normalized(v: &TableauVector<T>) -> Self {
        Self {
            tableau: v.label().clone(),
            n: v.n(),
            p: v.p(),
            normalized: true,
            zero: v.is_zero(),
            terms: v.value().clone(),
        }
    }

    pub fn unnormalized(v: &TableauVector<T>) -> Self {
        let terms = v.unnormalized();
        Self {
            tableau: v.label().clone(),
            n: v.n(),
            p: v.p(),
            normalized: false,
            zero: terms.is_zero(),
            terms,
        }
    }
}

impl<T: Scalar> Serialize for VectorDoc<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut doc = s.serialize_struct("VectorDoc", 8)?;
        doc.serialize_field("schema_version", &SCHEMA_VERSION)?;
        doc.serialize_field("kind", "vector")?;
        doc.serialize_field("tableau", &self.tableau)?;
        doc.serialize_field("n", &self.n)?;
        doc.serialize_field("p", &self.p)?;
        doc.serialize_field("normalized", &self.normalized)?;
        doc.serialize_field("zero", &self.zero)?;
        doc.serialize_field("terms", &self.terms)?;
        doc.end()
    }
}

impl<'de, T: Scalar> Deserialize<'de> for VectorDoc<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            schema_version: u32,
            kind: String,
            tableau: Ssyt,
            n: usize,
            p: usize,
            normalized: bool,
            zero: bool,
            terms: serde_json::Value,
        }
        let repr = Repr::deserialize(d)?;
        check_envelope(repr.schema_version, &repr.kind, "vector").map_err(D::Error::custom)?;
        let terms = poly_from_terms::<T>(repr.n, repr.p, &repr.terms).map_err(D::Error::custom)?;
        if repr.zero != terms.is_zero() {
            return Err(D::Error::custom("zero flag disagrees with the term list"));
        }
        Ok(VectorDoc {
            tableau: repr.tableau,
            n: repr.n,
            p: repr.p,
            normalized: repr.normalized,
            zero: repr.zero,
            terms,
        })
    }
}

/// The extraction data behind one expansion: the weight-space tableaux, the
/// unitriangular matrix, the extraction vector, and the solved coordinates.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct ExtractionDoc<T> {
    pub weight: Vec<u32>,
    pub tableaux: Vec<Ssyt>,
    pub matrix: UnitriMatrix<T>,
    pub extraction: Vec<String>,
    pub solution: Vec<String>,
}

impl<T: Scalar> ExtractionDoc<T> {
    pub fn new(ctx: &BasisContext<T>, f: &[T], g: &[T]) -> Self {
        Self {
            weight: ctx.weight().entries().to_vec(),
            tableaux: ctx.tableaux().to_vec(),
            matrix: ctx.matrix().clone(),
            extraction: f.iter().map(ToString::to_string).collect(),
            solution: g.iter().map(ToString::to_string).collect(),
        }
    }
}

/// Output of `act`: one generator table, optionally with the extraction
/// data that produced it, and with the color count for induced-module
/// tables (whose order is unconstrained by the tableaux).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct ActionDoc<T> {
    pub schema_version: u32,
    pub kind: String,
    pub module: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colors: Option<usize>,
    #[serde(flatten)]
    pub table: ActionTable<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extraction: Option<ExtractionDoc<T>>,
}

impl<T: Scalar> ActionDoc<T> {
    pub fn polynomial(table: ActionTable<T>, extraction: Option<ExtractionDoc<T>>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "action".into(),
            module: "polynomial".into(),
            colors: None,
            table,
            extraction,
        }
    }

    pub fn induced(table: ActionTable<T>, n: usize) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "action".into(),
            module: "induced".into(),
            colors: Some(n),
            table,
            extraction: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_envelope(self.schema_version, &self.kind, "action")?;
        if self.module != "polynomial" && self.module != "induced" {
            return Err(Error::Parse(format!("unknown module {:?}", self.module)));
        }
        Ok(())
    }
}

/// Output of `matrix`: the unitriangular change-of-basis matrix of one
/// weight space.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct MatrixDoc<T> {
    pub schema_version: u32,
    pub kind: String,
    pub n: usize,
    pub p: usize,
    pub weight: Vec<u32>,
    pub tableaux: Vec<Ssyt>,
    pub matrix: UnitriMatrix<T>,
}

impl<T: Scalar> MatrixDoc<T> {
    pub fn new(ctx: &BasisContext<T>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "matrix".into(),
            n: ctx.n(),
            p: ctx.p(),
            weight: ctx.weight().entries().to_vec(),
            tableaux: ctx.tableaux().to_vec(),
            matrix: ctx.matrix().clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_envelope(self.schema_version, &self.kind, "matrix")?;
        if self.matrix.size() != self.tableaux.len() {
            return Err(Error::Parse(format!(
                "matrix of size {} against {} tableaux",
                self.matrix.size(),
                self.tableaux.len()
            )));
        }
        Ok(())
    }
}

/// Output of `verify`: the options used and one report per suite.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub schema_version: u32,
    pub kind: String,
    pub passed: bool,
    pub options: VerifyOptions,
    pub reports: Vec<SuiteReport>,
}

impl VerifyDoc {
    pub fn new(options: VerifyOptions, reports: Vec<SuiteReport>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "verification".into(),
            passed: reports.iter().all(SuiteReport::passed),
            options,
            reports,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_envelope(self.schema_version, &self.kind, "verification")
    }
}

/// A persisted weight-space context: the basis vectors together with the
/// matrix they determine, reloadable without recomputing the vectors.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct ContextDoc<T> {
    pub schema_version: u32,
    pub kind: String,
    pub n: usize,
    pub p: usize,
    pub weight: Vec<u32>,
    pub vectors: Vec<TableauVector<T>>,
    pub matrix: UnitriMatrix<T>,
}

impl<T: Scalar> ContextDoc<T> {
    pub fn new(ctx: &BasisContext<T>) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: "context".into(),
            n: ctx.n(),
            p: ctx.p(),
            weight: ctx.weight().entries().to_vec(),
            vectors: ctx.vectors().to_vec(),
            matrix: ctx.matrix().clone(),
        }
    }

    /// Rebuilds the context, recomputing the matrix from the stored vectors
    /// and rejecting the document if it disagrees with the stored copy — a
    /// tampered or corrupted bundle cannot produce silently wrong
    /// expansions.
    pub fn into_context(self) -> Result<BasisContext<T>> {
        check_envelope(self.schema_version, &self.kind, "context")?;
        if self.weight.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "weight of length {} in a {}-color context",
                self.weight.len(),
                self.n
            )));
        }
        let mu = WeightVector::new(self.weight);
        let ctx = BasisContext::from_parts(self.p, mu, self.vectors)?;
        if *ctx.matrix() != self.matrix {
            return Err(Error::Parse(
                "stored matrix disagrees with the one recomputed from the vectors".into(),
            ));
        }
        Ok(ctx)
    }
}
