//! JSON documents for complexes, coalgebras, comodules, maps and squares.
//!
//! Every document carries a `kind`. Scalars are strings (`"3/4"`, `"-2"`,
//! or a residue over `F_p`); degree tables are objects keyed by degree.
//!
//! * `complex`: `field` (`"q"` or `"fp:<p>"`), optional `non_negative`,
//!   `dims` (degree to dimension) and `differentials`, where degree `n`
//!   lists `[row, col, scalar]` entries of `d_n : X_n → X_{n-1}`.
//! * `coalgebra`: a `complex` plus `comultiplication` entries
//!   `[k, i, j, s]` meaning `Δ(x_k)` contains `s·x_i ⊗ x_j`, and `counit`
//!   entries `[i, s]` over the degree-0 basis. `k`, `i`, `j` are global
//!   indices: basis vectors numbered through the degrees in increasing
//!   order.
//! * `comodule`: a `coalgebra` (inline, or a path relative to the
//!   document), a `complex`, and `coaction` entries `[k, i, j, s]` meaning
//!   `ρ(m_k)` contains `s·m_i ⊗ c_j`.
//! * `chain_map`, `coalgebra_map`, `comodule_map`: `source` and `target`
//!   (inline or paths) and `components` keyed by degree, as triplets.
//! * `square`: `left`, `right`, `top`, `bottom` maps of one kind, with
//!   `right ∘ top = bottom ∘ left`.
//!
//! Parsing checks shapes only; the laws are left to the checkers, so a
//! malformed object can still be loaded and reported on.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::coalg::coalgebra::{Coalgebra, CoalgebraMap};
use crate::comod::comodule::{Comodule, ComoduleMap};
use crate::error::{Error, Result};
use crate::exactla::complex::{ChainComplex, ChainMap, Degree};
use crate::exactla::field::Field;
use crate::exactla::linalg::Matrix;
use crate::exactla::tensor::TensorLayout;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Complex,
    Coalgebra,
    Comodule,
    ChainMap,
    CoalgebraMap,
    ComoduleMap,
    Square,
}

pub type Triplet = (usize, usize, String);
pub type Quad = (usize, usize, usize, String);

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub kind: Kind,
    pub field: String,
    #[serde(default, skip_serializing_if = "is_false")]
    pub non_negative: bool,
    pub dims: BTreeMap<Degree, usize>,
    #[serde(default)]
    pub differentials: BTreeMap<Degree, Vec<Triplet>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoalgebraDoc {
    pub kind: Kind,
    pub complex: ComplexDoc,
    pub comultiplication: Vec<Quad>,
    pub counit: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComoduleDoc {
    pub kind: Kind,
    pub coalgebra: Embedded<CoalgebraDoc>,
    pub complex: ComplexDoc,
    pub coaction: Vec<Quad>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub kind: Kind,
    pub source: Embedded<Value>,
    pub target: Embedded<Value>,
    #[serde(default)]
    pub components: BTreeMap<Degree, Vec<Triplet>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareDoc {
    pub kind: Kind,
    pub left: Embedded<MapDoc>,
    pub right: Embedded<MapDoc>,
    pub top: Embedded<MapDoc>,
    pub bottom: Embedded<MapDoc>,
}

/// A nested document, either inline or as a path string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Embedded<T> {
    Path(String),
    Inline(Box<T>),
}

impl<T: Serialize> Serialize for Embedded<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Embedded::Path(p) => s.serialize_str(p),
            Embedded::Inline(t) => t.serialize(s),
        }
    }
}

impl<'de, T: DeserializeOwned> Deserialize<'de> for Embedded<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(p) => Ok(Embedded::Path(p)),
            v => serde_json::from_value(v)
                .map(|t| Embedded::Inline(Box::new(t)))
                .map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SquareMaps<M> {
    pub left: M,
    pub right: M,
    pub top: M,
    pub bottom: M,
}

/// Anything a document can hold.
#[derive(Clone, Debug)]
pub enum Object {
    Complex(ChainComplex),
    Coalgebra(Coalgebra),
    Comodule(Comodule),
    ChainMap(ChainMap),
    CoalgebraMap(CoalgebraMap),
    ComoduleMap(ComoduleMap),
    ChainSquare(SquareMaps<ChainMap>),
    CoalgebraSquare(SquareMaps<CoalgebraMap>),
    ComoduleSquare(SquareMaps<ComoduleMap>),
}

impl Object {
    pub fn kind(&self) -> Kind {
        match self {
            Object::Complex(_) => Kind::Complex,
            Object::Coalgebra(_) => Kind::Coalgebra,
            Object::Comodule(_) => Kind::Comodule,
            Object::ChainMap(_) => Kind::ChainMap,
            Object::CoalgebraMap(_) => Kind::CoalgebraMap,
            Object::ComoduleMap(_) => Kind::ComoduleMap,
            Object::ChainSquare(_) | Object::CoalgebraSquare(_) | Object::ComoduleSquare(_) => {
                Kind::Square
            }
        }
    }
}

fn format_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn expect_kind(found: Kind, wanted: Kind) -> Result<()> {
    if found != wanted {
        return Err(format_err(format!(
            "expected a {wanted:?} document, found {found:?}"
        )));
    }
    Ok(())
}

// ---- emitting ----

fn triplets(field: Field, m: &Matrix) -> Vec<Triplet> {
    m.triplets()
        .map(|(r, c, v)| (r, c, field.format(v)))
        .collect()
}

pub fn complex_doc(x: &ChainComplex) -> ComplexDoc {
    let field = x.field();
    ComplexDoc {
        kind: Kind::Complex,
        field: field.to_string(),
        non_negative: x.is_non_negative(),
        dims: x.dims().clone(),
        differentials: x
            .nonzero_differentials()
            .iter()
            .map(|(n, d)| (*n, triplets(field, d)))
            .collect(),
    }
}

/// `(k, i, j, s)` entries of a map `X → Y ⊗ Z` in global indices.
fn structure_constants(f: &ChainMap, y: &ChainComplex, z: &ChainComplex) -> Vec<Quad> {
    let field = f.field();
    let layout = TensorLayout::of(y, z);
    let x = f.source();
    let mut out = Vec::new();
    for (n, m) in f.nonzero_components() {
        for (row, col, v) in m.triplets() {
            let (p, i, j) = layout.split(*n, row);
            out.push((
                x.global_index(*n, col),
                y.global_index(p, i),
                z.global_index(n - p, j),
                field.format(v),
            ));
        }
    }
    out.sort();
    out
}

pub fn coalgebra_doc(c: &Coalgebra) -> CoalgebraDoc {
    let field = c.field();
    let counit = c.counit().component(0);
    CoalgebraDoc {
        kind: Kind::Coalgebra,
        complex: complex_doc(c.carrier()),
        comultiplication: structure_constants(c.delta(), c.carrier(), c.carrier()),
        counit: counit
            .triplets()
            .map(|(_, i, v)| (i, field.format(v)))
            .collect(),
    }
}

pub fn comodule_doc(m: &Comodule) -> ComoduleDoc {
    ComoduleDoc {
        kind: Kind::Comodule,
        coalgebra: Embedded::Inline(Box::new(coalgebra_doc(m.coalgebra()))),
        complex: complex_doc(m.carrier()),
        coaction: structure_constants(m.coaction(), m.carrier(), m.coalgebra().carrier()),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("documents serialize")
}

fn map_doc(kind: Kind, f: &ChainMap, source: Value, target: Value) -> MapDoc {
    MapDoc {
        kind,
        source: Embedded::Inline(Box::new(source)),
        target: Embedded::Inline(Box::new(target)),
        components: f
            .nonzero_components()
            .iter()
            .map(|(n, m)| (*n, triplets(f.field(), m)))
            .collect(),
    }
}

pub fn chain_map_doc(f: &ChainMap) -> MapDoc {
    map_doc(
        Kind::ChainMap,
        f,
        to_value(&complex_doc(f.source())),
        to_value(&complex_doc(f.target())),
    )
}

pub fn coalgebra_map_doc(f: &CoalgebraMap) -> MapDoc {
    map_doc(
        Kind::CoalgebraMap,
        f.underlying(),
        to_value(&coalgebra_doc(f.source())),
        to_value(&coalgebra_doc(f.target())),
    )
}

pub fn comodule_map_doc(f: &ComoduleMap) -> MapDoc {
    map_doc(
        Kind::ComoduleMap,
        f.underlying(),
        to_value(&comodule_doc(f.source())),
        to_value(&comodule_doc(f.target())),
    )
}

fn square_doc<M>(sq: &SquareMaps<M>, doc: impl Fn(&M) -> MapDoc) -> SquareDoc {
    let e = |m: &M| Embedded::Inline(Box::new(doc(m)));
    SquareDoc {
        kind: Kind::Square,
        left: e(&sq.left),
        right: e(&sq.right),
        top: e(&sq.top),
        bottom: e(&sq.bottom),
    }
}

/// The document for any object, as a JSON value.
pub fn to_document(obj: &Object) -> Value {
    match obj {
        Object::Complex(x) => to_value(&complex_doc(x)),
        Object::Coalgebra(c) => to_value(&coalgebra_doc(c)),
        Object::Comodule(m) => to_value(&comodule_doc(m)),
        Object::ChainMap(f) => to_value(&chain_map_doc(f)),
        Object::CoalgebraMap(f) => to_value(&coalgebra_map_doc(f)),
        Object::ComoduleMap(f) => to_value(&comodule_map_doc(f)),
        Object::ChainSquare(sq) => to_value(&square_doc(sq, chain_map_doc)),
        Object::CoalgebraSquare(sq) => to_value(&square_doc(sq, coalgebra_map_doc)),
        Object::ComoduleSquare(sq) => to_value(&square_doc(sq, comodule_map_doc)),
    }
}

/// Pretty-printed document text with a trailing newline.
pub fn emit(obj: &Object) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(obj)).expect("documents serialize");
    s.push('\n');
    s
}

// ---- parsing ----

/// Resolves path references relative to a base directory.
#[derive(Clone, Debug, Default)]
pub struct Loader {
    base: Option<PathBuf>,
}

fn matrix(field: Field, rows: usize, cols: usize, entries: &[Triplet]) -> Result<Matrix> {
    let t = entries
        .iter()
        .map(|(r, c, s)| Ok((*r, *c, field.parse(s)?)))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_triplets(field, rows, cols, t)
}

/// `(degree, index)` of a global index.
fn locate(x: &ChainComplex, k: usize, what: &str) -> Result<(Degree, usize)> {
    x.from_global(k)
        .ok_or_else(|| format_err(format!("{what} index {k} out of range")))
}

fn from_constants(
    field: Field,
    x: &ChainComplex,
    y: &ChainComplex,
    z: &ChainComplex,
    entries: &[Quad],
    what: &str,
) -> Result<BTreeMap<Degree, Matrix>> {
    let layout = TensorLayout::of(y, z);
    let mut per: BTreeMap<Degree, Vec<(usize, usize, crate::exactla::field::Scalar)>> =
        BTreeMap::new();
    for (k, i, j, s) in entries {
        let (n, col) = locate(x, *k, what)?;
        let (p, a) = locate(y, *i, what)?;
        let (q, b) = locate(z, *j, what)?;
        if p + q != n {
            return Err(format_err(format!(
                "{what} entry ({k}, {i}, {j}) does not preserve degree"
            )));
        }
        per.entry(n)
            .or_default()
            .push((layout.index(p, a, q, b), col, field.parse(s)?));
    }
    let dims = layout.dims();
    per.into_iter()
        .map(|(n, t)| {
            Ok((
                n,
                Matrix::from_triplets(field, dims.get(&n).copied().unwrap_or(0), x.dim(n), t)?,
            ))
        })
        .collect()
}

impl Loader {
    pub fn new(base: Option<&Path>) -> Self {
        Loader {
            base: base.map(Path::to_path_buf),
        }
    }

    /// A loader for a document stored at `path`.
    pub fn for_file(path: &Path) -> Self {
        Loader::new(path.parent())
    }

    fn resolve<T: DeserializeOwned + Clone>(&self, e: &Embedded<T>) -> Result<(T, Loader)> {
        match e {
            Embedded::Inline(t) => Ok(((**t).clone(), self.clone())),
            Embedded::Path(p) => {
                let path = match &self.base {
                    Some(b) => b.join(p),
                    None => PathBuf::from(p),
                };
                let text = std::fs::read_to_string(&path)?;
                Ok((serde_json::from_str(&text)?, Loader::for_file(&path)))
            }
        }
    }

    pub fn complex(&self, doc: &ComplexDoc) -> Result<ChainComplex> {
        expect_kind(doc.kind, Kind::Complex)?;
        let field: Field = doc.field.parse()?;
        let dim = |n: Degree| doc.dims.get(&n).copied().unwrap_or(0);
        let diffs = doc
            .differentials
            .iter()
            .map(|(n, t)| Ok((*n, matrix(field, dim(n - 1), dim(*n), t)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let x = ChainComplex::assemble(field, doc.dims.clone(), diffs)?;
        if doc.non_negative {
            x.non_negative()
        } else {
            Ok(x)
        }
    }

    pub fn coalgebra(&self, doc: &CoalgebraDoc) -> Result<Coalgebra> {
        expect_kind(doc.kind, Kind::Coalgebra)?;
        let x = self.complex(&doc.complex)?;
        let field = x.field();
        let delta = from_constants(field, &x, &x, &x, &doc.comultiplication, "comultiplication")?;
        let counit = doc
            .counit
            .iter()
            .map(|(i, s)| Ok((0, *i, field.parse(s)?)))
            .collect::<Result<Vec<_>>>()?;
        let counit = Matrix::from_triplets(field, 1, x.dim(0), counit)?;
        Coalgebra::assemble(x, delta, BTreeMap::from([(0, counit)]))
    }

    pub fn comodule(&self, doc: &ComoduleDoc) -> Result<Comodule> {
        expect_kind(doc.kind, Kind::Comodule)?;
        let (cdoc, sub) = self.resolve(&doc.coalgebra)?;
        let c = sub.coalgebra(&cdoc)?;
        let m = self.complex(&doc.complex)?;
        if m.field() != c.field() {
            return Err(Error::FieldMismatch(m.field(), c.field()));
        }
        let rho = from_constants(m.field(), &m, &m, c.carrier(), &doc.coaction, "coaction")?;
        Comodule::assemble(c, m, rho)
    }

    fn components(&self, doc: &MapDoc, s: &ChainComplex, t: &ChainComplex) -> Result<ChainMap> {
        let field = s.field();
        let comps = doc
            .components
            .iter()
            .map(|(n, e)| Ok((*n, matrix(field, t.dim(*n), s.dim(*n), e)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        ChainMap::graded(s.clone(), t.clone(), comps)
    }

    fn end<T: DeserializeOwned>(&self, e: &Embedded<Value>) -> Result<(T, Loader)> {
        let (v, sub) = self.resolve(e)?;
        Ok((serde_json::from_value(v)?, sub))
    }

    pub fn map(&self, doc: &MapDoc) -> Result<Object> {
        match doc.kind {
            Kind::ChainMap => {
                let (s, ls) = self.end::<ComplexDoc>(&doc.source)?;
                let (t, lt) = self.end::<ComplexDoc>(&doc.target)?;
                let (s, t) = (ls.complex(&s)?, lt.complex(&t)?);
                Ok(Object::ChainMap(self.components(doc, &s, &t)?))
            }
            Kind::CoalgebraMap => {
                let (s, ls) = self.end::<CoalgebraDoc>(&doc.source)?;
                let (t, lt) = self.end::<CoalgebraDoc>(&doc.target)?;
                let (s, t) = (ls.coalgebra(&s)?, lt.coalgebra(&t)?);
                let u = self.components(doc, s.carrier(), t.carrier())?;
                Ok(Object::CoalgebraMap(CoalgebraMap::assemble(s, t, u)?))
            }
            Kind::ComoduleMap => {
                let (s, ls) = self.end::<ComoduleDoc>(&doc.source)?;
                let (t, lt) = self.end::<ComoduleDoc>(&doc.target)?;
                let (s, t) = (ls.comodule(&s)?, lt.comodule(&t)?);
                let u = self.components(doc, s.carrier(), t.carrier())?;
                Ok(Object::ComoduleMap(ComoduleMap::assemble(s, t, u)?))
            }
            k => Err(format_err(format!("expected a map document, found {k:?}"))),
        }
    }

    pub fn square(&self, doc: &SquareDoc) -> Result<Object> {
        expect_kind(doc.kind, Kind::Square)?;
        let mut maps = Vec::new();
        for e in [&doc.left, &doc.right, &doc.top, &doc.bottom] {
            let (m, sub) = self.resolve(e)?;
            maps.push(sub.map(&m)?);
        }
        let [l, r, t, b]: [Object; 4] = maps.try_into().expect("four maps");
        match (l, r, t, b) {
            (
                Object::ChainMap(left),
                Object::ChainMap(right),
                Object::ChainMap(top),
                Object::ChainMap(bottom),
            ) => Ok(Object::ChainSquare(SquareMaps {
                left,
                right,
                top,
                bottom,
            })),
            (
                Object::CoalgebraMap(left),
                Object::CoalgebraMap(right),
                Object::CoalgebraMap(top),
                Object::CoalgebraMap(bottom),
            ) => Ok(Object::CoalgebraSquare(SquareMaps {
                left,
                right,
                top,
                bottom,
            })),
            (
                Object::ComoduleMap(left),
                Object::ComoduleMap(right),
                Object::ComoduleMap(top),
                Object::ComoduleMap(bottom),
            ) => Ok(Object::ComoduleSquare(SquareMaps {
                left,
                right,
                top,
                bottom,
            })),
            _ => Err(format_err(
                "the four maps of a square must have the same kind",
            )),
        }
    }

    /// Parses any document.
    pub fn object(&self, v: Value) -> Result<Object> {
        let kind: Kind = serde_json::from_value(
            v.get("kind")
                .cloned()
                .ok_or_else(|| format_err("document has no \"kind\""))?,
        )?;
        match kind {
            Kind::Complex => Ok(Object::Complex(self.complex(&serde_json::from_value(v)?)?)),
            Kind::Coalgebra => Ok(Object::Coalgebra(
                self.coalgebra(&serde_json::from_value(v)?)?,
            )),
            Kind::Comodule => Ok(Object::Comodule(
                self.comodule(&serde_json::from_value(v)?)?,
            )),
            Kind::ChainMap | Kind::CoalgebraMap | Kind::ComoduleMap => {
                self.map(&serde_json::from_value(v)?)
            }
            Kind::Square => self.square(&serde_json::from_value(v)?),
        }
    }
}

pub fn parse(text: &str, base: Option<&Path>) -> Result<Object> {
    Loader::new(base).object(serde_json::from_str(text)?)
}

pub fn read(path: &Path) -> Result<Object> {
    let text = std::fs::read_to_string(path)?;
    Loader::for_file(path).object(serde_json::from_str(&text)?)
}

/// Writes `obj` to `path`, creating parent directories.
pub fn write(path: &Path, obj: &Object) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, emit(obj))?;
    Ok(())
}
