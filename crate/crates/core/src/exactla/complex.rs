//! Finitely supported chain complexes over a field and chain maps between
//! them. Grading is homological: `d_n : X_n → X_{n−1}`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exactla::field::{Field, Scalar};
use crate::exactla::linalg::{Matrix, SparseVec};

pub type Degree = i32;

/// A chain complex with finite support.
///
/// Equality compares field, dimensions and differentials; the
/// non-negative flag is a membership tag and does not take part.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: Field,
    dims: BTreeMap<Degree, usize>,
    diffs: BTreeMap<Degree, Matrix>,
    non_negative: bool,
}

impl PartialEq for ChainComplex {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.dims == other.dims && self.diffs == other.diffs
    }
}

impl Eq for ChainComplex {}

impl ChainComplex {
    /// Validating constructor: shapes, fields and `d ∘ d = 0`.
    pub fn new(
        field: Field,
        dims: BTreeMap<Degree, usize>,
        diffs: BTreeMap<Degree, Matrix>,
    ) -> Result<Self> {
        let c = Self::assemble(field, dims, diffs)?;
        if let Some(n) = c.square_failure() {
            return Err(Error::NotAComplex(n));
        }
        Ok(c)
    }

    /// Shapes and fields only; `d ∘ d` is not checked.
    pub(crate) fn assemble(
        field: Field,
        dims: BTreeMap<Degree, usize>,
        diffs: BTreeMap<Degree, Matrix>,
    ) -> Result<Self> {
        let dims: BTreeMap<Degree, usize> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        let dim = |n: Degree| dims.get(&n).copied().unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (n, d) in diffs {
            if d.field() != field {
                return Err(Error::FieldMismatch(field, d.field()));
            }
            if d.rows() != dim(n - 1) || d.cols() != dim(n) {
                return Err(Error::Shape(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dim(n - 1),
                    dim(n)
                )));
            }
            if !d.is_zero() {
                kept.insert(n, d);
            }
        }
        Ok(ChainComplex {
            field,
            dims,
            diffs: kept,
            non_negative: false,
        })
    }

    /// Degree `n` at which `d_{n−1} ∘ d_n ≠ 0`, if any.
    pub fn square_failure(&self) -> Option<Degree> {
        self.diffs.iter().find_map(|(n, d)| {
            let below = self.diffs.get(&(n - 1))?;
            (!below.mul(d).is_zero()).then_some(*n)
        })
    }

    /// Marks the complex as living in non-negatively graded complexes.
    pub fn non_negative(mut self) -> Result<Self> {
        if let Some((&n, _)) = self.dims.iter().find(|(n, _)| **n < 0) {
            return Err(Error::NegativeDegree(n));
        }
        self.non_negative = true;
        Ok(self)
    }

    pub fn is_non_negative(&self) -> bool {
        self.non_negative
    }

    pub(crate) fn with_flag(mut self, flag: bool) -> Self {
        self.non_negative = flag && self.dims.keys().all(|n| *n >= 0);
        self
    }

    pub fn zero(field: Field) -> Self {
        ChainComplex {
            field,
            dims: BTreeMap::new(),
            diffs: BTreeMap::new(),
            non_negative: false,
        }
    }

    /// The monoidal unit `I`: the field in degree 0.
    pub fn unit(field: Field) -> Self {
        Self::concentrated(field, 0, 1)
    }

    /// `k^dim` in a single degree with zero differential.
    pub fn concentrated(field: Field, degree: Degree, dim: usize) -> Self {
        let mut dims = BTreeMap::new();
        dims.insert(degree, dim);
        Self::assemble(field, dims, BTreeMap::new()).expect("valid")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &BTreeMap<Degree, usize> {
        &self.dims
    }

    pub fn dim(&self, n: Degree) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn degrees(&self) -> impl Iterator<Item = Degree> + '_ {
        self.dims.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// `d_n : X_n → X_{n−1}` (zero matrix when absent).
    pub fn differential(&self, n: Degree) -> Matrix {
        self.diffs
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field, self.dim(n - 1), self.dim(n)))
    }

    pub fn nonzero_differentials(&self) -> &BTreeMap<Degree, Matrix> {
        &self.diffs
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .map(|(n, d)| {
                if n.rem_euclid(2) == 0 {
                    *d as i64
                } else {
                    -(*d as i64)
                }
            })
            .sum()
    }

    /// Position of basis vector `(n, i)` in the global order: degrees
    /// ascending, then index.
    pub fn global_index(&self, n: Degree, i: usize) -> usize {
        self.dims.range(..n).map(|(_, d)| d).sum::<usize>() + i
    }

    pub fn from_global(&self, mut k: usize) -> Option<(Degree, usize)> {
        for (&n, &d) in &self.dims {
            if k < d {
                return Some((n, k));
            }
            k -= d;
        }
        None
    }

    /// Every basis vector `(degree, index)` in global order.
    pub fn basis(&self) -> impl Iterator<Item = (Degree, usize)> + '_ {
        self.dims
            .iter()
            .flat_map(|(&n, &d)| (0..d).map(move |i| (n, i)))
    }

    /// Re-expresses the complex in a new basis: `P_n` maps old coordinates
    /// to new ones, so `d'_n = P_{n−1} d_n P_n^{-1}`.
    pub fn transport(&self, change: &BTreeMap<Degree, (Matrix, Matrix)>) -> Result<ChainComplex> {
        let mut diffs = BTreeMap::new();
        for (n, d) in &self.diffs {
            let p_below = &change[&(n - 1)].0;
            let p_inv = &change[n].1;
            diffs.insert(*n, p_below.mul(d).mul(p_inv));
        }
        Ok(ChainComplex::new(self.field, self.dims.clone(), diffs)?.with_flag(self.non_negative))
    }

    pub(crate) fn union_degrees<'a>(
        xs: impl IntoIterator<Item = &'a ChainComplex>,
    ) -> BTreeSet<Degree> {
        xs.into_iter()
            .flat_map(|x| x.dims.keys().copied())
            .collect()
    }
}

/// A homogeneous element: a sparse coordinate vector in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub degree: Degree,
    pub coords: SparseVec,
}

impl Element {
    pub fn new(degree: Degree, coords: SparseVec) -> Self {
        Element { degree, coords }
    }

    pub fn basis(field: Field, degree: Degree, index: usize) -> Self {
        Element {
            degree,
            coords: vec![(index, field.one())],
        }
    }
}

/// A degree-0 map of graded spaces between two complexes.
///
/// Constructed through [`ChainMap::new`] it is a chain map; through
/// [`ChainMap::graded`] commutation with the differentials is not enforced,
/// which lets checkers report on candidate structure maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    components: BTreeMap<Degree, Matrix>,
}

impl ChainMap {
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<Degree, Matrix>,
    ) -> Result<Self> {
        let f = Self::graded(source, target, components)?;
        if let Some(n) = f.commutation_failure() {
            return Err(Error::NotAChainMap(n));
        }
        Ok(f)
    }

    pub fn graded(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<Degree, Matrix>,
    ) -> Result<Self> {
        if source.field != target.field {
            return Err(Error::FieldMismatch(source.field, target.field));
        }
        let mut kept = BTreeMap::new();
        for (n, m) in components {
            if m.field() != source.field {
                return Err(Error::FieldMismatch(source.field, m.field()));
            }
            if m.rows() != target.dim(n) || m.cols() != source.dim(n) {
                return Err(Error::Shape(format!(
                    "component {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(n),
                    source.dim(n)
                )));
            }
            if !m.is_zero() {
                kept.insert(n, m);
            }
        }
        Ok(ChainMap {
            source,
            target,
            components: kept,
        })
    }

    /// For maps known to be well formed by construction.
    pub(crate) fn raw(
        source: ChainComplex,
        target: ChainComplex,
        components: BTreeMap<Degree, Matrix>,
    ) -> Self {
        let f = Self::graded(source, target, components).expect("well-formed map");
        debug_assert_eq!(
            f.commutation_failure(),
            None,
            "constructed map is not a chain map"
        );
        f
    }

    pub fn identity(x: &ChainComplex) -> Self {
        let comps = x
            .dims
            .iter()
            .map(|(n, d)| (*n, Matrix::identity(x.field, *d)))
            .collect();
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            components: comps,
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            components: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.source.field
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn component(&self, n: Degree) -> Matrix {
        self.components
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.field(), self.target.dim(n), self.source.dim(n)))
    }

    pub fn nonzero_components(&self) -> &BTreeMap<Degree, Matrix> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Degree `n` where `d_n f_n ≠ f_{n−1} d_n`, if any.
    pub fn commutation_failure(&self) -> Option<Degree> {
        let degrees = ChainComplex::union_degrees([&self.source, &self.target]);
        degrees.into_iter().find(|&n| {
            let lhs = self.target.differential(n).mul(&self.component(n));
            let rhs = self.component(n - 1).mul(&self.source.differential(n));
            lhs != rhs
        })
    }

    pub fn is_chain_map(&self) -> bool {
        self.commutation_failure().is_none()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ChainMap) -> Result<ChainMap> {
        if inner.target != self.source {
            return Err(Error::Shape(
                "composition: target of inner map is not the source".into(),
            ));
        }
        let mut comps = BTreeMap::new();
        for (n, g) in &inner.components {
            if let Some(f) = self.components.get(n) {
                comps.insert(*n, f.mul(g));
            }
        }
        Ok(
            ChainMap::graded(inner.source.clone(), self.target.clone(), comps)
                .expect("shapes agree"),
        )
    }

    fn same_ends(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape(
                "maps have different sources or targets".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.combine(other, &self.field().one())
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.combine(other, &self.field().neg(&self.field().one()))
    }

    /// `self + s·other`.
    pub fn combine(&self, other: &ChainMap, s: &Scalar) -> Result<ChainMap> {
        self.same_ends(other)?;
        let degrees: BTreeSet<Degree> = self
            .components
            .keys()
            .chain(other.components.keys())
            .copied()
            .collect();
        let comps = degrees
            .into_iter()
            .map(|n| (n, self.component(n).combine(&other.component(n), s)))
            .collect();
        ChainMap::graded(self.source.clone(), self.target.clone(), comps)
    }

    pub fn scale(&self, s: &Scalar) -> ChainMap {
        let comps = self
            .components
            .iter()
            .map(|(n, m)| (*n, m.scale(s)))
            .collect();
        ChainMap::graded(self.source.clone(), self.target.clone(), comps).expect("shapes agree")
    }

    /// First basis vector `(degree, index)` of the source on which the two
    /// maps disagree.
    pub fn first_difference(&self, other: &ChainMap) -> Option<(Degree, usize)> {
        let degrees = ChainComplex::union_degrees([&self.source, &other.source]);
        for n in degrees {
            let a = self.component(n);
            let b = other.component(n);
            if a.rows() != b.rows() || a.cols() != b.cols() {
                return Some((n, 0));
            }
            let diff = a.sub(&b);
            if let Some(c) = diff.triplets().map(|(_, c, _)| c).min() {
                return Some((n, c));
            }
        }
        None
    }

    /// Same components, regarded between other (equal-dimensional) ends.
    pub fn retarget(&self, source: &ChainComplex, target: &ChainComplex) -> Result<ChainMap> {
        ChainMap::graded(source.clone(), target.clone(), self.components.clone())
    }

    /// Image of a homogeneous element.
    pub fn apply(&self, x: &Element) -> Element {
        Element::new(x.degree, self.component(x.degree).mul_vec(&x.coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn two_step(field: Field) -> ChainComplex {
        // k --1--> k --1--> k : d∘d ≠ 0
        let dims = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let diffs = BTreeMap::from([
            (1, Matrix::from_i64_rows(field, &[&[1]])),
            (2, Matrix::from_i64_rows(field, &[&[1]])),
        ]);
        ChainComplex::assemble(field, dims, diffs).unwrap()
    }

    #[test]
    fn rejects_nonzero_square() {
        let c = two_step(q());
        assert_eq!(c.square_failure(), Some(2));
        let err = ChainComplex::new(q(), c.dims().clone(), c.nonzero_differentials().clone());
        assert!(matches!(err, Err(Error::NotAComplex(2))));
    }

    #[test]
    fn rejects_bad_shapes() {
        let dims = BTreeMap::from([(0, 2), (1, 1)]);
        let diffs = BTreeMap::from([(1, Matrix::from_i64_rows(q(), &[&[1, 1]]))]);
        assert!(matches!(
            ChainComplex::new(q(), dims, diffs),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn non_negative_flag() {
        let c = ChainComplex::concentrated(q(), -1, 1);
        assert!(matches!(c.non_negative(), Err(Error::NegativeDegree(-1))));
        assert!(ChainComplex::unit(q())
            .non_negative()
            .unwrap()
            .is_non_negative());
    }

    #[test]
    fn global_indexing() {
        let dims = BTreeMap::from([(-1, 2), (3, 1)]);
        let c = ChainComplex::new(q(), dims, BTreeMap::new()).unwrap();
        assert_eq!(c.global_index(3, 0), 2);
        assert_eq!(c.from_global(1), Some((-1, 1)));
        assert_eq!(c.from_global(3), None);
        assert_eq!(c.euler_characteristic(), -3);
    }

    #[test]
    fn chain_map_commutation() {
        let x = ChainComplex::unit(q());
        let f = ChainMap::identity(&x);
        assert!(f.is_chain_map());
        assert_eq!(f.compose(&f).unwrap(), f);
        let z = ChainMap::zero(&x, &x);
        assert_eq!(f.first_difference(&z), Some((0, 0)));
        assert_eq!(f.sub(&f).unwrap(), z);
    }
}
