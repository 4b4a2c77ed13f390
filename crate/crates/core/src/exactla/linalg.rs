//! Sparse exact linear algebra: matrices, reduced row echelon forms,
//! subspaces and linear systems with several right-hand sides.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::field::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// `a + s·b`.
pub fn axpy(field: Field, a: &[(usize, Scalar)], s: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = field.mul(s, &b[j].1);
            if !field.is_zero(&v) {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(s, &b[j].1));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_vec(field: Field, s: &Scalar, v: &[(usize, Scalar)]) -> SparseVec {
    if field.is_zero(s) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, field.mul(s, x))).collect()
}

fn lookup(v: &[(usize, Scalar)], idx: usize) -> Option<&Scalar> {
    v.binary_search_by_key(&idx, |(i, _)| *i)
        .ok()
        .map(|k| &v[k].1)
}

/// Reusable dense scratch row used to sum sparse contributions.
struct Accumulator {
    field: Field,
    slots: Vec<Option<Scalar>>,
    touched: Vec<usize>,
}

impl Accumulator {
    fn new(field: Field, width: usize) -> Self {
        Accumulator {
            field,
            slots: vec![None; width],
            touched: Vec::new(),
        }
    }

    fn add(&mut self, idx: usize, v: Scalar) {
        match &mut self.slots[idx] {
            Some(x) => *x = self.field.add(x, &v),
            slot @ None => {
                *slot = Some(v);
                self.touched.push(idx);
            }
        }
    }

    fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            if let Some(x) = self.slots[i].take() {
                if !self.field.is_zero(&x) {
                    out.push((i, x));
                }
            }
        }
        self.touched.clear();
        out
    }
}

/// A sparse `rows × cols` matrix over a field, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

/// Collects triplets, summing repeated positions.
pub struct MatrixBuilder {
    field: Field,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl MatrixBuilder {
    pub fn new(field: Field, rows: usize, cols: usize) -> Self {
        MatrixBuilder {
            field,
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r}, {c}) outside {}x{}",
            self.rows,
            self.cols
        );
        let field = self.field;
        self.entries
            .entry((r, c))
            .and_modify(|x| *x = field.add(x, &v))
            .or_insert(v);
    }

    pub fn build(self) -> Matrix {
        let mut data = vec![Vec::new(); self.rows];
        for ((r, c), v) in self.entries {
            if !self.field.is_zero(&v) {
                data[r].push((c, v));
            }
        }
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, field.one())]).collect();
        Matrix {
            field,
            rows: n,
            cols: n,
            data,
        }
    }

    /// Strict constructor: rejects out-of-range and repeated positions.
    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            if entries.insert((r, c), v).is_some() {
                return Err(Error::Shape(format!("repeated entry ({r}, {c})")));
            }
        }
        let mut data = vec![Vec::new(); rows];
        for ((r, c), v) in entries {
            if !field.is_zero(&v) {
                data[r].push((c, v));
            }
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.last().is_none_or(|(c, _)| *c < cols)));
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[SparseVec]) -> Self {
        let mut data = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                data[*r].push((c, v.clone()));
            }
        }
        Matrix {
            field,
            rows,
            cols: columns.len(),
            data,
        }
    }

    /// Dense constructor from small integers, handy in tests and fixtures.
    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols);
                r.iter()
                    .enumerate()
                    .map(|(c, &v)| (c, field.from_i64(v)))
                    .filter(|(_, v)| !field.is_zero(v))
                    .collect()
            })
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        lookup(&self.data[r], c)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, c.to_owned(), v)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                cols[*c].push((r, v.clone()));
            }
        }
        cols
    }

    pub fn column(&self, c: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| lookup(row, c).map(|v| (r, v.clone())))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data: self.columns(),
        }
    }

    fn check_field(&self, other: &Matrix) {
        assert_eq!(self.field, other.field, "matrix field mismatch");
    }

    /// `self · other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let field = self.field;
        let mut acc = Accumulator::new(field, other.cols);
        let data = self
            .data
            .iter()
            .map(|row| {
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        acc.add(*c, field.mul(a, b));
                    }
                }
                acc.drain()
            })
            .collect();
        Matrix {
            field,
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let field = self.field;
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let mut s = field.zero();
                let (mut i, mut j) = (0, 0);
                while i < row.len() && j < v.len() {
                    match row[i].0.cmp(&v[j].0) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            s = field.add(&s, &field.mul(&row[i].1, &v[j].1));
                            i += 1;
                            j += 1;
                        }
                    }
                }
                (!field.is_zero(&s)).then_some((r, s))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.combine(other, &self.field.one())
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.combine(other, &self.field.neg(&self.field.one()))
    }

    /// `self + s·other`.
    pub fn combine(&self, other: &Matrix, s: &Scalar) -> Matrix {
        self.check_field(other);
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sum"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| axpy(self.field, a, s, b))
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self
            .data
            .iter()
            .map(|r| scale_vec(self.field, s, r))
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.neg(&self.field.one()))
    }

    /// Kronecker product; row `(i, k)` of the result is `i·other.rows + k`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        let field = self.field;
        let mut data = Vec::with_capacity(self.rows * other.rows);
        for arow in &self.data {
            for brow in &other.data {
                let mut row = Vec::with_capacity(arow.len() * brow.len());
                for (j, a) in arow {
                    for (l, b) in brow {
                        row.push((j * other.cols + l, field.mul(a, b)));
                    }
                }
                data.push(row);
            }
        }
        Matrix {
            field,
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.rows, other.rows);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut r = a.clone();
                r.extend(b.iter().map(|(c, v)| (c + self.cols, v.clone())));
                r
            })
            .collect();
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        }
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let top = self.hstack(&Matrix::zeros(self.field, self.rows, other.cols));
        let bottom = Matrix::zeros(self.field, other.rows, self.cols).hstack(other);
        top.vstack(&bottom)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let all = self.columns();
        let picked: Vec<SparseVec> = cols.iter().map(|&c| all[c].clone()).collect();
        Matrix::from_columns(self.field, self.rows, &picked)
    }

    /// Row echelon data of the row space.
    pub fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.field, self.cols);
        for r in &self.data {
            e.insert(r.clone());
        }
        e
    }

    pub fn rank(&self) -> usize {
        // eliminate along the shorter side
        if self.rows <= self.cols {
            self.row_echelon().rank()
        } else {
            self.transpose().row_echelon().rank()
        }
    }

    pub fn has_full_column_rank(&self) -> bool {
        self.rank() == self.cols
    }

    pub fn has_full_row_rank(&self) -> bool {
        self.rank() == self.rows
    }

    /// Basis of the null space, as the columns of a `cols × k` matrix.
    pub fn kernel(&self) -> Matrix {
        let ech = self.row_echelon();
        let basis = ech.null_basis();
        Matrix::from_columns(self.field, self.cols, &basis)
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.rows, self.columns())
    }

    /// Some `X` with `self · X = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        self.check_field(rhs);
        assert_eq!(self.rows, rhs.rows);
        let mut sys = LinearSystem::new(self.field, self.cols, rhs.cols);
        for (a, b) in self.data.iter().zip(&rhs.data) {
            sys.add_row(a.clone(), b.clone());
        }
        let sols = sys.solve();
        let mut cols = Vec::with_capacity(rhs.cols);
        for s in sols {
            cols.push(s?);
        }
        Some(Matrix::from_columns(self.field, self.cols, &cols))
    }

    /// Some `L` with `L · self = I`.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let id = Matrix::identity(self.field, self.cols);
        Some(self.transpose().solve(&id)?.transpose())
    }
}

/// Reduced row echelon form built incrementally.
///
/// Pivots are only taken in columns `< limit`; rows whose reduction has no
/// entry left of `limit` are kept as residuals. With `limit == ncols` this is
/// an ordinary RREF of the inserted rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    limit: usize,
    pivots: BTreeMap<usize, SparseVec>,
    residual: Vec<SparseVec>,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        Self::with_limit(field, ncols, ncols)
    }

    pub fn with_limit(field: Field, ncols: usize, limit: usize) -> Self {
        Echelon {
            field,
            ncols,
            limit,
            pivots: BTreeMap::new(),
            residual: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Pivot rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> + '_ {
        self.pivots.values()
    }

    pub fn residuals(&self) -> &[SparseVec] {
        &self.residual
    }

    /// `v` minus its projection onto the pivot rows.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let coeffs: Vec<(usize, Scalar)> = v
            .iter()
            .filter(|(c, _)| self.pivots.contains_key(c))
            .cloned()
            .collect();
        let mut out = v.to_vec();
        for (c, x) in coeffs {
            out = axpy(self.field, &out, &self.field.neg(&x), &self.pivots[&c]);
        }
        out
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts a row; returns whether it produced a new pivot.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        let Some((lead, x)) = r.first().cloned() else {
            return false;
        };
        if lead >= self.limit {
            self.residual.push(r);
            return false;
        }
        let field = self.field;
        let inv = field.inv(&x).expect("nonzero lead");
        let r = scale_vec(field, &inv, &r);
        for row in self.pivots.values_mut() {
            if let Some(c) = lookup(row, lead).cloned() {
                *row = axpy(field, row, &field.neg(&c), &r);
            }
        }
        self.pivots.insert(lead, r);
        true
    }

    /// Null space basis of the pivot rows restricted to columns `< limit`.
    pub fn null_basis(&self) -> Vec<SparseVec> {
        let field = self.field;
        let mut out = Vec::new();
        for f in (0..self.limit).filter(|c| !self.pivots.contains_key(c)) {
            let mut v: SparseVec = Vec::new();
            for (p, row) in &self.pivots {
                if let Some(x) = lookup(row, f) {
                    v.push((*p, field.neg(x)));
                }
            }
            v.push((f, field.one()));
            v.sort_by_key(|(i, _)| *i);
            out.push(v);
        }
        out
    }
}

/// A subspace of `k^n`, held in reduced row echelon form so that equal
/// subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ech: Echelon,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            ech: Echelon::new(field, ambient),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::from_vectors(field, ambient, (0..ambient).map(|i| vec![(i, field.one())]))
    }

    pub fn from_vectors(
        field: Field,
        ambient: usize,
        vs: impl IntoIterator<Item = SparseVec>,
    ) -> Self {
        let mut ech = Echelon::new(field, ambient);
        for v in vs {
            ech.insert(v);
        }
        Subspace { ech }
    }

    /// Span of the columns of `m`.
    pub fn from_columns(m: &Matrix) -> Self {
        m.column_space()
    }

    pub fn field(&self) -> Field {
        self.ech.field
    }

    pub fn ambient(&self) -> usize {
        self.ech.ncols
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.ech.contains(v)
    }

    pub fn insert(&mut self, v: SparseVec) -> bool {
        self.ech.insert(v)
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        self.ech.rows().cloned().collect()
    }

    /// `ambient × dim` matrix whose columns are the canonical basis.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field(), self.ambient(), &self.basis())
    }

    /// Coordinates of `v` in [`Subspace::basis`], if `v` lies in the subspace.
    pub fn coords(&self, v: &[(usize, Scalar)]) -> Option<SparseVec> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.ech
                .pivot_columns()
                .enumerate()
                .filter_map(|(k, p)| lookup(v, p).map(|x| (k, x.clone())))
                .collect(),
        )
    }

    /// Coordinates of every column of `m` (which must lie in the subspace).
    pub fn coords_matrix(&self, m: &Matrix) -> Option<Matrix> {
        let cols: Option<Vec<SparseVec>> = m.columns().iter().map(|c| self.coords(c)).collect();
        Some(Matrix::from_columns(self.field(), self.dim(), &cols?))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ech.rows().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for r in other.ech.rows() {
            out.insert(r.clone());
        }
        out
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let field = self.field();
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        let k = a.hstack(&b.neg()).kernel();
        let da = a.cols();
        let top: Vec<SparseVec> = k
            .columns()
            .into_iter()
            .map(|c| c.into_iter().filter(|(i, _)| *i < da).collect())
            .collect();
        let combos = Matrix::from_columns(field, da, &top);
        Subspace::from_columns(&a.mul(&combos))
    }

    /// Linear functionals vanishing on the subspace, as row vectors.
    pub fn annihilator(&self) -> Subspace {
        let m = Matrix::from_rows(self.field(), self.ambient(), self.basis());
        Subspace::from_vectors(self.field(), self.ambient(), m.kernel().columns())
    }
}

/// `A x = b` for several right-hand sides at once.
///
/// Each row is stored as a sparse vector whose columns `0..nvars` are the
/// coefficients and `nvars..nvars+nrhs` the right-hand sides.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Field,
    nvars: usize,
    nrhs: usize,
    rows: Vec<SparseVec>,
}

/// Result of eliminating a [`LinearSystem`].
pub struct Solved {
    nvars: usize,
    nrhs: usize,
    ech: Echelon,
}

impl LinearSystem {
    pub fn new(field: Field, nvars: usize, nrhs: usize) -> Self {
        LinearSystem {
            field,
            nvars,
            nrhs,
            rows: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn nrhs(&self) -> usize {
        self.nrhs
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `coeffs · x = rhs`, `rhs` indexed by right-hand side.
    pub fn add_row(&mut self, coeffs: SparseVec, rhs: SparseVec) {
        debug_assert!(coeffs.iter().all(|(i, _)| *i < self.nvars));
        let mut row = coeffs;
        row.extend(rhs.into_iter().map(|(k, v)| (self.nvars + k, v)));
        if !row.is_empty() {
            self.rows.push(row);
        }
    }

    pub fn eliminate(&self) -> Solved {
        let mut ech = Echelon::with_limit(self.field, self.nvars + self.nrhs, self.nvars);
        for r in &self.rows {
            ech.insert(r.clone());
        }
        Solved {
            nvars: self.nvars,
            nrhs: self.nrhs,
            ech,
        }
    }

    /// Particular solution (free variables zero) per right-hand side.
    pub fn solve(&self) -> Vec<Option<SparseVec>> {
        self.eliminate().solutions()
    }

    /// Basis of solutions of the homogeneous system.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        self.eliminate().nullspace()
    }
}

impl Solved {
    pub fn is_consistent(&self, k: usize) -> bool {
        let col = self.nvars + k;
        self.ech
            .residuals()
            .iter()
            .all(|r| lookup(r, col).is_none())
    }

    pub fn solution(&self, k: usize) -> Option<SparseVec> {
        if !self.is_consistent(k) {
            return None;
        }
        let col = self.nvars + k;
        Some(
            self.ech
                .pivots
                .iter()
                .filter_map(|(p, row)| lookup(row, col).map(|v| (*p, v.clone())))
                .collect(),
        )
    }

    pub fn solutions(&self) -> Vec<Option<SparseVec>> {
        (0..self.nrhs).map(|k| self.solution(k)).collect()
    }

    pub fn nullspace(&self) -> Vec<SparseVec> {
        let field = self.ech.field;
        self.ech
            .null_basis()
            .into_iter()
            .map(|v| {
                v.into_iter()
                    .filter(|(i, _)| *i < self.nvars)
                    .collect::<SparseVec>()
            })
            .inspect(|v| {
                debug_assert!(v.iter().all(|(_, x)| !field.is_zero(x)));
            })
            .collect()
    }

    pub fn nullity(&self) -> usize {
        self.nvars - self.ech.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_i64_rows(q(), &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn interval_boundary_homology_counts() {
        // ∂e = b − a as a 2×1 matrix
        let d = Matrix::from_i64_rows(q(), &[&[-1], &[1]]);
        assert_eq!(d.rank(), 1);
        assert_eq!(d.kernel().cols(), 0);
    }

    #[test]
    fn solve_and_inconsistency() {
        let a = Matrix::from_i64_rows(q(), &[&[1, 1], &[1, -1]]);
        let b = Matrix::from_i64_rows(q(), &[&[2], &[0]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let a = Matrix::from_i64_rows(q(), &[&[1, 1], &[2, 2]]);
        let b = Matrix::from_i64_rows(q(), &[&[1], &[3]]);
        assert!(a.solve(&b).is_none());
    }

    #[test]
    fn kron_layout() {
        let a = Matrix::from_i64_rows(q(), &[&[1, 2]]);
        let b = Matrix::from_i64_rows(q(), &[&[0], &[3]]);
        let k = a.kron(&b);
        assert_eq!(k, Matrix::from_i64_rows(q(), &[&[0, 0], &[3, 6]]));
    }

    #[test]
    fn subspace_lattice() {
        let f = Field::Prime(5);
        let s = Subspace::from_vectors(f, 3, [vec![(0, f.one())], vec![(1, f.one())]]);
        let t = Subspace::from_vectors(f, 3, [vec![(1, f.one())], vec![(2, f.one())]]);
        let i = s.intersect(&t);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[(1, f.one())]));
        assert_eq!(s.sum(&t).dim(), 3);
        assert!(i.is_subspace_of(&s) && i.is_subspace_of(&t));
    }

    #[test]
    fn coordinates_in_rref_basis() {
        let f = q();
        let s = Subspace::from_vectors(
            f,
            3,
            [vec![(0, f.one()), (2, f.from_i64(2))], vec![(1, f.one())]],
        );
        let v = vec![(0, f.from_i64(3)), (1, f.from_i64(-1)), (2, f.from_i64(6))];
        let c = s.coords(&v).unwrap();
        let back = s.basis_matrix().mul_vec(&c);
        assert_eq!(back, v);
        assert!(s.coords(&[(2, f.one())]).is_none());
    }

    #[test]
    fn multi_rhs_solve() {
        let f = Field::Prime(2);
        let mut sys = LinearSystem::new(f, 2, 2);
        sys.add_row(vec![(0, f.one()), (1, f.one())], vec![(0, f.one())]);
        sys.add_row(vec![(0, f.one()), (1, f.one())], vec![(1, f.one())]);
        let sols = sys.solve();
        assert!(sols[0].is_none() && sols[1].is_none());
        let mut sys = LinearSystem::new(f, 2, 1);
        sys.add_row(vec![(0, f.one()), (1, f.one())], vec![(0, f.one())]);
        assert_eq!(sys.nullspace().len(), 1);
        assert!(sys.solve()[0].is_some());
    }

    #[test]
    fn annihilator_double_dual() {
        let f = q();
        let s = Subspace::from_vectors(f, 4, [vec![(0, f.one()), (3, f.from_i64(-2))]]);
        let a = s.annihilator();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.annihilator(), s);
    }
}
