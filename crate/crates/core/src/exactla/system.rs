//! Linear systems whose unknowns are graded maps.
//!
//! Every lifting and extension problem in the library reduces to finding
//! graded maps `U : A → B` subject to equations that are linear in the
//! entries of `U`: commuting with differentials, with coactions
//! (`ρ_B U = (U ⊗ id) ρ_A`), and with given maps on either side. Each
//! equation is assembled entry by entry and handed to [`LinearSystem`].

use std::collections::BTreeMap;

use crate::exactla::complex::{ChainComplex, ChainMap, Degree};
use crate::exactla::field::{Field, Scalar};
use crate::exactla::linalg::{LinearSystem, Matrix, Solved, SparseVec};
use crate::exactla::tensor::TensorLayout;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct UnknownId(usize);

#[derive(Clone, Debug)]
struct Unknown {
    source: BTreeMap<Degree, usize>,
    target: BTreeMap<Degree, usize>,
    offsets: BTreeMap<Degree, usize>,
}

impl Unknown {
    fn var(&self, n: Degree, i: usize, j: usize) -> usize {
        self.offsets[&n] + i * self.source[&n] + j
    }
}

type Coeffs = BTreeMap<usize, Scalar>;

/// One matrix equation `Σ terms = rhs` of a fixed shape.
#[derive(Clone, Debug)]
pub struct Equation {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), (Coeffs, Coeffs)>,
}

#[derive(Clone, Debug)]
pub struct MapSystem {
    field: Field,
    nrhs: usize,
    nvars: usize,
    unknowns: Vec<Unknown>,
    rows: Vec<(SparseVec, SparseVec)>,
}

fn bump(field: Field, m: &mut Coeffs, k: usize, v: Scalar) {
    let e = m.entry(k).or_insert_with(|| field.zero());
    *e = field.add(e, &v);
}

fn dense(m: Coeffs, field: Field) -> SparseVec {
    m.into_iter().filter(|(_, v)| !field.is_zero(v)).collect()
}

impl MapSystem {
    pub fn new(field: Field, nrhs: usize) -> Self {
        MapSystem {
            field,
            nrhs,
            nvars: 0,
            unknowns: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Declares an unknown graded map between the given complexes.
    pub fn add_unknown(&mut self, source: &ChainComplex, target: &ChainComplex) -> UnknownId {
        let mut offsets = BTreeMap::new();
        for (&n, &a) in source.dims() {
            let b = target.dim(n);
            if b > 0 {
                offsets.insert(n, self.nvars);
                self.nvars += a * b;
            }
        }
        self.unknowns.push(Unknown {
            source: source.dims().clone(),
            target: target.dims().clone(),
            offsets,
        });
        UnknownId(self.unknowns.len() - 1)
    }

    pub fn equation(&self, rows: usize, cols: usize) -> Equation {
        Equation {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, eq: Equation) {
        let field = self.field;
        for (_, (coeffs, rhs)) in eq.entries {
            let c = dense(coeffs, field);
            let r = dense(rhs, field);
            if !c.is_empty() || !r.is_empty() {
                self.rows.push((c, r));
            }
        }
    }

    /// `d_B U_n = U_{n−1} d_A` in every degree.
    pub fn require_chain_map(
        &mut self,
        u: UnknownId,
        source: &ChainComplex,
        target: &ChainComplex,
    ) {
        let field = self.field;
        let degrees = ChainComplex::union_degrees([source, target]);
        for n in degrees {
            let (rows, cols) = (target.dim(n - 1), source.dim(n));
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut eq = self.equation(rows, cols);
            eq.sandwich(
                self,
                u,
                n,
                Some(&target.differential(n)),
                None,
                &field.one(),
            );
            eq.sandwich(
                self,
                u,
                n - 1,
                None,
                Some(&source.differential(n)),
                &field.from_i64(-1),
            );
            self.push(eq);
        }
    }

    fn system(&self) -> LinearSystem {
        let mut sys = LinearSystem::new(self.field, self.nvars, self.nrhs);
        for (c, r) in &self.rows {
            sys.add_row(c.clone(), r.clone());
        }
        sys
    }

    pub fn eliminate(&self) -> MapSolution<'_> {
        MapSolution {
            owner: self,
            solved: self.system().eliminate(),
        }
    }

    /// Components of unknown `u` read off a solution vector.
    pub fn decode(&self, u: UnknownId, x: &[(usize, Scalar)]) -> BTreeMap<Degree, Matrix> {
        let unk = &self.unknowns[u.0];
        let mut out = BTreeMap::new();
        for (&n, &off) in &unk.offsets {
            let (rows, cols) = (unk.target[&n], unk.source[&n]);
            let triplets: Vec<(usize, usize, Scalar)> = x
                .iter()
                .filter(|(k, _)| *k >= off && *k < off + rows * cols)
                .map(|(k, v)| ((k - off) / cols, (k - off) % cols, v.clone()))
                .collect();
            let m = Matrix::from_triplets(self.field, rows, cols, triplets).expect("in range");
            out.insert(n, m);
        }
        out
    }

    /// Solution vector representing the given components of `u`.
    pub fn encode(&self, u: UnknownId, comps: &BTreeMap<Degree, Matrix>) -> SparseVec {
        let unk = &self.unknowns[u.0];
        let mut out: SparseVec = Vec::new();
        for (n, m) in comps {
            if unk.offsets.contains_key(n) {
                out.extend(m.triplets().map(|(i, j, v)| (unk.var(*n, i, j), v.clone())));
            }
        }
        out.sort_by_key(|(k, _)| *k);
        out
    }
}

pub struct MapSolution<'a> {
    owner: &'a MapSystem,
    solved: Solved,
}

impl MapSolution<'_> {
    pub fn is_consistent(&self, k: usize) -> bool {
        self.solved.is_consistent(k)
    }

    pub fn particular(&self, k: usize) -> Option<SparseVec> {
        self.solved.solution(k)
    }

    pub fn nullspace(&self) -> Vec<SparseVec> {
        self.solved.nullspace()
    }

    pub fn nullity(&self) -> usize {
        self.solved.nullity()
    }

    pub fn decode(&self, u: UnknownId, x: &[(usize, Scalar)]) -> BTreeMap<Degree, Matrix> {
        self.owner.decode(u, x)
    }
}

impl Equation {
    fn at(&mut self, r: usize, c: usize) -> &mut (Coeffs, Coeffs) {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries.entry((r, c)).or_default()
    }

    /// Adds `s · L U_n R`; `None` stands for an identity.
    pub fn sandwich(
        &mut self,
        sys: &MapSystem,
        u: UnknownId,
        n: Degree,
        left: Option<&Matrix>,
        right: Option<&Matrix>,
        s: &Scalar,
    ) {
        let unk = &sys.unknowns[u.0];
        if !unk.offsets.contains_key(&n) {
            return;
        }
        let field = sys.field;
        let (b, a) = (unk.target[&n], unk.source[&n]);
        let id_b;
        let left = match left {
            Some(m) => m,
            None => {
                id_b = Matrix::identity(field, b);
                &id_b
            }
        };
        let id_a;
        let right = match right {
            Some(m) => m,
            None => {
                id_a = Matrix::identity(field, a);
                &id_a
            }
        };
        let rt: Vec<(usize, usize, Scalar)> = right
            .triplets()
            .map(|(j, c, v)| (j, c, v.clone()))
            .collect();
        for (r, i, lv) in left.triplets() {
            let lv = field.mul(s, lv);
            for (j, c, rv) in &rt {
                let var = unk.var(n, i, *j);
                bump(field, &mut self.at(r, *c).0, var, field.mul(&lv, rv));
            }
        }
    }

    /// Adds `s · (U ⊗ id_C)_n R` where `R` lands in `(A ⊗ C)_n` and `c_dims`
    /// are the dimensions of `C`.
    pub fn tensor_right(
        &mut self,
        sys: &MapSystem,
        u: UnknownId,
        c_dims: &BTreeMap<Degree, usize>,
        n: Degree,
        right: &Matrix,
        s: &Scalar,
    ) {
        let field = sys.field;
        let unk = &sys.unknowns[u.0];
        let src = TensorLayout::new(&unk.source, c_dims);
        let tgt = TensorLayout::new(&unk.target, c_dims);
        for (row, c, v) in right.triplets() {
            let (p, i, k) = src.split(n, row);
            if !unk.offsets.contains_key(&p) {
                continue;
            }
            let v = field.mul(s, v);
            for j in 0..unk.target[&p] {
                let r = tgt.index(p, j, n - p, k);
                let var = unk.var(p, j, i);
                bump(field, &mut self.at(r, c).0, var, v.clone());
            }
        }
    }

    /// Adds `m` to right-hand side `k`.
    pub fn rhs(&mut self, field: Field, k: usize, m: &Matrix) {
        for (r, c, v) in m.triplets() {
            bump(field, &mut self.at(r, c).1, k, v.clone());
        }
    }
}

/// A chain map `l : B → X` with `l ∘ left = top` and `right ∘ l = bottom`
/// for `left : A → B`, `right : X → Y`, if one exists.
pub fn chain_lift(
    left: &ChainMap,
    right: &ChainMap,
    top: &ChainMap,
    bottom: &ChainMap,
) -> Option<ChainMap> {
    let field = left.field();
    let (a, b) = (left.source(), left.target());
    let (x, y) = (right.source(), right.target());
    let mut sys = MapSystem::new(field, 1);
    let u = sys.add_unknown(b, x);
    sys.require_chain_map(u, b, x);
    let one = field.one();
    for n in ChainComplex::union_degrees([a, b]) {
        if a.dim(n) > 0 && x.dim(n) > 0 {
            let mut eq = sys.equation(x.dim(n), a.dim(n));
            eq.sandwich(&sys, u, n, None, Some(&left.component(n)), &one);
            eq.rhs(field, 0, &top.component(n));
            sys.push(eq);
        }
        if b.dim(n) > 0 && y.dim(n) > 0 {
            let mut eq = sys.equation(y.dim(n), b.dim(n));
            eq.sandwich(&sys, u, n, Some(&right.component(n)), None, &one);
            eq.rhs(field, 0, &bottom.component(n));
            sys.push(eq);
        }
    }
    let sol = sys.eliminate();
    let v = sol.particular(0)?;
    Some(
        ChainMap::new(b.clone(), x.clone(), sol.decode(u, &v))
            .expect("solves the chain-map equations"),
    )
}
