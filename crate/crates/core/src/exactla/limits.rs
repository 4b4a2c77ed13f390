//! The abelian toolkit on `Ch(k)`: graded subspaces, sums, kernels, images,
//! cokernels, pullbacks, pushouts, cones and the pushout-product map.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::complex::{ChainComplex, ChainMap, Degree, Element};
use crate::exactla::field::Field;
use crate::exactla::linalg::{Matrix, MatrixBuilder, SparseVec, Subspace};
use crate::exactla::tensor::tensor_map;

/// A graded subspace of a complex's underlying graded space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    field: Field,
    ambient: BTreeMap<Degree, usize>,
    spaces: BTreeMap<Degree, Subspace>,
}

impl GradedSubspace {
    pub fn zero(x: &ChainComplex) -> Self {
        GradedSubspace {
            field: x.field(),
            ambient: x.dims().clone(),
            spaces: BTreeMap::new(),
        }
    }

    pub fn full(x: &ChainComplex) -> Self {
        let spaces = x
            .dims()
            .iter()
            .map(|(n, d)| (*n, Subspace::full(x.field(), *d)))
            .collect();
        GradedSubspace {
            field: x.field(),
            ambient: x.dims().clone(),
            spaces,
        }
    }

    pub fn from_elements<'a>(
        x: &ChainComplex,
        elems: impl IntoIterator<Item = &'a Element>,
    ) -> Self {
        let mut s = Self::zero(x);
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// Column spans of the given per-degree matrices.
    pub fn from_columns(x: &ChainComplex, cols: &BTreeMap<Degree, Matrix>) -> Self {
        let mut s = Self::zero(x);
        for (n, m) in cols {
            for c in m.columns() {
                s.insert(&Element::new(*n, c));
            }
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dims(&self) -> &BTreeMap<Degree, usize> {
        &self.ambient
    }

    pub fn space(&self, n: Degree) -> Subspace {
        self.spaces.get(&n).cloned().unwrap_or_else(|| {
            Subspace::zero(self.field, self.ambient.get(&n).copied().unwrap_or(0))
        })
    }

    pub fn dim(&self, n: Degree) -> usize {
        self.spaces.get(&n).map_or(0, Subspace::dim)
    }

    pub fn dims(&self) -> BTreeMap<Degree, usize> {
        self.spaces.iter().map(|(n, s)| (*n, s.dim())).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.spaces.values().map(Subspace::dim).sum()
    }

    /// Inserts an element; returns whether the subspace grew.
    pub fn insert(&mut self, e: &Element) -> bool {
        if e.coords.is_empty() {
            return false;
        }
        let amb = self.ambient.get(&e.degree).copied().unwrap_or(0);
        let field = self.field;
        let grew = self
            .spaces
            .entry(e.degree)
            .or_insert_with(|| Subspace::zero(field, amb))
            .insert(e.coords.clone());
        if !grew && self.spaces[&e.degree].dim() == 0 {
            self.spaces.remove(&e.degree);
        }
        grew
    }

    pub fn contains(&self, e: &Element) -> bool {
        e.coords.is_empty()
            || self
                .spaces
                .get(&e.degree)
                .is_some_and(|s| s.contains(&e.coords))
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> bool {
        self.spaces
            .iter()
            .all(|(n, s)| s.is_subspace_of(&other.space(*n)))
    }

    pub fn sum(&self, other: &GradedSubspace) -> GradedSubspace {
        let mut out = self.clone();
        for (n, s) in &other.spaces {
            for v in s.basis() {
                out.insert(&Element::new(*n, v));
            }
        }
        out
    }

    pub fn intersect(&self, other: &GradedSubspace) -> GradedSubspace {
        let mut spaces = BTreeMap::new();
        for (n, s) in &self.spaces {
            if let Some(t) = other.spaces.get(n) {
                let i = s.intersect(t);
                if i.dim() > 0 {
                    spaces.insert(*n, i);
                }
            }
        }
        GradedSubspace {
            field: self.field,
            ambient: self.ambient.clone(),
            spaces,
        }
    }

    /// Canonical basis elements, degree by degree.
    pub fn basis(&self) -> Vec<Element> {
        self.spaces
            .iter()
            .flat_map(|(n, s)| s.basis().into_iter().map(move |v| Element::new(*n, v)))
            .collect()
    }

    pub fn basis_matrix(&self, n: Degree) -> Matrix {
        self.space(n).basis_matrix()
    }

    /// Closes under the differential of `x`.
    pub fn close_under_differential(&mut self, x: &ChainComplex) {
        let mut queue = self.basis();
        while let Some(e) = queue.pop() {
            let de = Element::new(e.degree - 1, x.differential(e.degree).mul_vec(&e.coords));
            if self.insert(&de) {
                queue.push(de);
            }
        }
    }

    pub fn is_closed_under_differential(&self, x: &ChainComplex) -> bool {
        self.basis().iter().all(|e| {
            self.contains(&Element::new(
                e.degree - 1,
                x.differential(e.degree).mul_vec(&e.coords),
            ))
        })
    }

    /// Coordinates of a degree-`n` vector in the canonical basis.
    pub fn coords(
        &self,
        n: Degree,
        v: &[(usize, crate::exactla::field::Scalar)],
    ) -> Option<SparseVec> {
        if v.is_empty() {
            return Some(Vec::new());
        }
        self.spaces.get(&n)?.coords(v)
    }
}

/// The subcomplex spanned by a differential-closed graded subspace,
/// together with its inclusion.
pub fn subcomplex(x: &ChainComplex, s: &GradedSubspace) -> Result<(ChainComplex, ChainMap)> {
    let field = x.field();
    let dims = s.dims();
    let mut diffs = BTreeMap::new();
    for &n in dims.keys() {
        if s.dim(n - 1) == 0 {
            if !x.differential(n).mul(&s.basis_matrix(n)).is_zero() {
                return Err(Error::Precondition(format!(
                    "subspace not closed under d at degree {n}"
                )));
            }
            continue;
        }
        let image = x.differential(n).mul(&s.basis_matrix(n));
        let c = s.space(n - 1).coords_matrix(&image).ok_or_else(|| {
            Error::Precondition(format!("subspace not closed under d at degree {n}"))
        })?;
        diffs.insert(n, c);
    }
    let sub = ChainComplex::new(field, dims.clone(), diffs)?.with_flag(x.is_non_negative());
    let comps = dims.keys().map(|&n| (n, s.basis_matrix(n))).collect();
    let inc = ChainMap::raw(sub.clone(), x.clone(), comps);
    Ok((sub, inc))
}

/// `X ⊕ Y` with its injections and projections; degree `n` lists `X_n`
/// first.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub object: ChainComplex,
    pub inj: [ChainMap; 2],
    pub proj: [ChainMap; 2],
}

pub fn direct_sum(x: &ChainComplex, y: &ChainComplex) -> Result<DirectSum> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch(x.field(), y.field()));
    }
    let field = x.field();
    let degrees = ChainComplex::union_degrees([x, y]);
    let dims: BTreeMap<Degree, usize> = degrees.iter().map(|&n| (n, x.dim(n) + y.dim(n))).collect();
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        let d = x.differential(n).block_diag(&y.differential(n));
        if !d.is_zero() {
            diffs.insert(n, d);
        }
    }
    let object = ChainComplex::new(field, dims, diffs)?
        .with_flag(x.is_non_negative() && y.is_non_negative());
    let mut inj = [BTreeMap::new(), BTreeMap::new()];
    let mut proj = [BTreeMap::new(), BTreeMap::new()];
    for &n in &degrees {
        let (a, b) = (x.dim(n), y.dim(n));
        let i1 = Matrix::identity(field, a).vstack(&Matrix::zeros(field, b, a));
        let i2 = Matrix::zeros(field, a, b).vstack(&Matrix::identity(field, b));
        proj[0].insert(n, i1.transpose());
        proj[1].insert(n, i2.transpose());
        inj[0].insert(n, i1);
        inj[1].insert(n, i2);
    }
    let [i0, i1] = inj;
    let [p0, p1] = proj;
    Ok(DirectSum {
        inj: [
            ChainMap::raw(x.clone(), object.clone(), i0),
            ChainMap::raw(y.clone(), object.clone(), i1),
        ],
        proj: [
            ChainMap::raw(object.clone(), x.clone(), p0),
            ChainMap::raw(object.clone(), y.clone(), p1),
        ],
        object,
    })
}

impl DirectSum {
    /// `(f, g) : T → X ⊕ Y`.
    pub fn pair(&self, f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
        self.inj[0].compose(f)?.add(&self.inj[1].compose(g)?)
    }

    /// `[f g] : X ⊕ Y → T`.
    pub fn copair(&self, f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
        f.compose(&self.proj[0])?.add(&g.compose(&self.proj[1])?)
    }
}

#[derive(Clone, Debug)]
pub struct Kernel {
    pub object: ChainComplex,
    pub inclusion: ChainMap,
    pub span: GradedSubspace,
}

pub fn kernel(f: &ChainMap) -> Result<Kernel> {
    let x = f.source();
    let mut span = GradedSubspace::zero(x);
    for n in x.degrees() {
        for v in f.component(n).kernel().columns() {
            span.insert(&Element::new(n, v));
        }
    }
    let (object, inclusion) = subcomplex(x, &span)?;
    Ok(Kernel {
        object,
        inclusion,
        span,
    })
}

impl Kernel {
    /// The unique `u` with `inclusion ∘ u = g`, when `g` lands in the kernel.
    pub fn lift(&self, g: &ChainMap) -> Result<ChainMap> {
        let mut comps = BTreeMap::new();
        for (n, m) in g.nonzero_components() {
            let c = self
                .span
                .space(*n)
                .coords_matrix(m)
                .ok_or_else(|| Error::Precondition("map does not land in the kernel".into()))?;
            comps.insert(*n, c);
        }
        ChainMap::new(g.source().clone(), self.object.clone(), comps)
    }
}

/// `f = mono ∘ epi` through the image.
#[derive(Clone, Debug)]
pub struct ImageFactorization {
    pub object: ChainComplex,
    pub epi: ChainMap,
    pub mono: ChainMap,
    pub span: GradedSubspace,
}

pub fn image_factorization(f: &ChainMap) -> Result<ImageFactorization> {
    let y = f.target();
    let span = GradedSubspace::from_columns(y, f.nonzero_components());
    let (object, mono) = subcomplex(y, &span)?;
    let mut comps = BTreeMap::new();
    for (n, m) in f.nonzero_components() {
        comps.insert(
            *n,
            span.space(*n)
                .coords_matrix(m)
                .expect("columns span the image"),
        );
    }
    let epi = ChainMap::raw(f.source().clone(), object.clone(), comps);
    Ok(ImageFactorization {
        object,
        epi,
        mono,
        span,
    })
}

/// `Y / im f` with its projection and a graded (not chain) section.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub object: ChainComplex,
    pub projection: ChainMap,
    pub section: BTreeMap<Degree, Matrix>,
}

pub fn cokernel(f: &ChainMap) -> Result<Cokernel> {
    let y = f.target();
    let field = y.field();
    let image = GradedSubspace::from_columns(y, f.nonzero_components());
    let mut proj = BTreeMap::new();
    let mut section = BTreeMap::new();
    let mut dims = BTreeMap::new();
    for (&n, &d) in y.dims() {
        let sp = image.space(n);
        let pivots: Vec<usize> = sp.basis().iter().map(|r| r[0].0).collect();
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let pos: BTreeMap<usize, usize> = free.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let mut q = MatrixBuilder::new(field, free.len(), d);
        for &c in &free {
            q.add(pos[&c], c, field.one());
        }
        for (p, r) in pivots.iter().zip(sp.basis()) {
            for (c, v) in r {
                if let Some(k) = pos.get(&c) {
                    q.add(*k, *p, field.neg(&v));
                }
            }
        }
        let mut s = MatrixBuilder::new(field, d, free.len());
        for (k, c) in free.iter().enumerate() {
            s.add(*c, k, field.one());
        }
        dims.insert(n, free.len());
        proj.insert(n, q.build());
        section.insert(n, s.build());
    }
    let zero_sec = |n: Degree, dims: &BTreeMap<Degree, usize>| {
        Matrix::zeros(field, y.dim(n), dims.get(&n).copied().unwrap_or(0))
    };
    let mut diffs = BTreeMap::new();
    for &n in dims.keys() {
        let q_below = proj
            .get(&(n - 1))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(field, 0, y.dim(n - 1)));
        let s_n = section
            .get(&n)
            .cloned()
            .unwrap_or_else(|| zero_sec(n, &dims));
        diffs.insert(n, q_below.mul(&y.differential(n)).mul(&s_n));
    }
    let object = ChainComplex::new(field, dims, diffs)?.with_flag(y.is_non_negative());
    let projection = ChainMap::raw(y.clone(), object.clone(), proj);
    Ok(Cokernel {
        object,
        projection,
        section,
    })
}

impl Cokernel {
    /// The unique `u` with `u ∘ projection = g`, for `g` vanishing on the
    /// image.
    pub fn descend(&self, g: &ChainMap) -> Result<ChainMap> {
        if g.source() != self.projection.source() {
            return Err(Error::Shape(
                "map does not start at the cokernel's ambient".into(),
            ));
        }
        let mut comps = BTreeMap::new();
        for (n, s) in &self.section {
            comps.insert(*n, g.component(*n).mul(s));
        }
        let u = ChainMap::graded(self.object.clone(), g.target().clone(), comps)?;
        if u.compose(&self.projection)? != *g {
            return Err(Error::Precondition(
                "map does not vanish on the image".into(),
            ));
        }
        Ok(u)
    }
}

/// Pullback of `f : X → Z ← Y : g`, computed as the kernel of
/// `f p_X − g p_Y` on `X ⊕ Y`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: ChainComplex,
    pub left: ChainMap,
    pub right: ChainMap,
    sum: DirectSum,
    kernel: Kernel,
    f: ChainMap,
    g: ChainMap,
}

pub fn pullback(f: &ChainMap, g: &ChainMap) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::Shape("pullback: maps have different targets".into()));
    }
    let sum = direct_sum(f.source(), g.source())?;
    let h = f.compose(&sum.proj[0])?.sub(&g.compose(&sum.proj[1])?)?;
    let kernel = kernel(&h)?;
    let left = sum.proj[0].compose(&kernel.inclusion)?;
    let right = sum.proj[1].compose(&kernel.inclusion)?;
    Ok(Pullback {
        object: kernel.object.clone(),
        left,
        right,
        sum,
        kernel,
        f: f.clone(),
        g: g.clone(),
    })
}

impl Pullback {
    /// The mediating map `T → P` for `a : T → X`, `b : T → Y` with
    /// `f a = g b`.
    pub fn mediate(&self, a: &ChainMap, b: &ChainMap) -> Result<ChainMap> {
        if self.f.compose(a)? != self.g.compose(b)? {
            return Err(Error::SquareDoesNotCommute);
        }
        self.kernel.lift(&self.sum.pair(a, b)?)
    }
}

/// Pushout of `f : W → X`, `g : W → Y`, computed as the cokernel of
/// `i_X f − i_Y g`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: ChainComplex,
    pub left: ChainMap,
    pub right: ChainMap,
    sum: DirectSum,
    cokernel: Cokernel,
    f: ChainMap,
    g: ChainMap,
}

pub fn pushout(f: &ChainMap, g: &ChainMap) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::Shape("pushout: maps have different sources".into()));
    }
    let sum = direct_sum(f.target(), g.target())?;
    let h = sum.inj[0].compose(f)?.sub(&sum.inj[1].compose(g)?)?;
    let cokernel = cokernel(&h)?;
    let left = cokernel.projection.compose(&sum.inj[0])?;
    let right = cokernel.projection.compose(&sum.inj[1])?;
    Ok(Pushout {
        object: cokernel.object.clone(),
        left,
        right,
        sum,
        cokernel,
        f: f.clone(),
        g: g.clone(),
    })
}

impl Pushout {
    /// The mediating map `P → T` for `a : X → T`, `b : Y → T` with
    /// `a f = b g`.
    pub fn mediate(&self, a: &ChainMap, b: &ChainMap) -> Result<ChainMap> {
        if a.compose(&self.f)? != b.compose(&self.g)? {
            return Err(Error::SquareDoesNotCommute);
        }
        self.cokernel.descend(&self.sum.copair(a, b)?)
    }
}

/// The cone of `id_X`: `cone_n = X_{n−1} ⊕ X_n` with
/// `d(x, y) = (−dx, x + dy)`, the split inclusion `y ↦ (0, y)` and the
/// contraction `h(x, y) = (y, 0)`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub object: ChainComplex,
    pub inclusion: ChainMap,
    /// `h_n : cone_n → cone_{n+1}`.
    pub homotopy: BTreeMap<Degree, Matrix>,
}

pub fn cone_of_identity(x: &ChainComplex) -> Cone {
    let field = x.field();
    let mut degrees = std::collections::BTreeSet::new();
    for n in x.degrees() {
        degrees.insert(n);
        degrees.insert(n + 1);
    }
    let dims: BTreeMap<Degree, usize> = degrees
        .iter()
        .map(|&n| (n, x.dim(n - 1) + x.dim(n)))
        .collect();
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        // (X_{n−1} ⊕ X_n) → (X_{n−2} ⊕ X_{n−1})
        let top = x
            .differential(n - 1)
            .neg()
            .hstack(&Matrix::zeros(field, x.dim(n - 2), x.dim(n)));
        let bottom = Matrix::identity(field, x.dim(n - 1)).hstack(&x.differential(n));
        diffs.insert(n, top.vstack(&bottom));
    }
    let object = ChainComplex::new(field, dims, diffs)
        .expect("cone of the identity is a complex")
        .with_flag(x.is_non_negative());
    let mut inc = BTreeMap::new();
    for n in x.degrees() {
        inc.insert(
            n,
            Matrix::zeros(field, x.dim(n - 1), x.dim(n)).vstack(&Matrix::identity(field, x.dim(n))),
        );
    }
    let inclusion = ChainMap::raw(x.clone(), object.clone(), inc);
    let mut homotopy = BTreeMap::new();
    for n in object.degrees().chain(object.degrees().map(|n| n - 1)) {
        // (X_{n−1} ⊕ X_n) → (X_n ⊕ X_{n+1}), (x, y) ↦ (y, 0)
        let top =
            Matrix::zeros(field, x.dim(n), x.dim(n - 1)).hstack(&Matrix::identity(field, x.dim(n)));
        let bottom = Matrix::zeros(field, x.dim(n + 1), x.dim(n - 1) + x.dim(n));
        let h = top.vstack(&bottom);
        if !h.is_zero() {
            homotopy.insert(n, h);
        }
    }
    Cone {
        object,
        inclusion,
        homotopy,
    }
}

impl Cone {
    pub fn homotopy_at(&self, n: Degree) -> Matrix {
        self.homotopy.get(&n).cloned().unwrap_or_else(|| {
            Matrix::zeros(
                self.object.field(),
                self.object.dim(n + 1),
                self.object.dim(n),
            )
        })
    }

    /// Checks `d h + h d = id` in every degree.
    pub fn contraction_holds(&self) -> bool {
        let c = &self.object;
        c.degrees().all(|n| {
            let dh = c.differential(n + 1).mul(&self.homotopy_at(n));
            let hd = self.homotopy_at(n - 1).mul(&c.differential(n));
            dh.add(&hd) == Matrix::identity(c.field(), c.dim(n))
        })
    }

    /// Extends a chain map `g : A → X'` (with `X'` this cone) along a
    /// degreewise split mono `k : A → B`, using the contraction:
    /// `ℓ = d h φ + h φ d` for any graded `φ` with `φ k = g`.
    pub fn extend_along(&self, g: &ChainMap, k: &ChainMap) -> Result<ChainMap> {
        if g.target() != &self.object || g.source() != k.source() {
            return Err(Error::Shape("extension: ends do not match".into()));
        }
        let field = self.object.field();
        let b = k.target();
        let mut phi = BTreeMap::new();
        for n in b.degrees() {
            let kn = k.component(n);
            let r = kn
                .left_inverse()
                .ok_or_else(|| Error::Precondition(format!("not a monomorphism in degree {n}")))?;
            phi.insert(n, g.component(n).mul(&r));
        }
        let phi_at = |n: Degree| {
            phi.get(&n)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(field, self.object.dim(n), b.dim(n)))
        };
        let mut comps = BTreeMap::new();
        for n in b.degrees() {
            let a = self
                .object
                .differential(n + 1)
                .mul(&self.homotopy_at(n))
                .mul(&phi_at(n));
            let c = self
                .homotopy_at(n - 1)
                .mul(&phi_at(n - 1))
                .mul(&b.differential(n));
            comps.insert(n, a.add(&c));
        }
        let ext = ChainMap::new(b.clone(), self.object.clone(), comps)?;
        if ext.compose(k)? != *g {
            return Err(Error::Internal(
                "cone extension does not restrict to the given map".into(),
            ));
        }
        Ok(ext)
    }
}

/// Mapping cone of `f : X → Y`: `X_{n−1} ⊕ Y_n`, `d(x, y) = (−dx, f x + dy)`.
pub fn mapping_cone(f: &ChainMap) -> Result<ChainComplex> {
    let (x, y) = (f.source(), f.target());
    let field = f.field();
    let mut degrees = std::collections::BTreeSet::new();
    for n in x.degrees() {
        degrees.insert(n + 1);
    }
    degrees.extend(y.degrees());
    let dims: BTreeMap<Degree, usize> = degrees
        .iter()
        .map(|&n| (n, x.dim(n - 1) + y.dim(n)))
        .collect();
    let mut diffs = BTreeMap::new();
    for &n in &degrees {
        let top = x
            .differential(n - 1)
            .neg()
            .hstack(&Matrix::zeros(field, x.dim(n - 2), y.dim(n)));
        let bottom = f.component(n - 1).hstack(&y.differential(n));
        diffs.insert(n, top.vstack(&bottom));
    }
    ChainComplex::new(field, dims, diffs)
}

/// The canonical map `K ⊗ Y ∪_{K⊗X} L ⊗ X → L ⊗ Y` for `i : K → L`,
/// `j : X → Y`.
pub fn pushout_product(i: &ChainMap, j: &ChainMap) -> Result<ChainMap> {
    let (k, l) = (i.source(), i.target());
    let (x, y) = (j.source(), j.target());
    let id = ChainMap::identity;
    let k_j = tensor_map(&id(k), j)?;
    let i_x = tensor_map(i, &id(x))?;
    let po = pushout(&k_j, &i_x)?;
    let i_y = tensor_map(i, &id(y))?;
    let l_j = tensor_map(&id(l), j)?;
    po.mediate(&i_y, &l_j)
}
