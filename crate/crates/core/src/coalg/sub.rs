//! Subcoalgebras: images, intersections, unions and generation.

use std::collections::BTreeMap;

use crate::coalg::coalgebra::{check_comonoid, Coalgebra, CoalgebraMap};
use crate::error::{Error, Result};
use crate::exactla::complex::{ChainMap, Degree, Element};
use crate::exactla::homology::{is_iso, is_mono};
use crate::exactla::limits::{image_factorization, pullback, subcomplex, GradedSubspace};
use crate::exactla::linalg::SparseVec;
use crate::exactla::tensor::{tensor, tensor_map, TensorLayout};
use crate::report::Report;

/// A subcoalgebra, held as a graded subspace of the ambient carrier
/// together with the induced coalgebra on its canonical basis.
#[derive(Clone, Debug)]
pub struct Subcoalgebra {
    ambient: Coalgebra,
    span: GradedSubspace,
    object: Coalgebra,
    inclusion: CoalgebraMap,
}

impl PartialEq for Subcoalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.span == other.span && self.ambient == other.ambient
    }
}

impl Eq for Subcoalgebra {}

impl Subcoalgebra {
    /// Fails unless `span` is closed under `d` and `Δ(span) ⊆ span ⊗ span`.
    pub fn from_span(ambient: &Coalgebra, span: GradedSubspace) -> Result<Self> {
        let x = ambient.carrier();
        if !span.is_closed_under_differential(x) {
            return Err(Error::NotAStructureMap {
                kind: "subcoalgebra",
                detail: "subspace is not closed under the differential".into(),
            });
        }
        let (sub, inc) = subcomplex(x, &span)?;
        let inc2 = tensor_map(&inc, &inc)?;
        let square = tensor(&sub, &sub)?;
        let mut delta = BTreeMap::new();
        for n in sub.degrees() {
            let image = ambient.delta().component(n).mul(&inc.component(n));
            let d = inc2
                .component(n)
                .solve(&image)
                .ok_or_else(|| Error::NotAStructureMap {
                    kind: "subcoalgebra",
                    detail: format!("comultiplication leaves the subspace in degree {n}"),
                })?;
            delta.insert(n, d);
        }
        let delta = ChainMap::graded(sub.clone(), square, delta)?;
        let counit = ambient.counit().compose(&inc)?;
        let object = Coalgebra::from_maps(delta, counit);
        let inclusion = CoalgebraMap::trusted(object.clone(), ambient.clone(), inc);
        Ok(Subcoalgebra {
            ambient: ambient.clone(),
            span,
            object,
            inclusion,
        })
    }

    pub fn whole(c: &Coalgebra) -> Self {
        Self::from_span(c, GradedSubspace::full(c.carrier())).expect("the whole coalgebra")
    }

    pub fn zero(c: &Coalgebra) -> Self {
        Self::from_span(c, GradedSubspace::zero(c.carrier())).expect("the zero subcoalgebra")
    }

    pub fn ambient(&self) -> &Coalgebra {
        &self.ambient
    }

    pub fn span(&self) -> &GradedSubspace {
        &self.span
    }

    pub fn object(&self) -> &Coalgebra {
        &self.object
    }

    pub fn inclusion(&self) -> &CoalgebraMap {
        &self.inclusion
    }

    pub fn dims(&self) -> BTreeMap<Degree, usize> {
        self.span.dims()
    }

    pub fn total_dim(&self) -> usize {
        self.span.total_dim()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.span.contains(e)
    }

    pub fn is_contained_in(&self, other: &Subcoalgebra) -> bool {
        self.span.is_subspace_of(&other.span)
    }

    /// The inclusion `self ↪ other` when `self ⊆ other`.
    pub fn inclusion_into(&self, other: &Subcoalgebra) -> Result<CoalgebraMap> {
        if !self.is_contained_in(other) {
            return Err(Error::Precondition(
                "not a subcoalgebra of the other".into(),
            ));
        }
        let mut comps = BTreeMap::new();
        for n in self.object.carrier().degrees() {
            let m = other
                .span
                .space(n)
                .coords_matrix(&self.span.basis_matrix(n))
                .expect("contained");
            comps.insert(n, m);
        }
        let u = ChainMap::new(
            self.object.carrier().clone(),
            other.object.carrier().clone(),
            comps,
        )?;
        Ok(CoalgebraMap::trusted(
            self.object.clone(),
            other.object.clone(),
            u,
        ))
    }

    /// Coordinates of an ambient vector in the canonical basis.
    pub fn coords(
        &self,
        n: Degree,
        v: &[(usize, crate::exactla::field::Scalar)],
    ) -> Option<SparseVec> {
        self.span.coords(n, v)
    }
}

fn same_ambient(a: &Subcoalgebra, b: &Subcoalgebra) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::Precondition(
            "subcoalgebras of different coalgebras".into(),
        ));
    }
    Ok(())
}

/// `f = m ∘ e` with `e` an epi of coalgebras onto the image and `m` its
/// inclusion into the target.
pub fn image_subcoalgebra(f: &CoalgebraMap) -> Result<(CoalgebraMap, Subcoalgebra)> {
    let im = image_factorization(f.underlying())?;
    let m = Subcoalgebra::from_span(f.target(), im.span).map_err(|e| {
        Error::Internal(format!(
            "image of a coalgebra map is not a subcoalgebra: {e}"
        ))
    })?;
    let epi = im
        .epi
        .retarget(f.source().carrier(), m.object().carrier())?;
    let e = CoalgebraMap::new(f.source().clone(), m.object().clone(), epi)
        .map_err(|e| Error::Internal(format!("corestriction is not a coalgebra map: {e}")))?;
    Ok((e, m))
}

pub fn intersect_subcoalgebras(a: &Subcoalgebra, b: &Subcoalgebra) -> Result<Subcoalgebra> {
    same_ambient(a, b)?;
    Subcoalgebra::from_span(&a.ambient, a.span.intersect(&b.span))
        .map_err(|e| Error::Internal(format!("intersection is not a subcoalgebra: {e}")))
}

pub fn union_subcoalgebras(a: &Subcoalgebra, b: &Subcoalgebra) -> Result<Subcoalgebra> {
    same_ambient(a, b)?;
    Subcoalgebra::from_span(&a.ambient, a.span.sum(&b.span))
        .map_err(|e| Error::Internal(format!("sum is not a subcoalgebra: {e}")))
}

/// The map out of `E ∪ B` restricting to `on_e` and `on_b`; they must
/// agree on `E ∩ B`.
pub fn glue(
    e: &Subcoalgebra,
    b: &Subcoalgebra,
    on_e: &ChainMap,
    on_b: &ChainMap,
) -> Result<ChainMap> {
    same_ambient(e, b)?;
    if on_e.target() != on_b.target() {
        return Err(Error::Shape("glued maps have different targets".into()));
    }
    let u = union_subcoalgebras(e, b)?;
    let target = on_e.target();
    let mut comps = BTreeMap::new();
    for n in u.object.carrier().degrees() {
        let (em, bm) = (e.span.basis_matrix(n), b.span.basis_matrix(n));
        let joint = em.hstack(&bm);
        let coeffs = joint
            .solve(&u.span.basis_matrix(n))
            .expect("the sum spans the union");
        let values = on_e.component(n).hstack(&on_b.component(n));
        comps.insert(n, values.mul(&coeffs));
        // agreement on the overlap: every kernel vector of [E | B] must map to zero
        if !values.mul(&joint.kernel()).is_zero() {
            return Err(Error::SquareDoesNotCommute);
        }
    }
    ChainMap::new(u.object.carrier().clone(), target.clone(), comps)
}

/// Left and right tensor legs of `w ∈ (C ⊗ C)_n`.
fn legs(
    layout: &TensorLayout,
    n: Degree,
    w: &[(usize, crate::exactla::field::Scalar)],
) -> Vec<Element> {
    let mut left: BTreeMap<(Degree, usize), SparseVec> = BTreeMap::new();
    let mut right: BTreeMap<(Degree, usize), SparseVec> = BTreeMap::new();
    for (idx, v) in w {
        let (p, i, j) = layout.split(n, *idx);
        left.entry((p, j)).or_default().push((i, v.clone()));
        right.entry((p, i)).or_default().push((j, v.clone()));
    }
    let mut out: Vec<Element> = left
        .into_iter()
        .map(|((p, _), v)| Element::new(p, v))
        .collect();
    out.extend(right.into_iter().map(|((p, _), v)| Element::new(n - p, v)));
    out
}

/// The smallest subcoalgebra containing `vectors`: alternately close
/// under `d`, then under both legs of `Δ`, until nothing changes.
pub fn subcoalgebra_generated_by(c: &Coalgebra, vectors: &[Element]) -> Result<Subcoalgebra> {
    let x = c.carrier();
    for v in vectors {
        if v.coords.iter().any(|(i, _)| *i >= x.dim(v.degree)) {
            return Err(Error::Shape(format!(
                "vector outside the carrier in degree {}",
                v.degree
            )));
        }
    }
    let layout = TensorLayout::of(x, x);
    let mut span = GradedSubspace::from_elements(x, vectors);
    loop {
        span.close_under_differential(x);
        let mut grew = false;
        for v in span.basis() {
            let w = c.delta().component(v.degree).mul_vec(&v.coords);
            for leg in legs(&layout, v.degree, &w) {
                grew |= span.insert(&leg);
            }
        }
        if !grew {
            break;
        }
    }
    Subcoalgebra::from_span(c, span)
}

/// The subcoalgebras generated by each basis vector; their union is `C`.
pub fn decompose_into_subcoalgebras(c: &Coalgebra) -> Result<Vec<Subcoalgebra>> {
    let field = c.field();
    let mut parts = Vec::new();
    let mut acc = Subcoalgebra::zero(c);
    for (n, i) in c.carrier().basis().collect::<Vec<_>>() {
        let s = subcoalgebra_generated_by(c, &[Element::basis(field, n, i)])?;
        acc = union_subcoalgebras(&acc, &s)?;
        parts.push(s);
    }
    if acc != Subcoalgebra::whole(c) {
        return Err(Error::Internal(
            "generated subcoalgebras do not exhaust the coalgebra".into(),
        ));
    }
    Ok(parts)
}

/// `A ⊗ B = (A ⊗ Y) ∩ (X ⊗ B)` inside `X ⊗ Y` for monos `A ↪ X`, `B ↪ Y`.
pub fn verify_tensor_intersection(a: &ChainMap, b: &ChainMap) -> Result<bool> {
    if !is_mono(a) || !is_mono(b) {
        return Err(Error::Precondition(
            "tensor intersection needs monomorphisms".into(),
        ));
    }
    let (x, y) = (a.target(), b.target());
    let xy = tensor(x, y)?;
    let span = |f: &ChainMap| GradedSubspace::from_columns(&xy, f.nonzero_components());
    let lhs = span(&tensor_map(a, b)?);
    let ay = span(&tensor_map(a, &ChainMap::identity(y))?);
    let xb = span(&tensor_map(&ChainMap::identity(x), b)?);
    let rhs = ay.intersect(&xb);
    Ok(lhs == rhs && lhs.is_subspace_of(&rhs) && rhs.is_subspace_of(&lhs))
}

/// The two faces of the intersection cube for `i : D ↪ C ↩ E : j`.
#[derive(Clone, Debug)]
pub struct IntersectionCube {
    /// `D ∩ E` as the pullback of `i` and `j`, with the induced coalgebra.
    pub intersection: Coalgebra,
    /// Dimensions of the iterated pullback computing the bottom face.
    pub iterated_dims: BTreeMap<Degree, usize>,
    /// Dimensions of `(D ∩ E) ⊗ (D ∩ E)`.
    pub expected_dims: BTreeMap<Degree, usize>,
    pub report: Report,
}

impl IntersectionCube {
    pub fn iterated_total(&self) -> usize {
        self.iterated_dims.values().sum()
    }
}

/// Builds `D ∩ E` as a pullback, its tensor square as an iterated pullback
/// of `D ⊗ D → C ⊗ C ← E ⊗ E`, and the comultiplication the cube induces.
pub fn intersection_cube(d: &Subcoalgebra, e: &Subcoalgebra) -> Result<IntersectionCube> {
    same_ambient(d, e)?;
    let c = d.ambient.carrier();
    let (i, j) = (d.inclusion.underlying(), e.inclusion.underlying());
    let (dd, ee) = (d.object.carrier(), e.object.carrier());
    let id = ChainMap::identity;

    // iterated pullback: D⊗E, then (D∩E)⊗E and D⊗(D∩E), then P
    let c_j = tensor_map(&id(c), j)?;
    let i_c = tensor_map(i, &id(c))?;
    let q1 = pullback(&c_j, &i_c)?;
    let j_e = tensor_map(j, &id(ee))?;
    let q2 = pullback(&j_e, &q1.left)?;
    let d_i = tensor_map(&id(dd), i)?;
    let q3 = pullback(&q1.right, &d_i)?;
    let p = pullback(&q2.right, &q3.left)?;

    // top face and the bottom face computed directly
    let top = pullback(i, j)?;
    let bottom = pullback(&tensor_map(i, i)?, &tensor_map(j, j)?)?;
    let t = top.object.clone();
    let phi = bottom.mediate(
        &tensor_map(&top.left, &top.left)?,
        &tensor_map(&top.right, &top.right)?,
    )?;
    let mut report = Report::new("intersection cube");
    report.flag(
        "(D∩E)⊗(D∩E) → bottom pullback is an isomorphism",
        is_iso(&phi),
    );
    report.flag(
        "iterated pullback matches the bottom face",
        p.object.dims() == bottom.object.dims(),
    );
    let cand = bottom.mediate(
        &d.object.delta().compose(&top.left)?,
        &e.object.delta().compose(&top.right)?,
    )?;
    let mut comps = BTreeMap::new();
    for n in t.degrees() {
        let m = phi
            .component(n)
            .solve(&cand.component(n))
            .ok_or_else(|| Error::Internal("induced comultiplication does not factor".into()))?;
        comps.insert(n, m);
    }
    let delta = ChainMap::graded(t.clone(), tensor(&t, &t)?, comps)?;
    let counit = d.object.counit().compose(&top.left)?;
    let intersection = Coalgebra::assemble(
        t.clone(),
        delta.nonzero_components().clone(),
        counit.nonzero_components().clone(),
    )?;
    report.merge("induced: ", check_comonoid(&intersection));
    let expected_dims = tensor(&t, &t)?.dims().clone();
    Ok(IntersectionCube {
        intersection,
        iterated_dims: p.object.dims().clone(),
        expected_dims,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::coalgebra::{group_like, interval_coalgebra, unit_coalgebra};
    use crate::exactla::complex::ChainComplex;
    use crate::exactla::field::Field;
    use crate::exactla::linalg::Matrix;

    fn interval(f: Field) -> Coalgebra {
        interval_coalgebra(f, false).object
    }

    fn el(f: Field, n: Degree, i: usize) -> Element {
        Element::basis(f, n, i)
    }

    #[test]
    fn generation_in_interval() {
        let f = Field::Rationals;
        let c = interval(f);
        let a = subcoalgebra_generated_by(&c, &[el(f, 0, 0)]).unwrap();
        assert_eq!(a.dims(), BTreeMap::from([(0, 1)]));
        let all = subcoalgebra_generated_by(&c, &[el(f, 1, 0)]).unwrap();
        assert_eq!(all, Subcoalgebra::whole(&c));
        assert_eq!(subcoalgebra_generated_by(&c, &[]).unwrap().total_dim(), 0);
    }

    #[test]
    fn lattice_in_interval() {
        let f = Field::Prime(5);
        let c = interval(f);
        let a = subcoalgebra_generated_by(&c, &[el(f, 0, 0)]).unwrap();
        let b = subcoalgebra_generated_by(&c, &[el(f, 0, 1)]).unwrap();
        assert_eq!(intersect_subcoalgebras(&a, &b).unwrap().total_dim(), 0);
        let u = union_subcoalgebras(&a, &b).unwrap();
        assert_eq!(u.dims(), BTreeMap::from([(0, 2)]));
        assert_eq!(intersect_subcoalgebras(&a, &a).unwrap(), a);
        assert_eq!(union_subcoalgebras(&a, &a).unwrap(), a);
    }

    #[test]
    fn decomposition_covers() {
        let f = Field::Rationals;
        let parts = decompose_into_subcoalgebras(&interval(f)).unwrap();
        assert_eq!(parts.len(), 3);
        for p in &parts {
            assert!(check_comonoid(p.object()).passed());
        }
        let unit = decompose_into_subcoalgebras(&unit_coalgebra(f)).unwrap();
        assert_eq!(unit, vec![Subcoalgebra::whole(&unit_coalgebra(f))]);
    }

    #[test]
    fn image_of_collapse() {
        // a, b ↦ a and e ↦ 0 on the interval
        let f = Field::Rationals;
        let c = interval(f);
        let u = ChainMap::new(
            c.carrier().clone(),
            c.carrier().clone(),
            BTreeMap::from([(0, Matrix::from_i64_rows(f, &[&[1, 1], &[0, 0]]))]),
        )
        .unwrap();
        let g = CoalgebraMap::new(c.clone(), c.clone(), u).unwrap();
        let (e, m) = image_subcoalgebra(&g).unwrap();
        assert_eq!(m.dims(), BTreeMap::from([(0, 1)]));
        assert_eq!(
            m.inclusion().compose(&e).unwrap().underlying(),
            g.underlying()
        );
    }

    #[test]
    fn cube_in_group_like() {
        let f = Field::Prime(2);
        let c = group_like(f, 3);
        let d = subcoalgebra_generated_by(&c, &[el(f, 0, 0), el(f, 0, 1)]).unwrap();
        let e = subcoalgebra_generated_by(&c, &[el(f, 0, 1), el(f, 0, 2)]).unwrap();
        let cube = intersection_cube(&d, &e).unwrap();
        assert!(cube.report.passed(), "{}", cube.report);
        assert_eq!(cube.iterated_total(), 1);
        assert_eq!(cube.iterated_dims, cube.expected_dims);
    }

    #[test]
    fn gluing_agrees_on_overlap() {
        let f = Field::Rationals;
        let c = interval(f);
        let a = subcoalgebra_generated_by(&c, &[el(f, 0, 0)]).unwrap();
        let b = subcoalgebra_generated_by(&c, &[el(f, 0, 1)]).unwrap();
        let t = ChainComplex::unit(f);
        let one = ChainMap::new(
            a.object().carrier().clone(),
            t.clone(),
            BTreeMap::from([(0, Matrix::identity(f, 1))]),
        )
        .unwrap();
        let one_b = one.retarget(b.object().carrier(), &t).unwrap();
        let g = glue(&a, &b, &one, &one_b).unwrap();
        assert_eq!(g.component(0), Matrix::from_i64_rows(f, &[&[1, 1]]));
    }
}
