//! Factorization and lifting for comodule maps.
//!
//! A map `f : M → N` factors as `M → N ⊕ (X ⊗ C) → N` where `X` is the
//! cone of the identity on `U(M)`: the first map is `(f, i*)` with `i`
//! the inclusion into the cone, the second is the projection. Squares
//! against the projection are filled by extending along the cone's
//! contraction and transposing.

use serde::{Deserialize, Serialize};

use crate::comod::comodule::{
    adjoint_transpose, biproduct, check_comodule_map, cofree_comodule, counit_of_adjunction,
    require_comodule_map, Biproduct, Comodule, ComoduleMap,
};
use crate::error::{Error, Result};
use crate::exactla::complex::{ChainComplex, ChainMap};
use crate::exactla::homology::{homology, is_epi, is_mono, is_quasi_iso};
use crate::exactla::limits::{cone_of_identity, Cone};
use crate::exactla::system::MapSystem;
use crate::report::{difference_witness, Report};

#[derive(Clone, Debug)]
pub struct FactorizationResult {
    pub map: ComoduleMap,
    pub cone: Cone,
    pub cofree: Comodule,
    pub biproduct: Biproduct,
    pub j: ComoduleMap,
    pub p1: ComoduleMap,
}

impl FactorizationResult {
    pub fn middle(&self) -> &Comodule {
        &self.biproduct.object
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new("factorization");
        r.merge("j: ", check_comodule_map(&self.j));
        r.merge("p1: ", check_comodule_map(&self.p1));
        let composite = self
            .p1
            .underlying()
            .compose(self.j.underlying())
            .expect("composable");
        r.clause(
            "p1 j = f",
            difference_witness(&composite, self.map.underlying()),
        );
        r.flag("j is a monomorphism", is_mono(self.j.underlying()));
        r.flag(
            "p1 is a quasi-isomorphism",
            is_quasi_iso(self.p1.underlying()),
        );
        r.flag("p1 is surjective", is_epi(self.p1.underlying()));
        r.flag(
            "cofree factor is acyclic",
            homology(self.cofree.carrier()).values().all(|&b| b == 0),
        );
        r
    }
}

pub fn factorize_comodule_map(f: &ComoduleMap) -> Result<FactorizationResult> {
    let m = f.source();
    let cone = cone_of_identity(m.carrier());
    let cofree = cofree_comodule(&cone.object, m.coalgebra())?;
    let biproduct = biproduct(f.target(), &cofree)?;
    let i_star = adjoint_transpose(m, &cone.inclusion)?;
    let j = biproduct.pair(f, &i_star)?;
    let p1 = biproduct.proj[0].clone();
    Ok(FactorizationResult {
        map: f.clone(),
        cone,
        cofree,
        biproduct,
        j,
        p1,
    })
}

/// A commutative square `right ∘ top = bottom ∘ left` of comodule maps.
#[derive(Clone, Debug)]
pub struct ComodSquare {
    pub left: ComoduleMap,
    pub right: ComoduleMap,
    pub top: ComoduleMap,
    pub bottom: ComoduleMap,
}

impl ComodSquare {
    pub fn new(
        left: ComoduleMap,
        right: ComoduleMap,
        top: ComoduleMap,
        bottom: ComoduleMap,
    ) -> Result<Self> {
        if left.source() != top.source()
            || left.target() != bottom.source()
            || top.target() != right.source()
            || bottom.target() != right.target()
        {
            return Err(Error::Shape("square: ends do not match".into()));
        }
        if right.compose(&top)?.underlying() != bottom.compose(&left)?.underlying() {
            return Err(Error::SquareDoesNotCommute);
        }
        Ok(ComodSquare {
            left,
            right,
            top,
            bottom,
        })
    }

    pub fn is_filler(&self, l: &ComoduleMap) -> bool {
        check_comodule_map(l).passed()
            && l.compose(&self.left)
                .is_ok_and(|m| m.underlying() == self.top.underlying())
            && self
                .right
                .compose(l)
                .is_ok_and(|m| m.underlying() == self.bottom.underlying())
    }
}

/// Fills a square whose right leg is the projection of `fact` and whose
/// left leg is a monomorphism.
pub fn solve_comodule_lifting(fact: &FactorizationResult, sq: &ComodSquare) -> Result<ComoduleMap> {
    if sq.right != fact.p1 {
        return Err(Error::Precondition(
            "right leg is not the factorization's projection".into(),
        ));
    }
    if !is_mono(sq.left.underlying()) {
        return Err(Error::Precondition("left leg is not a monomorphism".into()));
    }
    let x = &fact.cone.object;
    let coalgebra = sq.left.source().coalgebra();
    let to_cofree = fact.biproduct.proj[1].compose(&sq.top)?;
    let h = counit_of_adjunction(x, coalgebra)?.compose(to_cofree.underlying())?;
    let g = fact.cone.extend_along(&h, sq.left.underlying())?;
    let g_star = adjoint_transpose(sq.left.target(), &g)?;
    let lift = fact.biproduct.pair(&sq.bottom, &g_star)?;
    if !sq.is_filler(&lift) {
        return Err(Error::Internal(
            "cone extension did not fill the square".into(),
        ));
    }
    Ok(lift)
}

/// Diagonals for several squares sharing `left : A → B` and
/// `right : X → Y`, found by one linear solve; each entry of `corners` is
/// a `(top, bottom)` pair of chain maps.
pub fn linear_lifts(
    left: &ComoduleMap,
    right: &ComoduleMap,
    corners: &[(ChainMap, ChainMap)],
) -> Result<Vec<Option<ComoduleMap>>> {
    let field = left.source().coalgebra().field();
    let (a, b) = (left.source().carrier(), left.target().carrier());
    let (x, y) = (right.source().carrier(), right.target().carrier());
    let mut sys = MapSystem::new(field, corners.len());
    let u = sys.add_unknown(b, x);
    require_comodule_map(&mut sys, u, left.target(), right.source());
    let one = field.one();
    for n in ChainComplex::union_degrees([a, b]) {
        if a.dim(n) > 0 && x.dim(n) > 0 {
            let mut eq = sys.equation(x.dim(n), a.dim(n));
            eq.sandwich(
                &sys,
                u,
                n,
                None,
                Some(&left.underlying().component(n)),
                &one,
            );
            for (k, (top, _)) in corners.iter().enumerate() {
                eq.rhs(field, k, &top.component(n));
            }
            sys.push(eq);
        }
        if b.dim(n) > 0 && y.dim(n) > 0 {
            let mut eq = sys.equation(y.dim(n), b.dim(n));
            eq.sandwich(
                &sys,
                u,
                n,
                Some(&right.underlying().component(n)),
                None,
                &one,
            );
            for (k, (_, bottom)) in corners.iter().enumerate() {
                eq.rhs(field, k, &bottom.component(n));
            }
            sys.push(eq);
        }
    }
    let sol = sys.eliminate();
    (0..corners.len())
        .map(|k| {
            let Some(v) = sol.particular(k) else {
                return Ok(None);
            };
            let m = ChainMap::graded(b.clone(), x.clone(), sol.decode(u, &v))?;
            Ok(Some(ComoduleMap::trusted(
                left.target().clone(),
                right.source().clone(),
                m,
            )))
        })
        .collect()
}

/// A diagonal for any square, or `None` when there is none.
pub fn linear_lift(sq: &ComodSquare) -> Result<Option<ComoduleMap>> {
    let corner = (sq.top.underlying().clone(), sq.bottom.underlying().clone());
    Ok(linear_lifts(&sq.left, &sq.right, &[corner])?
        .pop()
        .flatten())
}

/// A basis of the commutative squares from `left` to `right`, as
/// `(top, bottom)` pairs.
pub fn square_basis(
    left: &ComoduleMap,
    right: &ComoduleMap,
) -> Result<Vec<(ComoduleMap, ComoduleMap)>> {
    let field = left.source().coalgebra().field();
    let (a, b) = (left.source(), left.target());
    let (x, y) = (right.source(), right.target());
    let mut sys = MapSystem::new(field, 0);
    let t = sys.add_unknown(a.carrier(), x.carrier());
    let s = sys.add_unknown(b.carrier(), y.carrier());
    require_comodule_map(&mut sys, t, a, x);
    require_comodule_map(&mut sys, s, b, y);
    let (one, minus) = (field.one(), field.from_i64(-1));
    for n in a.carrier().degrees() {
        if y.carrier().dim(n) == 0 {
            continue;
        }
        let mut eq = sys.equation(y.carrier().dim(n), a.carrier().dim(n));
        eq.sandwich(
            &sys,
            t,
            n,
            Some(&right.underlying().component(n)),
            None,
            &one,
        );
        eq.sandwich(
            &sys,
            s,
            n,
            None,
            Some(&left.underlying().component(n)),
            &minus,
        );
        sys.push(eq);
    }
    let sol = sys.eliminate();
    sol.nullspace()
        .iter()
        .map(|v| {
            let top = ChainMap::graded(a.carrier().clone(), x.carrier().clone(), sol.decode(t, v))?;
            let bottom =
                ChainMap::graded(b.carrier().clone(), y.carrier().clone(), sol.decode(s, v))?;
            Ok((
                ComoduleMap::trusted(a.clone(), x.clone(), top),
                ComoduleMap::trusted(b.clone(), y.clone(), bottom),
            ))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RlpEntry {
    pub left: usize,
    pub squares: usize,
    pub lifted: usize,
    /// Indices into the square basis with no diagonal.
    pub missing: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RlpReport {
    pub entries: Vec<RlpEntry>,
}

impl RlpReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.missing.is_empty())
    }
}

/// Decides whether `right` lifts against each map in `lefts`. Diagonals
/// form an affine space over the squares, so lifting a basis of squares
/// decides every square.
pub fn has_rlp(right: &ComoduleMap, lefts: &[ComoduleMap]) -> Result<RlpReport> {
    let mut entries = Vec::new();
    for (idx, left) in lefts.iter().enumerate() {
        let basis = square_basis(left, right)?;
        let corners: Vec<(ChainMap, ChainMap)> = basis
            .iter()
            .map(|(t, b)| (t.underlying().clone(), b.underlying().clone()))
            .collect();
        let lifts = linear_lifts(left, right, &corners)?;
        let missing: Vec<usize> = lifts
            .iter()
            .enumerate()
            .filter(|(_, l)| l.is_none())
            .map(|(k, _)| k)
            .collect();
        entries.push(RlpEntry {
            left: idx,
            squares: basis.len(),
            lifted: basis.len() - missing.len(),
            missing,
        });
    }
    Ok(RlpReport { entries })
}

/// `f` as a retract of the projection of its factorization: a map
/// `r : N ⊕ (X ⊗ C) → M` with `r j = id` and `f r = p1`.
#[derive(Clone, Debug)]
pub struct RetractWitness {
    pub factorization: FactorizationResult,
    pub retraction: ComoduleMap,
}

impl RetractWitness {
    pub fn check(&self) -> Report {
        let fact = &self.factorization;
        let mut r = Report::new("retract");
        r.merge("retraction: ", check_comodule_map(&self.retraction));
        let rj = self
            .retraction
            .underlying()
            .compose(fact.j.underlying())
            .expect("composable");
        r.clause(
            "r j = id",
            difference_witness(&rj, &ChainMap::identity(fact.map.source().carrier())),
        );
        let fr = fact
            .map
            .underlying()
            .compose(self.retraction.underlying())
            .expect("composable");
        r.clause("f r = p1", difference_witness(&fr, fact.p1.underlying()));
        r
    }
}

/// Solves `j` against `f` with top `id_M` and bottom `p1`; a diagonal
/// exhibits `f` as a retract of `p1`.
pub fn retract_argument(f: &ComoduleMap) -> Result<RetractWitness> {
    let factorization = factorize_comodule_map(f)?;
    let sq = ComodSquare::new(
        factorization.j.clone(),
        f.clone(),
        ComoduleMap::identity(f.source()),
        factorization.p1.clone(),
    )?;
    let retraction =
        linear_lift(&sq)?.ok_or_else(|| Error::NoLift("j has no diagonal against f".into()))?;
    Ok(RetractWitness {
        factorization,
        retraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::coalgebra::interval_coalgebra;
    use crate::comod::comodule::{comodule_hom_basis, subcomodule_generated_by};
    use crate::exactla::complex::Element;
    use crate::exactla::field::Field;

    fn regular(f: Field) -> Comodule {
        Comodule::regular(&interval_coalgebra(f, false).object)
    }

    #[test]
    fn factorization_of_identity_and_zero() {
        for f in [Field::Rationals, Field::Prime(2)] {
            let m = regular(f);
            for map in [ComoduleMap::identity(&m), ComoduleMap::zero(&m, &m)] {
                let fact = factorize_comodule_map(&map).unwrap();
                let r = fact.check();
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn projection_lifts_against_inclusion() {
        let f = Field::Prime(3);
        let m = regular(f);
        let (a, k) = subcomodule_generated_by(&m, &[Element::basis(f, 0, 1)]).unwrap();
        let fact = factorize_comodule_map(&ComoduleMap::identity(&m)).unwrap();
        let basis = square_basis(&k, &fact.p1).unwrap();
        assert!(!basis.is_empty());
        for (top, bottom) in basis {
            let sq = ComodSquare::new(k.clone(), fact.p1.clone(), top, bottom).unwrap();
            let l = solve_comodule_lifting(&fact, &sq).unwrap();
            assert!(sq.is_filler(&l));
        }
        let report = has_rlp(&fact.p1, std::slice::from_ref(&k)).unwrap();
        assert!(report.holds());
        assert_eq!(a.carrier().total_dim(), 1);
    }

    #[test]
    fn retract_of_endomorphisms() {
        let f = Field::Rationals;
        let m = regular(f);
        for map in comodule_hom_basis(&m, &m).unwrap() {
            let w = retract_argument(&map).unwrap();
            assert!(w.check().passed());
        }
    }

    #[test]
    fn endpoint_has_no_comodule_retraction() {
        // a retraction M → span{a} would have to send b to a multiple of a,
        // which the coaction forbids
        let f = Field::Rationals;
        let m = regular(f);
        let (a, k) = subcomodule_generated_by(&m, &[Element::basis(f, 0, 0)]).unwrap();
        let right = ComoduleMap::zero(&a, &Comodule::zero(m.coalgebra()));
        let report = has_rlp(&right, &[k]).unwrap();
        assert!(!report.holds());
        assert_eq!(report.entries[0].squares, 1);
        assert_eq!(report.entries[0].missing, vec![0]);
    }
}
