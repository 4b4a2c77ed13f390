//! Right comodules over a coalgebra and the forgetful–cofree adjunction.

use std::collections::BTreeMap;

use crate::coalg::coalgebra::{structure_error, Coalgebra};
use crate::error::{Error, Result};
use crate::exactla::complex::{ChainComplex, ChainMap, Degree, Element};
use crate::exactla::limits::{direct_sum, subcomplex, GradedSubspace};
use crate::exactla::linalg::{Matrix, SparseVec};
use crate::exactla::system::{MapSystem, UnknownId};
use crate::exactla::tensor::{
    associator, associator_inverse, right_unitor, tensor, tensor_map, TensorLayout,
};
use crate::report::{chain_witness, difference_witness, Report};

/// A right `C`-comodule: carrier `M` and coaction `ρ : M → M ⊗ C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    coalgebra: Coalgebra,
    carrier: ChainComplex,
    coaction: ChainMap,
}

impl Comodule {
    pub fn new(
        coalgebra: Coalgebra,
        carrier: ChainComplex,
        coaction: BTreeMap<Degree, Matrix>,
    ) -> Result<Self> {
        let m = Self::assemble(coalgebra, carrier, coaction)?;
        let report = check_comodule(&m);
        if !report.passed() {
            return Err(structure_error("comodule", &report));
        }
        Ok(m)
    }

    /// Shapes only; the laws are left to [`check_comodule`].
    pub fn assemble(
        coalgebra: Coalgebra,
        carrier: ChainComplex,
        coaction: BTreeMap<Degree, Matrix>,
    ) -> Result<Self> {
        let target = tensor(&carrier, coalgebra.carrier())?;
        let coaction = ChainMap::graded(carrier.clone(), target, coaction)?;
        Ok(Comodule {
            coalgebra,
            carrier,
            coaction,
        })
    }

    pub(crate) fn from_map(coalgebra: Coalgebra, coaction: ChainMap) -> Self {
        let m = Comodule {
            coalgebra,
            carrier: coaction.source().clone(),
            coaction,
        };
        debug_assert!(check_comodule(&m).passed(), "{}", check_comodule(&m));
        m
    }

    /// `C` over itself with `ρ = Δ`.
    pub fn regular(c: &Coalgebra) -> Self {
        Comodule {
            coalgebra: c.clone(),
            carrier: c.carrier().clone(),
            coaction: c.delta().clone(),
        }
    }

    pub fn zero(c: &Coalgebra) -> Self {
        let z = ChainComplex::zero(c.field());
        let t = tensor(&z, c.carrier()).expect("same field");
        Comodule {
            coalgebra: c.clone(),
            carrier: z.clone(),
            coaction: ChainMap::zero(&z, &t),
        }
    }

    pub fn coalgebra(&self) -> &Coalgebra {
        &self.coalgebra
    }

    pub fn carrier(&self) -> &ChainComplex {
        &self.carrier
    }

    pub fn coaction(&self) -> &ChainMap {
        &self.coaction
    }

    /// The same comodule in a new basis, `change[n] = (P_n, P_n^{-1})`;
    /// also returns `P` as a comodule isomorphism.
    pub fn transport(
        &self,
        change: &BTreeMap<Degree, (Matrix, Matrix)>,
    ) -> Result<(Comodule, ComoduleMap)> {
        let carrier = self.carrier.transport(change)?;
        let p = ChainMap::new(
            self.carrier.clone(),
            carrier.clone(),
            change.iter().map(|(n, (m, _))| (*n, m.clone())).collect(),
        )?;
        let p_inv = ChainMap::new(
            carrier.clone(),
            self.carrier.clone(),
            change.iter().map(|(n, (_, m))| (*n, m.clone())).collect(),
        )?;
        let id_c = ChainMap::identity(self.coalgebra.carrier());
        let coaction = tensor_map(&p, &id_c)?
            .compose(&self.coaction)?
            .compose(&p_inv)?;
        let out = Comodule::from_map(self.coalgebra.clone(), coaction);
        let iso = ComoduleMap::trusted(self.clone(), out.clone(), p);
        Ok((out, iso))
    }
}

/// Coassociativity, the counit law and the chain-map property of `ρ`.
pub fn check_comodule(m: &Comodule) -> Report {
    let mut r = Report::new("comodule");
    let (x, c) = (m.carrier(), m.coalgebra().carrier());
    let rho = m.coaction();
    r.clause("coaction is a chain map", chain_witness(rho));
    let id_c = ChainMap::identity(c);
    let id_x = ChainMap::identity(x);
    let lhs = associator(x, c, c)
        .and_then(|a| a.compose(&tensor_map(rho, &id_c)?))
        .and_then(|m| m.compose(rho))
        .expect("shapes agree");
    let rhs = tensor_map(&id_x, m.coalgebra().delta())
        .and_then(|t| t.compose(rho))
        .expect("shapes agree");
    r.clause("coassociativity", difference_witness(&lhs, &rhs));
    let counit = right_unitor(x)
        .and_then(|u| u.compose(&tensor_map(&id_x, m.coalgebra().counit())?))
        .and_then(|u| u.compose(rho))
        .expect("shapes agree");
    r.clause("counit law", difference_witness(&counit, &id_x));
    r
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleMap {
    source: Comodule,
    target: Comodule,
    underlying: ChainMap,
}

impl ComoduleMap {
    pub fn new(source: Comodule, target: Comodule, underlying: ChainMap) -> Result<Self> {
        let f = Self::assemble(source, target, underlying)?;
        let report = check_comodule_map(&f);
        if !report.passed() {
            return Err(structure_error("comodule", &report));
        }
        Ok(f)
    }

    pub fn assemble(source: Comodule, target: Comodule, underlying: ChainMap) -> Result<Self> {
        if source.coalgebra != target.coalgebra {
            return Err(Error::Precondition(
                "comodules over different coalgebras".into(),
            ));
        }
        if underlying.source() != source.carrier() || underlying.target() != target.carrier() {
            return Err(Error::Shape(
                "underlying map does not join the carriers".into(),
            ));
        }
        Ok(ComoduleMap {
            source,
            target,
            underlying,
        })
    }

    pub(crate) fn trusted(source: Comodule, target: Comodule, underlying: ChainMap) -> Self {
        let f = ComoduleMap {
            source,
            target,
            underlying,
        };
        debug_assert!(
            check_comodule_map(&f).passed(),
            "{}",
            check_comodule_map(&f)
        );
        f
    }

    pub fn identity(m: &Comodule) -> Self {
        ComoduleMap {
            source: m.clone(),
            target: m.clone(),
            underlying: ChainMap::identity(m.carrier()),
        }
    }

    pub fn zero(source: &Comodule, target: &Comodule) -> Self {
        ComoduleMap {
            source: source.clone(),
            target: target.clone(),
            underlying: ChainMap::zero(source.carrier(), target.carrier()),
        }
    }

    pub fn source(&self) -> &Comodule {
        &self.source
    }

    pub fn target(&self) -> &Comodule {
        &self.target
    }

    pub fn underlying(&self) -> &ChainMap {
        &self.underlying
    }

    pub fn compose(&self, inner: &ComoduleMap) -> Result<ComoduleMap> {
        if inner.target != self.source {
            return Err(Error::Shape("composition: comodules do not match".into()));
        }
        Ok(ComoduleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            underlying: self.underlying.compose(&inner.underlying)?,
        })
    }

    pub fn add(&self, other: &ComoduleMap) -> Result<ComoduleMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape(
                "sum of comodule maps with different ends".into(),
            ));
        }
        Ok(ComoduleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            underlying: self.underlying.add(&other.underlying)?,
        })
    }
}

pub fn check_comodule_map(f: &ComoduleMap) -> Report {
    let mut r = Report::new("comodule map");
    let u = f.underlying();
    r.clause("chain map", chain_witness(u));
    let id_c = ChainMap::identity(f.source().coalgebra().carrier());
    let lhs = f.target().coaction().compose(u).expect("shapes agree");
    let rhs = tensor_map(u, &id_c)
        .and_then(|t| t.compose(f.source().coaction()))
        .expect("shapes agree");
    r.clause("preserves coaction", difference_witness(&lhs, &rhs));
    r
}

/// `X ⊗ C` with `ρ = id_X ⊗ Δ`, reassociated.
pub fn cofree_comodule(x: &ChainComplex, c: &Coalgebra) -> Result<Comodule> {
    let cc = c.carrier();
    let rho =
        associator_inverse(x, cc, cc)?.compose(&tensor_map(&ChainMap::identity(x), c.delta())?)?;
    Ok(Comodule::from_map(c.clone(), rho))
}

/// `ε_X : X ⊗ C → X`, the counit of the adjunction.
pub fn counit_of_adjunction(x: &ChainComplex, c: &Coalgebra) -> Result<ChainMap> {
    right_unitor(x)?.compose(&tensor_map(&ChainMap::identity(x), c.counit())?)
}

/// `i* = (i ⊗ id_C) ρ : M → X ⊗ C` for a chain map `i : U(M) → X`.
pub fn adjoint_transpose(m: &Comodule, i: &ChainMap) -> Result<ComoduleMap> {
    if i.source() != m.carrier() {
        return Err(Error::Shape(
            "transpose: map does not start at the comodule's carrier".into(),
        ));
    }
    let cofree = cofree_comodule(i.target(), m.coalgebra())?;
    let u = tensor_map(i, &ChainMap::identity(m.coalgebra().carrier()))?.compose(m.coaction())?;
    Ok(ComoduleMap::trusted(m.clone(), cofree, u))
}

/// `f ↦ ε_X U(f)`, inverse to [`adjoint_transpose`].
pub fn transpose_inverse(f: &ComoduleMap, x: &ChainComplex) -> Result<ChainMap> {
    let cofree = cofree_comodule(x, f.source().coalgebra())?;
    if f.target() != &cofree {
        return Err(Error::Shape(
            "transpose inverse: target is not the cofree comodule on X".into(),
        ));
    }
    counit_of_adjunction(x, f.source().coalgebra())?.compose(f.underlying())
}

/// `N ⊕ P` with blockwise coaction; it is both product and coproduct.
#[derive(Clone, Debug)]
pub struct Biproduct {
    pub object: Comodule,
    pub inj: [ComoduleMap; 2],
    pub proj: [ComoduleMap; 2],
}

pub fn biproduct(n: &Comodule, p: &Comodule) -> Result<Biproduct> {
    if n.coalgebra != p.coalgebra {
        return Err(Error::Precondition(
            "comodules over different coalgebras".into(),
        ));
    }
    let id_c = ChainMap::identity(n.coalgebra.carrier());
    let sum = direct_sum(n.carrier(), p.carrier())?;
    let part = |k: usize, m: &Comodule| -> Result<ChainMap> {
        tensor_map(&sum.inj[k], &id_c)?
            .compose(m.coaction())?
            .compose(&sum.proj[k])
    };
    let rho = part(0, n)?.add(&part(1, p)?)?;
    let object = Comodule::from_map(n.coalgebra.clone(), rho);
    let ends = [n, p];
    let inj =
        [0, 1].map(|k| ComoduleMap::trusted(ends[k].clone(), object.clone(), sum.inj[k].clone()));
    let proj =
        [0, 1].map(|k| ComoduleMap::trusted(object.clone(), ends[k].clone(), sum.proj[k].clone()));
    Ok(Biproduct { object, inj, proj })
}

impl Biproduct {
    /// `(f, g) : T → N ⊕ P`.
    pub fn pair(&self, f: &ComoduleMap, g: &ComoduleMap) -> Result<ComoduleMap> {
        self.inj[0].compose(f)?.add(&self.inj[1].compose(g)?)
    }

    /// `[f g] : N ⊕ P → T`.
    pub fn copair(&self, f: &ComoduleMap, g: &ComoduleMap) -> Result<ComoduleMap> {
        f.compose(&self.proj[0])?.add(&g.compose(&self.proj[1])?)
    }
}

/// The subcomodule on a graded subspace closed under `d` and `ρ`, with its
/// inclusion.
pub fn subcomodule(m: &Comodule, span: &GradedSubspace) -> Result<(Comodule, ComoduleMap)> {
    let (sub, inc) = subcomplex(m.carrier(), span)?;
    let c = m.coalgebra();
    let inc_c = tensor_map(&inc, &ChainMap::identity(c.carrier()))?;
    let mut comps = BTreeMap::new();
    for n in sub.degrees() {
        let image = m.coaction().component(n).mul(&inc.component(n));
        let r = inc_c
            .component(n)
            .solve(&image)
            .ok_or_else(|| Error::NotAStructureMap {
                kind: "subcomodule",
                detail: format!("coaction leaves the subspace in degree {n}"),
            })?;
        comps.insert(n, r);
    }
    let rho = ChainMap::graded(sub.clone(), tensor(&sub, c.carrier())?, comps)?;
    let object = Comodule::from_map(c.clone(), rho);
    let inclusion = ComoduleMap::trusted(object.clone(), m.clone(), inc);
    Ok((object, inclusion))
}

/// The smallest subcomodule containing `vectors`: closure under `d` and
/// the left legs of `ρ`.
pub fn subcomodule_generated_by(
    m: &Comodule,
    vectors: &[Element],
) -> Result<(Comodule, ComoduleMap)> {
    let x = m.carrier();
    let layout = TensorLayout::of(x, m.coalgebra().carrier());
    let mut span = GradedSubspace::from_elements(x, vectors);
    loop {
        span.close_under_differential(x);
        let mut grew = false;
        for v in span.basis() {
            let w = m.coaction().component(v.degree).mul_vec(&v.coords);
            let mut legs: BTreeMap<(Degree, usize), SparseVec> = BTreeMap::new();
            for (idx, s) in w {
                let (p, i, j) = layout.split(v.degree, idx);
                legs.entry((p, j)).or_default().push((i, s));
            }
            for ((p, _), leg) in legs {
                grew |= span.insert(&Element::new(p, leg));
            }
        }
        if !grew {
            break;
        }
    }
    subcomodule(m, &span)
}

/// Adds the constraints making unknown `u : M → N` a comodule map.
pub fn require_comodule_map(
    sys: &mut MapSystem,
    u: UnknownId,
    source: &Comodule,
    target: &Comodule,
) {
    let field = sys.field();
    sys.require_chain_map(u, source.carrier(), target.carrier());
    let c_dims = source.coalgebra().carrier().dims().clone();
    let tgt_c = target.coaction().target();
    let minus = field.from_i64(-1);
    for n in source.carrier().degrees() {
        let rows = tgt_c.dim(n);
        if rows == 0 {
            continue;
        }
        let mut eq = sys.equation(rows, source.carrier().dim(n));
        eq.sandwich(
            sys,
            u,
            n,
            Some(&target.coaction().component(n)),
            None,
            &field.one(),
        );
        eq.tensor_right(sys, u, &c_dims, n, &source.coaction().component(n), &minus);
        sys.push(eq);
    }
}

/// A basis of the comodule maps `M → N`.
pub fn comodule_hom_basis(source: &Comodule, target: &Comodule) -> Result<Vec<ComoduleMap>> {
    let mut sys = MapSystem::new(source.coalgebra().field(), 0);
    let u = sys.add_unknown(source.carrier(), target.carrier());
    require_comodule_map(&mut sys, u, source, target);
    let sol = sys.eliminate();
    sol.nullspace()
        .iter()
        .map(|v| {
            let m = ChainMap::graded(
                source.carrier().clone(),
                target.carrier().clone(),
                sol.decode(u, v),
            )?;
            Ok(ComoduleMap::trusted(source.clone(), target.clone(), m))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::coalgebra::{interval_coalgebra, unit_coalgebra};
    use crate::exactla::field::Field;

    fn interval(f: Field) -> Coalgebra {
        interval_coalgebra(f, false).object
    }

    fn cyl_complex(f: Field) -> ChainComplex {
        interval(f).carrier().clone()
    }

    #[test]
    fn regular_and_cofree_pass() {
        for f in [Field::Rationals, Field::Prime(2), Field::Prime(3)] {
            let c = interval(f);
            assert!(check_comodule(&Comodule::regular(&c)).passed());
            let m = cofree_comodule(&cyl_complex(f), &c).unwrap();
            assert!(check_comodule(&m).passed());
            let on_unit = cofree_comodule(&ChainComplex::unit(f), &c).unwrap();
            assert_eq!(on_unit, Comodule::regular(&c));
        }
    }

    #[test]
    fn sign_flip_breaks_counit_law() {
        let f = Field::Rationals;
        let c = interval(f);
        let reg = Comodule::regular(&c);
        let mut comps = reg.coaction().nonzero_components().clone();
        let flip = Matrix::from_i64_rows(f, &[&[-1, 0], &[0, 1]]);
        comps.insert(0, comps[&0].mul(&flip));
        let bad = Comodule::assemble(c, reg.carrier().clone(), comps).unwrap();
        let r = check_comodule(&bad);
        assert_eq!(r.clause_passed("counit law"), Some(false));
    }

    #[test]
    fn transpose_round_trip() {
        let f = Field::Prime(5);
        let c = interval(f);
        let m = Comodule::regular(&c);
        let x = ChainComplex::unit(f);
        let i = ChainMap::new(
            m.carrier().clone(),
            x.clone(),
            BTreeMap::from([(0, Matrix::from_i64_rows(f, &[&[2, 2]]))]),
        )
        .unwrap();
        let t = adjoint_transpose(&m, &i).unwrap();
        assert!(check_comodule_map(&t).passed());
        assert_eq!(transpose_inverse(&t, &x).unwrap(), i);
        let z = adjoint_transpose(&m, &ChainMap::zero(m.carrier(), &x)).unwrap();
        assert!(z.underlying().is_zero());
    }

    #[test]
    fn counit_transposes_to_identity() {
        let f = Field::Rationals;
        let c = interval(f);
        let m = Comodule::regular(&c);
        let eps = c.counit().clone();
        let t = adjoint_transpose(&m, &eps).unwrap();
        assert_eq!(
            t.underlying(),
            &ChainMap::identity(m.carrier())
                .retarget(m.carrier(), t.target().carrier())
                .unwrap()
        );
    }

    #[test]
    fn biproduct_identities() {
        let f = Field::Rationals;
        let c = interval(f);
        let m = Comodule::regular(&c);
        let b = biproduct(&m, &Comodule::zero(&c)).unwrap();
        assert_eq!(b.object, m);
        let b = biproduct(&m, &m).unwrap();
        assert!(check_comodule(&b.object).passed());
        assert_eq!(
            b.proj[0].compose(&b.inj[0]).unwrap(),
            ComoduleMap::identity(&m)
        );
        assert!(b.proj[1].compose(&b.inj[0]).unwrap().underlying().is_zero());
    }

    #[test]
    fn subcomodules_of_regular() {
        let f = Field::Rationals;
        let c = interval(f);
        let m = Comodule::regular(&c);
        let (a, inc) = subcomodule_generated_by(&m, &[Element::basis(f, 0, 0)]).unwrap();
        assert_eq!(a.carrier().dims(), &BTreeMap::from([(0, 1)]));
        assert!(check_comodule_map(&inc).passed());
        // ρ(e) has left legs a and e, and de = b - a
        let (all, _) = subcomodule_generated_by(&m, &[Element::basis(f, 1, 0)]).unwrap();
        assert_eq!(all.carrier().total_dim(), 3);
    }

    #[test]
    fn hom_basis_over_unit_is_chain_maps() {
        let f = Field::Rationals;
        let u = unit_coalgebra(f);
        let m = cofree_comodule(&cyl_complex(f), &u).unwrap();
        assert_eq!(comodule_hom_basis(&m, &m).unwrap().len(), 3);
    }
}
