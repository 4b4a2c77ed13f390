//! Comonoids in `Ch(k)` and maps between them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::complex::{ChainComplex, ChainMap, Degree};
use crate::exactla::field::Field;
use crate::exactla::limits::direct_sum;
use crate::exactla::linalg::Matrix;
use crate::exactla::tensor::{
    associator, left_unitor, middle_four, right_unitor, symmetry, tensor, tensor_map,
};
use crate::report::{chain_witness, difference_witness, Report};

/// A coalgebra: carrier `C`, comultiplication `Δ : C → C ⊗ C` and counit
/// `ε : C → I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coalgebra {
    carrier: ChainComplex,
    delta: ChainMap,
    counit: ChainMap,
}

pub(crate) fn structure_error(kind: &'static str, report: &Report) -> Error {
    let detail = report
        .failures()
        .map(|c| match c.witness {
            Some(w) => format!("{} fails on {w}", c.name),
            None => format!("{} fails", c.name),
        })
        .collect::<Vec<_>>()
        .join("; ");
    Error::NotAStructureMap { kind, detail }
}

impl Coalgebra {
    /// Validating constructor: the comultiplication and counit are given
    /// by their components and every comonoid law is checked.
    pub fn new(
        carrier: ChainComplex,
        delta: BTreeMap<Degree, Matrix>,
        counit: BTreeMap<Degree, Matrix>,
    ) -> Result<Self> {
        let c = Self::assemble(carrier, delta, counit)?;
        let report = check_comonoid(&c);
        if !report.passed() {
            return Err(structure_error("comonoid", &report));
        }
        Ok(c)
    }

    /// Shapes only; the laws are left to [`check_comonoid`].
    pub fn assemble(
        carrier: ChainComplex,
        delta: BTreeMap<Degree, Matrix>,
        counit: BTreeMap<Degree, Matrix>,
    ) -> Result<Self> {
        let field = carrier.field();
        let square = tensor(&carrier, &carrier)?;
        let delta = ChainMap::graded(carrier.clone(), square, delta)?;
        let counit = ChainMap::graded(carrier.clone(), ChainComplex::unit(field), counit)?;
        Ok(Coalgebra {
            carrier,
            delta,
            counit,
        })
    }

    /// From structure maps known to satisfy the laws.
    pub(crate) fn from_maps(delta: ChainMap, counit: ChainMap) -> Self {
        let c = Coalgebra {
            carrier: delta.source().clone(),
            delta,
            counit,
        };
        debug_assert!(check_comonoid(&c).passed(), "{}", check_comonoid(&c));
        c
    }

    pub fn carrier(&self) -> &ChainComplex {
        &self.carrier
    }

    pub fn delta(&self) -> &ChainMap {
        &self.delta
    }

    pub fn counit(&self) -> &ChainMap {
        &self.counit
    }

    pub fn field(&self) -> Field {
        self.carrier.field()
    }

    pub fn total_dim(&self) -> usize {
        self.carrier.total_dim()
    }

    /// Marks the carrier as non-negatively graded.
    pub fn non_negative(self) -> Result<Self> {
        let carrier = self.carrier.clone().non_negative()?;
        let square = tensor(&carrier, &carrier)?;
        let delta = self.delta.retarget(&carrier, &square)?;
        let counit = self.counit.retarget(&carrier, self.counit.target())?;
        Ok(Coalgebra {
            carrier,
            delta,
            counit,
        })
    }

    /// The same coalgebra in a new basis. `change[n] = (P_n, P_n^{-1})`
    /// with `P` sending old coordinates to new ones; also returns the
    /// isomorphism `P` as a coalgebra map.
    pub fn transport(
        &self,
        change: &BTreeMap<Degree, (Matrix, Matrix)>,
    ) -> Result<(Coalgebra, CoalgebraMap)> {
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
        let delta = tensor_map(&p, &p)?.compose(&self.delta)?.compose(&p_inv)?;
        let counit = self.counit.compose(&p_inv)?;
        let out = Coalgebra::from_maps(delta, counit);
        let iso = CoalgebraMap {
            source: self.clone(),
            target: out.clone(),
            underlying: p,
        };
        Ok((out, iso))
    }
}

/// Reports coassociativity, both counit laws and the chain-map property of
/// `Δ` and `ε`.
pub fn check_comonoid(c: &Coalgebra) -> Report {
    let mut r = Report::new("comonoid");
    let x = c.carrier();
    r.clause("comultiplication is a chain map", chain_witness(c.delta()));
    r.clause("counit is a chain map", chain_witness(c.counit()));
    let id = ChainMap::identity(x);
    let coassoc = (|| -> Result<_> {
        let lhs = associator(x, x, x)?
            .compose(&tensor_map(c.delta(), &id)?)?
            .compose(c.delta())?;
        let rhs = tensor_map(&id, c.delta())?.compose(c.delta())?;
        Ok(difference_witness(&lhs, &rhs))
    })();
    r.clause("coassociativity", coassoc.expect("shapes agree"));
    let left = left_unitor(x)
        .and_then(|l| l.compose(&tensor_map(c.counit(), &id)?))
        .and_then(|m| m.compose(c.delta()))
        .expect("shapes agree");
    r.clause("left counit law", difference_witness(&left, &id));
    let right = right_unitor(x)
        .and_then(|l| l.compose(&tensor_map(&id, c.counit())?))
        .and_then(|m| m.compose(c.delta()))
        .expect("shapes agree");
    r.clause("right counit law", difference_witness(&right, &id));
    r
}

/// `τ ∘ Δ = Δ` with the Koszul-signed symmetry.
pub fn check_cocommutative(c: &Coalgebra) -> bool {
    let x = c.carrier();
    symmetry(x, x)
        .and_then(|t| t.compose(c.delta()))
        .expect("shapes agree")
        == *c.delta()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraMap {
    source: Coalgebra,
    target: Coalgebra,
    underlying: ChainMap,
}

impl CoalgebraMap {
    pub fn new(source: Coalgebra, target: Coalgebra, underlying: ChainMap) -> Result<Self> {
        let f = Self::assemble(source, target, underlying)?;
        let report = check_comonoid_map(&f);
        if !report.passed() {
            return Err(structure_error("coalgebra", &report));
        }
        Ok(f)
    }

    /// Ends only; the laws are left to [`check_comonoid_map`].
    pub fn assemble(source: Coalgebra, target: Coalgebra, underlying: ChainMap) -> Result<Self> {
        if underlying.source() != source.carrier() || underlying.target() != target.carrier() {
            return Err(Error::Shape(
                "underlying map does not join the carriers".into(),
            ));
        }
        Ok(CoalgebraMap {
            source,
            target,
            underlying,
        })
    }

    pub(crate) fn trusted(source: Coalgebra, target: Coalgebra, underlying: ChainMap) -> Self {
        let f = CoalgebraMap {
            source,
            target,
            underlying,
        };
        debug_assert!(
            check_comonoid_map(&f).passed(),
            "{}",
            check_comonoid_map(&f)
        );
        f
    }

    pub fn identity(c: &Coalgebra) -> Self {
        CoalgebraMap {
            source: c.clone(),
            target: c.clone(),
            underlying: ChainMap::identity(c.carrier()),
        }
    }

    pub fn source(&self) -> &Coalgebra {
        &self.source
    }

    pub fn target(&self) -> &Coalgebra {
        &self.target
    }

    pub fn underlying(&self) -> &ChainMap {
        &self.underlying
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CoalgebraMap) -> Result<CoalgebraMap> {
        if inner.target != self.source {
            return Err(Error::Shape("composition: coalgebras do not match".into()));
        }
        Ok(CoalgebraMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            underlying: self.underlying.compose(&inner.underlying)?,
        })
    }
}

pub fn check_comonoid_map(f: &CoalgebraMap) -> Report {
    let mut r = Report::new("coalgebra map");
    let u = f.underlying();
    r.clause("chain map", chain_witness(u));
    let lhs = f.target().delta().compose(u).expect("shapes agree");
    let rhs = tensor_map(u, u)
        .and_then(|t| t.compose(f.source().delta()))
        .expect("shapes agree");
    r.clause("preserves comultiplication", difference_witness(&lhs, &rhs));
    let lhs = f.target().counit().compose(u).expect("shapes agree");
    r.clause(
        "preserves counit",
        difference_witness(&lhs, f.source().counit()),
    );
    r
}

/// `I` with `Δ = λ^{-1}` and `ε = id`.
pub fn unit_coalgebra(field: Field) -> Coalgebra {
    let i = ChainComplex::unit(field);
    let delta = ChainMap::identity(&i)
        .retarget(&i, &tensor(&i, &i).expect("same field"))
        .expect("1x1");
    Coalgebra::from_maps(delta, ChainMap::identity(&i))
}

/// The zero coalgebra, initial among coalgebras.
pub fn zero_coalgebra(field: Field) -> Coalgebra {
    let z = ChainComplex::zero(field);
    Coalgebra::from_maps(
        ChainMap::zero(&z, &z),
        ChainMap::zero(&z, &ChainComplex::unit(field)),
    )
}

/// The coproduct `C ⊔ D`: the direct sum with both comultiplications.
#[derive(Clone, Debug)]
pub struct Coproduct {
    pub object: Coalgebra,
    pub inj: [CoalgebraMap; 2],
}

impl Coproduct {
    /// `[f g] : C ⊔ D → T`.
    pub fn copair(&self, f: &CoalgebraMap, g: &CoalgebraMap) -> Result<CoalgebraMap> {
        let sum = direct_sum(
            self.inj[0].source().carrier(),
            self.inj[1].source().carrier(),
        )?;
        let u = sum
            .copair(f.underlying(), g.underlying())?
            .retarget(self.object.carrier(), f.target().carrier())?;
        CoalgebraMap::new(self.object.clone(), f.target().clone(), u)
    }
}

pub fn coproduct(c: &Coalgebra, d: &Coalgebra) -> Result<Coproduct> {
    let sum = direct_sum(c.carrier(), d.carrier())?;
    let x = &sum.object;
    let part = |k: usize, a: &Coalgebra| -> Result<ChainMap> {
        tensor_map(&sum.inj[k], &sum.inj[k])?
            .compose(a.delta())?
            .compose(&sum.proj[k])
    };
    let delta = part(0, c)?.add(&part(1, d)?)?;
    let counit = c
        .counit()
        .compose(&sum.proj[0])?
        .add(&d.counit().compose(&sum.proj[1])?)?;
    let object = Coalgebra::from_maps(delta, counit);
    let inj = [
        CoalgebraMap::trusted(c.clone(), object.clone(), sum.inj[0].clone()),
        CoalgebraMap::trusted(d.clone(), object.clone(), sum.inj[1].clone()),
    ];
    debug_assert_eq!(x, object.carrier());
    Ok(Coproduct { object, inj })
}

/// `C ⊗ D` with `Δ = (id ⊗ τ ⊗ id)(Δ_C ⊗ Δ_D)` and `ε = ε_C ⊗ ε_D`.
pub fn tensor_comonoid(c: &Coalgebra, d: &Coalgebra) -> Result<Coalgebra> {
    let (x, y) = (c.carrier(), d.carrier());
    let delta = middle_four(x, x, y, y)?.compose(&tensor_map(c.delta(), d.delta())?)?;
    let counit = left_unitor(&ChainComplex::unit(c.field()))?
        .compose(&tensor_map(c.counit(), d.counit())?)?;
    Ok(Coalgebra::from_maps(delta, counit))
}

/// `n` group-like elements in degree 0.
pub fn group_like(field: Field, n: usize) -> Coalgebra {
    let carrier = ChainComplex::concentrated(field, 0, n);
    let square = tensor(&carrier, &carrier).expect("same field");
    let mut d = Matrix::zeros(field, n * n, n);
    let rows: Vec<_> = (0..n * n)
        .map(|r| {
            if r % (n + 1) == 0 {
                vec![(r / (n + 1), field.one())]
            } else {
                Vec::new()
            }
        })
        .collect();
    if n > 0 {
        d = Matrix::from_rows(field, n, rows);
    }
    let delta = ChainMap::graded(carrier.clone(), square, BTreeMap::from([(0, d)])).expect("shape");
    let counit = ChainMap::graded(
        carrier.clone(),
        ChainComplex::unit(field),
        BTreeMap::from([(
            0,
            Matrix::from_rows(field, n, vec![(0..n).map(|i| (i, field.one())).collect()]),
        )]),
    )
    .expect("shape");
    Coalgebra::from_maps(delta, counit)
}

/// The `n × n` matrix coalgebra: `Δ e_ij = Σ_k e_ik ⊗ e_kj`, `ε e_ij = δ_ij`,
/// basis `e_ij` at index `i n + j` in degree 0.
pub fn matrix_coalgebra(field: Field, n: usize) -> Coalgebra {
    let m = n * n;
    let carrier = ChainComplex::concentrated(field, 0, m);
    let square = tensor(&carrier, &carrier).expect("same field");
    let mut t = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t.push(((i * n + k) * m + (k * n + j), i * n + j, field.one()));
            }
        }
    }
    let d = Matrix::from_triplets(field, m * m, m, t).expect("distinct entries");
    let e = Matrix::from_triplets(field, 1, m, (0..n).map(|i| (0, i * n + i, field.one())))
        .expect("distinct");
    let delta = ChainMap::graded(carrier.clone(), square, BTreeMap::from([(0, d)])).expect("shape");
    let counit = ChainMap::graded(carrier, ChainComplex::unit(field), BTreeMap::from([(0, e)]))
        .expect("shape");
    Coalgebra::from_maps(delta, counit)
}

/// `k·1 ⊕ k·x` with `x` primitive in degree `deg ≠ 0`.
pub fn primitive_exterior(field: Field, deg: Degree) -> Result<Coalgebra> {
    if deg == 0 {
        return Err(Error::Precondition(
            "the primitive generator needs a nonzero degree".into(),
        ));
    }
    let carrier = ChainComplex::new(field, BTreeMap::from([(0, 1), (deg, 1)]), BTreeMap::new())?;
    let square = tensor(&carrier, &carrier)?;
    // (C⊗C)_deg lists the block with left degree min(0, deg) first
    let d_deg = Matrix::from_i64_rows(field, &[&[1], &[1]]);
    let delta = ChainMap::graded(
        carrier.clone(),
        square,
        BTreeMap::from([(0, Matrix::identity(field, 1)), (deg, d_deg)]),
    )?;
    let counit = ChainMap::graded(
        carrier,
        ChainComplex::unit(field),
        BTreeMap::from([(0, Matrix::identity(field, 1))]),
    )?;
    Ok(Coalgebra::from_maps(delta, counit))
}

/// Normalized chains on a simplicial complex with the Alexander–Whitney
/// diagonal. `simplices` lists vertex sets (sorted, closed under faces);
/// degree `n` is spanned by the `n`-simplices in lexicographic order.
pub fn simplicial_chains(field: Field, simplices: &[Vec<usize>]) -> Result<Coalgebra> {
    let mut by_dim: BTreeMap<Degree, Vec<Vec<usize>>> = BTreeMap::new();
    for s in simplices {
        if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precondition(format!(
                "simplex {s:?} is not a sorted vertex set"
            )));
        }
        by_dim
            .entry(s.len() as Degree - 1)
            .or_default()
            .push(s.clone());
    }
    for v in by_dim.values_mut() {
        v.sort();
        v.dedup();
    }
    let index = |s: &[usize]| -> Result<usize> {
        by_dim
            .get(&(s.len() as Degree - 1))
            .and_then(|v| v.iter().position(|t| t == s))
            .ok_or_else(|| Error::Precondition(format!("face {s:?} is missing")))
    };
    let dims: BTreeMap<Degree, usize> = by_dim.iter().map(|(n, v)| (*n, v.len())).collect();
    let mut diffs = BTreeMap::new();
    for (&n, v) in &by_dim {
        if n == 0 {
            continue;
        }
        let mut t = BTreeMap::new();
        for (c, s) in v.iter().enumerate() {
            for i in 0..s.len() {
                let mut face = s.clone();
                face.remove(i);
                t.insert((index(&face)?, c), field.sign(i as i64));
            }
        }
        diffs.insert(
            n,
            Matrix::from_triplets(
                field,
                dims[&(n - 1)],
                v.len(),
                t.into_iter().map(|((r, c), x)| (r, c, x)),
            )?,
        );
    }
    let carrier = ChainComplex::new(field, dims.clone(), diffs)?.non_negative()?;
    let square = tensor(&carrier, &carrier)?;
    let layout = crate::exactla::tensor::TensorLayout::of(&carrier, &carrier);
    let mut delta = BTreeMap::new();
    for (&n, v) in &by_dim {
        let mut t = Vec::new();
        for (c, s) in v.iter().enumerate() {
            for k in 0..s.len() {
                let front = &s[..=k];
                let back = &s[k..];
                let p = k as Degree;
                t.push((
                    layout.index(p, index(front)?, n - p, index(back)?),
                    c,
                    field.one(),
                ));
            }
        }
        delta.insert(n, Matrix::from_triplets(field, square.dim(n), v.len(), t)?);
    }
    let counit = BTreeMap::from([(
        0,
        Matrix::from_rows(
            field,
            dims[&0],
            vec![(0..dims[&0]).map(|i| (i, field.one())).collect()],
        ),
    )]);
    let delta = ChainMap::graded(carrier.clone(), square, delta)?;
    let counit = ChainMap::graded(carrier, ChainComplex::unit(field), counit)?;
    Ok(Coalgebra::from_maps(delta, counit))
}

/// A cylinder `C ⊔ C → Cyl(C) → C` in coalgebras.
#[derive(Clone, Debug)]
pub struct CylinderData {
    pub base: Coalgebra,
    pub object: Coalgebra,
    pub i0: CoalgebraMap,
    pub i1: CoalgebraMap,
    pub p: CoalgebraMap,
}

impl CylinderData {
    /// `C ⊔ C` and `i0 ⊔ i1` out of it.
    pub fn ends(&self) -> Result<(Coproduct, CoalgebraMap)> {
        let cp = coproduct(&self.base, &self.base)?;
        let m = cp.copair(&self.i0, &self.i1)?;
        Ok((cp, m))
    }

    /// `p ∘ i0 = p ∘ i1 = id`, `i0 ⊔ i1` mono, `p` a quasi-isomorphism,
    /// and every object and map in the diagram a coalgebra or coalgebra map.
    pub fn check(&self) -> Result<Report> {
        use crate::exactla::homology::{is_mono, is_quasi_iso};
        let mut r = Report::new("cylinder");
        r.merge("cylinder: ", check_comonoid(&self.object));
        r.merge("base: ", check_comonoid(&self.base));
        r.merge("i0: ", check_comonoid_map(&self.i0));
        r.merge("i1: ", check_comonoid_map(&self.i1));
        r.merge("p: ", check_comonoid_map(&self.p));
        let id = ChainMap::identity(self.base.carrier());
        r.clause(
            "p i0 = id",
            difference_witness(&self.p.compose(&self.i0)?.underlying, &id),
        );
        r.clause(
            "p i1 = id",
            difference_witness(&self.p.compose(&self.i1)?.underlying, &id),
        );
        let (cp, ends) = self.ends()?;
        r.merge("coproduct: ", check_comonoid(&cp.object));
        r.merge("i0 ⊔ i1: ", check_comonoid_map(&ends));
        r.flag("i0 ⊔ i1 is mono", is_mono(ends.underlying()));
        let fold = cp.copair(
            &CoalgebraMap::identity(&self.base),
            &CoalgebraMap::identity(&self.base),
        )?;
        r.clause(
            "p (i0 ⊔ i1) is the codiagonal",
            difference_witness(&self.p.compose(&ends)?.underlying, fold.underlying()),
        );
        r.flag(
            "p is a quasi-isomorphism",
            is_quasi_iso(self.p.underlying()),
        );
        Ok(r)
    }
}

/// The interval `k·e → k·a ⊕ k·b`, `∂e = b − a`, with `Δa = a ⊗ a`,
/// `Δb = b ⊗ b`, `Δe = a ⊗ e + e ⊗ b`, `ε(a) = ε(b) = 1`, as a cylinder
/// on `I`. The carrier is flagged non-negative on request.
pub fn interval_coalgebra(field: Field, non_negative: bool) -> CylinderData {
    let c = simplicial_chains(field, &[vec![0], vec![1], vec![0, 1]]).expect("the 1-simplex");
    let c = if non_negative { c } else { unflag(c) };
    let unit = unit_coalgebra(field);
    let unit = if non_negative {
        unit.non_negative().expect("degree 0")
    } else {
        unit
    };
    let point = |i: i64| {
        let m = Matrix::from_i64_rows(field, &[&[1 - i], &[i]]);
        let u = ChainMap::new(
            unit.carrier().clone(),
            c.carrier().clone(),
            BTreeMap::from([(0, m)]),
        )
        .expect("cycle");
        CoalgebraMap::trusted(unit.clone(), c.clone(), u)
    };
    let p = ChainMap::new(
        c.carrier().clone(),
        unit.carrier().clone(),
        BTreeMap::from([(0, Matrix::from_i64_rows(field, &[&[1, 1]]))]),
    )
    .expect("chain map");
    CylinderData {
        base: unit.clone(),
        i0: point(0),
        i1: point(1),
        p: CoalgebraMap::trusted(c.clone(), unit, p),
        object: c,
    }
}

fn unflag(c: Coalgebra) -> Coalgebra {
    let carrier = c.carrier.clone().with_flag(false);
    let square = tensor(&carrier, &carrier).expect("same field");
    Coalgebra {
        delta: c.delta.retarget(&carrier, &square).expect("same dims"),
        counit: c
            .counit
            .retarget(&carrier, c.counit.target())
            .expect("same dims"),
        carrier,
    }
}

/// `C ⊗ Cyl(I)` with `i0, i1 = (id ⊗ i0, i1) ρ^{-1}` and `p = ρ (id ⊗ p)`.
pub fn cylinder_comonoid(c: &Coalgebra) -> Result<CylinderData> {
    let interval = interval_coalgebra(c.field(), c.carrier().is_non_negative());
    let object = tensor_comonoid(c, &interval.object)?;
    let x = c.carrier();
    let id = ChainMap::identity(x);
    let unit_in = crate::exactla::tensor::right_unitor_inverse(x)?;
    let end = |i: &CoalgebraMap| -> Result<CoalgebraMap> {
        let u = tensor_map(&id, i.underlying())?.compose(&unit_in)?;
        CoalgebraMap::new(c.clone(), object.clone(), u)
    };
    let p = right_unitor(x)?.compose(&tensor_map(&id, interval.p.underlying())?)?;
    Ok(CylinderData {
        base: c.clone(),
        i0: end(&interval.i0)?,
        i1: end(&interval.i1)?,
        p: CoalgebraMap::new(object.clone(), c.clone(), p)?,
        object,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::homology::is_quasi_iso;

    fn fields() -> [Field; 3] {
        [Field::Rationals, Field::Prime(2), Field::Prime(5)]
    }

    #[test]
    fn unit_and_zero_pass() {
        for f in fields() {
            assert!(check_comonoid(&unit_coalgebra(f)).passed());
            assert!(check_comonoid(&zero_coalgebra(f)).passed());
            assert!(check_cocommutative(&unit_coalgebra(f)));
        }
    }

    #[test]
    fn interval_structure_matches_hand_values() {
        let f = Field::Rationals;
        let cyl = interval_coalgebra(f, false);
        let c = cyl.object.carrier();
        assert_eq!(c.dims(), &BTreeMap::from([(0, 2), (1, 1)]));
        assert_eq!(c.differential(1), Matrix::from_i64_rows(f, &[&[-1], &[1]]));
        // (C⊗C)_1 order: (a,e), (b,e), (e,a), (e,b)
        assert_eq!(
            cyl.object.delta().component(1),
            Matrix::from_i64_rows(f, &[&[1], &[0], &[0], &[1]])
        );
        assert_eq!(
            cyl.object.delta().component(0),
            Matrix::from_i64_rows(f, &[&[1, 0], &[0, 0], &[0, 0], &[0, 1]])
        );
        assert_eq!(
            cyl.object.counit().component(0),
            Matrix::from_i64_rows(f, &[&[1, 1]])
        );
        assert!(cyl.check().unwrap().passed());
        assert!(!check_cocommutative(&cyl.object));
        assert!(is_quasi_iso(cyl.p.underlying()));
    }

    #[test]
    fn non_negative_interval_passes() {
        let cyl = interval_coalgebra(Field::Prime(3), true);
        assert!(cyl.object.carrier().is_non_negative());
        assert!(cyl.check().unwrap().passed());
    }

    #[test]
    fn simple_families_pass() {
        for f in fields() {
            assert!(check_comonoid(&group_like(f, 3)).passed());
            assert!(check_cocommutative(&group_like(f, 3)));
            assert!(check_comonoid(&matrix_coalgebra(f, 2)).passed());
            assert!(!check_cocommutative(&matrix_coalgebra(f, 2)));
            for deg in [-2, 1, 3] {
                let e = primitive_exterior(f, deg).unwrap();
                assert!(check_comonoid(&e).passed());
            }
            let tri = simplicial_chains(
                f,
                &[
                    vec![0],
                    vec![1],
                    vec![2],
                    vec![0, 1],
                    vec![0, 2],
                    vec![1, 2],
                    vec![0, 1, 2],
                ],
            )
            .unwrap();
            assert!(check_comonoid(&tri).passed());
        }
    }

    #[test]
    fn tensor_and_coproduct_pass() {
        for f in fields() {
            let i = interval_coalgebra(f, false).object;
            let ii = tensor_comonoid(&i, &i).unwrap();
            assert!(check_comonoid(&ii).passed());
            for n in ii.carrier().degrees().filter(|n| *n > 0) {
                assert!(ii.counit().component(n).is_zero());
            }
            let cp = coproduct(&i, &group_like(f, 1)).unwrap();
            assert!(check_comonoid(&cp.object).passed());
            let u = tensor_comonoid(&unit_coalgebra(f), &i).unwrap();
            assert_eq!(u.carrier(), i.carrier());
            assert_eq!(
                u.delta().nonzero_components(),
                i.delta().nonzero_components()
            );
        }
    }

    #[test]
    fn cylinder_of_interval() {
        let f = Field::Rationals;
        let i = interval_coalgebra(f, false).object;
        let cyl = cylinder_comonoid(&i).unwrap();
        assert!(cyl.check().unwrap().passed());
        let base = cylinder_comonoid(&unit_coalgebra(f)).unwrap();
        assert_eq!(base.object.carrier(), i.carrier());
    }

    #[test]
    fn broken_counit_is_reported() {
        let f = Field::Rationals;
        let i = interval_coalgebra(f, false).object;
        let bad = Coalgebra::assemble(
            i.carrier().clone(),
            i.delta().nonzero_components().clone(),
            BTreeMap::from([(0, Matrix::from_i64_rows(f, &[&[1, 0]]))]),
        )
        .unwrap();
        let r = check_comonoid(&bad);
        assert_eq!(r.clause_passed("left counit law"), Some(false));
        assert_eq!(r.clause_passed("counit is a chain map"), Some(false));
        assert_eq!(r.clause_passed("coassociativity"), Some(true));
    }
}
