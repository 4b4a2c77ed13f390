mod common;

use std::collections::BTreeMap;
use std::str::FromStr;

use comonoid::coalg::{
    check_cocommutative, check_comonoid, check_comonoid_map, coproduct, cylinder_comonoid,
    decompose_into_subcoalgebras, extend_lift_over_subcoalgebras, group_like, image_subcoalgebra,
    intersect_subcoalgebras, interval_coalgebra, subcoalgebra_generated_by, tensor_comonoid,
    union_subcoalgebras, verify_tensor_intersection, ChainLevelOracle, Coalgebra, CoalgebraMap,
    ComonLiftingProblem, ExtensionOutcome, RefusingOracle, Subcoalgebra,
};
use comonoid::exactla::homology::{is_epi, is_mono, is_quasi_iso};
use comonoid::format::coalgebra_doc;
use comonoid::homotopy::{interval_breaking_coassociativity, interval_with_mixing};
use comonoid::random::{
    random_coalgebra, random_elements, random_mono, random_subcoalgebra_pair, trial_rng,
    GeneratorConfig,
};
use comonoid::{ChainMap, Element, Field, Matrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use common::{brute_intersection_dim, columns_mod, fields, prime_fields};

type Terms = BTreeMap<Vec<usize>, BigRational>;

/// Structure constants read from the printed coalgebra, with the laws
/// evaluated by expanding sums of basis tensors.
struct Constants {
    field: Field,
    dim: usize,
    delta: BTreeMap<usize, Vec<(usize, usize, BigRational)>>,
    counit: BTreeMap<usize, BigRational>,
}

impl Constants {
    fn of(c: &Coalgebra) -> Self {
        let doc = coalgebra_doc(c);
        let q = |s: &str| BigRational::from_str(s).expect("scalar");
        let mut delta: BTreeMap<usize, Vec<_>> = BTreeMap::new();
        for (k, i, j, s) in &doc.comultiplication {
            delta.entry(*k).or_default().push((*i, *j, q(s)));
        }
        // counit entries index degree 0 only
        let counit = doc
            .counit
            .iter()
            .map(|(i, s)| (c.carrier().global_index(0, *i), q(s)))
            .collect();
        Constants {
            field: c.field(),
            dim: c.total_dim(),
            delta,
            counit,
        }
    }

    fn normalize(&self, t: Terms) -> Terms {
        t.into_iter()
            .filter_map(|(k, v)| {
                let v = match self.field {
                    Field::Prime(p) => {
                        let p = BigInt::from(p);
                        BigRational::from_integer(((v.numer() % &p) + &p) % &p)
                    }
                    Field::Rationals => v,
                };
                (!v.is_zero()).then_some((k, v))
            })
            .collect()
    }

    fn delta_of(&self, k: usize) -> &[(usize, usize, BigRational)] {
        self.delta.get(&k).map_or(&[], |v| v.as_slice())
    }

    fn coassociative_on(&self, k: usize) -> bool {
        let mut left = Terms::new();
        let mut right = Terms::new();
        for (i, j, s) in self.delta_of(k) {
            for (a, b, t) in self.delta_of(*i) {
                *left
                    .entry(vec![*a, *b, *j])
                    .or_insert_with(BigRational::zero) += s * t;
            }
            for (a, b, t) in self.delta_of(*j) {
                *right
                    .entry(vec![*i, *a, *b])
                    .or_insert_with(BigRational::zero) += s * t;
            }
        }
        self.normalize(left) == self.normalize(right)
    }

    fn counital_on(&self, k: usize) -> bool {
        let mut left = Terms::new();
        let mut right = Terms::new();
        for (i, j, s) in self.delta_of(k) {
            if let Some(e) = self.counit.get(i) {
                *left.entry(vec![*j]).or_insert_with(BigRational::zero) += s * e;
            }
            if let Some(e) = self.counit.get(j) {
                *right.entry(vec![*i]).or_insert_with(BigRational::zero) += s * e;
            }
        }
        let expected = self.normalize(Terms::from([(vec![k], BigRational::one())]));
        self.normalize(left) == expected && self.normalize(right) == expected
    }

    fn coassociative(&self) -> bool {
        (0..self.dim).all(|k| self.coassociative_on(k))
    }

    fn counital(&self) -> bool {
        (0..self.dim).all(|k| self.counital_on(k))
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn basis(field: Field, n: i32, i: usize) -> Element {
    Element::basis(field, n, i)
}

#[test]
fn interval_structure() {
    let field = Field::Rationals;
    let cyl = interval_coalgebra(field, false);
    let c = &cyl.object;
    assert_eq!(c.carrier().dims(), &BTreeMap::from([(0, 2), (1, 1)]));
    // ∂e = b − a
    assert_eq!(
        c.carrier().differential(1),
        Matrix::from_i64_rows(field, &[&[-1], &[1]])
    );
    let k = Constants::of(c);
    // a = 0, b = 1, e = 2
    assert_eq!(k.counit, BTreeMap::from([(0, q(1)), (1, q(1))]));
    assert_eq!(k.delta_of(0), &[(0, 0, q(1))]);
    assert_eq!(k.delta_of(1), &[(1, 1, q(1))]);
    let mut de = k.delta_of(2).to_vec();
    de.sort();
    assert_eq!(de, vec![(0, 2, q(1)), (2, 1, q(1))]);
    // i0(1) = a, i1(1) = b, p(a) = p(b) = 1
    assert_eq!(
        cyl.i0.underlying().component(0),
        Matrix::from_i64_rows(field, &[&[1], &[0]])
    );
    assert_eq!(
        cyl.i1.underlying().component(0),
        Matrix::from_i64_rows(field, &[&[0], &[1]])
    );
    assert_eq!(
        cyl.p.underlying().component(0),
        Matrix::from_i64_rows(field, &[&[1, 1]])
    );
    assert!(cyl.check().unwrap().passed());
}

#[test]
fn interval_passes_both_checkers() {
    for field in [Field::Rationals, Field::Prime(2), Field::Prime(5)] {
        for non_negative in [false, true] {
            let c = interval_coalgebra(field, non_negative).object;
            assert!(check_comonoid(&c).passed());
            let k = Constants::of(&c);
            assert!(k.coassociative() && k.counital());
        }
    }
}

#[test]
fn comultiplication_commutes_with_the_differential_on_e() {
    let field = Field::Rationals;
    let c = interval_coalgebra(field, false).object;
    // Δ(∂e) = b⊗b − a⊗a in (C⊗C)_0 ordered (a,a), (a,b), (b,a), (b,b)
    let lhs = c.delta().component(0).mul(&c.carrier().differential(1));
    assert_eq!(
        lhs,
        Matrix::from_i64_rows(field, &[&[-1], &[0], &[0], &[1]])
    );
    let square = c.delta().target();
    let rhs = square.differential(1).mul(&c.delta().component(1));
    assert_eq!(lhs, rhs);
}

#[test]
fn co_opposite_interval_is_still_a_coalgebra() {
    // Δe = e⊗a + b⊗e is the mixing with α = 0; both sides of coassociativity agree
    for field in [Field::Rationals, Field::Prime(3)] {
        let c = interval_with_mixing(field, 0).unwrap();
        let k = Constants::of(&c);
        assert!(k.coassociative() && k.counital());
        assert!(check_comonoid(&c).passed());
    }
}

#[test]
fn broken_interval_fails_coassociativity_only() {
    for field in [
        Field::Rationals,
        Field::Prime(2),
        Field::Prime(3),
        Field::Prime(5),
    ] {
        let c = interval_breaking_coassociativity(field).unwrap();
        let k = Constants::of(&c);
        assert!(!k.coassociative(), "{field}");
        assert!(k.counital(), "{field}");
        let r = check_comonoid(&c);
        let failed: Vec<_> = r.failures().map(|c| c.name.as_str()).collect();
        assert_eq!(failed, ["coassociativity"], "{field}");
    }
}

#[test]
fn tensor_square_of_the_interval() {
    for field in [Field::Rationals, Field::Prime(2)] {
        let c = interval_coalgebra(field, false).object;
        let cc = tensor_comonoid(&c, &c).unwrap();
        assert!(check_comonoid(&cc).passed());
        let k = Constants::of(&cc);
        assert!(k.coassociative() && k.counital());
        assert!(!check_cocommutative(&cc));
    }
}

#[test]
fn cylinder_on_the_interval() {
    let c = interval_coalgebra(Field::Rationals, false).object;
    let cyl = cylinder_comonoid(&c).unwrap();
    assert!(cyl.check().unwrap().passed());
    assert!(is_quasi_iso(cyl.p.underlying()));
}

#[test]
fn image_of_the_collapse_map() {
    let field = Field::Rationals;
    let c = interval_coalgebra(field, false).object;
    // e ↦ 0, a, b ↦ a
    let u = ChainMap::new(
        c.carrier().clone(),
        c.carrier().clone(),
        BTreeMap::from([(0, Matrix::from_i64_rows(field, &[&[1, 1], &[0, 0]]))]),
    )
    .unwrap();
    let f = CoalgebraMap::new(c.clone(), c.clone(), u).unwrap();
    let (e, m) = image_subcoalgebra(&f).unwrap();
    assert_eq!(m.total_dim(), 1);
    assert!(m.contains(&basis(field, 0, 0)));
    assert_eq!(m.inclusion().compose(&e).unwrap(), f);
}

#[test]
fn subcoalgebra_lattice_of_the_interval() {
    let field = Field::Rationals;
    let c = interval_coalgebra(field, false).object;
    let a = subcoalgebra_generated_by(&c, &[basis(field, 0, 0)]).unwrap();
    let b = subcoalgebra_generated_by(&c, &[basis(field, 0, 1)]).unwrap();
    assert_eq!(a.dims(), BTreeMap::from([(0, 1)]));
    assert_eq!(intersect_subcoalgebras(&a, &b).unwrap().total_dim(), 0);
    let ab = union_subcoalgebras(&a, &b).unwrap();
    assert_eq!(ab.dims(), BTreeMap::from([(0, 2)]));
    assert!(check_comonoid(ab.object()).passed());
    let whole = subcoalgebra_generated_by(&c, &[basis(field, 1, 0)]).unwrap();
    assert_eq!(whole, Subcoalgebra::whole(&c));
    let parts = decompose_into_subcoalgebras(&c).unwrap();
    assert_eq!(parts.len(), 3);
    let mut acc = Subcoalgebra::zero(&c);
    for p in &parts {
        assert!(check_comonoid(p.object()).passed());
        acc = union_subcoalgebras(&acc, p).unwrap();
    }
    assert_eq!(acc, Subcoalgebra::whole(&c));
}

#[test]
fn cocommutativity() {
    let field = Field::Rationals;
    assert!(!check_cocommutative(
        &interval_coalgebra(field, false).object
    ));
    assert!(check_cocommutative(&group_like(field, 3)));
}

#[test]
fn extending_a_lift_from_an_endpoint() {
    let field = Field::Rationals;
    let cyl = interval_coalgebra(field, false);
    let c = cyl.object.clone();
    let id = CoalgebraMap::identity(&c);
    let problem = ComonLiftingProblem::new(cyl.i0.clone(), id.clone(), cyl.i0.clone(), id).unwrap();
    match extend_lift_over_subcoalgebras(&problem, &ChainLevelOracle::default()).unwrap() {
        ExtensionOutcome::Lifted { lift, iterations } => {
            assert!(iterations <= c.total_dim());
            assert!(problem.is_filler(&lift));
            assert!(check_comonoid_map(&lift).passed());
        }
        ExtensionOutcome::Stuck(s) => panic!("stuck: {}", s.reason),
    }
    match extend_lift_over_subcoalgebras(&problem, &RefusingOracle).unwrap() {
        ExtensionOutcome::Stuck(s) => assert_eq!(s.iteration, 1),
        ExtensionOutcome::Lifted { .. } => panic!("a refusing oracle cannot lift"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_coalgebras_satisfy_the_laws(seed in any::<u64>(), field in fields()) {
        let c = random_coalgebra(&mut trial_rng(seed, 0), field, 8, &GeneratorConfig::default());
        prop_assert!(check_comonoid(&c).passed());
        let k = Constants::of(&c);
        prop_assert!(k.coassociative());
        prop_assert!(k.counital());
    }

    #[test]
    fn generation_is_a_closure(seed in any::<u64>(), field in fields()) {
        let mut rng = trial_rng(seed, 0);
        let cfg = GeneratorConfig::default();
        let c = random_coalgebra(&mut rng, field, 6, &cfg);
        let gens = random_elements(&mut rng, c.carrier(), &cfg);
        let more: Vec<Element> = gens.iter().cloned().chain(random_elements(&mut rng, c.carrier(), &cfg)).collect();
        let s = subcoalgebra_generated_by(&c, &gens).unwrap();
        let t = subcoalgebra_generated_by(&c, &more).unwrap();
        prop_assert!(gens.iter().all(|g| s.contains(g)));
        prop_assert!(s.is_contained_in(&t));
        let again = subcoalgebra_generated_by(&c, &s.span().basis()).unwrap();
        prop_assert_eq!(&again, &s);
        prop_assert!(check_comonoid(s.object()).passed());
    }

    #[test]
    fn union_and_intersection_form_a_lattice(seed in any::<u64>(), field in fields()) {
        let (e, b) = random_subcoalgebra_pair(&mut trial_rng(seed, 0), field, 6, &GeneratorConfig::default()).unwrap();
        let meet = intersect_subcoalgebras(&e, &b).unwrap();
        let join = union_subcoalgebras(&e, &b).unwrap();
        prop_assert!(meet.is_contained_in(&e) && meet.is_contained_in(&b));
        prop_assert!(e.is_contained_in(&join) && b.is_contained_in(&join));
        prop_assert_eq!(join.total_dim() + meet.total_dim(), e.total_dim() + b.total_dim());
        prop_assert!(check_comonoid(meet.object()).passed());
        prop_assert!(check_comonoid(join.object()).passed());
    }

    #[test]
    fn intersection_matches_enumeration(seed in any::<u64>(), field in prime_fields()) {
        let (d, e) = random_subcoalgebra_pair(&mut trial_rng(seed, 0), field, 6, &GeneratorConfig::default()).unwrap();
        let meet = intersect_subcoalgebras(&d, &e).unwrap();
        let p = field.characteristic() as u64;
        for (&n, &len) in d.ambient().carrier().dims() {
            let a = columns_mod(&d.span().basis_matrix(n));
            let b = columns_mod(&e.span().basis_matrix(n));
            prop_assert_eq!(meet.span().dim(n), brute_intersection_dim(p, &a, &b, len), "degree {}", n);
        }
    }

    #[test]
    fn image_factorization_of_coalgebra_maps(seed in any::<u64>(), field in fields()) {
        let mut rng = trial_rng(seed, 0);
        let cfg = GeneratorConfig::default();
        let c = random_coalgebra(&mut rng, field, 4, &cfg);
        let sub = subcoalgebra_generated_by(&c, &random_elements(&mut rng, c.carrier(), &cfg)).unwrap();
        let cyl = cylinder_comonoid(&c).unwrap();
        // a map that is neither mono nor epi in general: Cyl(S) → S ↪ C
        let sub_cyl = cylinder_comonoid(sub.object()).unwrap();
        for f in [cyl.p.clone(), sub.inclusion().compose(&sub_cyl.p).unwrap()] {
            let (e, m) = image_subcoalgebra(&f).unwrap();
            prop_assert_eq!(m.inclusion().compose(&e).unwrap(), f);
            prop_assert!(is_epi(e.underlying()));
            prop_assert!(is_mono(m.inclusion().underlying()));
        }
    }

    #[test]
    fn cylinders_of_random_coalgebras(seed in any::<u64>(), field in fields()) {
        let c = random_coalgebra(&mut trial_rng(seed, 0), field, 4, &GeneratorConfig::default());
        let cyl = cylinder_comonoid(&c).unwrap();
        prop_assert!(cyl.check().unwrap().passed());
        let (cp, _) = cyl.ends().unwrap();
        prop_assert_eq!(cp.object.total_dim(), 2 * c.total_dim());
        let cp2 = coproduct(&c, &c).unwrap();
        prop_assert!(check_comonoid(&cp2.object).passed());
    }

    #[test]
    fn tensor_intersection_identity(seed in any::<u64>(), field in fields()) {
        let mut rng = trial_rng(seed, 0);
        let cfg = GeneratorConfig::default().with_max_dim(3);
        let a = random_mono(&mut rng, field, &cfg);
        let b = random_mono(&mut rng, field, &cfg);
        prop_assert!(verify_tensor_intersection(&a, &b).unwrap());
    }
}
