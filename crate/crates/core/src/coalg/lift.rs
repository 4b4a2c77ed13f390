//! Lifting in coalgebras by extension over generated subcoalgebras.
//!
//! The loop keeps a subcoalgebra `E` of `D` with a partial lift
//! `l : E → X`, starting from the image of the left leg. Each step picks
//! the first basis vector of `D` outside `E`, lets `B` be the subcoalgebra
//! it generates, asks an oracle for a lift on the square
//! `E ∩ B → B` against `p`, and glues the result onto `E ∪ B`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coalg::coalgebra::{check_comonoid_map, CoalgebraMap};
use crate::coalg::sub::{
    glue, image_subcoalgebra, intersect_subcoalgebras, subcoalgebra_generated_by,
    union_subcoalgebras, Subcoalgebra,
};
use crate::error::{Error, Result};
use crate::exactla::complex::{ChainMap, Degree, Element};
use crate::exactla::field::Field;
use crate::exactla::homology::is_mono;
use crate::exactla::linalg::{axpy, SparseVec};
use crate::exactla::system::MapSystem;

/// A commutative square `p ∘ top = bottom ∘ left` of coalgebra maps.
#[derive(Clone, Debug)]
pub struct ComonLiftingProblem {
    pub left: CoalgebraMap,
    pub right: CoalgebraMap,
    pub top: CoalgebraMap,
    pub bottom: CoalgebraMap,
}

impl ComonLiftingProblem {
    pub fn new(
        left: CoalgebraMap,
        right: CoalgebraMap,
        top: CoalgebraMap,
        bottom: CoalgebraMap,
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
        Ok(ComonLiftingProblem {
            left,
            right,
            top,
            bottom,
        })
    }

    /// Both triangles of a candidate diagonal.
    pub fn is_filler(&self, l: &CoalgebraMap) -> bool {
        l.compose(&self.left)
            .is_ok_and(|m| m.underlying() == self.top.underlying())
            && self
                .right
                .compose(l)
                .is_ok_and(|m| m.underlying() == self.bottom.underlying())
    }
}

#[derive(Clone, Debug)]
pub enum OracleOutcome {
    Lift(CoalgebraMap),
    /// A chain-level diagonal exists but none found is a coalgebra map.
    NotCoalgebraic(ChainMap),
    NoChainLift,
}

/// Solves lifting sub-problems against a fixed right leg.
pub trait LiftOracle {
    fn solve(&self, problem: &ComonLiftingProblem) -> Result<OracleOutcome>;
}

/// Solves the linear chain-level problem and keeps a solution that is a
/// coalgebra map. Over a prime field the affine space of chain-level lifts
/// is searched exhaustively when it has at most `search_limit` points.
#[derive(Clone, Debug)]
pub struct ChainLevelOracle {
    pub search_limit: u64,
}

impl Default for ChainLevelOracle {
    fn default() -> Self {
        ChainLevelOracle {
            search_limit: 1 << 12,
        }
    }
}

impl LiftOracle for ChainLevelOracle {
    fn solve(&self, pr: &ComonLiftingProblem) -> Result<OracleOutcome> {
        let field = pr.left.source().field();
        let (b, x) = (pr.left.target().carrier(), pr.right.source().carrier());
        let (a, y) = (pr.left.source().carrier(), pr.right.target().carrier());
        let mut sys = MapSystem::new(field, 1);
        let u = sys.add_unknown(b, x);
        sys.require_chain_map(u, b, x);
        let one = field.one();
        for n in b.degrees() {
            // L k = top
            if a.dim(n) > 0 && x.dim(n) > 0 {
                let mut eq = sys.equation(x.dim(n), a.dim(n));
                eq.sandwich(
                    &sys,
                    u,
                    n,
                    None,
                    Some(&pr.left.underlying().component(n)),
                    &one,
                );
                eq.rhs(field, 0, &pr.top.underlying().component(n));
                sys.push(eq);
            }
            // p L = bottom
            if y.dim(n) > 0 {
                let mut eq = sys.equation(y.dim(n), b.dim(n));
                eq.sandwich(
                    &sys,
                    u,
                    n,
                    Some(&pr.right.underlying().component(n)),
                    None,
                    &one,
                );
                eq.rhs(field, 0, &pr.bottom.underlying().component(n));
                sys.push(eq);
            }
        }
        let sol = sys.eliminate();
        let Some(x0) = sol.particular(0) else {
            return Ok(OracleOutcome::NoChainLift);
        };
        let make = |v: &[(usize, crate::exactla::field::Scalar)]| -> Result<CoalgebraMap> {
            let m = ChainMap::graded(b.clone(), x.clone(), sol.decode(u, v))?;
            CoalgebraMap::assemble(pr.left.target().clone(), pr.right.source().clone(), m)
        };
        let first = make(&x0)?;
        if check_comonoid_map(&first).passed() {
            return Ok(OracleOutcome::Lift(first));
        }
        if let Field::Prime(p) = field {
            let null = sol.nullspace();
            let points = (p as u64).checked_pow(null.len() as u32);
            if points.is_some_and(|k| k <= self.search_limit) {
                let total = points.unwrap();
                for code in 1..total {
                    let mut v: SparseVec = x0.clone();
                    let mut c = code;
                    for basis in &null {
                        let digit = c % p as u64;
                        c /= p as u64;
                        if digit != 0 {
                            v = axpy(field, &v, &field.from_i64(digit as i64), basis);
                        }
                    }
                    let cand = make(&v)?;
                    if check_comonoid_map(&cand).passed() {
                        return Ok(OracleOutcome::Lift(cand));
                    }
                }
            }
        }
        Ok(OracleOutcome::NotCoalgebraic(first.underlying().clone()))
    }
}

/// An oracle that never finds a lift.
#[derive(Clone, Copy, Debug, Default)]
pub struct RefusingOracle;

impl LiftOracle for RefusingOracle {
    fn solve(&self, _: &ComonLiftingProblem) -> Result<OracleOutcome> {
        Ok(OracleOutcome::NoChainLift)
    }
}

/// Where the extension loop stopped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StuckReport {
    pub iteration: usize,
    /// The basis vector of `D` whose generated subcoalgebra could not be
    /// absorbed.
    pub generator: (Degree, usize),
    pub generated_dims: BTreeMap<Degree, usize>,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub enum ExtensionOutcome {
    Lifted {
        lift: CoalgebraMap,
        iterations: usize,
    },
    Stuck(StuckReport),
}

pub fn extend_lift_over_subcoalgebras(
    problem: &ComonLiftingProblem,
    oracle: &dyn LiftOracle,
) -> Result<ExtensionOutcome> {
    if !is_mono(problem.left.underlying()) {
        return Err(Error::Precondition("left leg is not a monomorphism".into()));
    }
    let d = problem.left.target().clone();
    let field = d.field();
    let (e0, mut e) = image_subcoalgebra(&problem.left)?;
    // l on E: top ∘ (C ≅ E)^{-1}
    let e0_inv = {
        let mut comps = BTreeMap::new();
        for n in e.object().carrier().degrees() {
            let m = e0.underlying().component(n);
            comps.insert(
                n,
                m.solve(&crate::exactla::linalg::Matrix::identity(field, m.rows()))
                    .expect("iso"),
            );
        }
        ChainMap::new(
            e.object().carrier().clone(),
            problem.top.source().carrier().clone(),
            comps,
        )?
    };
    let mut l = problem.top.underlying().compose(&e0_inv)?;
    let whole = Subcoalgebra::whole(&d);
    let mut iterations = 0;
    while e != whole {
        iterations += 1;
        let (n, i) = d
            .carrier()
            .basis()
            .find(|&(n, i)| !e.contains(&Element::basis(field, n, i)))
            .expect("E is proper");
        let b = subcoalgebra_generated_by(&d, &[Element::basis(field, n, i)])?;
        let eb = intersect_subcoalgebras(&e, &b)?;
        let stuck = |reason: String| {
            ExtensionOutcome::Stuck(StuckReport {
                iteration: iterations,
                generator: (n, i),
                generated_dims: b.dims(),
                reason,
            })
        };
        let to_e = eb.inclusion_into(&e)?;
        let to_b = eb.inclusion_into(&b)?;
        let top = CoalgebraMap::new(
            eb.object().clone(),
            problem.right.source().clone(),
            l.compose(to_e.underlying())?,
        )?;
        let bottom = problem.bottom.compose(b.inclusion())?;
        let sub = ComonLiftingProblem::new(to_b, problem.right.clone(), top, bottom)?;
        let piece = match oracle.solve(&sub)? {
            OracleOutcome::Lift(m) => m,
            OracleOutcome::NotCoalgebraic(_) => {
                return Ok(stuck(
                    "a chain-level diagonal exists but no coalgebra map was found".into(),
                ))
            }
            OracleOutcome::NoChainLift => {
                return Ok(stuck("the sub-square has no diagonal".into()))
            }
        };
        if !sub.is_filler(&piece) {
            return Err(Error::Internal("oracle returned a non-filler".into()));
        }
        let glued = glue(&e, &b, &l, piece.underlying())?;
        e = union_subcoalgebras(&e, &b)?;
        l = glued;
    }
    let lift = l.retarget(d.carrier(), problem.right.source().carrier())?;
    let lift = CoalgebraMap::new(d, problem.right.source().clone(), lift)?;
    if !problem.is_filler(&lift) {
        return Err(Error::Internal("glued map is not a diagonal".into()));
    }
    Ok(ExtensionOutcome::Lifted { lift, iterations })
}
