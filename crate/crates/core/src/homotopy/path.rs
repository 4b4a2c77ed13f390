//! Cylinders on comodules, two-out-of-six, and the path-object argument
//! run as a program: a map with the right lifting property against
//! monomorphisms is a quasi-isomorphism.

use crate::coalg::coalgebra::interval_coalgebra;
use crate::comod::comodule::{biproduct, check_comodule_map, Biproduct, Comodule, ComoduleMap};
use crate::comod::factor::{linear_lift, solve_comodule_lifting, ComodSquare, FactorizationResult};
use crate::error::{Error, Result};
use crate::exactla::complex::ChainMap;
use crate::exactla::homology::{is_mono, is_quasi_iso};
use crate::exactla::tensor::{right_unitor, right_unitor_inverse, swap_inner, tensor_map};
use crate::report::{difference_witness, Report};

/// `M ⊗ Cyl(I)` with the interval factor inert, its ends and projection.
#[derive(Clone, Debug)]
pub struct ComoduleCylinder {
    pub base: Comodule,
    pub object: Comodule,
    pub i0: ComoduleMap,
    pub i1: ComoduleMap,
    pub p: ComoduleMap,
    /// `M ⊕ M`, the coproduct of the two ends.
    pub ends: Biproduct,
}

impl ComoduleCylinder {
    /// `i0 ⊔ i1 : M ⊕ M → Cyl(M)`.
    pub fn ends_map(&self) -> ComoduleMap {
        self.ends
            .copair(&self.i0, &self.i1)
            .expect("ends share the cylinder")
    }

    pub fn check(&self) -> Report {
        let mut r = Report::new("comodule cylinder");
        r.merge("i0: ", check_comodule_map(&self.i0));
        r.merge("i1: ", check_comodule_map(&self.i1));
        r.merge("p: ", check_comodule_map(&self.p));
        let id = ChainMap::identity(self.base.carrier());
        for (name, end) in [("p i0 = id", &self.i0), ("p i1 = id", &self.i1)] {
            let c = self
                .p
                .underlying()
                .compose(end.underlying())
                .expect("composable");
            r.clause(name, difference_witness(&c, &id));
        }
        r.flag("i0 ⊔ i1 is mono", is_mono(self.ends_map().underlying()));
        r.flag(
            "p is a quasi-isomorphism",
            is_quasi_iso(self.p.underlying()),
        );
        r
    }
}

/// The cylinder on `M` with coaction `swap (ρ ⊗ id)`, so that `Cyl(I)`
/// does not coact.
pub fn cylinder_comodule(m: &Comodule) -> Result<ComoduleCylinder> {
    let c = m.coalgebra();
    let interval = interval_coalgebra(c.field(), m.carrier().is_non_negative());
    let (x, cyl) = (m.carrier(), interval.object.carrier());
    let rho = swap_inner(x, c.carrier(), cyl)?
        .compose(&tensor_map(m.coaction(), &ChainMap::identity(cyl))?)?;
    let object = Comodule::from_map(c.clone(), rho);
    let id = ChainMap::identity(x);
    let unit_in = right_unitor_inverse(x)?;
    let end = |i: &ChainMap| -> Result<ComoduleMap> {
        ComoduleMap::new(
            m.clone(),
            object.clone(),
            tensor_map(&id, i)?.compose(&unit_in)?,
        )
    };
    let p = right_unitor(x)?.compose(&tensor_map(&id, interval.p.underlying())?)?;
    Ok(ComoduleCylinder {
        base: m.clone(),
        i0: end(interval.i0.underlying())?,
        i1: end(interval.i1.underlying())?,
        p: ComoduleMap::new(object.clone(), m.clone(), p)?,
        ends: biproduct(m, m)?,
        object,
    })
}

/// Given quasi-isomorphisms `g f` and `h g`, reports whether `f`, `g`,
/// `h` and `h g f` are quasi-isomorphisms.
pub fn two_out_of_six(f: &ChainMap, g: &ChainMap, h: &ChainMap) -> Result<bool> {
    let gf = g.compose(f)?;
    let hg = h.compose(g)?;
    if !is_quasi_iso(&gf) || !is_quasi_iso(&hg) {
        return Err(Error::Precondition(
            "g f and h g must be quasi-isomorphisms".into(),
        ));
    }
    let hgf = h.compose(&gf)?;
    Ok(is_quasi_iso(f) && is_quasi_iso(g) && is_quasi_iso(h) && is_quasi_iso(&hgf))
}

/// Fills comodule squares whose right leg is fixed.
pub trait ComodLifter {
    fn lift(&self, sq: &ComodSquare) -> Result<Option<ComoduleMap>>;
}

/// Lifts against the projection of a factorization through the cone.
pub struct FactorizationLifter<'a>(pub &'a FactorizationResult);

impl ComodLifter for FactorizationLifter<'_> {
    fn lift(&self, sq: &ComodSquare) -> Result<Option<ComoduleMap>> {
        solve_comodule_lifting(self.0, sq).map(Some)
    }
}

/// Solves the full linear system for a diagonal.
pub struct LinearLifter;

impl ComodLifter for LinearLifter {
    fn lift(&self, sq: &ComodSquare) -> Result<Option<ComoduleMap>> {
        linear_lift(sq)
    }
}

/// The maps of the argument for `f : X → Y`.
#[derive(Clone, Debug)]
pub struct HomotopyWitness {
    pub f: ComoduleMap,
    /// Section `d : Y → X` with `f d = id`.
    pub d: ComoduleMap,
    pub cylinder: ComoduleCylinder,
    /// `H : Cyl(X) → X` with `H i0 = d f`, `H i1 = id` and `f H = f p`.
    pub homotopy: ComoduleMap,
    /// Each step of the conclusion, in order.
    pub trail: Vec<(String, bool)>,
}

impl HomotopyWitness {
    pub fn concluded(&self) -> bool {
        self.trail.iter().all(|(_, ok)| *ok)
    }

    /// Every commutation the argument relies on.
    pub fn check(&self) -> Report {
        let mut r = Report::new("homotopy witness");
        let u = |m: &ComoduleMap| m.underlying().clone();
        let (f, d, h) = (u(&self.f), u(&self.d), u(&self.homotopy));
        let c = &self.cylinder;
        let comp = |a: &ChainMap, b: &ChainMap| a.compose(b).expect("composable");
        r.merge("d: ", check_comodule_map(&self.d));
        r.merge("H: ", check_comodule_map(&self.homotopy));
        r.merge("cylinder: ", c.check());
        r.clause(
            "f d = id",
            difference_witness(&comp(&f, &d), &ChainMap::identity(f.target())),
        );
        r.clause(
            "H i0 = d f",
            difference_witness(&comp(&h, &u(&c.i0)), &comp(&d, &f)),
        );
        r.clause(
            "H i1 = id",
            difference_witness(&comp(&h, &u(&c.i1)), &ChainMap::identity(f.source())),
        );
        r.clause(
            "f H = f p",
            difference_witness(&comp(&f, &h), &comp(&f, &u(&c.p))),
        );
        for (step, ok) in &self.trail {
            r.flag(step.clone(), *ok);
        }
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStep {
    Section,
    Homotopy,
}

#[derive(Clone, Debug)]
pub enum PathObjectOutcome {
    Witness(Box<HomotopyWitness>),
    /// A lift the argument needs does not exist, so `f` lacks the lifting
    /// property.
    Failed {
        step: PathStep,
        reason: String,
    },
}

/// Runs the argument on `f : X → Y`, asking `lifter` for the two
/// diagonals. Every comodule is cofibrant here, so the cofibrant
/// replacement is the identity.
pub fn dual_path_object_argument(
    f: &ComoduleMap,
    lifter: &dyn ComodLifter,
) -> Result<PathObjectOutcome> {
    let (x, y) = (f.source(), f.target());
    let zero = Comodule::zero(x.coalgebra());
    // 0 → Y against f, bottom id_Y
    let square = ComodSquare::new(
        ComoduleMap::zero(&zero, y),
        f.clone(),
        ComoduleMap::zero(&zero, x),
        ComoduleMap::identity(y),
    )?;
    let Some(d) = lifter.lift(&square)? else {
        return Ok(PathObjectOutcome::Failed {
            step: PathStep::Section,
            reason: "no diagonal for 0 → Y against f with bottom id_Y".into(),
        });
    };
    let cylinder = cylinder_comodule(x)?;
    let df = d.compose(f)?;
    let top = cylinder.ends.copair(&df, &ComoduleMap::identity(x))?;
    let bottom = f.compose(&cylinder.p)?;
    let square = ComodSquare::new(cylinder.ends_map(), f.clone(), top, bottom)?;
    let Some(homotopy) = lifter.lift(&square)? else {
        return Ok(PathObjectOutcome::Failed {
            step: PathStep::Homotopy,
            reason: "no diagonal for i0 ⊔ i1 against f".into(),
        });
    };
    let u = |m: &ComoduleMap| m.underlying().clone();
    let mut trail = Vec::new();
    // H is a left inverse of the quasi-isomorphism i1, hence one itself,
    // and d f = H i0 is a composite of quasi-isomorphisms.
    let i1_qi = is_quasi_iso(&u(&cylinder.i1));
    trail.push(("i1 is a quasi-isomorphism".to_string(), i1_qi));
    trail.push((
        "H is a quasi-isomorphism".to_string(),
        is_quasi_iso(&u(&homotopy)),
    ));
    let df_qi = is_quasi_iso(&u(&df));
    trail.push(("d f is a quasi-isomorphism".to_string(), df_qi));
    let conclusion = df_qi && two_out_of_six(&u(f), &u(&d), &u(f))?;
    trail.push(("two out of six on (f, d, f)".to_string(), conclusion));
    Ok(PathObjectOutcome::Witness(Box::new(HomotopyWitness {
        f: f.clone(),
        d,
        cylinder,
        homotopy,
        trail,
    })))
}
