//! Seeded random instances: complexes, monos, coalgebras, comodules and
//! their maps.
//!
//! Complexes are sums of disks and spheres seen through a random change
//! of basis, so every shape of homology and differential shows up while
//! dimensions stay under control.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coalg::coalgebra::{
    coproduct, group_like, interval_coalgebra, matrix_coalgebra, primitive_exterior,
    simplicial_chains, tensor_comonoid, unit_coalgebra, Coalgebra,
};
use crate::coalg::sub::{subcoalgebra_generated_by, Subcoalgebra};
use crate::comod::comodule::{
    biproduct, cofree_comodule, comodule_hom_basis, subcomodule_generated_by, Comodule, ComoduleMap,
};
use crate::error::Result;
use crate::exactla::complex::{ChainComplex, ChainMap, Degree, Element};
use crate::exactla::field::{Field, Scalar};
use crate::exactla::limits::{cone_of_identity, direct_sum, subcomplex, GradedSubspace};
use crate::exactla::linalg::{Matrix, SparseVec};
use crate::exactla::system::MapSystem;

pub type TrialRng = ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    /// Largest dimension in any one degree.
    pub max_dim: usize,
    pub min_degree: Degree,
    pub max_degree: Degree,
    /// Chance, in percent, that an off-diagonal entry is nonzero.
    pub density_percent: u32,
    /// Rational scalars are `a/b` with `|a| ≤ bound`, `1 ≤ b ≤ bound`.
    pub scalar_bound: i64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_dim: 4,
            min_degree: -2,
            max_degree: 4,
            density_percent: 30,
            scalar_bound: 3,
        }
    }
}

impl GeneratorConfig {
    /// The same bounds with a smaller dimension cap.
    pub fn with_max_dim(&self, max_dim: usize) -> Self {
        GeneratorConfig {
            max_dim,
            ..self.clone()
        }
    }

    pub fn non_negative(&self) -> Self {
        GeneratorConfig {
            min_degree: self.min_degree.max(0),
            ..self.clone()
        }
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The seed of trial `index` under `master`; trials are independent of
/// each other and of the order they run in.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

pub fn trial_rng(master: u64, index: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(trial_seed(master, index))
}

pub fn random_scalar(rng: &mut impl Rng, field: Field, cfg: &GeneratorConfig) -> Scalar {
    match field {
        Field::Rationals => {
            let b = cfg.scalar_bound.max(1);
            field.fraction(rng.random_range(-b..=b), rng.random_range(1..=b))
        }
        Field::Prime(p) => Scalar::Mod(rng.random_range(0..p)),
    }
}

pub fn random_nonzero_scalar(rng: &mut impl Rng, field: Field, cfg: &GeneratorConfig) -> Scalar {
    loop {
        let s = random_scalar(rng, field, cfg);
        if !field.is_zero(&s) {
            return s;
        }
    }
}

fn hit(rng: &mut impl Rng, cfg: &GeneratorConfig) -> bool {
    rng.random_range(0..100) < cfg.density_percent
}

pub fn random_vector(
    rng: &mut impl Rng,
    field: Field,
    len: usize,
    cfg: &GeneratorConfig,
) -> SparseVec {
    (0..len)
        .filter_map(|i| hit(rng, cfg).then(|| (i, random_scalar(rng, field, cfg))))
        .filter(|(_, s)| !field.is_zero(s))
        .collect()
}

/// `P` and `P^{-1}` with `P = L U` for unit triangular `L`, `U`.
pub fn random_invertible(
    rng: &mut impl Rng,
    field: Field,
    n: usize,
    cfg: &GeneratorConfig,
) -> (Matrix, Matrix) {
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for i in 0..n {
        lower.push((i, i, field.one()));
        upper.push((i, i, field.one()));
        for j in 0..i {
            if hit(rng, cfg) {
                lower.push((i, j, random_scalar(rng, field, cfg)));
            }
            if hit(rng, cfg) {
                upper.push((j, i, random_scalar(rng, field, cfg)));
            }
        }
    }
    let l = Matrix::from_triplets(field, n, n, lower).expect("distinct");
    let u = Matrix::from_triplets(field, n, n, upper).expect("distinct");
    let p = l.mul(&u);
    let inv = p
        .solve(&Matrix::identity(field, n))
        .expect("unit triangular factors");
    (p, inv)
}

pub fn random_basis_change(
    rng: &mut impl Rng,
    field: Field,
    dims: &BTreeMap<Degree, usize>,
    cfg: &GeneratorConfig,
) -> BTreeMap<Degree, (Matrix, Matrix)> {
    dims.iter()
        .map(|(&n, &d)| (n, random_invertible(rng, field, d, cfg)))
        .collect()
}

/// A sum of disks `k → k` and spheres `k`, in a random basis.
pub fn random_complex(rng: &mut impl Rng, field: Field, cfg: &GeneratorConfig) -> ChainComplex {
    let mut dims: BTreeMap<Degree, usize> = BTreeMap::new();
    let mut disks: Vec<(Degree, usize, usize)> = Vec::new();
    let attempts = rng.random_range(1..=2 * cfg.max_dim + 2);
    let free = |dims: &BTreeMap<Degree, usize>, n: Degree| {
        dims.get(&n).copied().unwrap_or(0) < cfg.max_dim
    };
    for _ in 0..attempts {
        let n = rng.random_range(cfg.min_degree..=cfg.max_degree);
        let disk = n > cfg.min_degree && rng.random_bool(0.5);
        if disk {
            if free(&dims, n) && free(&dims, n - 1) {
                let top = *dims.entry(n).or_default();
                let bottom = *dims.entry(n - 1).or_default();
                disks.push((n, top, bottom));
                *dims.get_mut(&n).unwrap() += 1;
                *dims.get_mut(&(n - 1)).unwrap() += 1;
            }
        } else if free(&dims, n) {
            *dims.entry(n).or_default() += 1;
        }
    }
    let mut entries: BTreeMap<Degree, Vec<(usize, usize, Scalar)>> = BTreeMap::new();
    for (n, top, bottom) in disks {
        let s = random_nonzero_scalar(rng, field, cfg);
        entries.entry(n).or_default().push((bottom, top, s));
    }
    let dim = |n: Degree| dims.get(&n).copied().unwrap_or(0);
    let diffs = entries
        .into_iter()
        .map(|(n, t)| {
            (
                n,
                Matrix::from_triplets(field, dim(n - 1), dim(n), t).expect("distinct"),
            )
        })
        .collect();
    let x = ChainComplex::new(field, dims.clone(), diffs).expect("disks square to zero");
    let change = random_basis_change(rng, field, &dims, cfg);
    let x = x.transport(&change).expect("matching shapes");
    if cfg.min_degree >= 0 {
        x.non_negative().expect("degrees are non-negative")
    } else {
        x
    }
}

/// Random elements spanning part of `x`, one to three of them.
pub fn random_elements(
    rng: &mut impl Rng,
    x: &ChainComplex,
    cfg: &GeneratorConfig,
) -> Vec<Element> {
    let degrees: Vec<Degree> = x.degrees().collect();
    if degrees.is_empty() {
        return Vec::new();
    }
    (0..rng.random_range(1..=3))
        .map(|_| {
            let n = degrees[rng.random_range(0..degrees.len())];
            Element::new(n, random_vector(rng, x.field(), x.dim(n), cfg))
        })
        .collect()
}

/// The inclusion of a random subcomplex, the source put in a random basis.
pub fn random_mono(rng: &mut impl Rng, field: Field, cfg: &GeneratorConfig) -> ChainMap {
    let x = random_complex(rng, field, cfg);
    let mut span = GradedSubspace::from_elements(&x, &random_elements(rng, &x, cfg));
    span.close_under_differential(&x);
    let (sub, inc) = subcomplex(&x, &span).expect("closed span");
    let change = random_basis_change(rng, field, sub.dims(), cfg);
    let moved = sub.transport(&change).expect("matching shapes");
    let back = ChainMap::new(
        moved,
        sub,
        change.into_iter().map(|(n, (_, inv))| (n, inv)).collect(),
    )
    .expect("basis change");
    inc.compose(&back).expect("composable")
}

/// `A → A ⊕ cone(id_B)`, a mono and quasi-isomorphism, with the target in
/// a random basis.
pub fn random_trivial_mono(rng: &mut impl Rng, field: Field, cfg: &GeneratorConfig) -> ChainMap {
    let small = cfg.with_max_dim(cfg.max_dim.div_ceil(2).max(1));
    let a = random_complex(rng, field, &small);
    let mut bcfg = small.clone();
    bcfg.max_degree -= 1;
    let b = random_complex(rng, field, &bcfg);
    let cone = cone_of_identity(&b);
    let sum = direct_sum(&a, &cone.object).expect("same field");
    let change = random_basis_change(rng, field, sum.object.dims(), cfg);
    let moved = sum.object.transport(&change).expect("matching shapes");
    let to = ChainMap::new(
        sum.object.clone(),
        moved,
        change.into_iter().map(|(n, (p, _))| (n, p)).collect(),
    )
    .expect("basis change");
    to.compose(&sum.inj[0]).expect("composable")
}

/// A random combination of a basis of the chain maps `x → y`.
pub fn random_chain_map(
    rng: &mut impl Rng,
    x: &ChainComplex,
    y: &ChainComplex,
    cfg: &GeneratorConfig,
) -> ChainMap {
    let field = x.field();
    let mut sys = MapSystem::new(field, 0);
    let u = sys.add_unknown(x, y);
    sys.require_chain_map(u, x, y);
    let sol = sys.eliminate();
    let mut v: SparseVec = Vec::new();
    for b in sol.nullspace() {
        let s = random_scalar(rng, field, cfg);
        v = crate::exactla::linalg::axpy(field, &v, &s, &b);
    }
    ChainMap::new(x.clone(), y.clone(), sol.decode(u, &v))
        .expect("solution of the chain-map equations")
}

fn small_simplicial(rng: &mut impl Rng, field: Field) -> Coalgebra {
    let shapes: [&[&[usize]]; 4] = [
        &[&[0], &[1], &[0, 1]],
        &[&[0], &[1], &[2], &[0, 1], &[1, 2]],
        &[&[0], &[1], &[2], &[0, 1]],
        &[&[0], &[1]],
    ];
    let s = shapes[rng.random_range(0..shapes.len())];
    let simplices: Vec<Vec<usize>> = s.iter().map(|v| v.to_vec()).collect();
    simplicial_chains(field, &simplices).expect("closed under faces")
}

/// A small coalgebra of total dimension at most `max_total`, in a random
/// basis.
pub fn random_coalgebra(
    rng: &mut impl Rng,
    field: Field,
    max_total: usize,
    cfg: &GeneratorConfig,
) -> Coalgebra {
    loop {
        let c = match rng.random_range(0..8) {
            0 => group_like(field, rng.random_range(1..=3)),
            1 => matrix_coalgebra(field, rng.random_range(1..=2)),
            2 => small_simplicial(rng, field),
            3 => primitive_exterior(field, [-1, 1, 2][rng.random_range(0..3)])
                .expect("nonzero degree"),
            4 => interval_coalgebra(field, false).object,
            5 => unit_coalgebra(field),
            6 => {
                let a = random_coalgebra(rng, field, 3, cfg);
                let b = random_coalgebra(rng, field, 3, cfg);
                coproduct(&a, &b).expect("same field").object
            }
            _ => {
                let a = random_coalgebra(rng, field, 2, cfg);
                let b = random_coalgebra(rng, field, 3, cfg);
                tensor_comonoid(&a, &b).expect("same field")
            }
        };
        if c.total_dim() <= max_total {
            let change = random_basis_change(rng, field, c.carrier().dims(), cfg);
            return c.transport(&change).expect("matching shapes").0;
        }
    }
}

/// Two subcoalgebras of one random ambient coalgebra, each generated by
/// random elements.
pub fn random_subcoalgebra_pair(
    rng: &mut impl Rng,
    field: Field,
    max_total: usize,
    cfg: &GeneratorConfig,
) -> Result<(Subcoalgebra, Subcoalgebra)> {
    let c = random_coalgebra(rng, field, max_total, cfg);
    let d = subcoalgebra_generated_by(&c, &random_elements(rng, c.carrier(), cfg))?;
    let e = subcoalgebra_generated_by(&c, &random_elements(rng, c.carrier(), cfg))?;
    Ok((d, e))
}

fn fits(m: &Comodule, max_dim: usize) -> bool {
    m.carrier().dims().values().all(|&d| d <= max_dim)
}

/// A comodule over `c` with every degree of dimension at most `max_dim`:
/// cofree, regular, a subcomodule of a cofree one, or a biproduct, in a
/// random basis.
pub fn random_comodule(
    rng: &mut impl Rng,
    c: &Coalgebra,
    max_dim: usize,
    cfg: &GeneratorConfig,
) -> Result<Comodule> {
    let field = c.field();
    let xcfg = cfg.with_max_dim(1);
    loop {
        let m = match rng.random_range(0..5) {
            0 => Comodule::regular(c),
            1 => cofree_comodule(&random_complex(rng, field, &xcfg), c)?,
            2 => {
                let free = cofree_comodule(&random_complex(rng, field, &xcfg), c)?;
                let gens = random_elements(rng, free.carrier(), cfg);
                subcomodule_generated_by(&free, &gens)?.0
            }
            3 => {
                let a = random_comodule(rng, c, max_dim, cfg)?;
                let b = random_comodule(rng, c, max_dim, cfg)?;
                biproduct(&a, &b)?.object
            }
            _ => Comodule::zero(c),
        };
        if fits(&m, max_dim) {
            let change = random_basis_change(rng, field, m.carrier().dims(), cfg);
            return Ok(m.transport(&change)?.0);
        }
    }
}

/// A random combination of a basis of the comodule maps `m → n`.
pub fn random_comodule_map(
    rng: &mut impl Rng,
    m: &Comodule,
    n: &Comodule,
    cfg: &GeneratorConfig,
) -> Result<ComoduleMap> {
    let field = m.coalgebra().field();
    let mut f = ComoduleMap::zero(m, n);
    for b in comodule_hom_basis(m, n)? {
        let s = random_scalar(rng, field, cfg);
        let scaled = ComoduleMap::assemble(m.clone(), n.clone(), b.underlying().scale(&s))?;
        f = f.add(&scaled)?;
    }
    Ok(f)
}
