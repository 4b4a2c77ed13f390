//! The symmetric monoidal structure on chain complexes.
//!
//! Basis of `(X ⊗ Y)_n`: pairs `x_{p,i} ⊗ y_{q,j}` with `p + q = n`, ordered
//! lexicographically by `(p, i, j)`. The differential is
//! `d(x ⊗ y) = dx ⊗ y + (−1)^{|x|} x ⊗ dy` and the symmetry carries the
//! Koszul sign `(−1)^{|x||y|}`. Only degree-0 maps are tensored, so
//! `tensor_map` needs no sign.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::complex::{ChainComplex, ChainMap, Degree};
use crate::exactla::linalg::MatrixBuilder;

#[derive(Clone, Copy, Debug)]
pub struct Block {
    /// Degree of the left factor.
    pub p: Degree,
    pub offset: usize,
    pub left: usize,
    pub right: usize,
}

/// Index arithmetic for the basis of a tensor product.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    blocks: BTreeMap<Degree, Vec<Block>>,
}

impl TensorLayout {
    pub fn new(left: &BTreeMap<Degree, usize>, right: &BTreeMap<Degree, usize>) -> Self {
        let mut blocks: BTreeMap<Degree, Vec<Block>> = BTreeMap::new();
        for (&p, &l) in left {
            for (&q, &r) in right {
                blocks.entry(p + q).or_default().push(Block {
                    p,
                    offset: 0,
                    left: l,
                    right: r,
                });
            }
        }
        for bs in blocks.values_mut() {
            bs.sort_by_key(|b| b.p);
            let mut off = 0;
            for b in bs.iter_mut() {
                b.offset = off;
                off += b.left * b.right;
            }
        }
        TensorLayout { blocks }
    }

    pub fn of(x: &ChainComplex, y: &ChainComplex) -> Self {
        Self::new(x.dims(), y.dims())
    }

    pub fn dims(&self) -> BTreeMap<Degree, usize> {
        self.blocks
            .iter()
            .map(|(n, bs)| (*n, bs.iter().map(|b| b.left * b.right).sum()))
            .collect()
    }

    pub fn blocks(&self, n: Degree) -> &[Block] {
        self.blocks.get(&n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn block(&self, n: Degree, p: Degree) -> Option<&Block> {
        let bs = self.blocks(n);
        bs.binary_search_by_key(&p, |b| b.p).ok().map(|k| &bs[k])
    }

    /// Index of `x_{p,i} ⊗ y_{q,j}` inside degree `p + q`.
    pub fn index(&self, p: Degree, i: usize, q: Degree, j: usize) -> usize {
        let b = self.block(p + q, p).expect("basis pair in layout");
        debug_assert!(i < b.left && j < b.right);
        b.offset + i * b.right + j
    }

    /// Inverse of [`TensorLayout::index`]: `(p, i, j)`.
    pub fn split(&self, n: Degree, idx: usize) -> (Degree, usize, usize) {
        let bs = self.blocks(n);
        let k = bs.partition_point(|b| b.offset <= idx) - 1;
        let b = &bs[k];
        let r = idx - b.offset;
        (b.p, r / b.right, r % b.right)
    }

    /// Every basis element as `(n, idx, p, i, j)`.
    pub fn basis(&self) -> impl Iterator<Item = (Degree, usize, Degree, usize, usize)> + '_ {
        self.blocks.iter().flat_map(|(&n, bs)| {
            bs.iter().flat_map(move |b| {
                (0..b.left).flat_map(move |i| {
                    (0..b.right).map(move |j| (n, b.offset + i * b.right + j, b.p, i, j))
                })
            })
        })
    }
}

fn same_field(x: &ChainComplex, y: &ChainComplex) -> Result<()> {
    if x.field() != y.field() {
        return Err(Error::FieldMismatch(x.field(), y.field()));
    }
    Ok(())
}

pub fn tensor(x: &ChainComplex, y: &ChainComplex) -> Result<ChainComplex> {
    same_field(x, y)?;
    let field = x.field();
    let layout = TensorLayout::of(x, y);
    let dims = layout.dims();
    let dim = |n: Degree| dims.get(&n).copied().unwrap_or(0);
    let mut builders: BTreeMap<Degree, MatrixBuilder> = BTreeMap::new();
    for (&n, bs) in &layout.blocks {
        for b in bs {
            let q = n - b.p;
            // dx ⊗ y
            if let Some(dx) = x.nonzero_differentials().get(&b.p) {
                for (r, c, v) in dx.triplets() {
                    for j in 0..b.right {
                        let src = layout.index(b.p, c, q, j);
                        let dst = layout.index(b.p - 1, r, q, j);
                        builders
                            .entry(n)
                            .or_insert_with(|| MatrixBuilder::new(field, dim(n - 1), dim(n)))
                            .add(dst, src, v.clone());
                    }
                }
            }
            // (−1)^p x ⊗ dy
            if let Some(dy) = y.nonzero_differentials().get(&q) {
                let sign = field.sign(b.p as i64);
                for (r, c, v) in dy.triplets() {
                    for i in 0..b.left {
                        let src = layout.index(b.p, i, q, c);
                        let dst = layout.index(b.p, i, q - 1, r);
                        builders
                            .entry(n)
                            .or_insert_with(|| MatrixBuilder::new(field, dim(n - 1), dim(n)))
                            .add(dst, src, field.mul(&sign, v));
                    }
                }
            }
        }
    }
    let diffs = builders.into_iter().map(|(n, b)| (n, b.build())).collect();
    let flag = x.is_non_negative() && y.is_non_negative();
    Ok(ChainComplex::new(field, dims, diffs)?.with_flag(flag))
}

/// `f ⊗ g` for degree-0 graded maps; a chain map when both factors are.
pub fn tensor_map(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    same_field(f.source(), g.source())?;
    let source = tensor(f.source(), g.source())?;
    let target = tensor(f.target(), g.target())?;
    let field = f.field();
    let src_layout = TensorLayout::of(f.source(), g.source());
    let dst_layout = TensorLayout::of(f.target(), g.target());
    let mut comps = BTreeMap::new();
    for (&n, bs) in &src_layout.blocks {
        let mut mb = MatrixBuilder::new(field, target.dim(n), source.dim(n));
        let mut any = false;
        for b in bs {
            let q = n - b.p;
            let (Some(fp), Some(gq)) = (
                f.nonzero_components().get(&b.p),
                g.nonzero_components().get(&q),
            ) else {
                continue;
            };
            for (r1, c1, v1) in fp.triplets() {
                for (r2, c2, v2) in gq.triplets() {
                    any = true;
                    mb.add(
                        dst_layout.index(b.p, r1, q, r2),
                        src_layout.index(b.p, c1, q, c2),
                        field.mul(v1, v2),
                    );
                }
            }
        }
        if any {
            comps.insert(n, mb.build());
        }
    }
    ChainMap::graded(source, target, comps)
}

/// Builds a map sending each source basis vector to `±` one target basis
/// vector. `image(n, idx)` returns `(target index, odd sign)`.
fn signed_permutation(
    source: ChainComplex,
    target: ChainComplex,
    image: impl Fn(Degree, usize) -> (usize, bool),
) -> ChainMap {
    let field = source.field();
    let mut comps = BTreeMap::new();
    for (&n, &d) in source.dims() {
        let mut mb = MatrixBuilder::new(field, target.dim(n), d);
        for idx in 0..d {
            let (t, odd) = image(n, idx);
            mb.add(t, idx, field.sign(odd as i64));
        }
        comps.insert(n, mb.build());
    }
    ChainMap::raw(source, target, comps)
}

fn odd(a: Degree, b: Degree) -> bool {
    (a as i64 * b as i64).rem_euclid(2) == 1
}

/// `τ : X ⊗ Y → Y ⊗ X`, `x ⊗ y ↦ (−1)^{|x||y|} y ⊗ x`.
pub fn symmetry(x: &ChainComplex, y: &ChainComplex) -> Result<ChainMap> {
    let src = TensorLayout::of(x, y);
    let dst = TensorLayout::of(y, x);
    Ok(signed_permutation(
        tensor(x, y)?,
        tensor(y, x)?,
        |n, idx| {
            let (p, i, j) = src.split(n, idx);
            let q = n - p;
            (dst.index(q, j, p, i), odd(p, q))
        },
    ))
}

/// `(X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z)`.
pub fn associator(x: &ChainComplex, y: &ChainComplex, z: &ChainComplex) -> Result<ChainMap> {
    let xy = tensor(x, y)?;
    let yz = tensor(y, z)?;
    let l_xy = TensorLayout::of(x, y);
    let l_outer_src = TensorLayout::of(&xy, z);
    let l_yz = TensorLayout::of(y, z);
    let l_outer_dst = TensorLayout::of(x, &yz);
    Ok(signed_permutation(
        tensor(&xy, z)?,
        tensor(x, &yz)?,
        |n, idx| {
            let (m, u, k) = l_outer_src.split(n, idx);
            let (p, i, j) = l_xy.split(m, u);
            let q = m - p;
            let r = n - m;
            let v = l_yz.index(q, j, r, k);
            (l_outer_dst.index(p, i, q + r, v), false)
        },
    ))
}

/// `X ⊗ (Y ⊗ Z) → (X ⊗ Y) ⊗ Z`.
pub fn associator_inverse(
    x: &ChainComplex,
    y: &ChainComplex,
    z: &ChainComplex,
) -> Result<ChainMap> {
    let xy = tensor(x, y)?;
    let yz = tensor(y, z)?;
    let l_xy = TensorLayout::of(x, y);
    let l_outer_dst = TensorLayout::of(&xy, z);
    let l_yz = TensorLayout::of(y, z);
    let l_outer_src = TensorLayout::of(x, &yz);
    Ok(signed_permutation(
        tensor(x, &yz)?,
        tensor(&xy, z)?,
        |n, idx| {
            let (p, i, v) = l_outer_src.split(n, idx);
            let (q, j, k) = l_yz.split(n - p, v);
            let r = n - p - q;
            let u = l_xy.index(p, i, q, j);
            (l_outer_dst.index(p + q, u, r, k), false)
        },
    ))
}

/// `(A ⊗ B) ⊗ (C ⊗ D) → (A ⊗ C) ⊗ (B ⊗ D)` with sign `(−1)^{|b||c|}`.
pub fn middle_four(
    a: &ChainComplex,
    b: &ChainComplex,
    c: &ChainComplex,
    d: &ChainComplex,
) -> Result<ChainMap> {
    let ab = tensor(a, b)?;
    let cd = tensor(c, d)?;
    let ac = tensor(a, c)?;
    let bd = tensor(b, d)?;
    let (l_ab, l_cd, l_ac, l_bd) = (
        TensorLayout::of(a, b),
        TensorLayout::of(c, d),
        TensorLayout::of(a, c),
        TensorLayout::of(b, d),
    );
    let src = TensorLayout::of(&ab, &cd);
    let dst = TensorLayout::of(&ac, &bd);
    Ok(signed_permutation(
        tensor(&ab, &cd)?,
        tensor(&ac, &bd)?,
        |n, idx| {
            let (m1, u, w) = src.split(n, idx);
            let (pa, ia, ib) = l_ab.split(m1, u);
            let pb = m1 - pa;
            let (pc, ic, id) = l_cd.split(n - m1, w);
            let pd = n - m1 - pc;
            let left = l_ac.index(pa, ia, pc, ic);
            let right = l_bd.index(pb, ib, pd, id);
            (dst.index(pa + pc, left, pb + pd, right), odd(pb, pc))
        },
    ))
}

/// `(A ⊗ B) ⊗ Z → (A ⊗ Z) ⊗ B` with sign `(−1)^{|b||z|}`.
pub fn swap_inner(a: &ChainComplex, b: &ChainComplex, z: &ChainComplex) -> Result<ChainMap> {
    let ab = tensor(a, b)?;
    let az = tensor(a, z)?;
    let (l_ab, l_az) = (TensorLayout::of(a, b), TensorLayout::of(a, z));
    let src = TensorLayout::of(&ab, z);
    let dst = TensorLayout::of(&az, b);
    Ok(signed_permutation(
        tensor(&ab, z)?,
        tensor(&az, b)?,
        |n, idx| {
            let (m, u, k) = src.split(n, idx);
            let (pa, ia, ib) = l_ab.split(m, u);
            let pb = m - pa;
            let pz = n - m;
            let left = l_az.index(pa, ia, pz, k);
            (dst.index(pa + pz, left, pb, ib), odd(pb, pz))
        },
    ))
}

/// `λ : I ⊗ X → X`.
pub fn left_unitor(x: &ChainComplex) -> Result<ChainMap> {
    let ix = tensor(&ChainComplex::unit(x.field()), x)?;
    Ok(signed_permutation(ix, x.clone(), |_, idx| (idx, false)))
}

pub fn left_unitor_inverse(x: &ChainComplex) -> Result<ChainMap> {
    let ix = tensor(&ChainComplex::unit(x.field()), x)?;
    Ok(signed_permutation(x.clone(), ix, |_, idx| (idx, false)))
}

/// `ρ : X ⊗ I → X`.
pub fn right_unitor(x: &ChainComplex) -> Result<ChainMap> {
    let xi = tensor(x, &ChainComplex::unit(x.field()))?;
    Ok(signed_permutation(xi, x.clone(), |_, idx| (idx, false)))
}

pub fn right_unitor_inverse(x: &ChainComplex) -> Result<ChainMap> {
    let xi = tensor(x, &ChainComplex::unit(x.field()))?;
    Ok(signed_permutation(x.clone(), xi, |_, idx| (idx, false)))
}
