//! Homology and the cofibration / weak-equivalence predicates on `Ch(k)`.

use std::collections::BTreeMap;

use crate::exactla::complex::{ChainComplex, ChainMap, Degree};
use crate::exactla::linalg::{SparseVec, Subspace};

/// Cycles `Z_n = ker d_n`.
pub fn cycles(x: &ChainComplex, n: Degree) -> Subspace {
    Subspace::from_columns(&x.differential(n).kernel())
}

/// Boundaries `B_n = im d_{n+1}`.
pub fn boundaries(x: &ChainComplex, n: Degree) -> Subspace {
    x.differential(n + 1).column_space()
}

pub fn betti(x: &ChainComplex, n: Degree) -> usize {
    let d = x.dim(n);
    if d == 0 {
        return 0;
    }
    d - x.differential(n).rank() - x.differential(n + 1).rank()
}

/// `dim H_n` for each degree with nonzero homology.
pub fn homology(x: &ChainComplex) -> BTreeMap<Degree, usize> {
    x.degrees()
        .map(|n| (n, betti(x, n)))
        .filter(|(_, h)| *h > 0)
        .collect()
}

/// Representative cycles whose classes form a basis of `H_n`.
pub fn homology_representatives(x: &ChainComplex, n: Degree) -> Vec<SparseVec> {
    let mut span = boundaries(x, n);
    cycles(x, n)
        .basis()
        .into_iter()
        .filter(|z| span.insert(z.clone()))
        .collect()
}

/// Rank of `H_n(f)`, as `dim(f(Z_n) + B_n) − dim B_n` in the target.
pub fn induced_rank(f: &ChainMap, n: Degree) -> usize {
    let b = boundaries(f.target(), n);
    let mut s = b.clone();
    let fn_ = f.component(n);
    for z in cycles(f.source(), n).basis() {
        s.insert(fn_.mul_vec(&z));
    }
    s.dim() - b.dim()
}

pub fn is_quasi_iso(f: &ChainMap) -> bool {
    ChainComplex::union_degrees([f.source(), f.target()])
        .into_iter()
        .all(|n| {
            let h = betti(f.source(), n);
            h == betti(f.target(), n) && (h == 0 || induced_rank(f, n) == h)
        })
}

pub fn is_mono(f: &ChainMap) -> bool {
    f.source()
        .degrees()
        .all(|n| f.component(n).has_full_column_rank())
}

pub fn is_epi(f: &ChainMap) -> bool {
    f.target()
        .degrees()
        .all(|n| f.component(n).has_full_row_rank())
}

pub fn is_iso(f: &ChainMap) -> bool {
    is_mono(f) && is_epi(f)
}

/// Membership in `Cof`. Over a field every mono qualifies, so this agrees
/// with [`is_mono`]; it stays a separate predicate so callers can state
/// which class they mean.
pub fn is_cof(f: &ChainMap) -> bool {
    is_mono(f)
}

pub fn is_trivial_cofibration(f: &ChainMap) -> bool {
    is_mono(f) && is_quasi_iso(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::Field;
    use crate::exactla::linalg::Matrix;

    fn cyl(field: Field) -> ChainComplex {
        let dims = BTreeMap::from([(0, 2), (1, 1)]);
        let diffs = BTreeMap::from([(1, Matrix::from_i64_rows(field, &[&[-1], &[1]]))]);
        ChainComplex::new(field, dims, diffs).unwrap()
    }

    #[test]
    fn cylinder_homology() {
        for f in [Field::Rationals, Field::Prime(2), Field::Prime(7)] {
            assert_eq!(homology(&cyl(f)), BTreeMap::from([(0, 1)]));
            assert_eq!(homology_representatives(&cyl(f), 0).len(), 1);
        }
        assert!(homology(&ChainComplex::zero(Field::Rationals)).is_empty());
    }

    #[test]
    fn projection_is_quasi_iso() {
        let f = Field::Rationals;
        let p = ChainMap::new(
            cyl(f),
            ChainComplex::unit(f),
            BTreeMap::from([(0, Matrix::from_i64_rows(f, &[&[1, 1]]))]),
        )
        .unwrap();
        assert!(is_quasi_iso(&p));
        assert!(is_epi(&p));
        assert!(!is_mono(&p));
    }

    #[test]
    fn zero_endomorphism_of_unit() {
        let i = ChainComplex::unit(Field::Prime(3));
        let z = ChainMap::zero(&i, &i);
        assert!(!is_quasi_iso(&z));
        assert!(!is_mono(&z));
        assert!(is_quasi_iso(&ChainMap::identity(&i)));
    }

    #[test]
    fn inclusion_at_a_is_trivial_cofibration() {
        let f = Field::Rationals;
        let i0 = ChainMap::new(
            ChainComplex::unit(f),
            cyl(f),
            BTreeMap::from([(0, Matrix::from_i64_rows(f, &[&[1], &[0]]))]),
        )
        .unwrap();
        assert!(is_mono(&i0));
        assert!(is_cof(&i0));
        assert!(is_trivial_cofibration(&i0));
    }
}
