//! Subspaces of coordinate space held in canonical RREF form, so that equal
//! subspaces compare equal as data.

use crate::error::{Error, Result};
use crate::linalg::{axpy, is_zero_vector, kernel_of_combination, zero_vector, RowEchelon, Vector};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceOps {
    pub sum: Subspace,
    pub intersection: Subspace,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace::span(
            field,
            ambient_dim,
            (0..ambient_dim).map(|i| crate::linalg::unit_vector(field, ambient_dim, i)),
        )
    }

    pub fn span<I>(field: Field, ambient_dim: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut ech = RowEchelon::new(field, ambient_dim);
        for v in vectors {
            ech.insert(v);
        }
        Subspace::from_echelon(ech)
    }

    pub fn from_echelon(ech: RowEchelon) -> Subspace {
        let field = ech.field();
        let ambient_dim = ech.width();
        let (basis, pivots) = ech.into_parts();
        Subspace {
            field,
            ambient_dim,
            basis,
            pivots,
        }
    }

    pub fn echelon(&self) -> RowEchelon {
        let mut e = RowEchelon::new(self.field, self.ambient_dim);
        for b in &self.basis {
            e.insert(b.clone());
        }
        e
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    /// Coordinates of `v` in the RREF basis, or `None` when `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            let neg = -ci;
            axpy(&mut rest, &neg, b);
        }
        is_zero_vector(&rest).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    /// The vector with the given coordinates.
    pub fn element(&self, coords: &[Scalar]) -> Vector {
        assert_eq!(coords.len(), self.dim());
        let mut out = zero_vector(self.field, self.ambient_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            axpy(&mut out, c, b);
        }
        out
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of {}^{} and {}^{}",
                self.field, self.ambient_dim, other.field, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut e = self.echelon();
        for b in &other.basis {
            e.insert(b.clone());
        }
        Ok(Subspace::from_echelon(e))
    }

    /// Intersection via the kernel of `(x, y) -> sum x_i u_i - sum y_j v_j`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut images: Vec<Vector> = self.basis.clone();
        images.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let ker = kernel_of_combination(self.field, self.ambient_dim, &images);
        let p = self.dim();
        Ok(Subspace::span(
            self.field,
            self.ambient_dim,
            ker.into_iter().map(|k| self.element(&k[..p])),
        ))
    }

    pub fn ops(&self, other: &Subspace) -> Result<SubspaceOps> {
        Ok(SubspaceOps {
            sum: self.sum(other)?,
            intersection: self.intersection(other)?,
        })
    }
}

/// Sum and intersection of two subspaces of the same ambient space.
pub fn subspace_ops(u: &Subspace, v: &Subspace) -> Result<SubspaceOps> {
    u.ops(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unit_vector;
    use proptest::prelude::*;

    fn qv(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Field::Rational.from_i64(x)).collect()
    }

    #[test]
    fn equal_subspaces_have_equal_data() {
        let f = Field::Rational;
        let a = Subspace::span(f, 3, vec![qv(&[1, 1, 0]), qv(&[0, 1, 1])]);
        let b = Subspace::span(f, 3, vec![qv(&[1, 2, 1]), qv(&[1, 0, -1])]);
        assert_eq!(a, b);
        let ops = a.ops(&a).unwrap();
        assert_eq!(ops.sum, a);
        assert_eq!(ops.intersection, a);
    }

    #[test]
    fn complementary_planes() {
        let f = Field::Rational;
        let u = Subspace::span(f, 3, vec![unit_vector(f, 3, 0), unit_vector(f, 3, 1)]);
        let v = Subspace::span(f, 3, vec![unit_vector(f, 3, 2)]);
        let ops = subspace_ops(&u, &v).unwrap();
        assert!(ops.intersection.is_zero());
        assert!(ops.sum.is_full());
    }

    #[test]
    fn ambient_mismatch() {
        let f = Field::Rational;
        assert!(Subspace::zero(f, 2).sum(&Subspace::zero(f, 3)).is_err());
    }

    #[test]
    fn coordinates_round_trip() {
        let f = Field::Rational;
        let s = Subspace::span(f, 3, vec![qv(&[2, 4, 0]), qv(&[0, 3, 3])]);
        let v = qv(&[1, 5, 3]);
        let c = s.coords(&v).unwrap();
        assert_eq!(s.element(&c), v);
        assert!(s.coords(&qv(&[0, 0, 1])).is_none());
    }

    fn small_vec() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-3i64..=3, 4)
    }

    proptest! {
        #[test]
        fn grassmann_identity(a in small_vec(), b in small_vec(), c in small_vec(), d in small_vec()) {
            let f = Field::Rational;
            let u = Subspace::span(f, 4, vec![qv(&a), qv(&b)]);
            let v = Subspace::span(f, 4, vec![qv(&c), qv(&d)]);
            let ops = u.ops(&v).unwrap();
            prop_assert_eq!(u.dim() + v.dim(), ops.sum.dim() + ops.intersection.dim());
            prop_assert!(u.contains_subspace(&ops.intersection));
            prop_assert!(v.contains_subspace(&ops.intersection));
        }

        #[test]
        fn rref_is_idempotent(rows in proptest::collection::vec(small_vec(), 1..5)) {
            let f = Field::Rational;
            let m = crate::linalg::Matrix::from_rows(f, &rows.iter().map(|r| qv(r)).collect::<Vec<_>>()).unwrap();
            let (r1, p1) = crate::linalg::rref(&m);
            let (r2, p2) = crate::linalg::rref(&r1);
            prop_assert_eq!(r1.clone(), r2);
            prop_assert_eq!(p1.clone(), p2);
            prop_assert!(p1.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(Subspace::span(f, 4, m.row_vectors()), Subspace::span(f, 4, r1.row_vectors()));
        }

        #[test]
        fn solve_substitutes_exactly(rows in proptest::collection::vec(small_vec(), 1..5), rhs in small_vec()) {
            let f = Field::Rational;
            let m = crate::linalg::Matrix::from_rows(f, &rows.iter().map(|r| qv(r)).collect::<Vec<_>>()).unwrap();
            let b: Vector = qv(&rhs[..m.rows()]);
            if let Some(s) = crate::linalg::solve(&m, &b).unwrap() {
                prop_assert_eq!(m.mul_vec(&s.particular), b);
                for k in &s.kernel {
                    prop_assert!(is_zero_vector(&m.mul_vec(k)));
                }
                prop_assert_eq!(s.kernel.len(), 4 - m.rank());
            }
        }
    }
}
