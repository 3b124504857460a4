//! Finite-dimensional associative unital algebras given by structure
//! constants, and extensions `B -> A` between them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupData;
use crate::linalg::{kernel, unit_vector, zero_vector, Matrix, Vector};
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;

/// An algebra with basis `e_0 .. e_{n-1}`; `mult[i][j]` holds the
/// coordinates of `e_i e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDAlgebra {
    field: Field,
    dim: usize,
    mult: Vec<Vec<Vector>>,
    unit: Vector,
    sparse: Vec<Vec<(usize, Scalar)>>,
    left: Vec<Matrix>,
    right: Vec<Matrix>,
}

impl FDAlgebra {
    /// Validates and builds an algebra from raw structure constants.
    pub fn new(field: Field, dim: usize, mult: Vec<Vec<Vector>>, unit: Vector) -> Result<FDAlgebra> {
        let alg = FDAlgebra::unchecked(field, dim, mult, unit)?;
        alg.check_axioms()?;
        Ok(alg)
    }

    pub(crate) fn unchecked(field: Field, dim: usize, mult: Vec<Vec<Vector>>, unit: Vector) -> Result<FDAlgebra> {
        if mult.len() != dim || mult.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "multiplication table must be {dim}x{dim}"
            )));
        }
        if unit.len() != dim || mult.iter().flatten().any(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "coordinate vectors must have length {dim}"
            )));
        }
        if let Some(bad) = mult.iter().flatten().flatten().chain(&unit).find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field.label(),
                found: bad.field().label(),
            });
        }
        let sparse = mult
            .iter()
            .flatten()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (k, x.clone()))
                    .collect()
            })
            .collect();
        let mut alg = FDAlgebra {
            field,
            dim,
            mult,
            unit,
            sparse,
            left: Vec::new(),
            right: Vec::new(),
        };
        alg.left = (0..dim).map(|i| alg.left_matrix(&unit_vector(field, dim, i))).collect();
        alg.right = (0..dim).map(|i| alg.right_matrix(&unit_vector(field, dim, i))).collect();
        Ok(alg)
    }

    pub fn check_axioms(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mult[i][j];
                for k in 0..n {
                    let lhs = self.mul(ij, &self.basis_vector(k));
                    let rhs = self.mul(&self.basis_vector(i), &self.mult[j][k]);
                    if lhs != rhs {
                        return Err(Error::NonAssociative(i, j, k));
                    }
                }
            }
        }
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::UnitLaw(i));
            }
        }
        Ok(())
    }

    /// The one-dimensional algebra of the ground field itself.
    pub fn ground(field: Field) -> FDAlgebra {
        FDAlgebra::unchecked(field, 1, vec![vec![vec![field.one()]]], vec![field.one()])
            .expect("ground field algebra")
    }

    pub fn group_algebra(group: &GroupData, field: Field) -> FDAlgebra {
        let n = group.order();
        let mult = (0..n)
            .map(|i| (0..n).map(|j| unit_vector(field, n, group.mul(i, j))).collect())
            .collect();
        FDAlgebra::unchecked(field, n, mult, unit_vector(field, n, group.identity()))
            .expect("group tables are square")
    }

    /// The full matrix algebra `M_n(K)` on matrix units `e_{ij}` (index `i * n + j`).
    pub fn matrix_algebra(field: Field, n: usize) -> FDAlgebra {
        let d = n * n;
        let mut mult = vec![vec![zero_vector(field, d); d]; d];
        for (a, row) in mult.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                let (i, j) = (a / n, a % n);
                let (k, l) = (b / n, b % n);
                if j == k {
                    entry[i * n + l] = field.one();
                }
            }
        }
        let mut unit = zero_vector(field, d);
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        FDAlgebra::unchecked(field, d, mult, unit).expect("matrix units")
    }

    /// `K^n` with orthogonal idempotent basis.
    pub fn diagonal(field: Field, n: usize) -> FDAlgebra {
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { unit_vector(field, n, i) } else { zero_vector(field, n) })
                    .collect()
            })
            .collect();
        FDAlgebra::unchecked(field, n, mult, vec![field.one(); n]).expect("diagonal algebra")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn mult_table(&self) -> &[Vec<Vector>] {
        &self.mult
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        unit_vector(self.field, self.dim, i)
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.field, self.dim)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.dim;
        let mut out = zero_vector(self.field, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in &self.sparse[i * n + j] {
                    out[*k] += &(&c * s);
                }
            }
        }
        out
    }

    /// Matrix of `v -> x v`.
    pub fn left_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    /// Matrix of `v -> v x`.
    pub fn right_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.field, self.dim, &cols).expect("square")
    }

    /// Left multiplication by the `i`-th basis vector.
    pub fn left_basis(&self, i: usize) -> &Matrix {
        &self.left[i]
    }

    pub fn right_basis(&self, i: usize) -> &Matrix {
        &self.right[i]
    }

    pub fn left_basis_all(&self) -> &[Matrix] {
        &self.left
    }

    pub fn right_basis_all(&self) -> &[Matrix] {
        &self.right
    }

    /// Elements commuting with every vector in `elements`.
    pub fn centralizer_of(&self, elements: &[Vector]) -> Subspace {
        if elements.is_empty() {
            return Subspace::full(self.field, self.dim);
        }
        let mut stacked: Option<Matrix> = None;
        for x in elements {
            let d = self.left_matrix(x).sub(&self.right_matrix(x));
            stacked = Some(match stacked {
                None => d,
                Some(s) => s.vstack(&d),
            });
        }
        Subspace::span(self.field, self.dim, kernel(&stacked.expect("nonempty")))
    }

    pub fn center(&self) -> Subspace {
        let basis: Vec<Vector> = (0..self.dim).map(|i| self.basis_vector(i)).collect();
        self.centralizer_of(&basis)
    }

    pub fn is_commutative(&self) -> bool {
        self.center().is_full()
    }

    /// The algebra structure induced on a multiplicatively closed subspace
    /// containing the unit, expressed in its RREF basis.
    pub fn subalgebra_on(&self, space: &Subspace) -> Result<FDAlgebra> {
        let basis = space.basis();
        let k = basis.len();
        let mut mult = vec![Vec::with_capacity(k); k];
        for (i, row) in mult.iter_mut().enumerate() {
            for j in 0..k {
                let p = self.mul(&basis[i], &basis[j]);
                row.push(space.coords(&p).ok_or(Error::NotClosed(i, j))?);
            }
        }
        let unit = space.coords(&self.unit).ok_or(Error::UnitNotInSpan)?;
        FDAlgebra::unchecked(self.field, k, mult, unit)
    }

    /// Linear combination helper used by tests and builders.
    pub fn element(&self, coeffs: &[(usize, Scalar)]) -> Vector {
        let mut v = self.zero();
        for (i, c) in coeffs {
            v[*i] += c;
        }
        v
    }
}

/// Re-validates an algebra; the error names the first violated identity.
pub fn validate_algebra(field: Field, dim: usize, mult: Vec<Vec<Vector>>, unit: Vector) -> Result<FDAlgebra> {
    FDAlgebra::new(field, dim, mult, unit)
}

/// A unital injective algebra morphism `iota: B -> A`.
#[derive(Clone, Debug)]
pub struct Extension {
    b: Arc<FDAlgebra>,
    a: Arc<FDAlgebra>,
    iota: Matrix,
}

impl Extension {
    pub fn new(b: Arc<FDAlgebra>, a: Arc<FDAlgebra>, iota: Matrix) -> Result<Extension> {
        if b.field() != a.field() || iota.field() != a.field() {
            return Err(Error::FieldMismatch {
                expected: a.field().label(),
                found: b.field().label(),
            });
        }
        if iota.rows() != a.dim() || iota.cols() != b.dim() {
            return Err(Error::DimensionMismatch(format!(
                "inclusion must be {}x{}",
                a.dim(),
                b.dim()
            )));
        }
        if iota.rank() != b.dim() {
            return Err(Error::Input("inclusion is not injective".into()));
        }
        if iota.mul_vec(b.unit()) != a.unit() {
            return Err(Error::Input("inclusion does not preserve the unit".into()));
        }
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let lhs = iota.mul_vec(&b.mult_table()[i][j]);
                let rhs = a.mul(&iota.column(i), &iota.column(j));
                if lhs != rhs {
                    return Err(Error::Input(format!(
                        "inclusion is not multiplicative on basis pair ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Extension { b, a, iota })
    }

    /// `A | A` via the identity.
    pub fn identity(a: Arc<FDAlgebra>) -> Extension {
        let iota = Matrix::identity(a.field(), a.dim());
        Extension { b: a.clone(), a, iota }
    }

    /// `A | K`, the ground field sitting in `A` through the unit.
    pub fn over_ground(a: Arc<FDAlgebra>) -> Extension {
        let b = Arc::new(FDAlgebra::ground(a.field()));
        let iota = Matrix::from_columns(a.field(), a.dim(), &[a.unit().to_vec()]).expect("column");
        Extension { b, a, iota }
    }

    /// The subalgebra spanned by `vectors`, which must be unital and closed.
    pub fn subalgebra(a: Arc<FDAlgebra>, vectors: &[Vector]) -> Result<Extension> {
        if vectors.iter().any(|v| v.len() != a.dim()) {
            return Err(Error::DimensionMismatch("subalgebra basis vector length".into()));
        }
        let space = Subspace::span(a.field(), a.dim(), vectors.iter().cloned());
        if !space.contains(a.unit()) {
            return Err(Error::UnitNotInSpan);
        }
        let b = a.subalgebra_on(&space)?;
        let iota = Matrix::from_columns(a.field(), a.dim(), space.basis())?;
        Extension::new(Arc::new(b), a, iota)
    }

    /// `K[G] | K[H]` for a subgroup given by element indices.
    pub fn from_subgroup(group: &GroupData, field: Field, subgroup: &[usize]) -> Result<Extension> {
        let a = Arc::new(FDAlgebra::group_algebra(group, field));
        let (sub, members) = group.subgroup_data(subgroup)?;
        let b = Arc::new(FDAlgebra::group_algebra(&sub, field));
        let cols: Vec<Vector> = members.iter().map(|&g| unit_vector(field, group.order(), g)).collect();
        let iota = Matrix::from_columns(field, group.order(), &cols)?;
        Extension::new(b, a, iota)
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    pub fn a(&self) -> &Arc<FDAlgebra> {
        &self.a
    }

    pub fn b(&self) -> &Arc<FDAlgebra> {
        &self.b
    }

    pub fn iota(&self) -> &Matrix {
        &self.iota
    }

    /// Images of the basis of `B` inside `A`.
    pub fn image_basis(&self) -> Vec<Vector> {
        self.iota.columns()
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.field(), self.a.dim(), self.image_basis())
    }

    pub fn embed(&self, b: &[Scalar]) -> Vector {
        self.iota.mul_vec(b)
    }

    /// Coordinates in `B` of an element of `iota(B)`.
    pub fn pull_back(&self, a: &[Scalar]) -> Option<Vector> {
        let sol = crate::linalg::solve(&self.iota, a).ok()??;
        Some(sol.particular)
    }

    /// Whether `iota` is square, hence invertible.
    pub fn is_trivial(&self) -> bool {
        self.a.dim() == self.b.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> Scalar {
        Field::Rational.from_i64(x)
    }

    fn c2_table(gg: Vector) -> Vec<Vec<Vector>> {
        vec![vec![vec![q(1), q(0)], vec![q(0), q(1)]], vec![vec![q(0), q(1)], gg]]
    }

    #[test]
    fn c2_group_algebra_validates() {
        let a = validate_algebra(Field::Rational, 2, c2_table(vec![q(1), q(0)]), vec![q(1), q(0)]).unwrap();
        assert!(a.is_commutative());
    }

    #[test]
    fn idempotent_generator_is_still_an_algebra() {
        // {1, g} with g^2 = g is the split algebra K x K, which is associative and unital
        let a = validate_algebra(Field::Rational, 2, c2_table(vec![q(0), q(1)]), vec![q(1), q(0)]);
        assert!(a.is_ok());
    }

    #[test]
    fn broken_unit_is_reported() {
        let mut t = c2_table(vec![q(1), q(0)]);
        t[0][1] = vec![q(0), q(0)];
        let err = validate_algebra(Field::Rational, 2, t, vec![q(1), q(0)]).unwrap_err();
        // (e0 e0) e1 = e0 e1 = 0 but e0 (e0 e1) = e0 * 0 = 0: associative there;
        // the first failing triple is (0, 1, 1): (e0 e1) e1 = 0, e0 (e1 e1) = e0 e0 = e0
        assert!(matches!(err, Error::NonAssociative(0, 1, 1)), "{err}");
    }

    #[test]
    fn non_associative_triple_witness() {
        // basis {1, x, y}: x x = y, x y = x, everything else with x, y zero
        let z = vec![q(0), q(0), q(0)];
        let e = |i: usize| unit_vector(Field::Rational, 3, i);
        let mut t = vec![vec![z.clone(); 3]; 3];
        for i in 0..3 {
            t[0][i] = e(i);
            t[i][0] = e(i);
        }
        t[1][1] = e(2);
        t[1][2] = e(1);
        // lexicographically first failure: (x x) x = y x = 0 versus x (x x) = x y = x
        let err = validate_algebra(Field::Rational, 3, t, e(0)).unwrap_err();
        assert!(matches!(err, Error::NonAssociative(1, 1, 1)), "{err}");
    }

    #[test]
    fn unit_law_failure() {
        let t = c2_table(vec![q(1), q(0)]);
        let err = validate_algebra(Field::Rational, 2, t, vec![q(0), q(1)]).unwrap_err();
        assert!(matches!(err, Error::UnitLaw(0)));
    }

    #[test]
    fn matrix_units() {
        let m2 = FDAlgebra::matrix_algebra(Field::Rational, 2);
        let rebuilt = validate_algebra(Field::Rational, 4, m2.mult_table().to_vec(), m2.unit().to_vec()).unwrap();
        assert_eq!(rebuilt.unit(), &[q(1), q(0), q(0), q(1)]);
        assert_eq!(m2.center().dim(), 1);
        assert!(m2.center().contains(m2.unit()));
    }

    #[test]
    fn ground_field_subalgebra_of_m2() {
        let m2 = Arc::new(FDAlgebra::matrix_algebra(Field::Rational, 2));
        let ext = Extension::subalgebra(m2.clone(), &[m2.unit().to_vec()]).unwrap();
        assert_eq!(ext.b().dim(), 1);
        assert!(Extension::subalgebra(m2.clone(), &[m2.basis_vector(1)]).is_err());
    }

    #[test]
    fn full_basis_gives_invertible_inclusion() {
        let m2 = Arc::new(FDAlgebra::matrix_algebra(Field::Rational, 2));
        let basis: Vec<Vector> = (0..4).map(|i| m2.basis_vector(i)).collect();
        let ext = Extension::subalgebra(m2, &basis).unwrap();
        assert!(ext.iota().inverse().is_some());
    }
}
