//! Decision procedures with checkable certificates: separability elements,
//! conditional expectations, H-separability systems, left and right D2
//! quasibases and the endomorphism-ring test, plus a classification that
//! re-verifies every certificate and the implications between the notions.

use crate::bimodule::{
    dual_basis_witness, generator_witness, hom_bimodule, is_bimodule_map, summand_witness, Bimodule, Side,
    SummandWitness,
};
use crate::canonical::CanonicalRings;
use crate::error::{Error, Result};
use crate::linalg::{axpy, span_decide, zero_vector, Matrix, Vector};
use crate::sample::{random_vector, SampleRng};

/// Generator order used when a solver has a choice of pivots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotOrder {
    #[default]
    Natural,
    Reversed,
}

fn ordered<T: Clone>(items: &[T], order: PivotOrder) -> Vec<(usize, T)> {
    let mut v: Vec<(usize, T)> = items.iter().cloned().enumerate().collect();
    if order == PivotOrder::Reversed {
        v.reverse();
    }
    v
}

fn combine_matrices(c: &CanonicalRings, rows: usize, cols: usize, terms: &[(&crate::scalar::Scalar, &Matrix)]) -> Matrix {
    let mut out = Matrix::zeros(c.field(), rows, cols);
    for (k, m) in terms {
        out.add_scaled(k, m);
    }
    out
}

fn in_casimir(c: &CanonicalRings, e: &[crate::scalar::Scalar]) -> bool {
    c.square_module
        .left_actions()
        .iter()
        .zip(c.square_module.right_actions())
        .all(|(l, r)| l.mul_vec(e) == r.mul_vec(e))
}

fn in_t(c: &CanonicalRings, t: &[crate::scalar::Scalar]) -> bool {
    c.ext
        .image_basis()
        .iter()
        .all(|b| c.square_module.left_act(b).mul_vec(t) == c.square_module.right_act(b).mul_vec(t))
}

fn in_r(c: &CanonicalRings, r: &[crate::scalar::Scalar]) -> bool {
    let a = c.a();
    c.ext.image_basis().iter().all(|b| a.mul(b, r) == a.mul(r, b))
}

fn in_s(c: &CanonicalRings, alpha: &Matrix) -> bool {
    is_bimodule_map(&c.b_a_b(), &c.b_a_b(), alpha)
}

/// `e` in the tensor square with `a e = e a` and `mu(e) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparabilityElement {
    pub e: Vector,
}

impl SeparabilityElement {
    pub fn verify(&self, c: &CanonicalRings) -> bool {
        self.e.len() == c.square.dim() && in_casimir(c, &self.e) && c.mu().mul_vec(&self.e) == *c.a().unit()
    }
}

/// A `B`-`B`-bimodule retraction `E: A -> B` with `E(1) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalExpectation {
    pub map: Matrix,
}

impl ConditionalExpectation {
    pub fn verify(&self, c: &CanonicalRings) -> bool {
        let b = c.ext.b();
        let target = Bimodule::regular(b);
        self.map.rows() == b.dim()
            && self.map.cols() == c.a().dim()
            && is_bimodule_map(&c.b_a_b(), &target, &self.map)
            && self.map.mul_vec(c.a().unit()) == *b.unit()
    }
}

/// Casimir elements `e_i` and centralizer elements `r_i` with `1 (x) 1 = sum e_i r_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSepSystem {
    pub pairs: Vec<(Vector, Vector)>,
}

impl HSepSystem {
    pub fn verify(&self, c: &CanonicalRings) -> bool {
        let mut acc = zero_vector(c.field(), c.square.dim());
        for (e, r) in &self.pairs {
            if e.len() != c.square.dim() || r.len() != c.a().dim() || !in_casimir(c, e) || !in_r(c, r) {
                return false;
            }
            axpy(&mut acc, &c.field().one(), &c.square_module.right_act(r).mul_vec(e));
        }
        acc == c.one_tensor_one()
    }

    /// The left D2 quasibase `t_i = e_i`, `beta_i = rho_{r_i}` it induces.
    pub fn left_quasibase(&self, c: &CanonicalRings) -> D2Quasibase {
        D2Quasibase {
            side: Side::Left,
            pairs: self.pairs.iter().map(|(e, r)| (e.clone(), c.a().right_matrix(r))).collect(),
        }
    }
}

/// Left: pairs `(t_i, beta_i)` with `x (x) y = sum t_i1 (x) t_i2 beta_i(x) y`.
/// Right: pairs `(gamma_j, u_j)` stored as `(u_j, gamma_j)` with
/// `x (x) y = sum x gamma_j(y) u_j1 (x) u_j2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D2Quasibase {
    pub side: Side,
    pub pairs: Vec<(Vector, Matrix)>,
}

impl D2Quasibase {
    fn members_valid(&self, c: &CanonicalRings) -> bool {
        self.pairs
            .iter()
            .all(|(t, m)| t.len() == c.square.dim() && in_t(c, t) && m.rows() == c.a().dim() && in_s(c, m))
    }

    /// The defining identity on all basis `x` with `y = 1` (left) or all
    /// basis `y` with `x = 1` (right).
    pub fn verify(&self, c: &CanonicalRings) -> bool {
        if !self.members_valid(c) {
            return false;
        }
        let n = c.a().dim();
        let one = c.a().unit().to_vec();
        (0..n).all(|k| {
            let e = c.a().basis_vector(k);
            let (lhs, rhs) = match self.side {
                Side::Left => (self.apply_left(c, &e, &one), c.tensor(&e, &one)),
                Side::Right => (self.apply_right(c, &one, &e), c.tensor(&one, &e)),
            };
            lhs == rhs
        })
    }

    /// The identity for arbitrary `x (x) y`, on `samples` random pairs.
    pub fn verify_random(&self, c: &CanonicalRings, rng: &mut SampleRng, samples: usize) -> bool {
        let n = c.a().dim();
        (0..samples).all(|_| {
            let x = random_vector(c.field(), n, rng);
            let y = random_vector(c.field(), n, rng);
            let lhs = match self.side {
                Side::Left => self.apply_left(c, &x, &y),
                Side::Right => self.apply_right(c, &x, &y),
            };
            lhs == c.tensor(&x, &y)
        })
    }

    fn apply_left(&self, c: &CanonicalRings, x: &[crate::scalar::Scalar], y: &[crate::scalar::Scalar]) -> Vector {
        let a = c.a();
        let mut acc = zero_vector(c.field(), c.square.dim());
        for (t, beta) in &self.pairs {
            let z = a.mul(&beta.mul_vec(x), y);
            axpy(&mut acc, &c.field().one(), &c.square_module.right_act(&z).mul_vec(t));
        }
        acc
    }

    fn apply_right(&self, c: &CanonicalRings, x: &[crate::scalar::Scalar], y: &[crate::scalar::Scalar]) -> Vector {
        let a = c.a();
        let mut acc = zero_vector(c.field(), c.square.dim());
        for (u, gamma) in &self.pairs {
            let z = a.mul(x, &gamma.mul_vec(y));
            axpy(&mut acc, &c.field().one(), &c.square_module.left_act(&z).mul_vec(u));
        }
        acc
    }
}

pub fn find_separability_element(c: &CanonicalRings) -> Result<Option<SeparabilityElement>> {
    let mu = c.mu();
    let gens: Vec<Vector> = c.casimir.basis().iter().map(|e| mu.mul_vec(e)).collect();
    Ok(span_decide(c.field(), &gens, c.a().unit())?.map(|coef| SeparabilityElement {
        e: c.casimir.element(&coef),
    }))
}

pub fn find_conditional_expectation(c: &CanonicalRings) -> Result<Option<ConditionalExpectation>> {
    let b = c.ext.b();
    let hom = hom_bimodule(&c.b_a_b(), &Bimodule::regular(b))?.basis();
    let gens: Vec<Vector> = hom.iter().map(|f| f.mul_vec(c.a().unit())).collect();
    Ok(span_decide(c.field(), &gens, b.unit())?.map(|coef| {
        let terms: Vec<_> = coef.iter().zip(&hom).collect();
        ConditionalExpectation {
            map: combine_matrices(c, b.dim(), c.a().dim(), &terms),
        }
    }))
}

pub fn find_hsep_system(c: &CanonicalRings) -> Result<Option<HSepSystem>> {
    let cas = c.casimir.basis();
    let rs = c.r.space.basis();
    let mut gens = Vec::with_capacity(cas.len() * rs.len());
    for e in cas {
        for r in rs {
            gens.push(c.square_module.right_act(r).mul_vec(e));
        }
    }
    let Some(coef) = span_decide(c.field(), &gens, &c.one_tensor_one())? else {
        return Ok(None);
    };
    let mut pairs = Vec::new();
    for (a, e) in cas.iter().enumerate() {
        let mut r = c.a().zero();
        for (b, rb) in rs.iter().enumerate() {
            axpy(&mut r, &coef[a * rs.len() + b], rb);
        }
        if r.iter().any(|x| !x.is_zero()) {
            pairs.push((e.clone(), r));
        }
    }
    Ok(Some(HSepSystem { pairs }))
}

/// `y -> t1 (x) t2 y` from `A` to the tensor square.
fn right_factor_map(c: &CanonicalRings, t: &[crate::scalar::Scalar]) -> Matrix {
    let cols: Vec<Vector> = c.square_module.right_actions().iter().map(|r| r.mul_vec(t)).collect();
    Matrix::from_columns(c.field(), c.square.dim(), &cols).expect("columns")
}

/// `y -> y u1 (x) u2`.
fn left_factor_map(c: &CanonicalRings, u: &[crate::scalar::Scalar]) -> Matrix {
    let cols: Vec<Vector> = c.square_module.left_actions().iter().map(|l| l.mul_vec(u)).collect();
    Matrix::from_columns(c.field(), c.square.dim(), &cols).expect("columns")
}

/// Solves for quasibases on one side. The generator list runs over pairs
/// of `T` and `S` basis elements in the given order; coefficients are folded
/// so that there is one pair per `T` basis element used.
pub fn find_d2_quasibases(c: &CanonicalRings, side: Side, order: PivotOrder) -> Result<Option<D2Quasibase>> {
    let n = c.a().dim();
    let ts = ordered(c.t.space.basis(), order);
    let ss = ordered(&c.s.maps, order);
    let one = c.a().unit().to_vec();
    let target_cols: Vec<Vector> = (0..n)
        .map(|k| {
            let e = c.a().basis_vector(k);
            match side {
                Side::Left => c.tensor(&e, &one),
                Side::Right => c.tensor(&one, &e),
            }
        })
        .collect();
    let target = Matrix::from_columns(c.field(), c.square.dim(), &target_cols)?.flatten();
    let mut gens = Vec::with_capacity(ts.len() * ss.len());
    let mut index = Vec::with_capacity(ts.len() * ss.len());
    for (ti, t) in &ts {
        let inner = match side {
            Side::Left => right_factor_map(c, t),
            Side::Right => left_factor_map(c, t),
        };
        for (si, s) in &ss {
            gens.push(inner.checked_mul(s)?.flatten());
            index.push((*ti, *si));
        }
    }
    let Some(coef) = span_decide(c.field(), &gens, &target)? else {
        return Ok(None);
    };
    let mut folded: Vec<Option<Matrix>> = vec![None; c.t.dim()];
    for ((ti, si), k) in index.iter().zip(&coef) {
        if k.is_zero() {
            continue;
        }
        folded[*ti].get_or_insert_with(|| Matrix::zeros(c.field(), n, n)).add_scaled(k, &c.s.maps[*si]);
    }
    let mut pairs = Vec::new();
    for (ti, _) in &ts {
        if let Some(m) = folded[*ti].take().filter(|m| !m.is_zero()) {
            pairs.push((c.t.space.basis()[*ti].clone(), m));
        }
    }
    Ok(Some(D2Quasibase { side, pairs }))
}

/// The tensor square is a summand of copies of `A`: as `B`-`A`-bimodules
/// (left) or `A`-`B`-bimodules (right).
pub fn d2_summand_witness(c: &CanonicalRings, side: Side) -> Result<Option<SummandWitness>> {
    let (m, n) = match side {
        Side::Left => (c.square_module.restrict_left(&c.ext)?, c.b_a_a()),
        Side::Right => (c.square_module.restrict_right(&c.ext)?, c.a_a_b()),
    };
    summand_witness(&m, &n)
}

/// `A (x)_B A` is a summand of copies of `A` as `A`-`A`-bimodules.
pub fn hsep_summand_witness(c: &CanonicalRings) -> Result<Option<SummandWitness>> {
    summand_witness(&c.square_module, &c.a_a)
}

/// `E = End A_B` with `x . f . y = lambda_x f lambda_y`, as an `A`-`B`-bimodule.
#[derive(Clone, Debug)]
pub struct EndoRing {
    pub maps: Vec<Matrix>,
    pub module: Bimodule,
}

pub fn endo_ring(c: &CanonicalRings) -> Result<EndoRing> {
    let a = c.a();
    let a_b = c.a_a_b().right_part();
    let hom = hom_bimodule(&a_b, &a_b)?;
    let maps = hom.basis();
    let k = maps.len();
    let coords = |f: &Matrix| -> Result<Vector> {
        hom.coords(f).ok_or_else(|| Error::Inconsistency("End A_B is not closed under the actions".into()))
    };
    let mut left = Vec::with_capacity(a.dim());
    for x in 0..a.dim() {
        let cols: Result<Vec<Vector>> = maps.iter().map(|f| coords(&a.left_basis(x).checked_mul(f)?)).collect();
        left.push(Matrix::from_columns(c.field(), k, &cols?)?);
    }
    let mut right = Vec::with_capacity(c.ext.b().dim());
    for b in c.ext.image_basis() {
        let lb = a.left_matrix(&b);
        let cols: Result<Vec<Vector>> = maps.iter().map(|f| coords(&f.checked_mul(&lb)?)).collect();
        right.push(Matrix::from_columns(c.field(), k, &cols?)?);
    }
    let module = Bimodule::new(a.clone(), c.ext.b().clone(), k, left, right)?;
    Ok(EndoRing { maps, module })
}

/// `Phi(f)(x (x) y) = f(x) y` identifies `End A_B` with `Hom(A (x)_B A_A, A_A)`
/// as `A`-`A`-bimodules; checked on bases in both directions.
pub fn endo_identification_holds(c: &CanonicalRings, e: &EndoRing) -> Result<bool> {
    let a = c.a();
    let n = a.dim();
    let hom = hom_bimodule(&c.square_module.right_part(), &Bimodule::right_regular(a))?;
    if hom.dim() != e.maps.len() {
        return Ok(false);
    }
    let phi = |f: &Matrix| c.square.descend(n, |i, j| a.mul(&f.column(i), &a.basis_vector(j)));
    let one = a.unit().to_vec();
    let unphi = |g: &Matrix| {
        let cols: Vec<Vector> = (0..n).map(|i| g.mul_vec(&c.tensor(&a.basis_vector(i), &one))).collect();
        Matrix::from_columns(c.field(), n, &cols).expect("columns")
    };
    for f in &e.maps {
        let g = phi(f);
        if !hom.contains(&g) || unphi(&g) != *f {
            return Ok(false);
        }
        for x in 0..n {
            for y in 0..n {
                let xfy = a.left_basis(x).checked_mul(f)?.checked_mul(a.left_basis(y))?;
                // (x . F . y)(u) = x F(y . u)
                let rhs = a.left_basis(x).checked_mul(&g)?.checked_mul(&c.square_module.left_actions()[y])?;
                if phi(&xfy) != rhs {
                    return Ok(false);
                }
            }
        }
    }
    for g in hom.basis() {
        let f = unphi(&g);
        if phi(&f) != g {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct EndoD2Test {
    /// `A_B` is finitely generated projective.
    pub applicable: bool,
    pub holds: Option<bool>,
    pub identification_verified: bool,
    pub witness: Option<SummandWitness>,
}

pub fn endo_ring_d2_test(c: &CanonicalRings) -> Result<EndoD2Test> {
    let applicable = dual_basis_witness(&c.a_a_b(), Side::Right)?.is_some();
    if !applicable {
        return Ok(EndoD2Test {
            applicable,
            holds: None,
            identification_verified: false,
            witness: None,
        });
    }
    let e = endo_ring(c)?;
    let identification_verified = endo_identification_holds(c, &e)?;
    let witness = summand_witness(&e.module, &c.a_a_b())?;
    if let Some(w) = &witness {
        if !w.verify(&e.module, &c.a_a_b()) {
            return Err(Error::Inconsistency("endomorphism-ring summand witness fails".into()));
        }
    }
    Ok(EndoD2Test {
        applicable,
        holds: Some(witness.is_some()),
        identification_verified,
        witness,
    })
}

/// Projectivity and generator data of a one-sided module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleFacts {
    pub projective: bool,
    pub generator: bool,
}

fn module_facts(m: &Bimodule, side: Side) -> Result<ModuleFacts> {
    Ok(ModuleFacts {
        projective: dual_basis_witness(m, side)?.is_some(),
        generator: generator_witness(m, side)?.is_some(),
    })
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub separable: Option<SeparabilityElement>,
    pub split: Option<ConditionalExpectation>,
    pub h_separable: Option<HSepSystem>,
    pub left_d2: Option<D2Quasibase>,
    pub right_d2: Option<D2Quasibase>,
    pub endo_d2: EndoD2Test,
    pub left_d2_summand: bool,
    pub right_d2_summand: bool,
    pub hsep_summand: bool,
    /// `R_T`.
    pub r_t: ModuleFacts,
    /// `R_T` is generated by `1`, i.e. `eps_T` is onto.
    pub r_t_cyclic_on_one: bool,
    /// `S R`.
    pub s_r: ModuleFacts,
    /// `T_R` and `R S`, the modules behind the functor characterizations.
    pub t_r_projective: bool,
    pub r_s_projective: bool,
    pub consistency_notes: Vec<String>,
}

impl ClassificationReport {
    pub fn is_separable(&self) -> bool {
        self.separable.is_some()
    }

    pub fn is_split(&self) -> bool {
        self.split.is_some()
    }

    pub fn is_h_separable(&self) -> bool {
        self.h_separable.is_some()
    }

    pub fn is_left_d2(&self) -> bool {
        self.left_d2.is_some()
    }

    pub fn is_right_d2(&self) -> bool {
        self.right_d2.is_some()
    }
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Inconsistency(what.to_string()))
    }
}

/// Runs every decision procedure, re-verifies each certificate and checks
/// the implications between the verdicts.
pub fn classify(c: &CanonicalRings) -> Result<ClassificationReport> {
    let separable = find_separability_element(c)?;
    let split = find_conditional_expectation(c)?;
    let h_separable = find_hsep_system(c)?;
    let left_d2 = find_d2_quasibases(c, Side::Left, PivotOrder::Natural)?;
    let right_d2 = find_d2_quasibases(c, Side::Right, PivotOrder::Natural)?;

    if let Some(e) = &separable {
        require(e.verify(c), "separability element fails its identities")?;
    }
    if let Some(e) = &split {
        require(e.verify(c), "conditional expectation fails its identities")?;
    }
    if let Some(h) = &h_separable {
        require(h.verify(c), "H-separability system fails 1 (x) 1 = sum e_i r_i")?;
        require(h.left_quasibase(c).verify(c), "H-separability system does not induce a left D2 quasibase")?;
    }
    if let Some(q) = &left_d2 {
        require(q.verify(c), "left D2 quasibase fails its identity")?;
    }
    if let Some(q) = &right_d2 {
        require(q.verify(c), "right D2 quasibase fails its identity")?;
    }

    let left_w = d2_summand_witness(c, Side::Left)?;
    let right_w = d2_summand_witness(c, Side::Right)?;
    let hsep_w = hsep_summand_witness(c)?;
    if let Some(w) = &left_w {
        require(w.verify(&c.square_module.restrict_left(&c.ext)?, &c.b_a_a()), "left summand witness fails")?;
    }
    if let Some(w) = &right_w {
        require(w.verify(&c.square_module.restrict_right(&c.ext)?, &c.a_a_b()), "right summand witness fails")?;
    }
    if let Some(w) = &hsep_w {
        require(w.verify(&c.square_module, &c.a_a), "A-A summand witness fails")?;
    }
    let endo_d2 = endo_ring_d2_test(c)?;

    let r_t = module_facts(&c.t.r_t, Side::Right)?;
    let s_r = module_facts(&c.s.s_r, Side::Left)?;
    let t_r_projective = dual_basis_witness(&c.t.t_r(), Side::Right)?.is_some();
    let r_s_projective = dual_basis_witness(&c.s.r_s(), Side::Left)?.is_some();
    let r_t_cyclic_on_one = c.eps_t.rank() == c.r.dim();

    let report = ClassificationReport {
        left_d2_summand: left_w.is_some(),
        right_d2_summand: right_w.is_some(),
        hsep_summand: hsep_w.is_some(),
        separable,
        split,
        h_separable,
        left_d2,
        right_d2,
        endo_d2,
        r_t,
        r_t_cyclic_on_one,
        s_r,
        t_r_projective,
        r_s_projective,
        consistency_notes: Vec::new(),
    };
    check_lattice(report)
}

fn check_lattice(mut r: ClassificationReport) -> Result<ClassificationReport> {
    let hsep = r.is_h_separable();
    if hsep {
        require(r.is_separable(), "H-separable but no separability element")?;
        require(r.is_left_d2() && r.is_right_d2(), "H-separable but not D2 on both sides")?;
        require(r.hsep_summand, "H-separable but the tensor square is not an A-A summand of copies of A")?;
        require(r.r_t.projective && r.r_t.generator, "H-separable but R_T is not a progenerator")?;
    }
    require(r.is_left_d2() == r.left_d2_summand, "left D2 quasibase and summand test disagree")?;
    require(r.is_right_d2() == r.right_d2_summand, "right D2 quasibase and summand test disagree")?;
    if let Some(holds) = r.endo_d2.holds {
        require(holds == r.is_left_d2(), "endomorphism-ring test disagrees with left D2")?;
        require(r.endo_d2.identification_verified, "End A_B is not identified with Hom(A (x)_B A, A)")?;
    }
    if r.is_separable() {
        require(r.r_t.projective, "separable but R_T is not projective")?;
    }
    if r.is_split() {
        require(r.s_r.projective, "split but S R is not projective")?;
    }
    if r.is_left_d2() {
        require(r.t_r_projective, "left D2 but T_R is not projective")?;
        require(r.r_s_projective, "left D2 but R S is not projective")?;
    }
    if r.hsep_summand && !hsep {
        r.consistency_notes
            .push("A (x)_B A is an A-A summand of copies of A but no H-separability system was found".into());
    }
    if r.r_t.generator != hsep {
        r.consistency_notes.push(format!(
            "R_T generator = {} while H-separable = {}",
            r.r_t.generator, hsep
        ));
    }
    if r.is_left_d2() != r.is_right_d2() {
        r.consistency_notes.push("one-sided D2 extension".into());
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Extension, FDAlgebra};
    use crate::canonical::build_canonical;
    use crate::group::GroupData;
    use crate::scalar::Field;
    use std::sync::Arc;

    #[test]
    fn c2_over_q_separability_element() {
        let f = Field::Rational;
        let a = Arc::new(FDAlgebra::group_algebra(&GroupData::cyclic(2), f));
        let c = build_canonical(&Extension::over_ground(a.clone())).unwrap();
        let e = find_separability_element(&c).unwrap().unwrap();
        assert!(e.verify(&c));
        // solution set of {a e = e a, mu(e) = 1} is the single point (1(x)1 + g(x)g)/2
        let half = f.parse("1/2").unwrap();
        let one = a.basis_vector(0);
        let g = a.basis_vector(1);
        let mut expected = c.tensor(&one, &one);
        axpy(&mut expected, &f.one(), &c.tensor(&g, &g));
        let expected: Vector = expected.iter().map(|x| x * &half).collect();
        assert_eq!(e.e, expected);
    }

    #[test]
    fn f2_c2_not_separable_but_split() {
        let f = Field::prime(2).unwrap();
        let a = Arc::new(FDAlgebra::group_algebra(&GroupData::cyclic(2), f));
        let c = build_canonical(&Extension::over_ground(a)).unwrap();
        assert!(find_separability_element(&c).unwrap().is_none());
        assert!(find_conditional_expectation(&c).unwrap().unwrap().verify(&c));
    }

    #[test]
    fn trivial_extension_all_true() {
        let a = Arc::new(FDAlgebra::group_algebra(&GroupData::symmetric(3), Field::Rational));
        let c = build_canonical(&Extension::identity(a)).unwrap();
        let r = classify(&c).unwrap();
        assert!(r.is_separable() && r.is_split() && r.is_h_separable() && r.is_left_d2() && r.is_right_d2());
        assert_eq!(r.endo_d2.holds, Some(true));
    }

    #[test]
    fn quasibases_survive_random_pairs() {
        let ext = Extension::from_subgroup(&GroupData::symmetric(3), Field::Rational, &[0, 3, 4]).unwrap();
        let c = build_canonical(&ext).unwrap();
        let mut rng = crate::sample::rng(7);
        for side in [Side::Left, Side::Right] {
            for order in [PivotOrder::Natural, PivotOrder::Reversed] {
                let q = find_d2_quasibases(&c, side, order).unwrap().unwrap();
                assert!(q.verify(&c));
                assert!(q.verify_random(&c, &mut rng, 4));
            }
        }
    }
}
