//! Contracted-ideal invariance, Hopf normality for group algebras, double
//! centralizers and pre-braided commutativity of the centralizer.

use std::sync::Arc;

use crate::algebra::{Extension, FDAlgebra};
use crate::bimodule::{centralizer_submodule, Bimodule, Side};
use crate::canonical::CanonicalRings;
use crate::certify::D2Quasibase;
use crate::equivalences::ModuleInstance;
use crate::error::{Error, Result};
use crate::group::GroupData;
use crate::linalg::{axpy, sub_vectors, unit_vector, zero_vector, Vector};
use crate::subspace::Subspace;

/// The verdict label used for the sampled normality suite.
pub const SAMPLED_VERDICT: &str = "normal on sampled ideals";

/// A two-sided ideal with the generators it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub label: String,
    pub generators: Vec<Vector>,
    pub closure: Subspace,
}

/// The least two-sided ideal containing `generators`.
pub fn ideal_closure(a: &FDAlgebra, generators: &[Vector]) -> Ideal {
    let mut space = Subspace::span(a.field(), a.dim(), generators.iter().cloned());
    loop {
        let products = space.basis().iter().flat_map(|v| {
            (0..a.dim()).flat_map(move |i| {
                let e = a.basis_vector(i);
                [a.mul(&e, v), a.mul(v, &e)]
            })
        });
        let grown = Subspace::span(a.field(), a.dim(), space.basis().iter().cloned().chain(products));
        if grown.dim() == space.dim() {
            return Ideal {
                label: String::new(),
                generators: generators.to_vec(),
                closure: space,
            };
        }
        space = grown;
    }
}

fn labelled(mut i: Ideal, label: impl Into<String>) -> Ideal {
    i.label = label.into();
    i
}

/// `span(A X)` and `span(X A)` for a subspace `X` of `A`.
fn two_sides(a: &FDAlgebra, x: &Subspace) -> (Subspace, Subspace) {
    let left = Subspace::span(
        a.field(),
        a.dim(),
        (0..a.dim()).flat_map(|i| x.basis().iter().map(move |v| a.mul(&a.basis_vector(i), v))),
    );
    let right = Subspace::span(
        a.field(),
        a.dim(),
        (0..a.dim()).flat_map(|i| x.basis().iter().map(move |v| a.mul(v, &a.basis_vector(i)))),
    );
    (left, right)
}

/// `A I = I A` for the contraction `I = J ∩ iota(B)`.
pub fn a_invariant_contraction(ext: &Extension, j: &Ideal) -> Result<bool> {
    let i = j.closure.intersection(&ext.image())?;
    let (l, r) = two_sides(ext.a(), &i);
    Ok(l == r)
}

/// The augmentation ideal `ker(eps)` of a group algebra, `eps(g) = 1`.
pub fn augmentation_ideal(a: &FDAlgebra, group: &GroupData) -> Result<Subspace> {
    if a.dim() != group.order() {
        return Err(Error::DimensionMismatch("algebra is not the group algebra".into()));
    }
    let n = group.order();
    let id = unit_vector(a.field(), n, group.identity());
    Ok(Subspace::span(
        a.field(),
        n,
        (0..n).filter(|&g| g != group.identity()).map(|g| sub_vectors(&unit_vector(a.field(), n, g), &id)),
    ))
}

/// `0`, `A`, the augmentation ideal when `group` is given, and the ideals
/// generated by each basis element and each basis element of `R`.
pub fn default_ideal_sample(c: &CanonicalRings, group: Option<&GroupData>) -> Result<Vec<Ideal>> {
    let a = c.a();
    let mut out = vec![
        labelled(ideal_closure(a, &[]), "0"),
        labelled(ideal_closure(a, &[a.unit().to_vec()]), "A"),
    ];
    if let Some(g) = group {
        let aug = augmentation_ideal(a, g)?;
        out.push(labelled(ideal_closure(a, aug.basis()), "augmentation"));
    }
    for i in 0..a.dim() {
        out.push(labelled(ideal_closure(a, &[a.basis_vector(i)]), format!("(e{i})")));
    }
    for (k, r) in c.r.space.basis().iter().enumerate() {
        out.push(labelled(ideal_closure(a, std::slice::from_ref(r)), format!("(r{k})")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceCheck {
    pub label: String,
    /// `A X ⊆ X A`.
    pub left_in_right: bool,
    /// `X A ⊆ A X`.
    pub right_in_left: bool,
}

impl InvarianceCheck {
    pub fn equal(&self) -> bool {
        self.left_in_right && self.right_in_left
    }
}

fn invariance(label: &str, left: &Subspace, right: &Subspace) -> InvarianceCheck {
    InvarianceCheck {
        label: label.to_string(),
        left_in_right: right.contains_subspace(left),
        right_in_left: left.contains_subspace(right),
    }
}

#[derive(Clone, Debug)]
pub struct NormalityReport {
    /// `A R = R A`.
    pub a_r: InvarianceCheck,
    /// `A (J ∩ R) = (J ∩ R) A` per sampled ideal.
    pub ideals: Vec<InvarianceCheck>,
    /// `A M^B` against `M^B A` per sampled bimodule.
    pub bimodules: Vec<InvarianceCheck>,
    pub left_d2: bool,
    pub right_d2: bool,
}

impl NormalityReport {
    /// Equality on `A R` and on every sampled ideal.
    pub fn normal_on_sample(&self) -> bool {
        self.a_r.equal() && self.ideals.iter().all(InvarianceCheck::equal)
    }

    /// What the D2 hypotheses predict for the sampled bimodules holds.
    pub fn bimodules_as_predicted(&self) -> bool {
        self.bimodules.iter().all(|b| {
            if self.left_d2 && self.right_d2 {
                b.equal()
            } else if self.left_d2 {
                b.left_in_right
            } else {
                true
            }
        })
    }

    pub fn verdict(&self) -> String {
        if self.normal_on_sample() {
            SAMPLED_VERDICT.to_string()
        } else {
            "not normal".to_string()
        }
    }
}

/// `A (x)_B A` as an `A`-`A`-bimodule, for the bimodule sample.
pub fn square_instance(c: &CanonicalRings) -> ModuleInstance {
    ModuleInstance::new("A (x)_B A", c.square_module.clone())
}

pub fn centralizer_normality_suite(
    c: &CanonicalRings,
    ideals: &[Ideal],
    bimodules: &[ModuleInstance],
    left_d2: bool,
    right_d2: bool,
) -> Result<NormalityReport> {
    let a = c.a();
    let (ar, ra) = two_sides(a, &c.r.space);
    let a_r = invariance("R", &ar, &ra);
    let mut ideal_checks = Vec::with_capacity(ideals.len());
    for j in ideals {
        let i = j.closure.intersection(&c.r.space)?;
        let (l, r) = two_sides(a, &i);
        ideal_checks.push(invariance(&j.label, &l, &r));
    }
    let mut bimodule_checks = Vec::with_capacity(bimodules.len());
    for m in bimodules {
        let mm = &m.module;
        if !crate::bimodule::same_algebra(mm.left_algebra(), a) || !crate::bimodule::same_algebra(mm.right_algebra(), a) {
            return Err(Error::AlgebraMismatch(format!("{} is not an A-A-bimodule", m.label)));
        }
        let mb = centralizer_submodule(mm, &c.ext)?;
        let (l, r) = module_sides(mm, &mb);
        bimodule_checks.push(invariance(&m.label, &l, &r));
    }
    Ok(NormalityReport {
        a_r,
        ideals: ideal_checks,
        bimodules: bimodule_checks,
        left_d2,
        right_d2,
    })
}

fn module_sides(m: &Bimodule, x: &Subspace) -> (Subspace, Subspace) {
    let left = Subspace::span(
        m.field(),
        m.dim(),
        m.left_actions().iter().flat_map(|l| x.basis().iter().map(move |v| l.mul_vec(v))),
    );
    let right = Subspace::span(
        m.field(),
        m.dim(),
        m.right_actions().iter().flat_map(|r| x.basis().iter().map(move |v| r.mul_vec(v))),
    );
    (left, right)
}

/// The three normality tests for `k[H] ⊆ k[G]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HopfNormality {
    pub subgroup_normal: bool,
    pub conjugation_hopf_normal: bool,
    pub augmentation_test: bool,
}

impl HopfNormality {
    pub fn agree(&self) -> bool {
        self.subgroup_normal == self.conjugation_hopf_normal && self.conjugation_hopf_normal == self.augmentation_test
    }
}

/// `k[H] ⊆ k[G]` with the augmentation ideals `K+ ⊆ k[H]` and `H+ ⊆ k[G]`.
#[derive(Clone, Debug)]
pub struct HopfPairData {
    pub group: GroupData,
    pub subgroup: Vec<usize>,
    pub algebra: Arc<FDAlgebra>,
    pub k: Subspace,
    pub k_plus: Subspace,
    pub h_plus: Subspace,
}

impl HopfPairData {
    pub fn new(group: &GroupData, subgroup: &[usize], field: crate::scalar::Field) -> Result<HopfPairData> {
        let (_, members) = group.subgroup_data(subgroup)?;
        let a = Arc::new(FDAlgebra::group_algebra(group, field));
        let n = group.order();
        let k = Subspace::span(field, n, members.iter().map(|&g| unit_vector(field, n, g)));
        let h_plus = augmentation_ideal(&a, group)?;
        let id = unit_vector(field, n, group.identity());
        let k_plus = Subspace::span(
            field,
            n,
            members
                .iter()
                .filter(|&&g| g != group.identity())
                .map(|&g| sub_vectors(&unit_vector(field, n, g), &id)),
        );
        let data = HopfPairData {
            group: group.clone(),
            subgroup: members,
            algebra: a,
            k,
            k_plus,
            h_plus,
        };
        if data.h_plus.intersection(&data.k)? != data.k_plus {
            return Err(Error::Inconsistency("K+ differs from H+ ∩ K".into()));
        }
        Ok(data)
    }
}

pub fn hopf_normality(group: &GroupData, subgroup: &[usize], field: crate::scalar::Field) -> Result<HopfNormality> {
    let data = HopfPairData::new(group, subgroup, field)?;
    let subgroup_normal = group.is_normal(&data.subgroup);
    let a = &data.algebra;
    let n = group.order();
    // g k tau(g) for k in K, with tau(g) = g^-1
    let conjugation_hopf_normal = (0..n).all(|g| {
        let gv = unit_vector(field, n, g);
        let gi = unit_vector(field, n, group.inverse(g));
        data.k.basis().iter().all(|k| data.k.contains(&a.mul(&a.mul(&gv, k), &gi)))
    });
    let (l, r) = two_sides(a, &data.k_plus);
    Ok(HopfNormality {
        subgroup_normal,
        conjugation_hopf_normal,
        augmentation_test: l == r,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCentralizer {
    pub c: Subspace,
    pub cc: Subspace,
    /// `iota(B)` is a proper subspace of `CC`.
    pub strict: bool,
}

pub fn double_centralizer(ext: &Extension) -> DoubleCentralizer {
    let a = ext.a();
    let c = a.centralizer_of(&ext.image_basis());
    let cc = a.centralizer_of(c.basis());
    let image = ext.image();
    let strict = cc.contains_subspace(&image) && cc.dim() > image.dim();
    DoubleCentralizer { c, cc, strict }
}

/// `u1 s u2` for `u` in the tensor square.
fn sandwich(c: &CanonicalRings, u: &[crate::scalar::Scalar], s: &[crate::scalar::Scalar]) -> Vector {
    let a = c.a();
    let mut out = zero_vector(c.field(), a.dim());
    for (k, p, q) in c.square.terms(u) {
        let v = a.mul(&a.mul(&a.basis_vector(p), s), &a.basis_vector(q));
        axpy(&mut out, k, &v);
    }
    out
}

/// `s r = sum_j gamma_j(r) (u_j1 s u_j2)` for all basis pairs of `R`.
pub fn prebraided_check(c: &CanonicalRings, q: &D2Quasibase) -> Result<bool> {
    if q.side != Side::Right {
        return Err(Error::Input("pre-braided commutativity needs a right D2 quasibase".into()));
    }
    let a = c.a();
    let basis = c.r.space.basis();
    Ok(basis.iter().all(|s| {
        basis.iter().all(|r| {
            let mut rhs = zero_vector(c.field(), a.dim());
            for (u, gamma) in &q.pairs {
                let v = a.mul(&gamma.mul_vec(r), &sandwich(c, u, s));
                axpy(&mut rhs, &c.field().one(), &v);
            }
            a.mul(s, r) == rhs
        })
    }))
}

/// Plain commutativity of `R`, the check the correction term replaces.
pub fn naive_commutes(c: &CanonicalRings) -> bool {
    let a = c.a();
    let basis = c.r.space.basis();
    basis.iter().all(|s| basis.iter().all(|r| a.mul(s, r) == a.mul(r, s)))
}
