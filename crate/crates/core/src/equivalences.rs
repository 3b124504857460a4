//! Explicit module isomorphisms built from the canonical rings and the
//! certificates: each is constructed on concrete quotient spaces, checked for
//! well-definedness, bijectivity by exact rank, both composites with the
//! expected inverse, linearity, and naturality on seeded random maps.

use std::sync::Arc;

use crate::algebra::FDAlgebra;
use crate::bimodule::{hom_bimodule, tensor_over, Bimodule, HomSpace, Side, TensorProduct};
use crate::canonical::CanonicalRings;
use crate::certify::{ConditionalExpectation, D2Quasibase, SeparabilityElement};
use crate::error::{Error, Result};
use crate::linalg::{axpy, zero_vector, Matrix, Vector};
use crate::sample::{random_map, rng, SampleRng};
use crate::scalar::{Field, Scalar};
use crate::subspace::Subspace;

/// Number of random maps used for each naturality square.
pub const NATURALITY_SAMPLES: usize = 3;

/// A module together with a display label.
#[derive(Clone, Debug)]
pub struct ModuleInstance {
    pub label: String,
    pub module: Bimodule,
}

impl ModuleInstance {
    pub fn new(label: impl Into<String>, module: Bimodule) -> ModuleInstance {
        ModuleInstance {
            label: label.into(),
            module,
        }
    }
}

/// The evidence gathered for one candidate isomorphism.
#[derive(Clone, Debug)]
pub struct IsoReport {
    pub label: String,
    pub domain: String,
    pub codomain: String,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub forward: Matrix,
    /// The explicit inverse supplied by a certificate, when one applies.
    pub backward: Option<Matrix>,
    pub well_defined: bool,
    pub bijective: bool,
    pub inverse_verified: bool,
    pub linear: bool,
    pub naturality_samples: usize,
    pub natural: bool,
}

impl IsoReport {
    /// Bijective with a verified explicit inverse and all structure checks passing.
    pub fn is_verified(&self) -> bool {
        self.well_defined && self.bijective && self.inverse_verified && self.linear && self.natural
    }

    fn new(label: &str, domain: &str, codomain: &str, forward: Matrix) -> IsoReport {
        let bijective = forward.is_square() && forward.rank() == forward.rows();
        IsoReport {
            label: label.into(),
            domain: domain.into(),
            codomain: codomain.into(),
            domain_dim: forward.cols(),
            codomain_dim: forward.rows(),
            forward,
            backward: None,
            well_defined: true,
            bijective,
            inverse_verified: false,
            linear: true,
            naturality_samples: 0,
            natural: true,
        }
    }

    fn set_backward(&mut self, backward: Matrix) {
        self.inverse_verified = composites_are_identity(&self.forward, &backward);
        self.backward = Some(backward);
    }
}

fn composites_are_identity(f: &Matrix, g: &Matrix) -> bool {
    f.rows() == g.cols()
        && f.cols() == g.rows()
        && f.checked_mul(g).map(|m| m.is_identity()).unwrap_or(false)
        && g.checked_mul(f).map(|m| m.is_identity()).unwrap_or(false)
}

fn mat(field: Field, height: usize, cols: Vec<Vector>) -> Matrix {
    Matrix::from_columns(field, height, &cols).expect("column heights")
}

fn intertwines(f: &Matrix, src: &[Matrix], dst: &[Matrix]) -> bool {
    src.iter()
        .zip(dst)
        .all(|(s, d)| f.checked_mul(s).ok() == d.checked_mul(f).ok())
}

/// A left ideal `A v` for a seeded random `v`, as a left `A`-module.
pub fn random_left_module(a: &Arc<FDAlgebra>, seed: u64) -> Result<Bimodule> {
    let v = seed_vector(a, seed);
    let space = Subspace::span(a.field(), a.dim(), (0..a.dim()).map(|i| a.mul(&a.basis_vector(i), &v)));
    Bimodule::left_regular(a).submodule(&space)
}

/// A right ideal `v A`, as a right `A`-module.
pub fn random_right_module(a: &Arc<FDAlgebra>, seed: u64) -> Result<Bimodule> {
    let v = seed_vector(a, seed);
    let space = Subspace::span(a.field(), a.dim(), (0..a.dim()).map(|i| a.mul(&v, &a.basis_vector(i))));
    Bimodule::right_regular(a).submodule(&space)
}

fn seed_vector(a: &FDAlgebra, seed: u64) -> Vector {
    use rand::Rng;
    let mut r = rng(seed);
    let v: Vector = (0..a.dim()).map(|_| a.field().from_i64(r.random_range(-1..=1))).collect();
    if v.iter().all(Scalar::is_zero) {
        a.unit().to_vec()
    } else {
        v
    }
}

/// Random endomorphisms of a module, for naturality squares.
fn sample_endos(m: &Bimodule, rng: &mut SampleRng) -> Result<Vec<Matrix>> {
    let hom = hom_bimodule(m, m)?;
    Ok((0..NATURALITY_SAMPLES).map(|_| random_map(&hom, rng)).collect())
}

fn sum_terms<F>(field: Field, dim: usize, terms: impl Iterator<Item = (Scalar, usize, usize)>, mut f: F) -> Vector
where
    F: FnMut(usize, usize) -> Vector,
{
    let mut out = zero_vector(field, dim);
    for (c, i, j) in terms {
        axpy(&mut out, &c, &f(i, j));
    }
    out
}

fn owned_terms(tp: &TensorProduct, v: &[Scalar]) -> Vec<(Scalar, usize, usize)> {
    tp.terms(v).map(|(c, i, j)| (c.clone(), i, j)).collect()
}

/// `A (x)_B M` for an `A`-`C`-bimodule `M`, with its left `T`-action
/// `t . (a (x) m) = a t1 (x) t2 m`.
#[derive(Clone, Debug)]
pub struct InducedModule {
    pub module: Bimodule,
    pub tensor: TensorProduct,
    pub t_action: Vec<Matrix>,
}

pub fn induced_module(c: &CanonicalRings, m: &Bimodule) -> Result<InducedModule> {
    let a = c.a();
    let (module, tensor) = tensor_over(&c.a_a_b(), &m.restrict_left(&c.ext)?)?;
    let t_action = c
        .t
        .space
        .basis()
        .iter()
        .map(|t| {
            let terms = owned_terms(&c.square, t);
            tensor.descend(tensor.dim(), |i, l| {
                sum_terms(c.field(), tensor.dim(), terms.iter().cloned(), |p, q| {
                    tensor.class(&a.mult_table()[i][p], &m.left_actions()[q].column(l))
                })
            })
        })
        .collect();
    Ok(InducedModule {
        module,
        tensor,
        t_action,
    })
}

/// `R (x)_T (A (x)_B M)` and `gamma(r (x) a (x) m) = a r m`.
#[derive(Clone, Debug)]
pub struct GammaData {
    pub induced: InducedModule,
    pub tensor: TensorProduct,
    pub gamma: Matrix,
}

pub fn gamma_data(c: &CanonicalRings, m: &Bimodule) -> Result<GammaData> {
    let a = c.a();
    let induced = induced_module(c, m)?;
    let pairs: Vec<(&Matrix, &Matrix)> = c.t.r_t.right_actions().iter().zip(&induced.t_action).collect();
    let tensor = TensorProduct::new(c.field(), c.r.dim(), induced.tensor.dim(), &pairs);
    let r_basis = c.r.space.basis();
    let gamma = tensor.descend(m.dim(), |ri, q| {
        let (i, l) = induced.tensor.rep(q);
        m.left_act(&a.mul(&a.basis_vector(i), &r_basis[ri])).column(l)
    });
    Ok(GammaData { induced, tensor, gamma })
}

fn gamma_well_defined(c: &CanonicalRings, m: &Bimodule, g: &GammaData) -> bool {
    let a = c.a();
    let r_basis = c.r.space.basis();
    let x = &g.induced.tensor;
    // balanced over B for every r, then over T
    let over_b = r_basis.iter().all(|r| {
        x.is_balanced(m.dim(), |i, l| m.left_act(&a.mul(&a.basis_vector(i), r)).column(l))
    });
    over_b && g.tensor.is_balanced(m.dim(), |ri, q| g.gamma_on(ri, q, c, m))
}

impl GammaData {
    fn gamma_on(&self, ri: usize, q: usize, c: &CanonicalRings, m: &Bimodule) -> Vector {
        // the value on r_ri (x) (basis vector q of A (x)_B M)
        let a = c.a();
        let (i, l) = self.induced.tensor.rep(q);
        m.left_act(&a.mul(&a.basis_vector(i), &c.r.space.basis()[ri])).column(l)
    }

    /// `id_R (x) id_A (x) f` on `R (x)_T (A (x)_B M)` for an endomorphism `f` of `M`.
    fn lift_endo(&self, c: &CanonicalRings, f: &Matrix) -> Matrix {
        let x = &self.induced.tensor;
        let xf = x.kron_map(&Matrix::identity(c.field(), c.a().dim()), f, x);
        self.tensor.kron_map(&Matrix::identity(c.field(), c.r.dim()), &xf, &self.tensor)
    }

    fn one_r(&self, c: &CanonicalRings) -> Vector {
        c.r.coords(c.a().unit()).expect("1 lies in R")
    }
}

fn check_gamma_structure(c: &CanonicalRings, m: &Bimodule, g: &GammaData, rep: &mut IsoReport, seed: u64) -> Result<()> {
    let field = c.field();
    rep.well_defined = gamma_well_defined(c, m, g);
    let id_r = Matrix::identity(field, c.r.dim());
    let left: Vec<Matrix> = g.induced.module.left_actions().iter().map(|l| g.tensor.kron_map(&id_r, l, &g.tensor)).collect();
    let right: Vec<Matrix> = g.induced.module.right_actions().iter().map(|r| g.tensor.kron_map(&id_r, r, &g.tensor)).collect();
    rep.linear = intertwines(&g.gamma, &left, m.left_actions()) && intertwines(&g.gamma, &right, m.right_actions());
    let mut r = rng(seed);
    let endos = sample_endos(&m.left_part(), &mut r)?;
    rep.naturality_samples = endos.len();
    rep.natural = endos.iter().all(|f| {
        let lhs = g.gamma.checked_mul(&g.lift_endo(c, f)).expect("shape");
        let rhs = f.checked_mul(&g.gamma).expect("shape");
        lhs == rhs
    });
    Ok(())
}

/// `gamma_M`, with the inverse `m -> 1 (x) e1 (x) e2 m` from a separability element.
pub fn gamma_separable(c: &CanonicalRings, m: &ModuleInstance, e: &SeparabilityElement, seed: u64) -> Result<IsoReport> {
    let a = c.a();
    let mm = &m.module;
    let g = gamma_data(c, mm)?;
    let mut rep = IsoReport::new("gamma (separable)", &format!("R (x)_T (A (x)_B {})", m.label), &m.label, g.gamma.clone());
    check_gamma_structure(c, mm, &g, &mut rep, seed)?;
    let one_r = g.one_r(c);
    let e_terms = owned_terms(&c.square, &e.e);
    let x = &g.induced.tensor;
    let cols = (0..mm.dim())
        .map(|l| {
            let xv = sum_terms(c.field(), x.dim(), e_terms.iter().cloned(), |p, q| {
                x.class(&a.basis_vector(p), &mm.left_actions()[q].column(l))
            });
            g.tensor.class(&one_r, &xv)
        })
        .collect();
    rep.set_backward(mat(c.field(), g.tensor.dim(), cols));
    Ok(rep)
}

/// `gamma_M` with the inverse `m -> 1 (x) pi_M(1_T (x) m)` from left D2 quasibases.
pub fn gamma_d2(c: &CanonicalRings, m: &ModuleInstance, q: &D2Quasibase, seed: u64) -> Result<IsoReport> {
    let mm = &m.module;
    let g = gamma_data(c, mm)?;
    let mut rep = IsoReport::new("gamma (left D2)", &format!("R (x)_T (A (x)_B {})", m.label), &m.label, g.gamma.clone());
    check_gamma_structure(c, mm, &g, &mut rep, seed)?;
    let pi = pi_data(c, mm, &g.induced)?;
    let one_r = g.one_r(c);
    let one_t = c.t.algebra.unit().to_vec();
    let cols = (0..mm.dim())
        .map(|l| {
            let tm = pi.tensor.class(&one_t, &crate::linalg::unit_vector(c.field(), mm.dim(), l));
            g.tensor.class(&one_r, &pi.pi.mul_vec(&tm))
        })
        .collect();
    rep.set_backward(mat(c.field(), g.tensor.dim(), cols));
    let pi_inv = pi_inverse(c, mm, &g.induced, &pi, q)?;
    rep.inverse_verified &= composites_are_identity(&pi.pi, &pi_inv);
    Ok(rep)
}

/// `gamma_M` without a certificate: bijectivity and structure only.
pub fn gamma_plain(c: &CanonicalRings, m: &ModuleInstance, seed: u64) -> Result<IsoReport> {
    let g = gamma_data(c, &m.module)?;
    let mut rep = IsoReport::new("gamma", &format!("R (x)_T (A (x)_B {})", m.label), &m.label, g.gamma.clone());
    check_gamma_structure(c, &m.module, &g, &mut rep, seed)?;
    Ok(rep)
}

/// `mu_M = gamma_M psi_M` on `A (x)_B M`, where `psi_M(a (x) m) = 1 (x) a (x) m`.
pub fn triangle_check(c: &CanonicalRings, m: &Bimodule) -> Result<bool> {
    let g = gamma_data(c, m)?;
    let x = &g.induced.tensor;
    let one_r = g.one_r(c);
    let a = c.a();
    let psi = mat(
        c.field(),
        g.tensor.dim(),
        (0..x.dim())
            .map(|q| g.tensor.class(&one_r, &crate::linalg::unit_vector(c.field(), x.dim(), q)))
            .collect(),
    );
    let mu = x.descend(m.dim(), |i, l| m.left_act(&a.basis_vector(i)).column(l));
    Ok(g.gamma.checked_mul(&psi)? == mu)
}

/// `T (x)_R M` and `pi_M(t (x) m) = t1 (x) t2 m`.
#[derive(Clone, Debug)]
pub struct PiData {
    pub tensor: TensorProduct,
    pub pi: Matrix,
}

pub fn pi_data(c: &CanonicalRings, m: &Bimodule, induced: &InducedModule) -> Result<PiData> {
    let t_r = c.t.t_r();
    let r_on_m: Vec<Matrix> = c.r.space.basis().iter().map(|r| m.left_act(r)).collect();
    let pairs: Vec<(&Matrix, &Matrix)> = t_r.right_actions().iter().zip(&r_on_m).collect();
    let tensor = TensorProduct::new(c.field(), c.t.dim(), m.dim(), &pairs);
    let x = &induced.tensor;
    let t_basis = c.t.space.basis();
    let pi = tensor.descend(x.dim(), |ti, l| {
        sum_terms(c.field(), x.dim(), owned_terms(&c.square, &t_basis[ti]).into_iter(), |p, q| {
            x.class(&c.a().basis_vector(p), &m.left_actions()[q].column(l))
        })
    });
    Ok(PiData { tensor, pi })
}

fn pi_inverse(c: &CanonicalRings, m: &Bimodule, induced: &InducedModule, pi: &PiData, q: &D2Quasibase) -> Result<Matrix> {
    let a = c.a();
    let mut pairs = Vec::with_capacity(q.pairs.len());
    for (t, beta) in &q.pairs {
        let tc = c.t.coords(t).ok_or_else(|| Error::Inconsistency("quasibase element outside T".into()))?;
        pairs.push((tc, beta));
    }
    Ok(induced.tensor.descend(pi.tensor.dim(), |i, l| {
        let mut out = zero_vector(c.field(), pi.tensor.dim());
        for (tc, beta) in &pairs {
            let y = m.left_act(&beta.mul_vec(&a.basis_vector(i))).column(l);
            axpy(&mut out, &c.field().one(), &pi.tensor.class(tc, &y));
        }
        out
    }))
}

/// `pi_M: T (x)_R M -> A (x)_B M` with inverse `a (x) m -> sum t_i (x) beta_i(a) m`.
pub fn pi_iso(c: &CanonicalRings, m: &ModuleInstance, q: Option<&D2Quasibase>, seed: u64) -> Result<IsoReport> {
    let mm = &m.module;
    let induced = induced_module(c, mm)?;
    let pi = pi_data(c, mm, &induced)?;
    let mut rep = IsoReport::new(
        "pi",
        &format!("T (x)_R {}", m.label),
        &format!("A (x)_B {}", m.label),
        pi.pi.clone(),
    );
    let t_basis = c.t.space.basis();
    let x = &induced.tensor;
    rep.well_defined = pi.tensor.is_balanced(x.dim(), |ti, l| {
        sum_terms(c.field(), x.dim(), owned_terms(&c.square, &t_basis[ti]).into_iter(), |p, qq| {
            x.class(&c.a().basis_vector(p), &mm.left_actions()[qq].column(l))
        })
    });
    // left B-linearity: b . (t (x) m) = t (x) b m
    let b_src: Vec<Matrix> = c
        .ext
        .image_basis()
        .iter()
        .map(|b| pi.tensor.kron_map(&Matrix::identity(c.field(), c.t.dim()), &mm.left_act(b), &pi.tensor))
        .collect();
    let b_dst: Vec<Matrix> = c.ext.image_basis().iter().map(|b| induced.module.left_act(b)).collect();
    rep.linear = intertwines(&pi.pi, &b_src, &b_dst);
    let mut r = rng(seed);
    let endos = sample_endos(&mm.left_part(), &mut r)?;
    rep.naturality_samples = endos.len();
    rep.natural = endos.iter().all(|f| {
        let src = pi.tensor.kron_map(&Matrix::identity(c.field(), c.t.dim()), f, &pi.tensor);
        let dst = x.kron_map(&Matrix::identity(c.field(), c.a().dim()), f, x);
        pi.pi.checked_mul(&src).ok() == dst.checked_mul(&pi.pi).ok()
    });
    if let Some(q) = q {
        rep.set_backward(pi_inverse(c, mm, &induced, &pi, q)?);
    }
    Ok(rep)
}

/// `pi_A: T (x)_R A -> A (x)_B A`.
pub fn pi_a_iso(c: &CanonicalRings, q: Option<&D2Quasibase>, seed: u64) -> Result<IsoReport> {
    pi_iso(c, &ModuleInstance::new("A", Bimodule::left_regular(c.a())), q, seed)
}

/// `Hom(A_B, N_B)` for a right `B`-module `N` (possibly with a left action),
/// with right actions of `S` (precomposition), `A` (coinduction) and `B`.
#[derive(Clone, Debug)]
pub struct Coinduced {
    pub hom: HomSpace,
    pub maps: Vec<Matrix>,
    pub s_action: Vec<Matrix>,
    pub a_action: Vec<Matrix>,
    pub b_action: Vec<Matrix>,
    /// Post-composition with the left action of `N`.
    pub left_action: Vec<Matrix>,
}

pub fn coinduced(c: &CanonicalRings, n: &Bimodule) -> Result<Coinduced> {
    let a = c.a();
    let field = c.field();
    let hom = hom_bimodule(&c.a_a_b().right_part(), &n.right_part())?;
    let maps = hom.basis();
    let k = maps.len();
    let coords = |f: &Matrix| -> Result<Vector> {
        hom.coords(f).ok_or_else(|| Error::Inconsistency("coinduced module is not closed".into()))
    };
    let act = |op: &dyn Fn(&Matrix) -> Result<Matrix>| -> Result<Matrix> {
        let cols: Result<Vec<Vector>> = maps.iter().map(|f| coords(&op(f)?)).collect();
        Ok(mat(field, k, cols?))
    };
    let mut s_action = Vec::with_capacity(c.s.dim());
    for alpha in &c.s.maps {
        s_action.push(act(&|f: &Matrix| f.checked_mul(alpha))?);
    }
    let mut a_action = Vec::with_capacity(a.dim());
    for x in 0..a.dim() {
        a_action.push(act(&|f: &Matrix| f.checked_mul(a.left_basis(x)))?);
    }
    let mut b_action = Vec::with_capacity(c.ext.b().dim());
    for b in c.ext.image_basis() {
        let lb = a.left_matrix(&b);
        b_action.push(act(&|f: &Matrix| f.checked_mul(&lb))?);
    }
    let mut left_action = Vec::with_capacity(n.left_algebra().dim());
    for l in n.left_actions() {
        left_action.push(act(&|f: &Matrix| l.checked_mul(f))?);
    }
    Ok(Coinduced {
        hom,
        maps,
        s_action,
        a_action,
        b_action,
        left_action,
    })
}

/// `Hom(A_B, N_B) (x)_S R` with the evaluation `f (x) r -> f(r)`.
#[derive(Clone, Debug)]
pub struct Collapse {
    pub coinduced: Coinduced,
    pub tensor: TensorProduct,
    pub eval: Matrix,
}

pub fn collapse(c: &CanonicalRings, n: &Bimodule) -> Result<Collapse> {
    let co = coinduced(c, n)?;
    let pairs: Vec<(&Matrix, &Matrix)> = co.s_action.iter().zip(c.s.s_r.left_actions()).collect();
    let tensor = TensorProduct::new(c.field(), co.maps.len(), c.r.dim(), &pairs);
    let r_basis = c.r.space.basis();
    let eval = tensor.descend(n.dim(), |h, j| co.maps[h].mul_vec(&r_basis[j]));
    Ok(Collapse {
        coinduced: co,
        tensor,
        eval,
    })
}

fn check_collapse_structure(c: &CanonicalRings, n: &Bimodule, col: &Collapse, rep: &mut IsoReport, seed: u64) -> Result<()> {
    let field = c.field();
    let r_basis = c.r.space.basis();
    rep.well_defined = col.tensor.is_balanced(n.dim(), |h, j| col.coinduced.maps[h].mul_vec(&r_basis[j]));
    let id_r = Matrix::identity(field, c.r.dim());
    let b_src: Vec<Matrix> = col.coinduced.b_action.iter().map(|b| col.tensor.kron_map(b, &id_r, &col.tensor)).collect();
    let b_dst: Vec<Matrix> = c.ext.image_basis().iter().map(|b| restrict_b_action(c, n, b)).collect();
    let l_src: Vec<Matrix> = col.coinduced.left_action.iter().map(|l| col.tensor.kron_map(l, &id_r, &col.tensor)).collect();
    rep.linear = intertwines(&col.eval, &b_src, &b_dst) && intertwines(&col.eval, &l_src, n.left_actions());
    let mut r = rng(seed);
    let endos = sample_endos(&n.right_part(), &mut r)?;
    rep.naturality_samples = endos.len();
    let mut natural = true;
    for g in &endos {
        let post: Vec<Vector> = col
            .coinduced
            .maps
            .iter()
            .map(|f| col.coinduced.hom.coords(&g.checked_mul(f)?).ok_or_else(|| Error::Inconsistency("g f outside Hom".into())))
            .collect::<Result<_>>()?;
        let post = mat(field, col.coinduced.maps.len(), post);
        let src = col.tensor.kron_map(&post, &id_r, &col.tensor);
        natural &= col.eval.checked_mul(&src)? == g.checked_mul(&col.eval)?;
    }
    rep.natural = natural;
    Ok(())
}

fn restrict_b_action(c: &CanonicalRings, n: &Bimodule, b: &[Scalar]) -> Matrix {
    // n is a right module over B itself, so pull b back into B-coordinates
    let coords = c.ext.pull_back(b).expect("b lies in B");
    n.right_act(&coords)
}

/// `Hom(A_B, N_B) (x)_S R -> N` with inverse `n -> n E(-) (x) 1` from a
/// conditional expectation. `n` is a right `B`-module, optionally with a
/// compatible left action (for the bimodule form).
pub fn split_counit(
    c: &CanonicalRings,
    n: &ModuleInstance,
    e: Option<&ConditionalExpectation>,
    seed: u64,
) -> Result<IsoReport> {
    let nn = &n.module;
    if !crate::bimodule::same_algebra(nn.right_algebra(), c.ext.b()) {
        return Err(Error::AlgebraMismatch("split counit needs a right B-module".into()));
    }
    let col = collapse(c, nn)?;
    let mut rep = IsoReport::new(
        "split counit",
        &format!("Hom(A_B, {}) (x)_S R", n.label),
        &n.label,
        col.eval.clone(),
    );
    check_collapse_structure(c, nn, &col, &mut rep, seed)?;
    if let Some(e) = e {
        let one_r = c.r.coords(c.a().unit()).expect("1 lies in R");
        let field = c.field();
        let mut cols = Vec::with_capacity(nn.dim());
        for l in 0..nn.dim() {
            // x -> n_l E(x)
            let f_cols: Vec<Vector> = (0..c.a().dim()).map(|x| nn.right_act(&e.map.column(x)).column(l)).collect();
            let f = mat(field, nn.dim(), f_cols);
            let fc = col
                .coinduced
                .hom
                .coords(&f)
                .ok_or_else(|| Error::Inconsistency("n E(-) is not right B-linear".into()))?;
            cols.push(col.tensor.class(&fc, &one_r));
        }
        rep.set_backward(mat(field, col.tensor.dim(), cols));
    }
    Ok(rep)
}

/// `rho_M: Hom(A_B, M_B) (x)_S R -> M` for a right `A`-module `M`, with the
/// inverse `m -> (a -> m a) (x) 1` obtained by collapsing `chi_M`.
pub fn rho_m(c: &CanonicalRings, m: &ModuleInstance, left_d2: bool, seed: u64) -> Result<IsoReport> {
    let mb = m.module.restrict_right(&c.ext)?;
    let col = collapse(c, &mb)?;
    let mut rep = IsoReport::new(
        "rho",
        &format!("Hom(A_B, {}_B) (x)_S R", m.label),
        &m.label,
        col.eval.clone(),
    );
    check_collapse_structure(c, &mb, &col, &mut rep, seed)?;
    // right A-linearity is not part of the statement; check naturality in M_A instead
    let mut r = rng(seed ^ 0x5eed);
    let endos = sample_endos(&m.module, &mut r)?;
    let field = c.field();
    let id_r = Matrix::identity(field, c.r.dim());
    for g in &endos {
        let post: Vec<Vector> = col
            .coinduced
            .maps
            .iter()
            .map(|f| col.coinduced.hom.coords(&g.checked_mul(f)?).ok_or_else(|| Error::Inconsistency("g f outside Hom".into())))
            .collect::<Result<_>>()?;
        let src = col.tensor.kron_map(&mat(field, col.coinduced.maps.len(), post), &id_r, &col.tensor);
        rep.natural &= col.eval.checked_mul(&src)? == g.checked_mul(&col.eval)?;
    }
    rep.naturality_samples += endos.len();
    if left_d2 {
        let a = c.a();
        let one_r = c.r.coords(a.unit()).expect("1 lies in R");
        let mut cols = Vec::with_capacity(m.module.dim());
        for l in 0..m.module.dim() {
            let f_cols: Vec<Vector> = (0..a.dim()).map(|x| m.module.right_actions()[x].column(l)).collect();
            let f = mat(field, m.module.dim(), f_cols);
            let fc = col.coinduced.hom.coords(&f).ok_or_else(|| Error::Inconsistency("a -> m a outside Hom".into()))?;
            cols.push(col.tensor.class(&fc, &one_r));
        }
        rep.set_backward(mat(field, col.tensor.dim(), cols));
    }
    Ok(rep)
}

/// `chi_M: M (x)_R S -> Hom(A_B, M_B)`, `chi(m (x) alpha)(a) = m alpha(a)`,
/// with inverse `f -> sum f(t_i1) t_i2 (x) beta_i`.
pub fn chi_m(c: &CanonicalRings, m: &ModuleInstance, q: Option<&D2Quasibase>, seed: u64) -> Result<IsoReport> {
    let field = c.field();
    let a = c.a();
    let mm = &m.module;
    let r_basis = c.r.space.basis();
    let m_on_r: Vec<Matrix> = r_basis.iter().map(|r| mm.right_act(r)).collect();
    let pairs: Vec<(&Matrix, &Matrix)> = m_on_r.iter().zip(c.s.r_s_r.left_actions()).collect();
    let tensor = TensorProduct::new(field, mm.dim(), c.s.dim(), &pairs);
    let co = coinduced(c, &mm.restrict_right(&c.ext)?)?;
    let chi_value = |l: usize, s: usize| -> Matrix {
        let alpha = &c.s.maps[s];
        let cols: Vec<Vector> = (0..a.dim()).map(|x| mm.right_act(&alpha.column(x)).column(l)).collect();
        mat(field, mm.dim(), cols)
    };
    let mut ok = true;
    let forward = tensor.descend(co.maps.len(), |l, s| match co.hom.coords(&chi_value(l, s)) {
        Some(v) => v,
        None => {
            ok = false;
            zero_vector(field, co.maps.len())
        }
    });
    let mut rep = IsoReport::new(
        "chi",
        &format!("{} (x)_R S", m.label),
        &format!("Hom(A_B, {}_B)", m.label),
        forward,
    );
    rep.well_defined = ok
        && tensor.is_balanced(mm.dim() * a.dim(), |l, s| chi_value(l, s).flatten());
    // right S- and B-linearity
    let id_m = Matrix::identity(field, mm.dim());
    let s_src: Vec<Matrix> = (0..c.s.dim()).map(|s| tensor.kron_map(&id_m, c.s.algebra.right_basis(s), &tensor)).collect();
    let b_src: Vec<Matrix> = c.ext.image_basis().iter().map(|b| {
        let id_s = Matrix::identity(field, c.s.dim());
        tensor.kron_map(&mm.right_act(b), &id_s, &tensor)
    }).collect();
    rep.linear = intertwines(&rep.forward, &s_src, &co.s_action) && intertwines(&rep.forward, &b_src, &co.b_action);
    let mut r = rng(seed);
    let endos = sample_endos(mm, &mut r)?;
    rep.naturality_samples = endos.len();
    for g in &endos {
        let src = tensor.kron_map(g, &Matrix::identity(field, c.s.dim()), &tensor);
        let post: Vec<Vector> = co
            .maps
            .iter()
            .map(|f| co.hom.coords(&g.checked_mul(f)?).ok_or_else(|| Error::Inconsistency("g f outside Hom".into())))
            .collect::<Result<_>>()?;
        let dst = mat(field, co.maps.len(), post);
        rep.natural &= rep.forward.checked_mul(&src)? == dst.checked_mul(&rep.forward)?;
    }
    if let Some(q) = q {
        let mut cols = Vec::with_capacity(co.maps.len());
        for f in &co.maps {
            let mut out = zero_vector(field, tensor.dim());
            for (t, beta) in &q.pairs {
                let bc = c.s.coords(beta).ok_or_else(|| Error::Inconsistency("quasibase map outside S".into()))?;
                let mut mv = zero_vector(field, mm.dim());
                for (k, p, qq) in owned_terms(&c.square, t) {
                    // f(a_p) a_qq
                    let v = mm.right_actions()[qq].mul_vec(&f.column(p));
                    axpy(&mut mv, &k, &v);
                }
                axpy(&mut out, &field.one(), &tensor.class(&mv, &bc));
            }
            cols.push(out);
        }
        rep.set_backward(mat(field, tensor.dim(), cols));
    }
    Ok(rep)
}

/// `chi_M: A (x)_B M -> Hom(R S, R M)`, `chi(a (x) m)(alpha) = alpha(a) m`,
/// with inverse `F -> sum t_i1 (x) t_i2 F(beta_i)`.
pub fn coinduction_iso(c: &CanonicalRings, m: &ModuleInstance, q: Option<&D2Quasibase>, seed: u64) -> Result<IsoReport> {
    let field = c.field();
    let a = c.a();
    let mm = &m.module;
    let induced = induced_module(c, mm)?;
    let x = &induced.tensor;
    let r_m = mm.restrict_left(&c.r.inclusion)?.left_part();
    let hom = hom_bimodule(&c.s.r_s(), &r_m)?;
    let maps = hom.basis();
    let chi_value = |i: usize, l: usize| -> Matrix {
        let cols: Vec<Vector> = c.s.maps.iter().map(|alpha| mm.left_act(&alpha.column(i)).column(l)).collect();
        mat(field, mm.dim(), cols)
    };
    let mut ok = true;
    let forward = x.descend(maps.len(), |i, l| match hom.coords(&chi_value(i, l)) {
        Some(v) => v,
        None => {
            ok = false;
            zero_vector(field, maps.len())
        }
    });
    let mut rep = IsoReport::new(
        "coinduction chi",
        &format!("A (x)_B {}", m.label),
        &format!("Hom(R S, R {})", m.label),
        forward,
    );
    rep.well_defined = ok && x.is_balanced(mm.dim() * c.s.dim(), |i, l| chi_value(i, l).flatten());
    // left B-linearity: b . F = (alpha -> b F(alpha))
    let b_dst: Vec<Matrix> = c
        .ext
        .image_basis()
        .iter()
        .map(|b| {
            let lb = mm.left_act(b);
            let cols: Vec<Vector> = maps.iter().map(|f| hom.coords(&lb.checked_mul(f).expect("shape")).unwrap_or_else(|| zero_vector(field, maps.len()))).collect();
            mat(field, maps.len(), cols)
        })
        .collect();
    let b_src: Vec<Matrix> = c.ext.image_basis().iter().map(|b| induced.module.left_act(b)).collect();
    rep.linear = intertwines(&rep.forward, &b_src, &b_dst);
    let mut r = rng(seed);
    let endos = sample_endos(&mm.left_part(), &mut r)?;
    rep.naturality_samples = endos.len();
    for g in &endos {
        let src = x.kron_map(&Matrix::identity(field, a.dim()), g, x);
        let post: Vec<Vector> = maps
            .iter()
            .map(|f| hom.coords(&g.checked_mul(f)?).ok_or_else(|| Error::Inconsistency("g F outside Hom".into())))
            .collect::<Result<_>>()?;
        let dst = mat(field, maps.len(), post);
        rep.natural &= rep.forward.checked_mul(&src)? == dst.checked_mul(&rep.forward)?;
    }
    if let Some(q) = q {
        let mut cols = Vec::with_capacity(maps.len());
        for f in &maps {
            let mut out = zero_vector(field, x.dim());
            for (t, beta) in &q.pairs {
                let bc = c.s.coords(beta).ok_or_else(|| Error::Inconsistency("quasibase map outside S".into()))?;
                let fb = f.mul_vec(&bc);
                for (k, p, qq) in owned_terms(&c.square, t) {
                    let v = x.class(&a.basis_vector(p), &mm.left_actions()[qq].mul_vec(&fb));
                    axpy(&mut out, &k, &v);
                }
            }
            cols.push(out);
        }
        rep.set_backward(mat(field, x.dim(), cols));
    }
    Ok(rep)
}

/// Outcome of the two functor characterizations on one module.
#[derive(Clone, Debug)]
pub struct FunctorIsoChecks {
    pub induction: IsoReport,
    pub coinduction: IsoReport,
    pub t_r_fgp: bool,
    pub r_s_fgp: bool,
    /// Which ingredient fails when the isomorphisms are not certified.
    pub notes: Vec<String>,
}

pub fn functor_iso_checks(
    c: &CanonicalRings,
    m: &ModuleInstance,
    q: Option<&D2Quasibase>,
    seed: u64,
) -> Result<FunctorIsoChecks> {
    let induction = pi_iso(c, m, q, seed)?;
    let coinduction = coinduction_iso(c, m, q, seed)?;
    let t_r_fgp = crate::bimodule::dual_basis_witness(&c.t.t_r(), Side::Right)?.is_some();
    let r_s_fgp = crate::bimodule::dual_basis_witness(&c.s.r_s(), Side::Left)?.is_some();
    let mut notes = Vec::new();
    if q.is_none() {
        notes.push("no left D2 quasibase".to_string());
    }
    for (name, rep) in [("induction", &induction), ("coinduction", &coinduction)] {
        if rep.domain_dim != rep.codomain_dim {
            notes.push(format!("{name}: dimensions {} and {} differ", rep.domain_dim, rep.codomain_dim));
        } else if !rep.bijective {
            notes.push(format!("{name}: map is not bijective"));
        }
    }
    if !t_r_fgp {
        notes.push("T_R is not finitely generated projective".into());
    }
    if !r_s_fgp {
        notes.push("R S is not finitely generated projective".into());
    }
    Ok(FunctorIsoChecks {
        induction,
        coinduction,
        t_r_fgp,
        r_s_fgp,
        notes,
    })
}

/// `Hom(M_C, N_C) (x)_{End M_C} M` and the evaluation `f (x) m -> f(m)`.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub hom: HomSpace,
    pub maps: Vec<Matrix>,
    pub endo: Vec<Matrix>,
    pub tensor: TensorProduct,
}

fn evaluation_data(m: &Bimodule, n: &Bimodule) -> Result<Evaluation> {
    let field = m.field();
    let endo = hom_bimodule(m, m)?.basis();
    let hom = hom_bimodule(m, n)?;
    let maps = hom.basis();
    let mut right = Vec::with_capacity(endo.len());
    for e in &endo {
        let cols: Result<Vec<Vector>> = maps
            .iter()
            .map(|f| hom.coords(&f.checked_mul(e)?).ok_or_else(|| Error::Inconsistency("f e outside Hom".into())))
            .collect();
        right.push(mat(field, maps.len(), cols?));
    }
    let pairs: Vec<(&Matrix, &Matrix)> = right.iter().zip(&endo).collect();
    let tensor = TensorProduct::new(field, maps.len(), m.dim(), &pairs);
    Ok(Evaluation { hom, maps, endo, tensor })
}

fn check_side(m: &Bimodule, n: &Bimodule) -> Result<()> {
    if m.left_algebra().dim() != 1 || n.left_algebra().dim() != 1 {
        return Err(Error::Input("evaluation expects right modules".into()));
    }
    if !crate::bimodule::same_algebra(m.right_algebra(), n.right_algebra()) {
        return Err(Error::AlgebraMismatch("modules over different algebras".into()));
    }
    Ok(())
}

/// `gamma_{M,N}: Hom(M_C, N_C) (x)_{End M_C} M -> N` for right `C`-modules.
pub fn evaluation_map(m: &ModuleInstance, n: &ModuleInstance, seed: u64) -> Result<IsoReport> {
    check_side(&m.module, &n.module)?;
    let ev = evaluation_data(&m.module, &n.module)?;
    let nn = &n.module;
    let forward = ev.tensor.descend(nn.dim(), |h, x| ev.maps[h].column(x));
    let mut rep = IsoReport::new(
        "evaluation",
        &format!("Hom({}, {}) (x)_End {}", m.label, n.label, m.label),
        &n.label,
        forward,
    );
    finish_evaluation(&ev, m, n, &mut rep, seed)?;
    Ok(rep)
}

fn finish_evaluation(ev: &Evaluation, m: &ModuleInstance, n: &ModuleInstance, rep: &mut IsoReport, seed: u64) -> Result<()> {
    let field = m.module.field();
    rep.well_defined = ev.tensor.is_balanced(n.module.dim(), |h, x| ev.maps[h].column(x));
    let id_h = Matrix::identity(field, ev.maps.len());
    let src: Vec<Matrix> = m.module.right_actions().iter().map(|r| ev.tensor.kron_map(&id_h, r, &ev.tensor)).collect();
    rep.linear = intertwines(&rep.forward, &src, n.module.right_actions());
    let mut r = rng(seed);
    let endos = sample_endos(&n.module, &mut r)?;
    rep.naturality_samples = endos.len();
    for g in &endos {
        let post: Vec<Vector> = ev
            .maps
            .iter()
            .map(|f| ev.hom.coords(&g.checked_mul(f)?).ok_or_else(|| Error::Inconsistency("g f outside Hom".into())))
            .collect::<Result<_>>()?;
        let src = ev.tensor.kron_map(&mat(field, ev.maps.len(), post), &Matrix::identity(field, m.module.dim()), &ev.tensor);
        rep.natural &= rep.forward.checked_mul(&src)? == g.checked_mul(&rep.forward)?;
    }
    Ok(())
}

/// `gamma_{M,N}` certified by splitting maps `pi_i: M -> N`, `iota_i: N -> M`
/// with `sum pi_i iota_i = id_N`, via the inverse `n -> sum pi_i (x) iota_i(n)`.
pub fn dress_inverse(
    m: &ModuleInstance,
    n: &ModuleInstance,
    pis: &[Matrix],
    iotas: &[Matrix],
    seed: u64,
) -> Result<IsoReport> {
    check_side(&m.module, &n.module)?;
    let field = m.module.field();
    let (mm, nn) = (&m.module, &n.module);
    if pis.len() != iotas.len() {
        return Err(Error::Input("splitting maps must come in pairs".into()));
    }
    let mut sum = Matrix::zeros(field, nn.dim(), nn.dim());
    for (p, i) in pis.iter().zip(iotas) {
        if !crate::bimodule::is_bimodule_map(mm, nn, p) || !crate::bimodule::is_bimodule_map(nn, mm, i) {
            return Err(Error::Input("splitting maps are not module maps".into()));
        }
        sum = sum.add(&p.checked_mul(i)?);
    }
    if !sum.is_identity() {
        return Err(Error::Input("splitting maps do not compose to the identity".into()));
    }
    let ev = evaluation_data(mm, nn)?;
    let forward = ev.tensor.descend(nn.dim(), |h, x| ev.maps[h].column(x));
    let mut rep = IsoReport::new(
        "evaluation (Dress)",
        &format!("Hom({}, {}) (x)_End {}", m.label, n.label, m.label),
        &n.label,
        forward,
    );
    finish_evaluation(&ev, m, n, &mut rep, seed)?;
    let pcs: Vec<Vector> = pis
        .iter()
        .map(|p| ev.hom.coords(p).ok_or_else(|| Error::Inconsistency("pi outside Hom".into())))
        .collect::<Result<_>>()?;
    let cols = (0..nn.dim())
        .map(|k| {
            let mut out = zero_vector(field, ev.tensor.dim());
            for (pc, i) in pcs.iter().zip(iotas) {
                axpy(&mut out, &field.one(), &ev.tensor.class(pc, &i.column(k)));
            }
            out
        })
        .collect();
    rep.set_backward(mat(field, ev.tensor.dim(), cols));
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::build_canonical;
    use crate::certify::{find_conditional_expectation, find_d2_quasibases, find_separability_element, PivotOrder};
    use crate::corpus;

    fn rings(name: &str) -> CanonicalRings {
        build_canonical(&corpus::extension(name).unwrap().unwrap()).unwrap()
    }

    #[test]
    fn gamma_for_c2_over_q() {
        let c = rings("q-c2-over-q");
        let e = find_separability_element(&c).unwrap().unwrap();
        let m = ModuleInstance::new("A", Bimodule::left_regular(c.a()));
        let rep = gamma_separable(&c, &m, &e, 1).unwrap();
        assert!(rep.is_verified(), "{rep:?}");
        assert!(triangle_check(&c, &m.module).unwrap());
    }

    #[test]
    fn gamma_on_bimodule_a_is_bimodule_iso() {
        let c = rings("q-s3-over-q-a3");
        let e = find_separability_element(&c).unwrap().unwrap();
        let rep = gamma_separable(&c, &ModuleInstance::new("A", c.a_a.clone()), &e, 2).unwrap();
        assert!(rep.is_verified());
    }

    #[test]
    fn d2_isos_for_s3_over_a3() {
        let c = rings("q-s3-over-q-a3");
        let q = find_d2_quasibases(&c, Side::Left, PivotOrder::Natural).unwrap().unwrap();
        let left = ModuleInstance::new("A", Bimodule::left_regular(c.a()));
        let right = ModuleInstance::new("A", Bimodule::right_regular(c.a()));
        assert!(gamma_d2(&c, &left, &q, 3).unwrap().is_verified());
        let pa = pi_a_iso(&c, Some(&q), 3).unwrap();
        assert!(pa.is_verified());
        assert_eq!(pa.domain_dim, 12);
        let chi = chi_m(&c, &right, Some(&q), 3).unwrap();
        assert!(chi.is_verified(), "{chi:?}");
        assert_eq!(chi.codomain_dim, 12);
        let rho = rho_m(&c, &right, true, 3).unwrap();
        assert!(rho.is_verified());
        assert_eq!(rho.codomain_dim, 6);
        let f = functor_iso_checks(&c, &left, Some(&q), 3).unwrap();
        assert!(f.induction.is_verified() && f.coinduction.is_verified() && f.t_r_fgp && f.r_s_fgp);
    }

    #[test]
    fn split_counit_for_s3_over_a3() {
        let c = rings("q-s3-over-q-a3");
        let e = find_conditional_expectation(&c).unwrap().unwrap();
        let b = ModuleInstance::new("B", Bimodule::regular(c.ext.b()));
        let rep = split_counit(&c, &b, Some(&e), 4).unwrap();
        assert!(rep.is_verified());
        assert_eq!(rep.codomain_dim, 3);
    }

    #[test]
    fn evaluation_examples() {
        let q = Field::Rational;
        let m2 = Arc::new(FDAlgebra::matrix_algebra(q, 2));
        // the row module: the right ideal e_00 A
        let row = Bimodule::right_regular(&m2)
            .submodule(&Subspace::span(q, 4, (0..2).map(|j| crate::linalg::unit_vector(q, 4, j))))
            .unwrap();
        let rowm = ModuleInstance::new("row", row.clone());
        let reg = ModuleInstance::new("A", Bimodule::right_regular(&m2));
        assert!(evaluation_map(&rowm, &reg, 5).unwrap().bijective);
        assert!(evaluation_map(&rowm, &rowm, 5).unwrap().bijective);

        let c2 = Arc::new(FDAlgebra::group_algebra(&crate::group::GroupData::cyclic(2), q));
        let one = Matrix::identity(q, 1);
        let triv = Bimodule::right_module(&c2, 1, vec![one.clone(), one.clone()]).unwrap();
        let sign = Bimodule::right_module(&c2, 1, vec![one.clone(), one.scale(&q.from_i64(-1))]).unwrap();
        let rep = evaluation_map(&ModuleInstance::new("triv", triv), &ModuleInstance::new("sign", sign), 5).unwrap();
        assert!(rep.forward.is_zero() && !rep.bijective);
    }

    #[test]
    fn dress_inverse_on_square() {
        let q = Field::Rational;
        let c2 = Arc::new(FDAlgebra::group_algebra(&crate::group::GroupData::cyclic(2), q));
        let m = Bimodule::right_regular(&c2);
        let m2 = m.direct_sum(&m).unwrap();
        let id = Matrix::identity(q, 2);
        let z = Matrix::zeros(q, 2, 2);
        let p1 = id.hstack(&z);
        let p2 = z.hstack(&id);
        let rep = dress_inverse(
            &ModuleInstance::new("M", m2.clone()),
            &ModuleInstance::new("M", m.clone()),
            &[p1.clone(), p2.clone()],
            &[p1.transpose().scale(&q.parse("1/2").unwrap()), p2.transpose().scale(&q.parse("1/2").unwrap())],
            6,
        )
        .unwrap();
        assert!(rep.is_verified());
    }
}
