//! Right H-module coalgebras, the paracocyclic object C_n = C^{(x) n+1}, traces,
//! and the morphism alpha_n: H^{(x) n} -> C^{(x) n+1}.
//!
//! On C_n: tau_n = (id_{C^n} (x) theta_C) tau_{C, C^n}, the i-th coface is Delta_C
//! on tensorand i for i < n and tau_n delta_0 for i = n, and sigma_j is eps_C on
//! tensorand j + 1.

use std::fmt;

use rayon::prelude::*;

use crate::braided::CategoryCtx;
use crate::cm::{cm_codegens, cm_cofaces, tau, ModularPair};
use crate::error::{Error, Result};
use crate::hopf::{c, HopfAlgebra};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::Field;
use crate::simplicial::ParaCocyclicData;
use crate::tensor::{tensor_all, Mor, Obj};

#[derive(Clone)]
pub struct ModuleCoalgebra<F> {
    pub hopf: HopfAlgebra<F>,
    pub carrier: Obj,
    /// C -> C (x) C
    pub comult: Mor<F>,
    /// C -> 1
    pub counit: Mor<F>,
    /// C (x) H -> C
    pub action: Mor<F>,
}

impl<F: Field> fmt::Debug for ModuleCoalgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleCoalgebra({:?} over {:?})", self.carrier, self.hopf.carrier)
    }
}

impl<F: Field> ModuleCoalgebra<F> {
    pub fn new(hopf: HopfAlgebra<F>, carrier: Obj, comult: Mor<F>, counit: Mor<F>, action: Mor<F>) -> Result<Self> {
        let mc = Self::unchecked(hopf, carrier, comult, counit, action)?;
        let rep = mc.check();
        if !rep.passed() {
            return Err(Error::Validation(Box::new(rep)));
        }
        Ok(mc)
    }

    pub fn unchecked(hopf: HopfAlgebra<F>, carrier: Obj, comult: Mor<F>, counit: Mor<F>, action: Mor<F>) -> Result<Self> {
        let f = hopf.field();
        let one = Obj::unit(f);
        let c2 = carrier.power(2);
        let ch = tensor_all(&[&Mor::id(&carrier), &hopf.id(1)], f)?.dom;
        for (name, m, d, t) in [("comult", &comult, &carrier, &c2), ("counit", &counit, &carrier, &one), ("action", &action, &ch, &carrier)] {
            if !m.dom.same_shape(d) || !m.cod.same_shape(t) {
                return Err(Error::Shape(format!("{name} is {:?} -> {:?}, expected {d:?} -> {t:?}", m.dom, m.cod)));
            }
        }
        Ok(ModuleCoalgebra {
            comult: comult.retyped(&carrier, &c2),
            counit: counit.retyped(&carrier, &one),
            action: action.retyped(&ch, &carrier),
            hopf,
            carrier,
        })
    }

    fn ctx(&self) -> &CategoryCtx<F> {
        &self.hopf.ctx
    }

    /// C^{(x) k}
    pub fn pw(&self, k: usize) -> Obj {
        if k == 0 {
            Obj::unit(self.hopf.field())
        } else {
            self.carrier.power(k)
        }
    }

    pub fn id(&self, k: usize) -> Mor<F> {
        Mor::id(&self.pw(k))
    }

    fn t(&self, fs: &[&Mor<F>]) -> Mor<F> {
        self.hopf.t(fs)
    }

    /// tau_{C^a, H^b}
    fn br_ch(&self, a: usize, b: usize) -> Mor<F> {
        self.ctx().braiding(&self.pw(a), &self.hopf.pw(b)).expect("same field")
    }

    pub fn check(&self) -> Report {
        let h = &self.hopf;
        let (d, e, r) = (&self.comult, &self.counit, &self.action);
        let ic = self.id(1);
        let ih = h.id(1);
        let mut rep = Report::new("module_coalgebra");
        let mut eq = |id: &str, a: Mor<F>, b: Mor<F>| rep.push(Check::new(id, a.same(&b), a.diff(&b)));
        eq("coassociativity", c(&[d, &self.t(&[d, &ic])]), c(&[d, &self.t(&[&ic, d])]));
        eq("counit_left", c(&[d, &self.t(&[e, &ic])]), ic.clone());
        eq("counit_right", c(&[d, &self.t(&[&ic, e])]), ic.clone());
        eq("module_associativity", c(&[&self.t(&[r, &ih]), r]), c(&[&self.t(&[&ic, &h.mult]), r]));
        eq("module_unit", c(&[&self.t(&[&ic, &h.unit]), r]), ic.clone());
        let lin = c(&[&self.t(&[d, &h.comult]), &self.t(&[&ic, &self.br_ch(1, 1), &ih]), &self.t(&[r, r])]);
        eq("comult_linear", c(&[r, d]), lin);
        eq("counit_linear", c(&[r, e]), self.t(&[e, &h.counit]));
        for (name, m) in [("comult", d), ("counit", e), ("action", r)] {
            let ok = m.is_homogeneous();
            rep.push(Check::new(format!("homogeneous_{name}"), ok, (!ok).then(|| "mixes grades".to_string())));
        }
        rep
    }

    /// Delta_C^{(n)}: C -> C^{(x) n}
    pub fn iterated_comult(&self, n: usize) -> Mor<F> {
        match n {
            0 => self.counit.clone(),
            1 => self.id(1),
            _ => c(&[&self.comult, &self.t(&[&self.id(1), &self.iterated_comult(n - 1)])]),
        }
    }

    /// Componentwise action C^n (x) H^n -> C^n.
    pub fn componentwise_action(&self, n: usize) -> Mor<F> {
        if n == 0 {
            return self.hopf.one();
        }
        let prev = self.componentwise_action(n - 1);
        let mv = self.t(&[&self.id(1), &self.br_ch(n - 1, 1), &self.hopf.id(n - 1)]);
        c(&[&mv, &self.t(&[&self.action, &prev])])
    }

    /// Diagonal right action C^n (x) H -> C^n.
    pub fn diagonal_action(&self, n: usize) -> Mor<F> {
        if n == 0 {
            return self.hopf.counit.clone();
        }
        if n == 1 {
            return self.action.clone();
        }
        let prev = self.diagonal_action(n - 1);
        let h = &self.hopf;
        c(&[
            &self.t(&[&self.id(n), &h.comult]),
            &self.t(&[&self.id(n - 1), &self.br_ch(1, 1), &h.id(1)]),
            &self.t(&[&prev, &self.action]),
        ])
    }
}

/// C = H acting on itself by multiplication.
pub fn regular_module_coalgebra<F: Field>(h: &HopfAlgebra<F>) -> Result<ModuleCoalgebra<F>> {
    ModuleCoalgebra::new(h.clone(), h.carrier.clone(), h.comult.clone(), h.counit.clone(), h.mult.clone())
}

fn c_tau<F: Field>(mc: &ModuleCoalgebra<F>, n: usize) -> Result<Mor<F>> {
    let theta = mc.ctx().twist(&mc.carrier)?;
    if n == 0 {
        return Ok(theta);
    }
    let rot = mc.ctx().braiding(&mc.carrier, &mc.pw(n))?;
    Ok(c(&[&rot, &mc.t(&[&mc.id(n), &theta])]).retyped(&mc.pw(n + 1), &mc.pw(n + 1)))
}

/// Cofaces C_{n-1} -> C_n.
pub fn c_cofaces<F: Field>(mc: &ModuleCoalgebra<F>, n: usize) -> Result<Vec<Mor<F>>> {
    let (d, t) = (mc.pw(n), mc.pw(n + 1));
    let mut v: Vec<Mor<F>> = (0..n).map(|i| mc.t(&[&mc.id(i), &mc.comult, &mc.id(n - 1 - i)]).retyped(&d, &t)).collect();
    let last = c(&[&v[0], &c_tau(mc, n)?]);
    v.push(last);
    Ok(v)
}

/// Codegeneracies C_{n+1} -> C_n.
pub fn c_codegens<F: Field>(mc: &ModuleCoalgebra<F>, n: usize) -> Vec<Mor<F>> {
    let (d, t) = (mc.pw(n + 2), mc.pw(n + 1));
    (0..=n).map(|j| mc.t(&[&mc.id(j + 1), &mc.counit, &mc.id(n - j)]).retyped(&d, &t)).collect()
}

pub fn build_c_object<F: Field>(mc: &ModuleCoalgebra<F>, n_max: usize) -> Result<ParaCocyclicData<F>> {
    let levels: Vec<Obj> = (0..=n_max).map(|n| mc.pw(n + 1)).collect();
    let taus = (0..=n_max).into_par_iter().map(|n| c_tau(mc, n)).collect::<Result<Vec<_>>>()?;
    let cof = (0..=n_max).map(|n| if n == 0 { Ok(vec![]) } else { c_cofaces(mc, n) }).collect::<Result<Vec<_>>>()?;
    let cod = (0..=n_max).map(|n| if n < n_max { c_codegens(mc, n) } else { vec![] }).collect();
    ParaCocyclicData::new(mc.ctx().clone(), levels, cof, cod, taus)
}

fn check_alpha_shape<F: Field>(mc: &ModuleCoalgebra<F>, alpha: &Mor<F>) -> Result<Mor<F>> {
    let one = Obj::unit(mc.hopf.field());
    if !alpha.dom.same_shape(&one) || !alpha.cod.same_shape(&mc.carrier) {
        return Err(Error::Shape(format!("alpha must be 1 -> C, got {:?} -> {:?}", alpha.dom, alpha.cod)));
    }
    Ok(alpha.clone().retyped(&one, &mc.carrier))
}

/// The two trace conditions: r (alpha (x) id) = alpha delta, and
/// (id (x) r)(Delta_C alpha (x) sigma) = (id (x) theta_C) tau_{C,C} Delta_C alpha.
pub fn trace_sides<F: Field>(mc: &ModuleCoalgebra<F>, pair: &ModularPair<F>, alpha: &Mor<F>) -> Result<[(Mor<F>, Mor<F>); 2]> {
    let alpha = check_alpha_shape(mc, alpha)?;
    let h = &mc.hopf;
    let l1 = c(&[&mc.t(&[&alpha, &h.id(1)]), &mc.action]);
    let r1 = c(&[&pair.delta, &alpha]);
    let da = c(&[&alpha, &mc.comult]);
    let l2 = c(&[&mc.t(&[&da, &pair.sigma]), &mc.t(&[&mc.id(1), &mc.action])]);
    let theta = mc.ctx().twist(&mc.carrier)?;
    let r2 = c(&[&da, &mc.ctx().braiding(&mc.carrier, &mc.carrier)?, &mc.t(&[&mc.id(1), &theta])]);
    Ok([(l1, r1.retyped(&h.carrier, &mc.carrier)), (l2, r2)])
}

pub fn check_trace<F: Field>(mc: &ModuleCoalgebra<F>, pair: &ModularPair<F>, alpha: &Mor<F>) -> Result<Report> {
    let [(l1, r1), (l2, r2)] = trace_sides(mc, pair, alpha)?;
    let mut rep = Report::new("trace");
    rep.push(Check::new("delta_invariance", l1.same(&r1), l1.diff(&r1)));
    rep.push(Check::new("sigma_trace", l2.same(&r2), l2.diff(&r2)));
    Ok(rep)
}

/// Basis of all traces. Traces are morphisms 1 -> C, so only the degree-zero
/// part of C is searched.
pub fn solve_traces<F: Field>(mc: &ModuleCoalgebra<F>, pair: &ModularPair<F>) -> Result<Vec<Mor<F>>> {
    let zero = mc.carrier.degree_zero();
    let one = Obj::unit(mc.hopf.field());
    let mut triplets = Vec::new();
    for (col, k) in zero.iter().enumerate() {
        let mut v = vec![F::zero(); mc.carrier.dim()];
        v[*k] = F::one();
        let a = Mor::vector(&mc.carrier, v)?;
        let [(l1, r1), (l2, r2)] = trace_sides(mc, pair, &a)?;
        let d1 = l1.sub(&r1)?.mat;
        let d2 = l2.sub(&r2)?.mat;
        let w1 = d1.cols();
        for (i, j, x) in d1.entries() {
            triplets.push((i * w1 + j, col, x.clone()));
        }
        let off = d1.rows() * w1;
        for (i, _, x) in d2.entries() {
            triplets.push((off + i, col, x.clone()));
        }
    }
    let rows = mc.carrier.dim() * mc.hopf.dim() + mc.carrier.dim().pow(2);
    let a = Matrix::from_triplets(rows, zero.len(), triplets);
    a.kernel()
        .into_iter()
        .map(|coef| {
            let mut v = vec![F::zero(); mc.carrier.dim()];
            for (x, k) in coef.into_iter().zip(&zero) {
                v[*k] = x;
            }
            Ok(Mor::vector(&mc.carrier, v)?.retyped(&one, &mc.carrier))
        })
        .collect()
}

/// A tensor factor of a sparse block application.
enum Block<F> {
    Id(usize),
    /// Columns of a morphism, with its domain and codomain dimensions.
    Map(usize, usize, Vec<Vec<(usize, F)>>),
}

impl<F: Field> Block<F> {
    fn map(m: &Mor<F>) -> Self {
        let t = m.mat.transpose();
        Block::Map(m.dom.dim(), m.cod.dim(), (0..t.rows()).map(|j| t.row(j).to_vec()).collect())
    }

    fn dims(&self) -> (usize, usize) {
        match self {
            Block::Id(d) => (*d, *d),
            Block::Map(d, c, _) => (*d, *c),
        }
    }
}

/// Applies b_1 (x) ... (x) b_k to a sparse vector without forming the product.
fn apply_blocks<F: Field>(v: &[(usize, F)], blocks: &[Block<F>]) -> Vec<(usize, F)> {
    let mut acc = std::collections::BTreeMap::<usize, F>::new();
    for (idx, x) in v {
        // split idx into block coordinates, last block fastest
        let mut rest = *idx;
        let mut coords = vec![0; blocks.len()];
        for (k, b) in blocks.iter().enumerate().rev() {
            let d = b.dims().0;
            coords[k] = rest % d;
            rest /= d;
        }
        let mut partial: Vec<(usize, F)> = vec![(0, x.clone())];
        for (b, &i) in blocks.iter().zip(&coords) {
            let cd = b.dims().1;
            partial = match b {
                Block::Id(_) => partial.into_iter().map(|(p, y)| (p * cd + i, y)).collect(),
                Block::Map(_, _, cols) => partial
                    .iter()
                    .flat_map(|(p, y)| cols[i].iter().map(move |(r, z)| (p * cd + r, y.clone() * z.clone())))
                    .collect(),
            };
        }
        for (i, y) in partial {
            let e = acc.entry(i).or_insert_with(F::zero);
            *e = e.clone() + y;
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// alpha_n = (id_C (x) P_n)(Delta_C^{(n+1)} alpha (x) id_{H^n}) with P_n the
/// componentwise action; alpha_0 = alpha. Evaluated one basis vector of H^n at
/// a time.
pub fn build_alpha<F: Field>(mc: &ModuleCoalgebra<F>, alpha: &Mor<F>, n: usize) -> Result<Mor<F>> {
    let alpha = check_alpha_shape(mc, alpha)?;
    if n == 0 {
        return Ok(alpha);
    }
    let h = &mc.hopf;
    let (dc, dh) = (mc.carrier.dim(), h.dim());
    let v = c(&[&alpha, &mc.iterated_comult(n + 1)]);
    let v: Vec<(usize, F)> = v.mat.entries().map(|(i, _, x)| (i, x.clone())).collect();
    // stage k = n..1 acts on the layout [C^a, C, C^{k-1}, H, H^{k-1}], a = n + 1 - k
    let stages: Vec<[Vec<Block<F>>; 2]> = (1..=n)
        .rev()
        .map(|k| {
            let a = n + 1 - k;
            let (pre, k1) = (dc.pow(a as u32), k as u32 - 1);
            [
                vec![Block::Id(pre), Block::Id(dc), Block::map(&mc.br_ch(k - 1, 1)), Block::Id(dh.pow(k1))],
                vec![Block::Id(pre), Block::map(&mc.action), Block::Id(dc.pow(k1) * dh.pow(k1))],
            ]
        })
        .collect();
    let dhn = dh.pow(n as u32);
    let cols: Vec<Vec<(usize, F)>> = (0..dhn)
        .into_par_iter()
        .map(|j| {
            let mut w: Vec<(usize, F)> = v.iter().map(|(i, x)| (i * dhn + j, x.clone())).collect();
            for [move_h, act] in &stages {
                w = apply_blocks(&apply_blocks(&w, move_h), act);
            }
            w
        })
        .collect();
    let trip = cols.into_iter().enumerate().flat_map(|(j, c)| c.into_iter().map(move |(i, x)| (i, j, x)));
    Mor::new(h.pw(n), mc.pw(n + 1), Matrix::from_triplets(dc.pow(n as u32 + 1), dhn, trip))
}

/// alpha_n commutes with cofaces, codegeneracies and tau between CM and C_,
/// for all n <= `n_max`.
pub fn verify_cm_trace<F: Field>(
    h: &HopfAlgebra<F>,
    pair: &ModularPair<F>,
    mc: &ModuleCoalgebra<F>,
    alpha: &Mor<F>,
    n_max: usize,
) -> Result<Report> {
    let alphas = (0..=n_max + 1).into_par_iter().map(|n| build_alpha(mc, alpha, n)).collect::<Result<Vec<_>>>()?;
    let per_n: Vec<Vec<Check>> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut out = Vec::new();
            let mut eq = |id: String, a: Mor<F>, b: Mor<F>| out.push(Check::new(id, a.same(&b), a.diff(&b)));
            if n >= 1 {
                let cof = c_cofaces(mc, n)?;
                for (i, (dh, dc)) in cm_cofaces(h, pair, n).iter().zip(&cof).enumerate() {
                    eq(format!("n={n} faces i={i}"), c(&[dh, &alphas[n]]), c(&[&alphas[n - 1], dc]));
                }
            }
            for (j, (sh, sc)) in cm_codegens(h, n).iter().zip(c_codegens(mc, n)).enumerate() {
                eq(format!("n={n} degeneracies j={j}"), c(&[sh, &alphas[n]]), c(&[&alphas[n + 1], &sc]));
            }
            eq(format!("n={n} cyclic"), c(&[&tau(h, pair, n), &alphas[n]]), c(&[&alphas[n], &c_tau(mc, n)?]));
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rep = Report::new("cm_trace");
    per_n.into_iter().flatten().for_each(|c| rep.push(c));
    Ok(rep)
}

/// Delta_C^{(n)} r = rho_n (Delta_C^{(n)} (x) id_H) for 2 <= n <= n_max.
pub fn check_comult_action_exchange<F: Field>(mc: &ModuleCoalgebra<F>, n_max: usize) -> Report {
    let mut rep = Report::new("comult_action_exchange");
    for n in 2..=n_max {
        let dn = mc.iterated_comult(n);
        let lhs = c(&[&mc.action, &dn]);
        let rhs = c(&[&mc.t(&[&dn, &mc.hopf.id(1)]), &mc.diagonal_action(n)]);
        rep.push(Check::new(format!("n={n}"), lhs.same(&rhs), lhs.diff(&rhs)));
    }
    rep
}
