//! Modular pairs and the paracocyclic object CM(H, delta, sigma).
//!
//! tau_n(delta, sigma) = l_n (S~ (x) id_{H^{n-1}} (x) sigma), l_n the left diagonal
//! action and S~ the twisted antipode; tau_0 = id.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::braided::Side;
use crate::error::{Error, Result};
use crate::hopf::{c, HopfAlgebra};
use crate::report::{Check, Report};
use crate::scalar::Field;
use crate::simplicial::ParaCocyclicData;
use crate::tensor::{Mor, Obj};

#[derive(Clone)]
pub struct ModularPair<F> {
    pub name: String,
    /// H -> 1
    pub delta: Mor<F>,
    /// 1 -> H
    pub sigma: Mor<F>,
}

impl<F: Field> fmt::Debug for ModularPair<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModularPair({})", self.name)
    }
}

impl<F: Field> ModularPair<F> {
    pub fn new(h: &HopfAlgebra<F>, name: impl Into<String>, delta: Mor<F>, sigma: Mor<F>) -> Result<Self> {
        let rep = check_modular_pair(h, &delta, &sigma)?;
        if let Some(why) = rep.first_failure() {
            return Err(Error::InvalidModularPair(why));
        }
        let one = Obj::unit(h.field());
        Ok(ModularPair {
            name: name.into(),
            delta: delta.retyped(&h.carrier, &one),
            sigma: sigma.retyped(&one, &h.carrier),
        })
    }

    /// (eps, u)
    pub fn trivial(h: &HopfAlgebra<F>) -> Self {
        ModularPair { name: "eu".into(), delta: h.counit.clone(), sigma: h.unit.clone() }
    }
}

/// Algebra-morphism, coalgebra-morphism and normalization conditions.
pub fn check_modular_pair<F: Field>(h: &HopfAlgebra<F>, delta: &Mor<F>, sigma: &Mor<F>) -> Result<Report> {
    let one = Obj::unit(h.field());
    if !delta.dom.same_shape(&h.carrier) || !delta.cod.same_shape(&one) {
        return Err(Error::Shape(format!("delta must be H -> 1, got {:?} -> {:?}", delta.dom, delta.cod)));
    }
    if !sigma.dom.same_shape(&one) || !sigma.cod.same_shape(&h.carrier) {
        return Err(Error::Shape(format!("sigma must be 1 -> H, got {:?} -> {:?}", sigma.dom, sigma.cod)));
    }
    let delta = delta.clone().retyped(&h.carrier, &one);
    let sigma = sigma.clone().retyped(&one, &h.carrier);
    let mut rep = Report::new("modular_pair");
    let eq = |rep: &mut Report, id: &str, a: Mor<F>, b: Mor<F>, msg: &str| {
        let d = a.diff(&b).map(|d| format!("{msg}: {d}"));
        rep.push(Check::new(id, d.is_none(), d));
    };
    eq(&mut rep, "delta_multiplicative", c(&[&h.mult, &delta]), h.t(&[&delta, &delta]), "delta not an algebra morphism");
    eq(&mut rep, "delta_unital", c(&[&h.unit, &delta]), h.one(), "delta not an algebra morphism");
    eq(&mut rep, "sigma_comultiplicative", c(&[&sigma, &h.comult]), h.t(&[&sigma, &sigma]), "sigma not a coalgebra morphism");
    eq(&mut rep, "sigma_counital", c(&[&sigma, &h.counit]), h.one(), "sigma not a coalgebra morphism");
    eq(&mut rep, "delta_sigma", c(&[&sigma, &delta]), h.one(), "delta sigma != id");
    Ok(rep)
}

/// Both sides of the twisted involution condition: S~ S~ and
/// h -> sigma theta(h) S(sigma), the left adjoint action of sigma on theta(h).
pub fn twisted_mpi_sides<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>) -> (Mor<F>, Mor<F>) {
    let st = h.twisted_antipode_unchecked(&pair.delta);
    let lhs = c(&[&st, &st]);
    let rhs = c(&[&h.t(&[&pair.sigma, &h.theta(1)]), &h.adjoint_action(Side::Left, 1)]);
    (lhs, rhs.retyped(&h.carrier, &h.carrier))
}

pub fn check_twisted_mpi<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>) -> bool {
    let (l, r) = twisted_mpi_sides(h, pair);
    l.same(&r)
}

/// tau_n(delta, sigma) on H^{(x) n}.
pub fn tau<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>, n: usize) -> Mor<F> {
    if n == 0 {
        return h.one();
    }
    let st = h.twisted_antipode_unchecked(&pair.delta);
    let inner = h.t(&[&st, &h.id(n - 1), &pair.sigma]);
    c(&[&inner, &h.diagonal_action(Side::Left, n)]).retyped(&h.pw(n), &h.pw(n))
}

/// Cofaces into level n of CM: u on the left, Delta on a slot, sigma on the right.
pub fn cm_cofaces<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>, n: usize) -> Vec<Mor<F>> {
    if n == 1 {
        return vec![h.unit.clone(), pair.sigma.clone()];
    }
    let mut out = vec![h.t(&[&h.unit, &h.id(n - 1)])];
    for i in 1..n {
        out.push(h.t(&[&h.id(i - 1), &h.comult, &h.id(n - 1 - i)]));
    }
    out.push(h.t(&[&h.id(n - 1), &pair.sigma]));
    let (d, t) = (h.pw(n - 1), h.pw(n));
    out.into_iter().map(|m| m.retyped(&d, &t)).collect()
}

/// Codegeneracies H^{n+1} -> H^n: counit on slot j.
pub fn cm_codegens<F: Field>(h: &HopfAlgebra<F>, n: usize) -> Vec<Mor<F>> {
    let (d, t) = (h.pw(n + 1), h.pw(n));
    (0..=n).map(|j| h.t(&[&h.id(j), &h.counit, &h.id(n - j)]).retyped(&d, &t)).collect()
}

pub fn build_cm<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>, n_max: usize) -> Result<ParaCocyclicData<F>> {
    if n_max < 1 {
        return Err(Error::Range("CM needs n_max >= 1".into()));
    }
    let levels = (0..=n_max).map(|n| h.pw(n)).collect();
    let cof = (0..=n_max).map(|n| if n == 0 { vec![] } else { cm_cofaces(h, pair, n) }).collect();
    let cod = (0..=n_max).map(|n| if n < n_max { cm_codegens(h, n) } else { vec![] }).collect();
    let taus = (0..=n_max).into_par_iter().map(|n| tau(h, pair, n)).collect();
    ParaCocyclicData::new(h.ctx.clone(), levels, cof, cod, taus)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PowerFormula {
    /// tau_n^k, 2 <= k <= n
    KthPower,
    /// tau_n^{n+1}, n >= 1, through level n-1 and tau_1
    NPlus1,
    /// tau_n^{n+1} conjugated from the (eps, u) power
    RemarkEU,
}

/// The (eps, u) power conjugated by the coadjoint coaction and adjoint action:
/// ad^r_n ([tau_n(eps,u)^{n+1} (delta (x) id) coad^l_n] (x) sigma).
fn remark_eu<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>, n: usize) -> Mor<F> {
    let eu = ModularPair::trivial(h);
    let t = tau(h, &eu, n).pow(n + 1);
    let inner = c(&[&h.coadjoint_coaction(Side::Left, n), &h.t(&[&pair.delta, &h.id(n)]), &t]);
    let out = c(&[&h.t(&[&inner, &pair.sigma]), &h.adjoint_action(Side::Right, n)]);
    out.retyped(&h.pw(n), &h.pw(n))
}

/// m (S~ (x) tau_1 S~) tau_{H,H}
fn kth_tail<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>) -> Mor<F> {
    let st = h.twisted_antipode_unchecked(&pair.delta);
    let t1 = tau(h, pair, 1);
    c(&[&h.br(1, 1), &h.t(&[&st, &c(&[&st, &t1])]), &h.mult])
}

fn kth_power<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>, n: usize, k: usize) -> Mor<F> {
    let eu = ModularPair::trivial(h);
    // split the k-th factor
    let a = h.t(&[&h.id(k - 1), &h.comult, &h.id(n - k)]);
    // double braid of the first k-2 factors with the pair (h^{k-1}, h^k_(1))
    let q = if k > 2 {
        h.t(&[&c(&[&h.br(k - 2, 2), &h.br(2, k - 2)]), &h.id(n - k + 1)])
    } else {
        h.id(n + 1)
    };
    let b = h.t(&[&h.id(k - 2), &h.br(2, n - k + 1)]);
    let x = kth_tail(h, pair);
    let rs = c(&[&h.t(&[&h.id(1), &pair.sigma]), &h.mult]);
    let co = if k > 2 {
        c(&[&h.coadjoint_coaction(Side::Left, k - 2), &h.t(&[&pair.delta, &h.id(k - 2)])])
    } else {
        h.one()
    };
    let rs_block = h.t(&[&h.id(n - k), &h.tpow(&rs, k - 1)]);
    let d = c(&[&h.t(&[&co, &h.id(n - k + 1)]), &tau(h, &eu, n - 1).pow(k - 1), &rs_block]);
    let out = c(&[&a, &q, &b, &h.t(&[&d, &x])]);
    out.retyped(&h.pw(n), &h.pw(n))
}

fn n_plus_1<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>, n: usize) -> Mor<F> {
    if n == 1 {
        return remark_eu(h, pair, 1);
    }
    let x = remark_eu(h, pair, n - 1);
    let t12 = tau(h, pair, 1).pow(2);
    let out = c(&[&h.br(n - 1, 1), &h.br(1, n - 1), &h.t(&[&x, &t12])]);
    out.retyped(&h.pw(n), &h.pw(n))
}

pub fn rhs_power_formula<F: Field>(
    h: &HopfAlgebra<F>,
    pair: &ModularPair<F>,
    n: usize,
    k: usize,
    which: PowerFormula,
) -> Result<Mor<F>> {
    let range = |ok: bool| if ok { Ok(()) } else { Err(Error::Range(format!("{which:?} undefined at n={n}, k={k}"))) };
    match which {
        PowerFormula::KthPower => {
            range(n >= 2 && (2..=n).contains(&k))?;
            Ok(kth_power(h, pair, n, k))
        }
        PowerFormula::NPlus1 => {
            range(n >= 1 && k == n + 1)?;
            Ok(n_plus_1(h, pair, n))
        }
        PowerFormula::RemarkEU => {
            range(k == n + 1)?;
            Ok(remark_eu(h, pair, n))
        }
    }
}

/// One record per (n, k, formula); a twist record per level iff the twisted
/// involution condition holds. The predicate value is stored as a note.
pub fn verify_powers<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>, n_max: usize) -> Report {
    let mpi = check_twisted_mpi(h, pair);
    let per_level: Vec<Vec<Check>> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let t = tau(h, pair, n);
            let mut powers = vec![h.id(n), t.clone()];
            for k in 2..=n + 1 {
                powers.push(c(&[&powers[k - 1], &t]));
            }
            let mut out = Vec::new();
            let mut cmp = |id: String, lhs: &Mor<F>, rhs: Result<Mor<F>>| match rhs {
                Ok(r) => out.push(Check::new(id, lhs.same(&r), lhs.diff(&r))),
                Err(e) => out.push(Check::fail(id, e.to_string())),
            };
            for k in 2..=n {
                cmp(format!("n={n} k={k} KthPower"), &powers[k], rhs_power_formula(h, pair, n, k, PowerFormula::KthPower));
            }
            if n >= 1 {
                cmp(format!("n={n} k={} NPlus1", n + 1), &powers[n + 1], rhs_power_formula(h, pair, n, n + 1, PowerFormula::NPlus1));
            }
            cmp(format!("n={n} k={} RemarkEU", n + 1), &powers[n + 1], rhs_power_formula(h, pair, n, n + 1, PowerFormula::RemarkEU));
            if mpi {
                cmp(format!("n={n} k={} Twist", n + 1), &powers[n + 1], Ok(h.theta(n)));
            }
            out
        })
        .collect();
    let mut rep = Report::new("powers");
    rep.note(format!("twisted_mpi={mpi}"));
    per_level.into_iter().flatten().for_each(|c| rep.push(c));
    rep
}
