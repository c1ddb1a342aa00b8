//! Hopf algebras in a braided category and their derived operators.
//!
//! Diagram transcriptions (all crossings are positive braidings):
//!
//! | operator            | composite                                                        |
//! |---------------------|------------------------------------------------------------------|
//! | m_{n+1}             | m (id (x) m_n), m_0 = u                                          |
//! | Delta_{n+1}         | (id (x) Delta_n) Delta, Delta_0 = eps                            |
//! | left diagonal n     | (m (x) l_{n-1})(id (x) tau_{H,H} (x) id)(Delta (x) id)           |
//! | right diagonal n    | (r_{n-1} (x) m)(id (x) tau_{H,H} (x) id)(id (x) Delta)           |
//! | right adjoint 1     | m (m (x) id)(S (x) id (x) id)(tau_{H,H} (x) id)(id (x) Delta)    |
//! | right adjoint n     | (ad_{n-1} (x) ad_1)(id (x) tau_{H,H} (x) id)(id (x) Delta)       |
//! | left adjoint 1      | m (m (x) S)(id (x) tau_{H,H})(Delta (x) id)                      |
//! | left adjoint n      | (ad_1 (x) ad_{n-1})(id (x) tau_{H,H} (x) id)(Delta (x) id)       |
//! | left coadjoint 1    | (m (x) id)(id (x) S (x) id)(id (x) tau_{H,H})(Delta (x) id) Delta |
//! | left coadjoint n    | (m (x) id)(id (x) tau_{H,H} (x) id)(co_1 (x) co_{n-1})           |
//! | right coadjoint 1   | (id (x) m)(id (x) S (x) id)(tau_{H,H} (x) id)(Delta (x) id) Delta |
//! | right coadjoint n   | (id (x) m)(id (x) tau_{H,H} (x) id)(co_{n-1} (x) co_1)           |
//! | twisted antipode    | (delta (x) S) Delta                                              |

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::braided::{CategoryCtx, Side};
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::scalar::Field;
use crate::tensor::{chain, tensor_all, Mor, Obj};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    Mult,
    Comult,
    Diag(Side),
    Adj(Side),
    Coad(Side),
    Twist,
}

type Memo<F> = Arc<Mutex<HashMap<(Op, usize), Arc<Mor<F>>>>>;

#[derive(Clone)]
pub struct HopfAlgebra<F> {
    pub ctx: CategoryCtx<F>,
    pub carrier: Obj,
    pub mult: Mor<F>,
    pub unit: Mor<F>,
    pub comult: Mor<F>,
    pub counit: Mor<F>,
    pub antipode: Mor<F>,
    memo: Memo<F>,
}

impl<F: Field> fmt::Debug for HopfAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfAlgebra({:?}, {:?})", self.carrier, self.ctx)
    }
}

impl<F: Field> HopfAlgebra<F> {
    /// Builds and validates; fails with the full axiom report on any violation.
    pub fn new(
        ctx: CategoryCtx<F>,
        carrier: Obj,
        mult: Mor<F>,
        unit: Mor<F>,
        comult: Mor<F>,
        counit: Mor<F>,
        antipode: Mor<F>,
    ) -> Result<Self> {
        let h = Self::unchecked(ctx, carrier, mult, unit, comult, counit, antipode)?;
        let rep = h.check_axioms();
        if !rep.passed() {
            return Err(Error::Validation(Box::new(rep)));
        }
        Ok(h)
    }

    /// Boundary checks only. Meant for building deliberately broken algebras.
    pub fn unchecked(
        ctx: CategoryCtx<F>,
        carrier: Obj,
        mult: Mor<F>,
        unit: Mor<F>,
        comult: Mor<F>,
        counit: Mor<F>,
        antipode: Mor<F>,
    ) -> Result<Self> {
        if carrier.field != ctx.field {
            return Err(Error::FieldMismatch(carrier.field.to_string(), ctx.field.to_string()));
        }
        let h2 = carrier.power(2);
        let one = Obj::unit(ctx.field);
        let want = [
            ("mult", &mult, &h2, &carrier),
            ("unit", &unit, &one, &carrier),
            ("comult", &comult, &carrier, &h2),
            ("counit", &counit, &carrier, &one),
            ("antipode", &antipode, &carrier, &carrier),
        ];
        for (name, m, dom, cod) in want {
            if !m.dom.same_shape(dom) || !m.cod.same_shape(cod) {
                return Err(Error::Shape(format!("{name} is {:?} -> {:?}, expected {dom:?} -> {cod:?}", m.dom, m.cod)));
            }
        }
        let fix = |m: Mor<F>, d: &Obj, c: &Obj| m.retyped(d, c);
        Ok(HopfAlgebra {
            mult: fix(mult, &h2, &carrier),
            unit: fix(unit, &one, &carrier),
            comult: fix(comult, &carrier, &h2),
            counit: fix(counit, &carrier, &one),
            antipode: fix(antipode, &carrier, &carrier),
            ctx,
            carrier,
            memo: Arc::default(),
        })
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn field(&self) -> crate::scalar::FieldSpec {
        self.ctx.field
    }

    /// H^{(x) k}
    pub fn pw(&self, k: usize) -> Obj {
        if k == 0 {
            Obj::unit(self.field())
        } else {
            self.carrier.power(k)
        }
    }

    /// id on H^{(x) k}
    pub fn id(&self, k: usize) -> Mor<F> {
        Mor::id(&self.pw(k))
    }

    /// tau_{H^a, H^b}
    pub fn br(&self, a: usize, b: usize) -> Mor<F> {
        self.ctx.braiding(&self.pw(a), &self.pw(b)).expect("carrier lives in ctx")
    }

    /// theta on H^{(x) k}
    pub fn theta(&self, k: usize) -> Mor<F> {
        self.memo(Op::Twist, k, || self.ctx.twist(&self.pw(k)).expect("twist on tensor powers")).as_ref().clone()
    }

    /// Tensor product of a list of morphisms.
    pub fn t(&self, fs: &[&Mor<F>]) -> Mor<F> {
        tensor_all(fs, self.field()).expect("same field")
    }

    pub fn one(&self) -> Mor<F> {
        self.id(0)
    }

    /// `f` tensored with itself `n` times (id of the unit for n = 0).
    pub fn tpow(&self, f: &Mor<F>, n: usize) -> Mor<F> {
        self.t(&vec![f; n])
    }

    fn memo(&self, op: Op, n: usize, build: impl FnOnce() -> Mor<F>) -> Arc<Mor<F>> {
        if let Some(m) = self.memo.lock().unwrap().get(&(op, n)) {
            return m.clone();
        }
        // computed outside the lock: builders recurse into the memo
        let m = Arc::new(build());
        self.memo.lock().unwrap().entry((op, n)).or_insert(m).clone()
    }

    pub fn check_axioms(&self) -> Report {
        check_hopf_axioms(self)
    }

    /// m_n: H^{(x) n} -> H
    pub fn iterated_mult(&self, n: usize) -> Arc<Mor<F>> {
        self.memo(Op::Mult, n, || match n {
            0 => self.unit.clone(),
            1 => self.id(1),
            _ => c(&[&self.t(&[&self.id(1), &self.iterated_mult(n - 1)]), &self.mult]),
        })
    }

    /// Delta_n: H -> H^{(x) n}
    pub fn iterated_comult(&self, n: usize) -> Arc<Mor<F>> {
        self.memo(Op::Comult, n, || match n {
            0 => self.counit.clone(),
            1 => self.id(1),
            _ => c(&[&self.comult, &self.t(&[&self.id(1), &self.iterated_comult(n - 1)])]),
        })
    }

    /// Left: H (x) H^n -> H^n. Right: H^n (x) H -> H^n.
    pub fn diagonal_action(&self, side: Side, n: usize) -> Arc<Mor<F>> {
        self.memo(Op::Diag(side), n, || {
            if n == 0 {
                return self.counit.clone();
            }
            let prev = self.diagonal_action(side, n - 1);
            let (i1, tau) = (self.id(1), self.br(1, 1));
            match side {
                Side::Left => c(&[
                    &self.t(&[&self.comult, &self.id(n)]),
                    &self.t(&[&i1, &tau, &self.id(n - 1)]),
                    &self.t(&[&self.mult, &prev]),
                ]),
                Side::Right => c(&[
                    &self.t(&[&self.id(n), &self.comult]),
                    &self.t(&[&self.id(n - 1), &tau, &i1]),
                    &self.t(&[&prev, &self.mult]),
                ]),
            }
        })
    }

    /// Right: H^n (x) H -> H^n, x <| h = S(h1) x h2 on each factor.
    /// Left: H (x) H^n -> H^n, h |> x = h1 x S(h2) on each factor.
    pub fn adjoint_action(&self, side: Side, n: usize) -> Arc<Mor<F>> {
        self.memo(Op::Adj(side), n, || {
            if n == 0 {
                return self.counit.clone();
            }
            let (i1, tau) = (self.id(1), self.br(1, 1));
            let (m, s, dl) = (&self.mult, &self.antipode, &self.comult);
            let one = match side {
                Side::Right => c(&[
                    &self.t(&[&i1, dl]),
                    &self.t(&[&tau, &i1]),
                    &self.t(&[s, &i1, &i1]),
                    &self.t(&[m, &i1]),
                    m,
                ]),
                Side::Left => c(&[&self.t(&[dl, &i1]), &self.t(&[&i1, &tau]), &self.t(&[m, s]), m]),
            };
            if n == 1 {
                return one;
            }
            let prev = self.adjoint_action(side, n - 1);
            match side {
                Side::Right => c(&[
                    &self.t(&[&self.id(n), dl]),
                    &self.t(&[&self.id(n - 1), &tau, &i1]),
                    &self.t(&[&prev, &one]),
                ]),
                Side::Left => c(&[
                    &self.t(&[dl, &self.id(n)]),
                    &self.t(&[&i1, &tau, &self.id(n - 1)]),
                    &self.t(&[&one, &prev]),
                ]),
            }
        })
    }

    /// Left: H^n -> H (x) H^n, x -> x1 S(x3) (x) x2 with coefficients multiplied
    /// left to right. Right: H^n -> H^n (x) H, x -> x2 (x) S(x1) x3.
    pub fn coadjoint_coaction(&self, side: Side, n: usize) -> Arc<Mor<F>> {
        self.memo(Op::Coad(side), n, || {
            if n == 0 {
                return self.unit.clone();
            }
            let (i1, tau) = (self.id(1), self.br(1, 1));
            let (m, s, dl) = (&self.mult, &self.antipode, &self.comult);
            let one = match side {
                Side::Left => c(&[
                    dl,
                    &self.t(&[dl, &i1]),
                    &self.t(&[&i1, &tau]),
                    &self.t(&[&i1, s, &i1]),
                    &self.t(&[m, &i1]),
                ]),
                Side::Right => c(&[
                    dl,
                    &self.t(&[dl, &i1]),
                    &self.t(&[&tau, &i1]),
                    &self.t(&[&i1, s, &i1]),
                    &self.t(&[&i1, m]),
                ]),
            };
            if n == 1 {
                return one;
            }
            let prev = self.coadjoint_coaction(side, n - 1);
            match side {
                Side::Left => c(&[
                    &self.t(&[&one, &prev]),
                    &self.t(&[&i1, &tau, &self.id(n - 1)]),
                    &self.t(&[m, &self.id(n)]),
                ]),
                Side::Right => c(&[
                    &self.t(&[&prev, &one]),
                    &self.t(&[&self.id(n - 1), &tau, &i1]),
                    &self.t(&[&self.id(n), m]),
                ]),
            }
        })
    }

    /// Errors unless `delta` is an algebra morphism H -> 1.
    pub fn check_character(&self, delta: &Mor<F>) -> Result<()> {
        let one = Obj::unit(self.field());
        if !delta.dom.same_shape(&self.carrier) || !delta.cod.same_shape(&one) {
            return Err(Error::Shape(format!("delta must be H -> 1, got {:?} -> {:?}", delta.dom, delta.cod)));
        }
        let lhs = c(&[&self.mult, delta]);
        let rhs = self.t(&[delta, delta]);
        if let Some(d) = lhs.diff(&rhs) {
            return Err(Error::NotAlgebraMorphism(format!("delta m != delta (x) delta, {d}")));
        }
        if !c(&[&self.unit, delta]).mat.is_identity() {
            return Err(Error::NotAlgebraMorphism("delta u != 1".into()));
        }
        Ok(())
    }

    /// S~ = (delta (x) S) Delta.
    pub fn twisted_antipode(&self, delta: &Mor<F>) -> Result<Mor<F>> {
        self.check_character(delta)?;
        Ok(self.twisted_antipode_unchecked(delta))
    }

    pub(crate) fn twisted_antipode_unchecked(&self, delta: &Mor<F>) -> Mor<F> {
        let delta = delta.clone().retyped(&self.carrier, &Obj::unit(self.field()));
        c(&[&self.comult, &self.t(&[&delta, &self.antipode])])
    }
}

/// Chain in application order; shapes are internal invariants here.
pub(crate) fn c<F: Field>(maps: &[&Mor<F>]) -> Mor<F> {
    chain(maps).expect("diagram boundaries")
}

fn cmp<F: Field>(rep: &mut Report, id: &str, lhs: &Mor<F>, rhs: &Mor<F>) {
    rep.push(Check::new(id, lhs.same(rhs), lhs.diff(rhs)));
}

pub fn check_hopf_axioms<F: Field>(h: &HopfAlgebra<F>) -> Report {
    let mut rep = Report::new("axioms");
    let (m, u, dl, e, s) = (&h.mult, &h.unit, &h.comult, &h.counit, &h.antipode);
    let i1 = h.id(1);
    let tau = h.br(1, 1);
    cmp(&mut rep, "associativity", &c(&[&h.t(&[m, &i1]), m]), &c(&[&h.t(&[&i1, m]), m]));
    cmp(&mut rep, "unit_left", &c(&[&h.t(&[u, &i1]), m]), &i1);
    cmp(&mut rep, "unit_right", &c(&[&h.t(&[&i1, u]), m]), &i1);
    cmp(&mut rep, "coassociativity", &c(&[dl, &h.t(&[dl, &i1])]), &c(&[dl, &h.t(&[&i1, dl])]));
    cmp(&mut rep, "counit_left", &c(&[dl, &h.t(&[e, &i1])]), &i1);
    cmp(&mut rep, "counit_right", &c(&[dl, &h.t(&[&i1, e])]), &i1);
    let bialg = c(&[&h.t(&[dl, dl]), &h.t(&[&i1, &tau, &i1]), &h.t(&[m, m])]);
    cmp(&mut rep, "bialgebra", &c(&[m, dl]), &bialg);
    cmp(&mut rep, "bialgebra_unit", &c(&[u, dl]), &h.t(&[u, u]));
    cmp(&mut rep, "bialgebra_counit", &c(&[m, e]), &h.t(&[e, e]));
    cmp(&mut rep, "bialgebra_scalar", &c(&[u, e]), &h.one());
    let ue = c(&[e, u]);
    cmp(&mut rep, "antipode_left", &c(&[dl, &h.t(&[s, &i1]), m]), &ue);
    cmp(&mut rep, "antipode_right", &c(&[dl, &h.t(&[&i1, s]), m]), &ue);
    match s.inverse() {
        Ok(_) => rep.push(Check::ok("antipode_invertible")),
        Err(_) => rep.push(Check::fail("antipode_invertible", "S is singular")),
    }
    for (name, f) in [("mult", m), ("unit", u), ("comult", dl), ("counit", e), ("antipode", s)] {
        let ok = f.is_homogeneous();
        rep.push(Check::new(format!("homogeneous_{name}"), ok, (!ok).then(|| "mixes grades".to_string())));
    }
    let tw = h.ctx.check_twist_axiom(&h.carrier, &h.carrier);
    rep.push(Check::new("twist_condition", tw, (!tw).then(|| "theta fails on H (x) H".to_string())));
    rep
}
