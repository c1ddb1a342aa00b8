//! Identities of the twisted antipode and of tau_n, as an executable suite.
//!
//! Notation: S~ twisted antipode, f = (delta (x) id) coad^l_1,
//! g = ad^r_1 (id (x) sigma), rs = m (id (x) sigma), T_n = tau_n(eps, u).

use rayon::prelude::*;

use crate::braided::Side;
use crate::cm::{rhs_power_formula, tau, ModularPair, PowerFormula};
use crate::hopf::{c, HopfAlgebra};
use crate::report::{Check, Report};
use crate::scalar::Field;
use crate::tensor::Mor;

fn check<F: Field>(out: &mut Vec<Check>, id: String, lhs: Mor<F>, rhs: Mor<F>) {
    out.push(Check::new(id, lhs.same(&rhs), lhs.diff(&rhs)));
}

/// Bialgebra-morphism conditions for an endomorphism of H.
fn bialgebra_morphism<F: Field>(out: &mut Vec<Check>, name: &str, h: &HopfAlgebra<F>, f: &Mor<F>) {
    check(out, format!("{name}.mult"), c(&[&h.mult, f]), c(&[&h.t(&[f, f]), &h.mult]));
    check(out, format!("{name}.unit"), c(&[&h.unit, f]), h.unit.clone());
    check(out, format!("{name}.comult"), c(&[f, &h.comult]), c(&[&h.comult, &h.t(&[f, f])]));
    check(out, format!("{name}.counit"), c(&[f, &h.counit]), h.counit.clone());
}

pub fn run_lemma_suite<F: Field>(h: &HopfAlgebra<F>, pair: &ModularPair<F>, n_max: usize) -> Report {
    let (m, u, dl, e, s) = (&h.mult, &h.unit, &h.comult, &h.counit, &h.antipode);
    let (delta, sigma) = (&pair.delta, &pair.sigma);
    let i1 = h.id(1);
    let tw = h.br(1, 1);
    let st = h.twisted_antipode_unchecked(delta);
    let mut out = Vec::new();

    check(&mut out, "antipode.comult".into(), c(&[&st, dl]), c(&[dl, &tw, &h.t(&[s, &st])]));
    check(&mut out, "antipode.mult".into(), c(&[m, &st]), c(&[&tw, &h.t(&[&st, &st]), m]));
    check(&mut out, "antipode.convolution".into(), c(&[dl, &h.t(&[&st, &i1]), m]), c(&[delta, u]));
    check(&mut out, "antipode.delta".into(), c(&[&st, delta]), e.clone());
    let coad1 = h.coadjoint_coaction(Side::Left, 1);
    check(&mut out, "antipode.square".into(), c(&[&st, &st]), c(&[&coad1, &h.t(&[delta, &c(&[s, s])])]));
    check(
        &mut out,
        "antipode.absorb".into(),
        c(&[&h.t(&[dl, &i1]), &h.t(&[&i1, &tw]), &h.t(&[m, &i1]), &h.t(&[&st, &i1]), m]),
        h.t(&[delta, &st]),
    );
    check(&mut out, "antipode.counit".into(), c(&[&st, e]), delta.clone());
    check(&mut out, "antipode.sigma".into(), c(&[sigma, &st]), c(&[sigma, s]));
    check(&mut out, "antipode.sigma_inverse".into(), c(&[&h.t(&[&c(&[sigma, &st]), sigma]), m]), u.clone());

    let f = c(&[&coad1, &h.t(&[delta, &i1])]).retyped(&h.carrier, &h.carrier);
    let g = c(&[&h.t(&[&i1, sigma]), &h.adjoint_action(Side::Right, 1)]).retyped(&h.carrier, &h.carrier);
    bialgebra_morphism(&mut out, "coad_delta", h, &f);
    bialgebra_morphism(&mut out, "ad_sigma", h, &g);
    check(&mut out, "coad_delta.antipode".into(), c(&[&f, &st]), c(&[&st, &f]));
    check(&mut out, "ad_sigma.antipode".into(), c(&[&g, &st]), c(&[&st, &g]));

    let eu = ModularPair::trivial(h);
    let rs = c(&[&h.t(&[&i1, sigma]), m]).retyped(&h.carrier, &h.carrier);
    let ls = c(&[&h.t(&[sigma, &i1]), m]).retyped(&h.carrier, &h.carrier);
    let per_n: Vec<Vec<Check>> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut out = Vec::new();
            let te = |k: usize| tau(h, &eu, k);
            let tn = tau(h, pair, n);
            let ten = te(n);
            // sigma moves out of tau_n(delta, sigma)
            let rhs = c(&[
                &h.t(&[&c(&[dl, &h.t(&[delta, &i1])]), &h.id(n - 1)]),
                &ten,
                &h.t(&[&h.id(n - 1), &rs]),
            ]);
            check(&mut out, format!("n={n} flow.sigma_out"), tn.clone(), rhs);
            let rd = h.diagonal_action(Side::Right, n);
            let ld = h.diagonal_action(Side::Left, n);
            check(&mut out, format!("n={n} diagonal.right_sigma"), c(&[&h.t(&[&h.id(n), sigma]), &rd]), h.tpow(&rs, n));
            check(&mut out, format!("n={n} diagonal.left_sigma"), c(&[&h.t(&[sigma, &h.id(n)]), &ld]), h.tpow(&ls, n));
            let ad = h.adjoint_action(Side::Right, n);
            check(&mut out, format!("n={n} adjoint.sigma"), c(&[&h.t(&[&h.id(n), sigma]), &ad]), h.tpow(&g, n));
            let co = h.coadjoint_coaction(Side::Left, n);
            check(&mut out, format!("n={n} coadjoint.delta"), c(&[&co, &h.t(&[delta, &h.id(n)])]), h.tpow(&f, n));
            if n < 2 {
                return out;
            }
            let tm1 = te(n - 1);
            let t1 = tau(h, pair, 1);
            let rec_a = c(&[
                &h.t(&[dl, &h.id(n - 1)]),
                &h.br(1, n),
                &h.t(&[&c(&[&h.t(&[&tm1, &i1]), &h.t(&[&h.id(n - 2), m])]), &t1]),
            ]);
            check(&mut out, format!("n={n} recurrence.split"), tn.clone(), rec_a);
            let rec_b = c(&[
                &h.t(&[dl, &h.id(n - 1)]),
                &h.t(&[delta, &h.id(n)]),
                &h.t(&[&tm1, &i1, sigma]),
                &h.t(&[&h.id(n - 2), &h.diagonal_action(Side::Left, 2)]),
            ]);
            check(&mut out, format!("n={n} recurrence.diagonal"), tn.clone(), rec_b);
            let tp1 = te(n + 1);
            check(&mut out, format!("n={n} square.comult"), c(&[&h.t(&[dl, &h.id(n - 1)]), &tp1]), h.t(&[u, &ten]));
            check(&mut out, format!("n={n} square.unit"), c(&[&h.t(&[&h.id(n - 1), u]), &ten]), c(&[&tm1, &h.t(&[&h.id(n - 2), dl])]));
            check(&mut out, format!("n={n} square.counit"), c(&[&ten, &h.t(&[&h.id(n - 1), e])]), c(&[&h.t(&[&tm1, &i1]), &h.t(&[&h.id(n - 2), m])]));
            let sq = rhs_power_formula(h, &eu, n, 2, PowerFormula::KthPower).expect("n >= 2");
            check(&mut out, format!("n={n} square.power"), ten.pow(2), sq);
            for j in 2..=n {
                let lhs = c(&[&h.t(&[&h.id(j - 1), &rs, &h.id(n - j)]), &ten]);
                let rhs = c(&[&ten, &h.t(&[&h.id(j - 2), &rs, &h.id(n - j + 1)])]);
                check(&mut out, format!("n={n} flow.sigma_shift j={j}"), lhs, rhs);
            }
            out
        })
        .collect();
    let mut rep = Report::new("lemmas");
    out.into_iter().chain(per_n.into_iter().flatten()).for_each(|c| rep.push(c));
    rep
}
