#![allow(dead_code)]

pub mod oracle;

use hopfcyc::builtins;
use hopfcyc::cm::ModularPair;
use hopfcyc::hopf::HopfAlgebra;
use hopfcyc::scalar::{Cyclotomic, Field};
use hopfcyc::tensor::Mor;

pub type K = Cyclotomic;

pub struct Case {
    pub name: &'static str,
    pub h: HopfAlgebra<K>,
    pub pair: ModularPair<K>,
    pub n_cap: usize,
}

fn k(v: i64) -> K {
    K::from_i64(v)
}

fn vector(h: &HopfAlgebra<K>, v: &[i64]) -> Mor<K> {
    Mor::vector(&h.carrier, v.iter().map(|x| k(*x)).collect()).unwrap()
}

fn covector(h: &HopfAlgebra<K>, v: &[i64]) -> Mor<K> {
    Mor::covector(&h.carrier, v.iter().map(|x| k(*x)).collect()).unwrap()
}

/// Sign character of S3 and the element (0 1 2) -> (1 2 0).
pub fn s3_sign_cycle(h: &HopfAlgebra<K>) -> (Mor<K>, Mor<K>) {
    let el = builtins::s3_elements();
    let sign: Vec<i64> = el
        .iter()
        .map(|p| {
            let inv = (0..3).flat_map(|i| (0..i).map(move |j| (i, j))).filter(|(i, j)| p[*j] > p[*i]).count();
            if inv % 2 == 0 { 1 } else { -1 }
        })
        .collect();
    let c = el.iter().position(|p| *p == [1, 2, 0]).unwrap();
    let mut s = vec![0; 6];
    s[c] = 1;
    (covector(h, &sign), vector(h, &s))
}

/// Every built-in with its canonical pairs, plus extra pairs with nontrivial delta
/// and the anyonic line at a primitive cube root of unity.
pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for name in builtins::NAMES {
        let ex = builtins::builtin::<K>(name, None).unwrap();
        for p in &ex.pairs {
            out.push(Case { name: leak(format!("{name}/{}", p.name)), h: ex.hopf.clone(), pair: p.clone(), n_cap: ex.n_cap });
        }
    }
    let sw = builtins::sweedler::<K>();
    let d = covector(&sw, &[1, -1, 0, 0]);
    let pair = ModularPair::new(&sw, "du", d, sw.unit.clone()).unwrap();
    out.push(Case { name: "sweedler/du", h: sw, pair, n_cap: 4 });
    let c2 = builtins::group_c2::<K>();
    let pair = ModularPair::new(&c2, "sgn_u", covector(&c2, &[1, -1]), c2.unit.clone()).unwrap();
    out.push(Case { name: "group_c2/sgn_u", h: c2, pair, n_cap: 4 });
    let s3 = builtins::group_s3::<K>();
    let (d, s) = s3_sign_cycle(&s3);
    let pair = ModularPair::new(&s3, "sgn_c", d, s).unwrap();
    out.push(Case { name: "group_s3/sgn_c", h: s3, pair, n_cap: 3 });
    let an3 = builtins::anyonic_line(Cyclotomic::zeta(3)).unwrap();
    let pair = ModularPair::trivial(&an3);
    out.push(Case { name: "anyonic_line_z3/eu", h: an3, pair, n_cap: 4 });
    out
}

fn leak(s: String) -> &'static str {
    Box::leak(s.into_boxed_str())
}
