//! The shipped example algebras.

use crate::braided::CategoryCtx;
use crate::cm::ModularPair;
use crate::error::{Error, Result};
use crate::hopf::HopfAlgebra;
use crate::linalg::Matrix;
use crate::scalar::{Field, FieldSpec};
use crate::tensor::{Mor, Obj};

pub const NAMES: [&str; 5] = ["trivial", "group_c2", "group_s3", "sweedler", "anyonic_line_q"];

/// A built-in algebra with its canonical modular pairs and level cap.
#[derive(Clone)]
pub struct Example<F> {
    pub name: String,
    pub hopf: HopfAlgebra<F>,
    pub pairs: Vec<ModularPair<F>>,
    /// Largest level used by default (3 for six-dimensional algebras).
    pub n_cap: usize,
}

impl<F: Field> Example<F> {
    pub fn pair(&self, name: &str) -> Result<&ModularPair<F>> {
        self.pairs
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::InvalidModularPair(format!("no pair named {name:?} on {}", self.name)))
    }
}

/// `q` is only read by `anyonic_line_q` (default -1).
pub fn builtin<F: Field>(name: &str, q: Option<F>) -> Result<Example<F>> {
    let hopf = match name {
        "trivial" => trivial(FieldSpec::Rationals),
        "group_c2" => group_c2(),
        "group_s3" => group_s3(),
        "sweedler" => sweedler(),
        "anyonic_line_q" => anyonic_line(q.unwrap_or_else(|| F::from_i64(-1)))?,
        _ => return Err(Error::UnknownBuiltin(name.into())),
    };
    let mut pairs = vec![ModularPair::trivial(&hopf)];
    if name == "sweedler" {
        let g = Mor::vector(&hopf.carrier, vec![F::zero(), F::one(), F::zero(), F::zero()])?;
        pairs.push(ModularPair::new(&hopf, "eg", hopf.counit.clone(), g)?);
    }
    let n_cap = if hopf.dim() > 4 { 3 } else { 4 };
    Ok(Example { name: name.into(), hopf, pairs, n_cap })
}

fn q<F: Field>(v: i64) -> F {
    F::from_i64(v)
}

fn from_triplets<F: Field>(dom: &Obj, cod: &Obj, t: Vec<(usize, usize, F)>) -> Mor<F> {
    Mor::new(dom.clone(), cod.clone(), Matrix::from_triplets(cod.dim(), dom.dim(), t)).unwrap()
}

/// H = the ground field.
pub fn trivial<F: Field>(field: FieldSpec) -> HopfAlgebra<F> {
    let ctx = CategoryCtx::trivial(field);
    let k = Obj::new("k", vec![0], field);
    let id = Mor::id(&k);
    HopfAlgebra::new(ctx, k, id.clone(), id.clone(), id.clone(), id.clone(), id).unwrap()
}

/// Group algebra with the given multiplication table; element 0 is the identity.
pub fn group_algebra<F: Field>(name: &str, mul: &[Vec<usize>], inv: &[usize]) -> Result<HopfAlgebra<F>> {
    let n = mul.len();
    let field = FieldSpec::Rationals;
    let ctx = CategoryCtx::trivial(field);
    let h = Obj::new(name, vec![0; n], field);
    let h2 = h.power(2);
    let one = Obj::unit(field);
    let mut m = Vec::new();
    for a in 0..n {
        for b in 0..n {
            m.push((mul[a][b], a * n + b, q(1)));
        }
    }
    let d = (0..n).map(|a| (a * n + a, a, q(1))).collect();
    let s = (0..n).map(|a| (inv[a], a, q(1))).collect();
    HopfAlgebra::new(
        ctx,
        h.clone(),
        from_triplets(&h2, &h, m),
        from_triplets(&one, &h, vec![(0, 0, q(1))]),
        from_triplets(&h, &h2, d),
        from_triplets(&h, &one, (0..n).map(|a| (0, a, q(1))).collect()),
        from_triplets(&h, &h, s),
    )
}

pub fn group_c2<F: Field>() -> HopfAlgebra<F> {
    group_algebra("QC2", &[vec![0, 1], vec![1, 0]], &[0, 1]).unwrap()
}

/// Permutations of {0,1,2} in lexicographic order; (p q)(i) = p(q(i)).
pub fn s3_elements() -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

pub fn group_s3<F: Field>() -> HopfAlgebra<F> {
    let el = s3_elements();
    let idx = |p: [usize; 3]| el.iter().position(|x| *x == p).unwrap();
    let mul: Vec<Vec<usize>> =
        el.iter().map(|p| el.iter().map(|r| idx([p[r[0]], p[r[1]], p[r[2]]])).collect()).collect();
    let inv: Vec<usize> = el
        .iter()
        .map(|p| {
            let mut v = [0; 3];
            for i in 0..3 {
                v[p[i]] = i;
            }
            idx(v)
        })
        .collect();
    group_algebra("QS3", &mul, &inv).unwrap()
}

/// Basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx, Delta(x) = x (x) 1 + g (x) x.
pub fn sweedler<F: Field>() -> HopfAlgebra<F> {
    let field = FieldSpec::Rationals;
    let ctx = CategoryCtx::trivial(field);
    let h = Obj::new("H4", vec![0; 4], field);
    let h2 = h.power(2);
    let one = Obj::unit(field);
    // basis element (g power, x power)
    let basis = [(0, 0), (1, 0), (0, 1), (1, 1)];
    let idx = |b: (usize, usize)| basis.iter().position(|x| *x == b).unwrap();
    let mut m = Vec::new();
    for (a, &(g1, x1)) in basis.iter().enumerate() {
        for (b, &(g2, x2)) in basis.iter().enumerate() {
            if x1 + x2 > 1 {
                continue;
            }
            // g^g1 x^x1 g^g2 x^x2 = (-1)^{x1 g2} g^{g1+g2} x^{x1+x2}
            let sign = if x1 * g2 == 1 { -1 } else { 1 };
            m.push((idx(((g1 + g2) % 2, x1 + x2)), a * 4 + b, q(sign)));
        }
    }
    let d = vec![
        (0, 0, q(1)),
        (4 + 1, 1, q(1)),
        (2 * 4, 2, q(1)),
        (4 + 2, 2, q(1)),
        (3 * 4 + 1, 3, q(1)),
        (3, 3, q(1)),
    ];
    let s = vec![(0, 0, q(1)), (1, 1, q(1)), (3, 2, q(-1)), (2, 3, q(1))];
    HopfAlgebra::new(
        ctx,
        h.clone(),
        from_triplets(&h2, &h, m),
        from_triplets(&one, &h, vec![(0, 0, q(1))]),
        from_triplets(&h, &h2, d),
        from_triplets(&h, &one, vec![(0, 0, q(1)), (0, 1, q(1))]),
        from_triplets(&h, &h, s),
    )
    .unwrap()
}

/// k[x]/(x^N) with x of grade 1, q a primitive N-th root of unity, braiding and
/// twist GradedQ(q), Delta(x^k) = sum_j binom(k,j)_q x^j (x) x^{k-j}.
pub fn anyonic_line<F: Field>(qv: F) -> Result<HopfAlgebra<F>> {
    let n = qv
        .root_order()
        .filter(|n| *n >= 2)
        .ok_or_else(|| Error::Scalar(format!("q = {qv} must be a root of unity other than 1")))? as usize;
    let field = qv.spec();
    let ctx = CategoryCtx::graded(qv.clone());
    let h = Obj::new("L", (0..n as i64).collect(), field);
    let h2 = h.power(2);
    let one = Obj::unit(field);
    let pow = |k: usize| qv.pow_i(k as i64).unwrap();
    // q-integers and q-factorials
    let qint = |k: usize| (0..k).fold(F::zero(), |acc, i| acc + pow(i));
    let mut fact = vec![F::one()];
    for k in 1..n {
        let prev = fact[k - 1].clone();
        fact.push(prev * qint(k));
    }
    let binom = |k: usize, j: usize| fact[k].clone() * (fact[j].clone() * fact[k - j].clone()).inv().unwrap();
    let mut m = Vec::new();
    let mut d = Vec::new();
    for a in 0..n {
        for b in 0..n - a {
            m.push((a + b, a * n + b, F::one()));
        }
        for j in 0..=a {
            d.push((j * n + (a - j), a, binom(a, j)));
        }
    }
    let s = (0..n)
        .map(|k| {
            let sign = if k % 2 == 1 { -F::one() } else { F::one() };
            (k, k, sign * pow(k * (k.saturating_sub(1)) / 2))
        })
        .collect();
    HopfAlgebra::new(
        ctx,
        h.clone(),
        from_triplets(&h2, &h, m),
        from_triplets(&one, &h, vec![(0, 0, F::one())]),
        from_triplets(&h, &h2, d),
        from_triplets(&h, &one, vec![(0, 0, F::one())]),
        from_triplets(&h, &h, s),
    )
}
