//! Cyclic (co)homology of truncated (co)cyclic vector spaces through the
//! (b, b') bicomplex.
//!
//! Column p of the bicomplex is X_q in total degree p + q. Even columns carry b,
//! odd columns -b'. Horizontal maps are 1 - lambda from odd to even columns and
//! N from even to odd, with lambda = (-1)^q t_q and N = sum_k lambda^k.
//! A cocyclic module is transposed, handled as a cyclic one, and the resulting
//! differentials transposed back.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Matrix};
use crate::report::{Check, Report};
use crate::scalar::{Field, FieldSpec};
use crate::simplicial::{CyclicModuleData, Variance};

#[derive(Clone, Debug)]
pub struct Bicomplex<F> {
    pub variance: Variance,
    /// Module in cyclic form.
    pub chain: CyclicModuleData<F>,
    /// Degrees 0..effective_bound are computed.
    pub effective_bound: usize,
    pub requested_bound: usize,
    /// `total[n]`: Tot_n -> Tot_{n-1} of the cyclic form, n = 0..=effective_bound.
    pub total: Vec<Matrix<F>>,
    pub checks: Report,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeInfo {
    pub degree: usize,
    pub dim: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub homology: usize,
    /// False when the degree is close enough to the truncation that higher
    /// levels could still change the answer.
    pub trusted: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ComplexReport {
    pub variance: String,
    pub requested_bound: usize,
    pub effective_bound: usize,
    pub degrees: Vec<DegreeInfo>,
    pub flagged: Vec<usize>,
}

impl ComplexReport {
    pub fn homology_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.homology).collect()
    }
}

fn signed_sum<F: Field>(ms: &[Matrix<F>], rows: usize, cols: usize) -> Matrix<F> {
    let mut acc = Matrix::zeros(rows, cols);
    for (i, m) in ms.iter().enumerate() {
        acc = if i % 2 == 0 { acc.add(m) } else { acc.sub(m) };
    }
    acc
}

struct Pieces<F> {
    b: Vec<Matrix<F>>,
    bp: Vec<Matrix<F>>,
    one_minus_lambda: Vec<Matrix<F>>,
    norm: Vec<Matrix<F>>,
}

fn pieces<F: Field>(x: &CyclicModuleData<F>, top: usize) -> Pieces<F> {
    let per: Vec<_> = (0..=top)
        .into_par_iter()
        .map(|q| {
            let d = x.dims[q];
            let (b, bp) = if q == 0 {
                (Matrix::zeros(0, d), Matrix::zeros(0, d))
            } else {
                let f = x.faces(q);
                (signed_sum(f, x.dims[q - 1], d), signed_sum(&f[..q], x.dims[q - 1], d))
            };
            let lambda = if q % 2 == 0 { x.tau[q].clone() } else { x.tau[q].scale(&-F::one()) };
            let id = Matrix::identity(d);
            let mut norm = Matrix::zeros(d, d);
            let mut pw = id.clone();
            for _ in 0..=q {
                norm = norm.add(&pw);
                pw = pw.mul(&lambda);
            }
            (b, bp, id.sub(&lambda), norm)
        })
        .collect();
    let mut p = Pieces { b: vec![], bp: vec![], one_minus_lambda: vec![], norm: vec![] };
    for (b, bp, l, n) in per {
        p.b.push(b);
        p.bp.push(bp);
        p.one_minus_lambda.push(l);
        p.norm.push(n);
    }
    p
}

fn offsets(dims: &[usize], n: usize) -> Vec<usize> {
    // blocks p = 0..=n, block p holds X_{n-p}
    let mut out = vec![0];
    for p in 0..=n {
        out.push(out[p] + dims[n - p]);
    }
    out
}

pub fn build_bicomplex<F: Field>(x: &CyclicModuleData<F>, degree_bound: usize) -> Result<Bicomplex<F>> {
    let chain = x.as_cyclic();
    let eff = degree_bound.min(chain.top());
    for n in 0..=eff {
        if !chain.tau[n].pow(n + 1).is_identity() {
            return Err(Error::NotCyclic(format!("tau^{} is not the identity at level {n}", n + 1)));
        }
    }
    let pc = pieces(&chain, eff);
    let dims = &chain.dims;
    let total: Vec<Matrix<F>> = (0..=eff)
        .into_par_iter()
        .map(|n| {
            let src = offsets(dims, n);
            if n == 0 {
                return Matrix::zeros(0, src[1]);
            }
            let tgt = offsets(dims, n - 1);
            let mut owned: Vec<(usize, usize, Matrix<F>)> = Vec::new();
            for p in 0..=n {
                let q = n - p;
                if q >= 1 {
                    let v = if p % 2 == 0 { pc.b[q].clone() } else { pc.bp[q].scale(&-F::one()) };
                    owned.push((tgt[p], src[p], v));
                }
                if p >= 1 {
                    let hmap = if p % 2 == 1 { pc.one_minus_lambda[q].clone() } else { pc.norm[q].clone() };
                    owned.push((tgt[p - 1], src[p], hmap));
                }
            }
            let blocks: Vec<(usize, usize, &Matrix<F>)> = owned.iter().map(|(r, c, m)| (*r, *c, m)).collect();
            Matrix::assemble(tgt[n], src[n + 1], &blocks)
        })
        .collect();

    let mut checks = Report::new("bicomplex");
    let mut zero = |id: String, m: Matrix<F>| {
        let ok = m.is_zero();
        checks.push(Check::new(id, ok, (!ok).then(|| format!("{} nonzero entries", m.nnz()))));
    };
    for q in 1..=eff {
        if q >= 2 {
            zero(format!("q={q} bb"), pc.b[q - 1].mul(&pc.b[q]));
            zero(format!("q={q} b'b'"), pc.bp[q - 1].mul(&pc.bp[q]));
        }
        zero(format!("q={q} b(1-l)=(1-l)b'"), pc.b[q].mul(&pc.one_minus_lambda[q]).sub(&pc.one_minus_lambda[q - 1].mul(&pc.bp[q])));
        zero(format!("q={q} b'N=Nb"), pc.bp[q].mul(&pc.norm[q]).sub(&pc.norm[q - 1].mul(&pc.b[q])));
    }
    for q in 0..=eff {
        zero(format!("q={q} (1-l)N"), pc.one_minus_lambda[q].mul(&pc.norm[q]));
        zero(format!("q={q} N(1-l)"), pc.norm[q].mul(&pc.one_minus_lambda[q]));
    }
    for n in 2..=eff {
        zero(format!("n={n} DD"), total[n - 1].mul(&total[n]));
    }
    Ok(Bicomplex { variance: x.variance, chain, effective_bound: eff, requested_bound: degree_bound, total, checks })
}

impl<F: Field> Bicomplex<F> {
    pub fn field(&self) -> FieldSpec {
        self.chain.field
    }

    pub fn dim(&self, n: usize) -> usize {
        offsets(&self.chain.dims, n)[n + 1]
    }

    /// Differential leaving degree n and the one arriving in it, in the
    /// variance of the original module.
    fn out_in(&self, n: usize) -> (Matrix<F>, Matrix<F>) {
        match self.variance {
            Variance::Cyclic => (self.total[n].clone(), self.total[n + 1].clone()),
            Variance::Cocyclic => (self.total[n + 1].transpose(), self.total[n].transpose()),
        }
    }

    /// Degrees computed: 0..effective_bound.
    pub fn degrees(&self) -> std::ops::Range<usize> {
        0..self.effective_bound
    }

    pub fn is_trusted(&self, n: usize) -> bool {
        n + 1 < self.effective_bound
    }
}

pub fn total_homology<F: Field>(bc: &Bicomplex<F>) -> ComplexReport {
    let ranks: Vec<usize> = bc.total.par_iter().map(|m| m.rank()).collect();
    let degrees: Vec<DegreeInfo> = bc
        .degrees()
        .map(|n| {
            let dim = bc.dim(n);
            let (r_out, r_in) = match bc.variance {
                Variance::Cyclic => (ranks[n], ranks[n + 1]),
                Variance::Cocyclic => (ranks[n + 1], ranks[n]),
            };
            DegreeInfo { degree: n, dim, rank_out: r_out, rank_in: r_in, homology: dim - r_out - r_in, trusted: bc.is_trusted(n) }
        })
        .collect();
    ComplexReport {
        variance: format!("{:?}", bc.variance),
        requested_bound: bc.requested_bound,
        effective_bound: bc.effective_bound,
        flagged: degrees.iter().filter(|d| !d.trusted).map(|d| d.degree).collect(),
        degrees,
    }
}

/// Representatives of a homology basis plus an echelon form that reads off
/// coordinates of any cycle.
struct HomologyBasis<F> {
    dim: usize,
    reps: Vec<Vec<F>>,
    tagged: Echelon<F>,
}

fn sparse<F: Field>(v: &[F]) -> Vec<(usize, F)> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

impl<F: Field> HomologyBasis<F> {
    fn new(out: &Matrix<F>, inc: &Matrix<F>) -> Self {
        let dim = out.cols();
        let bounds = inc.transpose();
        let mut plain = Echelon::from_rows(dim, (0..bounds.rows()).map(|i| bounds.row(i).to_vec()));
        let mut reps = Vec::new();
        for z in out.kernel() {
            if plain.insert(sparse(&z)) {
                reps.push(z);
            }
        }
        let k = reps.len();
        let mut tagged = Echelon::new(dim + k);
        for i in 0..bounds.rows() {
            tagged.insert(bounds.row(i).to_vec());
        }
        for (j, r) in reps.iter().enumerate() {
            let mut row = sparse(r);
            row.push((dim + j, F::one()));
            tagged.insert(row);
        }
        HomologyBasis { dim, reps, tagged }
    }

    /// Coordinates of the class of a cycle.
    fn coords(&self, v: &[F]) -> Result<Vec<F>> {
        let rem = self.tagged.reduce(sparse(v));
        if rem.iter().any(|(i, _)| *i < self.dim) {
            return Err(Error::NotAMorphism("image is not a cycle".into()));
        }
        let mut out = vec![F::zero(); self.reps.len()];
        for (i, x) in rem {
            out[i - self.dim] = -x;
        }
        Ok(out)
    }
}

fn level_maps_commute<F: Field>(x: &CyclicModuleData<F>, y: &CyclicModuleData<F>, f: &[Matrix<F>]) -> Result<()> {
    // (table, generator index) -> (source level, target level)
    let levels = |up: bool, n: usize| match (x.variance, up) {
        (Variance::Cocyclic, true) => (n - 1, n),
        (Variance::Cocyclic, false) => (n + 1, n),
        (Variance::Cyclic, true) => (n, n + 1),
        (Variance::Cyclic, false) => (n, n - 1),
    };
    for (up, xs, ys) in [(true, &x.up, &y.up), (false, &x.down, &y.down)] {
        for n in 0..xs.len() {
            for (i, (gx, gy)) in xs[n].iter().zip(&ys[n]).enumerate() {
                let (s, t) = levels(up, n);
                if s >= f.len() || t >= f.len() {
                    continue;
                }
                if gy.mul(&f[s]).first_difference(&f[t].mul(gx)).is_some() {
                    let kind = if up { "up" } else { "down" };
                    return Err(Error::NotAMorphism(format!("fails to commute with {kind} generator {i} at level {n}")));
                }
            }
        }
    }
    for n in 0..f.len().min(x.tau.len()) {
        if y.tau[n].mul(&f[n]).first_difference(&f[n].mul(&x.tau[n])).is_some() {
            return Err(Error::NotAMorphism(format!("fails to commute with tau at level {n}")));
        }
    }
    Ok(())
}

/// Matrix of the map on cyclic (co)homology, in each computed degree, induced by
/// level maps `f[q]: X_q -> Y_q`. Rows index the target basis.
pub fn induced_map_on_hc<F: Field>(
    source: &CyclicModuleData<F>,
    target: &CyclicModuleData<F>,
    f: &[Matrix<F>],
    degree_bound: usize,
) -> Result<Vec<Matrix<F>>> {
    if source.variance != target.variance {
        return Err(Error::NotAMorphism("variance differs".into()));
    }
    let top = source.top().min(target.top()).min(f.len().saturating_sub(1));
    for (q, m) in f.iter().enumerate().take(top + 1) {
        if m.cols() != source.dims[q] || m.rows() != target.dims[q] {
            return Err(Error::Shape(format!("level map {q} is {}x{}", m.rows(), m.cols())));
        }
    }
    level_maps_commute(source, target, &f[..=top])?;
    let bound = degree_bound.min(top);
    let bx = build_bicomplex(source, bound)?;
    let by = build_bicomplex(target, bound)?;
    bx.degrees()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|n| {
            let so = offsets(&source.dims, n);
            let to = offsets(&target.dims, n);
            let blocks: Vec<(usize, usize, &Matrix<F>)> = (0..=n).map(|p| (to[p], so[p], &f[n - p])).collect();
            let total = Matrix::assemble(to[n + 1], so[n + 1], &blocks);
            let (ox, ix) = bx.out_in(n);
            let (oy, iy) = by.out_in(n);
            let hx = HomologyBasis::new(&ox, &ix);
            let hy = HomologyBasis::new(&oy, &iy);
            let mut cols = Vec::new();
            for r in &hx.reps {
                cols.push(hy.coords(&total.apply(r))?);
            }
            let rows = hy.reps.len();
            let trip = cols.into_iter().enumerate().flat_map(|(j, c)| c.into_iter().enumerate().map(move |(i, x)| (i, j, x)));
            Ok(Matrix::from_triplets(rows, hx.reps.len(), trip.filter(|(_, _, x)| !x.is_zero())))
        })
        .collect()
}

/// The cyclic module with one basis vector in every level and all structure maps 1.
pub fn point_module<F: Field>(field: FieldSpec, top: usize) -> CyclicModuleData<F> {
    let one = || Matrix::identity(1);
    CyclicModuleData {
        variance: Variance::Cyclic,
        field,
        dims: vec![1; top + 1],
        up: (0..=top).map(|n| if n < top { (0..=n).map(|_| one()).collect() } else { vec![] }).collect(),
        down: (0..=top).map(|n| if n == 0 { vec![] } else { (0..=n).map(|_| one()).collect() }).collect(),
        tau: (0..=top).map(|_| one()).collect(),
    }
}
