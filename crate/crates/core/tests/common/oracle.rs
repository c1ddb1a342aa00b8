//! Small dense rational linear algebra used as an independent check on the
//! library's sparse exact routines.

use hopfcyc::linalg::Matrix;
use hopfcyc::scalar::{parse_rational, Rational};
use hopfcyc::simplicial::CyclicModuleData;
use num_traits::{One, Zero};

use super::K;

pub type Dense = Vec<Vec<Rational>>;

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Entries of a matrix over the rationals (every entry must be rational).
pub fn to_dense(m: &Matrix<K>) -> Dense {
    m.to_dense().iter().map(|r| r.iter().map(|x| parse_rational(&x.to_string()).unwrap()).collect()).collect()
}

pub fn to_k(v: &[Rational]) -> Vec<K> {
    v.iter().map(|x| K::rational(x.clone())).collect()
}

/// Row reduction in place; returns the pivot columns.
fn rref(m: &mut Dense, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Rational::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let y = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Dense) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    rref(&mut m.clone(), cols).len()
}

pub fn nullspace(m: &Dense, cols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let piv = rref(&mut a, cols);
    (0..cols)
        .filter(|c| !piv.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = -a[r][free].clone();
            }
            v
        })
        .collect()
}

fn lin(a: &Dense, b: &Dense, s: &Rational) -> Dense {
    a.iter().zip(b).map(|(r, t)| r.iter().zip(t).map(|(x, y)| x.clone() + s.clone() * y.clone()).collect()).collect()
}

fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![Rational::zero(); c]; r]
}

fn identity(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

fn hcat(a: &Dense, b: &Dense) -> Dense {
    a.iter().zip(b).map(|(x, y)| x.iter().chain(y).cloned().collect()).collect()
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 { q(1) } else { q(-1) }
}

/// Cyclic homology of a cyclic module (a cocyclic one is transposed first)
/// through the Connes complex of coinvariants X_n / (1 - lambda). Degrees
/// 0..top are returned; degree n uses level n + 1.
pub fn connes_hc(x: &CyclicModuleData<K>) -> Vec<usize> {
    let x = x.as_cyclic();
    let top = x.top();
    let dims = &x.dims;
    // 1 - lambda_n with lambda_n = (-1)^n t_n
    let one_minus: Vec<Dense> = (0..=top).map(|n| lin(&identity(dims[n]), &to_dense(&x.tau[n]), &-sign(n))).collect();
    let b: Vec<Dense> = (0..=top)
        .map(|n| {
            if n == 0 {
                return zeros(0, dims[0]);
            }
            let mut acc = zeros(dims[n - 1], dims[n]);
            for i in 0..=n {
                acc = lin(&acc, &to_dense(&x.faces(n)[i]), &sign(i));
            }
            acc
        })
        .collect();
    let r: Vec<usize> = one_minus.iter().map(rank).collect();
    // rank of b_n induced on coinvariants
    let rb = |n: usize| if n == 0 { 0 } else { rank(&hcat(&b[n], &one_minus[n - 1])) - r[n - 1] };
    (0..top).map(|n| dims[n] - r[n] - rb(n) - rb(n + 1)).collect()
}
