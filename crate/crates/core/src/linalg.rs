//! Sparse exact matrices (row-compressed) and elimination.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::scalar::Field;

/// Rows are sorted by column and hold no explicit zeros, so `==` is
/// entrywise equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, F)>>,
}

const PAR_WORK: usize = 1 << 12;

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, F::one())]).collect() }
    }

    pub fn diagonal(d: Vec<F>) -> Self {
        let n = d.len();
        let data = d.into_iter().enumerate().map(|(i, x)| if x.is_zero() { vec![] } else { vec![(i, x)] }).collect();
        Matrix { rows: n, cols: n, data }
    }

    /// Duplicate positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, F>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            let e = acc[r].entry(c).or_insert_with(F::zero);
            *e = e.add_ref(&v);
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn from_dense(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows
            .into_iter()
            .map(|row| {
                assert_eq!(row.len(), c, "ragged dense matrix");
                row.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_rows(cols: usize, data: Vec<Vec<(usize, F)>>) -> Self {
        let mut m = Matrix { rows: data.len(), cols, data };
        for row in m.data.iter_mut() {
            row.sort_by_key(|e| e.0);
            row.retain(|e| !e.1.is_zero());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, F)] {
        &self.data[i]
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    /// All nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.data.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.data.iter().enumerate().all(|(i, r)| r.len() == 1 && r[0].0 == i && r[0].1.is_one())
    }

    fn row_times(&self, row: &[(usize, F)], acc: &mut Vec<Option<F>>, touched: &mut Vec<usize>) -> Vec<(usize, F)> {
        for (k, a) in row {
            for (j, b) in &self.data[*k] {
                match &mut acc[*j] {
                    Some(x) => *x = x.add_ref(&a.mul_ref(b)),
                    slot @ None => {
                        *slot = Some(a.mul_ref(b));
                        touched.push(*j);
                    }
                }
            }
        }
        touched.sort_unstable();
        let mut out = Vec::with_capacity(touched.len());
        for j in touched.drain(..) {
            let v = acc[j].take().unwrap();
            if !v.is_zero() {
                out.push((j, v));
            }
        }
        out
    }

    /// self * rhs
    pub fn mul(&self, rhs: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let work: usize = self.nnz();
        let data = if work > PAR_WORK {
            self.data
                .par_iter()
                .map_init(
                    || (vec![None; rhs.cols], Vec::new()),
                    |(acc, touched), row| rhs.row_times(row, acc, touched),
                )
                .collect()
        } else {
            let mut acc = vec![None; rhs.cols];
            let mut touched = Vec::new();
            self.data.iter().map(|row| rhs.row_times(row, &mut acc, &mut touched)).collect()
        };
        Matrix { rows: self.rows, cols: rhs.cols, data }
    }

    /// Kronecker product; the left factor is the outer index.
    pub fn kron(&self, rhs: &Matrix<F>) -> Matrix<F> {
        let (r2, c2) = (rhs.rows, rhs.cols);
        let build = |a_row: &Vec<(usize, F)>| -> Vec<Vec<(usize, F)>> {
            rhs.data
                .iter()
                .map(|b_row| {
                    let mut out = Vec::with_capacity(a_row.len() * b_row.len());
                    for (ja, va) in a_row {
                        for (jb, vb) in b_row {
                            out.push((ja * c2 + jb, va.mul_ref(vb)));
                        }
                    }
                    out
                })
                .collect()
        };
        let data: Vec<Vec<(usize, F)>> = if self.nnz() * rhs.nnz() > PAR_WORK {
            self.data.par_iter().flat_map_iter(build).collect()
        } else {
            self.data.iter().flat_map(build).collect()
        };
        Matrix { rows: self.rows * r2, cols: self.cols * c2, data }
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut data: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    fn zip_rows(&self, rhs: &Matrix<F>, sub: bool) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix sum shape");
        let data = self
            .data
            .iter()
            .zip(rhs.data.iter())
            .map(|(a, b)| merge_rows(a, b, sub))
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, rhs: &Matrix<F>) -> Matrix<F> {
        self.zip_rows(rhs, false)
    }

    pub fn sub(&self, rhs: &Matrix<F>) -> Matrix<F> {
        self.zip_rows(rhs, true)
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        if c.is_zero() {
            return Matrix::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|r| r.iter().map(|(j, v)| (*j, v.mul_ref(c))).collect()).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, k: usize) -> Matrix<F> {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = self.mul(&acc);
        }
        acc
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, c) in cols.iter().enumerate() {
            pos[*c] = k;
        }
        let data = rows
            .iter()
            .map(|r| {
                self.data[*r]
                    .iter()
                    .filter(|(j, _)| pos[*j] != usize::MAX)
                    .map(|(j, v)| (pos[*j], v.clone()))
                    .collect()
            })
            .collect();
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    /// Stack blocks given as (row offset, col offset, block) into a rows x cols matrix.
    pub fn assemble(rows: usize, cols: usize, blocks: &[(usize, usize, &Matrix<F>)]) -> Matrix<F> {
        let mut data: Vec<Vec<(usize, F)>> = vec![Vec::new(); rows];
        for (r0, c0, b) in blocks {
            for (i, row) in b.data.iter().enumerate() {
                data[r0 + i].extend(row.iter().map(|(j, v)| (c0 + j, v.clone())));
            }
        }
        Matrix::from_rows(cols, data)
    }

    /// First position where the two matrices differ.
    pub fn first_difference(&self, other: &Matrix<F>) -> Option<(usize, usize, F, F)> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Some((usize::MAX, usize::MAX, F::zero(), F::zero()));
        }
        for i in 0..self.rows {
            if self.data[i] == other.data[i] {
                continue;
            }
            let d = merge_rows(&self.data[i], &other.data[i], true);
            let j = d[0].0;
            return Some((i, j, self.get(i, j), other.get(i, j)));
        }
        None
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        self.data
            .iter()
            .map(|row| row.iter().fold(F::zero(), |acc, (j, a)| acc.add_ref(&a.mul_ref(&v[*j]))))
            .collect()
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.cols, self.data.iter().cloned()).rank()
    }

    /// Basis of {x : self x = 0}.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut e = Echelon::from_rows(self.cols, self.data.iter().cloned());
        e.reduce_fully();
        e.kernel_basis()
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        // rows of [A | I]
        let rows = self.data.iter().enumerate().map(|(i, r)| {
            let mut v = r.clone();
            v.push((n + i, F::one()));
            v
        });
        let mut e = Echelon::from_rows(2 * n, rows);
        if e.rank() != n || e.pivots.keys().any(|c| *c >= n) {
            return None;
        }
        e.reduce_fully();
        let mut data = vec![Vec::new(); n];
        for (c, row) in e.pivots {
            data[c] = row.into_iter().filter(|(j, _)| *j >= n).map(|(j, v)| (j - n, v)).collect();
        }
        Some(Matrix { rows: n, cols: n, data })
    }

    pub fn map_entries<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        let data = self
            .data
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, f(v))).filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }
}

fn merge_rows<F: Field>(a: &[(usize, F)], b: &[(usize, F)], sub: bool) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            let v = if sub { -b[j].1.clone() } else { b[j].1.clone() };
            out.push((cb, v));
            j += 1;
        } else {
            let v = if sub { a[i].1.sub_ref(&b[j].1) } else { a[i].1.add_ref(&b[j].1) };
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built incrementally: each stored row is monic at its pivot
/// column and has zeros in all earlier pivot columns.
pub struct Echelon<F> {
    cols: usize,
    pivots: BTreeMap<usize, Vec<(usize, F)>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, pivots: BTreeMap::new() }
    }

    pub fn from_rows(cols: usize, rows: impl IntoIterator<Item = Vec<(usize, F)>>) -> Self {
        let mut e = Echelon::new(cols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce a row against the stored pivots, returning the remainder.
    pub fn reduce(&self, row: Vec<(usize, F)>) -> Vec<(usize, F)> {
        let mut cur = row;
        let mut start = 0usize;
        loop {
            let hit = cur.iter().find(|(c, _)| *c >= start && self.pivots.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((c, v)) = hit else { return cur };
            let p = &self.pivots[&c];
            let scaled: Vec<(usize, F)> = p.iter().map(|(j, x)| (*j, x.mul_ref(&v))).collect();
            cur = merge_rows(&cur, &scaled, true);
            start = c + 1;
        }
    }

    /// Adds a row; returns whether it increased the rank.
    pub fn insert(&mut self, row: Vec<(usize, F)>) -> bool {
        let r = self.reduce(row);
        let Some((c, lead)) = r.first().cloned() else { return false };
        let inv = lead.inv().unwrap();
        let r: Vec<(usize, F)> = r.into_iter().map(|(j, x)| (j, x.mul_ref(&inv))).collect();
        self.pivots.insert(c, r);
        true
    }

    /// Back-substitute so that every pivot column is zero outside its own row.
    pub fn reduce_fully(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().cloned().collect();
        for (k, c) in cols.iter().enumerate() {
            let prow = self.pivots[c].clone();
            for c2 in &cols[k + 1..] {
                let row = self.pivots.get_mut(c2).unwrap();
                let v = match row.binary_search_by_key(c, |e| e.0) {
                    Ok(i) => row[i].1.clone(),
                    Err(_) => continue,
                };
                let scaled: Vec<(usize, F)> = prow.iter().map(|(j, x)| (*j, x.mul_ref(&v))).collect();
                *row = merge_rows(row, &scaled, true);
            }
        }
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().cloned().collect()
    }

    /// Requires `reduce_fully` first.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let mut out = Vec::new();
        for f in 0..self.cols {
            if self.pivots.contains_key(&f) {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (c, row) in &self.pivots {
                if let Ok(i) = row.binary_search_by_key(&f, |e| e.0) {
                    v[*c] = -row[i].1.clone();
                }
            }
            out.push(v);
        }
        out
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let row: Vec<(usize, F)> = v.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect();
        self.reduce(row).is_empty()
    }
}
