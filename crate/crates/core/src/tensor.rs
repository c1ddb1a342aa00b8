//! Graded objects, exact morphisms, and the strict monoidal product.
//!
//! Convention: the tensor product of basis vectors e_i (x) e_j of X (x) Y is
//! basis index i * dim Y + j, so the left factor is the outer (slow) index.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Field, FieldSpec};

#[derive(Clone, PartialEq, Eq)]
pub struct Obj {
    pub name: String,
    grades: Arc<Vec<i64>>,
    pub field: FieldSpec,
}

impl Obj {
    pub fn new(name: impl Into<String>, grades: Vec<i64>, field: FieldSpec) -> Self {
        Obj { name: name.into(), grades: Arc::new(grades), field }
    }

    pub fn unit(field: FieldSpec) -> Self {
        Obj::new("1", vec![0], field)
    }

    pub fn dim(&self) -> usize {
        self.grades.len()
    }

    pub fn grades(&self) -> &[i64] {
        &self.grades
    }

    pub fn is_unit(&self) -> bool {
        self.grades.as_slice() == [0]
    }

    /// Same boundary for composition purposes (names are labels only).
    pub fn same_shape(&self, o: &Obj) -> bool {
        self.field == o.field && self.grades == o.grades
    }

    /// Indices of the degree-zero basis vectors.
    pub fn degree_zero(&self) -> Vec<usize> {
        (0..self.dim()).filter(|i| self.grades[*i] == 0).collect()
    }

    pub fn power(&self, n: usize) -> Obj {
        tensor_obj(&vec![self.clone(); n], self.field).unwrap()
    }

    /// Graded dual: negated grades.
    pub fn dual(&self) -> Obj {
        Obj::new(format!("{}*", self.name), self.grades.iter().map(|g| -g).collect(), self.field)
    }
}

impl fmt::Debug for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(dim {}, {})", self.name, self.dim(), self.field)
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[dim {}]", self.name, self.dim())
    }
}

/// Tensor product of a list of objects; the empty list is the unit.
pub fn tensor_obj(xs: &[Obj], field: FieldSpec) -> Result<Obj> {
    let mut grades = vec![0i64];
    let mut names = Vec::new();
    for x in xs {
        if x.field != field {
            return Err(Error::FieldMismatch(x.field.to_string(), field.to_string()));
        }
        let mut g = Vec::with_capacity(grades.len() * x.dim());
        for a in &grades {
            for b in x.grades() {
                g.push(a + b);
            }
        }
        grades = g;
        if !x.is_unit() || x.name != "1" {
            names.push(x.name.clone());
        }
    }
    let name = if names.is_empty() { "1".to_string() } else { compress_name(&names) };
    Ok(Obj::new(name, grades, field))
}

fn compress_name(parts: &[String]) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        let base = &parts[i];
        if j - i > 1 && !base.contains('⊗') {
            out.push(format!("{base}^{}", j - i));
        } else {
            out.extend(parts[i..j].iter().cloned());
        }
        i = j;
    }
    out.join("⊗")
}

#[derive(Clone, PartialEq)]
pub struct Mor<F> {
    pub dom: Obj,
    pub cod: Obj,
    pub mat: Matrix<F>,
}

impl<F: Field> fmt::Debug for Mor<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mor({:?} -> {:?}, nnz {})", self.dom, self.cod, self.mat.nnz())
    }
}

impl<F: Field> Mor<F> {
    pub fn new(dom: Obj, cod: Obj, mat: Matrix<F>) -> Result<Self> {
        if mat.rows() != cod.dim() || mat.cols() != dom.dim() {
            return Err(Error::Shape(format!(
                "{}x{} matrix for {} -> {}",
                mat.rows(),
                mat.cols(),
                dom,
                cod
            )));
        }
        if dom.field != cod.field {
            return Err(Error::FieldMismatch(dom.field.to_string(), cod.field.to_string()));
        }
        Ok(Mor { dom, cod, mat })
    }

    pub fn from_dense(dom: Obj, cod: Obj, rows: Vec<Vec<F>>) -> Result<Self> {
        if rows.len() != cod.dim() || rows.iter().any(|r| r.len() != dom.dim()) {
            return Err(Error::Shape(format!("dense data does not fit {dom} -> {cod}")));
        }
        let mat = if dom.dim() == 0 { Matrix::zeros(cod.dim(), 0) } else { Matrix::from_dense(rows) };
        Mor::new(dom, cod, mat)
    }

    pub fn id(x: &Obj) -> Self {
        Mor { dom: x.clone(), cod: x.clone(), mat: Matrix::identity(x.dim()) }
    }

    pub fn zero(dom: &Obj, cod: &Obj) -> Self {
        Mor { dom: dom.clone(), cod: cod.clone(), mat: Matrix::zeros(cod.dim(), dom.dim()) }
    }

    /// Scalar multiple of the identity on the unit.
    pub fn scalar(c: F, field: FieldSpec) -> Self {
        let one = Obj::unit(field);
        Mor { dom: one.clone(), cod: one, mat: Matrix::diagonal(vec![c]) }
    }

    /// The map 1 -> X with the given coordinates.
    pub fn vector(x: &Obj, v: Vec<F>) -> Result<Self> {
        Mor::from_dense(Obj::unit(x.field), x.clone(), v.into_iter().map(|c| vec![c]).collect())
    }

    /// The map X -> 1 with the given coordinates.
    pub fn covector(x: &Obj, v: Vec<F>) -> Result<Self> {
        Mor::from_dense(x.clone(), Obj::unit(x.field), vec![v])
    }

    pub fn field(&self) -> FieldSpec {
        self.dom.field
    }

    pub fn then(&self, g: &Mor<F>) -> Result<Mor<F>> {
        compose(g, self)
    }

    /// Exact equality of the underlying matrices and boundary shapes.
    pub fn same(&self, o: &Mor<F>) -> bool {
        self.dom.same_shape(&o.dom) && self.cod.same_shape(&o.cod) && self.mat == o.mat
    }

    /// Human-readable description of the first differing entry.
    pub fn diff(&self, o: &Mor<F>) -> Option<String> {
        if !self.dom.same_shape(&o.dom) || !self.cod.same_shape(&o.cod) {
            return Some(format!("boundaries differ: {} -> {} vs {} -> {}", self.dom, self.cod, o.dom, o.cod));
        }
        self.mat
            .first_difference(&o.mat)
            .map(|(i, j, a, b)| format!("entry ({i},{j}): {a} vs {b}"))
    }

    pub fn pow(&self, k: usize) -> Mor<F> {
        Mor { dom: self.dom.clone(), cod: self.cod.clone(), mat: self.mat.pow(k) }
    }

    pub fn inverse(&self) -> Result<Mor<F>> {
        let m = self.mat.inverse().ok_or(Error::Singular)?;
        Ok(Mor { dom: self.cod.clone(), cod: self.dom.clone(), mat: m })
    }

    pub fn add(&self, o: &Mor<F>) -> Result<Mor<F>> {
        self.check_parallel(o)?;
        Ok(Mor { dom: self.dom.clone(), cod: self.cod.clone(), mat: self.mat.add(&o.mat) })
    }

    pub fn sub(&self, o: &Mor<F>) -> Result<Mor<F>> {
        self.check_parallel(o)?;
        Ok(Mor { dom: self.dom.clone(), cod: self.cod.clone(), mat: self.mat.sub(&o.mat) })
    }

    pub fn scale(&self, c: &F) -> Mor<F> {
        Mor { dom: self.dom.clone(), cod: self.cod.clone(), mat: self.mat.scale(c) }
    }

    fn check_parallel(&self, o: &Mor<F>) -> Result<()> {
        if !self.dom.same_shape(&o.dom) || !self.cod.same_shape(&o.cod) {
            return Err(Error::Shape(format!("{self:?} and {o:?} are not parallel")));
        }
        Ok(())
    }

    /// True if every nonzero entry maps a basis vector to one of equal grade.
    pub fn is_homogeneous(&self) -> bool {
        self.mat.entries().all(|(i, j, _)| self.cod.grades()[i] == self.dom.grades()[j])
    }

    /// Relabel boundaries with equal-shape objects.
    pub fn retyped(mut self, dom: &Obj, cod: &Obj) -> Mor<F> {
        debug_assert!(self.dom.same_shape(dom) && self.cod.same_shape(cod));
        self.dom = dom.clone();
        self.cod = cod.clone();
        self
    }
}

/// g . f
pub fn compose<F: Field>(g: &Mor<F>, f: &Mor<F>) -> Result<Mor<F>> {
    if !f.cod.same_shape(&g.dom) {
        return Err(Error::CompositionMismatch { cod: format!("{:?}", f.cod), dom: format!("{:?}", g.dom) });
    }
    Ok(Mor { dom: f.dom.clone(), cod: g.cod.clone(), mat: g.mat.mul(&f.mat) })
}

/// Compose a chain given in application order: `chain(&[f, g, h])` is h.g.f.
pub fn chain<F: Field>(maps: &[&Mor<F>]) -> Result<Mor<F>> {
    let mut it = maps.iter();
    let mut acc = (*it.next().expect("empty chain")).clone();
    for m in it {
        acc = compose(m, &acc)?;
    }
    Ok(acc)
}

pub fn tensor_mor<F: Field>(f: &Mor<F>, g: &Mor<F>) -> Result<Mor<F>> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch(f.field().to_string(), g.field().to_string()));
    }
    let field = f.field();
    Ok(Mor {
        dom: tensor_obj(&[f.dom.clone(), g.dom.clone()], field)?,
        cod: tensor_obj(&[f.cod.clone(), g.cod.clone()], field)?,
        mat: f.mat.kron(&g.mat),
    })
}

/// Tensor product of a list of morphisms; the empty list is id of the unit.
pub fn tensor_all<F: Field>(fs: &[&Mor<F>], field: FieldSpec) -> Result<Mor<F>> {
    let mut acc = Mor::id(&Obj::unit(field));
    for f in fs {
        acc = if acc.dom.is_unit() && acc.cod.is_unit() && acc.mat.is_identity() {
            (*f).clone()
        } else {
            tensor_mor(&acc, f)?
        };
    }
    Ok(acc)
}

/// Wire permutation: factor k of the source lands at position perm[k] of the target.
pub fn permutation_mor<F: Field>(xs: &[Obj], perm: &[usize], field: FieldSpec) -> Result<Mor<F>> {
    let n = xs.len();
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|p| *p >= n || std::mem::replace(&mut seen[*p], true)) {
        return Err(Error::InvalidPermutation(perm.to_vec()));
    }
    let mut ys = vec![xs[0].clone(); n];
    if n == 0 {
        return Ok(Mor::id(&Obj::unit(field)));
    }
    for k in 0..n {
        ys[perm[k]] = xs[k].clone();
    }
    let dom = tensor_obj(xs, field)?;
    let cod = tensor_obj(&ys, field)?;
    let dims: Vec<usize> = xs.iter().map(|x| x.dim()).collect();
    let ydims: Vec<usize> = ys.iter().map(|y| y.dim()).collect();
    let mut entries = Vec::with_capacity(dom.dim());
    let mut idx = vec![0usize; n];
    for src in 0..dom.dim() {
        // decode src into multi-index (left factor outer)
        let mut r = src;
        for k in (0..n).rev() {
            idx[k] = r % dims[k];
            r /= dims[k];
        }
        let mut dst = 0;
        let mut tgt = vec![0usize; n];
        for k in 0..n {
            tgt[perm[k]] = idx[k];
        }
        for k in 0..n {
            dst = dst * ydims[k] + tgt[k];
        }
        entries.push((dst, src, F::one()));
    }
    Mor::new(dom.clone(), cod.clone(), Matrix::from_triplets(cod.dim(), dom.dim(), entries))
}

/// Exact basis of the common kernel of the given linear forms on `unknown`.
/// Each constraint is a morphism out of `unknown`.
pub fn solve_linear<F: Field>(constraints: &[Mor<F>], unknown: &Obj) -> Result<Vec<Vec<F>>> {
    let mut e = crate::linalg::Echelon::new(unknown.dim());
    for c in constraints {
        if c.dom.dim() != unknown.dim() {
            return Err(Error::Shape(format!("constraint on {:?} for unknown {:?}", c.dom, unknown)));
        }
        if c.field() != unknown.field {
            return Err(Error::FieldMismatch(c.field().to_string(), unknown.field.to_string()));
        }
        for i in 0..c.mat.rows() {
            e.insert(c.mat.row(i).to_vec());
        }
    }
    e.reduce_fully();
    Ok(e.kernel_basis())
}
