//! Braidings and twists for the shipped graded categories.
//!
//! Crossing convention: every crossing drawn in a diagram is read as the
//! positive braiding tau_{X,Y}, where X is the strand entering from the left.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::{Field, FieldSpec};
use crate::tensor::{chain, tensor_mor, tensor_obj, Mor, Obj};

pub type BraidFn<F> = Arc<dyn Fn(&Obj, &Obj) -> Mor<F> + Send + Sync>;
pub type TwistFn<F> = Arc<dyn Fn(&Obj) -> Option<Mor<F>> + Send + Sync>;

#[derive(Clone)]
pub enum BraidingSpec<F> {
    Trivial,
    /// a (x) b -> q^{|a||b|} b (x) a
    GradedQ(F),
    /// Arbitrary provider; only used to exercise the checkers.
    Explicit(BraidFn<F>),
}

#[derive(Clone)]
pub enum TwistSpec<F> {
    Identity,
    /// a -> q^{|a|^2} a
    GradedQ(F),
    Explicit(TwistFn<F>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone)]
pub struct CategoryCtx<F> {
    pub field: FieldSpec,
    pub braiding: BraidingSpec<F>,
    pub twist: TwistSpec<F>,
}

impl<F: Field> fmt::Debug for CategoryCtx<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = match &self.braiding {
            BraidingSpec::Trivial => "trivial".to_string(),
            BraidingSpec::GradedQ(q) => format!("graded_q({q})"),
            BraidingSpec::Explicit(_) => "explicit".to_string(),
        };
        let t = match &self.twist {
            TwistSpec::Identity => "identity".to_string(),
            TwistSpec::GradedQ(q) => format!("graded_q({q})"),
            TwistSpec::Explicit(_) => "explicit".to_string(),
        };
        write!(f, "CategoryCtx({}, braiding {b}, twist {t})", self.field)
    }
}

struct Powers<'a, F> {
    q: &'a F,
    cache: HashMap<i64, F>,
}

impl<'a, F: Field> Powers<'a, F> {
    fn new(q: &'a F) -> Self {
        Powers { q, cache: HashMap::new() }
    }

    fn get(&mut self, e: i64) -> F {
        let q = self.q;
        self.cache.entry(e).or_insert_with(|| q.pow_i(e).expect("q must be invertible")).clone()
    }
}

/// a (x) b -> c(|a|,|b|) b (x) a
fn graded_swap<F: Field>(x: &Obj, y: &Obj, mut coef: impl FnMut(i64, i64) -> F) -> Mor<F> {
    let field = x.field;
    let dom = tensor_obj(&[x.clone(), y.clone()], field).unwrap();
    let cod = tensor_obj(&[y.clone(), x.clone()], field).unwrap();
    let (dx, dy) = (x.dim(), y.dim());
    let mut data = vec![Vec::new(); dx * dy];
    for i in 0..dx {
        for j in 0..dy {
            data[j * dx + i].push((i * dy + j, coef(x.grades()[i], y.grades()[j])));
        }
    }
    Mor::new(dom, cod, Matrix::from_rows(dx * dy, data)).unwrap()
}

impl<F: Field> CategoryCtx<F> {
    pub fn new(field: FieldSpec, braiding: BraidingSpec<F>, twist: TwistSpec<F>) -> Self {
        CategoryCtx { field, braiding, twist }
    }

    pub fn trivial(field: FieldSpec) -> Self {
        CategoryCtx::new(field, BraidingSpec::Trivial, TwistSpec::Identity)
    }

    pub fn graded(q: F) -> Self {
        let field = q.spec();
        CategoryCtx::new(field, BraidingSpec::GradedQ(q.clone()), TwistSpec::GradedQ(q))
    }

    pub fn unit(&self) -> Obj {
        Obj::unit(self.field)
    }

    fn check_field(&self, x: &Obj) -> Result<()> {
        if x.field != self.field {
            return Err(Error::FieldMismatch(x.field.to_string(), self.field.to_string()));
        }
        Ok(())
    }

    /// tau_{X,Y}: X (x) Y -> Y (x) X
    pub fn braiding(&self, x: &Obj, y: &Obj) -> Result<Mor<F>> {
        self.check_field(x)?;
        self.check_field(y)?;
        Ok(match &self.braiding {
            BraidingSpec::Trivial => graded_swap(x, y, |_, _| F::one()),
            BraidingSpec::GradedQ(q) => {
                let mut p = Powers::new(q);
                graded_swap(x, y, |a, b| p.get(a * b))
            }
            BraidingSpec::Explicit(f) => f(x, y),
        })
    }

    /// tau_{X,Y}^{-1}: Y (x) X -> X (x) Y
    pub fn braiding_inverse(&self, x: &Obj, y: &Obj) -> Result<Mor<F>> {
        self.check_field(x)?;
        self.check_field(y)?;
        match &self.braiding {
            BraidingSpec::Trivial => Ok(graded_swap(y, x, |_, _| F::one())),
            BraidingSpec::GradedQ(q) => {
                let mut p = Powers::new(q);
                Ok(graded_swap(y, x, |a, b| p.get(-a * b)))
            }
            BraidingSpec::Explicit(f) => f(x, y).inverse(),
        }
    }

    pub fn twist(&self, x: &Obj) -> Result<Mor<F>> {
        self.check_field(x)?;
        match &self.twist {
            TwistSpec::Identity => Ok(Mor::id(x)),
            TwistSpec::GradedQ(q) => {
                let mut p = Powers::new(q);
                let d = x.grades().iter().map(|g| p.get(g * g)).collect();
                Mor::new(x.clone(), x.clone(), Matrix::diagonal(d))
            }
            TwistSpec::Explicit(f) => f(x).ok_or_else(|| Error::MissingTwist(format!("{x:?}"))),
        }
    }

    pub fn twist_inverse(&self, x: &Obj) -> Result<Mor<F>> {
        match &self.twist {
            TwistSpec::GradedQ(q) => {
                let mut p = Powers::new(q);
                let d = x.grades().iter().map(|g| p.get(-g * g)).collect();
                Mor::new(x.clone(), x.clone(), Matrix::diagonal(d))
            }
            _ => self.twist(x)?.inverse(),
        }
    }

    /// theta_{X (x) Y} = (theta_X (x) theta_Y) tau_{Y,X} tau_{X,Y}
    pub fn check_twist_axiom(&self, x: &Obj, y: &Obj) -> bool {
        let run = || -> Result<bool> {
            let xy = tensor_obj(&[x.clone(), y.clone()], self.field)?;
            let lhs = self.twist(&xy)?;
            let rhs = chain(&[
                &self.braiding(x, y)?,
                &self.braiding(y, x)?,
                &tensor_mor(&self.twist(x)?, &self.twist(y)?)?,
            ])?;
            Ok(lhs.same(&rhs))
        };
        run().unwrap_or(false)
    }

    /// Hexagons on all triples of `gens`, invertibility on all pairs, and
    /// naturality on all pairs of `test_mors`.
    pub fn check_braiding_axioms(&self, gens: &[Obj], test_mors: &[Mor<F>]) -> Report {
        let mut rep = Report::new("braiding");
        let f = self.field;
        let id = Mor::<F>::id;
        let cmp = |rep: &mut Report, name: String, lhs: Result<Mor<F>>, rhs: Result<Mor<F>>| match (lhs, rhs) {
            (Ok(l), Ok(r)) => rep.push(Check::new(name, l.same(&r), l.diff(&r))),
            (Err(e), _) | (_, Err(e)) => rep.push(Check::fail(name, e.to_string())),
        };
        for (a, x) in gens.iter().enumerate() {
            for (b, y) in gens.iter().enumerate() {
                let inv = (|| -> Result<(Mor<F>, Mor<F>)> {
                    let t = self.braiding(x, y)?;
                    let ti = self.braiding_inverse(x, y)?;
                    Ok((chain(&[&t, &ti])?, id(&tensor_obj(&[x.clone(), y.clone()], f)?)))
                })();
                match inv {
                    Ok((l, r)) => rep.push(Check::new(format!("invertible[{a},{b}]"), l.same(&r), l.diff(&r))),
                    Err(e) => rep.push(Check::fail(format!("invertible[{a},{b}]"), e.to_string())),
                }
                for (c, z) in gens.iter().enumerate() {
                    // (br1) tau_{X (x) Y, Z} = (tau_{X,Z} (x) id_Y)(id_X (x) tau_{Y,Z})
                    let xy = tensor_obj(&[x.clone(), y.clone()], f).unwrap();
                    let yz = tensor_obj(&[y.clone(), z.clone()], f).unwrap();
                    let lhs = self.braiding(&xy, z);
                    let rhs = (|| {
                        chain(&[
                            &tensor_mor(&id(x), &self.braiding(y, z)?)?,
                            &tensor_mor(&self.braiding(x, z)?, &id(y))?,
                        ])
                    })();
                    cmp(&mut rep, format!("hexagon1[{a},{b},{c}]"), lhs, rhs);
                    // (br2) tau_{X, Y (x) Z} = (id_Y (x) tau_{X,Z})(tau_{X,Y} (x) id_Z)
                    let lhs = self.braiding(x, &yz);
                    let rhs = (|| {
                        chain(&[
                            &tensor_mor(&self.braiding(x, y)?, &id(z))?,
                            &tensor_mor(&id(y), &self.braiding(x, z)?)?,
                        ])
                    })();
                    cmp(&mut rep, format!("hexagon2[{a},{b},{c}]"), lhs, rhs);
                }
            }
        }
        for (a, g) in test_mors.iter().enumerate() {
            for (b, h) in test_mors.iter().enumerate() {
                let lhs = (|| chain(&[&tensor_mor(g, h)?, &self.braiding(&g.cod, &h.cod)?]))();
                let rhs = (|| chain(&[&self.braiding(&g.dom, &h.dom)?, &tensor_mor(h, g)?]))();
                cmp(&mut rep, format!("naturality[{a},{b}]"), lhs, rhs);
            }
            let lhs = (|| chain(&[g, &self.twist(&g.cod)?]))();
            let rhs = (|| chain(&[&self.twist(&g.dom)?, g]))();
            cmp(&mut rep, format!("twist_naturality[{a}]"), lhs, rhs);
        }
        rep
    }

    /// Twist of X from the graded duality data: the left version is
    /// (id (x) ev~)(tau_{X,X} (x) id)(id (x) coev), the right one its mirror.
    pub fn twist_from_duality(&self, side: Side, x: &Obj) -> Result<Mor<F>> {
        if matches!(self.braiding, BraidingSpec::Explicit(_)) {
            return Err(Error::DualityUnavailable);
        }
        self.check_field(x)?;
        let f = self.field;
        let xd = x.dual();
        let n = x.dim();
        let unit = self.unit();
        let id_x = Mor::<F>::id(x);
        let id_xd = Mor::<F>::id(&xd);
        // basis pairing e_i (x) e^j -> delta_ij, both orders
        let pairing = |first: &Obj, second: &Obj| -> Result<Mor<F>> {
            let dom = tensor_obj(&[first.clone(), second.clone()], f)?;
            let d = (0..n).map(|i| (0, i * n + i, F::one()));
            Mor::new(dom.clone(), unit.clone(), Matrix::from_triplets(1, dom.dim(), d))
        };
        let copairing = |first: &Obj, second: &Obj| -> Result<Mor<F>> {
            let cod = tensor_obj(&[first.clone(), second.clone()], f)?;
            let d = (0..n).map(|i| (i * n + i, 0, F::one()));
            Mor::new(unit.clone(), cod.clone(), Matrix::from_triplets(cod.dim(), 1, d))
        };
        let out = match side {
            Side::Left => {
                let coev = copairing(x, &xd)?;
                let ev_t = pairing(x, &xd)?;
                chain(&[
                    &tensor_mor(&id_x, &coev)?,
                    &tensor_mor(&self.braiding(x, x)?, &id_xd)?,
                    &tensor_mor(&id_x, &ev_t)?,
                ])?
            }
            Side::Right => {
                let coev_t = copairing(&xd, x)?;
                let ev = pairing(&xd, x)?;
                chain(&[
                    &tensor_mor(&coev_t, &id_x)?,
                    &tensor_mor(&id_xd, &self.braiding(x, x)?)?,
                    &tensor_mor(&ev, &id_x)?,
                ])?
            }
        };
        Ok(out.retyped(x, x))
    }
}
