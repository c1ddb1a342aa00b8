//! Exact scalars: the rationals and cyclotomic fields Q[t]/Phi_N.

use std::collections::HashMap;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
pub use num_traits::{One, Zero};
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FieldSpec {
    Rationals,
    Cyclotomic(u32),
}

impl FieldSpec {
    /// Orders 1 and 2 give the rationals.
    pub fn cyclotomic(order: u32) -> Result<FieldSpec> {
        match order {
            0 => Err(Error::Scalar("cyclotomic order must be positive".into())),
            1 | 2 => Ok(FieldSpec::Rationals),
            n => Ok(FieldSpec::Cyclotomic(n)),
        }
    }

    pub fn order(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 1,
            FieldSpec::Cyclotomic(n) => *n,
        }
    }

    /// Smallest field containing both.
    pub fn join(&self, other: &FieldSpec) -> FieldSpec {
        let l = self.order().lcm(&other.order());
        FieldSpec::cyclotomic(l).unwrap()
    }

    /// Degree over Q.
    pub fn degree(&self) -> usize {
        cyclotomic_poly(self.order()).len() - 1
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Cyclotomic(n) => write!(f, "Q(zeta_{n})"),
        }
    }
}

/// Canonical serialized form of a scalar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ScalarText {
    Rational(String),
    Coeffs(Vec<String>),
}

pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
    + 'static
{
    fn from_rational(r: &Rational) -> Self;

    /// Element with the given coefficients on 1, z, z^2, ... in `spec`.
    fn from_coeffs(spec: FieldSpec, coeffs: &[Rational]) -> Result<Self>;

    /// Whether this scalar type can hold elements of `spec`.
    fn supports(spec: FieldSpec) -> bool;

    fn inv(&self) -> Option<Self>;

    /// Smallest shipped field containing the element.
    fn spec(&self) -> FieldSpec;

    /// Coefficients with respect to the power basis of `spec`.
    fn coeffs_in(&self, spec: FieldSpec) -> Vec<Rational>;

    fn add_ref(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn pow_i(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            b = b.mul_ref(&b);
            k >>= 1;
        }
        Some(acc)
    }

    /// Smallest k > 0 with x^k = 1, if x is a root of unity.
    fn root_order(&self) -> Option<u32> {
        let bound = 2 * self.spec().order().max(1);
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = p.mul_ref(self);
        }
        None
    }

    fn to_text(&self, spec: FieldSpec) -> ScalarText {
        match spec {
            FieldSpec::Rationals => ScalarText::Rational(rational_text(&self.coeffs_in(spec)[0])),
            _ => ScalarText::Coeffs(self.coeffs_in(spec).iter().map(rational_text).collect()),
        }
    }

    /// Parse "p/q", "p", or a polynomial in z such as "1/2 - z^2".
    fn parse(s: &str, spec: FieldSpec) -> Result<Self> {
        let poly = parse_z_poly(s)?;
        if poly.len() > 1 && spec == FieldSpec::Rationals {
            return Err(Error::Scalar(format!("{s:?} needs a cyclotomic field")));
        }
        if spec == FieldSpec::Rationals {
            return Self::from_coeffs(spec, &poly);
        }
        // reduce an arbitrary z-polynomial into the field
        let red = poly_rem(&poly, &cyclotomic_poly(spec.order()));
        Self::from_coeffs(spec, &red)
    }
}

pub fn rational_text(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Scalar(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Scalar(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn parse_z_poly(s: &str) -> Result<Vec<Rational>> {
    let src = s.replace(' ', "");
    if src.is_empty() {
        return Err(Error::Scalar("empty scalar".into()));
    }
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, ch) in src.chars().enumerate() {
        if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') && !cur.ends_with('*') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (c, e) = match body.find('z') {
            None => (parse_rational(body)?, 0usize),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                let c = if c.is_empty() { Rational::one() } else { parse_rational(c)? };
                let rest = &body[pos + 1..];
                let e = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|x| x.parse().ok())
                        .ok_or_else(|| Error::Scalar(format!("bad exponent in {s:?}")))?
                };
                (c, e)
            }
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Rational::zero());
        }
        coeffs[e] += c * Rational::from_integer(BigInt::from(sign));
    }
    trim(&mut coeffs);
    if coeffs.is_empty() {
        coeffs.push(Rational::zero());
    }
    Ok(coeffs)
}

impl Field for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_coeffs(spec: FieldSpec, coeffs: &[Rational]) -> Result<Self> {
        if spec != FieldSpec::Rationals || coeffs.iter().skip(1).any(|c| !c.is_zero()) {
            return Err(Error::FieldMismatch(spec.to_string(), "Q".into()));
        }
        Ok(coeffs.first().cloned().unwrap_or_else(Rational::zero))
    }

    fn supports(spec: FieldSpec) -> bool {
        spec == FieldSpec::Rationals
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn coeffs_in(&self, spec: FieldSpec) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); spec.degree()];
        v[0] = self.clone();
        v
    }

    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }

    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
}

// ---------------------------------------------------------------------------
// cyclotomic fields

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &[Rational], m: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead = m[dm].clone();
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - dm];
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = r.last().unwrap() / &lead;
        for (i, mc) in m.iter().enumerate() {
            let t = &c * mc;
            r[k + i] -= t;
        }
        q[k] = c;
        trim(&mut r);
    }
    (q, r)
}

fn poly_rem(a: &[Rational], m: &[Rational]) -> Vec<Rational> {
    poly_divrem(a, m).1
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

/// Phi_n as a coefficient vector, low degree first.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Rational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // t^n - 1 = prod_{d | n} Phi_d
    let mut p = vec![Rational::zero(); n as usize + 1];
    p[0] = -Rational::one();
    p[n as usize] = Rational::one();
    for d in 1..n {
        if n % d == 0 {
            p = poly_divrem(&p, &cyclotomic_poly(d)).0;
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Element of Q(zeta_order), stored as reduced coefficients on powers of zeta.
/// Rational elements always carry order 1.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn rational(r: Rational) -> Self {
        let mut coeffs = vec![r];
        trim(&mut coeffs);
        Cyclotomic { order: 1, coeffs }
    }

    /// A primitive n-th root of unity.
    pub fn zeta(n: u32) -> Self {
        Self::from_poly(n, vec![Rational::zero(), Rational::one()])
    }

    fn from_poly(order: u32, poly: Vec<Rational>) -> Self {
        let order = order.max(1);
        let mut coeffs = poly_rem(&poly, &cyclotomic_poly(order));
        trim(&mut coeffs);
        if coeffs.len() <= 1 {
            return Cyclotomic { order: 1, coeffs };
        }
        Cyclotomic { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The same element expressed over Q(zeta_target); `order` must divide `target`.
    fn lifted(&self, target: u32) -> Vec<Rational> {
        if self.order == target || self.coeffs.len() <= 1 {
            return self.coeffs.clone();
        }
        let step = (target / self.order) as usize;
        let mut p = vec![Rational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            p[i * step] = c.clone();
        }
        let mut r = poly_rem(&p, &cyclotomic_poly(target));
        trim(&mut r);
        r
    }

    fn common(&self, o: &Self) -> (u32, Vec<Rational>, Vec<Rational>) {
        let n = self.order.lcm(&o.order);
        (n, self.lifted(n), o.lifted(n))
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, o: &Self) -> bool {
        if self.order == o.order {
            return self.coeffs == o.coeffs;
        }
        let (_, a, b) = self.common(o);
        a == b
    }
}

impl Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            if i == 0 {
                write!(f, "{}", rational_text(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}{mono}", rational_text(&a))?;
            }
        }
        Ok(())
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::rational(Rational::one())
    }
    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

impl Add for Cyclotomic {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl Sub for Cyclotomic {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl Mul for Cyclotomic {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Neg for Cyclotomic {
    type Output = Self;
    fn neg(self) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Div for Cyclotomic {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero")
    }
}

impl Field for Cyclotomic {
    fn from_rational(r: &Rational) -> Self {
        Cyclotomic::rational(r.clone())
    }

    fn from_coeffs(spec: FieldSpec, coeffs: &[Rational]) -> Result<Self> {
        if coeffs.len() > spec.degree().max(1) {
            return Err(Error::Scalar(format!(
                "{} coefficients given for {spec} of degree {}",
                coeffs.len(),
                spec.degree()
            )));
        }
        Ok(Cyclotomic::from_poly(spec.order(), coeffs.to_vec()))
    }

    fn supports(_: FieldSpec) -> bool {
        true
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order == 1 {
            return Some(Cyclotomic::rational(self.coeffs[0].recip()));
        }
        // extended Euclid in Q[t]: find s with s*a = 1 mod Phi
        let m = cyclotomic_poly(self.order);
        let (mut r0, mut r1) = (m.to_vec(), self.coeffs.clone());
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r1 is a nonzero constant since Phi is irreducible
        let c = r1[0].recip();
        let s: Vec<Rational> = s1.into_iter().map(|x| x * &c).collect();
        Some(Cyclotomic::from_poly(self.order, s))
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec::cyclotomic(self.order).unwrap()
    }

    fn coeffs_in(&self, spec: FieldSpec) -> Vec<Rational> {
        let n = spec.order();
        assert!(n % self.order == 0, "{self} does not lie in {spec}");
        let mut v = self.lifted(n);
        v.resize(spec.degree(), Rational::zero());
        v
    }

    fn add_ref(&self, o: &Self) -> Self {
        let (n, mut a, b) = self.common(o);
        if a.len() < b.len() {
            a.resize(b.len(), Rational::zero());
        }
        for (x, y) in a.iter_mut().zip(b.iter()) {
            *x += y;
        }
        Cyclotomic::from_poly(n, a)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&-o.clone())
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.order == 1 || o.order == 1 {
            let (c, p) = if self.order == 1 { (self, o) } else { (o, self) };
            let Some(c) = c.coeffs.first() else { return Self::zero() };
            return Cyclotomic::from_poly(p.order, p.coeffs.iter().map(|x| x * c).collect());
        }
        let (n, a, b) = self.common(o);
        Cyclotomic::from_poly(n, poly_mul(&a, &b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn cyclotomic_polys() {
        let p = cyclotomic_poly(6);
        assert_eq!(*p, vec![q("1"), q("-1"), q("1")]);
        assert_eq!(cyclotomic_poly(1).len(), 2);
        assert_eq!(FieldSpec::Cyclotomic(12).degree(), 4);
    }

    #[test]
    fn orders_one_and_two_are_rational() {
        assert_eq!(FieldSpec::cyclotomic(2).unwrap(), FieldSpec::Rationals);
        assert_eq!(Cyclotomic::zeta(2), -Cyclotomic::one());
        assert_eq!(Cyclotomic::zeta(2).order(), 1);
    }

    #[test]
    fn zeta3_arithmetic() {
        let z = Cyclotomic::zeta(3);
        let z2 = z.mul_ref(&z);
        assert_eq!(z2.mul_ref(&z), Cyclotomic::one());
        // 1 + z + z^2 = 0
        assert!(Cyclotomic::one().add_ref(&z).add_ref(&z2).is_zero());
        assert_eq!(z.inv().unwrap(), z2);
        assert_eq!(z.root_order(), Some(3));
        assert_eq!((-z.clone()).root_order(), Some(6));
    }

    #[test]
    fn mixed_orders_lift() {
        let z6 = Cyclotomic::zeta(6);
        let z3 = Cyclotomic::zeta(3);
        assert_eq!(z6.mul_ref(&z6), z3);
        let i = Cyclotomic::zeta(4);
        let w = i.mul_ref(&z3);
        assert_eq!(w.order(), 12);
        assert_eq!(w.root_order(), Some(12));
    }

    #[test]
    fn inverse_generic() {
        let a = Cyclotomic::from_coeffs(FieldSpec::Cyclotomic(5), &[q("2"), q("-1/3"), q("0"), q("7")]).unwrap();
        assert_eq!(a.mul_ref(&a.inv().unwrap()), Cyclotomic::one());
    }

    #[test]
    fn text_round_trip() {
        let spec = FieldSpec::Cyclotomic(3);
        let a = Cyclotomic::parse("1/2 - 3z", spec).unwrap();
        let ScalarText::Coeffs(c) = a.to_text(spec) else { panic!() };
        assert_eq!(c, vec!["1/2", "-3"]);
        // z^2 reduces to -1 - z
        let b = Cyclotomic::parse("z^2", spec).unwrap();
        assert_eq!(b, Cyclotomic::parse("-1-z", spec).unwrap());
        assert_eq!(b.to_string(), "-1 - z");
        assert_eq!(q("6/4").to_text(FieldSpec::Rationals), ScalarText::Rational("3/2".into()));
        assert_eq!(q("-4/2").to_text(FieldSpec::Rationals), ScalarText::Rational("-2".into()));
        assert!(Rational::parse("z", FieldSpec::Rationals).is_err());
        assert!(parse_rational("1/0").is_err());
    }
}
