//! Generator words for the paracyclic category, their normal forms, and
//! truncated paracocyclic objects.
//!
//! Word text: `d(n,i)`, `s(n,j)`, `t(n)`, `t^-1(n)` joined by `.` and read
//! right to left, so `t(2).d(2,0)` applies `d(2,0)` first.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::braided::CategoryCtx;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::{Field, FieldSpec};
use crate::tensor::{compose, Mor, Obj};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    /// level n-1 -> n, 0 <= i <= n
    Coface { n: usize, i: usize },
    /// level n+1 -> n, 0 <= j <= n
    Codegen { n: usize, j: usize },
    Tau { n: usize },
    TauInv { n: usize },
}

impl Gen {
    pub fn source(&self) -> usize {
        match *self {
            Gen::Coface { n, .. } => n - 1,
            Gen::Codegen { n, .. } => n + 1,
            Gen::Tau { n } | Gen::TauInv { n } => n,
        }
    }

    pub fn target(&self) -> usize {
        match *self {
            Gen::Coface { n, .. } | Gen::Codegen { n, .. } | Gen::Tau { n } | Gen::TauInv { n } => n,
        }
    }

    fn valid(&self) -> bool {
        match *self {
            Gen::Coface { n, i } => n >= 1 && i <= n,
            Gen::Codegen { n, j } => j <= n,
            _ => true,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gen::Coface { n, i } => write!(f, "d({n},{i})"),
            Gen::Codegen { n, j } => write!(f, "s({n},{j})"),
            Gen::Tau { n } => write!(f, "t({n})"),
            Gen::TauInv { n } => write!(f, "t^-1({n})"),
        }
    }
}

/// A composable word; `gens` is in application order (first applied first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenWord {
    pub source: usize,
    pub gens: Vec<Gen>,
}

impl GenWord {
    pub fn new(source: usize, gens: Vec<Gen>) -> Result<Self> {
        let w = GenWord { source, gens };
        w.validate()?;
        Ok(w)
    }

    pub fn empty(level: usize) -> Self {
        GenWord { source: level, gens: Vec::new() }
    }

    pub fn target(&self) -> usize {
        self.gens.last().map_or(self.source, |g| g.target())
    }

    pub fn max_level(&self) -> usize {
        self.gens.iter().map(|g| g.source().max(g.target())).max().unwrap_or(self.source)
    }

    fn validate(&self) -> Result<()> {
        let mut lvl = self.source;
        for (k, g) in self.gens.iter().enumerate() {
            if !g.valid() {
                return Err(Error::Word(format!("index out of range in {g}")));
            }
            if g.source() != lvl {
                return Err(Error::Word(format!("{g} at position {k} expects level {}, got {lvl}", g.source())));
            }
            lvl = g.target();
        }
        Ok(())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Word("empty word".into()));
        }
        let mut gens = Vec::new();
        for tok in s.split('.').rev() {
            gens.push(parse_gen(tok.trim())?);
        }
        GenWord::new(gens[0].source(), gens)
    }

    /// Identity word at the given level when `s` is `id(n)`.
    pub fn parse_at(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix("id(").and_then(|r| r.strip_suffix(')')) {
            let n = rest.trim().parse().map_err(|_| Error::Word(format!("bad level in {t:?}")))?;
            return Ok(GenWord::empty(n));
        }
        GenWord::parse(t)
    }

    /// Concatenate: `self` first, then `next`.
    pub fn then(&self, next: &GenWord) -> Result<GenWord> {
        let mut gens = self.gens.clone();
        gens.extend(next.gens.iter().cloned());
        GenWord::new(self.source, gens)
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "id({})", self.source);
        }
        let parts: Vec<String> = self.gens.iter().rev().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

fn parse_gen(tok: &str) -> Result<Gen> {
    let bad = || Error::Word(format!("cannot parse generator {tok:?}"));
    let open = tok.find('(').ok_or_else(bad)?;
    let head = &tok[..open];
    let args = tok[open + 1..].strip_suffix(')').ok_or_else(bad)?;
    let nums: Vec<usize> = args
        .split(',')
        .map(|a| a.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad())?;
    let g = match (head, nums.as_slice()) {
        ("d", [n, i]) => Gen::Coface { n: *n, i: *i },
        ("s", [n, j]) => Gen::Codegen { n: *n, j: *j },
        ("t", [n]) => Gen::Tau { n: *n },
        ("t^-1", [n]) => Gen::TauInv { n: *n },
        _ => return Err(bad()),
    };
    if !g.valid() {
        return Err(Error::Word(format!("index out of range in {tok:?}")));
    }
    Ok(g)
}

/// delta_{i_1} ... delta_{i_s} sigma_{j_1} ... sigma_{j_t} tau^k, composed right
/// to left, with i strictly decreasing, j strictly increasing and tau^k acting
/// at the source level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    pub source: usize,
    pub target: usize,
    pub cofaces: Vec<usize>,
    pub codegens: Vec<usize>,
    pub tau_power: i64,
}

impl NormalForm {
    pub fn to_word(&self) -> GenWord {
        let mut gens = Vec::new();
        let n = self.source;
        let g = if self.tau_power >= 0 { Gen::Tau { n } } else { Gen::TauInv { n } };
        gens.extend(std::iter::repeat(g).take(self.tau_power.unsigned_abs() as usize));
        let mut lvl = n;
        for j in self.codegens.iter().rev() {
            lvl -= 1;
            gens.push(Gen::Codegen { n: lvl, j: *j });
        }
        for i in self.cofaces.iter().rev() {
            lvl += 1;
            gens.push(Gen::Coface { n: lvl, i: *i });
        }
        GenWord { source: self.source, gens }
    }
}

/// Monotone map [0..=src] -> [0..=tgt] as its value list.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Monotone {
    tgt: usize,
    vals: Vec<usize>,
}

impl Monotone {
    fn id(n: usize) -> Self {
        Monotone { tgt: n, vals: (0..=n).collect() }
    }

    /// Apply a simplicial generator after self.
    fn push(&mut self, g: Gen) {
        match g {
            Gen::Coface { i, .. } => {
                self.vals.iter_mut().for_each(|v| {
                    if *v >= i {
                        *v += 1
                    }
                });
                self.tgt += 1;
            }
            Gen::Codegen { j, .. } => {
                self.vals.iter_mut().for_each(|v| {
                    if *v > j {
                        *v -= 1
                    }
                });
                self.tgt -= 1;
            }
            _ => unreachable!("not simplicial"),
        }
    }

    /// Missing targets decreasing, repeated positions increasing.
    fn factor(&self) -> (Vec<usize>, Vec<usize>) {
        let mut cof: Vec<usize> = (0..=self.tgt).filter(|y| !self.vals.contains(y)).collect();
        cof.reverse();
        let cod = (0..self.vals.len().saturating_sub(1)).filter(|j| self.vals[*j] == self.vals[j + 1]).collect();
        (cof, cod)
    }

    /// Simplicial generators in application order.
    fn gens(&self) -> Vec<Gen> {
        let (cof, cod) = self.factor();
        let mut lvl = self.vals.len() - 1;
        let mut out = Vec::new();
        for j in cod.iter().rev() {
            lvl -= 1;
            out.push(Gen::Codegen { n: lvl, j: *j });
        }
        for i in cof.iter().rev() {
            lvl += 1;
            out.push(Gen::Coface { n: lvl, i: *i });
        }
        out
    }
}

/// Push one tau (or inverse) at the target of `g` through it: returns the new
/// generator and the signed number of taus now sitting at its source.
fn push_tau(g: Gen, inverse: bool) -> (Gen, i64) {
    match (g, inverse) {
        (Gen::Coface { n, i: 0 }, false) => (Gen::Coface { n, i: n }, 0),
        (Gen::Coface { n, i }, false) => (Gen::Coface { n, i: i - 1 }, 1),
        (Gen::Codegen { n, j: 0 }, false) => (Gen::Codegen { n, j: n }, 2),
        (Gen::Codegen { n, j }, false) => (Gen::Codegen { n, j: j - 1 }, 1),
        (Gen::Coface { n, i }, true) if i == n => (Gen::Coface { n, i: 0 }, 0),
        (Gen::Coface { n, i }, true) => (Gen::Coface { n, i: i + 1 }, -1),
        (Gen::Codegen { n, j }, true) if j == n => (Gen::Codegen { n, j: 0 }, -2),
        (Gen::Codegen { n, j }, true) => (Gen::Codegen { n, j: j + 1 }, -1),
        _ => unreachable!("not simplicial"),
    }
}

/// Rewrite tau^e . (simplicial gens) into (simplicial gens') . tau^{e'}.
fn push_through(gens: &[Gen], e: i64) -> (Vec<Gen>, i64) {
    let mut out = gens.to_vec();
    let mut pending = e;
    for g in out.iter_mut().rev() {
        let inverse = pending < 0;
        let mut acc = 0i64;
        for _ in 0..pending.unsigned_abs() {
            let (g2, k) = push_tau(*g, inverse);
            *g = g2;
            acc += k;
        }
        pending = acc;
    }
    (out, pending)
}

pub fn normalize(word: &GenWord) -> Result<NormalForm> {
    word.validate()?;
    let mut simp = Monotone::id(word.source);
    let mut k: i64 = 0;
    for g in &word.gens {
        match *g {
            Gen::Coface { .. } | Gen::Codegen { .. } => simp.push(*g),
            Gen::Tau { .. } | Gen::TauInv { .. } => {
                let e = if matches!(g, Gen::Tau { .. }) { 1 } else { -1 };
                let (gs, extra) = push_through(&simp.gens(), e);
                let mut m = Monotone::id(word.source);
                gs.into_iter().for_each(|g| m.push(g));
                simp = m;
                k += extra;
            }
        }
    }
    let (cofaces, codegens) = simp.factor();
    Ok(NormalForm { source: word.source, target: simp.tgt, cofaces, codegens, tau_power: k })
}

/// Images of the generators of the paracyclic category, up to level `n_max`.
#[derive(Clone)]
pub struct ParaCocyclicData<F> {
    pub ctx: CategoryCtx<F>,
    pub levels: Vec<Obj>,
    /// `cofaces[n][i]`: level n-1 -> n (empty at n = 0).
    pub cofaces: Vec<Vec<Mor<F>>>,
    /// `codegens[n][j]`: level n+1 -> n, present for n < n_max.
    pub codegens: Vec<Vec<Mor<F>>>,
    pub tau: Vec<Mor<F>>,
    tau_inv: Vec<Mor<F>>,
    pub n_max: usize,
}

impl<F: Field> fmt::Debug for ParaCocyclicData<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParaCocyclicData(levels {:?})", self.levels.iter().map(|l| l.dim()).collect::<Vec<_>>())
    }
}

impl<F: Field> ParaCocyclicData<F> {
    pub fn new(
        ctx: CategoryCtx<F>,
        levels: Vec<Obj>,
        cofaces: Vec<Vec<Mor<F>>>,
        codegens: Vec<Vec<Mor<F>>>,
        tau: Vec<Mor<F>>,
    ) -> Result<Self> {
        let n_max = levels.len().checked_sub(1).ok_or_else(|| Error::Shape("no levels".into()))?;
        if cofaces.len() != n_max + 1 || codegens.len() != n_max + 1 || tau.len() != n_max + 1 {
            return Err(Error::Shape("generator tables must have one entry per level".into()));
        }
        let fits = |m: &Mor<F>, s: usize, t: usize| m.dom.same_shape(&levels[s]) && m.cod.same_shape(&levels[t]);
        for n in 0..=n_max {
            let want = if n == 0 { 0 } else { n + 1 };
            if cofaces[n].len() != want || !cofaces[n].iter().all(|m| fits(m, n - 1, n)) {
                return Err(Error::Shape(format!("cofaces at level {n}")));
            }
            let want = if n < n_max { n + 1 } else { 0 };
            if codegens[n].len() != want || !codegens[n].iter().all(|m| fits(m, n + 1, n)) {
                return Err(Error::Shape(format!("codegeneracies at level {n}")));
            }
            if !fits(&tau[n], n, n) {
                return Err(Error::Shape(format!("tau at level {n}")));
            }
        }
        let tau_inv = tau.par_iter().map(|t| t.inverse()).collect::<Result<Vec<_>>>()?;
        Ok(ParaCocyclicData { ctx, levels, cofaces, codegens, tau, tau_inv, n_max })
    }

    pub fn tau_inverse(&self, n: usize) -> &Mor<F> {
        &self.tau_inv[n]
    }

    pub fn generator(&self, g: Gen) -> Result<&Mor<F>> {
        let top = g.source().max(g.target());
        if top > self.n_max || (matches!(g, Gen::Codegen { .. }) && g.target() >= self.n_max) {
            return Err(Error::Truncation { level: top, max: self.n_max });
        }
        Ok(match g {
            Gen::Coface { n, i } => &self.cofaces[n][i],
            Gen::Codegen { n, j } => &self.codegens[n][j],
            Gen::Tau { n } => &self.tau[n],
            Gen::TauInv { n } => &self.tau_inv[n],
        })
    }

    /// A truncation to fewer levels.
    pub fn truncate(&self, n_max: usize) -> Self {
        let k = n_max.min(self.n_max);
        let mut codegens = self.codegens[..=k].to_vec();
        codegens[k].clear();
        ParaCocyclicData {
            ctx: self.ctx.clone(),
            levels: self.levels[..=k].to_vec(),
            cofaces: self.cofaces[..=k].to_vec(),
            codegens,
            tau: self.tau[..=k].to_vec(),
            tau_inv: self.tau_inv[..=k].to_vec(),
            n_max: k,
        }
    }
}

pub fn evaluate_word<F: Field>(p: &ParaCocyclicData<F>, word: &GenWord) -> Result<Mor<F>> {
    word.validate()?;
    if word.source > p.n_max {
        return Err(Error::Truncation { level: word.source, max: p.n_max });
    }
    let mut acc = Mor::id(&p.levels[word.source]);
    for g in &word.gens {
        acc = compose(p.generator(*g)?, &acc)?;
    }
    Ok(acc)
}

pub fn evaluate_normal_form<F: Field>(p: &ParaCocyclicData<F>, nf: &NormalForm) -> Result<Mor<F>> {
    let n = nf.source;
    if n > p.n_max {
        return Err(Error::Truncation { level: n, max: p.n_max });
    }
    let t = if nf.tau_power >= 0 { &p.tau[n] } else { &p.tau_inv[n] };
    let mut acc = t.pow(nf.tau_power.unsigned_abs() as usize);
    let simp = NormalForm { tau_power: 0, ..nf.clone() };
    for g in simp.to_word().gens {
        acc = compose(p.generator(g)?, &acc)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    SR,
    PCR,
    CC,
    TwistedCC,
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        match s.trim() {
            "SR" => Ok(Family::SR),
            "PCR" => Ok(Family::PCR),
            "CC" => Ok(Family::CC),
            "TwistedCC" => Ok(Family::TwistedCC),
            o => Err(Error::Word(format!("unknown relation family {o:?}"))),
        }
    }

    pub const ALL: [Family; 4] = [Family::SR, Family::PCR, Family::CC, Family::TwistedCC];
}

/// One relation instance: both sides as words (or a twist on the right).
struct Instance {
    level: usize,
    family: Family,
    id: String,
    lhs: Vec<Gen>,
    rhs: Vec<Gen>,
    src: usize,
    twist_rhs: bool,
}

fn instances(n_max: usize, up_to: usize, families: &[Family]) -> Vec<Instance> {
    use Gen::*;
    let top = up_to.min(n_max);
    let has = |f: Family| families.contains(&f);
    let mut out = Vec::new();
    let mut add = |level: usize, family: Family, id: String, src: usize, lhs: Vec<Gen>, rhs: Vec<Gen>| {
        let w = GenWord { source: src, gens: lhs.clone() };
        if w.max_level() <= top && (GenWord { source: src, gens: rhs.clone() }).max_level() <= top {
            let twist_rhs = family == Family::TwistedCC;
            out.push(Instance { level, family, id, lhs, rhs, src, twist_rhs });
        }
    };
    for n in 0..=top {
        if has(Family::SR) {
            // d^{n+1}_j d^n_i = d^{n+1}_i d^n_{j-1}, i < j
            if n >= 1 {
                for j in 0..=n + 1 {
                    for i in 0..j {
                        add(n, Family::SR, format!("dd i={i} j={j}"), n - 1,
                            vec![Coface { n, i }, Coface { n: n + 1, i: j }],
                            vec![Coface { n, i: j - 1 }, Coface { n: n + 1, i }]);
                    }
                }
            }
            // s^n_j s^{n+1}_i = s^n_i s^{n+1}_{j+1}, i <= j
            for j in 0..=n {
                for i in 0..=j {
                    add(n, Family::SR, format!("ss i={i} j={j}"), n + 2,
                        vec![Codegen { n: n + 1, j: i }, Codegen { n, j }],
                        vec![Codegen { n: n + 1, j: j + 1 }, Codegen { n, j: i }]);
                }
            }
            // s^n_j d^{n+1}_i
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = vec![Coface { n: n + 1, i }, Codegen { n, j }];
                    let rhs = if i < j {
                        vec![Codegen { n: n - 1, j: j - 1 }, Coface { n, i }]
                    } else if i == j || i == j + 1 {
                        vec![]
                    } else {
                        vec![Codegen { n: n - 1, j }, Coface { n, i: i - 1 }]
                    };
                    add(n, Family::SR, format!("sd i={i} j={j}"), n, lhs, rhs);
                }
            }
        }
        if has(Family::PCR) {
            if n >= 1 {
                for i in 1..=n {
                    add(n, Family::PCR, format!("td i={i}"), n - 1,
                        vec![Coface { n, i }, Tau { n }],
                        vec![Tau { n: n - 1 }, Coface { n, i: i - 1 }]);
                }
                add(n, Family::PCR, "td0".into(), n - 1, vec![Coface { n, i: 0 }, Tau { n }], vec![Coface { n, i: n }]);
            }
            for i in 1..=n {
                add(n, Family::PCR, format!("ts i={i}"), n + 1,
                    vec![Codegen { n, j: i }, Tau { n }],
                    vec![Tau { n: n + 1 }, Codegen { n, j: i - 1 }]);
            }
            add(n, Family::PCR, "ts0".into(), n + 1,
                vec![Codegen { n, j: 0 }, Tau { n }],
                vec![Tau { n: n + 1 }, Tau { n: n + 1 }, Codegen { n, j: n }]);
        }
        if has(Family::CC) {
            add(n, Family::CC, "cc".into(), n, vec![Tau { n }; n + 1], vec![]);
        }
        if has(Family::TwistedCC) {
            add(n, Family::TwistedCC, "twisted_cc".into(), n, vec![Tau { n }; n + 1], vec![]);
        }
    }
    out.sort_by(|a, b| (a.level, a.family).cmp(&(b.level, b.family)));
    out
}

/// Every instance of the chosen families with all levels at most
/// min(up_to, n_max). Checks are listed by level, then family, then indices.
pub fn check_relations<F: Field>(p: &ParaCocyclicData<F>, up_to: usize, families: &[Family]) -> Report {
    let inst = instances(p.n_max, up_to, families);
    let checks: Vec<Check> = inst
        .par_iter()
        .map(|ins| {
            let id = format!("n={} {:?} {}", ins.level, ins.family, ins.id);
            let run = || -> Result<(Mor<F>, Mor<F>)> {
                let l = evaluate_word(p, &GenWord { source: ins.src, gens: ins.lhs.clone() })?;
                let r = if ins.twist_rhs {
                    p.ctx.twist(&p.levels[ins.src])?
                } else {
                    evaluate_word(p, &GenWord { source: ins.src, gens: ins.rhs.clone() })?
                };
                Ok((l, r))
            };
            match run() {
                Ok((l, r)) => Check::new(id, l.same(&r), l.diff(&r)),
                Err(e) => Check::fail(id, e.to_string()),
            }
        })
        .collect();
    let mut rep = Report::new("relations");
    checks.into_iter().for_each(|c| rep.push(c));
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// Hom(1, P_n) with postcomposition: a cocyclic module.
    FromUnit,
    /// Hom(P_n, 1) with precomposition: a cyclic module.
    ToUnit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variance {
    /// cofaces X^{n-1} -> X^n, codegeneracies X^{n+1} -> X^n
    Cocyclic,
    /// faces X_n -> X_{n-1}, degeneracies X_n -> X_{n+1}
    Cyclic,
}

/// A (co)cyclic vector space, truncated. For `Cocyclic`, `up[n][i]` are the
/// cofaces into level n and `down[n][j]` the codegeneracies out of level n+1.
/// For `Cyclic`, `down[n][i]` are the faces out of level n and `up[n][j]` the
/// degeneracies out of level n.
#[derive(Clone, Debug)]
pub struct CyclicModuleData<F> {
    pub variance: Variance,
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    pub up: Vec<Vec<Matrix<F>>>,
    pub down: Vec<Vec<Matrix<F>>>,
    pub tau: Vec<Matrix<F>>,
}

impl<F: Field> CyclicModuleData<F> {
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// The dual module; cocyclic and cyclic swap.
    pub fn transpose(&self) -> Self {
        let tr = |v: &Vec<Vec<Matrix<F>>>| v.iter().map(|l| l.iter().map(|m| m.transpose()).collect()).collect();
        CyclicModuleData {
            variance: match self.variance {
                Variance::Cocyclic => Variance::Cyclic,
                Variance::Cyclic => Variance::Cocyclic,
            },
            field: self.field,
            dims: self.dims.clone(),
            // a coface into level n is a face out of level n, and so on
            up: tr(&self.down),
            down: tr(&self.up),
            tau: self.tau.iter().map(|t| t.transpose()).collect(),
        }
    }

    /// As a cyclic module (transposing if cocyclic).
    pub fn as_cyclic(&self) -> Self {
        match self.variance {
            Variance::Cyclic => self.clone(),
            Variance::Cocyclic => self.transpose(),
        }
    }

    /// Faces of the cyclic version at level n: X_n -> X_{n-1}.
    pub fn faces(&self, n: usize) -> &[Matrix<F>] {
        debug_assert_eq!(self.variance, Variance::Cyclic);
        &self.down[n]
    }

    /// Cyclic module relations (after transposing a cocyclic module), CC included.
    pub fn check(&self) -> Report {
        let mut rep = Report::new("module");
        let top = self.top();
        let eq = |rep: &mut Report, id: String, a: Matrix<F>, b: Matrix<F>| {
            let d = a.first_difference(&b).map(|(i, j, x, y)| format!("entry ({i},{j}): {x} vs {y}"));
            rep.push(Check::new(id, d.is_none(), d));
        };
        let x = self.as_cyclic();
        for n in 0..=top {
            let id = Matrix::identity(self.dims[n]);
            let t = &x.tau[n];
            eq(&mut rep, format!("n={n} CC"), t.pow(n + 1), id.clone());
            if n >= 1 {
                for i in 1..=n {
                    // d_i t_n = t_{n-1} d_{i-1}
                    eq(&mut rep, format!("n={n} dt i={i}"), x.down[n][i].mul(t), x.tau[n - 1].mul(&x.down[n][i - 1]));
                }
                eq(&mut rep, format!("n={n} dt0"), x.down[n][0].mul(t), x.down[n][n].clone());
                for j in 0..n {
                    for i in j + 1..=n {
                        // d_j d_i = d_{i-1} d_j (as maps out of X_n), i > j
                        if n >= 2 {
                            eq(&mut rep, format!("n={n} dd i={i} j={j}"), x.down[n - 1][j].mul(&x.down[n][i]), x.down[n - 1][i - 1].mul(&x.down[n][j]));
                        }
                    }
                }
            }
            if n < top {
                for j in 1..=n {
                    // s_j t_n = t_{n+1} s_{j-1}
                    eq(&mut rep, format!("n={n} st j={j}"), x.up[n][j].mul(t), x.tau[n + 1].mul(&x.up[n][j - 1]));
                }
                if n + 1 < top {
                    for j in 0..=n {
                        for i in 0..=j {
                            // s_i s_j = s_{j+1} s_i, i <= j
                            eq(&mut rep, format!("n={n} ss i={i} j={j}"), x.up[n + 1][i].mul(&x.up[n][j]), x.up[n + 1][j + 1].mul(&x.up[n][i]));
                        }
                    }
                }
                // s_0 t_n = t_{n+1}^2 s_n
                eq(&mut rep, format!("n={n} st0"), x.up[n][0].mul(t), x.tau[n + 1].pow(2).mul(&x.up[n][n]));
                for i in 0..=n + 1 {
                    for j in 0..=n {
                        // d_i s_j out of X_n
                        let l = x.down[n + 1][i].mul(&x.up[n][j]);
                        let r = if i < j {
                            x.up[n - 1][j - 1].mul(&x.down[n][i])
                        } else if i == j || i == j + 1 {
                            id.clone()
                        } else {
                            x.up[n - 1][j].mul(&x.down[n][i - 1])
                        };
                        eq(&mut rep, format!("n={n} ds i={i} j={j}"), l, r);
                    }
                }
            }
        }
        rep
    }
}

pub fn hom_transport<F: Field>(p: &ParaCocyclicData<F>, direction: Direction) -> CyclicModuleData<F> {
    let zero: Vec<Vec<usize>> = p.levels.iter().map(|l| l.degree_zero()).collect();
    let restrict = |m: &Mor<F>, s: usize, t: usize| m.mat.select(&zero[t], &zero[s]);
    let n_max = p.n_max;
    let cof: Vec<Vec<Matrix<F>>> = (0..=n_max).map(|n| p.cofaces[n].iter().map(|m| restrict(m, n - 1, n)).collect()).collect();
    let cod: Vec<Vec<Matrix<F>>> = (0..=n_max).map(|n| p.codegens[n].iter().map(|m| restrict(m, n + 1, n)).collect()).collect();
    let tau: Vec<Matrix<F>> = (0..=n_max).map(|n| restrict(&p.tau[n], n, n)).collect();
    let co = CyclicModuleData {
        variance: Variance::Cocyclic,
        field: p.ctx.field,
        dims: zero.iter().map(|z| z.len()).collect(),
        up: cof,
        down: cod,
        tau,
    };
    match direction {
        Direction::FromUnit => co,
        Direction::ToUnit => co.transpose(),
    }
}
