//! The JSON algebra file: parsing, validation and canonical serialization.
//! See `docs/algebra-file.md` for the schema.

use std::collections::BTreeMap;
use std::path::Path;

use hopfcyc::braided::{BraidingSpec, CategoryCtx, TwistSpec};
use hopfcyc::cm::ModularPair;
use hopfcyc::hopf::HopfAlgebra;
use hopfcyc::linalg::Matrix;
use hopfcyc::report::Report;
use hopfcyc::scalar::{parse_rational, Field, FieldSpec, ScalarText, Zero};
use hopfcyc::tensor::{Mor, Obj};
use hopfcyc::traces::ModuleCoalgebra;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub type K = hopfcyc::Cyclotomic;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("validation failed: {}", .0.first_failure().unwrap_or_default())]
    Validation(Box<Report>),
    #[error(transparent)]
    Core(hopfcyc::Error),
}

impl From<hopfcyc::Error> for LoadError {
    fn from(e: hopfcyc::Error) -> Self {
        match e {
            hopfcyc::Error::Validation(r) => LoadError::Validation(r),
            e => LoadError::Core(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Int(i64),
    Text(String),
    Coeffs(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Name(String),
    Cyclotomic { cyclotomic: u32 },
}

/// `"trivial"` / `"identity"` or `{"graded_q": scalar}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GradedJson {
    Name(String),
    GradedQ { graded_q: ScalarJson },
}

/// `[i, j, k, scalar]`
pub type Triple = (usize, usize, usize, ScalarJson);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub name: String,
    pub delta: Vec<ScalarJson>,
    pub sigma: Vec<ScalarJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub dim: usize,
    pub grades: Vec<i64>,
    pub comult: Vec<Triple>,
    pub counit: Vec<ScalarJson>,
    /// `[i, j, k, c]`: c_i . h_j has coefficient c on c_k
    pub action: Vec<Triple>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub field: FieldJson,
    pub dim: usize,
    pub grades: Vec<i64>,
    pub braiding: GradedJson,
    pub twist: GradedJson,
    pub mult: Vec<Triple>,
    pub unit: Vec<ScalarJson>,
    pub comult: Vec<Triple>,
    pub counit: Vec<ScalarJson>,
    /// Row i lists the coefficients of S(e_i).
    pub antipode: Vec<Vec<ScalarJson>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_coalgebra: Option<ModuleJson>,
}

/// A validated algebra with its pairs and optional module coalgebra.
#[derive(Clone)]
pub struct Loaded {
    pub name: String,
    pub hopf: HopfAlgebra<K>,
    pub pairs: Vec<ModularPair<K>>,
    pub module: Option<ModuleCoalgebra<K>>,
    /// sha256 of the input bytes (of the canonical file for built-ins)
    pub digest: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Line and column of the first occurrence of `"key"`, for schema errors.
fn locate(src: &str, key: &str) -> (usize, usize) {
    let pat = format!("\"{key}\"");
    match src.find(&pat) {
        Some(pos) => {
            let before = &src[..pos];
            let line = before.matches('\n').count() + 1;
            let column = pos - before.rfind('\n').map_or(0, |i| i + 1) + 1;
            (line, column)
        }
        None => (1, 1),
    }
}

struct Ctx<'a> {
    src: &'a str,
    spec: FieldSpec,
}

impl Ctx<'_> {
    fn err(&self, key: &str, message: String) -> LoadError {
        let (line, column) = locate(self.src, key);
        LoadError::Parse { line, column, message }
    }

    fn scalar(&self, key: &str, s: &ScalarJson) -> Result<K, LoadError> {
        let r = match s {
            ScalarJson::Int(v) => Ok(K::from_i64(*v)),
            ScalarJson::Text(t) => K::parse(t, self.spec),
            ScalarJson::Coeffs(cs) => cs
                .iter()
                .map(|c| parse_rational(c))
                .collect::<hopfcyc::Result<Vec<_>>>()
                .and_then(|cs| K::from_coeffs(self.spec, &cs)),
        };
        r.map_err(|e| self.err(key, format!("{key}: {e}")))
    }

    fn vector(&self, key: &str, v: &[ScalarJson], len: usize) -> Result<Vec<K>, LoadError> {
        if v.len() != len {
            return Err(self.err(key, format!("{key} has {} entries, expected {len}", v.len())));
        }
        v.iter().map(|s| self.scalar(key, s)).collect()
    }

    /// Sums duplicate triples; `place` maps (i, j, k) to (row, col).
    fn triples(
        &self,
        key: &str,
        ts: &[Triple],
        bounds: (usize, usize, usize),
        shape: (usize, usize),
        place: impl Fn(usize, usize, usize) -> (usize, usize),
    ) -> Result<Matrix<K>, LoadError> {
        let mut acc: BTreeMap<(usize, usize), K> = BTreeMap::new();
        for (i, j, k, s) in ts {
            if *i >= bounds.0 || *j >= bounds.1 || *k >= bounds.2 {
                return Err(self.err(key, format!("{key} index ({i}, {j}, {k}) out of range")));
            }
            let v = self.scalar(key, s)?;
            let e = acc.entry(place(*i, *j, *k)).or_insert_with(K::zero);
            *e = e.clone() + v;
        }
        Ok(Matrix::from_triplets(shape.0, shape.1, acc.into_iter().map(|((r, c), v)| (r, c, v))))
    }

    fn graded(&self, key: &str, g: &GradedJson, plain: &str) -> Result<Option<K>, LoadError> {
        match g {
            GradedJson::Name(n) if n == plain => Ok(None),
            GradedJson::Name(n) => Err(self.err(key, format!("{key}: unknown value {n:?}, expected {plain:?} or graded_q"))),
            GradedJson::GradedQ { graded_q } => self.scalar(key, graded_q).map(Some),
        }
    }
}

fn field_spec(f: &FieldJson, src: &str) -> Result<FieldSpec, LoadError> {
    let bad = |m: String| {
        let (line, column) = locate(src, "field");
        LoadError::Parse { line, column, message: m }
    };
    match f {
        FieldJson::Name(n) if n == "Q" => Ok(FieldSpec::Rationals),
        FieldJson::Name(n) => Err(bad(format!("unknown field {n:?}"))),
        FieldJson::Cyclotomic { cyclotomic } => FieldSpec::cyclotomic(*cyclotomic).map_err(|e| bad(e.to_string())),
    }
}

/// Parse and validate a file's contents.
pub fn parse_algebra(src: &str) -> Result<Loaded, LoadError> {
    let file: AlgebraFile = serde_json::from_str(src)
        .map_err(|e| LoadError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let mut loaded = build(&file, src)?;
    loaded.digest = sha256_hex(src.as_bytes());
    Ok(loaded)
}

pub fn load_algebra(path: &Path) -> Result<Loaded, LoadError> {
    let src = std::fs::read_to_string(path).map_err(|e| LoadError::Io { path: path.display().to_string(), source: e })?;
    let mut l = parse_algebra(&src)?;
    if l.name.is_empty() {
        l.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    }
    Ok(l)
}

fn build(file: &AlgebraFile, src: &str) -> Result<Loaded, LoadError> {
    let spec = field_spec(&file.field, src)?;
    let cx = Ctx { src, spec };
    let d = file.dim;
    if d == 0 {
        return Err(cx.err("dim", "dim must be positive".into()));
    }
    if file.grades.len() != d {
        return Err(cx.err("grades", format!("dim is {d} but {} grades are given", file.grades.len())));
    }
    let braiding = match cx.graded("braiding", &file.braiding, "trivial")? {
        None => BraidingSpec::Trivial,
        Some(q) => BraidingSpec::GradedQ(q),
    };
    let twist = match cx.graded("twist", &file.twist, "identity")? {
        None => TwistSpec::Identity,
        Some(q) => TwistSpec::GradedQ(q),
    };
    let ctx = CategoryCtx::new(spec, braiding, twist);
    let h = Obj::new(file.name.clone().unwrap_or_else(|| "H".into()), file.grades.clone(), spec);
    let h2 = h.power(2);
    let one = Obj::unit(spec);
    let mult = cx.triples("mult", &file.mult, (d, d, d), (d, d * d), |i, j, k| (k, i * d + j))?;
    let comult = cx.triples("comult", &file.comult, (d, d, d), (d * d, d), |i, j, k| (j * d + k, i))?;
    let unit = Mor::vector(&h, cx.vector("unit", &file.unit, d)?)?;
    let counit = Mor::covector(&h, cx.vector("counit", &file.counit, d)?)?;
    if file.antipode.len() != d {
        return Err(cx.err("antipode", format!("antipode has {} rows, expected {d}", file.antipode.len())));
    }
    let mut s_entries = Vec::new();
    for (i, row) in file.antipode.iter().enumerate() {
        for (j, v) in cx.vector("antipode", row, d)?.into_iter().enumerate() {
            s_entries.push((j, i, v));
        }
    }
    let antipode = Mor::new(h.clone(), h.clone(), Matrix::from_triplets(d, d, s_entries))?;
    let hopf = HopfAlgebra::new(
        ctx,
        h.clone(),
        Mor::new(h2.clone(), h.clone(), mult)?,
        unit.retyped(&one, &h),
        Mor::new(h.clone(), h2, comult)?,
        counit,
        antipode,
    )?;
    let mut pairs = vec![ModularPair::trivial(&hopf)];
    for p in &file.pairs {
        let delta = Mor::covector(&h, cx.vector("delta", &p.delta, d)?)?;
        let sigma = Mor::vector(&h, cx.vector("sigma", &p.sigma, d)?)?;
        let pair = ModularPair::new(&hopf, p.name.clone(), delta, sigma)?;
        if let Some(i) = pairs.iter().position(|q| q.name == pair.name) {
            pairs[i] = pair;
        } else {
            pairs.push(pair);
        }
    }
    let module = match &file.module_coalgebra {
        None => None,
        Some(m) => {
            let dc = m.dim;
            if m.grades.len() != dc {
                return Err(cx.err("module_coalgebra", format!("module dim is {dc} but {} grades are given", m.grades.len())));
            }
            let c = Obj::new("C", m.grades.clone(), spec);
            let cc = c.power(2);
            let ch = hopfcyc::tensor::tensor_obj(&[c.clone(), h.clone()], spec)?;
            let comult = cx.triples("comult", &m.comult, (dc, dc, dc), (dc * dc, dc), |i, j, k| (j * dc + k, i))?;
            let action = cx.triples("action", &m.action, (dc, d, dc), (dc, dc * d), |i, j, k| (k, i * d + j))?;
            let counit = Mor::covector(&c, cx.vector("counit", &m.counit, dc)?)?;
            Some(ModuleCoalgebra::new(
                hopf.clone(),
                c.clone(),
                Mor::new(c.clone(), cc, comult)?,
                counit,
                Mor::new(ch, c, action)?,
            )?)
        }
    };
    Ok(Loaded { name: file.name.clone().unwrap_or_default(), hopf, pairs, module, digest: String::new() })
}

pub fn scalar_json(x: &K, spec: FieldSpec) -> ScalarJson {
    match x.to_text(spec) {
        ScalarText::Rational(s) => ScalarJson::Text(s),
        ScalarText::Coeffs(c) => ScalarJson::Coeffs(c),
    }
}

fn vector_json(m: &Mor<K>, spec: FieldSpec) -> Vec<ScalarJson> {
    let dense = m.mat.to_dense();
    dense.into_iter().flatten().map(|x| scalar_json(&x, spec)).collect()
}

/// Sorted, zero-free triples; `split` maps (row, col) back to (i, j, k).
fn triples_json(m: &Matrix<K>, spec: FieldSpec, split: impl Fn(usize, usize) -> (usize, usize, usize)) -> Vec<Triple> {
    let mut out: Vec<Triple> = m.entries().map(|(r, c, x)| {
        let (i, j, k) = split(r, c);
        (i, j, k, scalar_json(x, spec))
    }).collect();
    out.sort_by_key(|t| (t.0, t.1, t.2));
    out
}

fn graded_json(q: Option<&K>, plain: &str, spec: FieldSpec) -> GradedJson {
    match q {
        None => GradedJson::Name(plain.into()),
        Some(q) => GradedJson::GradedQ { graded_q: scalar_json(q, spec) },
    }
}

/// Canonical file for a loaded algebra. The trivial pair is implicit and not written.
pub fn serialize(l: &Loaded) -> Result<AlgebraFile, LoadError> {
    let h = &l.hopf;
    let spec = h.field();
    let d = h.dim();
    let braiding = match &h.ctx.braiding {
        BraidingSpec::Trivial => graded_json(None, "trivial", spec),
        BraidingSpec::GradedQ(q) => graded_json(Some(q), "trivial", spec),
        BraidingSpec::Explicit(_) => return Err(LoadError::Core(hopfcyc::Error::Shape("explicit braidings cannot be written".into()))),
    };
    let twist = match &h.ctx.twist {
        TwistSpec::Identity => graded_json(None, "identity", spec),
        TwistSpec::GradedQ(q) => graded_json(Some(q), "identity", spec),
        TwistSpec::Explicit(_) => return Err(LoadError::Core(hopfcyc::Error::Shape("explicit twists cannot be written".into()))),
    };
    let s = h.antipode.mat.to_dense();
    let antipode = (0..d).map(|i| (0..d).map(|j| scalar_json(&s[j][i], spec)).collect()).collect();
    let field = match spec {
        FieldSpec::Rationals => FieldJson::Name("Q".into()),
        FieldSpec::Cyclotomic(n) => FieldJson::Cyclotomic { cyclotomic: n },
    };
    let pairs = l
        .pairs
        .iter()
        .filter(|p| p.name != "eu")
        .map(|p| PairJson { name: p.name.clone(), delta: vector_json(&p.delta, spec), sigma: vector_json(&p.sigma, spec) })
        .collect();
    let module_coalgebra = l.module.as_ref().map(|m| {
        let dc = m.carrier.dim();
        ModuleJson {
            dim: dc,
            grades: m.carrier.grades().to_vec(),
            comult: triples_json(&m.comult.mat, spec, |r, c| (c, r / dc, r % dc)),
            counit: vector_json(&m.counit, spec),
            action: triples_json(&m.action.mat, spec, |r, c| (c / d, c % d, r)),
        }
    });
    Ok(AlgebraFile {
        name: (!l.name.is_empty()).then(|| l.name.clone()),
        field,
        dim: d,
        grades: h.carrier.grades().to_vec(),
        braiding,
        twist,
        mult: triples_json(&h.mult.mat, spec, |r, c| (c / d, c % d, r)),
        unit: vector_json(&h.unit, spec),
        comult: triples_json(&h.comult.mat, spec, |r, c| (c, r / d, r % d)),
        counit: vector_json(&h.counit, spec),
        antipode,
        pairs,
        module_coalgebra,
    })
}

pub fn to_json(file: &AlgebraFile) -> String {
    serde_json::to_string_pretty(file).expect("serializable") + "\n"
}

/// A built-in as a `Loaded`, digest taken over its canonical file.
pub fn builtin(name: &str, q: Option<K>) -> Result<Loaded, LoadError> {
    let ex = hopfcyc::builtins::builtin::<K>(name, q)?;
    let mut l = Loaded { name: ex.name.clone(), hopf: ex.hopf, pairs: ex.pairs, module: None, digest: String::new() };
    l.digest = sha256_hex(to_json(&serialize(&l)?).as_bytes());
    Ok(l)
}
