//! JSON schemas for bialgebras, YD modules, R-matrices, braided systems,
//! morphisms and homology reports.
//!
//! Every scalar is written as a string in canonical form; on input both
//! strings and JSON integers are accepted. Keys are emitted sorted, so
//! `save(load(f))` is a canonical form of `f`.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;
use ydbraid_core::braided::BraidedSystem;
use ydbraid_core::homology::{DegreeRow, HomologyReport, Which};
use ydbraid_core::hopf::{Bialgebra, GroupTable};
use ydbraid_core::linalg::{Field, Scalar, SparseMatrix};
use ydbraid_core::rmatrix::RMatrix;
use ydbraid_core::tensor::{LinMap, Space};
use ydbraid_core::yd::{HModule, YdModule, YdModuleAlgebra};

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inconsistent input.
    #[error("{0}")]
    Input(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] ydbraid_core::Error),
}

impl CliError {
    /// 1 for mathematical failures, 2 for everything else.
    pub fn exit_code(&self) -> u8 {
        use ydbraid_core::Error as E;
        match self {
            CliError::Core(E::AxiomFailure(_) | E::Verification(_) | E::NoAntipode(_)) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// A parsed JSON document together with the file it came from, for
/// diagnostics and for resolving relative references.
pub struct Doc {
    pub path: PathBuf,
    pub root: Value,
}

impl Doc {
    pub fn read(path: &Path) -> CliResult<Doc> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        let root = serde_json::from_str(&text).map_err(|e| {
            CliError::Input(format!("{}: line {} column {}: {e}", path.display(), e.line(), e.column()))
        })?;
        Ok(Doc { path: path.into(), root })
    }

    fn dir(&self) -> PathBuf {
        self.path.parent().map(Path::to_path_buf).unwrap_or_default()
    }

    fn reader(&self, field: Field) -> Reader<'_> {
        Reader { file: &self.path, field }
    }
}

/// Writes `value` with sorted keys and a trailing newline.
pub fn write_json(path: Option<&Path>, value: &Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io { path: p.into(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct Reader<'a> {
    file: &'a Path,
    field: Field,
}

impl Reader<'_> {
    fn err(&self, path: &str, msg: impl std::fmt::Display) -> CliError {
        CliError::Input(format!("{}: {path}: {msg}", self.file.display()))
    }

    fn get<'v>(&self, v: &'v Value, key: &str, path: &str) -> CliResult<&'v Value> {
        v.get(key).ok_or_else(|| self.err(path, format!("missing field '{key}'")))
    }

    fn array<'v>(&self, v: &'v Value, path: &str, len: Option<usize>) -> CliResult<&'v Vec<Value>> {
        let a = v.as_array().ok_or_else(|| self.err(path, "expected an array"))?;
        match len {
            Some(n) if a.len() != n => Err(self.err(path, format!("expected {n} entries, found {}", a.len()))),
            _ => Ok(a),
        }
    }

    fn usize(&self, v: &Value, path: &str) -> CliResult<usize> {
        v.as_u64().map(|x| x as usize).ok_or_else(|| self.err(path, "expected a non-negative integer"))
    }

    fn string(&self, v: &Value, path: &str) -> CliResult<String> {
        v.as_str().map(str::to_string).ok_or_else(|| self.err(path, "expected a string"))
    }

    fn scalar(&self, v: &Value, path: &str) -> CliResult<Scalar> {
        let text = match v {
            Value::String(s) => s.clone(),
            Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
            _ => return Err(self.err(path, "expected a scalar string or integer")),
        };
        let (s, normalized) = self.field.parse(&text).map_err(|e| self.err(path, e))?;
        if normalized {
            log::warn!("{}: {path}: coefficient '{text}' normalized to {s} in {}", self.file.display(), self.field);
        }
        Ok(s)
    }

    fn vector(&self, v: &Value, path: &str, len: usize) -> CliResult<Vec<Scalar>> {
        self.array(v, path, Some(len))?
            .iter()
            .enumerate()
            .map(|(i, x)| self.scalar(x, &format!("{path}[{i}]")))
            .collect()
    }

    fn table2(&self, v: &Value, path: &str, a: usize, b: usize) -> CliResult<Vec<Vec<Scalar>>> {
        self.array(v, path, Some(a))?
            .iter()
            .enumerate()
            .map(|(i, x)| self.vector(x, &format!("{path}[{i}]"), b))
            .collect()
    }

    fn table3(&self, v: &Value, path: &str, a: usize, b: usize, c: usize) -> CliResult<Vec<Vec<Vec<Scalar>>>> {
        self.array(v, path, Some(a))?
            .iter()
            .enumerate()
            .map(|(i, x)| self.table2(x, &format!("{path}[{i}]"), b, c))
            .collect()
    }

    /// Dense matrix as a list of rows.
    fn matrix(&self, v: &Value, path: &str, rows: usize, cols: usize) -> CliResult<SparseMatrix> {
        let t = self.table2(v, path, rows, cols)?;
        Ok(SparseMatrix::from_dense(self.field, &t))
    }

    fn basis(&self, v: &Value, dim: usize, label: &str) -> CliResult<Space> {
        match v.get("basis") {
            None | Some(Value::Null) => Ok(Space::new(label, dim)),
            Some(b) => {
                let names: Vec<String> = self
                    .array(b, "basis", Some(dim))?
                    .iter()
                    .enumerate()
                    .map(|(i, x)| self.string(x, &format!("basis[{i}]")))
                    .collect::<CliResult<_>>()?;
                Ok(Space::with_basis(label, names))
            }
        }
    }

    fn label(&self, v: &Value, default: &str) -> CliResult<String> {
        match v.get("label") {
            None => Ok(default.into()),
            Some(x) => self.string(x, "label"),
        }
    }
}

fn field_to_json(f: Field) -> Value {
    match f {
        Field::Rational => json!({"kind": "Q"}),
        Field::Prime(p) => json!({"kind": "Fp", "p": p}),
    }
}

fn field_of(doc: &Doc) -> CliResult<Field> {
    let r = doc.reader(Field::Rational);
    let f = r.get(&doc.root, "field", "field")?;
    let kind = r.string(r.get(f, "kind", "field")?, "field.kind")?;
    match kind.as_str() {
        "Q" => Ok(Field::Rational),
        "Fp" => {
            let p = r.get(f, "p", "field")?.as_u64().ok_or_else(|| r.err("field.p", "expected an integer"))?;
            Field::prime(p).map_err(|e| r.err("field.p", e))
        }
        other => Err(r.err("field.kind", format!("expected \"Q\" or \"Fp\", got \"{other}\""))),
    }
}

fn expect_kind(doc: &Doc, kind: &str) -> CliResult<()> {
    match doc.root.get("type").and_then(Value::as_str) {
        Some(k) if k == kind => Ok(()),
        Some(k) => Err(CliError::Input(format!("{}: type: expected \"{kind}\", found \"{k}\"", doc.path.display()))),
        None => Err(CliError::Input(format!("{}: missing field 'type'", doc.path.display()))),
    }
}

fn same_field(doc: &Doc, f: Field, expected: Field) -> CliResult<()> {
    if f != expected {
        return Err(CliError::Core(ydbraid_core::Error::FieldMismatch(format!(
            "{} uses {f}, expected {expected}",
            doc.path.display()
        ))));
    }
    Ok(())
}

fn s(x: &Scalar) -> Value {
    Value::String(x.to_canonical())
}

fn vector_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(s).collect())
}

fn matrix_json(m: &SparseMatrix) -> Value {
    Value::Array(m.to_dense().iter().map(|r| vector_json(r)).collect())
}

fn basis_json(sp: &Space) -> Value {
    match &sp.basis_names {
        Some(n) => json!(n),
        None => Value::Null,
    }
}

// ---------------------------------------------------------------- bialgebra

pub fn bialgebra_to_json(b: &Bialgebra) -> Value {
    let t = b.tables();
    let d = b.dim();
    let f = b.field();
    let dense1 = |terms: &[(usize, Scalar)]| {
        let mut row = vec![f.zero(); d];
        for (k, c) in terms {
            row[*k] = c.clone();
        }
        row
    };
    let mul: Vec<Value> =
        t.mul.iter().map(|r| Value::Array(r.iter().map(|x| vector_json(&dense1(x))).collect())).collect();
    let comul: Vec<Value> = t
        .comul
        .iter()
        .map(|terms| {
            let mut m = vec![vec![f.zero(); d]; d];
            for (j, k, c) in terms {
                m[*j][*k] = c.clone();
            }
            Value::Array(m.iter().map(|r| vector_json(r)).collect())
        })
        .collect();
    let mut o = Map::new();
    o.insert("type".into(), json!("bialgebra"));
    o.insert("field".into(), field_to_json(f));
    o.insert("dim".into(), json!(d));
    o.insert("label".into(), json!(b.space.label));
    o.insert("basis".into(), basis_json(&b.space));
    o.insert("mul".into(), Value::Array(mul));
    o.insert("unit".into(), vector_json(&dense1(&t.unit)));
    o.insert("comul".into(), Value::Array(comul));
    o.insert("counit".into(), vector_json(&t.counit));
    if let Some(a) = t.antipode {
        o.insert("antipode".into(), Value::Array(a.iter().map(|r| vector_json(&dense1(r))).collect()));
    }
    if o["basis"].is_null() {
        o.remove("basis");
    }
    Value::Object(o)
}

fn bialgebra_from_value(doc: &Doc, v: &Value, f: Field) -> CliResult<Bialgebra> {
    let r = doc.reader(f);
    let d = r.usize(r.get(v, "dim", "dim")?, "dim")?;
    let label = r.label(v, "H")?;
    let space = r.basis(v, d, &label)?;
    let mul = r.table3(r.get(v, "mul", "mul")?, "mul", d, d, d)?;
    let unit = r.vector(r.get(v, "unit", "unit")?, "unit", d)?;
    let comul = r.table3(r.get(v, "comul", "comul")?, "comul", d, d, d)?;
    let counit = r.vector(r.get(v, "counit", "counit")?, "counit", d)?;
    let antipode = match v.get("antipode") {
        None | Some(Value::Null) => None,
        Some(a) => Some(r.table2(a, "antipode", d, d)?),
    };
    Ok(Bialgebra::from_tables(f, space, &mul, &unit, &comul, &counit, antipode.as_deref())?)
}

pub fn load_bialgebra(path: &Path) -> CliResult<Bialgebra> {
    let doc = Doc::read(path)?;
    expect_kind(&doc, "bialgebra")?;
    let f = field_of(&doc)?;
    bialgebra_from_value(&doc, &doc.root, f)
}

/// Resolves the `hopf` entry of a document: a path relative to the
/// document, or an inline bialgebra object.
fn hopf_ref(doc: &Doc) -> CliResult<Bialgebra> {
    let r = doc.reader(Field::Rational);
    match r.get(&doc.root, "hopf", "hopf")? {
        Value::String(p) => {
            let target = doc.dir().join(p);
            load_bialgebra(&target)
        }
        inline @ Value::Object(_) => {
            let sub = Doc { path: doc.path.clone(), root: inline.clone() };
            let f = field_of(&sub)?;
            bialgebra_from_value(&sub, inline, f)
        }
        _ => Err(r.err("hopf", "expected a path or an inline bialgebra")),
    }
}

/// Base of a dependent document, checked against `expected` when given;
/// equal bases are shared so that later same-base checks are cheap.
fn resolve_base(doc: &Doc, expected: Option<&Arc<Bialgebra>>) -> CliResult<(Arc<Bialgebra>, Field)> {
    let f = field_of(doc)?;
    let own = hopf_ref(doc)?;
    same_field(doc, own.field(), f)?;
    match expected {
        Some(b) => {
            same_field(doc, f, b.field())?;
            if **b != own {
                return Err(CliError::Input(format!(
                    "{}: hopf: the referenced bialgebra differs from the one given on the command line",
                    doc.path.display()
                )));
            }
            Ok((b.clone(), f))
        }
        None => Ok((Arc::new(own), f)),
    }
}

// -------------------------------------------------------------- group table

/// `{"names": [...], "table": [[name, ...], ...]}`, entries given by name.
pub fn load_group_table(path: &Path) -> CliResult<GroupTable> {
    let doc = Doc::read(path)?;
    let r = doc.reader(Field::Rational);
    let names: Vec<String> = r
        .array(r.get(&doc.root, "names", "names")?, "names", None)?
        .iter()
        .enumerate()
        .map(|(i, x)| r.string(x, &format!("names[{i}]")))
        .collect::<CliResult<_>>()?;
    let n = names.len();
    let rows = r.array(r.get(&doc.root, "table", "table")?, "table", Some(n))?;
    let mut table = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row = r.array(row, &format!("table[{i}]"), Some(n))?;
        let mut out = Vec::with_capacity(n);
        for (j, x) in row.iter().enumerate() {
            let path = format!("table[{i}][{j}]");
            let name = r.string(x, &path)?;
            out.push(
                names
                    .iter()
                    .position(|m| *m == name)
                    .ok_or_else(|| r.err(&path, format!("unknown element '{name}'")))?,
            );
        }
        table.push(out);
    }
    Ok(GroupTable::new(names, table)?)
}

// --------------------------------------------------------------- YD modules

/// A module file, optionally carrying a coaction and an algebra structure.
pub struct ModuleFile {
    pub module: HModule,
    pub coaction: Option<LinMap>,
    pub product: Option<(LinMap, LinMap)>,
}

impl ModuleFile {
    pub fn yd(&self, path: &Path) -> CliResult<YdModule> {
        let m = &self.module;
        let delta = self
            .coaction
            .clone()
            .ok_or_else(|| CliError::Input(format!("{}: missing field 'coaction'", path.display())))?;
        Ok(YdModule::new(m.base.clone(), m.space.clone(), m.lambda.clone(), delta)?)
    }

    pub fn yd_algebra(&self, path: &Path) -> CliResult<YdModuleAlgebra> {
        let (mu, nu) = self.product.clone().ok_or_else(|| {
            CliError::Input(format!("{}: missing fields 'product' and 'product_unit'", path.display()))
        })?;
        Ok(YdModuleAlgebra::new(self.yd(path)?, mu, nu)?)
    }
}

pub fn load_module(path: &Path, base: Option<&Arc<Bialgebra>>) -> CliResult<ModuleFile> {
    let doc = Doc::read(path)?;
    expect_kind(&doc, "yd-module")?;
    let (b, f) = resolve_base(&doc, base)?;
    let r = doc.reader(f);
    let v = &doc.root;
    let n = b.dim();
    let d = r.usize(r.get(v, "dim", "dim")?, "dim")?;
    let label = r.label(v, "M")?;
    let space = r.basis(v, d, &label)?;
    let h = b.space.clone();
    let action = r.table3(r.get(v, "action", "action")?, "action", n, d, d)?;
    let lambda = LinMap::from_fn(f, vec![h.clone(), space.clone()], vec![space.clone()], |x| {
        action[x[0]][x[1]].iter().enumerate().map(|(k, c)| (vec![k], c.clone())).collect()
    });
    let coaction = match v.get("coaction") {
        None | Some(Value::Null) => None,
        Some(c) => {
            let t = r.table3(c, "coaction", d, d, n)?;
            Some(LinMap::from_fn(f, vec![space.clone()], vec![space.clone(), h.clone()], |x| {
                let t = &t[x[0]];
                (0..d).flat_map(|k| (0..n).map(move |i| (vec![k, i], t[k][i].clone()))).collect()
            }))
        }
    };
    let product = match (v.get("product"), v.get("product_unit")) {
        (None, None) => None,
        (Some(p), Some(u)) => {
            let p = r.table3(p, "product", d, d, d)?;
            let u = r.vector(u, "product_unit", d)?;
            let mu = LinMap::from_fn(f, vec![space.clone(), space.clone()], vec![space.clone()], |x| {
                p[x[0]][x[1]].iter().enumerate().map(|(k, c)| (vec![k], c.clone())).collect()
            });
            let nu = LinMap::from_fn(f, vec![], vec![space.clone()], |_| {
                u.iter().enumerate().map(|(k, c)| (vec![k], c.clone())).collect()
            });
            Some((mu, nu))
        }
        _ => return Err(r.err("product", "'product' and 'product_unit' must be given together")),
    };
    let module = HModule::new(b, space, lambda)?;
    Ok(ModuleFile { module, coaction, product })
}

fn module_json(base: &Bialgebra, space: &Space, lambda: &LinMap, delta: Option<&LinMap>) -> Map<String, Value> {
    let (n, d) = (base.dim(), space.dim);
    let action: Vec<Value> = (0..n)
        .map(|i| {
            Value::Array(
                (0..d).map(|a| vector_json(&(0..d).map(|b| lambda.entry(&[b], &[i, a])).collect::<Vec<_>>())).collect(),
            )
        })
        .collect();
    let mut o = Map::new();
    o.insert("type".into(), json!("yd-module"));
    o.insert("field".into(), field_to_json(base.field()));
    o.insert("hopf".into(), bialgebra_to_json(base));
    o.insert("dim".into(), json!(d));
    o.insert("label".into(), json!(space.label));
    if space.basis_names.is_some() {
        o.insert("basis".into(), basis_json(space));
    }
    o.insert("action".into(), Value::Array(action));
    if let Some(delta) = delta {
        let coaction: Vec<Value> = (0..d)
            .map(|a| {
                Value::Array(
                    (0..d)
                        .map(|b| vector_json(&(0..n).map(|i| delta.entry(&[b, i], &[a])).collect::<Vec<_>>()))
                        .collect(),
                )
            })
            .collect();
        o.insert("coaction".into(), Value::Array(coaction));
    }
    o
}

pub fn yd_to_json(m: &YdModule) -> Value {
    Value::Object(module_json(&m.base, &m.space, &m.lambda, Some(&m.delta)))
}

pub fn yd_algebra_to_json(a: &YdModuleAlgebra) -> Value {
    let m = &a.module;
    let d = m.dim();
    let mut o = module_json(&m.base, &m.space, &m.lambda, Some(&m.delta));
    let product: Vec<Value> = (0..d)
        .map(|x| {
            Value::Array(
                (0..d).map(|y| vector_json(&(0..d).map(|z| a.mu.entry(&[z], &[x, y])).collect::<Vec<_>>())).collect(),
            )
        })
        .collect();
    o.insert("product".into(), Value::Array(product));
    o.insert("product_unit".into(), vector_json(&(0..d).map(|z| a.nu.entry(&[z], &[])).collect::<Vec<_>>()));
    Value::Object(o)
}

// ---------------------------------------------------------------- R-matrices

pub fn load_rmatrix(path: &Path, base: Option<&Arc<Bialgebra>>) -> CliResult<RMatrix> {
    let doc = Doc::read(path)?;
    expect_kind(&doc, "r-matrix")?;
    let (b, f) = resolve_base(&doc, base)?;
    let r = doc.reader(f);
    let n = b.dim();
    let vector = r.vector(r.get(&doc.root, "vector", "vector")?, "vector", n * n)?;
    let inverse = match doc.root.get("inverse") {
        None | Some(Value::Null) => None,
        Some(v) => Some(r.vector(v, "inverse", n * n)?),
    };
    Ok(RMatrix::new(b, &vector, inverse.as_deref())?)
}

pub fn rmatrix_to_json(rm: &RMatrix) -> Value {
    let mut o = Map::new();
    o.insert("type".into(), json!("r-matrix"));
    o.insert("field".into(), field_to_json(rm.base.field()));
    o.insert("hopf".into(), bialgebra_to_json(&rm.base));
    o.insert("vector".into(), vector_json(&rm.vector()));
    if let Some(inv) = rm.inverse_vector() {
        o.insert("inverse".into(), vector_json(&inv));
    }
    Value::Object(o)
}

// ----------------------------------------------------------- braided systems

/// `"i,j"` with 1-based component indices.
fn sigma_key(i: usize, j: usize) -> String {
    format!("{},{}", i + 1, j + 1)
}

pub fn system_to_json(s: &BraidedSystem) -> Value {
    let components: Vec<Value> = s.components().iter().map(|c| json!({"dim": c.dim, "label": c.label})).collect();
    let sigma: Map<String, Value> = s.sigmas().map(|(&(i, j), m)| (sigma_key(i, j), matrix_json(m.matrix()))).collect();
    json!({
        "type": "braided-system",
        "field": field_to_json(s.field()),
        "components": components,
        "sigma": sigma,
    })
}

pub fn load_system(path: &Path) -> CliResult<BraidedSystem> {
    let doc = Doc::read(path)?;
    expect_kind(&doc, "braided-system")?;
    let f = field_of(&doc)?;
    let r = doc.reader(f);
    let comps = r.array(r.get(&doc.root, "components", "components")?, "components", None)?;
    let mut spaces = Vec::with_capacity(comps.len());
    for (i, c) in comps.iter().enumerate() {
        let p = format!("components[{i}]");
        let dim = r.usize(r.get(c, "dim", &p)?, &format!("{p}.dim"))?;
        let label = match c.get("label") {
            Some(l) => r.string(l, &format!("{p}.label"))?,
            None => format!("V{}", i + 1),
        };
        spaces.push(Space::new(label, dim));
    }
    let sig = r.get(&doc.root, "sigma", "sigma")?.as_object().ok_or_else(|| r.err("sigma", "expected an object"))?;
    let rank = spaces.len();
    let mut sigma = BTreeMap::new();
    for (key, m) in sig {
        let p = format!("sigma.\"{key}\"");
        let (i, j) = key
            .split_once(',')
            .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
            .filter(|&(i, j)| 1 <= i && i <= j && j <= rank)
            .ok_or_else(|| r.err(&p, format!("expected a key \"i,j\" with 1 ≤ i ≤ j ≤ {rank}")))?;
        let (vi, vj) = (&spaces[i - 1], &spaces[j - 1]);
        let mat = r.matrix(m, &p, vj.dim * vi.dim, vi.dim * vj.dim)?;
        sigma.insert((i - 1, j - 1), LinMap::new(vec![vi.clone(), vj.clone()], vec![vj.clone(), vi.clone()], mat)?);
    }
    Ok(BraidedSystem::new(spaces, sigma)?)
}

// ---------------------------------------------------------------- morphisms

/// `{"field": …, "maps": [matrix, …]}`, one matrix per component
/// with rows indexed by the target component.
pub fn load_maps(path: &Path, from: &BraidedSystem, to: &BraidedSystem) -> CliResult<Vec<LinMap>> {
    let doc = Doc::read(path)?;
    expect_kind(&doc, "morphism")?;
    let f = field_of(&doc)?;
    same_field(&doc, f, from.field())?;
    let r = doc.reader(f);
    let maps = r.array(r.get(&doc.root, "maps", "maps")?, "maps", Some(from.rank()))?;
    if to.rank() != from.rank() {
        return Err(CliError::Input(format!("systems have ranks {} and {}", from.rank(), to.rank())));
    }
    maps.iter()
        .enumerate()
        .map(|(i, m)| {
            let (a, b) = (&from.components()[i], &to.components()[i]);
            let mat = r.matrix(m, &format!("maps[{i}]"), b.dim, a.dim)?;
            Ok(LinMap::new(vec![a.clone()], vec![b.clone()], mat)?)
        })
        .collect()
}

pub fn maps_to_json(maps: &[LinMap]) -> Value {
    let field = maps.first().map(LinMap::field).unwrap_or(Field::Rational);
    json!({
        "type": "morphism",
        "field": field_to_json(field),
        "maps": maps.iter().map(|m| matrix_json(m.matrix())).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------- homology report

pub fn report_to_json(rep: &HomologyReport, line: u8) -> Value {
    let degrees: Vec<Value> = rep
        .rows
        .iter()
        .map(|r| {
            json!({
                "degree": r.degree,
                "chain_dim": r.chain_dim,
                "rank_d": r.rank_d,
                "rank_d_prime": r.rank_d_prime,
                "rank_total": r.rank_total,
                "homology_dim": r.homology_dim,
            })
        })
        .collect();
    json!({
        "type": "homology-report",
        "truncation": rep.truncation,
        "line": line,
        "differential": rep.which.to_string(),
        "cohomology": rep.cohomology,
        "degrees": degrees,
        "top_kernel": rep.top_kernel,
        "euler_holds": rep.euler_holds,
        "d_squared_zero": rep.identities[0],
        "d_prime_squared_zero": rep.identities[1],
        "anticommute": rep.identities[2],
    })
}

pub fn load_report(path: &Path) -> CliResult<(HomologyReport, u8)> {
    let doc = Doc::read(path)?;
    expect_kind(&doc, "homology-report")?;
    let r = doc.reader(Field::Rational);
    let v = &doc.root;
    let flag = |key: &str| -> CliResult<bool> {
        r.get(v, key, key)?.as_bool().ok_or_else(|| r.err(key, "expected a boolean"))
    };
    let num = |x: &Value, key: &str| -> CliResult<usize> { r.usize(r.get(x, key, key)?, key) };
    let which = match r.string(r.get(v, "differential", "differential")?, "differential")?.as_str() {
        "d" => Which::D,
        "d_prime" => Which::DPrime,
        "total" => Which::Total,
        other => return Err(r.err("differential", format!("unknown differential '{other}'"))),
    };
    let line = num(v, "line")?;
    let line = u8::try_from(line).map_err(|_| r.err("line", "out of range"))?;
    let mut rows = Vec::new();
    for (i, x) in r.array(r.get(v, "degrees", "degrees")?, "degrees", None)?.iter().enumerate() {
        let p = format!("degrees[{i}]");
        let homology_dim = match r.get(x, "homology_dim", &p)? {
            Value::Null => None,
            h => Some(r.usize(h, &format!("{p}.homology_dim"))?),
        };
        rows.push(DegreeRow {
            degree: num(x, "degree")?,
            chain_dim: num(x, "chain_dim")?,
            rank_d: num(x, "rank_d")?,
            rank_d_prime: num(x, "rank_d_prime")?,
            rank_total: num(x, "rank_total")?,
            homology_dim,
        });
    }
    let rep = HomologyReport {
        truncation: num(v, "truncation")?,
        which,
        cohomology: flag("cohomology")?,
        rows,
        top_kernel: num(v, "top_kernel")?,
        euler_holds: flag("euler_holds")?,
        identities: [flag("d_squared_zero")?, flag("d_prime_squared_zero")?, flag("anticommute")?],
    };
    Ok((rep, line))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ydbraid_core::hopf::group_algebra;
    use ydbraid_core::yd::regular_yd;

    fn tmp(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("ydbraid-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        dir.join(name)
    }

    #[test]
    fn bialgebra_round_trip_is_canonical() {
        let b = group_algebra(Field::Rational, &GroupTable::symmetric3()).unwrap();
        let p = tmp("s3.json");
        write_json(Some(&p), &bialgebra_to_json(&b)).unwrap();
        let back = load_bialgebra(&p).unwrap();
        assert_eq!(back, b);
        assert_eq!(bialgebra_to_json(&back), bialgebra_to_json(&b));
    }

    #[test]
    fn module_round_trip_with_path_reference() {
        let b = Arc::new(group_algebra(Field::Prime(5), &GroupTable::cyclic(3).unwrap()).unwrap());
        let m = regular_yd(b.clone()).unwrap();
        let hp = tmp("z3.json");
        write_json(Some(&hp), &bialgebra_to_json(&b)).unwrap();
        let mut v = yd_to_json(&m);
        v["hopf"] = json!("z3.json");
        let mp = tmp("z3-reg.json");
        write_json(Some(&mp), &v).unwrap();
        let back = load_module(&mp, Some(&b)).unwrap().yd(&mp).unwrap();
        assert_eq!(back.lambda, m.lambda);
        assert_eq!(back.delta, m.delta);
    }

    #[test]
    fn zero_denominator_names_the_field() {
        let b = group_algebra(Field::Rational, &GroupTable::cyclic(2).unwrap()).unwrap();
        let mut v = bialgebra_to_json(&b);
        v["counit"][1] = json!("1/0");
        let p = tmp("bad.json");
        write_json(Some(&p), &v).unwrap();
        let err = load_bialgebra(&p).unwrap_err().to_string();
        assert!(err.contains("counit[1]"), "{err}");
        assert_eq!(load_bialgebra(&p).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn syntax_errors_report_line_and_column() {
        let p = tmp("broken.json");
        fs::write(&p, "{\n  \"type\": \"bialgebra\",\n  \"dim\": ,\n}").unwrap();
        let err = load_bialgebra(&p).unwrap_err().to_string();
        assert!(err.contains("line 3"), "{err}");
    }

    #[test]
    fn prime_field_coefficients_are_reduced() {
        let b = group_algebra(Field::Prime(5), &GroupTable::cyclic(2).unwrap()).unwrap();
        let mut v = bialgebra_to_json(&b);
        v["counit"][0] = json!(6);
        v["unit"][0] = json!("-4");
        let p = tmp("f5.json");
        write_json(Some(&p), &v).unwrap();
        assert_eq!(load_bialgebra(&p).unwrap(), b);
    }

    #[test]
    fn field_mismatch_across_files_is_rejected() {
        let q = Arc::new(group_algebra(Field::Rational, &GroupTable::cyclic(2).unwrap()).unwrap());
        let f5 = Arc::new(group_algebra(Field::Prime(5), &GroupTable::cyclic(2).unwrap()).unwrap());
        let p = tmp("z2-f5-reg.json");
        write_json(Some(&p), &yd_to_json(&regular_yd(f5).unwrap())).unwrap();
        let err = load_module(&p, Some(&q)).err().unwrap();
        assert!(matches!(err, CliError::Core(ydbraid_core::Error::FieldMismatch(_))), "{err}");
    }

    #[test]
    fn report_round_trip() {
        let rep = HomologyReport {
            truncation: 2,
            which: Which::Total,
            cohomology: false,
            rows: vec![
                DegreeRow { degree: 0, chain_dim: 1, rank_d: 0, rank_d_prime: 0, rank_total: 0, homology_dim: Some(1) },
                DegreeRow { degree: 1, chain_dim: 2, rank_d: 0, rank_d_prime: 0, rank_total: 0, homology_dim: Some(2) },
                DegreeRow { degree: 2, chain_dim: 3, rank_d: 0, rank_d_prime: 0, rank_total: 0, homology_dim: None },
            ],
            top_kernel: 3,
            euler_holds: true,
            identities: [true; 3],
        };
        let p = tmp("rep.json");
        write_json(Some(&p), &report_to_json(&rep, 4)).unwrap();
        assert_eq!(load_report(&p).unwrap(), (rep, 4));
    }
}
