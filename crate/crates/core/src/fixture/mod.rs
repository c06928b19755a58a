//! Flat key-block fixture files.
//!
//! ```text
//! # comment
//! name f1
//! field 1 exact
//! rank 3
//! gram
//!   1 0 0
//!   0 1 0
//!   0 0 -1
//! h20
//!   1 ; {re:0, im:1} ; 0
//! ```
//!
//! Top-level lines hold a key and optional inline arguments; indented lines
//! are rows of the preceding key. Rows containing `;` are split on it,
//! others on whitespace outside `{}` and `[]`. Optional keys: `structure_constants` (rows
//! `i j k value`, 0-based), `unit`, `involution`, `omega`, `h10`, `options`
//! (rows `key value`).

mod builtin;

pub use builtin::{builtin, BUILTIN_NAMES};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{HodgeAlgebra, StructureConstants};
use crate::hodge::{WeightOneHS, WeightTwoHS};
use crate::linalg::{Matrix, Subspace};
use crate::scalars::{
    is_square_free, parse_complex, parse_rational, ComplexQuad, FloatComplex, Rational, Scalar,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, field `{field}`: {message}")]
pub struct FixtureError {
    pub line: usize,
    pub field: String,
    pub message: String,
}

fn ferr(line: usize, field: &str, message: impl Into<String>) -> FixtureError {
    FixtureError {
        line,
        field: field.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraBlock {
    pub structure_constants: Vec<(usize, usize, usize, Rational)>,
    pub unit: Vec<Rational>,
    pub involution: Matrix<Rational>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Weight1Block {
    pub omega: Matrix<Rational>,
    pub h10: Vec<Vec<ComplexQuad>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub d: u32,
    pub backend: Backend,
    pub gram: Matrix<Rational>,
    pub h20: Vec<Vec<ComplexQuad>>,
    pub algebra: Option<AlgebraBlock>,
    pub weight1: Option<Weight1Block>,
    pub options: BTreeMap<String, String>,
}

struct Entry {
    line: usize,
    args: Vec<String>,
    rows: Vec<(usize, String)>,
}

fn split_row(s: &str) -> Vec<String> {
    if s.contains(';') {
        s.split(';').map(|x| x.trim().to_string()).collect()
    } else {
        // whitespace outside `{}` and `[]` separates entries
        let mut out = Vec::new();
        let (mut cur, mut depth) = (String::new(), 0i32);
        for c in s.chars() {
            match c {
                '{' | '[' => depth += 1,
                '}' | ']' => depth -= 1,
                _ => {}
            }
            if c.is_whitespace() && depth <= 0 {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            } else {
                cur.push(c);
            }
        }
        if !cur.is_empty() {
            out.push(cur);
        }
        out
    }
}

const KEYS: [&str; 11] = [
    "name",
    "field",
    "rank",
    "gram",
    "h20",
    "structure_constants",
    "unit",
    "involution",
    "omega",
    "h10",
    "options",
];

fn rational_rows(e: &Entry, key: &str) -> Result<Vec<Vec<Rational>>, FixtureError> {
    e.rows
        .iter()
        .map(|(ln, r)| {
            split_row(r)
                .iter()
                .map(|t| parse_rational(t).map_err(|x| ferr(*ln, key, x.to_string())))
                .collect()
        })
        .collect()
}

fn complex_rows(e: &Entry, key: &str, d: u32) -> Result<Vec<Vec<ComplexQuad>>, FixtureError> {
    e.rows
        .iter()
        .map(|(ln, r)| {
            split_row(r)
                .iter()
                .map(|t| parse_complex(t, d).map_err(|x| ferr(*ln, key, x.to_string())))
                .collect()
        })
        .collect()
}

fn square(e: &Entry, key: &str, n: usize) -> Result<Matrix<Rational>, FixtureError> {
    let rows = rational_rows(e, key)?;
    if rows.len() != n {
        return Err(ferr(
            e.line,
            key,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    for (k, r) in rows.iter().enumerate() {
        if r.len() != n {
            return Err(ferr(
                e.rows[k].0,
                key,
                format!("expected {n} entries, found {}", r.len()),
            ));
        }
    }
    Matrix::from_rows(rows).map_err(|x| ferr(e.line, key, x.to_string()))
}

pub fn parse_fixture(text: &str) -> Result<Fixture, FixtureError> {
    let mut entries: BTreeMap<String, Entry> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with([' ', '\t']) {
            let key = current
                .as_ref()
                .ok_or_else(|| ferr(ln, "", "indented row before any key"))?;
            entries
                .get_mut(key)
                .expect("current key")
                .rows
                .push((ln, line.trim().to_string()));
            continue;
        }
        let mut parts = line.split_whitespace();
        let key = parts.next().expect("nonempty").to_string();
        if !KEYS.contains(&key.as_str()) {
            return Err(ferr(ln, &key, "unknown key"));
        }
        if entries.contains_key(&key) {
            return Err(ferr(ln, &key, "duplicate key"));
        }
        let args: Vec<String> = parts.map(str::to_string).collect();
        entries.insert(
            key.clone(),
            Entry {
                line: ln,
                args,
                rows: Vec::new(),
            },
        );
        current = Some(key);
    }
    let get = |k: &str| {
        entries
            .get(k)
            .ok_or_else(|| ferr(0, k, "missing required key"))
    };

    let name_e = get("name")?;
    let name = name_e.args.join(" ");
    if name.is_empty() {
        return Err(ferr(name_e.line, "name", "empty name"));
    }
    let field = get("field")?;
    let d: u32 = field
        .args
        .first()
        .ok_or_else(|| ferr(field.line, "field", "expected `field <d> [exact|float]`"))?
        .parse()
        .map_err(|_| ferr(field.line, "field", "d must be a positive integer"))?;
    if !is_square_free(d) {
        return Err(ferr(
            field.line,
            "field",
            format!("d = {d} is not square-free"),
        ));
    }
    let backend = match field.args.get(1).map(String::as_str) {
        None | Some("exact") => Backend::Exact,
        Some("float") => Backend::Float,
        Some(o) => return Err(ferr(field.line, "field", format!("unknown backend `{o}`"))),
    };
    let rank_e = get("rank")?;
    let n: usize = rank_e
        .args
        .first()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| ferr(rank_e.line, "rank", "expected a nonnegative integer"))?;

    let gram_e = get("gram")?;
    let gram = square(gram_e, "gram", n)?;
    for i in 0..n {
        for j in 0..i {
            if gram[(i, j)] != gram[(j, i)] {
                return Err(ferr(
                    gram_e.rows[i].0,
                    "gram",
                    format!(
                        "not symmetric: gram[{j}][{i}] = {} but gram[{i}][{j}] = {}",
                        gram[(j, i)],
                        gram[(i, j)]
                    ),
                ));
            }
        }
    }
    let h20_e = get("h20")?;
    let h20 = complex_rows(h20_e, "h20", d)?;
    for (k, v) in h20.iter().enumerate() {
        if v.len() != n {
            return Err(ferr(
                h20_e.rows[k].0,
                "h20",
                format!("expected {n} entries, found {}", v.len()),
            ));
        }
    }

    let alg_keys = ["structure_constants", "unit", "involution"];
    let present: Vec<&str> = alg_keys
        .iter()
        .copied()
        .filter(|k| entries.contains_key(*k))
        .collect();
    let algebra = if present.is_empty() {
        None
    } else {
        for k in alg_keys {
            get(k)?;
        }
        let sc_e = get("structure_constants")?;
        let mut sc = Vec::new();
        for (ln, r) in &sc_e.rows {
            let t = split_row(r);
            if t.len() != 4 {
                return Err(ferr(*ln, "structure_constants", "expected `i j k value`"));
            }
            let mut idx = [0usize; 3];
            for (slot, tok) in idx.iter_mut().zip(&t) {
                *slot = tok
                    .parse()
                    .map_err(|_| ferr(*ln, "structure_constants", format!("bad index `{tok}`")))?;
                if *slot >= n {
                    return Err(ferr(
                        *ln,
                        "structure_constants",
                        format!("index {slot} out of range for rank {n}"),
                    ));
                }
            }
            let v = parse_rational(&t[3])
                .map_err(|x| ferr(*ln, "structure_constants", x.to_string()))?;
            sc.push((idx[0], idx[1], idx[2], v));
        }
        let unit_e = get("unit")?;
        let mut unit_rows = rational_rows(unit_e, "unit")?;
        let inline: Vec<Rational> = unit_e
            .args
            .iter()
            .map(|t| parse_rational(t).map_err(|x| ferr(unit_e.line, "unit", x.to_string())))
            .collect::<Result<_, _>>()?;
        let unit = if inline.is_empty() {
            unit_rows.pop().unwrap_or_default()
        } else {
            inline
        };
        if unit.len() != n {
            return Err(ferr(
                unit_e.line,
                "unit",
                format!("expected {n} entries, found {}", unit.len()),
            ));
        }
        let involution = square(get("involution")?, "involution", n)?;
        Some(AlgebraBlock {
            structure_constants: sc,
            unit,
            involution,
        })
    };

    let weight1 = match (entries.get("omega"), entries.get("h10")) {
        (None, None) => None,
        (Some(o), Some(h)) => {
            let m = o.rows.len();
            let omega = square(o, "omega", m)?;
            let h10 = complex_rows(h, "h10", d)?;
            for (k, v) in h10.iter().enumerate() {
                if v.len() != m {
                    return Err(ferr(
                        h.rows[k].0,
                        "h10",
                        format!("expected {m} entries, found {}", v.len()),
                    ));
                }
            }
            Some(Weight1Block { omega, h10 })
        }
        (Some(o), None) => return Err(ferr(o.line, "h10", "missing required key (omega given)")),
        (None, Some(h)) => return Err(ferr(h.line, "omega", "missing required key (h10 given)")),
    };

    let mut options = BTreeMap::new();
    if let Some(e) = entries.get("options") {
        for (ln, r) in &e.rows {
            let mut it = r.splitn(2, char::is_whitespace);
            let k = it.next().unwrap_or("").to_string();
            let v = it.next().unwrap_or("").trim().to_string();
            if k.is_empty() {
                return Err(ferr(*ln, "options", "empty option"));
            }
            options.insert(k, v);
        }
    }

    Ok(Fixture {
        name,
        d,
        backend,
        gram,
        h20,
        algebra,
        weight1,
        options,
    })
}

fn write_matrix(out: &mut String, key: &str, m: &Matrix<Rational>) {
    let _ = writeln!(out, "{key}");
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
}

fn write_vectors(out: &mut String, key: &str, vs: &[Vec<ComplexQuad>]) {
    let _ = writeln!(out, "{key}");
    for v in vs {
        let row: Vec<String> = v.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "  {}", row.join(" ; "));
    }
}

/// Canonical text of a fixture; `parse_fixture(serialize(f)) == f`.
pub fn serialize(f: &Fixture) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "name {}", f.name);
    let b = match f.backend {
        Backend::Exact => "exact",
        Backend::Float => "float",
    };
    let _ = writeln!(out, "field {} {b}", f.d);
    let _ = writeln!(out, "rank {}", f.gram.rows());
    write_matrix(&mut out, "gram", &f.gram);
    write_vectors(&mut out, "h20", &f.h20);
    if let Some(a) = &f.algebra {
        let _ = writeln!(out, "structure_constants");
        for (i, j, k, v) in &a.structure_constants {
            let _ = writeln!(out, "  {i} {j} {k} {v}");
        }
        let unit: Vec<String> = a.unit.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "unit {}", unit.join(" "));
        write_matrix(&mut out, "involution", &a.involution);
    }
    if let Some(w) = &f.weight1 {
        write_matrix(&mut out, "omega", &w.omega);
        write_vectors(&mut out, "h10", &w.h10);
    }
    if !f.options.is_empty() {
        let _ = writeln!(out, "options");
        for (k, v) in &f.options {
            let _ = writeln!(out, "  {k} {v}");
        }
    }
    out
}

/// Conversion from the exact literals of a fixture to a backend.
pub trait FromLiteral: Scalar {
    fn from_literal(z: &ComplexQuad, tol: f64) -> Self;
}

impl FromLiteral for ComplexQuad {
    fn from_literal(z: &ComplexQuad, _tol: f64) -> Self {
        z.clone()
    }
}

impl FromLiteral for FloatComplex {
    fn from_literal(z: &ComplexQuad, tol: f64) -> Self {
        FloatComplex::from_exact(z, tol)
    }
}

fn convert<S: FromLiteral>(vs: &[Vec<ComplexQuad>], tol: f64) -> Vec<Vec<S>> {
    vs.iter()
        .map(|v| v.iter().map(|z| S::from_literal(z, tol)).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Hodge(#[from] crate::hodge::HodgeError),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
}

impl Fixture {
    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// `tol` only matters for the float backend.
    pub fn hodge<S: FromLiteral>(&self, tol: f64) -> Result<WeightTwoHS<S>, BuildError> {
        let n = self.rank();
        Ok(WeightTwoHS::new(
            self.gram.clone(),
            Subspace::span(n, &convert::<S>(&self.h20, tol)),
        )?)
    }

    pub fn algebra<S: FromLiteral>(&self, tol: f64) -> Result<Option<HodgeAlgebra<S>>, BuildError> {
        let Some(a) = &self.algebra else {
            return Ok(None);
        };
        let n = self.rank();
        let mut sc = StructureConstants::new(n);
        for (i, j, k, v) in &a.structure_constants {
            sc.set(*i, *j, *k, v.clone());
        }
        Ok(Some(HodgeAlgebra::new(
            self.hodge(tol)?,
            sc,
            a.unit.clone(),
            a.involution.clone(),
        )?))
    }

    pub fn weight1<S: FromLiteral>(&self, tol: f64) -> Result<Option<WeightOneHS<S>>, BuildError> {
        let Some(w) = &self.weight1 else {
            return Ok(None);
        };
        let h10 = Subspace::span(w.omega.rows(), &convert::<S>(&w.h10, tol));
        Ok(Some(WeightOneHS::new(w.omega.clone(), h10)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const F1: &str = "name f1\nfield 1 exact\nrank 3\ngram\n  1 0 0\n  0 1 0\n  0 0 -1\nh20\n  1 ; {re:0, im:1} ; 0\n";

    #[test]
    fn parses_f1() {
        let f = parse_fixture(F1).unwrap();
        assert_eq!(f.rank(), 3);
        assert_eq!(f.gram[(2, 2)], Rational::from_i64(-1));
        assert_eq!(f.h20[0][1], ComplexQuad::i());
        assert_eq!(parse_fixture(&serialize(&f)).unwrap(), f);
    }

    #[test]
    fn errors_name_the_field() {
        let e = parse_fixture(&F1.replace("gram\n  1 0 0\n  0 1 0\n  0 0 -1\n", "")).unwrap_err();
        assert_eq!(e.field, "gram");
        assert!(e.to_string().contains("missing"));
        let e = parse_fixture(&F1.replace("  1 0 0\n  0 1 0", "  1 2 0\n  0 1 0")).unwrap_err();
        assert_eq!(e.field, "gram");
        assert!(e.message.contains("symmetric"));
        assert_eq!(e.line, 6);
        let e = parse_fixture(&F1.replace("{re:0, im:1}", "{re:0, im:1/0}")).unwrap_err();
        assert_eq!((e.field.as_str(), e.line), ("h20", 9));
        let e = parse_fixture(&F1.replace("field 1", "field 4")).unwrap_err();
        assert_eq!(e.field, "field");
    }

    #[test]
    fn comments_and_options() {
        let text = format!("# header\n{F1}options\n  seed 3 # trailing\n");
        let f = parse_fixture(&text).unwrap();
        assert_eq!(f.options.get("seed").map(String::as_str), Some("3"));
    }
}
