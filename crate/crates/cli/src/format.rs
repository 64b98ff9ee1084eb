//! Line-oriented table files for finite groupoids and pregroupoids.
//!
//! A groupoid file:
//!
//! ```text
//! objects: 0 1
//! arrows:          # id source target
//!   f 0 1
//!   ...
//! identity:        # object arrow
//! inverse:         # arrow arrow
//! mu:              # g h gh, composable when t(g) = s(h)
//! ```
//!
//! A pregroupoid file has sections `alpha:` (`x a`), `beta:` (`x b`),
//! `mu3:` (`x y z result`) and optionally `e:` (`b x`). `A` and `B` are the
//! values mentioned in `alpha` and `beta` (and `e`). Rows may also sit on
//! the header line; `#` starts a comment; integers are read as integers.

use std::collections::BTreeMap;
use std::path::Path;

use algebroid_core::finite::{Atom, FinMap, FinSet};
use algebroid_core::groupoid::FiniteGroupoid;
use algebroid_core::pregroupoid::FinitePregroupoid;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing section \"{0}:\"")]
    MissingSection(String),
    /// Tables that parse but do not describe a structure, e.g. a missing
    /// composite.
    #[error("{0}")]
    Table(#[from] algebroid_core::Error),
}

fn parse_err(line: usize, message: impl Into<String>) -> LoadError {
    LoadError::Parse {
        line,
        message: message.into(),
    }
}

/// A row of tokens with its 1-based line number.
type Row = (usize, Vec<Atom>);

/// Splits text into named sections of rows.
fn sections(text: &str, known: &[&str]) -> Result<BTreeMap<String, Vec<Row>>, LoadError> {
    let mut out: BTreeMap<String, Vec<Row>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some((head, rest)) = body.split_once(':') {
            let head = head.trim();
            if !known.contains(&head) {
                return Err(parse_err(
                    line,
                    format!("unknown section {head:?}; expected one of {}", known.join(", ")),
                ));
            }
            if out.contains_key(head) {
                return Err(parse_err(line, format!("section {head:?} appears twice")));
            }
            out.insert(head.to_string(), Vec::new());
            current = Some(head.to_string());
            body = rest.trim();
            if body.is_empty() {
                continue;
            }
        }
        let Some(section) = &current else {
            return Err(parse_err(line, "row before any section header"));
        };
        let row = body.split_whitespace().map(Atom::parse).collect();
        out.get_mut(section).expect("section inserted").push((line, row));
    }
    Ok(out)
}

fn required<'a>(sections: &'a BTreeMap<String, Vec<Row>>, name: &str) -> Result<&'a [Row], LoadError> {
    sections
        .get(name)
        .map(Vec::as_slice)
        .ok_or_else(|| LoadError::MissingSection(name.into()))
}

fn expect_width(name: &str, rows: &[Row], width: usize, columns: &str) -> Result<(), LoadError> {
    for (line, row) in rows {
        if row.len() != width {
            return Err(parse_err(
                *line,
                format!("{name} rows have {width} columns ({columns}), got {}", row.len()),
            ));
        }
    }
    Ok(())
}

fn member(set: &FinSet, atom: &Atom, line: usize, what: &str) -> Result<(), LoadError> {
    if set.contains(atom) {
        Ok(())
    } else {
        Err(parse_err(line, format!("{atom} is not a declared {what}")))
    }
}

/// Builds a total map from two-column rows, rejecting duplicates.
fn table_map(
    name: &str,
    rows: &[Row],
    dom: &FinSet,
    cod: &FinSet,
    dom_what: &str,
    cod_what: &str,
) -> Result<FinMap, LoadError> {
    expect_width(name, rows, 2, &format!("{dom_what} {cod_what}"))?;
    let mut table = BTreeMap::new();
    for (line, row) in rows {
        member(dom, &row[0], *line, dom_what)?;
        member(cod, &row[1], *line, cod_what)?;
        if table.insert(row[0].clone(), row[1].clone()).is_some() {
            return Err(parse_err(*line, format!("second {name} entry for {}", row[0])));
        }
    }
    if let Some(missing) = dom.iter().find(|a| !table.contains_key(*a)) {
        return Err(parse_err(
            rows.last().map_or(0, |r| r.0),
            format!("incomplete {name} table: no entry for {missing}"),
        ));
    }
    Ok(FinMap::from_table(dom.clone(), cod.clone(), table)?)
}

pub fn parse_groupoid(text: &str) -> Result<FiniteGroupoid, LoadError> {
    let s = sections(text, &["objects", "arrows", "identity", "inverse", "mu"])?;
    let mut objects = Vec::new();
    for (line, row) in required(&s, "objects")? {
        for a in row {
            if objects.contains(a) {
                return Err(parse_err(*line, format!("object {a} declared twice")));
            }
            objects.push(a.clone());
        }
    }
    let objects = FinSet::new(objects)?;

    let arrow_rows = required(&s, "arrows")?;
    expect_width("arrows", arrow_rows, 3, "id source target")?;
    let (mut ids, mut src, mut tgt) = (Vec::new(), BTreeMap::new(), BTreeMap::new());
    for (line, row) in arrow_rows {
        if ids.contains(&row[0]) {
            return Err(parse_err(*line, format!("arrow {} declared twice", row[0])));
        }
        member(&objects, &row[1], *line, "object")?;
        member(&objects, &row[2], *line, "object")?;
        ids.push(row[0].clone());
        src.insert(row[0].clone(), row[1].clone());
        tgt.insert(row[0].clone(), row[2].clone());
    }
    let arrows = FinSet::new(ids)?;
    let source = FinMap::from_table(arrows.clone(), objects.clone(), src)?;
    let target = FinMap::from_table(arrows.clone(), objects.clone(), tgt)?;
    let unit = table_map(
        "identity",
        required(&s, "identity")?,
        &objects,
        &arrows,
        "object",
        "arrow",
    )?;
    let inverse = table_map("inverse", required(&s, "inverse")?, &arrows, &arrows, "arrow", "arrow")?;

    let mu_rows = required(&s, "mu")?;
    expect_width("mu", mu_rows, 3, "g h gh")?;
    let mut mu = BTreeMap::new();
    for (line, row) in mu_rows {
        for a in row {
            member(&arrows, a, *line, "arrow")?;
        }
        if target.apply(&row[0])? != source.apply(&row[1])? {
            return Err(parse_err(
                *line,
                format!("{} then {} is not composable: t({0}) != s({1})", row[0], row[1]),
            ));
        }
        if mu.insert((row[0].clone(), row[1].clone()), row[2].clone()).is_some() {
            return Err(parse_err(
                *line,
                format!("second mu entry for ({}, {})", row[0], row[1]),
            ));
        }
    }
    Ok(FiniteGroupoid::new(
        objects, arrows, source, target, unit, inverse, &mu,
    )?)
}

pub fn parse_pregroupoid(text: &str) -> Result<FinitePregroupoid, LoadError> {
    let s = sections(text, &["alpha", "beta", "mu3", "e"])?;
    let (alpha_rows, beta_rows) = (required(&s, "alpha")?, required(&s, "beta")?);
    expect_width("alpha", alpha_rows, 2, "x a")?;
    expect_width("beta", beta_rows, 2, "x b")?;
    let unit_rows = s.get("e").map(Vec::as_slice);
    if let Some(rows) = unit_rows {
        expect_width("e", rows, 2, "b x")?;
    }

    let x = FinSet::collect(alpha_rows.iter().map(|(_, r)| r[0].clone()));
    let a = FinSet::collect(alpha_rows.iter().map(|(_, r)| r[1].clone()));
    let b = FinSet::collect(
        beta_rows
            .iter()
            .map(|(_, r)| r[1].clone())
            .chain(unit_rows.unwrap_or_default().iter().map(|(_, r)| r[0].clone())),
    );
    let alpha = table_map("alpha", alpha_rows, &x, &a, "point of X", "point of A")?;
    let beta = table_map("beta", beta_rows, &x, &b, "point of X", "point of B")?;
    let unit = unit_rows
        .map(|rows| table_map("e", rows, &b, &x, "point of B", "point of X"))
        .transpose()?;

    let mu_rows = required(&s, "mu3")?;
    expect_width("mu3", mu_rows, 4, "x y z result")?;
    let mut mu = BTreeMap::new();
    for (line, row) in mu_rows {
        for p in row {
            member(&x, p, *line, "point of X")?;
        }
        let (p, q, r) = (&row[0], &row[1], &row[2]);
        if beta.apply(p)? != beta.apply(q)? || alpha.apply(q)? != alpha.apply(r)? {
            return Err(parse_err(*line, format!("({p}, {q}, {r}) is not composable")));
        }
        if mu.insert((p.clone(), q.clone(), r.clone()), row[3].clone()).is_some() {
            return Err(parse_err(*line, format!("second mu3 entry for ({p}, {q}, {r})")));
        }
    }
    Ok(FinitePregroupoid::new(alpha, beta, &mu, unit)?)
}

/// Either kind of finite table file.
#[derive(Debug, Clone)]
pub enum FiniteTables {
    Groupoid(Box<FiniteGroupoid>),
    Pregroupoid(Box<FinitePregroupoid>),
}

/// A file is a pregroupoid file iff it has an `alpha:` section.
pub fn parse_tables(text: &str) -> Result<FiniteTables, LoadError> {
    let is_pregroupoid = text
        .lines()
        .any(|l| l.split('#').next().unwrap_or("").trim_start().starts_with("alpha:"));
    if is_pregroupoid {
        parse_pregroupoid(text).map(|p| FiniteTables::Pregroupoid(Box::new(p)))
    } else {
        parse_groupoid(text).map(|g| FiniteTables::Groupoid(Box::new(g)))
    }
}

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_finite_groupoid(path: &Path) -> Result<FiniteGroupoid, LoadError> {
    parse_groupoid(&read(path)?)
}

pub fn load_finite_pregroupoid(path: &Path) -> Result<FinitePregroupoid, LoadError> {
    parse_pregroupoid(&read(path)?)
}

pub fn load_tables(path: &Path) -> Result<FiniteTables, LoadError> {
    parse_tables(&read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIR2: &str = "\
# pair groupoid on {0, 1}
objects: 0 1
arrows:
  i0 0 0
  i1 1 1
  f  0 1
  g  1 0
identity: 0 i0
  1 i1
inverse:
  i0 i0
  i1 i1
  f g
  g f
mu:
  i0 i0 i0
  i0 f f
  i1 i1 i1
  i1 g g
  f i1 f
  f g i0
  g i0 g
  g f i1
";

    #[test]
    fn pair_groupoid_file() {
        let g = parse_groupoid(PAIR2).unwrap();
        assert_eq!(g.arrows().len(), 4);
        assert!(g.check_groupoid().unwrap().iter().all(|r| r.passed));
        assert!(g.count_bijection().unwrap().is_bijection());
    }

    #[test]
    fn z2_as_a_groupoid() {
        let text =
            "objects: *\narrows: 0 * *\n 1 * *\nidentity: * 0\ninverse: 0 0\n 1 1\nmu: 0 0 0\n 0 1 1\n 1 0 1\n 1 1 0\n";
        let g = parse_groupoid(text).unwrap();
        assert_eq!(g.arrows().len(), 2);
        assert!(g.check_groupoid().unwrap().iter().all(|r| r.passed));
    }

    #[test]
    fn missing_composite() {
        let text = PAIR2.replace("  g f i1\n", "");
        let err = parse_groupoid(&text).unwrap_err();
        assert!(err.to_string().contains("incomplete mu table"), "{err}");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = PAIR2.replace("  f  0 1", "  f  0 7");
        assert_eq!(
            parse_groupoid(&text).unwrap_err().to_string(),
            "line 6: 7 is not a declared object"
        );
        let text = PAIR2.replace("  f i1 f", "  f i0 f");
        assert!(parse_groupoid(&text)
            .unwrap_err()
            .to_string()
            .starts_with("line 20: f then i0"));
        let text = PAIR2.replace("mu:", "nu:");
        assert!(parse_groupoid(&text)
            .unwrap_err()
            .to_string()
            .starts_with("line 15: unknown section"));
        assert!(parse_groupoid("  f 0 1")
            .unwrap_err()
            .to_string()
            .starts_with("line 1: row before"));
        let text = PAIR2.replace("  f g\n", "  f g\n  f f\n");
        assert!(parse_groupoid(&text)
            .unwrap_err()
            .to_string()
            .contains("second inverse entry for f"));
    }

    #[test]
    fn pregroupoid_file() {
        // the pair pregroupoid on {0, 1} x {0, 1}, points named ab
        let mut text = String::from("alpha:\n");
        let name = |a: usize, b: usize| format!("p{a}{b}");
        for a in 0..2 {
            for b in 0..2 {
                text += &format!("  {} {a}\n", name(a, b));
            }
        }
        text += "beta:\n";
        for a in 0..2 {
            for b in 0..2 {
                text += &format!("  {} {b}\n", name(a, b));
            }
        }
        text += "mu3:\n";
        for (x, y, z) in all_triples() {
            // x o_y z = (alpha x, beta z), composable when beta x = beta y
            // and alpha y = alpha z
            if x.1 == y.1 && y.0 == z.0 {
                text += &format!(
                    "  {} {} {} {}\n",
                    name(x.0, x.1),
                    name(y.0, y.1),
                    name(z.0, z.1),
                    name(x.0, z.1)
                );
            }
        }
        text += "e: 0 p00\n  1 p01  # e(b) = (0, b)\n";
        match parse_tables(&text).unwrap() {
            FiniteTables::Pregroupoid(pg) => {
                assert_eq!(pg.carrier().len(), 4);
                assert!(pg.check_pregroupoid().unwrap().iter().all(|r| r.passed));
                assert_eq!(pg.split_cardinalities().unwrap(), (8, 8));
            }
            FiniteTables::Groupoid(_) => panic!("read as a groupoid"),
        }
        let broken = text.replace("mu3:\n", "mu3:\n  p00 p10 p00 p00\n");
        assert!(parse_pregroupoid(&broken)
            .unwrap_err()
            .to_string()
            .contains("is not composable"));
    }

    type Point = (usize, usize);

    fn all_triples() -> Vec<(Point, Point, Point)> {
        let points: Vec<Point> = (0..2).flat_map(|a| (0..2).map(move |b| (a, b))).collect();
        let mut out = Vec::new();
        for &x in &points {
            for &y in &points {
                for &z in &points {
                    out.push((x, y, z));
                }
            }
        }
        out
    }
}
