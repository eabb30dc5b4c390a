//! Reading towers, field elements, points and matrices from arguments.

use std::path::{Path, PathBuf};

use serde_json::Value;
use twistalg::json::{matrix_from_json, tower_from_json};
use twistalg::{Error, FieldElement, FieldTower, Matrix3, ProjPoint, Result};

/// Directory searched for relative `--tower` files that are not found as given.
pub const TOWER_PATH_VAR: &str = "TWISTALG_TOWER_PATH";

fn resolve(file: &Path) -> PathBuf {
    if file.is_relative() && !file.exists() {
        if let Some(dir) = std::env::var_os(TOWER_PATH_VAR) {
            let candidate = Path::new(&dir).join(file);
            if candidate.exists() {
                return candidate;
            }
        }
    }
    file.to_path_buf()
}

pub fn read_json(file: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", file.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))
}

pub fn load_tower(file: Option<&Path>) -> Result<FieldTower> {
    match file {
        None => Ok(FieldTower::rationals()),
        Some(f) => tower_from_json(&read_json(&resolve(f))?),
    }
}

pub fn elements(tower: &FieldTower, items: &[String]) -> Result<Vec<FieldElement>> {
    items.iter().map(|s| FieldElement::parse(tower, s)).collect()
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// `a,b,c`, optionally wrapped in parentheses.
pub fn point(tower: &FieldTower, s: &str) -> Result<ProjPoint> {
    let s = s.trim();
    let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
    let parts = split_top(inner, ',');
    if parts.len() != 3 {
        return Err(Error::Parse(format!("point '{s}' needs three coordinates")));
    }
    let c = elements(tower, &parts.iter().map(|p| p.to_string()).collect::<Vec<_>>())?;
    ProjPoint::new([c[0].clone(), c[1].clone(), c[2].clone()])
}

/// `diag(a,b,c)`, rows separated by `;` (`1,0,0;0,1,0;0,0,2`), or a JSON
/// array of rows.
pub fn matrix(tower: &FieldTower, s: &str) -> Result<Matrix3> {
    let s = s.trim();
    if s.starts_with('[') {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
        return matrix_from_json(tower, &v);
    }
    if let Some(body) = s.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
        let d = split_top(body, ',');
        if d.len() != 3 {
            return Err(Error::Parse(format!("'{s}' needs three diagonal entries")));
        }
        let d = elements(tower, &d.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
        return Ok(Matrix3::diag(d[0].clone(), d[1].clone(), d[2].clone()));
    }
    let rows = split_top(s, ';');
    if rows.len() != 3 {
        return Err(Error::Parse(format!("matrix '{s}' needs three rows")));
    }
    let mut out = Vec::with_capacity(3);
    for r in rows {
        let e = elements(tower, &split_top(r, ',').iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
        let row: [FieldElement; 3] = e
            .try_into()
            .map_err(|_| Error::Parse(format!("matrix row '{r}' needs three entries")))?;
        out.push(row);
    }
    Matrix3::new([out[0].clone(), out[1].clone(), out[2].clone()])
}
