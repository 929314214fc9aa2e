//! JSON documents for functions, affine maps and cones.
//!
//! Rationals are always strings (`"3"`, `"-1/2"`), never JSON numbers.

use std::path::Path;

use eulercalc::ratgeom::{format_rational, parse_rational};
use eulercalc::{
    AffineCF, AffineForm, AffineMap, Arrangement, Cone, PolyhedronSpec, ProjectiveCF, Rational, Relation, Sign,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Affine,
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellEntry {
    pub signs: String,
    pub value: i64,
}

/// A constructible function on `ℝⁿ` or `ℙⁿ`.
///
/// Affine forms are `n + 1` strings (coefficients, then constant);
/// projective forms are the `n + 1` homogeneous coefficients. Cells not
/// listed have value 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CfDocument {
    pub kind: Kind,
    pub dim: usize,
    pub forms: Vec<Vec<String>>,
    #[serde(default)]
    pub cells: Vec<CellEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

#[derive(Clone, Debug)]
pub enum Function {
    Affine(AffineCF),
    Projective(ProjectiveCF),
}

impl Function {
    pub fn kind(&self) -> Kind {
        match self {
            Function::Affine(_) => Kind::Affine,
            Function::Projective(_) => Kind::Projective,
        }
    }

    pub fn affine(self) -> CliResult<AffineCF> {
        match self {
            Function::Affine(f) => Ok(f),
            Function::Projective(_) => Err(CliError::validation("expected an affine function")),
        }
    }

    pub fn projective(self) -> CliResult<ProjectiveCF> {
        match self {
            Function::Projective(f) => Ok(f),
            Function::Affine(_) => Err(CliError::validation("expected a projective function")),
        }
    }
}

fn parse_all(strings: &[String], what: &str) -> CliResult<Vec<Rational>> {
    strings
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| CliError::validation(format!("{what}, entry {i}: {e}"))))
        .collect()
}

fn format_all(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn parse_signs(s: &str, expected: usize, cell: usize) -> CliResult<Vec<Sign>> {
    let signs: Vec<Sign> = s
        .chars()
        .enumerate()
        .map(|(pos, c)| {
            Sign::from_char(c)
                .ok_or_else(|| CliError::validation(format!("cell {cell}: invalid sign {c:?} at position {pos}")))
        })
        .collect::<CliResult<_>>()?;
    if signs.len() != expected {
        return Err(CliError::validation(format!(
            "cell {cell}: sign string {s:?} has length {}, expected {expected} (one per form)",
            signs.len()
        )));
    }
    Ok(signs)
}

/// Arrangement built from the document forms plus, for each document form,
/// its index in the arrangement and whether normalization flipped it.
fn arrangement_for(doc: &CfDocument) -> CliResult<(Arrangement, Vec<(usize, bool)>)> {
    let n = doc.dim;
    let mut forms = Vec::with_capacity(doc.forms.len());
    for (i, f) in doc.forms.iter().enumerate() {
        if f.len() != n + 1 {
            return Err(CliError::validation(format!("form {i} has {} coefficients, expected {}", f.len(), n + 1)));
        }
        let coeffs = parse_all(f, &format!("form {i}"))?;
        let form = match doc.kind {
            Kind::Affine => AffineForm::new(coeffs[..n].to_vec(), coeffs[n].clone()),
            Kind::Projective => AffineForm::linear(coeffs),
        };
        if form.is_constant() {
            return Err(CliError::validation(format!("form {i} has no linear part")));
        }
        forms.push(form);
    }
    let arr = match doc.kind {
        Kind::Affine => Arrangement::new(n, forms.clone())?,
        Kind::Projective => {
            for k in 0..=n {
                let coordinate = AffineForm::coordinate(n + 1, k);
                if !forms.iter().any(|f| f.normalized().0 == coordinate) {
                    return Err(CliError::validation(format!("projective document lacks coordinate form x{}", k + 1)));
                }
            }
            Arrangement::central(n + 1, forms.clone())?
        }
    };
    let placement = forms
        .iter()
        .map(|f| {
            let (g, flipped) = f.normalized();
            (arr.form_index(&g).expect("form is in its own arrangement"), flipped)
        })
        .collect();
    Ok((arr, placement))
}

pub fn from_document(doc: &CfDocument) -> CliResult<Function> {
    let (arr, placement) = arrangement_for(doc)?;
    let mut values = vec![0i64; arr.len()];
    let mut listed = vec![false; arr.len()];
    for (ci, entry) in doc.cells.iter().enumerate() {
        let doc_signs = parse_signs(&entry.signs, doc.forms.len(), ci)?;
        let mut signs: Vec<Option<Sign>> = vec![None; arr.forms().len()];
        for (s, &(k, flipped)) in doc_signs.iter().zip(&placement) {
            let s = if flipped { s.flip() } else { *s };
            match signs[k] {
                Some(prev) if prev != s => {
                    return Err(CliError::validation(format!(
                        "cell {ci} ({}): contradictory signs for proportional forms",
                        entry.signs
                    )))
                }
                _ => signs[k] = Some(s),
            }
        }
        let signs: Vec<Sign> = signs.into_iter().map(|s| s.expect("every form placed")).collect();
        let idx = arr.find(&signs).ok_or_else(|| {
            CliError::validation(format!("cell {ci} ({}): sign vector is not realizable", entry.signs))
        })?;
        if listed[idx] && values[idx] != entry.value {
            return Err(CliError::validation(format!(
                "cell {ci} ({}): listed twice with different values",
                entry.signs
            )));
        }
        listed[idx] = true;
        values[idx] = entry.value;
    }
    Ok(match doc.kind {
        Kind::Affine => Function::Affine(AffineCF::new(arr, values)?),
        Kind::Projective => Function::Projective(ProjectiveCF::new(arr, values)?),
    })
}

fn cell_entries(arr: &Arrangement, values: &[i64]) -> Vec<CellEntry> {
    arr.cells()
        .iter()
        .zip(values)
        .filter(|(_, v)| **v != 0)
        .map(|(c, v)| CellEntry { signs: c.sign_string(), value: *v })
        .collect()
}

/// Canonical document: forms in arrangement order, nonzero cells only.
pub fn to_document(f: &Function) -> CfDocument {
    match f {
        Function::Affine(phi) => {
            let arr = phi.arrangement();
            let forms = arr
                .forms()
                .iter()
                .map(|g| {
                    let mut v = format_all(&g.linear);
                    v.push(format_rational(&g.constant));
                    v
                })
                .collect();
            CfDocument {
                kind: Kind::Affine,
                dim: phi.dim(),
                forms,
                cells: cell_entries(arr, phi.values()),
                name: None,
                comment: None,
            }
        }
        Function::Projective(phi) => {
            let arr = phi.arrangement();
            CfDocument {
                kind: Kind::Projective,
                dim: phi.n(),
                forms: arr.forms().iter().map(|g| format_all(&g.linear)).collect(),
                cells: cell_entries(arr, phi.values()),
                name: None,
                comment: None,
            }
        }
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

pub fn load(path: &Path) -> CliResult<Function> {
    from_document(&read_json(path)?)
}

pub fn to_json(doc: &CfDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn save(f: &Function, path: &Path) -> CliResult<()> {
    std::fs::write(path, to_json(&to_document(f)))
        .map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display())))
}

/// `x ↦ matrix·x + translation`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    /// Input dimension; needed when the matrix has no rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_dim: Option<usize>,
    pub matrix: Vec<Vec<String>>,
    pub translation: Vec<String>,
}

impl MapDocument {
    pub fn to_map(&self) -> CliResult<AffineMap> {
        let n_in = match (self.source_dim, self.matrix.first()) {
            (Some(n), _) => n,
            (None, Some(row)) => row.len(),
            (None, None) => return Err(CliError::validation("map with no rows needs source_dim")),
        };
        let rows = self
            .matrix
            .iter()
            .enumerate()
            .map(|(i, r)| parse_all(r, &format!("matrix row {i}")))
            .collect::<CliResult<Vec<_>>>()?;
        let t = parse_all(&self.translation, "translation")?;
        Ok(AffineMap::new(n_in, rows, t)?)
    }

    pub fn from_map(f: &AffineMap) -> Self {
        MapDocument {
            source_dim: Some(f.n_in()),
            matrix: f.rows().iter().map(|r| format_all(r)).collect(),
            translation: format_all(f.translation()),
        }
    }
}

pub fn load_map(path: &Path) -> CliResult<AffineMap> {
    read_json::<MapDocument>(path)?.to_map()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintEntry {
    /// Coefficients then constant, as for affine forms.
    pub form: Vec<String>,
    /// One of `<`, `<=`, `=`, `>=`, `>`.
    pub rel: String,
}

/// Polyhedron `{x : form REL 0 for every constraint}`; used for cones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyhedronDocument {
    pub dim: usize,
    pub constraints: Vec<ConstraintEntry>,
}

impl PolyhedronDocument {
    pub fn to_spec(&self) -> CliResult<PolyhedronSpec> {
        let n = self.dim;
        let mut spec = PolyhedronSpec::new(n);
        for (i, c) in self.constraints.iter().enumerate() {
            if c.form.len() != n + 1 {
                return Err(CliError::validation(format!(
                    "constraint {i} has {} coefficients, expected {}",
                    c.form.len(),
                    n + 1
                )));
            }
            let v = parse_all(&c.form, &format!("constraint {i}"))?;
            let rel = Relation::parse(&c.rel)
                .ok_or_else(|| CliError::validation(format!("constraint {i}: unknown relation {:?}", c.rel)))?;
            spec = spec.with(AffineForm::new(v[..n].to_vec(), v[n].clone()), rel);
        }
        Ok(spec)
    }
}

pub fn load_cone(path: &Path) -> CliResult<Cone> {
    Ok(Cone::new(&read_json::<PolyhedronDocument>(path)?.to_spec()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use eulercalc::ratgeom::rat;

    fn unit_interval() -> AffineCF {
        AffineCF::indicator(&PolyhedronSpec::closed_box(&[rat(0)], &[rat(1)])).unwrap()
    }

    #[test]
    fn save_then_load_is_cellwise_identical() {
        let f = Function::Affine(unit_interval());
        let doc = to_document(&f);
        let back = from_document(&doc).unwrap().affine().unwrap();
        let orig = unit_interval();
        assert_eq!(back.arrangement().forms(), orig.arrangement().forms());
        assert_eq!(back.values(), orig.values());
        assert_eq!(to_document(&Function::Affine(back)), doc);
    }

    #[test]
    fn omitted_zero_cells_load_identically() {
        let text = r#"{"kind":"affine","dim":1,"forms":[["1","0"],["1","-1"]],
            "cells":[{"signs":"0-","value":1},{"signs":"+-","value":1},{"signs":"+0","value":1},
                     {"signs":"--","value":0},{"signs":"++","value":0}]}"#;
        let explicit = from_document(&serde_json::from_str(text).unwrap()).unwrap().affine().unwrap();
        let sparse = to_document(&Function::Affine(explicit.clone()));
        assert_eq!(sparse.cells.len(), 3);
        assert_eq!(from_document(&sparse).unwrap().affine().unwrap().values(), explicit.values());
        assert_eq!(explicit, unit_interval());
    }

    #[test]
    fn forms_are_matched_up_to_scale_and_orientation() {
        // -2x + 2 >= 0 written with reversed orientation: "+" means x < 1
        let text = r#"{"kind":"affine","dim":1,"forms":[["-2","2"]],"cells":[{"signs":"+","value":7}]}"#;
        let f = from_document(&serde_json::from_str(text).unwrap()).unwrap().affine().unwrap();
        assert_eq!(f.evaluate(&[rat(0)]).unwrap(), 7);
        assert_eq!(f.evaluate(&[rat(2)]).unwrap(), 0);
    }

    #[test]
    fn corrupted_documents_are_rejected_with_position() {
        let bad_len = r#"{"kind":"affine","dim":1,"forms":[["1","0"]],"cells":[{"signs":"+-","value":1}]}"#;
        let e = from_document(&serde_json::from_str(bad_len).unwrap()).unwrap_err();
        assert!(e.to_string().contains("cell 0") && e.to_string().contains("length 2"), "{e}");
        let bad_char = r#"{"kind":"affine","dim":1,"forms":[["1","0"]],"cells":[{"signs":"x","value":1}]}"#;
        let e = from_document(&serde_json::from_str(bad_char).unwrap()).unwrap_err();
        assert!(e.to_string().contains("position 0"), "{e}");
        let unrealizable =
            r#"{"kind":"affine","dim":1,"forms":[["1","0"],["1","-1"]],"cells":[{"signs":"-+","value":1}]}"#;
        let e = from_document(&serde_json::from_str(unrealizable).unwrap()).unwrap_err();
        assert!(e.to_string().contains("not realizable"), "{e}");
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn projective_documents_need_coordinates_and_evenness() {
        let missing = r#"{"kind":"projective","dim":1,"forms":[["1","0"]],"cells":[]}"#;
        assert!(from_document(&serde_json::from_str(missing).unwrap()).is_err());
        let odd = r#"{"kind":"projective","dim":1,"forms":[["1","0"],["0","1"]],"cells":[{"signs":"++","value":1}]}"#;
        assert!(from_document(&serde_json::from_str(odd).unwrap()).is_err());
        let even = r#"{"kind":"projective","dim":1,"forms":[["1","0"],["0","1"]],
            "cells":[{"signs":"++","value":1},{"signs":"--","value":1}]}"#;
        let f = from_document(&serde_json::from_str(even).unwrap()).unwrap();
        assert_eq!(from_document(&to_document(&f)).unwrap().projective().unwrap(), f.projective().unwrap());
    }

    #[test]
    fn maps_and_cones_parse() {
        let m: MapDocument = serde_json::from_str(r#"{"matrix":[["1","1/2"]],"translation":["-3"]}"#).unwrap();
        let f = m.to_map().unwrap();
        assert_eq!(f.apply(&[rat(2), rat(2)]), vec![rat(0)]);
        assert_eq!(MapDocument::from_map(&f).to_map().unwrap(), f);
        let c: PolyhedronDocument =
            serde_json::from_str(r#"{"dim":1,"constraints":[{"form":["1","0"],"rel":">="}]}"#).unwrap();
        assert!(Cone::new(&c.to_spec().unwrap()).is_ok());
    }
}
