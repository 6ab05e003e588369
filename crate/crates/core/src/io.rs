//! JSON interchange for forms and operator tables, and the sparse triplet
//! text format for coboundary matrices.
//!
//! Forms: `{"degree": k, "entries": [{"clique": [labels], "value": "p/q"}]}`
//! with entries in canonical clique order. Operator tables:
//! `{"degrees": {"0": [{"basis_clique": [labels], "image": <form>}]}}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::clique::{Clique, CliqueComplex};
use crate::error::{Error, Result};
use crate::forms::Form;
use crate::graph::VertexId;
use crate::rational;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormEntryJson {
    pub clique: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormJson {
    pub degree: usize,
    pub entries: Vec<FormEntryJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorEntryJson {
    pub basis_clique: Vec<String>,
    pub image: FormJson,
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct OperatorTableJson {
    pub degrees: BTreeMap<String, Vec<OperatorEntryJson>>,
}

fn resolve(complex: &CliqueComplex, labels: &[String]) -> Result<Vec<VertexId>> {
    labels.iter().map(|l| complex.graph().vertex(l)).collect()
}

pub fn labels_of(complex: &CliqueComplex, vertices: &[VertexId]) -> Vec<String> {
    vertices.iter().map(|&v| complex.graph().label(v).to_owned()).collect()
}

impl FormJson {
    pub fn from_form(form: &Form) -> FormJson {
        let cx = form.complex();
        FormJson {
            degree: form.degree(),
            entries: form
                .entries()
                .map(|(c, v)| FormEntryJson {
                    clique: labels_of(cx, c.vertices()),
                    value: rational::format(v),
                })
                .collect(),
        }
    }

    /// Resolves labels against `complex`. Unsorted cliques pick up the sign
    /// of the sorting permutation; duplicate cliques are rejected.
    pub fn to_form(&self, complex: &Arc<CliqueComplex>) -> Result<Form> {
        let mut seen = std::collections::BTreeSet::new();
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            let tuple = resolve(complex, &e.clique)?;
            let mut key = tuple.clone();
            key.sort_unstable();
            if !seen.insert(key) {
                return Err(Error::Json(format!("duplicate clique {:?}", e.clique)));
            }
            entries.push((tuple, rational::parse(&e.value)?));
        }
        Form::from_entries(complex, self.degree, entries)
    }
}

/// Canonical single-line JSON for a form.
pub fn form_to_json(form: &Form) -> String {
    serde_json::to_string(&FormJson::from_form(form)).expect("form serialization is infallible")
}

pub fn form_from_json(text: &str, complex: &Arc<CliqueComplex>) -> Result<Form> {
    let raw: FormJson = serde_json::from_str(text)?;
    raw.to_form(complex)
}

/// Images of basis forms, keyed by degree and canonical basis clique.
#[derive(Debug, Clone)]
pub struct OperatorTable {
    pub complex: Arc<CliqueComplex>,
    pub images: BTreeMap<usize, BTreeMap<Clique, Form>>,
}

impl OperatorTable {
    pub fn from_json(text: &str, complex: &Arc<CliqueComplex>) -> Result<OperatorTable> {
        let raw: OperatorTableJson = serde_json::from_str(text)?;
        let mut images: BTreeMap<usize, BTreeMap<Clique, Form>> = BTreeMap::new();
        for (key, entries) in &raw.degrees {
            let degree: usize = key
                .parse()
                .map_err(|_| Error::Json(format!("degree key `{key}` is not a non-negative integer")))?;
            let slot = images.entry(degree).or_default();
            for e in entries {
                let mut vs = resolve(complex, &e.basis_clique)?;
                vs.sort_unstable();
                let clique = Clique::new(vs).map_err(|_| Error::Json(format!("repeated vertex in {:?}", e.basis_clique)))?;
                if clique.len() != degree + 1 || !complex.contains(&clique) {
                    return Err(Error::NotAClique(clique.ids()));
                }
                let image = e.image.to_form(complex)?;
                if slot.insert(clique, image).is_some() {
                    return Err(Error::Json(format!("duplicate basis clique {:?}", e.basis_clique)));
                }
            }
        }
        Ok(OperatorTable {
            complex: Arc::clone(complex),
            images,
        })
    }

    pub fn to_json(&self) -> String {
        let mut raw = OperatorTableJson::default();
        for (degree, slot) in &self.images {
            raw.degrees.insert(
                degree.to_string(),
                slot.iter()
                    .map(|(c, f)| OperatorEntryJson {
                        basis_clique: labels_of(&self.complex, c.vertices()),
                        image: FormJson::from_form(f),
                    })
                    .collect(),
            );
        }
        serde_json::to_string(&raw).expect("table serialization is infallible")
    }
}

/// Sparse integer matrix in triplet text form: a header line
/// `rows cols nnz` followed by one `row col value` line per non-zero.
pub fn triplets_to_text(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> String {
    let mut out = format!("{rows} {cols} {}\n", entries.len());
    for (r, c, v) in entries {
        out.push_str(&format!("{r} {c} {v}\n"));
    }
    out
}

/// `(rows, cols, entries)` of a parsed triplet matrix.
pub type Triplets = (usize, usize, Vec<(usize, usize, i64)>);

pub fn triplets_from_text(text: &str) -> Result<Triplets> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let parse_err = |line: usize, message: &str| Error::Parse {
        line: line + 1,
        message: message.to_owned(),
    };
    let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
    let h: Vec<usize> = header
        .split_ascii_whitespace()
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| parse_err(hl, "bad header"))?;
    let [rows, cols, nnz] = h[..] else {
        return Err(parse_err(hl, "header must be `rows cols nnz`"));
    };
    let mut entries = Vec::with_capacity(nnz);
    for (i, l) in lines {
        let t: Vec<&str> = l.split_ascii_whitespace().collect();
        let [r, c, v] = t[..] else {
            return Err(parse_err(i, "expected `row col value`"));
        };
        let r: usize = r.parse().map_err(|_| parse_err(i, "bad row"))?;
        let c: usize = c.parse().map_err(|_| parse_err(i, "bad column"))?;
        let v: i64 = v.parse().map_err(|_| parse_err(i, "bad value"))?;
        if r >= rows || c >= cols {
            return Err(parse_err(i, "index out of range"));
        }
        entries.push((r, c, v));
    }
    if entries.len() != nnz {
        return Err(parse_err(hl, "entry count does not match header"));
    }
    Ok((rows, cols, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named, Graph};
    use crate::rational::frac;

    fn triangle() -> Arc<CliqueComplex> {
        let g = Graph::parse_edge_list("a b\nb c\nc a\n").unwrap();
        CliqueComplex::build_full(Arc::new(g)).unwrap()
    }

    #[test]
    fn canonical_emission() {
        let cx = triangle();
        let text = r#"{"degree":1,"entries":[{"clique":["c","b"],"value":"2"},{"clique":["a","b"],"value":"-2/4"}]}"#;
        let f = form_from_json(text, &cx).unwrap();
        assert_eq!(
            form_to_json(&f),
            r#"{"degree":1,"entries":[{"clique":["a","b"],"value":"-1/2"},{"clique":["b","c"],"value":"-2"}]}"#
        );
    }

    #[test]
    fn rejects_bad_forms() {
        let cx = triangle();
        for bad in [
            r#"{"degree":1,"entries":[{"clique":["a","z"],"value":"1"}]}"#,
            r#"{"degree":1,"entries":[{"clique":["a"],"value":"1"}]}"#,
            r#"{"degree":1,"entries":[{"clique":["a","b"],"value":"1/0"}]}"#,
            r#"{"degree":1,"entries":[{"clique":["a","b"],"value":"1"},{"clique":["b","a"],"value":"1"}]}"#,
            r#"{"degree":1}"#,
        ] {
            assert!(form_from_json(bad, &cx).is_err(), "{bad}");
        }
    }

    #[test]
    fn zero_values_are_dropped() {
        let cx = triangle();
        let f = form_from_json(r#"{"degree":0,"entries":[{"clique":["a"],"value":"0"}]}"#, &cx).unwrap();
        assert!(f.is_zero());
        assert_eq!(form_to_json(&f), r#"{"degree":0,"entries":[]}"#);
    }

    #[test]
    fn operator_table_round_trip() {
        let cx = CliqueComplex::build_full(Arc::new(named::complete(3))).unwrap();
        let mut images = BTreeMap::new();
        let mut slot = BTreeMap::new();
        let c = cx.level(1)[0].clone();
        let img = Form::from_entries(&cx, 1, [(vec![VertexId(1), VertexId(0)], frac(1, 3))]).unwrap();
        slot.insert(c, img);
        images.insert(0, slot);
        let table = OperatorTable {
            complex: Arc::clone(&cx),
            images,
        };
        let text = table.to_json();
        let back = OperatorTable::from_json(&text, &cx).unwrap();
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn triplets() {
        let text = triplets_to_text(1, 2, &[(0, 0, -1), (0, 1, 1)]);
        assert_eq!(text, "1 2 2\n0 0 -1\n0 1 1\n");
        assert_eq!(triplets_from_text(&text).unwrap(), (1, 2, vec![(0, 0, -1), (0, 1, 1)]));
        assert!(triplets_from_text("1 1 1\n3 0 1\n").is_err());
    }
}
