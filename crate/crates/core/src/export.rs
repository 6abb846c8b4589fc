//! JSON and CSV renderings. Simple indices and reduced words are 1-based;
//! every JSON document carries `"schema_version": 1`.

use serde_json::{json, Value};

use crate::bk::{BkTuple, ProductTable};
use crate::error::{Error, Result};
use crate::face::{ConeInequality, Direction, FaceDescriptor, RawInequality, Relation};
use crate::oracle::CertifiedSample;
use crate::weyl::{ParabolicSubset, WeylGroup};

pub const SCHEMA_VERSION: u32 = 1;

fn complement_1based(p: &ParabolicSubset) -> Vec<usize> {
    p.complement().iter().map(|k| k + 1).collect()
}

fn words(weyl: &WeylGroup, ids: &[usize]) -> Vec<Vec<usize>> {
    ids.iter().map(|&id| weyl.element(id).word_1based()).collect()
}

fn face_value(weyl: &WeylGroup, id: usize, f: &FaceDescriptor) -> Value {
    json!({
        "id": id,
        "parabolic_complement": complement_1based(&f.parabolic),
        "reps": words(weyl, &f.reps),
        "codim": f.codim,
        "equations": f.equations.iter().map(|e| json!({
            "k": e.k + 1,
            "words": words(weyl, &e.words),
        })).collect::<Vec<_>>(),
    })
}

/// The face list with optional Hasse edges `[smaller, larger]`.
pub fn faces_json(weyl: &WeylGroup, s: usize, faces: &[FaceDescriptor], edges: Option<&[(usize, usize)]>) -> Value {
    let mut doc = json!({
        "schema_version": SCHEMA_VERSION,
        "cartan_type": weyl.root_system().cartan_type().to_string(),
        "s": s,
        "faces": faces.iter().enumerate().map(|(i, f)| face_value(weyl, i, f)).collect::<Vec<_>>(),
    });
    if let Some(edges) = edges {
        doc["edges"] = json!(edges.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>());
    }
    doc
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::Positive => "positive",
        Direction::Negative => "negative",
        Direction::Equality => "equality",
    }
}

fn relation_name(r: Relation) -> &'static str {
    match r {
        Relation::Ge => ">=",
        Relation::Eq => "=",
    }
}

/// Oriented facets: each carries its face data and the primitive integer
/// coefficients on `(nu_0, ..., nu_s)` in fundamental coordinates.
pub fn facets_json(weyl: &WeylGroup, s: usize, faces: &[FaceDescriptor], ineqs: &[ConeInequality]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "cartan_type": weyl.root_system().cartan_type().to_string(),
        "s": s,
        "facets": ineqs.iter().map(|i| {
            let raw = i.to_raw();
            let mut v = face_value(weyl, i.face, &faces[i.face]);
            v["direction"] = json!(direction_name(i.direction));
            v["relation"] = json!(relation_name(raw.relation));
            v["coefficients"] = json!(raw.coeffs);
            v
        }).collect::<Vec<_>>(),
    })
}

pub fn theta_json(weyl: &WeylGroup, s: usize, tuples: &[BkTuple]) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "type": weyl.root_system().cartan_type().to_string(),
        "s": s,
        "tuples": tuples.iter().map(|t| json!({
            "parabolic": complement_1based(&t.parabolic),
            "reps": words(weyl, &t.reps),
            "cup_coeff": t.cup_coeff,
        })).collect::<Vec<_>>(),
    })
}

pub fn sample_json(weyl: &WeylGroup, sample: &CertifiedSample) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "cartan_type": weyl.root_system().cartan_type().to_string(),
        "s": sample.s,
        "box": sample.box_bound,
        "depth": sample.depth,
        "points": sample.points.iter().map(|p| json!({"tuple": p.tuple, "k": p.k})).collect::<Vec<_>>(),
    })
}

pub fn table_json(weyl: &WeylGroup, kind: &str, table: &ProductTable) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "cartan_type": weyl.root_system().cartan_type().to_string(),
        "kind": kind,
        "parabolic_complement": complement_1based(&table.parabolic),
        "entries": table.entries.iter().map(|e| json!({
            "left": weyl.element(e.left).word_1based(),
            "right": weyl.element(e.right).word_1based(),
            "terms": e.terms.iter().map(|&(c, k)| json!({
                "class": weyl.element(c).word_1based(),
                "coeff": k,
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Config(format!("csv: {e}"))
}

fn header(rank: usize, s: usize) -> Vec<String> {
    let mut h = vec!["relation".to_string()];
    for i in 0..=s {
        for j in 0..rank {
            h.push(format!("nu{i}_{}", j + 1));
        }
    }
    h
}

/// One row per inequality: relation, then the coefficients on the
/// fundamental coordinates of each `nu_i`. The block for `nu_i` is the
/// simple-coroot expansion of `u_i omega_k^vee`.
pub fn inequalities_csv(rank: usize, s: usize, ineqs: &[RawInequality]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header(rank, s)).map_err(csv_error)?;
    for i in ineqs {
        let mut row = vec![relation_name(i.relation).to_string()];
        row.extend(i.coeffs.iter().map(i64::to_string));
        w.write_record(&row).map_err(csv_error)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}

/// Reads the format written by [`inequalities_csv`].
pub fn parse_inequalities_csv(text: &str, rank: usize, s: usize) -> Result<Vec<RawInequality>> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let width = rank * (s + 1);
    let mut out = Vec::new();
    for (n, rec) in r.records().enumerate() {
        let rec = rec.map_err(csv_error)?;
        if rec.len() != width + 1 {
            return Err(Error::Config(format!(
                "inequality row {} has {} fields, expected {}",
                n + 1,
                rec.len(),
                width + 1
            )));
        }
        let relation = match &rec[0] {
            ">=" => Relation::Ge,
            "=" => Relation::Eq,
            other => return Err(Error::Config(format!("unknown relation {other:?} in row {}", n + 1))),
        };
        let coeffs = rec
            .iter()
            .skip(1)
            .map(|x| x.parse::<i64>().map_err(|e| Error::Config(format!("row {}: {e}", n + 1))))
            .collect::<Result<_>>()?;
        out.push(RawInequality { coeffs, relation });
    }
    Ok(out)
}

/// One row per face; reps are reduced words joined by `|`.
pub fn faces_csv(weyl: &WeylGroup, faces: &[FaceDescriptor]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["id", "codim", "parabolic_complement", "reps"]).map_err(csv_error)?;
    for (i, f) in faces.iter().enumerate() {
        let comp: Vec<String> = complement_1based(&f.parabolic).iter().map(usize::to_string).collect();
        let reps: Vec<String> = f.reps.iter().map(|&u| weyl.element(u).to_string()).collect();
        w.write_record([i.to_string(), f.codim.to_string(), comp.join(" "), reps.join("|")])
            .map_err(csv_error)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}

pub fn table_csv(weyl: &WeylGroup, table: &ProductTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["left", "right", "class", "coeff"]).map_err(csv_error)?;
    for e in &table.entries {
        for &(c, k) in &e.terms {
            w.write_record([
                weyl.element(e.left).to_string(),
                weyl.element(e.right).to_string(),
                weyl.element(c).to_string(),
                k.to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    String::from_utf8(w.into_inner().map_err(csv_error)?).map_err(csv_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_round_trip() {
        let ineqs = vec![
            RawInequality { coeffs: vec![-1, 1, 1], relation: Relation::Ge },
            RawInequality { coeffs: vec![1, 0, -1], relation: Relation::Eq },
        ];
        let text = inequalities_csv(1, 2, &ineqs).unwrap();
        assert!(text.starts_with("relation,nu0_1,nu1_1,nu2_1\n"));
        assert_eq!(parse_inequalities_csv(&text, 1, 2).unwrap(), ineqs);
        assert!(parse_inequalities_csv("relation,a\n>=,1\n", 1, 2).is_err());
        assert!(parse_inequalities_csv("relation,a,b,c\n<,1,2,3\n", 1, 2).is_err());
    }
}
