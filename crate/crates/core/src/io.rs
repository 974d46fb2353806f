//! File formats: JSON-lines sequences, model specs and edge lists.
//!
//! Sequence file, one JSON object per line:
//!
//! ```text
//! {"format":1,"sig":[2],"n":2}
//! {"i":1,"rels":[[[1,2]]]}
//! {"i":2,"rels":[[[3,1]]]}
//! ```
//!
//! `rels[j-1]` lists the tuples of slot `j`; trailing empty slots are omitted.
//!
//! Model file:
//!
//! ```text
//! {"format":1,"sig":[1],"support":[{"code":"{1:[(1)]}","weight":"1/2"},{"code":"{1:[(0)]}","weight":"1/2"}]}
//! ```
//!
//! or a mixture `{"format":1,"components":[{"weight":"1/2","model":{...}}, ...]}`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::canonical::RelSequence;
use crate::error::{Error, Result};
use crate::simplex::{MixingMeasure, SimplexPoint};
use crate::structure::{Signature, Structure};
use crate::weight::Weight;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    format: u32,
    sig: Vec<usize>,
    n: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Item {
    i: usize,
    rels: Vec<Vec<Vec<i64>>>,
}

fn line_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Line {
        line,
        msg: msg.into(),
    }
}

/// Writes a sequence as JSON lines.
pub fn write_sequence_to<W: Write>(x: &RelSequence, mut out: W) -> Result<()> {
    let header = Header {
        format: FORMAT_VERSION,
        sig: x.sig().arities().to_vec(),
        n: x.len(),
    };
    writeln!(out, "{}", serde_json::to_string(&header).expect("serializable"))?;
    for (i, s) in x.items().iter().enumerate() {
        let item = Item {
            i: i + 1,
            rels: s
                .slots()
                .iter()
                .map(|slot| slot.iter().cloned().collect())
                .collect(),
        };
        writeln!(out, "{}", serde_json::to_string(&item).expect("serializable"))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_sequence(x: &RelSequence, path: impl AsRef<Path>) -> Result<()> {
    write_sequence_to(x, BufWriter::new(File::create(path)?))
}

/// Reads a sequence, reporting the offending line on any schema problem.
pub fn read_sequence_from<R: BufRead>(input: R) -> Result<RelSequence> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty()));
    let (hl, header) = lines
        .next()
        .ok_or_else(|| line_err(1, "missing header line"))?;
    let header: Header = serde_json::from_str(&header?)
        .map_err(|e| line_err(hl, format!("bad header: {e}")))?;
    if header.format != FORMAT_VERSION {
        return Err(line_err(hl, format!("unsupported format {}", header.format)));
    }
    let sig = Signature::new(header.sig).map_err(|e| line_err(hl, e.to_string()))?;

    let mut items = Vec::with_capacity(header.n);
    let mut last_line = hl;
    for (ln, line) in lines {
        last_line = ln;
        let item: Item =
            serde_json::from_str(&line?).map_err(|e| line_err(ln, format!("bad item: {e}")))?;
        if item.i != items.len() + 1 {
            return Err(line_err(
                ln,
                format!("position {} out of order, expected {}", item.i, items.len() + 1),
            ));
        }
        let s = Structure::from_slots(item.rels);
        s.validate(&sig).map_err(|e| line_err(ln, e.to_string()))?;
        items.push(s);
    }
    if items.len() != header.n {
        return Err(line_err(
            last_line,
            format!("header declares n = {} but {} items follow", header.n, items.len()),
        ));
    }
    RelSequence::new(sig, items)
}

pub fn read_sequence(path: impl AsRef<Path>) -> Result<RelSequence> {
    read_sequence_from(BufReader::new(File::open(path)?))
}

/// Reads `src dst` lines as a sequence of single-edge structures, in file
/// order. Undirected edges store both orientations. Blank lines and lines
/// starting with `#` are skipped.
pub fn read_edge_list_from<R: BufRead>(input: R, directed: bool) -> Result<RelSequence> {
    let mut items = Vec::new();
    for (k, line) in input.lines().enumerate() {
        let ln = k + 1;
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(line_err(ln, format!("expected 'src dst', got {t:?}")));
        }
        let id = |s: &str| -> Result<i64> {
            match s.parse::<i64>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(line_err(ln, format!("{s:?} is not a positive integer id"))),
            }
        };
        let (a, b) = (id(fields[0])?, id(fields[1])?);
        if a == b {
            return Err(line_err(ln, format!("self-loop {a} {b}")));
        }
        items.push(if directed {
            Structure::pair(a, b)
        } else {
            Structure::in_slot(1, [vec![a, b], vec![b, a]])
        });
    }
    RelSequence::new(Signature::pairs(), items)
}

pub fn read_edge_list(path: impl AsRef<Path>, directed: bool) -> Result<RelSequence> {
    read_edge_list_from(BufReader::new(File::open(path)?), directed)
}

/// A parsed model file.
#[derive(Clone, Debug)]
pub enum Model {
    Point(SimplexPoint),
    Mixture(MixingMeasure),
}

impl Model {
    pub fn sig(&self) -> Option<&Signature> {
        match self {
            Model::Point(f) => Some(f.sig()),
            Model::Mixture(MixingMeasure::Finite(c)) => c.first().map(|(_, f)| f.sig()),
            Model::Mixture(MixingMeasure::Generator(_)) => None,
        }
    }

    pub fn mixing_measure(&self) -> MixingMeasure {
        match self {
            Model::Point(f) => MixingMeasure::single(f.clone()),
            Model::Mixture(m) => m.clone(),
        }
    }
}

fn check_format(v: &Value) -> Result<()> {
    match v.get("format") {
        None => Ok(()),
        Some(f) if f.as_u64() == Some(FORMAT_VERSION as u64) => Ok(()),
        Some(f) => Err(Error::Parse(format!("unsupported format {f}"))),
    }
}

/// Point spec as JSON, codes in enumeration order.
pub fn point_to_json(f: &SimplexPoint) -> Value {
    json!({
        "format": FORMAT_VERSION,
        "sig": f.sig().arities(),
        "support": f.codes_in_enumeration_order().into_iter().map(|c| json!({
            "code": c.encode(),
            "weight": f.support()[c].to_json(),
        })).collect::<Vec<_>>(),
    })
}

pub fn point_from_json(v: &Value) -> Result<SimplexPoint> {
    check_format(v)?;
    let sig: Vec<usize> = serde_json::from_value(
        v.get("sig").cloned().ok_or_else(|| Error::Parse("model lacks \"sig\"".into()))?,
    )
    .map_err(|e| Error::Parse(format!("bad sig: {e}")))?;
    let sig = Signature::new(sig)?;
    let support = v
        .get("support")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("model lacks a \"support\" array".into()))?;
    let entries = support
        .iter()
        .map(|e| {
            let code = e
                .get("code")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse(format!("support entry {e} lacks \"code\"")))?;
            let weight = e
                .get("weight")
                .ok_or_else(|| Error::Parse(format!("support entry {e} lacks \"weight\"")))?;
            Ok((Structure::decode(code)?, Weight::from_json(weight)?))
        })
        .collect::<Result<Vec<_>>>()?;
    SimplexPoint::new(sig, entries)
}

pub fn model_to_json(m: &Model) -> Result<Value> {
    match m {
        Model::Point(f) => Ok(point_to_json(f)),
        Model::Mixture(MixingMeasure::Finite(c)) => Ok(json!({
            "format": FORMAT_VERSION,
            "components": c.iter().map(|(w, f)| json!({
                "weight": w.to_json(),
                "model": point_to_json(f),
            })).collect::<Vec<_>>(),
        })),
        Model::Mixture(MixingMeasure::Generator(_)) => Err(Error::InvalidArgument(
            "generator mixtures cannot be serialized".into(),
        )),
    }
}

pub fn model_from_json(v: &Value) -> Result<Model> {
    check_format(v)?;
    if let Some(components) = v.get("components") {
        let components = components
            .as_array()
            .ok_or_else(|| Error::Parse("\"components\" must be an array".into()))?
            .iter()
            .map(|c| {
                let w = c
                    .get("weight")
                    .ok_or_else(|| Error::Parse("component lacks \"weight\"".into()))?;
                let m = c
                    .get("model")
                    .ok_or_else(|| Error::Parse("component lacks \"model\"".into()))?;
                Ok((Weight::from_json(w)?, point_from_json(m)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Model::Mixture(MixingMeasure::finite(components)?))
    } else {
        Ok(Model::Point(point_from_json(v)?))
    }
}

pub fn read_model_from<R: Read>(input: R) -> Result<Model> {
    let v: Value = serde_json::from_reader(input).map_err(|e| Error::Parse(e.to_string()))?;
    model_from_json(&v)
}

pub fn read_model(path: impl AsRef<Path>) -> Result<Model> {
    read_model_from(BufReader::new(File::open(path)?))
}

pub fn write_point(f: &SimplexPoint, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "{}", point_to_json(f))?;
    out.flush()?;
    Ok(())
}
