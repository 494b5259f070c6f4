//! JSON interchange format.
//!
//! ```json
//! {
//!   "ambient": { "factors": ["A2"], "torus_rank": 0 },
//!   "weight_lattice": [[1, 1]],
//!   "spherical_roots": [{ "coords": [1, 1], "doubling": 1 }],
//!   "colors": [
//!     { "id": "D1", "phi": [1], "moved_roots": [1] },
//!     { "id": "D2", "phi": [1], "moved_roots": [2] }
//!   ],
//!   "weight_monoid": { "generators": [[1, 1]] }
//! }
//! ```
//!
//! Integers are JSON numbers, or decimal strings when they do not fit in 64
//! bits. Rationals are numbers or strings `"p/q"`. A polytope document has
//! top-level `vertices` and `isotropy_label`; the same object may also sit
//! under `delzant` in a datum document.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::compare::DelzantData;
use crate::datum::{ColorRecord, SphericalDatum, SphericalRoot};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::monoid::WeightMonoid;
use crate::rootsys::{CartanType, ParabolicSet, RootSystem};
use crate::{Int, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
struct JInt(Int);

impl Serialize for JInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(x) => s.serialize_i64(x),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct JIntVisitor;

impl<'de> Visitor<'de> for JIntVisitor {
    type Value = JInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JInt, E> {
        Ok(JInt(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JInt, E> {
        Ok(JInt(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JInt, E> {
        v.trim().parse().map(JInt).map_err(|_| E::custom(format!("{v:?} is not an integer")))
    }
}

impl<'de> Deserialize<'de> for JInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(JIntVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct JRat(Rat);

impl Serialize for JRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            JInt(self.0.to_integer()).serialize(s)
        } else {
            s.serialize_str(&format!("{}/{}", self.0.numer(), self.0.denom()))
        }
    }
}

struct JRatVisitor;

impl<'de> Visitor<'de> for JRatVisitor {
    type Value = JRat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a rational string \"p/q\"")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JRat, E> {
        Ok(JRat(Rat::from_integer(v.into())))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JRat, E> {
        Ok(JRat(Rat::from_integer(v.into())))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JRat, E> {
        let bad = || E::custom(format!("{v:?} is not a rational number"));
        let (p, q) = match v.split_once('/') {
            Some((p, q)) => (p.trim().parse::<Int>().map_err(|_| bad())?, q.trim().parse::<Int>().map_err(|_| bad())?),
            None => (v.trim().parse::<Int>().map_err(|_| bad())?, Int::from(1)),
        };
        if q == Int::from(0) {
            return Err(E::custom(format!("{v:?} has zero denominator")));
        }
        Ok(JRat(Rat::new(p, q)))
    }
}

impl<'de> Deserialize<'de> for JRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(JRatVisitor)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AmbientDoc {
    factors: Vec<String>,
    #[serde(default)]
    torus_rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    levi: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RootDoc {
    coords: Vec<JInt>,
    doubling: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coroot: Option<Vec<JRat>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColorDoc {
    id: String,
    phi: Vec<JInt>,
    moved_roots: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidDoc {
    generators: Vec<Vec<JInt>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DelzantDoc {
    vertices: Vec<Vec<JRat>>,
    isotropy_label: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumDoc {
    ambient: AmbientDoc,
    weight_lattice: Vec<Vec<JInt>>,
    spherical_roots: Vec<RootDoc>,
    colors: Vec<ColorDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight_monoid: Option<MonoidDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    delzant: Option<DelzantDoc>,
}

/// A parsed datum document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub datum: SphericalDatum,
    pub delzant: Option<DelzantData>,
}

fn ints(v: &[JInt]) -> Vec<Int> {
    v.iter().map(|x| x.0.clone()).collect()
}

fn jints(v: &[Int]) -> Vec<JInt> {
    v.iter().cloned().map(JInt).collect()
}

fn at<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::InvalidInput(format!("{path}: {}", e.message())))
}

fn syntax(e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("malformed document: {e}"))
}

pub fn parse_document(text: &str) -> Result<Document> {
    let doc: DatumDoc = serde_json::from_str(text).map_err(syntax)?;
    let factors = doc
        .ambient
        .factors
        .iter()
        .enumerate()
        .map(|(i, f)| at(&format!("ambient.factors[{i}]"), f.parse::<CartanType>()))
        .collect::<Result<Vec<_>>>()?;
    let mut ambient = at("ambient", RootSystem::new(&factors, doc.ambient.torus_rank))?;
    if let Some(levi) = &doc.ambient.levi {
        ambient = at("ambient.levi", ambient.restrict(&ParabolicSet::new(levi.iter().copied())))?;
    }
    let n = ambient.ambient_rank();
    let rows: Vec<Vec<Int>> = doc.weight_lattice.iter().map(|r| ints(r)).collect();
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(Error::InvalidInput(format!(
            "weight_lattice[{i}]: has {} entries, ambient rank is {n}",
            rows[i].len()
        )));
    }
    let lattice = at("weight_lattice", Lattice::new(n, &rows))?;
    let mut roots = Vec::new();
    for (i, r) in doc.spherical_roots.iter().enumerate() {
        if !matches!(r.doubling, 1 | 2) {
            return Err(Error::InvalidInput(format!(
                "spherical_roots[{i}].doubling: must be 1 or 2, got {}",
                r.doubling
            )));
        }
        let mut root = SphericalRoot::new(ints(&r.coords), r.doubling as u8);
        if let Some(c) = &r.coroot {
            root = root.with_coroot(c.iter().map(|x| x.0.clone()).collect());
        }
        roots.push(root);
    }
    let colors = doc
        .colors
        .iter()
        .map(|c| ColorRecord::new(c.id.clone(), ints(&c.phi), ParabolicSet::new(c.moved_roots.iter().copied())))
        .collect();
    let monoid = match &doc.weight_monoid {
        Some(m) => {
            let gens: Vec<Vec<Int>> = m.generators.iter().map(|g| ints(g)).collect();
            Some(at("weight_monoid.generators", WeightMonoid::new(n, &gens))?)
        }
        None => None,
    };
    let datum = SphericalDatum::new(ambient, lattice, roots, colors, monoid)?;
    let delzant = doc.delzant.as_ref().map(|z| at("delzant", delzant_from_doc(z))).transpose()?;
    Ok(Document { datum, delzant })
}

pub fn parse_datum(text: &str) -> Result<SphericalDatum> {
    Ok(parse_document(text)?.datum)
}

fn delzant_from_doc(z: &DelzantDoc) -> Result<DelzantData> {
    let verts: Vec<Vec<Rat>> = z.vertices.iter().map(|v| v.iter().map(|x| x.0.clone()).collect()).collect();
    DelzantData::new(&verts, z.isotropy_label.clone())
}

/// Reads a standalone polytope document, or the `delzant` field of a datum
/// document.
pub fn parse_delzant(text: &str) -> Result<DelzantData> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(syntax)?;
    if value.get("vertices").is_some() {
        let doc: DelzantDoc = serde_json::from_value(value).map_err(syntax)?;
        return delzant_from_doc(&doc);
    }
    parse_document(text)?.delzant.ok_or_else(|| Error::InvalidInput("delzant: field missing".into()))
}

fn datum_doc(d: &SphericalDatum, delzant: Option<&DelzantData>) -> DatumDoc {
    let amb = d.ambient();
    DatumDoc {
        ambient: AmbientDoc {
            factors: amb.factors().iter().map(ToString::to_string).collect(),
            torus_rank: amb.torus_rank(),
            levi: amb.levi().map(|l| l.iter().collect()),
        },
        weight_lattice: d.weight_lattice().basis_rows().iter().map(|r| jints(r)).collect(),
        spherical_roots: d
            .spherical_roots()
            .iter()
            .map(|r| RootDoc {
                coords: jints(&r.coords),
                doubling: r.doubling.into(),
                coroot: r.coroot.as_ref().map(|c| c.iter().cloned().map(JRat).collect()),
            })
            .collect(),
        colors: d
            .colors()
            .iter()
            .map(|c| ColorDoc { id: c.id.clone(), phi: jints(&c.phi), moved_roots: c.moved_roots.iter().collect() })
            .collect(),
        weight_monoid: d.weight_monoid().map(|m| MonoidDoc { generators: m.generators().iter().map(|g| jints(g)).collect() }),
        delzant: delzant.map(delzant_doc),
    }
}

fn delzant_doc(z: &DelzantData) -> DelzantDoc {
    DelzantDoc {
        vertices: z.vertices().iter().map(|v| v.iter().cloned().map(JRat).collect()).collect(),
        isotropy_label: z.isotropy_label().to_string(),
    }
}

fn to_text<T: Serialize>(doc: &T) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut s = String::new();
    render(&value, 0, &mut s);
    s.push('\n');
    s
}

/// Pretty printing with arrays of scalars kept on one line.
fn render(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                render(x, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                render(x, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

pub fn serialize_datum(d: &SphericalDatum) -> String {
    to_text(&datum_doc(d, None))
}

pub fn serialize_document(doc: &Document) -> String {
    to_text(&datum_doc(&doc.datum, doc.delzant.as_ref()))
}

pub fn serialize_delzant(z: &DelzantData) -> String {
    to_text(&delzant_doc(z))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SL3: &str = r#"{
      "ambient": { "factors": ["A2"], "torus_rank": 0 },
      "weight_lattice": [[1, 1]],
      "spherical_roots": [{ "coords": [1, 1], "doubling": 1 }],
      "colors": [
        { "id": "D2", "phi": [1], "moved_roots": [2] },
        { "id": "D1", "phi": [1], "moved_roots": [1] }
      ],
      "weight_monoid": { "generators": [[1, 1]] }
    }"#;

    #[test]
    fn round_trip() {
        let d = parse_datum(SL3).unwrap();
        assert_eq!(d.colors()[0].id, "D1");
        let text = serialize_datum(&d);
        assert_eq!(parse_datum(&text).unwrap(), d);
        assert_eq!(serialize_datum(&parse_datum(&text).unwrap()), text);
    }

    #[test]
    fn diagnostics() {
        let missing = SL3.replace("\"weight_lattice\": [[1, 1]],", "");
        let e = parse_datum(&missing).unwrap_err().to_string();
        assert!(e.contains("weight_lattice"), "{e}");
        let e = parse_datum(&SL3.replace("\"doubling\": 1", "\"doubling\": 3")).unwrap_err().to_string();
        assert!(e.contains("must be 1 or 2"), "{e}");
        let e = parse_datum(&SL3.replace("\"A2\"", "\"Q7\"")).unwrap_err().to_string();
        assert!(e.contains("ambient.factors[0]"), "{e}");
        let e = parse_datum(&SL3.replace("[[1, 1]],", "[[1, 1, 1]],")).unwrap_err().to_string();
        assert!(e.contains("weight_lattice[0]"), "{e}");
        let e = parse_datum("{ \"ambient\": 3 ").unwrap_err().to_string();
        assert!(e.contains("line 1"), "{e}");
        assert!(parse_datum(&SL3.replace("\"torus_rank\": 0", "\"torus_rank\": 0, \"extra\": 1")).is_err());
    }

    #[test]
    fn big_and_rational_values() {
        let text = SL3.replace(
            "{ \"coords\": [1, 1], \"doubling\": 1 }",
            "{ \"coords\": [\"1\", 1], \"doubling\": 1, \"coroot\": [\"4/2\"] }",
        );
        let d = parse_datum(&text).unwrap();
        assert_eq!(d.spherical_roots()[0].coroot, Some(vec![Rat::from_integer(2.into())]));
        let big: Int = "123456789012345678901234567890".parse().unwrap();
        let s = serde_json::to_string(&JInt(big.clone())).unwrap();
        assert_eq!(serde_json::from_str::<JInt>(&s).unwrap().0, big);
        let half = JRat(Rat::new(1.into(), 2.into()));
        assert_eq!(serde_json::to_string(&half).unwrap(), "\"1/2\"");
        assert!(serde_json::from_str::<JRat>("\"1/0\"").is_err());
    }

    #[test]
    fn delzant_documents() {
        let text = r#"{ "vertices": [[0, 0], [1, 0], ["1/2", "1/2"], [0, 1]], "isotropy_label": "T" }"#;
        let z = parse_delzant(text).unwrap();
        assert_eq!(z.vertices().len(), 3);
        assert_eq!(parse_delzant(&serialize_delzant(&z)).unwrap(), z);
        assert!(parse_delzant(SL3).is_err());
    }
}
