//! JSON document formats for set functions, biset functions, and point
//! lists, plus the serialization of characterization reports. Values are
//! JSON numbers or `"p/q"` strings; decimal literals convert exactly.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use abmaj::characterize::{Failure, Induced, PointSet, Report};
use abmaj::ground::{Biset, GroundSet, Mask};
use abmaj::polyhedra::Point;
use abmaj::rat::Rat;
use abmaj::setfn::{BisetFunction, Kind, SetFunction};
use serde_json::{json, Map, Number, Value};

/// A failure with a machine-readable code; codes drive the exit status and
/// are stable across releases.
#[derive(Debug)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }

    pub fn schema(message: impl Into<String>) -> Self {
        CliError::new("schema", message)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "error[{}]: {}", self.code, self.message)
    }
}

impl From<abmaj::Error> for CliError {
    fn from(e: abmaj::Error) -> Self {
        use abmaj::Error::*;
        let code = match e {
            GroundSetSize { .. } | CheckTooLarge { .. } => "size",
            UnboundedEnumeration => "unbounded",
            UnsupportedCombination => "unsupported",
            NotAMember | NotInCandidates | NotSaturated { .. } | EmptyPolyhedron => "domain",
            Unconverged => "unconverged",
            _ => "schema",
        };
        CliError::new(code, e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

// ---------------------------------------------------------------------------
// rational <-> JSON value

pub fn value_to_rat(v: &Value) -> CliResult<Rat> {
    match v {
        Value::Number(n) => Rat::from_str(&n.to_string())
            .map_err(|_| CliError::schema(format!("unreadable number {n}"))),
        Value::String(s) => {
            Rat::from_str(s).map_err(|_| CliError::schema(format!("unreadable rational {s:?}")))
        }
        other => Err(CliError::schema(format!("expected number or \"p/q\" string, got {other}"))),
    }
}

pub fn rat_to_value(r: &Rat) -> Value {
    if r.is_integer() {
        if let Some(i) = r.to_i64() {
            return Value::Number(Number::from(i));
        }
    }
    Value::String(r.to_string())
}

pub fn point_to_value(p: &Point) -> Value {
    Value::Array(p.iter().map(rat_to_value).collect())
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> CliResult<&'a Value> {
    obj.get(key).ok_or_else(|| CliError::schema(format!("missing field {key:?}")))
}

fn as_object(v: &Value, what: &str) -> CliResult<Map<String, Value>> {
    v.as_object()
        .cloned()
        .ok_or_else(|| CliError::schema(format!("{what} must be a JSON object")))
}

fn read_n(obj: &Map<String, Value>) -> CliResult<usize> {
    get(obj, "n")?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| CliError::schema("field \"n\" must be a positive integer"))
}

fn parse_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::schema(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// set-function documents

pub fn load_set_function(path: &Path) -> CliResult<SetFunction> {
    let root = as_object(&parse_json(path)?, "a set-function document")?;
    let n = read_n(&root)?;
    let g = GroundSet::new(n)?;
    let kind = match get(&root, "kind")?.as_str() {
        Some("submodular") => Kind::Submodular,
        Some("supermodular") => Kind::Supermodular,
        other => {
            return Err(CliError::schema(format!(
                "field \"kind\" must be \"submodular\" or \"supermodular\", got {other:?}"
            )))
        }
    };
    let values = get(&root, "values")?
        .as_array()
        .ok_or_else(|| CliError::schema("field \"values\" must be an array"))?
        .iter()
        .map(value_to_rat)
        .collect::<CliResult<Vec<Rat>>>()?;
    Ok(SetFunction::new(g, kind, values)?)
}

pub fn set_function_to_value(f: &SetFunction) -> Value {
    json!({
        "n": f.n(),
        "kind": match f.kind() { Kind::Submodular => "submodular", Kind::Supermodular => "supermodular" },
        "values": f.values().iter().map(rat_to_value).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// biset-function documents

pub fn load_biset_function(path: &Path) -> CliResult<BisetFunction> {
    let root = as_object(&parse_json(path)?, "a biset-function document")?;
    let n = read_n(&root)?;
    let g = GroundSet::new(n)?;
    let entries = get(&root, "entries")?
        .as_array()
        .ok_or_else(|| CliError::schema("field \"entries\" must be an array"))?;
    let expected = 3usize.pow(n as u32);
    if entries.len() != expected {
        return Err(CliError::schema(format!(
            "expected {expected} entries covering every disjoint pair, got {}",
            entries.len()
        )));
    }
    let mut seen = vec![false; expected];
    let mut values = vec![Rat::zero(); expected];
    for e in entries {
        let obj = as_object(e, "each entry")?;
        let s = get(&obj, "S")?
            .as_u64()
            .ok_or_else(|| CliError::schema("entry field \"S\" must be a mask"))?;
        let t = get(&obj, "T")?
            .as_u64()
            .ok_or_else(|| CliError::schema("entry field \"T\" must be a mask"))?;
        if s >= (1 << n) || t >= (1 << n) {
            return Err(CliError::schema(format!("masks S={s}, T={t} exceed the ground set")));
        }
        let u = Biset::new(Mask(s as u32), Mask(t as u32))?;
        let idx = BisetFunction::index(&u);
        if seen[idx] {
            return Err(CliError::schema(format!("duplicate entry for S={s}, T={t}")));
        }
        seen[idx] = true;
        values[idx] = value_to_rat(get(&obj, "value")?)?;
    }
    Ok(BisetFunction::new(g, values)?)
}

pub fn biset_function_to_value(h: &BisetFunction) -> Value {
    let entries: Vec<Value> = h
        .bisets()
        .iter()
        .map(|u| {
            json!({
                "S": u.pos().0,
                "T": u.neg().0,
                "value": rat_to_value(h.value(u)),
            })
        })
        .collect();
    json!({ "n": h.n(), "entries": entries })
}

// ---------------------------------------------------------------------------
// point documents

pub fn load_points(path: &Path) -> CliResult<PointSet> {
    let root = as_object(&parse_json(path)?, "a points document")?;
    let n = read_n(&root)?;
    let g = GroundSet::new(n)?;
    let points = get(&root, "points")?
        .as_array()
        .ok_or_else(|| CliError::schema("field \"points\" must be an array"))?
        .iter()
        .map(|row| {
            let coords = row
                .as_array()
                .ok_or_else(|| CliError::schema("each point must be an array"))?
                .iter()
                .map(value_to_rat)
                .collect::<CliResult<Vec<Rat>>>()?;
            Ok(Point::new(coords))
        })
        .collect::<CliResult<Vec<Point>>>()?;
    Ok(PointSet::new(g, points)?)
}

pub fn points_to_value(n: usize, points: &[Point]) -> Value {
    json!({
        "n": n,
        "points": points.iter().map(point_to_value).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// characterization reports

fn failure_to_value(f: &Failure) -> Value {
    match f {
        Failure::Prefix { pi } => json!({
            "kind": "prefix",
            "pi": pi.order().iter().map(|i| i + 1).collect::<Vec<_>>(),
        }),
        Failure::SignedPrefix { pi, signs } => json!({
            "kind": "signed_prefix",
            "pi": pi.order().iter().map(|i| i + 1).collect::<Vec<_>>(),
            "signs": signs.signs(),
        }),
        Failure::NotSubmodular { a, b } => {
            json!({ "kind": "not_submodular", "A": a.0, "B": b.0 })
        }
        Failure::NotSupermodular { a, b } => {
            json!({ "kind": "not_supermodular", "A": a.0, "B": b.0 })
        }
        Failure::NotBisubmodular { u, v } => json!({
            "kind": "not_bisubmodular",
            "U": { "S": u.pos().0, "T": u.neg().0 },
            "V": { "S": v.pos().0, "T": v.neg().0 },
        }),
        Failure::MissingPoint { point } => {
            json!({ "kind": "missing_point", "point": point_to_value(point) })
        }
        Failure::Hole { point } => json!({ "kind": "hole", "point": point_to_value(point) }),
        Failure::UnequalSums { x, y } => json!({
            "kind": "unequal_sums",
            "x": point_to_value(x),
            "y": point_to_value(y),
        }),
    }
}

pub fn report_to_value(r: &Report) -> Value {
    let family = match r.family {
        abmaj::characterize::Family::Super => "super",
        abmaj::characterize::Family::Sub => "sub",
        abmaj::characterize::Family::Base => "base",
        abmaj::characterize::Family::Bisub => "bisub",
    };
    let induced = match &r.induced {
        Induced::Set(f) => set_function_to_value(f),
        Induced::Biset(h) => biset_function_to_value(h),
    };
    json!({
        "family": family,
        "holds": r.holds,
        "induced": induced,
        "failures": r.failures.iter().map(failure_to_value).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn set_function_document_round_trip() {
        let doc = write_temp(r#"{"n": 2, "kind": "submodular", "values": [0, -1, 2, 0]}"#);
        let f = load_set_function(doc.path()).unwrap();
        assert_eq!(f.value(Mask(1)), &Rat::from_int(-1));
        let back = set_function_to_value(&f);
        let text = serde_json::to_string(&back).unwrap();
        let doc2 = write_temp(&text);
        assert_eq!(load_set_function(doc2.path()).unwrap(), f);
    }

    #[test]
    fn decimal_strings_convert_exactly() {
        let doc = write_temp(r#"{"n": 1, "kind": "submodular", "values": [0, 0.6]}"#);
        let f = load_set_function(doc.path()).unwrap();
        assert_eq!(f.value(Mask(1)), &Rat::ratio(3, 5));

        let doc = write_temp(r#"{"n": 1, "kind": "submodular", "values": [0, "2/7"]}"#);
        let f = load_set_function(doc.path()).unwrap();
        assert_eq!(f.value(Mask(1)), &Rat::ratio(2, 7));
    }

    #[test]
    fn schema_violations_are_reported() {
        let missing = write_temp(r#"{"n": 2, "values": [0, 1, 1, 2]}"#);
        assert_eq!(load_set_function(missing.path()).unwrap_err().code, "schema");

        let short = write_temp(r#"{"n": 2, "kind": "submodular", "values": [0, 1]}"#);
        assert_eq!(load_set_function(short.path()).unwrap_err().code, "schema");

        let nonzero = write_temp(r#"{"n": 1, "kind": "submodular", "values": [1, 1]}"#);
        assert_eq!(load_set_function(nonzero.path()).unwrap_err().code, "schema");
    }

    #[test]
    fn biset_document_checks_coverage() {
        let doc = write_temp(
            r#"{"n": 1, "entries": [
                {"S": 0, "T": 0, "value": 0},
                {"S": 1, "T": 0, "value": 2},
                {"S": 0, "T": 1, "value": 1}
            ]}"#,
        );
        let h = load_biset_function(doc.path()).unwrap();
        assert_eq!(h.value(&Biset::new(Mask(1), Mask(0)).unwrap()), &Rat::from_int(2));

        let dup = write_temp(
            r#"{"n": 1, "entries": [
                {"S": 0, "T": 0, "value": 0},
                {"S": 1, "T": 0, "value": 2},
                {"S": 1, "T": 0, "value": 2}
            ]}"#,
        );
        assert_eq!(load_biset_function(dup.path()).unwrap_err().code, "schema");

        let overlap = write_temp(
            r#"{"n": 1, "entries": [
                {"S": 0, "T": 0, "value": 0},
                {"S": 1, "T": 1, "value": 2},
                {"S": 0, "T": 1, "value": 1}
            ]}"#,
        );
        assert_eq!(load_biset_function(overlap.path()).unwrap_err().code, "schema");
    }

    #[test]
    fn points_round_trip() {
        let doc = write_temp(r#"{"n": 2, "points": [[1, 0], [0, 1], ["3/5", "3/5"]]}"#);
        let c = load_points(doc.path()).unwrap();
        assert_eq!(c.len(), 3);
        assert!(!c.is_integral());
        let text = serde_json::to_string(&points_to_value(2, c.points())).unwrap();
        let doc2 = write_temp(&text);
        assert_eq!(load_points(doc2.path()).unwrap(), c);
    }
}
