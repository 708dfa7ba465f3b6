use serde_json::{Map, Value};

use pgcode::{Error, Result};

fn flatten(prefix: &str, value: &Value, out: &mut Map<String, Value>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, v, out);
            }
        }
        v => {
            out.insert(prefix.to_string(), v.clone());
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

/// Flat CSV projection: nested objects become dotted columns, arrays stay JSON.
pub fn csv(rows: &[Value]) -> Result<String> {
    let flat: Vec<Map<String, Value>> = rows
        .iter()
        .map(|r| {
            let mut m = Map::new();
            flatten("", r, &mut m);
            m
        })
        .collect();
    let mut header: Vec<String> = Vec::new();
    for m in &flat {
        for k in m.keys() {
            if !header.contains(k) {
                header.push(k.clone());
            }
        }
    }
    let err = |e: csv::Error| Error::Parse(format!("csv output: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).map_err(err)?;
    for m in &flat {
        w.write_record(header.iter().map(|k| m.get(k).map(cell).unwrap_or_default())).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_fields_are_dotted() {
        let out = csv(&[json!({ "a": 1, "b": { "c": "x,y", "d": null } })]).unwrap();
        assert_eq!(out, "a,b.c,b.d\n1,\"x,y\",\n");
    }

    #[test]
    fn union_of_columns() {
        let out = csv(&[json!({ "a": 1 }), json!({ "b": [1, 2] })]).unwrap();
        assert_eq!(out, "a,b\n1,\n,\"[1,2]\"\n");
    }
}
