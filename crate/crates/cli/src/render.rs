//! CSV and table views, both flattened from the JSON document so the three
//! formats always carry the same values.

use serde_json::Value;

use crate::args::Format;

pub fn render(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("values serialize");
            s.push('\n');
            s
        }
        Format::Csv => csv(&records(doc)),
        Format::Table => match doc.get("systems").and_then(Value::as_array) {
            Some(systems) => {
                let mut head = doc.clone();
                head.as_object_mut().map(|m| m.remove("systems"));
                let rows: Vec<Record> = systems
                    .iter()
                    .enumerate()
                    .map(|(i, s)| vec![("index".to_string(), i.to_string()), ("entries".to_string(), cell(s))])
                    .collect();
                let mut out = table(&records(&head));
                if !rows.is_empty() {
                    out.push('\n');
                    out.push_str(&table(&rows));
                }
                out
            }
            None => table(&records(doc)),
        },
    }
}

type Record = Vec<(String, String)>;

/// One record per row for batch documents (`rows`, `systems`), each led by
/// the document's own scalar fields; otherwise a single record.
pub fn records(doc: &Value) -> Vec<Record> {
    let batch = ["rows", "systems"]
        .iter()
        .find_map(|&k| doc.get(k).and_then(Value::as_array).map(|a| (k, a)));
    let Some((field, items)) = batch else {
        let mut rec = Vec::new();
        flatten("", doc, &mut rec);
        return vec![rec];
    };
    let mut head = Vec::new();
    if let Value::Object(map) = doc {
        for (k, v) in map {
            if k != field {
                flatten(k, v, &mut head);
            }
        }
    }
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let mut rec = head.clone();
            if field == "systems" {
                rec.push(("index".to_string(), i.to_string()));
                rec.push(("entries".to_string(), cell(item)));
            } else {
                flatten("", item, &mut rec);
            }
            rec
        })
        .collect()
}

fn flatten(prefix: &str, v: &Value, out: &mut Record) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, x, out);
            }
        }
        _ => out.push((prefix.to_string(), cell(v))),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn header(records: &[Record]) -> Vec<String> {
    let mut keys: Vec<String> = Vec::new();
    for r in records {
        for (k, _) in r {
            if !keys.contains(k) {
                keys.push(k.clone());
            }
        }
    }
    keys
}

fn lookup<'a>(r: &'a Record, key: &str) -> &'a str {
    r.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .unwrap_or("")
}

fn csv(records: &[Record]) -> String {
    let keys = header(records);
    let mut out = keys.iter().map(|k| csv_field(k)).collect::<Vec<_>>().join(",");
    out.push('\n');
    for r in records {
        let line: Vec<String> = keys.iter().map(|k| csv_field(lookup(r, k))).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Column width beyond which batch tables are printed one record per column.
const WIDE: usize = 8;

/// A single record prints as aligned `field  value` lines. Several records
/// print as columns under a header, or transposed (one column per record)
/// when there are many fields.
fn table(records: &[Record]) -> String {
    let keys = header(records);
    let grid: Vec<Vec<String>> = if records.len() == 1 {
        keys.iter()
            .map(|k| vec![k.clone(), lookup(&records[0], k).to_string()])
            .collect()
    } else if keys.len() > WIDE {
        let mut g = vec![std::iter::once("field".to_string())
            .chain((0..records.len()).map(|i| format!("#{i}")))
            .collect::<Vec<_>>()];
        g.extend(keys.iter().map(|k| {
            std::iter::once(k.clone())
                .chain(records.iter().map(|r| lookup(r, k).to_string()))
                .collect()
        }));
        g
    } else {
        let mut g = vec![keys.clone()];
        g.extend(
            records
                .iter()
                .map(|r| keys.iter().map(|k| lookup(r, k).to_string()).collect()),
        );
        g
    };
    let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| grid.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| -> String {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        format!("{}\n", parts.join("  ").trim_end())
    };
    let mut out = String::new();
    for (i, row) in grid.iter().enumerate() {
        out.push_str(&line(row));
        if i == 0 && records.len() > 1 {
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            out.push_str(&line(&rule));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn flattening_and_csv() {
        let doc = json!({"schema": 1, "a": {"exact": "1/3", "decimal": 0.333333333333}, "s": "x,y"});
        let out = render(&doc, Format::Csv);
        assert_eq!(out, "a.decimal,a.exact,s,schema\n0.333333333333,1/3,\"x,y\",1\n");
    }

    #[test]
    fn batch_rows_become_lines() {
        let doc = json!({"schema": 1, "rows": [{"k": 3, "h": null}, {"k": 4, "h": 7}]});
        let out = render(&doc, Format::Csv);
        assert_eq!(out, "schema,h,k\n1,,3\n1,7,4\n");
        let t = render(&doc, Format::Table);
        assert_eq!(t, "schema  h  k\n------  -  -\n1          3\n1       7  4\n");
    }

    #[test]
    fn single_record_table_aligns() {
        let doc = json!({"d": 112, "chisini_ok": true});
        assert_eq!(render(&doc, Format::Table), "chisini_ok  true\nd           112\n");
    }
}
