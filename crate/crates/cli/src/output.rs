//! Tables rendered as aligned text, CSV or JSON.

use serde_json::{Map, Value};

use crate::config::Format;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(|v| Value::String(v.clone()))).collect::<Map<_, _>>()))
            .collect();
        let mut m = Map::new();
        m.insert("title".into(), Value::String(self.title.clone()));
        m.insert("rows".into(), Value::Array(rows));
        Value::Object(m)
    }

    fn text(&self) -> String {
        let mut w: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for r in &self.rows {
            for (i, v) in r.iter().enumerate() {
                w[i] = w[i].max(v.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let s: Vec<String> = cells.iter().enumerate().map(|(i, c)| format!("{c:<width$}", width = w[i])).collect();
            s.join("  ").trim_end().to_string()
        };
        let mut out = format!("# {}\n{}\n", self.title, line(&self.columns));
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }

    fn csv(&self) -> String {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            wtr.write_record(r).expect("in-memory write");
        }
        String::from_utf8(wtr.into_inner().expect("in-memory flush")).expect("utf-8")
    }
}

pub fn render(tables: &[Table], format: Format) -> String {
    match format {
        Format::Text => tables.iter().map(Table::text).collect::<Vec<_>>().join("\n"),
        Format::Csv => tables.iter().map(Table::csv).collect::<Vec<_>>().join("\n"),
        Format::Json => {
            let v = if tables.len() == 1 { tables[0].json() } else { Value::Array(tables.iter().map(Table::json).collect()) };
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Table {
        let mut t = Table::new("counts", &["n", "count"]);
        t.push(vec!["1".into(), "1".into()]);
        t.push(vec!["10".into(), "206098".into()]);
        t
    }

    #[test]
    fn formats() {
        assert_eq!(render(&[t()], Format::Text), "# counts\nn   count\n1   1\n10  206098\n");
        assert_eq!(render(&[t()], Format::Csv), "n,count\n1,1\n10,206098\n");
        let v: Value = serde_json::from_str(&render(&[t()], Format::Json)).unwrap();
        assert_eq!(v["rows"][1]["count"], "206098");
    }
}
