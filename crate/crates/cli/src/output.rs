use std::io::Write;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

/// Records of one run plus its plain-text rendering.
#[derive(Default)]
pub struct Report {
    pub records: Vec<Value>,
    pub text: Vec<String>,
    /// False when some checked identity failed.
    pub ok: bool,
}

impl Report {
    pub fn new() -> Self {
        Report {
            ok: true,
            ..Default::default()
        }
    }

    pub fn push<T: Serialize>(&mut self, record: &T, text: impl Into<String>) {
        self.records
            .push(serde_json::to_value(record).expect("reports serialize"));
        self.text.push(text.into());
    }

    pub fn check(&mut self, cond: bool) {
        self.ok &= cond;
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.iter().map(|l| format!("{l}\n")).collect(),
            Format::Json => self.records.iter().map(|r| format!("{r}\n")).collect(),
            Format::Csv => self.csv(),
        }
    }

    fn csv(&self) -> String {
        let mut header: Vec<String> = Vec::new();
        for r in &self.records {
            if let Value::Object(map) = r {
                for k in map.keys() {
                    if !header.contains(k) {
                        header.push(k.clone());
                    }
                }
            }
        }
        if header.is_empty() {
            header.push("value".into());
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).expect("in-memory write");
        for r in &self.records {
            let row: Vec<String> = header
                .iter()
                .map(|k| match r {
                    Value::Object(map) => map.get(k).map(cell).unwrap_or_default(),
                    other => cell(other),
                })
                .collect();
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn emit(&self, format: Format, out: Option<&std::path::Path>) -> std::io::Result<()> {
        let body = self.render(format);
        match out {
            Some(path) => std::fs::write(path, body),
            None => std::io::stdout().lock().write_all(body.as_bytes()),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}
