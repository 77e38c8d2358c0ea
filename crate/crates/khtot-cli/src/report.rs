//! Run reports and their JSON / TSV renderings.

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One pretty-printed JSON object.
    Json,
    /// Tab-separated tables, one `# name` header per table.
    Tsv,
}

/// A rectangular table for TSV output.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// Echo of the input diagram.
#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    /// SHA-256 of the canonical JSON form.
    pub digest: String,
    pub crossings: usize,
    pub components: usize,
    pub writhe: i64,
}

/// Everything one invocation produces.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: Vec<String>,
    pub input: Option<InputEcho>,
    pub result: Value,
    /// Whether every verification performed passed.
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
    #[serde(skip)]
    pub tables: Vec<Table>,
}

/// Escapes characters that would break the TSV layout.
fn cell(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}

impl RunReport {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = String::new();
                if let Some(i) = &self.input {
                    s.push_str(&format!("# input\ndigest\tcrossings\tcomponents\twrithe\n{}\t{}\t{}\t{}\n", i.digest, i.crossings, i.components, i.writhe));
                }
                for t in &self.tables {
                    s.push_str(&format!("# {}\n", t.name));
                    s.push_str(&t.header.join("\t"));
                    s.push('\n');
                    for r in &t.rows {
                        s.push_str(&r.iter().map(|c| cell(c)).collect::<Vec<_>>().join("\t"));
                        s.push('\n');
                    }
                }
                s.push_str(&format!("# status\npassed\n{}\n", self.passed));
                if let Some(ms) = self.wall_time_ms {
                    s.push_str(&format!("# timing\nwall_time_ms\n{ms}\n"));
                }
                s
            }
        }
    }
}
