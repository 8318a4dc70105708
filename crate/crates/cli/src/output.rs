use betamoments::EnsembleSpec;
use serde::Serialize;
use serde_json::Value;

/// The single document a run emits.
#[derive(Serialize)]
pub struct Envelope {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spec_echo: Option<EnsembleSpec>,
    pub results: Value,
    pub version: &'static str,
}

/// Rows for `--format csv`, under a fixed per-command header.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn render(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}

pub struct Report {
    pub envelope: Envelope,
    pub table: Table,
    /// Reasons for exit code 2; the output is still emitted.
    pub failures: Vec<String>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(
        command: &'static str,
        spec: Option<EnsembleSpec>,
        results: Value,
        table: Table,
    ) -> Self {
        Report {
            envelope: Envelope {
                command,
                spec_echo: spec,
                results,
                version: env!("CARGO_PKG_VERSION"),
            },
            table,
            failures: Vec::new(),
            warnings: Vec::new(),
        }
    }

    pub fn fail(&mut self, reason: String) {
        self.failures.push(reason);
    }

    pub fn render(&self, format: crate::args::Format) -> Result<String, String> {
        match format {
            crate::args::Format::Json => serde_json::to_string_pretty(&self.envelope)
                .map(|s| s + "\n")
                .map_err(|e| e.to_string()),
            crate::args::Format::Csv => self.table.render().map_err(|e| e.to_string()),
        }
    }
}
