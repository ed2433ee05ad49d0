use std::io::Write;

/// Nine significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.8e}")
}

/// CSV body plus `#` comment lines written ahead of it.
#[derive(Debug, Default)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), ..Default::default() }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, w: &mut dyn Write) -> std::io::Result<()> {
        for (k, v) in &self.meta {
            for line in v.lines() {
                writeln!(w, "# {k}: {line}")?;
            }
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for r in &self.rows {
            writeln!(w, "{}", r.join(","))?;
        }
        Ok(())
    }
}
