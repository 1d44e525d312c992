//! CSV emission helpers: 17-significant-digit floats, LF line endings.

use crate::AppError;
use std::io::Write;
use std::path::Path;

/// Scientific notation with 16 digits after the point: 17 significant
/// digits, enough to reproduce any f64 exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Optional floats render as empty fields.
pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// A CSV file under construction; rows are plain joined fields with LF
/// endings and no quoting (fields never contain commas).
pub struct CsvFile {
    buffer: String,
}

impl CsvFile {
    pub fn new(header: &str) -> Self {
        let mut buffer = String::new();
        buffer.push_str(header);
        buffer.push('\n');
        Self { buffer }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.buffer.push_str(&fields.join(","));
        self.buffer.push('\n');
    }

    pub fn contents(&self) -> &str {
        &self.buffer
    }

    pub fn write_to(&self, path: &Path) -> Result<(), AppError> {
        let mut file = std::fs::File::create(path)
            .map_err(|e| AppError::config(format!("cannot create {}: {e}", path.display())))?;
        file.write_all(self.buffer.as_bytes())
            .and_then(|_| file.flush())
            .map_err(|e| AppError::config(format!("cannot write {}: {e}", path.display())))
    }
}

/// Mean and standard error of a sample; the stderr of a single observation
/// is reported as zero.
pub fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
