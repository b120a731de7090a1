//! CSV ingestion: one series per row, optional header row and label
//! column, seed attachment per policy.

use crate::CliError;
use confband::{derive_seed, SeedPolicy, SeriesMatrix};
use std::path::Path;

/// How the seed series is chosen or constructed.
#[derive(Debug, Clone, PartialEq)]
pub enum SeedSpec {
    /// An existing row, by zero-based index.
    Index(usize),
    /// An existing row, by its label (requires a label column).
    RowLabel(String),
    /// Append the point-wise lower median as a new seed series.
    Median,
    /// Append the point-wise mean as a new seed series.
    Mean,
}

impl std::str::FromStr for SeedSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("index:") {
            let idx = rest
                .parse::<usize>()
                .map_err(|_| format!("invalid seed index '{}'", rest))?;
            return Ok(SeedSpec::Index(idx));
        }
        if let Some(rest) = s.strip_prefix("row-label:") {
            return Ok(SeedSpec::RowLabel(rest.to_string()));
        }
        match s {
            "median" => Ok(SeedSpec::Median),
            "mean" => Ok(SeedSpec::Mean),
            _ => Err(format!(
                "invalid seed spec '{}' (expected index:<i>, median, mean, or row-label:<name>)",
                s
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct IngestOptions {
    /// Skip the first row.
    pub header: bool,
    /// Treat the first column as a series label.
    pub labels: bool,
    pub seed: SeedSpec,
}

/// Result of ingestion: the matrix plus whether a synthetic seed row was
/// appended (in which case size constraints shift by one).
#[derive(Debug)]
pub struct Ingested {
    pub matrix: SeriesMatrix,
    pub seed_appended: bool,
    /// Number of data rows in the file (excludes any appended seed).
    pub original_count: usize,
}

pub fn ingest_csv(path: &Path, options: &IngestOptions) -> Result<Ingested, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read {}: {}", path.display(), e)))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut width: Option<usize> = None;
    for (line_no, line) in text.lines().enumerate() {
        if options.header && line_no == 0 {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let row_no = line_no + 1; // 1-based, counting the header
        let mut fields = line.split(',');
        let label = if options.labels {
            fields
                .next()
                .map(str::trim)
                .unwrap_or_default()
                .to_string()
        } else {
            format!("series_{}", rows.len())
        };
        let mut row = Vec::new();
        for (col_idx, field) in fields.enumerate() {
            let col_no = col_idx + 1 + usize::from(options.labels);
            let value = field.trim().parse::<f64>().map_err(|_| {
                CliError::validation(format!(
                    "{}: row {}, column {}: not a number: '{}'",
                    path.display(),
                    row_no,
                    col_no,
                    field.trim()
                ))
            })?;
            if !value.is_finite() {
                return Err(CliError::validation(format!(
                    "{}: row {}, column {}: non-finite value",
                    path.display(),
                    row_no,
                    col_no
                )));
            }
            row.push(value);
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(CliError::validation(format!(
                    "{}: row {} has {} values, expected {}",
                    path.display(),
                    row_no,
                    row.len(),
                    w
                )))
            }
            _ => {}
        }
        labels.push(label);
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::validation(format!(
            "{}: no data rows",
            path.display()
        )));
    }

    let original_count = rows.len();
    let (matrix, seed_appended) = match &options.seed {
        SeedSpec::Index(idx) => {
            if *idx >= rows.len() {
                return Err(CliError::validation(format!(
                    "seed index {} out of range (file has {} series)",
                    idx,
                    rows.len()
                )));
            }
            (
                SeriesMatrix::with_labels(rows, *idx, Some(labels))
                    .map_err(CliError::from_validation)?,
                false,
            )
        }
        SeedSpec::RowLabel(name) => {
            let idx = labels.iter().position(|l| l == name).ok_or_else(|| {
                CliError::validation(format!("no series labelled '{}'", name))
            })?;
            (
                SeriesMatrix::with_labels(rows, idx, Some(labels))
                    .map_err(CliError::from_validation)?,
                false,
            )
        }
        SeedSpec::Median => (
            derive_seed(rows, Some(labels), SeedPolicy::Median)
                .map_err(CliError::from_validation)?,
            true,
        ),
        SeedSpec::Mean => (
            derive_seed(rows, Some(labels), SeedPolicy::Mean)
                .map_err(CliError::from_validation)?,
            true,
        ),
    };
    Ok(Ingested {
        matrix,
        seed_appended,
        original_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    fn opts(seed: SeedSpec) -> IngestOptions {
        IngestOptions {
            header: false,
            labels: false,
            seed,
        }
    }

    #[test]
    fn parses_plain_columns() {
        let f = write_temp("0\n-1\n2\n2\n");
        let got = ingest_csv(f.path(), &opts(SeedSpec::Index(0))).unwrap();
        assert_eq!(got.matrix.series_count(), 4);
        assert_eq!(got.matrix.seed_index(), 0);
        assert!(!got.seed_appended);
        assert_eq!(got.matrix.value(2, 0), 2.0);
    }

    #[test]
    fn median_seed_appends_row() {
        let f = write_temp("0\n-1\n2\n2\n");
        let got = ingest_csv(f.path(), &opts(SeedSpec::Median)).unwrap();
        assert_eq!(got.matrix.series_count(), 5);
        assert_eq!(got.matrix.seed_index(), 4);
        assert_eq!(got.matrix.seed(), &[0.0]);
        assert!(got.seed_appended);
        assert_eq!(got.original_count, 4);
    }

    #[test]
    fn ragged_rows_name_the_row() {
        let f = write_temp("1,2,3\n4,5,6,7\n");
        let err = ingest_csv(f.path(), &opts(SeedSpec::Index(0))).unwrap_err();
        assert!(err.to_string().contains("row 2"), "{}", err);
    }

    #[test]
    fn bad_number_names_coordinates() {
        let f = write_temp("1,2\n3,oops\n");
        let err = ingest_csv(f.path(), &opts(SeedSpec::Index(0))).unwrap_err();
        assert!(err.to_string().contains("row 2, column 2"), "{}", err);
    }

    #[test]
    fn labels_and_header() {
        let f = write_temp("name,v1,v2\na,1,2\nb,3,4\n");
        let got = ingest_csv(
            f.path(),
            &IngestOptions {
                header: true,
                labels: true,
                seed: SeedSpec::RowLabel("b".into()),
            },
        )
        .unwrap();
        assert_eq!(got.matrix.series_count(), 2);
        assert_eq!(got.matrix.seed_index(), 1);
        assert_eq!(got.matrix.label(0), Some("a"));
    }

    #[test]
    fn empty_file_rejected() {
        let f = write_temp("");
        assert!(ingest_csv(f.path(), &opts(SeedSpec::Index(0))).is_err());
    }
}
