//! CSV schema: `sample_id,subject_id,label,<wn_1>,...,<wn_k>`, one spectrum per row.

use std::collections::HashMap;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::SpectrumDataset;
use crate::error::{Error, Result};
use crate::io::write_atomic;

const META_COLUMNS: [&str; 3] = ["sample_id", "subject_id", "label"];

pub fn load_csv(path: impl AsRef<Path>) -> Result<SpectrumDataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file)
}

pub fn read_csv<R: Read>(reader: R) -> Result<SpectrumDataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records();

    let header = match records.next() {
        Some(rec) => rec.map_err(|e| ingest(1, "-", e.to_string()))?,
        None => return Err(ingest(1, "-", "empty file")),
    };
    if header.len() < META_COLUMNS.len() + 1 {
        return Err(ingest(
            1,
            "-",
            format!(
                "header needs {} and at least one wavenumber column",
                META_COLUMNS.join(",")
            ),
        ));
    }
    for (i, expected) in META_COLUMNS.iter().enumerate() {
        if &header[i] != *expected {
            return Err(ingest(
                1,
                &(i + 1).to_string(),
                format!("expected header `{expected}`, found `{}`", &header[i]),
            ));
        }
    }
    let wavenumbers = header
        .iter()
        .enumerate()
        .skip(META_COLUMNS.len())
        .map(|(i, cell)| {
            cell.parse::<f64>()
                .ok()
                .filter(|w| w.is_finite())
                .ok_or_else(|| {
                    ingest(1, &(i + 1).to_string(), format!("`{cell}` is not a wavenumber"))
                })
        })
        .collect::<Result<Vec<f64>>>()?;
    if super::monotonic_direction(&wavenumbers).is_none() {
        return Err(ingest(1, "-", "wavenumbers are not strictly monotonic"));
    }

    let width = header.len();
    let mut samples = Vec::new();
    let mut labels = Vec::new();
    let mut subject_ids = Vec::new();
    let mut sample_ids = Vec::new();
    let mut first_seen: HashMap<String, usize> = HashMap::new();

    for (idx, rec) in records.enumerate() {
        let row = idx + 2;
        let rec = rec.map_err(|e| ingest(row, "-", e.to_string()))?;
        if rec.len() == 1 && rec[0].is_empty() {
            continue;
        }
        if rec.len() != width {
            return Err(ingest(
                row,
                "-",
                format!("ragged row: {} fields, header has {}", rec.len(), width),
            ));
        }
        let sample_id = rec[0].to_string();
        if sample_id.is_empty() {
            return Err(ingest(row, "1", "empty sample_id"));
        }
        if let Some(prev) = first_seen.insert(sample_id.clone(), row) {
            return Err(ingest(
                row,
                "1",
                format!("duplicate sample_id `{sample_id}` (first seen on row {prev})"),
            ));
        }
        let values = rec
            .iter()
            .enumerate()
            .skip(META_COLUMNS.len())
            .map(|(i, cell)| {
                cell.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        ingest(row, &(i + 1).to_string(), format!("`{cell}` is not numeric"))
                    })
            })
            .collect::<Result<Vec<f64>>>()?;
        sample_ids.push(sample_id);
        subject_ids.push(rec[1].to_string());
        labels.push(rec[2].to_string());
        samples.push(values);
    }

    SpectrumDataset::new(wavenumbers, samples, labels, subject_ids, sample_ids)
        .map_err(|e| ingest(0, "-", e.to_string()))
}

/// Writes the dataset atomically (temp file + rename).
pub fn save_csv(ds: &SpectrumDataset, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_csv(ds, &mut buf)?;
    write_atomic(path.as_ref(), &buf)
}

/// Numbers use the shortest decimal form that parses back to the same `f64`.
pub fn write_csv<W: Write>(ds: &SpectrumDataset, writer: W) -> Result<()> {
    let mut wtr = csv::WriterBuilder::new().from_writer(writer);
    let to_err = |e: csv::Error| Error::Invalid(format!("csv write failed: {e}"));

    let mut header: Vec<String> = META_COLUMNS.iter().map(|s| s.to_string()).collect();
    header.extend(ds.wavenumbers().iter().map(|w| format!("{w}")));
    wtr.write_record(&header).map_err(to_err)?;

    for i in 0..ds.n_samples() {
        let mut record = vec![
            ds.sample_ids()[i].clone(),
            ds.subject_ids()[i].clone(),
            ds.labels()[i].clone(),
        ];
        record.extend(ds.samples()[i].iter().map(|v| format!("{v}")));
        wtr.write_record(&record).map_err(to_err)?;
    }
    wtr.flush()
        .map_err(|e| Error::Invalid(format!("csv write failed: {e}")))?;
    Ok(())
}

fn ingest(row: usize, column: &str, message: impl Into<String>) -> Error {
    Error::Ingest {
        row,
        column: column.to_string(),
        message: message.into(),
    }
}
