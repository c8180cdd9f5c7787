//! Result persistence: append-only CSV with a fixed header plus an optional
//! JSON sidecar carrying the full noise parameters.

use std::fs::{File, OpenOptions};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::analytics::Scheme;
use crate::code422::GateSetId;
use crate::noise::NoiseParams;
use crate::Result;

/// Column order of the results file.
pub const CSV_HEADER: [&str; 17] = [
    "experiment_id",
    "gate_set",
    "L",
    "seed",
    "scheme",
    "shots",
    "gamma",
    "r",
    "D",
    "D_decoded",
    "output_dimension",
    "eps1",
    "eps2",
    "p_meas",
    "p_prep",
    "theta",
    "timestamp",
];

// 17 significant digits: enough for every f64 to survive the round trip.
fn ser_f64<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{x:.16e}"))
}

fn de_f64<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

fn ser_name<S: Serializer, T: ToString>(x: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn de_parse<'de, D, T>(d: D) -> std::result::Result<T, D::Error>
where
    D: Deserializer<'de>,
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

/// One `(sequence, scheme)` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub experiment_id: String,
    #[serde(serialize_with = "ser_name", deserialize_with = "de_parse")]
    pub gate_set: GateSetId,
    #[serde(rename = "L")]
    pub l: u32,
    pub seed: u64,
    #[serde(serialize_with = "ser_name", deserialize_with = "de_parse")]
    pub scheme: Scheme,
    pub shots: u64,
    pub gamma: u64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub r: f64,
    #[serde(rename = "D", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub d: f64,
    #[serde(rename = "D_decoded", serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub d_decoded: f64,
    pub output_dimension: usize,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub eps1: f64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub eps2: f64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub p_meas: f64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub p_prep: f64,
    #[serde(serialize_with = "ser_f64", deserialize_with = "de_f64")]
    pub theta: f64,
    pub timestamp: String,
}

/// Current time as ISO-8601 UTC, to the second.
pub fn utc_timestamp() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Appends records to a CSV file, writing the header only when the file is
/// new or empty.
pub struct RecordWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl RecordWriter<BufWriter<File>> {
    pub fn append_to(path: impl AsRef<Path>) -> Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let fresh = file.metadata()?.len() == 0;
        Self::with_header(BufWriter::new(file), fresh)
    }
}

impl<W: Write> RecordWriter<W> {
    /// Writer over any sink; the header is written when `header` is set.
    pub fn with_header(sink: W, header: bool) -> Result<Self> {
        let mut inner = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
        if header {
            inner.write_record(CSV_HEADER)?;
        }
        Ok(Self { inner })
    }

    pub fn write(&mut self, record: &ExperimentRecord) -> Result<()> {
        self.inner.serialize(record)?;
        Ok(())
    }

    pub fn write_all<'a, I: IntoIterator<Item = &'a ExperimentRecord>>(&mut self, records: I) -> Result<()> {
        for r in records {
            self.write(r)?;
        }
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.inner.flush()?;
        Ok(())
    }
}

/// Reads every record from a results file.
pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<ExperimentRecord>> {
    read_records_from(BufReader::new(File::open(path)?))
}

pub fn read_records_from<R: std::io::Read>(source: R) -> Result<Vec<ExperimentRecord>> {
    let mut reader = csv::Reader::from_reader(source);
    reader
        .deserialize()
        .map(|r| r.map_err(Into::into))
        .collect()
}

/// Run-level metadata stored next to the CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sidecar {
    pub experiment_id: String,
    pub params: NoiseParams,
    pub shots: u64,
    pub master_seed: u64,
    /// How sequences relate across lengths.
    pub sequence_sampling: String,
    pub records: Vec<ExperimentRecord>,
}

pub fn write_sidecar(path: impl AsRef<Path>, sidecar: &Sidecar) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, sidecar)?;
    w.flush()?;
    Ok(())
}

pub fn read_sidecar(path: impl AsRef<Path>) -> Result<Sidecar> {
    Ok(serde_json::from_reader(BufReader::new(File::open(path)?))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentRecord {
        ExperimentRecord {
            experiment_id: "exp".into(),
            gate_set: GateSetId::Reduced,
            l: 7,
            seed: u64::MAX,
            scheme: Scheme::CodedPs,
            shots: 8192,
            gamma: 8000,
            r: 8000.0 / 8192.0,
            d: 0.1 + 0.2,
            d_decoded: 1e-300,
            output_dimension: 2,
            eps1: 4e-3,
            eps2: 0.16,
            p_meas: 0.02,
            p_prep: 0.0,
            theta: std::f64::consts::PI / 8.0,
            timestamp: utc_timestamp(),
        }
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let mut buf = Vec::new();
        {
            let mut w = RecordWriter::with_header(&mut buf, true).unwrap();
            w.write(&sample()).unwrap();
            w.flush().unwrap();
        }
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(&CSV_HEADER.join(",")));
        let back = read_records_from(&buf[..]).unwrap();
        assert_eq!(back, vec![sample()]);
    }

    #[test]
    fn append_writes_header_once() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("runs.csv");
        for _ in 0..2 {
            let mut w = RecordWriter::append_to(&path).unwrap();
            w.write(&sample()).unwrap();
            w.flush().unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.matches("experiment_id").count(), 1);
        assert_eq!(read_records(&path).unwrap().len(), 2);
    }

    #[test]
    fn sidecar_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("runs.json");
        let s = Sidecar {
            experiment_id: "exp".into(),
            params: NoiseParams {
                xi: 0.25,
                ..Default::default()
            },
            shots: 10,
            master_seed: 3,
            sequence_sampling: "independent".into(),
            records: vec![sample()],
        };
        write_sidecar(&path, &s).unwrap();
        assert_eq!(read_sidecar(&path).unwrap(), s);
    }

    #[test]
    fn timestamp_is_utc_iso() {
        let t = utc_timestamp();
        assert!(t.ends_with('Z') && t.contains('T'), "{t}");
    }
}
