//! Meridian sample files: a `# key = value` comment header followed by the
//! columns `u, f, fprime` and, off the graph chart, `g, gprime`.
//!
//! The JSON variant is `{"meta": {...}, "data": {"u": [...], ...}}`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use minkowski_surfaces::rotational::SampledMeridian;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{CliError, CliResult};
use crate::format::{Format, Table};

pub struct MeridianFile {
    pub meta: Vec<(String, String)>,
    pub table: Table,
}

struct Meta<'a>(&'a [(String, String)]);

impl Serialize for Meta<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct JsonFile<'a> {
    meta: Meta<'a>,
    data: &'a Table,
}

impl MeridianFile {
    pub fn write(&self, format: Format, mut w: impl Write) -> CliResult<()> {
        match format {
            Format::Csv => {
                for (k, v) in &self.meta {
                    writeln!(w, "# {k} = {v}")?;
                }
                self.table.write_csv(w)?;
            }
            Format::Json => {
                serde_json::to_writer(&mut w, &JsonFile { meta: Meta(&self.meta), data: &self.table })?;
                writeln!(w)?;
            }
        }
        Ok(())
    }
}

/// Header entries and columns of a meridian file.
pub struct LoadedMeridian {
    pub meta: BTreeMap<String, String>,
    pub columns: BTreeMap<String, Vec<f64>>,
}

impl LoadedMeridian {
    pub fn column(&self, name: &str) -> CliResult<&[f64]> {
        self.columns
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| CliError::Input(format!("meridian file has no column '{name}'")))
    }

    pub fn sampled(&self) -> CliResult<SampledMeridian> {
        let (u, f, fp) = (self.column("u")?, self.column("f")?, self.column("fprime")?);
        let s = match (self.columns.get("g"), self.columns.get("gprime")) {
            (Some(g), Some(gp)) => SampledMeridian::general(u, f, fp, g, gp)?,
            (None, None) => SampledMeridian::graph(u, f, fp)?,
            _ => return Err(CliError::Input("meridian file needs both 'g' and 'gprime' or neither".into())),
        };
        Ok(s)
    }
}

fn parse_number(s: &str) -> CliResult<f64> {
    s.trim().parse().map_err(|_| CliError::Input(format!("not a number: '{s}'")))
}

pub fn load(path: &Path) -> CliResult<LoadedMeridian> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('{') {
        return load_json(&text);
    }
    let mut meta = BTreeMap::new();
    for line in text.lines().filter_map(|l| l.strip_prefix('#')) {
        if let Some((k, v)) = line.split_once('=') {
            meta.insert(k.trim().to_owned(), v.trim().to_owned());
        }
    }
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let names: Vec<String> = reader.headers()?.iter().map(|h| h.trim().to_owned()).collect();
    let mut columns: BTreeMap<String, Vec<f64>> = names.iter().map(|n| (n.clone(), Vec::new())).collect();
    for record in reader.records() {
        let record = record?;
        for (name, field) in names.iter().zip(record.iter()) {
            columns.get_mut(name).expect("header column").push(parse_number(field)?);
        }
    }
    Ok(LoadedMeridian { meta, columns })
}

fn load_json(text: &str) -> CliResult<LoadedMeridian> {
    #[derive(serde::Deserialize)]
    struct Raw {
        #[serde(default)]
        meta: BTreeMap<String, String>,
        data: BTreeMap<String, Vec<Option<f64>>>,
    }
    let raw: Raw = serde_json::from_str(text)?;
    let columns = raw
        .data
        .into_iter()
        .map(|(k, v)| {
            let values = v
                .into_iter()
                .map(|x| x.ok_or_else(|| CliError::Input(format!("null entry in column '{k}'"))))
                .collect::<CliResult<Vec<f64>>>()?;
            Ok((k, values))
        })
        .collect::<CliResult<_>>()?;
    Ok(LoadedMeridian { meta: raw.meta, columns })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::Cell;

    fn sample() -> MeridianFile {
        let mut table = Table::new(&["u", "f", "fprime"]);
        for i in 0..5 {
            let u = 1.0 + 0.25 * i as f64;
            table.push(vec![Cell::Num(u), Cell::Num(u * u), Cell::Num(2.0 * u)]);
        }
        MeridianFile { meta: vec![("kind".into(), "first".into()), ("alpha".into(), "1.5".into())], table }
    }

    #[test]
    fn round_trip_both_formats() {
        let dir = tempfile::tempdir().unwrap();
        for (format, name) in [(Format::Csv, "m.csv"), (Format::Json, "m.json")] {
            let path = dir.path().join(name);
            sample().write(format, std::fs::File::create(&path).unwrap()).unwrap();
            let loaded = load(&path).unwrap();
            assert_eq!(loaded.meta["kind"], "first");
            assert_eq!(loaded.meta["alpha"], "1.5");
            assert_eq!(loaded.column("f").unwrap()[4], 4.0);
            assert!(loaded.sampled().unwrap().is_graph());
        }
    }
}
