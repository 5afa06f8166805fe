//! The bundled knot table, witness words, and regeneration of the spectrum
//! table for prime knots through nine crossings.

use std::fmt;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::identify::{identify, IdentifyError};
use crate::poly::LaurentPoly;
use crate::spectrum::{bb_spectrum, two_bridge_spectrum, Spectrum};
use crate::word::{parse_word, BooklinkWord, WordError};

pub const KNOT_COUNT: usize = 85;

pub const KNOTS_HEADER: [&str; 8] = [
    "name",
    "crossings",
    "bridge",
    "braid",
    "dt",
    "jones",
    "spectrum",
    "derivation",
];

/// Knots whose spectrum needs a (1,2)-representative.
pub const WITNESS_KNOTS: [&str; 25] = [
    "8_15", "9_22", "9_24", "9_25", "9_28", "9_29", "9_30", "9_32", "9_33", "9_34", "9_35", "9_36",
    "9_37", "9_38", "9_39", "9_40", "9_41", "9_42", "9_43", "9_44", "9_45", "9_46", "9_47", "9_48",
    "9_49",
];

/// `BOOKLINK_DATA` if set, else the `data/` directory of this repository.
pub fn default_data_dir() -> PathBuf {
    match std::env::var_os("BOOKLINK_DATA") {
        Some(dir) => PathBuf::from(dir),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Derivation {
    TwoBridge,
    Bb,
    Witness,
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Derivation::TwoBridge => "2-bridge",
            Derivation::Bb => "BB",
            Derivation::Witness => "witness",
        })
    }
}

impl FromStr for Derivation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "2-bridge" => Ok(Derivation::TwoBridge),
            "BB" => Ok(Derivation::Bb),
            "witness" => Ok(Derivation::Witness),
            _ => Err(format!("unknown derivation `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotRecord {
    pub name: String,
    pub crossings: u32,
    pub bridge: u32,
    pub braid: u32,
    pub dt: Vec<i64>,
    /// Quarter-unit exponents in t, as stored in the CSV.
    pub jones: LaurentPoly,
    pub spectrum: Spectrum,
    pub derivation: Derivation,
}

impl KnotRecord {
    fn check(&self) -> Result<(), String> {
        let s = &self.spectrum;
        if s.bridge_index() as u32 != self.bridge || s.braid_index() != self.braid {
            return Err(format!(
                "spectrum {s} has bridge {} and braid {}, row says {} and {}",
                s.bridge_index(),
                s.braid_index(),
                self.bridge,
                self.braid
            ));
        }
        if self.derivation == Derivation::Witness
            && (self.bridge != 3 || s.values() != [self.braid, 2, 1, 0])
        {
            return Err(format!(
                "witness row needs bridge 3 and spectrum {{n,2,1,0}}, got {s}"
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("schema error: {0}")]
    SchemaError(String),
    #[error("expected {expected} knot records, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("row {name}: {reason}")]
    InvariantViolation { name: String, reason: String },
    #[error("missing witness files: {}", .0.join(", "))]
    Missing(Vec<String>),
    #[error("witness {name}: {error}")]
    ParseError { name: String, error: WordError },
    #[error("witness {name} is a ({d},{n})-representative, not (1,2)")]
    NotA12Representative { name: String, d: usize, n: usize },
    #[error("row {name}: derived {got}, table has {expected}")]
    RowMismatch {
        name: String,
        expected: String,
        got: String,
    },
    #[error("no verified witness for {0}")]
    MissingWitness(String),
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

fn io_err(path: &Path, e: impl fmt::Display) -> TableError {
    TableError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Reads knot records without checking the row count.
pub fn parse_knot_records(reader: impl Read) -> Result<Vec<KnotRecord>, TableError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| TableError::SchemaError(e.to_string()))?
        .clone();
    if headers.iter().ne(KNOTS_HEADER) {
        return Err(TableError::SchemaError(format!(
            "header must be `{}`, got `{}`",
            KNOTS_HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut out = Vec::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| TableError::SchemaError(e.to_string()))?;
        let name = row[0].to_string();
        let schema = |what: &str| TableError::SchemaError(format!("row {}: bad {what}", line + 2));
        let violation = |reason: String| TableError::InvariantViolation {
            name: name.clone(),
            reason,
        };
        let num = |k: usize, what: &str| row[k].trim().parse::<u32>().map_err(|_| schema(what));
        let dt = row[4]
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| schema("dt"))?;
        let jones = LaurentPoly::from_pairs(&row[5]).map_err(|_| schema("jones"))?;
        let spectrum: Spectrum = row[6]
            .parse()
            .map_err(|e| violation(format!("spectrum: {e}")))?;
        let derivation: Derivation = row[7].parse().map_err(|_| schema("derivation"))?;
        let rec = KnotRecord {
            crossings: num(1, "crossings")?,
            bridge: num(2, "bridge")?,
            braid: num(3, "braid")?,
            name: name.clone(),
            dt,
            jones,
            spectrum,
            derivation,
        };
        rec.check().map_err(violation)?;
        out.push(rec);
    }
    Ok(out)
}

/// Loads the knot table and insists on all 85 rows.
pub fn load_knot_data(path: &Path) -> Result<Vec<KnotRecord>, TableError> {
    let file = fs::File::open(path).map_err(|e| io_err(path, e))?;
    let records = parse_knot_records(file)?;
    if records.len() != KNOT_COUNT {
        return Err(TableError::CountMismatch {
            expected: KNOT_COUNT,
            found: records.len(),
        });
    }
    Ok(records)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessEntry {
    pub knot: String,
    pub path: PathBuf,
    pub word: BooklinkWord,
}

fn check_witness(knot: &str, word: &BooklinkWord) -> Result<(), TableError> {
    let (d, n) = (word.bridge_index(), word.braid_count());
    if (d, n) != (1, 2) {
        return Err(TableError::NotA12Representative {
            name: knot.to_string(),
            d,
            n,
        });
    }
    Ok(())
}

pub fn load_witness(knot: &str, path: &Path) -> Result<WitnessEntry, TableError> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let word = parse_word(&text).map_err(|error| TableError::ParseError {
        name: knot.to_string(),
        error,
    })?;
    check_witness(knot, &word)?;
    Ok(WitnessEntry {
        knot: knot.to_string(),
        path: path.to_path_buf(),
        word,
    })
}

/// Loads `<knot>.blw` for every knot in [`WITNESS_KNOTS`].
pub fn load_witnesses(dir: &Path) -> Result<Vec<WitnessEntry>, TableError> {
    let missing: Vec<String> = WITNESS_KNOTS
        .iter()
        .filter(|k| !dir.join(format!("{k}.blw")).is_file())
        .map(|k| k.to_string())
        .collect();
    if !missing.is_empty() {
        return Err(TableError::Missing(missing));
    }
    WITNESS_KNOTS
        .iter()
        .map(|k| load_witness(k, &dir.join(format!("{k}.blw"))))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub knot: String,
    pub bridge: usize,
    pub braid: usize,
    pub candidates: Vec<String>,
}

impl WitnessReport {
    pub fn is_unique(&self) -> bool {
        self.candidates.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("{knot}: word is a ({d},{n})-representative, not (1,2)")]
    IndexMismatch { knot: String, d: usize, n: usize },
    #[error("{knot}: word identifies as [{}]", .candidates.join(", "))]
    IdentityMismatch {
        knot: String,
        candidates: Vec<String>,
    },
    #[error("{}: Jones polynomial shared by [{}]", .0.knot, .0.candidates.join(", "))]
    Ambiguous(WitnessReport),
}

/// Checks that the witness is a (1,2)-representative of its knot. A match
/// shared with other knots comes back as `Ambiguous` carrying the report.
pub fn verify_witness(
    e: &WitnessEntry,
    table: &[KnotRecord],
) -> Result<WitnessReport, VerifyError> {
    let (d, n) = (e.word.bridge_index(), e.word.braid_count());
    if (d, n) != (1, 2) {
        return Err(VerifyError::IndexMismatch {
            knot: e.knot.clone(),
            d,
            n,
        });
    }
    let candidates = match identify(&e.word, table) {
        Ok(id) => id.candidates,
        Err(IdentifyError::NoMatch(_)) | Err(IdentifyError::MultiComponent(_)) => Vec::new(),
    };
    if !candidates.contains(&e.knot) {
        return Err(VerifyError::IdentityMismatch {
            knot: e.knot.clone(),
            candidates,
        });
    }
    let report = WitnessReport {
        knot: e.knot.clone(),
        bridge: d,
        braid: n,
        candidates,
    };
    if report.is_unique() {
        Ok(report)
    } else {
        Err(VerifyError::Ambiguous(report))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub name: String,
    pub bridge: u32,
    pub braid: u32,
    pub spectrum: Spectrum,
    pub derivation: Derivation,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TableDocument {
    pub rows: Vec<TableRow>,
}

/// Derives one row from the rules, given whether a verified witness exists.
fn derive_row(r: &KnotRecord, witnessed: bool) -> Result<TableRow, TableError> {
    let (spectrum, derivation) = if r.bridge == 2 {
        (two_bridge_spectrum(r.braid), Derivation::TwoBridge)
    } else if r.bridge == r.braid {
        (bb_spectrum(r.bridge), Derivation::Bb)
    } else {
        if !witnessed {
            return Err(TableError::MissingWitness(r.name.clone()));
        }
        // b_2 = 1 and strict decrease force b_1 >= 2; the witness gives b_1 <= 2.
        // Both need d = 3, and b_0 > b_1 needs n >= 3.
        if r.bridge != 3 || r.braid < 3 {
            return Err(TableError::RowMismatch {
                name: r.name.clone(),
                expected: format!("{} ({})", r.spectrum, r.derivation),
                got: format!("no rule for bridge {} braid {}", r.bridge, r.braid),
            });
        }
        (Spectrum::new(&[r.braid, 2, 1, 0]), Derivation::Witness)
    };
    let spectrum = spectrum.map_err(|e| TableError::RowMismatch {
        name: r.name.clone(),
        expected: r.spectrum.to_string(),
        got: e.to_string(),
    })?;
    if spectrum != r.spectrum || derivation != r.derivation {
        return Err(TableError::RowMismatch {
            name: r.name.clone(),
            expected: format!("{} ({})", r.spectrum, r.derivation),
            got: format!("{spectrum} ({derivation})"),
        });
    }
    Ok(TableRow {
        name: r.name.clone(),
        bridge: r.bridge,
        braid: r.braid,
        spectrum,
        derivation,
    })
}

/// Per-row results, in table order. Witnesses are verified in parallel;
/// an ambiguous Jones match still counts when the expected knot is present.
pub fn regenerate_rows(
    records: &[KnotRecord],
    witnesses: &[WitnessEntry],
) -> Vec<Result<TableRow, TableError>> {
    let verified: Vec<String> = witnesses
        .par_iter()
        .filter(|w| {
            matches!(
                verify_witness(w, records),
                Ok(_) | Err(VerifyError::Ambiguous(_))
            )
        })
        .map(|w| w.knot.clone())
        .collect();
    records
        .iter()
        .map(|r| derive_row(r, verified.contains(&r.name)))
        .collect()
}

pub fn regenerate_table(
    records: &[KnotRecord],
    witnesses: &[WitnessEntry],
) -> Result<TableDocument, TableError> {
    let rows = regenerate_rows(records, witnesses)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TableDocument { rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
}

pub const TABLE_HEADER: [&str; 5] = ["name", "bridge", "braid", "spectrum", "derivation"];

pub fn emit(doc: &TableDocument, format: Format) -> String {
    match format {
        Format::Markdown => {
            let mut out = format!("| {} |\n|{}\n", TABLE_HEADER.join(" | "), "---|".repeat(5));
            for r in &doc.rows {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    r.name, r.bridge, r.braid, r.spectrum, r.derivation
                ));
            }
            out
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(TABLE_HEADER).expect("write to memory");
            for r in &doc.rows {
                w.write_record([
                    r.name.clone(),
                    r.bridge.to_string(),
                    r.braid.to_string(),
                    r.spectrum.to_string(),
                    r.derivation.to_string(),
                ])
                .expect("write to memory");
            }
            String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
        }
    }
}

/// Reads back the CSV form written by [`emit`].
pub fn parse_table_csv(text: &str) -> Result<TableDocument, TableError> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let schema = |e: String| TableError::SchemaError(e);
    let headers = rdr.headers().map_err(|e| schema(e.to_string()))?.clone();
    if headers.iter().ne(TABLE_HEADER) {
        return Err(schema(format!("unexpected header {headers:?}")));
    }
    let mut rows = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(|e| schema(e.to_string()))?;
        let bad = |what: &str| schema(format!("{}: bad {what}", &row[0]));
        rows.push(TableRow {
            name: row[0].to_string(),
            bridge: row[1].parse().map_err(|_| bad("bridge"))?,
            braid: row[2].parse().map_err(|_| bad("braid"))?,
            spectrum: row[3].parse().map_err(|_| bad("spectrum"))?,
            derivation: row[4].parse().map_err(|_| bad("derivation"))?,
        });
    }
    Ok(TableDocument { rows })
}
