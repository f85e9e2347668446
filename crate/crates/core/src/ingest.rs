//! Examinee-by-descriptor response tables.
//!
//! CSV layout: a mandatory header whose first field is `examinee`, one column
//! per descriptor, and optional metadata columns prefixed `meta:` (for
//! example `meta:proficiency`, `meta:shift`). Descriptor cells hold a correct
//! answer rate from `{0, 1/2, 1}`, written `0`, `1`, `0.5` or `1/2`, or `NA`
//! when the descriptor was not assessed.

use std::collections::{HashMap, HashSet};
use std::io::Read;

use nalgebra::DMatrix;

use crate::data::ResponseMatrix;
use crate::error::{LpcaError, Result};

pub const NA_TOKEN: &str = "NA";
pub const META_PREFIX: &str = "meta:";

/// Which descriptor cell values a table admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellDomain {
    /// Rates `{0, 1/2, 1}`.
    Rates,
    /// Any finite real (for Gaussian-family inputs).
    Real,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResponseTable {
    pub examinee_ids: Vec<String>,
    pub descriptor_names: Vec<String>,
    /// Row-major cells, `None` for `NA`.
    pub cells: Vec<Vec<Option<f64>>>,
    /// Metadata columns by name (without the `meta:` prefix), in file order.
    pub metadata: Vec<(String, Vec<Option<String>>)>,
}

fn parse_err(row: usize, column: usize, message: impl Into<String>) -> LpcaError {
    LpcaError::Parse {
        row,
        column,
        message: message.into(),
    }
}

fn parse_cell(token: &str, domain: CellDomain) -> Option<Option<f64>> {
    if token == NA_TOKEN {
        return Some(None);
    }
    match domain {
        CellDomain::Rates => match token {
            "0" => Some(Some(0.0)),
            "1" => Some(Some(1.0)),
            "0.5" | "1/2" => Some(Some(0.5)),
            _ => None,
        },
        CellDomain::Real => token.parse::<f64>().ok().filter(|v| v.is_finite()).map(Some),
    }
}

fn format_cell(v: Option<f64>) -> String {
    match v {
        None => NA_TOKEN.to_string(),
        Some(x) if x == 0.0 => "0".to_string(),
        Some(x) if x == 0.5 => "0.5".to_string(),
        Some(x) if x == 1.0 => "1".to_string(),
        Some(x) => x.to_string(),
    }
}

impl ResponseTable {
    pub fn nrows(&self) -> usize {
        self.examinee_ids.len()
    }

    pub fn ncols(&self) -> usize {
        self.descriptor_names.len()
    }

    /// Checks shape, id uniqueness and that cells are rates.
    pub fn validate(&self) -> Result<()> {
        self.validate_with(CellDomain::Rates)
    }

    pub fn validate_with(&self, domain: CellDomain) -> Result<()> {
        let n = self.nrows();
        if self.cells.len() != n {
            return Err(LpcaError::DimensionMismatch {
                expected: n,
                got: self.cells.len(),
            });
        }
        let mut seen = HashSet::new();
        for id in &self.examinee_ids {
            if !seen.insert(id.as_str()) {
                return Err(LpcaError::Data(format!("duplicate examinee id '{id}'")));
            }
        }
        for (i, row) in self.cells.iter().enumerate() {
            if row.len() != self.ncols() {
                return Err(LpcaError::DimensionMismatch {
                    expected: self.ncols(),
                    got: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                let ok = match (v, domain) {
                    (None, _) => true,
                    (Some(x), CellDomain::Rates) => *x == 0.0 || *x == 0.5 || *x == 1.0,
                    (Some(x), CellDomain::Real) => x.is_finite(),
                };
                if !ok {
                    return Err(LpcaError::Data(format!(
                        "cell ({}, {}) = {:?} is not an admissible value",
                        self.examinee_ids[i], self.descriptor_names[j], v
                    )));
                }
            }
        }
        for (name, col) in &self.metadata {
            if col.len() != n {
                return Err(LpcaError::Data(format!(
                    "metadata column '{name}' has {} values for {n} rows",
                    col.len()
                )));
            }
        }
        Ok(())
    }

    /// Raw values of a metadata column.
    pub fn meta(&self, name: &str) -> Option<&[Option<String>]> {
        self.metadata
            .iter()
            .find(|(k, _)| k == name)
            .map(|(_, v)| v.as_slice())
    }

    /// Metadata column parsed as numbers; `Ok(None)` when absent.
    pub fn numeric_meta(&self, name: &str) -> Result<Option<Vec<Option<f64>>>> {
        let Some(col) = self.meta(name) else {
            return Ok(None);
        };
        col.iter()
            .enumerate()
            .map(|(i, v)| match v {
                None => Ok(None),
                Some(s) => s.trim().parse::<f64>().map(Some).map_err(|_| {
                    LpcaError::Data(format!(
                        "metadata '{name}' of examinee '{}' is not numeric: '{s}'",
                        self.examinee_ids[i]
                    ))
                }),
            })
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    pub fn descriptor_index(&self, name: &str) -> Option<usize> {
        self.descriptor_names.iter().position(|d| d == name)
    }

    /// Keeps the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self {
            examinee_ids: rows.iter().map(|&i| self.examinee_ids[i].clone()).collect(),
            descriptor_names: self.descriptor_names.clone(),
            cells: rows.iter().map(|&i| self.cells[i].clone()).collect(),
            metadata: self
                .metadata
                .iter()
                .map(|(k, v)| (k.clone(), rows.iter().map(|&i| v[i].clone()).collect()))
                .collect(),
        }
    }

    /// Canonical CSV text: descriptor cells as `0`, `0.5`, `1`, `NA`;
    /// metadata after the descriptors.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        let mut header = vec!["examinee".to_string()];
        header.extend(self.descriptor_names.iter().cloned());
        header.extend(self.metadata.iter().map(|(k, _)| format!("{META_PREFIX}{k}")));
        w.write_record(&header)?;
        for i in 0..self.nrows() {
            let mut rec = vec![self.examinee_ids[i].clone()];
            rec.extend(self.cells[i].iter().map(|v| format_cell(*v)));
            rec.extend(
                self.metadata
                    .iter()
                    .map(|(_, col)| col[i].clone().unwrap_or_else(|| NA_TOKEN.to_string())),
            );
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| LpcaError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
    }
}

/// Parses a rate table.
pub fn parse_table<R: Read>(input: R) -> Result<ResponseTable> {
    parse_table_with(input, CellDomain::Rates)
}

pub fn parse_table_with<R: Read>(input: R, domain: CellDomain) -> Result<ResponseTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let mut records = reader.records();
    let header = match records.next() {
        Some(rec) => rec?,
        None => return Err(parse_err(1, 1, "missing header row")),
    };
    if header.get(0).map(|h| h.eq_ignore_ascii_case("examinee")) != Some(true) {
        return Err(parse_err(1, 1, "first header field must be 'examinee'"));
    }
    let width = header.len();

    enum Col {
        Descriptor(usize),
        Meta(usize),
    }
    let mut layout = Vec::with_capacity(width);
    let mut descriptor_names = Vec::new();
    let mut meta_names: Vec<String> = Vec::new();
    let mut seen = HashSet::new();
    for (c, name) in header.iter().enumerate().skip(1) {
        if name.is_empty() {
            return Err(parse_err(1, c + 1, "empty column name"));
        }
        if !seen.insert(name.to_string()) {
            return Err(parse_err(1, c + 1, format!("duplicate column '{name}'")));
        }
        if let Some(meta) = name.strip_prefix(META_PREFIX) {
            layout.push(Col::Meta(meta_names.len()));
            meta_names.push(meta.to_string());
        } else {
            layout.push(Col::Descriptor(descriptor_names.len()));
            descriptor_names.push(name.to_string());
        }
    }
    if descriptor_names.is_empty() {
        return Err(parse_err(1, 1, "no descriptor columns"));
    }

    let mut ids = Vec::new();
    let mut id_set = HashSet::new();
    let mut cells = Vec::new();
    let mut meta_cols: Vec<Vec<Option<String>>> = vec![Vec::new(); meta_names.len()];
    for (r, rec) in records.enumerate() {
        let row = r + 2;
        let rec = rec?;
        if rec.len() == 1 && rec.get(0) == Some("") {
            continue;
        }
        if rec.len() != width {
            return Err(parse_err(
                row,
                rec.len().min(width) + 1,
                format!("expected {width} fields, found {}", rec.len()),
            ));
        }
        let id = rec.get(0).unwrap_or_default().to_string();
        if id.is_empty() {
            return Err(parse_err(row, 1, "empty examinee id"));
        }
        if !id_set.insert(id.clone()) {
            return Err(parse_err(row, 1, format!("duplicate examinee id '{id}'")));
        }
        let mut values = vec![None; descriptor_names.len()];
        for (c, token) in rec.iter().enumerate().skip(1) {
            match layout[c - 1] {
                Col::Descriptor(j) => {
                    values[j] = parse_cell(token, domain).ok_or_else(|| {
                        parse_err(row, c + 1, format!("unknown cell token '{token}'"))
                    })?;
                }
                Col::Meta(m) => {
                    let v = (!token.is_empty() && token != NA_TOKEN).then(|| token.to_string());
                    meta_cols[m].push(v);
                }
            }
        }
        ids.push(id);
        cells.push(values);
    }
    if ids.is_empty() {
        return Err(parse_err(2, 1, "no data rows"));
    }
    Ok(ResponseTable {
        examinee_ids: ids,
        descriptor_names,
        cells,
        metadata: meta_names.into_iter().zip(meta_cols).collect(),
    })
}

/// Raw per-item responses: `Some(correct)` when the item was administered to
/// the examinee, `None` otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemResponses {
    pub examinee_ids: Vec<String>,
    pub item_names: Vec<String>,
    pub responses: Vec<Vec<Option<bool>>>,
}

/// Collapses item responses into descriptor rates (correct / administered).
///
/// `mapping` lists `(item, descriptor)` pairs; descriptor columns follow the
/// order of first appearance. At most two items per descriptor may be
/// administered to one examinee.
pub fn aggregate_items(raw: &ItemResponses, mapping: &[(String, String)]) -> Result<ResponseTable> {
    let mut item_to_desc: HashMap<&str, usize> = HashMap::new();
    let mut descriptor_names: Vec<String> = Vec::new();
    for (item, desc) in mapping {
        let idx = match descriptor_names.iter().position(|d| d == desc) {
            Some(i) => i,
            None => {
                descriptor_names.push(desc.clone());
                descriptor_names.len() - 1
            }
        };
        if item_to_desc.insert(item.as_str(), idx).is_some() {
            return Err(LpcaError::Data(format!("item '{item}' mapped more than once")));
        }
    }
    let columns: Vec<usize> = raw
        .item_names
        .iter()
        .map(|name| {
            item_to_desc
                .get(name.as_str())
                .copied()
                .ok_or_else(|| LpcaError::Data(format!("item '{name}' has no descriptor")))
        })
        .collect::<Result<_>>()?;

    let mut cells = Vec::with_capacity(raw.examinee_ids.len());
    for (id, row) in raw.examinee_ids.iter().zip(&raw.responses) {
        if row.len() != raw.item_names.len() {
            return Err(LpcaError::DimensionMismatch {
                expected: raw.item_names.len(),
                got: row.len(),
            });
        }
        let mut assigned = vec![0u32; descriptor_names.len()];
        let mut correct = vec![0u32; descriptor_names.len()];
        for (resp, &j) in row.iter().zip(&columns) {
            if let Some(ok) = resp {
                assigned[j] += 1;
                correct[j] += u32::from(*ok);
            }
        }
        let mut values = Vec::with_capacity(descriptor_names.len());
        for j in 0..descriptor_names.len() {
            match assigned[j] {
                0 => values.push(None),
                1 | 2 => values.push(Some(correct[j] as f64 / assigned[j] as f64)),
                more => {
                    return Err(LpcaError::Data(format!(
                        "examinee '{id}' has {more} items for descriptor '{}' (at most 2)",
                        descriptor_names[j]
                    )))
                }
            }
        }
        cells.push(values);
    }
    let table = ResponseTable {
        examinee_ids: raw.examinee_ids.clone(),
        descriptor_names,
        cells,
        metadata: Vec::new(),
    };
    table.validate()?;
    Ok(table)
}

/// Performance standard on the 0-500 proficiency scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProficiencyBand {
    VeryCritical,
    Critical,
    Intermediate,
    Adequate,
}

impl ProficiencyBand {
    pub const ALL: [ProficiencyBand; 4] = [
        ProficiencyBand::VeryCritical,
        ProficiencyBand::Critical,
        ProficiencyBand::Intermediate,
        ProficiencyBand::Adequate,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            ProficiencyBand::VeryCritical => "very critical",
            ProficiencyBand::Critical => "critical",
            ProficiencyBand::Intermediate => "intermediate",
            ProficiencyBand::Adequate => "adequate",
        }
    }
}

/// Band by closed upper thresholds 250 / 300 / 350.
pub fn band_of(score: f64) -> Result<ProficiencyBand> {
    if !(0.0..=500.0).contains(&score) {
        return Err(LpcaError::Domain(format!("proficiency {score} outside [0, 500]")));
    }
    Ok(if score <= 250.0 {
        ProficiencyBand::VeryCritical
    } else if score <= 300.0 {
        ProficiencyBand::Critical
    } else if score <= 350.0 {
        ProficiencyBand::Intermediate
    } else {
        ProficiencyBand::Adequate
    })
}

/// Transfers cells and mask; fails on a row or column with no observed cell.
pub fn to_response_matrix(table: &ResponseTable) -> Result<ResponseMatrix> {
    let (n, d) = (table.nrows(), table.ncols());
    if table.cells.len() != n || table.cells.iter().any(|r| r.len() != d) {
        return Err(LpcaError::Data("ragged table".into()));
    }
    for (i, row) in table.cells.iter().enumerate() {
        if row.iter().all(Option::is_none) {
            return Err(LpcaError::Data(format!(
                "examinee '{}' has no observed descriptor",
                table.examinee_ids[i]
            )));
        }
    }
    for j in 0..d {
        if table.cells.iter().all(|r| r[j].is_none()) {
            return Err(LpcaError::Data(format!(
                "descriptor '{}' has no observed cell",
                table.descriptor_names[j]
            )));
        }
    }
    let values = DMatrix::from_fn(n, d, |i, j| table.cells[i][j].unwrap_or(f64::NAN));
    let observed = DMatrix::from_fn(n, d, |i, j| table.cells[i][j].is_some());
    ResponseMatrix::new(values, observed)
}
