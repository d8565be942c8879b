//! CSV input readers: a real-valued column for symbolization, and symbol
//! streams in the format the `symbolize` command writes.

use crate::{output, Failure};
use std::path::Path;
use transcripta::{Alphabet, SymbolSeries};

/// All records of a CSV file as strings, with a leading header row split off
/// when its cells are not numeric.
struct Table {
    header: Option<Vec<String>>,
    /// `(1-based file row, cells)`.
    rows: Vec<(usize, Vec<String>)>,
}

fn read_table(path: &Path) -> Result<Table, Failure> {
    let text = output::read_file(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            Failure::data(format!("{}: row {}: {e}", path.display(), index + 1))
        })?;
        let cells: Vec<String> = record.iter().map(str::to_string).collect();
        if cells.iter().all(|c| c.is_empty()) {
            continue;
        }
        rows.push((index + 1, cells));
    }
    if rows.is_empty() {
        return Err(Failure::data(format!("{}: no data rows", path.display())));
    }
    let header_like = rows[0]
        .1
        .iter()
        .any(|cell| !cell.is_empty() && cell.parse::<f64>().is_err());
    let header = header_like.then(|| rows.remove(0).1);
    if rows.is_empty() {
        return Err(Failure::data(format!(
            "{}: only a header row, no data",
            path.display()
        )));
    }
    Ok(Table { header, rows })
}

/// Resolves `--column` (a header name or 0-based index; default first
/// column) against the table shape.
fn resolve_column(table: &Table, column: Option<&str>, path: &Path) -> Result<usize, Failure> {
    match column {
        None => Ok(0),
        Some(name) => {
            if let Some(header) = &table.header {
                if let Some(index) = header.iter().position(|h| h == name) {
                    return Ok(index);
                }
            }
            name.parse::<usize>().map_err(|_| {
                Failure::usage(format!(
                    "{}: no column named {name:?}{}",
                    path.display(),
                    if table.header.is_none() {
                        " (file has no header row; use a 0-based index)"
                    } else {
                        ""
                    }
                ))
            })
        }
    }
}

fn cell<'a>(
    row: &'a (usize, Vec<String>),
    index: usize,
    path: &Path,
) -> Result<&'a str, Failure> {
    row.1.get(index).map(String::as_str).ok_or_else(|| {
        Failure::data(format!(
            "{}: row {} has no column {index}",
            path.display(),
            row.0
        ))
    })
}

/// Reads one real-valued column; errors name the offending row.
pub fn read_numeric_column(path: &Path, column: Option<&str>) -> Result<Vec<f64>, Failure> {
    let table = read_table(path)?;
    let index = resolve_column(&table, column, path)?;
    let mut values = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        let raw = cell(row, index, path)?;
        let value: f64 = raw.parse().map_err(|_| {
            Failure::data(format!(
                "{}: row {}: {raw:?} is not a number",
                path.display(),
                row.0
            ))
        })?;
        values.push(value);
    }
    Ok(values)
}

/// Reads a symbol stream written by the `symbolize` command: a `symbol`
/// column of pattern indices, plus either a `pattern` column (whose labels
/// fix the pattern length) or an explicit `--length`.
pub fn read_symbol_series(
    path: &Path,
    length_hint: Option<usize>,
) -> Result<SymbolSeries, Failure> {
    let table = read_table(path)?;
    let header = table.header.as_ref().ok_or_else(|| {
        Failure::data(format!(
            "{}: expected a header row with a \"symbol\" column",
            path.display()
        ))
    })?;
    let symbol_col = header
        .iter()
        .position(|h| h == "symbol")
        .ok_or_else(|| Failure::data(format!("{}: no \"symbol\" column", path.display())))?;
    let pattern_col = header.iter().position(|h| h == "pattern");

    let degree = match (pattern_col, length_hint) {
        (Some(col), _) => cell(&table.rows[0], col, path)?.chars().count(),
        (None, Some(length)) => length,
        (None, None) => {
            return Err(Failure::usage(format!(
                "{}: no \"pattern\" column to infer the pattern length from; pass --length",
                path.display()
            )))
        }
    };
    let alphabet = Alphabet::sym(degree).map_err(Failure::from_library)?;

    let mut symbols = Vec::with_capacity(table.rows.len());
    for row in &table.rows {
        let raw = cell(row, symbol_col, path)?;
        let symbol: usize = raw.parse().map_err(|_| {
            Failure::data(format!(
                "{}: row {}: {raw:?} is not a symbol index",
                path.display(),
                row.0
            ))
        })?;
        symbols.push(symbol);
    }
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "stream".to_string());
    SymbolSeries::new(alphabet, symbols, label)
        .map_err(|e| Failure::data(format!("{}: {e}", path.display())))
}
