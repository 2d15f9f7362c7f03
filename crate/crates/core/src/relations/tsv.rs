use super::matrix::{NamedObject, RelationMatrix};
use super::RelationError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsvFormat {
    /// Similarity values, six decimals.
    Values,
    /// Category codes 1-9.
    Categories,
}

/// Tab-separated grid: header row of column ids, then one line per row id.
/// Absent cells are empty fields.
pub fn export_matrix(matrix: &RelationMatrix, format: TsvFormat) -> String {
    let mut out = String::new();
    for c in matrix.cols() {
        out.push('\t');
        out.push_str(&c.id);
    }
    out.push('\n');
    for (i, r) in matrix.rows().iter().enumerate() {
        out.push_str(&r.id);
        for j in 0..matrix.cols().len() {
            out.push('\t');
            let cell = matrix.cell(i, j);
            match format {
                TsvFormat::Values => {
                    if let Some(v) = cell.value() {
                        out.push_str(&format!("{v:.6}"));
                    }
                }
                TsvFormat::Categories => {
                    if let Some(c) = cell.category() {
                        out.push_str(&c.code().to_string());
                    }
                }
            }
        }
        out.push('\n');
    }
    out
}

/// Per-cell provenance log as TSV.
pub fn provenance_tsv(matrix: &RelationMatrix) -> String {
    let mut out = String::from("row\tcol\tquery_x\tquery_y\tf_x\tf_y\tf_xy\tn_total\toutcome\n");
    for p in matrix.provenance() {
        let (fx, fy, fxy, n) = match p.counts {
            Some(h) => (
                h.f_x.to_string(),
                h.f_y.to_string(),
                h.f_xy.to_string(),
                h.n_total.map(|n| n.to_string()).unwrap_or_default(),
            ),
            None => Default::default(),
        };
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{fx}\t{fy}\t{fxy}\t{n}\t{}\n",
            p.row,
            p.col,
            p.query_x.as_deref().unwrap_or(""),
            p.query_y.as_deref().unwrap_or(""),
            p.outcome
        ));
    }
    out
}

/// A parsed TSV grid with raw string cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TsvTable {
    pub row_ids: Vec<String>,
    pub col_ids: Vec<String>,
    pub cells: Vec<Vec<Option<String>>>,
}

pub fn parse_tsv(text: &str) -> Result<TsvTable, RelationError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| RelationError::BadTsv("empty input".into()))?;
    let mut head = header.split('\t');
    if head.next() != Some("") {
        return Err(RelationError::BadTsv(
            "header must start with an empty corner cell".into(),
        ));
    }
    let col_ids: Vec<String> = head.map(str::to_string).collect();
    let mut row_ids = Vec::new();
    let mut cells = Vec::new();
    for (n, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        row_ids.push(fields.next().unwrap_or_default().to_string());
        let row: Vec<Option<String>> = fields.map(|f| (!f.is_empty()).then(|| f.to_string())).collect();
        if row.len() != col_ids.len() {
            return Err(RelationError::BadTsv(format!(
                "line {} has {} cells, expected {}",
                n + 2,
                row.len(),
                col_ids.len()
            )));
        }
        cells.push(row);
    }
    Ok(TsvTable {
        row_ids,
        col_ids,
        cells,
    })
}

/// Rebuilds a matrix from values TSV. Objects get their id as display name;
/// categories are recomputed from the values.
pub fn import_values(text: &str) -> Result<RelationMatrix, RelationError> {
    let table = parse_tsv(text)?;
    let to_objects = |ids: &[String]| {
        ids.iter()
            .map(|id| NamedObject::new(id.clone(), id.clone(), ""))
            .collect()
    };
    let values = table
        .cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| {
                    c.as_deref()
                        .map(|s| {
                            s.parse::<f64>()
                                .map_err(|_| RelationError::BadTsv(format!("not a number: {s:?}")))
                        })
                        .transpose()
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    RelationMatrix::from_values(to_objects(&table.row_ids), to_objects(&table.col_ids), values)
}
