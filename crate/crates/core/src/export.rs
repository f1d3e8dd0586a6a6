//! Deterministic CSV, JSON and LaTeX renderings of structure tables.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::structconst::{positivity_certificate, StructureTable, WeightedStructConst};

/// One nonzero `c_{ij}^k`, flattened for export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub degree: usize,
    pub polynomial: String,
    pub alpha: String,
    pub nonneg: bool,
    #[serde(skip)]
    latex_t: String,
    #[serde(skip)]
    latex_alpha: String,
}

pub fn table_rows(table: &StructureTable) -> Result<Vec<TableRow>> {
    table
        .nonzero_entries()
        .map(|((i, j, k), c)| {
            let cert = positivity_certificate(c)?;
            Ok(TableRow {
                i,
                j,
                k,
                degree: i + j - k,
                polynomial: c.to_string(),
                alpha: cert.alpha.to_string(),
                nonneg: cert.nonneg,
                latex_t: c.to_latex("t"),
                latex_alpha: cert.alpha.as_poly().to_latex("\\alpha"),
            })
        })
        .collect()
}

fn csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(vec![]);
    for row in rows {
        w.serialize(row)
            .map_err(|e| Error::Parse(format!("csv: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Parse(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Header `i,j,k,degree,polynomial,alpha,nonneg`, one line per row.
pub fn rows_to_csv(rows: &[TableRow]) -> Result<String> {
    if rows.is_empty() {
        return Ok("i,j,k,degree,polynomial,alpha,nonneg\n".into());
    }
    csv_string(rows)
}

/// `{"n": n, "entries": [{"alpha", "degree", "i", "j", "k", "nonneg", "polynomial"}, ...]}`
/// with keys sorted.
pub fn rows_to_json(n: usize, rows: &[TableRow]) -> serde_json::Value {
    serde_json::json!({
        "n": n,
        "entries": serde_json::to_value(rows).expect("rows serialize"),
    })
}

/// A `tabular` with one line per nonzero constant, in both variable sets.
pub fn rows_to_latex(rows: &[TableRow]) -> String {
    let mut out = String::from("\\begin{tabular}{ccc|l|l}\n");
    out.push_str("$i$ & $j$ & $k$ & $c_{ij}^k$ & in $\\alpha$ \\\\\n\\hline\n");
    for r in rows {
        out.push_str(&format!(
            "{} & {} & {} & ${}$ & ${}$ \\\\\n",
            r.i, r.j, r.k, r.latex_t, r.latex_alpha
        ));
    }
    out.push_str("\\end{tabular}\n");
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightedRow {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub image: String,
    pub native: String,
    pub image_integral: bool,
    pub native_integral: bool,
}

impl WeightedRow {
    pub fn new(i: usize, j: usize, c: &WeightedStructConst) -> Self {
        Self {
            i,
            j,
            k: c.k,
            image: c.image.to_string(),
            native: c.native.to_string(),
            image_integral: c.image_integral(),
            native_integral: c.native_integral(),
        }
    }
}

pub fn weighted_rows_to_csv(rows: &[WeightedRow]) -> Result<String> {
    if rows.is_empty() {
        return Ok("i,j,k,image,native,image_integral,native_integral\n".into());
    }
    csv_string(rows)
}
