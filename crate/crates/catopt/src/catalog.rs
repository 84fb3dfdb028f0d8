//! Component catalogs: finite lists of items described by numeric properties.

use crate::boxes::IntervalBox;
use std::path::Path;
use thiserror::Error;

/// A catalog is a table with one row per selectable item and one column per
/// property. Property values are plain numbers; item identity is the 1-based
/// row position.
#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    pub name: String,
    pub props: Vec<String>,
    items: Vec<Vec<f64>>,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} line {line}: {message}")]
    Format { path: String, line: usize, message: String },
    #[error("{path}: catalog has no items")]
    Empty { path: String },
}

impl Catalog {
    /// Reads a catalog from a CSV file: a header row naming the properties
    /// (an optional leading `item` column carries 1-based ids), then one row
    /// of numbers per item. Blank lines are ignored.
    pub fn load_csv(path: &Path) -> Result<Catalog, CatalogError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path)
            .map_err(|source| CatalogError::Io { path: shown.clone(), source })?;
        Catalog::parse_csv(&text, &shown)
    }

    pub fn parse_csv(text: &str, path: &str) -> Result<Catalog, CatalogError> {
        let err = |line: usize, message: String| CatalogError::Format {
            path: path.to_string(),
            line,
            message,
        };
        let mut rows = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_line, header) = rows
            .next()
            .ok_or_else(|| CatalogError::Empty { path: path.to_string() })?;
        let mut fields: Vec<&str> = header.split(',').map(str::trim).collect();
        let labeled = fields
            .first()
            .is_some_and(|f| f.eq_ignore_ascii_case("item"));
        if labeled {
            fields.remove(0);
        }
        if fields.is_empty() || fields.iter().any(|f| f.is_empty()) {
            return Err(err(header_line, "header needs a name for every column".into()));
        }
        for (i, f) in fields.iter().enumerate() {
            if fields[..i].contains(f) {
                return Err(err(header_line, format!("duplicate property name `{f}`")));
            }
        }
        let props: Vec<String> = fields.iter().map(|f| f.to_string()).collect();

        let mut items = Vec::new();
        for (line, row) in rows {
            let cells: Vec<&str> = row.split(',').map(str::trim).collect();
            let expected = props.len() + labeled as usize;
            if cells.len() != expected {
                return Err(err(
                    line,
                    format!("expected {expected} fields, found {}", cells.len()),
                ));
            }
            let values = if labeled {
                let want = items.len() + 1;
                if cells[0].parse::<usize>() != Ok(want) {
                    return Err(err(
                        line,
                        format!("item id `{}` out of order, expected {want}", cells[0]),
                    ));
                }
                &cells[1..]
            } else {
                &cells[..]
            };
            let mut item = Vec::with_capacity(props.len());
            for (col, cell) in values.iter().enumerate() {
                let v: f64 = cell.parse().map_err(|_| {
                    err(
                        line,
                        format!("column {}: malformed number `{cell}`", col + 1 + labeled as usize),
                    )
                })?;
                if !v.is_finite() {
                    return Err(err(
                        line,
                        format!("column {}: value `{cell}` is not finite", col + 1 + labeled as usize),
                    ));
                }
                item.push(v);
            }
            items.push(item);
        }
        if items.is_empty() {
            return Err(CatalogError::Empty { path: path.to_string() });
        }
        Ok(Catalog { name: String::new(), props, items })
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn num_props(&self) -> usize {
        self.props.len()
    }

    /// Property values of the item at 0-based position `idx`.
    pub fn item(&self, idx: usize) -> &[f64] {
        &self.items[idx]
    }

    /// 0-based positions of the items whose properties all lie inside the
    /// box components bound to this catalog.
    pub fn items_in(&self, b: &IntervalBox, vars: &[usize]) -> Vec<usize> {
        assert_eq!(vars.len(), self.num_props());
        (0..self.items.len())
            .filter(|&i| {
                self.items[i]
                    .iter()
                    .zip(vars)
                    .all(|(&v, &j)| b.comp(j).contains(v))
            })
            .collect()
    }
}
