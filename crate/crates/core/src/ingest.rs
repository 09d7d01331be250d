//! Information tables and the indiscernibility partition.
//!
//! Cells are nominal tokens compared as exact strings after trimming.

use std::collections::HashMap;
use std::io::Read;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sets::{Partition, Subset, Universe};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InformationTable {
    objects: Arc<Universe>,
    attributes: Vec<String>,
    /// Row-major, `objects.len() * attributes.len()` cells.
    values: Vec<String>,
}

impl InformationTable {
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<Vec<String>>,
    ) -> Result<Self> {
        let objects = Universe::new(objects)?;
        if rows.len() != objects.len() {
            return Err(Error::Table(format!(
                "{} objects but {} rows",
                objects.len(),
                rows.len()
            )));
        }
        let mut seen = HashMap::new();
        for a in &attributes {
            if seen.insert(a.as_str(), ()).is_some() {
                return Err(Error::Table(format!("duplicate attribute `{a}`")));
            }
        }
        let mut values = Vec::with_capacity(rows.len() * attributes.len());
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != attributes.len() {
                return Err(Error::Table(format!(
                    "row `{}` has {} cells, expected {}",
                    objects.element(r),
                    row.len(),
                    attributes.len()
                )));
            }
            for (c, v) in row.into_iter().enumerate() {
                let v = v.trim();
                if v.is_empty() {
                    return Err(Error::Table(format!(
                        "missing value for object `{}`, attribute `{}`",
                        objects.element(r),
                        attributes[c]
                    )));
                }
                values.push(v.to_string());
            }
        }
        Ok(InformationTable {
            objects,
            attributes,
            values,
        })
    }

    /// Reads a headed CSV. The identifier column is `id_column` when given,
    /// otherwise the first column; every other column is an attribute.
    pub fn from_csv<R: Read>(reader: R, id_column: Option<&str>) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header: Vec<String> = rdr
            .headers()
            .map_err(|e| Error::Table(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        let id_pos = match id_column {
            Some(name) => header
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::UnknownAttribute(name.to_string()))?,
            None if header.is_empty() => return Err(Error::Table("empty header".into())),
            None => 0,
        };
        let attributes: Vec<String> = header
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != id_pos)
            .map(|(_, h)| h.clone())
            .collect();
        let mut objects = Vec::new();
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| Error::Table(e.to_string()))?;
            objects.push(record[id_pos].to_string());
            rows.push(
                record
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != id_pos)
                    .map(|(_, v)| v.to_string())
                    .collect(),
            );
        }
        InformationTable::new(objects, attributes, rows)
    }

    pub fn objects(&self) -> &Arc<Universe> {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    fn column(&self, attr: &str) -> Result<usize> {
        self.attributes
            .iter()
            .position(|a| a == attr)
            .ok_or_else(|| Error::UnknownAttribute(attr.to_string()))
    }

    pub fn value(&self, object: usize, attr: &str) -> Result<&str> {
        let c = self.column(attr)?;
        Ok(&self.values[object * self.attributes.len() + c])
    }
}

/// Objects share a block iff they agree on every attribute in `attrs`.
pub fn indiscernibility_partition<S: AsRef<str>>(
    t: &InformationTable,
    attrs: &[S],
) -> Result<Partition> {
    if attrs.is_empty() {
        return Err(Error::EmptyAttributeSet);
    }
    let cols = attrs
        .iter()
        .map(|a| t.column(a.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let width = t.attributes.len();
    let mut keys: HashMap<Vec<&str>, usize> = HashMap::new();
    let labels: Vec<usize> = (0..t.objects.len())
        .map(|o| {
            let key: Vec<&str> = cols
                .iter()
                .map(|&c| t.values[o * width + c].as_str())
                .collect();
            let next = keys.len();
            *keys.entry(key).or_insert(next)
        })
        .collect();
    Ok(Partition::from_labels(t.objects.clone(), &labels))
}

/// Objects whose `decision_attr` equals `value` (after trimming).
pub fn decision_target(t: &InformationTable, decision_attr: &str, value: &str) -> Result<Subset> {
    let c = t.column(decision_attr)?;
    let width = t.attributes.len();
    let value = value.trim();
    Ok(t.objects
        .subset_from_indices((0..t.objects.len()).filter(|&o| t.values[o * width + c] == value)))
}
