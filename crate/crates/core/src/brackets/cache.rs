use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::eval::evaluate;
use super::index::{BracketIndex, Model};
use crate::arith::{format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::series::QSeries;

pub const CACHE_HEADER: &str = "QZETA-CACHE v1";

/// Expansions keyed by index. Only the highest order seen for an index is
/// kept; requests for lower orders are served by truncation.
///
/// The backing file is rewritten whole through a temporary file and a rename,
/// so readers never observe a half-written record.
#[derive(Debug, Default)]
pub struct ExpansionCache {
    path: Option<PathBuf>,
    entries: BTreeMap<BracketIndex, QSeries>,
    dirty: bool,
}

impl ExpansionCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `path` if it exists; otherwise starts empty and will create it on save.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let entries = if path.exists() {
            parse_file(&fs::read_to_string(&path)?)?
        } else {
            BTreeMap::new()
        };
        Ok(ExpansionCache {
            path: Some(path),
            entries,
            dirty: false,
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BracketIndex, &QSeries)> {
        self.entries.iter()
    }

    pub fn get(&self, idx: &BracketIndex, order: usize) -> Option<QSeries> {
        self.entries
            .get(idx)
            .filter(|s| s.order() >= order)
            .map(|s| s.truncate(order))
    }

    /// Stores `series` unless an expansion of at least the same order is present.
    pub fn insert(&mut self, idx: BracketIndex, series: QSeries) {
        if self.entries.get(&idx).is_some_and(|old| old.order() >= series.order()) {
            return;
        }
        self.entries.insert(idx, series);
        self.dirty = true;
    }

    pub fn get_or_compute(&mut self, idx: &BracketIndex, order: usize) -> QSeries {
        if let Some(s) = self.get(idx, order) {
            return s;
        }
        let s = evaluate(idx, order);
        self.insert(idx.clone(), s.clone());
        s
    }

    pub fn clear(&mut self) {
        if !self.entries.is_empty() {
            self.entries.clear();
            self.dirty = true;
        }
    }

    /// Recomputes up to `sample` entries (evenly spread) and reports the
    /// indices whose stored coefficients differ from a fresh evaluation.
    pub fn audit(&self, sample: usize) -> Vec<BracketIndex> {
        let n = self.entries.len();
        if n == 0 || sample == 0 {
            return Vec::new();
        }
        let step = (n / sample.min(n)).max(1);
        self.entries
            .iter()
            .step_by(step)
            .filter(|(idx, s)| evaluate(idx, s.order()).coeffs() != s.coeffs())
            .map(|(idx, _)| idx.clone())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from(CACHE_HEADER);
        out.push('\n');
        for (idx, s) in &self.entries {
            out.push_str(&format_record(idx, s));
            out.push('\n');
        }
        out
    }

    /// Writes the file if anything changed since it was loaded.
    pub fn save(&mut self) -> Result<()> {
        let Some(path) = self.path.clone() else {
            return Ok(());
        };
        if !self.dirty {
            return Ok(());
        }
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        fs::create_dir_all(&dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
        tmp.write_all(self.to_text().as_bytes())?;
        tmp.flush()?;
        tmp.persist(&path).map_err(|e| Error::Cache(e.to_string()))?;
        self.dirty = false;
        Ok(())
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

pub fn format_record(idx: &BracketIndex, s: &QSeries) -> String {
    let coeffs: Vec<String> = s.coeffs().iter().map(format_rational).collect();
    format!(
        "{}|{}|{}|{}|{}",
        idx.model,
        join(&idx.s),
        join(&idx.r),
        s.order(),
        coeffs.join(",")
    )
}

pub fn parse_record(line: &str) -> Result<(BracketIndex, QSeries)> {
    let bad = |detail: String| Error::Parse {
        what: "cache record",
        detail,
    };
    let fields: Vec<&str> = line.split('|').collect();
    if fields.len() != 5 {
        return Err(bad(format!("expected 5 fields, found {}", fields.len())));
    }
    let model: Model = fields[0].parse()?;
    let row = |f: &str| -> Result<Vec<u32>> {
        if f.is_empty() {
            return Ok(Vec::new());
        }
        f.split(',')
            .map(|x| x.parse::<u32>().map_err(|_| bad(format!("bad index entry {x:?}"))))
            .collect()
    };
    let idx = BracketIndex::new(model, row(fields[1])?, row(fields[2])?)?;
    let order: usize = fields[3]
        .parse()
        .map_err(|_| bad(format!("bad order {:?}", fields[3])))?;
    let coeffs = fields[4]
        .split(',')
        .map(|c| parse_rational(c).ok_or_else(|| bad(format!("bad coefficient {c:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if coeffs.len() != order + 1 {
        return Err(bad(format!(
            "order {order} needs {} coefficients, found {}",
            order + 1,
            coeffs.len()
        )));
    }
    Ok((idx, QSeries::from_coeffs(coeffs)))
}

fn parse_file(text: &str) -> Result<BTreeMap<BracketIndex, QSeries>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == CACHE_HEADER => {}
        other => {
            return Err(Error::Cache(format!(
                "missing or unsupported header {:?}",
                other.unwrap_or("")
            )))
        }
    }
    let mut map: BTreeMap<BracketIndex, QSeries> = BTreeMap::new();
    for line in lines.filter(|l| !l.trim().is_empty()) {
        let (idx, s) = parse_record(line)?;
        if map.get(&idx).is_some_and(|old| old.order() >= s.order()) {
            continue;
        }
        map.insert(idx, s);
    }
    Ok(map)
}
