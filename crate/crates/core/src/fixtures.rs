//! Published Betti tables and Hilbert series, stored as JSON data files.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hilbert::{BettiCell, BettiEntry, GradedBettiTable, HilbertSeries};

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed fixture {path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("no fixture for n = {0}")]
    Missing(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TableModule {
    /// Resolution of S/I.
    Quotient,
    /// Resolution of I itself (generators in column 0).
    Ideal,
    /// Resolution of the canonical module (J:I)/J.
    Canonical,
}

/// A printed Betti table: cells `{i, j, count}` with β_{i,j} = count, where
/// count is a number or a named unknown. Only the rows (j − i) listed in
/// `printed_rows` are known; other rows were not computed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BettiFixture {
    pub name: String,
    pub n: u32,
    pub module: TableModule,
    /// False when the printed table carries a cancelling pair.
    pub minimal: bool,
    pub printed_rows: Vec<u32>,
    pub printed_totals: Vec<BettiEntry>,
    pub cells: Vec<BettiCell>,
}

impl BettiFixture {
    pub fn table(&self) -> GradedBettiTable {
        GradedBettiTable::from_cells(&self.cells)
    }

    /// The table with the printed cancelling pair β_{1,2}, β_{2,2} removed
    /// when the fixture is not minimal.
    pub fn minimal_table(&self) -> GradedBettiTable {
        let mut t = self.table();
        if !self.minimal {
            for (i, j) in [(1, 2), (2, 2)] {
                if let BettiEntry::Count(c) = t.get(i, j) {
                    t.set_count(i, j, c.saturating_sub(1));
                }
            }
        }
        t
    }

    pub fn has_row(&self, r: u32) -> bool {
        self.printed_rows.contains(&r)
    }

    /// Entry at (column, row), or `None` if the row was not printed.
    pub fn at(&self, col: u32, row: u32) -> Option<BettiEntry> {
        self.has_row(row).then(|| self.table().at(col, row))
    }

    /// Columns whose printed total differs from the sum of its cells.
    pub fn total_mismatches(&self) -> Vec<(u32, BettiEntry, (u64, bool))> {
        let t = self.table();
        self.printed_totals
            .iter()
            .enumerate()
            .filter_map(|(i, printed)| {
                let (sum, lower) = t.total(i as u32);
                let ok = match printed {
                    BettiEntry::Count(c) => *c == sum && !lower,
                    BettiEntry::Unknown(s) => {
                        s.trim_end_matches('+').parse::<u64>() == Ok(sum) && lower
                    }
                };
                (!ok).then(|| (i as u32, printed.clone(), (sum, lower)))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HilbertFixture {
    pub name: String,
    pub n: u32,
    pub nvars: usize,
    pub numerator: Vec<i64>,
}

impl HilbertFixture {
    pub fn series(&self) -> HilbertSeries {
        HilbertSeries::new(self.numerator.clone(), self.nvars)
    }
}

fn read<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FixtureError> {
    let text = fs::read_to_string(path).map_err(|source| FixtureError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FixtureError::Json {
        path: path.to_owned(),
        source,
    })
}

/// The fixture directory shipped with the repository.
pub fn default_dir() -> PathBuf {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    crate_dir
        .ancestors()
        .nth(2)
        .unwrap_or(crate_dir)
        .join("fixtures")
}

/// Typed access to the files of a fixture directory.
#[derive(Debug, Clone)]
pub struct FixtureSet {
    dir: PathBuf,
}

impl FixtureSet {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn betti(&self, file: &str) -> Result<BettiFixture, FixtureError> {
        read(&self.dir.join(file))
    }

    pub fn hilbert(&self, file: &str) -> Result<HilbertFixture, FixtureError> {
        read(&self.dir.join(file))
    }

    pub fn first_syzygies(&self, n: u32) -> Result<BettiFixture, FixtureError> {
        match n {
            2 | 3 => self.betti(&format!("n{n}_first_syzygies.json")),
            _ => Err(FixtureError::Missing(n)),
        }
    }

    /// The (possibly partial) resolution of S/I as printed for n = 3..=6.
    pub fn resolution(&self, n: u32) -> Result<BettiFixture, FixtureError> {
        match n {
            3 => self.betti("n3_resolution.json"),
            4..=6 => self.betti(&format!("n{n}_partial_resolution.json")),
            _ => Err(FixtureError::Missing(n)),
        }
    }

    pub fn n4_hilbert(&self) -> Result<HilbertFixture, FixtureError> {
        self.hilbert("n4_hilbert_numerator.json")
    }

    pub fn n4_canonical(&self) -> Result<BettiFixture, FixtureError> {
        self.betti("n4_canonical_module.json")
    }

    pub fn n4_conjectured(&self) -> Result<BettiFixture, FixtureError> {
        self.betti("n4_conjectured_resolution.json")
    }
}

impl Default for FixtureSet {
    fn default() -> Self {
        Self::new(default_dir())
    }
}
