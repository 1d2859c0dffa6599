use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use anyhow::{bail, Context as _};
use weyl_tori::e6::{expectations, E6Expectations};
use weyl_tori::exact_linalg::IntMatrix;
use weyl_tori::root_system::RootSystem;
use weyl_tori::sectors_ktheory::{extended_quotient_report, SectorReport};
use weyl_tori::torus_fixed::LatticeSide;
use weyl_tori::weyl_group::{ClassTable, Group, WeylError};

use crate::cache::{load_or_build, CacheStatus};

pub struct Settings {
    pub sides: Vec<LatticeSide>,
    pub sample: usize,
    pub seed: u64,
    pub cache: Option<PathBuf>,
    pub cartan: Option<PathBuf>,
    pub expectations: Option<PathBuf>,
}

/// Everything the suites share: the root system, its group and class table.
pub struct Context {
    pub rs: RootSystem,
    pub group: Group,
    pub table: ClassTable,
    pub expected: Option<E6Expectations>,
    pub sides: Vec<LatticeSide>,
    pub sample: usize,
    pub seed: u64,
    pub cache_status: CacheStatus,
    root_sectors: OnceLock<Vec<SectorReport>>,
    weight_sectors: OnceLock<Vec<SectorReport>>,
}

pub enum LoadError {
    /// The computed classes do not match the reference rows.
    Mismatch(String),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for LoadError {
    fn from(e: anyhow::Error) -> Self {
        LoadError::Internal(e)
    }
}

fn read_cartan(path: &Path) -> anyhow::Result<IntMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rows: Vec<Vec<i64>> = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a JSON integer matrix", path.display()))?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        bail!(
            "{}: Cartan matrix must be square and nonempty",
            path.display()
        );
    }
    Ok(IntMatrix::from_rows(&rows))
}

impl Context {
    pub fn load(s: Settings) -> Result<Self, LoadError> {
        let rs = match &s.cartan {
            Some(p) => RootSystem::from_cartan(&read_cartan(p)?).map_err(anyhow::Error::from)?,
            None => RootSystem::e6(),
        };
        let expected = match (&s.expectations, rs.is_e6()) {
            (Some(p), true) => {
                let text =
                    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                Some(
                    serde_json::from_str(&text)
                        .with_context(|| format!("parsing {}", p.display()))?,
                )
            }
            (Some(_), false) => {
                return Err(anyhow::anyhow!("reference data applies to E6 only").into());
            }
            (None, true) => Some(expectations()),
            (None, false) => None,
        };
        let (group, partition, cache_status) = load_or_build(&rs, s.cache.as_deref())?;
        let table = match &expected {
            Some(e) => ClassTable::e6(&rs, &group, partition, e).map_err(|err| match err {
                WeylError::ClassMatchFailure { .. } => LoadError::Mismatch(err.to_string()),
                other => LoadError::Internal(other.into()),
            })?,
            None => ClassTable::generic(&group, partition),
        };
        Ok(Self {
            rs,
            group,
            table,
            expected,
            sides: s.sides,
            sample: s.sample,
            seed: s.seed,
            cache_status,
            root_sectors: OnceLock::new(),
            weight_sectors: OnceLock::new(),
        })
    }

    pub fn both_sides(&self) -> bool {
        self.sides.len() == 2
    }

    pub fn sectors(&self, side: LatticeSide) -> anyhow::Result<&[SectorReport]> {
        let cell = match side {
            LatticeSide::Root => &self.root_sectors,
            LatticeSide::Weight => &self.weight_sectors,
        };
        if let Some(v) = cell.get() {
            return Ok(v);
        }
        let v = extended_quotient_report(&self.rs, &self.group, &self.table, side)?;
        Ok(cell.get_or_init(|| v))
    }
}
