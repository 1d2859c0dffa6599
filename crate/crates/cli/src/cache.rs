//! On-disk cache of the enumerated group and its class partition.

use std::fs;
use std::path::Path;

use anyhow::Context as _;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use weyl_tori::root_system::{GroupElement, RootSystem};
use weyl_tori::weyl_group::{ClassPartition, Group};

const FORMAT: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: u32,
    key: String,
    rank: usize,
    /// Hex-encoded canonical keys, in group index order.
    elements: Vec<String>,
    class_of: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    /// Built from scratch and written; carries the reason the old file was not used.
    Written(String),
}

impl std::fmt::Display for CacheStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheStatus::Disabled => write!(f, "cache disabled"),
            CacheStatus::Hit => write!(f, "cache hit"),
            CacheStatus::Written(why) => write!(f, "cache written ({why})"),
        }
    }
}

/// Content hash of the Cartan matrix, the cache format and the crate version.
fn cache_key(rs: &RootSystem) -> String {
    let mut h = Sha256::new();
    h.update(format!("weyl-tori/{FORMAT}/{}/", env!("CARGO_PKG_VERSION")));
    for x in rs.cartan().entries() {
        h.update(x.to_string());
        h.update(",");
    }
    hex::encode(h.finalize())
}

fn read(rs: &RootSystem, path: &Path) -> Result<(Group, ClassPartition), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("unreadable: {e}"))?;
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| format!("malformed: {e}"))?;
    if file.format != FORMAT || file.key != cache_key(rs) || file.rank != rs.rank() {
        return Err("stale".into());
    }
    if file.class_of.len() != file.elements.len() {
        return Err("partition length mismatch".into());
    }
    let elements = file
        .elements
        .iter()
        .map(|h| {
            let bytes = hex::decode(h).map_err(|e| e.to_string())?;
            GroupElement::from_canonical_key(rs.rank(), &bytes)
                .ok_or_else(|| "bad element key".to_string())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let group = Group::from_elements(rs, elements).map_err(|e| e.to_string())?;
    Ok((group, ClassPartition::from_class_of(file.class_of)))
}

fn write(
    rs: &RootSystem,
    path: &Path,
    group: &Group,
    partition: &ClassPartition,
) -> anyhow::Result<()> {
    let file = CacheFile {
        format: FORMAT,
        key: cache_key(rs),
        rank: rs.rank(),
        elements: group
            .elements()
            .iter()
            .map(|g| hex::encode(g.canonical_key().expect("checked at enumeration")))
            .collect(),
        class_of: partition.class_of_all().to_vec(),
    };
    fs::write(path, serde_json::to_string(&file)?)
        .with_context(|| format!("writing cache {}", path.display()))
}

pub fn load_or_build(
    rs: &RootSystem,
    path: Option<&Path>,
) -> anyhow::Result<(Group, ClassPartition, CacheStatus)> {
    let reason = match path {
        None => None,
        Some(p) if !p.exists() => Some("no cache file".to_string()),
        Some(p) => match read(rs, p) {
            Ok((g, part)) => return Ok((g, part, CacheStatus::Hit)),
            Err(why) => Some(why),
        },
    };
    let group = Group::enumerate(rs)?;
    let partition = ClassPartition::compute(&group);
    let status = match (path, reason) {
        (Some(p), Some(why)) => {
            write(rs, p, &group, &partition)?;
            CacheStatus::Written(why)
        }
        _ => CacheStatus::Disabled,
    };
    Ok((group, partition, status))
}
