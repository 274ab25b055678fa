//! On-disk partition tables.
//!
//! One JSON document per dimension:
//!
//! ```json
//! {"schema_version": 1, "m": 4, "source": "brute_force", "counts": ["1", "1", "4", "10"]}
//! ```
//!
//! Counts are decimal strings so that arbitrarily large values survive a
//! round trip unchanged. Writes go to a temporary file in the target
//! directory which is then renamed over the destination.

use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{PartitionError, PartitionTable, TableSource};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheDoc {
    schema_version: u32,
    m: u32,
    source: TableSource,
    counts: Vec<String>,
}

/// Conventional file name for dimension `m` inside a cache directory.
pub fn cache_path(dir: &Path, m: u32) -> PathBuf {
    dir.join(format!("pm-{m}.json"))
}

pub fn cache_store(table: &PartitionTable, path: &Path) -> Result<(), PartitionError> {
    let doc = CacheDoc {
        schema_version: SCHEMA_VERSION,
        m: table.m,
        source: table.source,
        counts: table.counts.iter().map(|c| c.to_string()).collect(),
    };
    let io_err = |source| PartitionError::Io {
        path: path.to_path_buf(),
        source,
    };
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    let mut body = serde_json::to_vec_pretty(&doc).expect("cache document serializes");
    body.push(b'\n');
    tmp.write_all(&body).map_err(io_err)?;
    tmp.as_file().sync_all().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

pub fn cache_load(m: u32, path: &Path) -> Result<PartitionTable, PartitionError> {
    let bytes = std::fs::read(path).map_err(|source| PartitionError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let integrity = |reason: String| PartitionError::Integrity {
        path: path.to_path_buf(),
        reason,
    };
    let doc: CacheDoc = serde_json::from_slice(&bytes).map_err(|e| integrity(e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(integrity(format!(
            "unsupported schema_version {}",
            doc.schema_version
        )));
    }
    if doc.m != m {
        return Err(PartitionError::DimensionMismatch {
            requested: m,
            found: doc.m,
        });
    }
    let counts = doc
        .counts
        .iter()
        .enumerate()
        .map(|(k, s)| {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(integrity(format!(
                    "counts[{k}] = {s:?} is not a decimal integer"
                )));
            }
            s.parse::<BigUint>()
                .map_err(|e| integrity(format!("counts[{k}]: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let table = PartitionTable {
        m: doc.m,
        counts,
        source: doc.source,
    };
    table.check_invariants().map_err(integrity)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(m: u32, counts: &[u64]) -> PartitionTable {
        PartitionTable {
            m,
            counts: counts.iter().map(|&c| BigUint::from(c)).collect(),
            source: TableSource::BruteForce,
        }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), 4);
        let t = table(4, &[1, 1, 4, 10, 26, 59]);
        cache_store(&t, &path).unwrap();
        assert_eq!(cache_load(4, &path).unwrap(), t);
    }

    #[test]
    fn huge_counts_survive_bit_exactly() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), 7);
        let mut t = table(7, &[1, 1, 7, 28, 105]);
        t.counts
            .push("123456789012345678901234567890123456789".parse().unwrap());
        cache_store(&t, &path).unwrap();
        assert_eq!(cache_load(7, &path).unwrap(), t);
    }

    #[test]
    fn bad_leading_count_is_an_integrity_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), 4);
        std::fs::write(
            &path,
            r#"{"schema_version":1,"m":4,"source":"brute_force","counts":["2","1","4"]}"#,
        )
        .unwrap();
        assert!(matches!(
            cache_load(4, &path),
            Err(PartitionError::Integrity { .. })
        ));
    }

    #[test]
    fn wrong_dimension_is_a_usage_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("table.json");
        cache_store(&table(5, &[1, 1, 5]), &path).unwrap();
        assert!(matches!(
            cache_load(4, &path),
            Err(PartitionError::DimensionMismatch {
                requested: 4,
                found: 5
            })
        ));
    }

    #[test]
    fn inconsistent_small_counts_are_an_integrity_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), 4);
        for counts in [
            r#"["1","1","4","11"]"#,
            r#"["1","1","3"]"#,
            r#"["1","1","4","10","26","25"]"#,
        ] {
            let body =
                format!(r#"{{"schema_version":1,"m":4,"source":"brute_force","counts":{counts}}}"#);
            std::fs::write(&path, body).unwrap();
            assert!(
                matches!(cache_load(4, &path), Err(PartitionError::Integrity { .. })),
                "{counts}"
            );
        }
    }

    #[test]
    fn garbage_is_an_integrity_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), 4);
        std::fs::write(&path, "not json").unwrap();
        assert!(matches!(
            cache_load(4, &path),
            Err(PartitionError::Integrity { .. })
        ));
        std::fs::write(
            &path,
            r#"{"schema_version":1,"m":4,"source":"brute_force","counts":["1","-1"]}"#,
        )
        .unwrap();
        assert!(matches!(
            cache_load(4, &path),
            Err(PartitionError::Integrity { .. })
        ));
        std::fs::write(
            &path,
            r#"{"schema_version":2,"m":4,"source":"brute_force","counts":["1"]}"#,
        )
        .unwrap();
        assert!(matches!(
            cache_load(4, &path),
            Err(PartitionError::Integrity { .. })
        ));
    }
}
