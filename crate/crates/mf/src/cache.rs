//! Bernoulli cache file and the table shared between worker threads.
//!
//! File format: one record per line, `k<TAB>numerator<TAB>denominator`,
//! ascending `k` from 0, decimal digits. Loaded tables are validated by
//! [`BernoulliTable::from_values`].

use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use mf_core::bernoulli::BernoulliTable;
use mf_core::{Error as CoreError, Rational};
use num_bigint::BigInt;

/// Environment variable naming the cache file.
pub const CACHE_ENV: &str = "MF_CACHE";

#[derive(Debug)]
pub enum CacheError {
    Io(io::Error),
    Format { line: usize, reason: String },
    Invalid(CoreError),
}

impl std::fmt::Display for CacheError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CacheError::Io(e) => write!(f, "cache file: {e}"),
            CacheError::Format { line, reason } => write!(f, "cache file line {line}: {reason}"),
            CacheError::Invalid(e) => write!(f, "cache file: {e}"),
        }
    }
}

impl std::error::Error for CacheError {}

impl From<io::Error> for CacheError {
    fn from(e: io::Error) -> Self {
        CacheError::Io(e)
    }
}

/// The cache path: `--cache` if given, else `$MF_CACHE`, else none.
pub fn resolve_path(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
}

pub fn parse(text: &str) -> Result<BernoulliTable, CacheError> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let bad = |reason: &str| CacheError::Format { line: i + 1, reason: reason.to_string() };
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let [k, num, den] = cols[..] else {
            return Err(bad("expected three tab-separated columns"));
        };
        let k: usize = k.parse().map_err(|_| bad("index is not a number"))?;
        if k != values.len() {
            return Err(bad("indices must run 0, 1, 2, ... without gaps"));
        }
        let num: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
        let den: BigInt = den.parse().map_err(|_| bad("denominator is not an integer"))?;
        if den <= BigInt::from(0) {
            return Err(bad("denominator must be positive"));
        }
        let q = Rational::new(num.clone(), den.clone());
        if q.numer() != &num || q.denom() != &den {
            return Err(bad("fraction not in lowest terms"));
        }
        values.push(q);
    }
    BernoulliTable::from_values(values).map_err(CacheError::Invalid)
}

pub fn render(table: &BernoulliTable) -> String {
    let mut out = String::new();
    for (k, b) in table.values().iter().enumerate() {
        out.push_str(&format!("{k}\t{}\t{}\n", b.numer(), b.denom()));
    }
    out
}

/// Read the cache; a missing file is an empty result, not an error.
pub fn load(path: &Path) -> Result<Option<BernoulliTable>, CacheError> {
    match fs::read_to_string(path) {
        Ok(text) => parse(&text).map(Some),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Write the cache through a temporary file and rename, so readers never
/// see a partial file.
pub fn save(path: &Path, table: &BernoulliTable) -> Result<(), CacheError> {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(render(table).as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// A Bernoulli table behind a lock: concurrent readers, one writer at a
/// time extending it.
#[derive(Debug, Default)]
pub struct SharedBernoulli {
    inner: RwLock<BernoulliTable>,
}

impl SharedBernoulli {
    pub fn new(table: BernoulliTable) -> Self {
        SharedBernoulli { inner: RwLock::new(table) }
    }

    /// Make sure `B_0..=B_k` are present.
    pub fn ensure(&self, k: usize) {
        if self.inner.read().expect("lock poisoned").max_index() >= k {
            return;
        }
        // Another thread may have extended it meanwhile; extend_to is a
        // no-op then.
        self.inner.write().expect("lock poisoned").extend_to(k);
    }

    /// Run `f` with read access to a table holding at least `B_0..=B_k`.
    pub fn with<R>(&self, k: usize, f: impl FnOnce(&BernoulliTable) -> R) -> R {
        self.ensure(k);
        f(&self.inner.read().expect("lock poisoned"))
    }

    pub fn snapshot(&self) -> BernoulliTable {
        self.inner.read().expect("lock poisoned").clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;

    #[test]
    fn render_and_parse() {
        let t = BernoulliTable::up_to(30);
        let text = render(&t);
        assert!(text.starts_with("0\t1\t1\n1\t-1\t2\n2\t1\t6\n3\t0\t1\n"));
        assert!(text.contains("12\t-691\t2730\n"));
        assert_eq!(parse(&text).unwrap(), t);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(parse("0\t1\t1\n2\t1\t6\n"), Err(CacheError::Format { line: 2, .. })));
        assert!(matches!(parse("0\t1\n"), Err(CacheError::Format { .. })));
        assert!(matches!(parse("0\t2\t2\n"), Err(CacheError::Format { .. })));
        assert!(matches!(parse("0\t1\t1\n1\t-1\t2\n2\t1\t5\n"), Err(CacheError::Invalid(_))));
        assert!(matches!(parse("0\t1\t-1\n"), Err(CacheError::Format { .. })));
    }

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.tsv");
        assert!(load(&path).unwrap().is_none());
        let t = BernoulliTable::up_to(50);
        save(&path, &t).unwrap();
        assert_eq!(load(&path).unwrap().unwrap(), t);
    }

    #[test]
    fn path_resolution_prefers_flag() {
        let p = PathBuf::from("/x/y");
        assert_eq!(resolve_path(Some(&p)), Some(p));
    }

    #[test]
    fn concurrent_readers_agree() {
        let shared = SharedBernoulli::default();
        let got: Vec<String> = (0..64usize)
            .into_par_iter()
            .map(|i| shared.with(2 * i, |t| t.get(2 * i).unwrap().to_string()))
            .collect();
        let reference = BernoulliTable::up_to(126);
        for (i, g) in got.iter().enumerate() {
            assert_eq!(g, &reference.get(2 * i).unwrap().to_string());
        }
    }
}
