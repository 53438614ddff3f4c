//! Witness files on disk, one per board: `<topology>_<a>x<b>.json`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::search::SearchBudget;
use crate::tiling::{decode_for, encode, verify, Tiling, TilingError};
use crate::topology::BoardSpec;
use crate::witness::{witness, Witness, WitnessError, WitnessSource};

/// Environment variable naming the default witness directory.
pub const CACHE_ENV: &str = "FAULT_ATLAS_CACHE";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Malformed { path: PathBuf, source: TilingError },
    #[error("{}: stored tiling is not fault-free", path.display())]
    NotFaultFree { path: PathBuf },
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

#[derive(Debug)]
pub struct WitnessStore {
    dir: PathBuf,
    writer: Mutex<()>,
}

impl WitnessStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CacheError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| CacheError::Io { path: dir.clone(), source })?;
        Ok(WitnessStore { dir, writer: Mutex::new(()) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, board: &BoardSpec) -> PathBuf {
        self.dir.join(file_name(board))
    }

    /// The stored witness, re-verified. `None` when absent.
    pub fn load(&self, board: &BoardSpec) -> Result<Option<Tiling>, CacheError> {
        let path = self.path_for(board);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let tiling = decode_for(board, &text).map_err(|source| CacheError::Malformed { path: path.clone(), source })?;
        let report = verify(board, &tiling).map_err(|source| CacheError::Malformed { path: path.clone(), source })?;
        if !report.fault_free {
            return Err(CacheError::NotFaultFree { path });
        }
        Ok(Some(tiling))
    }

    /// Writes through a temporary file and a rename, one writer at a time.
    pub fn store(&self, tiling: &Tiling) -> Result<PathBuf, CacheError> {
        let path = self.path_for(&tiling.board);
        let tmp = self.dir.join(format!(".{}.{}.tmp", file_name(&tiling.board), std::process::id()));
        let _guard = self.writer.lock().unwrap_or_else(|p| p.into_inner());
        fs::write(&tmp, encode(tiling)).map_err(|source| CacheError::Io { path: tmp.clone(), source })?;
        fs::rename(&tmp, &path).map_err(|source| CacheError::Io { path: path.clone(), source })?;
        Ok(path)
    }

    /// Cached witness if present, otherwise builds and stores one.
    pub fn get_or_build(&self, board: &BoardSpec, budget: SearchBudget) -> Result<Witness, CacheError> {
        if let Some(tiling) = self.load(board)? {
            return Ok(Witness { tiling, source: WitnessSource::Cache });
        }
        let built = witness(board, budget)?;
        self.store(&built.tiling)?;
        Ok(built)
    }
}

pub fn file_name(board: &BoardSpec) -> String {
    format!("{}_{}x{}.json", board.topology.name(), board.a, board.b)
}
