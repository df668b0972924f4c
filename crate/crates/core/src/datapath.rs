//! Data-file search path, taken from the `CRYOCOOL_DATA_PATH` environment variable
//! (platform path-list syntax, e.g. `dir1:dir2` on Unix).

use std::path::{Path, PathBuf};

pub const DATA_PATH_ENV: &str = "CRYOCOOL_DATA_PATH";

pub fn search_dirs() -> Vec<PathBuf> {
    std::env::var_os(DATA_PATH_ENV)
        .map(|v| {
            std::env::split_paths(&v)
                .filter(|p| !p.as_os_str().is_empty())
                .collect()
        })
        .unwrap_or_default()
}

/// First file called `name` in the search directories.
pub fn find(name: &str) -> Option<PathBuf> {
    search_dirs().into_iter().map(|d| d.join(name)).find(|p| p.is_file())
}

/// `path` itself if it exists, otherwise a relative path looked up on the search path.
pub fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    search_dirs()
        .into_iter()
        .map(|d| d.join(path))
        .find(|p| p.is_file())
        .unwrap_or_else(|| path.to_path_buf())
}
