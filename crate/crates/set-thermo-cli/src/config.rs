//! Key-value configuration files: one `key = value` pair per line, `#`
//! comments. Values fill in flags the command line left unset; explicit
//! flags always win.

use std::collections::HashMap;
use std::path::Path;

pub struct ConfigFile {
    entries: HashMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut entries = HashMap::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, value)) = line.split_once('=') {
                entries.insert(key.trim().to_string(), value.trim().to_string());
            }
        }
        Ok(ConfigFile { entries })
    }

    pub fn empty() -> Self {
        ConfigFile {
            entries: HashMap::new(),
        }
    }

    /// Parses the config value for `key` into the target type; `None` when
    /// absent. A malformed value is a usage error, reported as such.
    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|_| format!("config key `{key}` has invalid value `{raw}`")),
        }
    }
}

/// Flag if set, otherwise config value, otherwise the default.
pub fn resolve<T: std::str::FromStr + Copy>(
    flag: Option<T>,
    cfg: &ConfigFile,
    key: &str,
    default: T,
) -> Result<T, String> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(cfg.get(key)?.unwrap_or(default)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let dir = std::env::temp_dir().join("set-thermo-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.conf");
        std::fs::write(&path, "# run setup\ndim = 3\nseed= 42 # fixed\n\nsamples =100\n").unwrap();
        let cfg = ConfigFile::load(&path).unwrap();
        assert_eq!(cfg.get::<usize>("dim").unwrap(), Some(3));
        assert_eq!(cfg.get::<u64>("seed").unwrap(), Some(42));
        assert_eq!(cfg.get::<usize>("samples").unwrap(), Some(100));
        assert_eq!(cfg.get::<usize>("missing").unwrap(), None);
        assert_eq!(resolve(Some(5usize), &cfg, "dim", 2).unwrap(), 5);
        assert_eq!(resolve(None, &cfg, "dim", 2).unwrap(), 3);
        assert_eq!(resolve::<usize>(None, &cfg, "missing", 2).unwrap(), 2);
    }
}
