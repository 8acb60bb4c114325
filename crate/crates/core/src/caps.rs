use crate::error::{Error, Result};

/// Enumeration limits shared by the bounded decision procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum `|X|^k` a level enumeration may touch.
    pub level_entries: u64,
    /// Maximum degree for which the level-1 permutation group is enumerated.
    pub quotient_degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            level_entries: 1_000_000,
            quotient_degree: 9,
        }
    }
}

impl Caps {
    /// Parses overrides of the form `level=N,degree=N`; a bare integer sets
    /// the level cap. Caps only ever grow.
    pub fn raised_by(self, overrides: &str) -> Result<Caps> {
        let mut caps = self;
        for part in overrides.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = match part.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => ("level", part),
            };
            let bad = || Error::Parse(format!("bad caps entry `{part}`"));
            match key {
                "level" => {
                    let v: u64 = value.parse().map_err(|_| bad())?;
                    caps.level_entries = caps.level_entries.max(v);
                }
                "degree" => {
                    let v: usize = value.parse().map_err(|_| bad())?;
                    caps.quotient_degree = caps.quotient_degree.max(v);
                }
                _ => return Err(bad()),
            }
        }
        Ok(caps)
    }

    /// Fails with `LevelTooLarge` if `letters^k` exceeds the level cap.
    pub fn check_level(&self, letters: usize, k: usize) -> Result<()> {
        let mut entries: u128 = 1;
        for _ in 0..k {
            entries = entries.saturating_mul(letters as u128);
            if entries > self.level_entries as u128 {
                return Err(Error::LevelTooLarge {
                    entries,
                    cap: self.level_entries,
                });
            }
        }
        Ok(())
    }
}
