//! Resource caps shared by the expansion and enumeration routines.
//!
//! Caps are read once from the environment (`SIGMALAW_MAX_DEGREE`,
//! `SIGMALAW_MAX_SLOTS`, `SIGMALAW_MAX_POWER_WEIGHT`, `SIGMALAW_MAX_WORDS`,
//! `SIGMALAW_MAX_GENERIC`) and may be replaced at runtime with [`Limits::install`].

use std::sync::RwLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `m` accepted by the Amitsur expansion.
    pub max_degree: usize,
    /// Largest number of slots in one expansion.
    pub max_slots: usize,
    /// Largest weight `i * j` for which `P_{i,j}` is computed.
    pub max_power_weight: usize,
    /// Largest number of Lyndon words produced by one enumeration.
    pub max_words: usize,
    /// Largest number of generic indeterminates (`count * n * n`).
    pub max_generic: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 8,
            max_slots: 6,
            max_power_weight: 16,
            max_words: 2_000_000,
            max_generic: 256,
        }
    }
}

static ACTIVE: RwLock<Option<Limits>> = RwLock::new(None);

fn env_cap(name: &str, default: usize) -> usize {
    std::env::var(name)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}

impl Limits {
    pub fn from_env() -> Self {
        let d = Limits::default();
        Limits {
            max_degree: env_cap("SIGMALAW_MAX_DEGREE", d.max_degree),
            max_slots: env_cap("SIGMALAW_MAX_SLOTS", d.max_slots),
            max_power_weight: env_cap("SIGMALAW_MAX_POWER_WEIGHT", d.max_power_weight),
            max_words: env_cap("SIGMALAW_MAX_WORDS", d.max_words),
            max_generic: env_cap("SIGMALAW_MAX_GENERIC", d.max_generic),
        }
    }

    /// The limits currently in force.
    pub fn current() -> Self {
        if let Some(l) = *ACTIVE.read().unwrap() {
            return l;
        }
        let mut guard = ACTIVE.write().unwrap();
        *guard.get_or_insert_with(Limits::from_env)
    }

    pub fn install(self) {
        *ACTIVE.write().unwrap() = Some(self);
    }
}

pub(crate) fn check(what: &'static str, value: usize, cap: usize) -> Result<()> {
    if value > cap {
        Err(Error::ResourceCap { what, value, cap })
    } else {
        Ok(())
    }
}
