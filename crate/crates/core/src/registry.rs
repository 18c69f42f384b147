//! Name-keyed registries for the interchangeable model ingredients.
//!
//! Frequency profiles and interparticle interactions are both open families:
//! each variant implements a common trait and is constructed by name from a
//! flat key/value parameter set, so configuration files and the CLI never
//! match on concrete types.

use std::cell::RefCell;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{argument, Error, Result};

/// Flat `key = value` parameters handed to a strategy factory.
///
/// Every successful lookup marks the key as consumed; [`Params::finish`]
/// reports the keys that no factory asked for, which is how strict
/// configuration parsing detects typos.
#[derive(Debug, Default, Clone)]
pub struct Params {
    values: BTreeMap<String, String>,
    used: RefCell<BTreeSet<String>>,
}

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: impl Into<String>, value: impl Into<String>) -> &mut Self {
        self.values.insert(key.into(), value.into());
        self
    }

    pub fn contains(&self, key: &str) -> bool {
        self.values.contains_key(key)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        let v = self.values.get(key)?;
        self.used.borrow_mut().insert(key.to_string());
        Some(v.as_str())
    }

    pub fn f64(&self, key: &str) -> Result<f64> {
        let raw = self
            .raw(key)
            .ok_or_else(|| argument(format!("missing required key `{key}`")))?;
        parse_f64(key, raw)
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        match self.raw(key) {
            Some(raw) => parse_f64(key, raw),
            None => Ok(default),
        }
    }

    pub fn usize(&self, key: &str) -> Result<usize> {
        let raw = self
            .raw(key)
            .ok_or_else(|| argument(format!("missing required key `{key}`")))?;
        raw.trim().parse().map_err(|_| {
            argument(format!(
                "`{key}`: expected a nonnegative integer, got `{raw}`"
            ))
        })
    }

    /// Comma separated list of reals.
    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>> {
        let raw = self
            .raw(key)
            .ok_or_else(|| argument(format!("missing required key `{key}`")))?;
        raw.split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_f64(key, s))
            .collect()
    }

    /// Keys present but never read.
    pub fn unused(&self) -> Vec<String> {
        let used = self.used.borrow();
        self.values
            .keys()
            .filter(|k| !used.contains(*k))
            .cloned()
            .collect()
    }

    pub fn finish(&self) -> Result<()> {
        let unused = self.unused();
        if unused.is_empty() {
            Ok(())
        } else {
            Err(argument(format!("unknown keys: {}", unused.join(", "))))
        }
    }
}

fn parse_f64(key: &str, raw: &str) -> Result<f64> {
    let v: f64 = raw
        .trim()
        .parse()
        .map_err(|_| argument(format!("`{key}`: expected a number, got `{}`", raw.trim())))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(argument(format!("`{key}` must be finite")))
    }
}

pub type Factory<T> = fn(&Params) -> Result<Arc<T>>;

/// Maps a strategy name to the factory building it.
pub struct Registry<T: ?Sized> {
    kind: &'static str,
    factories: BTreeMap<&'static str, Factory<T>>,
}

impl<T: ?Sized> Registry<T> {
    pub fn empty(kind: &'static str) -> Self {
        Self {
            kind,
            factories: BTreeMap::new(),
        }
    }

    /// Adds or replaces a factory.
    pub fn register(&mut self, name: &'static str, factory: Factory<T>) -> &mut Self {
        self.factories.insert(name, factory);
        self
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.factories.keys().copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.factories.contains_key(name)
    }

    pub fn build(&self, name: &str, params: &Params) -> Result<Arc<T>> {
        let factory = self.factories.get(name).ok_or_else(|| {
            Error::Argument(format!(
                "unknown {} `{}` (known: {})",
                self.kind,
                name,
                self.names().collect::<Vec<_>>().join(", ")
            ))
        })?;
        factory(params)
    }
}

impl<T: ?Sized> fmt::Debug for Registry<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Registry")
            .field("kind", &self.kind)
            .field("names", &self.factories.keys().collect::<Vec<_>>())
            .finish()
    }
}
