// SPDX-License-Identifier: Apache-2.0

//! Class-group cache keyed by fundamental discriminant or canonical cubic.

use std::collections::HashMap;
use std::fs;
use std::path::PathBuf;
use std::sync::Mutex;

use crate::classgrp::{cubic_class_group, quadratic_class_group, ClassGroupData};
use crate::error::Result;
use crate::orders::maximal_order;
use crate::poly::IntPolynomial;

/// In-memory cache, optionally backed by one JSON file per entry.
#[derive(Debug, Default)]
pub struct ClassGroupCache {
    dir: Option<PathBuf>,
    mem: Mutex<HashMap<String, ClassGroupData>>,
}

impl ClassGroupCache {
    pub fn in_memory() -> Self {
        Self::default()
    }

    pub fn with_dir(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(ClassGroupCache { dir: Some(dir), mem: Mutex::default() })
    }

    fn get_or_compute(&self, key: String, compute: impl FnOnce() -> Result<ClassGroupData>) -> Result<ClassGroupData> {
        if let Some(v) = self.mem.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let path = self.dir.as_ref().map(|d| d.join(format!("{key}.json")));
        if let Some(p) = &path {
            if let Ok(s) = fs::read_to_string(p) {
                if let Ok(v) = serde_json::from_str::<ClassGroupData>(&s) {
                    self.mem.lock().expect("cache lock").insert(key, v.clone());
                    return Ok(v);
                }
            }
        }
        let v = compute()?;
        if let Some(p) = &path {
            // write then rename so concurrent readers never see a partial file
            let tmp = p.with_extension(format!("tmp{}", std::process::id()));
            fs::write(&tmp, serde_json::to_string(&v)?)?;
            fs::rename(&tmp, p)?;
        }
        self.mem.lock().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    pub fn quadratic(&self, d: i128) -> Result<ClassGroupData> {
        self.get_or_compute(format!("q{d}"), || quadratic_class_group(d))
    }

    /// Class group of the cubic field of a canonical polynomial.
    pub fn cubic(&self, canonical: &IntPolynomial) -> Result<ClassGroupData> {
        let key = format!("c{}", canonical.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>().join("_"));
        self.get_or_compute(key, || cubic_class_group(&maximal_order(canonical)?))
    }

    pub fn len(&self) -> usize {
        self.mem.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
