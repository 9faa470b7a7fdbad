// SPDX-License-Identifier: Apache-2.0

//! JSON-lines persistence and CSV count export.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::checks::CountProfile;
use super::{CensusRecord, GroupFilter};
use crate::error::{Error, Result};

pub const FORMAT: &str = "s4census-fields";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub format: String,
    pub version: u32,
    pub degree: usize,
    pub max_disc: u128,
    pub group: GroupFilter,
    pub records: usize,
}

impl Header {
    pub fn new(degree: usize, max_disc: u128, group: GroupFilter, records: usize) -> Self {
        Header { format: FORMAT.into(), version: VERSION, degree, max_disc, group, records }
    }
}

pub fn write_jsonl<W: Write>(mut w: W, header: &Header, records: &[CensusRecord]) -> Result<()> {
    serde_json::to_writer(&mut w, header)?;
    w.write_all(b"\n")?;
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_jsonl<R: BufRead>(r: R) -> Result<(Header, Vec<CensusRecord>)> {
    let mut lines = r.lines();
    let first = lines.next().ok_or_else(|| Error::Parse("empty census file".into()))??;
    let header: Header = serde_json::from_str(&first)?;
    if header.format != FORMAT || header.version != VERSION {
        return Err(Error::Parse(format!("unsupported census format {} v{}", header.format, header.version)));
    }
    let mut records = Vec::new();
    for line in lines {
        let line = line?;
        if !line.trim().is_empty() {
            records.push(serde_json::from_str(&line)?);
        }
    }
    if records.len() != header.records {
        return Err(Error::Parse(format!("header announces {} records, found {}", header.records, records.len())));
    }
    Ok((header, records))
}

/// `d,count` rows followed by `conductor_S,count` rows.
pub fn counts_csv(profile: &CountProfile) -> String {
    let mut s = String::from("kind,value,count\n");
    for (d, n) in &profile.per_disc {
        s.push_str(&format!("disc,{d},{n}\n"));
    }
    for (c, n) in &profile.per_conductor {
        s.push_str(&format!("conductor_S,{c},{n}\n"));
    }
    s
}
