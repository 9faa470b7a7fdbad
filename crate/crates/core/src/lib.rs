// SPDX-License-Identifier: Apache-2.0

#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod census;
pub mod classgrp;
pub mod error;
pub mod linalg;
pub mod orders;
pub mod par;
pub mod poly;
pub mod s4param;

pub use error::{Error, Result};
