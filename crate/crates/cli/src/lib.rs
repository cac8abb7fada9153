// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Library side of the batch CLI: configuration loading, deterministic
//! CSV rendering, run manifests, scans, and figure reproduction. The
//! binary in `main.rs` is a thin argument-parsing shell over these.

pub mod config;
pub mod csvfmt;
pub mod error;
pub mod manifest;
pub mod reproduce;
pub mod run;
pub mod scan;
