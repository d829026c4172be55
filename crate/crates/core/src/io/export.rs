//! Structure-constant corpora on disk: a manifest plus one JSON and one CSV table per side.

use std::fs;
use std::path::Path;

use serde::Serialize;

use super::config::JobConfig;
use crate::error::{Error, Result};
use crate::generic::{ComplexSide, GenericStructureTable, RepSide, TableRow};
use crate::quiver::DynkinQuiver;

#[derive(Serialize)]
struct Manifest<'a> {
    quiver: String,
    window: &'a super::config::Window,
    primes: &'a [u64],
    version: &'static str,
    files: &'a [String],
}

fn json_bytes<T: Serialize>(x: &T) -> Result<Vec<u8>> {
    let mut s = serde_json::to_string_pretty(x).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn csv_bytes(rows: &[TableRow], primes: &[u64]) -> Result<Vec<u8>> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = ["side", "l", "m", "n", "poly_coeffs"].iter().map(|s| s.to_string()).collect();
    header.extend(primes.iter().map(|p| format!("q={p}")));
    w.write_record(&header).map_err(io)?;
    for r in rows {
        let mut rec = vec![r.side.to_string(), r.l.clone(), r.m.clone(), r.n.clone(), r.poly.join(" ")];
        rec.extend(r.counts.iter().cloned());
        w.write_record(&rec).map_err(io)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

/// Writes the tables selected by the configured window into `out` and returns the file names.
/// A side is exported only when its window is given and nonzero; an empty window leaves just
/// the manifest.
pub fn export_tables(cfg: &JobConfig, quiver: &std::sync::Arc<DynkinQuiver>, out: &Path) -> Result<Vec<String>> {
    let n = quiver.n();
    let mut outputs: Vec<(String, Vec<u8>)> = Vec::new();
    if cfg.window.dim.as_ref().is_some_and(|d| d.iter().any(|&x| x > 0)) {
        let t = GenericStructureTable::<RepSide>::build(quiver.clone(), cfg.dim_window(n)?, &cfg.primes, cfg.cap)?;
        let rows = t.rows();
        outputs.push(("a_table.json".into(), json_bytes(&rows)?));
        outputs.push(("a_table.csv".into(), csv_bytes(&rows, &cfg.primes)?));
    }
    let ue_nonzero = |v: &Option<Vec<usize>>| v.as_ref().is_some_and(|d| d.iter().any(|&x| x > 0));
    if ue_nonzero(&cfg.window.ue1) || ue_nonzero(&cfg.window.ue0) {
        let t = GenericStructureTable::<ComplexSide>::build(quiver.clone(), cfg.ue_window(n)?, &cfg.primes, cfg.cap)?;
        let rows = t.rows();
        outputs.push(("c2_table.json".into(), json_bytes(&rows)?));
        outputs.push(("c2_table.csv".into(), csv_bytes(&rows, &cfg.primes)?));
    }
    let mut files: Vec<String> = outputs.iter().map(|(f, _)| f.clone()).collect();
    let manifest = Manifest {
        quiver: quiver.to_spec(),
        window: &cfg.window,
        primes: &cfg.primes,
        version: env!("CARGO_PKG_VERSION"),
        files: &files,
    };
    let manifest = json_bytes(&manifest)?;
    fs::create_dir_all(out)?;
    for (name, bytes) in &outputs {
        fs::write(out.join(name), bytes)?;
    }
    fs::write(out.join("manifest.json"), manifest)?;
    files.insert(0, "manifest.json".into());
    Ok(files)
}
