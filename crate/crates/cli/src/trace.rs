//! Trace CSV and its JSON metadata sidecar.

use std::fs;
use std::path::{Path, PathBuf};

use rewire_core::rewiring::{RewireTrace, TraceRecord};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::format::sig9;

pub const TRACE_HEADER: [&str; 6] = ["iter", "m", "connected", "norm_gap", "triangles", "aborted"];

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

pub fn trace_csv(trace: &RewireTrace) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(TRACE_HEADER).expect("in-memory write");
    for r in &trace.records {
        w.write_record([
            r.iteration.to_string(),
            r.edge_count.to_string(),
            flag(r.connected).to_string(),
            sig9(r.normalized_gap),
            r.triangles.to_string(),
            flag(r.aborted).to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
}

/// Reads a trace CSV back into records.
pub fn parse_trace_csv(text: &str) -> std::result::Result<Vec<TraceRecord>, String> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| e.to_string())?;
    if headers.iter().ne(TRACE_HEADER) {
        return Err(format!("unexpected header {headers:?}"));
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| e.to_string())?;
        let field = |k: usize| row.get(k).ok_or_else(|| format!("row {row:?} is short"));
        let int = |k: usize| {
            field(k)?
                .parse::<usize>()
                .map_err(|e| format!("column {}: {e}", TRACE_HEADER[k]))
        };
        let boolean = |k: usize| match field(k)? {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(format!("column {}: '{other}' is not 0/1", TRACE_HEADER[k])),
        };
        records.push(TraceRecord {
            iteration: int(0)?,
            edge_count: int(1)?,
            connected: boolean(2)?,
            normalized_gap: field(3)?
                .parse()
                .map_err(|e| format!("column norm_gap: {e}"))?,
            triangles: int(4)?,
            aborted: boolean(5)?,
        });
    }
    Ok(records)
}

/// Sidecar describing how a trace was produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceMetadata {
    pub algorithm: String,
    pub seed: u64,
    /// Inverse temperature; only set for the greedy flip.
    pub tau: Option<f64>,
    pub iterations: usize,
    pub metric_every: usize,
    pub stop_on_disconnect: bool,
    pub normalization: String,
    /// From the input file's `# generator:` comment.
    pub generator: Option<String>,
    pub input: Option<String>,
    pub nodes: usize,
    pub edges: usize,
    pub records: usize,
    pub final_iteration: usize,
    pub final_connected: bool,
    pub final_norm_gap: f64,
    pub final_triangles: usize,
}

impl TraceMetadata {
    pub fn new(
        trace: &RewireTrace,
        stop_on_disconnect: bool,
        generator: Option<&str>,
        input: Option<&Path>,
        nodes: usize,
    ) -> Self {
        let last = trace.records.last().expect("trace has an initial record");
        Self {
            algorithm: trace.algorithm.id().to_string(),
            seed: trace.seed,
            tau: trace.tau,
            iterations: trace.iterations,
            metric_every: trace.metric_every,
            stop_on_disconnect,
            normalization: trace.normalization.to_string(),
            generator: generator.map(str::to_string),
            input: input.map(|p| p.display().to_string()),
            nodes,
            edges: last.edge_count,
            records: trace.records.len(),
            final_iteration: last.iteration,
            final_connected: last.connected,
            final_norm_gap: last.normalized_gap,
            final_triangles: last.triangles,
        }
    }
}

/// `t.csv` becomes `t.meta.json`.
pub fn default_meta_path(trace_path: &Path) -> PathBuf {
    trace_path.with_extension("meta.json")
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn write_metadata(path: &Path, meta: &TraceMetadata) -> Result<()> {
    let mut text = serde_json::to_string_pretty(meta).expect("metadata serializes");
    text.push('\n');
    write_text(path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rewire_core::rewiring::{run, Algorithm, RunConfig};
    use rewire_core::{generate, GeneratorSpec};

    #[test]
    fn csv_round_trip() {
        let g = generate(GeneratorSpec::Dumbbell { clique_size: 5 }).unwrap();
        let (_, trace) = run(
            g,
            &RunConfig::new(Algorithm::Grlef, 30, 1).with_metric_every(10),
        )
        .unwrap();
        let text = trace_csv(&trace);
        assert!(text.starts_with("iter,m,connected,norm_gap,triangles,aborted\n0,21,1,"));
        let back = parse_trace_csv(&text).unwrap();
        assert_eq!(back.len(), 4);
        for (a, b) in back.iter().zip(&trace.records) {
            assert_eq!(
                (a.iteration, a.triangles, a.connected),
                (b.iteration, b.triangles, b.connected)
            );
            assert!(
                (a.normalized_gap - b.normalized_gap).abs()
                    <= 1e-8 * b.normalized_gap.abs().max(1e-9)
            );
        }
    }

    #[test]
    fn meta_path() {
        assert_eq!(
            default_meta_path(Path::new("out/t.csv")),
            Path::new("out/t.meta.json")
        );
        assert_eq!(
            default_meta_path(Path::new("trace")),
            Path::new("trace.meta.json")
        );
    }
}
