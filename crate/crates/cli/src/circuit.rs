//! JSON circuit files.
//!
//! ```json
//! {
//!   "inputs": 2,
//!   "gates": [{ "wires": [0, 1], "truth_table": "0001" }],
//!   "output": 2
//! }
//! ```
//!
//! Wires `0..inputs` are the inputs and wire `inputs + g` is gate `g`. Truth
//! tables list outputs for input patterns in lexicographic order, first wire
//! most significant. `output` must name the last gate. An optional
//! `fanin_bound` sets `k`; it defaults to the largest gate fan-in.

use std::fs;
use std::path::Path;

use rewire_core::info::{Gate, NoisyCircuit};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateSpec {
    pub wires: Vec<usize>,
    pub truth_table: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitSpec {
    pub inputs: usize,
    pub gates: Vec<GateSpec>,
    pub output: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fanin_bound: Option<usize>,
}

impl CircuitSpec {
    pub fn from_circuit(c: &NoisyCircuit) -> Self {
        let gates = c
            .gates()
            .iter()
            .map(|g| GateSpec {
                wires: g.wires().to_vec(),
                truth_table: g
                    .truth_table()
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect(),
            })
            .collect();
        Self {
            inputs: c.inputs(),
            gates,
            output: c.output(),
            fanin_bound: Some(c.fanin_bound()),
        }
    }

    /// Builds the circuit; `fanin_override` takes precedence over the file.
    pub fn build(&self, fanin_override: Option<usize>) -> rewire_core::Result<NoisyCircuit> {
        let gates = self
            .gates
            .iter()
            .map(|g| Gate::from_bits(g.wires.clone(), &g.truth_table))
            .collect::<rewire_core::Result<Vec<_>>>()?;
        let last = (self.inputs + self.gates.len()).checked_sub(1);
        if self.gates.is_empty() || Some(self.output) != last {
            return Err(rewire_core::Error::Parameter(format!(
                "output {} must be the last gate's wire {}",
                self.output,
                last.map_or_else(|| "(none)".to_string(), |w| w.to_string())
            )));
        }
        match fanin_override.or(self.fanin_bound) {
            Some(k) => NoisyCircuit::new(self.inputs, gates, k),
            None => NoisyCircuit::with_tight_bound(self.inputs, gates),
        }
    }
}

pub fn read_file(path: &Path) -> Result<CircuitSpec> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        message: e.to_string(),
    })
}
