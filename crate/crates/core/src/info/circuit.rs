use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::channel::{es_bound, mutual_information, EsBound, JointDistribution};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Largest input count for exact enumeration over input assignments.
pub const MAX_EXACT_INPUTS: usize = 12;

/// A Boolean gate. Wires index the circuit's node list: `0..inputs` are the
/// inputs, `inputs + g` is the output of gate `g`.
///
/// The truth table lists outputs for input patterns in lexicographic order,
/// first wire most significant: for two wires, `00, 01, 10, 11`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gate {
    wires: Vec<usize>,
    truth_table: Vec<bool>,
}

impl Gate {
    pub fn new(wires: Vec<usize>, truth_table: Vec<bool>) -> Result<Self> {
        if wires.is_empty() {
            return Err(Error::parameter("gate needs at least one input wire"));
        }
        if wires.len() >= usize::BITS as usize || truth_table.len() != 1 << wires.len() {
            return Err(Error::parameter(format!(
                "gate with {} wires needs a truth table of {} entries, got {}",
                wires.len(),
                1usize.checked_shl(wires.len() as u32).unwrap_or(0),
                truth_table.len()
            )));
        }
        Ok(Self { wires, truth_table })
    }

    /// Parses a truth table written as a string of `0`/`1` characters.
    pub fn from_bits(wires: Vec<usize>, bits: &str) -> Result<Self> {
        let table = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parameter(format!("truth table character '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(wires, table)
    }

    pub fn wires(&self) -> &[usize] {
        &self.wires
    }

    pub fn fan_in(&self) -> usize {
        self.wires.len()
    }

    pub fn truth_table(&self) -> &[bool] {
        &self.truth_table
    }

    pub fn output(&self, pattern: usize) -> bool {
        self.truth_table[pattern]
    }
}

/// A circuit of noisy gates. Gates may only read inputs and earlier gates,
/// so the wiring is acyclic by construction. The last gate is the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoisyCircuit {
    inputs: usize,
    gates: Vec<Gate>,
    fanin_bound: usize,
}

impl NoisyCircuit {
    pub fn new(inputs: usize, gates: Vec<Gate>, fanin_bound: usize) -> Result<Self> {
        if gates.is_empty() {
            return Err(Error::parameter("circuit needs at least one gate"));
        }
        if fanin_bound == 0 {
            return Err(Error::parameter("fan-in bound must be >= 1"));
        }
        for (g, gate) in gates.iter().enumerate() {
            if gate.fan_in() > fanin_bound {
                return Err(Error::parameter(format!(
                    "gate {g} has fan-in {} above the bound {fanin_bound}",
                    gate.fan_in()
                )));
            }
            if let Some(&w) = gate.wires().iter().find(|&&w| w >= inputs + g) {
                return Err(Error::parameter(format!(
                    "gate {g} reads wire {w}, which is not an input or an earlier gate"
                )));
            }
        }
        Ok(Self {
            inputs,
            gates,
            fanin_bound,
        })
    }

    /// Circuit whose fan-in bound is its largest gate fan-in.
    pub fn with_tight_bound(inputs: usize, gates: Vec<Gate>) -> Result<Self> {
        let k = gates.iter().map(Gate::fan_in).max().unwrap_or(1);
        Self::new(inputs, gates, k)
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn fanin_bound(&self) -> usize {
        self.fanin_bound
    }

    /// Wire index of the output gate.
    pub fn output(&self) -> usize {
        self.inputs + self.gates.len() - 1
    }

    fn node_count(&self) -> usize {
        self.inputs + self.gates.len()
    }

    /// Number of gates reading each wire.
    fn fan_out(&self) -> Vec<usize> {
        let mut out = vec![0; self.node_count()];
        for gate in &self.gates {
            for &w in gate.wires() {
                out[w] += 1;
            }
        }
        out
    }

    /// True when every input and gate output feeds at most one gate, so gate
    /// inputs are independent given the circuit inputs.
    pub fn is_tree(&self) -> bool {
        self.fan_out().iter().all(|&f| f <= 1)
    }

    /// Shortest directed path length from input `i` to the output, in wires;
    /// `None` when the output does not depend on `i`.
    pub fn input_distance(&self, i: usize) -> Option<usize> {
        let n = self.node_count();
        let mut readers: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (g, gate) in self.gates.iter().enumerate() {
            for &w in gate.wires() {
                readers[w].push(self.inputs + g);
            }
        }
        let mut dist = vec![usize::MAX; n];
        let mut queue = VecDeque::from([i]);
        dist[i] = 0;
        while let Some(x) = queue.pop_front() {
            for &y in &readers[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        let d = dist[self.output()];
        (d != usize::MAX).then_some(d)
    }

    /// Noiseless evaluation on the assignment whose bit `w` is input `w`.
    pub fn evaluate(&self, assignment: usize) -> bool {
        let mut value = vec![false; self.node_count()];
        for w in 0..self.inputs {
            value[w] = (assignment >> w) & 1 == 1;
        }
        for (g, gate) in self.gates.iter().enumerate() {
            let pattern = gate
                .wires()
                .iter()
                .fold(0usize, |acc, &w| (acc << 1) | value[w] as usize);
            value[self.inputs + g] = gate.output(pattern);
        }
        value[self.output()]
    }
}

/// Random tree circuit over `inputs` inputs: gates with fan-in drawn
/// uniformly from `1..=fanin` consume wires from a pool (initially the
/// inputs) until one wire is left, which is the output. Every input is used
/// exactly once and truth tables are uniform.
pub fn random_tree_circuit(inputs: usize, fanin: usize, seed: u64) -> Result<NoisyCircuit> {
    if inputs == 0 || fanin == 0 {
        return Err(Error::parameter(
            "random circuit needs inputs >= 1 and fan-in >= 1",
        ));
    }
    if fanin == 1 && inputs > 1 {
        return Err(Error::parameter(
            "a tree of fan-in 1 gates can read only one input",
        ));
    }
    let mut rng = RngStream::from_seed(seed);
    let mut pool: Vec<usize> = (0..inputs).collect();
    let mut gates = Vec::new();
    while pool.len() > 1 || gates.is_empty() {
        let f = rng.random_range(1..=fanin.min(pool.len()));
        let wires = (0..f)
            .map(|_| pool.swap_remove(rng.random_range(0..pool.len())))
            .collect();
        let table = (0..1usize << f).map(|_| rng.random::<bool>()).collect();
        gates.push(Gate::new(wires, table)?);
        pool.push(inputs + gates.len() - 1);
    }
    NoisyCircuit::new(inputs, gates, fanin)
}

fn check_simulation(c: &NoisyCircuit, delta: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::parameter(format!(
            "gate failure probability {delta} outside [0, 1/2]"
        )));
    }
    if !c.is_tree() {
        return Err(Error::domain(
            "exact propagation needs a tree circuit; shared wires correlate gate inputs",
        ));
    }
    if c.inputs() > MAX_EXACT_INPUTS {
        return Err(Error::capacity(format!(
            "exact enumeration supports at most {MAX_EXACT_INPUTS} inputs (got {})",
            c.inputs()
        )));
    }
    Ok(())
}

/// `P(Y = 1 | x)` for every input assignment `x` (bit `w` of the index is
/// input `w`), with every gate flipping its output independently with
/// probability `delta`.
///
/// On a tree the inputs of a gate are independent given `x`, so each gate's
/// output law follows from its input marginals: the noiseless output is 1
/// with probability `q`, the noisy one with `(1 - delta) q + delta (1 - q)`.
pub fn output_probabilities(c: &NoisyCircuit, delta: f64) -> Result<Vec<f64>> {
    check_simulation(c, delta)?;
    let mut p_one = vec![0.0f64; c.node_count()];
    let probs = (0..1usize << c.inputs())
        .map(|x| {
            for w in 0..c.inputs() {
                p_one[w] = ((x >> w) & 1) as f64;
            }
            for (g, gate) in c.gates().iter().enumerate() {
                let fan_in = gate.fan_in();
                let mut q = 0.0;
                for pattern in 0..1usize << fan_in {
                    if !gate.output(pattern) {
                        continue;
                    }
                    let mut weight = 1.0;
                    for (pos, &w) in gate.wires().iter().enumerate() {
                        let bit = (pattern >> (fan_in - 1 - pos)) & 1;
                        weight *= if bit == 1 { p_one[w] } else { 1.0 - p_one[w] };
                    }
                    q += weight;
                }
                p_one[c.inputs + g] = (1.0 - delta) * q + delta * (1.0 - q);
            }
            p_one[c.output()]
        })
        .collect();
    Ok(probs)
}

/// Exact information between one input and the output, next to its bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputInformation {
    pub input: usize,
    pub distance: Option<usize>,
    /// `I(X_i; Y)` in bits under uniform i.i.d. inputs.
    pub mutual_information: f64,
    /// `None` when the output does not depend on the input.
    pub bound: Option<EsBound>,
}

fn input_information(
    c: &NoisyCircuit,
    delta: f64,
    probs: &[f64],
    input: usize,
) -> Result<InputInformation> {
    let total = probs.len() as f64;
    let (mut ones_given_0, mut ones_given_1) = (0.0, 0.0);
    for (x, &p) in probs.iter().enumerate() {
        if (x >> input) & 1 == 1 {
            ones_given_1 += p;
        } else {
            ones_given_0 += p;
        }
    }
    let half = total / 2.0;
    let joint = JointDistribution::new(
        2,
        2,
        vec![
            (half - ones_given_0) / total,
            ones_given_0 / total,
            (half - ones_given_1) / total,
            ones_given_1 / total,
        ],
    )?;
    let distance = c.input_distance(input);
    let bound = distance
        .map(|d| es_bound(delta, c.fanin_bound(), d))
        .transpose()?;
    Ok(InputInformation {
        input,
        distance,
        mutual_information: mutual_information(&joint),
        bound,
    })
}

/// `I(X_i; Y)` for one input of a tree circuit, with the Evans-Schulman
/// bound at the input's distance from the output.
pub fn simulate_tree_circuit(
    c: &NoisyCircuit,
    delta: f64,
    input: usize,
) -> Result<InputInformation> {
    if input >= c.inputs() {
        return Err(Error::parameter(format!(
            "input {input} out of range for a circuit with {} inputs",
            c.inputs()
        )));
    }
    let probs = output_probabilities(c, delta)?;
    input_information(c, delta, &probs, input)
}

/// [`simulate_tree_circuit`] for every input, sharing one propagation pass.
pub fn simulate_all_inputs(c: &NoisyCircuit, delta: f64) -> Result<Vec<InputInformation>> {
    let probs = output_probabilities(c, delta)?;
    (0..c.inputs())
        .map(|i| input_information(c, delta, &probs, i))
        .collect()
}
