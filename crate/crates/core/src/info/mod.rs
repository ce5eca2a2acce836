//! Information contraction: binary symmetric channels, the Evans-Schulman
//! decay bound for noisy circuits, and exact mutual information of noisy
//! Boolean tree circuits. All information quantities are in bits.

mod channel;
mod circuit;

pub use channel::{
    binary_entropy, bsc_contraction, es_bound, estimate_contraction, mutual_information,
    reliability_threshold, Channel, EsBound, JointDistribution, MIN_GRID,
};
pub use circuit::{
    output_probabilities, random_tree_circuit, simulate_all_inputs, simulate_tree_circuit, Gate,
    InputInformation, NoisyCircuit, MAX_EXACT_INPUTS,
};
