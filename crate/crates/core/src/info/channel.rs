use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};

const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Smallest grid accepted by [`estimate_contraction`].
pub const MIN_GRID: usize = 100;

fn check_delta(delta: f64) -> Result<()> {
    if (0.0..=0.5).contains(&delta) {
        Ok(())
    } else {
        Err(Error::parameter(format!(
            "crossover probability {delta} outside [0, 1/2]"
        )))
    }
}

/// KL contraction coefficient of `BSC(delta)`: `(1 - 2 delta)^2`.
pub fn bsc_contraction(delta: f64) -> Result<f64> {
    check_delta(delta)?;
    let s = 1.0 - 2.0 * delta;
    Ok(s * s)
}

/// Evans-Schulman bound on `I(X_i; Y)` for a circuit of `delta`-noisy gates
/// with fan-in at most `k`, where `X_i` is `d` hops from the output.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsBound {
    /// `(1 - 2 delta)^2`.
    pub eta: f64,
    /// `(eta k)^d` bits. May exceed one bit, in which case it is vacuous.
    pub raw: f64,
    /// `min(raw, 1)`: a uniform binary input carries at most one bit.
    pub clamped: f64,
}

pub fn es_bound(delta: f64, k: usize, d: usize) -> Result<EsBound> {
    if k == 0 {
        return Err(Error::parameter("fan-in must be >= 1"));
    }
    let eta = bsc_contraction(delta)?;
    let raw = libm::pow(eta * k as f64, d as f64);
    Ok(EsBound {
        eta,
        raw,
        clamped: raw.min(1.0),
    })
}

/// `1/2 - 1/(2 sqrt(k))`: the bound decays with depth exactly when
/// `delta` is at or above this value, since `eta k > 1 ⇔ delta < threshold`.
pub fn reliability_threshold(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::parameter("fan-in must be >= 1"));
    }
    Ok(0.5 - 0.5 / libm::sqrt(k as f64))
}

/// `H_b(p)` in bits.
pub fn binary_entropy(p: f64) -> f64 {
    let h = |x: f64| if x > 0.0 { -x * libm::log2(x) } else { 0.0 };
    h(p) + h(1.0 - p)
}

/// Joint probability table over a finite product alphabet, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    rows: usize,
    cols: usize,
    probs: Vec<f64>,
}

impl JointDistribution {
    pub fn new(rows: usize, cols: usize, probs: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || probs.len() != rows * cols {
            return Err(Error::parameter(format!(
                "joint table of {} entries does not match shape {rows}x{cols}",
                probs.len()
            )));
        }
        if probs.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::domain("joint probabilities must be nonnegative"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::domain(format!("joint table sums to {total}, not 1")));
        }
        Ok(Self { rows, cols, probs })
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.probs[x * self.cols + y]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
}

/// `I(X; Y) = sum p(x, y) log2(p(x, y) / (p(x) p(y)))`, with `0 log 0 = 0`.
pub fn mutual_information(joint: &JointDistribution) -> f64 {
    let (rows, cols) = joint.shape();
    let px: Vec<f64> = (0..rows)
        .map(|x| (0..cols).map(|y| joint.get(x, y)).sum())
        .collect();
    let py: Vec<f64> = (0..cols)
        .map(|y| (0..rows).map(|x| joint.get(x, y)).sum())
        .collect();
    let mut info = 0.0;
    for x in 0..rows {
        for y in 0..cols {
            let p = joint.get(x, y);
            if p > 0.0 {
                info += p * libm::log2(p / (px[x] * py[y]));
            }
        }
    }
    info.max(0.0)
}

/// Row-stochastic channel matrix `K(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    rows: Vec<Vec<f64>>,
}

impl Channel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let outputs = rows.first().map_or(0, Vec::len);
        if outputs == 0 || rows.iter().any(|r| r.len() != outputs) {
            return Err(Error::domain(
                "channel rows must be nonempty and of equal length",
            ));
        }
        for (x, row) in rows.iter().enumerate() {
            if row.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
                return Err(Error::domain(format!("row {x} has a negative entry")));
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
                return Err(Error::domain(format!("row {x} sums to {total}, not 1")));
            }
        }
        Ok(Self { rows })
    }

    pub fn bsc(delta: f64) -> Result<Self> {
        check_delta(delta)?;
        Self::new(alloc::vec![
            alloc::vec![1.0 - delta, delta],
            alloc::vec![delta, 1.0 - delta]
        ])
    }

    pub fn inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.rows[x]
    }
}

/// `a ln(a / b)` written as `a ln(1 + diff / b)` with `diff = a - b` supplied
/// exactly, so that nearby distributions keep full relative precision.
fn kl_term(a: f64, b: f64, diff: f64) -> f64 {
    if a <= 0.0 {
        0.0
    } else {
        a * libm::log1p(diff / b)
    }
}

/// Grid lower bound on the KL contraction coefficient of a binary-input
/// channel: the largest `D(KP || KQ) / D(P || Q)` over input laws
/// `P = (p, 1-p)`, `Q = (q, 1-q)` with `p, q` on the interior grid
/// `{1/grid, ..., (grid-1)/grid}`, `p != q`.
pub fn estimate_contraction(channel: &Channel, grid: usize) -> Result<f64> {
    if channel.inputs() != 2 {
        return Err(Error::domain(
            "grid estimate supports binary-input channels only",
        ));
    }
    if grid < MIN_GRID {
        return Err(Error::parameter(format!("grid must be >= {MIN_GRID}")));
    }
    let (k0, k1) = (channel.row(0), channel.row(1));
    let spread: Vec<f64> = k0.iter().zip(k1).map(|(a, b)| a - b).collect();
    let step = 1.0 / grid as f64;
    let mut best = 0.0f64;
    for a in 1..grid {
        let p = a as f64 * step;
        for b in 1..grid {
            if a == b {
                continue;
            }
            let q = b as f64 * step;
            let dpq = (a as f64 - b as f64) * step;
            let input_div = kl_term(p, q, dpq) + kl_term(1.0 - p, 1.0 - q, -dpq);
            if !(input_div > 0.0) || !input_div.is_finite() {
                continue;
            }
            let mut output_div = 0.0;
            for y in 0..k0.len() {
                let kp = p * k0[y] + (1.0 - p) * k1[y];
                let kq = q * k0[y] + (1.0 - q) * k1[y];
                output_div += kl_term(kp, kq, dpq * spread[y]);
            }
            best = best.max(output_div / input_div);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bsc_values() {
        assert_eq!(bsc_contraction(0.0), Ok(1.0));
        assert_eq!(bsc_contraction(0.5), Ok(0.0));
        assert!((bsc_contraction(0.1).unwrap() - 0.64).abs() < 1e-15);
        assert!(matches!(bsc_contraction(0.6), Err(Error::Parameter(_))));
        assert!(matches!(bsc_contraction(-0.1), Err(Error::Parameter(_))));
    }

    #[test]
    fn es_bound_values() {
        assert_eq!(es_bound(0.5, 3, 1).unwrap().raw, 0.0);
        assert_eq!(es_bound(0.3, 3, 0).unwrap().raw, 1.0);
        let b = es_bound(0.4, 3, 2).unwrap();
        assert!((b.raw - 0.0144).abs() < 1e-15);
        let vacuous = es_bound(0.0, 3, 2).unwrap();
        assert_eq!((vacuous.raw, vacuous.clamped), (9.0, 1.0));
        assert!(matches!(es_bound(0.1, 0, 1), Err(Error::Parameter(_))));
    }

    #[test]
    fn thresholds() {
        assert_eq!(reliability_threshold(1), Ok(0.0));
        assert_eq!(reliability_threshold(4), Ok(0.25));
        assert!((reliability_threshold(9).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn mutual_information_examples() {
        let indep = JointDistribution::new(2, 2, alloc::vec![0.25; 4]).unwrap();
        assert_eq!(mutual_information(&indep), 0.0);
        let copy = JointDistribution::new(2, 2, alloc::vec![0.5, 0.0, 0.0, 0.5]).unwrap();
        assert!((mutual_information(&copy) - 1.0).abs() < 1e-15);
        let e = 0.18;
        let bsc = JointDistribution::new(
            2,
            2,
            alloc::vec![(1.0 - e) / 2.0, e / 2.0, e / 2.0, (1.0 - e) / 2.0],
        )
        .unwrap();
        assert!((mutual_information(&bsc) - (1.0 - binary_entropy(e))).abs() < 1e-12);
        assert!((mutual_information(&bsc) - 0.3199).abs() < 1e-4);
        assert!(matches!(
            JointDistribution::new(2, 2, alloc::vec![0.3; 4]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn estimator_special_channels() {
        let identity =
            Channel::new(alloc::vec![alloc::vec![1.0, 0.0], alloc::vec![0.0, 1.0]]).unwrap();
        assert!((estimate_contraction(&identity, 200).unwrap() - 1.0).abs() < 1e-6);
        let constant =
            Channel::new(alloc::vec![alloc::vec![0.3, 0.7], alloc::vec![0.3, 0.7]]).unwrap();
        assert_eq!(estimate_contraction(&constant, 200), Ok(0.0));
        let bsc = Channel::bsc(0.1).unwrap();
        let est = estimate_contraction(&bsc, 200).unwrap();
        assert!((0.63..=0.64).contains(&est), "{est}");
    }

    #[test]
    fn estimator_errors() {
        let ternary = Channel::new(alloc::vec![
            alloc::vec![1.0],
            alloc::vec![1.0],
            alloc::vec![1.0]
        ])
        .unwrap();
        assert!(matches!(
            estimate_contraction(&ternary, 200),
            Err(Error::Domain(_))
        ));
        let bsc = Channel::bsc(0.2).unwrap();
        assert!(matches!(
            estimate_contraction(&bsc, 99),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            Channel::new(alloc::vec![alloc::vec![0.5, 0.6], alloc::vec![0.5, 0.5]]),
            Err(Error::Domain(_))
        ));
    }
}
