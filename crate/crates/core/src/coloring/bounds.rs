use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use super::{floor_frac, ColoringError};

/// `h(a) = -a log2 a - (1-a) log2 (1-a)`, with `h(0) = h(1) = 0`.
pub fn binary_entropy(a: f64) -> Result<f64, ColoringError> {
    if !(0.0..=1.0).contains(&a) {
        return Err(ColoringError::Domain { what: "a", value: a, domain: "[0, 1]" });
    }
    let term = |x: f64| if x == 0.0 { 0.0 } else { -x * x.log2() };
    Ok(term(a) + term(1.0 - a))
}

fn check_alpha_delta(alpha: f64, delta: usize) -> Result<(), ColoringError> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(ColoringError::Domain { what: "alpha", value: alpha, domain: "(0, 1/2)" });
    }
    if delta < 2 {
        return Err(ColoringError::Domain { what: "delta", value: delta as f64, domain: "[2, inf)" });
    }
    Ok(())
}

/// Upper bound `2 · 2^{(h(α) - 1) δ}` on the probability that a fixed edge
/// is biased under a uniform random coloring.
pub fn bias_probability_bound(alpha: f64, delta: usize) -> Result<f64, ColoringError> {
    check_alpha_delta(alpha, delta)?;
    let h = binary_entropy(alpha)?;
    Ok(2.0 * ((h - 1.0) * delta as f64).exp2())
}

/// A probability with denominator `2^delta`, kept as an exact integer count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactProbability {
    pub favorable: u128,
    pub delta: u32,
}

impl ExactProbability {
    pub fn to_f64(self) -> f64 {
        self.favorable as f64 / (self.delta as f64).exp2()
    }
}

fn binomial(n: u32, k: u32) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Exact probability that a uniformly colored edge of size `delta` has at
/// most `floor(α δ)` red or at most `floor(α δ)` blue vertices.
///
/// Colorings are counted once each by summing binomials over the red count,
/// so nothing is double counted. Supported for `delta <= 64`.
pub fn exact_bias_probability(alpha: f64, delta: usize) -> Result<ExactProbability, ColoringError> {
    check_alpha_delta(alpha, delta)?;
    if delta > 64 {
        return Err(ColoringError::Domain { what: "delta", value: delta as f64, domain: "[2, 64]" });
    }
    let k = floor_frac(alpha, delta);
    let favorable =
        (0..=delta).filter(|&red| red <= k || delta - red <= k).map(|red| binomial(delta as u32, red as u32)).sum();
    Ok(ExactProbability { favorable, delta: delta as u32 })
}

/// Local lemma condition `2e(d + 1) <= 2^{α δ}`.
pub fn lll_feasible(alpha: f64, delta: usize, d: usize) -> bool {
    2.0 * E * (d as f64 + 1.0) <= (alpha * delta as f64).exp2()
}

/// `n <= 2^{α δ}`, which makes every piece recolorable.
pub fn blackbox_feasible(alpha: f64, delta: usize, n: usize) -> bool {
    n as f64 <= (alpha * delta as f64).exp2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // -(1/8)log2(1/8) - (7/8)log2(7/8) = 3/8 + (7/8)(3 - log2 7)
        let expected = 0.375 + 0.875 * (3.0 - 7f64.log2());
        assert!((binary_entropy(0.125).unwrap() - expected).abs() < 1e-15);
        assert!((binary_entropy(0.125).unwrap() - 0.543564).abs() < 1e-6);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.1).is_err());
    }

    #[test]
    fn bound_values() {
        // 30-digit evaluation: 0.159156231065044569621744098365
        let p = bias_probability_bound(0.125, 8).unwrap();
        assert!((p - 0.159_156_231_065_044_57).abs() < 1e-12, "{p}");
        assert!(bias_probability_bound(0.125, 16).unwrap() < p);
        assert!(bias_probability_bound(0.5, 8).is_err());
        assert!(bias_probability_bound(0.125, 1).is_err());
    }

    #[test]
    fn exact_matches_enumeration() {
        for delta in 2..=12usize {
            for alpha in [0.125, 0.25, 0.4] {
                let k = floor_frac(alpha, delta);
                let brute = (0u32..(1 << delta))
                    .filter(|mask| {
                        let red = mask.count_ones() as usize;
                        red <= k || delta - red <= k
                    })
                    .count() as u128;
                let exact = exact_bias_probability(alpha, delta).unwrap();
                assert_eq!(exact.favorable, brute, "delta={delta} alpha={alpha}");
                assert!(exact.to_f64() <= bias_probability_bound(alpha, delta).unwrap());
            }
        }
    }

    #[test]
    fn exact_alpha_eighth_delta_eight() {
        // 9 colorings with at most one red plus 9 with at most one blue
        let exact = exact_bias_probability(0.125, 8).unwrap();
        assert_eq!(exact.favorable, 18);
        assert!((exact.to_f64() - 18.0 / 256.0).abs() < 1e-15);
    }

    #[test]
    fn local_lemma_examples() {
        assert!(lll_feasible(0.5, 10, 3));
        assert!(!lll_feasible(0.125, 8, 100));
        assert!(lll_feasible(0.25, 12, 0));
        assert!(blackbox_feasible(0.25, 16, 16));
        assert!(!blackbox_feasible(0.25, 16, 17));
    }
}
