use crate::graph::Graph;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based stream: the generator for (seed, index) is addressable
/// without any sequential state, so samples can be drawn in parallel and
/// still reproduce exactly.
pub fn rng_for(seed: u64, index: u64) -> ChaCha12Rng {
    let mut state = seed ^ index.wrapping_mul(0xA076_1D64_78BD_642F);
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}

/// One draw from the binomial random-graph model: every edge of the
/// complete graph on `n` vertices is kept independently with
/// probability `p`. Deterministic in (seed, index).
pub fn sample_gnp(n: usize, p: f64, seed: u64, index: u64) -> Graph {
    assert!(n >= 1, "need at least one vertex");
    assert!(p > 0.0 && p <= 1.0, "p must lie in (0, 1]");
    let mut rng = rng_for(seed, index);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    Graph::new((0..n).map(|i| format!("v{i}")).collect(), edges, None)
        .expect("sampled graph is simple")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_gnp(8, 0.5, 42, 7);
        let b = sample_gnp(8, 0.5, 42, 7);
        assert_eq!(a, b);
        let c = sample_gnp(8, 0.5, 42, 8);
        assert_ne!(a, c, "different indices give different draws");
        let d = sample_gnp(8, 0.5, 43, 7);
        assert_ne!(a, d, "different seeds give different draws");
    }

    #[test]
    fn extreme_probabilities() {
        let full = sample_gnp(5, 1.0, 1, 0);
        assert_eq!(full.edge_count(), 10);
        let mut empty_count = 0;
        for i in 0..50 {
            if sample_gnp(5, 1e-9, 1, i).edge_count() == 0 {
                empty_count += 1;
            }
        }
        assert_eq!(empty_count, 50, "tiny p gives edgeless graphs");
    }
}
