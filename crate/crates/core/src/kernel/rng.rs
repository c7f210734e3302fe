use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Seeded counter-based random stream.
///
/// A stream is identified by `(seed, stream)`; trials of one experiment use
/// the trial index as the stream id, so results do not depend on how trials
/// are scheduled across threads.
#[derive(Debug, Clone)]
pub struct TrialRng(ChaCha20Rng);

impl TrialRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha20Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self(inner)
    }

    pub fn from_seed(seed: u64) -> Self {
        Self::new(seed, 0)
    }

    /// Derives an independent child stream; the parent is not advanced.
    pub fn split(&self, stream: u64) -> Self {
        let mut inner = self.0.clone();
        inner.set_stream(self.0.get_stream().wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)));
        inner.set_word_pos(0);
        Self(inner)
    }

    pub fn uniform(&mut self) -> f64 {
        self.0.random::<f64>()
    }

    pub fn coin(&mut self) -> u8 {
        self.0.random_range(0..2u8)
    }

    /// Draws an index from `weights` (not necessarily normalized).
    pub fn choose_weighted(&mut self, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().sum();
        let mut x = self.uniform() * total;
        let mut last_positive = 0;
        for (i, &w) in weights.iter().enumerate() {
            if w > 0.0 {
                last_positive = i;
                if x < w {
                    return i;
                }
                x -= w;
            }
        }
        last_positive
    }
}

impl RngCore for TrialRng {
    fn next_u32(&mut self) -> u32 {
        self.0.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.0.fill_bytes(dst)
    }
}
