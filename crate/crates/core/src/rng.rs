//! Seeded random streams.
//!
//! Every random decision draws from a ChaCha8 stream keyed by a `(seed, stream)`
//! pair, so results do not depend on iteration or scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// Generator for child stream `stream` of `seed`.
pub fn stream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
