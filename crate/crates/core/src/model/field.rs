//! Deterministic lazy sampling of the infinite initial configuration.
//!
//! Every engine and every repeated run addresses one well-defined infinite
//! configuration without materializing a grid: the state of site (x, y) is a
//! pure function of (master seed, x, y).

use super::{ModelError, SiteState};

/// How the origin site is drawn.
///
/// Under the initial measure the origin is active with probability p and
/// empty otherwise. Conditioned Monte Carlo forces it active and multiplies
/// the estimate by p afterwards, which removes a factor-1/p rejection.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OriginMode {
    /// Draw the origin from its marginal law (active with probability p).
    Sampled,
    /// Force the origin to the given state.
    Forced(SiteState),
}

/// A lazily sampled infinite initial configuration.
///
/// Non-origin sites are occupied with probability `p`, otherwise empty,
/// independently; the origin is active with probability `p` unless forced.
#[derive(Clone, Copy, Debug)]
pub struct Field {
    master_seed: u64,
    p: f64,
    origin: OriginMode,
}

impl Field {
    pub fn new(master_seed: u64, p: f64, origin: OriginMode) -> Result<Self, ModelError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(ModelError::ProbabilityRange(p));
        }
        Ok(Field {
            master_seed,
            p,
            origin,
        })
    }

    /// Field with the origin forced active: the conditioned mode used by
    /// growth Monte Carlo.
    pub fn conditioned(master_seed: u64, p: f64) -> Result<Self, ModelError> {
        Field::new(master_seed, p, OriginMode::Forced(SiteState::Active))
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn origin_mode(&self) -> OriginMode {
        self.origin
    }

    /// State of site (x, y). Pure: repeated queries agree.
    #[inline]
    pub fn site_state(&self, x: i64, y: i64) -> SiteState {
        if x == 0 && y == 0 {
            return match self.origin {
                OriginMode::Forced(state) => state,
                OriginMode::Sampled => {
                    if self.draw(x, y) {
                        SiteState::Active
                    } else {
                        SiteState::Empty
                    }
                }
            };
        }
        if self.draw(x, y) {
            SiteState::Occupied
        } else {
            SiteState::Empty
        }
    }

    #[inline]
    fn draw(&self, x: i64, y: i64) -> bool {
        unit_from_hash(mix3(self.master_seed, x as u64, y as u64)) < self.p
    }
}

#[inline]
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Mix a seed with 2D integer coordinates into a 64-bit hash.
#[inline]
fn mix3(seed: u64, x: u64, y: u64) -> u64 {
    let h = seed ^ 0x9E37_79B9_7F4A_7C15;
    let h = splitmix64(h ^ x.wrapping_mul(0xC2B2_AE3D_27D4_EB4F));
    splitmix64(h ^ y.wrapping_mul(0x1656_67B1_9E37_79F9))
}

/// Map a hash to [0, 1) with 53 uniform bits.
#[inline]
fn unit_from_hash(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Stable per-stream seed derivation, e.g. per-trial seeds from a master
/// seed and a trial index.
#[inline]
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    splitmix64(base ^ splitmix64(stream ^ 0x5851_F42D_4C95_7F2D))
}
