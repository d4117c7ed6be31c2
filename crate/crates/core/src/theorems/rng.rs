//! Reproducible random source.
//!
//! Draws use xoshiro256** seeded through SplitMix64 (the reference seeding
//! procedure of xoshiro), with standard normal variates from the Box–Muller
//! transform. Both algorithms are short and widely published, so a witness
//! seed reproduces the same matrix in any language.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

/// One step of SplitMix64, used to derive independent per-draw seeds.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of draw `index` of a config entry with base seed `base`.
pub fn derive_seed(base: u64, stream: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base ^ splitmix64(stream)) ^ index)
}

pub struct MatrixRng {
    inner: Xoshiro256StarStar,
}

impl MatrixRng {
    pub fn new(seed: u64) -> Self {
        MatrixRng {
            inner: Xoshiro256StarStar::seed_from_u64(seed),
        }
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: usize, hi: usize) -> usize {
        debug_assert!(lo <= hi);
        lo + (self.uniform() * (hi - lo + 1) as f64) as usize
    }

    /// Box–Muller pair of independent standard normals.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (TAU * u2).sin_cos();
        (r * c, r * s)
    }

    /// Standard complex Gaussian (`E|z|² = 1`).
    pub fn complex_normal(&mut self) -> Complex64 {
        let (x, y) = self.normal_pair();
        Complex64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Uniform in the closed unit disk.
    pub fn unit_disk(&mut self) -> Complex64 {
        let r = self.uniform().sqrt();
        Complex64::from_polar(r, TAU * self.uniform())
    }

    pub fn unit_circle(&mut self) -> Complex64 {
        Complex64::from_polar(1.0, TAU * self.uniform())
    }
}
