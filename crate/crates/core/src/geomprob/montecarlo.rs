//! Seeded Monte Carlo estimators.
//!
//! A [`RandomStream`] names one ChaCha8 keystream by `(seed, substream)`.
//! A run of `n` samples is cut into fixed-size chunks; chunk `k` reads the
//! keystream from word `k · 2⁴⁰` on, so chunks are disjoint and each is a
//! pure function of `(seed, substream, k)`. Chunks run in parallel and their
//! accumulators are merged in chunk order, so the report does not depend on
//! the number of worker threads.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::subtense::{
    dihedral_angle, disk_solid_angle_general, keyhole_angle_circle, keyhole_angle_sphere,
    DiskScene, SpherePoint, Vec3,
};

const CHUNK: u64 = 1 << 16;
const CHUNK_WORDS: u128 = 1 << 40;
/// Observers this close to the disk plane are redrawn.
const DISK_PLANE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomStream {
    pub seed: u64,
    pub substream: u64,
}

impl RandomStream {
    pub fn new(seed: u64, substream: u64) -> Self {
        RandomStream { seed, substream }
    }

    /// Generator positioned at the start of chunk `chunk`.
    pub fn rng_at(&self, chunk: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.substream);
        rng.set_word_pos(chunk as u128 * CHUNK_WORDS);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentReport {
    pub mean: f64,
    pub second_moment: f64,
    pub n_samples: u64,
    pub se_mean: f64,
    pub se_second: f64,
    pub seed: u64,
    pub substream: u64,
    /// Degenerate draws that were rejected and redrawn.
    pub resampled: u64,
}

/// Welford running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Running {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Running {
    fn push(&mut self, v: f64) {
        self.n += 1;
        let d = v - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (v - self.mean);
    }

    fn merge(&mut self, other: &Running) {
        if other.n == 0 {
            return;
        }
        let n = self.n + other.n;
        let d = other.mean - self.mean;
        self.mean += d * other.n as f64 / n as f64;
        self.m2 += other.m2 + d * d * (self.n as f64 * other.n as f64 / n as f64);
        self.n = n;
    }

    fn standard_error(&self) -> f64 {
        if self.n < 2 {
            return f64::NAN;
        }
        (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    first: Running,
    second: Running,
    resampled: u64,
}

impl Accumulator {
    fn push(&mut self, v: f64) {
        self.first.push(v);
        self.second.push(v * v);
    }

    fn merge(&mut self, other: &Accumulator) {
        self.first.merge(&other.first);
        self.second.merge(&other.second);
        self.resampled += other.resampled;
    }
}

/// The geometric experiments available to the estimators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum McCase {
    /// Keyhole angle, observer uniform on the unit circle.
    Circle,
    /// Keyhole angle, observer uniform by area on the unit sphere.
    Sphere,
    /// Apparent size of the angle between `B = (1, 0, 0)` and `C`.
    Dihedral(Vec3),
    /// Solid angle of a disk of diameter 1 centered at the origin in the
    /// `xy`-plane, observer uniform on the unit sphere.
    DiskFromSphere,
}

fn unit_sphere_point(rng: &mut ChaCha8Rng) -> Vec3 {
    let z = 2.0 * rng.random::<f64>() - 1.0;
    let theta = TAU * rng.random::<f64>();
    let rho = ((1.0 - z) * (1.0 + z)).sqrt();
    let (s, c) = theta.sin_cos();
    [rho * c, rho * s, z]
}

impl McCase {
    fn validate(&self) -> Result<()> {
        if let McCase::Dihedral(c) = self {
            let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
            if !n.is_finite() || (n - 1.0).abs() > 1e-9 {
                return Err(Error::domain("mc_dihedral", "C must be a unit vector"));
            }
            if (c[1] * c[1] + c[2] * c[2]).sqrt() < 1e-12 {
                return Err(Error::domain("mc_dihedral", "C must not be parallel to B"));
            }
        }
        Ok(())
    }

    /// One draw, or `None` for a degenerate observer position.
    fn draw(&self, rng: &mut ChaCha8Rng) -> Result<Option<f64>> {
        Ok(match *self {
            McCase::Circle => Some(keyhole_angle_circle(TAU * rng.random::<f64>())),
            McCase::Sphere => {
                let theta = TAU * rng.random::<f64>();
                let cos_phi = 2.0 * rng.random::<f64>() - 1.0;
                let p = SpherePoint {
                    theta,
                    phi: cos_phi.acos(),
                };
                Some(keyhole_angle_sphere(&p))
            }
            McCase::Dihedral(c) => {
                let a = unit_sphere_point(rng);
                match dihedral_angle(&a, &[1.0, 0.0, 0.0], &c) {
                    Ok(v) => Some(v),
                    Err(Error::Degenerate(_)) => None,
                    Err(e) => return Err(e),
                }
            }
            McCase::DiskFromSphere => {
                let a = unit_sphere_point(rng);
                let h = a[2].abs();
                if h < DISK_PLANE_EPS {
                    None
                } else {
                    let rho = a[0].hypot(a[1]);
                    Some(disk_solid_angle_general(&DiskScene::new(0.5, rho, h)?)?)
                }
            }
        })
    }

    fn chunk(&self, stream: RandomStream, k: u64, len: u64, mut sink: impl FnMut(f64)) -> Result<u64> {
        let mut rng = stream.rng_at(k);
        let mut rejected = 0;
        for _ in 0..len {
            loop {
                match self.draw(&mut rng)? {
                    Some(v) => {
                        sink(v);
                        break;
                    }
                    None => rejected += 1,
                }
            }
        }
        Ok(rejected)
    }
}

fn chunk_lengths(n: u64) -> impl IndexedParallelIterator<Item = (u64, u64)> {
    let chunks = n.div_ceil(CHUNK) as usize;
    (0..chunks).into_par_iter().map(move |k| {
        let k = k as u64;
        (k, CHUNK.min(n - k * CHUNK))
    })
}

fn check_n(op: &'static str, n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::domain(op, "need at least one sample"))
    } else {
        Ok(())
    }
}

/// Moments of `case` from `n` draws on `stream`.
pub fn mc_moments(case: McCase, n: u64, stream: RandomStream) -> Result<MomentReport> {
    check_n("mc_moments", n)?;
    case.validate()?;
    let parts: Vec<Accumulator> = chunk_lengths(n)
        .map(|(k, len)| {
            let mut acc = Accumulator::default();
            acc.resampled = case.chunk(stream, k, len, |v| acc.push(v))?;
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = Accumulator::default();
    for p in &parts {
        total.merge(p);
    }
    Ok(MomentReport {
        mean: total.first.mean,
        second_moment: total.second.mean,
        n_samples: total.first.n,
        se_mean: total.first.standard_error(),
        se_second: total.second.standard_error(),
        seed: stream.seed,
        substream: stream.substream,
        resampled: total.resampled,
    })
}

/// The raw draws behind [`mc_moments`], in order.
pub fn mc_samples(case: McCase, n: u64, stream: RandomStream) -> Result<Vec<f64>> {
    check_n("mc_samples", n)?;
    case.validate()?;
    let parts: Vec<Vec<f64>> = chunk_lengths(n)
        .map(|(k, len)| {
            let mut out = Vec::with_capacity(len as usize);
            case.chunk(stream, k, len, |v| out.push(v))?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(parts.concat())
}

pub fn mc_circle(n: u64, stream: RandomStream) -> Result<MomentReport> {
    mc_moments(McCase::Circle, n, stream)
}

pub fn mc_sphere(n: u64, stream: RandomStream) -> Result<MomentReport> {
    mc_moments(McCase::Sphere, n, stream)
}

pub fn mc_dihedral(c: Vec3, n: u64, stream: RandomStream) -> Result<MomentReport> {
    mc_moments(McCase::Dihedral(c), n, stream)
}

pub fn mc_disk_from_sphere(n: u64, stream: RandomStream) -> Result<MomentReport> {
    mc_moments(McCase::DiskFromSphere, n, stream)
}
