//! Seeded random instances.
//!
//! All randomness comes from ChaCha8 (`rand_chacha` 0.3) seeded with
//! `seed_from_u64`, so a seed names the same instance on every platform.
//! Coordinates are drawn with `gen_range` over the closed box, one `x` then
//! one `y` per disk.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Disk, DiskInstance};

/// `n` unit-scale disks of the given radius, centres uniform on
/// `[0, box_side]^2`. Disk `0` is the lone terminal until
/// [`mark_terminals`] chooses others.
pub fn random_udg(n: usize, box_side: i128, radius: i128, seed: u64) -> Result<DiskInstance> {
    if n == 0 {
        return Err(Error::InvalidInstance("need at least one disk".into()));
    }
    if radius <= 0 || box_side < 0 {
        return Err(Error::InvalidInstance(format!(
            "radius {radius} and box side {box_side} must be positive"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let disks = (0..n)
        .map(|i| {
            let x = rng.gen_range(0..=box_side);
            let y = rng.gen_range(0..=box_side);
            Disk::new(i as u64, x, y, radius, i == 0)
        })
        .collect();
    DiskInstance::new(1, disks, 0)
}

/// Replaces the terminal set by `t` distinct disks chosen uniformly.
pub fn mark_terminals(inst: &DiskInstance, t: usize, seed: u64) -> Result<DiskInstance> {
    let n = inst.n();
    if t == 0 || t > n {
        return Err(Error::InvalidInstance(format!("cannot mark {t} of {n} disks")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen = sample(&mut rng, n, t);
    let mut out = inst.clone();
    for d in &mut out.disks {
        d.terminal = false;
    }
    for i in chosen.iter() {
        out.disks[i].terminal = true;
    }
    out.validate()?;
    Ok(out)
}

/// [`random_udg`] followed by [`mark_terminals`] with a derived seed, and
/// budget `k`.
pub fn random_instance(n: usize, t: usize, k: usize, box_side: i128, radius: i128, seed: u64) -> Result<DiskInstance> {
    let base = random_udg(n, box_side, radius, seed)?;
    let mut inst = mark_terminals(&base, t, seed ^ 0x9e37_79b9_7f4a_7c15)?;
    inst.k = k;
    Ok(inst)
}
