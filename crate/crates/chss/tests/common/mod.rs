#![allow(dead_code)]

use chss::{HashFamily, HierarchyConfig, Polynomial, PrimeModulus, Secret};
use rand::Rng;

pub fn field(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

pub fn poly(p: u64, c: &[u64]) -> Polynomial {
    Polynomial::new(field(p), c.to_vec()).unwrap()
}

pub fn family(cfg: &HierarchyConfig) -> HashFamily {
    HashFamily::new(cfg.hash_family(), cfg.p(), cfg.levels()).unwrap()
}

/// Shape limits for [`random_config`].
#[derive(Clone, Copy)]
pub struct Shape {
    pub p: u64,
    pub levels: usize,
    pub max_n: usize,
    pub max_d0: usize,
    pub max_degree: usize,
    /// Cap on `Σ_{i≤t_m} d_i`, the top-level candidate width.
    pub max_top_width: usize,
}

/// Retries random shapes until one passes every admissibility condition.
pub fn random_config<R: Rng>(shape: Shape, rng: &mut R) -> HierarchyConfig {
    let p = field(shape.p);
    for _ in 0..100_000 {
        let m = shape.levels;
        if shape.max_n < m {
            break;
        }
        let n = rng.gen_range(m..=shape.max_n);
        // split n into m positive sizes
        let mut cuts: Vec<usize> = (1..n).collect();
        let mut chosen = Vec::new();
        for _ in 0..m - 1 {
            let k = rng.gen_range(0..cuts.len());
            chosen.push(cuts.remove(k));
        }
        chosen.sort();
        let mut sizes = Vec::new();
        let mut prev = 0;
        for c in chosen.into_iter().chain([n]) {
            sizes.push(c - prev);
            prev = c;
        }
        let mut thresholds = Vec::new();
        let mut prefix = 0;
        let mut lo = 1;
        let mut ok = true;
        for &s in &sizes {
            prefix += s;
            if lo > prefix {
                ok = false;
                break;
            }
            let t = rng.gen_range(lo..=prefix);
            thresholds.push(t);
            lo = t + 1;
        }
        if !ok {
            continue;
        }
        let d0 = rng.gen_range(1..=shape.max_d0);
        if d0 > shape.max_degree {
            continue;
        }
        let mut degrees: Vec<usize> = (0..n).map(|_| rng.gen_range(d0..=shape.max_degree)).collect();
        degrees.sort();
        let t_m = *thresholds.last().unwrap();
        if degrees[..t_m].iter().sum::<usize>() > shape.max_top_width {
            continue;
        }
        let Ok(cfg) = HierarchyConfig::generate(p, d0, sizes, thresholds, &degrees, "std-v1", rng) else {
            continue;
        };
        if cfg.validate().is_valid() {
            return cfg;
        }
    }
    panic!("no admissible config for shape p={} m={}", shape.p, shape.levels);
}

pub fn random_secret<R: Rng>(cfg: &HierarchyConfig, rng: &mut R) -> Secret {
    Secret::random(cfg, rng)
}
