//! Brute-force ground truth and reproducible instance generation.
//!
//! [`brute_profile`] materializes independent sets, bases, circuits and the
//! full rank table of a matroid straight from the definitions, touching
//! nothing but the independence oracle. The closed forms in
//! [`crate::parametric`] are checked against it; see [`checks`].
//!
//! Random instances come from ChaCha8 seeded through `seed_from_u64`, and
//! every draw is a raw `next_u64` mapped by the helpers below, so the same
//! [`InstanceSpec`] yields the same instance on any platform:
//!
//! * `below(n)`: rejection sampling, accept `v < n * floor(2^64 / n)`, return `v % n`;
//! * `unit()`: `(v >> 11) / 2^53`.

pub mod checks;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::parametric::ParametricInstance;
use crate::sets::{extremal_sets, Extremal, Partition, SetFamily, Subset, Universe};

/// Everything the definitions say about a small matroid, found by exhaustion.
#[derive(Debug, Clone)]
pub struct BruteProfile {
    pub family: SetFamily,
    pub bases: SetFamily,
    pub circuits: SetFamily,
    pub ground_size: usize,
    ground: Vec<usize>,
    rank_table: Vec<u32>,
}

impl BruteProfile {
    fn local_mask(&self, s: &Subset) -> Option<usize> {
        let mut mask = 0usize;
        let mut seen = 0;
        for (bit, &i) in self.ground.iter().enumerate() {
            if s.contains(i) {
                mask |= 1 << bit;
                seen += 1;
            }
        }
        (seen == s.len()).then_some(mask)
    }

    /// Rank of `s`, or `None` if `s` leaves the ground set.
    pub fn rank(&self, s: &Subset) -> Option<usize> {
        self.local_mask(s).map(|m| self.rank_table[m] as usize)
    }

    /// `{u ∈ ground : rank(s ∪ {u}) = rank(s)}`.
    pub fn closure(&self, s: &Subset) -> Option<Subset> {
        let base = self.rank(s)?;
        let mut out = s.clone();
        for &u in &self.ground {
            if self.rank(&s.with(u)) == Some(base) {
                out.insert(u);
            }
        }
        Some(out)
    }
}

/// Enumerates every subset of the ground set through the oracle, then takes
/// bases as the maximal members, circuits as the minimal non-members, and rank
/// as the largest member below each set.
pub fn brute_profile(m: &Matroid) -> Result<BruteProfile> {
    let ground: Vec<usize> = m.ground().indices();
    let n = ground.len();
    if n > m.cap() || n >= 32 {
        return Err(Error::CapExceeded {
            size: n,
            cap: m.cap(),
        });
    }
    let universe = m.universe();
    let uid = universe.id();
    let mut family = SetFamily::new(uid);
    let mut dependent = SetFamily::new(uid);
    let mut independent = Vec::with_capacity(1 << n);
    for mask in 0..1usize << n {
        let s =
            universe.subset_from_indices((0..n).filter(|b| mask >> b & 1 == 1).map(|b| ground[b]));
        let ok = m.is_independent(&s)?;
        independent.push(ok);
        if ok {
            family.insert(s);
        } else {
            dependent.insert(s);
        }
    }
    // a largest independent subset of S is S itself or lies below some S - {e}
    let mut rank_table = vec![0u32; 1 << n];
    for mask in 0..1usize << n {
        rank_table[mask] = if independent[mask] {
            mask.count_ones()
        } else {
            (0..n)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| rank_table[mask & !(1 << b)])
                .max()
                .unwrap_or(0)
        };
    }
    Ok(BruteProfile {
        bases: extremal_sets(&family, Extremal::Max),
        circuits: extremal_sets(&dependent, Extremal::Min),
        family,
        ground_size: n,
        ground,
        rank_table,
    })
}

/// Restricted-growth strings of length `n`: `a[0] = 0` and
/// `a[i] <= 1 + max(a[..i])`. Each one names a distinct set partition, so the
/// iterator visits every partition of an `n`-set exactly once (Bell(n) items).
#[derive(Debug, Clone)]
pub struct SetPartitions {
    current: Option<Vec<usize>>,
}

pub fn set_partitions(n: usize) -> SetPartitions {
    SetPartitions {
        current: Some(vec![0; n]),
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let mut prefix_max = vec![0usize; next.len()];
        for i in 1..next.len() {
            prefix_max[i] = prefix_max[i - 1].max(next[i - 1]);
        }
        for i in (1..next.len()).rev() {
            if next[i] <= prefix_max[i] {
                next[i] += 1;
                for v in &mut next[i + 1..] {
                    *v = 0;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Every partition of `{1..n}` crossed with every parameter set.
pub fn exhaustive_instances(n: usize) -> impl Iterator<Item = ParametricInstance> {
    let universe = Universe::numbered(n).expect("n >= 1");
    set_partitions(n).flat_map(move |rgs| {
        let p = Partition::from_labels(universe.clone(), &rgs);
        let u = universe.clone();
        (0..1u64 << n).map(move |mask| {
            ParametricInstance::from_partition(p.clone(), u.subset_from_mask(mask))
                .expect("same universe")
        })
    })
}

/// How random partitions are shaped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockLaw {
    /// Element `i` starts a new block with probability `1/(i+1)`, otherwise
    /// joins the block of a uniformly chosen earlier element.
    Restaurant,
    /// Draw `k` uniformly from `1..=n`, then give every element a uniform
    /// label below `k`.
    Labels,
    /// Shuffle, then cut into consecutive blocks of the given size.
    Chunks(usize),
}

impl fmt::Display for BlockLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockLaw::Restaurant => f.write_str("restaurant"),
            BlockLaw::Labels => f.write_str("labels"),
            BlockLaw::Chunks(k) => write!(f, "chunks:{k}"),
        }
    }
}

impl FromStr for BlockLaw {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "restaurant" => Ok(BlockLaw::Restaurant),
            "labels" => Ok(BlockLaw::Labels),
            _ => match s.strip_prefix("chunks:").map(str::parse::<usize>) {
                Some(Ok(k)) if k > 0 => Ok(BlockLaw::Chunks(k)),
                _ => Err(format!(
                    "unknown block law `{s}` (expected restaurant, labels or chunks:K)"
                )),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceSpec {
    pub seed: u64,
    pub universe_size: usize,
    pub block_law: BlockLaw,
    /// Probability that an element belongs to the parameter set.
    pub x_density: f64,
}

impl InstanceSpec {
    pub fn new(seed: u64, universe_size: usize) -> InstanceSpec {
        InstanceSpec {
            seed,
            universe_size,
            block_law: BlockLaw::Restaurant,
            x_density: 0.5,
        }
    }
}

struct Draws(ChaCha8Rng);

impl Draws {
    fn below(&mut self, n: usize) -> usize {
        let n = n as u64;
        let zone = (u64::MAX / n) * n;
        loop {
            let v = self.0.next_u64();
            if v < zone {
                return (v % n) as usize;
            }
        }
    }

    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }
}

/// Deterministic in `spec`. Elements are named `1..=n`; the partition is drawn
/// first, then membership of each element in the parameter set in order.
pub fn random_instance(spec: &InstanceSpec) -> ParametricInstance {
    assert!(spec.universe_size >= 1, "universe_size must be at least 1");
    let n = spec.universe_size;
    let universe = Universe::numbered(n).expect("n >= 1");
    let mut draws = Draws(ChaCha8Rng::seed_from_u64(spec.seed));
    let labels: Vec<usize> = match spec.block_law {
        BlockLaw::Restaurant => {
            let mut labels = Vec::with_capacity(n);
            let mut blocks = 0;
            for i in 0..n {
                let r = draws.below(i + 1);
                if r == i {
                    labels.push(blocks);
                    blocks += 1;
                } else {
                    labels.push(labels[r]);
                }
            }
            labels
        }
        BlockLaw::Labels => {
            let k = 1 + draws.below(n);
            (0..n).map(|_| draws.below(k)).collect()
        }
        BlockLaw::Chunks(size) => {
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = draws.below(i + 1);
                order.swap(i, j);
            }
            let mut labels = vec![0; n];
            for (pos, &e) in order.iter().enumerate() {
                labels[e] = pos / size.max(1);
            }
            labels
        }
    };
    let partition = Partition::from_labels(universe.clone(), &labels);
    let x = universe.subset_from_indices((0..n).filter(|_| draws.unit() < spec.x_density));
    ParametricInstance::from_partition(partition, x).expect("same universe")
}

/// The instance restricted to all elements but `drop`; `None` if that would
/// leave the universe empty.
pub fn remove_element(inst: &ParametricInstance, drop: usize) -> Option<ParametricInstance> {
    let old = inst.universe();
    if old.len() <= 1 {
        return None;
    }
    let keep: Vec<usize> = (0..old.len()).filter(|&i| i != drop).collect();
    let universe: Arc<Universe> =
        Universe::new(keep.iter().map(|&i| old.element(i).to_string())).ok()?;
    let map = |s: &Subset| {
        universe.subset_from_indices(
            keep.iter()
                .enumerate()
                .filter(|(_, &i)| s.contains(i))
                .map(|(new, _)| new),
        )
    };
    let blocks: Vec<Subset> = inst
        .partition()
        .blocks()
        .iter()
        .map(map)
        .filter(|b| !b.is_empty())
        .collect();
    let x = map(inst.x());
    let partition = Partition::new(universe.clone(), blocks).ok()?;
    ParametricInstance::from_partition(partition, x).ok()
}

/// Greedily removes universe elements while `violates` keeps holding.
pub fn shrink<F>(inst: &ParametricInstance, violates: F) -> ParametricInstance
where
    F: Fn(&ParametricInstance) -> bool,
{
    let mut current = inst.clone();
    'outer: loop {
        for e in 0..current.universe().len() {
            if let Some(smaller) = remove_element(&current, e) {
                if violates(&smaller) {
                    current = smaller;
                    continue 'outer;
                }
            }
        }
        return current;
    }
}
