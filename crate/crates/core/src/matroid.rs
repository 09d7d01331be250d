//! A matroid kernel built around independence oracles.
//!
//! A [`Matroid`] is a ground set (a [`Subset`] of some universe) plus an
//! [`IndependenceOracle`]. Constructions compose oracles rather than families:
//! restriction wraps its parent, a direct sum wraps both components. Whole
//! families (independent sets, bases, circuits) are materialized on request,
//! and only while the ground set stays within the enumeration cap.
//!
//! Rank goes through the oracle's closed form when it has one, and falls back
//! to a definition-level search otherwise.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::sets::{Partition, SetFamily, Subset, Universe};

/// Largest ground set that whole-family enumeration accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

pub trait IndependenceOracle: Send + Sync + fmt::Debug {
    /// Called only with sets inside the matroid's ground set.
    fn is_independent(&self, set: &Subset) -> bool;

    /// Closed-form rank, if the construction has one.
    fn rank(&self, _set: &Subset) -> Option<usize> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Free,
    PartitionCircuit,
    Parametric,
    Restriction,
    DirectSum,
    ExplicitFamily,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Free => "free",
            Provenance::PartitionCircuit => "partition_circuit",
            Provenance::Parametric => "parametric",
            Provenance::Restriction => "restriction",
            Provenance::DirectSum => "direct_sum",
            Provenance::ExplicitFamily => "explicit_family",
        })
    }
}

#[derive(Debug, Default)]
struct Cache {
    bases: OnceLock<SetFamily>,
    circuits: OnceLock<SetFamily>,
}

#[derive(Clone)]
pub struct Matroid {
    universe: Arc<Universe>,
    ground: Subset,
    oracle: Arc<dyn IndependenceOracle>,
    provenance: Provenance,
    cap: usize,
    cache: Arc<Cache>,
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("ground", &self.ground)
            .field("provenance", &self.provenance)
            .field("oracle", &self.oracle)
            .finish()
    }
}

#[derive(Debug)]
struct FreeOracle;

impl IndependenceOracle for FreeOracle {
    fn is_independent(&self, _set: &Subset) -> bool {
        true
    }

    fn rank(&self, set: &Subset) -> Option<usize> {
        Some(set.len())
    }
}

/// Independent iff no circuit block is swallowed whole.
#[derive(Debug)]
struct PartitionCircuitOracle {
    blocks: Vec<Subset>,
}

impl PartitionCircuitOracle {
    fn contained_blocks(&self, set: &Subset) -> usize {
        self.blocks.iter().filter(|b| b.is_subset(set)).count()
    }
}

impl IndependenceOracle for PartitionCircuitOracle {
    fn is_independent(&self, set: &Subset) -> bool {
        self.blocks.iter().all(|b| !b.is_subset(set))
    }

    fn rank(&self, set: &Subset) -> Option<usize> {
        Some(set.len() - self.contained_blocks(set))
    }
}

#[derive(Debug)]
struct ExplicitOracle {
    family: SetFamily,
}

impl IndependenceOracle for ExplicitOracle {
    fn is_independent(&self, set: &Subset) -> bool {
        self.family.contains(set)
    }
}

#[derive(Debug)]
struct RestrictionOracle {
    parent: Matroid,
}

impl IndependenceOracle for RestrictionOracle {
    fn is_independent(&self, set: &Subset) -> bool {
        self.parent.oracle.is_independent(set)
    }

    fn rank(&self, set: &Subset) -> Option<usize> {
        self.parent.oracle.rank(set)
    }
}

#[derive(Debug)]
struct DirectSumOracle {
    first: Matroid,
    second: Matroid,
}

impl IndependenceOracle for DirectSumOracle {
    fn is_independent(&self, set: &Subset) -> bool {
        self.first
            .oracle
            .is_independent(&(set & &self.first.ground))
            && self
                .second
                .oracle
                .is_independent(&(set & &self.second.ground))
    }

    fn rank(&self, set: &Subset) -> Option<usize> {
        let a = self.first.oracle.rank(&(set & &self.first.ground))?;
        let b = self.second.oracle.rank(&(set & &self.second.ground))?;
        Some(a + b)
    }
}

impl Matroid {
    /// Wraps a caller-supplied oracle. The oracle is trusted to describe a
    /// matroid; [`check_independence_axioms`] on [`Matroid::independents`]
    /// verifies that at desk scale.
    pub fn from_oracle(
        universe: Arc<Universe>,
        ground: Subset,
        oracle: Arc<dyn IndependenceOracle>,
        provenance: Provenance,
    ) -> Result<Matroid> {
        if ground.universe_id() != universe.id() {
            return Err(Error::UniverseMismatch);
        }
        Ok(Matroid {
            universe,
            ground,
            oracle,
            provenance,
            cap: DEFAULT_ENUMERATION_CAP,
            cache: Arc::default(),
        })
    }

    /// Matroid whose independent sets are exactly the members of `family`,
    /// which must be a matroid family over `ground`.
    pub fn from_family(
        universe: Arc<Universe>,
        ground: Subset,
        family: SetFamily,
    ) -> Result<Matroid> {
        if ground.universe_id() != universe.id() || family.universe_id() != universe.id() {
            return Err(Error::UniverseMismatch);
        }
        if family.iter().any(|s| !s.is_subset(&ground)) {
            return Err(Error::NotInGround);
        }
        let verdict = check_independence_axioms(&family);
        if !verdict.holds() {
            return Err(Error::NotMatroid(verdict));
        }
        Matroid::from_oracle(
            universe,
            ground,
            Arc::new(ExplicitOracle { family }),
            Provenance::ExplicitFamily,
        )
    }

    pub fn with_cap(mut self, cap: usize) -> Matroid {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn ground(&self) -> &Subset {
        &self.ground
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn oracle(&self) -> &Arc<dyn IndependenceOracle> {
        &self.oracle
    }

    fn check(&self, x: &Subset) -> Result<()> {
        if x.universe_id() != self.universe.id() {
            return Err(Error::UniverseMismatch);
        }
        Ok(())
    }

    fn check_in_ground(&self, x: &Subset) -> Result<()> {
        self.check(x)?;
        if x.is_subset(&self.ground) {
            Ok(())
        } else {
            Err(Error::NotInGround)
        }
    }

    fn check_cap(&self, size: usize) -> Result<()> {
        if size > self.cap || size >= 64 {
            Err(Error::CapExceeded {
                size,
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }

    /// Sets leaving the ground set are never independent.
    pub fn is_independent(&self, set: &Subset) -> Result<bool> {
        self.check(set)?;
        Ok(set.is_subset(&self.ground) && self.oracle.is_independent(set))
    }

    /// All independent sets, in canonical order.
    pub fn independents(&self) -> Result<SetFamily> {
        self.check_cap(self.ground.len())?;
        Ok(SetFamily::from_sets(
            self.universe.id(),
            self.ground
                .subsets()
                .filter(|s| self.oracle.is_independent(s)),
        ))
    }

    /// Maximal independent sets.
    pub fn bases(&self) -> Result<SetFamily> {
        if let Some(b) = self.cache.bases.get() {
            return Ok(b.clone());
        }
        let family = self.independents()?;
        let outside = |s: &Subset| &self.ground - s;
        let bases = SetFamily::from_sets(
            self.universe.id(),
            family
                .iter()
                .filter(|s| outside(s).iter().all(|u| !family.contains(&s.with(u))))
                .cloned(),
        );
        Ok(self.cache.bases.get_or_init(|| bases).clone())
    }

    /// Minimal dependent sets. A dependent set is minimal exactly when each
    /// one-element deletion is independent, since independence is closed
    /// under subsets.
    pub fn circuits(&self) -> Result<SetFamily> {
        if let Some(c) = self.cache.circuits.get() {
            return Ok(c.clone());
        }
        let family = self.independents()?;
        let circuits = SetFamily::from_sets(
            self.universe.id(),
            self.ground
                .subsets()
                .filter(|s| !family.contains(s))
                .filter(|s| s.iter().all(|u| family.contains(&s.without(u)))),
        );
        Ok(self.cache.circuits.get_or_init(|| circuits).clone())
    }

    /// Rank of `x ⊆ ground`, via the closed form when one exists.
    pub fn rank(&self, x: &Subset) -> Result<usize> {
        self.check_in_ground(x)?;
        match self.oracle.rank(x) {
            Some(r) => Ok(r),
            None => self.rank_by_search(x),
        }
    }

    /// Size of a largest independent subset of `x`, found by trying subsets
    /// of `x` from the largest size down. Capped on `|x|`.
    pub fn rank_by_search(&self, x: &Subset) -> Result<usize> {
        self.check_in_ground(x)?;
        self.check_cap(x.len())?;
        Ok((0..=x.len())
            .rev()
            .find(|&k| x.subsets_of_size(k).any(|s| self.oracle.is_independent(&s)))
            .unwrap_or(0))
    }

    /// `{u ∈ ground : rank(x ∪ {u}) = rank(x)}`.
    pub fn closure(&self, x: &Subset) -> Result<Subset> {
        self.closure_with(x, |s| self.rank(s))
    }

    pub fn closure_by_search(&self, x: &Subset) -> Result<Subset> {
        self.closure_with(x, |s| self.rank_by_search(s))
    }

    fn closure_with<F>(&self, x: &Subset, rank: F) -> Result<Subset>
    where
        F: Fn(&Subset) -> Result<usize>,
    {
        self.check_in_ground(x)?;
        let base = rank(x)?;
        let mut out = x.clone();
        for u in (&self.ground - x).iter() {
            if rank(&x.with(u))? == base {
                out.insert(u);
            }
        }
        Ok(out)
    }

    /// `M|x`: ground `x`, independent sets of `self` inside `x`.
    pub fn restriction(&self, x: &Subset) -> Result<Matroid> {
        self.check_in_ground(x)?;
        Ok(Matroid {
            universe: self.universe.clone(),
            ground: x.clone(),
            oracle: Arc::new(RestrictionOracle {
                parent: self.clone(),
            }),
            provenance: Provenance::Restriction,
            cap: self.cap,
            cache: Arc::default(),
        })
    }
}

/// Every subset of `ground` is independent. An empty ground gives the
/// matroid whose only independent set is `{}`.
pub fn free_matroid(universe: Arc<Universe>, ground: Subset) -> Result<Matroid> {
    Matroid::from_oracle(universe, ground, Arc::new(FreeOracle), Provenance::Free)
}

/// The matroid on the whole universe whose circuits are the blocks of `p`.
pub fn partition_circuit_matroid(p: &Partition) -> Matroid {
    let universe = p.universe().clone();
    let ground = universe.full_set();
    Matroid::from_oracle(
        universe,
        ground,
        Arc::new(PartitionCircuitOracle {
            blocks: p.blocks().to_vec(),
        }),
        Provenance::PartitionCircuit,
    )
    .expect("partition ground set shares its universe")
}

/// Partition-circuit matroid on a ground set smaller than the universe.
/// `blocks` must be disjoint, nonempty and cover `ground` exactly.
pub fn partition_circuit_matroid_on(
    universe: Arc<Universe>,
    ground: Subset,
    blocks: Vec<Subset>,
) -> Result<Matroid> {
    let mut covered = universe.empty_set();
    for b in &blocks {
        if b.universe_id() != universe.id() {
            return Err(Error::UniverseMismatch);
        }
        if b.is_empty() || b.intersects(&covered) {
            return Err(Error::InvalidPartition(
                "blocks must be nonempty and pairwise disjoint".into(),
            ));
        }
        covered = &covered | b;
    }
    if covered != ground {
        return Err(Error::InvalidPartition(
            "blocks must cover the ground set exactly".into(),
        ));
    }
    Matroid::from_oracle(
        universe,
        ground,
        Arc::new(PartitionCircuitOracle { blocks }),
        Provenance::PartitionCircuit,
    )
}

/// `M1 ⊕ M2` over disjoint ground sets of a common universe.
pub fn direct_sum(first: &Matroid, second: &Matroid) -> Result<Matroid> {
    if first.universe.id() != second.universe.id() {
        return Err(Error::UniverseMismatch);
    }
    if first.ground.intersects(&second.ground) {
        return Err(Error::OverlappingGrounds);
    }
    Ok(Matroid {
        universe: first.universe.clone(),
        ground: &first.ground | &second.ground,
        oracle: Arc::new(DirectSumOracle {
            first: first.clone(),
            second: second.clone(),
        }),
        provenance: Provenance::DirectSum,
        cap: first.cap.min(second.cap),
        cache: Arc::default(),
    })
}

/// Result of checking the three independence axioms on an explicit family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomVerdict {
    Holds,
    /// The empty set is missing.
    EmptySetMissing,
    /// `member` is in the family but its subset `missing` is not.
    NotHereditary {
        member: Subset,
        missing: Subset,
    },
    /// `|smaller| < |larger|`, yet no element of `larger − smaller` extends
    /// `smaller` inside the family.
    NoAugmentation {
        smaller: Subset,
        larger: Subset,
    },
}

impl AxiomVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, AxiomVerdict::Holds)
    }

    /// `I1`, `I2` or `I3` for a violation.
    pub fn axiom(&self) -> Option<&'static str> {
        match self {
            AxiomVerdict::Holds => None,
            AxiomVerdict::EmptySetMissing => Some("I1"),
            AxiomVerdict::NotHereditary { .. } => Some("I2"),
            AxiomVerdict::NoAugmentation { .. } => Some("I3"),
        }
    }
}

impl fmt::Display for AxiomVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomVerdict::Holds => write!(f, "holds"),
            AxiomVerdict::EmptySetMissing => write!(f, "I1 violated: empty set missing"),
            AxiomVerdict::NotHereditary { member, missing } => {
                write!(
                    f,
                    "I2 violated: {member:?} present, subset {missing:?} missing"
                )
            }
            AxiomVerdict::NoAugmentation { smaller, larger } => {
                write!(
                    f,
                    "I3 violated: {smaller:?} cannot be augmented from {larger:?}"
                )
            }
        }
    }
}

/// Checks I1, I2, I3 in that order and reports the first violation.
///
/// I2 only inspects one-element deletions: if those are always present, all
/// subsets are present by induction. I3 tries every pair of members of
/// different sizes.
pub fn check_independence_axioms(f: &SetFamily) -> AxiomVerdict {
    // canonical order puts the empty set first when present
    if !f.iter().next().is_some_and(Subset::is_empty) {
        return AxiomVerdict::EmptySetMissing;
    }
    for member in f {
        let mut deletions: Vec<Subset> = member.iter().map(|u| member.without(u)).collect();
        deletions.sort();
        if let Some(missing) = deletions.into_iter().find(|d| !f.contains(d)) {
            return AxiomVerdict::NotHereditary {
                member: member.clone(),
                missing,
            };
        }
    }
    for smaller in f {
        for larger in f.iter().filter(|l| l.len() > smaller.len()) {
            let augmentable = (larger - smaller)
                .iter()
                .any(|u| f.contains(&smaller.with(u)));
            if !augmentable {
                return AxiomVerdict::NoAugmentation {
                    smaller: smaller.clone(),
                    larger: larger.clone(),
                };
            }
        }
    }
    AxiomVerdict::Holds
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uni(n: usize) -> Arc<Universe> {
        Universe::numbered(n).unwrap()
    }

    fn fam(u: &Universe, sets: &[&[&str]]) -> SetFamily {
        SetFamily::from_sets(u.id(), sets.iter().map(|s| u.subset(*s).unwrap()))
    }

    #[test]
    fn axiom_examples() {
        let u = uni(3);
        assert!(check_independence_axioms(&fam(&u, &[&[], &["1"], &["2"]])).holds());
        assert_eq!(
            check_independence_axioms(&SetFamily::new(u.id())),
            AxiomVerdict::EmptySetMissing
        );
        let v = check_independence_axioms(&fam(&u, &[&[], &["1", "2"]]));
        assert_eq!(
            v,
            AxiomVerdict::NotHereditary {
                member: u.subset(["1", "2"]).unwrap(),
                missing: u.subset(["1"]).unwrap(),
            }
        );
        assert_eq!(v.axiom(), Some("I2"));
    }

    #[test]
    fn augmentation_failure_is_reported_with_witness() {
        let u = uni(3);
        // {1} cannot grow toward {2, 3}
        let f = fam(&u, &[&[], &["1"], &["2"], &["3"], &["2", "3"]]);
        let v = check_independence_axioms(&f);
        assert_eq!(
            v,
            AxiomVerdict::NoAugmentation {
                smaller: u.subset(["1"]).unwrap(),
                larger: u.subset(["2", "3"]).unwrap(),
            }
        );
        // the witness reproduces
        if let AxiomVerdict::NoAugmentation { smaller, larger } = v {
            assert!((&larger - &smaller)
                .iter()
                .all(|x| !f.contains(&smaller.with(x))));
        }
    }

    #[test]
    fn free_matroid_basics() {
        let u = uni(3);
        let m = free_matroid(u.clone(), u.full_set()).unwrap();
        assert!(m.is_independent(&u.full_set()).unwrap());
        assert_eq!(m.rank(&u.full_set()).unwrap(), 3);
        assert_eq!(
            m.bases().unwrap(),
            SetFamily::from_sets(u.id(), [u.full_set()])
        );
        assert!(m.circuits().unwrap().is_empty());
        let x = u.subset(["2"]).unwrap();
        assert_eq!(m.closure(&x).unwrap(), x);
        assert_eq!(m.rank_by_search(&x).unwrap(), 1);

        let empty = free_matroid(u.clone(), u.empty_set()).unwrap();
        assert_eq!(u.format_family(&empty.bases().unwrap()), "{{}}");
        assert_eq!(empty.rank(&u.empty_set()).unwrap(), 0);
        assert!(empty.circuits().unwrap().is_empty());
    }

    #[test]
    fn only_empty_independent() {
        let u = uni(2);
        let m = Matroid::from_family(u.clone(), u.full_set(), fam(&u, &[&[]])).unwrap();
        assert_eq!(u.format_family(&m.bases().unwrap()), "{{}}");
        assert_eq!(u.format_family(&m.circuits().unwrap()), "{{1}, {2}}");
        assert_eq!(m.closure(&u.empty_set()).unwrap(), u.full_set());
    }

    #[test]
    fn explicit_family_must_be_a_matroid() {
        let u = uni(2);
        let bad = fam(&u, &[&[], &["1", "2"]]);
        assert!(matches!(
            Matroid::from_family(u.clone(), u.full_set(), bad),
            Err(Error::NotMatroid(_))
        ));
    }

    #[test]
    fn partition_circuit_examples() {
        let u = uni(3);
        let p = Partition::from_ids(u.clone(), &[vec!["1", "2"], vec!["3"]]).unwrap();
        let m = partition_circuit_matroid(&p);
        assert_eq!(
            u.format_family(&m.independents().unwrap()),
            "{{}, {1}, {2}}"
        );

        let m = partition_circuit_matroid(&Partition::singletons(u.clone()));
        assert_eq!(u.format_family(&m.independents().unwrap()), "{{}}");

        let m = partition_circuit_matroid(&Partition::single_block(u.clone()));
        assert_eq!(m.rank(&u.full_set()).unwrap(), 2);
        assert_eq!(m.rank_by_search(&u.full_set()).unwrap(), 2);

        let u4 = uni(4);
        let p = Partition::from_ids(u4.clone(), &[vec!["1", "2"], vec!["3", "4"]]).unwrap();
        let m = partition_circuit_matroid(&p);
        assert_eq!(u4.format_family(&m.circuits().unwrap()), "{{1, 2}, {3, 4}}");
    }

    #[test]
    fn restriction_examples() {
        let u = uni(3);
        let m = free_matroid(u.clone(), u.full_set()).unwrap();
        let x = u.subset(["1", "2"]).unwrap();
        let r = m.restriction(&x).unwrap();
        assert_eq!(r.provenance(), Provenance::Restriction);
        assert_eq!(r.independents().unwrap().len(), 4);
        assert!(!r.is_independent(&u.subset(["3"]).unwrap()).unwrap());
        assert_eq!(
            m.restriction(&u.full_set())
                .unwrap()
                .independents()
                .unwrap(),
            m.independents().unwrap()
        );
        let small = free_matroid(u.clone(), x.clone()).unwrap();
        assert_eq!(
            small.restriction(&u.full_set()).unwrap_err(),
            Error::NotInGround
        );
    }

    #[test]
    fn direct_sum_examples() {
        let u = uni(5);
        let pc = partition_circuit_matroid_on(
            u.clone(),
            u.subset(["3", "4"]).unwrap(),
            vec![u.subset(["3", "4"]).unwrap()],
        )
        .unwrap();
        let free = free_matroid(u.clone(), u.subset(["1", "2", "5"]).unwrap()).unwrap();
        let sum = direct_sum(&pc, &free).unwrap();
        let block = u.subset(["3", "4"]).unwrap();
        // expand {I1 ∪ I2} by hand over both component families
        let mut expected = SetFamily::new(u.id());
        for i1 in pc.independents().unwrap().iter() {
            for i2 in free.independents().unwrap().iter() {
                expected.insert(i1 | i2);
            }
        }
        assert_eq!(sum.independents().unwrap(), expected);
        for s in u.power_set() {
            assert_eq!(sum.is_independent(&s).unwrap(), !block.is_subset(&s));
        }
        assert_eq!(
            sum.circuits().unwrap(),
            pc.circuits().unwrap().union(&free.circuits().unwrap())
        );
        assert_eq!(sum.rank(&u.full_set()).unwrap(), 4);

        let none = free_matroid(u.clone(), u.empty_set()).unwrap();
        let same = direct_sum(&sum, &none).unwrap();
        assert_eq!(same.independents().unwrap(), sum.independents().unwrap());

        assert_eq!(
            direct_sum(&sum, &free).unwrap_err(),
            Error::OverlappingGrounds
        );
    }

    #[test]
    fn cap_is_enforced() {
        let u = uni(6);
        let m = free_matroid(u.clone(), u.full_set()).unwrap().with_cap(5);
        assert_eq!(
            m.independents().unwrap_err(),
            Error::CapExceeded { size: 6, cap: 5 }
        );
        // closed-form rank ignores the cap
        assert_eq!(m.rank(&u.full_set()).unwrap(), 6);
        assert!(m.rank_by_search(&u.full_set()).is_err());
    }

    #[test]
    fn partition_circuit_on_validates_blocks() {
        let u = uni(3);
        let g = u.subset(["1", "2"]).unwrap();
        assert!(
            partition_circuit_matroid_on(u.clone(), g.clone(), vec![u.subset(["1"]).unwrap()])
                .is_err()
        );
        assert!(partition_circuit_matroid_on(
            u.clone(),
            g.clone(),
            vec![u.subset(["1", "2"]).unwrap(), u.subset(["2"]).unwrap()]
        )
        .is_err());
        // empty ground with no blocks is allowed
        let m = partition_circuit_matroid_on(u.clone(), u.empty_set(), vec![]).unwrap();
        assert_eq!(m.rank(&u.empty_set()).unwrap(), 0);
    }
}
