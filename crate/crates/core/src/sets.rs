//! Finite universes and the set-level vocabulary everything else is built on.
//!
//! A [`Universe`] fixes an ordered list of opaque string identifiers and assigns
//! them dense indices `0..n`. Every [`Subset`] is a bitset over those indices,
//! tagged with the identity of its universe so that mixing sets from unrelated
//! universes is caught at the API boundary.
//!
//! Subsets order canonically: first by cardinality, then lexicographically by
//! their ascending index lists. [`SetFamily`] keeps members in that order, which
//! is what makes every printed family reproducible.

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{BitAnd, BitOr, Sub};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Identity of a universe: its size plus a digest of its element list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniverseId {
    len: usize,
    digest: u64,
}

#[derive(Debug, Clone)]
pub struct Universe {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    id: UniverseId,
}

impl Universe {
    pub fn new<I, S>(elements: I) -> Result<Arc<Universe>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        if elements.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let mut hasher = DefaultHasher::new();
        elements.hash(&mut hasher);
        let id = UniverseId {
            len: elements.len(),
            digest: hasher.finish(),
        };
        Ok(Arc::new(Universe {
            elements,
            index,
            id,
        }))
    }

    /// The universe `{1, 2, ..., n}`.
    pub fn numbered(n: usize) -> Result<Arc<Universe>> {
        Universe::new((1..=n).map(|i| i.to_string()))
    }

    pub fn id(&self) -> UniverseId {
        self.id
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &str {
        &self.elements[index]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn empty_set(&self) -> Subset {
        Subset {
            universe: self.id,
            bits: FixedBitSet::with_capacity(self.len()),
        }
    }

    pub fn full_set(&self) -> Subset {
        let mut s = self.empty_set();
        s.bits.insert_range(..);
        s
    }

    /// Builds a subset from element identifiers. Repeated identifiers are
    /// harmless; unknown ones are an error.
    pub fn subset<I, S>(&self, ids: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut s = self.empty_set();
        for id in ids {
            s.bits.insert(self.index_of(id.as_ref())?);
        }
        Ok(s)
    }

    pub fn subset_from_indices<I: IntoIterator<Item = usize>>(&self, indices: I) -> Subset {
        let mut s = self.empty_set();
        for i in indices {
            s.bits.insert(i);
        }
        s
    }

    /// Bit `i` of `mask` selects element `i`. Only the low `len()` bits are read.
    pub fn subset_from_mask(&self, mask: u64) -> Subset {
        let mut s = self.empty_set();
        for i in 0..self.len().min(64) {
            if mask >> i & 1 == 1 {
                s.bits.insert(i);
            }
        }
        s
    }

    /// Every subset of the universe, in mask order. Panics above 63 elements.
    pub fn power_set(&self) -> impl Iterator<Item = Subset> {
        self.full_set().subsets()
    }

    pub fn ids<'a>(&'a self, s: &'a Subset) -> impl Iterator<Item = &'a str> + 'a {
        s.iter().map(move |i| self.element(i))
    }

    /// `{a, b, c}` with elements in universe order; `{}` for the empty set.
    pub fn format_subset(&self, s: &Subset) -> String {
        let ids: Vec<&str> = self.ids(s).collect();
        format!("{{{}}}", ids.join(", "))
    }

    /// `{{}, {1}, {2}}` in canonical family order.
    pub fn format_family(&self, f: &SetFamily) -> String {
        let sets: Vec<String> = f.iter().map(|s| self.format_subset(s)).collect();
        format!("{{{}}}", sets.join(", "))
    }

    pub fn format_pairs(&self, r: &BinaryRelation) -> String {
        let pairs: Vec<String> = r
            .pairs()
            .iter()
            .map(|&(a, b)| format!("({}, {})", self.element(a), self.element(b)))
            .collect();
        format!("{{{}}}", pairs.join(", "))
    }

    pub fn format_partition(&self, p: &Partition) -> String {
        let blocks: Vec<String> = p.blocks().iter().map(|b| self.format_subset(b)).collect();
        format!("{{{}}}", blocks.join(", "))
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Universe {}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    universe: UniverseId,
    bits: FixedBitSet,
}

impl Subset {
    pub fn universe_id(&self) -> UniverseId {
        self.universe
    }

    /// Size of the enclosing universe.
    pub fn universe_len(&self) -> usize {
        self.bits.len()
    }

    pub fn same_universe(&self, other: &Subset) -> bool {
        self.universe == other.universe
    }

    pub fn check_universe(&self, other: &Subset) -> Result<()> {
        if self.same_universe(other) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits.contains(index)
    }

    pub fn insert(&mut self, index: usize) {
        self.bits.insert(index);
    }

    pub fn remove(&mut self, index: usize) {
        self.bits.set(index, false);
    }

    pub fn with(&self, index: usize) -> Subset {
        let mut s = self.clone();
        s.insert(index);
        s
    }

    pub fn without(&self, index: usize) -> Subset {
        let mut s = self.clone();
        s.remove(index);
        s
    }

    /// Ascending element indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        debug_assert!(self.same_universe(other));
        self.bits.is_subset(&other.bits)
    }

    pub fn is_proper_subset(&self, other: &Subset) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        debug_assert!(self.same_universe(other));
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersects(&self, other: &Subset) -> bool {
        !self.is_disjoint(other)
    }

    pub fn complement(&self) -> Subset {
        let mut s = self.clone();
        s.bits.toggle_range(..);
        s
    }

    /// Every subset of `self`. Subset `k` in the iteration selects the members
    /// of `self` whose rank (position in ascending order) is a set bit of `k`.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        let members = self.indices();
        assert!(members.len() < 64, "too many members to enumerate subsets");
        let empty = Subset {
            universe: self.universe,
            bits: FixedBitSet::with_capacity(self.universe_len()),
        };
        (0..1u64 << members.len()).map(move |mask| {
            let mut s = empty.clone();
            for (rank, &i) in members.iter().enumerate() {
                if mask >> rank & 1 == 1 {
                    s.bits.insert(i);
                }
            }
            s
        })
    }

    /// Subsets of `self` with exactly `k` members, in canonical order.
    pub fn subsets_of_size(&self, k: usize) -> impl Iterator<Item = Subset> {
        let members = self.indices();
        let empty = Subset {
            universe: self.universe,
            bits: FixedBitSet::with_capacity(self.universe_len()),
        };
        let n = members.len();
        let mut picks: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
        std::iter::from_fn(move || {
            let current = picks.as_mut()?;
            let mut s = empty.clone();
            for &p in current.iter() {
                s.bits.insert(members[p]);
            }
            // advance to the next k-combination in lexicographic order
            let mut i = k;
            loop {
                if i == 0 {
                    picks = None;
                    break;
                }
                i -= 1;
                if current[i] < n - k + i {
                    current[i] += 1;
                    for j in i + 1..k {
                        current[j] = current[j - 1] + 1;
                    }
                    break;
                }
            }
            Some(s)
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.universe.cmp(&other.universe))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitAnd for &Subset {
    type Output = Subset;

    fn bitand(self, rhs: &Subset) -> Subset {
        debug_assert!(self.same_universe(rhs));
        let mut s = self.clone();
        s.bits.intersect_with(&rhs.bits);
        s
    }
}

impl BitOr for &Subset {
    type Output = Subset;

    fn bitor(self, rhs: &Subset) -> Subset {
        debug_assert!(self.same_universe(rhs));
        let mut s = self.clone();
        s.bits.union_with(&rhs.bits);
        s
    }
}

impl Sub for &Subset {
    type Output = Subset;

    fn sub(self, rhs: &Subset) -> Subset {
        debug_assert!(self.same_universe(rhs));
        let mut s = self.clone();
        s.bits.difference_with(&rhs.bits);
        s
    }
}

/// A deduplicated collection of subsets of one universe, kept in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    universe: UniverseId,
    sets: BTreeSet<Subset>,
}

impl SetFamily {
    pub fn new(universe: UniverseId) -> SetFamily {
        SetFamily {
            universe,
            sets: BTreeSet::new(),
        }
    }

    /// Panics if a member belongs to another universe.
    pub fn from_sets<I: IntoIterator<Item = Subset>>(universe: UniverseId, sets: I) -> SetFamily {
        let mut f = SetFamily::new(universe);
        for s in sets {
            f.insert(s);
        }
        f
    }

    pub fn universe_id(&self) -> UniverseId {
        self.universe
    }

    pub fn insert(&mut self, s: Subset) -> bool {
        assert_eq!(s.universe, self.universe, "subset from a foreign universe");
        self.sets.insert(s)
    }

    pub fn contains(&self, s: &Subset) -> bool {
        self.sets.contains(s)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subset> + '_ {
        self.sets.iter()
    }

    pub fn union(&self, other: &SetFamily) -> SetFamily {
        let mut f = self.clone();
        for s in other.iter() {
            f.insert(s.clone());
        }
        f
    }

    /// True when no member is a proper subset of another.
    pub fn is_antichain(&self) -> bool {
        self.iter()
            .all(|a| self.iter().all(|b| !a.is_proper_subset(b)))
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.sets.iter()).finish()
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a Subset;
    type IntoIter = std::collections::btree_set::Iter<'a, Subset>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    Max,
    Min,
}

/// `Max` keeps members with no proper superset in `f`; `Min` keeps members
/// with no proper subset in `f`. Pairwise scan, quadratic in `|f|`.
pub fn extremal_sets(f: &SetFamily, mode: Extremal) -> SetFamily {
    let keep = |a: &Subset| match mode {
        Extremal::Max => f.iter().all(|b| !a.is_proper_subset(b)),
        Extremal::Min => f.iter().all(|b| !b.is_proper_subset(a)),
    };
    SetFamily::from_sets(f.universe, f.iter().filter(|a| keep(a)).cloned())
}

/// A set of ordered pairs of element indices over one universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryRelation {
    universe: Arc<Universe>,
    pairs: BTreeSet<(usize, usize)>,
}

impl BinaryRelation {
    pub fn new<I>(universe: Arc<Universe>, pairs: I) -> Result<BinaryRelation>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = universe.len();
        let mut set = BTreeSet::new();
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            set.insert((a, b));
        }
        Ok(BinaryRelation {
            universe,
            pairs: set,
        })
    }

    pub fn from_ids<'a, I>(universe: Arc<Universe>, pairs: I) -> Result<BinaryRelation>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let pairs = pairs
            .into_iter()
            .map(|(a, b)| Ok((universe.index_of(a)?, universe.index_of(b)?)))
            .collect::<Result<Vec<_>>>()?;
        BinaryRelation::new(universe, pairs)
    }

    pub fn identity(universe: Arc<Universe>) -> BinaryRelation {
        let pairs = (0..universe.len()).map(|i| (i, i)).collect();
        BinaryRelation { universe, pairs }
    }

    pub fn complete(universe: Arc<Universe>) -> BinaryRelation {
        let n = universe.len();
        let pairs = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
        BinaryRelation { universe, pairs }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Successor set `{y : (a, y) ∈ r}`.
    pub fn successors(&self, a: usize) -> Subset {
        self.universe
            .subset_from_indices(self.pairs.range((a, 0)..=(a, usize::MAX)).map(|&(_, b)| b))
    }

    fn check_set(&self, x: &Subset) -> Result<()> {
        if x.universe_id() == self.universe.id() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }
}

/// Keeps the pairs whose first component lies in `x`. The universe is unchanged.
pub fn restrict_relation(r: &BinaryRelation, x: &Subset) -> Result<BinaryRelation> {
    r.check_set(x)?;
    Ok(BinaryRelation {
        universe: r.universe.clone(),
        pairs: r
            .pairs
            .iter()
            .copied()
            .filter(|&(a, _)| x.contains(a))
            .collect(),
    })
}

/// Outcome of an equivalence check. Violations name the first failing
/// property, tried in the order reflexive, symmetric, transitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceVerdict {
    Holds,
    /// `(a, a)` is missing.
    NotReflexive {
        missing: (usize, usize),
    },
    /// `(a, b)` is present but `(b, a)` is not.
    NotSymmetric {
        pair: (usize, usize),
    },
    /// `(a, via)` and `(via, c)` are present, `(a, c)` is missing.
    NotTransitive {
        missing: (usize, usize),
        via: usize,
    },
}

impl EquivalenceVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, EquivalenceVerdict::Holds)
    }
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EquivalenceVerdict::Holds => write!(f, "holds"),
            EquivalenceVerdict::NotReflexive { missing: (a, _) } => {
                write!(f, "not reflexive: (#{a}, #{a}) missing")
            }
            EquivalenceVerdict::NotSymmetric { pair: (a, b) } => {
                write!(
                    f,
                    "not symmetric: (#{a}, #{b}) present, (#{b}, #{a}) missing"
                )
            }
            EquivalenceVerdict::NotTransitive {
                missing: (a, c),
                via,
            } => write!(
                f,
                "not transitive: (#{a}, #{via}) and (#{via}, #{c}) present, (#{a}, #{c}) missing"
            ),
        }
    }
}

/// Equivalence on the whole universe.
pub fn check_equivalence(r: &BinaryRelation) -> EquivalenceVerdict {
    check_equivalence_on(r, &r.universe.full_set())
}

/// Equivalence on the ground set `ground`: reflexive over `ground`, and
/// symmetric and transitive over the pairs of `r`. A pair leaving `ground`
/// therefore shows up as a symmetry violation whenever `r` only holds pairs
/// starting in `ground`.
pub fn check_equivalence_on(r: &BinaryRelation, ground: &Subset) -> EquivalenceVerdict {
    for a in ground.iter() {
        if !r.contains(a, a) {
            return EquivalenceVerdict::NotReflexive { missing: (a, a) };
        }
    }
    for &(a, b) in &r.pairs {
        if !r.contains(b, a) {
            return EquivalenceVerdict::NotSymmetric { pair: (a, b) };
        }
    }
    for &(a, b) in &r.pairs {
        for c in r.successors(b).iter() {
            if !r.contains(a, c) {
                return EquivalenceVerdict::NotTransitive {
                    missing: (a, c),
                    via: b,
                };
            }
        }
    }
    EquivalenceVerdict::Holds
}

/// Disjoint nonempty blocks covering the universe, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    universe: Arc<Universe>,
    blocks: Vec<Subset>,
    owner: Vec<usize>,
}

impl Partition {
    pub fn new(universe: Arc<Universe>, blocks: Vec<Subset>) -> Result<Partition> {
        let n = universe.len();
        let mut owner = vec![usize::MAX; n];
        for (bi, b) in blocks.iter().enumerate() {
            if b.universe_id() != universe.id() {
                return Err(Error::UniverseMismatch);
            }
            if b.is_empty() {
                return Err(Error::InvalidPartition(format!("block {bi} is empty")));
            }
            for i in b.iter() {
                if owner[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element `{}` appears in more than one block",
                        universe.element(i)
                    )));
                }
                owner[i] = bi;
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element `{}` is not covered by any block",
                universe.element(i)
            )));
        }
        Ok(Partition::canonical(universe, blocks))
    }

    pub fn from_ids<B, S>(universe: Arc<Universe>, blocks: &[B]) -> Result<Partition>
    where
        B: AsRef<[S]>,
        S: AsRef<str>,
    {
        let blocks = blocks
            .iter()
            .map(|b| universe.subset(b.as_ref().iter()))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(universe, blocks)
    }

    /// Element `i` goes to the block labelled `labels[i]`; label values are
    /// arbitrary.
    pub fn from_labels(universe: Arc<Universe>, labels: &[usize]) -> Partition {
        assert_eq!(labels.len(), universe.len());
        let mut by_label: Vec<(usize, Subset)> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match by_label.iter_mut().find(|(label, _)| *label == l) {
                Some((_, s)) => s.insert(i),
                None => by_label.push((l, universe.subset_from_indices([i]))),
            }
        }
        Partition::canonical(universe, by_label.into_iter().map(|(_, s)| s).collect())
    }

    pub fn singletons(universe: Arc<Universe>) -> Partition {
        let labels: Vec<usize> = (0..universe.len()).collect();
        Partition::from_labels(universe, &labels)
    }

    pub fn single_block(universe: Arc<Universe>) -> Partition {
        let labels = vec![0; universe.len()];
        Partition::from_labels(universe, &labels)
    }

    fn canonical(universe: Arc<Universe>, mut blocks: Vec<Subset>) -> Partition {
        blocks.sort_by_key(|b| b.first());
        let mut owner = vec![0; universe.len()];
        for (bi, b) in blocks.iter().enumerate() {
            for i in b.iter() {
                owner[i] = bi;
            }
        }
        Partition {
            universe,
            blocks,
            owner,
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// The block containing element `i`, i.e. its equivalence class.
    pub fn class_of(&self, i: usize) -> &Subset {
        &self.blocks[self.owner[i]]
    }

    pub fn block_index_of(&self, i: usize) -> usize {
        self.owner[i]
    }

    /// True when every block of `self` lies inside some block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks
            .iter()
            .all(|b| b.is_subset(coarser.class_of(b.first().expect("nonempty block"))))
    }
}

/// The classes `[x]_R` of an equivalence relation.
pub fn partition_from_relation(r: &BinaryRelation) -> Result<Partition> {
    let verdict = check_equivalence(r);
    if !verdict.holds() {
        return Err(Error::NotEquivalence(verdict));
    }
    let n = r.universe.len();
    let mut seen = r.universe.empty_set();
    let mut blocks = Vec::new();
    for i in 0..n {
        if !seen.contains(i) {
            let class = r.successors(i);
            seen = &seen | &class;
            blocks.push(class);
        }
    }
    Ok(Partition::canonical(r.universe.clone(), blocks))
}

/// Union of `block × block` over all blocks.
pub fn relation_from_partition(p: &Partition) -> BinaryRelation {
    let pairs = p
        .blocks
        .iter()
        .flat_map(|b| b.iter().flat_map(move |a| b.iter().map(move |c| (a, c))))
        .collect();
    BinaryRelation {
        universe: p.universe.clone(),
        pairs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize) -> Arc<Universe> {
        Universe::numbered(n).unwrap()
    }

    #[test]
    fn universe_rejects_duplicates_and_empty() {
        assert_eq!(
            Universe::new(["a", "b", "a"]).unwrap_err(),
            Error::DuplicateElement("a".into())
        );
        assert_eq!(
            Universe::new(Vec::<String>::new()).unwrap_err(),
            Error::EmptyUniverse
        );
    }

    #[test]
    fn restriction_of_first_worked_relation() {
        let uni = u(5);
        let r = BinaryRelation::from_ids(
            uni.clone(),
            [
                ("1", "2"),
                ("1", "3"),
                ("1", "5"),
                ("2", "3"),
                ("3", "1"),
                ("3", "3"),
                ("4", "5"),
                ("5", "2"),
            ],
        )
        .unwrap();
        let x = uni.subset(["3", "5"]).unwrap();
        let restricted = restrict_relation(&r, &x).unwrap();
        assert_eq!(uni.format_pairs(&restricted), "{(3, 1), (3, 3), (5, 2)}");
        assert!(restrict_relation(&r, &uni.empty_set()).unwrap().is_empty());
        assert_eq!(restrict_relation(&r, &uni.full_set()).unwrap(), r);
    }

    #[test]
    fn restriction_rejects_foreign_subset() {
        let r = BinaryRelation::identity(u(3));
        let other = u(4).full_set();
        assert_eq!(restrict_relation(&r, &other), Err(Error::UniverseMismatch));
    }

    #[test]
    fn equivalence_verdicts() {
        let uni = u(3);
        let r = BinaryRelation::from_ids(
            uni.clone(),
            [("1", "1"), ("1", "2"), ("2", "1"), ("2", "2"), ("3", "3")],
        )
        .unwrap();
        assert!(check_equivalence(&r).holds());
        assert!(check_equivalence(&BinaryRelation::identity(uni.clone())).holds());

        let uni2 = u(2);
        let r = BinaryRelation::from_ids(uni2.clone(), [("1", "2")]).unwrap();
        assert_eq!(
            check_equivalence(&r),
            EquivalenceVerdict::NotReflexive { missing: (0, 0) }
        );

        let r = BinaryRelation::from_ids(uni2, [("1", "1"), ("2", "2"), ("1", "2")]).unwrap();
        assert_eq!(
            check_equivalence(&r),
            EquivalenceVerdict::NotSymmetric { pair: (0, 1) }
        );

        let r = BinaryRelation::from_ids(
            uni,
            [
                ("1", "1"),
                ("2", "2"),
                ("3", "3"),
                ("1", "2"),
                ("2", "1"),
                ("2", "3"),
                ("3", "2"),
            ],
        )
        .unwrap();
        assert_eq!(
            check_equivalence(&r),
            EquivalenceVerdict::NotTransitive {
                missing: (0, 2),
                via: 1
            }
        );
    }

    #[test]
    fn partitions_from_relations() {
        let uni = u(3);
        let r = BinaryRelation::from_ids(
            uni.clone(),
            [("1", "1"), ("1", "2"), ("2", "1"), ("2", "2"), ("3", "3")],
        )
        .unwrap();
        let p = partition_from_relation(&r).unwrap();
        assert_eq!(uni.format_partition(&p), "{{1, 2}, {3}}");
        assert_eq!(relation_from_partition(&p), r);

        let ab = Universe::new(["a", "b"]).unwrap();
        let p = partition_from_relation(&BinaryRelation::identity(ab.clone())).unwrap();
        assert_eq!(ab.format_partition(&p), "{{a}, {b}}");

        let p = partition_from_relation(&BinaryRelation::complete(uni.clone())).unwrap();
        assert_eq!(uni.format_partition(&p), "{{1, 2, 3}}");

        let bad = BinaryRelation::from_ids(uni, [("1", "2")]).unwrap();
        assert!(matches!(
            partition_from_relation(&bad),
            Err(Error::NotEquivalence(
                EquivalenceVerdict::NotReflexive { .. }
            ))
        ));
    }

    #[test]
    fn relation_from_degenerate_partitions() {
        let uni = u(3);
        assert_eq!(
            relation_from_partition(&Partition::singletons(uni.clone())),
            BinaryRelation::identity(uni.clone())
        );
        assert_eq!(
            relation_from_partition(&Partition::single_block(uni.clone())),
            BinaryRelation::complete(uni)
        );
    }

    #[test]
    fn partition_validation() {
        let uni = u(3);
        assert!(matches!(
            Partition::from_ids(uni.clone(), &[vec!["1"], vec!["1", "2"]]),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            Partition::from_ids(uni.clone(), &[vec!["1"], vec!["2"]]),
            Err(Error::InvalidPartition(_))
        ));
        let p = Partition::from_ids(uni.clone(), &[vec!["3"], vec!["2", "1"]]).unwrap();
        assert_eq!(uni.format_partition(&p), "{{1, 2}, {3}}");
    }

    #[test]
    fn extremal_examples() {
        let uni = u(2);
        let s = |ids: &[&str]| uni.subset(ids).unwrap();
        let f = SetFamily::from_sets(uni.id(), [s(&[]), s(&["1"]), s(&["2"])]);
        assert_eq!(
            uni.format_family(&extremal_sets(&f, Extremal::Max)),
            "{{1}, {2}}"
        );
        let single = SetFamily::from_sets(uni.id(), [s(&["1"])]);
        assert_eq!(extremal_sets(&single, Extremal::Max), single);
        assert_eq!(extremal_sets(&single, Extremal::Min), single);
        let chain = SetFamily::from_sets(uni.id(), [s(&[]), s(&["1"]), s(&["1", "2"])]);
        assert_eq!(
            uni.format_family(&extremal_sets(&chain, Extremal::Min)),
            "{{}}"
        );
        let empty = SetFamily::new(uni.id());
        assert!(extremal_sets(&empty, Extremal::Max).is_empty());
    }

    #[test]
    fn canonical_subset_order() {
        let uni = u(3);
        let mut all: Vec<Subset> = uni.power_set().collect();
        all.sort();
        let printed: Vec<String> = all.iter().map(|s| uni.format_subset(s)).collect();
        assert_eq!(
            printed,
            [
                "{}",
                "{1}",
                "{2}",
                "{3}",
                "{1, 2}",
                "{1, 3}",
                "{2, 3}",
                "{1, 2, 3}"
            ]
        );
    }

    #[test]
    fn sized_subsets_are_lexicographic() {
        let uni = u(4);
        let s = uni.subset(["1", "2", "4"]).unwrap();
        let pairs: Vec<String> = s
            .subsets_of_size(2)
            .map(|x| uni.format_subset(&x))
            .collect();
        assert_eq!(pairs, ["{1, 2}", "{1, 4}", "{2, 4}"]);
        assert_eq!(s.subsets_of_size(0).count(), 1);
        assert_eq!(s.subsets_of_size(4).count(), 0);
        assert_eq!(s.subsets().count(), 8);
    }
}
