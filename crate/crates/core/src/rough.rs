//! Lower and upper approximations over a partition, and the lower
//! approximation number (how many blocks a set swallows whole).

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sets::{BinaryRelation, Partition, Subset, Universe};

/// A universe together with an equivalence relation, held as its partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationSpace {
    partition: Partition,
}

impl ApproximationSpace {
    pub fn new(partition: Partition) -> ApproximationSpace {
        ApproximationSpace { partition }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.partition.universe()
    }

    pub fn blocks(&self) -> &[Subset] {
        self.partition.blocks()
    }

    fn check(&self, x: &Subset) -> Result<()> {
        if x.universe_id() == self.universe().id() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn lower_approx(&self, x: &Subset) -> Result<Subset> {
        self.check(x)?;
        Ok(self.lower(x))
    }

    pub fn upper_approx(&self, x: &Subset) -> Result<Subset> {
        self.check(x)?;
        Ok(self.upper(x))
    }

    pub fn lower_approx_number(&self, x: &Subset) -> Result<usize> {
        self.check(x)?;
        Ok(self.fnum(x))
    }

    /// Union of the blocks contained in `x`.
    pub(crate) fn lower(&self, x: &Subset) -> Subset {
        let mut out = self.universe().empty_set();
        for b in self.blocks().iter().filter(|b| b.is_subset(x)) {
            out = &out | b;
        }
        out
    }

    /// Union of the blocks meeting `x`.
    pub(crate) fn upper(&self, x: &Subset) -> Subset {
        let mut out = self.universe().empty_set();
        for b in self.blocks().iter().filter(|b| b.intersects(x)) {
            out = &out | b;
        }
        out
    }

    pub(crate) fn fnum(&self, x: &Subset) -> usize {
        self.blocks().iter().filter(|b| b.is_subset(x)).count()
    }
}

/// `{u ∈ ground : [u] ⊆ x}` where `[u]` is the successor set of `u` in `r`.
///
/// This evaluates the elementwise form of the lower approximation directly on
/// a relation, so it also makes sense for a restricted relation whose ground
/// set is smaller than the universe.
pub fn relational_lower_approx(r: &BinaryRelation, ground: &Subset, x: &Subset) -> Result<Subset> {
    let uid = r.universe().id();
    if ground.universe_id() != uid || x.universe_id() != uid {
        return Err(Error::UniverseMismatch);
    }
    Ok(r.universe()
        .subset_from_indices(ground.iter().filter(|&u| r.successors(u).is_subset(x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::relation_from_partition;

    fn space(blocks: &[&[&str]], n: usize) -> ApproximationSpace {
        let uni = Universe::numbered(n).unwrap();
        ApproximationSpace::new(Partition::from_ids(uni, blocks).unwrap())
    }

    #[test]
    fn second_worked_example_lower_approximations() {
        let s = space(&[&["1", "2"], &["3"]], 3);
        let uni = s.universe().clone();
        let expected = [
            (&[][..], "{}"),
            (&["1"][..], "{}"),
            (&["2"][..], "{}"),
            (&["3"][..], "{3}"),
            (&["1", "2"][..], "{1, 2}"),
            (&["1", "3"][..], "{3}"),
            (&["2", "3"][..], "{3}"),
            (&["1", "2", "3"][..], "{1, 2, 3}"),
        ];
        for (ids, want) in expected {
            let x = uni.subset(ids).unwrap();
            assert_eq!(uni.format_subset(&s.lower_approx(&x).unwrap()), want);
        }
    }

    #[test]
    fn upper_examples() {
        let s = space(&[&["1", "2"], &["3"]], 3);
        let uni = s.universe().clone();
        let x = uni.subset(["1"]).unwrap();
        assert_eq!(uni.format_subset(&s.upper_approx(&x).unwrap()), "{1, 2}");
        assert!(s.upper_approx(&uni.empty_set()).unwrap().is_empty());
        assert_eq!(s.upper_approx(&uni.full_set()).unwrap(), uni.full_set());
    }

    #[test]
    fn lower_number_examples() {
        let s = space(&[&["1", "2"], &["3"]], 3);
        assert_eq!(s.lower_approx_number(&s.universe().full_set()).unwrap(), 2);
        assert_eq!(s.lower_approx_number(&s.universe().empty_set()).unwrap(), 0);

        let s = space(&[&["1", "2"], &["3", "4"], &["5"]], 5);
        let x = s.universe().subset(["3", "4", "5"]).unwrap();
        assert_eq!(s.lower_approx_number(&x).unwrap(), 2);
    }

    #[test]
    fn mismatched_universe_is_rejected() {
        let s = space(&[&["1", "2"], &["3"]], 3);
        let foreign = Universe::new(["a", "b", "c"]).unwrap().full_set();
        assert_eq!(s.lower_approx(&foreign), Err(Error::UniverseMismatch));
        assert_eq!(s.upper_approx(&foreign), Err(Error::UniverseMismatch));
        assert_eq!(
            s.lower_approx_number(&foreign),
            Err(Error::UniverseMismatch)
        );
    }

    #[test]
    fn relational_route_matches_block_scan() {
        let s = space(&[&["1", "4"], &["2"], &["3", "5", "6"]], 6);
        let r = relation_from_partition(s.partition());
        let full = s.universe().full_set();
        for x in s.universe().power_set() {
            assert_eq!(
                relational_lower_approx(&r, &full, &x).unwrap(),
                s.lower_approx(&x).unwrap()
            );
        }
    }
}
