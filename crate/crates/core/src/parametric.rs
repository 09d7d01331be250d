//! The parametric matroid `M_X` of an approximation space and a parameter set.
//!
//! A set `I` is independent in `M_X` when its lower approximation stays inside
//! `X`. That family has five interchangeable descriptions (see
//! [`Representation`]); `M_X` splits as a partition-circuit matroid on the
//! complement of the lower approximation of `X` plus a free matroid on that
//! lower approximation; and rank, circuits, bases and closure all have closed
//! forms in terms of the lower approximation number.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matroid::{
    direct_sum, free_matroid, partition_circuit_matroid_on, IndependenceOracle, Matroid, Provenance,
};
use crate::rough::ApproximationSpace;
use crate::sets::{extremal_sets, Extremal, Partition, SetFamily, Subset, Universe};

/// Default limit on how many bases [`bases_closed_form`] will produce.
pub const DEFAULT_BASES_CAP: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricInstance {
    space: ApproximationSpace,
    x: Subset,
    lower_x: Subset,
}

impl ParametricInstance {
    pub fn new(space: ApproximationSpace, x: Subset) -> Result<ParametricInstance> {
        let lower_x = space.lower_approx(&x)?;
        Ok(ParametricInstance { space, x, lower_x })
    }

    pub fn from_partition(partition: Partition, x: Subset) -> Result<ParametricInstance> {
        ParametricInstance::new(ApproximationSpace::new(partition), x)
    }

    pub fn space(&self) -> &ApproximationSpace {
        &self.space
    }

    pub fn partition(&self) -> &Partition {
        self.space.partition()
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.space.universe()
    }

    /// The parameter as given.
    pub fn x(&self) -> &Subset {
        &self.x
    }

    /// Lower approximation of the parameter; the free part of `M_X`.
    pub fn lower_x(&self) -> &Subset {
        &self.lower_x
    }

    /// Complement of the lower approximation; the partition-circuit part.
    pub fn outer_region(&self) -> Subset {
        self.lower_x.complement()
    }

    /// Blocks lying outside the lower approximation of `X`. These are the
    /// circuits of `M_X`.
    pub fn outer_blocks(&self) -> impl Iterator<Item = &Subset> + '_ {
        self.space
            .blocks()
            .iter()
            .filter(move |b| b.is_disjoint(&self.lower_x))
    }

    /// The same space with the parameter replaced by its lower approximation.
    pub fn collapsed(&self) -> ParametricInstance {
        ParametricInstance {
            space: self.space.clone(),
            x: self.lower_x.clone(),
            lower_x: self.lower_x.clone(),
        }
    }

    fn check(&self, s: &Subset) -> Result<()> {
        if s.universe_id() == self.universe().id() {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    fn fnum_outside(&self, s: &Subset) -> usize {
        self.space.fnum(&(s - &self.lower_x))
    }

    fn independent_by(&self, i: &Subset, rep: Representation) -> bool {
        let space = &self.space;
        match rep {
            Representation::LowerInX => space.lower(i).is_subset(&self.x),
            Representation::LowerInLowerX => space.lower(i).is_subset(&self.lower_x),
            Representation::LowerDiffEmpty => space.lower(&(i - &self.lower_x)).is_empty(),
            Representation::BlockCounting => space
                .blocks()
                .iter()
                .filter(|p| !p.is_subset(&self.lower_x))
                .all(|p| (p & i).len() < p.len()),
            Representation::FNumber => self.fnum_outside(i) == 0,
        }
    }
}

/// The five descriptions of the independent sets of `M_X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Representation {
    /// Lower approximation of `I` inside `X`.
    LowerInX,
    /// Lower approximation of `I` inside the lower approximation of `X`.
    LowerInLowerX,
    /// `I` minus the lower approximation of `X` has empty lower approximation.
    LowerDiffEmpty,
    /// Each block not inside the lower approximation of `X` keeps at least
    /// one element out of `I`.
    BlockCounting,
    /// `I` minus the lower approximation of `X` contains no whole block.
    #[default]
    FNumber,
}

impl Representation {
    pub const ALL: [Representation; 5] = [
        Representation::LowerInX,
        Representation::LowerInLowerX,
        Representation::LowerDiffEmpty,
        Representation::BlockCounting,
        Representation::FNumber,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Representation::LowerInX => "lx",
            Representation::LowerInLowerX => "llx",
            Representation::LowerDiffEmpty => "diff",
            Representation::BlockCounting => "blocks",
            Representation::FNumber => "fnum",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Representation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Representation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| {
                format!("unknown representation `{s}` (expected lx, llx, diff, blocks or fnum)")
            })
    }
}

pub fn is_independent(inst: &ParametricInstance, i: &Subset, rep: Representation) -> Result<bool> {
    inst.check(i)?;
    Ok(inst.independent_by(i, rep))
}

#[derive(Debug)]
struct ParametricOracle {
    inst: Arc<ParametricInstance>,
    rep: Representation,
}

impl IndependenceOracle for ParametricOracle {
    fn is_independent(&self, set: &Subset) -> bool {
        self.inst.independent_by(set, self.rep)
    }

    fn rank(&self, set: &Subset) -> Option<usize> {
        Some(set.len() - self.inst.fnum_outside(set))
    }
}

pub fn parametric_matroid(inst: &ParametricInstance) -> Matroid {
    parametric_matroid_with(inst, Representation::default())
}

/// `M_X` on the whole universe, deciding independence with `rep`.
pub fn parametric_matroid_with(inst: &ParametricInstance, rep: Representation) -> Matroid {
    let universe = inst.universe().clone();
    let ground = universe.full_set();
    Matroid::from_oracle(
        universe,
        ground,
        Arc::new(ParametricOracle {
            inst: Arc::new(inst.clone()),
            rep,
        }),
        Provenance::Parametric,
    )
    .expect("instance ground set shares its universe")
}

/// The two summands of `M_X` and their direct sum.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Partition-circuit matroid on the complement of the lower approximation
    /// of `X`, whose circuits are the blocks lying there.
    pub partition_circuit: Matroid,
    /// Free matroid on the lower approximation of `X`.
    pub free: Matroid,
    pub sum: Matroid,
}

pub fn decompose(inst: &ParametricInstance) -> Decomposition {
    let universe = inst.universe().clone();
    let partition_circuit = partition_circuit_matroid_on(
        universe.clone(),
        inst.outer_region(),
        inst.outer_blocks().cloned().collect(),
    )
    .expect("outer blocks partition the outer region");
    let free = free_matroid(universe, inst.lower_x.clone()).expect("same universe");
    let sum = direct_sum(&partition_circuit, &free).expect("summands are disjoint");
    Decomposition {
        partition_circuit,
        free,
        sum,
    }
}

/// `|Y| − f(Y − lower(X))`.
pub fn rank_closed_form(inst: &ParametricInstance, y: &Subset) -> Result<usize> {
    inst.check(y)?;
    Ok(y.len() - inst.fnum_outside(y))
}

/// The blocks lying outside the lower approximation of `X`.
pub fn circuits_closed_form(inst: &ParametricInstance) -> SetFamily {
    SetFamily::from_sets(inst.universe().id(), inst.outer_blocks().cloned())
}

/// Number of bases: the product of the sizes of the outer blocks.
pub fn bases_count(inst: &ParametricInstance) -> u128 {
    inst.outer_blocks()
        .map(|b| b.len() as u128)
        .try_fold(1u128, |acc, n| acc.checked_mul(n))
        .unwrap_or(u128::MAX)
}

/// Each base keeps the lower approximation of `X` and drops exactly one
/// element from every outer block.
pub fn bases_closed_form(inst: &ParametricInstance, cap: u128) -> Result<SetFamily> {
    let count = bases_count(inst);
    if count > cap {
        return Err(Error::OutputCapExceeded { count, cap });
    }
    let blocks: Vec<Vec<usize>> = inst.outer_blocks().map(Subset::indices).collect();
    let full = inst.universe().full_set();
    let mut family = SetFamily::new(inst.universe().id());
    let mut choice = vec![0usize; blocks.len()];
    loop {
        let mut base = full.clone();
        for (b, &c) in blocks.iter().zip(&choice) {
            base.remove(b[c]);
        }
        family.insert(base);
        // odometer over the per-block choices
        let mut k = 0;
        while k < blocks.len() {
            choice[k] += 1;
            if choice[k] < blocks[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == blocks.len() {
            break;
        }
    }
    Ok(family)
}

/// `Y` plus every outside element whose addition completes one more block
/// outside the lower approximation of `X`.
pub fn closure_closed_form(inst: &ParametricInstance, y: &Subset) -> Result<Subset> {
    inst.check(y)?;
    let before = inst.fnum_outside(y);
    let mut out = y.clone();
    for u in y.complement().iter() {
        if inst.fnum_outside(&y.with(u)) == before + 1 {
            out.insert(u);
        }
    }
    Ok(out)
}

fn check_enum_cap(inst: &ParametricInstance, cap: usize) -> Result<()> {
    let size = inst.universe().len();
    if size > cap || size >= 64 {
        Err(Error::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}

/// `Max{I : f(I − lower(X)) = 0}`, scanned over the power set.
pub fn bases_max_form(inst: &ParametricInstance, cap: usize) -> Result<SetFamily> {
    check_enum_cap(inst, cap)?;
    let candidates = SetFamily::from_sets(
        inst.universe().id(),
        inst.universe()
            .power_set()
            .filter(|i| inst.fnum_outside(i) == 0),
    );
    Ok(extremal_sets(&candidates, Extremal::Max))
}

/// `Min{C : f(C − lower(X)) = 1}`, scanned over the power set.
pub fn circuits_min_form(inst: &ParametricInstance, cap: usize) -> Result<SetFamily> {
    check_enum_cap(inst, cap)?;
    let candidates = SetFamily::from_sets(
        inst.universe().id(),
        inst.universe()
            .power_set()
            .filter(|c| inst.fnum_outside(c) == 1),
    );
    Ok(extremal_sets(&candidates, Extremal::Min))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::DEFAULT_ENUMERATION_CAP;

    fn instance(n: usize, blocks: &[&[&str]], x: &[&str]) -> ParametricInstance {
        let u = Universe::numbered(n).unwrap();
        let p = Partition::from_ids(u.clone(), blocks).unwrap();
        ParametricInstance::from_partition(p, u.subset(x).unwrap()).unwrap()
    }

    fn worked() -> ParametricInstance {
        instance(3, &[&["1", "2"], &["3"]], &["1"])
    }

    fn five() -> ParametricInstance {
        instance(5, &[&["1", "2"], &["3", "4"], &["5"]], &["1", "2", "5"])
    }

    fn set(inst: &ParametricInstance, ids: &[&str]) -> Subset {
        inst.universe().subset(ids).unwrap()
    }

    #[test]
    fn independence_examples_under_every_representation() {
        let inst = worked();
        for rep in Representation::ALL {
            assert!(is_independent(&inst, &set(&inst, &["1"]), rep).unwrap());
            assert!(!is_independent(&inst, &set(&inst, &["3"]), rep).unwrap());
            assert!(is_independent(&inst, &set(&inst, &[]), rep).unwrap());
        }
    }

    #[test]
    fn worked_example_family() {
        let inst = worked();
        let u = inst.universe().clone();
        let m = parametric_matroid(&inst);
        assert_eq!(m.provenance(), Provenance::Parametric);
        assert_eq!(
            u.format_family(&m.independents().unwrap()),
            "{{}, {1}, {2}}"
        );
        assert_eq!(u.format_family(&m.bases().unwrap()), "{{1}, {2}}");
        assert_eq!(u.format_family(&m.circuits().unwrap()), "{{3}, {1, 2}}");
        assert_eq!(m.rank(&u.full_set()).unwrap(), 1);
        assert_eq!(u.format_subset(&m.closure(&u.empty_set()).unwrap()), "{3}");
        let r = m.restriction(&set(&inst, &["3"])).unwrap();
        assert_eq!(u.format_family(&r.independents().unwrap()), "{{}}");
    }

    #[test]
    fn endpoint_parameters() {
        let u = Universe::numbered(4).unwrap();
        let p = Partition::from_ids(u.clone(), &[vec!["1", "3"], vec!["2"], vec!["4"]]).unwrap();
        let all = ParametricInstance::from_partition(p.clone(), u.full_set()).unwrap();
        assert_eq!(parametric_matroid(&all).independents().unwrap().len(), 16);
        let none = ParametricInstance::from_partition(p.clone(), u.empty_set()).unwrap();
        let pc = crate::matroid::partition_circuit_matroid(&p);
        assert_eq!(
            parametric_matroid(&none).independents().unwrap(),
            pc.independents().unwrap()
        );
    }

    #[test]
    fn decomposition_of_five_element_instance() {
        let inst = five();
        let u = inst.universe().clone();
        let d = decompose(&inst);
        assert_eq!(u.format_subset(d.partition_circuit.ground()), "{3, 4}");
        assert_eq!(
            u.format_family(&d.partition_circuit.circuits().unwrap()),
            "{{3, 4}}"
        );
        assert_eq!(u.format_subset(d.free.ground()), "{1, 2, 5}");
        let m = parametric_matroid(&inst);
        for s in u.power_set() {
            assert_eq!(
                d.sum.is_independent(&s).unwrap(),
                m.is_independent(&s).unwrap()
            );
        }
    }

    #[test]
    fn decomposition_endpoints() {
        let u = Universe::numbered(3).unwrap();
        let p = Partition::from_ids(u.clone(), &[vec!["1", "2"], vec!["3"]]).unwrap();
        let d = decompose(&ParametricInstance::from_partition(p.clone(), u.empty_set()).unwrap());
        assert!(d.free.ground().is_empty());
        assert_eq!(d.partition_circuit.ground(), &u.full_set());
        let d = decompose(&ParametricInstance::from_partition(p, u.full_set()).unwrap());
        assert!(d.partition_circuit.ground().is_empty());
        assert_eq!(d.free.ground(), &u.full_set());
    }

    #[test]
    fn rank_closed_form_examples() {
        let inst = worked();
        let u = inst.universe().clone();
        assert_eq!(rank_closed_form(&inst, &u.full_set()).unwrap(), 1);
        assert_eq!(rank_closed_form(&inst, &u.empty_set()).unwrap(), 0);
        let inst = five();
        assert_eq!(
            rank_closed_form(&inst, &inst.universe().full_set()).unwrap(),
            4
        );
        let foreign = Universe::numbered(4).unwrap().full_set();
        assert_eq!(
            rank_closed_form(&inst, &foreign),
            Err(Error::UniverseMismatch)
        );
    }

    #[test]
    fn circuits_closed_form_examples() {
        let inst = worked();
        let u = inst.universe().clone();
        assert_eq!(
            u.format_family(&circuits_closed_form(&inst)),
            "{{3}, {1, 2}}"
        );
        assert_eq!(
            circuits_min_form(&inst, DEFAULT_ENUMERATION_CAP).unwrap(),
            circuits_closed_form(&inst)
        );
        let full =
            ParametricInstance::from_partition(inst.partition().clone(), u.full_set()).unwrap();
        assert!(circuits_closed_form(&full).is_empty());
        let inst = five();
        assert_eq!(
            inst.universe().format_family(&circuits_closed_form(&inst)),
            "{{3, 4}}"
        );
    }

    #[test]
    fn bases_closed_form_examples() {
        let inst = worked();
        let u = inst.universe().clone();
        assert_eq!(
            u.format_family(&bases_closed_form(&inst, DEFAULT_BASES_CAP).unwrap()),
            "{{1}, {2}}"
        );
        let inst = five();
        let b = bases_closed_form(&inst, DEFAULT_BASES_CAP).unwrap();
        assert_eq!(
            inst.universe().format_family(&b),
            "{{1, 2, 3, 5}, {1, 2, 4, 5}}"
        );
        assert_eq!(b, bases_max_form(&inst, DEFAULT_ENUMERATION_CAP).unwrap());
        let full = ParametricInstance::from_partition(
            inst.partition().clone(),
            inst.universe().full_set(),
        )
        .unwrap();
        assert_eq!(
            bases_closed_form(&full, DEFAULT_BASES_CAP).unwrap(),
            SetFamily::from_sets(full.universe().id(), [full.universe().full_set()])
        );
    }

    #[test]
    fn bases_cap_counts_the_product_of_block_sizes() {
        let inst = five();
        assert_eq!(bases_count(&inst), 2);
        assert_eq!(
            bases_closed_form(&inst, 1).unwrap_err(),
            Error::OutputCapExceeded { count: 2, cap: 1 }
        );
    }

    #[test]
    fn closure_closed_form_examples() {
        let inst = five();
        let u = inst.universe().clone();
        let c = closure_closed_form(&inst, &set(&inst, &["3"])).unwrap();
        assert_eq!(u.format_subset(&c), "{3, 4}");
        let inst = worked();
        let u = inst.universe().clone();
        assert_eq!(
            u.format_subset(&closure_closed_form(&inst, &u.empty_set()).unwrap()),
            "{3}"
        );
        assert_eq!(
            closure_closed_form(&inst, &u.full_set()).unwrap(),
            u.full_set()
        );
    }

    #[test]
    fn singleton_outer_blocks_are_loops() {
        let inst = instance(5, &[&["1"], &["2", "3"], &["4"], &["5"]], &["4", "5"]);
        let u = inst.universe().clone();
        let m = parametric_matroid(&inst);
        assert_eq!(
            u.format_subset(&m.closure_by_search(&u.empty_set()).unwrap()),
            "{1}"
        );
        assert_eq!(
            u.format_subset(&closure_closed_form(&inst, &u.empty_set()).unwrap()),
            "{1}"
        );
    }

    #[test]
    fn representation_names_round_trip() {
        for rep in Representation::ALL {
            assert_eq!(rep.name().parse::<Representation>().unwrap(), rep);
        }
        assert!("nope".parse::<Representation>().is_err());
    }
}
