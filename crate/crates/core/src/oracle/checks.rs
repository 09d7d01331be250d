//! Property checks of one parametric instance against the brute-force oracle.
//!
//! Each [`Property`] runs a batch of assertions and reports how many it made
//! plus the first one that failed, if any.

use std::fmt;
use std::str::FromStr;

use crate::error::Result;
use crate::matroid::{check_independence_axioms, partition_circuit_matroid};
use crate::oracle::brute_profile;
use crate::parametric::{
    bases_closed_form, bases_max_form, circuits_closed_form, circuits_min_form,
    closure_closed_form, decompose, is_independent, parametric_matroid, rank_closed_form,
    ParametricInstance, Representation, DEFAULT_BASES_CAP,
};
use crate::rough::relational_lower_approx;
use crate::sets::{check_equivalence_on, relation_from_partition, restrict_relation, Subset};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    /// The enumerated family satisfies I1, I2, I3.
    Axioms,
    /// The five representations agree; the parameter may be replaced by its
    /// lower approximation.
    Reps,
    /// The direct sum of the two summands agrees with `M_X`, and each summand
    /// is the restriction of `M_X` to its ground set.
    Theorem1,
    /// Closed-form rank equals brute rank; direct-sum and partition-circuit
    /// rank laws.
    Rank,
    Closure,
    Circuits,
    Bases,
    /// Lower approximations under the relation restricted to `lower(X)` or to
    /// its complement vanish exactly when the unrestricted ones do; mixing an
    /// inner set with empty lower approximation into an outer set leaves the
    /// lower approximation unchanged; `x` is exact iff the restricted relation
    /// is an equivalence on `x`.
    Lemmas,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Axioms,
        Property::Reps,
        Property::Theorem1,
        Property::Rank,
        Property::Closure,
        Property::Circuits,
        Property::Bases,
        Property::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Axioms => "axioms",
            Property::Reps => "reps",
            Property::Theorem1 => "theorem1",
            Property::Rank => "rank",
            Property::Closure => "closure",
            Property::Circuits => "circuits",
            Property::Bases => "bases",
            Property::Lemmas => "lemmas",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub what: String,
    /// The subset exhibiting the failure, when there is one.
    pub subset: Option<Subset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub checks: u64,
    pub violation: Option<Violation>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

struct Tally {
    outcome: Outcome,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            outcome: Outcome::default(),
        }
    }

    /// Records one assertion; keeps the first failure only.
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String, subset: Option<&Subset>) {
        self.outcome.checks += 1;
        if !ok && self.outcome.violation.is_none() {
            self.outcome.violation = Some(Violation {
                what: what(),
                subset: subset.cloned(),
            });
        }
    }

    fn failed(&self) -> bool {
        self.outcome.violation.is_some()
    }
}

/// Runs `prop` on `inst`. `cap` bounds brute-force enumeration.
pub fn check(prop: Property, inst: &ParametricInstance, cap: usize) -> Result<Outcome> {
    let mut t = Tally::new();
    match prop {
        Property::Axioms => axioms(inst, cap, &mut t)?,
        Property::Reps => reps(inst, &mut t)?,
        Property::Theorem1 => theorem1(inst, cap, &mut t)?,
        Property::Rank => rank(inst, cap, &mut t)?,
        Property::Closure => closure(inst, cap, &mut t)?,
        Property::Circuits => circuits(inst, cap, &mut t)?,
        Property::Bases => bases(inst, cap, &mut t)?,
        Property::Lemmas => lemmas(inst, &mut t)?,
    }
    Ok(t.outcome)
}

fn axioms(inst: &ParametricInstance, cap: usize, t: &mut Tally) -> Result<()> {
    let family = parametric_matroid(inst).with_cap(cap).independents()?;
    let verdict = check_independence_axioms(&family);
    t.expect(verdict.holds(), || verdict.to_string(), None);
    Ok(())
}

fn reps(inst: &ParametricInstance, t: &mut Tally) -> Result<()> {
    let collapsed = inst.collapsed();
    for s in inst.universe().power_set() {
        let reference = is_independent(inst, &s, Representation::LowerInX)?;
        for rep in Representation::ALL {
            let got = is_independent(inst, &s, rep)?;
            t.expect(
                got == reference,
                || format!("representation {rep} says {got}, lx says {reference}"),
                Some(&s),
            );
        }
        let got = is_independent(&collapsed, &s, Representation::LowerInX)?;
        t.expect(
            got == reference,
            || "replacing X by its lower approximation changes independence".into(),
            Some(&s),
        );
        if t.failed() {
            break;
        }
    }
    Ok(())
}

fn theorem1(inst: &ParametricInstance, cap: usize, t: &mut Tally) -> Result<()> {
    let m = parametric_matroid(inst).with_cap(cap);
    let d = decompose(inst);
    for s in inst.universe().power_set() {
        let (a, b) = (d.sum.is_independent(&s)?, m.is_independent(&s)?);
        t.expect(
            a == b,
            || format!("direct sum says {a}, M_X says {b}"),
            Some(&s),
        );
        if t.failed() {
            return Ok(());
        }
    }
    let pc_restricted = m
        .restriction(d.partition_circuit.ground())?
        .independents()?;
    t.expect(
        pc_restricted == d.partition_circuit.clone().with_cap(cap).independents()?,
        || "restriction to the outer region differs from the partition-circuit summand".into(),
        Some(d.partition_circuit.ground()),
    );
    let free_restricted = m.restriction(d.free.ground())?.independents()?;
    t.expect(
        free_restricted == d.free.clone().with_cap(cap).independents()?,
        || "restriction to the lower approximation differs from the free summand".into(),
        Some(d.free.ground()),
    );
    let parts = m
        .restriction(d.partition_circuit.ground())?
        .circuits()?
        .union(&m.restriction(d.free.ground())?.circuits()?);
    t.expect(
        parts == m.circuits()?,
        || "circuits are not the union of the summands' circuits".into(),
        None,
    );
    Ok(())
}

fn rank(inst: &ParametricInstance, cap: usize, t: &mut Tally) -> Result<()> {
    let m = parametric_matroid(inst).with_cap(cap);
    let profile = brute_profile(&m)?;
    let d = decompose(inst);
    let pc = partition_circuit_matroid(inst.partition()).with_cap(cap);
    let pc_profile = brute_profile(&pc)?;
    let space = inst.space();
    for y in inst.universe().power_set() {
        let brute = profile.rank(&y).expect("inside ground");
        let closed = rank_closed_form(inst, &y)?;
        t.expect(
            brute == closed,
            || format!("closed-form rank {closed}, brute rank {brute}"),
            Some(&y),
        );
        let split = d
            .partition_circuit
            .rank_by_search(&(&y & d.partition_circuit.ground()))?
            + d.free.rank_by_search(&(&y & d.free.ground()))?;
        t.expect(
            split == brute,
            || format!("summand ranks add to {split}, brute rank {brute}"),
            Some(&y),
        );
        let pc_brute = pc_profile.rank(&y).expect("inside ground");
        let pc_closed = y.len() - space.lower_approx_number(&y)?;
        t.expect(
            pc_brute == pc_closed,
            || format!("partition-circuit rank {pc_brute}, |Y| - f(Y) = {pc_closed}"),
            Some(&y),
        );
        if t.failed() {
            break;
        }
    }
    Ok(())
}

fn closure(inst: &ParametricInstance, cap: usize, t: &mut Tally) -> Result<()> {
    let profile = brute_profile(&parametric_matroid(inst).with_cap(cap))?;
    for y in inst.universe().power_set() {
        let brute = profile.closure(&y).expect("inside ground");
        let closed = closure_closed_form(inst, &y)?;
        t.expect(
            brute == closed,
            || format!("closed-form closure {closed:?}, brute closure {brute:?}"),
            Some(&y),
        );
        if t.failed() {
            break;
        }
    }
    Ok(())
}

fn circuits(inst: &ParametricInstance, cap: usize, t: &mut Tally) -> Result<()> {
    let m = parametric_matroid(inst).with_cap(cap);
    let profile = brute_profile(&m)?;
    let closed = circuits_closed_form(inst);
    t.expect(
        profile.circuits == closed,
        || {
            format!(
                "closed-form circuits {closed:?}, brute circuits {:?}",
                profile.circuits
            )
        },
        None,
    );
    let min_form = circuits_min_form(inst, cap)?;
    t.expect(
        min_form == closed,
        || format!("Min-form circuits {min_form:?}, closed form {closed:?}"),
        None,
    );
    t.expect(
        m.circuits()? == closed,
        || "kernel circuit search disagrees with the closed form".into(),
        None,
    );
    t.expect(
        profile.circuits.is_antichain(),
        || "brute circuits are not an antichain".into(),
        None,
    );
    Ok(())
}

fn bases(inst: &ParametricInstance, cap: usize, t: &mut Tally) -> Result<()> {
    let m = parametric_matroid(inst).with_cap(cap);
    let profile = brute_profile(&m)?;
    let closed = bases_closed_form(inst, DEFAULT_BASES_CAP)?;
    t.expect(
        profile.bases == closed,
        || {
            format!(
                "closed-form bases {closed:?}, brute bases {:?}",
                profile.bases
            )
        },
        None,
    );
    let max_form = bases_max_form(inst, cap)?;
    t.expect(
        max_form == closed,
        || format!("Max-form bases {max_form:?}, closed form {closed:?}"),
        None,
    );
    t.expect(
        m.bases()? == closed,
        || "kernel base search disagrees with the closed form".into(),
        None,
    );
    let full_rank = profile
        .rank(&inst.universe().full_set())
        .expect("inside ground");
    for b in profile.bases.iter() {
        t.expect(
            b.len() == full_rank,
            || format!("base of size {} but rank {full_rank}", b.len()),
            Some(b),
        );
    }
    Ok(())
}

fn lemmas(inst: &ParametricInstance, t: &mut Tally) -> Result<()> {
    let space = inst.space();
    let relation = relation_from_partition(inst.partition());
    let lower_x = inst.lower_x();
    let outer = inst.outer_region();

    // Restricting to an exact ground set neither creates nor destroys empty
    // lower approximations, and its classes are the original blocks.
    for ground in [lower_x, &outer] {
        let restricted = restrict_relation(&relation, ground)?;
        for u in ground.iter() {
            t.expect(
                restricted.successors(u) == *inst.partition().class_of(u),
                || format!("class of #{u} changes under restriction"),
                Some(ground),
            );
        }
        for i in ground.subsets() {
            let via_restricted = relational_lower_approx(&restricted, ground, &i)?.is_empty();
            let via_full = space.lower_approx(&i)?.is_empty();
            t.expect(
                via_restricted == via_full,
                || {
                    format!(
                        "restricted lower approximation empty: {via_restricted}, full: {via_full}"
                    )
                },
                Some(&i),
            );
        }
    }

    for x1 in lower_x.subsets() {
        if !space.lower_approx(&x1)?.is_empty() {
            continue;
        }
        for x2 in outer.subsets() {
            let joint = space.lower_approx(&(&x1 | &x2))?;
            let right = space.lower_approx(&x2)?;
            t.expect(
                joint == right,
                || "lower approximation of X1 ∪ X2 differs from that of X2".into(),
                Some(&(&x1 | &x2)),
            );
        }
    }

    for x in inst.universe().power_set() {
        let exact = space.lower_approx(&x)? == x;
        let restricted = restrict_relation(&relation, &x)?;
        let equivalence = check_equivalence_on(&restricted, &x).holds();
        t.expect(
            exact == equivalence,
            || format!("x exact: {exact}, restriction is an equivalence on x: {equivalence}"),
            Some(&x),
        );
        if t.failed() {
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::DEFAULT_ENUMERATION_CAP;
    use crate::oracle::{exhaustive_instances, random_instance, InstanceSpec};

    #[test]
    fn every_property_holds_on_small_sweep() {
        for inst in exhaustive_instances(3) {
            for prop in Property::ALL {
                let out = check(prop, &inst, DEFAULT_ENUMERATION_CAP).unwrap();
                assert!(out.passed(), "{prop}: {:?}", out.violation);
                assert!(out.checks > 0);
            }
        }
    }

    #[test]
    fn every_property_holds_on_random_instances() {
        for seed in 0..20 {
            let inst = random_instance(&InstanceSpec::new(seed, 6));
            for prop in Property::ALL {
                assert!(check(prop, &inst, DEFAULT_ENUMERATION_CAP)
                    .unwrap()
                    .passed());
            }
        }
    }

    #[test]
    fn cap_propagates() {
        let inst = random_instance(&InstanceSpec::new(0, 6));
        assert!(check(Property::Rank, &inst, 4).is_err());
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
    }
}
