//! Verification campaigns: run properties over a list of instances, in
//! parallel, and report in trial order.

use std::thread;

use rough_matroid::oracle::checks::{check, Outcome, Property, Violation};
use rough_matroid::oracle::shrink;
use rough_matroid::{ParametricInstance, Result};

/// Checker signature; [`check`] in normal use.
pub type Checker = dyn Fn(Property, &ParametricInstance, usize) -> Result<Outcome> + Sync;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyTotal {
    pub property: Property,
    pub checks: u64,
    pub violations: u64,
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub property: Property,
    pub trial: usize,
    /// The failing instance after shrinking.
    pub witness: ParametricInstance,
    pub violation: Violation,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub totals: Vec<PropertyTotal>,
    /// First failure in (trial, property) order.
    pub failure: Option<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

pub fn run_campaign(
    instances: &[ParametricInstance],
    props: &[Property],
    cap: usize,
) -> Result<Report> {
    run_campaign_with(instances, props, cap, &check)
}

pub fn run_campaign_with(
    instances: &[ParametricInstance],
    props: &[Property],
    cap: usize,
    checker: &Checker,
) -> Result<Report> {
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(instances.len().max(1));
    let mut results: Vec<Option<Result<Vec<Outcome>>>> = vec![None; instances.len()];
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..instances.len())
                        .step_by(workers)
                        .map(|t| {
                            let outcomes = props
                                .iter()
                                .map(|&p| checker(p, &instances[t], cap))
                                .collect::<Result<Vec<_>>>();
                            (t, outcomes)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (t, r) in h.join().expect("campaign worker panicked") {
                results[t] = Some(r);
            }
        }
    });

    let mut totals: Vec<PropertyTotal> = props
        .iter()
        .map(|&property| PropertyTotal {
            property,
            checks: 0,
            violations: 0,
        })
        .collect();
    let mut first = None;
    for (trial, r) in results.into_iter().enumerate() {
        let outcomes = r.expect("every trial ran")?;
        for (k, o) in outcomes.into_iter().enumerate() {
            totals[k].checks += o.checks;
            if !o.passed() {
                totals[k].violations += 1;
                first.get_or_insert((trial, k));
            }
        }
    }

    let failure = first.map(|(trial, k)| {
        let property = props[k];
        let violates =
            |i: &ParametricInstance| checker(property, i, cap).is_ok_and(|o| !o.passed());
        let witness = shrink(&instances[trial], violates);
        let violation = checker(property, &witness, cap)
            .ok()
            .and_then(|o| o.violation)
            .expect("shrinking keeps the violation");
        Failure {
            property,
            trial,
            witness,
            violation,
        }
    });
    Ok(Report { totals, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rough_matroid::oracle::{random_instance, InstanceSpec};

    fn instances(n: usize) -> Vec<ParametricInstance> {
        (0..8)
            .map(|s| random_instance(&InstanceSpec::new(s, n)))
            .collect()
    }

    #[test]
    fn clean_campaign_passes() {
        let r = run_campaign(&instances(5), &Property::ALL, 20).unwrap();
        assert!(r.passed());
        assert!(r.totals.iter().all(|t| t.checks > 0 && t.violations == 0));
    }

    #[test]
    fn injected_violation_is_shrunk() {
        // pretend any universe with at least three elements fails
        let fake = |_: Property, i: &ParametricInstance, _: usize| {
            let bad = i.universe().len() >= 3;
            Ok(Outcome {
                checks: 1,
                violation: bad.then(|| Violation {
                    what: "too big".into(),
                    subset: Some(i.universe().full_set()),
                }),
            })
        };
        let r = run_campaign_with(&instances(7), &[Property::Rank, Property::Bases], 20, &fake)
            .unwrap();
        let f = r.failure.unwrap();
        assert_eq!((f.trial, f.property), (0, Property::Rank));
        assert_eq!(f.witness.universe().len(), 3);
        assert_eq!(r.totals[1].violations, 8);
    }
}
