//! Which algebras in a finite catalog have nullity probability at least a
//! threshold.

use std::fmt;

use serde::Serialize;

use crate::coeffring::CoeffSpec;
use crate::error::Result;
use crate::groupring::Side;
use crate::groups::GroupSpec;
use crate::oracle::{group_algebra, nullity_probability, Caps};
use crate::Probability;

use super::numtheory::prime_power;

/// One `K[G]` in a catalog.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Instance {
    pub coeff: CoeffSpec,
    pub group: GroupSpec,
}

impl Instance {
    pub fn new(coeff: CoeffSpec, group: GroupSpec) -> Self {
        Instance { coeff, group }
    }

    pub fn parse(coeff: &str, group: &str) -> Result<Self> {
        Ok(Instance {
            coeff: coeff.parse()?,
            group: group.parse()?,
        })
    }

    pub fn probability(&self, side: Side, caps: &Caps, workers: Option<usize>) -> Result<Probability> {
        let alg = group_algebra(&self.coeff, &self.group)?;
        nullity_probability(&alg, side, caps, workers)
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.coeff, self.group)
    }
}

impl Serialize for Instance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classified {
    pub instance: Instance,
    #[serde(serialize_with = "crate::report::serialize_ratio")]
    pub probability: Probability,
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub instance: Instance,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    #[serde(serialize_with = "crate::report::serialize_ratio")]
    pub threshold: Probability,
    pub side: Side,
    /// Every instance that was evaluated, in catalog order.
    pub evaluated: Vec<Classified>,
    /// Instances whose evaluation failed, usually a cap.
    pub skipped: Vec<Skipped>,
}

impl Classification {
    pub fn selected(&self) -> impl Iterator<Item = &Classified> {
        self.evaluated.iter().filter(|c| c.probability >= self.threshold)
    }

    pub fn below(&self) -> impl Iterator<Item = &Classified> {
        self.evaluated.iter().filter(|c| c.probability < self.threshold)
    }

    pub fn selected_labels(&self) -> Vec<String> {
        let mut v: Vec<String> = self.selected().map(|c| c.instance.to_string()).collect();
        v.sort();
        v
    }

    /// Smallest value at or above the threshold and largest value below it.
    pub fn gap(&self) -> (Option<&Classified>, Option<&Classified>) {
        let lowest_selected = self.selected().min_by(|a, b| a.probability.cmp(&b.probability));
        let highest_below = self.below().max_by(|a, b| a.probability.cmp(&b.probability));
        (lowest_selected, highest_below)
    }
}

/// Evaluates every instance with the exhaustive oracle and records those that
/// cannot be evaluated within `caps`.
pub fn classify_threshold(
    catalog: &[Instance],
    threshold: &Probability,
    side: Side,
    caps: &Caps,
    workers: Option<usize>,
) -> Classification {
    let mut evaluated = Vec::new();
    let mut skipped = Vec::new();
    for inst in catalog {
        match inst.probability(side, caps, workers) {
            Ok(probability) => evaluated.push(Classified {
                instance: inst.clone(),
                probability,
            }),
            Err(e) => skipped.push(Skipped {
                instance: inst.clone(),
                reason: e.to_string(),
            }),
        }
    }
    Classification {
        threshold: threshold.clone(),
        side,
        evaluated,
        skipped,
    }
}

/// `F_q C_n` for every prime power `q` and `n >= 2` with `q^n <= max_size`.
pub fn cyclic_sweep(max_size: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    for q in 2..=max_size {
        if prime_power(q).is_none() || q * q > max_size {
            continue;
        }
        let mut n = 2u32;
        while q.checked_pow(n).is_some_and(|s| s <= max_size) {
            out.push(Instance::new(
                CoeffSpec::field(q).expect("prime power"),
                GroupSpec::Cyclic(n as usize),
            ));
            n += 1;
        }
    }
    out
}

/// The cyclic sweep up to `max_size` together with the small non-field and
/// nonabelian algebras with large nullity probability.
pub fn standard_catalog(max_size: u64) -> Vec<Instance> {
    let mut out = cyclic_sweep(max_size);
    for (coeff, group) in [("Z:4", "C2"), ("Z:6", "C2"), ("F:2", "S3"), ("F:2", "Q8")] {
        out.push(Instance::parse(coeff, group).expect("catalog entry parses"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn sweep_contents() {
        let labels: Vec<String> = cyclic_sweep(16).iter().map(ToString::to_string).collect();
        assert_eq!(
            labels,
            vec!["F:2[C2]", "F:2[C3]", "F:2[C4]", "F:3[C2]", "F:2^2[C2]"]
        );
    }

    #[test]
    fn threshold_one_quarter_on_small_catalog() {
        let catalog: Vec<Instance> = [("F:2", "C2"), ("F:2", "C3"), ("F:3", "C2"), ("F:2", "C4"), ("Z:4", "C2")]
            .iter()
            .map(|(c, g)| Instance::parse(c, g).unwrap())
            .collect();
        let quarter = BigRational::new(1.into(), 4.into());
        let result = classify_threshold(&catalog, &quarter, Side::TwoSided, &Caps::default(), None);
        assert!(result.skipped.is_empty());
        assert_eq!(
            result.selected_labels(),
            vec!["F:2[C2]", "F:2[C3]", "F:3[C2]"]
        );
        let (lo, hi) = result.gap();
        assert_eq!(lo.unwrap().probability, BigRational::new(25.into(), 81.into()));
        assert_eq!(hi.unwrap().probability, BigRational::new(7.into(), 32.into()));
    }

    #[test]
    fn capped_instances_are_reported() {
        let catalog = vec![Instance::parse("F:2", "C2").unwrap(), Instance::parse("F:2", "C12").unwrap()];
        let caps = Caps {
            max_elements: 100,
            ..Caps::default()
        };
        let zero = BigRational::new(0.into(), 1.into());
        let result = classify_threshold(&catalog, &zero, Side::Left, &caps, None);
        assert_eq!(result.evaluated.len(), 1);
        assert_eq!(result.skipped.len(), 1);
        assert!(result.skipped[0].reason.contains("cap"));
    }
}
