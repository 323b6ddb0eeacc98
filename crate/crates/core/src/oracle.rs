//! Exhaustive ground truth.
//!
//! Two independent routes to the nullity probability of a finite ring:
//!
//! * the **annihilator census**: one rank computation per element `x` gives
//!   `|Ann(x)| = |K|^k`, and `P = sum_x |Ann(x)| / |R|^2`;
//! * the **naive pair count**: a double loop over `(a, b)` testing `ab = 0`
//!   directly, with no linear algebra at all.
//!
//! Sweeps over element indices are split into fixed-size chunks whose partial
//! histograms are summed, so results are identical for every worker count.

use std::collections::BTreeMap;
use std::ops::Range;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffring::{CoeffRing, CoeffSpec, Elem};
use crate::error::{Error, Result};
use crate::groupring::{GroupAlgebra, Side};
use crate::Probability;

/// Elements per work unit in parallel sweeps.
const CHUNK: u64 = 1 << 12;

/// Limits on exhaustive work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Most group-ring elements a census or enumeration may visit.
    pub max_elements: u64,
    /// Most ordered pairs the naive counter may visit.
    pub max_pairs: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_elements: 1 << 22,
            max_pairs: 1 << 20,
        }
    }
}

impl Caps {
    pub fn unlimited() -> Self {
        Caps {
            max_elements: u64::MAX,
            max_pairs: u64::MAX,
        }
    }
}

/// Runs `f` on a pool of `workers` threads, or on the global pool for `None`.
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        None => f(),
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .expect("thread pool construction")
            .install(f),
    }
}

/// `counts[k]` = number of `x` with `|Ann_side(x)| = base^k`, `k = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorHistogram {
    pub group: String,
    pub coeff: String,
    pub side: Side,
    pub base: u64,
    pub counts: Vec<u64>,
}

impl AnnihilatorHistogram {
    /// Group order `n`.
    pub fn dim(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Elements with trivial annihilator.
    pub fn units(&self) -> u64 {
        self.counts[0]
    }

    /// `base^0, base^1, ..., base^n`.
    pub fn ann_sizes(&self) -> Vec<u64> {
        (0..=self.dim() as u32).map(|k| self.base.pow(k)).collect()
    }

    /// `sum_k counts[k] * base^k`, the number of annihilating pairs.
    pub fn weighted_sum(&self) -> u128 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| c as u128 * (self.base as u128).pow(k as u32))
            .sum()
    }

    /// `|R| + |U(R)| + sum over nonzero zero divisors of |Ann(x)|`.
    ///
    /// Equals [`weighted_sum`](Self::weighted_sum) exactly when zero is the
    /// only element annihilated by everything.
    pub fn unit_split_sum(&self) -> u128 {
        let n = self.dim();
        let ring_size = (self.base as u128).pow(n as u32);
        let middle: u128 = (1..n)
            .map(|k| self.counts[k] as u128 * (self.base as u128).pow(k as u32))
            .sum();
        ring_size + self.counts[0] as u128 + middle
    }

    pub fn probability(&self) -> Probability {
        let n = self.dim() as u32;
        let denom = BigInt::from(self.base).pow(2 * n);
        BigRational::new(BigInt::from(self.weighted_sum()), denom)
    }

    pub fn merge(&mut self, other: &AnnihilatorHistogram) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }
}

fn census_guard(alg: &GroupAlgebra, caps: &Caps) -> Result<u64> {
    if !alg.ring().is_field() {
        return Err(Error::NotAField(alg.ring().spec().to_string()));
    }
    let needed = (alg.ring().size() as u128).saturating_pow(alg.dim() as u32);
    match alg.cardinality() {
        Some(total) if total <= caps.max_elements => Ok(total),
        _ => Err(Error::CapExceeded {
            what: "annihilator census",
            needed,
            cap: caps.max_elements,
        }),
    }
}

/// Histogram counts for the element indices in `range`.
pub fn partial_histogram(alg: &GroupAlgebra, side: Side, range: Range<u64>) -> Vec<u64> {
    let n = alg.dim();
    let mut counts = vec![0u64; n + 1];
    let mut x = vec![Elem::ZERO; n];
    let mut scratch = Vec::with_capacity(2 * n * n);
    for idx in range {
        alg.decode_into(idx, &mut x);
        counts[alg.annihilator_exponent_with(&x, side, &mut scratch)] += 1;
    }
    counts
}

/// Full annihilator census of `K[G]` by rank, one elimination per element.
pub fn annihilator_histogram(
    alg: &GroupAlgebra,
    side: Side,
    caps: &Caps,
    workers: Option<usize>,
) -> Result<AnnihilatorHistogram> {
    let total = census_guard(alg, caps)?;
    let n = alg.dim();
    let chunks = total.div_ceil(CHUNK);
    let counts = with_workers(workers, || {
        (0..chunks)
            .into_par_iter()
            .map(|c| partial_histogram(alg, side, c * CHUNK..((c + 1) * CHUNK).min(total)))
            .reduce(
                || vec![0u64; n + 1],
                |mut a, b| {
                    a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    });
    Ok(AnnihilatorHistogram {
        group: alg.group().name().to_string(),
        coeff: alg.ring().spec().to_string(),
        side,
        base: alg.ring().size() as u64,
        counts,
    })
}

/// Which pairs `(a, b)` the naive counter accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `ab = 0`
    ProductZero,
    /// `ab = 0` and `ba = 0`
    BothProductsZero,
}

impl From<Side> for Relation {
    /// Summing `|Ann_l(x)|` or `|Ann_r(x)|` over `x` counts the pairs with
    /// `ab = 0` either way; the two-sided sum counts mutually annihilating pairs.
    fn from(side: Side) -> Self {
        match side {
            Side::Left | Side::Right => Relation::ProductZero,
            Side::TwoSided => Relation::BothProductsZero,
        }
    }
}

/// A finite ring whose elements can be enumerated by index `0..cardinality`,
/// with index 0 the zero element.
pub trait FiniteRing: Sync {
    type Elem: Clone + Send + Sync;

    fn cardinality(&self) -> u64;
    fn element(&self, index: u64) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn label(&self) -> String;

    fn product_is_zero(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.mul(a, b))
    }
}

impl FiniteRing for GroupAlgebra {
    type Elem = Vec<Elem>;

    fn cardinality(&self) -> u64 {
        GroupAlgebra::cardinality(self).unwrap_or(u64::MAX)
    }

    fn element(&self, index: u64) -> Vec<Elem> {
        GroupAlgebra::element(self, index).coeffs
    }

    fn mul(&self, a: &Vec<Elem>, b: &Vec<Elem>) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; self.dim()];
        self.multiply_into(a, b, &mut out);
        out
    }

    fn is_zero(&self, a: &Vec<Elem>) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    fn label(&self) -> String {
        GroupAlgebra::label(self)
    }

    /// Coefficient by coefficient, stopping at the first nonzero one.
    fn product_is_zero(&self, a: &Vec<Elem>, b: &Vec<Elem>) -> bool {
        let g = self.group();
        let k = self.ring();
        let n = self.dim();
        (0..n).all(|h| {
            (0..n)
                .fold(Elem::ZERO, |acc, i| {
                    let ai = a[i];
                    if ai.is_zero() {
                        acc
                    } else {
                        k.mul_add(acc, ai, b[g.mul(g.inverse(i), h)])
                    }
                })
                .is_zero()
        })
    }
}

/// `R1 (+) R2` with componentwise operations; index `i1 + |R1| * i2`.
#[derive(Clone, Debug)]
pub struct DirectSum<A, B> {
    pub first: A,
    pub second: B,
}

impl<A: FiniteRing, B: FiniteRing> DirectSum<A, B> {
    pub fn new(first: A, second: B) -> Self {
        DirectSum { first, second }
    }
}

impl<A: FiniteRing, B: FiniteRing> FiniteRing for DirectSum<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn cardinality(&self) -> u64 {
        self.first.cardinality().saturating_mul(self.second.cardinality())
    }

    fn element(&self, index: u64) -> Self::Elem {
        let m = self.first.cardinality();
        (self.first.element(index % m), self.second.element(index / m))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.first.mul(&a.0, &b.0), self.second.mul(&a.1, &b.1))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.first.is_zero(&a.0) && self.second.is_zero(&a.1)
    }

    fn label(&self) -> String {
        format!("{} (+) {}", self.first.label(), self.second.label())
    }

    fn product_is_zero(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.first.product_is_zero(&a.0, &b.0) && self.second.product_is_zero(&a.1, &b.1)
    }
}

/// The full matrix ring `M_2(F_q)`. Index digits (base `q`, least
/// significant first) are the entries `m00, m01, m10, m11`.
#[derive(Clone, Debug)]
pub struct Matrix2Ring {
    field: CoeffRing,
}

impl Matrix2Ring {
    pub fn new(field: CoeffRing) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::NotAField(field.spec().to_string()));
        }
        Ok(Matrix2Ring { field })
    }

    pub fn field(&self) -> &CoeffRing {
        &self.field
    }
}

impl FiniteRing for Matrix2Ring {
    type Elem = [Elem; 4];

    fn cardinality(&self) -> u64 {
        (self.field.size() as u64).pow(4)
    }

    fn element(&self, mut index: u64) -> [Elem; 4] {
        let q = self.field.size() as u64;
        let mut m = [Elem::ZERO; 4];
        for e in &mut m {
            *e = Elem((index % q) as u32);
            index /= q;
        }
        m
    }

    fn mul(&self, a: &[Elem; 4], b: &[Elem; 4]) -> [Elem; 4] {
        let k = &self.field;
        let dot = |x: Elem, y: Elem, z: Elem, w: Elem| k.add(k.mul(x, y), k.mul(z, w));
        [
            dot(a[0], b[0], a[1], b[2]),
            dot(a[0], b[1], a[1], b[3]),
            dot(a[2], b[0], a[3], b[2]),
            dot(a[2], b[1], a[3], b[3]),
        ]
    }

    fn is_zero(&self, a: &[Elem; 4]) -> bool {
        a.iter().all(|e| e.is_zero())
    }

    fn label(&self) -> String {
        format!("M2({})", self.field.spec())
    }
}

fn pair_guard<R: FiniteRing>(ring: &R, caps: &Caps) -> Result<u64> {
    let card = ring.cardinality();
    let pairs = card as u128 * card as u128;
    if pairs > caps.max_pairs as u128 {
        return Err(Error::CapExceeded {
            what: "pair enumeration",
            needed: pairs,
            cap: caps.max_pairs,
        });
    }
    Ok(card)
}

/// Literal count of ordered pairs `(a, b)` satisfying `relation`.
pub fn pair_count_naive<R: FiniteRing>(ring: &R, relation: Relation, caps: &Caps) -> Result<u64> {
    let card = pair_guard(ring, caps)?;
    let elems: Vec<R::Elem> = (0..card).map(|i| ring.element(i)).collect();
    Ok(elems
        .par_iter()
        .map(|a| {
            elems
                .iter()
                .filter(|b| {
                    ring.product_is_zero(a, b)
                        && (relation == Relation::ProductZero || ring.product_is_zero(b, a))
                })
                .count() as u64
        })
        .sum())
}

/// Pair count divided by `|R|^2`.
pub fn pair_probability<R: FiniteRing>(ring: &R, relation: Relation, caps: &Caps) -> Result<Probability> {
    let count = pair_count_naive(ring, relation, caps)?;
    let card = BigInt::from(ring.cardinality());
    Ok(BigRational::new(BigInt::from(count), &card * &card))
}

/// Annihilator sizes found by enumeration, for rings where sizes need not be
/// powers of a field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCensus {
    pub label: String,
    pub side: Side,
    pub cardinality: u64,
    /// `|Ann(x)|` -> number of `x`.
    pub sizes: BTreeMap<u64, u64>,
}

impl SizeCensus {
    pub fn weighted_sum(&self) -> u128 {
        self.sizes.iter().map(|(&s, &c)| s as u128 * c as u128).sum()
    }

    pub fn units(&self) -> u64 {
        self.sizes.get(&1).copied().unwrap_or(0)
    }

    pub fn probability(&self) -> Probability {
        let card = BigInt::from(self.cardinality);
        BigRational::new(BigInt::from(self.weighted_sum()), &card * &card)
    }
}

/// For each `x`, counts its annihilators by trying every candidate.
pub fn enumeration_census<R: FiniteRing>(ring: &R, side: Side, caps: &Caps) -> Result<SizeCensus> {
    let card = pair_guard(ring, caps)?;
    let elems: Vec<R::Elem> = (0..card).map(|i| ring.element(i)).collect();
    let sizes_per_x: Vec<u64> = elems
        .par_iter()
        .map(|x| {
            elems
                .iter()
                .filter(|a| match side {
                    Side::Left => ring.product_is_zero(a, x),
                    Side::Right => ring.product_is_zero(x, a),
                    Side::TwoSided => ring.product_is_zero(a, x) && ring.product_is_zero(x, a),
                })
                .count() as u64
        })
        .collect();
    let mut sizes = BTreeMap::new();
    for s in sizes_per_x {
        *sizes.entry(s).or_insert(0) += 1;
    }
    Ok(SizeCensus {
        label: ring.label(),
        side,
        cardinality: card,
        sizes,
    })
}

/// Nullity probability of `K[G]` under `side`'s convention: the census over
/// a field, the pair count otherwise.
pub fn nullity_probability(alg: &GroupAlgebra, side: Side, caps: &Caps, workers: Option<usize>) -> Result<Probability> {
    if alg.ring().is_field() {
        Ok(annihilator_histogram(alg, side, caps, workers)?.probability())
    } else {
        with_workers(workers, || pair_probability(alg, Relation::from(side), caps))
    }
}

/// Builds `K[G]` from parsed specs with the default ring cap.
pub fn group_algebra(coeff: &CoeffSpec, group: &crate::groups::GroupSpec) -> Result<GroupAlgebra> {
    Ok(GroupAlgebra::new(CoeffRing::new(*coeff)?, group.build()?))
}
