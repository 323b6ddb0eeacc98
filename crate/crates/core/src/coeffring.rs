//! Finite coefficient rings: prime fields `F_p`, extension fields `F_{p^m}` and
//! the residue rings `Z/nZ`.
//!
//! Elements are dense indices in `[0, size)`. Index 0 is zero and index 1 is
//! one for every kind. For an extension field the base-`p` digits of an index,
//! least significant first, are the coefficients `a_0, a_1, ..., a_{m-1}` of
//! `a_0 + a_1 t + ... + a_{m-1} t^{m-1}` modulo the defining polynomial.
//!
//! The defining polynomial of `F_{p^m}` is the lexicographically smallest
//! monic irreducible of degree `m`, comparing the tuple `(a_{m-1}, ..., a_0)`
//! of its non-leading coefficients. Since that tuple read as base-`p` digits is
//! exactly a candidate index, the search walks candidate indices upward.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formulas::numtheory::{is_prime, prime_power};

/// Default cap on the number of elements of a coefficient ring.
pub const DEFAULT_RING_CAP: u64 = 1 << 22;

/// Full addition tables are kept for extension fields up to this size.
const ADD_TABLE_MAX: u32 = 256;

/// An element of a [`CoeffRing`], as its canonical index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A parsed coefficient-ring description: `F:p^m`, `F:q` or `Z:n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffSpec {
    Field { p: u64, m: u32 },
    Integers { n: u64 },
}

impl CoeffSpec {
    pub fn field(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Ok(CoeffSpec::Field { p, m })
    }

    /// Number of elements, without building the ring.
    pub fn size(&self) -> u128 {
        match *self {
            CoeffSpec::Field { p, m } => (p as u128).pow(m),
            CoeffSpec::Integers { n } => n as u128,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(self, CoeffSpec::Field { .. })
    }

    /// Characteristic `p` for fields, `n` for `Z/nZ`.
    pub fn characteristic(&self) -> u64 {
        match *self {
            CoeffSpec::Field { p, .. } => p,
            CoeffSpec::Integers { n } => n,
        }
    }
}

impl fmt::Display for CoeffSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CoeffSpec::Field { p, m: 1 } => write!(f, "F:{p}"),
            CoeffSpec::Field { p, m } => write!(f, "F:{p}^{m}"),
            CoeffSpec::Integers { n } => write!(f, "Z:{n}"),
        }
    }
}

impl FromStr for CoeffSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::ParseCoeff {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        let (kind, rest) = trimmed
            .split_once(':')
            .ok_or_else(|| bad("expected F:p^m, F:q or Z:n"))?;
        let int = |t: &str| -> Result<u64> {
            t.trim()
                .parse::<u64>()
                .map_err(|_| bad(&format!("{t:?} is not a non-negative integer")))
        };
        match kind.trim() {
            "F" | "f" | "GF" => {
                if let Some((p, m)) = rest.split_once('^') {
                    let p = int(p)?;
                    let m = int(m)?;
                    if !is_prime(p) {
                        return Err(Error::NotPrime(p));
                    }
                    if m == 0 {
                        return Err(Error::ZeroDegree);
                    }
                    let m = u32::try_from(m).map_err(|_| bad("degree too large"))?;
                    Ok(CoeffSpec::Field { p, m })
                } else {
                    CoeffSpec::field(int(rest)?)
                }
            }
            "Z" | "z" => {
                let n = int(rest)?;
                if n < 2 {
                    return Err(Error::ModulusTooSmall(n));
                }
                Ok(CoeffSpec::Integers { n })
            }
            other => Err(bad(&format!("unknown ring kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingKind {
    PrimeField,
    ExtensionField,
    Integers,
}

#[derive(Clone, Debug)]
enum Arith {
    /// `Z/nZ`, including prime fields.
    Modular { n: u32 },
    /// `F_{p^m}` with `m >= 2`.
    Extension {
        p: u32,
        m: u32,
        /// `exp[k] = g^k` for a primitive element `g`, stored twice over so
        /// that `exp[log a + log b]` needs no reduction.
        exp: Vec<u32>,
        log: Vec<u32>,
        neg: Vec<u32>,
        add: Option<Vec<u32>>,
    },
}

/// A finite coefficient ring. Immutable after construction.
#[derive(Clone, Debug)]
pub struct CoeffRing {
    spec: CoeffSpec,
    kind: RingKind,
    size: u32,
    modulus_poly: Vec<u32>,
    arith: Arith,
}

impl CoeffRing {
    /// Builds the ring with the default size cap.
    pub fn new(spec: CoeffSpec) -> Result<Self> {
        Self::with_cap(spec, DEFAULT_RING_CAP)
    }

    pub fn with_cap(spec: CoeffSpec, cap: u64) -> Result<Self> {
        let size = spec.size();
        if size > cap as u128 || size > u32::MAX as u128 {
            return Err(Error::RingTooLarge { size, cap });
        }
        let size = size as u32;
        match spec {
            CoeffSpec::Integers { n } => {
                if n < 2 {
                    return Err(Error::ModulusTooSmall(n));
                }
                Ok(CoeffRing {
                    spec,
                    kind: RingKind::Integers,
                    size,
                    modulus_poly: Vec::new(),
                    arith: Arith::Modular { n: size },
                })
            }
            CoeffSpec::Field { p, m } => {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                if m == 0 {
                    return Err(Error::ZeroDegree);
                }
                if m == 1 {
                    return Ok(CoeffRing {
                        spec,
                        kind: RingKind::PrimeField,
                        size,
                        modulus_poly: Vec::new(),
                        arith: Arith::Modular { n: size },
                    });
                }
                let p = p as u32;
                let modulus = smallest_irreducible(p, m);
                let arith = extension_tables(p, m, &modulus);
                Ok(CoeffRing {
                    spec,
                    kind: RingKind::ExtensionField,
                    size,
                    modulus_poly: modulus,
                    arith,
                })
            }
        }
    }

    /// Convenience constructor for `F_q`.
    pub fn field(q: u64) -> Result<Self> {
        Self::new(CoeffSpec::field(q)?)
    }

    /// Convenience constructor for `Z/nZ`.
    pub fn integers(n: u64) -> Result<Self> {
        Self::new(CoeffSpec::Integers { n })
    }

    pub fn spec(&self) -> CoeffSpec {
        self.spec
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    #[inline]
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn is_field(&self) -> bool {
        self.kind != RingKind::Integers
    }

    /// The prime `p` of a field; `None` for `Z/nZ`.
    pub fn prime(&self) -> Option<u64> {
        match self.spec {
            CoeffSpec::Field { p, .. } => Some(p),
            CoeffSpec::Integers { .. } => None,
        }
    }

    /// The extension degree `m` of a field; `None` for `Z/nZ`.
    pub fn degree(&self) -> Option<u32> {
        match self.spec {
            CoeffSpec::Field { m, .. } => Some(m),
            CoeffSpec::Integers { .. } => None,
        }
    }

    /// Additive order of one.
    pub fn characteristic(&self) -> u64 {
        self.spec.characteristic()
    }

    /// Non-leading coefficients `a_0, ..., a_{m-1}` of the monic defining
    /// polynomial. Empty for prime fields and `Z/nZ`.
    pub fn modulus_poly(&self) -> &[u32] {
        &self.modulus_poly
    }

    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index >= self.size as u64 {
            return Err(Error::ElementOutOfRange {
                index,
                size: self.size as u64,
            });
        }
        Ok(Elem(index as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.arith {
            Arith::Modular { n } => {
                let s = a.0 + b.0;
                Elem(if s >= *n { s - n } else { s })
            }
            Arith::Extension { p, m, add, .. } => {
                if *p == 2 {
                    Elem(a.0 ^ b.0)
                } else if let Some(table) = add {
                    Elem(table[(a.0 * self.size + b.0) as usize])
                } else {
                    Elem(digitwise_add(a.0, b.0, *p, *m))
                }
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        match &self.arith {
            Arith::Modular { n } => Elem(if a.0 == 0 { 0 } else { n - a.0 }),
            Arith::Extension { neg, .. } => Elem(neg[a.0 as usize]),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.arith {
            Arith::Modular { n } => Elem(((a.0 as u64 * b.0 as u64) % *n as u64) as u32),
            Arith::Extension { exp, log, .. } => {
                if a.0 == 0 || b.0 == 0 {
                    Elem(0)
                } else {
                    Elem(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize])
                }
            }
        }
    }

    /// `a + b * c`, the elimination kernel.
    #[inline]
    pub fn mul_add(&self, a: Elem, b: Elem, c: Elem) -> Elem {
        self.add(a, self.mul(b, c))
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        match &self.arith {
            Arith::Modular { n } => mod_inverse(a.0 as u64, *n as u64)
                .map(|x| Elem(x as u32))
                .ok_or(Error::NotInvertible(a.0)),
            Arith::Extension { exp, log, .. } => {
                if a.0 == 0 {
                    return Err(Error::NotInvertible(0));
                }
                let order = self.size - 1;
                let l = log[a.0 as usize];
                Ok(Elem(exp[((order - l) % order) as usize]))
            }
        }
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inv(a).is_ok()
    }

    /// First `(x, y)` in index order with `x^2 + y^2 = -1`, if any.
    pub fn solve_sum_of_two_squares_minus_one(&self) -> Option<(Elem, Elem)> {
        let target = self.neg(Elem::ONE);
        let squares: Vec<Elem> = self.elements().map(|x| self.mul(x, x)).collect();
        for x in self.elements() {
            let need = self.sub(target, squares[x.0 as usize]);
            if let Some(y) = squares.iter().position(|&s| s == need) {
                return Some((x, Elem(y as u32)));
            }
        }
        None
    }

    /// Human-readable element: polynomial in `t` for extension fields.
    pub fn format_elem(&self, a: Elem) -> String {
        match &self.arith {
            Arith::Modular { .. } => a.0.to_string(),
            Arith::Extension { p, m, .. } => {
                let digits = to_digits(a.0, *p, *m);
                let terms: Vec<String> = digits
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| match (i, c) {
                        (0, c) => c.to_string(),
                        (1, 1) => "t".into(),
                        (1, c) => format!("{c}t"),
                        (i, 1) => format!("t^{i}"),
                        (i, c) => format!("{c}t^{i}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)
    }
}

/// Whether `x^2 + y^2 = -1` has a solution in `ring`, with the first witness
/// in index order.
pub fn solvable_sum_of_squares_is_minus_one(ring: &CoeffRing) -> Option<(Elem, Elem)> {
    ring.solve_sum_of_two_squares_minus_one()
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as u64)
}

fn to_digits(mut index: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(index % p);
        index /= p;
    }
    out
}

fn from_digits(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn digitwise_add(mut a: u32, mut b: u32, p: u32, m: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..m {
        let d = (a % p + b % p) % p;
        out += d * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out
}

/// Remainder of `num` (little-endian coefficients) modulo the monic `den`.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    while r.len() > dd {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomial of degree `deg` whose non-leading coefficients are the
/// base-`p` digits of `index`.
fn monic_from_index(index: u64, p: u32, deg: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    let mut rest = index;
    for _ in 0..deg {
        coeffs.push((rest % p as u64) as u32);
        rest /= p as u64;
    }
    coeffs.push(1);
    coeffs
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = (poly.len() - 1) as u32;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for idx in 0..count {
            let divisor = monic_from_index(idx, p, d);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let total = (p as u64).pow(m);
    for idx in 0..total {
        let mut candidate = monic_from_index(idx, p, m);
        if is_irreducible(&candidate, p) {
            candidate.pop();
            return candidate;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_{p}")
}

fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(modulus.len() - 1, 0);
    r
}

fn extension_tables(p: u32, m: u32, modulus_low: &[u32]) -> Arith {
    let size = p.pow(m);
    let order = size - 1;
    let mut modulus = modulus_low.to_vec();
    modulus.push(1);

    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; size as usize];
    let mut found = false;
    'candidates: for g in 2..size {
        let g_digits = to_digits(g, p, m);
        let mut cur = to_digits(1, p, m);
        for k in 0..order {
            let idx = from_digits(&cur, p);
            if k > 0 && idx == 1 {
                continue 'candidates;
            }
            exp[k as usize] = idx;
            cur = mul_mod(&cur, &g_digits, &modulus, p);
        }
        found = true;
        break;
    }
    assert!(found, "multiplicative group of F_{p}^{m} has no generator");
    for k in 0..order {
        exp[(order + k) as usize] = exp[k as usize];
        log[exp[k as usize] as usize] = k;
    }

    let neg: Vec<u32> = (0..size)
        .map(|a| {
            let d: Vec<u32> = to_digits(a, p, m).iter().map(|&c| (p - c) % p).collect();
            from_digits(&d, p)
        })
        .collect();
    let add = (p != 2 && size <= ADD_TABLE_MAX).then(|| {
        let mut t = vec![0u32; (size * size) as usize];
        for a in 0..size {
            for b in 0..size {
                t[(a * size + b) as usize] = digitwise_add(a, b, p, m);
            }
        }
        t
    });
    Arith::Extension {
        p,
        m,
        exp,
        log,
        neg,
        add,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn f4_modulus_is_t2_t_1() {
        let k = CoeffRing::field(4).unwrap();
        assert_eq!(k.modulus_poly(), &[1, 1]);
        // Brute force: t^2, t^2+1 = (t+1)^2, t^2+t = t(t+1) are reducible.
        assert!(!is_irreducible(&[0, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(!is_irreducible(&[0, 1, 1], 2));
        assert!(is_irreducible(&[1, 1, 1], 2));
    }

    #[test]
    fn f9_modulus_is_t2_plus_1() {
        let k = CoeffRing::field(9).unwrap();
        assert_eq!(k.modulus_poly(), &[1, 0]);
    }

    #[test]
    fn z4_basics() {
        let k: CoeffRing = CoeffRing::new("Z:4".parse().unwrap()).unwrap();
        assert_eq!(k.size(), 4);
        assert_eq!(k.characteristic(), 4);
        assert!(!k.is_field());
        assert_eq!(k.inv(Elem(2)), Err(Error::NotInvertible(2)));
        assert_eq!(k.inv(Elem(3)), Ok(Elem(3)));
    }

    #[test]
    fn f7_inverse_of_three() {
        let k = CoeffRing::field(7).unwrap();
        assert_eq!(k.inv(Elem(3)).unwrap(), Elem(5));
    }

    #[test]
    fn f4_t_squared() {
        let k = CoeffRing::field(4).unwrap();
        // t is index 2, t+1 is index 3.
        assert_eq!(k.mul(Elem(2), Elem(2)), Elem(3));
        assert_eq!(k.format_elem(Elem(3)), "t+1");
    }

    #[test]
    fn inverse_of_zero_fails() {
        for q in [2, 7, 8, 9] {
            let k = CoeffRing::field(q).unwrap();
            assert!(k.inv(Elem::ZERO).is_err());
        }
    }

    #[test]
    fn sum_of_squares_witnesses() {
        let k3 = CoeffRing::field(3).unwrap();
        assert_eq!(k3.solve_sum_of_two_squares_minus_one(), Some((Elem(1), Elem(1))));
        let k5 = CoeffRing::field(5).unwrap();
        assert_eq!(k5.solve_sum_of_two_squares_minus_one(), Some((Elem(0), Elem(2))));
        let k7 = CoeffRing::field(7).unwrap();
        let (x, y) = k7.solve_sum_of_two_squares_minus_one().unwrap();
        assert_eq!((x, y), (Elem(2), Elem(3)));
        let s = k7.add(k7.mul(x, x), k7.mul(y, y));
        assert_eq!(s, k7.neg(Elem::ONE));
    }

    #[test]
    fn odd_characteristic_fields_always_solve() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121, 125] {
            let k = CoeffRing::field(q).unwrap();
            let (x, y) = k.solve_sum_of_two_squares_minus_one().unwrap();
            assert_eq!(k.add(k.mul(x, x), k.mul(y, y)), k.neg(Elem::ONE), "q={q}");
        }
    }

    #[test]
    fn parse_specs() {
        assert_eq!("F:2^3".parse::<CoeffSpec>().unwrap(), CoeffSpec::Field { p: 2, m: 3 });
        assert_eq!("F:9".parse::<CoeffSpec>().unwrap(), CoeffSpec::Field { p: 3, m: 2 });
        assert_eq!("Z:6".parse::<CoeffSpec>().unwrap(), CoeffSpec::Integers { n: 6 });
        assert_eq!("F:6".parse::<CoeffSpec>(), Err(Error::NotPrimePower(6)));
        assert_eq!("F:4^2".parse::<CoeffSpec>(), Err(Error::NotPrime(4)));
        assert_eq!("F:2^0".parse::<CoeffSpec>(), Err(Error::ZeroDegree));
        assert_eq!("Z:1".parse::<CoeffSpec>(), Err(Error::ModulusTooSmall(1)));
        assert!("Q:5".parse::<CoeffSpec>().is_err());
        assert!("F5".parse::<CoeffSpec>().is_err());
        assert_eq!(CoeffSpec::Field { p: 2, m: 2 }.to_string(), "F:2^2");
        assert_eq!(CoeffSpec::Field { p: 7, m: 1 }.to_string(), "F:7");
    }

    #[test]
    fn size_cap_is_enforced() {
        let err = CoeffRing::with_cap(CoeffSpec::Field { p: 2, m: 10 }, 512).unwrap_err();
        assert!(matches!(err, Error::RingTooLarge { size: 1024, cap: 512 }));
    }

    /// Fermat and inverse identities over every element of several fields.
    #[test]
    fn field_axioms_by_enumeration() {
        for q in [2u64, 3, 4, 5, 8, 9, 16, 25, 27, 32, 49, 64, 81, 125, 128, 243, 256, 343, 625, 729, 1024, 2187, 4096] {
            let k = CoeffRing::field(q).unwrap();
            for a in k.elements().skip(1) {
                assert_eq!(k.mul(k.inv(a).unwrap(), a), Elem::ONE, "q={q} a={a}");
                assert_eq!(k.pow(a, q - 1), Elem::ONE, "q={q} a={a}");
                assert_eq!(k.add(a, k.neg(a)), Elem::ZERO);
            }
        }
    }

    #[test]
    fn ring_axioms_on_all_triples_of_small_rings() {
        let specs = ["F:2", "F:4", "F:5", "F:8", "F:9", "F:16", "F:27", "F:32", "Z:4", "Z:6", "Z:12"];
        for s in specs {
            let k = CoeffRing::new(s.parse().unwrap()).unwrap();
            for a in k.elements() {
                for b in k.elements() {
                    assert_eq!(k.add(a, b), k.add(b, a));
                    assert_eq!(k.mul(a, b), k.mul(b, a));
                    for c in k.elements() {
                        assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
                        assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
                        assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
                    }
                }
            }
        }
    }

    fn big_fields() -> impl Strategy<Value = u64> {
        prop::sample::select(vec![
            37u64, 125, 169, 289, 343, 361, 512, 625, 729, 2048, 3125, 6561, 65536, 59049,
        ])
    }

    proptest! {
        #[test]
        fn random_triples_satisfy_ring_axioms(q in big_fields(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
            let k = CoeffRing::field(q).unwrap();
            let n = k.size();
            let (a, b, c) = (Elem(a % n), Elem(b % n), Elem(c % n));
            prop_assert_eq!(k.add(k.add(a, b), c), k.add(a, k.add(b, c)));
            prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
            prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
            prop_assert_eq!(k.sub(k.add(a, b), b), a);
        }
    }
}
