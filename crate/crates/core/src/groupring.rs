//! Arithmetic in the group ring `K[G]`.
//!
//! An element is its coefficient vector in the group's canonical order.
//! Enumerations address elements by a single index whose base-`|K|` digits,
//! least significant first, are the coefficients of `g_0, g_1, ...`.
//!
//! Annihilators follow one fixed convention:
//!
//! * `Ann_l(x) = {a : a x = 0}` is the kernel of right multiplication by `x`;
//! * `Ann_r(x) = {a : x a = 0}` is the kernel of left multiplication by `x`;
//! * the two-sided annihilator is the kernel of both maps stacked.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coeffring::{CoeffRing, Elem};
use crate::error::{Error, Result};
use crate::groups::CayleyGroup;
use crate::linalg::rank_in_place;
use crate::oracle::Caps;

/// Which annihilator of `x` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `{a : a x = 0}`
    Left,
    /// `{a : x a = 0}`
    Right,
    /// `{a : a x = 0 and x a = 0}`
    #[serde(rename = "twosided")]
    TwoSided,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Left, Side::Right, Side::TwoSided];

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::TwoSided => "twosided",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            "twosided" | "two-sided" | "both" => Ok(Side::TwoSided),
            other => Err(Error::Unsupported(format!(
                "unknown side {other:?}; expected left, right or twosided"
            ))),
        }
    }
}

/// The linear map a representation matrix stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MulSide {
    /// `a -> x a`
    Left,
    /// `a -> a x`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    pub coeffs: Vec<Elem>,
}

impl GroupRingElement {
    pub fn zero(n: usize) -> Self {
        GroupRingElement {
            coeffs: vec![Elem::ZERO; n],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[0] = Elem::ONE;
        e
    }

    pub fn from_indices(coeffs: &[u32]) -> Self {
        GroupRingElement {
            coeffs: coeffs.iter().map(|&c| Elem(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Matrix of multiplication by a fixed element, in the group basis.
///
/// Column `j` is the image of `g_j`; entry `(i, j)` is its coefficient of `g_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    pub side: MulSide,
    pub dim: usize,
    /// Row-major entries.
    pub entries: Vec<Elem>,
}

impl RepMatrix {
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.dim + j]
    }

    pub fn apply(&self, ring: &CoeffRing, v: &[Elem]) -> Vec<Elem> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim).fold(Elem::ZERO, |acc, j| ring.mul_add(acc, self.get(i, j), v[j]))
            })
            .collect()
    }
}

/// `K[G]` for a coefficient ring `K` and a finite group `G`.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    ring: CoeffRing,
    group: CayleyGroup,
    /// `left_quot[j * n + i]` = index of `g_j^{-1} g_i`.
    left_quot: Vec<u32>,
    /// `right_quot[i * n + j]` = index of `g_i g_j^{-1}`.
    right_quot: Vec<u32>,
}

impl GroupAlgebra {
    pub fn new(ring: CoeffRing, group: CayleyGroup) -> Self {
        let n = group.order();
        let mut left_quot = vec![0u32; n * n];
        let mut right_quot = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                left_quot[j * n + i] = group.mul(group.inverse(j), i) as u32;
                right_quot[i * n + j] = group.mul(i, group.inverse(j)) as u32;
            }
        }
        GroupAlgebra {
            ring,
            group,
            left_quot,
            right_quot,
        }
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn group(&self) -> &CayleyGroup {
        &self.group
    }

    /// `|G|`, the dimension over `K`.
    pub fn dim(&self) -> usize {
        self.group.order()
    }

    /// `|K|^|G|`, or `None` if it does not fit in a `u64`.
    pub fn cardinality(&self) -> Option<u64> {
        (self.ring.size() as u64).checked_pow(self.dim() as u32)
    }

    pub fn label(&self) -> String {
        format!("{}[{}]", self.ring.spec(), self.group.name())
    }

    fn check(&self, x: &GroupRingElement) -> Result<()> {
        if x.coeffs.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: x.coeffs.len(),
            });
        }
        Ok(())
    }

    /// Element with enumeration index `index`.
    pub fn element(&self, index: u64) -> GroupRingElement {
        let mut coeffs = vec![Elem::ZERO; self.dim()];
        self.decode_into(index, &mut coeffs);
        GroupRingElement { coeffs }
    }

    pub(crate) fn decode_into(&self, mut index: u64, out: &mut [Elem]) {
        let q = self.ring.size() as u64;
        for c in out.iter_mut() {
            *c = Elem((index % q) as u32);
            index /= q;
        }
    }

    pub fn index_of(&self, x: &GroupRingElement) -> u64 {
        let q = self.ring.size() as u64;
        x.coeffs.iter().rev().fold(0, |acc, c| acc * q + c.0 as u64)
    }

    /// Convolution product: `(ab)_h = sum over g g' = h of a_g b_g'`.
    pub fn multiply(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = vec![Elem::ZERO; self.dim()];
        self.multiply_into(&a.coeffs, &b.coeffs, &mut out);
        Ok(GroupRingElement { coeffs: out })
    }

    pub(crate) fn multiply_into(&self, a: &[Elem], b: &[Elem], out: &mut [Elem]) {
        out.fill(Elem::ZERO);
        for (i, &ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let h = self.group.mul(i, j);
                out[h] = self.ring.mul_add(out[h], ai, bj);
            }
        }
    }

    pub fn add(&self, a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(GroupRingElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| self.ring.add(x, y))
                .collect(),
        })
    }

    /// Matrix of `a -> x a` (`MulSide::Left`) or `a -> a x` (`MulSide::Right`).
    pub fn regular_matrix(&self, x: &GroupRingElement, side: MulSide) -> Result<RepMatrix> {
        self.check(x)?;
        let n = self.dim();
        let mut entries = vec![Elem::ZERO; n * n];
        self.fill_matrix(&x.coeffs, side, &mut entries);
        Ok(RepMatrix { side, dim: n, entries })
    }

    /// Writes the `n x n` matrix for `x` into `out`, row-major.
    #[inline]
    pub(crate) fn fill_matrix(&self, x: &[Elem], side: MulSide, out: &mut [Elem]) {
        let n = self.dim();
        match side {
            // (g_j x)_i = x_{g_j^{-1} g_i}
            MulSide::Right => {
                for i in 0..n {
                    for j in 0..n {
                        out[i * n + j] = x[self.left_quot[j * n + i] as usize];
                    }
                }
            }
            // (x g_j)_i = x_{g_i g_j^{-1}}
            MulSide::Left => {
                for i in 0..n {
                    for j in 0..n {
                        out[i * n + j] = x[self.right_quot[i * n + j] as usize];
                    }
                }
            }
        }
    }

    /// `k` such that `|Ann_side(x)| = |K|^k`. Needs a field.
    ///
    /// `scratch` is resized as needed and may be reused across calls.
    pub(crate) fn annihilator_exponent_with(&self, x: &[Elem], side: Side, scratch: &mut Vec<Elem>) -> usize {
        let n = self.dim();
        match side {
            Side::Left | Side::Right => {
                scratch.resize(n * n, Elem::ZERO);
                let mul_side = if side == Side::Left { MulSide::Right } else { MulSide::Left };
                self.fill_matrix(x, mul_side, scratch);
                n - rank_in_place(&self.ring, scratch, n, n)
            }
            Side::TwoSided => {
                scratch.resize(2 * n * n, Elem::ZERO);
                let (top, bottom) = scratch.split_at_mut(n * n);
                self.fill_matrix(x, MulSide::Right, top);
                self.fill_matrix(x, MulSide::Left, bottom);
                n - rank_in_place(&self.ring, scratch, 2 * n, n)
            }
        }
    }

    /// Dimension of the annihilator over a field coefficient ring.
    pub fn annihilator_dim(&self, x: &GroupRingElement, side: Side) -> Result<usize> {
        self.check(x)?;
        if !self.ring.is_field() {
            return Err(Error::NotAField(self.ring.spec().to_string()));
        }
        Ok(self.annihilator_exponent_with(&x.coeffs, side, &mut Vec::new()))
    }

    /// `|Ann_side(x)|`: by rank over a field, by enumerating every candidate
    /// annihilator otherwise.
    pub fn annihilator_size(&self, x: &GroupRingElement, side: Side, caps: &Caps) -> Result<u64> {
        if self.ring.is_field() {
            let k = self.annihilator_dim(x, side)?;
            Ok((self.ring.size() as u64).pow(k as u32))
        } else {
            self.annihilator_size_by_enumeration(x, side, caps)
        }
    }

    /// Literal count of `a` with `a x = 0` and/or `x a = 0`.
    pub fn annihilator_size_by_enumeration(&self, x: &GroupRingElement, side: Side, caps: &Caps) -> Result<u64> {
        self.check(x)?;
        let total = self.cardinality().filter(|&t| t <= caps.max_elements).ok_or(Error::CapExceeded {
            what: "annihilator enumeration",
            needed: (self.ring.size() as u128).saturating_pow(self.dim() as u32),
            cap: caps.max_elements,
        })?;
        let n = self.dim();
        let mut a = vec![Elem::ZERO; n];
        let mut prod = vec![Elem::ZERO; n];
        let mut count = 0;
        for idx in 0..total {
            self.decode_into(idx, &mut a);
            let left_ok = |prod: &mut Vec<Elem>| {
                self.multiply_into(&a, &x.coeffs, prod);
                prod.iter().all(|c| c.is_zero())
            };
            let right_ok = |prod: &mut Vec<Elem>| {
                self.multiply_into(&x.coeffs, &a, prod);
                prod.iter().all(|c| c.is_zero())
            };
            let hit = match side {
                Side::Left => left_ok(&mut prod),
                Side::Right => right_ok(&mut prod),
                Side::TwoSided => left_ok(&mut prod) && right_ok(&mut prod),
            };
            if hit {
                count += 1;
            }
        }
        Ok(count)
    }

    pub fn is_unit(&self, x: &GroupRingElement, caps: &Caps) -> Result<bool> {
        Ok(self.annihilator_size(x, Side::Left, caps)? == 1)
    }
}
