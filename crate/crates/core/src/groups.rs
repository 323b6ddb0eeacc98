//! Finite groups as validated Cayley tables.
//!
//! Element 0 is always the identity. The element order chosen by each
//! constructor is part of the public contract: coefficient vectors and
//! representation matrices are laid out in that order.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

use crate::error::{Error, Result};

/// The first group axiom a candidate table violates, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupViolation {
    #[error("empty table")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry at ({i}, {j}) is {value}, outside 0..{order}")]
    OutOfRange {
        i: usize,
        j: usize,
        value: usize,
        order: usize,
    },
    #[error("identity axiom violated at j={j}")]
    Identity { j: usize },
    #[error("row {row} is not a permutation: {value} repeats")]
    RowNotPermutation { row: usize, value: usize },
    #[error("column {col} is not a permutation: {value} repeats")]
    ColumnNotPermutation { col: usize, value: usize },
    #[error("associativity violated at ({a}, {b}, {c})")]
    Associativity { a: usize, b: usize, c: usize },
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyGroup {
    name: String,
    order: usize,
    /// Row-major, `table[i * order + j]` is the index of `g_i * g_j`.
    table: Vec<u32>,
    inverses: Vec<u32>,
    names: Vec<String>,
}

impl CayleyGroup {
    fn from_validated(name: String, order: usize, table: Vec<u32>, names: Vec<String>) -> Self {
        let inverses = (0..order)
            .map(|i| {
                (0..order)
                    .find(|&j| table[i * order + j] == 0)
                    .expect("validated table has inverses") as u32
            })
            .collect();
        CayleyGroup {
            name,
            order,
            table,
            inverses,
            names,
        }
    }

    /// `C_n = <a | a^n = 1>` with elements `e, a, a^2, ..., a^{n-1}`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParseGroup {
                spec: "C:0".into(),
                reason: "cyclic group order must be at least 1".into(),
            });
        }
        let table = (0..n)
            .flat_map(|i| (0..n).map(move |j| ((i + j) % n) as u32))
            .collect();
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "a".to_string(),
                k => format!("a^{k}"),
            })
            .collect();
        Ok(Self::from_validated(format!("C{n}"), n, table, names))
    }

    /// Direct product, elements ordered lexicographically with `left` major:
    /// `(g, h)` has index `index(g) * |right| + index(h)`.
    pub fn product(left: &CayleyGroup, right: &CayleyGroup) -> Self {
        let (a, b) = (left.order, right.order);
        let n = a * b;
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let g = left.mul(i / b, j / b);
                let h = right.mul(i % b, j % b);
                table.push((g * b + h) as u32);
            }
        }
        let names = (0..n)
            .map(|i| format!("({},{})", left.names[i / b], right.names[i % b]))
            .collect();
        Self::from_validated(format!("{}x{}", left.name, right.name), n, table, names)
    }

    /// The symmetric group on `{1, 2, 3}`, ordered
    /// `e, (1 2), (1 3), (2 3), (1 2 3), (1 3 2)`.
    ///
    /// Products compose right to left: `(s t)(x) = s(t(x))`.
    pub fn s3() -> Self {
        // Images of (1, 2, 3), zero-based.
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [2, 1, 0],
            [0, 2, 1],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let index_of = |p: [usize; 3]| PERMS.iter().position(|&q| q == p).unwrap();
        let mut table = Vec::with_capacity(36);
        for s in PERMS {
            for t in PERMS {
                table.push(index_of([s[t[0]], s[t[1]], s[t[2]]]) as u32);
            }
        }
        let names = ["e", "(1 2)", "(1 3)", "(2 3)", "(1 2 3)", "(1 3 2)"]
            .map(String::from)
            .to_vec();
        Self::from_validated("S3".into(), 6, table, names)
    }

    /// The quaternion group `<a, b | a^4 = 1, b^2 = a^2, b a = a^3 b>`,
    /// ordered `1, a, a^2, a^3, b, ab, a^2 b, a^3 b`: index `i + 4j` is `a^i b^j`.
    pub fn q8() -> Self {
        let mut table = Vec::with_capacity(64);
        for x in 0..8usize {
            for y in 0..8usize {
                let (i, j) = (x % 4, x / 4);
                let (k, l) = (y % 4, y / 4);
                // a^i b^j a^k b^l = a^(i +- k) b^(j + l), and b^2 = a^2.
                let mut e = (if j == 0 { i + k } else { i + 4 - k }) % 4;
                let mut s = j + l;
                if s == 2 {
                    e = (e + 2) % 4;
                    s = 0;
                }
                table.push((e + 4 * s) as u32);
            }
        }
        let names = ["1", "a", "a^2", "a^3", "b", "ab", "a^2b", "a^3b"]
            .map(String::from)
            .to_vec();
        Self::from_validated("Q8".into(), 8, table, names)
    }

    /// Validates and wraps a raw table. Elements are named `g0, g1, ...`.
    pub fn from_table(name: impl Into<String>, raw: &[Vec<usize>]) -> std::result::Result<Self, GroupViolation> {
        validate_table(raw)?;
        let n = raw.len();
        let table = raw.iter().flatten().map(|&v| v as u32).collect();
        let names = (0..n).map(|i| format!("g{i}")).collect();
        Ok(Self::from_validated(name.into(), n, table, names))
    }

    /// Loads a JSON array-of-arrays table.
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let raw: Vec<Vec<usize>> = serde_json::from_str(&text).map_err(|e| Error::ParseGroup {
            spec: format!("@{}", path.display()),
            reason: e.to_string(),
        })?;
        Ok(Self::from_table(format!("@{}", path.display()), &raw)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j] as usize
    }

    #[inline]
    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn validate(&self) -> std::result::Result<(), GroupViolation> {
        validate_table(&self.rows())
    }
}

impl fmt::Display for CayleyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Checks identity at index 0, the Latin-square property and associativity,
/// in that order, reporting the first failure.
pub fn validate_table(raw: &[Vec<usize>]) -> std::result::Result<(), GroupViolation> {
    let n = raw.len();
    if n == 0 {
        return Err(GroupViolation::Empty);
    }
    for (i, row) in raw.iter().enumerate() {
        if row.len() != n {
            return Err(GroupViolation::NotSquare {
                row: i,
                len: row.len(),
                order: n,
            });
        }
        if let Some((j, &value)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
            return Err(GroupViolation::OutOfRange { i, j, value, order: n });
        }
    }
    for j in 0..n {
        if raw[0][j] != j || raw[j][0] != j {
            return Err(GroupViolation::Identity { j });
        }
    }
    for i in 0..n {
        let mut seen_row = vec![false; n];
        let mut seen_col = vec![false; n];
        for j in 0..n {
            let r = raw[i][j];
            if std::mem::replace(&mut seen_row[r], true) {
                return Err(GroupViolation::RowNotPermutation { row: i, value: r });
            }
            let c = raw[j][i];
            if std::mem::replace(&mut seen_col[c], true) {
                return Err(GroupViolation::ColumnNotPermutation { col: i, value: c });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = raw[a][b];
            for c in 0..n {
                if raw[ab][c] != raw[a][raw[b][c]] {
                    return Err(GroupViolation::Associativity { a, b, c });
                }
            }
        }
    }
    Ok(())
}

/// A group description: `C:n` (or `Cn`), `S3`, `Q8`, products `AxB`, or
/// `@path.json` for a raw table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    S3,
    Q8,
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(PathBuf),
}

impl GroupSpec {
    pub fn build(&self) -> Result<CayleyGroup> {
        match self {
            GroupSpec::Cyclic(n) => CayleyGroup::cyclic(*n),
            GroupSpec::S3 => Ok(CayleyGroup::s3()),
            GroupSpec::Q8 => Ok(CayleyGroup::q8()),
            GroupSpec::Product(a, b) => Ok(CayleyGroup::product(&a.build()?, &b.build()?)),
            GroupSpec::Table(path) => CayleyGroup::from_json_file(path),
        }
    }

    /// Order of the group, when known without building it.
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::S3 => Some(6),
            GroupSpec::Q8 => Some(8),
            GroupSpec::Product(a, b) => Some(a.order()? * b.order()?),
            GroupSpec::Table(_) => None,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::S3 => f.write_str("S3"),
            GroupSpec::Q8 => f.write_str("Q8"),
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
            GroupSpec::Table(p) => write!(f, "@{}", p.display()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(path) = s.strip_prefix('@') {
            return Ok(GroupSpec::Table(PathBuf::from(path)));
        }
        let bad = |reason: String| Error::ParseGroup {
            spec: s.to_string(),
            reason,
        };
        let factor = |t: &str| -> Result<GroupSpec> {
            let t = t.trim();
            match t {
                "S3" | "s3" => return Ok(GroupSpec::S3),
                "Q8" | "q8" => return Ok(GroupSpec::Q8),
                _ => {}
            }
            let digits = t
                .strip_prefix("C:")
                .or_else(|| t.strip_prefix('C'))
                .or_else(|| t.strip_prefix("c:"))
                .or_else(|| t.strip_prefix('c'))
                .ok_or_else(|| bad(format!("unknown factor {t:?}; expected C:n, Cn, S3 or Q8")))?;
            let n: usize = digits
                .parse()
                .map_err(|_| bad(format!("{digits:?} is not a group order")))?;
            if n == 0 {
                return Err(bad("cyclic group order must be at least 1".into()));
            }
            Ok(GroupSpec::Cyclic(n))
        };
        let mut parts = s.split(['x', 'X', '×']);
        let first = factor(parts.next().unwrap_or_default())?;
        parts.try_fold(first, |acc, t| Ok(GroupSpec::Product(Box::new(acc), Box::new(factor(t)?))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four() {
        let g = CayleyGroup::cyclic(4).unwrap();
        assert_eq!(g.mul(1, 3), 0);
        assert!(g.is_abelian());
        assert!(g.validate().is_ok());
    }

    #[test]
    fn q8_is_nonabelian() {
        let g = CayleyGroup::q8();
        assert_eq!(g.order(), 8);
        assert_ne!(g.mul(1, 4), g.mul(4, 1));
        assert_eq!(g.mul(1, 4), 5);
        assert_eq!(g.mul(4, 1), 7);
        assert_eq!(g.mul(4, 4), 2);
        assert!(!g.is_abelian());
        assert!(g.validate().is_ok());
        // a^4 = 1, b^2 = a^2, b a b^-1 = a^-1.
        let a2 = g.mul(1, 1);
        assert_eq!(g.mul(a2, a2), 0);
        let bab = g.mul(g.mul(4, 1), g.inverse(4));
        assert_eq!(bab, g.inverse(1));
    }

    #[test]
    fn s3_is_nonabelian_and_valid() {
        let g = CayleyGroup::s3();
        assert!(g.validate().is_ok());
        assert!(!g.is_abelian());
        for t in 1..=3 {
            assert_eq!(g.mul(t, t), 0, "transposition {t} is an involution");
        }
        assert_eq!(g.mul(4, 4), 5);
        assert_eq!(g.mul(4, 5), 0);
        // (1 2)(2 3) = (1 2 3) under right-to-left composition.
        assert_eq!(g.mul(1, 3), 4);
    }

    #[test]
    fn klein_four() {
        let c2 = CayleyGroup::cyclic(2).unwrap();
        let v = CayleyGroup::product(&c2, &c2);
        assert_eq!(v.order(), 4);
        assert!(v.validate().is_ok());
        assert!(v.is_abelian());
        for g in 1..4 {
            assert_eq!(v.mul(g, g), 0);
        }
    }

    #[test]
    fn products_multiply_orders() {
        let c3 = CayleyGroup::cyclic(3).unwrap();
        let s3 = CayleyGroup::s3();
        let p = CayleyGroup::product(&c3, &s3);
        assert_eq!(p.order(), 18);
        assert!(p.validate().is_ok());
        assert!(!p.is_abelian());
        let c4 = CayleyGroup::cyclic(4).unwrap();
        assert!(CayleyGroup::product(&c3, &c4).is_abelian());
    }

    #[test]
    fn identity_violation_reported() {
        let raw = vec![vec![0, 0], vec![1, 0]];
        let err = validate_table(&raw).unwrap_err();
        assert_eq!(err, GroupViolation::Identity { j: 1 });
        assert_eq!(err.to_string(), "identity axiom violated at j=1");
    }

    #[test]
    fn non_associative_loop_of_order_five() {
        // A loop (Latin square with identity 0): (1*1)*2 = 2 but 1*(1*2) = 4.
        let raw = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        let mut witness = None;
        'search: for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    if raw[raw[a][b]][c] != raw[a][raw[b][c]] {
                        witness = Some((a, b, c));
                        break 'search;
                    }
                }
            }
        }
        let (a, b, c) = witness.expect("table is non-associative");
        let err = validate_table(&raw).unwrap_err();
        assert_eq!(err, GroupViolation::Associativity { a, b, c });
        assert!(err.to_string().starts_with("associativity violated"));
    }

    #[test]
    fn latin_violation_reported() {
        let raw = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        assert!(matches!(
            validate_table(&raw),
            Err(GroupViolation::RowNotPermutation { row: 1, value: 1 })
        ));
    }

    #[test]
    fn from_table_round_trip() {
        let s3 = CayleyGroup::s3();
        let g = CayleyGroup::from_table("copy", &s3.rows()).unwrap();
        assert_eq!(g.rows(), s3.rows());
    }

    #[test]
    fn parse_group_specs() {
        assert_eq!("C:6".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(6));
        assert_eq!("C6".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(6));
        let v: GroupSpec = "C2xC2".parse().unwrap();
        assert_eq!(v.to_string(), "C2xC2");
        assert_eq!(v.order(), Some(4));
        assert_eq!("C:2xC:3".parse::<GroupSpec>().unwrap().build().unwrap().order(), 6);
        assert_eq!("Q8".parse::<GroupSpec>().unwrap(), GroupSpec::Q8);
        assert!("D4".parse::<GroupSpec>().is_err());
        assert!("C:0".parse::<GroupSpec>().is_err());
        assert!(matches!("@t.json".parse::<GroupSpec>().unwrap(), GroupSpec::Table(_)));
    }
}
