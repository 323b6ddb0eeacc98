//! Closed-form nullity probabilities.
//!
//! Every formula is evaluated exactly. Where a published polynomial is known
//! to disagree with the census, both the polynomial as printed and the value
//! derived from the algebra's decomposition are available, tagged by
//! [`Variant`]; see [`crate::report::errata`] for the recorded disagreements.

pub mod classify;
pub mod numtheory;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coeffring::{CoeffRing, CoeffSpec, DEFAULT_RING_CAP};
use crate::error::{Error, Result};
use crate::groupring::Side;
use crate::groups::GroupSpec;
use crate::scalar::{from_i64, from_u64, powi, Scalar};
use crate::Probability;

use numtheory::{divisors, euler_phi, factorize, gcd, mult_order, prime_power};

pub use classify::{classify_threshold, cyclic_sweep, standard_catalog, Classification, Instance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// The polynomial exactly as published.
    Printed,
    /// Recomputed from the decomposition of the algebra.
    Derived,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Printed => "printed",
            Variant::Derived => "derived",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(Variant::Printed),
            "derived" => Ok(Variant::Derived),
            other => Err(Error::Unsupported(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaResult {
    pub value: Probability,
    pub variant: Variant,
    pub provenance: String,
}

impl FormulaResult {
    fn new(value: Probability, variant: Variant, provenance: impl Into<String>) -> Self {
        FormulaResult {
            value,
            variant,
            provenance: provenance.into(),
        }
    }
}

/// `N(q) / q^e` for an integer polynomial `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolyRatio {
    /// Coefficients of `N`, highest degree first.
    pub numerator: &'static [i64],
    pub denominator_exp: u32,
}

impl PolyRatio {
    pub fn eval<T: Scalar>(&self, q: u64) -> T {
        let qt: T = from_u64(q);
        let num = self
            .numerator
            .iter()
            .fold(T::zero(), |acc, &c| acc * qt.clone() + from_i64::<T>(c));
        num / powi(&qt, self.denominator_exp)
    }

    pub fn exact(&self, q: u64) -> Probability {
        self.eval::<BigRational>(q)
    }
}

impl fmt::Display for PolyRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.numerator.len().saturating_sub(1);
        let mut first = true;
        write!(f, "(")?;
        for (i, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let power = deg - i;
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            let coeff = if mag == 1 && power > 0 { String::new() } else { mag.to_string() };
            let var = match power {
                0 => String::new(),
                1 => "q".into(),
                p => format!("q^{p}"),
            };
            write!(f, "{sign}{coeff}{var}")?;
            first = false;
        }
        write!(f, ")/q^{}", self.denominator_exp)
    }
}

/// The four published C5 polynomials, indexed by [`C5Case`].
pub const C5_PRINTED: [PolyRatio; 4] = [
    PolyRatio {
        numerator: &[1, -1, 1, 1, 0, -1, 1, -1],
        denominator_exp: 9,
    },
    PolyRatio {
        numerator: &[4, -2, 0, 0, -2, 1],
        denominator_exp: 10,
    },
    PolyRatio {
        numerator: &[1, 0, 0, -2, 5, -2, -1],
        denominator_exp: 8,
    },
    PolyRatio {
        numerator: &[2, 5, -21, 35, -29, 10, -1],
        denominator_exp: 10,
    },
];

/// `M_2(F_q)`, pairs with `ab = 0`.
pub const MATRIX2_LEFT: PolyRatio = PolyRatio {
    numerator: &[1, 3, -2, -2, 1],
    denominator_exp: 7,
};

/// `M_2(F_q)`, pairs with `ab = ba = 0`.
pub const MATRIX2_TWOSIDED: PolyRatio = PolyRatio {
    numerator: &[3, 0, -2],
    denominator_exp: 6,
};

pub const CHAR2_S3_LEFT: PolyRatio = PolyRatio {
    numerator: &[3, 7, -12, -2, 7, -2],
    denominator_exp: 10,
};

pub const CHAR2_S3_TWOSIDED: PolyRatio = PolyRatio {
    numerator: &[9, -6, -6, 4],
    denominator_exp: 9,
};

pub const CHAR2_Q8_TWOSIDED: PolyRatio = PolyRatio {
    numerator: &[3, 3, -5],
    denominator_exp: 9,
};

fn require_prime_power(q: u64) -> Result<(u64, u32)> {
    prime_power(q).ok_or(Error::NotPrimePower(q))
}

/// `(2q - 1) / q^2`: a pair in `F_q` multiplies to zero iff one entry is zero.
pub fn field_factor<T: Scalar>(q: u64) -> T {
    let qt: T = from_u64(q);
    (qt.clone() + qt.clone() - T::one()) / (qt.clone() * qt)
}

pub fn p_field(q: u64) -> Probability {
    field_factor(q)
}

/// `(Q + N (Q - 1)) / Q^(N + 1)`, the nullity probability of the chain ring
/// `F_Q[y]/(y^N)`: its `Q^(N-1-j) (Q-1)` elements of valuation `j` each
/// have an annihilator of size `Q^j`.
pub fn chain_factor<T: Scalar>(big_q: u64, big_n: u64) -> T {
    let qt: T = from_u64(big_q);
    let nt: T = from_u64(big_n);
    (qt.clone() + nt * (qt.clone() - T::one())) / powi(&qt, big_n as u32 + 1)
}

/// One summand `F_{q^d}^e` of the cyclotomic splitting of `F_q C_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PWComponent {
    /// Divisor `l > 1` of `n`.
    pub l: u64,
    /// Multiplicative order of `q` modulo `l`.
    pub d: u64,
    /// `phi(l) / d`.
    pub e: u64,
}

/// `F_q C_n = F_q (+) sum over l | n, l > 1 of F_{q^d_l}^{e_l}`, for `gcd(n, q) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PWDecomposition {
    pub q: u64,
    pub n: u64,
    pub components: Vec<PWComponent>,
}

impl PWDecomposition {
    /// `1 + sum d_l e_l`, which must equal `n`.
    pub fn dimension(&self) -> u64 {
        1 + self.components.iter().map(|c| c.d * c.e).sum::<u64>()
    }

    /// Orders of the simple summands, with multiplicity, leading `F_q` first.
    pub fn field_orders(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::from(self.q)];
        for c in &self.components {
            let size = BigUint::from(self.q).pow(c.d as u32);
            out.extend(std::iter::repeat_n(size, c.e as usize));
        }
        out
    }
}

pub fn perlis_walker(q: u64, n: u64) -> Result<PWDecomposition> {
    if n == 0 || gcd(n, q) != 1 {
        return Err(Error::Unsupported(format!(
            "gcd({n}, {q}) != 1: modular case, use the oracle or the chain formula"
        )));
    }
    let components = divisors(n)
        .into_iter()
        .filter(|&l| l > 1)
        .map(|l| {
            let d = mult_order(q, l)?;
            Ok(PWComponent {
                l,
                d,
                e: euler_phi(l) / d,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PWDecomposition { q, n, components })
}

/// The cyclic semisimple product `(2q-1)/q^2 * prod ((2q^d - 1)/q^(2d))^e`,
/// evaluated in any scalar type.
pub fn cyclic_semisimple<T: Scalar>(q: u64, n: u64) -> Result<T> {
    let pw = perlis_walker(q, n)?;
    let qt: T = from_u64(q);
    let two: T = from_u64(2);
    let mut acc = field_factor::<T>(q);
    for c in &pw.components {
        let qd = powi(&qt, c.d as u32);
        let factor = (two.clone() * qd.clone() - T::one()) / (qd.clone() * qd);
        acc = acc * powi(&factor, c.e as u32);
    }
    Ok(acc)
}

pub fn p_cyclic_semisimple(q: u64, n: u64) -> Result<FormulaResult> {
    require_prime_power(q)?;
    Ok(FormulaResult::new(
        cyclic_semisimple::<BigRational>(q, n)?,
        Variant::Printed,
        "cyclic semisimple product over the cyclotomic splitting",
    ))
}

/// Same value as [`p_cyclic_semisimple`], through the product rule over the
/// field summands.
pub fn cyclic_semisimple_by_components(q: u64, n: u64) -> Result<Probability> {
    let pw = perlis_walker(q, n)?;
    let factors: Vec<Probability> = pw
        .field_orders()
        .iter()
        .map(|size| {
            let s = BigInt::from(size.clone());
            BigRational::new(BigInt::from(2) * &s - 1, &s * &s)
        })
        .collect();
    Ok(product_rule(&factors))
}

/// `F_Q C_N` with `N` a power of the characteristic of `F_Q`.
pub fn p_cyclic_chain(big_q: u64, big_n: u64) -> Result<FormulaResult> {
    let (p, _) = require_prime_power(big_q)?;
    match prime_power(big_n) {
        Some((r, _)) if r == p => Ok(FormulaResult::new(
            chain_factor::<BigRational>(big_q, big_n),
            Variant::Derived,
            "chain ring F_Q[y]/(y^N): (Q + N(Q-1))/Q^(N+1)",
        )),
        _ => Err(Error::Unsupported(format!(
            "{big_n} is not a power of the characteristic {p} of F_{big_q}"
        ))),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum C5Case {
    /// Characteristic 5.
    Modular,
    /// `q = 2, 3 (mod 5)`.
    TwoOrThree,
    /// `q = 4 (mod 5)`.
    Four,
    /// `q = 1 (mod 5)`.
    One,
}

impl C5Case {
    pub fn of(q: u64) -> C5Case {
        match q % 5 {
            0 => C5Case::Modular,
            2 | 3 => C5Case::TwoOrThree,
            4 => C5Case::Four,
            _ => C5Case::One,
        }
    }

    pub fn number(self) -> usize {
        match self {
            C5Case::Modular => 1,
            C5Case::TwoOrThree => 2,
            C5Case::Four => 3,
            C5Case::One => 4,
        }
    }

    pub fn printed(self) -> PolyRatio {
        C5_PRINTED[self.number() - 1]
    }
}

pub fn p_c5(q: u64, variant: Variant) -> Result<FormulaResult> {
    require_prime_power(q)?;
    let case = C5Case::of(q);
    Ok(match variant {
        Variant::Printed => FormulaResult::new(
            case.printed().exact(q),
            Variant::Printed,
            format!("C5 four-case closed form, case {} as printed", case.number()),
        ),
        Variant::Derived => {
            let value = if case == C5Case::Modular {
                chain_factor(q, 5)
            } else {
                cyclic_semisimple(q, 5)?
            };
            FormulaResult::new(
                value,
                Variant::Derived,
                format!(
                    "C5 case {} recomputed from {}",
                    case.number(),
                    if case == C5Case::Modular {
                        "the chain ring F_q[y]/(y^5)"
                    } else {
                        "the cyclotomic splitting"
                    }
                ),
            )
        }
    })
}

fn left_or_twosided(side: Side) -> bool {
    side == Side::TwoSided
}

pub fn p_matrix2(q: u64, side: Side) -> Result<FormulaResult> {
    require_prime_power(q)?;
    Ok(if left_or_twosided(side) {
        FormulaResult::new(MATRIX2_TWOSIDED.exact(q), Variant::Printed, "M2(F_q), two-sided")
    } else {
        FormulaResult::new(MATRIX2_LEFT.exact(q), Variant::Printed, "M2(F_q), one-sided")
    })
}

pub fn p_q8_odd(q: u64, side: Side) -> Result<FormulaResult> {
    let (p, _) = require_prime_power(q)?;
    if p == 2 {
        return Err(Error::Unsupported(
            "Q8 in characteristic 2: use the characteristic-2 family".into(),
        ));
    }
    // F_q Q8 = 4 F_q (+) M_2(F_q) needs x^2 + y^2 = -1 to be solvable.
    if q <= DEFAULT_RING_CAP {
        let field = CoeffRing::field(q)?;
        assert!(
            field.solve_sum_of_two_squares_minus_one().is_some(),
            "x^2 + y^2 = -1 unsolvable in F_{q}"
        );
    }
    let m2 = p_matrix2(q, side)?;
    Ok(FormulaResult::new(
        product_rule(&[p_field(q).pow(4), m2.value]),
        Variant::Printed,
        format!("Q8, odd characteristic: 4 F_q (+) {}", m2.provenance),
    ))
}

pub fn p_s3_coprime6(q: u64, side: Side) -> Result<FormulaResult> {
    require_prime_power(q)?;
    if gcd(q, 6) != 1 {
        return Err(Error::Unsupported(format!(
            "gcd({q}, 6) != 1: modular case, use the oracle or the characteristic-2 family"
        )));
    }
    let m2 = p_matrix2(q, side)?;
    Ok(FormulaResult::new(
        product_rule(&[p_field(q).pow(2), m2.value]),
        Variant::Printed,
        format!("S3, gcd(q, 6) = 1: 2 F_q (+) {}", m2.provenance),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Char2Target {
    S3Left,
    S3TwoSided,
    Q8TwoSided,
}

impl Char2Target {
    pub fn polynomial(self) -> PolyRatio {
        match self {
            Char2Target::S3Left => CHAR2_S3_LEFT,
            Char2Target::S3TwoSided => CHAR2_S3_TWOSIDED,
            Char2Target::Q8TwoSided => CHAR2_Q8_TWOSIDED,
        }
    }
}

pub fn p_char2_family(q: u64, target: Char2Target) -> Result<FormulaResult> {
    let (p, _) = require_prime_power(q)?;
    if p != 2 {
        return Err(Error::Unsupported(format!("F_{q} does not have characteristic 2")));
    }
    let label = match target {
        Char2Target::S3Left => "S3, characteristic 2, one-sided",
        Char2Target::S3TwoSided => "S3, characteristic 2, two-sided",
        Char2Target::Q8TwoSided => "Q8, characteristic 2, two-sided",
    };
    Ok(FormulaResult::new(target.polynomial().exact(q), Variant::Printed, label))
}

/// Nullity probability of a direct sum from those of its summands.
pub fn product_rule(ps: &[Probability]) -> Probability {
    ps.iter().fold(BigRational::one(), |acc, p| acc * p)
}

/// Order of the unit group of `F_q C_n`, in the coprime regime and for
/// `n` a power of the characteristic.
pub fn unit_order(q: u64, n: u64) -> Result<BigUint> {
    let (p, m) = require_prime_power(q)?;
    if gcd(n, q) == 1 {
        let pw = perlis_walker(q, n)?;
        let one = BigUint::one();
        return Ok(pw
            .field_orders()
            .into_iter()
            .fold(BigUint::one(), |acc, size| acc * (size - &one)));
    }
    match prime_power(n) {
        Some((r, _)) if r == p => {
            // (p^m - 1) * p^(m (p^k - 1))
            let units_of_field = BigUint::from(q) - 1u32;
            Ok(units_of_field * BigUint::from(p).pow(m * (n as u32 - 1)))
        }
        _ => Err(Error::Unsupported(format!(
            "unit order of F_{q} C_{n}: mixed modular case has no closed form here"
        ))),
    }
}

/// All closed forms that apply to `coeff[group]` under `side`.
///
/// `Z/nZ` with squarefree `n` splits by the Chinese remainder theorem into
/// prime-field group algebras, combined with the product rule.
pub fn closed_forms(coeff: &CoeffSpec, group: &GroupSpec, side: Side) -> Result<Vec<FormulaResult>> {
    match *coeff {
        CoeffSpec::Field { p, m } => field_closed_forms(p.pow(m), p, group, side),
        CoeffSpec::Integers { n } => {
            let factors = factorize(n);
            if factors.iter().any(|&(_, e)| e > 1) {
                return Ok(Vec::new());
            }
            let mut parts = Vec::new();
            let mut provenance = Vec::new();
            for (prime, _) in factors {
                let forms = field_closed_forms(prime, prime, group, side)?;
                let Some(best) = forms
                    .iter()
                    .find(|f| f.variant == Variant::Derived)
                    .or_else(|| forms.first())
                else {
                    return Ok(Vec::new());
                };
                parts.push(best.value.clone());
                provenance.push(format!("F:{prime} [{}]", best.provenance));
            }
            Ok(vec![FormulaResult::new(
                product_rule(&parts),
                Variant::Derived,
                format!("CRT split, product rule over {}", provenance.join(" (+) ")),
            )])
        }
    }
}

fn field_closed_forms(q: u64, p: u64, group: &GroupSpec, side: Side) -> Result<Vec<FormulaResult>> {
    let mut out = Vec::new();
    match group {
        GroupSpec::Cyclic(n) => {
            let n = *n as u64;
            if n == 5 {
                out.push(p_c5(q, Variant::Printed)?);
                out.push(p_c5(q, Variant::Derived)?);
            } else if gcd(n, q) == 1 {
                out.push(p_cyclic_semisimple(q, n)?);
            } else if let Ok(chain) = p_cyclic_chain(q, n) {
                out.push(chain);
            }
        }
        GroupSpec::Q8 => {
            if p != 2 {
                out.push(p_q8_odd(q, side)?);
            } else if side == Side::TwoSided {
                out.push(p_char2_family(q, Char2Target::Q8TwoSided)?);
            }
        }
        GroupSpec::S3 => {
            if p == 2 {
                let target = if side == Side::TwoSided {
                    Char2Target::S3TwoSided
                } else {
                    Char2Target::S3Left
                };
                out.push(p_char2_family(q, target)?);
            } else if p != 3 {
                out.push(p_s3_coprime6(q, side)?);
            }
        }
        GroupSpec::Product(..) | GroupSpec::Table(_) => {}
    }
    Ok(out)
}

/// Whether `value` lies in `(0, 1]`.
pub fn is_probability(value: &Probability) -> bool {
    value > &BigRational::zero() && value <= &BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Probability {
        BigRational::new(n.into(), d.into())
    }

    fn big(n: &str, d: &str) -> Probability {
        BigRational::new(n.parse().unwrap(), d.parse().unwrap())
    }

    #[test]
    fn field_factors() {
        assert_eq!(p_field(2), r(3, 4));
        assert_eq!(p_field(3), r(5, 9));
        assert_eq!(p_field(7), r(13, 49));
    }

    #[test]
    fn splittings() {
        let pw = perlis_walker(2, 3).unwrap();
        assert_eq!(pw.components, vec![PWComponent { l: 3, d: 2, e: 1 }]);
        let pw = perlis_walker(7, 6).unwrap();
        assert_eq!(
            pw.components,
            vec![
                PWComponent { l: 2, d: 1, e: 1 },
                PWComponent { l: 3, d: 1, e: 2 },
                PWComponent { l: 6, d: 1, e: 2 }
            ]
        );
        assert_eq!(pw.field_orders().len(), 6);
        let pw = perlis_walker(4, 5).unwrap();
        assert_eq!(pw.components, vec![PWComponent { l: 5, d: 2, e: 2 }]);
        assert!(perlis_walker(5, 10).is_err());
    }

    #[test]
    fn splitting_dimension_identity() {
        for n in 1..=200u64 {
            for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 121] {
                if gcd(n, q) == 1 {
                    assert_eq!(perlis_walker(q, n).unwrap().dimension(), n, "q={q} n={n}");
                }
            }
        }
    }

    #[test]
    fn cyclic_semisimple_examples() {
        assert_eq!(p_cyclic_semisimple(2, 3).unwrap().value, r(21, 64));
        assert_eq!(p_cyclic_semisimple(3, 2).unwrap().value, r(25, 81));
        assert_eq!(
            p_cyclic_semisimple(7, 6).unwrap().value,
            big("4826809", "13841287201")
        );
        assert_eq!(p_cyclic_semisimple(7, 6).unwrap().value, r(13, 49).pow(6));
    }

    #[test]
    fn two_paths_to_cyclic_semisimple() {
        for n in 1..=60u64 {
            for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 16, 25] {
                if gcd(n, q) == 1 {
                    assert_eq!(
                        p_cyclic_semisimple(q, n).unwrap().value,
                        cyclic_semisimple_by_components(q, n).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn chain_examples() {
        assert_eq!(p_cyclic_chain(2, 4).unwrap().value, r(3, 16));
        assert_eq!(p_cyclic_chain(3, 3).unwrap().value, r(1, 9));
        assert_eq!(p_cyclic_chain(4, 2).unwrap().value, r(5, 32));
        assert_eq!(p_cyclic_chain(2, 2).unwrap().value, r(1, 2));
        assert!(p_cyclic_chain(2, 6).is_err());
        assert!(p_cyclic_chain(4, 3).is_err());
    }

    #[test]
    fn c5_variants() {
        let printed = p_c5(2, Variant::Printed).unwrap().value;
        assert_eq!(printed, r(93, 1024));
        assert_eq!(p_c5(2, Variant::Derived).unwrap().value, printed);
        assert_eq!(p_c5(5, Variant::Printed).unwrap().value, r(66229, 1953125));
        assert_eq!(p_c5(5, Variant::Derived).unwrap().value, r(1, 625));
        assert_eq!(
            p_c5(11, Variant::Derived).unwrap().value,
            big("4084101", "25937424601")
        );
        // The printed q = 1 (mod 5) polynomial minus the true value has a factor q - 11.
        assert_eq!(p_c5(11, Variant::Printed).unwrap().value, p_c5(11, Variant::Derived).unwrap().value);
        assert_eq!(p_c5(16, Variant::Printed).unwrap().value, big("37557151", "1099511627776"));
        assert_eq!(p_c5(16, Variant::Derived).unwrap().value, big("28629151", "1099511627776"));
    }

    #[test]
    fn c5_derived_is_consistent_by_construction() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 19, 25, 29, 31, 125] {
            let derived = p_c5(q, Variant::Derived).unwrap().value;
            if q % 5 == 0 {
                assert_eq!(derived, p_cyclic_chain(q, 5).unwrap().value);
            } else {
                assert_eq!(derived, p_cyclic_semisimple(q, 5).unwrap().value);
            }
        }
    }

    #[test]
    fn c5_printed_case2_always_agrees() {
        for q in [2u64, 3, 7, 8, 13, 17, 23, 27, 32, 37, 43, 47, 53] {
            assert_eq!(C5Case::of(q), C5Case::TwoOrThree);
            assert_eq!(p_c5(q, Variant::Printed).unwrap().value, p_c5(q, Variant::Derived).unwrap().value);
        }
    }

    #[test]
    fn matrix_ring_examples() {
        assert_eq!(p_matrix2(2, Side::TwoSided).unwrap().value, r(5, 32));
        assert_eq!(p_matrix2(2, Side::Left).unwrap().value, r(29, 128));
        assert_eq!(p_matrix2(7, Side::Left).unwrap().value, r(3319, 823543));
    }

    #[test]
    fn q8_and_s3_examples() {
        assert_eq!(p_q8_odd(3, Side::TwoSided).unwrap().value, r(15625, 4782969));
        assert_eq!(p_q8_odd(3, Side::Left).unwrap().value, r(86875, 14348907));
        assert_eq!(p_q8_odd(5, Side::TwoSided).unwrap().value, r(9, 25).pow(4) * r(73, 15625));
        assert!(p_q8_odd(4, Side::Left).is_err());
        assert_eq!(p_s3_coprime6(7, Side::Left).unwrap().value, r(560911, 1977326743));
        assert_eq!(p_s3_coprime6(5, Side::TwoSided).unwrap().value, r(5913, 9765625));
        assert_eq!(p_s3_coprime6(7, Side::TwoSided).unwrap().value, r(24505, 282475249));
        assert!(p_s3_coprime6(9, Side::Left).is_err());
    }

    #[test]
    fn char2_examples() {
        assert_eq!(p_char2_family(2, Char2Target::S3TwoSided).unwrap().value, r(5, 64));
        assert_eq!(p_char2_family(2, Char2Target::S3Left).unwrap().value, r(29, 256));
        assert_eq!(p_char2_family(2, Char2Target::Q8TwoSided).unwrap().value, r(13, 512));
        assert!(p_char2_family(3, Char2Target::S3Left).is_err());
    }

    #[test]
    fn product_rule_examples() {
        assert_eq!(product_rule(&[r(3, 4), r(3, 4)]), r(9, 16));
        assert_eq!(product_rule(&[r(1, 2), r(25, 81)]), r(25, 162));
        assert_eq!(product_rule(&vec![r(13, 49); 6]), big("4826809", "13841287201"));
        assert_eq!(product_rule(&[]), r(1, 1));
    }

    #[test]
    fn unit_orders() {
        assert_eq!(unit_order(7, 6).unwrap(), BigUint::from(46656u32));
        assert_eq!(unit_order(5, 5).unwrap(), BigUint::from(2500u32));
        assert_eq!(unit_order(2, 3).unwrap(), BigUint::from(3u32));
        assert_eq!(unit_order(2, 4).unwrap(), BigUint::from(8u32));
        assert!(unit_order(2, 6).is_err());
    }

    #[test]
    fn printed_polynomials_render() {
        assert_eq!(MATRIX2_TWOSIDED.to_string(), "(3q^2-2)/q^6");
        assert_eq!(C5Case::TwoOrThree.printed().to_string(), "(4q^5-2q^4-2q+1)/q^10");
    }

    #[test]
    fn crt_closed_form_for_z6c2() {
        let forms = closed_forms(&CoeffSpec::Integers { n: 6 }, &GroupSpec::Cyclic(2), Side::TwoSided).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].value, r(25, 162));
        assert!(closed_forms(&CoeffSpec::Integers { n: 4 }, &GroupSpec::Cyclic(2), Side::TwoSided)
            .unwrap()
            .is_empty());
    }

    /// The same closed forms in f64 and in fixed-width rationals.
    #[test]
    fn scalar_generic_evaluation_agrees() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for n in [2u64, 3, 4, 5, 6] {
                if gcd(n, q) != 1 {
                    continue;
                }
                let exact = cyclic_semisimple::<BigRational>(q, n).unwrap();
                let small = cyclic_semisimple::<Ratio<i128>>(q, n).unwrap();
                assert_eq!(
                    BigRational::new((*small.numer()).into(), (*small.denom()).into()),
                    exact
                );
                let approx = cyclic_semisimple::<f64>(q, n).unwrap();
                let reference = num_traits::ToPrimitive::to_f64(&exact).unwrap();
                assert!((approx - reference).abs() <= 1e-12 * reference);
            }
        }
    }

    proptest! {
        #[test]
        fn formulas_are_probabilities(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 64, 81, 121]), n in 1u64..40) {
            if gcd(n, q) == 1 {
                prop_assert!(is_probability(&p_cyclic_semisimple(q, n).unwrap().value));
            }
            prop_assert!(is_probability(&p_matrix2(q, Side::Left).unwrap().value));
            prop_assert!(is_probability(&p_matrix2(q, Side::TwoSided).unwrap().value));
            prop_assert!(is_probability(&p_c5(q, Variant::Derived).unwrap().value));
        }
    }
}
