//! Oracle records, the threshold table, formula-vs-oracle comparisons and the
//! errata manifest.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coeffring::CoeffSpec;
use crate::error::{Error, Result};
use crate::formulas::{closed_forms, C5Case, Variant};
use crate::groupring::Side;
use crate::groups::GroupSpec;
use crate::oracle::{annihilator_histogram, enumeration_census, group_algebra, with_workers, AnnihilatorHistogram, Caps, SizeCensus};
use crate::Probability;

/// A rational as a pair of decimal strings, so arbitrarily large values
/// survive JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioJson {
    pub num: String,
    pub den: String,
}

impl RatioJson {
    pub fn to_ratio(&self) -> Result<Probability> {
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| Error::Unsupported(format!("bad integer {s:?} in record: {e}")))
        };
        let den = parse(&self.den)?;
        if den.is_zero() {
            return Err(Error::Unsupported("zero denominator in record".into()));
        }
        Ok(BigRational::new(parse(&self.num)?, den))
    }
}

impl From<&Probability> for RatioJson {
    fn from(r: &Probability) -> Self {
        RatioJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

pub fn serialize_ratio<S: serde::Serializer>(r: &Probability, s: S) -> std::result::Result<S::Ok, S::Error> {
    RatioJson::from(r).serialize(s)
}

pub fn format_ratio(r: &Probability) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `r` rounded half-up to `sig` significant digits, in plain decimal notation.
pub fn format_decimal(r: &Probability, sig: usize) -> String {
    assert!((1..=20).contains(&sig));
    if r.is_zero() {
        return "0".into();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    let v = r.abs();
    let ten = BigInt::from(10);
    // Decimal places needed so the first significant digit is followed by sig - 1 more.
    let mut places = 0usize;
    while (&v * BigRational::from_integer(ten.pow(places as u32))).to_integer() < ten.pow(sig as u32 - 1) {
        places += 1;
    }
    let scaled = &v * BigRational::from_integer(ten.pow(places as u32));
    let rounded = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
    let digits = rounded.to_string();
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let padded = format!("{digits:0>width$}", width = places + 1);
    let (int, frac) = padded.split_at(padded.len() - places);
    format!("{sign}{int}.{frac}")
}

/// Whether a truncated or rounded decimal such as `"0.308"` is within one
/// unit in its last place of `value`.
pub fn decimal_consistent(value: &Probability, printed: &str) -> bool {
    let Some((int, frac)) = printed.split_once('.') else {
        return printed.parse::<BigInt>().is_ok_and(|i| &BigRational::from_integer(i) == value);
    };
    let Ok(digits) = format!("{int}{frac}").parse::<BigInt>() else {
        return false;
    };
    let scale = BigInt::from(10).pow(frac.len() as u32);
    let d = BigRational::new(digits, scale.clone());
    (value - d).abs() < BigRational::new(1.into(), scale)
}

/// The GAP-style census record: `counts[i]` elements have annihilators of
/// size `ann_sizes[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub group: String,
    pub coeff: String,
    pub side: Side,
    pub ann_sizes: Vec<u64>,
    pub counts: Vec<u64>,
    pub probability: RatioJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl OracleRecord {
    pub fn from_histogram(h: &AnnihilatorHistogram, elapsed_ms: Option<u64>) -> Self {
        OracleRecord {
            group: h.group.clone(),
            coeff: h.coeff.clone(),
            side: h.side,
            ann_sizes: h.ann_sizes(),
            counts: h.counts.clone(),
            probability: RatioJson::from(&h.probability()),
            elapsed_ms,
        }
    }

    pub fn from_census(c: &SizeCensus, group: &str, coeff: &str, elapsed_ms: Option<u64>) -> Self {
        OracleRecord {
            group: group.to_string(),
            coeff: coeff.to_string(),
            side: c.side,
            ann_sizes: c.sizes.keys().copied().collect(),
            counts: c.sizes.values().copied().collect(),
            probability: RatioJson::from(&c.probability()),
            elapsed_ms,
        }
    }

    pub fn probability(&self) -> Result<Probability> {
        self.probability.to_ratio()
    }

    /// `sum sizes * counts / (sum counts)^2`, from the record alone.
    pub fn recomputed_probability(&self) -> Probability {
        let card: BigInt = self.counts.iter().map(|&c| BigInt::from(c)).sum();
        let weighted: BigInt = self
            .ann_sizes
            .iter()
            .zip(&self.counts)
            .map(|(&s, &c)| BigInt::from(s) * BigInt::from(c))
            .sum();
        BigRational::new(weighted, &card * &card)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Unsupported(format!("bad record: {e}")))
    }

    /// The record in GAP `rec(...)` syntax.
    pub fn to_gap(&self) -> String {
        let list = |v: &[u64]| {
            let items: Vec<String> = v.iter().map(u64::to_string).collect();
            format!("[ {} ]", items.join(", "))
        };
        let ann = match self.side {
            Side::Left => "|ann_l|",
            Side::Right => "|ann_r|",
            Side::TwoSided => "|ann|",
        };
        let mut out = String::new();
        let _ = writeln!(out, "# {}[{}], side {}", self.coeff, self.group, self.side);
        let _ = writeln!(out, "rec(Size := {},", list(&self.counts));
        let _ = write!(
            out,
            "    {ann} := {}, group := \"{}\", p := {}/{})",
            list(&self.ann_sizes),
            self.group,
            self.probability.num,
            self.probability.den
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = write!(out, "\n# elapsed {ms} ms");
        }
        out
    }
}

/// Runs the census for `coeff[group]`: ranks over a field, enumeration
/// otherwise.
pub fn run_oracle(
    coeff: &CoeffSpec,
    group: &GroupSpec,
    side: Side,
    caps: &Caps,
    workers: Option<usize>,
    timing: bool,
) -> Result<OracleRecord> {
    let alg = group_algebra(coeff, group)?;
    let start = Instant::now();
    let record = if alg.ring().is_field() {
        let h = annihilator_histogram(&alg, side, caps, workers)?;
        OracleRecord::from_histogram(&h, None)
    } else {
        let census = with_workers(workers, || enumeration_census(&alg, side, caps))?;
        OracleRecord::from_census(&census, &group.to_string(), &coeff.to_string(), None)
    };
    Ok(OracleRecord {
        elapsed_ms: timing.then(|| start.elapsed().as_millis() as u64),
        ..record
    })
}

pub mod errata {
    //! Known disagreements between published values and the census.

    use std::sync::OnceLock;

    use serde::{Deserialize, Serialize};

    #[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
    pub struct Erratum {
        pub id: String,
        /// Lookup key used by the reports, e.g. `table:F:2[C4]` or `c5:case3`.
        pub key: String,
        pub kind: String,
        pub locator: String,
        pub printed: String,
        pub corrected: String,
        pub note: String,
    }

    const MANIFEST: &str = include_str!("../data/errata.json");

    pub fn all() -> &'static [Erratum] {
        static PARSED: OnceLock<Vec<Erratum>> = OnceLock::new();
        PARSED.get_or_init(|| serde_json::from_str(MANIFEST).expect("errata manifest parses"))
    }

    pub fn by_key(key: &str) -> Option<&'static Erratum> {
        all().iter().find(|e| e.key == key)
    }

    pub fn by_id(id: &str) -> Option<&'static Erratum> {
        all().iter().find(|e| e.id == id)
    }
}

/// Errata key under which a printed formula for `coeff[group]` is known to be
/// wrong, if any.
pub fn printed_formula_key(coeff: &CoeffSpec, group: &GroupSpec) -> Option<String> {
    match (coeff, group) {
        (CoeffSpec::Field { p, m }, GroupSpec::Cyclic(5)) => {
            Some(format!("c5:case{}", C5Case::of(p.pow(*m)).number()))
        }
        _ => None,
    }
}

/// One row of the published table of algebras with `P(RG) >= 0.1`.
#[derive(Clone, Copy, Debug)]
pub struct TableEntry {
    pub row: usize,
    pub coeff: &'static str,
    pub group: &'static str,
    pub num: i64,
    pub den: i64,
    pub decimal: &'static str,
}

pub const TABLE1: [TableEntry; 11] = [
    TableEntry { row: 1, coeff: "F:2", group: "C2", num: 1, den: 2, decimal: "0.5" },
    TableEntry { row: 2, coeff: "F:3", group: "C2", num: 25, den: 81, decimal: "0.308" },
    TableEntry { row: 3, coeff: "F:5", group: "C2", num: 81, den: 625, decimal: "0.129" },
    TableEntry { row: 4, coeff: "F:2", group: "C3", num: 21, den: 64, decimal: "0.328" },
    TableEntry { row: 5, coeff: "F:2", group: "C4", num: 3, den: 36, decimal: "0.18" },
    TableEntry { row: 6, coeff: "F:3", group: "C3", num: 1, den: 9, decimal: "0.111" },
    TableEntry { row: 7, coeff: "F:4", group: "C2", num: 5, den: 32, decimal: "0.156" },
    TableEntry { row: 8, coeff: "F:2", group: "C2xC2", num: 7, den: 32, decimal: "0.218" },
    TableEntry { row: 9, coeff: "Z:4", group: "C2", num: 7, den: 32, decimal: "0.218" },
    TableEntry { row: 10, coeff: "Z:6", group: "C2", num: 25, den: 162, decimal: "0.154" },
    TableEntry { row: 11, coeff: "F:2", group: "S3", num: 5, den: 64, decimal: "0.113" },
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Match,
    PaperTypo,
    ConventionNote,
    Mismatch,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Match => "match",
            RowStatus::PaperTypo => "paper-typo",
            RowStatus::ConventionNote => "convention-note",
            RowStatus::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub row: usize,
    pub instance: String,
    pub printed_fraction: RatioJson,
    pub printed_decimal: String,
    pub oracle_left: RatioJson,
    pub oracle_left_decimal: String,
    pub oracle_twosided: RatioJson,
    pub oracle_twosided_decimal: String,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
    pub note: String,
}

fn classify_row(
    entry: &TableEntry,
    key: &str,
    left: &Probability,
    twosided: &Probability,
) -> (RowStatus, Option<String>, String) {
    let printed = BigRational::new(entry.num.into(), entry.den.into());
    let erratum = errata::by_key(key);
    let agrees = |v: &Probability| printed == *v && decimal_consistent(v, entry.decimal);
    if agrees(twosided) || agrees(left) {
        return (RowStatus::Match, None, String::new());
    }
    if let Some(e) = erratum {
        let fraction_hits = printed == *left || printed == *twosided;
        let decimal_hits = decimal_consistent(left, entry.decimal) || decimal_consistent(twosided, entry.decimal);
        if e.kind == "denominator-typo" && !fraction_hits && decimal_hits {
            return (RowStatus::PaperTypo, Some(e.id.clone()), e.note.clone());
        }
        if e.kind == "convention-split"
            && ((printed == *twosided && decimal_consistent(left, entry.decimal))
                || (printed == *left && decimal_consistent(twosided, entry.decimal)))
        {
            return (RowStatus::ConventionNote, Some(e.id.clone()), e.note.clone());
        }
    }
    (
        RowStatus::Mismatch,
        None,
        format!(
            "printed {}/{} ~ {} agrees with neither convention",
            entry.num, entry.den, entry.decimal
        ),
    )
}

/// Recomputes every row of the published table with the census, under both
/// conventions.
pub fn table1(caps: &Caps, workers: Option<usize>) -> Result<Vec<TableRow>> {
    TABLE1
        .iter()
        .map(|entry| {
            let coeff: CoeffSpec = entry.coeff.parse()?;
            let group: GroupSpec = entry.group.parse()?;
            let left = run_oracle(&coeff, &group, Side::Left, caps, workers, false)?.probability()?;
            let twosided = run_oracle(&coeff, &group, Side::TwoSided, caps, workers, false)?.probability()?;
            let key = format!("table:{coeff}[{group}]");
            let (status, erratum, note) = classify_row(entry, &key, &left, &twosided);
            Ok(TableRow {
                row: entry.row,
                instance: format!("{coeff}[{group}]"),
                printed_fraction: RatioJson {
                    num: entry.num.to_string(),
                    den: entry.den.to_string(),
                },
                printed_decimal: entry.decimal.to_string(),
                oracle_left_decimal: format_decimal(&left, 6),
                oracle_left: RatioJson::from(&left),
                oracle_twosided_decimal: format_decimal(&twosided, 6),
                oracle_twosided: RatioJson::from(&twosided),
                status,
                erratum,
                note,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareEntry {
    pub variant: Variant,
    pub provenance: String,
    pub value: RatioJson,
    pub decimal: String,
    pub matches_oracle: bool,
    /// Set when a mismatch is listed in the errata manifest.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub instance: String,
    pub side: Side,
    pub oracle: RatioJson,
    pub oracle_decimal: String,
    pub formulas: Vec<CompareEntry>,
}

impl CompareReport {
    /// Mismatches not explained by the errata manifest.
    pub fn unexpected_mismatches(&self) -> usize {
        self.formulas
            .iter()
            .filter(|f| !f.matches_oracle && f.erratum.is_none())
            .count()
    }
}

/// Evaluates every applicable closed form and the census for one instance.
pub fn compare(
    coeff: &CoeffSpec,
    group: &GroupSpec,
    side: Side,
    caps: &Caps,
    workers: Option<usize>,
) -> Result<CompareReport> {
    let oracle = run_oracle(coeff, group, side, caps, workers, false)?.probability()?;
    let key = printed_formula_key(coeff, group);
    let formulas = closed_forms(coeff, group, side)?
        .into_iter()
        .map(|f| {
            let matches_oracle = f.value == oracle;
            let erratum = (!matches_oracle && f.variant == Variant::Printed)
                .then(|| key.as_deref().and_then(errata::by_key))
                .flatten()
                .map(|e| e.id.clone());
            CompareEntry {
                variant: f.variant,
                provenance: f.provenance,
                decimal: format_decimal(&f.value, 6),
                value: RatioJson::from(&f.value),
                matches_oracle,
                erratum,
            }
        })
        .collect();
    Ok(CompareReport {
        instance: format!("{coeff}[{group}]"),
        side,
        oracle_decimal: format_decimal(&oracle, 6),
        oracle: RatioJson::from(&oracle),
        formulas,
    })
}
