//! Grid verification of the backward-shift theorems and range checks of the
//! convolution-power conjectures.
//!
//! Every cell pairs an `expected` value from a closed form (or, for the
//! conjectures, from a determinant of a *different* spec) with an `actual`
//! Hankel determinant. Computation errors become failing cells with a note;
//! they never abort the whole report.

mod conjectures;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{p_poly, p_t_via_det, predict_backward};
use crate::error::{Error, Result};
use crate::exact_ring::{binom2_sign, Poly};
use crate::hankel::{self, HankelSpec};
use crate::sequences::SeqFamily;

pub use conjectures::{modular_pattern_value, verify_conjecture10, verify_conjecture11, verify_conjecture12, verify_modular_patterns};

/// Every claim the verifier knows how to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    T1,
    T6,
    T7,
    T8,
    T9,
    C10,
    C11,
    C12,
    Patterns,
}

impl Claim {
    pub const ALL: [Claim; 9] = [
        Claim::T1,
        Claim::T6,
        Claim::T7,
        Claim::T8,
        Claim::T9,
        Claim::C10,
        Claim::C11,
        Claim::C12,
        Claim::Patterns,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::T1 => "t1",
            Claim::T6 => "t6",
            Claim::T7 => "t7",
            Claim::T8 => "t8",
            Claim::T9 => "t9",
            Claim::C10 => "c10",
            Claim::C11 => "c11",
            Claim::C12 => "c12",
            Claim::Patterns => "patterns",
        }
    }

    pub fn kind(self) -> ClaimKind {
        match self {
            Claim::T1 | Claim::T6 | Claim::T7 | Claim::T8 | Claim::T9 => ClaimKind::Theorem,
            _ => ClaimKind::Conjecture,
        }
    }

    /// Family whose backward shifts a theorem talks about. `T6` uses one
    /// family per `b`, so it has none here.
    fn theorem_family(self) -> Option<SeqFamily> {
        match self {
            Claim::T1 => Some(SeqFamily::Catalan),
            Claim::T7 => Some(SeqFamily::CentralBinomial),
            Claim::T8 => Some(SeqFamily::NarayanaC),
            Claim::T9 => Some(SeqFamily::NarayanaB),
            _ => None,
        }
    }

    /// The default grid for this claim.
    pub fn default_range(self) -> GridRange {
        let base = GridRange {
            m_min: 1,
            m_max: 5,
            n_max: 25,
            k_list: Vec::new(),
            b_list: Vec::new(),
        };
        match self {
            Claim::T1 | Claim::T7 => base,
            Claim::T6 => GridRange {
                b_list: (-2..=3).map(BigInt::from).collect(),
                ..base
            },
            Claim::T8 | Claim::T9 => GridRange {
                m_max: 3,
                n_max: 10,
                ..base
            },
            Claim::C10 | Claim::C11 | Claim::C12 => GridRange {
                m_min: 0,
                m_max: 3,
                n_max: 15,
                k_list: (1..=4).collect(),
                b_list: Vec::new(),
            },
            Claim::Patterns => GridRange {
                m_min: 0,
                m_max: 0,
                n_max: 21,
                k_list: (3..=7).collect(),
                b_list: Vec::new(),
            },
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown claim {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimKind {
    Theorem,
    Conjecture,
}

/// Parameter grid. Every bound is explicit and ends up in the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRange {
    pub m_min: i64,
    pub m_max: i64,
    pub n_max: usize,
    #[serde(default)]
    pub k_list: Vec<u32>,
    #[serde(default, with = "bigint_list")]
    pub b_list: Vec<BigInt>,
}

impl fmt::Display for GridRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m in [{}, {}], n in [0, {}]", self.m_min, self.m_max, self.n_max)?;
        if !self.k_list.is_empty() {
            let ks: Vec<String> = self.k_list.iter().map(u32::to_string).collect();
            write!(f, ", k in {{{}}}", ks.join(", "))?;
        }
        if !self.b_list.is_empty() {
            let bs: Vec<String> = self.b_list.iter().map(BigInt::to_string).collect();
            write!(f, ", b in {{{}}}", bs.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_bigint")]
    pub b: Option<BigInt>,
    pub m: i64,
    pub n: i64,
    /// Which part of a multi-part claim the cell belongs to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
}

impl CellParams {
    pub fn new(m: i64, n: i64) -> Self {
        CellParams {
            k: None,
            b: None,
            m,
            n,
            clause: None,
        }
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_b(mut self, b: BigInt) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_clause(mut self, clause: impl Into<String>) -> Self {
        self.clause = Some(clause.into());
        self
    }

    fn sort_key(&self) -> (u32, Option<BigInt>, i64, i64, Option<String>) {
        (self.k.unwrap_or(0), self.b.clone(), self.m, self.n, self.clause.clone())
    }
}

/// One checked instance.
///
/// `expected`/`actual` are `None` only when computing them failed; the
/// failure text is then in `note` and the cell does not pass.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub params: CellParams,
    pub expected: Option<Poly>,
    pub actual: Option<Poly>,
    /// Second, independent form of the expected value; must match too.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_expected: Option<Poly>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Cell {
    pub(crate) fn evaluate(
        params: CellParams,
        expected: Result<Poly>,
        actual: Result<Poly>,
        alt_expected: Option<Result<Poly>>,
    ) -> Cell {
        let mut errors = Vec::new();
        let mut keep = |r: Result<Poly>, what: &str| match r {
            Ok(v) => Some(v),
            Err(e) => {
                errors.push(format!("{what}: {e}"));
                None
            }
        };
        let expected = keep(expected, "expected");
        let actual = keep(actual, "actual");
        let alt_expected = alt_expected.and_then(|r| keep(r, "alt_expected"));
        let pass = errors.is_empty()
            && expected.is_some()
            && expected == actual
            && alt_expected.as_ref().is_none_or(|a| Some(a) == actual.as_ref());
        Cell {
            params,
            expected,
            actual,
            alt_expected,
            pass,
            note: (!errors.is_empty()).then(|| errors.join("; ")),
        }
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Cell {
        let note = note.into();
        self.note = Some(match self.note.take() {
            Some(prev) => format!("{prev}; {note}"),
            None => note,
        });
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub claim_id: String,
    pub kind: ClaimKind,
    /// Human-readable scope statement, including the checked ranges.
    pub summary: String,
    pub range: GridRange,
    pub cells: Vec<Cell>,
    pub all_pass: bool,
    pub counterexamples: Vec<Cell>,
}

impl Report {
    pub(crate) fn new(claim: Claim, range: GridRange, mut cells: Vec<Cell>) -> Report {
        cells.sort_by_key(|c| c.params.sort_key());
        let counterexamples: Vec<Cell> = cells.iter().filter(|c| !c.pass).cloned().collect();
        let all_pass = counterexamples.is_empty();
        let summary = match claim.kind() {
            ClaimKind::Theorem => format!(
                "{}: exact check of {} cells over {range}; {}",
                claim.id(),
                cells.len(),
                if all_pass { "all pass" } else { "FAILURES (bug)" }
            ),
            ClaimKind::Conjecture => format!(
                "{}: range check only, not a proof; {} cells over {range}; {}",
                claim.id(),
                cells.len(),
                if all_pass {
                    "no counterexample in range"
                } else {
                    "COUNTEREXAMPLES found"
                }
            ),
        };
        Report {
            claim_id: claim.id().to_string(),
            kind: claim.kind(),
            summary,
            range,
            cells,
            all_pass,
            counterexamples,
        }
    }

    /// 0 when everything passed, 3 for a failed theorem, 4 for a conjecture
    /// counterexample.
    pub fn exit_code(&self) -> i32 {
        match (self.all_pass, self.kind) {
            (true, _) => 0,
            (false, ClaimKind::Theorem) => 3,
            (false, ClaimKind::Conjecture) => 4,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Report> {
        serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("bad report JSON: {e}")))
    }
}

/// Dispatches to the right checker for `claim`.
pub fn verify(claim: Claim, range: &GridRange) -> Result<Report> {
    match claim {
        Claim::T1 | Claim::T6 | Claim::T7 | Claim::T8 | Claim::T9 => verify_theorem(claim, range),
        Claim::C10 => verify_conjecture10(range),
        Claim::C11 => verify_conjecture11(range),
        Claim::C12 => verify_conjecture12(range),
        Claim::Patterns => verify_modular_patterns(range),
    }
}

pub(crate) fn det_value(family: &SeqFamily, shift: i64, size: usize) -> Result<Poly> {
    Ok(hankel::det(&HankelSpec::new(family.clone(), shift, size))?.value)
}

/// Checks a backward-shift theorem over `m_min.max(1) ..= m_max`,
/// `0 ..= n_max` (and every `b` for `T6`).
pub fn verify_theorem(claim: Claim, range: &GridRange) -> Result<Report> {
    if claim.kind() != ClaimKind::Theorem {
        return Err(Error::InvalidArgument(format!("{claim} is not a theorem")));
    }
    let families: Vec<(Option<BigInt>, SeqFamily)> = match claim.theorem_family() {
        Some(f) => vec![(None, f)],
        None => {
            if range.b_list.is_empty() {
                return Err(Error::InvalidArgument("t6 needs a non-empty b list".into()));
            }
            range
                .b_list
                .iter()
                .map(|b| (Some(b.clone()), SeqFamily::m_numbers(b.clone())))
                .collect()
        }
    };
    let m_lo = range.m_min.max(1);
    if m_lo > range.m_max {
        return Err(Error::InvalidArgument(format!("empty m range [{m_lo}, {}]", range.m_max)));
    }
    let mut cells = Vec::new();
    for (b, family) in &families {
        for m in m_lo..=range.m_max {
            let m_u = u32::try_from(m).map_err(|_| Error::InvalidArgument(format!("m = {m} too large")))?;
            for n in 0..=range.n_max {
                let mut params = CellParams::new(m, n as i64);
                if let Some(b) = b {
                    params = params.with_b(b.clone());
                }
                let expected = predict_backward(family, m_u, n).map(|p| p.value);
                let actual = det_value(family, -m, n);
                let alt = alternate_form(claim, m_u, n);
                cells.push(Cell::evaluate(params, expected, actual, alt));
            }
        }
    }
    Ok(Report::new(claim, range.clone(), cells))
}

/// The second route to each theorem's value: `p_{m+1}(-n)` for the integer
/// families, and the literal forward determinant `D_{m+1}(C(t); n-m-1)` for
/// the Narayana families.
fn alternate_form(claim: Claim, m: u32, n: usize) -> Option<Result<Poly>> {
    let m_us = m as usize;
    match claim {
        Claim::T1 | Claim::T6 => Some(p_poly(m + 1, -(n as i64)).map(Poly::from)),
        Claim::T8 | Claim::T9 if n > m_us => {
            let r = n - m_us - 1;
            let sign = BigInt::from(binom2_sign(i64::from(m) + 1));
            let scale = if claim == Claim::T9 { sign << r } else { sign };
            Some(p_t_via_det(m_us + 1, r).map(|d| d.shift(r).scale(&scale)))
        }
        _ => None,
    }
}

mod bigint_list {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(BigInt::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

mod opt_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(b) => s.collect_str(b),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(claim: Claim, m_max: i64, n_max: usize) -> GridRange {
        GridRange {
            m_max,
            n_max,
            ..claim.default_range()
        }
    }

    #[test]
    fn t1_small_grid() {
        let r = verify_theorem(Claim::T1, &small(Claim::T1, 3, 12)).unwrap();
        assert!(r.all_pass, "{}", r.summary);
        assert_eq!(r.cells.len(), 3 * 13);
        let cell = r.cells.iter().find(|c| c.params.m == 3 && c.params.n == 12).unwrap();
        assert_eq!(cell.expected, Some(Poly::constant(21945)));
        assert_eq!(cell.actual, Some(Poly::constant(21945)));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn t6_b_cells() {
        let range = GridRange {
            m_min: 1,
            m_max: 1,
            n_max: 4,
            k_list: vec![],
            b_list: vec![BigInt::from(0), BigInt::from(1)],
        };
        let r = verify_theorem(Claim::T6, &range).unwrap();
        assert!(r.all_pass);
        let n4: Vec<_> = r.cells.iter().filter(|c| c.params.n == 4).collect();
        assert_eq!(n4.len(), 2);
        for c in n4 {
            assert_eq!(c.actual, Some(Poly::constant(-3)));
        }
    }

    #[test]
    fn t8_cell_value() {
        let r = verify_theorem(Claim::T8, &small(Claim::T8, 2, 4)).unwrap();
        assert!(r.all_pass);
        let c = r.cells.iter().find(|c| c.params.m == 2 && c.params.n == 4).unwrap();
        assert_eq!(c.actual, Some(Poly::from_i64s(&[0, -1, -3, -1])));
        assert_eq!(c.alt_expected, c.actual);
    }

    #[test]
    fn failing_cells_become_counterexamples() {
        let params = CellParams::new(1, 2);
        let bad = Cell::evaluate(params.clone(), Ok(Poly::one()), Ok(Poly::zero()), None);
        let good = Cell::evaluate(params.clone(), Ok(Poly::one()), Ok(Poly::one()), None);
        let alt_bad = Cell::evaluate(params.clone(), Ok(Poly::one()), Ok(Poly::one()), Some(Ok(Poly::zero())));
        let errored = Cell::evaluate(params, Err(Error::DivisionByZero), Ok(Poly::one()), None);
        assert!(!bad.pass && good.pass && !alt_bad.pass && !errored.pass);
        assert!(errored.note.as_deref().unwrap().contains("division by zero"));
        let r = Report::new(Claim::T7, Claim::T7.default_range(), vec![good, bad.clone()]);
        assert!(!r.all_pass);
        assert_eq!(r.counterexamples, vec![bad]);
        assert_eq!(r.exit_code(), 3);
        let r = Report::new(Claim::C11, Claim::C11.default_range(), r.cells.clone());
        assert_eq!(r.exit_code(), 4);
        assert!(r.summary.contains("not a proof"));
    }

    #[test]
    fn cells_are_sorted() {
        let mk = |k, m, n| Cell::evaluate(CellParams::new(m, n).with_k(k), Ok(Poly::one()), Ok(Poly::one()), None);
        let r = Report::new(Claim::C10, Claim::C10.default_range(), vec![mk(2, 0, 1), mk(1, 3, 0), mk(1, 0, 5), mk(1, 0, 2)]);
        let order: Vec<_> = r.cells.iter().map(|c| (c.params.k.unwrap(), c.params.m, c.params.n)).collect();
        assert_eq!(order, vec![(1, 0, 2), (1, 0, 5), (1, 3, 0), (2, 0, 1)]);
    }

    #[test]
    fn json_roundtrip_and_schema() {
        let mut range = small(Claim::T6, 2, 5);
        range.b_list = vec![BigInt::from(-2), BigInt::from(3)];
        let r = verify_theorem(Claim::T6, &range).unwrap();
        let json = r.to_json();
        assert_eq!(Report::from_json(&json).unwrap(), r);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["claim_id"], "t6");
        assert_eq!(v["cells"][0]["params"]["b"], "-2");
        assert!(v["cells"][0]["expected"].is_string());
        assert!(v["cells"][0]["pass"].is_boolean());
        assert!(v["counterexamples"].is_array());
        assert_eq!(v["range"]["b_list"][1], "3");
    }

    #[test]
    fn claim_parsing() {
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>().unwrap(), c);
        }
        assert_eq!("T1".parse::<Claim>().unwrap(), Claim::T1);
        assert!("t2".parse::<Claim>().is_err());
        assert!(verify_theorem(Claim::C10, &Claim::C10.default_range()).is_err());
        let mut empty = Claim::T6.default_range();
        empty.b_list.clear();
        assert!(verify_theorem(Claim::T6, &empty).is_err());
    }
}
