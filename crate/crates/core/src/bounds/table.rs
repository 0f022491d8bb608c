//! Bound records, the best-bounds table, and its TSV/markdown renderings.
//!
//! TSV schema: header `k\tr\tbound\tstatus\trecipe`, LF line endings, one row
//! per `(k, r)`. Lines starting with `#` are provenance notes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use super::reference::known_exact;
use crate::error::{Error, Result};

pub const TSV_HEADER: &str = "k\tr\tbound\tstatus\trecipe";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundStatus {
    /// `bound + 1` is the exact value.
    Exact,
    /// Certificate built and checked position by position.
    ConstructedVerified,
    /// Certificate reconstructible from the recipe; validity via the run shortcut.
    ConstructedShortcut,
    /// Published value carried as reference data.
    Reference,
    /// Evaluated closed-form formula.
    Formula,
}

impl BoundStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundStatus::Exact => "exact",
            BoundStatus::ConstructedVerified => "constructed-verified",
            BoundStatus::ConstructedShortcut => "constructed-shortcut",
            BoundStatus::Reference => "reference",
            BoundStatus::Formula => "formula",
        }
    }

    /// Tie-break strength: higher wins when bounds are equal.
    fn rank(self) -> u8 {
        match self {
            BoundStatus::Exact => 4,
            BoundStatus::ConstructedVerified => 3,
            BoundStatus::ConstructedShortcut => 2,
            BoundStatus::Reference => 1,
            BoundStatus::Formula => 0,
        }
    }
}

impl FromStr for BoundStatus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "exact" => BoundStatus::Exact,
            "constructed-verified" => BoundStatus::ConstructedVerified,
            "constructed-shortcut" => BoundStatus::ConstructedShortcut,
            "reference" => BoundStatus::Reference,
            "formula" => BoundStatus::Formula,
            other => return Err(Error::parse(format!("unknown bound status {other:?}"))),
        })
    }
}

/// The claim `W(k, r) > bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRecord {
    pub k: u32,
    pub r: u32,
    pub bound: BigUint,
    pub status: BoundStatus,
    pub recipe: String,
}

impl BoundRecord {
    pub fn new(
        k: u32,
        r: u32,
        bound: impl Into<BigUint>,
        status: BoundStatus,
        recipe: impl Into<String>,
    ) -> Self {
        Self {
            k,
            r,
            bound: bound.into(),
            status,
            recipe: recipe.into(),
        }
    }

    /// Rejects claims that contradict a known exact value.
    pub fn check_sound(&self) -> Result<()> {
        let Some(w) = known_exact(self.k, self.r) else {
            return Ok(());
        };
        let w = BigUint::from(w);
        if self.bound >= w {
            return Err(Error::Soundness(format!(
                "claimed W({}, {}) > {} but W({}, {}) = {w} ({})",
                self.k, self.r, self.bound, self.k, self.r, self.recipe
            )));
        }
        if self.status == BoundStatus::Exact && &self.bound + 1u32 != w {
            return Err(Error::Soundness(format!(
                "record for W({}, {}) is marked exact with bound {}, expected {}",
                self.k,
                self.r,
                self.bound,
                w - 1u32
            )));
        }
        Ok(())
    }

    /// Total order used for merging: bound, then status strength, then recipe.
    fn merge_cmp(&self, other: &Self) -> Ordering {
        self.bound
            .cmp(&other.bound)
            .then(self.status.rank().cmp(&other.status.rank()))
            .then_with(|| other.recipe.cmp(&self.recipe))
    }
}

/// At most one record per `(k, r)`; inserting keeps the better one.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundsTable {
    records: BTreeMap<(u32, u32), BoundRecord>,
    pub notes: Vec<String>,
}

impl BoundsTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, k: u32, r: u32) -> Option<&BoundRecord> {
        self.records.get(&(k, r))
    }

    /// Records sorted by `k`, then `r`.
    pub fn iter(&self) -> impl Iterator<Item = &BoundRecord> {
        self.records.values()
    }

    /// Inserts after the soundness check. Returns whether the table changed.
    pub fn insert(&mut self, record: BoundRecord) -> Result<bool> {
        record.check_sound()?;
        if record.recipe.contains(['\t', '\n', '\r']) {
            return Err(Error::domain("recipe must not contain tabs or newlines"));
        }
        match self.records.get(&(record.k, record.r)) {
            Some(existing) if existing.merge_cmp(&record) != Ordering::Less => Ok(false),
            _ => {
                self.records.insert((record.k, record.r), record);
                Ok(true)
            }
        }
    }

    /// Max-by-bound union; associative and commutative over records.
    pub fn merge(&mut self, other: &BoundsTable) -> Result<()> {
        for record in other.iter() {
            self.insert(record.clone())?;
        }
        for note in &other.notes {
            if !self.notes.contains(note) {
                self.notes.push(note.clone());
            }
        }
        Ok(())
    }

    /// Places where a best bound decreases as `k` or `r` grows.
    pub fn monotonicity_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        for rec in self.iter() {
            for (dk, dr) in [(1, 0), (0, 1)] {
                if let Some(next) = self.get(rec.k + dk, rec.r + dr) {
                    if next.bound < rec.bound {
                        warnings.push(format!(
                            "W({}, {}) > {} is below W({}, {}) > {}",
                            next.k, next.r, next.bound, rec.k, rec.r, rec.bound
                        ));
                    }
                }
            }
        }
        warnings
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for note in &self.notes {
            out.push_str("# ");
            out.push_str(note);
            out.push('\n');
        }
        out.push_str(TSV_HEADER);
        out.push('\n');
        for rec in self.iter() {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                rec.k,
                rec.r,
                rec.bound,
                rec.status.as_str(),
                rec.recipe
            ));
        }
        out
    }

    pub fn from_tsv(text: &str) -> Result<Self> {
        let mut table = BoundsTable::new();
        let mut header_seen = false;
        for (lineno, line) in text.lines().enumerate() {
            if let Some(note) = line.strip_prefix('#') {
                table
                    .notes
                    .push(note.strip_prefix(' ').unwrap_or(note).to_string());
                continue;
            }
            if !header_seen {
                if line != TSV_HEADER {
                    return Err(Error::parse(format!(
                        "expected header {TSV_HEADER:?}, found {line:?}"
                    )));
                }
                header_seen = true;
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            let [k, r, bound, status, recipe] = cols[..] else {
                return Err(Error::parse(format!(
                    "line {}: expected 5 columns",
                    lineno + 1
                )));
            };
            let field_err = |name: &str| Error::parse(format!("line {}: bad {name}", lineno + 1));
            let record = BoundRecord {
                k: k.parse().map_err(|_| field_err("k"))?,
                r: r.parse().map_err(|_| field_err("r"))?,
                bound: bound.parse().map_err(|_| field_err("bound"))?,
                status: status.parse()?,
                recipe: recipe.to_string(),
            };
            if table.get(record.k, record.r).is_some() {
                return Err(Error::parse(format!(
                    "line {}: duplicate row for k={} r={}",
                    lineno + 1,
                    record.k,
                    record.r
                )));
            }
            table.insert(record)?;
        }
        if !header_seen {
            return Err(Error::parse("missing header row"));
        }
        Ok(table)
    }

    /// Markdown table in the style of published bound tables: exact values
    /// plain, lower bounds prefixed with `>`, digits comma-grouped.
    pub fn to_markdown(&self) -> String {
        let mut out =
            String::from("| k | r | W(k,r) | status | recipe |\n|---:|---:|---:|:---|:---|\n");
        for rec in self.iter() {
            let value = if rec.status == BoundStatus::Exact {
                group_digits(&(&rec.bound + 1u32).to_string())
            } else {
                format!(">{}", group_digits(&rec.bound.to_string()))
            };
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                rec.k,
                rec.r,
                value,
                rec.status.as_str(),
                rec.recipe
            ));
        }
        out
    }
}

impl fmt::Display for BoundsTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_tsv())
    }
}

/// `1234567` → `1,234,567`.
pub fn group_digits(digits: &str) -> String {
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rec(k: u32, r: u32, b: u64, status: BoundStatus, recipe: &str) -> BoundRecord {
        BoundRecord::new(k, r, b, status, recipe)
    }

    #[test]
    fn insert_keeps_best() {
        let mut t = BoundsTable::new();
        assert!(t
            .insert(rec(7, 2, 3000, BoundStatus::Formula, "a"))
            .unwrap());
        assert!(t
            .insert(rec(
                7,
                2,
                3703,
                BoundStatus::ConstructedShortcut,
                "rabung p=617"
            ))
            .unwrap());
        assert!(!t
            .insert(rec(7, 2, 3500, BoundStatus::ConstructedVerified, "b"))
            .unwrap());
        assert!(t
            .insert(rec(
                7,
                2,
                3703,
                BoundStatus::ConstructedVerified,
                "rabung p=617"
            ))
            .unwrap());
        assert_eq!(
            t.get(7, 2).unwrap().status,
            BoundStatus::ConstructedVerified
        );
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn exactness_guard() {
        let mut t = BoundsTable::new();
        let err = t
            .insert(rec(4, 2, 35, BoundStatus::ConstructedShortcut, "bogus"))
            .unwrap_err();
        assert!(matches!(err, Error::Soundness(_)));
        assert!(t
            .insert(rec(
                4,
                2,
                34,
                BoundStatus::ConstructedShortcut,
                "rabung p=11"
            ))
            .is_ok());
        assert!(t.insert(rec(3, 2, 7, BoundStatus::Exact, "wrong")).is_err());
        assert!(t
            .insert(rec(3, 2, 8, BoundStatus::Exact, "bruteforce"))
            .is_ok());
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(BoundsTable::new().to_tsv(), format!("{TSV_HEADER}\n"));
        assert!(BoundsTable::new().to_markdown().lines().count() == 2);
    }

    #[test]
    fn markdown_groups_digits() {
        let mut t = BoundsTable::new();
        t.insert(rec(
            25,
            2,
            23_003_662_489,
            BoundStatus::Reference,
            "rabung p=958485937",
        ))
        .unwrap();
        t.insert(rec(3, 2, 8, BoundStatus::Exact, "bruteforce"))
            .unwrap();
        let md = t.to_markdown();
        assert!(md.contains("| 3 | 2 | 9 | exact |"));
        assert!(md.contains(">23,003,662,489"));
        let tsv = t.to_tsv();
        assert!(tsv.contains("\t23003662489\t"));
        assert_eq!(group_digits("100"), "100");
        assert_eq!(group_digits("1000"), "1,000");
    }

    #[test]
    fn monotonicity_warning() {
        let mut t = BoundsTable::new();
        t.insert(rec(5, 2, 177, BoundStatus::Exact, "x")).unwrap();
        t.insert(rec(6, 2, 100, BoundStatus::Formula, "y")).unwrap();
        assert_eq!(t.monotonicity_warnings().len(), 1);
    }

    #[test]
    fn rejects_bad_tsv() {
        assert!(BoundsTable::from_tsv("").is_err());
        assert!(BoundsTable::from_tsv("k r bound\n").is_err());
        let dup = format!("{TSV_HEADER}\n7\t2\t1\tformula\ta\n7\t2\t2\tformula\tb\n");
        assert!(BoundsTable::from_tsv(&dup).is_err());
        let bad = format!("{TSV_HEADER}\n7\t2\tx\tformula\ta\n");
        assert!(BoundsTable::from_tsv(&bad).is_err());
    }

    fn arb_record() -> impl Strategy<Value = BoundRecord> {
        let status = prop_oneof![
            Just(BoundStatus::ConstructedVerified),
            Just(BoundStatus::ConstructedShortcut),
            Just(BoundStatus::Reference),
            Just(BoundStatus::Formula),
        ];
        (
            7u32..12,
            2u32..5,
            1u64..1_000_000,
            status,
            "[a-z =0-9]{0,12}",
        )
            .prop_map(|(k, r, b, s, recipe)| BoundRecord::new(k, r, b, s, recipe))
    }

    proptest! {
        #[test]
        fn tsv_round_trip(records in prop::collection::vec(arb_record(), 0..20)) {
            let mut t = BoundsTable::new();
            for r in records { t.insert(r).unwrap(); }
            t.notes.push("note".into());
            prop_assert_eq!(BoundsTable::from_tsv(&t.to_tsv()).unwrap(), t);
        }

        #[test]
        fn merge_is_order_independent(a in prop::collection::vec(arb_record(), 0..15),
                                      b in prop::collection::vec(arb_record(), 0..15)) {
            let build = |rs: &[BoundRecord]| {
                let mut t = BoundsTable::new();
                for r in rs { t.insert(r.clone()).unwrap(); }
                t
            };
            let (ta, tb) = (build(&a), build(&b));
            let mut ab = ta.clone();
            ab.merge(&tb).unwrap();
            let mut ba = tb.clone();
            ba.merge(&ta).unwrap();
            prop_assert_eq!(ab.iter().collect::<Vec<_>>(), ba.iter().collect::<Vec<_>>());
            let mut all: Vec<BoundRecord> = a.clone();
            all.extend(b.iter().cloned());
            all.reverse();
            let whole = build(&all);
            prop_assert_eq!(whole.iter().collect::<Vec<_>>(), ab.iter().collect::<Vec<_>>());
        }
    }
}
