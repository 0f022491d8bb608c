//! Sweep result files and the validating merge.
//!
//! One unit per file: header `unit_id k r p bound checksum` (tab separated),
//! one row per `(k, r)` with `-` where no prime qualified, then a footer
//! comment `# lo=.. hi=.. primes=.. r_set=.. k_max=..`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use log::warn;

use super::{BestMap, SweepResult};
use crate::bounds::{BoundRecord, BoundStatus, BoundsTable};
use crate::error::{Error, Result};

pub const RESULT_HEADER: &str = "unit_id\tk\tr\tp\tbound\tchecksum";

impl fmt::Display for SweepResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{RESULT_HEADER}")?;
        for k in 3..=self.k_max {
            for &r in &self.r_set {
                let (p, bound) = match self.best.get(&(k, r)) {
                    Some((p, b)) => (p.to_string(), b.to_string()),
                    None => ("-".into(), "-".into()),
                };
                writeln!(
                    f,
                    "{}\t{k}\t{r}\t{p}\t{bound}\t{:016x}",
                    self.unit_id, self.checksum
                )?;
            }
        }
        let r_set: Vec<String> = self.r_set.iter().map(u32::to_string).collect();
        writeln!(
            f,
            "# lo={} hi={} primes={} r_set={} k_max={}",
            self.lo,
            self.hi,
            self.primes,
            r_set.join(","),
            self.k_max
        )
    }
}

impl FromStr for SweepResult {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        if lines.next() != Some(RESULT_HEADER) {
            return Err(Error::parse(format!(
                "sweep result must start with {RESULT_HEADER:?}"
            )));
        }
        let mut unit_id: Option<String> = None;
        let mut checksum: Option<u64> = None;
        let mut best = BestMap::new();
        let mut rows = 0usize;
        let mut footer: Option<BTreeMap<String, String>> = None;
        for line in lines {
            if let Some(rest) = line.strip_prefix('#') {
                let fields = rest
                    .split_whitespace()
                    .filter_map(|kv| kv.split_once('='))
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect();
                footer = Some(fields);
                continue;
            }
            let bad = || Error::parse(format!("bad result row {line:?}"));
            let cols: Vec<&str> = line.split('\t').collect();
            let [id, k, r, p, bound, sum] = cols[..] else {
                return Err(bad());
            };
            if unit_id.get_or_insert_with(|| id.to_string()) != id {
                return Err(Error::parse("a result file holds exactly one unit"));
            }
            let sum = u64::from_str_radix(sum, 16).map_err(|_| bad())?;
            if *checksum.get_or_insert(sum) != sum {
                return Err(Error::parse("checksum differs between rows of one unit"));
            }
            rows += 1;
            if p == "-" && bound == "-" {
                continue;
            }
            let key = (k.parse().map_err(|_| bad())?, r.parse().map_err(|_| bad())?);
            let value = (
                p.parse().map_err(|_| bad())?,
                bound.parse().map_err(|_| bad())?,
            );
            best.insert(key, value);
        }
        let footer = footer.ok_or_else(|| Error::parse("missing footer line"))?;
        let field = |name: &str| {
            footer
                .get(name)
                .ok_or_else(|| Error::parse(format!("footer lacks {name}")))
        };
        let num = |name: &str| -> Result<u64> {
            field(name)?
                .parse()
                .map_err(|_| Error::parse(format!("bad footer {name}")))
        };
        let r_set = field("r_set")?
            .split(',')
            .map(|r| {
                r.parse::<u32>()
                    .map_err(|_| Error::parse("bad footer r_set"))
            })
            .collect::<Result<Vec<_>>>()?;
        let k_max = num("k_max")? as u32;
        let result = SweepResult {
            unit_id: unit_id.ok_or_else(|| Error::parse("no rows"))?,
            lo: num("lo")?,
            hi: num("hi")?,
            r_set,
            k_max,
            best,
            primes: num("primes")?,
            checksum: checksum.unwrap_or_default(),
            elapsed: Duration::ZERO,
        };
        if rows != (k_max.saturating_sub(2) as usize) * result.r_set.len() {
            return Err(Error::parse(format!(
                "expected one row per (k, r) for k in 3..={k_max}, found {rows}"
            )));
        }
        Ok(result)
    }
}

impl SweepResult {
    pub fn to_tsv(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    /// Every best entry as a shortcut-validated record.
    pub fn to_table(&self) -> Result<BoundsTable> {
        let mut table = BoundsTable::new();
        for (&(k, r), &(p, bound)) in &self.best {
            table.insert(BoundRecord::new(
                k,
                r,
                bound,
                BoundStatus::ConstructedShortcut,
                format!("rabung p={p}"),
            ))?;
        }
        Ok(table)
    }
}

#[derive(Debug, Clone)]
pub struct MergeReport {
    pub table: BoundsTable,
    pub warnings: Vec<String>,
}

/// Max-by-bound merge. Results sharing a unit id must agree exactly (the
/// redundant-run check); overlapping ranges under different ids are allowed
/// but reported.
pub fn merge_results(results: &[SweepResult]) -> Result<MergeReport> {
    let mut by_id: BTreeMap<&str, &SweepResult> = BTreeMap::new();
    for res in results {
        match by_id.get(res.unit_id.as_str()) {
            Some(prev) => {
                let same = prev.checksum == res.checksum
                    && prev.best == res.best
                    && (prev.lo, prev.hi, &prev.r_set, prev.k_max, prev.primes)
                        == (res.lo, res.hi, &res.r_set, res.k_max, res.primes);
                if !same {
                    return Err(Error::Validation(format!(
                        "unit {} was computed twice with different results (checksums {:016x} and {:016x})",
                        res.unit_id, prev.checksum, res.checksum
                    )));
                }
            }
            None => {
                by_id.insert(&res.unit_id, res);
            }
        }
    }

    let mut warnings = Vec::new();
    let units: Vec<&SweepResult> = by_id.values().copied().collect();
    for (i, a) in units.iter().enumerate() {
        for b in &units[i + 1..] {
            let shares_r = a.r_set.iter().any(|r| b.r_set.contains(r));
            if shares_r && a.lo < b.hi && b.lo < a.hi {
                let msg = format!(
                    "units {} [{}, {}) and {} [{}, {}) overlap",
                    a.unit_id, a.lo, a.hi, b.unit_id, b.lo, b.hi
                );
                warn!("{msg}");
                warnings.push(msg);
            }
        }
    }

    let mut table = BoundsTable::new();
    for unit in units {
        table.merge(&unit.to_table()?)?;
    }
    Ok(MergeReport { table, warnings })
}
