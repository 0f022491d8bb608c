//! Checkpoint files.
//!
//! ```text
//! vdwsweep 1
//! unit_id=<id>
//! lo=<int>
//! hi=<int>
//! r_set=<int,int,...>
//! k_max=<int>
//! last_p=<int|none>
//! primes=<int>
//! fold=<16 hex digits>
//! k<TAB>r<TAB>p<TAB>bound
//! ...one row per best entry...
//! integrity=<16 hex digits, FNV-1a of every byte above>
//! ```

use std::fs;
use std::hash::Hasher;
use std::path::{Path, PathBuf};

use fnv::FnvHasher;

use super::{SweepState, WorkUnit};
use crate::error::{Error, Result};

const MAGIC: &str = "vdwsweep 1";
const BEST_HEADER: &str = "k\tr\tp\tbound";

fn fnv(bytes: &[u8]) -> u64 {
    let mut h = FnvHasher::default();
    h.write(bytes);
    h.finish()
}

pub(crate) fn render(unit: &WorkUnit, state: &SweepState) -> String {
    let r_set: Vec<String> = unit.r_set.iter().map(u32::to_string).collect();
    let mut out = format!(
        "{MAGIC}\nunit_id={}\nlo={}\nhi={}\nr_set={}\nk_max={}\nlast_p={}\nprimes={}\nfold={:016x}\n{BEST_HEADER}\n",
        unit.unit_id,
        unit.lo,
        unit.hi,
        r_set.join(","),
        unit.k_max,
        state.last_p.map_or("none".to_string(), |p| p.to_string()),
        state.primes,
        state.fold,
    );
    for (&(k, r), &(p, bound)) in &state.best {
        out.push_str(&format!("{k}\t{r}\t{p}\t{bound}\n"));
    }
    let integrity = fnv(out.as_bytes());
    out.push_str(&format!("integrity={integrity:016x}\n"));
    out
}

/// Writes through a temporary file and a rename so a crash never leaves a
/// half-written checkpoint behind.
pub(crate) fn write(path: &Path, unit: &WorkUnit, state: &SweepState) -> Result<()> {
    let mut tmp = PathBuf::from(path);
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    tmp.set_file_name(name);
    fs::write(&tmp, render(unit, state))?;
    fs::rename(&tmp, path)?;
    Ok(())
}

pub(crate) fn read(path: &Path, unit: &WorkUnit) -> Result<SweepState> {
    let text = fs::read_to_string(path)?;
    parse(&text, unit).map_err(|e| match e {
        Error::Parse(msg) => Error::Integrity(format!("checkpoint {}: {msg}", path.display())),
        other => other,
    })
}

pub(crate) fn parse(text: &str, unit: &WorkUnit) -> Result<SweepState> {
    let body_end = text
        .rfind("integrity=")
        .ok_or_else(|| Error::Integrity("checkpoint has no integrity line".into()))?;
    let (body, tail) = text.split_at(body_end);
    let stored = tail
        .strip_prefix("integrity=")
        .and_then(|t| t.strip_suffix('\n'))
        .and_then(|h| u64::from_str_radix(h, 16).ok())
        .ok_or_else(|| Error::Integrity("malformed integrity line".into()))?;
    if !body.ends_with('\n') || fnv(body.as_bytes()) != stored {
        return Err(Error::Integrity(
            "checkpoint checksum does not match its contents".into(),
        ));
    }

    let mut lines = body.lines();
    let mut next = |key: &str| -> Result<String> {
        let line = lines
            .next()
            .ok_or_else(|| Error::parse(format!("missing {key}")))?;
        if key.is_empty() {
            return Ok(line.to_string());
        }
        line.strip_prefix(key)
            .and_then(|l| l.strip_prefix('='))
            .map(str::to_string)
            .ok_or_else(|| Error::parse(format!("expected {key}=, found {line:?}")))
    };
    if next("")? != MAGIC {
        return Err(Error::parse("not a sweep checkpoint"));
    }
    let stored_unit = (
        next("unit_id")?,
        next("lo")?,
        next("hi")?,
        next("r_set")?,
        next("k_max")?,
    );
    let r_set: Vec<String> = unit.r_set.iter().map(u32::to_string).collect();
    let expected = (
        unit.unit_id.clone(),
        unit.lo.to_string(),
        unit.hi.to_string(),
        r_set.join(","),
        unit.k_max.to_string(),
    );
    if stored_unit != expected {
        return Err(Error::Validation(format!(
            "checkpoint belongs to a different work unit: {stored_unit:?}, expected {expected:?}"
        )));
    }
    let num = |s: String, what: &str| {
        s.parse::<u64>()
            .map_err(|_| Error::parse(format!("bad {what}")))
    };
    let last_p = match next("last_p")?.as_str() {
        "none" => None,
        s => Some(num(s.to_string(), "last_p")?),
    };
    let primes = num(next("primes")?, "primes")?;
    let fold = u64::from_str_radix(&next("fold")?, 16).map_err(|_| Error::parse("bad fold"))?;
    if next("")? != BEST_HEADER {
        return Err(Error::parse("missing best-map header"));
    }
    let mut state = SweepState {
        last_p,
        primes,
        fold,
        best: Default::default(),
    };
    for line in lines {
        let cols: Vec<&str> = line.split('\t').collect();
        let [k, r, p, bound] = cols[..] else {
            return Err(Error::parse(format!("bad best-map row {line:?}")));
        };
        let bad = || Error::parse(format!("bad best-map row {line:?}"));
        state.best.insert(
            (k.parse().map_err(|_| bad())?, r.parse().map_err(|_| bad())?),
            (
                p.parse().map_err(|_| bad())?,
                bound.parse().map_err(|_| bad())?,
            ),
        );
    }
    Ok(state)
}
