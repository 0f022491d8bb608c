use std::fs;

use vdw_core::colorings::rabung_valid;
use vdw_core::numtheory::primitive_root;
use vdw_core::sweep::{
    merge_results, run_workunit, run_workunit_with, SweepOptions, SweepOutcome, SweepResult,
    WorkUnit,
};
use vdw_core::Error;

fn unit(lo: u64, hi: u64, r: &[u32], k_max: u32) -> WorkUnit {
    WorkUnit::new(lo, hi, r, k_max, "u").unwrap()
}

#[test]
fn thread_count_does_not_matter() {
    let u = unit(2, 20_000, &[2, 3, 4], 9);
    let texts: Vec<String> = [1, 2, 5]
        .iter()
        .map(|&t| {
            let opts = SweepOptions {
                threads: Some(t),
                ..Default::default()
            };
            match run_workunit_with(&u, &opts).unwrap() {
                SweepOutcome::Complete(r) => r.to_tsv(),
                other => panic!("{other:?}"),
            }
        })
        .collect();
    assert!(texts.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn sharding_law() {
    let whole_unit = unit(2, 12_000, &[2, 3], 8);
    let whole = merge_results(&[run_workunit(&whole_unit, None).unwrap()])
        .unwrap()
        .table;
    for count in [2, 5, 16] {
        let parts: Vec<SweepResult> = whole_unit
            .shards(count)
            .iter()
            .map(|s| run_workunit(s, None).unwrap())
            .collect();
        let merged = merge_results(&parts).unwrap();
        assert!(merged.warnings.is_empty());
        assert_eq!(merged.table.to_tsv(), whole.to_tsv(), "{count} shards");
    }
}

#[test]
fn resume_after_interruption_matches_uninterrupted() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("u.ckpt");
    let u = unit(2, 30_000, &[2, 3], 9);
    let opts = SweepOptions {
        checkpoint: Some(ckpt.clone()),
        threads: Some(3),
        stop_after_batches: Some(2),
    };
    let SweepOutcome::Interrupted { primes, .. } = run_workunit_with(&u, &opts).unwrap() else {
        panic!("expected an interruption");
    };
    assert_eq!(primes, 2048);
    assert!(fs::read_to_string(&ckpt)
        .unwrap()
        .starts_with("vdwsweep 1\n"));
    let resumed = run_workunit(&u, Some(&ckpt)).unwrap();
    let fresh = run_workunit(&u, None).unwrap();
    assert_eq!(resumed.to_tsv(), fresh.to_tsv());
}

#[test]
fn corrupt_checkpoint_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("u.ckpt");
    let u = unit(2, 30_000, &[2], 7);
    let opts = SweepOptions {
        checkpoint: Some(ckpt.clone()),
        stop_after_batches: Some(1),
        ..Default::default()
    };
    run_workunit_with(&u, &opts).unwrap();
    let text = fs::read_to_string(&ckpt).unwrap();
    fs::write(&ckpt, text.replacen("primes=1024", "primes=1025", 1)).unwrap();
    assert!(matches!(
        run_workunit(&u, Some(&ckpt)),
        Err(Error::Integrity(_))
    ));
}

#[test]
fn every_best_is_independently_valid() {
    let r = run_workunit(&unit(2, 5000, &[2, 3, 4, 5, 6], 10), None).unwrap();
    assert!(!r.best.is_empty());
    for (&(k, colors), &(p, bound)) in &r.best {
        assert!((r.lo..r.hi).contains(&p));
        assert_eq!(bound, (k as u128 - 1) * p as u128 + 1);
        assert!(rabung_valid(p, primitive_root(p).unwrap(), colors, k).unwrap());
    }
}

#[test]
fn result_files_merge_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_workunit(&WorkUnit::new(2, 500, &[2], 7, "a").unwrap(), None).unwrap();
    let b = run_workunit(&WorkUnit::new(500, 1000, &[2], 7, "b").unwrap(), None).unwrap();
    let mut loaded = Vec::new();
    for res in [&a, &b] {
        let path = dir.path().join(format!("{}.tsv", res.unit_id));
        fs::write(&path, res.to_tsv()).unwrap();
        loaded.push(SweepResult::parse(&fs::read_to_string(&path).unwrap()).unwrap());
    }
    let merged = merge_results(&loaded).unwrap();
    assert_eq!(merged.table.get(7, 2).unwrap().recipe, "rabung p=617");
}
