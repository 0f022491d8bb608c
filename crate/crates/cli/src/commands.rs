use std::fs;
use std::path::Path;

use log::{info, warn};
use num_bigint::BigUint;
use vdw_core::bounds::{
    blankenship_inner_colors, bound_blankenship, growth_ratios, reference_table, BoundRecord,
    BoundStatus, BoundsTable, FormulaRegistry,
};
use vdw_core::colorings::{
    alternating_fill, assemble_certificate, rabung_coloring, Certificate, CertificateKind,
    Coloring, ShortcutProfile, Topology, Verification,
};
use vdw_core::numtheory::{is_primitive_root, primitive_root};
use vdw_core::sweep::{
    merge_results, run_workunit_with, SweepOptions, SweepOutcome, SweepResult, WorkUnit,
};
use vdw_core::transforms::{assemble_lifted, xu_product, zip, zip_twice};
use vdw_core::verifier::{
    brute_force_w, find_mono_ap_cyclic, verify_certificate_with, BruteForce, ScannerRegistry,
    VerifyOutcome,
};
use vdw_core::{Error, Result};

use crate::summary::Summary;
use crate::{Command, ComposeMethod, ReportFormat};

pub fn run(command: Command) -> Result<Summary> {
    match command {
        Command::Sweep {
            lo,
            hi,
            colors,
            kmax,
            out,
            checkpoint,
            threads,
            unit_id,
        } => {
            let id = unit_id.unwrap_or_else(|| format!("{lo}-{hi}"));
            let unit = WorkUnit::new(lo, hi, &colors, kmax, id)?;
            let options = SweepOptions {
                checkpoint,
                threads,
                stop_after_batches: None,
            };
            let SweepOutcome::Complete(result) = run_workunit_with(&unit, &options)? else {
                unreachable!("sweeps from the command line run to completion");
            };
            info!("swept {} primes in {:.2?}", result.primes, result.elapsed);
            fs::write(&out, result.to_tsv())?;
            let mut summary = Summary::new("sweep")
                .with("unit", &result.unit_id)
                .with("primes", result.primes)
                .with("checksum", format!("{:016x}", result.checksum));
            for &r in &result.r_set {
                let top = match result.best.get(&(kmax, r)) {
                    Some((p, bound)) => format!("{p}:{bound}"),
                    None => "-".into(),
                };
                summary = summary.with("best", format!("k{kmax}r{r}:{top}"));
            }
            Ok(summary)
        }

        Command::Rabung {
            prime,
            root,
            colors,
            k,
            emit,
            cap,
        } => {
            let root = match root {
                Some(rho) => {
                    if !is_primitive_root(rho, prime)? {
                        return Err(Error::Domain(format!(
                            "{rho} is not a primitive root of {prime}"
                        )));
                    }
                    rho
                }
                None => primitive_root(prime)?,
            };
            let block = rabung_coloring(prime, root, colors)?;
            let profile = ShortcutProfile::of(&block);
            if !profile.applicable() {
                return Err(Error::Domain(format!(
                    "{colors} does not divide p - 1 = {}; the shortcut does not apply",
                    prime - 1
                )));
            }
            if !profile.valid_for(k) {
                return Err(Error::Validation(format!(
                    "block is not valid for k = {k}: longest run {} at position {}, {} leading positions share a color{}",
                    profile.longest_run,
                    profile.longest_start,
                    profile.prefix_run,
                    match profile.min_valid_k(1000) {
                        Some(m) => format!("; smallest valid k is {m}"),
                        None => String::new(),
                    }
                )));
            }
            let fill = alternating_fill(k);
            let mut cert = assemble_certificate(&block, k, &fill)?;
            cert.kind = CertificateKind::Rabung;
            cert.meta = format!("p={prime} root={root} {}", cert.meta);
            cert.verified = Verification::Shortcut;
            let cert = if cert.len() <= cap.cap {
                expect_verified(&cert, cert.k, cap.cap)?
            } else {
                info!(
                    "length {} above cap {}; keeping shortcut validation only",
                    cert.len(),
                    cap.cap
                );
                cert
            };
            if let Some(path) = emit {
                write_cert(&path, &cert)?;
            }
            Ok(Summary::new("rabung")
                .with("p", prime)
                .with("root", root)
                .with("r", colors)
                .with("k", k)
                .with("n", cert.len())
                .with("bound", cert.len())
                .with("verified", cert.verified.as_str()))
        }

        Command::Zip {
            input,
            twice,
            out,
            cap,
        } => {
            let source = read_cert(&input)?;
            let k = source.k;
            let n = source.len() as u64;
            if (n - 1) % (k as u64 - 1) != 0 {
                return Err(Error::Domain(format!(
                    "certificate length {n} is not (k-1) * period + 1 for k = {k}"
                )));
            }
            let period = (n - 1) / (k as u64 - 1);
            let colors: Vec<u8> = (1..period)
                .map(|i| source.coloring.get(i as usize))
                .collect();
            let block = Coloring::linear(&colors, source.colors())?;
            let lifted = if twice {
                zip_twice(&block)?
            } else {
                zip(&block)?
            };
            let label = if twice { "zip-twice" } else { "zip" };
            let meta = format!("{label} source-period={period}");
            let cert = assemble_lifted(&lifted, k, CertificateKind::Zip, &meta, cap.cap)?;
            write_cert(&out, &cert)?;
            Ok(Summary::new(label)
                .with("source_period", period)
                .with("r", cert.colors())
                .with("k", k)
                .with("n", cert.len())
                .with("bound", cert.len())
                .with("verified", cert.verified.as_str()))
        }

        Command::Product {
            outer,
            inner,
            k,
            permissive,
            out,
            cap,
        } => {
            let outer = read_cert(&outer)?.coloring.with_topology(Topology::Cyclic);
            let inner = read_cert(&inner)?.coloring;
            let product = xu_product(&outer, &inner, k, permissive)?;
            let meta = format!("xu n={} b={}", outer.len(), inner.len());
            let cert = Certificate::new(product, k, CertificateKind::Product, meta)?;
            let cert = if cert.len() <= cap.cap {
                expect_verified(&cert, k, cap.cap)?
            } else {
                warn!(
                    "product of length {} is above the cap and was not verified",
                    cert.len()
                );
                cert
            };
            write_cert(&out, &cert)?;
            Ok(Summary::new("product")
                .with("n", outer.len())
                .with("m", inner.len())
                .with("r", cert.colors())
                .with("k", k)
                .with("bound", cert.len())
                .with("verified", cert.verified.as_str()))
        }

        Command::Compose {
            method: ComposeMethod::Blankenship,
            p,
            inner_bound,
            k,
            colors,
        } => {
            let b = parse_big(&inner_bound)?;
            let bound = bound_blankenship(p, &b, k)?;
            let inner_r = blankenship_inner_colors(p, colors);
            BoundRecord::new(
                k,
                colors,
                bound.clone(),
                BoundStatus::Formula,
                format!("blankenship p={p}"),
            )
            .check_sound()?;
            Ok(Summary::new("compose")
                .with("method", "blankenship")
                .with("k", k)
                .with("r", colors)
                .with("inner_r", inner_r)
                .with("bound", bound))
        }

        Command::Verify {
            cert,
            k,
            cyclic,
            scanner,
            cap,
        } => {
            let certificate = read_cert(&cert)?;
            if cyclic {
                if certificate.len() > cap.cap {
                    return Err(Error::Resource(format!(
                        "coloring has {} entries, above the cap of {}",
                        certificate.len(),
                        cap.cap
                    )));
                }
                let ring = certificate.coloring.clone().with_topology(Topology::Cyclic);
                if let Some(w) = find_mono_ap_cyclic(&ring, k) {
                    return Err(Error::Validation(format!(
                        "monochromatic progression mod {}: {w}",
                        ring.len()
                    )));
                }
                return Ok(Summary::new("verify")
                    .with("n", certificate.len())
                    .with("k", k)
                    .with("topology", "cyclic")
                    .with("status", "ok"));
            }
            let registry = ScannerRegistry::default();
            let chosen = registry.get(&scanner).ok_or_else(|| {
                Error::Domain(format!(
                    "unknown scanner {scanner:?}; available: {}",
                    registry.names().join(", ")
                ))
            })?;
            let verified = expect_verified_with(&certificate, k, cap.cap, chosen)?;
            Ok(Summary::new("verify")
                .with("n", verified.len())
                .with("k", k)
                .with("r", verified.colors())
                .with("scanner", chosen.name())
                .with("status", "ok"))
        }

        Command::Bruteforce { k, colors, limit } => {
            let summary = Summary::new("bruteforce").with("k", k).with("r", colors);
            Ok(match brute_force_w(k, colors, limit)? {
                BruteForce::Exact(w) => summary.with("W", w),
                BruteForce::ExceedsLimit(n) => summary.with("W_above", n),
            })
        }

        Command::Bounds {
            formula,
            args,
            list,
        } => {
            let registry = FormulaRegistry::default();
            if list {
                for name in registry.names() {
                    let f = registry.get(name).expect("listed");
                    eprintln!("{name}({}): {}", f.params().join(", "), f.claim());
                }
                return Ok(Summary::new("formulas").with("names", registry.names().join(",")));
            }
            let name = formula.expect("clap requires --formula without --list");
            let values = args
                .iter()
                .map(|a| parse_big(a))
                .collect::<Result<Vec<_>>>()?;
            let value = registry.evaluate(&name, &values)?;
            Ok(Summary::new("formula")
                .with("name", name)
                .with("value", value))
        }

        Command::Merge { inputs, out } => {
            let mut results = Vec::new();
            let mut tables = Vec::new();
            for path in &inputs {
                let text = fs::read_to_string(path)?;
                if text.starts_with(vdw_core::sweep::RESULT_HEADER) {
                    results.push(SweepResult::parse(&text)?);
                } else {
                    tables.push(BoundsTable::from_tsv(&text)?);
                }
            }
            let report = merge_results(&results)?;
            let mut table = report.table;
            for t in &tables {
                table.merge(t)?;
            }
            for w in table.monotonicity_warnings() {
                warn!("{w}");
            }
            fs::write(&out, table.to_tsv())?;
            Ok(Summary::new("merge")
                .with("units", results.len())
                .with("tables", tables.len())
                .with("rows", table.len())
                .with("warnings", report.warnings.len()))
        }

        Command::Report {
            table,
            ratios,
            format,
        } => {
            let table = match &table {
                Some(path) => BoundsTable::from_tsv(&fs::read_to_string(path)?)?,
                None => reference_table(),
            };
            for w in table.monotonicity_warnings() {
                warn!("{w}");
            }
            match format {
                ReportFormat::Markdown => print!("{}", table.to_markdown()),
                ReportFormat::Tsv => print!("{}", table.to_tsv()),
            }
            let mut points = 0;
            if ratios {
                let mut colors: Vec<u32> = table.iter().map(|r| r.r).collect();
                colors.dedup();
                colors.sort_unstable();
                colors.dedup();
                println!();
                match format {
                    ReportFormat::Markdown => println!("| r | k | ratio |\n|---:|---:|---:|"),
                    ReportFormat::Tsv => println!("r\tk\tratio"),
                }
                for r in colors {
                    for (k, ratio) in growth_ratios(&table, r) {
                        points += 1;
                        match format {
                            ReportFormat::Markdown => println!("| {r} | {k} | {ratio:.3} |"),
                            ReportFormat::Tsv => println!("{r}\t{k}\t{ratio}"),
                        }
                    }
                }
            }
            Ok(Summary::new("report")
                .with("rows", table.len())
                .with("ratio_points", points))
        }
    }
}

fn parse_big(s: &str) -> Result<BigUint> {
    s.replace(['_', ','], "")
        .parse()
        .map_err(|_| Error::Domain(format!("{s:?} is not a natural number")))
}

fn read_cert(path: &Path) -> Result<Certificate> {
    Certificate::parse(&fs::read_to_string(path)?)
}

fn write_cert(path: &Path, cert: &Certificate) -> Result<()> {
    fs::write(path, cert.to_text())?;
    info!("wrote {} ({} entries)", path.display(), cert.len());
    Ok(())
}

fn expect_verified(cert: &Certificate, k: u32, cap: usize) -> Result<Certificate> {
    let registry = ScannerRegistry::default();
    expect_verified_with(
        cert,
        k,
        cap,
        registry.get("run").expect("run scanner is registered"),
    )
}

fn expect_verified_with(
    cert: &Certificate,
    k: u32,
    cap: usize,
    scanner: &dyn vdw_core::verifier::ApScanner,
) -> Result<Certificate> {
    match verify_certificate_with(cert, k, cap, scanner)? {
        VerifyOutcome::Verified(c) => Ok(c),
        VerifyOutcome::Refuted(w) => {
            Err(Error::Validation(format!("monochromatic progression: {w}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_numbers_accept_separators() {
        assert_eq!(parse_big("98,741").unwrap(), BigUint::from(98_741u32));
        assert_eq!(parse_big("1_000").unwrap(), BigUint::from(1000u32));
        assert!(parse_big("x").is_err());
    }

    #[test]
    fn summary_format() {
        let s = Summary::new("rabung").with("p", 11).with("bound", 34);
        assert_eq!(s.to_string(), "RESULT kind=rabung p=11 bound=34");
    }
}
