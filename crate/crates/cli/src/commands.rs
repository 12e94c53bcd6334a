use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use linkset_core::bent::{bent_linking, kerdock_bent_set, BentSet};
use linkset_core::cert::{self, Kind};
use linkset_core::designs::two_group_params;
use linkset_core::diffmat::{build_general, build_improved, build_nonreversible, build_tyken, dm_auto, normalize};
use linkset_core::linking::ReducedLinkingSystem;
use linkset_core::search::{
    census, enumerate_difference_sets, mcfarland_pair_sweep, spence_pair_sweep, SweepMode, SweepReport,
};
use linkset_core::{Error, FiniteGroup};
use serde_json::{json, Value};

use crate::{NonexistArgs, Output, Search};

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

/// Verification failures exit 1; everything else is a usage or input error.
impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Verification(_)) { 1 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub type CmdResult = Result<ExitCode, Failure>;

pub fn emit(out: Output, value: &Value, text: impl FnOnce() -> String) {
    match out {
        Output::Json => println!("{}", cert::to_canonical_string(value)),
        Output::Text => println!("{}", text()),
    }
}

fn read_input(path: &str) -> Result<Value, Failure> {
    let mut text = String::new();
    let read = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?;
    Ok(cert::parse_json(&text)?)
}

fn parse_group(spec: &str) -> Result<Arc<FiniteGroup>, Failure> {
    Ok(cert::parse_group(spec)?)
}

/// Runs a parse-and-verify step: parse errors exit 2, any other failure is
/// reported as a failed verification with exit 1.
fn verdict<T>(out: Output, kind: Kind, result: linkset_core::Result<T>) -> Result<T, Failure> {
    match result {
        Ok(v) => Ok(v),
        Err(e @ Error::Parse { .. }) => Err(e.into()),
        Err(e) => {
            let report = json!({ "kind": kind.as_str(), "verified": false, "reason": e.to_string() });
            emit(out, &report, || format!("not verified: {e}"));
            Err(Failure {
                code: 1,
                message: e.to_string(),
            })
        }
    }
}

fn seconds(d: std::time::Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e6
}

pub fn group(out: Output, spec: &str) -> CmdResult {
    let g = parse_group(spec)?;
    let factors = g.invariant_factors().ok();
    let report = json!({
        "group": cert::group_to_json(&g)?,
        "order": g.order(),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "invariant_factors": factors,
        "generators": g.generator_names(),
    });
    emit(out, &report, || {
        let mut s = format!("order {}, exponent {}, ", g.order(), g.exponent());
        match &factors {
            Some(f) => s += &format!("abelian with invariant factors {f:?}"),
            None => s += "nonabelian",
        }
        s + &format!("\ngenerators: {}", g.generator_names().join(", "))
    });
    Ok(ExitCode::SUCCESS)
}

pub fn ds_verify(out: Output, file: &str) -> CmdResult {
    let doc = read_input(file)?;
    let payload = cert::unwrap_envelope(&doc, Some(Kind::DifferenceSet))?;
    let rec = verdict(out, Kind::DifferenceSet, cert::ds_from_json(payload))?;
    let report = json!({
        "kind": Kind::DifferenceSet.as_str(),
        "verified": true,
        "params": rec.params.as_array(),
        "reversible": rec.is_reversible(),
    });
    emit(out, &report, || format!("verified {} difference set", rec.params));
    Ok(ExitCode::SUCCESS)
}

pub fn ds_enumerate(out: Output, spec: &str, k: usize) -> CmdResult {
    let g = parse_group(spec)?;
    let records = enumerate_difference_sets(&g, k);
    let sets: Vec<Value> = records.iter().map(|r| cert::set_to_json(&g, &r.set)).collect();
    let report = json!({
        "group": cert::group_to_json(&g)?,
        "k": k,
        "count": records.len(),
        "params": records.first().map(|r| r.params.as_array()),
        "sets": sets,
    });
    emit(out, &report, || {
        let mut s = format!("{} difference sets of size {k}", records.len());
        for r in &records {
            s += &format!("\n{}", r.names().join(" "));
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

fn system_summary(sys: &ReducedLinkingSystem) -> String {
    format!(
        "reduced {} linking system of size {} with (mu,nu) = ({},{})",
        sys.params,
        sys.len(),
        sys.munu.mu,
        sys.munu.nu
    )
}

pub fn link_verify(out: Output, file: &str, full: bool) -> CmdResult {
    let doc = read_input(file)?;
    let payload = cert::unwrap_envelope(&doc, Some(Kind::LinkingSystem))?;
    let sys = verdict(out, Kind::LinkingSystem, cert::system_from_json(payload))?;
    if full {
        let expanded = sys.expand();
        let ok = expanded.verify_full()?;
        verdict::<()>(
            out,
            Kind::LinkingSystem,
            if ok {
                Ok(())
            } else {
                Err(Error::Verification("expanded system fails".into()))
            },
        )?;
    }
    let report = json!({
        "kind": Kind::LinkingSystem.as_str(),
        "verified": true,
        "full": full,
        "params": sys.params.as_array(),
        "mu": sys.munu.mu,
        "nu": sys.munu.nu,
        "size": sys.len(),
        "reversibility": sys.reversibility_profile(),
    });
    emit(out, &report, || format!("verified {}", system_summary(&sys)));
    Ok(ExitCode::SUCCESS)
}

pub fn dm_construct(out: Output, spec: &str, rows: Option<usize>) -> CmdResult {
    let g = parse_group(spec)?;
    let rows = rows.ok_or_else(|| Failure::usage("--rows is required"))?;
    let m = dm_auto(&g, rows).ok_or_else(|| Failure {
        code: 1,
        message: format!("no difference matrix with {rows} rows found"),
    })?;
    let m = normalize(&m)?;
    let input = json!({ "group": cert::group_to_json(&g)?, "rows": rows });
    let doc = cert::envelope(Kind::DifferenceMatrix, input, cert::dm_to_json(&m)?);
    emit(out, &doc, || {
        let mut s = format!(
            "({}-element group, {} rows, lambda {}) difference matrix",
            g.order(),
            m.rows.len(),
            m.lambda
        );
        for r in &m.rows {
            s += &format!("\n{}", r.iter().map(|&x| g.name(x)).collect::<Vec<_>>().join(" "));
        }
        s
    });
    Ok(ExitCode::SUCCESS)
}

pub fn dm_verify(out: Output, file: &str) -> CmdResult {
    let doc = read_input(file)?;
    let payload = cert::unwrap_envelope(&doc, Some(Kind::DifferenceMatrix))?;
    let m = verdict(out, Kind::DifferenceMatrix, cert::dm_from_json_verified(payload))?;
    let report = json!({
        "kind": Kind::DifferenceMatrix.as_str(),
        "verified": true,
        "rows": m.rows.len(),
        "lambda": m.lambda,
        "normalized": m.is_normalized(),
    });
    emit(out, &report, || {
        format!("verified difference matrix with {} rows", m.rows.len())
    });
    Ok(ExitCode::SUCCESS)
}

pub fn bent_kerdock(out: Output, d: u32, linking: bool) -> CmdResult {
    let set = kerdock_bent_set(d)?;
    let input = json!({ "d": d });
    if linking {
        let sys = bent_linking(&set)?;
        let doc = cert::envelope(Kind::LinkingSystem, input, cert::system_to_json(&sys)?);
        emit(out, &doc, || system_summary(&sys));
    } else {
        let doc = cert::envelope(Kind::BentSet, input, cert::bent_set_to_json(&set));
        emit(out, &doc, || {
            let mut s = format!("bent set of {} functions on {} variables", set.len(), set.arity);
            for f in &set.functions {
                s += &format!("\n{}", f.to_hex());
            }
            s
        });
    }
    Ok(ExitCode::SUCCESS)
}

pub fn bent_verify(out: Output, file: &str) -> CmdResult {
    let doc = read_input(file)?;
    let payload = cert::unwrap_envelope(&doc, Some(Kind::BentSet))?;
    let functions = cert::functions_from_json(payload)?;
    let set = verdict(out, Kind::BentSet, BentSet::new(functions))?;
    let linking = bent_linking(&set).ok().map(|s| s.len());
    let report = json!({
        "kind": Kind::BentSet.as_str(),
        "verified": true,
        "arity": set.arity,
        "size": set.len(),
        "linking_system_size": linking,
    });
    emit(out, &report, || {
        format!(
            "verified bent set of {} functions on {} variables",
            set.len(),
            set.arity
        )
    });
    Ok(ExitCode::SUCCESS)
}

pub fn build(out: Output, which: &str, spec: Option<&str>, d: Option<u32>) -> CmdResult {
    let group = spec.map(parse_group).transpose()?;
    let sys = match (which, &group, d) {
        ("general", Some(g), _) => build_general(g)?,
        ("improved", Some(g), _) => build_improved(g)?,
        ("tyken", Some(k), Some(d)) => build_tyken(d, k)?,
        ("nonrev", _, Some(d)) => build_nonreversible(d)?,
        _ => return Err(Failure::usage(format!("missing arguments for `build {which}`"))),
    };
    let mut input = json!({ "construction": which });
    if let Some(g) = &group {
        input["group"] = cert::group_to_json(g)?;
    }
    if let Some(d) = d {
        input["d"] = json!(d);
    }
    let doc = cert::envelope(Kind::LinkingSystem, input, cert::system_to_json(&sys)?);
    emit(out, &doc, || system_summary(&sys));
    Ok(ExitCode::SUCCESS)
}

pub fn census_z42(out: Output, size: usize, with_systems: bool) -> CmdResult {
    let g = FiniteGroup::make_abelian_named(&[4, 4], &["x", "y"])?.into_ref();
    let c = census(&g, 6, size)?;
    let branches: Vec<Value> = c
        .branches
        .iter()
        .map(|b| {
            let mut v = json!({
                "mu": b.munu.mu,
                "nu": b.munu.nu,
                "branch": format!("{:?}", b.munu.branch).to_lowercase(),
                "edges": b.edges,
                "max_system_size": b.max_system_size,
                "systems": b.systems.len(),
            });
            if with_systems {
                let list: Result<Vec<Value>, Error> = b.systems.iter().map(cert::system_to_json).collect();
                v["system_list"] = json!(list?);
            }
            Ok(v)
        })
        .collect::<Result<_, Error>>()?;
    let payload = json!({
        "group": cert::group_to_json(&g)?,
        "k": c.k,
        "size": c.size,
        "params": c.params.map(|p| p.as_array()),
        "difference_sets": c.difference_sets,
        "branches": branches,
        "system_count": c.system_count(),
        "max_system_size": c.max_system_size(),
        "digest": { "count": c.system_count(), "sha256": c.digest() },
        "elapsed_seconds": seconds(c.elapsed),
    });
    let input = json!({ "census": "z42", "size": size });
    let doc = cert::envelope(Kind::CensusReport, input, payload);
    emit(out, &doc, || {
        format!(
            "{} difference sets, {} systems of size {size}, max system size {}\ndigest {}\n{:.3}s",
            c.difference_sets,
            c.system_count(),
            c.max_system_size(),
            c.digest(),
            c.elapsed.as_secs_f64()
        )
    });
    Ok(ExitCode::SUCCESS)
}

fn sweep_json(g: &FiniteGroup, r: &SweepReport) -> Result<Value, Failure> {
    Ok(json!({
        "group": cert::group_to_json(g)?,
        "params": r.params.as_array(),
        "candidates": r.candidates.iter().map(|m| json!([m.mu, m.nu])).collect::<Vec<_>>(),
        "mode": format!("{:?}", r.mode).to_lowercase(),
        "constructed": r.constructed,
        "distinct": r.distinct,
        "translation_classes": r.translation_classes,
        "closed_under_translation": r.closed_under_translation,
        "pairs_tested": r.pairs_tested,
        "linked_pairs": r.linked_pairs,
        "slot_cases": r.slot_cases,
        "invariance_samples": r.invariance_samples,
        "invariance_holds": r.invariance_holds,
        "elapsed_seconds": seconds(r.elapsed),
    }))
}

fn default_groups(search: Search) -> Vec<&'static [u32]> {
    match search {
        Search::Z8z2 => vec![&[8, 2]],
        Search::McfarlandQ3 => vec![&[3, 3, 5]],
        Search::SpenceD1 => vec![&[3, 3, 2, 2], &[3, 3, 4]],
    }
}

/// Exit 0 when the search confirms that no linked pair exists, 1 when one
/// is found.
pub fn nonexist(out: Output, args: &NonexistArgs) -> CmdResult {
    let mode = if args.full { SweepMode::Full } else { SweepMode::Pruned };
    let groups: Vec<Arc<FiniteGroup>> = match &args.group {
        Some(spec) => vec![parse_group(spec)?],
        None => default_groups(args.search)
            .into_iter()
            .map(|f| FiniteGroup::make_abelian(f).map(FiniteGroup::into_ref))
            .collect::<Result<_, _>>()?,
    };
    let mut results = Vec::new();
    let mut lines = Vec::new();
    let mut linked_total = 0u64;
    for g in &groups {
        match args.search {
            Search::Z8z2 => {
                let v = g.order();
                if !v.is_power_of_two() {
                    return Err(Failure::usage("the exhaustive search needs a group of order 2^(2d+2)"));
                }
                let p = two_group_params(v.trailing_zeros())?;
                let c = census(g, p.k as usize, 2)?;
                let linked = c.system_count() as u64;
                linked_total += linked;
                results.push(json!({
                    "group": cert::group_to_json(g)?,
                    "params": p.as_array(),
                    "mode": "exhaustive",
                    "difference_sets": c.difference_sets,
                    "candidates": c.branches.iter().map(|b| json!([b.munu.mu, b.munu.nu])).collect::<Vec<_>>(),
                    "linked_pairs": linked,
                    "max_system_size": c.max_system_size(),
                    "elapsed_seconds": seconds(c.elapsed),
                }));
                lines.push(format!(
                    "order {v}: {} difference sets, {linked} linked pairs ({:.3}s)",
                    c.difference_sets,
                    c.elapsed.as_secs_f64()
                ));
            }
            Search::McfarlandQ3 | Search::SpenceD1 => {
                let r = match args.search {
                    Search::McfarlandQ3 => mcfarland_pair_sweep(g, 3, 1, mode)?,
                    _ => spence_pair_sweep(g, 1, mode)?,
                };
                linked_total += r.linked_pairs;
                results.push(sweep_json(g, &r)?);
                lines.push(format!(
                    "order {}: {} sets, {} translation classes, {} pairs tested, {} linked ({:.3}s)",
                    r.group_order,
                    r.distinct,
                    r.translation_classes,
                    r.pairs_tested,
                    r.linked_pairs,
                    r.elapsed.as_secs_f64()
                ));
            }
        }
    }
    let search = match args.search {
        Search::Z8z2 => "z8z2",
        Search::McfarlandQ3 => "mcfarland-q3",
        Search::SpenceD1 => "spence-d1",
    };
    let confirmed = linked_total == 0;
    let payload = json!({ "search": search, "nonexistence_confirmed": confirmed, "results": results });
    let input = json!({ "search": search, "group": args.group, "full": args.full });
    let doc = cert::envelope(Kind::NonexistenceReport, input, payload);
    emit(out, &doc, || {
        let verdict = if confirmed {
            "no linked pair exists"
        } else {
            "linked pairs found"
        };
        format!("{}\n{verdict}", lines.join("\n"))
    });
    Ok(if confirmed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
