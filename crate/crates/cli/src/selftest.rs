use std::process::ExitCode;

use linkset_core::designs::coset_union;
use linkset_core::diffmat::{verify_dm, DifferenceMatrix, LiftChoice, LinkedFrame};
use linkset_core::linking::verify_reduced;
use linkset_core::{Elem, FiniteGroup, Result};
use serde_json::json;

use crate::commands::{emit, CmdResult};
use crate::Output;

type Check = fn() -> Result<bool>;

fn elems(g: &FiniteGroup, names: &[&str]) -> Result<Vec<Elem>> {
    names.iter().map(|n| g.parse_element(n)).collect()
}

fn rows(g: &FiniteGroup, rows: &[[&str; 4]]) -> Result<Vec<Vec<Elem>>> {
    rows.iter().map(|r| elems(g, r)).collect()
}

/// Three (16,6,2,4) sets in Z4 x Z4 forming a system with (mu,nu) = (1,3).
fn linked_triple() -> Result<bool> {
    let g = FiniteGroup::make_abelian_named(&[4, 4], &["x", "y"])?.into_ref();
    let sets = [
        ["x", "x^3*y", "y^3", "x^3", "x*y^3", "y"],
        ["x", "x^3*y", "y^3", "x*y^2", "x*y", "x^2*y"],
        ["x", "x^3*y", "y^3", "x^2*y^3", "x^3*y^3", "x^3*y^2"],
    ]
    .iter()
    .map(|s| g.parse_set(s))
    .collect::<Result<Vec<_>>>()?;
    let witness = g.parse_set(&["y^3", "x", "x^2*y^3", "x^3*y", "x^3*y^2", "x^3*y^3"])?;
    Ok(verify_reduced(&g, &sets).is_some_and(|s| {
        (s.munu.mu, s.munu.nu) == (1, 3)
            && s.witness(2, 1) == Some(witness.as_slice())
            && s.reversibility_profile() == [true, false, false]
    }))
}

/// The 4-row difference matrix over Z2 x Z2.
fn klein_matrix() -> Result<bool> {
    let g = FiniteGroup::make_abelian_named(&[2, 2], &["x", "y"])?.into_ref();
    let rows = rows(
        &g,
        &[
            ["1", "1", "1", "1"],
            ["1", "x", "y", "x*y"],
            ["1", "y", "x*y", "x"],
            ["1", "x*y", "x", "y"],
        ],
    )?;
    let m = DifferenceMatrix {
        group: g,
        lambda: 1,
        rows,
    };
    let mut dup = m.clone();
    dup.rows[2] = dup.rows[1].clone();
    Ok(verify_dm(&m) && m.is_normalized() && !verify_dm(&dup))
}

/// The lifted matrix over Z4 x Z2 x Z2 with E = <x^2, z>.
fn lifted_example() -> Result<bool> {
    let g = FiniteGroup::make_abelian_named(&[4, 2, 2], &["x", "y", "z"])?.into_ref();
    let basis = elems(&g, &["x^2", "z"])?;
    let frame = LinkedFrame::new(&g, &g.subgroup_generated(&basis), &basis)?;
    let b = rows(
        &g,
        &[
            ["1", "1", "1", "1"],
            ["1", "x", "y", "x*y"],
            ["1", "y", "x*y", "x"],
            ["1", "x*y", "x", "y"],
        ],
    )?;
    let entries = [["1", "1", "1"], ["z", "x^2", "x^2"], ["z", "1", "1"]]
        .iter()
        .map(|r| elems(&g, r))
        .collect::<Result<Vec<_>>>()?;
    let sys = frame.linked_from_lifted(&b, &LiftChoice { entries })?;
    let union = |reps: [&str; 3]| elems(&g, &reps).map(|r| coset_union(&g, &frame.family, &r));
    let expected = [
        union(["x", "y", "x*y"])?,
        union(["y*z", "x^3*y", "x^3"])?,
        union(["x*y*z", "x", "y"])?,
    ];
    let witness = union(["x*z", "y", "x*y"])?;
    Ok(sys.sets() == expected && sys.witness(2, 3) == Some(witness.as_slice()))
}

pub fn run(out: Output) -> CmdResult {
    let checks: [(&str, Check); 3] = [
        ("linked triple in Z4 x Z4", linked_triple),
        ("difference matrix over Z2 x Z2", klein_matrix),
        ("lifted construction over Z4 x Z2 x Z2", lifted_example),
    ];
    let results: Vec<(&str, bool)> = checks.iter().map(|(name, f)| (*name, f().unwrap_or(false))).collect();
    let passed = results.iter().all(|r| r.1);
    let report = json!({
        "passed": passed,
        "checks": results.iter().map(|(n, ok)| json!({ "name": n, "passed": ok })).collect::<Vec<_>>(),
    });
    emit(out, &report, || {
        results
            .iter()
            .map(|(n, ok)| format!("[{}] {n}", if *ok { "ok" } else { "failed" }))
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
