//! Acceptance run: one line per criterion, exact arithmetic throughout.
//! Runs without the libtest harness so the lines always reach the output.

use std::collections::BTreeMap;
use std::process::ExitCode;

use higher_brackets::algebra::rat;
use higher_brackets::cli::{cmd_verify, OutputFormat, RunConfig, Suites, Target};
use higher_brackets::cone::{
    ConeConvention, HVariant, InclusionKind, PathSpace, TruncationInclusion,
};
use higher_brackets::derived::{positive_basis, z_expression, DerivedStructure, UnarySign};
use higher_brackets::dgla::{validate, validate_finite, Axiom, StructureConstantDgla};
use higher_brackets::linfinity::jacobi_defect;
use higher_brackets::presets::{finite_preset, symbolic_preset, FINITE_PRESETS, SYMBOLIC_PRESETS};
use higher_brackets::sweep::{sweep_window, SweepSettings};
use higher_brackets::verify::{
    cone_suite, finite_suite, poisson_suite, series_suite, Record, Status, VerifyConfig,
};

struct Line {
    id: u8,
    ok: bool,
    note: String,
}

fn status_of<'r>(records: &'r [Record], id: &str) -> &'r Record {
    records
        .iter()
        .find(|r| r.check_id == id)
        .unwrap_or_else(|| panic!("no record {id}"))
}

/// Every record whose id starts with one of `prefixes` passes.
fn all_pass(records: &[Record], prefixes: &[&str]) -> Result<usize, String> {
    let mut n = 0;
    for r in records {
        if prefixes.iter().any(|p| r.check_id.starts_with(p)) {
            if r.status != Status::Pass {
                return Err(format!(
                    "{} {}: {}",
                    r.check_id,
                    r.status.as_str(),
                    r.detail
                ));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn corrupted() -> StructureConstantDgla {
    StructureConstantDgla::builder("corrupted")
        .symbol("x", 0)
        .symbol("y", 0)
        .symbol("z", 0)
        .bracket("x", "y", &[("z", rat(1, 1))])
        .bracket("x", "z", &[("x", rat(1, 1))])
        .build_unchecked()
        .unwrap()
}

fn criterion_1() -> Line {
    let mut bad = Vec::new();
    for d in FINITE_PRESETS.iter().map(|n| finite_preset(n).unwrap()) {
        if !validate_finite(&d).unwrap().passed() {
            bad.push(d.name().to_string());
        }
    }
    for name in SYMBOLIC_PRESETS {
        let s = symbolic_preset(name).unwrap();
        if !validate(&s, &s.window(2, 2)).passed() {
            bad.push(name.to_string());
        }
    }
    let broken = validate_finite(&corrupted()).unwrap();
    let witness = broken
        .violation
        .as_ref()
        .filter(|v| v.axiom == Axiom::Jacobi && v.witnesses.len() == 3);
    Line {
        id: 1,
        ok: bad.is_empty() && witness.is_some(),
        note: match witness {
            Some(v) => format!(
                "{} presets valid, failing presets {bad:?}; corrupted fixture fails jacobi on ({}) with defect {}",
                FINITE_PRESETS.len() + SYMBOLIC_PRESETS.len(),
                v.witnesses.join(", "),
                v.defect
            ),
            None => format!("corrupted fixture not caught: {broken:?}"),
        },
    }
}

/// Presets on which the `n = 2` Jacobi rule fails with `{a} = +δa`.
fn plus_sign_failures() -> Vec<String> {
    let settings = SweepSettings::default();
    FINITE_PRESETS
        .iter()
        .filter(|name| {
            let d = finite_preset(name).unwrap();
            let s = DerivedStructure::new(&d).with_unary_sign(UnarySign::Plus);
            let o = sweep_window(&positive_basis(&d), 3, &settings, |args| {
                let v = jacobi_defect(&s, 2, args)?;
                Ok((!v.is_zero()).then(|| v.to_string()))
            })
            .unwrap();
            !o.passed()
        })
        .map(|s| s.to_string())
        .collect()
}

fn criterion_2(suites: &BTreeMap<&str, Vec<Record>>) -> Line {
    let mut tuples = 0;
    let mut err = None;
    for records in suites.values() {
        for n in 0..=4 {
            let r = status_of(records, &format!("derived.jacobi.n-{n}"));
            if r.status != Status::Pass {
                err.get_or_insert_with(|| format!("{}: {}", r.check_id, r.detail));
            }
            tuples += r.sweep.as_ref().map_or(0, |s| s.checked);
        }
        if let Some(r) = records.iter().find(|r| {
            r.check_id.starts_with("derived.jacobi")
                && r.sweep
                    .as_ref()
                    .is_some_and(|s| s.checked as u64 != s.available)
        }) {
            err.get_or_insert_with(|| format!("{} was sampled", r.check_id));
        }
    }
    let plus = plus_sign_failures();
    Line {
        id: 2,
        ok: err.is_none(),
        note: match err {
            None => format!(
                "{{a}} = -δa: defect zero for n = 0..4 on {} presets, {tuples} multisets, all exhaustive; {{a}} = +δa as printed: n = 2 fails on {plus:?}",
                suites.len()
            ),
            Some(e) => e,
        },
    }
}

fn criterion_3(suites: &BTreeMap<&str, Vec<Record>>) -> Line {
    let mut err = None;
    let mut misprint = Vec::new();
    for (name, records) in suites {
        for id in ["derived.explicit-binary", "derived.explicit-ternary"] {
            if status_of(records, id).status != Status::Pass {
                err.get_or_insert(format!("{name}: {id} fails"));
            }
        }
        let printed = status_of(records, "derived.explicit-ternary.as-printed");
        if printed.status == Status::Deviation {
            misprint.push(format!(
                "{name} ({}): {}",
                printed.witness.clone().unwrap_or_default().join(", "),
                printed.detail
            ));
        }
    }
    Line {
        id: 3,
        ok: err.is_none(),
        note: err.unwrap_or_else(|| {
            format!(
                "two-term and six-term formulas agree on all ordered pairs and triples (second term signed by (-1)^|a0|); with (-1)^|a1| as printed they differ on {}",
                misprint.join("; ")
            )
        }),
    }
}

fn criterion_4(suites: &BTreeMap<&str, Vec<Record>>) -> Line {
    let mut checks = 0;
    let mut err = None;
    for (name, records) in suites {
        match all_pass(records, &["z.symmetry", "z.recurrence"]) {
            Ok(n) => checks += n,
            Err(e) => {
                err.get_or_insert(format!("{name}: {e}"));
            }
        }
    }
    Line {
        id: 4,
        ok: err.is_none() && checks > 0,
        note: err.unwrap_or_else(|| {
            format!("Z(n,j,k) = Z(n,k,j) and the recurrence hold for n <= 4 ({checks} sweeps)")
        }),
    }
}

/// The printed `n = 2` combination minus `½ Z210`, on every triple of
/// `name`. `None` when it vanishes everywhere.
fn printed_minus_half_z210(name: &str) -> Option<String> {
    let d = finite_preset(name).unwrap();
    let s = DerivedStructure::new(&d);
    let (b1, b2) = (rat(1, 2), rat(1, 12));
    let o = sweep_window(&positive_basis(&d), 3, &SweepSettings::default(), |args| {
        let z = |j, k| z_expression(&s, 2, j, k, args);
        let (z200, z210, z201) = (z(0, 0)?, z(1, 0)?, z(0, 1)?);
        let printed = (z200.clone() + z210.clone()).scale(&b2) + (z200 - z201).scale(&(&b1 * &b1));
        let rest = printed - z210.scale(&rat(1, 2));
        Ok((!rest.is_zero()).then(|| rest.to_string()))
    })
    .unwrap();
    o.witness.map(|(t, m)| format!("({}) {m}", t.join(", ")))
}

fn criterion_5(suites: &BTreeMap<&str, Vec<Record>>) -> (Line, bool) {
    let mut err = None;
    let mut printed = Vec::new();
    for (name, records) in suites {
        if let Err(e) = all_pass(records, &["strata.n-", "z.z200-twice-z210"]) {
            err.get_or_insert(format!("{name}: {e}"));
        }
        if status_of(records, "strata.n2-identity").status != Status::Pass {
            err.get_or_insert(format!("{name}: sign-corrected n = 2 identity fails"));
        }
        let r = status_of(records, "strata.n2-identity.as-printed");
        if r.status != Status::Pass {
            printed.push(format!(
                "{name} ({}): {}",
                r.witness.clone().unwrap_or_default().join(", "),
                r.detail
            ));
        }
    }
    let half = FINITE_PRESETS
        .iter()
        .find_map(|n| printed_minus_half_z210(n).map(|e| format!("{n}: {e}")));
    // The strata and the sign-corrected identity must hold; the printed
    // identity must fail, and by exactly ½ Z210.
    let expected = err.is_none() && !printed.is_empty() && half.is_none();
    let note = match (&err, &half) {
        (Some(e), _) => e.clone(),
        (None, Some(h)) => format!("printed identity residue is not ½ Z210: {h}"),
        (None, None) => format!(
            "strata match for n = 2..4 and Z200 = 2 Z210, but the printed n = 2 identity equals ½ Z210 != 0: {}; with the k in {{0,2}} term weighted by the unary sign -1 it vanishes on every preset",
            printed.join("; ")
        ),
    };
    (
        Line {
            id: 5,
            ok: err.is_none() && printed.is_empty(),
            note,
        },
        expected,
    )
}

fn criterion_6_7(series: &[Record]) -> (Line, Line) {
    let six = all_pass(
        series,
        &[
            "series.bracket-weights",
            "series.bernoulli-odd",
            "series.closed-form",
            "series.residual",
        ],
    );
    let seven = all_pass(series, &["series.odd-polynomial", "series.even-congruence"]);
    let note = |r: &Result<usize, String>, ids: &[&str]| match r {
        Ok(_) => ids
            .iter()
            .map(|id| status_of(series, id).detail.clone())
            .collect::<Vec<_>>()
            .join("; "),
        Err(e) => e.clone(),
    };
    (
        Line {
            id: 6,
            ok: six.is_ok(),
            note: note(
                &six,
                &[
                    "series.bracket-weights",
                    "series.bernoulli-odd",
                    "series.closed-form",
                    "series.residual",
                ],
            ),
        },
        Line {
            id: 7,
            ok: seven.is_ok(),
            note: match &seven {
                Ok(n) => format!("odd n = 3, 5, 7 and even n = 4, 6: {n} residues zero"),
                Err(e) => e.clone(),
            },
        },
    )
}

fn criterion_8() -> Line {
    let cfg = VerifyConfig {
        max_arity: 2,
        ..VerifyConfig::default()
    };
    let mut notes = Vec::new();
    let mut err = None;
    for name in SYMBOLIC_PRESETS {
        let records = poisson_suite(&symbolic_preset(name).unwrap(), &cfg).unwrap();
        let ids = [
            "poisson.classical-agreement",
            "poisson.antisymmetry",
            "derived.jacobi.n-2",
        ];
        match all_pass(&records, &ids) {
            Ok(3) => notes.push(format!(
                "{name}: {} function pairs agree",
                status_of(&records, ids[0]).sweep.as_ref().unwrap().checked
            )),
            Ok(n) => {
                err.get_or_insert(format!("{name}: only {n} of 3 checks ran"));
            }
            Err(e) => {
                err.get_or_insert(format!("{name}: {e}"));
            }
        }
    }
    Line {
        id: 8,
        ok: err.is_none(),
        note: err.unwrap_or_else(|| {
            format!(
                "{}; antisymmetric; n = 2 Jacobi defect zero",
                notes.join(", ")
            )
        }),
    }
}

fn criterion_9(suites: &BTreeMap<&str, Vec<Record>>) -> Line {
    let records = &suites["sl2-pq"];
    let r = all_pass(
        records,
        &[
            "derived.lie-2",
            "derived.jacobi.n-0",
            "derived.jacobi.n-1",
            "derived.jacobi.n-2",
            "derived.jacobi.n-3",
        ],
    );
    Line {
        id: 9,
        ok: r == Ok(5),
        note: match r {
            Ok(_) => format!(
                "sl2-pq: {}; Jacobi n <= 3 holds",
                status_of(records, "derived.lie-2").detail
            ),
            Err(e) => e,
        },
    }
}

fn criterion_10() -> Line {
    let cfg = VerifyConfig::default();
    let mut err = None;
    let mut arity3 = Vec::new();
    let mut contraction = String::new();
    for name in FINITE_PRESETS {
        let d = finite_preset(name).unwrap();
        let records = cone_suite(&d, &cfg).unwrap();
        let required = [
            "cone.jacobi.n-0",
            "cone.jacobi.n-1",
            "cone.jacobi.n-2",
            "cone.jacobi.n-3",
            "cone.transport.arity-1",
            "cone.transport.arity-2",
            "path.contraction",
        ];
        if let Err(e) = all_pass(&records, &required) {
            err.get_or_insert(format!("{name}: {e}"));
        }
        arity3.push(format!(
            "{name} {}",
            status_of(&records, "cone.transport.arity-3")
                .status
                .as_str()
        ));
        if name == "sl2-pn" {
            contraction = status_of(&records, "path.contraction").detail.clone();
        }
    }
    // The report also states which h variant passes on its own terms.
    let d = finite_preset("sl2-pn").unwrap();
    let phi = TruncationInclusion::new(&d);
    let space = PathSpace::new(&phi);
    let passing: Vec<String> = space
        .contraction_reports(3)
        .into_iter()
        .filter(|r| r.passed())
        .map(|r| format!("{:?}/{:?}", r.variant, r.inclusion))
        .collect();
    let found = passing == [format!("{:?}/{:?}", HVariant::A, InclusionKind::Corrected)];
    Line {
        id: 10,
        ok: err.is_none() && found,
        note: err.unwrap_or_else(|| {
            format!(
                "convention {} (printed {} fails); cone Jacobi n <= 3 and transport arities 1, 2 hold on {} presets; arity 3: {}; contraction on sl2-pn: {contraction}",
                ConeConvention::RESOLVED.label(),
                ConeConvention::LITERAL.label(),
                FINITE_PRESETS.len(),
                arity3.join(", ")
            )
        }),
    }
}

fn criterion_11() -> Line {
    let config = RunConfig {
        max_arity: 3,
        tuple_cap: 40,
        sample_count: 25,
        sample_seed: 7,
        output_format: OutputFormat::Json,
        ..RunConfig::default()
    };
    let target = Target::Preset("sl2-pqr".into());
    let suites = Suites {
        cone: true,
        series: true,
    };
    let run = || {
        cmd_verify(Some(&target), suites, &config)
            .unwrap()
            .render(config.output_format)
    };
    let (a, b) = (run(), run());
    let sampled = a.contains("\"mode\": \"sampled\"");
    Line {
        id: 11,
        ok: a == b && sampled,
        note: format!(
            "two sampled verify runs (seed 7) on sl2-pqr with cone and series suites: {} bytes each, identical: {}",
            a.len(),
            a == b
        ),
    }
}

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let suites: BTreeMap<&str, Vec<Record>> = FINITE_PRESETS
        .iter()
        .map(|&name| {
            (
                name,
                finite_suite(&finite_preset(name).unwrap(), &cfg).unwrap(),
            )
        })
        .collect();
    let series = series_suite(&cfg).unwrap();

    let (five, five_as_expected) = criterion_5(&suites);
    let (six, seven) = criterion_6_7(&series);
    let lines = [
        criterion_1(),
        criterion_2(&suites),
        criterion_3(&suites),
        criterion_4(&suites),
        five,
        six,
        seven,
        criterion_8(),
        criterion_9(&suites),
        criterion_10(),
        criterion_11(),
    ];
    let mut unexpected = Vec::new();
    for l in &lines {
        println!(
            "criterion {:>2}: {} {}",
            l.id,
            if l.ok { "PASS" } else { "FAIL" },
            l.note
        );
        let expected_ok = l.id != 5;
        if l.id == 5 {
            if !five_as_expected {
                unexpected.push(l.id);
            }
        } else if l.ok != expected_ok {
            unexpected.push(l.id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: outcomes as expected (criterion 5 fails as analysed)");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
