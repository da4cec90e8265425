//! Verification suites. Each check produces a [`Record`]; the CLI collects
//! them into a report.

use std::collections::BTreeMap;
use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{bernoulli, bracket_weight, rat, Element, Graded, Rational};
use crate::cone::{
    cone_jacobi, cone_window, transport_agreement, validate_morphism, ConeBrackets, ConeConvention,
    DglaMorphism, HVariant, InclusionKind, PathSpace, TruncationInclusion,
};
use crate::derived::{
    corollary_f_check, explicit_binary, explicit_ternary, explicit_ternary_as_printed,
    jacobi_term_decomposition, odd_case_polynomial, positive_basis, z_expression, DerivedStructure,
    UnarySign,
};
use crate::dgla::{validate, validate_pairs, Dgla, StructureConstantDgla, ValidationReport};
use crate::error::Result;
use crate::linfinity::{check_symmetry, is_lie_n, jacobi_defect, LInfinity};
use crate::presets::{monomial_window, poisson_bracket_via_theorem, SchoutenDgla};
use crate::series::{even_n_congruence_check, symmetrized_identity_check, BivarPoly};
use crate::sweep::{sweep_window, SweepMode, SweepOutcome, SweepSettings};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A formula in its commonly printed form was evaluated and found to
    /// differ from the implemented one. Does not fail the report.
    Deviation,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Deviation => "deviation",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    #[serde(flatten)]
    pub mode: SweepMode,
    pub available: u64,
    pub checked: usize,
}

impl SweepSummary {
    fn describe(&self) -> String {
        match self.mode {
            SweepMode::Exhaustive => format!("{} tuples, exhaustive", self.checked),
            SweepMode::Sampled { seed, samples } => format!(
                "{samples} of {} tuples sampled with seed {seed}",
                self.available
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub check_id: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Record {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_arity: usize,
    pub series_order: usize,
    pub sweep: SweepSettings,
    pub unary: UnarySign,
    pub timing: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_arity: 4,
            series_order: crate::series::DEFAULT_ORDER,
            sweep: SweepSettings::default(),
            unary: UnarySign::default(),
            timing: false,
        }
    }
}

struct Outcome {
    status: Status,
    detail: String,
    witness: Option<Vec<String>>,
    sweep: Option<SweepSummary>,
}

impl Outcome {
    fn plain(ok: bool, detail: impl Into<String>) -> Self {
        Self {
            status: Status::from_bool(ok),
            detail: detail.into(),
            witness: None,
            sweep: None,
        }
    }

    fn swept(o: SweepOutcome, pass_note: &str) -> Self {
        let sweep = SweepSummary {
            mode: o.mode,
            available: o.available,
            checked: o.checked,
        };
        let (status, detail, witness) = match o.witness {
            None => (
                Status::Pass,
                format!("{pass_note} ({})", sweep.describe()),
                None,
            ),
            Some((tuple, msg)) => (Status::Fail, msg, Some(tuple)),
        };
        Self {
            status,
            detail,
            witness,
            sweep: Some(sweep),
        }
    }

    /// A failing sweep of a formula known to be misprinted is a deviation.
    fn deviation(mut self) -> Self {
        if self.status == Status::Fail {
            self.status = Status::Deviation;
        }
        self
    }

    fn from_validation(r: ValidationReport) -> Self {
        match r.violation {
            None => Self::plain(
                true,
                format!(
                    "{} symbols, {} pairs, {} triples",
                    r.symbols, r.pairs, r.triples
                ),
            ),
            Some(v) => Self {
                status: Status::Fail,
                detail: format!("{} fails: defect {}", v.axiom, v.defect),
                witness: Some(v.witnesses),
                sweep: None,
            },
        }
    }
}

struct Recorder<'c> {
    cfg: &'c VerifyConfig,
    records: Vec<Record>,
}

impl<'c> Recorder<'c> {
    fn new(cfg: &'c VerifyConfig) -> Self {
        Self {
            cfg,
            records: Vec::new(),
        }
    }

    fn run(
        &mut self,
        id: impl Into<String>,
        check: impl FnOnce() -> Result<Outcome>,
    ) -> Result<()> {
        let start = Instant::now();
        let o = check()?;
        let elapsed = start.elapsed().as_millis() as u64;
        self.records.push(Record {
            check_id: id.into(),
            status: o.status,
            detail: o.detail,
            witness: o.witness,
            sweep: o.sweep,
            elapsed_ms: self.cfg.timing.then_some(elapsed),
        });
        Ok(())
    }

    fn finish(self) -> Vec<Record> {
        self.records
    }
}

fn differs<B: crate::algebra::Basis>(lhs: &Element<B>, rhs: &Element<B>) -> Option<String> {
    (lhs != rhs).then(|| format!("difference {}", lhs.clone() - rhs.clone()))
}

/// The derived-bracket checks on multisets of `window`, which must consist
/// of positive-degree basis vectors.
fn derived_checks<D: Dgla>(rec: &mut Recorder<'_>, d: &D, window: &[D::Basis]) -> Result<()> {
    let cfg = *rec.cfg;
    let s = DerivedStructure::new(d)
        .with_unary_sign(cfg.unary)
        .with_arity_cap(cfg.max_arity.max(3) + 1);
    let settings = &cfg.sweep;

    for arity in 2..=(cfg.max_arity + 1).min(4) {
        rec.run(format!("derived.symmetry.arity-{arity}"), || {
            let o = sweep_window(window, arity, settings, |args| {
                Ok((!check_symmetry(&s, args)?).then(|| "not graded symmetric".to_string()))
            })?;
            Ok(Outcome::swept(o, "graded symmetric"))
        })?;
    }

    for n in 0..=cfg.max_arity {
        rec.run(format!("derived.jacobi.n-{n}"), || {
            let o = sweep_window(window, n + 1, settings, |args| {
                let defect = jacobi_defect(&s, n, args)?;
                Ok((!defect.is_zero()).then(|| format!("defect {defect}")))
            })?;
            Ok(Outcome::swept(o, "defect zero"))
        })?;
    }

    rec.run("derived.explicit-binary", || {
        let o = sweep_window(window, 2, settings, |args| {
            for (a, b) in [(&args[0], &args[1]), (&args[1], &args[0])] {
                let general = s.bracket(&[a.clone(), b.clone()])?;
                if let Some(msg) = differs(&general, &explicit_binary(d, a, b)) {
                    return Ok(Some(msg));
                }
            }
            Ok(None)
        })?;
        Ok(Outcome::swept(
            o,
            "two-term formula agrees on ordered pairs",
        ))
    })?;

    let ternary_sweep = |formula: fn(&D, &_, &_, &_) -> Element<D::Basis>| {
        sweep_window(window, 3, settings, move |args| {
            for p in [
                [0, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ] {
                let t = [args[p[0]].clone(), args[p[1]].clone(), args[p[2]].clone()];
                let general = s.bracket(&t)?;
                if let Some(msg) = differs(&general, &formula(d, &t[0], &t[1], &t[2])) {
                    return Ok(Some(msg));
                }
            }
            Ok(None)
        })
    };
    rec.run("derived.explicit-ternary", || {
        Ok(Outcome::swept(
            ternary_sweep(explicit_ternary)?,
            "six-term formula agrees on ordered triples",
        ))
    })?;
    rec.run("derived.explicit-ternary.as-printed", || {
        Ok(Outcome::swept(
            ternary_sweep(explicit_ternary_as_printed)?,
            "printed second-term sign agrees on ordered triples",
        )
        .deviation())
    })?;

    for n in 1..=cfg.max_arity {
        rec.run(format!("z.symmetry.n-{n}"), || {
            let o = sweep_window(window, n + 1, settings, |args| {
                for j in 0..n {
                    for k in (j + 1)..(n - j) {
                        let (a, b) = (
                            z_expression(&s, n, j, k, args)?,
                            z_expression(&s, n, k, j, args)?,
                        );
                        if let Some(msg) = differs(&a, &b) {
                            return Ok(Some(format!("Z({n},{j},{k}) vs Z({n},{k},{j}): {msg}")));
                        }
                    }
                }
                Ok(None)
            })?;
            Ok(Outcome::swept(o, "Z(n,j,k) = Z(n,k,j) for all j + k < n"))
        })?;
        if n < 2 {
            continue;
        }
        rec.run(format!("z.recurrence.n-{n}"), || {
            let o = sweep_window(window, n + 1, settings, |args| {
                for j in 0..n {
                    for k in 0..n.saturating_sub(j + 1) {
                        let lhs = z_expression(&s, n, j, k, args)?;
                        let rhs = z_expression(&s, n, j + 1, k, args)?
                            + z_expression(&s, n, j, k + 1, args)?;
                        if let Some(msg) = differs(&lhs, &rhs) {
                            return Ok(Some(format!("Z({n},{j},{k}): {msg}")));
                        }
                    }
                }
                Ok(None)
            })?;
            Ok(Outcome::swept(
                o,
                "Z(n,j,k) = Z(n,j+1,k) + Z(n,j,k+1) for all j + k + 1 < n",
            ))
        })?;
    }

    for n in 2..=cfg.max_arity {
        rec.run(format!("strata.n-{n}"), || {
            let o = sweep_window(window, n + 1, settings, |args| {
                for st in jacobi_term_decomposition(&s, n, args)? {
                    if !st.matches() {
                        return Ok(Some(format!(
                            "{:?}: computed {} predicted {}",
                            st.kind, st.computed, st.predicted
                        )));
                    }
                }
                Ok(None)
            })?;
            Ok(Outcome::swept(o, "every stratum matches its Z-combination"))
        })?;
    }

    if cfg.max_arity >= 2 {
        n2_identity_checks(rec, &s, window)?;
    }

    let top = window.iter().map(|b| b.degree()).max().unwrap_or(0);
    if top >= 1 && (top as usize) + 2 <= s.arity_cap() {
        let m = top as usize;
        rec.run(format!("derived.lie-{m}"), || {
            let r = is_lie_n(&s, m, window)?;
            let ok = r.passed();
            let detail = if ok {
                format!(
                    "degrees in [1,{m}], brackets of arity {}..={} vanish",
                    m + 2,
                    r.checked_up_to_arity
                )
            } else if !r.out_of_range.is_empty() {
                format!("degrees outside [1,{m}]: {}", r.out_of_range.join(", "))
            } else {
                "a bracket of arity > m + 1 does not vanish".to_string()
            };
            Ok(Outcome {
                status: Status::from_bool(ok),
                detail,
                witness: r.nonvanishing,
                sweep: None,
            })
        })?;
    }
    Ok(())
}

/// The `n = 2` identity in its printed form, the same identity with the
/// `k ∈ {0, 2}` term weighted by the unary factor, and `Z200 = 2 Z210`.
fn n2_identity_checks<D: Dgla>(
    rec: &mut Recorder<'_>,
    s: &DerivedStructure<'_, D>,
    window: &[D::Basis],
) -> Result<()> {
    let settings = &rec.cfg.sweep;
    let (b1, b2) = (bracket_weight(1), bracket_weight(2));
    let b1sq = &b1 * &b1;
    let identity = |args: &[Element<D::Basis>], unary: &Rational| -> Result<Element<D::Basis>> {
        let z = |j, k| z_expression(s, 2, j, k, args);
        let (z200, z210, z201) = (z(0, 0)?, z(1, 0)?, z(0, 1)?);
        let outer = (z200.clone() + z210).scale(&(&b2 * unary));
        Ok(outer + (z200 - z201).scale(&b1sq))
    };
    rec.run("strata.n2-identity", || {
        let u = s.unary_sign().factor();
        let o = sweep_window(window, 3, settings, |args| {
            let v = identity(args, &u)?;
            Ok((!v.is_zero()).then(|| format!("residue {v}")))
        })?;
        Ok(Outcome::swept(
            o,
            "u·b2(Z200 + Z210) + b1²(Z200 − Z201) = 0 with u the unary sign",
        ))
    })?;
    rec.run("strata.n2-identity.as-printed", || {
        let one = Rational::from_integer(1.into());
        let o = sweep_window(window, 3, settings, |args| {
            let v = identity(args, &one)?;
            Ok((!v.is_zero()).then(|| format!("residue {v}")))
        })?;
        Ok(Outcome::swept(o, "b2(Z200 + Z210) + b1²(Z200 − Z201) = 0").deviation())
    })?;
    rec.run("z.z200-twice-z210", || {
        let o = sweep_window(window, 3, settings, |args| {
            let lhs = z_expression(s, 2, 0, 0, args)?;
            let rhs = z_expression(s, 2, 1, 0, args)?.scale(&rat(2, 1));
            Ok(differs(&lhs, &rhs))
        })?;
        Ok(Outcome::swept(o, "Z200 = 2 Z210"))
    })
}

/// The axiom check alone, on `scope`.
pub fn validate_suite<D: Dgla>(
    d: &D,
    scope: &[D::Basis],
    cfg: &VerifyConfig,
) -> Result<Vec<Record>> {
    let mut rec = Recorder::new(cfg);
    rec.run("dgla.validate", || {
        Ok(Outcome::from_validation(validate(d, scope)))
    })?;
    Ok(rec.finish())
}

/// Axioms on the full basis, then the derived-bracket checks on the
/// positive part.
pub fn finite_suite(d: &StructureConstantDgla, cfg: &VerifyConfig) -> Result<Vec<Record>> {
    let mut rec = Recorder::new(cfg);
    let basis = d.basis().unwrap_or_default();
    rec.run("dgla.validate", || {
        Ok(Outcome::from_validation(validate(d, &basis)))
    })?;
    derived_checks(&mut rec, d, &positive_basis(d))?;
    Ok(rec.finish())
}

pub const CONE_MAX_N: usize = 3;
pub const PATH_T_MAX: u32 = 2;
pub const CONTRACTION_T_MAX: u32 = 3;

/// Mapping cone of `τ≤0 L → L` and its path-space model.
pub fn cone_suite(d: &StructureConstantDgla, cfg: &VerifyConfig) -> Result<Vec<Record>> {
    let mut rec = Recorder::new(cfg);
    let settings = &cfg.sweep;
    let phi = TruncationInclusion::new(d);
    let window = cone_window(d);
    let positive = positive_basis(d);

    rec.run("cone.morphism", || {
        let k_basis = phi.source().basis().unwrap_or_default();
        Ok(match validate_morphism(&phi, &k_basis) {
            Ok(()) => Outcome::plain(true, format!("{} source symbols", k_basis.len())),
            Err(e) => Outcome::plain(false, e.to_string()),
        })
    })?;

    let cone = ConeBrackets::new(&phi).with_arity_cap(CONE_MAX_N + 1);
    for n in 0..=CONE_MAX_N {
        rec.run(format!("cone.jacobi.n-{n}"), || {
            Ok(Outcome::swept(
                cone_jacobi(&cone, n, &window, settings)?,
                "defect zero",
            ))
        })?;
    }
    for arity in 1..=CONE_MAX_N {
        rec.run(format!("cone.transport.arity-{arity}"), || {
            let o = transport_agreement(d, arity, &positive, ConeConvention::RESOLVED, settings)?;
            Ok(Outcome::swept(
                o,
                "cone brackets of transported tuples agree",
            ))
        })?;
    }
    rec.run("cone.convention.as-printed", || {
        let literal = ConeConvention::LITERAL;
        let cone = ConeBrackets::with_convention(&phi, literal).with_arity_cap(CONE_MAX_N + 1);
        let mut outcomes = Vec::new();
        for n in 0..=1 {
            outcomes.push((
                format!("jacobi n={n}"),
                cone_jacobi(&cone, n, &window, settings)?,
            ));
        }
        for arity in 1..=2 {
            let o = transport_agreement(d, arity, &positive, literal, settings)?;
            outcomes.push((format!("transport arity {arity}"), o));
        }
        let failing: Vec<String> = outcomes
            .iter()
            .filter_map(|(name, o)| {
                o.witness
                    .as_ref()
                    .map(|(t, msg)| format!("{name} on ({}): {msg}", t.join(", ")))
            })
            .collect();
        let detail = if failing.is_empty() {
            format!(
                "{}: jacobi n ≤ 1 and transport arity ≤ 2 agree",
                literal.label()
            )
        } else {
            format!("{}: {}", literal.label(), failing.join("; "))
        };
        Ok(Outcome {
            status: if failing.is_empty() {
                Status::Pass
            } else {
                Status::Deviation
            },
            detail,
            witness: None,
            sweep: None,
        })
    })?;

    let space = PathSpace::new(&phi);
    rec.run("path.axioms", || {
        let w = space.monomial_window(PATH_T_MAX);
        Ok(Outcome::from_validation(validate_pairs(&space, &w)))
    })?;
    rec.run("path.contraction", || {
        let reports = space.contraction_reports(CONTRACTION_T_MAX);
        let mut parts = Vec::new();
        let mut default_ok = false;
        for r in &reports {
            let failing: Vec<&str> = [
                ("chain-map", &r.chain_map),
                ("idempotent", &r.idempotent),
                ("image-in-inclusion", &r.image_in_inclusion),
                ("fixes-subcomplex", &r.fixes_subcomplex),
            ]
            .into_iter()
            .filter(|(_, p)| !p.passed())
            .map(|(name, _)| name)
            .collect();
            let label = format!(
                "h {}/{} inclusion",
                match r.variant {
                    HVariant::A => "A",
                    HVariant::B => "B",
                },
                match r.inclusion {
                    InclusionKind::Corrected => "corrected",
                    InclusionKind::Literal => "literal",
                }
            );
            if r.variant == HVariant::default() && r.inclusion == InclusionKind::default() {
                default_ok = r.passed();
            }
            parts.push(if failing.is_empty() {
                format!("{label}: all four hold")
            } else {
                format!("{label}: fails {}", failing.join(", "))
            });
        }
        Ok(Outcome::plain(default_ok, parts.join("; ")))
    })?;
    Ok(rec.finish())
}

/// Exact series identities. Independent of any algebra.
pub fn series_suite(cfg: &VerifyConfig) -> Result<Vec<Record>> {
    let mut rec = Recorder::new(cfg);
    rec.run("series.bracket-weights", || {
        let (b1, b2) = (bracket_weight(1), bracket_weight(2));
        Ok(Outcome::plain(
            b1 == rat(1, 2) && b2 == rat(1, 12),
            format!("b1 = {b1}, b2 = {b2}"),
        ))
    })?;
    rec.run("series.bernoulli-odd", || {
        let bad: Vec<usize> = (3..=15)
            .step_by(2)
            .filter(|&n| !bernoulli(n).is_zero())
            .collect();
        Ok(Outcome::plain(
            bad.is_empty(),
            if bad.is_empty() {
                "B_n = 0 for odd 3 ≤ n ≤ 15".to_string()
            } else {
                format!("nonzero at n = {bad:?}")
            },
        ))
    })?;
    let report = symmetrized_identity_check(cfg.series_order)?;
    rec.run("series.closed-form", || {
        Ok(match report.first_mismatch {
            None => Outcome::plain(
                true,
                format!("coefficients agree through x^{}", report.order),
            ),
            Some(m) => Outcome::plain(false, format!("first mismatch at x^{m}")),
        })
    })?;
    rec.run("series.residual", || {
        let quarter =
            BivarPoly::from_terms([((1, 0), rat(1, 4)), ((2, 0), rat(-1, 4))]).to_string();
        let expected = |m: usize| {
            if m == 2 {
                quarter.clone()
            } else {
                "0".to_string()
            }
        };
        let bad = report
            .residual
            .iter()
            .enumerate()
            .find(|(m, c)| **c != expected(*m));
        Ok(match bad {
            None => Outcome::plain(true, format!("s(1−s)x²/4 through x^{}", report.order)),
            Some((m, c)) => Outcome::plain(false, format!("x^{m} coefficient {c}")),
        })
    })?;
    for n in [4, 6] {
        rec.run(format!("series.even-congruence.n-{n}"), || {
            let r = even_n_congruence_check(n)?;
            Ok(Outcome::plain(
                r.passed(),
                format!(
                    "congruence residue {}, symmetrization residue {}",
                    r.congruence_residue, r.symmetrization_residue
                ),
            ))
        })?;
    }
    for n in [3u32, 5, 7] {
        rec.run(format!("series.odd-polynomial.n-{n}"), || {
            let r = corollary_f_check(&odd_case_polynomial(n));
            Ok(Outcome::plain(r.passed(), format!("residue {}", r.residue)))
        })?;
    }
    Ok(rec.finish())
}

pub const POISSON_MAX_POLY: u32 = 2;
pub const POISSON_MAX_THETA: u32 = 2;

/// A Schouten algebra twisted by a Poisson tensor: axioms on a window, the
/// derived binary bracket on functions against `[δ_P f, g]`, and the
/// derived-bracket checks on functions.
pub fn poisson_suite(s: &SchoutenDgla, cfg: &VerifyConfig) -> Result<Vec<Record>> {
    let mut rec = Recorder::new(cfg);
    let settings = &cfg.sweep;
    let window = s.window(POISSON_MAX_POLY, POISSON_MAX_THETA);
    rec.run("dgla.validate", || {
        Ok(Outcome::from_validation(validate(s, &window)))
    })?;
    let functions = monomial_window(s.nvars(), POISSON_MAX_POLY, 0);
    if let Some(p) = s.poisson() {
        rec.run("poisson.classical-agreement", || {
            let o = sweep_window(&functions, 2, settings, |args| {
                for (f, g) in [(&args[0], &args[1]), (&args[1], &args[0])] {
                    let c = poisson_bracket_via_theorem(p, f, g)?;
                    if let Some(msg) = differs(&c.theorem, &c.classical) {
                        return Ok(Some(msg));
                    }
                }
                Ok(None)
            })?;
            Ok(Outcome::swept(o, "{f,g} = [δ_P f, g] on ordered pairs"))
        })?;
        rec.run("poisson.antisymmetry", || {
            let o = sweep_window(&functions, 2, settings, |args| {
                let fg = poisson_bracket_via_theorem(p, &args[0], &args[1])?.theorem;
                let gf = poisson_bracket_via_theorem(p, &args[1], &args[0])?.theorem;
                Ok((!(fg.clone() + gf).is_zero()).then(|| format!("{{f,g}} = {fg}")))
            })?;
            Ok(Outcome::swept(o, "{f,g} = −{g,f}"))
        })?;
    }
    let functions: Vec<_> = functions.into_iter().filter(|m| m.degree() > 0).collect();
    derived_checks(&mut rec, s, &functions)?;
    Ok(rec.finish())
}

/// Sorts records by `check_id`, prefixing each id with `prefix`.
pub fn collate(groups: Vec<(String, Vec<Record>)>) -> Vec<Record> {
    let mut by_id = BTreeMap::new();
    for (prefix, records) in groups {
        for mut r in records {
            if !prefix.is_empty() {
                r.check_id = format!("{prefix}/{}", r.check_id);
            }
            by_id.insert(r.check_id.clone(), r);
        }
    }
    by_id.into_values().collect()
}
