//! One function per subcommand; each resolves its targets against the
//! workspace and produces deterministic target reports.

use globengine_core::comod::LawViolation;
use globengine_core::globalize::{
    analyze_cover, check_universal_property, globalize, roundtrip_gl_ind, roundtrip_ind_gl,
    GlobalizationOutcome, GlobalizeError,
};
use globengine_core::gpc::{check_gpc, induce, GpFailure, PartialComodule};
use globengine_core::io::{
    cover_to_dto, matrix_to_dto, partial_action_to_dto, GpcEntry,
};
use globengine_core::psets::{
    coequalizer_globalize, globalize_quotient, oracle_agreement, pset_minimality,
    restrict_globalize_roundtrip, PsetError,
};
use globengine_core::{laws, Rational};

use crate::report::{digest, LawLine, Status, TargetReport};
use crate::workspace::Ws;

fn scalar_list(values: &[Rational]) -> String {
    let rendered: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("({})", rendered.join(", "))
}

fn violation_lines<R>(report: TargetReport, violation: &LawViolation<R>) -> TargetReport
where
    R: std::fmt::Display,
{
    report
        .line(format!(
            "law `{}` fails at basis vector {} (`{}`)",
            violation.law, violation.basis_index, violation.basis_label
        ))
        .line(format!(
            "lhs column {} != rhs column {}",
            violation
                .lhs
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", "),
            violation
                .rhs
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ))
}

fn gp_failure_lines(report: TargetReport, failure: &GpFailure<Rational>) -> TargetReport {
    let report = report.line(format!(
        "axiom {} fails ({})",
        failure.axiom(),
        failure.category()
    ));
    match failure {
        GpFailure::CounitFactor { kernel_witness } | GpFailure::CoassocComparison { kernel_witness } => {
            report.line(format!(
                "witness kernel vector {}",
                scalar_list(kernel_witness)
            ))
        }
        GpFailure::CounitSection {
            basis_index,
            basis_label,
            image,
        } => report.line(format!(
            "section differs from the identity at basis vector {basis_index} (`{basis_label}`), image {}",
            scalar_list(image)
        )),
        GpFailure::CoassocNotIso {
            rank,
            dim_dom,
            dim_cod,
        } => report.line(format!(
            "comparison has rank {rank} between dimensions {dim_dom} and {dim_cod}"
        )),
        GpFailure::CoassocSquare {
            basis_index,
            basis_label,
        } => report.line(format!(
            "comparison square fails at basis vector {basis_index} (`{basis_label}`)"
        )),
    }
}

fn gpc_digest(entry: &GpcEntry<Rational>) -> String {
    let dto = globengine_core::io::GpcDto {
        coalgebra_ref: entry.coalgebra_ref.clone(),
        x: globengine_core::io::space_to_dto(&entry.base),
        x_bullet_h: globengine_core::io::space_to_dto(&entry.apex),
        pi: matrix_to_dto(entry.projection.matrix()),
        rho: matrix_to_dto(entry.coaction.matrix()),
    };
    digest(&serde_json::to_string(&dto).expect("dto serializes"))
}

fn checked_gpc(
    name: &str,
    entry: &GpcEntry<Rational>,
) -> Result<(PartialComodule<Rational>, String), Box<TargetReport>> {
    let target = format!("gpc:{name}");
    let input_digest = gpc_digest(entry);
    let datum = match entry.to_datum() {
        Ok(datum) => datum,
        Err(e) => {
            return Err(Box::new(
                TargetReport::new(target, Status::MathFail)
                    .digest(input_digest)
                    .line(e.to_string()),
            ))
        }
    };
    match check_gpc(datum) {
        Ok(gpc) => Ok((gpc, input_digest)),
        Err(failure) => Err(Box::new(gp_failure_lines(
            TargetReport::new(target, Status::MathFail).digest(input_digest),
            &failure,
        ))),
    }
}

/// Splits `kind:name`; the caller matches on the kind.
fn split_target(target: &str) -> Result<(&str, &str), TargetReport> {
    target.split_once(':').ok_or_else(|| {
        TargetReport::new(target, Status::InputError)
            .line("targets take the form kind:name (e.g. coalgebra:QC2)")
    })
}

fn unresolved(target: &str, kind: &str, name: &str) -> TargetReport {
    TargetReport::new(target, Status::InputError)
        .line(format!("no {kind} named `{name}` in the workspace"))
}

pub fn cmd_check(ws: &Ws, targets: &[String]) -> Vec<TargetReport> {
    let expanded: Vec<String> = if targets.iter().any(|t| t == "all") {
        ws.coalgebras
            .keys()
            .map(|n| format!("coalgebra:{n}"))
            .chain(ws.comodules.keys().map(|n| format!("comodule:{n}")))
            .chain(ws.gpcs.keys().map(|n| format!("gpc:{n}")))
            .chain(ws.covers.keys().map(|n| format!("cover:{n}")))
            .chain(ws.groups.keys().map(|n| format!("group:{n}")))
            .chain(ws.actions.keys().map(|n| format!("action:{n}")))
            .chain(ws.partial_actions.keys().map(|n| format!("partial:{n}")))
            .collect()
    } else {
        targets.to_vec()
    };
    expanded.iter().map(|t| check_one(ws, t)).collect()
}

fn check_one(ws: &Ws, target: &str) -> TargetReport {
    let (kind, name) = match split_target(target) {
        Ok(parts) => parts,
        Err(report) => return report,
    };
    match kind {
        "coalgebra" => match ws.coalgebras.get(name) {
            None => unresolved(target, "coalgebra", name),
            Some(coalgebra) => match coalgebra.check() {
                Ok(()) => TargetReport::new(target, Status::Pass)
                    .line(format!("dim H = {}", coalgebra.dim())),
                Err(v) => violation_lines(TargetReport::new(target, Status::MathFail), &v),
            },
        },
        "comodule" => match ws.comodules.get(name) {
            None => unresolved(target, "comodule", name),
            Some(comodule) => match comodule.check() {
                Ok(()) => TargetReport::new(target, Status::Pass)
                    .line(format!("dim = {}", comodule.dim())),
                Err(v) => violation_lines(TargetReport::new(target, Status::MathFail), &v),
            },
        },
        "gpc" => match ws.gpcs.get(name) {
            None => unresolved(target, "gpc", name),
            Some(entry) => match checked_gpc(name, entry) {
                Ok((gpc, input_digest)) => TargetReport::new(target, Status::Pass)
                    .digest(input_digest)
                    .line(format!(
                        "dim X = {}, dim X•H = {}",
                        gpc.base().dim(),
                        gpc.apex().dim()
                    ))
                    .line(format!(
                        "canonical apexes: dim (X•H)•H = {}, dim X•(H⊗H) = {}, dim X•(H•H) = {}",
                        gpc.pushouts().coaction_square.apex.dim(),
                        gpc.pushouts().comult_square.apex.dim(),
                        gpc.pushouts().iterated_square.apex.dim()
                    ))
                    .map("X•eps", gpc.counit_factor())
                    .map("theta", gpc.theta()),
                Err(report) => *report,
            },
        },
        "cover" => match ws.covers.get(name) {
            None => unresolved(target, "cover", name),
            Some(entry) => match entry.to_cover() {
                Err(e) => TargetReport::new(target, Status::MathFail).line(e.to_string()),
                Ok(cover) => match cover.comodule().check() {
                    Err(v) => violation_lines(TargetReport::new(target, Status::MathFail), &v),
                    Ok(()) => TargetReport::new(target, Status::Pass).line(format!(
                        "dim Y = {}, dim X = {}, proper = {}",
                        cover.comodule().dim(),
                        cover.base().dim(),
                        globengine_core::globalize::is_proper(&cover)
                    )),
                },
            },
        },
        "group" => match ws.groups.get(name) {
            None => unresolved(target, "group", name),
            // associativity and unit laws hold by construction at load
            Some(group) => TargetReport::new(target, Status::Pass).line(format!(
                "order = {}, group = {}",
                group.order(),
                group.is_group()
            )),
        },
        "action" => match ws.actions.get(name) {
            None => unresolved(target, "action", name),
            Some(action) => match action.check() {
                Ok(()) => TargetReport::new(target, Status::Pass)
                    .line(format!("carrier size = {}", action.size())),
                Err(e) => TargetReport::new(target, Status::MathFail).line(e.to_string()),
            },
        },
        "partial" => match ws.partial_actions.get(name) {
            None => unresolved(target, "partial action", name),
            Some(partial) => match partial.check() {
                Ok(()) => TargetReport::new(target, Status::Pass).line(format!(
                    "carrier size = {}, |G•X| = {}",
                    partial.size(),
                    partial.domain().len()
                )),
                Err(e) => TargetReport::new(target, Status::MathFail).line(e.to_string()),
            },
        },
        other => TargetReport::new(target, Status::InputError)
            .line(format!("unknown target kind `{other}`")),
    }
}

pub fn cmd_induce(ws: &Ws, targets: &[String]) -> Vec<TargetReport> {
    targets
        .iter()
        .map(|target| {
            let (kind, name) = match split_target(target) {
                Ok(parts) => parts,
                Err(report) => return report,
            };
            if kind != "cover" {
                return TargetReport::new(target, Status::InputError)
                    .line("induce expects cover:NAME targets");
            }
            let Some(entry) = ws.covers.get(name) else {
                return unresolved(target, "cover", name);
            };
            let input_digest = digest(
                &serde_json::to_string(&cover_to_dto(&entry.comodule_ref, &match entry.to_cover() {
                    Ok(c) => c,
                    Err(e) => {
                        return TargetReport::new(target, Status::MathFail).line(e.to_string())
                    }
                }))
                .expect("dto serializes"),
            );
            let cover = entry.to_cover().expect("validated above");
            let (gpc, morphism) = induce(&cover);
            TargetReport::new(target, Status::Pass)
                .digest(input_digest)
                .line(format!(
                    "dim X = {}, dim X•H = {}",
                    gpc.base().dim(),
                    gpc.apex().dim()
                ))
                .map("pi", gpc.projection())
                .map("rho", gpc.coaction())
                .map("X•eps", gpc.counit_factor())
                .map("theta", gpc.theta())
                .map("p", &morphism.base_map)
                .map("p•H", &morphism.apex_map)
        })
        .collect()
}

pub fn cmd_globalize(ws: &Ws, targets: &[String]) -> Vec<TargetReport> {
    targets
        .iter()
        .map(|target| {
            let (kind, name) = match split_target(target) {
                Ok(parts) => parts,
                Err(report) => return report,
            };
            if kind != "gpc" {
                return TargetReport::new(target, Status::InputError)
                    .line("globalize expects gpc:NAME targets");
            }
            let Some(entry) = ws.gpcs.get(name) else {
                return unresolved(target, "gpc", name);
            };
            let (gpc, input_digest) = match checked_gpc(name, entry) {
                Ok(pair) => pair,
                Err(report) => return *report,
            };
            match globalize(&gpc) {
                GlobalizationOutcome::Globalizable(g) => {
                    // the universal property on the globalization itself is a
                    // cheap self-check worth reporting
                    let witness = check_universal_property(
                        &g,
                        &gpc,
                        &[(g.comodule().clone(), g.counit().clone())],
                    )
                    .map(|ws| ws[0].unique && ws[0].agrees_with_corestriction)
                    .unwrap_or(false);
                    TargetReport::new(target, Status::Pass)
                        .digest(input_digest)
                        .line("status: Globalizable".to_string())
                        .line(format!(
                            "dim Y_X = {}, dim X•H = {}, dim X = {}, dim P = {}",
                            g.comodule().dim(),
                            gpc.apex().dim(),
                            gpc.base().dim(),
                            g.comparison().dom().dim()
                        ))
                        .line(format!("universal property verified: {witness}"))
                        .map("kappa", g.embedding().map())
                        .map("eps_X", g.counit())
                        .map("comparison", g.comparison())
                }
                GlobalizationOutcome::NotGlobalizable(obstruction) => {
                    TargetReport::new(target, Status::MathFail)
                        .digest(input_digest)
                        .line("status: NotGlobalizable".to_string())
                        .line(format!(
                            "comparison onto X•H has rank {} from dimension {}",
                            obstruction.rank,
                            obstruction.comparison.dom().dim()
                        ))
                        .line(format!(
                            "kernel witness {}",
                            scalar_list(&obstruction.kernel_witness)
                        ))
                        .map("comparison", &obstruction.comparison)
                }
            }
        })
        .collect()
}

pub fn cmd_cover_analyze(ws: &Ws, targets: &[String]) -> Vec<TargetReport> {
    targets
        .iter()
        .map(|target| {
            let (kind, name) = match split_target(target) {
                Ok(parts) => parts,
                Err(report) => return report,
            };
            if kind != "cover" {
                return TargetReport::new(target, Status::InputError)
                    .line("cover analyze expects cover:NAME targets");
            }
            let Some(entry) = ws.covers.get(name) else {
                return unresolved(target, "cover", name);
            };
            let cover = match entry.to_cover() {
                Ok(c) => c,
                Err(e) => return TargetReport::new(target, Status::MathFail).line(e.to_string()),
            };
            let analysis = analyze_cover(&cover);
            TargetReport::new(target, Status::Pass)
                .line(format!(
                    "proper = {}, minimal = {}",
                    analysis.proper, analysis.minimal
                ))
                .line(format!(
                    "dim Y = {}, dim Y_X = {}, dim X•H = {}",
                    cover.comodule().dim(),
                    analysis.globalization.comodule().dim(),
                    analysis.induced.apex().dim()
                ))
                .map("p~", analysis.comparison.map())
        })
        .collect()
}

pub fn cmd_roundtrip(ws: &Ws, targets: &[String]) -> Vec<TargetReport> {
    targets
        .iter()
        .map(|target| {
            let (kind, name) = match split_target(target) {
                Ok(parts) => parts,
                Err(report) => return report,
            };
            match kind {
                "gpc" => {
                    let Some(entry) = ws.gpcs.get(name) else {
                        return unresolved(target, "gpc", name);
                    };
                    let (gpc, input_digest) = match checked_gpc(name, entry) {
                        Ok(pair) => pair,
                        Err(report) => return *report,
                    };
                    match roundtrip_ind_gl(&gpc) {
                        Ok(witness) => TargetReport::new(target, Status::Pass)
                            .digest(input_digest)
                            .line("Ind(Gl(X)) ≅ X via the comparison isomorphism")
                            .map("f", &witness.base_map)
                            .map("f•H", &witness.apex_map),
                        Err(obstruction) => TargetReport::new(target, Status::MathFail)
                            .digest(input_digest)
                            .line("input is not globalizable")
                            .line(format!(
                                "comparison rank {} from dimension {}",
                                obstruction.rank,
                                obstruction.comparison.dom().dim()
                            )),
                    }
                }
                "cover" => {
                    let Some(entry) = ws.covers.get(name) else {
                        return unresolved(target, "cover", name);
                    };
                    let cover = match entry.to_cover() {
                        Ok(c) => c,
                        Err(e) => {
                            return TargetReport::new(target, Status::MathFail).line(e.to_string())
                        }
                    };
                    match roundtrip_gl_ind(&cover) {
                        Ok(iso) => TargetReport::new(target, Status::Pass)
                            .line("Gl(Ind(c)) ≅ c via the cover comparison")
                            .map("p~", iso.map()),
                        Err(GlobalizeError::NotProper) => {
                            TargetReport::new(target, Status::MathFail)
                                .line("cover is not proper, so the round trip cannot close")
                        }
                        Err(e) => TargetReport::new(target, Status::MathFail).line(e.to_string()),
                    }
                }
                other => TargetReport::new(target, Status::InputError)
                    .line(format!("roundtrip expects gpc: or cover: targets, got `{other}`")),
            }
        })
        .collect()
}

pub enum PsetAction {
    Check,
    Globalize,
    Coequalize,
    Roundtrip,
    Minimal,
}

pub fn cmd_pset(ws: &Ws, action: &PsetAction, targets: &[String]) -> Vec<TargetReport> {
    targets
        .iter()
        .map(|target| {
            let (kind, name) = match split_target(target) {
                Ok(parts) => parts,
                Err(report) => return report,
            };
            if kind != "partial" {
                return TargetReport::new(target, Status::InputError)
                    .line("pset commands expect partial:NAME targets");
            }
            let Some(partial) = ws.partial_actions.get(name) else {
                return unresolved(target, "partial action", name);
            };
            let input_digest = digest(
                &serde_json::to_string(&partial_action_to_dto("", partial)).expect("dto serializes"),
            );
            match action {
                PsetAction::Check => match partial.check() {
                    Ok(()) => TargetReport::new(target, Status::Pass)
                        .digest(input_digest)
                        .line(format!(
                            "carrier size = {}, |G•X| = {}",
                            partial.size(),
                            partial.domain().len()
                        )),
                    Err(e) => TargetReport::new(target, Status::MathFail)
                        .digest(input_digest)
                        .line(e.to_string()),
                },
                PsetAction::Globalize => match oracle_agreement(partial) {
                    Ok((quotient, _)) => {
                        let reps: Vec<String> = quotient
                            .class_reps
                            .iter()
                            .map(|&(g, x)| {
                                format!(
                                    "[{},{}]",
                                    partial.monoid().label(g),
                                    partial.carrier()[x]
                                )
                            })
                            .collect();
                        TargetReport::new(target, Status::Pass)
                            .digest(input_digest)
                            .line(format!("|Y| = {}", quotient.size()))
                            .line(format!("classes: {}", reps.join(" ")))
                            .line("quotient and coequalizer constructions agree")
                    }
                    Err(PsetError::OracleDisagreement(detail)) => {
                        panic!("globalization oracles disagree: {detail}")
                    }
                    Err(e) => TargetReport::new(target, Status::MathFail)
                        .digest(input_digest)
                        .line(e.to_string()),
                },
                PsetAction::Coequalize => match coequalizer_globalize(partial) {
                    Ok(glob) => TargetReport::new(target, Status::Pass)
                        .digest(input_digest)
                        .line(format!("|Y| = {} (set coequalizer route)", glob.size())),
                    Err(e) => TargetReport::new(target, Status::MathFail)
                        .digest(input_digest)
                        .line(e.to_string()),
                },
                PsetAction::Roundtrip => match restrict_globalize_roundtrip(partial) {
                    Ok(bijection) => TargetReport::new(target, Status::Pass)
                        .digest(input_digest)
                        .line("restriction of the globalization recovers the partial action")
                        .line(format!(
                            "carrier bijection: {}",
                            bijection
                                .iter()
                                .enumerate()
                                .map(|(x, e)| format!("{} -> {e}", partial.carrier()[x]))
                                .collect::<Vec<_>>()
                                .join(", ")
                        )),
                    Err(e) => TargetReport::new(target, Status::MathFail)
                        .digest(input_digest)
                        .line(e.to_string()),
                },
                PsetAction::Minimal => match globalize_quotient(partial) {
                    Ok(glob) => {
                        let minimal = pset_minimality(&glob);
                        TargetReport::new(
                            target,
                            if minimal { Status::Pass } else { Status::MathFail },
                        )
                        .digest(input_digest)
                        .line(format!("minimal = {minimal} (|Y| = {})", glob.size()))
                    }
                    Err(e) => TargetReport::new(target, Status::MathFail)
                        .digest(input_digest)
                        .line(e.to_string()),
                },
            }
        })
        .collect()
}

pub fn cmd_laws(seed: u64, instances: usize) -> Vec<TargetReport> {
    let suites: Vec<(&str, Vec<laws::LawCheck>)> = vec![
        ("fixture-sanity", laws::fixture_sanity::<Rational>()),
        ("adjunction", laws::adjunction_suite::<Rational>()),
        ("functoriality", laws::functor_suite::<Rational>(seed, instances)),
        ("roundtrips", laws::roundtrip_suite::<Rational>(seed ^ 0x9e3779b9, instances)),
        ("pset-oracles", psets_suite()),
    ];
    suites
        .into_iter()
        .map(|(name, checks)| {
            let pass = laws::all_pass(&checks);
            let mut report = TargetReport::new(
                format!("laws:{name}"),
                if pass { Status::Pass } else { Status::MathFail },
            );
            report.laws = checks
                .into_iter()
                .map(|c| LawLine {
                    name: c.name,
                    pass: c.pass,
                    detail: c.detail,
                })
                .collect();
            report
        })
        .collect()
}

fn psets_suite() -> Vec<laws::LawCheck> {
    laws::pset_suite()
}
