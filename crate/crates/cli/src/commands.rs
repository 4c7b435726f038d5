use nctorus::af_tower::{
    build_tower, closed_form_comparison, inverse_limit_coefficients, pairing_along_tower, push_k0_class, tower_dot,
    tower_json, trace_of, trace_weights_auto, DimensionVector,
};
use nctorus::exact_arith::{cf_expand, convergents, rational_to_f64, BigInt, BigRational, Theta};
use nctorus::fredholm::{ClassSpec, DiagonalConjugation, ModuleRegistry, PairingContext, Tolerances};
use nctorus::torus_rep::{
    clock_shift, dense_json, dirac_data, relation_defect, rieffel_projection, sparse_json, truncated_rep, Angle,
    DenseRep, ShiftVariant,
};
use nctorus::zlattice::{
    builtin_khomology_sequence, builtin_ktheory_sequence, khomology_ktheory_duality, IntMatrix,
};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::report::{Check, Report};
use crate::{Cli, Command, RepKind, SequenceKind, TraceClass};

pub fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let mut report = match &cli.command {
        Command::Cf { theta, depth } => cf(cli, theta, *depth)?,
        Command::Pair { module, class, theta, n, fiber, conjugate } => {
            pair(cli, module, class, theta, *n, *fiber, *conjugate)?
        }
        Command::Sequence { which, perturb } => sequence(*which, perturb)?,
        Command::Tower { theta, depth, trace } => tower(cli, theta, *depth, *trace)?,
        Command::RepDump { rep, theta, n } => rep_dump(cli, *rep, theta, *n)?,
    };
    let mut config = json!({
        "command": serde_json::to_value(&cli.command).expect("plain data"),
        "precision": cli.precision,
        "seed": cli.seed,
        "tolerances": tolerances(cli),
    });
    if let Value::Object(extra) = std::mem::take(&mut report.config) {
        config.as_object_mut().expect("object").extend(extra);
    }
    report.config = config;
    Ok(report)
}

fn tolerances(cli: &Cli) -> Tolerances {
    Tolerances {
        rank: cli.tol_rank,
        round: cli.tol_round,
        compressed_rank: cli.tol_compressed,
        ..Tolerances::default()
    }
}

fn parse_theta(cli: &Cli, s: &str) -> Result<Theta, CliError> {
    Ok(Theta::parse(s, cli.precision)?)
}

fn theta_json(theta: &Theta) -> Value {
    json!({
        "input": theta,
        "exact": theta.is_exact(),
        "approx": theta.to_f64(),
    })
}

fn cf(cli: &Cli, theta_s: &str, depth: usize) -> Result<Report, CliError> {
    let theta = parse_theta(cli, theta_s)?;
    let expansion = cf_expand(&theta, depth)?;
    let table = convergents(&expansion);
    let mut report = Report::new(
        json!({"theta": theta_json(&theta)}),
        json!({
            "expansion": expansion.to_string(),
            "continued_fraction": expansion,
            "convergents": table,
        }),
    );
    let det = table.determinant_violations();
    let mono = table.monotonicity_violations();
    let approx = table.approximation_violations(&theta);
    let alt = table.alternation_violations(&theta);
    report.checks = vec![
        Check::with_detail("determinant_identity", det.is_empty(), format!("violations at {det:?}")),
        Check::with_detail("denominators_increase", mono.is_empty(), format!("violations at {mono:?}")),
        Check::with_detail("approximation_bound", approx.is_empty(), format!("violations at {approx:?}")),
        Check::with_detail("alternation", alt.is_empty(), format!("violations at {alt:?}")),
    ];
    if expansion.is_terminating() && expansion.len() < depth {
        report.warnings.push(format!(
            "θ is rational: the expansion terminates after {} digits",
            expansion.len()
        ));
    }
    report.table = Some((
        vec!["n".into(), "a".into(), "p".into(), "q".into()],
        table
            .rows()
            .iter()
            .map(|r| {
                let a = expansion.digit(r.n).map(|d| d.to_string()).unwrap_or_default();
                vec![r.n.to_string(), a, r.p.to_string(), r.q.to_string()]
            })
            .collect(),
    ));
    Ok(report)
}

fn pair(
    cli: &Cli,
    module: &str,
    class_s: &str,
    theta_s: &str,
    n: usize,
    fiber: usize,
    conjugate: bool,
) -> Result<Report, CliError> {
    let theta = parse_theta(cli, theta_s)?;
    let class: ClassSpec = class_s.parse().map_err(CliError::input)?;
    if fiber == 0 {
        return Err(CliError::input("--fiber must be at least 1"));
    }
    let mut ctx = PairingContext::new(theta.clone(), n);
    ctx.fiber_dim = fiber;
    ctx.tolerances = tolerances(cli);
    ctx.conjugation = conjugate.then(|| DiagonalConjugation::new(cli.seed));
    let registry = ModuleRegistry::builtin();
    let result = registry.pair(module, &ctx, class)?;
    let description = registry.get(module).map(|k| k.description()).unwrap_or_default();
    let mut report = Report::new(
        json!({"theta": theta_json(&theta), "module": module, "class": class.to_string()}),
        json!({"pairing": result, "module_description": description}),
    );
    report.checks = vec![Check::new("stable_under_truncation", result.stable)];
    report.table = Some((
        vec!["module".into(), "class".into(), "theta".into(), "N".into(), "value".into(), "method".into(), "stable".into()],
        vec![vec![
            module.into(),
            class.to_string(),
            theta.to_string(),
            n.to_string(),
            result.value.to_string(),
            serde_json::to_value(result.method).expect("plain enum").as_str().unwrap_or_default().to_string(),
            result.stable.to_string(),
        ]],
    ));
    Ok(report)
}

fn parse_perturbation(spec: &str) -> Result<(String, Vec<i64>), CliError> {
    let (name, values) = spec
        .split_once('=')
        .ok_or_else(|| CliError::input(format!("--perturb expects name=a,b,..., got {spec:?}")))?;
    let values = values
        .split(',')
        .map(|v| v.trim().parse::<i64>().map_err(|_| CliError::input(format!("bad integer {v:?} in {spec:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((name.trim().to_string(), values))
}

fn sequence(which: SequenceKind, perturb: &[String]) -> Result<Report, CliError> {
    let khom = builtin_khomology_sequence();
    let kth = builtin_ktheory_sequence();
    let mut seq = match which {
        SequenceKind::Khomology => khom.clone(),
        SequenceKind::Ktheory => kth.clone(),
    };
    let mut applied = Vec::new();
    for spec in perturb {
        let (name, values) = parse_perturbation(spec)?;
        let (rows, cols) = seq
            .map(&name)
            .ok_or_else(|| CliError::input(format!("no map named {name:?} in this sequence")))?
            .matrix
            .shape();
        let matrix = IntMatrix::new(rows, cols, values)?;
        seq = seq.with_matrix(&name, matrix)?;
        applied.push(json!({"map": name, "shape": [rows, cols]}));
    }
    let nodes = seq.check_all()?;
    let (khom_now, kth_now) = match which {
        SequenceKind::Khomology => (&seq, &kth),
        SequenceKind::Ktheory => (&khom, &seq),
    };
    let duality = khomology_ktheory_duality(khom_now, kth_now)?;
    let mut report = Report::new(
        json!({"perturbations": applied}),
        json!({"maps": seq, "nodes": nodes, "duality": duality}),
    );
    report.checks = nodes
        .iter()
        .map(|r| {
            let name = format!("exact_at {} ({} -> {})", r.node, r.incoming, r.outgoing);
            match &r.verdict.witness {
                Some(w) => Check::with_detail(&name, r.verdict.exact, w.clone()),
                None => Check::new(&name, r.verdict.exact),
            }
        })
        .collect();
    report.checks.extend(duality.iter().map(|d| Check::new(&d.statement, d.holds())));
    report.table = Some((
        vec!["node".into(), "incoming".into(), "outgoing".into(), "exact".into(), "witness".into()],
        nodes
            .iter()
            .map(|r| {
                vec![
                    r.node.clone(),
                    r.incoming.clone(),
                    r.outgoing.clone(),
                    r.verdict.exact.to_string(),
                    r.verdict.witness.clone().unwrap_or_default(),
                ]
            })
            .collect(),
    ));
    Ok(report)
}

fn tower(cli: &Cli, theta_s: &str, depth: usize, trace: Option<TraceClass>) -> Result<Report, CliError> {
    let theta = parse_theta(cli, theta_s)?;
    if depth == 0 {
        return Err(CliError::input("--depth must be at least 1"));
    }
    // One digit past the tower bounds the trace error.
    let expansion = match cf_expand(&theta, depth + 1) {
        Ok(e) if e.len() > depth || e.is_terminating() => e,
        _ => cf_expand(&theta, depth)?,
    };
    let mut warnings = Vec::new();
    let mut depth_used = depth;
    if theta.is_exact() {
        if expansion.len() < depth {
            depth_used = expansion.len();
        }
        warnings.push(format!(
            "θ = {theta} is rational: the expansion terminates after {} digits, so the tower has {} levels and its limit is finite-dimensional",
            expansion.len(),
            depth_used
        ));
        if depth_used == 0 {
            return Err(CliError::input(format!("θ = {theta} is an integer; there is no tower")));
        }
    }
    let tower = build_tower(&expansion, depth_used)?;
    let table = convergents(&expansion);

    let unit = tower.unit_vector(1)?;
    let p1 = DimensionVector::new(1, 1, 0);
    let mut invariance = Vec::new();
    let mut invariant = true;
    let mut reference = None;
    for n in 1..=tower.depth() {
        let c = inverse_limit_coefficients(&tower, n)?;
        let one = pairing_along_tower(&c, &push_k0_class(&unit, &tower, n)?)?;
        let p = pairing_along_tower(&c, &push_k0_class(&p1, &tower, n)?)?;
        let pair = (one.clone(), p.clone());
        match &reference {
            None => reference = Some(pair),
            Some(r) => invariant &= *r == pair,
        }
        invariance.push(json!({"n": n, "one": one.to_string(), "p1": p.to_string()}));
    }
    let closed_forms = closed_form_comparison(&tower)?;
    let derived_ok = closed_forms.iter().all(|r| r.convergent_form_matches_recursion);
    let printed_agrees = closed_forms.iter().all(|r| r.printed_matches_recursion);
    if !printed_agrees {
        warnings.push(
            "the closed form (−1)^n(−q_{n−1}, q_n) differs from the recursion; (−1)^n(p_{n−1}, −p_n) reproduces it"
                .into(),
        );
    }

    let mut checks = vec![
        Check::new("dimension_recursion", tower.dimension_violations().is_empty()),
        Check::new("pairing_invariant_along_tower", invariant),
        Check::new("convergent_closed_form_matches_recursion", derived_ok),
    ];

    let mut traces = Vec::new();
    let mut trace_result = Value::Null;
    if let Some(class) = trace {
        let probe = match class {
            TraceClass::P1 => p1.clone(),
            TraceClass::One => unit.clone(),
        };
        let w = trace_weights_auto(&tower, 1, &probe)?;
        let value = trace_of(&w, &probe)?;
        let m = w.horizon as isize;
        let a0 = BigRational::from_integer(expansion.a0().clone());
        let target_lo = theta.lower() - &a0;
        let target_hi = theta.upper() - &a0;
        let (pass, bound) = match class {
            TraceClass::One => (value == BigRational::from_integer(BigInt::from(1)), None),
            TraceClass::P1 => {
                let err = [&target_lo, &target_hi].iter().map(|t| abs(&(&value - *t))).max().expect("two");
                if (m as usize) < table.len() - 1 {
                    let bound = BigRational::new(BigInt::from(1), table.q(m) * table.q(m + 1));
                    (err < bound, Some(bound))
                } else {
                    // The horizon is the last convergent of a rational θ.
                    (err == BigRational::from_integer(BigInt::from(0)), None)
                }
            }
        };
        checks.push(Check::new("trace_within_bound", pass));
        trace_result = json!({
            "class": match class { TraceClass::P1 => "p1", TraceClass::One => "1" },
            "horizon": w.horizon,
            "value": value.to_string(),
            "value_approx": rational_to_f64(&value),
            "target_approx": theta.to_f64() - rational_to_f64(&a0),
            "bound": bound.as_ref().map(|b| b.to_string()),
            "bound_approx": bound.as_ref().map(rational_to_f64),
        });
        traces.push(w);
    }

    let mut results = tower_json(&tower, &traces)?;
    results["terminating"] = json!(tower.terminating);
    results["pairing_invariance"] = json!({"holds": invariant, "levels": invariance});
    results["closed_form_comparison"] = json!(closed_forms);
    results["trace"] = trace_result;
    let mut report = Report::new(json!({"theta": theta_json(&theta), "depth_used": depth_used}), results);
    report.checks = checks;
    report.warnings = warnings;
    report.dot = Some(tower_dot(&tower));
    report.table = Some((
        vec!["n".into(), "q_n".into(), "q_prev".into(), "multiplicity_out".into(), "x".into(), "y".into()],
        (1..=tower.depth())
            .map(|n| {
                let l = tower.level(n)?;
                let c = inverse_limit_coefficients(&tower, n)?;
                let m = tower.step(n).map(|s| s.multiplicity.to_string()).unwrap_or_default();
                Ok(vec![n.to_string(), l.q_n.to_string(), l.q_prev.to_string(), m, c.x.to_string(), c.y.to_string()])
            })
            .collect::<Result<_, nctorus::af_tower::AfError>>()?,
    ));
    Ok(report)
}

fn abs(r: &BigRational) -> BigRational {
    if r < &BigRational::from_integer(BigInt::from(0)) {
        -r
    } else {
        r.clone()
    }
}

fn rep_dump(cli: &Cli, rep: RepKind, theta_s: &str, n: usize) -> Result<Report, CliError> {
    let theta = parse_theta(cli, theta_s)?;
    let results = match rep {
        RepKind::Clock => {
            let (m, q) = Angle::from_theta(&theta)
                .exact()
                .ok_or_else(|| CliError::input("the clock-shift representation needs an exact rational θ"))?;
            if q > 512 {
                return Err(CliError::input(format!("q = {q} is too large to dump")));
            }
            let r = clock_shift(m, q as u64)?;
            let projection = match rieffel_projection(&r) {
                Ok(p) => json!({
                    "matrix": dense_json(&p.matrix),
                    "trace": p.trace,
                    "idempotent_defect": p.idempotent_defect,
                    "self_adjoint_defect": p.self_adjoint_defect,
                }),
                Err(e) => json!({"unavailable": e.to_string()}),
            };
            json!({
                "dim": r.dim(),
                "u": dense_json(r.u()),
                "v": dense_json(r.v()),
                "relation_defect": relation_defect(&r),
                "rieffel_projection": projection,
            })
        }
        RepKind::Z1 | RepKind::Z1prime => {
            if n == 0 {
                return Err(CliError::input("--N must be at least 1"));
            }
            let variant = if matches!(rep, RepKind::Z1) { ShiftVariant::Z1 } else { ShiftVariant::Z1Prime };
            let r = truncated_rep(&theta, n, variant);
            json!({
                "dim": r.dim(),
                "sites": (0..r.dim()).map(|i| r.site(i)).collect::<Vec<_>>(),
                "u": dense_json(r.u()),
                "v": dense_json(r.v()),
                "boundary": r.boundary,
                "interior_relation_defect": r.interior_relation_defect(),
            })
        }
        RepKind::Dirac => {
            if n == 0 {
                return Err(CliError::input("--N must be at least 1"));
            }
            let r = dirac_data(Angle::from_theta(&theta), n);
            json!({
                "dim": r.dim(),
                "sites": (0..r.dim()).map(|i| r.site(i)).collect::<Vec<_>>(),
                "u": sparse_json(&r.u),
                "v": sparse_json(&r.v),
                "f0": r.f0.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
                "interior_relation_defect": r.interior_relation_defect(),
            })
        }
    };
    Ok(Report::new(json!({"theta": theta_json(&theta)}), results))
}
