use serde::Serialize;

use braidlab::ball::{BallOptions, DEFAULT_MAX_ELEMENTS};
use braidlab::catalog::{build_from_spec, projectively_equivalent, read_rep, write_rep, Equivalence, Rep, Tolerances};
use braidlab::leakage::*;
use braidlab::limits::*;
use braidlab::linalg::CMat;
use braidlab::{Angle, BraidWord};

use crate::output::write_atomic;
use crate::{Ctx, Failure, LeakageCmd, LimitsCmd, RepCmd, RepSource};

type Outcome = Result<(), Failure>;

fn emit(ctx: &Ctx, text: &str) -> Outcome {
    if let Some(path) = &ctx.out {
        write_atomic(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn emit_json<T: Serialize>(ctx: &Ctx, value: &T) -> Outcome {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    s.push('\n');
    emit(ctx, &s)
}

fn verdict(pass: bool) -> Outcome {
    println!("{}", if pass { "PASS" } else { "FAIL" });
    if pass {
        Ok(())
    } else {
        Err(Failure::Analytic)
    }
}

fn tolerances(ctx: &Ctx) -> Tolerances {
    Tolerances { relation: ctx.tols.relation, unitarity: ctx.tols.unitarity, ..Tolerances::default() }
}

fn load(source: &RepSource, ctx: &Ctx) -> Result<Rep, Failure> {
    let rep = match (&source.spec, &source.file) {
        (Some(s), None) => build_from_spec(s)?,
        (None, Some(p)) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            read_rep(&text)?
        }
        _ => return Err(Failure::Usage("give exactly one of --rep SPEC or --in FILE".into())),
    };
    Ok(rep.with_tolerances(tolerances(ctx)))
}

fn print_matrix(m: &CMat) {
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|c| {
                let z = m[(r, c)];
                format!("{:>9.6}{:+.6}i", z.re + 0.0, z.im + 0.0)
            })
            .collect();
        println!("  [{}]", row.join(", "));
    }
}

fn family_spec(cmd: &RepCmd) -> Result<String, Failure> {
    let RepCmd::Build { spec, family, theta, phi, z, n, r, sign, conj, reduce, unitary } = cmd else { unreachable!() };
    if let Some(s) = spec {
        return Ok(s.clone());
    }
    let need = |v: &Option<String>, name: &str| v.clone().ok_or_else(|| Failure::Usage(format!("--{name} is required")));
    let family = family.as_deref().ok_or_else(|| Failure::Usage("give --spec or --family".into()))?;
    let s = match family {
        "eta" => format!("eta:{}:n={}{}", need(theta, "theta")?, n.unwrap_or(3), if *conj { ":conj" } else { "" }),
        "jones" => {
            let r = r.ok_or_else(|| Failure::Usage("--r is required".into()))?;
            let neg = matches!(sign.as_deref(), Some("-") | Some("-1") | Some("minus"));
            format!("jones:r={r}{}", if neg { ":-" } else { "" })
        }
        "character" => format!("character:{}:n={}", need(phi, "phi")?, n.unwrap_or(3)),
        "burau" => {
            let mut s = format!("burau:n={}:z={}", n.unwrap_or(3), need(z, "z")?);
            if let Some(k) = reduce {
                s.push_str(&format!(":reduce={k}"));
            }
            if *unitary {
                s.push_str(":unitary");
            }
            s
        }
        "standard" => format!("standard:n={}:z={}", n.unwrap_or(3), need(z, "z")?),
        "ising" => format!("ising:n={}", n.unwrap_or(6)),
        other => return Err(Failure::Usage(format!("unknown family `{other}`"))),
    };
    Ok(s)
}

pub fn rep(cmd: &RepCmd, ctx: &Ctx) -> Outcome {
    match cmd {
        RepCmd::Build { .. } => {
            let spec = family_spec(cmd)?;
            let rep = build_from_spec(&spec)?.with_tolerances(tolerances(ctx));
            let report = rep.verify_relations();
            println!(
                "{}: n={} d={} relation residual {:.3e} (tol {:e}), unitarity defect {:.3e}",
                rep.label(),
                rep.strands(),
                rep.dim(),
                report.max_residual,
                report.tolerance,
                report.unitarity_defect
            );
            emit(ctx, &write_rep(&rep))?;
            verdict(report.pass)
        }
        RepCmd::Check { source } => {
            let rep = load(source, ctx)?;
            let report = rep.verify_relations();
            for i in report.instances.iter().filter(|i| i.residual > report.tolerance) {
                println!("  violated: {} = {} (residual {:.3e})", i.lhs, i.rhs, i.residual);
            }
            println!("{}: max relation residual {:.3e} (tol {:e})", rep.label(), report.max_residual, report.tolerance);
            emit_json(ctx, &report)?;
            verdict(report.pass)
        }
        RepCmd::Eval { source, word } => {
            let rep = load(source, ctx)?;
            let w = BraidWord::parse(word, rep.strands())?;
            let m = rep.evaluate(&w)?;
            println!("{} evaluated on [{}]:", rep.label(), w);
            print_matrix(&m);
            #[derive(Serialize)]
            struct Eval {
                rep: String,
                word: String,
                #[serde(with = "braidlab::catalog::io::matrix_serde")]
                matrix: CMat,
            }
            emit_json(ctx, &Eval { rep: rep.label().into(), word: w.to_string(), matrix: m })
        }
        RepCmd::Equiv { a, b } => {
            let ra = build_from_spec(a)?;
            let rb = build_from_spec(b)?;
            let eq = projectively_equivalent(&ra, &rb, ctx.tols.solver)?;
            match &eq {
                Equivalence::Equivalent(w) => {
                    println!("{} ~ {}: B_i = c·S·A_i·S⁻¹ with c = {:.6}{:+.6}i, residual {:.3e}", ra.label(), rb.label(), w.scalar.re, w.scalar.im, w.residual);
                    println!("S =");
                    print_matrix(&w.similarity);
                }
                Equivalence::NotEquivalent { best_residual } => {
                    println!("{} and {} are not projectively equivalent (best residual {:.3e})", ra.label(), rb.label(), best_residual);
                }
            }
            emit_json(ctx, &eq)?;
            verdict(eq.witness().is_some())
        }
    }
}

fn subspace(name: &str, rep: &Rep) -> Result<Subspace, Failure> {
    let n = rep.strands();
    let check = |p: Subspace| -> Result<Subspace, Failure> {
        if p.dim() != rep.dim() {
            return Err(Failure::Usage(format!("projector `{name}` has dimension {} but the representation has {}", p.dim(), rep.dim())));
        }
        Ok(p)
    };
    match name.split_once(':').unwrap_or((name, "")) {
        ("parity-even", "") => check(parity_sector(n, true)?),
        ("parity-odd", "") => check(parity_sector(n, false)?),
        ("left-charge", k) => {
            let k = if k.is_empty() { n / 2 } else { k.parse().map_err(|_| format!("bad left-charge size `{k}`"))? };
            check(left_charge_sector(n, k)?)
        }
        ("block", axes) => {
            let axes: Vec<usize> = axes
                .split(',')
                .map(|a| a.trim().parse().map_err(|_| Failure::Usage(format!("bad block axis `{a}`"))))
                .collect::<Result<_, _>>()?;
            Ok(Subspace::coordinate(rep.dim(), &axes, name)?)
        }
        _ => Err(Failure::Usage(format!("unknown projector `{name}` (parity-even, parity-odd, left-charge[:K], block:i,j,..)"))),
    }
}

pub fn leakage(cmd: &LeakageCmd, ctx: &Ctx) -> Outcome {
    match cmd {
        LeakageCmd::Solve { left, right, method, restarts } => {
            let (l, r) = (build_from_spec(left)?, build_from_spec(right)?);
            let layout = embed_pair(&l, &r);
            println!("layout: B{} = B{} x B{}, d = {}, bridge tau{}", layout.strands(), layout.n1, layout.n2, layout.dim(), layout.bridge_index());
            let closed = match method.as_str() {
                "closed" => Some(solve_bridge_qubit_closed_form(&layout, ctx.tols.solver)?),
                "auto" => solve_bridge_qubit_closed_form(&layout, ctx.tols.solver).ok(),
                "numeric" => None,
                other => return Err(Failure::Usage(format!("unknown method `{other}` (closed, numeric, auto)"))),
            };
            if let Some(report) = closed {
                for c in &report.candidates {
                    println!("  x = {:.6}{:+.6}i: residual {:.3e}", c.x.re, c.x.im, c.residual);
                }
                for s in &report.solutions {
                    println!("bridge (abelian completion: {}):", s.abelian);
                    print_matrix(&s.matrix);
                }
                println!("closed form: best residual {:.3e}", report.best_residual);
                emit_json(ctx, &report)?;
                return verdict(report.solved());
            }
            let opts = NumericOptions {
                restarts: restarts.or(ctx.config.restarts).unwrap_or(NumericOptions::default().restarts),
                seed: ctx.seed,
                tol: ctx.tols.solver,
                ..NumericOptions::default()
            };
            let report = solve_bridge_numeric(&layout, &opts);
            println!(
                "numeric: {:?}, residual {:.3e}, commutant dim {}, {} arrangements x {} restarts",
                report.status, report.residual, report.commutant_dim, report.arrangements, report.restarts
            );
            if let Some(b) = &report.best {
                print_matrix(&b.matrix);
            }
            if report.status != NumericStatus::Solved {
                println!("{}", report.note);
            }
            emit_json(ctx, &report)?;
            verdict(report.status == NumericStatus::Solved)
        }
        LeakageCmd::Scan { family, grid, theta } => {
            if family != "eta3x3" {
                return Err(Failure::Usage(format!("unknown scan family `{family}` (only eta3x3)")));
            }
            let listed: Vec<String> = if theta.is_empty() { ctx.config.thetas.clone().unwrap_or_default() } else { theta.clone() };
            let thetas: Vec<Angle> = if listed.is_empty() {
                theta_grid(grid.or(ctx.config.grid).unwrap_or(181))
            } else {
                listed.iter().map(|t| t.parse::<Angle>()).collect::<Result<_, _>>()?
            };
            let rows = theta_scan(&thetas, ctx.tols.solver)?;
            print!("{}", scan_table(&rows));
            let passing: Vec<String> = rows.iter().filter(|r| r.pass).map(|r| r.theta.to_string()).collect();
            eprintln!("{} of {} points pass: {}", passing.len(), rows.len(), passing.join(", "));
            emit_json(ctx, &rows)
        }
        LeakageCmd::Enum { source, proj, maxlen, in_qudit, entries } => {
            let rep = load(source, ctx)?;
            let p = subspace(proj, &rep)?;
            let opts = EnumOptions {
                max_len: maxlen.or(ctx.config.max_len).unwrap_or(6),
                epsilon: ctx.tols.dedup,
                max_elements: ctx.config.max_elements.unwrap_or(DEFAULT_MAX_ELEMENTS),
                in_qudit_letters: (!in_qudit.is_empty()).then(|| in_qudit.iter().flat_map(|&l| [l, -l]).collect()),
                ..EnumOptions::new(0)
            };
            let mut report = enumerate_leakage_free(&rep, &p, &opts)?;
            println!(
                "{} vs {}: {} distinct elements up to length {}, {} leakage-free, {} leaking{}",
                report.rep,
                report.subspace,
                report.elements,
                report.max_len,
                report.leakage_free,
                report.leaking,
                if report.saturated { " (image exhausted)" } else { "" }
            );
            if report.leaking == 0 {
                println!("all enumerated elements are leakage-free");
            }
            if let Some(s) = &report.in_qudit {
                println!(
                    "in-qudit: {} elements, {} leaking (max {:.1e}); outside: {} elements, {} leakage-free (min leakage {:.3e})",
                    s.in_qudit_elements, s.in_qudit_leaking, s.max_in_qudit_leakage, s.outside_elements, s.outside_leakage_free, s.min_outside_leakage
                );
            }
            println!("generating set: {}", report.generating_set.iter().map(|w| format!("[{w}]")).collect::<Vec<_>>().join(" "));
            println!(
                "closure: {} products, {} violations, {} inverse violations",
                report.closure.products_checked, report.closure.violations, report.closure.inverse_violations
            );
            let closed = report.closure.violations == 0 && report.closure.inverse_violations == 0;
            if !entries {
                report.entries.clear();
            }
            emit_json(ctx, &report)?;
            verdict(closed)
        }
    }
}

pub fn limits(cmd: &LimitsCmd, ctx: &Ctx) -> Outcome {
    match cmd {
        LimitsCmd::Bound { d, m } => {
            let result = match (d, m.is_empty()) {
                (Some(d), true) => formanek_n(*d)?,
                (None, false) => formanek_n_bound(m)?,
                (Some(d), false) if m.iter().sum::<usize>() == *d => formanek_n_bound(m)?,
                (Some(d), false) => return Err(Failure::Usage(format!("multiplicities {m:?} do not sum to d = {d}"))),
                (None, true) => return Err(Failure::Usage("give --d or --m".into())),
            };
            println!("{result}");
            for (name, v) in &result.table {
                println!("  {name}={v}");
            }
            emit_json(ctx, &result)
        }
        LimitsCmd::Classify { theta, q, r } => {
            let v = match (theta, q, r) {
                (Some(t), None, None) => universality_classify(&t.parse()?)?,
                (None, Some(q), None) => universality_classify_q(&q.parse()?),
                (None, None, Some(r)) => universality_classify_q(&Angle::pi_frac(2, *r as i64)),
                _ => return Err(Failure::Usage("give one of --theta, --q or --r".into())),
            };
            println!("{}", v.classification);
            println!("  {}", v.details);
            emit_json(ctx, &v)
        }
        LimitsCmd::Growth { source, maxlen, linear } => {
            let rep = load(source, ctx)?;
            let opts = BallOptions {
                max_len: maxlen.or(ctx.config.max_len).unwrap_or(8),
                epsilon: ctx.tols.dedup,
                max_elements: ctx.config.max_elements.unwrap_or(DEFAULT_MAX_ELEMENTS),
                projective: !linear,
            };
            let report = image_growth(&rep, &opts)?;
            print!("{}", growth_table(&report));
            println!("{}", report.classification);
            emit_json(ctx, &report)
        }
    }
}
