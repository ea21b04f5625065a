use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use serde_json::{json, Value};
use zetapoly::exactnum::GaussianRational as Q;
use zetapoly::golden;
use zetapoly::io::{self, AnyPoly};
use zetapoly::lvalues::{
    build_r, critical_values, functional_equation_check, numeric_fricke_residual, numeric_rv, LValue,
};
use zetapoly::polyspace::{check_es_classical, check_fricke, check_res1, check_res2, wspace_basis};
use zetapoly::rv;
use zetapoly::zeta::{hilbert_hypotheses, rh_check, thm2_residual, RhMode, RhReport, Thm2Report};
use zetapoly::{BigComplex, BigReal, Error, NewformData, PolyX, ZetaPoly};

use crate::render::{self, bound, ok_word};
use crate::{Outcome, Relation, RootMode, RunConfig};

pub fn read(path: &PathBuf) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", Path::new(path).display()))
}

/// Parses `1,3,5..8` into `[1, 3, 5, 6, 7, 8]`.
pub fn parse_n_list(list: &str) -> anyhow::Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| anyhow!("invalid n {s:?}"));
        match item.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    bail!("empty range {item}");
                }
                out.extend(a..=b);
            }
            None => out.push(num(item)?),
        }
    }
    if out.is_empty() {
        bail!("no values of n given");
    }
    Ok(out)
}

pub fn rv_forward(text: &str) -> anyhow::Result<Outcome> {
    let r = io::parse_polyx(text)?;
    let z = rv::rv_forward(&r);
    Ok(Outcome {
        pass: true,
        json: render::zeta(&z),
        text: format!("Z(s) = {z}"),
    })
}

pub fn rv_inverse(text: &str) -> anyhow::Result<Outcome> {
    let z = io::parse_zeta(text)?;
    let r = rv::rv_inverse(&z)?;
    Ok(Outcome {
        pass: true,
        json: render::polyx(&r),
        text: format!("R(X) = {r}"),
    })
}

pub fn check(relation: Relation, text: &str, eps: Option<i8>) -> anyhow::Result<Outcome> {
    let r = io::parse_polyx(text)?;
    let (name, residual) = match relation {
        Relation::Fricke => {
            let eps = eps.ok_or_else(|| anyhow!("fricke needs --eps 1 or --eps -1"))?;
            ("fricke", check_fricke(&r, eps)?)
        }
        Relation::Res1 => ("res1", check_res1(&r)?),
        Relation::Res2 => ("res2", check_res2(&r)?),
        Relation::Es1 => ("es1", check_es_classical(&r)?.0),
        Relation::Es2 => ("es2", check_es_classical(&r)?.1),
    };
    let holds = residual.is_zero();
    let text = if holds {
        format!("{name}: holds")
    } else {
        format!("{name}: fails, residual = {residual}")
    };
    Ok(Outcome {
        pass: holds,
        json: json!({ "relation": name, "holds": holds, "residual": render::polyx(&residual) }),
        text,
    })
}

fn zeta_of(text: &str) -> anyhow::Result<ZetaPoly> {
    Ok(match io::parse_any(text)? {
        AnyPoly::X(r) => rv::rv_forward(&r),
        AnyPoly::S(z) => z,
    })
}

pub fn thm2(text: &str, ns: &[usize], cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let z = zeta_of(text)?;
    let tol = cfg.tol_or("1e-10");
    // Independent per-n runs; results are collected in input order.
    let results: Vec<zetapoly::Result<Thm2Report>> = std::thread::scope(|scope| {
        let handles: Vec<_> = ns
            .iter()
            .map(|&n| {
                let (z, tol) = (&z, &tol);
                scope.spawn(move || thm2_residual(z, n, tol, cfg.k_max))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });

    let mut pass = true;
    let mut rows = Vec::new();
    let mut text = String::new();
    for res in results {
        let rep = match res {
            Ok(rep) => rep,
            Err(Error::NotConverged(rep)) => *rep,
            Err(e) => return Err(e.into()),
        };
        let ok = rep.converged && rep.total_abs < tol;
        pass &= ok;
        let total = BigComplex::from_gaussian(&rep.total, cfg.prec);
        rows.push(json!({
            "n": rep.n,
            "pass": ok,
            "converged": rep.converged,
            "k_stop": rep.k_stop,
            "exact_part": render::gaussian(&rep.exact_part, cfg.prec),
            "total": render::complex(&total, cfg.prec),
            "total_abs": render::real(&rep.total_abs, cfg.prec),
            "residual_bound": bound(&rep.residual_bound),
        }));
        writeln!(
            text,
            "n = {}: {} |total| = {} K = {} tail bound {}{}",
            rep.n,
            ok_word(ok),
            bound(&rep.total_abs),
            rep.k_stop,
            bound(&rep.residual_bound),
            if rep.converged { "" } else { " (not converged)" }
        )
        .unwrap();
    }
    Ok(Outcome {
        pass,
        json: json!({
            "w": z.w(),
            "tol": bound(&tol),
            "k_max": cfg.k_max,
            "precision": cfg.prec,
            "pass": pass,
            "results": rows,
        }),
        text,
    })
}

fn sym_tolerance(prec: u32) -> BigReal {
    let floor = BigReal::parse_decimal("1e-20", prec).expect("literal");
    floor.max(BigReal::pow2(16 - prec as i64, prec))
}

/// One line of the comparison table.
struct Line {
    name: String,
    pass: bool,
    detail: String,
}

fn lvalue_json(v: &LValue, prec: u32) -> Value {
    json!({
        "s": v.s,
        "lambda": render::real(&v.lambda, prec),
        "lambda_error": bound(&v.lambda_error),
        "l": render::real(&v.l, prec),
        "l_error": bound(&v.l_error),
        "terms_used": v.terms_used,
    })
}

fn roots_json(rep: &RhReport, prec: u32) -> Value {
    json!({
        "pass": rep.pass,
        "max_deviation": bound(&rep.max_deviation),
        "roots": rep.roots.roots.iter().map(|z| render::complex(z, prec)).collect::<Vec<_>>(),
        "max_relative_residual": bound(&rep.roots.max_relative_residual),
    })
}

pub fn delta(cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let prec = cfg.prec;
    let g = golden::delta();
    let mut lines = Vec::new();
    let mut push = |name: &str, pass: bool, detail: String| {
        lines.push(Line {
            name: name.into(),
            pass,
            detail,
        })
    };

    // Exact data.
    let z_minus = rv::rv_forward(&g.r_minus);
    push("exact transform of the odd part", z_minus == g.z_minus, format!("{z_minus}"));
    let fr = check_fricke(&g.r_plus, 1)?.is_zero() && check_fricke(&g.r_minus, 1)?.is_zero();
    push("exact parity parts satisfy the Fricke relation", fr, "eps = +1".into());
    let hil = hilbert_hypotheses(&g.z_minus);

    // Numeric pipeline.
    let f = NewformData::delta_for_precision(prec)?;
    let values = critical_values(&f, prec)?;
    let fe = functional_equation_check(&f, prec)?;
    push(
        "completed L-function is symmetric under s -> 12 - s",
        fe.pass,
        format!("max deviation {} allowed {}", bound(&fe.max_deviation), bound(&fe.allowed)),
    );

    let r = build_r(&f, prec)?;
    let even = r.coeffs()[2].re.clone();
    let odd = &r.coeffs()[1].re / &BigReal::from_i64(4, prec);
    push(
        "even scale",
        golden::agrees_to(&even, &g.even_scale, 5),
        format!("{} vs {}", even.to_sci(6), g.even_scale),
    );
    push(
        "odd scale",
        golden::agrees_to(&odd, &g.odd_scale, 5),
        format!("{} vs {}", odd.to_sci(6), g.odd_scale),
    );

    let tol_sym = sym_tolerance(prec);
    let mut sym_dev = BigReal::zero(64);
    for j in 0..=r.w() {
        let model = &(&BigReal::from_ratio(g.r_plus.coeff(j).re(), prec) * &even)
            + &(&BigReal::from_ratio(g.r_minus.coeff(j).re(), prec) * &odd);
        let dev = (&r.coeffs()[j] - &BigComplex::real(model)).abs().with_prec(64);
        sym_dev = sym_dev.max(dev);
    }
    push(
        "R equals even scale * R+ plus odd scale * R-",
        sym_dev <= tol_sym,
        format!("max deviation {} tolerance {}", bound(&sym_dev), bound(&tol_sym)),
    );
    let fr_num = numeric_fricke_residual(&r, 1)?;
    let fr_tol = &BigReal::pow2(-(prec as i64), 64) * &BigReal::from_i64(1000, 64);
    push(
        "numeric R satisfies the Fricke relation",
        fr_num < fr_tol,
        format!("residual {} tolerance {}", bound(&fr_num), bound(&fr_tol)),
    );

    let z = numeric_rv(&r);
    let mut z_ok = true;
    let mut z_detail = Vec::new();
    for (d, printed) in g.z_decimal.iter().enumerate() {
        let digits = golden::significant_digits(printed);
        let v = &z.coeffs()[d].re;
        let ok = golden::agrees_to(v, printed, digits);
        z_ok &= ok;
        if !ok {
            z_detail.push(format!("s^{d}: {} vs {printed}", v.to_sci(digits)));
        }
    }
    push(
        "Z coefficients agree with the published decimals",
        z_ok,
        if z_ok { "all 11".into() } else { z_detail.join(", ") },
    );

    let root_tol = BigReal::parse_decimal("1e-8", prec)?;
    let zr = rh_check(z.coeffs(), RhMode::CriticalLine, &root_tol, prec)?;
    push(
        "roots of Z on Re s = 1/2",
        zr.pass && zr.roots.roots.len() == 10,
        format!("{} roots, max |Re - 1/2| = {}", zr.roots.roots.len(), bound(&zr.max_deviation)),
    );
    let rr = rh_check(r.coeffs(), RhMode::UnitCircle, &root_tol, prec)?;
    push(
        "roots of R on |X| = 1",
        rr.pass,
        format!("max ||X| - 1| = {}", bound(&rr.max_deviation)),
    );

    let pass = lines.iter().all(|l| l.pass);
    let mut text = String::new();
    for l in &lines {
        writeln!(text, "{} {}: {}", ok_word(l.pass), l.name, l.detail).unwrap();
    }
    if !pass {
        writeln!(text, "precision shortfall; rerun with --prec {} or more", 2 * prec).unwrap();
    }
    let digits = render::digits_for(prec);
    let json = json!({
        "precision": prec,
        "pass": pass,
        "required_precision": if pass { prec } else { 2 * prec },
        "checks": lines.iter().map(|l| json!({"name": l.name, "pass": l.pass, "detail": l.detail})).collect::<Vec<_>>(),
        "critical_values": values.iter().map(|v| lvalue_json(v, prec)).collect::<Vec<_>>(),
        "r": {
            "coeffs": r.coeffs().iter().map(|c| render::complex(c, prec)).collect::<Vec<_>>(),
            "errors": r.errors().iter().map(bound).collect::<Vec<_>>(),
        },
        "z": {
            "coeffs": z.coeffs().iter().map(|c| render::complex(c, prec)).collect::<Vec<_>>(),
            "errors": z.errors().iter().map(bound).collect::<Vec<_>>(),
        },
        "z_minus": render::zeta(&g.z_minus),
        "z_minus_hilbert": {
            "integral": hil.integral,
            "positive_leading": hil.positive_leading,
        },
        "z_roots": roots_json(&zr, prec),
        "r_roots": roots_json(&rr, prec),
        "even_scale": even.to_sci(digits),
        "odd_scale": odd.to_sci(digits),
    });
    Ok(Outcome { pass, json, text })
}

pub fn wspace(w: usize) -> anyhow::Result<Outcome> {
    let ws = wspace_basis(w)?;
    let list = |v: &[PolyX]| v.iter().map(render::polyx).collect::<Vec<_>>();
    let mut text = format!("w = {w}: dim W+ = {}, dim W- = {}\n", ws.dim_plus(), ws.dim_minus());
    for p in &ws.plus {
        writeln!(text, "  + {p}").unwrap();
    }
    for p in &ws.minus {
        writeln!(text, "  - {p}").unwrap();
    }
    Ok(Outcome {
        pass: true,
        json: json!({
            "w": w,
            "dim_plus": ws.dim_plus(),
            "dim_minus": ws.dim_minus(),
            "basis": list(&ws.basis),
            "plus": list(&ws.plus),
            "minus": list(&ws.minus),
        }),
        text,
    })
}

pub fn lvalues(newform: Option<&str>, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let prec = cfg.prec;
    let f = match newform {
        Some(t) => NewformData::from_json(t)?,
        None => NewformData::delta_for_precision(prec)?,
    };
    let values = critical_values(&f, prec)?;
    let fe = functional_equation_check(&f, prec)?;
    let digits = render::digits_for(prec).min(30);
    let mut text = format!(
        "{} (level {}, weight {}, eps {:+})\n",
        if f.label().is_empty() { "newform" } else { f.label() },
        f.level(),
        f.weight(),
        f.fricke()
    );
    for v in &values {
        writeln!(
            text,
            "s = {:>2}: Lambda = {} (+- {}), L = {} (+- {})",
            v.s,
            v.lambda.to_sci(digits),
            bound(&v.lambda_error),
            v.l.to_sci(digits),
            bound(&v.l_error)
        )
        .unwrap();
    }
    writeln!(
        text,
        "{} functional equation: max deviation {} allowed {}",
        ok_word(fe.pass),
        bound(&fe.max_deviation),
        bound(&fe.allowed)
    )
    .unwrap();
    Ok(Outcome {
        pass: fe.pass,
        json: json!({
            "label": f.label(),
            "level": f.level(),
            "weight": f.weight(),
            "fricke": f.fricke(),
            "precision": prec,
            "values": values.iter().map(|v| lvalue_json(v, prec)).collect::<Vec<_>>(),
            "functional_equation": {
                "pass": fe.pass,
                "max_deviation": bound(&fe.max_deviation),
                "allowed": bound(&fe.allowed),
                "deviations": fe.deviations.iter().map(bound).collect::<Vec<_>>(),
            },
        }),
        text,
    })
}

pub fn roots(text: &str, mode: Option<RootMode>, cfg: &RunConfig) -> anyhow::Result<Outcome> {
    let prec = cfg.prec;
    let (coeffs, default_mode) = match io::parse_any(text)? {
        AnyPoly::X(r) => (r.coeffs().to_vec(), RootMode::UnitCircle),
        AnyPoly::S(z) => (z.coeffs().to_vec(), RootMode::CriticalLine),
    };
    let mode = match mode.unwrap_or(default_mode) {
        RootMode::CriticalLine => RhMode::CriticalLine,
        RootMode::UnitCircle => RhMode::UnitCircle,
    };
    let tol = cfg.tol_or("1e-8");
    let numeric: Vec<BigComplex> = coeffs.iter().map(|q: &Q| BigComplex::from_gaussian(q, prec + 32)).collect();
    let rep = rh_check(&numeric, mode, &tol, prec)?;
    let digits = render::digits_for(prec).min(30);
    let label = match mode {
        RhMode::CriticalLine => "max |Re - 1/2|",
        RhMode::UnitCircle => "max ||X| - 1|",
    };
    let mut text = String::new();
    for (z, m) in &rep.roots.clusters {
        let mult = if *m > 1 { format!(" (multiplicity {m})") } else { String::new() };
        writeln!(text, "{}{mult}", render::complex_text(z, digits)).unwrap();
    }
    writeln!(text, "{} {label} = {}", ok_word(rep.pass), bound(&rep.max_deviation)).unwrap();
    let mut json = roots_json(&rep, prec);
    json["mode"] = json!(match mode {
        RhMode::CriticalLine => "critical-line",
        RhMode::UnitCircle => "unit-circle",
    });
    json["precision"] = json!(prec);
    json["tol"] = json!(bound(&tol));
    json["clusters"] = rep
        .roots
        .clusters
        .iter()
        .map(|(z, m)| json!({ "root": render::complex(z, prec), "multiplicity": m }))
        .collect();
    Ok(Outcome {
        pass: rep.pass,
        json,
        text,
    })
}
