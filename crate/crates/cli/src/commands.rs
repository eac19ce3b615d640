use num_complex::Complex;
use serde_json::json;
use std::io::Write;
use std::time::Instant;

use qinv_core::families::{chain_eval, log_fundamental_link_norm, ChainSpec, TorusCable};
use qinv_core::skein::{sixj, EvalStatus};
use qinv_core::surgery::{
    chain_class, chain_surgery_nr, lens_sum, nr0_knot_surgery, nr0_symmetric_knot, signature, torus_surgery_nr,
    LinkingMatrix, Weighting,
};
use qinv_core::{lobachevsky, Color, LimitPolicy, QParams, Sign};

use crate::literal::{parse_complex, parse_complex_list, parse_int_list};
use crate::output::{emit, emit_class_rows, Format, ResultRecord};
use crate::{inputs, selftest, CliError, Cli, Command};

type C = Complex<f64>;

fn level(cli: &Cli) -> Result<QParams<f64>, CliError> {
    let r = cli.r.ok_or_else(|| CliError::Usage("this command needs --r".into()))?;
    Ok(QParams::with_tol(r, cli.tol)?)
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn cjson(z: C) -> serde_json::Value {
    json!([z.re, z.im])
}

pub fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let t = Instant::now();
    let records = match &cli.command {
        Command::Sixj { colors } => sixj_cmd(cli, colors)?,
        Command::Dmod { alpha } => {
            let q = level(cli)?;
            let a = parse_complex(alpha)?.to_f64();
            vec![ResultRecord::new("dmod", inputs! {"r" => q.r(), "alpha" => alpha}, q.mdim(Color(a))?)]
        }
        Command::Delta => delta_cmd(cli, err)?,
        Command::Chain {
            framings,
            colors,
            class,
            lifts,
        } => chain_cmd(cli, framings, colors.as_deref(), *class, lifts.as_deref())?,
        Command::LensSum { framings, multiset } => return lens_cmd(cli, framings, *multiset, out, t),
        Command::TorusSurgery { f, n, class, lift } => {
            let q = level(cli)?;
            let v = torus_surgery_nr(&q, *f, *n, *class, *lift, &LimitPolicy::default())?;
            let p = f + 2 * *n as i64 + 1;
            vec![ResultRecord::new(
                "torus-surgery",
                inputs! {"r" => q.r(), "f" => f, "n" => n, "class" => class, "lift" => lift},
                v,
            )
            .meta("framing", p)
            .meta("class_value", format!("{}/{}", 2 * class, p))
            .meta("terms", q.r())]
        }
        Command::Poincare => poincare_cmd(cli)?,
        Command::Volume { k, rmin, rmax, step } => volume_cmd(*k, *rmin, *rmax, *step)?,
        Command::Selftest { samples } => {
            let report = selftest::run_suite(cli.seed, *samples);
            let failed = report.failed();
            selftest::emit(out, cli.format, &report)?;
            return Ok(if failed == 0 { 0 } else { 1 });
        }
    };
    let wall = ms(t);
    let records: Vec<ResultRecord> = records.into_iter().map(|r| r.meta("wall_ms", wall)).collect();
    emit(out, cli.format, &records)?;
    Ok(0)
}

fn sixj_cmd(cli: &Cli, colors: &str) -> Result<Vec<ResultRecord>, CliError> {
    let q = level(cli)?;
    let cs = parse_complex_list(colors)?;
    let js: [Color<f64>; 6] = cs
        .iter()
        .map(|c| Color(c.to_f64()))
        .collect::<Vec<_>>()
        .try_into()
        .map_err(|v: Vec<_>| CliError::Usage(format!("sixj needs 6 colors, got {}", v.len())))?;
    let e = sixj(&q, js)?;
    let status = match e.status {
        EvalStatus::Computed => "computed",
        EvalStatus::StructuralZero => "structural_zero",
    };
    Ok(vec![
        ResultRecord::new("sixj", inputs! {"r" => q.r(), "colors" => colors}, e.value).meta("status", status)
    ])
}

fn delta_cmd(cli: &Cli, err: &mut dyn Write) -> Result<Vec<ResultRecord>, CliError> {
    let q = level(cli)?;
    if q.r() % 4 == 0 {
        writeln!(
            err,
            "warning: Delta_- vanishes at r = {} (r = 0 mod 4); surgery commands are disabled at this level",
            q.r()
        )?;
    }
    Ok([(Sign::Plus, "+"), (Sign::Minus, "-")]
        .into_iter()
        .map(|(s, name)| {
            let closed = q.delta(s);
            let gauss = q.gauss_delta(s);
            ResultRecord::new("delta", inputs! {"r" => q.r(), "sign" => name}, closed)
                .meta("gauss_sum", cjson(gauss))
                .meta("abs_err", (closed - gauss).norm())
        })
        .collect())
}

fn chain_cmd(
    cli: &Cli,
    framings: &str,
    colors: Option<&str>,
    class: Option<i64>,
    lifts: Option<&str>,
) -> Result<Vec<ResultRecord>, CliError> {
    let q = level(cli)?;
    let fr = parse_int_list(framings)?;
    if let Some(colors) = colors {
        let cs: Vec<Color<f64>> = parse_complex_list(colors)?.iter().map(|c| Color(c.to_f64())).collect();
        let spec = ChainSpec::new(fr.clone(), cs)?;
        let v = chain_eval(&q, &spec)?;
        return Ok(vec![ResultRecord::new(
            "chain",
            inputs! {"r" => q.r(), "framings" => fr, "colors" => colors},
            v,
        )]);
    }
    let k = class.ok_or_else(|| CliError::Usage("chain needs --colors or --class".into()))?;
    let lifts = match lifts {
        Some(s) => parse_int_list(s)?,
        None => vec![0; fr.len()],
    };
    let v = chain_surgery_nr(&q, &fr, k, &lifts)?;
    let lk = LinkingMatrix::chain(&fr);
    let (p, s) = signature(&lk);
    let cls = chain_class::<f64>(&fr, k)?;
    let terms = (q.r() as u64).checked_pow(fr.len() as u32);
    Ok(vec![ResultRecord::new(
        "chain",
        inputs! {"r" => q.r(), "framings" => fr, "class" => k},
        v,
    )
    .meta("signature", json!([p, s]))
    .meta("det", lk.det().to_string())
    .meta("class_value", cls.describe())
    .meta("lifts", json!(lifts))
    .meta("terms", json!(terms))])
}

fn lens_cmd(cli: &Cli, framings: &str, multiset: bool, out: &mut dyn Write, t: Instant) -> Result<i32, CliError> {
    let q = level(cli)?;
    let fr = parse_int_list(framings)?;
    let ls = lens_sum(&q, &fr)?;
    let lk = LinkingMatrix::chain(&fr);
    if multiset && cli.format == Format::Csv {
        let rows: Vec<(String, C)> = ls.entries.iter().map(|e| (e.class.describe(), e.value)).collect();
        emit_class_rows(out, &rows)?;
        return Ok(0);
    }
    let (p, s) = signature(&lk);
    let mut records = vec![ResultRecord::new("lens-sum", inputs! {"r" => q.r(), "framings" => fr.clone()}, ls.sum)
        .meta("p", lk.det().to_string())
        .meta("signature", json!([p, s]))
        .meta("classes", ls.entries.len())
        .meta("wall_ms", ms(t))];
    if multiset {
        records.extend(ls.entries.iter().map(|e| {
            ResultRecord::new("lens-sum-class", inputs! {"r" => q.r(), "framings" => fr.clone()}, e.value)
                .meta("class_value", e.class.describe())
        }));
    }
    emit(out, cli.format, &records)?;
    Ok(0)
}

fn poincare_cmd(cli: &Cli) -> Result<Vec<ResultRecord>, CliError> {
    let q = level(cli)?;
    let pol = LimitPolicy::default();
    let k = TorusCable::poincare_trefoil();
    let fwd = nr0_knot_surgery(&q, &k, Weighting::Forward, &pol)?;
    let bwd = nr0_knot_surgery(&q, &k, Weighting::Backward, &pol)?;
    let sym = if q.is_odd() {
        Some(nr0_symmetric_knot(&q, &k, &pol)?)
    } else {
        None
    };
    let scale = fwd.norm().max(1.0);
    let mut spread = (fwd - bwd).norm();
    if let Some(s) = sym {
        spread = spread.max((fwd - s).norm());
    }
    let mut rec = ResultRecord::new("poincare", inputs! {"r" => q.r()}, fwd)
        .meta("forward", cjson(fwd))
        .meta("backward", cjson(bwd))
        .meta("symmetric", sym.map(cjson).unwrap_or(serde_json::Value::Null))
        .meta("max_route_diff", spread)
        .meta("routes_agree", spread <= 1e-9 * scale);
    if q.r() == 5 {
        let q2 = q.qpow_re(2.0) + 1.0;
        rec = rec.meta("closed_form", cjson(-(q2 * q2)));
    }
    Ok(vec![rec])
}

fn volume_cmd(k: u32, rmin: i64, rmax: i64, step: i64) -> Result<Vec<ResultRecord>, CliError> {
    if step <= 0 || rmin > rmax {
        return Err(CliError::Usage(format!("empty level range {rmin}..={rmax} step {step}")));
    }
    let target = 2.0 * (k as f64 - 1.0) * 8.0 * lobachevsky(std::f64::consts::FRAC_PI_4, 1e-12);
    let mut recs = Vec::new();
    let mut r = rmin;
    while r <= rmax {
        let q = QParams::<f64>::new(r)?;
        let l = log_fundamental_link_norm(&q, k)?;
        let v = 2.0 * std::f64::consts::PI / r as f64 * l;
        recs.push(
            ResultRecord::new("volume", inputs! {"r" => r, "k" => k}, C::new(v, 0.0))
                .meta("log_norm", l)
                .meta("target", target)
                .meta("rel_gap", (v - target).abs() / target),
        );
        r += step;
    }
    Ok(recs)
}
