//! One function per subcommand; each returns CSV text plus the structured
//! results so both output modes carry the same values.

use crate::output::{csv_table, fmt_real, real_value, RunOutput};
use crate::{
    AgoodArgs, CountNonzeroArgs, DiscriminantArgs, ExpandArgs, HeckeArgs, IndexBy,
    OptimalityArgs, PipelineArgs, Pow2SquareArgs, PrimesArgs, SieveAggArgs, SieveRepsArgs,
    UsageError, CAP_SERIES_LEN, CAP_SERIES_LEN_MOD2, CAP_SWEEP_X,
};
use anyhow::Result;
use qmodl::arith;
use qmodl::optimality::{self, ConstructionParams};
use qmodl::qforms::{self, TaggedForm};
use qmodl::sievelab::{self, SubsetSpec};
use serde_json::{json, Value};

pub struct Caps {
    pub unsafe_caps: bool,
}

impl Caps {
    fn check_series(&self, modulus: u32, prec: u64) -> Result<()> {
        let cap = if modulus == 2 { CAP_SERIES_LEN_MOD2 } else { CAP_SERIES_LEN };
        if !self.unsafe_caps && prec > cap {
            return Err(UsageError(format!(
                "precision {prec} exceeds the cap {cap} for modulus {modulus} \
                 (use --unsafe-caps to override)"
            ))
            .into());
        }
        Ok(())
    }

    fn check_sweep(&self, x: u64) -> Result<()> {
        if !self.unsafe_caps && x > CAP_SWEEP_X {
            return Err(UsageError(format!(
                "X = {x} exceeds the sweep cap {CAP_SWEEP_X} (use --unsafe-caps to override)"
            ))
            .into());
        }
        Ok(())
    }
}

fn build_form(name: &str, modulus: u32, prec: u64, caps: &Caps) -> Result<TaggedForm> {
    caps.check_series(modulus, prec)?;
    if prec < 2 {
        return Err(UsageError("precision must be at least 2".into()).into());
    }
    Ok(qforms::named_form(name, modulus, prec as usize)?)
}

/// Nonzero terms of a series as CSV rows and JSON pairs.
fn series_terms(s: &qmodl::QSeries) -> (Vec<Vec<String>>, Value) {
    let rows: Vec<Vec<String>> = s
        .support()
        .into_iter()
        .map(|e| vec![e.to_string(), s.coeff_or_zero(e).to_string()])
        .collect();
    let pairs: Vec<Value> = s
        .support()
        .into_iter()
        .map(|e| json!([e, s.coeff_or_zero(e)]))
        .collect();
    (rows, Value::Array(pairs))
}

pub fn expand(a: &ExpandArgs, caps: &Caps) -> Result<RunOutput> {
    let form = build_form(&a.form, a.modulus, a.prec, caps)?;
    let (rows, terms) = series_terms(&form.series);
    Ok(RunOutput {
        csv: csv_table("exponent,coefficient", rows),
        results: json!({
            "form": a.form,
            "modulus": a.modulus,
            "offset": form.series.offset(),
            "end": form.series.end(),
            "twice_weight": form.meta.twice_weight,
            "level": form.meta.level,
            "terms": terms,
        }),
    })
}

pub fn count_nonzero(a: &CountNonzeroArgs, caps: &Caps) -> Result<RunOutput> {
    if a.x < 2 {
        return Err(UsageError("need X >= 2".into()).into());
    }
    // checkpoints 10^3, 10^4, ..., then X itself
    let mut checkpoints: Vec<u64> = Vec::new();
    let mut c = 1_000u64;
    while c < a.x {
        checkpoints.push(c);
        c *= 10;
    }
    checkpoints.push(a.x);

    let counts: Vec<u64> = if a.form == "partition" && a.index_by == IndexBy::N {
        caps.check_series(a.modulus, a.x + 1)?;
        // natural-index counts run over 1 <= n <= X
        let p = qforms::partition_mod(a.modulus, a.x as usize);
        let mut counts = Vec::with_capacity(checkpoints.len());
        let mut running = 0u64;
        let mut next = 0usize;
        for (n, &v) in p.iter().enumerate() {
            if n >= 1 && v != 0 {
                running += 1;
            }
            while next < checkpoints.len() && n as u64 == checkpoints[next] {
                counts.push(running);
                next += 1;
            }
        }
        counts
    } else {
        let form = build_form(&a.form, a.modulus, a.x + 2, caps)?;
        checkpoints
            .iter()
            .map(|&xi| form.series.nonzero_count(xi as i64).map_err(anyhow::Error::from))
            .collect::<Result<Vec<_>>>()?
    };

    let mut rows = Vec::new();
    let mut results = Vec::new();
    for (&xi, &n) in checkpoints.iter().zip(&counts) {
        let xf = xi as f64;
        let loglog = xf.ln().ln();
        let target = xf.sqrt() / loglog;
        let normalized = n as f64 * loglog / xf.sqrt();
        rows.push(vec![
            xi.to_string(),
            n.to_string(),
            fmt_real(target),
            fmt_real(normalized),
        ]);
        results.push(json!({
            "x": xi,
            "count": n,
            "sqrt_x_over_loglog_x": real_value(target),
            "count_loglog_over_sqrt_x": real_value(normalized),
        }));
    }
    Ok(RunOutput {
        csv: csv_table("x,count,sqrt_x_over_loglog_x,count_loglog_over_sqrt_x", rows),
        results: json!({
            "form": a.form,
            "modulus": a.modulus,
            "index_by": a.index_by,
            "table": results,
        }),
    })
}

pub fn hecke(a: &HeckeArgs, caps: &Caps) -> Result<RunOutput> {
    let form = build_form(&a.form, a.modulus, a.prec, caps)?;
    let image = qforms::hecke_tp(&form, a.p)?;
    let (rows, terms) = series_terms(&image.series);
    Ok(RunOutput {
        csv: csv_table("exponent,coefficient", rows),
        results: json!({
            "form": a.form,
            "modulus": a.modulus,
            "p": a.p,
            "end": image.series.end(),
            "twice_weight": image.meta.twice_weight,
            "level": image.meta.level,
            "terms": terms,
        }),
    })
}

pub fn pipeline(a: &PipelineArgs, caps: &Caps) -> Result<RunOutput> {
    let form = build_form(&a.form, a.modulus, a.prec, caps)?;
    let m = match a.m {
        Some(m) => m,
        None => {
            // smallest even m whose l^m clears the pole order
            let pole = (-form.series.normalize().offset()).max(0) as u64;
            let mut m = 0u32;
            while (a.modulus as u64).pow(m) <= pole {
                m += 2;
            }
            m
        }
    };
    let h = qforms::holomorphize(&form, m)?;
    let lm = (a.modulus as u64).pow(m);
    let normalized = h.series.normalize();

    let summary_header = "modulus,m,lm,twice_weight,level,offset,nonzero_terms";
    let summary_row = vec![
        a.modulus.to_string(),
        m.to_string(),
        lm.to_string(),
        h.meta.twice_weight.to_string(),
        h.meta.level.to_string(),
        normalized.offset().to_string(),
        h.series.nnz().to_string(),
    ];
    let mut csv = csv_table(summary_header, [summary_row]);

    let mut scan_json = Value::Null;
    if let (Some(umax), Some(pmax)) = (a.umax, a.pmax) {
        let need = umax * pmax;
        if need as i64 >= h.series.end() {
            return Err(UsageError(format!(
                "scan needs exponent {need} but the product window ends at {}; raise --prec",
                h.series.end()
            ))
            .into());
        }
        let scan = qforms::scan_up_nonzero(&h, umax, pmax)?;
        let rows: Vec<Vec<String>> = scan
            .iter()
            .flat_map(|(u, ps)| ps.iter().map(move |p| vec![u.to_string(), p.to_string()]))
            .collect();
        csv.push('\n');
        csv.push_str(&csv_table("u,p", rows));
        scan_json = Value::Array(
            scan.into_iter()
                .map(|(u, ps)| json!({"u": u, "primes": ps}))
                .collect(),
        );
    }

    Ok(RunOutput {
        csv,
        results: json!({
            "form": a.form,
            "modulus": a.modulus,
            "m": m,
            "lm": lm,
            "twice_weight": h.meta.twice_weight,
            "level": h.meta.level,
            "offset": normalized.offset(),
            "nonzero_terms": h.series.nnz(),
            "scan": scan_json,
        }),
    })
}

pub fn pow2_square(a: &Pow2SquareArgs) -> Result<RunOutput> {
    let solutions = qforms::pow2_square_search(a.n0, a.level, a.mmax)?;
    let rows: Vec<Vec<String>> = solutions
        .iter()
        .map(|s| vec![s.m.to_string(), s.u.to_string(), s.y.to_string()])
        .collect();
    let results: Vec<Value> = solutions
        .iter()
        .map(|s| json!({"m": s.m, "u": s.u, "y": s.y.to_string()}))
        .collect();
    Ok(RunOutput {
        csv: csv_table("m,u,y", rows),
        results: json!({
            "n0": a.n0,
            "level": a.level,
            "mmax": a.mmax,
            "solutions": results,
        }),
    })
}

pub fn discriminant(a: &DiscriminantArgs) -> Result<RunOutput> {
    if a.a < 1 {
        return Err(UsageError("need a >= 1".into()).into());
    }
    let dec = arith::fundamental_decomposition(a.a);
    let h = arith::class_number(dec.fund)?;
    let l1 = arith::l_one(dec.fund)?;
    let good = arith::classify_discriminant(dec.fund, a.c0)?.is_good();
    let row = vec![
        a.a.to_string(),
        dec.fund.to_string(),
        dec.sq.to_string(),
        h.to_string(),
        fmt_real(l1),
        good.to_string(),
    ];
    Ok(RunOutput {
        csv: csv_table("a,fund,sq,h,l_one,good_proxy", [row]),
        results: json!({
            "a": a.a,
            "fund": dec.fund,
            "sq": dec.sq,
            "h": h,
            "l_one": real_value(l1),
            "good_proxy": good,
        }),
    })
}

pub fn agood(a: &AgoodArgs, caps: &Caps) -> Result<RunOutput> {
    caps.check_sweep(a.x as u64)?;
    let r = arith::agood_compare(a.a, a.x, a.small_cutoff, a.terms)?;
    let row = vec![
        r.a.to_string(),
        r.fund.to_string(),
        r.sq.to_string(),
        fmt_real(r.x),
        fmt_real(r.small_cutoff),
        fmt_real(r.lhs),
        fmt_real(r.m1),
        fmt_real(r.m2),
        fmt_real(r.ratio_m1),
        fmt_real(r.ratio_m2),
    ];
    Ok(RunOutput {
        csv: csv_table("a,fund,sq,x,small_cutoff,lhs,m1,m2,ratio_m1,ratio_m2", [row]),
        results: json!({
            "a": r.a,
            "fund": r.fund,
            "sq": r.sq,
            "x": real_value(r.x),
            "small_cutoff": real_value(r.small_cutoff),
            "lhs": real_value(r.lhs),
            "m1": real_value(r.m1),
            "m2": real_value(r.m2),
            "ratio_m1": real_value(r.ratio_m1),
            "ratio_m2": real_value(r.ratio_m2),
        }),
    })
}

pub fn primes(a: &PrimesArgs, caps: &Caps) -> Result<RunOutput> {
    caps.check_sweep(a.y)?;
    if a.count_only {
        let count = arith::prime_count(a.y);
        Ok(RunOutput {
            csv: csv_table("y,count", [vec![a.y.to_string(), count.to_string()]]),
            results: json!({"y": a.y, "count": count}),
        })
    } else {
        let primes = arith::primes_up_to(a.y);
        let rows: Vec<Vec<String>> = primes.iter().map(|p| vec![p.to_string()]).collect();
        Ok(RunOutput {
            csv: csv_table("p", rows),
            results: json!({"y": a.y, "primes": primes}),
        })
    }
}

fn rep_report_row(r: &sievelab::RepReport) -> Vec<String> {
    vec![
        r.a.to_string(),
        r.u.to_string(),
        r.x.to_string(),
        r.count.to_string(),
        fmt_real(r.euler),
        fmt_real(r.bound),
        fmt_real(r.ratio),
    ]
}

fn rep_report_json(r: &sievelab::RepReport) -> Value {
    json!({
        "a": r.a,
        "u": r.u,
        "X": r.x,
        "count": r.count,
        "euler": real_value(r.euler),
        "bound": real_value(r.bound),
        "ratio": real_value(r.ratio),
    })
}

const REP_HEADER: &str = "a,u,X,count,euler,bound,ratio";

pub fn sieve_reps(a: &SieveRepsArgs, caps: &Caps) -> Result<RunOutput> {
    caps.check_sweep(a.x)?;
    if a.a < 1 || a.u < 1 || a.a > a.x {
        return Err(UsageError("need 1 <= a <= X and u >= 1".into()).into());
    }
    let r = sievelab::count_prime_reps(a.a, a.u, a.x);
    Ok(RunOutput {
        csv: csv_table(REP_HEADER, [rep_report_row(&r)]),
        results: rep_report_json(&r),
    })
}

pub fn sieve_agg(a: &SieveAggArgs, seed: u64, caps: &Caps) -> Result<RunOutput> {
    caps.check_sweep(a.x)?;
    let spec = match (&a.a_file, a.random, &a.construction) {
        (Some(path), None, None) => {
            let text = std::fs::read_to_string(path)?;
            let mut values = Vec::new();
            for line in text.lines() {
                let line = line.split('#').next().unwrap_or("");
                for tok in line.split_whitespace() {
                    values.push(tok.parse::<u64>().map_err(|_| {
                        UsageError(format!("bad integer {tok:?} in {}", path.display()))
                    })?);
                }
            }
            SubsetSpec::Explicit(values)
        }
        (None, Some(size), None) => SubsetSpec::Random { size },
        (None, None, Some(c)) => {
            let (z, dcount) = c
                .split_once(',')
                .and_then(|(z, d)| Some((z.trim().parse().ok()?, d.trim().parse().ok()?)))
                .ok_or_else(|| UsageError(format!("--construction wants \"Z,DCOUNT\", got {c:?}")))?;
            SubsetSpec::Construction { z, d_count: dcount }
        }
        _ => {
            return Err(UsageError(
                "pick exactly one of --a-file, --random, --construction".into(),
            )
            .into())
        }
    };
    let (aggregate, per_a) = sievelab::theorem2_experiment(&spec, a.u, a.x, seed)?;

    let mut csv = csv_table(REP_HEADER, per_a.iter().map(rep_report_row));
    csv.push('\n');
    let agg_row = vec![
        aggregate.a_size.to_string(),
        aggregate.u.to_string(),
        aggregate.x.to_string(),
        aggregate.represented.to_string(),
        aggregate.represented_m_pos.to_string(),
        fmt_real(aggregate.theorem_rhs),
        fmt_real(aggregate.ratio),
    ];
    csv.push_str(&csv_table(
        "a_size,u,X,represented,represented_m_pos,theorem_rhs,ratio",
        [agg_row],
    ));

    Ok(RunOutput {
        csv,
        results: json!({
            "aggregate": {
                "a_size": aggregate.a_size,
                "u": aggregate.u,
                "X": aggregate.x,
                "represented": aggregate.represented,
                "represented_m_pos": aggregate.represented_m_pos,
                "theorem_rhs": real_value(aggregate.theorem_rhs),
                "ratio": real_value(aggregate.ratio),
                "m_convention": aggregate.m_convention,
            },
            "per_a": per_a.iter().map(rep_report_json).collect::<Vec<_>>(),
        }),
    })
}

pub fn optimality(a: &OptimalityArgs, caps: &Caps) -> Result<RunOutput> {
    caps.check_sweep(a.x)?;
    let z = a.z.unwrap_or_else(|| optimality::default_z(a.x));
    let params = ConstructionParams { x: a.x, z, d_count: a.dcount };
    let report = optimality::run_construction(&params)?;
    if let Some(w) = &report.warning {
        eprintln!("warning: {w}");
    }

    let chosen_rows: Vec<Vec<String>> = report
        .chosen
        .iter()
        .map(|&(d, l)| vec![d.to_string(), fmt_real(l)])
        .collect();
    let mut csv = csv_table("d,l_one", chosen_rows);
    csv.push('\n');
    let m = &report.moments;
    let summary = vec![
        report.params.x.to_string(),
        report.params.z.to_string(),
        report.params.d_count.to_string(),
        report.a_size.to_string(),
        fmt_real(report.a_size_normalized),
        m.sum_r.to_string(),
        m.sum_r2.to_string(),
        m.represented.to_string(),
        m.cs_bound.to_string(),
        report.pi_half_x.to_string(),
        fmt_real(report.represented_fraction),
        fmt_real(report.sum_r_normalized),
        fmt_real(report.sum_r2_normalized),
    ];
    csv.push_str(&csv_table(
        "x,z,d_count,a_size,a_size_normalized,sum_r,sum_r2,represented,cs_bound,\
         pi_half_x,represented_fraction,sum_r_normalized,sum_r2_normalized",
        [summary],
    ));

    Ok(RunOutput {
        csv,
        results: json!({
            "x": report.params.x,
            "z": report.params.z,
            "d_count": report.params.d_count,
            "chosen": report.chosen.iter()
                .map(|&(d, l)| json!({"d": d, "l_one": real_value(l)}))
                .collect::<Vec<_>>(),
            "a_size": report.a_size,
            "a_size_normalized": real_value(report.a_size_normalized),
            "sum_r": m.sum_r,
            "sum_r2": m.sum_r2,
            "represented": m.represented,
            "cs_bound": m.cs_bound,
            "pi_half_x": report.pi_half_x,
            "represented_fraction": real_value(report.represented_fraction),
            "sum_r_normalized": real_value(report.sum_r_normalized),
            "sum_r2_normalized": real_value(report.sum_r2_normalized),
            "warning": report.warning,
        }),
    })
}
