use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use hyperjac_core::koszul::{random_system_containing_jacobian, CellOutcome};
use hyperjac_core::sampling::{
    default_bpf_bound, random_bpf_subspace, random_smooth_hypersurface, random_subspace,
    rng_from_seed, DEFAULT_ATTEMPTS,
};
use hyperjac_core::yukawa::random_chain_instance;
use hyperjac_core::{
    abelian_sweep_table, bpf_check, certify, genus_threshold, green_scan, hodge_from_ring,
    jacobian_koszul_check, middle_exactness, sweep_criterion, yukawa_chain, yukawa_chain_any,
    BpfStatus, CriterionInput, CriterionReport, Error, GradedSubspace, GreenScanConfig,
    Hypersurface, JacobianRing, KoszulReport, ModuleKind, PolyRing, Polynomial, PrimeField,
    StepValue, YukawaChainReport,
};
use hyperjac_core::criteria::{curve_moduli, genus_threshold_closed_form, SWEEP_CSV_HEADER};

use crate::args::{
    BpfArgs, Command, FormArgs, Format, GreenArgs, HilbertArgs, KoszulArgs, ModuleArg, SweepArgs,
    YukawaArgs,
};

/// Everything a subcommand produces: the text for stdout, whether its assertions held,
/// and the prime-independent results compared by `--cross-check`.
pub struct Run {
    pub text: String,
    pub ok: bool,
    pub fingerprint: Value,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Math(String),
    Budget(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Math(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Math(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::SizeBudget { .. } | Error::ParameterTooLarge(_) => Failure::Budget(msg),
            Error::NotSmooth(_) | Error::SamplingFailed { .. } | Error::UndefinedLevel => {
                Failure::Math(msg)
            }
            _ => Failure::Usage(msg),
        }
    }
}

type Out = Result<Run, Failure>;

#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub field: PrimeField,
    pub budget: u128,
    pub seed: u64,
    pub format: Option<Format>,
}

impl Ctx {
    fn ring(&self, n: usize) -> Result<PolyRing, Failure> {
        Ok(PolyRing::new(n, self.field)?.with_budget(self.budget))
    }

    fn prime(&self) -> u32 {
        self.field.modulus()
    }
}

pub fn run(cmd: &Command, ctx: &Ctx) -> Out {
    match cmd {
        Command::HodgeNumbers(a) => hodge_numbers(a, ctx),
        Command::Hilbert(a) => hilbert(a, ctx),
        Command::GreenScan(a) => green(a, ctx),
        Command::KoszulCheck(a) => koszul(a, ctx),
        Command::Sweep(a) => sweep(a, ctx),
        Command::YukawaChain(a) => yukawa(a, ctx),
        Command::BpfCheck(a) => bpf(a, ctx),
    }
}

fn json_text<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn csv_text(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.join(",") + "\n").collect()
}

/// Left-aligned columns separated by two spaces.
fn table_text(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(j, c)| format!("{c:<w$}", w = widths[j]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn header(cols: &str) -> Vec<String> {
    cols.split(',').map(String::from).collect()
}

fn load_form(a: &FormArgs, ctx: &Ctx) -> Result<(Hypersurface, JacobianRing), Failure> {
    let ring = ctx.ring(a.d + 2)?;
    let (x, jr) = if a.random_smooth {
        let mut rng = rng_from_seed(ctx.seed);
        random_smooth_hypersurface(ring, a.degree, &mut rng, DEFAULT_ATTEMPTS)?
    } else {
        let x = if a.fermat {
            Hypersurface::fermat(ring, a.degree)?
        } else {
            let text = match (&a.f, &a.f_file) {
                (Some(t), _) => t.clone(),
                (None, Some(path)) => std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                (None, None) => unreachable!("clap requires a source"),
            };
            let f = Polynomial::parse(&text, a.d + 2, ctx.field)?;
            let x = Hypersurface::new(ring, f)?;
            if x.degree() != a.degree {
                return Err(Failure::Usage(format!(
                    "equation has degree {}, --N is {}",
                    x.degree(),
                    a.degree
                )));
            }
            x
        };
        let jr = JacobianRing::new(&x)?;
        (x, jr)
    };
    Ok((x, jr))
}

#[derive(Serialize)]
struct HodgeOut {
    d: usize,
    #[serde(rename = "N")]
    degree: usize,
    sigma: i64,
    hilbert: Vec<usize>,
    /// `[p, q, h]` by decreasing `p`.
    hodge: Vec<[usize; 3]>,
    smooth: bool,
    prime: u32,
    seed: u64,
    f: String,
}

fn hilbert_list(jr: &JacobianRing, last: usize) -> Result<Vec<usize>, Failure> {
    Ok((0..=last)
        .map(|k| jr.hilbert(k as i64))
        .collect::<Result<Vec<_>, _>>()?)
}

fn hodge_numbers(a: &FormArgs, ctx: &Ctx) -> Out {
    let (x, jr) = load_form(a, ctx)?;
    let sigma = x.socle_degree();
    let smooth = certify(&jr).is_smooth();
    let hodge: Vec<[usize; 3]> = if smooth {
        hodge_from_ring(&jr)?
            .entries
            .iter()
            .map(|e| [e.p, e.q, e.h])
            .collect()
    } else {
        Vec::new()
    };
    let out = HodgeOut {
        d: x.dim(),
        degree: x.degree(),
        sigma,
        hilbert: hilbert_list(&jr, (sigma + 1).max(0) as usize)?,
        hodge,
        smooth,
        prime: ctx.prime(),
        seed: ctx.seed,
        f: x.equation().to_string(),
    };
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&out),
        f => {
            let mut rows = vec![header("p,q,h")];
            rows.extend(out.hodge.iter().map(|e| e.iter().map(|v| v.to_string()).collect()));
            if f == Format::Csv {
                csv_text(&rows)
            } else {
                let mut s = format!(
                    "d={} N={} sigma={} smooth={} prime={} seed={}\n",
                    out.d, out.degree, out.sigma, out.smooth, out.prime, out.seed
                );
                s.push_str(&table_text(&rows));
                s
            }
        }
    };
    if !smooth {
        eprintln!("not certified smooth: Hodge numbers are not defined");
    }
    Ok(Run {
        text,
        ok: smooth,
        fingerprint: json!({ "hilbert": out.hilbert, "hodge": out.hodge, "smooth": smooth }),
    })
}

fn hilbert(a: &HilbertArgs, ctx: &Ctx) -> Out {
    let (x, jr) = load_form(&a.form, ctx)?;
    let last = match a.max_degree {
        Some(m) => m,
        None => (x.socle_degree() + 1).max(0) as usize,
    };
    let jr = if last > jr.max_degree() {
        JacobianRing::with_max_degree(&x, last)?
    } else {
        jr
    };
    let h = hilbert_list(&jr, last)?;
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&json!({
            "d": x.dim(),
            "N": x.degree(),
            "sigma": x.socle_degree(),
            "hilbert": h,
            "prime": ctx.prime(),
            "seed": ctx.seed,
            "f": x.equation().to_string(),
        })),
        f => {
            let mut rows = vec![header("k,dim")];
            rows.extend(h.iter().enumerate().map(|(k, v)| vec![k.to_string(), v.to_string()]));
            if f == Format::Csv {
                csv_text(&rows)
            } else {
                table_text(&rows)
            }
        }
    };
    Ok(Run {
        text,
        ok: true,
        fingerprint: json!(h),
    })
}

fn green(a: &GreenArgs, ctx: &Ctx) -> Out {
    let cfg = GreenScanConfig {
        n: a.n,
        degree: a.degree,
        codims: a.codim.0.clone(),
        a_max: a.amax,
        s_max: a.smax,
        trials: a.trials,
        skip_oversize: a.skip_oversize,
    };
    let mut rng = rng_from_seed(ctx.seed);
    let scan = green_scan(ctx.field, &cfg, ctx.budget, &mut rng)?;
    let text = match ctx.format.unwrap_or(Format::Csv) {
        Format::Json => json_text(&json!({
            "prime": scan.prime,
            "seed": ctx.seed,
            "violations": scan.violations(),
            "evaluated": scan.evaluated(),
            "skipped": scan.skipped(),
            "unsampled": scan.unsampled(),
            "cells": scan.cells,
        })),
        Format::Csv => format!("# prime={} seed={}\n{}", scan.prime, ctx.seed, scan.to_csv()),
        Format::Table => {
            let rows: Vec<Vec<String>> = scan
                .to_csv()
                .lines()
                .map(|l| l.split(',').map(String::from).collect())
                .collect();
            format!("prime={} seed={}\n{}", scan.prime, ctx.seed, table_text(&rows))
        }
    };
    eprintln!(
        "{} cells: {} evaluated, {} skipped, {} unsampled, {} defective in range",
        scan.cells.len(),
        scan.evaluated(),
        scan.skipped(),
        scan.unsampled(),
        scan.violations()
    );
    let fingerprint = scan
        .cells
        .iter()
        .map(|c| match &c.outcome {
            CellOutcome::Evaluated(r) => {
                json!([c.codim, c.trial, c.a, c.s, r.rank_in, r.kernel_out, r.exact])
            }
            _ => json!([c.codim, c.trial, c.a, c.s, null, null, null]),
        })
        .collect();
    Ok(Run {
        text,
        ok: scan.violations() == 0,
        fingerprint: Value::Array(fingerprint),
    })
}

fn report_rows(r: &KoszulReport) -> Vec<Vec<String>> {
    vec![
        header("module,a,s,w,rank_in,kernel_out,defect,exact,method"),
        vec![
            r.module.clone(),
            r.a.to_string(),
            r.s.to_string(),
            r.w.to_string(),
            r.rank_in.to_string(),
            r.kernel_out.to_string(),
            r.defect.to_string(),
            r.exact.to_string(),
            serde_json::to_value(r.method)
                .ok()
                .and_then(|v| v.as_str().map(String::from))
                .unwrap_or_default(),
        ],
    ]
}

fn koszul(a: &KoszulArgs, ctx: &Ctx) -> Out {
    let mut rng = rng_from_seed(ctx.seed);
    let (out, report, predicted) = match a.module {
        ModuleArg::S => {
            let n = a.n.expect("required by clap");
            let deg_a = a.a.expect("required by clap");
            let ring = ctx.ring(n)?;
            let (w, bpf_degree) =
                random_bpf_subspace(ring, a.degree, a.codim, &mut rng, DEFAULT_ATTEMPTS)?;
            let r = middle_exactness(ModuleKind::Polynomial, &w, deg_a, a.s)?;
            let bound = deg_a >= (a.s + a.codim) as i64;
            let out = json!({
                "module": "S",
                "n": n,
                "N": a.degree,
                "codim": a.codim,
                "bpf_degree": bpf_degree,
                "bound_holds": bound,
                "report": r,
                "prime": ctx.prime(),
                "seed": ctx.seed,
            });
            (out, r, bound)
        }
        ModuleArg::Jacobian => {
            let d = a.d.expect("required by clap");
            let p = a.p.expect("required by clap");
            let ring = ctx.ring(d + 2)?;
            let (x, jr) = if a.fermat {
                let x = Hypersurface::fermat(ring, a.degree)?;
                let jr = JacobianRing::new(&x)?;
                (x, jr)
            } else {
                random_smooth_hypersurface(ring, a.degree, &mut rng, DEFAULT_ATTEMPTS)?
            };
            let w = random_system_containing_jacobian(&jr, a.codim, &mut rng)?;
            let rep = jacobian_koszul_check(&jr, &w, p, a.s)?;
            let predicted = rep.green_range && rep.transfer_range;
            let out = json!({
                "module": "R_f",
                "d": d,
                "N": a.degree,
                "codim": a.codim,
                "p": p,
                "green_range": rep.green_range,
                "transfer_range": rep.transfer_range,
                "report": rep.report,
                "prime": ctx.prime(),
                "seed": ctx.seed,
                "f": x.equation().to_string(),
            });
            (out, rep.report, predicted)
        }
    };
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&out),
        Format::Csv => csv_text(&report_rows(&report)),
        Format::Table => table_text(&report_rows(&report)),
    };
    Ok(Run {
        text,
        ok: !predicted || report.exact,
        fingerprint: json!([report.rank_in, report.kernel_out, report.exact]),
    })
}

#[derive(Serialize)]
struct Threshold {
    d: u64,
    g: u64,
    #[serde(rename = "C")]
    moduli: u64,
    #[serde(rename = "N_min")]
    n_min: u64,
    closed_form: u64,
    agree: bool,
}

fn sweep(a: &SweepArgs, ctx: &Ctx) -> Out {
    if a.find_threshold {
        let g = a.genus.expect("required by clap");
        let n_min = genus_threshold(a.d, g)?;
        let closed_form = genus_threshold_closed_form(a.d, g);
        let t = Threshold {
            d: a.d,
            g,
            moduli: curve_moduli(g),
            n_min,
            closed_form,
            agree: n_min == closed_form,
        };
        let rows = vec![
            header("d,g,C,N_min,closed_form"),
            vec![
                t.d.to_string(),
                t.g.to_string(),
                t.moduli.to_string(),
                t.n_min.to_string(),
                t.closed_form.to_string(),
            ],
        ];
        let text = match ctx.format.unwrap_or(Format::Table) {
            Format::Json => json_text(&t),
            Format::Csv => csv_text(&rows),
            Format::Table => table_text(&rows),
        };
        return Ok(Run {
            text,
            ok: t.agree,
            fingerprint: Value::Null,
        });
    }
    let reports: Vec<CriterionReport> = if a.abelian {
        abelian_sweep_table(a.d)?
    } else {
        let missing = |what: &str| Failure::Usage(format!("sweep needs {what}"));
        let degree = a.degree.ok_or_else(|| missing("--N"))?;
        let (r, c) = match a.genus {
            Some(0) => return Err(Failure::Usage("genus must be >= 1".into())),
            Some(g) => (1, curve_moduli(g)),
            None => (
                a.r.ok_or_else(|| missing("--r"))?,
                a.moduli.ok_or_else(|| missing("--C"))?,
            ),
        };
        vec![sweep_criterion(CriterionInput::new(a.d, degree, r, c)?)]
    };
    let text = match ctx.format.unwrap_or(Format::Table) {
        Format::Json => json_text(&reports),
        f => {
            let mut rows = vec![header(SWEEP_CSV_HEADER)];
            rows.extend(
                reports
                    .iter()
                    .map(|r| r.csv_row().split(',').map(String::from).collect()),
            );
            if f == Format::Csv {
                csv_text(&rows)
            } else {
                table_text(&rows)
            }
        }
    };
    Ok(Run {
        text,
        ok: true,
        fingerprint: Value::Null,
    })
}

#[derive(Serialize)]
struct YukawaOut {
    #[serde(flatten)]
    report: YukawaChainReport,
    k: &'static str,
    prime: u32,
    seed: u64,
    f: String,
}

fn step_value(v: &StepValue) -> String {
    match v {
        StepValue::Int(i) => i.to_string(),
        StepValue::Bool(b) => b.to_string(),
        StepValue::Text(t) => t.clone(),
    }
}

fn yukawa(a: &YukawaArgs, ctx: &Ctx) -> Out {
    if a.d == 0 {
        return Err(Failure::Usage("yukawa-chain needs d >= 1".into()));
    }
    if a.d >= 3 && !a.allow_large {
        return Err(Failure::Budget(format!(
            "d = {} builds matrices in degree {}; pass --allow-large to run it",
            a.d,
            2 * a.d + 4
        )));
    }
    let ring = ctx.ring(a.d + 2)?;
    let mut rng = rng_from_seed(ctx.seed);
    let (x, jr, k) = random_chain_instance(ring, &mut rng, a.attempts)?;
    let (report, k_label) = if a.k_equals_jacobian {
        (yukawa_chain_any(&jr, &jr.jacobian_piece(a.d + 2)?)?, "jacobian")
    } else {
        (yukawa_chain(&jr, &k)?, "random_hyperplane")
    };
    let fingerprint = json!(report
        .steps
        .iter()
        .map(|s| json!([s.step, s.got, s.ok]))
        .collect::<Vec<_>>());
    let ok = report.all_ok;
    let out = YukawaOut {
        report,
        k: k_label,
        prime: ctx.prime(),
        seed: ctx.seed,
        f: x.equation().to_string(),
    };
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&out),
        f => {
            let mut rows = vec![header("step,expected,got,ok")];
            rows.extend(out.report.steps.iter().map(|s| {
                vec![
                    s.step.clone(),
                    s.expected.clone(),
                    step_value(&s.got),
                    s.ok.to_string(),
                ]
            }));
            if f == Format::Csv {
                csv_text(&rows)
            } else {
                let mut s = String::new();
                let _ = writeln!(
                    s,
                    "d={} N={} sigma={} dim K={} prime={} seed={}",
                    out.report.d, out.report.degree, out.report.sigma, out.report.k_dim,
                    out.prime, out.seed
                );
                s.push_str(&table_text(&rows));
                s
            }
        }
    };
    Ok(Run {
        text,
        ok,
        fingerprint,
    })
}

fn bpf(a: &BpfArgs, ctx: &Ctx) -> Out {
    let ring = ctx.ring(a.n)?;
    let w = match &a.forms {
        Some(text) => {
            let polys = text
                .split(';')
                .filter(|t| !t.trim().is_empty())
                .map(|t| Polynomial::parse(t, a.n, ctx.field))
                .collect::<Result<Vec<_>, _>>()?;
            GradedSubspace::from_polys(ring, a.degree, &polys)?
        }
        None => random_subspace(ring, a.degree, a.codim, &mut rng_from_seed(ctx.seed))?,
    };
    let m_max = a
        .m_max
        .unwrap_or_else(|| default_bpf_bound(a.n, a.degree).max(a.degree));
    let status = bpf_check(&w, m_max)?;
    let (label, degree) = match status {
        BpfStatus::Verified(m) => ("verified", Some(m)),
        BpfStatus::Unknown => ("unknown", None),
    };
    let out = json!({
        "n": a.n,
        "N": a.degree,
        "dim": w.dim(),
        "codim": w.codim(),
        "m_max": m_max,
        "status": label,
        "degree": degree,
        "prime": ctx.prime(),
        "seed": ctx.seed,
    });
    let rows = vec![
        header("n,N,dim,codim,m_max,status,degree"),
        vec![
            a.n.to_string(),
            a.degree.to_string(),
            w.dim().to_string(),
            w.codim().to_string(),
            m_max.to_string(),
            label.to_string(),
            degree.map(|m| m.to_string()).unwrap_or_default(),
        ],
    ];
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&out),
        Format::Csv => csv_text(&rows),
        Format::Table => table_text(&rows),
    };
    Ok(Run {
        text,
        ok: status.is_verified(),
        fingerprint: json!([w.dim(), label, degree]),
    })
}
