use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use stieltjes_core::asymptotics::{
    gamma_knessl_coffey, gamma_leading_order, gamma_m_term, gamma_one_term,
};
use stieltjes_core::oracle::{
    gamma_oracle, i_n, mu_integral, mu_n, verify_hurwitz_identity, verify_integral_identity,
    QuadratureConfig, N_MAX_GAMMA,
};
use stieltjes_core::reference::{
    load_fixture_file, load_large_errors, load_reference, relative_error, ReferenceRow,
};
use stieltjes_core::special::factorial;
use stieltjes_core::{Error, SciValue, StieltjesEstimate};

use crate::args::{Common, ComputeArgs, MethodArg, ScanArgs, TableArgs, VerifyArgs};
use crate::output::{float, index, printed, sci, value_cells, Table};
use crate::CliError;

/// Indices quoted as sign-change checkpoints next to 137.
pub const CHECKPOINTS: [f64; 2] = [137.017, 137.018];

/// Threshold for listing a row in the large-error table.
const LARGE_ERROR: f64 = 0.05;

const RECORD_COLUMNS: [&str; 8] = [
    "n",
    "method",
    "M",
    "value",
    "sign",
    "log10_magnitude",
    "relative_error_vs_reference",
    "runtime_ms",
];

/// Best known exact values by index: embedded tables first, then fixtures.
struct References(BTreeMap<u64, SciValue>);

impl References {
    fn load(common: &Common) -> Result<Self, CliError> {
        let mut map = BTreeMap::new();
        if let Some(path) = &common.fixtures {
            for r in load_fixture_file(path).map_err(CliError::usage)? {
                map.insert(r.n, r.exact()?);
            }
        }
        for r in load_reference()? {
            map.insert(r.n, r.exact()?);
        }
        Ok(Self(map))
    }

    fn get(&self, n: f64) -> Option<&SciValue> {
        if n.fract() == 0.0 && n >= 0.0 {
            self.0.get(&(n as u64))
        } else {
            None
        }
    }
}

fn integer_n(n: f64, method: &str) -> Result<u64, CliError> {
    if n.fract() != 0.0 || !(0.0..=1e15).contains(&n) {
        return Err(CliError::Usage(format!(
            "--method {method} needs a non-negative integer --n, got {n}"
        )));
    }
    Ok(n as u64)
}

fn evaluate(
    method: MethodArg,
    n: f64,
    terms: usize,
    shared_saddle: bool,
) -> Result<StieltjesEstimate, CliError> {
    let r = match method {
        MethodArg::OneTerm => gamma_one_term(n),
        MethodArg::MTerm => gamma_m_term(integer_n(n, "m-term")?, terms, shared_saddle),
        MethodArg::Leading => gamma_leading_order(integer_n(n, "leading")?),
        MethodArg::Kc => gamma_knessl_coffey(integer_n(n, "kc")?),
        MethodArg::Oracle => {
            let k = integer_n(n, "oracle")?;
            if k > N_MAX_GAMMA as u64 {
                return Err(CliError::Usage(format!(
                    "--method oracle supports n <= {N_MAX_GAMMA}"
                )));
            }
            gamma_oracle(k as usize, &QuadratureConfig::default())
        }
    };
    Ok(r?)
}

fn record(
    est: &StieltjesEstimate,
    refs: &References,
    runtime_ms: Option<f64>,
) -> Result<Vec<Option<String>>, CliError> {
    let [value, sign, log10] = value_cells(&est.value);
    let rel = match refs.get(est.n) {
        Some(exact) => Some(float(relative_error(&est.value, exact)?.0)),
        None => None,
    };
    Ok(vec![
        Some(index(est.n)),
        Some(est.method.as_str().to_string()),
        Some(est.terms.to_string()),
        value,
        sign,
        log10,
        rel,
        runtime_ms.map(|t| format!("{t:.3}")),
    ])
}

fn timed<T>(on: bool, f: impl FnOnce() -> T) -> (T, Option<f64>) {
    let start = Instant::now();
    let out = f();
    (out, on.then(|| start.elapsed().as_secs_f64() * 1e3))
}

pub fn compute(args: &ComputeArgs) -> Result<Table, CliError> {
    if args.terms == 0 {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    if args.method != MethodArg::MTerm && args.terms != 3 {
        return Err(CliError::Usage(
            "--terms applies only to --method m-term".into(),
        ));
    }
    if args.common.shared_saddle && args.method != MethodArg::MTerm {
        return Err(CliError::Usage(
            "--shared-saddle applies only to --method m-term".into(),
        ));
    }
    let refs = References::load(&args.common)?;
    let (est, ms) = timed(args.common.timing, || {
        evaluate(args.method, args.n, args.terms, args.common.shared_saddle)
    });
    let mut t = Table::new(&RECORD_COLUMNS);
    t.push(record(&est?, &refs, ms)?);
    Ok(t)
}

fn scan_grid(args: &ScanArgs) -> Result<Vec<f64>, CliError> {
    let lo = args.lo.unwrap_or(args.center - 0.05);
    let hi = args.hi.unwrap_or(args.center + 0.05);
    let ordered = lo < hi && args.step > 0.0;
    if !ordered {
        return Err(CliError::Usage("scan needs lo < hi and step > 0".into()));
    }
    let count = ((hi - lo) / args.step + 1e-9).floor() as u64;
    if count > 1_000_000 {
        return Err(CliError::Usage(format!(
            "scan grid of {count} points is too large"
        )));
    }
    // snap to the printed index so each value belongs to the n shown
    let snap = |x: f64| index(x).parse::<f64>().unwrap();
    let mut grid: Vec<f64> = (0..=count)
        .map(|i| snap(lo + i as f64 * args.step))
        .collect();
    grid.push(snap(args.center));
    grid.extend(CHECKPOINTS.iter().filter(|&&c| c >= lo && c <= hi));
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    Ok(grid)
}

pub fn scan(args: &ScanArgs) -> Result<Table, CliError> {
    if args.common.shared_saddle {
        return Err(CliError::Usage(
            "scan uses the one-term formula; --shared-saddle does not apply".into(),
        ));
    }
    let grid = scan_grid(args)?;
    if grid[0] < 2.0 {
        return Err(CliError::Usage("scan needs n >= 2".into()));
    }
    let refs = References::load(&args.common)?;
    let timing = args.common.timing;
    let rows: Vec<Result<Vec<Option<String>>, CliError>> = grid
        .par_iter()
        .map(|&n| {
            let (est, ms) = timed(timing, || gamma_one_term(n));
            record(&est?, &refs, ms)
        })
        .collect();
    let mut t = Table::new(&RECORD_COLUMNS);
    for r in rows {
        t.push(r?);
    }
    Ok(t)
}

fn computed(
    est: Result<StieltjesEstimate, Error>,
    paper_format: bool,
) -> Result<Option<String>, CliError> {
    let v = est?.value;
    Ok(Some(if paper_format { printed(&v) } else { sci(&v) }))
}

fn exact_cell(r: &ReferenceRow, paper_format: bool) -> Result<Option<String>, CliError> {
    Ok(Some(if paper_format {
        r.gamma_exact.clone()
    } else {
        sci(&r.exact()?)
    }))
}

fn value_table(args: &TableArgs, rows: Vec<ReferenceRow>) -> Result<Table, CliError> {
    let strict = args.strict || args.paper_format;
    let pf = args.paper_format;
    let shared = args.common.shared_saddle;
    let terms = args.terms;
    let built: Vec<Result<Vec<Option<String>>, CliError>> = rows
        .par_iter()
        .map(|r| {
            let kc = if strict && r.knessl_coffey.is_none() {
                None
            } else {
                computed(gamma_knessl_coffey(r.n), pf)?
            };
            Ok(vec![
                Some(r.n.to_string()),
                exact_cell(r, pf)?,
                computed(gamma_m_term(r.n, terms, shared), pf)?,
                computed(gamma_one_term(r.n as f64), pf)?,
                kc,
            ])
        })
        .collect();
    let mut t = Table::new(&["n", "exact", "m_term", "one_term", "knessl_coffey"]);
    for r in built {
        t.push(r?);
    }
    Ok(t)
}

/// Exact values for the large-error survey: the oracle where no table
/// value exists up to its range, then the tables, then fixtures.
fn survey_exact(common: &Common) -> Result<BTreeMap<u64, SciValue>, CliError> {
    let mut exact = BTreeMap::new();
    let cfg = QuadratureConfig::default();
    let oracle: Vec<(u64, Result<StieltjesEstimate, Error>)> = (2..=N_MAX_GAMMA as u64)
        .into_par_iter()
        .map(|n| (n, gamma_oracle(n as usize, &cfg)))
        .collect();
    for (n, est) in oracle {
        exact.insert(n, est?.value);
    }
    for r in load_reference()? {
        exact.insert(r.n, r.exact()?);
    }
    if let Some(path) = &common.fixtures {
        for r in load_fixture_file(path).map_err(CliError::usage)? {
            exact.insert(r.n, r.exact()?);
        }
    }
    Ok(exact)
}

fn large_error_table(args: &TableArgs) -> Result<Table, CliError> {
    let listed: BTreeMap<u64, String> = load_large_errors()?
        .into_iter()
        .map(|r| (r.n, r.percent))
        .collect();
    let exact: Vec<(u64, SciValue)> = survey_exact(&args.common)?.into_iter().collect();
    let shared = args.common.shared_saddle;
    let terms = args.terms;
    let pf = args.paper_format;
    let rows: Vec<Result<Option<Vec<Option<String>>>, CliError>> = exact
        .par_iter()
        .map(|(n, ex)| {
            let approx = gamma_m_term(*n, terms, shared)?.value;
            let (rel, _) = relative_error(&approx, ex)?;
            if rel.abs() <= LARGE_ERROR {
                return Ok(None);
            }
            Ok(Some(vec![
                Some(n.to_string()),
                Some(if pf { printed(ex) } else { sci(ex) }),
                Some(if pf { printed(&approx) } else { sci(&approx) }),
                Some(format!("{:.2}", 100.0 * rel)),
                listed.get(n).cloned(),
            ]))
        })
        .collect();
    let mut t = Table::new(&[
        "n",
        "exact",
        "m_term",
        "relative_error_percent",
        "printed_percent",
    ]);
    for r in rows {
        if let Some(row) = r? {
            t.push(row);
        }
    }
    Ok(t)
}

pub fn table(args: &TableArgs) -> Result<Table, CliError> {
    if args.terms == 0 {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    let rows = load_reference()?;
    match args.which {
        1 => value_table(args, rows.into_iter().filter(|r| r.n <= 20).collect()),
        2 => value_table(args, rows.into_iter().filter(|r| r.n > 20).collect()),
        _ => large_error_table(args),
    }
}

struct Check {
    name: &'static str,
    args: String,
    residual: Result<f64, Error>,
    tolerance: f64,
}

fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

pub fn verify(_args: &VerifyArgs) -> Result<(Table, bool), CliError> {
    let cfg = QuadratureConfig::default();
    let mut checks = Vec::new();
    for s in [0.5, 2.0, 3.0] {
        checks.push(Check {
            name: "integral_identity",
            args: format!("s={s}"),
            residual: verify_integral_identity(Complex64::new(s, 0.0), &cfg),
            tolerance: 1e-10,
        });
    }
    for (s, a) in [(2.0, 1.0), (2.0, 0.5), (3.0, 0.25)] {
        checks.push(Check {
            name: "hurwitz_identity",
            args: format!("s={s};a={a}"),
            residual: verify_hurwitz_identity(s, a, &cfg),
            tolerance: 1e-8,
        });
    }
    checks.push(Check {
        name: "mu_integral",
        args: String::new(),
        residual: mu_integral(&cfg).map(|v| (v.value - 0.5).abs()),
        tolerance: 1e-10,
    });
    for n in [0usize, 1, 4] {
        let residual = (|| {
            let lhs = i_n(n, &cfg)?.value / factorial(n)?;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            Ok(rel_diff(lhs, sign * mu_n(n, &cfg)?.value))
        })();
        checks.push(Check {
            name: "i_n_relation",
            args: format!("n={n}"),
            residual,
            tolerance: 1e-10,
        });
    }
    let mut t = Table::new(&["check", "args", "residual", "tolerance", "status"]);
    let mut all_ok = true;
    for c in checks {
        let (res, ok) = match &c.residual {
            Ok(r) => (float(*r), *r <= c.tolerance),
            Err(e) => (format!("error: {e}"), false),
        };
        all_ok &= ok;
        t.push(vec![
            Some(c.name.to_string()),
            (!c.args.is_empty()).then_some(c.args),
            Some(res),
            Some(float(c.tolerance)),
            Some(if ok { "pass" } else { "fail" }.to_string()),
        ]);
    }
    Ok((t, all_ok))
}
