//! Embedded reference values and the error metrics used against them.
//!
//! Values are kept as the printed decimal strings and parsed on load.
//! Two printed entries at `n = 137` are transcription errors; the corrected
//! values are carried alongside and used by [`ReferenceRow::exact`].

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::asymptotics::Method;
use crate::error::{Error, Result};
use crate::scaled::SciValue;

const TABLES: &str = include_str!("data/tables.csv");
const TABLES_SHA256: &str = "69a2f111d142c6e80222670518986971d4bb5da6420a7a49e8818adba76fa69c";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    PaperTable1,
    PaperTable2,
    ExternalHighprec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub n: u64,
    /// as printed
    pub gamma_exact: String,
    /// replaces `gamma_exact` where the printed value is wrong
    pub corrected_exact: Option<String>,
    pub m_term: Option<String>,
    pub one_term: Option<String>,
    pub knessl_coffey: Option<String>,
    /// replaces `knessl_coffey` where the printed value is wrong
    pub corrected_knessl_coffey: Option<String>,
    pub source: Source,
}

impl ReferenceRow {
    /// Best known `γₙ`.
    pub fn exact(&self) -> Result<SciValue> {
        self.corrected_exact
            .as_deref()
            .unwrap_or(&self.gamma_exact)
            .parse()
    }

    pub fn printed_exact(&self) -> Result<SciValue> {
        self.gamma_exact.parse()
    }

    /// The printed column for an approximation method, if the table has one.
    pub fn printed(&self, method: Method) -> Option<Result<SciValue>> {
        let s = match method {
            Method::MTerm => self.m_term.as_deref(),
            Method::OneTerm => self.one_term.as_deref(),
            Method::KnesslCoffey => self.knessl_coffey.as_deref(),
            Method::Reference => Some(self.gamma_exact.as_str()),
            Method::LeadingOrder | Method::Oracle => None,
        }?;
        Some(s.parse())
    }
}

/// A row of the table of large relative errors of the three-term formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LargeErrorRow {
    pub n: u64,
    /// as printed, in percent
    pub percent: String,
}

impl LargeErrorRow {
    pub fn fraction(&self) -> Result<f64> {
        self.percent
            .parse::<f64>()
            .map(|p| p / 100.0)
            .map_err(|_| Error::Parse(format!("bad percentage {:?}", self.percent)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub n: f64,
    pub method: Method,
    /// `(approx − exact)/exact`
    pub relative_error: f64,
    pub sign_correct: bool,
}

/// Signed relative error and whether the signs agree.
pub fn relative_error(approx: &SciValue, exact: &SciValue) -> Result<(f64, bool)> {
    let r = approx.relative_error(exact)?;
    Ok((r, approx.signum() == exact.signum()))
}

pub fn error_report(
    n: f64,
    method: Method,
    approx: &SciValue,
    exact: &SciValue,
) -> Result<ErrorReport> {
    let (relative_error, sign_correct) = relative_error(approx, exact)?;
    Ok(ErrorReport {
        n,
        method,
        relative_error,
        sign_correct,
    })
}

fn verify_checksum(data: &str, expected_hex: &str) -> Result<()> {
    let digest = Sha256::digest(data.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    if hex != expected_hex {
        return Err(Error::Integrity(format!(
            "embedded tables checksum {hex} != {expected_hex}"
        )));
    }
    Ok(())
}

fn records(data: &str) -> impl Iterator<Item = Vec<&str>> {
    data.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split(',').map(str::trim).collect())
}

fn opt(s: Option<&&str>) -> Option<String> {
    s.filter(|v| !v.is_empty()).map(|v| v.to_string())
}

fn parse_n(s: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| Error::Parse(format!("bad index {s:?}")))
}

fn parse_tables(data: &str) -> Result<(Vec<ReferenceRow>, Vec<LargeErrorRow>)> {
    let mut rows: Vec<ReferenceRow> = Vec::new();
    let mut large = Vec::new();
    for rec in records(data) {
        match rec[0] {
            kind @ ("table1" | "table2") => {
                if rec.len() < 3 {
                    return Err(Error::Parse(format!("short row {rec:?}")));
                }
                rows.push(ReferenceRow {
                    n: parse_n(rec[1])?,
                    gamma_exact: rec[2].to_string(),
                    corrected_exact: None,
                    m_term: opt(rec.get(3)),
                    one_term: opt(rec.get(4)),
                    knessl_coffey: opt(rec.get(5)),
                    corrected_knessl_coffey: None,
                    source: if kind == "table1" {
                        Source::PaperTable1
                    } else {
                        Source::PaperTable2
                    },
                });
            }
            "table3" => large.push(LargeErrorRow {
                n: parse_n(rec[1])?,
                percent: rec[2].to_string(),
            }),
            "erratum" => {
                let n = parse_n(rec[1])?;
                let row = rows
                    .iter_mut()
                    .find(|r| r.n == n)
                    .ok_or_else(|| Error::Parse(format!("erratum for unknown n = {n}")))?;
                let value = Some(rec[3].to_string());
                match rec[2] {
                    "exact" => row.corrected_exact = value,
                    "knessl_coffey" => row.corrected_knessl_coffey = value,
                    other => return Err(Error::Parse(format!("unknown erratum column {other}"))),
                }
            }
            other => return Err(Error::Parse(format!("unknown record kind {other}"))),
        }
    }
    for row in &rows {
        let fields = [
            Some(&row.gamma_exact),
            row.corrected_exact.as_ref(),
            row.m_term.as_ref(),
            row.one_term.as_ref(),
            row.knessl_coffey.as_ref(),
            row.corrected_knessl_coffey.as_ref(),
        ];
        for f in fields.into_iter().flatten() {
            f.parse::<SciValue>()?;
        }
    }
    Ok((rows, large))
}

/// All rows of the two value tables, in table order.
pub fn load_reference() -> Result<Vec<ReferenceRow>> {
    verify_checksum(TABLES, TABLES_SHA256)?;
    Ok(parse_tables(TABLES)?.0)
}

/// The `n` values where the three-term formula is off by more than 5%.
pub fn load_large_errors() -> Result<Vec<LargeErrorRow>> {
    verify_checksum(TABLES, TABLES_SHA256)?;
    Ok(parse_tables(TABLES)?.1)
}

/// Parses `n,gamma` lines; `#` lines and blank lines are skipped.
pub fn parse_fixtures(text: &str) -> Result<Vec<ReferenceRow>> {
    let mut out: Vec<ReferenceRow> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (n, gamma) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("line {}: expected `n,gamma`", lineno + 1)))?;
        let n = parse_n(n.trim())?;
        let gamma = gamma.trim();
        gamma.parse::<SciValue>()?;
        if out.iter().any(|r| r.n == n) {
            return Err(Error::Parse(format!(
                "line {}: duplicate n = {n}",
                lineno + 1
            )));
        }
        out.push(ReferenceRow {
            n,
            gamma_exact: gamma.to_string(),
            corrected_exact: None,
            m_term: None,
            one_term: None,
            knessl_coffey: None,
            corrected_knessl_coffey: None,
            source: Source::ExternalHighprec,
        });
    }
    Ok(out)
}

pub fn load_fixture_file(path: &Path) -> Result<Vec<ReferenceRow>> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_fixtures(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn row_counts_and_spot_values() {
        let rows = load_reference().unwrap();
        assert_eq!(rows.len(), 19 + 14);
        let by_n = |n| rows.iter().find(|r| r.n == n).unwrap();
        assert_eq!(by_n(9).gamma_exact, "-0.000034394774");
        assert_eq!(
            by_n(250).printed_exact().unwrap().to_sci_string(),
            "3.059212000e79"
        );
        assert!(by_n(2).knessl_coffey.is_none());
        assert_eq!(by_n(2).source, Source::PaperTable1);
        assert_eq!(by_n(1400).source, Source::PaperTable2);
        assert_eq!(by_n(1400).exact().unwrap().exp10(), 728);
    }

    #[test]
    fn n_is_unique_per_source() {
        let rows = load_reference().unwrap();
        let mut seen = std::collections::HashSet::new();
        for r in &rows {
            assert!(seen.insert((r.source, r.n)));
        }
    }

    #[test]
    fn corrections_at_137() {
        let rows = load_reference().unwrap();
        let r = rows.iter().find(|r| r.n == 137).unwrap();
        assert_eq!(r.printed_exact().unwrap().exp10(), 25);
        let exact = r.exact().unwrap();
        assert_eq!(exact.exp10(), 27);
        // the printed three-term error at this n only follows from the corrected value
        let m3 = r.printed(Method::MTerm).unwrap().unwrap();
        let (rel, sign_ok) = relative_error(&m3, &exact).unwrap();
        assert!((rel + 0.5641).abs() < 2e-3);
        assert!(sign_ok);
    }

    #[test]
    fn large_error_table() {
        let t = load_large_errors().unwrap();
        let ns: Vec<u64> = t.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![2, 3, 4, 6, 137, 821, 1090, 7259, 8815]);
        assert_relative_eq!(t[1].fraction().unwrap(), -0.2106);
    }

    #[test]
    fn relative_error_trivial() {
        let x: SciValue = "-4.253401e17".parse().unwrap();
        let (r, s) = relative_error(&x, &x).unwrap();
        assert_eq!(r, 0.0);
        assert!(s);
        assert!(relative_error(&x, &SciValue::ZERO).is_err());
        let rep = error_report(100.0, Method::MTerm, &-x, &x).unwrap();
        assert!(!rep.sign_correct);
        assert_relative_eq!(rep.relative_error, -2.0);
    }

    #[test]
    fn tampering_is_detected() {
        let altered = TABLES.replacen("-0.009690363192", "-0.009690363193", 1);
        assert!(matches!(
            verify_checksum(&altered, TABLES_SHA256),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn fixture_parsing() {
        let text = "# comment\n\n821, 1.234e300\n1090,-5.0e400\n";
        let rows = parse_fixtures(text).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[1].exact().unwrap().exp10(), 400);
        assert_eq!(rows[0].source, Source::ExternalHighprec);
        assert!(parse_fixtures("5 1.0").is_err());
        assert!(parse_fixtures("5,abc").is_err());
        assert!(parse_fixtures("5,1\n5,2").is_err());
    }
}
