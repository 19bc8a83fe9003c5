//! Text and JSON renderings of a solve.
//!
//! The JSON document is the primary form; the text rendering is produced
//! from it, so both carry the same information. Rationals are written as
//! `n/d` strings and integer coefficients as decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::rational::format_rational;
use crate::arith::UniPoly;
use crate::solve::{SolutionRecord, SolveOutcome};
use crate::UniPolyZ;

pub const EMPTINESS_LABEL: &str = "probabilistic certificate";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub solutions: Vec<ReportSolution>,
    pub status: Status,
    pub meta: ReportMeta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Feasible,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportSolution {
    #[serde(rename = "box")]
    pub boxes: Vec<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub deg: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rur: Option<ReportRur>,
}

/// Coefficient lists, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRur {
    pub q: Vec<String>,
    pub q0: Vec<String>,
    pub coords: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFailure {
    pub rank: usize,
    pub subset: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMeta {
    /// Decimal string, since seeds exceed the exact range of doubles.
    pub seed: String,
    pub digits: u32,
    pub ranks: Vec<usize>,
    pub version: String,
    pub vars: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub emptiness: Option<String>,
    pub systems_solved: usize,
    pub failures: Vec<ReportFailure>,
}

fn coeff_strings(p: &UniPolyZ) -> Vec<String> {
    p.coeffs().iter().map(BigInt::to_string).collect()
}

fn solution(rec: &SolutionRecord) -> ReportSolution {
    ReportSolution {
        boxes: rec.boxes.iter().map(|b| [format_rational(&b.lo), format_rational(&b.hi)]).collect(),
        rank: rec.rank,
        deg: rec.deg,
        rur: rec.rur.as_ref().map(|r| ReportRur { q: coeff_strings(&r.q), q0: coeff_strings(&r.q0), coords: r.coords.iter().map(coeff_strings).collect() }),
    }
}

impl Report {
    pub fn from_outcome(out: &SolveOutcome, vars: &[String]) -> Self {
        let status = if out.records.is_empty() { Status::Empty } else { Status::Feasible };
        Report {
            solutions: out.records.iter().map(solution).collect(),
            status,
            meta: ReportMeta {
                seed: out.seed.to_string(),
                digits: out.digits,
                ranks: out.ranks.clone(),
                version: env!("CARGO_PKG_VERSION").to_string(),
                vars: vars.to_vec(),
                emptiness: (status == Status::Empty).then(|| EMPTINESS_LABEL.to_string()),
                systems_solved: out.systems_solved,
                failures: out.failures.iter().map(|f| ReportFailure { rank: f.rank, subset: f.subset.clone(), message: f.message.clone() }).collect(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// `[[x1 = [a1, b1], ..., rnk = r, deg = d, par = [q, q0, [q1, ...]]], ...]`
    pub fn to_text(&self) -> String {
        if self.solutions.is_empty() {
            return "[]".to_string();
        }
        let lines: Vec<String> = self.solutions.iter().map(|s| self.solution_text(s)).collect();
        format!("[{}]", lines.join(",\n "))
    }

    fn solution_text(&self, s: &ReportSolution) -> String {
        let mut parts: Vec<String> = s
            .boxes
            .iter()
            .enumerate()
            .map(|(i, [lo, hi])| {
                let name = self.meta.vars.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                format!("{name} = [{lo}, {hi}]")
            })
            .collect();
        if let Some(r) = s.rank {
            parts.push(format!("rnk = {r}"));
        }
        if let Some(d) = s.deg {
            parts.push(format!("deg = {d}"));
        }
        if let Some(rur) = &s.rur {
            let coords: Vec<String> = rur.coords.iter().map(|c| poly_text(c)).collect();
            parts.push(format!("par = [{}, {}, [{}]]", poly_text(&rur.q), poly_text(&rur.q0), coords.join(", ")));
        }
        format!("[{}]", parts.join(", "))
    }
}

fn poly_text(coeffs: &[String]) -> String {
    let p: UniPolyZ = UniPoly::new(coeffs.iter().map(|c| c.parse::<BigInt>().expect("integer coefficient")).collect());
    p.to_string_with("z")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::arith::RatInterval;
    use crate::zerodim::Rur;

    fn outcome(records: Vec<SolutionRecord>) -> SolveOutcome {
        SolveOutcome { records, seed: 31415926, ranks: vec![0, 1, 2], digits: 10, failures: Vec::new(), systems_solved: 3 }
    }

    #[test]
    fn half_disk_text() {
        let rec = SolutionRecord { boxes: vec![RatInterval::point(rat(0, 1)), RatInterval::point(rat(1, 1))], rank: None, deg: None, rur: None };
        let rep = Report::from_outcome(&outcome(vec![rec]), &["x1".into(), "x2".into()]);
        assert_eq!(rep.to_text(), "[[x1 = [0, 0], x2 = [1, 1]]]");
        assert_eq!(rep.status, Status::Feasible);
    }

    #[test]
    fn empty_and_round_trip() {
        let rep = Report::from_outcome(&outcome(Vec::new()), &["x1".into()]);
        assert_eq!(rep.to_text(), "[]");
        assert!(rep.to_json().contains("\"status\": \"empty\""));
        assert_eq!(rep.meta.emptiness.as_deref(), Some(EMPTINESS_LABEL));
        assert_eq!(Report::from_json(&rep.to_json()).unwrap(), rep);
    }

    #[test]
    fn parametrization_text() {
        let rur = Rur {
            q: UniPoly::from_i64(&[-2, 0, 1]),
            q0: UniPoly::from_i64(&[0, 1]),
            coords: vec![UniPoly::from_i64(&[2])],
            system_coords: Vec::new(),
            separating_form: Vec::new(),
            eliminants: Vec::new(),
        };
        let rec = SolutionRecord { boxes: vec![RatInterval::new(rat(1414213562, 1_000_000_000), rat(1414213563, 1_000_000_000))], rank: Some(2), deg: Some(2), rur: Some(rur) };
        let rep = Report::from_outcome(&outcome(vec![rec]), &["x1".into()]);
        assert_eq!(rep.to_text(), "[[x1 = [707106781/500000000, 1414213563/1000000000], rnk = 2, deg = 2, par = [z^2-2, z, [2]]]]");
        assert_eq!(Report::from_json(&rep.to_json()).unwrap(), rep);
    }
}
