//! JSON encodings: period sequences, grading files, and the JSON-lines
//! period database.
//!
//! Coefficients are always exact rational strings (`"p/q"` or `"p"`).
//!
//! ```text
//! {"degree":4,"coefficients":["1","0","2","0","6"]}
//! {"degree":3,"grading":{"rank":3,"weights":[1,1,1]},
//!  "coefficients":[[{"class":[0,0,0],"coeff":"1"}],[],[],[{"class":[1,1,1],"coeff":"6"}]]}
//! ```

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse_components, parse_polynomial};
use crate::mori::{CurveClass, CurveClassMonoid, MoriElement};
use crate::period::{
    classical_period, mori_period, period_match, specialize_sequence, Component, MatchOutcome,
    PeriodSequence, PotentialSpec,
};
use crate::ring::{parse_rational, Coefficient, Rational};

/// A period sequence as stored on disk: plain rationals, or curve-class
/// elements together with their monoid.
#[derive(Clone, Debug, PartialEq)]
pub enum StoredSequence {
    Plain(PeriodSequence<Rational>),
    Graded {
        monoid: CurveClassMonoid,
        sequence: PeriodSequence<MoriElement>,
    },
}

#[derive(Serialize, Deserialize)]
struct RawSequence {
    degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<CurveClassMonoid>,
    coefficients: Vec<RawEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Plain(String),
    Graded(Vec<RawTerm>),
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    class: Vec<u32>,
    coeff: String,
}

fn rational_from_str(text: &str) -> Result<Rational> {
    parse_rational(text).ok_or_else(|| Error::Format(format!("`{text}` is not an exact rational")))
}

impl StoredSequence {
    pub fn degree(&self) -> usize {
        match self {
            Self::Plain(s) => s.degree(),
            Self::Graded { sequence, .. } => sequence.degree(),
        }
    }

    /// The series in `t`, specializing curve classes by degree.
    pub fn t_series(&self, degree: usize) -> Result<PeriodSequence<Rational>> {
        match self {
            Self::Plain(s) => s.truncate(degree),
            Self::Graded { monoid, sequence } => specialize_sequence(sequence, monoid, degree),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("sequence serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSequence =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_raw(raw)
    }

    fn to_raw(&self) -> RawSequence {
        match self {
            Self::Plain(s) => RawSequence {
                degree: s.degree(),
                grading: None,
                coefficients: s
                    .entries()
                    .iter()
                    .map(|c| RawEntry::Plain(c.to_string()))
                    .collect(),
            },
            Self::Graded { monoid, sequence } => RawSequence {
                degree: sequence.degree(),
                grading: Some(monoid.clone()),
                coefficients: sequence
                    .entries()
                    .iter()
                    .map(|e| {
                        RawEntry::Graded(
                            e.with_rank(monoid.rank())
                                .terms()
                                .map(|(class, c)| RawTerm {
                                    class: class.multiplicities().to_vec(),
                                    coeff: c.to_string(),
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            },
        }
    }

    fn from_raw(raw: RawSequence) -> Result<Self> {
        if raw.coefficients.len() != raw.degree + 1 {
            return Err(Error::Format(format!(
                "degree {} but {} coefficients",
                raw.degree,
                raw.coefficients.len()
            )));
        }
        match raw.grading {
            None => {
                let entries = raw
                    .coefficients
                    .into_iter()
                    .map(|e| match e {
                        RawEntry::Plain(s) => rational_from_str(&s),
                        RawEntry::Graded(_) => Err(Error::Format(
                            "curve-class coefficients need a grading".into(),
                        )),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::Plain(PeriodSequence::new(entries)?))
            }
            Some(monoid) => {
                let entries = raw
                    .coefficients
                    .into_iter()
                    .map(|e| match e {
                        RawEntry::Graded(terms) => {
                            let mut out = MoriElement::zero();
                            for t in terms {
                                let class = CurveClass::new(t.class);
                                monoid.check_class(&class)?;
                                out.add_assign_ref(&MoriElement::monomial(
                                    class,
                                    rational_from_str(&t.coeff)?,
                                ));
                            }
                            Ok(out)
                        }
                        RawEntry::Plain(s) => Err(Error::Format(format!(
                            "plain coefficient `{s}` in a graded sequence"
                        ))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::Graded {
                    monoid,
                    sequence: PeriodSequence::new(entries)?,
                })
            }
        }
    }
}

/// `{"rank": r, "weights": [..], "tags": {"label": [multiplicities]}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingFile {
    pub rank: usize,
    pub weights: Vec<i64>,
    #[serde(default)]
    pub tags: BTreeMap<String, Vec<u32>>,
}

impl GradingFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn monoid(&self) -> Result<CurveClassMonoid> {
        if self.rank != self.weights.len() {
            return Err(Error::Format(format!(
                "grading rank {} but {} weights",
                self.rank,
                self.weights.len()
            )));
        }
        CurveClassMonoid::new(self.weights.clone())
    }

    /// Attach tags to labelled charts. Every chart needs a tag and every tag
    /// a chart.
    pub fn potential_spec(
        &self,
        charts: Vec<(String, crate::poly::LaurentPoly<Rational>)>,
    ) -> Result<PotentialSpec> {
        if let Some(extra) = self
            .tags
            .keys()
            .find(|label| !charts.iter().any(|(l, _)| l == *label))
        {
            return Err(Error::Format(format!(
                "tag for unknown component `{extra}`"
            )));
        }
        let components = charts
            .into_iter()
            .map(|(label, chart)| {
                let class = self
                    .tags
                    .get(&label)
                    .map(|m| CurveClass::new(m.clone()))
                    .ok_or_else(|| Error::MissingClassTag(label.clone()))?;
                Ok(Component {
                    label,
                    weight: 1,
                    chart,
                    class: Some(class),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PotentialSpec::new(components)
    }
}

/// Compute the stored form of a potential's period. With a grading file the
/// potential is read as labelled components (`D1: x; D2: y; ...`).
pub fn compute_period(
    potential: &str,
    degree: usize,
    grading: Option<&GradingFile>,
) -> Result<StoredSequence> {
    match grading {
        None => {
            let f = parse_polynomial(potential, None)?;
            Ok(StoredSequence::Plain(classical_period(&f, degree)))
        }
        Some(g) => {
            let monoid = g.monoid()?;
            let spec = g.potential_spec(parse_components(potential, None)?)?;
            Ok(StoredSequence::Graded {
                sequence: mori_period(&spec, &monoid, degree)?,
                monoid,
            })
        }
    }
}

/// One line of the period database.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodRecord {
    pub name: String,
    pub potential: String,
    pub sequence: StoredSequence,
    pub grading: Option<GradingFile>,
}

#[derive(Serialize, Deserialize)]
struct RawRecord {
    name: String,
    potential: String,
    sequence: RawSequence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<GradingFile>,
}

impl PeriodRecord {
    /// Build a record by computing the period.
    pub fn compute(
        name: &str,
        potential: &str,
        degree: usize,
        grading: Option<GradingFile>,
    ) -> Result<Self> {
        let sequence = compute_period(potential, degree, grading.as_ref())?;
        Ok(Self {
            name: name.to_string(),
            potential: potential.to_string(),
            sequence,
            grading,
        })
    }

    pub fn to_json_line(&self) -> String {
        let raw = RawRecord {
            name: self.name.clone(),
            potential: self.potential.clone(),
            sequence: self.sequence.to_raw(),
            grading: self.grading.clone(),
        };
        serde_json::to_string(&raw).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawRecord =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Ok(Self {
            name: raw.name,
            potential: raw.potential,
            sequence: StoredSequence::from_raw(raw.sequence)?,
            grading: raw.grading,
        })
    }

    /// Recompute the period from the stored potential and compare.
    pub fn verify(&self) -> Result<()> {
        let corrupt = |reason: String| Error::CorruptRecord {
            name: self.name.clone(),
            reason,
        };
        let fresh = compute_period(
            &self.potential,
            self.sequence.degree(),
            self.grading.as_ref(),
        )
        .map_err(|e| corrupt(e.to_string()))?;
        let outcome = match (&fresh, &self.sequence) {
            (StoredSequence::Plain(a), StoredSequence::Plain(b)) => period_match(a, b, b.degree())?,
            (
                StoredSequence::Graded {
                    monoid: ma,
                    sequence: a,
                },
                StoredSequence::Graded {
                    monoid: mb,
                    sequence: b,
                },
            ) => {
                if ma != mb {
                    return Err(corrupt("stored monoid differs from the grading".into()));
                }
                period_match(a, b, b.degree())?
            }
            _ => return Err(corrupt("grading does not match the stored sequence".into())),
        };
        match outcome {
            MatchOutcome::Equal => Ok(()),
            MatchOutcome::Mismatch { index } => Err(corrupt(format!(
                "stored coefficient c_{index} disagrees with the potential"
            ))),
        }
    }
}

/// Read every record of a JSON-lines database. A missing file is empty.
pub fn load_db(path: &Path) -> Result<Vec<PeriodRecord>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(Error::Format(format!("{}: {e}", path.display()))),
    };
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            PeriodRecord::from_json(line)
                .map_err(|e| Error::Format(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}

/// Verify a record against its potential, then append it.
pub fn db_add(path: &Path, record: &PeriodRecord) -> Result<()> {
    record.verify()?;
    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    writeln!(file, "{}", record.to_json_line())
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// Records whose `t`-series agrees with `query` on `c_0..c_D`, in file
/// order. Records stored to a lower degree never match.
pub fn db_search<'a>(
    records: &'a [PeriodRecord],
    query: &PeriodSequence<Rational>,
    degree: usize,
) -> Result<Vec<&'a PeriodRecord>> {
    if degree > query.degree() {
        return Err(Error::TruncationExceeded {
            requested: degree,
            available: query.degree(),
        });
    }
    let mut hits = Vec::new();
    for record in records {
        if record.sequence.degree() < degree {
            continue;
        }
        let series = record.sequence.t_series(degree)?;
        if period_match(&series, query, degree)? == MatchOutcome::Equal {
            hits.push(record);
        }
    }
    Ok(hits)
}

/// Parse `"1,0,2,0,6"` into a plain sequence.
pub fn parse_sequence_list(text: &str) -> Result<PeriodSequence<Rational>> {
    let entries = text
        .split(',')
        .map(|s| rational_from_str(s.trim()))
        .collect::<Result<Vec<_>>>()?;
    PeriodSequence::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_json_is_exact() {
        let seq = compute_period("x+x^-1", 4, None).unwrap();
        assert_eq!(
            seq.to_json(),
            r#"{"degree":4,"coefficients":["1","0","2","0","6"]}"#
        );
        assert_eq!(StoredSequence::from_json(&seq.to_json()).unwrap(), seq);
        assert_eq!(
            compute_period("0", 2, None).unwrap().to_json(),
            r#"{"degree":2,"coefficients":["1","0","0"]}"#
        );
    }

    #[test]
    fn graded_json_round_trip() {
        let grading = GradingFile::from_json(
            r#"{"rank":3,"weights":[1,1,1],"tags":{"D1":[1,0,0],"D2":[0,1,0],"D3":[0,0,1]}}"#,
        )
        .unwrap();
        let seq = compute_period("D1: x; D2: y; D3: x^-1*y^-1", 3, Some(&grading)).unwrap();
        let json = seq.to_json();
        assert_eq!(
            json,
            r#"{"degree":3,"grading":{"rank":3,"weights":[1,1,1]},"coefficients":[[{"class":[0,0,0],"coeff":"1"}],[],[],[{"class":[1,1,1],"coeff":"6"}]]}"#
        );
        assert_eq!(StoredSequence::from_json(&json).unwrap(), seq);
    }

    #[test]
    fn grading_file_errors() {
        let zero = GradingFile::from_json(r#"{"rank":2,"weights":[1,0],"tags":{}}"#).unwrap();
        assert!(matches!(
            compute_period("A: x", 2, Some(&zero)),
            Err(Error::NonPositiveWeight { .. })
        ));
        let missing =
            GradingFile::from_json(r#"{"rank":1,"weights":[1],"tags":{"A":[1]}}"#).unwrap();
        assert_eq!(
            compute_period("A: x; B: x^-1", 2, Some(&missing)).unwrap_err(),
            Error::MissingClassTag("B".into())
        );
    }

    #[test]
    fn malformed_sequences() {
        assert!(StoredSequence::from_json(r#"{"degree":2,"coefficients":["1","0"]}"#).is_err());
        assert!(StoredSequence::from_json(r#"{"degree":0,"coefficients":["1.5"]}"#).is_err());
        assert!(StoredSequence::from_json(r#"{"degree":0,"coefficients":[[]]}"#).is_err());
    }

    #[test]
    fn record_verification() {
        let record = PeriodRecord::compute("P1", "x + x^-1", 6, None).unwrap();
        record.verify().unwrap();
        let line = record.to_json_line();
        let tampered = line.replace(r#""20""#, r#""21""#);
        let bad = PeriodRecord::from_json(&tampered).unwrap();
        assert!(matches!(bad.verify(), Err(Error::CorruptRecord { .. })));
    }
}
