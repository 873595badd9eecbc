//! Weak Lefschetz verdicts: per-degree maximal-rank checks of `·ℓ` and the
//! known classifications for paths and lollipops.

use std::fmt;

use serde::Serialize;

use crate::algebra::{multiplication_map, LinearForm, MonomialAlgebra, RankMethod};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::indpoly::{mode_analysis, IntPolynomial};

/// Which half of maximal rank a degree fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FailureKind {
    /// `h_i < h_{i+1}` and the map is not injective.
    Injectivity,
    /// `h_i > h_{i+1}` and the map is not surjective.
    Surjectivity,
    /// `h_i = h_{i+1}` and the map is singular.
    Both,
}

impl FailureKind {
    fn classify(h_i: usize, h_next: usize) -> Self {
        match h_i.cmp(&h_next) {
            std::cmp::Ordering::Less => Self::Injectivity,
            std::cmp::Ordering::Greater => Self::Surjectivity,
            std::cmp::Ordering::Equal => Self::Both,
        }
    }

    pub fn fails_surjectivity(self) -> bool {
        matches!(self, Self::Surjectivity | Self::Both)
    }

    pub fn fails_injectivity(self) -> bool {
        matches!(self, Self::Injectivity | Self::Both)
    }
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Injectivity => "injectivity",
            Self::Surjectivity => "surjectivity",
            Self::Both => "both",
        })
    }
}

/// `·ℓ : [A]_i → [A]_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeVerdict {
    pub degree: usize,
    pub h_i: usize,
    pub h_next: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    #[serde(skip)]
    pub rank_method: RankMethod,
}

impl DegreeVerdict {
    pub fn maximal_rank(&self) -> bool {
        self.injective || self.surjective
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FailingDegree {
    pub degree: usize,
    pub kind: FailureKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WlpReport {
    pub hilbert: IntPolynomial,
    pub socle_degree: usize,
    pub wlp: bool,
    pub verdicts: Vec<DegreeVerdict>,
    pub failing: Vec<FailingDegree>,
    pub hilbert_unimodal: bool,
    /// Coefficients of the form used, as decimal strings.
    pub linear_form: Vec<String>,
}

impl WlpReport {
    pub fn has_wlp(&self) -> bool {
        self.wlp
    }

    /// Failure at `degree`, if any.
    pub fn failure_at(&self, degree: usize) -> Option<FailureKind> {
        self.failing
            .iter()
            .find(|f| f.degree == degree)
            .map(|f| f.kind)
    }

    /// Whether any verdict rests on a modular rank deficiency that no exact
    /// kernel vector confirmed.
    pub fn has_unproven_verdict(&self) -> bool {
        self.verdicts.iter().any(|v| !v.rank_method.is_certified())
    }
}

/// WLP with the all-ones form, which for monomial ideals is a Lefschetz
/// element whenever any form is.
pub fn wlp_report(a: &MonomialAlgebra) -> WlpReport {
    wlp_report_with_form(a, &LinearForm::all_ones(a.num_vars()))
        .expect("the all-ones form fits the algebra")
}

/// Whether `ell` is a Lefschetz element of `a`. Degrees `0..=D` are scanned;
/// the last map lands in the zero space and is surjective.
pub fn wlp_report_with_form(a: &MonomialAlgebra, ell: &LinearForm) -> Result<WlpReport> {
    if ell.len() != a.num_vars() {
        return Err(Error::Precondition(format!(
            "linear form has {} coefficients, algebra has {} variables",
            ell.len(),
            a.num_vars()
        )));
    }
    let mut verdicts = Vec::new();
    let mut failing = Vec::new();
    for i in 0..=a.socle_degree() {
        let map = multiplication_map(a, ell, i, 1)?;
        let outcome = map.rank_outcome();
        let v = DegreeVerdict {
            degree: i,
            h_i: a.dim(i),
            h_next: a.dim(i + 1),
            rank: outcome.rank,
            injective: map.is_injective(),
            surjective: map.is_surjective(),
            rank_method: outcome.method,
        };
        if !v.maximal_rank() {
            failing.push(FailingDegree {
                degree: i,
                kind: FailureKind::classify(v.h_i, v.h_next),
            });
        }
        verdicts.push(v);
    }
    let hilbert = a.hilbert_series();
    let hilbert_unimodal = mode_analysis(&hilbert)?.is_unimodal;
    Ok(WlpReport {
        hilbert,
        socle_degree: a.socle_degree(),
        wlp: failing.is_empty(),
        verdicts,
        failing,
        hilbert_unimodal,
        linear_form: ell.coefficients().iter().map(ToString::to_string).collect(),
    })
}

/// Path lengths whose algebra has the WLP.
pub const PATH_WLP: [usize; 10] = [1, 2, 3, 4, 5, 6, 7, 9, 10, 13];

/// Path lengths whose only failure is surjectivity out of the mode degree.
pub const PATH_SURJECTIVITY_ONLY: [usize; 5] = [8, 11, 14, 15, 17];

/// Whether `A(P_n)` has the WLP.
pub fn expected_path_wlp(n: usize) -> bool {
    PATH_WLP.contains(&n)
}

/// Whether `A(L_{m,n})` has the WLP, by clique size.
pub fn expected_lollipop_wlp(m: usize, n: usize) -> bool {
    match m {
        0 => false,
        1 => matches!(n, 1..=6 | 8 | 9 | 12),
        2 => matches!(n, 1..=5 | 7 | 8 | 11),
        _ => matches!(n, 1 | 3 | 4 | 7),
    }
}

/// A computed lollipop verdict that matched the expected one.
#[derive(Clone, Debug, Serialize)]
pub struct LollipopClassification {
    pub m: usize,
    pub n: usize,
    pub expected: bool,
    /// Mode of `I(L_{m,n}; t)`, `None` if not unimodal.
    pub eta: Option<usize>,
    pub report: WlpReport,
}

/// Computes the WLP verdict for `A(L_{m,n})` and compares it with the
/// expected table, returning [`Error::ClassificationMismatch`] on
/// disagreement.
pub fn classify_lollipop(m: usize, n: usize) -> Result<LollipopClassification> {
    let g = Graph::lollipop(m, n)?;
    let report = wlp_report(&MonomialAlgebra::from_graph(&g));
    let expected = expected_lollipop_wlp(m, n);
    if report.wlp != expected {
        return Err(Error::ClassificationMismatch {
            m,
            n,
            computed: report.wlp,
            expected,
        });
    }
    let eta = mode_analysis(&report.hilbert)?.mode;
    Ok(LollipopClassification {
        m,
        n,
        expected,
        eta,
        report,
    })
}

/// A failing degree expressed relative to a mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizedFailure {
    pub degree: usize,
    pub kind: FailureKind,
    /// `degree - lambda`.
    pub offset: i64,
    pub tag: String,
}

/// Tags every failing degree of a non-WLP report as e.g.
/// `surjectivity failure at mode+1`.
pub fn failure_localization(report: &WlpReport, lambda: usize) -> Result<Vec<LocalizedFailure>> {
    if report.wlp {
        return Err(Error::Precondition("the report has the WLP; nothing to localize".into()));
    }
    Ok(report
        .failing
        .iter()
        .map(|f| {
            let offset = f.degree as i64 - lambda as i64;
            let at = match offset {
                0 => "mode".to_string(),
                o if o > 0 => format!("mode+{o}"),
                o => format!("mode{o}"),
            };
            LocalizedFailure {
                degree: f.degree,
                kind: f.kind,
                offset,
                tag: format!("{} failure at {at}", f.kind),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indpoly::mode_of_path;

    fn graph_report(g: Graph) -> WlpReport {
        wlp_report(&MonomialAlgebra::from_graph(&g))
    }

    #[test]
    fn report_examples() {
        assert!(graph_report(Graph::path(13).unwrap()).wlp);
        let p8 = graph_report(Graph::path(8).unwrap());
        assert!(!p8.wlp);
        assert_eq!(
            p8.failing,
            [FailingDegree { degree: 2, kind: FailureKind::Surjectivity }]
        );
        let k5 = graph_report(Graph::complete(5).unwrap());
        assert!(k5.wlp);
        assert_eq!(k5.verdicts.len(), 2);
        assert!(k5.verdicts[1].surjective && k5.verdicts[1].h_next == 0);
    }

    #[test]
    fn explicit_forms() {
        let k3 = MonomialAlgebra::from_graph(&Graph::complete(3).unwrap());
        let r = wlp_report_with_form(&k3, &LinearForm::from_i64s(&[1, 0, 0]).unwrap()).unwrap();
        assert!(r.wlp);
        assert_eq!(r.verdicts[0].rank, 1);
        let p3 = MonomialAlgebra::from_graph(&Graph::path(3).unwrap());
        let r = wlp_report_with_form(&p3, &LinearForm::from_i64s(&[0, 1, 1]).unwrap()).unwrap();
        assert!(r.verdicts[0].injective);
        assert_eq!(
            wlp_report_with_form(&p3, &LinearForm::all_ones(3)).unwrap(),
            wlp_report(&p3)
        );
        assert!(wlp_report_with_form(&p3, &LinearForm::all_ones(2)).is_err());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(graph_report(Graph::path(8).unwrap())).unwrap();
        assert_eq!(v["hilbert"], serde_json::json!(["1", "8", "21", "20", "5"]));
        assert_eq!(v["socle_degree"], 4);
        assert_eq!(v["wlp"], false);
        assert_eq!(v["failing"], serde_json::json!([{"degree": 2, "kind": "surjectivity"}]));
        let keys: Vec<&String> = v["verdicts"][0].as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 6);
    }

    #[test]
    fn failure_kinds() {
        assert_eq!(FailureKind::classify(3, 5), FailureKind::Injectivity);
        assert_eq!(FailureKind::classify(5, 3), FailureKind::Surjectivity);
        assert_eq!(FailureKind::classify(4, 4), FailureKind::Both);
        assert!(FailureKind::Both.fails_surjectivity() && FailureKind::Both.fails_injectivity());
    }

    #[test]
    fn classification_cells() {
        let c = classify_lollipop(3, 7).unwrap();
        assert!(c.expected && c.report.wlp);
        let c = classify_lollipop(4, 9).unwrap();
        assert!(!c.expected);
        // h_3 = h_4 = 140, so the singular map fails both halves
        assert_eq!(c.report.failure_at(3), Some(FailureKind::Both));
        assert_eq!(c.eta, Some(3));
        assert!(classify_lollipop(1, 12).unwrap().expected);
        assert!(!expected_lollipop_wlp(3, 2));
    }

    #[test]
    fn localization() {
        let r = classify_lollipop(3, 8).unwrap().report;
        let lambda = mode_of_path(8).unwrap();
        let loc = failure_localization(&r, lambda).unwrap();
        assert!(loc
            .iter()
            .any(|l| l.degree == 3 && l.tag == "surjectivity failure at mode+1"));
        let p17 = graph_report(Graph::path(17).unwrap());
        let loc = failure_localization(&p17, 5).unwrap();
        assert_eq!(loc[0].tag, "surjectivity failure at mode");
        let p13 = graph_report(Graph::path(13).unwrap());
        assert!(failure_localization(&p13, 4).is_err());
    }
}
