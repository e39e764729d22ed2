//! Quiver of `End(A ⊕ A[-1])` after Calabi-Yau reduction: two copies of `Q \ E`,
//! with a pair of arrows `a -> b'`, `b -> a'` for every relation from `a` to `b`.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynkin::dynkin_classify;
use crate::graph::UnderlyingGraph;
use crate::quiver::{ColoredQuiver, QuiverError, VertexId};
use crate::ztranslation::{check_root_normal_form, NormalFormPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error("quiver must be uncolored")]
    Colored,
    #[error("quiver has a directed cycle")]
    Cyclic,
    #[error("relation {src} -> {dst} mentions unknown vertex `{vertex}`")]
    UnknownRelationVertex { src: String, dst: String, vertex: String },
    #[error("removed set contains unknown vertex `{0}`")]
    BadRemovedSet(String),
}

/// A relation from `src` to `dst`, optionally with the vertices its paths run through.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub src: VertexId,
    pub dst: VertexId,
    #[serde(default)]
    pub support: Option<Vec<VertexId>>,
}

impl Relation {
    pub fn new(src: impl Into<VertexId>, dst: impl Into<VertexId>) -> Self {
        Self { src: src.into(), dst: dst.into(), support: None }
    }

    pub fn with_support<S: AsRef<str>>(mut self, support: &[S]) -> Self {
        self.support = Some(support.iter().map(|s| s.as_ref().to_string()).collect());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraPresentation {
    pub quiver: ColoredQuiver,
    pub relations: Vec<Relation>,
}

impl AlgebraPresentation {
    pub fn validate(&self) -> Result<(), CyError> {
        self.quiver.validate()?;
        if self.quiver.is_colored() {
            return Err(CyError::Colored);
        }
        if !self.quiver.is_acyclic() {
            return Err(CyError::Cyclic);
        }
        for r in &self.relations {
            let support = r.support.iter().flatten();
            if let Some(v) = [&r.src, &r.dst].into_iter().chain(support).find(|v| !self.quiver.contains(v)) {
                return Err(CyError::UnknownRelationVertex {
                    src: r.src.clone(),
                    dst: r.dst.clone(),
                    vertex: v.clone(),
                });
            }
        }
        Ok(())
    }
}

/// Name of the copy of `v` in the second level.
pub fn primed(v: &str) -> String {
    format!("{v}'")
}

fn checked_removed(p: &AlgebraPresentation, removed: &BTreeSet<VertexId>) -> Result<(), CyError> {
    p.validate()?;
    match removed.iter().find(|v| !p.quiver.contains(v)) {
        Some(v) => Err(CyError::BadRemovedSet(v.clone())),
        None => Ok(()),
    }
}

fn surviving<'a>(p: &'a AlgebraPresentation, removed: &'a BTreeSet<VertexId>) -> impl Iterator<Item = &'a Relation> {
    p.relations.iter().filter(|r| !removed.contains(&r.src) && !removed.contains(&r.dst))
}

pub fn cy_reduce_quiver(p: &AlgebraPresentation, removed: &BTreeSet<VertexId>) -> Result<ColoredQuiver, CyError> {
    checked_removed(p, removed)?;
    let keep: BTreeSet<VertexId> = p.quiver.vertices().iter().filter(|v| !removed.contains(*v)).cloned().collect();
    let base = p.quiver.induced(&keep);
    let mut out = base.clone();
    for v in base.vertices() {
        out.add_vertex(primed(v))?;
    }
    for a in base.arrows() {
        out.add_arrow(primed(&a.src), primed(&a.dst), None, a.mult)?;
    }
    for r in surviving(p, removed) {
        out.add_arrow(r.src.clone(), primed(&r.dst), None, 1)?;
        out.add_arrow(r.dst.clone(), primed(&r.src), None, 1)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Warning {
    pub src: VertexId,
    pub dst: VertexId,
    pub message: String,
}

fn reachable(q: &ColoredQuiver, from: &str, to: &str) -> bool {
    let mut seen = HashSet::from([from]);
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for a in q.arrows().iter().filter(|a| a.src == v) {
            if seen.insert(a.dst.as_str()) {
                stack.push(a.dst.as_str());
            }
        }
    }
    false
}

/// A relation that survives the removal is a sign that `A/(e)` is not hereditary.
/// With a support set, it is cleared exactly when the support meets `E`; without
/// one, it is flagged when a path from `src` to `dst` survives in `Q \ E`.
pub fn hereditary_proxy_check(p: &AlgebraPresentation, removed: &BTreeSet<VertexId>) -> Result<Vec<Warning>, CyError> {
    checked_removed(p, removed)?;
    let keep: BTreeSet<VertexId> = p.quiver.vertices().iter().filter(|v| !removed.contains(*v)).cloned().collect();
    let base = p.quiver.induced(&keep);
    let mut warnings = Vec::new();
    for r in surviving(p, removed) {
        let message = match &r.support {
            Some(s) if s.iter().any(|v| removed.contains(v)) => continue,
            Some(_) => "support avoids the removed vertices".to_string(),
            None if reachable(&base, &r.src, &r.dst) => "a path between the endpoints survives".to_string(),
            None => continue,
        };
        warnings.push(Warning { src: r.src.clone(), dst: r.dst.clone(), message });
    }
    Ok(warnings)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub vertices: Vec<VertexId>,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub quiver: ColoredQuiver,
    pub normal_form: bool,
    pub components: Vec<ComponentReport>,
    /// Every component is non-Dynkin.
    pub verdict: bool,
    pub empty: bool,
    pub warnings: Vec<Warning>,
}

pub fn reduction_report(p: &AlgebraPresentation, removed: &BTreeSet<VertexId>) -> Result<ReductionReport, CyError> {
    let quiver = cy_reduce_quiver(p, removed)?;
    let warnings = hereditary_proxy_check(p, removed)?;
    let half = quiver.vertex_count() / 2;
    let partition =
        NormalFormPartition { blocks: vec![quiver.vertices()[..half].to_vec(), quiver.vertices()[half..].to_vec()] };
    let normal_form = check_root_normal_form(&quiver, 2, &partition).unwrap_or(false);
    let graph = UnderlyingGraph::of(&quiver);
    let components: Vec<ComponentReport> = graph
        .components()
        .iter()
        .zip(dynkin_classify(&graph))
        .map(|(c, label)| ComponentReport {
            vertices: c.iter().map(|&i| quiver.vertices()[i].clone()).collect(),
            label: label.to_string(),
        })
        .collect();
    let verdict = dynkin_classify(&graph).iter().all(|l| !l.is_dynkin());
    Ok(ReductionReport { empty: quiver.is_empty(), quiver, normal_form, components, verdict, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> AlgebraPresentation {
        AlgebraPresentation {
            quiver: ColoredQuiver::uncolored(
                &["1", "2", "3", "4"],
                &[("1", "2", 1), ("2", "4", 1), ("1", "3", 1), ("3", "4", 1)],
            )
            .unwrap(),
            relations: vec![Relation::new("1", "4").with_support(&["3"])],
        }
    }

    fn set(v: &[&str]) -> BTreeSet<VertexId> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn a5_tilde() {
        let q = cy_reduce_quiver(&diamond(), &set(&["3"])).unwrap();
        let expected = ColoredQuiver::uncolored(
            &["1", "2", "4", "1'", "2'", "4'"],
            &[("1", "2", 1), ("2", "4", 1), ("1'", "2'", 1), ("2'", "4'", 1), ("1", "4'", 1), ("4", "1'", 1)],
        )
        .unwrap();
        assert_eq!(q, expected);
        let report = reduction_report(&diamond(), &set(&["3"])).unwrap();
        assert!(report.normal_form);
        assert!(report.verdict);
        assert!(!report.empty);
        assert_eq!(report.components.len(), 1);
        assert_eq!(report.components[0].label, "~A5");
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn no_relations_gives_two_copies() {
        let p = AlgebraPresentation { relations: vec![], ..diamond() };
        let q = cy_reduce_quiver(&p, &set(&[])).unwrap();
        assert_eq!(q.vertex_count(), 8);
        assert_eq!(q.arrow_count(), 8);
        assert_eq!(UnderlyingGraph::of(&q).components().len(), 2);
        assert!(hereditary_proxy_check(&p, &set(&[])).unwrap().is_empty());
    }

    #[test]
    fn removing_everything() {
        let q = cy_reduce_quiver(&diamond(), &set(&["1", "2", "3", "4"])).unwrap();
        assert!(q.is_empty());
        let r = reduction_report(&diamond(), &set(&["1", "2", "3", "4"])).unwrap();
        assert!(r.empty && r.verdict && r.components.is_empty());
    }

    #[test]
    fn proxy_warnings() {
        let mut p = diamond();
        assert_eq!(hereditary_proxy_check(&p, &set(&[])).unwrap().len(), 1);
        p.relations[0].support = None;
        // 1 -> 2 -> 4 still connects the endpoints
        assert_eq!(hereditary_proxy_check(&p, &set(&["3"])).unwrap().len(), 1);
        assert!(hereditary_proxy_check(&p, &set(&["2", "3"])).unwrap().is_empty());
        let w = hereditary_proxy_check(&p, &set(&[])).unwrap();
        assert_eq!((w[0].src.as_str(), w[0].dst.as_str()), ("1", "4"));
    }

    #[test]
    fn a2_is_dynkin() {
        let p = AlgebraPresentation {
            quiver: ColoredQuiver::uncolored(&["1", "2"], &[("1", "2", 1)]).unwrap(),
            relations: vec![],
        };
        let r = reduction_report(&p, &set(&[])).unwrap();
        assert_eq!(r.components.iter().map(|c| c.label.as_str()).collect::<Vec<_>>(), vec!["A2", "A2"]);
        assert!(!r.verdict);
        assert!(r.normal_form);
    }

    #[test]
    fn bad_inputs() {
        assert_eq!(cy_reduce_quiver(&diamond(), &set(&["9"])), Err(CyError::BadRemovedSet("9".into())));
        let mut p = diamond();
        p.relations.push(Relation::new("1", "7"));
        assert!(matches!(cy_reduce_quiver(&p, &set(&[])), Err(CyError::UnknownRelationVertex { .. })));
        let cyc = AlgebraPresentation {
            quiver: ColoredQuiver::uncolored(&["1", "2"], &[("1", "2", 1), ("2", "1", 1)]).unwrap(),
            relations: vec![],
        };
        assert_eq!(cy_reduce_quiver(&cyc, &set(&[])), Err(CyError::Cyclic));
    }

    #[test]
    fn json_shape() {
        let text = r#"{"quiver":{"vertices":[{"id":"1"},{"id":"2"}],"arrows":[{"src":"1","dst":"2","color":null,"mult":1}]},"relations":[{"src":"1","dst":"2","support":null}]}"#;
        let p: AlgebraPresentation = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), text);
    }
}
