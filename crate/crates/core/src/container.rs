//! Indexed containers, their extension functors, and the finitary functor
//! interface shared with the finite powerset functors.

use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finset::{FinIndexedSet, IndexedMap};
use crate::term::Term;

/// Refuse to enumerate functor images larger than this.
pub const ENUMERATION_LIMIT: usize = 1 << 20;

/// An outgoing edge of an element of `F X`, pointing at an element of `X`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Successor {
    pub label: String,
    pub index: String,
    pub target: String,
}

/// A functor on finite indexed sets, given by explicit enumeration of its
/// action on objects and its action on maps.
///
/// Implementations must satisfy the functor laws; the test suites check them
/// for every registered instance.
pub trait FinitaryFunctor: Send + Sync + fmt::Debug {
    /// Registry name this functor can be resolved from.
    fn name(&self) -> String;

    /// Enumerates `F X` with canonical element labels.
    fn apply_obj(&self, x: &FinIndexedSet) -> Result<FinIndexedSet>;

    /// Image of one element of `F X` under `F f`, where `X` is the source of `f`.
    fn map_elem(&self, f: &IndexedMap, index: &str, elem: &str) -> Result<String>;

    /// Whether `elem` is an element of `F X` at `index`.
    fn contains(&self, x: &FinIndexedSet, index: &str, elem: &str) -> bool;

    /// The elements of `X` that `elem` is built from, with edge labels.
    fn successors(&self, x: &FinIndexedSet, index: &str, elem: &str) -> Result<Vec<Successor>>;

    /// `F f : F X → F Y`.
    fn apply_map(&self, f: &IndexedMap) -> Result<IndexedMap> {
        let fx = self.apply_obj(f.source())?;
        let fy = self.apply_obj(f.target())?;
        IndexedMap::from_fn(&fx, &fy, |i, u| self.map_elem(f, i, u))
    }
}

pub type FunctorRef = Arc<dyn FinitaryFunctor>;

/// Positions of one `(index, shape, target index)` triple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositionDecl {
    pub index: String,
    pub shape: String,
    pub target: String,
    pub positions: Vec<String>,
}

/// Per-index shape list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeDecl {
    pub index: String,
    pub shapes: Vec<String>,
}

/// Unvalidated container data, as written in files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContainerDecl {
    pub name: String,
    pub indices: Vec<String>,
    pub shapes: Vec<ShapeDecl>,
    #[serde(default)]
    pub positions: Vec<PositionDecl>,
}

fn invalid(path: impl Into<String>, msg: impl Into<String>) -> Error {
    Error::InvalidContainer {
        path: path.into(),
        msg: msg.into(),
    }
}

/// Checks every container invariant, reporting the first violation.
pub fn validate_container(decl: &ContainerDecl) -> Result<()> {
    let mut indices = IndexSet::new();
    for (k, i) in decl.indices.iter().enumerate() {
        if !indices.insert(i.as_str()) {
            return Err(invalid(
                format!("indices[{k}]"),
                format!("duplicate index {i:?}"),
            ));
        }
    }
    let mut shaped = IndexSet::new();
    for (k, sd) in decl.shapes.iter().enumerate() {
        if !indices.contains(sd.index.as_str()) {
            return Err(invalid(
                format!("shapes[{k}].index"),
                format!("unknown index {:?}", sd.index),
            ));
        }
        if !shaped.insert(sd.index.as_str()) {
            return Err(invalid(
                format!("shapes[{k}].index"),
                format!("shapes of index {:?} declared twice", sd.index),
            ));
        }
        let mut seen = IndexSet::new();
        for (m, s) in sd.shapes.iter().enumerate() {
            if !seen.insert(s.as_str()) {
                return Err(invalid(
                    format!("shapes[{k}].shapes[{m}]"),
                    format!("duplicate shape {s:?}"),
                ));
            }
        }
    }
    let mut keys = IndexSet::new();
    for (k, pd) in decl.positions.iter().enumerate() {
        let path = format!("positions[{k}]");
        if !indices.contains(pd.index.as_str()) {
            return Err(invalid(
                format!("{path}.index"),
                format!("unknown index {:?}", pd.index),
            ));
        }
        let has_shape = decl
            .shapes
            .iter()
            .any(|sd| sd.index == pd.index && sd.shapes.contains(&pd.shape));
        if !has_shape {
            return Err(invalid(
                format!("{path}.shape"),
                format!("unknown shape {:?} at index {:?}", pd.shape, pd.index),
            ));
        }
        if !indices.contains(pd.target.as_str()) {
            return Err(invalid(
                format!("{path}.target"),
                format!("unknown index {:?}", pd.target),
            ));
        }
        if !keys.insert((&pd.index, &pd.shape, &pd.target)) {
            return Err(invalid(
                path,
                format!(
                    "positions of ({}, {}, {}) declared twice",
                    pd.index, pd.shape, pd.target
                ),
            ));
        }
        let mut seen = IndexSet::new();
        for (m, p) in pd.positions.iter().enumerate() {
            if !seen.insert(p.as_str()) {
                return Err(invalid(
                    format!("{path}.positions[{m}]"),
                    format!("duplicate position {p:?}"),
                ));
            }
        }
    }
    Ok(())
}

/// One position of a shape: the index its child lives at and its label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    pub target: usize,
    pub label: String,
}

/// A validated indexed container `(S, P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedContainer {
    decl: ContainerDecl,
    indices: IndexSet<String>,
    shapes: Vec<IndexSet<String>>,
    // per index, per shape: positions ordered by target index then declaration
    layout: Vec<Vec<Vec<Position>>>,
}

/// An element `(s, f)` of the extension, with `f` stored as element positions
/// in `X` following the shape's position layout.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtensionElement {
    pub index: usize,
    pub shape: usize,
    pub assignment: Vec<usize>,
}

impl IndexedContainer {
    pub fn new(decl: ContainerDecl) -> Result<Self> {
        validate_container(&decl)?;
        let indices: IndexSet<String> = decl.indices.iter().cloned().collect();
        let shapes: Vec<IndexSet<String>> = indices
            .iter()
            .map(|i| {
                decl.shapes
                    .iter()
                    .find(|sd| &sd.index == i)
                    .map(|sd| sd.shapes.iter().cloned().collect())
                    .unwrap_or_default()
            })
            .collect();
        let layout = indices
            .iter()
            .enumerate()
            .map(|(i, index)| {
                shapes[i]
                    .iter()
                    .map(|shape| {
                        let mut out = Vec::new();
                        for (j, target) in indices.iter().enumerate() {
                            if let Some(pd) = decl.positions.iter().find(|pd| {
                                &pd.index == index && &pd.shape == shape && &pd.target == target
                            }) {
                                out.extend(pd.positions.iter().map(|p| Position {
                                    target: j,
                                    label: p.clone(),
                                }));
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        Ok(IndexedContainer {
            decl,
            indices,
            shapes,
            layout,
        })
    }

    pub fn decl(&self) -> &ContainerDecl {
        &self.decl
    }

    pub fn name(&self) -> &str {
        &self.decl.name
    }

    pub fn num_indices(&self) -> usize {
        self.indices.len()
    }

    pub fn index_label(&self, i: usize) -> &str {
        &self.indices[i]
    }

    pub fn index_pos(&self, label: &str) -> Option<usize> {
        self.indices.get_index_of(label)
    }

    pub fn shapes(&self, i: usize) -> &IndexSet<String> {
        &self.shapes[i]
    }

    pub fn shape_pos(&self, i: usize, shape: &str) -> Option<usize> {
        self.shapes[i].get_index_of(shape)
    }

    /// Positions of shape `s` at index `i`, in canonical order.
    pub fn positions(&self, i: usize, s: usize) -> &[Position] {
        &self.layout[i][s]
    }

    /// An indexed set over this container's indices with empty fibres.
    pub fn empty_set(&self) -> FinIndexedSet {
        FinIndexedSet::new(
            self.indices
                .iter()
                .map(|i| (i.clone(), Vec::<String>::new())),
        )
        .expect("distinct indices")
    }

    fn check_base(&self, x: &FinIndexedSet) -> Result<()> {
        if x.indices().eq(self.indices.iter().map(String::as_str)) {
            Ok(())
        } else {
            Err(Error::BaseMismatch(format!(
                "set indices do not match container {:?}",
                self.decl.name
            )))
        }
    }

    /// Number of elements of the extension at each index, by the product formula.
    pub fn extension_cardinality(&self, x: &FinIndexedSet) -> Result<Vec<usize>> {
        self.check_base(x)?;
        Ok((0..self.num_indices())
            .map(|i| {
                self.layout[i]
                    .iter()
                    .map(|ps| ps.iter().map(|p| x.len_at(p.target)).product::<usize>())
                    .sum()
            })
            .collect())
    }

    /// Canonical label of an extension element.
    pub fn encode(&self, x: &FinIndexedSet, e: &ExtensionElement) -> String {
        let ps = &self.layout[e.index][e.shape];
        let args = ps
            .iter()
            .zip(&e.assignment)
            .map(|(p, &v)| Term::from_label(x.elem_label(p.target, v)))
            .collect();
        Term::app(self.shapes[e.index][e.shape].clone(), args).to_string()
    }

    /// Parses an extension element label at index `i` over `x`.
    pub fn decode(&self, x: &FinIndexedSet, i: usize, label: &str) -> Result<ExtensionElement> {
        let term = Term::parse(label)?;
        let (head, args) = term
            .as_app()
            .ok_or_else(|| Error::Encoding(format!("{label:?} is not a shape application")))?;
        let shape = self.shape_pos(i, head).ok_or_else(|| {
            Error::Encoding(format!(
                "{head:?} is not a shape at index {:?}",
                self.index_label(i)
            ))
        })?;
        let ps = &self.layout[i][shape];
        if ps.len() != args.len() {
            return Err(Error::Encoding(format!(
                "shape {head:?} expects {} arguments, got {}",
                ps.len(),
                args.len()
            )));
        }
        let assignment = ps
            .iter()
            .zip(args)
            .map(|(p, a)| {
                let l = a.to_label();
                x.elem_pos(p.target, &l).ok_or_else(|| {
                    Error::Encoding(format!(
                        "{l:?} is not an element at index {:?}",
                        self.index_label(p.target)
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Ok(ExtensionElement {
            index: i,
            shape,
            assignment,
        })
    }

    /// Enumerates extension elements at index `i`: shapes in order, then
    /// assignments lexicographically with the first position most significant.
    pub fn extension_elements(&self, x: &FinIndexedSet, i: usize) -> Vec<ExtensionElement> {
        let mut out = Vec::new();
        for (s, ps) in self.layout[i].iter().enumerate() {
            let radices: Vec<usize> = ps.iter().map(|p| x.len_at(p.target)).collect();
            for assignment in product(&radices) {
                out.push(ExtensionElement {
                    index: i,
                    shape: s,
                    assignment,
                });
            }
        }
        out
    }

    /// `[S,P] X`.
    pub fn extension(&self, x: &FinIndexedSet) -> Result<FinIndexedSet> {
        self.check_base(x)?;
        let total: usize = self.extension_cardinality(x)?.iter().sum();
        if total > ENUMERATION_LIMIT {
            return Err(Error::Unsupported(format!(
                "extension has {total} elements"
            )));
        }
        let fibres: Vec<(String, Vec<String>)> = (0..self.num_indices())
            .map(|i| {
                let elems = self
                    .extension_elements(x, i)
                    .iter()
                    .map(|e| self.encode(x, e))
                    .collect();
                (self.index_label(i).to_string(), elems)
            })
            .collect();
        FinIndexedSet::new(fibres)
    }

    /// `[S,P] g`: `(s, f) ↦ (s, g ∘ f)`.
    pub fn extension_map(&self, g: &IndexedMap) -> Result<IndexedMap> {
        let fx = self.extension(g.source())?;
        let fy = self.extension(g.target())?;
        IndexedMap::from_fn(&fx, &fy, |i, u| self.map_label(g, i, u))
    }

    fn map_label(&self, g: &IndexedMap, index: &str, elem: &str) -> Result<String> {
        let i = self
            .index_pos(index)
            .ok_or_else(|| Error::BaseMismatch(format!("unknown index {index:?}")))?;
        let mut e = self.decode(g.source(), i, elem)?;
        for (p, v) in self.layout[i][e.shape].iter().zip(e.assignment.iter_mut()) {
            *v = g.apply_pos(p.target, *v);
        }
        Ok(self.encode(g.target(), &e))
    }

    pub fn as_functor(self: &Arc<Self>) -> FunctorRef {
        Arc::new(ContainerFunctor(self.clone()))
    }
}

/// All tuples below the given radices, in lexicographic order.
pub(crate) fn product(radices: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let empty = radices.contains(&0);
    let mut next = if empty {
        None
    } else {
        Some(vec![0; radices.len()])
    };
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        for k in (0..succ.len()).rev() {
            succ[k] += 1;
            if succ[k] < radices[k] {
                next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(cur)
    })
}

/// The extension functor of a container.
#[derive(Clone, Debug)]
pub struct ContainerFunctor(pub Arc<IndexedContainer>);

impl FinitaryFunctor for ContainerFunctor {
    fn name(&self) -> String {
        self.0.name().to_string()
    }

    fn apply_obj(&self, x: &FinIndexedSet) -> Result<FinIndexedSet> {
        self.0.extension(x)
    }

    fn map_elem(&self, f: &IndexedMap, index: &str, elem: &str) -> Result<String> {
        self.0.map_label(f, index, elem)
    }

    fn contains(&self, x: &FinIndexedSet, index: &str, elem: &str) -> bool {
        self.0.check_base(x).is_ok()
            && self.0.index_pos(index).is_some_and(|i| {
                self.0
                    .decode(x, i, elem)
                    .is_ok_and(|e| self.0.encode(x, &e) == elem)
            })
    }

    fn successors(&self, x: &FinIndexedSet, index: &str, elem: &str) -> Result<Vec<Successor>> {
        let c = &self.0;
        let i = c
            .index_pos(index)
            .ok_or_else(|| Error::BaseMismatch(format!("unknown index {index:?}")))?;
        let e = c.decode(x, i, elem)?;
        Ok(c.positions(i, e.shape)
            .iter()
            .zip(&e.assignment)
            .map(|(p, &v)| Successor {
                label: p.label.clone(),
                index: c.index_label(p.target).to_string(),
                target: x.elem_label(p.target, v).to_string(),
            })
            .collect())
    }

    fn apply_map(&self, f: &IndexedMap) -> Result<IndexedMap> {
        self.0.extension_map(f)
    }
}

fn subsets(items: &[Term]) -> Result<Vec<String>> {
    if items.len() >= usize::BITS as usize || (1usize << items.len()) > ENUMERATION_LIMIT {
        return Err(Error::Unsupported(format!(
            "powerset of {} elements",
            items.len()
        )));
    }
    Ok((0..1usize << items.len())
        .map(|mask| {
            Term::set(
                items
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, t)| t.clone()),
            )
            .to_string()
        })
        .collect())
}

fn parse_subset(elem: &str) -> Result<Vec<Term>> {
    let t = Term::parse(elem)?;
    if t.to_string() != elem {
        return Err(Error::Encoding(format!("{elem:?} is not canonical")));
    }
    match t {
        Term::Set(items) => Ok(items),
        _ => Err(Error::Encoding(format!("{elem:?} is not a set"))),
    }
}

/// The finite powerset functor on single-index sets.
#[derive(Clone, Debug, Default)]
pub struct PfinFunctor;

impl FinitaryFunctor for PfinFunctor {
    fn name(&self) -> String {
        "pfin".into()
    }

    fn apply_obj(&self, x: &FinIndexedSet) -> Result<FinIndexedSet> {
        let index = x.sole_index()?;
        let items: Vec<Term> = x.fibre(0).iter().map(|l| Term::from_label(l)).collect();
        FinIndexedSet::single(index, subsets(&items)?)
    }

    /// Direct image.
    fn map_elem(&self, f: &IndexedMap, index: &str, elem: &str) -> Result<String> {
        f.source().sole_index()?;
        let image = parse_subset(elem)?
            .iter()
            .map(|t| f.apply_label(index, &t.to_label()).map(Term::from_label))
            .collect::<Result<Vec<_>>>()?;
        Ok(Term::set(image).to_string())
    }

    fn contains(&self, x: &FinIndexedSet, index: &str, elem: &str) -> bool {
        x.num_indices() == 1
            && parse_subset(elem)
                .is_ok_and(|items| items.iter().all(|t| x.contains(index, &t.to_label())))
    }

    fn successors(&self, x: &FinIndexedSet, index: &str, elem: &str) -> Result<Vec<Successor>> {
        x.sole_index()?;
        Ok(parse_subset(elem)?
            .iter()
            .map(|t| Successor {
                label: String::new(),
                index: index.to_string(),
                target: t.to_label(),
            })
            .collect())
    }
}

/// `Pfin(A × −)`: finitely branching transition systems labelled by `A`.
#[derive(Clone, Debug)]
pub struct PfinProdFunctor {
    labels: Vec<String>,
}

impl PfinProdFunctor {
    pub fn new<L: IntoIterator<Item = S>, S: Into<String>>(labels: L) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let distinct: IndexSet<&String> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::MalformedSet("duplicate action label".into()));
        }
        Ok(PfinProdFunctor { labels })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn parse_pairs(&self, elem: &str) -> Result<Vec<(String, String)>> {
        parse_subset(elem)?
            .iter()
            .map(|t| match t.as_tuple() {
                Some([a, x]) if self.labels.contains(&a.to_label()) => {
                    Ok((a.to_label(), x.to_label()))
                }
                _ => Err(Error::Encoding(format!("{t} is not a labelled transition"))),
            })
            .collect()
    }

    /// Canonical label of a set of `(action, state)` transitions.
    pub fn encode<'a, I: IntoIterator<Item = (&'a str, &'a str)>>(transitions: I) -> String {
        Term::set(
            transitions
                .into_iter()
                .map(|(a, x)| Term::pair(Term::from_label(a), Term::from_label(x))),
        )
        .to_string()
    }
}

impl FinitaryFunctor for PfinProdFunctor {
    fn name(&self) -> String {
        format!("lts:{}", self.labels.join(","))
    }

    fn apply_obj(&self, x: &FinIndexedSet) -> Result<FinIndexedSet> {
        let index = x.sole_index()?;
        let items: Vec<Term> = self
            .labels
            .iter()
            .flat_map(|a| {
                x.fibre(0)
                    .iter()
                    .map(move |s| Term::pair(Term::from_label(a), Term::from_label(s)))
            })
            .collect();
        FinIndexedSet::single(index, subsets(&items)?)
    }

    fn map_elem(&self, f: &IndexedMap, index: &str, elem: &str) -> Result<String> {
        f.source().sole_index()?;
        let pairs = self.parse_pairs(elem)?;
        let mut image = Vec::with_capacity(pairs.len());
        for (a, x) in &pairs {
            image.push((a.as_str(), f.apply_label(index, x)?));
        }
        Ok(Self::encode(image))
    }

    fn contains(&self, x: &FinIndexedSet, index: &str, elem: &str) -> bool {
        x.num_indices() == 1
            && self
                .parse_pairs(elem)
                .is_ok_and(|ps| ps.iter().all(|(_, s)| x.contains(index, s)))
    }

    fn successors(&self, x: &FinIndexedSet, index: &str, elem: &str) -> Result<Vec<Successor>> {
        x.sole_index()?;
        Ok(self
            .parse_pairs(elem)?
            .into_iter()
            .map(|(a, t)| Successor {
                label: a,
                index: index.to_string(),
                target: t,
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stdlib;

    fn decl(positions: Vec<PositionDecl>) -> ContainerDecl {
        ContainerDecl {
            name: "t".into(),
            indices: vec!["i".into()],
            shapes: vec![ShapeDecl {
                index: "i".into(),
                shapes: vec!["a".into(), "b".into()],
            }],
            positions,
        }
    }

    #[test]
    fn validation_reports_first_violation() {
        assert!(validate_container(stdlib::nat_container().decl()).is_ok());
        let bad = decl(vec![PositionDecl {
            index: "i".into(),
            shape: "a".into(),
            target: "j".into(),
            positions: vec![],
        }]);
        let err = validate_container(&bad).unwrap_err().to_string();
        assert!(
            err.contains("unknown index") && err.contains("positions[0].target"),
            "{err}"
        );
        let dup = decl(vec![PositionDecl {
            index: "i".into(),
            shape: "b".into(),
            target: "i".into(),
            positions: vec!["p".into(), "p".into()],
        }]);
        assert!(validate_container(&dup)
            .unwrap_err()
            .to_string()
            .contains("duplicate position"));
        let unknown_shape = decl(vec![PositionDecl {
            index: "i".into(),
            shape: "c".into(),
            target: "i".into(),
            positions: vec![],
        }]);
        assert!(validate_container(&unknown_shape)
            .unwrap_err()
            .to_string()
            .contains("unknown shape"));
    }

    #[test]
    fn product_enumerates_lexicographically() {
        let all: Vec<_> = product(&[2, 3]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(product(&[]).count(), 1);
        assert_eq!(product(&[2, 0]).count(), 0);
    }

    #[test]
    fn nat_extension_is_one_plus_x() {
        let nat = stdlib::nat_container();
        for n in 0..5 {
            let x = FinIndexedSet::single("nat", (0..n).map(|k| format!("x{k}"))).unwrap();
            assert_eq!(nat.extension(&x).unwrap().total_len(), 1 + n);
        }
        let x = FinIndexedSet::single("nat", ["a"]).unwrap();
        assert_eq!(
            nat.extension(&x)
                .unwrap()
                .fibre(0)
                .iter()
                .collect::<Vec<_>>(),
            ["z", "s(a)"]
        );
    }

    #[test]
    fn nullary_shapes_over_empty_sets() {
        let oe = stdlib::odds_evens_container();
        let empty = oe.empty_set();
        let ext = oe.extension(&empty).unwrap();
        assert_eq!(ext.fibre(0).iter().collect::<Vec<_>>(), ["zero"]);
        assert_eq!(ext.len_at(1), 0);
    }

    #[test]
    fn extension_map_applies_pointwise() {
        let nat = Arc::new(stdlib::nat_container());
        let x = FinIndexedSet::single("nat", ["a"]).unwrap();
        let y = FinIndexedSet::single("nat", ["b"]).unwrap();
        let g = IndexedMap::from_fn(&x, &y, |_, _| Ok("b".into())).unwrap();
        let fg = nat.extension_map(&g).unwrap();
        assert_eq!(fg.apply_label("nat", "s(a)").unwrap(), "s(b)");
        assert_eq!(fg.apply_label("nat", "z").unwrap(), "z");
        let id = nat.extension_map(&IndexedMap::identity(&x)).unwrap();
        assert_eq!(id, IndexedMap::identity(&nat.extension(&x).unwrap()));
        assert_eq!(nat.as_functor().apply_obj(&x).unwrap().total_len(), 2);
    }

    #[test]
    fn powerset_objects_and_images() {
        let empty = FinIndexedSet::single("*", Vec::<String>::new()).unwrap();
        assert_eq!(
            PfinFunctor
                .apply_obj(&empty)
                .unwrap()
                .fibre(0)
                .iter()
                .collect::<Vec<_>>(),
            ["{}"]
        );
        let x = FinIndexedSet::single("*", ["a", "b"]).unwrap();
        let px = PfinFunctor.apply_obj(&x).unwrap();
        assert_eq!(
            px.fibre(0).iter().collect::<Vec<_>>(),
            ["{}", "{a}", "{b}", "{a,b}"]
        );
        let y = FinIndexedSet::single("*", ["c"]).unwrap();
        let f = IndexedMap::from_fn(&x, &y, |_, _| Ok("c".into())).unwrap();
        assert_eq!(PfinFunctor.map_elem(&f, "*", "{a,b}").unwrap(), "{c}");
        let two = FinIndexedSet::new([("i", vec!["a"]), ("j", vec!["b"])]).unwrap();
        assert!(matches!(
            PfinFunctor.apply_obj(&two),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn lts_functor_counts_and_successors() {
        let lts = PfinProdFunctor::new(["a", "b"]).unwrap();
        let one = FinIndexedSet::single("*", ["s"]).unwrap();
        assert_eq!(lts.apply_obj(&one).unwrap().total_len(), 4);
        let two = FinIndexedSet::single("*", ["s", "t"]).unwrap();
        let e = PfinProdFunctor::encode([("b", "t"), ("a", "s")]);
        assert_eq!(e, "{(a,s),(b,t)}");
        assert!(lts.contains(&two, "*", &e));
        assert!(!lts.contains(&two, "*", "{(c,s)}"));
        let succ = lts.successors(&two, "*", &e).unwrap();
        assert_eq!(
            succ[1],
            Successor {
                label: "b".into(),
                index: "*".into(),
                target: "t".into()
            }
        );
    }
}
