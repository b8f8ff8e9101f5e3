//! The document format for containers, coalgebras, relations, predicates,
//! algebras and trees.
//!
//! Every document is a JSON object with a `kind` tag and a mandatory
//! `version` (currently 1). Unknown fields are rejected. [`serialize`] emits
//! the canonical form: keys sorted, two-space indentation, element lists in
//! declared order, composite labels in canonical term encoding. The grammar of
//! each kind is documented in `docs/format.md`.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coinductive::{FiniteCoalgebra, Relation};
use crate::container::{
    validate_container, ContainerDecl, IndexedContainer, PositionDecl, ShapeDecl,
};
use crate::error::Error;
use crate::finset::{FinIndexedSet, Predicate, STAR};
use crate::inductive::{tree_from_term, AlgebraTable, WTree};
use crate::registry::FunctorRegistry;
use crate::term::Term;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("syntax error at line {line}, column {column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("schema error at line {line}, column {column}: {msg}")]
    Schema {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("referential error: {0}")]
    Reference(String),
    #[error(transparent)]
    Domain(#[from] Error),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        let msg = e.to_string();
        // serde_json appends " at line L column C"; keep only the message.
        let msg = match msg.rfind(" at line ") {
            Some(pos) => msg[..pos].to_string(),
            None => msg,
        };
        match e.classify() {
            serde_json::error::Category::Data => FormatError::Schema {
                line: e.line(),
                column: e.column(),
                msg,
            },
            _ => FormatError::Syntax {
                line: e.line(),
                column: e.column(),
                msg,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Container,
    Coalgebra,
    Relation,
    Predicate,
    Algebra,
    Tree,
}

/// One fibre of an indexed set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibreDoc {
    pub index: String,
    pub elements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContainerDoc {
    pub kind: Kind,
    pub version: u32,
    pub name: String,
    pub indices: Vec<String>,
    pub shapes: Vec<ShapeDecl>,
    #[serde(default)]
    pub positions: Vec<PositionDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionDoc {
    pub index: String,
    pub state: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraDoc {
    pub kind: Kind,
    pub version: u32,
    pub functor: String,
    pub carrier: Vec<FibreDoc>,
    pub map: Vec<TransitionDoc>,
}

fn unit_witness() -> Vec<String> {
    vec![STAR.to_string()]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub index: String,
    pub left: String,
    pub right: String,
    #[serde(default = "unit_witness")]
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDoc {
    pub kind: Kind,
    pub version: u32,
    pub base: Vec<FibreDoc>,
    pub pairs: Vec<PairDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub index: String,
    pub element: String,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredicateDoc {
    pub kind: Kind,
    pub version: u32,
    pub base: Vec<FibreDoc>,
    pub witnesses: Vec<WitnessDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraEntryDoc {
    pub index: String,
    pub element: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub kind: Kind,
    pub version: u32,
    pub carrier: Vec<FibreDoc>,
    pub table: Vec<AlgebraEntryDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeDoc {
    pub kind: Kind,
    pub version: u32,
    pub index: String,
    pub term: String,
}

/// A parsed document of any kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecDocument {
    Container(ContainerDoc),
    Coalgebra(CoalgebraDoc),
    Relation(RelationDoc),
    Predicate(PredicateDoc),
    Algebra(AlgebraDoc),
    Tree(TreeDoc),
}

#[derive(Deserialize)]
struct Header {
    kind: Kind,
    version: u32,
}

fn typed<T: DeserializeOwned>(text: &str) -> Result<T, FormatError> {
    Ok(serde_json::from_str(text)?)
}

fn canonical_label(s: &str) -> String {
    Term::parse(s)
        .map(|t| t.to_string())
        .unwrap_or_else(|_| s.to_string())
}

/// Parses and checks a document: syntax, schema, and every reference that
/// can be resolved within the document itself.
pub fn parse(text: &str) -> Result<SpecDocument, FormatError> {
    let header: Header = typed(text)?;
    if header.version != FORMAT_VERSION {
        return Err(FormatError::Schema {
            line: 1,
            column: 1,
            msg: format!(
                "unsupported version {}, expected {FORMAT_VERSION}",
                header.version
            ),
        });
    }
    let mut doc = match header.kind {
        Kind::Container => SpecDocument::Container(typed(text)?),
        Kind::Coalgebra => SpecDocument::Coalgebra(typed(text)?),
        Kind::Relation => SpecDocument::Relation(typed(text)?),
        Kind::Predicate => SpecDocument::Predicate(typed(text)?),
        Kind::Algebra => SpecDocument::Algebra(typed(text)?),
        Kind::Tree => SpecDocument::Tree(typed(text)?),
    };
    doc.canonicalize();
    doc.check_references()?;
    Ok(doc)
}

/// Canonical text of a document.
pub fn serialize(doc: &SpecDocument) -> String {
    let value = match doc {
        SpecDocument::Container(d) => serde_json::to_value(d),
        SpecDocument::Coalgebra(d) => serde_json::to_value(d),
        SpecDocument::Relation(d) => serde_json::to_value(d),
        SpecDocument::Predicate(d) => serde_json::to_value(d),
        SpecDocument::Algebra(d) => serde_json::to_value(d),
        SpecDocument::Tree(d) => serde_json::to_value(d),
    }
    .expect("documents serialize");
    let mut out = serde_json::to_string_pretty(&value).expect("values serialize");
    out.push('\n');
    out
}

fn set_of(fibres: &[FibreDoc]) -> Result<FinIndexedSet, FormatError> {
    FinIndexedSet::new(fibres.iter().map(|f| (f.index.clone(), f.elements.clone())))
        .map_err(|e| FormatError::Reference(e.to_string()))
}

fn fibres_of(x: &FinIndexedSet) -> Vec<FibreDoc> {
    (0..x.num_indices())
        .map(|i| FibreDoc {
            index: x.index_label(i).into(),
            elements: x.fibre(i).iter().cloned().collect(),
        })
        .collect()
}

fn reference(e: Error) -> FormatError {
    FormatError::Reference(e.to_string())
}

impl SpecDocument {
    pub fn kind(&self) -> Kind {
        match self {
            SpecDocument::Container(_) => Kind::Container,
            SpecDocument::Coalgebra(_) => Kind::Coalgebra,
            SpecDocument::Relation(_) => Kind::Relation,
            SpecDocument::Predicate(_) => Kind::Predicate,
            SpecDocument::Algebra(_) => Kind::Algebra,
            SpecDocument::Tree(_) => Kind::Tree,
        }
    }

    fn canonicalize(&mut self) {
        match self {
            SpecDocument::Coalgebra(d) => {
                for t in &mut d.map {
                    t.image = canonical_label(&t.image);
                }
            }
            SpecDocument::Algebra(d) => {
                for e in &mut d.table {
                    e.element = canonical_label(&e.element);
                }
            }
            SpecDocument::Tree(d) => d.term = canonical_label(&d.term),
            _ => {}
        }
    }

    fn check_references(&self) -> Result<(), FormatError> {
        match self {
            SpecDocument::Container(_) => {
                self.to_container()?;
            }
            SpecDocument::Relation(_) => {
                self.to_relation()?;
            }
            SpecDocument::Predicate(_) => {
                self.to_predicate()?;
            }
            SpecDocument::Coalgebra(d) => {
                let carrier = set_of(&d.carrier)?;
                let mut seen = std::collections::HashSet::new();
                for t in &d.map {
                    if !carrier.contains(&t.index, &t.state) {
                        return Err(FormatError::Reference(format!(
                            "undeclared state {:?} at index {:?}",
                            t.state, t.index
                        )));
                    }
                    if !seen.insert((&t.index, &t.state)) {
                        return Err(FormatError::Reference(format!(
                            "state {:?} mapped twice",
                            t.state
                        )));
                    }
                }
                if seen.len() != carrier.total_len() {
                    return Err(FormatError::Reference(
                        "structure map does not cover every state".into(),
                    ));
                }
            }
            SpecDocument::Algebra(d) => {
                let carrier = set_of(&d.carrier)?;
                for e in &d.table {
                    if !carrier.contains(&e.index, &e.value) {
                        return Err(FormatError::Reference(format!(
                            "undeclared carrier element {:?} at index {:?}",
                            e.value, e.index
                        )));
                    }
                }
            }
            SpecDocument::Tree(d) => {
                Term::parse(&d.term).map_err(reference)?;
            }
        }
        Ok(())
    }

    pub fn from_container(c: &IndexedContainer) -> SpecDocument {
        let d = c.decl();
        SpecDocument::Container(ContainerDoc {
            kind: Kind::Container,
            version: FORMAT_VERSION,
            name: d.name.clone(),
            indices: d.indices.clone(),
            shapes: d.shapes.clone(),
            positions: d.positions.clone(),
        })
    }

    pub fn from_relation(r: &Relation) -> SpecDocument {
        SpecDocument::Relation(RelationDoc {
            kind: Kind::Relation,
            version: FORMAT_VERSION,
            base: fibres_of(r.base()),
            pairs: r
                .rows()
                .into_iter()
                .map(|(index, left, right, witnesses)| PairDoc {
                    index,
                    left,
                    right,
                    witnesses,
                })
                .collect(),
        })
    }

    pub fn from_predicate(p: &Predicate) -> SpecDocument {
        let base = p.base();
        SpecDocument::Predicate(PredicateDoc {
            kind: Kind::Predicate,
            version: FORMAT_VERSION,
            base: fibres_of(base),
            witnesses: base
                .positions()
                .map(|(i, x)| WitnessDoc {
                    index: base.index_label(i).into(),
                    element: base.elem_label(i, x).into(),
                    witnesses: p.witnesses(i, x).iter().cloned().collect(),
                })
                .collect(),
        })
    }

    pub fn from_coalgebra(k: &FiniteCoalgebra) -> SpecDocument {
        let x = k.carrier();
        SpecDocument::Coalgebra(CoalgebraDoc {
            kind: Kind::Coalgebra,
            version: FORMAT_VERSION,
            functor: k.functor().name(),
            carrier: fibres_of(x),
            map: x
                .positions()
                .map(|(i, s)| TransitionDoc {
                    index: x.index_label(i).into(),
                    state: x.elem_label(i, s).into(),
                    image: k.image(i, s).into(),
                })
                .collect(),
        })
    }

    pub fn from_algebra(h: &AlgebraTable) -> SpecDocument {
        SpecDocument::Algebra(AlgebraDoc {
            kind: Kind::Algebra,
            version: FORMAT_VERSION,
            carrier: fibres_of(h.carrier()),
            table: h
                .rows()
                .into_iter()
                .map(|(index, element, value)| AlgebraEntryDoc {
                    index,
                    element,
                    value,
                })
                .collect(),
        })
    }

    pub fn from_tree(t: &WTree) -> SpecDocument {
        SpecDocument::Tree(TreeDoc {
            kind: Kind::Tree,
            version: FORMAT_VERSION,
            index: t.index().into(),
            term: t.label(),
        })
    }

    fn wrong_kind(&self, want: Kind) -> FormatError {
        FormatError::Reference(
            format!("expected a {want:?} document, found {:?}", self.kind()).to_lowercase(),
        )
    }

    pub fn to_container(&self) -> Result<IndexedContainer, FormatError> {
        let SpecDocument::Container(d) = self else {
            return Err(self.wrong_kind(Kind::Container));
        };
        let decl = ContainerDecl {
            name: d.name.clone(),
            indices: d.indices.clone(),
            shapes: d.shapes.clone(),
            positions: d.positions.clone(),
        };
        validate_container(&decl).map_err(reference)?;
        IndexedContainer::new(decl).map_err(reference)
    }

    pub fn to_relation(&self) -> Result<Relation, FormatError> {
        let SpecDocument::Relation(d) = self else {
            return Err(self.wrong_kind(Kind::Relation));
        };
        let base = set_of(&d.base)?;
        Relation::from_rows(
            &base,
            d.pairs.iter().map(|p| {
                (
                    p.index.as_str(),
                    p.left.as_str(),
                    p.right.as_str(),
                    p.witnesses.clone(),
                )
            }),
        )
        .map_err(reference)
    }

    pub fn to_predicate(&self) -> Result<Predicate, FormatError> {
        let SpecDocument::Predicate(d) = self else {
            return Err(self.wrong_kind(Kind::Predicate));
        };
        let base = set_of(&d.base)?;
        Predicate::from_rows(
            &base,
            d.witnesses
                .iter()
                .map(|w| (w.index.as_str(), w.element.as_str(), w.witnesses.clone())),
        )
        .map_err(reference)
    }

    pub fn to_coalgebra(&self, registry: &FunctorRegistry) -> Result<FiniteCoalgebra, FormatError> {
        let SpecDocument::Coalgebra(d) = self else {
            return Err(self.wrong_kind(Kind::Coalgebra));
        };
        let functor = registry.resolve(&d.functor).map_err(reference)?;
        let carrier = set_of(&d.carrier)?;
        FiniteCoalgebra::from_rows(
            functor,
            &carrier,
            d.map
                .iter()
                .map(|t| (t.index.as_str(), t.state.as_str(), t.image.as_str())),
        )
        .map_err(reference)
    }

    pub fn to_algebra(&self, c: &IndexedContainer) -> Result<AlgebraTable, FormatError> {
        let SpecDocument::Algebra(d) = self else {
            return Err(self.wrong_kind(Kind::Algebra));
        };
        let carrier = set_of(&d.carrier)?;
        AlgebraTable::from_rows(
            c,
            &carrier,
            d.table
                .iter()
                .map(|e| (e.index.as_str(), e.element.as_str(), e.value.as_str())),
        )
        .map_err(reference)
    }

    pub fn to_tree(&self, c: &IndexedContainer) -> Result<Arc<WTree>, FormatError> {
        let SpecDocument::Tree(d) = self else {
            return Err(self.wrong_kind(Kind::Tree));
        };
        let term = Term::parse(&d.term).map_err(reference)?;
        tree_from_term(c, &d.index, &term)
            .map(Arc::new)
            .map_err(reference)
    }
}
