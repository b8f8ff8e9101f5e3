//! Ready-made containers and functors for the standard example types.

use std::sync::Arc;

use crate::container::{
    ContainerDecl, FunctorRef, IndexedContainer, PfinFunctor, PfinProdFunctor, PositionDecl,
    ShapeDecl,
};
use crate::error::{Error, Result};

fn shapes(index: &str, shapes: &[&str]) -> ShapeDecl {
    ShapeDecl {
        index: index.into(),
        shapes: shapes.iter().map(|s| s.to_string()).collect(),
    }
}

fn positions(index: &str, shape: &str, target: &str, labels: &[&str]) -> PositionDecl {
    PositionDecl {
        index: index.into(),
        shape: shape.into(),
        target: target.into(),
        positions: labels.iter().map(|s| s.to_string()).collect(),
    }
}

/// `N X = 1 + X`: shapes `z` (no positions) and `s` (one position `p`).
pub fn nat_container() -> IndexedContainer {
    IndexedContainer::new(ContainerDecl {
        name: "nat".into(),
        indices: vec!["nat".into()],
        shapes: vec![shapes("nat", &["z", "s"])],
        positions: vec![positions("nat", "s", "nat", &["p"])],
    })
    .expect("nat container is valid")
}

/// Mutually defined evens and odds: `zero : even`, `evenSucc : odd → even`,
/// `oddSucc : even → odd`.
pub fn odds_evens_container() -> IndexedContainer {
    IndexedContainer::new(ContainerDecl {
        name: "odds-evens".into(),
        indices: vec!["even".into(), "odd".into()],
        shapes: vec![
            shapes("even", &["zero", "evenSucc"]),
            shapes("odd", &["oddSucc"]),
        ],
        positions: vec![
            positions("even", "evenSucc", "odd", &["pred"]),
            positions("odd", "oddSucc", "even", &["pred"]),
        ],
    })
    .expect("odds/evens container is valid")
}

/// Name of the `j`-th variable shape.
pub fn var_shape(j: usize) -> String {
    format!("Var{j}")
}

/// Untyped lambda terms over `n` free variables, for `n` in `0..=n_max`.
///
/// At index `n` the shapes are `Var0 .. Var{n-1}` (nullary), `App` with
/// positions `fun`, `arg` at `n`, and `Abs` with position `body` at `n + 1`.
/// `Abs` is dropped at `n_max` so the index set stays finite.
pub fn lam_container(n_max: usize) -> Result<IndexedContainer> {
    if n_max == 0 {
        return Err(Error::Unsupported("lam needs n_max >= 1".into()));
    }
    let indices: Vec<String> = (0..=n_max).map(|n| n.to_string()).collect();
    let mut shape_decls = Vec::new();
    let mut position_decls = Vec::new();
    for n in 0..=n_max {
        let mut s: Vec<String> = (0..n).map(var_shape).collect();
        s.push("App".into());
        position_decls.push(positions(&indices[n], "App", &indices[n], &["fun", "arg"]));
        if n < n_max {
            s.push("Abs".into());
            position_decls.push(positions(&indices[n], "Abs", &indices[n + 1], &["body"]));
        }
        shape_decls.push(ShapeDecl {
            index: indices[n].clone(),
            shapes: s,
        });
    }
    IndexedContainer::new(ContainerDecl {
        name: format!("lam:{n_max}"),
        indices,
        shapes: shape_decls,
        positions: position_decls,
    })
}

/// Labelled transition systems over the given actions.
pub fn lts_functor<L: IntoIterator<Item = S>, S: Into<String>>(
    labels: L,
) -> Result<PfinProdFunctor> {
    PfinProdFunctor::new(labels)
}

/// One named entry of the standard library.
#[derive(Clone, Debug)]
pub struct StdlibEntry {
    pub name: String,
    pub doc: &'static str,
    pub container: Option<Arc<IndexedContainer>>,
    pub functor: FunctorRef,
}

fn container_entry(c: IndexedContainer, doc: &'static str) -> StdlibEntry {
    let c = Arc::new(c);
    StdlibEntry {
        name: c.name().to_string(),
        doc,
        functor: c.as_functor(),
        container: Some(c),
    }
}

/// Every standard container, with `Lam` at `n_max = 1` and `2`.
pub fn containers() -> Vec<StdlibEntry> {
    vec![
        container_entry(nat_container(), "natural numbers, N X = 1 + X"),
        container_entry(
            odds_evens_container(),
            "mutually inductive evens and odds, F(E, O) = (O + 1, E)",
        ),
        container_entry(
            lam_container(1).expect("valid"),
            "lambda terms indexed by free variables, truncated at 1",
        ),
        container_entry(
            lam_container(2).expect("valid"),
            "lambda terms indexed by free variables, truncated at 2",
        ),
    ]
}

/// A standard container by registry name: `nat`, `odds-evens` or `lam:<n_max>`.
pub fn container_by_name(name: &str) -> Result<IndexedContainer> {
    let unknown = || Error::Unknown {
        kind: "container",
        name: name.to_string(),
    };
    match name.split_once(':') {
        None if name == "nat" => Ok(nat_container()),
        None if name == "odds-evens" => Ok(odds_evens_container()),
        Some(("lam", n)) => lam_container(n.parse().map_err(|_| unknown())?),
        _ => Err(unknown()),
    }
}

/// Every standard functor: the containers plus `Pfin` and `Pfin(A × −)`.
pub fn functors() -> Vec<StdlibEntry> {
    let mut out = containers();
    out.push(StdlibEntry {
        name: "pfin".into(),
        doc: "finite powerset",
        container: None,
        functor: Arc::new(PfinFunctor),
    });
    for labels in [vec!["a"], vec!["a", "b"]] {
        let f = lts_functor(labels).expect("distinct labels");
        out.push(StdlibEntry {
            name: crate::container::FinitaryFunctor::name(&f),
            doc: "labelled transition systems, Pfin(A x -)",
            container: None,
            functor: Arc::new(f),
        });
    }
    out
}
