//! Random small instances for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coinductive::{FiniteCoalgebra, Relation};
use crate::container::{FunctorRef, IndexedContainer, PfinProdFunctor};
use crate::finset::{FinIndexedSet, IndexedMap, Predicate};

/// A set over `indices` with between 0 and `max` elements per index, labelled
/// `{prefix}0`, `{prefix}1`, ...
pub fn random_set<R: Rng>(
    rng: &mut R,
    indices: &[&str],
    max: usize,
    prefix: &str,
) -> FinIndexedSet {
    FinIndexedSet::new(indices.iter().map(|i| {
        let n = rng.gen_range(0..=max);
        (
            i.to_string(),
            (0..n).map(|k| format!("{prefix}{k}")).collect::<Vec<_>>(),
        )
    }))
    .expect("distinct labels")
}

/// Index labels of a container, for [`random_set`].
pub fn container_indices(c: &IndexedContainer) -> Vec<&str> {
    (0..c.num_indices()).map(|i| c.index_label(i)).collect()
}

/// A uniformly random indexed map, or `None` when some fibre of `x` is
/// nonempty but the matching fibre of `y` is empty.
pub fn random_map<R: Rng>(rng: &mut R, x: &FinIndexedSet, y: &FinIndexedSet) -> Option<IndexedMap> {
    if (0..x.num_indices()).any(|i| x.len_at(i) > 0 && y.len_at(i) == 0) {
        return None;
    }
    IndexedMap::from_fn(x, y, |i, _| {
        let f = y.fibre_of(i).expect("same indices");
        Ok(f[rng.gen_range(0..f.len())].clone())
    })
    .ok()
}

/// A predicate with between 0 and `max_witnesses` witnesses per element.
pub fn random_predicate<R: Rng>(rng: &mut R, x: &FinIndexedSet, max_witnesses: usize) -> Predicate {
    Predicate::from_fn(x, |_, _| {
        let n = rng.gen_range(0..=max_witnesses);
        (0..n).map(|k| format!("w{k}")).collect::<Vec<_>>()
    })
    .expect("distinct witnesses")
}

/// A relation containing each same-index pair with probability `density`.
pub fn random_relation<R: Rng>(rng: &mut R, x: &FinIndexedSet, density: f64) -> Relation {
    Relation::from_predicate(x, |_, _, _| rng.gen_bool(density))
}

/// A coalgebra whose structure map picks uniformly from `F X`.
pub fn random_coalgebra<R: Rng>(
    rng: &mut R,
    functor: &FunctorRef,
    carrier: &FinIndexedSet,
) -> crate::Result<FiniteCoalgebra> {
    let fx = functor.apply_obj(carrier)?;
    FiniteCoalgebra::from_fn(functor.clone(), carrier, |i, _| {
        let fibre = fx.fibre_of(i).expect("same indices");
        fibre[rng.gen_range(0..fibre.len())].clone()
    })
}

/// A transition system over `s0 .. s{n-1}` with each possible transition
/// present with probability `density`. Returns the coalgebra and its edges.
pub fn random_lts<R: Rng>(
    rng: &mut R,
    states: usize,
    labels: &[&str],
    density: f64,
) -> (FiniteCoalgebra, Vec<(usize, usize, usize)>) {
    let names: Vec<String> = (0..states).map(|k| format!("s{k}")).collect();
    let mut edges = Vec::new();
    for p in 0..states {
        for a in 0..labels.len() {
            for q in 0..states {
                if rng.gen_bool(density) {
                    edges.push((p, a, q));
                }
            }
        }
    }
    let carrier = FinIndexedSet::single("*", names.iter().cloned()).expect("distinct states");
    let functor =
        std::sync::Arc::new(PfinProdFunctor::new(labels.iter().copied()).expect("distinct labels"));
    let k = FiniteCoalgebra::from_fn(functor, &carrier, |_, s| {
        let p = names.iter().position(|n| n == s).expect("state");
        PfinProdFunctor::encode(
            edges
                .iter()
                .filter(|e| e.0 == p)
                .map(|&(_, a, q)| (labels[a], names[q].as_str())),
        )
    })
    .expect("valid transition system");
    (k, edges)
}

/// A random equivalence relation, given as a block id per element.
pub fn random_blocks<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let blocks = rng.gen_range(1..=n.max(1));
    let mut ids: Vec<usize> = (0..n).map(|_| rng.gen_range(0..blocks)).collect();
    ids.shuffle(rng);
    ids
}
