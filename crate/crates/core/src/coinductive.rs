//! Relations over finite indexed sets, quotients, relational liftings, the
//! coinduction premise, and behavioural equivalence of finite coalgebras.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use indexmap::{IndexMap, IndexSet};

use crate::container::{FinitaryFunctor, FunctorRef, IndexedContainer};
use crate::error::{Error, Result};
use crate::finset::{FinIndexedSet, IndexedMap, STAR};
use crate::term::Term;

/// A proof-relevant relation on `X`, restricted to pairs over the same index.
/// Only pairs with a nonempty witness set are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    base: FinIndexedSet,
    pairs: Vec<BTreeMap<(usize, usize), IndexSet<String>>>,
}

impl Relation {
    pub fn empty(base: &FinIndexedSet) -> Relation {
        Relation {
            base: base.clone(),
            pairs: vec![BTreeMap::new(); base.num_indices()],
        }
    }

    /// Builds a relation from `(index, x, x', witnesses)` rows. Both elements
    /// must belong to the fibre of `index`.
    pub fn from_rows<'a, R>(base: &FinIndexedSet, rows: R) -> Result<Relation>
    where
        R: IntoIterator<Item = (&'a str, &'a str, &'a str, Vec<String>)>,
    {
        let mut rel = Relation::empty(base);
        for (index, x, y, ws) in rows {
            let i = base
                .index_pos(index)
                .ok_or_else(|| Error::BaseMismatch(format!("unknown index {index:?}")))?;
            let a = base.elem_pos(i, x).ok_or_else(|| {
                Error::BaseMismatch(format!("{x:?} is not an element at index {index:?}"))
            })?;
            let b = base.elem_pos(i, y).ok_or_else(|| {
                Error::BaseMismatch(format!("{y:?} is not an element at index {index:?}"))
            })?;
            if rel.pairs[i].contains_key(&(a, b)) {
                return Err(Error::MalformedSet(format!(
                    "pair ({x}, {y}) at index {index:?} listed twice"
                )));
            }
            let mut set = IndexSet::new();
            for w in ws {
                if !set.insert(w.clone()) {
                    return Err(Error::MalformedSet(format!(
                        "duplicate witness {w:?} for ({x}, {y})"
                    )));
                }
            }
            if !set.is_empty() {
                rel.pairs[i].insert((a, b), set);
            }
        }
        Ok(rel)
    }

    /// A relation with a unit witness on every pair selected by `related`.
    pub fn from_predicate<F>(base: &FinIndexedSet, mut related: F) -> Relation
    where
        F: FnMut(usize, usize, usize) -> bool,
    {
        let mut rel = Relation::empty(base);
        for i in 0..base.num_indices() {
            for a in 0..base.len_at(i) {
                for b in 0..base.len_at(i) {
                    if related(i, a, b) {
                        rel.pairs[i].insert((a, b), unit());
                    }
                }
            }
        }
        rel
    }

    /// Every same-index pair, with unit witnesses.
    pub fn total(base: &FinIndexedSet) -> Relation {
        Relation::from_predicate(base, |_, _, _| true)
    }

    /// The unit relation of a partition's equivalence.
    pub fn of_partition(p: &EquivPartition) -> Relation {
        Relation::from_predicate(&p.base, |i, a, b| p.class_of[i][a] == p.class_of[i][b])
    }

    pub fn base(&self) -> &FinIndexedSet {
        &self.base
    }

    pub fn related(&self, i: usize, a: usize, b: usize) -> bool {
        self.pairs[i].contains_key(&(a, b))
    }

    pub fn witnesses(&self, i: usize, a: usize, b: usize) -> Option<&IndexSet<String>> {
        self.pairs[i].get(&(a, b))
    }

    pub fn related_labels(&self, index: &str, x: &str, y: &str) -> bool {
        let Some(i) = self.base.index_pos(index) else {
            return false;
        };
        match (self.base.elem_pos(i, x), self.base.elem_pos(i, y)) {
            (Some(a), Some(b)) => self.related(i, a, b),
            _ => false,
        }
    }

    /// Related pairs as `(index, x, x')` positions, in canonical order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.pairs
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.keys().map(move |&(a, b)| (i, a, b)))
    }

    /// `(index, x, x', witnesses)` label rows in canonical order.
    pub fn rows(&self) -> Vec<(String, String, String, Vec<String>)> {
        self.pairs
            .iter()
            .enumerate()
            .flat_map(|(i, m)| {
                m.iter().map(move |(&(a, b), ws)| {
                    (
                        self.base.index_label(i).to_string(),
                        self.base.elem_label(i, a).to_string(),
                        self.base.elem_label(i, b).to_string(),
                        ws.iter().cloned().collect(),
                    )
                })
            })
            .collect()
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.iter().map(BTreeMap::len).sum()
    }

    /// Containment of the boolean views.
    pub fn is_subrelation_of(&self, other: &Relation) -> bool {
        self.base == other.base && self.pairs().all(|(i, a, b)| other.related(i, a, b))
    }

    /// Equality of the boolean views.
    pub fn same_pairs(&self, other: &Relation) -> bool {
        self.base == other.base
            && self.pair_count() == other.pair_count()
            && self.is_subrelation_of(other)
    }
}

fn unit() -> IndexSet<String> {
    IndexSet::from([STAR.to_string()])
}

/// The equality relation: one unit witness on each diagonal pair.
pub fn eq_relation(x: &FinIndexedSet) -> Relation {
    Relation::from_predicate(x, |_, a, b| a == b)
}

/// A partition of each fibre into classes, each class represented by its
/// first element in declared order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivPartition {
    base: FinIndexedSet,
    class_of: Vec<Vec<usize>>,
    classes: Vec<Vec<Vec<usize>>>,
}

impl EquivPartition {
    /// Normalizes arbitrary per-element block keys into a partition.
    pub fn from_keys<K: std::hash::Hash + Eq>(
        base: &FinIndexedSet,
        keys: Vec<Vec<K>>,
    ) -> EquivPartition {
        let mut class_of = Vec::with_capacity(keys.len());
        let mut classes = Vec::with_capacity(keys.len());
        for row in keys {
            let mut ids: HashMap<K, usize> = HashMap::new();
            let mut cls: Vec<Vec<usize>> = Vec::new();
            let mut of = Vec::with_capacity(row.len());
            for (x, k) in row.into_iter().enumerate() {
                let next = ids.len();
                let id = *ids.entry(k).or_insert(next);
                if id == cls.len() {
                    cls.push(Vec::new());
                }
                cls[id].push(x);
                of.push(id);
            }
            class_of.push(of);
            classes.push(cls);
        }
        EquivPartition {
            base: base.clone(),
            class_of,
            classes,
        }
    }

    pub fn discrete(base: &FinIndexedSet) -> EquivPartition {
        Self::from_keys(
            base,
            (0..base.num_indices())
                .map(|i| (0..base.len_at(i)).collect())
                .collect(),
        )
    }

    pub fn base(&self) -> &FinIndexedSet {
        &self.base
    }

    pub fn class_of(&self, i: usize, x: usize) -> usize {
        self.class_of[i][x]
    }

    pub fn classes(&self, i: usize) -> &[Vec<usize>] {
        &self.classes[i]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn same_class(&self, i: usize, a: usize, b: usize) -> bool {
        self.class_of[i][a] == self.class_of[i][b]
    }

    pub fn representative(&self, i: usize, x: usize) -> usize {
        self.classes[i][self.class_of[i][x]][0]
    }

    pub fn is_discrete(&self) -> bool {
        self.num_classes() == self.base.total_len()
    }

    /// Classes as label lists, per index.
    pub fn class_labels(&self) -> Vec<(String, Vec<Vec<String>>)> {
        (0..self.base.num_indices())
            .map(|i| {
                let cls = self.classes[i]
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|&x| self.base.elem_label(i, x).to_string())
                            .collect()
                    })
                    .collect();
                (self.base.index_label(i).to_string(), cls)
            })
            .collect()
    }

    /// The set of representatives and the map sending each element to its
    /// representative.
    pub fn quotient_map(&self) -> IndexedMap {
        let quotient = FinIndexedSet::new((0..self.base.num_indices()).map(|i| {
            (
                self.base.index_label(i).to_string(),
                self.classes[i]
                    .iter()
                    .map(|c| self.base.elem_label(i, c[0]).to_string())
                    .collect::<Vec<_>>(),
            )
        }))
        .expect("representatives are distinct");
        IndexedMap::from_table(self.base.clone(), quotient, self.class_of.clone())
    }
}

impl fmt::Display for EquivPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (index, classes) in self.class_labels() {
            let rendered: Vec<String> = classes
                .iter()
                .map(|c| Term::set(c.iter().map(|l| Term::from_label(l))).to_string())
                .collect();
            writeln!(f, "{index}: {}", rendered.join(" "))?;
        }
        Ok(())
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            cur = std::mem::replace(&mut self.parent[cur], root);
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}

/// The least equivalence relation containing `R`, per index.
pub fn equiv_closure(r: &Relation) -> EquivPartition {
    let base = &r.base;
    let keys = (0..base.num_indices())
        .map(|i| {
            let mut uf = UnionFind::new(base.len_at(i));
            for &(a, b) in r.pairs[i].keys() {
                uf.union(a, b);
            }
            (0..base.len_at(i)).map(|x| uf.find(x)).collect()
        })
        .collect();
    EquivPartition::from_keys(base, keys)
}

/// `X/R` and the quotient map `ρ_R`, sending each element to the
/// representative of its class.
pub fn quotient(r: &Relation) -> (EquivPartition, IndexedMap) {
    let p = equiv_closure(r);
    let rho = p.quotient_map();
    (p, rho)
}

/// The kernel of `f`: unit witnesses on same-index pairs with equal images.
pub fn kernel_of_map(f: &IndexedMap) -> Relation {
    Relation::from_predicate(f.source(), |i, a, b| f.apply_pos(i, a) == f.apply_pos(i, b))
}

/// `F̌ R`: the kernel of `F ρ_R`.
pub fn lift_relation_generic(f: &dyn FinitaryFunctor, r: &Relation) -> Result<Relation> {
    let (_, rho) = quotient(r);
    let fx = f.apply_obj(r.base())?;
    let mut keys = Vec::with_capacity(fx.num_indices());
    for i in 0..fx.num_indices() {
        let index = fx.index_label(i);
        keys.push(
            fx.fibre(i)
                .iter()
                .map(|u| f.map_elem(&rho, index, u))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let p = EquivPartition::from_keys(&fx, keys);
    Ok(Relation::of_partition(&p))
}

/// The container lifting: `(s, f)` and `(s', f')` are related iff `s = s'`
/// and corresponding children are related by the closure of `R`.
pub fn lift_relation_container(c: &IndexedContainer, r: &Relation) -> Result<Relation> {
    let x = r.base();
    let closure = equiv_closure(r);
    let fx = c.extension(x)?;
    let elems: Vec<_> = (0..c.num_indices())
        .map(|i| c.extension_elements(x, i))
        .collect();
    Ok(Relation::from_predicate(&fx, |i, a, b| {
        let (u, v) = (&elems[i][a], &elems[i][b]);
        u.shape == v.shape
            && c.positions(i, u.shape)
                .iter()
                .zip(u.assignment.iter().zip(&v.assignment))
                .all(|(p, (&s, &t))| closure.same_class(p.target, s, t))
    }))
}

/// The powerset lifting by mutual covering: `U` and `V` are related iff every
/// element of each is related to some element of the other under the closure
/// of `R`.
pub fn lift_relation_pfin(r: &Relation) -> Result<Relation> {
    let x = r.base();
    let index = x.sole_index()?.to_string();
    let closure = equiv_closure(r);
    let px = crate::container::PfinFunctor.apply_obj(x)?;
    let members: Vec<Vec<usize>> = px
        .fibre(0)
        .iter()
        .map(|u| {
            let t = Term::parse(u)?;
            t.as_set()
                .unwrap_or(&[])
                .iter()
                .map(|m| {
                    x.elem_pos(0, &m.to_label())
                        .ok_or_else(|| Error::Internal(format!("{m} missing from {index:?}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let covers = |u: &[usize], v: &[usize]| {
        u.iter()
            .all(|&a| v.iter().any(|&b| closure.same_class(0, a, b)))
    };
    Ok(Relation::from_predicate(&px, |_, a, b| {
        covers(&members[a], &members[b]) && covers(&members[b], &members[a])
    }))
}

/// A coalgebra `k : X → F X` on a finite carrier.
#[derive(Clone, Debug)]
pub struct FiniteCoalgebra {
    functor: FunctorRef,
    carrier: FinIndexedSet,
    map: Vec<Vec<String>>,
}

impl FiniteCoalgebra {
    pub fn from_fn<F>(functor: FunctorRef, carrier: &FinIndexedSet, mut k: F) -> Result<Self>
    where
        F: FnMut(&str, &str) -> String,
    {
        let mut map = Vec::with_capacity(carrier.num_indices());
        for i in 0..carrier.num_indices() {
            let index = carrier.index_label(i);
            let mut row = Vec::with_capacity(carrier.len_at(i));
            for x in carrier.fibre(i) {
                let image = k(index, x);
                if !functor.contains(carrier, index, &image) {
                    return Err(Error::InvalidCoalgebra(format!(
                        "image {image:?} of {x:?} is not an element of {}(X) at index {index:?}",
                        functor.name()
                    )));
                }
                row.push(image);
            }
            map.push(row);
        }
        Ok(FiniteCoalgebra {
            functor,
            carrier: carrier.clone(),
            map,
        })
    }

    /// Builds the coalgebra from `(index, state, image)` rows covering the
    /// carrier exactly once.
    pub fn from_rows<'a, R>(functor: FunctorRef, carrier: &FinIndexedSet, rows: R) -> Result<Self>
    where
        R: IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    {
        let mut table: HashMap<(&str, &str), &str> = HashMap::new();
        for (i, x, u) in rows {
            if !carrier.contains(i, x) {
                return Err(Error::InvalidCoalgebra(format!(
                    "undeclared state {x:?} at index {i:?}"
                )));
            }
            if table.insert((i, x), u).is_some() {
                return Err(Error::InvalidCoalgebra(format!(
                    "state {x:?} at index {i:?} mapped twice"
                )));
            }
        }
        let mut missing = None;
        let k = Self::from_fn(functor, carrier, |i, x| match table.get(&(i, x)) {
            Some(u) => u.to_string(),
            None => {
                missing.get_or_insert_with(|| format!("state {x:?} at index {i:?} has no image"));
                String::new()
            }
        });
        match missing {
            Some(m) => Err(Error::InvalidCoalgebra(m)),
            None => k,
        }
    }

    pub fn functor(&self) -> &FunctorRef {
        &self.functor
    }

    pub fn carrier(&self) -> &FinIndexedSet {
        &self.carrier
    }

    pub fn image(&self, i: usize, x: usize) -> &str {
        &self.map[i][x]
    }

    /// `F f ∘ k`, evaluated on one state.
    fn pushed(&self, f: &IndexedMap, i: usize, x: usize) -> Result<String> {
        self.functor
            .map_elem(f, self.carrier.index_label(i), &self.map[i][x])
    }
}

/// Outcome of [`check_coinduction_premise`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoinductionReport {
    pub pairs_checked: usize,
    /// `(index, x, x')` related pairs whose successors are not related by `F̌ R`.
    pub violations: Vec<(String, String, String)>,
}

impl CoinductionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `R → F̌ R` along `k`: every related pair must have successors
/// related by the lifting of `R`.
pub fn check_coinduction_premise(k: &FiniteCoalgebra, r: &Relation) -> Result<CoinductionReport> {
    if r.base() != k.carrier() {
        return Err(Error::BaseMismatch(
            "relation is not based on the coalgebra carrier".into(),
        ));
    }
    let (_, rho) = quotient(r);
    let mut cache: HashMap<(usize, usize), String> = HashMap::new();
    let mut report = CoinductionReport::default();
    for (i, a, b) in r.pairs() {
        report.pairs_checked += 1;
        let mut image = |x: usize| -> Result<String> {
            if let Some(s) = cache.get(&(i, x)) {
                return Ok(s.clone());
            }
            let s = k.pushed(&rho, i, x)?;
            cache.insert((i, x), s.clone());
            Ok(s)
        };
        if image(a)? != image(b)? {
            let base = k.carrier();
            report.violations.push((
                base.index_label(i).into(),
                base.elem_label(i, a).into(),
                base.elem_label(i, b).into(),
            ));
        }
    }
    Ok(report)
}

/// A way of computing the largest bisimulation of a finite coalgebra.
pub trait RefinementStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn refine(&self, k: &FiniteCoalgebra) -> Result<EquivPartition>;
}

/// Iterates `R ↦ {(x, x') ∈ R | (k x, k x') ∈ F̌ R}` from the total relation
/// until nothing is removed.
#[derive(Clone, Copy, Debug, Default)]
pub struct NaiveRefinement;

impl RefinementStrategy for NaiveRefinement {
    fn name(&self) -> &'static str {
        "naive"
    }

    fn refine(&self, k: &FiniteCoalgebra) -> Result<EquivPartition> {
        let mut r = Relation::total(k.carrier());
        loop {
            let report = check_coinduction_premise(k, &r)?;
            if report.passed() {
                return Ok(equiv_closure(&r));
            }
            let base = k.carrier();
            for (index, x, y) in &report.violations {
                let i = base.index_pos(index).expect("carrier index");
                let key = (
                    base.elem_pos(i, x).expect("state"),
                    base.elem_pos(i, y).expect("state"),
                );
                r.pairs[i].remove(&key);
            }
        }
    }
}

/// Splits every block by the signature `F ρ (k x)` of its members until the
/// number of blocks is stable.
#[derive(Clone, Copy, Debug, Default)]
pub struct SignatureRefinement;

impl RefinementStrategy for SignatureRefinement {
    fn name(&self) -> &'static str {
        "signature"
    }

    fn refine(&self, k: &FiniteCoalgebra) -> Result<EquivPartition> {
        let base = k.carrier();
        let mut part = EquivPartition::from_keys(
            base,
            (0..base.num_indices())
                .map(|i| vec![(); base.len_at(i)])
                .collect(),
        );
        loop {
            let rho = part.quotient_map();
            let mut keys = Vec::with_capacity(base.num_indices());
            for i in 0..base.num_indices() {
                let row = (0..base.len_at(i))
                    .map(|x| Ok((part.class_of(i, x), k.pushed(&rho, i, x)?)))
                    .collect::<Result<Vec<_>>>()?;
                keys.push(row);
            }
            let next = EquivPartition::from_keys(base, keys);
            if next.num_classes() == part.num_classes() {
                return Ok(next);
            }
            part = next;
        }
    }
}

/// Behavioural equivalence: the largest bisimulation, as a partition.
pub fn largest_bisimulation(k: &FiniteCoalgebra) -> Result<EquivPartition> {
    NaiveRefinement.refine(k)
}

/// The quotient of `k` by its largest bisimulation, with the projection.
pub fn minimize(k: &FiniteCoalgebra) -> Result<(FiniteCoalgebra, IndexedMap)> {
    minimize_with(k, &NaiveRefinement)
}

pub fn minimize_with(
    k: &FiniteCoalgebra,
    strategy: &dyn RefinementStrategy,
) -> Result<(FiniteCoalgebra, IndexedMap)> {
    let part = strategy.refine(k)?;
    let rho = part.quotient_map();
    let base = k.carrier();
    let mut images: IndexMap<(String, String), String> = IndexMap::new();
    for i in 0..base.num_indices() {
        for (c, members) in part.classes(i).iter().enumerate() {
            let rep = k.pushed(&rho, i, members[0])?;
            for &m in &members[1..] {
                if k.pushed(&rho, i, m)? != rep {
                    return Err(Error::Internal(format!(
                        "class of {:?} is not closed under the structure map",
                        base.elem_label(i, members[0])
                    )));
                }
            }
            let label = rho.target().elem_label(i, c).to_string();
            images.insert((base.index_label(i).to_string(), label), rep);
        }
    }
    let minimal = FiniteCoalgebra::from_fn(k.functor.clone(), rho.target(), |i, x| {
        images[&(i.to_string(), x.to_string())].clone()
    })?;
    Ok((minimal, rho))
}
