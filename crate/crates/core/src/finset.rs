//! Finite indexed sets, indexed maps and predicates over them, with the
//! reindexing, opreindexing, truth and comprehension operations of the
//! families fibration.

use std::fmt;

use indexmap::{IndexMap, IndexSet};

use crate::error::{Error, Result};
use crate::term::Term;

/// Witness label of the truth predicate and of unit relation entries.
pub const STAR: &str = "⋆";

/// An `I`-indexed family of finite sets, in declared order.
#[derive(Clone, Default)]
pub struct FinIndexedSet {
    fibres: IndexMap<String, IndexSet<String>>,
}

impl FinIndexedSet {
    pub fn new<I, S, E>(fibres: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, E)>,
        S: Into<String>,
        E: IntoIterator,
        E::Item: Into<String>,
    {
        let mut out = IndexMap::new();
        for (index, elems) in fibres {
            let index = index.into();
            let mut set = IndexSet::new();
            for e in elems {
                let e = e.into();
                if !set.insert(e.clone()) {
                    return Err(Error::MalformedSet(format!(
                        "duplicate element {e:?} at index {index:?}"
                    )));
                }
            }
            if out.insert(index.clone(), set).is_some() {
                return Err(Error::MalformedSet(format!("duplicate index {index:?}")));
            }
        }
        Ok(FinIndexedSet { fibres: out })
    }

    /// A set over the single index `index`.
    pub fn single<E>(index: &str, elems: E) -> Result<Self>
    where
        E: IntoIterator,
        E::Item: Into<String>,
    {
        Self::new([(index, elems)])
    }

    /// The same index set with every fibre empty.
    pub fn empty_like(&self) -> Self {
        FinIndexedSet {
            fibres: self
                .fibres
                .keys()
                .map(|k| (k.clone(), IndexSet::new()))
                .collect(),
        }
    }

    pub fn num_indices(&self) -> usize {
        self.fibres.len()
    }

    pub fn indices(&self) -> impl Iterator<Item = &str> {
        self.fibres.keys().map(String::as_str)
    }

    pub fn index_label(&self, i: usize) -> &str {
        self.fibres
            .get_index(i)
            .map(|(k, _)| k.as_str())
            .expect("index in range")
    }

    pub fn index_pos(&self, label: &str) -> Option<usize> {
        self.fibres.get_index_of(label)
    }

    pub fn fibre(&self, i: usize) -> &IndexSet<String> {
        &self.fibres[i]
    }

    pub fn fibre_of(&self, index: &str) -> Option<&IndexSet<String>> {
        self.fibres.get(index)
    }

    pub fn elem_label(&self, i: usize, x: usize) -> &str {
        &self.fibres[i][x]
    }

    pub fn elem_pos(&self, i: usize, label: &str) -> Option<usize> {
        self.fibres[i].get_index_of(label)
    }

    pub fn contains(&self, index: &str, label: &str) -> bool {
        self.fibres.get(index).is_some_and(|f| f.contains(label))
    }

    pub fn len_at(&self, i: usize) -> usize {
        self.fibres[i].len()
    }

    pub fn total_len(&self) -> usize {
        self.fibres.values().map(IndexSet::len).sum()
    }

    /// `(index position, element position)` for every element, in order.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.fibres
            .values()
            .enumerate()
            .flat_map(|(i, f)| (0..f.len()).map(move |x| (i, x)))
    }

    pub fn same_indices(&self, other: &FinIndexedSet) -> bool {
        self.fibres.keys().eq(other.fibres.keys())
    }

    pub(crate) fn require_same_indices(&self, other: &FinIndexedSet, what: &str) -> Result<()> {
        if self.same_indices(other) {
            Ok(())
        } else {
            Err(Error::BaseMismatch(format!("{what}: index sets differ")))
        }
    }

    /// Errors unless there is exactly one index; returns its label.
    pub fn sole_index(&self) -> Result<&str> {
        if self.fibres.len() == 1 {
            Ok(self.index_label(0))
        } else {
            Err(Error::Unsupported(format!(
                "expected a single index, found {}",
                self.fibres.len()
            )))
        }
    }
}

// Equality is order-sensitive: two sets are equal only if they list the same
// labels in the same order.
impl PartialEq for FinIndexedSet {
    fn eq(&self, other: &Self) -> bool {
        self.fibres.len() == other.fibres.len()
            && self
                .fibres
                .iter()
                .zip(other.fibres.iter())
                .all(|((k1, f1), (k2, f2))| k1 == k2 && f1.iter().eq(f2.iter()))
    }
}

impl Eq for FinIndexedSet {}

impl fmt::Debug for FinIndexedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.fibres
                    .iter()
                    .map(|(k, v)| (k, v.iter().collect::<Vec<_>>())),
            )
            .finish()
    }
}

/// An index-preserving total function between finite indexed sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedMap {
    source: FinIndexedSet,
    target: FinIndexedSet,
    table: Vec<Vec<usize>>,
}

impl IndexedMap {
    /// Builds a map from a label-valued function.
    pub fn from_fn<F>(source: &FinIndexedSet, target: &FinIndexedSet, mut f: F) -> Result<Self>
    where
        F: FnMut(&str, &str) -> Result<String>,
    {
        source.require_same_indices(target, "indexed map")?;
        let mut table = Vec::with_capacity(source.num_indices());
        for i in 0..source.num_indices() {
            let index = source.index_label(i);
            let mut row = Vec::with_capacity(source.len_at(i));
            for x in source.fibre(i) {
                let y = f(index, x)?;
                let pos = target.elem_pos(i, &y).ok_or_else(|| {
                    Error::MalformedMap(format!(
                        "image {y:?} of {x:?} is not in the target at index {index:?}"
                    ))
                })?;
                row.push(pos);
            }
            table.push(row);
        }
        Ok(IndexedMap {
            source: source.clone(),
            target: target.clone(),
            table,
        })
    }

    /// Builds a map from explicit `(index, source label, target label)` rows,
    /// which must cover the source exactly once.
    pub fn from_rows<'a, R>(source: &FinIndexedSet, target: &FinIndexedSet, rows: R) -> Result<Self>
    where
        R: IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    {
        let mut lookup: IndexMap<(String, String), String> = IndexMap::new();
        for (i, x, y) in rows {
            if !source.contains(i, x) {
                return Err(Error::MalformedMap(format!(
                    "{x:?} is not an element at index {i:?}"
                )));
            }
            if lookup
                .insert((i.to_string(), x.to_string()), y.to_string())
                .is_some()
            {
                return Err(Error::MalformedMap(format!(
                    "{x:?} at index {i:?} is mapped twice"
                )));
            }
        }
        Self::from_fn(source, target, |i, x| {
            lookup
                .get(&(i.to_string(), x.to_string()))
                .cloned()
                .ok_or_else(|| Error::MalformedMap(format!("no image for {x:?} at index {i:?}")))
        })
    }

    pub(crate) fn from_table(
        source: FinIndexedSet,
        target: FinIndexedSet,
        table: Vec<Vec<usize>>,
    ) -> Self {
        debug_assert_eq!(table.len(), source.num_indices());
        IndexedMap {
            source,
            target,
            table,
        }
    }

    pub fn identity(x: &FinIndexedSet) -> Self {
        let table = (0..x.num_indices())
            .map(|i| (0..x.len_at(i)).collect())
            .collect();
        IndexedMap {
            source: x.clone(),
            target: x.clone(),
            table,
        }
    }

    pub fn source(&self) -> &FinIndexedSet {
        &self.source
    }

    pub fn target(&self) -> &FinIndexedSet {
        &self.target
    }

    pub fn apply_pos(&self, i: usize, x: usize) -> usize {
        self.table[i][x]
    }

    pub fn apply(&self, i: usize, x: usize) -> &str {
        self.target.elem_label(i, self.table[i][x])
    }

    /// Looks up the image of a labelled element.
    pub fn apply_label(&self, index: &str, x: &str) -> Result<&str> {
        let i = self
            .source
            .index_pos(index)
            .ok_or_else(|| Error::BaseMismatch(format!("unknown index {index:?}")))?;
        let pos = self.source.elem_pos(i, x).ok_or_else(|| {
            Error::BaseMismatch(format!("{x:?} is not in the domain at index {index:?}"))
        })?;
        Ok(self.apply(i, pos))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &IndexedMap) -> Result<IndexedMap> {
        if self.target != next.source {
            return Err(Error::BaseMismatch(
                "composition: codomain and domain differ".into(),
            ));
        }
        let table = self
            .table
            .iter()
            .enumerate()
            .map(|(i, row)| row.iter().map(|&y| next.table[i][y]).collect())
            .collect();
        Ok(IndexedMap {
            source: self.source.clone(),
            target: next.target.clone(),
            table,
        })
    }

    pub fn is_injective(&self) -> bool {
        self.table.iter().all(|row| {
            let distinct: IndexSet<_> = row.iter().collect();
            distinct.len() == row.len()
        })
    }

    pub fn is_surjective(&self) -> bool {
        self.table.iter().enumerate().all(|(i, row)| {
            let hit: IndexSet<_> = row.iter().collect();
            hit.len() == self.target.len_at(i)
        })
    }
}

/// A proof-relevant predicate: a finite set of witnesses for every element of
/// its base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    base: FinIndexedSet,
    witnesses: Vec<Vec<IndexSet<String>>>,
}

impl Predicate {
    pub fn from_fn<F, W>(base: &FinIndexedSet, mut f: F) -> Result<Self>
    where
        F: FnMut(&str, &str) -> W,
        W: IntoIterator,
        W::Item: Into<String>,
    {
        let mut witnesses = Vec::with_capacity(base.num_indices());
        for i in 0..base.num_indices() {
            let index = base.index_label(i);
            let mut row = Vec::with_capacity(base.len_at(i));
            for x in base.fibre(i) {
                let mut set = IndexSet::new();
                for w in f(index, x) {
                    let w = w.into();
                    if !set.insert(w.clone()) {
                        return Err(Error::MalformedSet(format!(
                            "duplicate witness {w:?} for {x:?} at index {index:?}"
                        )));
                    }
                }
                row.push(set);
            }
            witnesses.push(row);
        }
        Ok(Predicate {
            base: base.clone(),
            witnesses,
        })
    }

    /// Builds a predicate from `(index, element, witnesses)` rows; elements
    /// not mentioned get the empty witness set.
    pub fn from_rows<'a, R>(base: &FinIndexedSet, rows: R) -> Result<Self>
    where
        R: IntoIterator<Item = (&'a str, &'a str, Vec<String>)>,
    {
        let mut pred = Predicate::from_fn(base, |_, _| Vec::<String>::new())?;
        for (index, x, ws) in rows {
            let i = base
                .index_pos(index)
                .ok_or_else(|| Error::BaseMismatch(format!("unknown index {index:?}")))?;
            let pos = base.elem_pos(i, x).ok_or_else(|| {
                Error::BaseMismatch(format!("{x:?} is not an element at index {index:?}"))
            })?;
            let slot = &mut pred.witnesses[i][pos];
            if !slot.is_empty() {
                return Err(Error::MalformedSet(format!(
                    "{x:?} at index {index:?} listed twice"
                )));
            }
            for w in ws {
                if !slot.insert(w.clone()) {
                    return Err(Error::MalformedSet(format!(
                        "duplicate witness {w:?} for {x:?}"
                    )));
                }
            }
        }
        Ok(pred)
    }

    pub(crate) fn from_parts(base: FinIndexedSet, witnesses: Vec<Vec<IndexSet<String>>>) -> Self {
        Predicate { base, witnesses }
    }

    pub fn base(&self) -> &FinIndexedSet {
        &self.base
    }

    pub fn witnesses(&self, i: usize, x: usize) -> &IndexSet<String> {
        &self.witnesses[i][x]
    }

    pub fn witnesses_of(&self, index: &str, x: &str) -> Option<&IndexSet<String>> {
        let i = self.base.index_pos(index)?;
        let pos = self.base.elem_pos(i, x)?;
        Some(&self.witnesses[i][pos])
    }

    /// The boolean view: an element satisfies the predicate iff it has a witness.
    pub fn holds(&self, i: usize, x: usize) -> bool {
        !self.witnesses[i][x].is_empty()
    }

    pub fn total_witnesses(&self) -> usize {
        self.witnesses.iter().flatten().map(IndexSet::len).sum()
    }

    /// Reindexing `f*P`: the predicate at `x` is `P` at `f x`.
    pub fn reindex(&self, f: &IndexedMap) -> Result<Predicate> {
        if f.target() != &self.base {
            return Err(Error::BaseMismatch(
                "reindex: map target is not the predicate base".into(),
            ));
        }
        let witnesses = (0..f.source().num_indices())
            .map(|i| {
                (0..f.source().len_at(i))
                    .map(|x| self.witnesses[i][f.apply_pos(i, x)].clone())
                    .collect()
            })
            .collect();
        Ok(Predicate {
            base: f.source().clone(),
            witnesses,
        })
    }

    /// Opreindexing `Σ_f P`: the predicate at `y` is the disjoint union of the
    /// witness sets over the fibre of `f` above `y`, tagged with their element.
    pub fn opreindex(&self, f: &IndexedMap) -> Result<Predicate> {
        if f.source() != &self.base {
            return Err(Error::BaseMismatch(
                "opreindex: map source is not the predicate base".into(),
            ));
        }
        let target = f.target();
        let mut witnesses: Vec<Vec<IndexSet<String>>> = (0..target.num_indices())
            .map(|i| vec![IndexSet::new(); target.len_at(i)])
            .collect();
        for (i, x) in self.base.positions() {
            let xl = Term::from_label(self.base.elem_label(i, x));
            let slot = &mut witnesses[i][f.apply_pos(i, x)];
            for w in &self.witnesses[i][x] {
                slot.insert(Term::pair(xl.clone(), Term::from_label(w)).to_string());
            }
        }
        Ok(Predicate {
            base: target.clone(),
            witnesses,
        })
    }

    /// The truth predicate: one witness `⋆` everywhere.
    pub fn truth(x: &FinIndexedSet) -> Predicate {
        let witnesses = (0..x.num_indices())
            .map(|i| {
                (0..x.len_at(i))
                    .map(|_| IndexSet::from([STAR.to_string()]))
                    .collect()
            })
            .collect();
        Predicate {
            base: x.clone(),
            witnesses,
        }
    }

    /// Comprehension `{P}` with its projection to the base. Elements are the
    /// canonical pairs `(x,w)`.
    pub fn comprehension(&self) -> (FinIndexedSet, IndexedMap) {
        let mut fibres = IndexMap::new();
        let mut table = Vec::new();
        for i in 0..self.base.num_indices() {
            let mut elems = IndexSet::new();
            let mut row = Vec::new();
            for (x, label) in self.base.fibre(i).iter().enumerate() {
                let xl = Term::from_label(label);
                for w in &self.witnesses[i][x] {
                    elems.insert(Term::pair(xl.clone(), Term::from_label(w)).to_string());
                    row.push(x);
                }
            }
            fibres.insert(self.base.index_label(i).to_string(), elems);
            table.push(row);
        }
        let total = FinIndexedSet { fibres };
        let proj = IndexedMap::from_table(total.clone(), self.base.clone(), table);
        (total, proj)
    }

    /// Number of vertical predicate morphisms `self → other` over the same
    /// base: one witness function per element.
    pub fn vertical_morphism_count(&self, other: &Predicate) -> Result<u128> {
        if self.base != other.base {
            return Err(Error::BaseMismatch("morphism count: bases differ".into()));
        }
        let mut count: u128 = 1;
        for (i, x) in self.base.positions() {
            let dom = self.witnesses[i][x].len() as u32;
            let cod = other.witnesses[i][x].len() as u128;
            count = count.saturating_mul(cod.saturating_pow(dom));
        }
        Ok(count)
    }
}

/// Splits a comprehension or opreindex witness `(x,w)` into its components.
pub fn split_pair(label: &str) -> Result<(String, String)> {
    match Term::parse(label)? {
        Term::Tuple(items) if items.len() == 2 => Ok((items[0].to_label(), items[1].to_label())),
        _ => Err(Error::Encoding(format!("{label:?} is not a pair"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (FinIndexedSet, FinIndexedSet) {
        (
            FinIndexedSet::single("i", ["a", "b"]).unwrap(),
            FinIndexedSet::single("i", ["c", "d"]).unwrap(),
        )
    }

    #[test]
    fn rejects_duplicate_labels() {
        assert!(FinIndexedSet::single("i", ["a", "a"]).is_err());
        assert!(FinIndexedSet::new([("i", vec!["a"]), ("i", vec!["b"])]).is_err());
    }

    #[test]
    fn map_must_land_in_target() {
        let (x, y) = xy();
        assert!(IndexedMap::from_fn(&x, &y, |_, _| Ok("zz".into())).is_err());
        let other = FinIndexedSet::single("j", ["c"]).unwrap();
        assert!(IndexedMap::from_fn(&x, &other, |_, _| Ok("c".into())).is_err());
    }

    #[test]
    fn reindex_substitutes() {
        let x = FinIndexedSet::single("i", ["a"]).unwrap();
        let y = FinIndexedSet::single("i", ["b", "c"]).unwrap();
        let f = IndexedMap::from_fn(&x, &y, |_, _| Ok("b".into())).unwrap();
        let p = Predicate::from_fn(&y, |_, e| if e == "b" { vec!["w1", "w2"] } else { vec![] })
            .unwrap();
        let r = p.reindex(&f).unwrap();
        assert_eq!(
            r.witnesses_of("i", "a").unwrap().iter().collect::<Vec<_>>(),
            ["w1", "w2"]
        );
    }

    #[test]
    fn reindex_identity_and_empty_fibre() {
        let (x, y) = xy();
        let p = Predicate::from_fn(&x, |_, e| vec![format!("w{e}")]).unwrap();
        assert_eq!(p.reindex(&IndexedMap::identity(&x)).unwrap(), p);
        let f = IndexedMap::from_fn(&x, &y, |_, _| Ok("c".into())).unwrap();
        let q = Predicate::from_fn(&y, |_, e| if e == "c" { vec![] } else { vec!["w"] }).unwrap();
        assert_eq!(q.reindex(&f).unwrap().total_witnesses(), 0);
        assert!(q.reindex(&IndexedMap::identity(&x)).is_err());
    }

    #[test]
    fn opreindex_collects_fibres() {
        let x = FinIndexedSet::single("i", ["a", "b"]).unwrap();
        let y = FinIndexedSet::single("i", ["c"]).unwrap();
        let f = IndexedMap::from_fn(&x, &y, |_, _| Ok("c".into())).unwrap();
        let p = Predicate::from_fn(&x, |_, e| if e == "a" { vec!["u"] } else { vec!["v", "w"] })
            .unwrap();
        let s = p.opreindex(&f).unwrap();
        let got: Vec<_> = s.witnesses_of("i", "c").unwrap().iter().cloned().collect();
        assert_eq!(got, ["(a,u)", "(b,v)", "(b,w)"]);
    }

    #[test]
    fn opreindex_identity_relabels() {
        let (x, _) = xy();
        let p = Predicate::from_fn(&x, |_, e| vec![format!("w{e}")]).unwrap();
        let s = p.opreindex(&IndexedMap::identity(&x)).unwrap();
        assert_eq!(
            s.witnesses_of("i", "b").unwrap().iter().collect::<Vec<_>>(),
            ["(b,wb)"]
        );
    }

    #[test]
    fn truth_and_comprehension() {
        let empty = FinIndexedSet::single("i", Vec::<String>::new()).unwrap();
        assert_eq!(Predicate::truth(&empty).total_witnesses(), 0);
        let x = FinIndexedSet::single("i", ["a", "b", "c"]).unwrap();
        let k = Predicate::truth(&x);
        assert!(k
            .witnesses
            .iter()
            .flatten()
            .all(|w| w.len() == 1 && w.contains(STAR)));
        let (total, pi) = k.comprehension();
        assert_eq!(total.total_len(), 3);
        assert!(pi.is_injective() && pi.is_surjective());

        let x = FinIndexedSet::single("i", ["a", "b"]).unwrap();
        let p =
            Predicate::from_fn(&x, |_, e| if e == "a" { vec!["u", "v"] } else { vec![] }).unwrap();
        let (total, pi) = p.comprehension();
        assert_eq!(
            total.fibre(0).iter().collect::<Vec<_>>(),
            ["(a,u)", "(a,v)"]
        );
        assert_eq!(pi.apply(0, 0), "a");
        assert_eq!(pi.apply(0, 1), "a");
        let none = Predicate::from_fn(&x, |_, _| Vec::<String>::new()).unwrap();
        assert_eq!(none.comprehension().0.total_len(), 0);
    }

    #[test]
    fn morphism_count_is_product_of_powers() {
        let x = FinIndexedSet::single("i", ["a", "b"]).unwrap();
        let p = Predicate::from_fn(&x, |_, e| if e == "a" { vec!["u", "v"] } else { vec!["w"] })
            .unwrap();
        let q = Predicate::from_fn(&x, |_, e| {
            if e == "a" {
                vec!["1", "2", "3"]
            } else {
                vec![]
            }
        })
        .unwrap();
        assert_eq!(p.vertical_morphism_count(&q).unwrap(), 0);
        assert_eq!(q.vertical_morphism_count(&p).unwrap(), 8);
    }
}
