//! Well-founded trees of a container, structural recursion over them, the
//! predicate liftings, and the induction engine.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::container::{
    product, ExtensionElement, FinitaryFunctor, IndexedContainer, ENUMERATION_LIMIT,
};
use crate::error::{Error, Result};
use crate::finset::{split_pair, FinIndexedSet, Predicate};
use crate::term::Term;

/// A node `in(s, f)` of the initial algebra: a shape at an index together with
/// one child per position, in the container's position order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WTree {
    index: String,
    shape: String,
    children: Vec<Arc<WTree>>,
    height: usize,
}

impl WTree {
    pub fn index(&self) -> &str {
        &self.index
    }

    pub fn shape(&self) -> &str {
        &self.shape
    }

    pub fn children(&self) -> &[Arc<WTree>] {
        &self.children
    }

    /// Nodes on the longest root-to-leaf path; a leaf has height 1.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(|c| c.size()).sum::<usize>()
    }

    pub fn to_term(&self) -> Term {
        Term::app(
            self.shape.clone(),
            self.children.iter().map(|c| c.to_term()).collect(),
        )
    }

    /// Canonical label, e.g. `s(s(z))`.
    pub fn label(&self) -> String {
        self.to_term().to_string()
    }
}

impl fmt::Display for WTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

impl fmt::Debug for WTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.index, self.to_term())
    }
}

fn tree_error(path: &str, msg: impl Into<String>) -> Error {
    Error::InvalidTree {
        path: if path.is_empty() {
            "root".into()
        } else {
            path.into()
        },
        msg: msg.into(),
    }
}

/// Assembles `in(s, children)` at index `index`.
pub fn in_tree(
    c: &IndexedContainer,
    index: &str,
    shape: &str,
    children: Vec<Arc<WTree>>,
) -> Result<WTree> {
    in_tree_at(c, index, shape, children, "")
}

fn in_tree_at(
    c: &IndexedContainer,
    index: &str,
    shape: &str,
    children: Vec<Arc<WTree>>,
    path: &str,
) -> Result<WTree> {
    let i = c
        .index_pos(index)
        .ok_or_else(|| tree_error(path, format!("unknown index {index:?}")))?;
    let s = c
        .shape_pos(i, shape)
        .ok_or_else(|| tree_error(path, format!("{shape:?} is not a shape at index {index:?}")))?;
    let ps = c.positions(i, s);
    if ps.len() != children.len() {
        return Err(tree_error(
            path,
            format!(
                "shape {shape:?} has {} positions, got {} children",
                ps.len(),
                children.len()
            ),
        ));
    }
    for (p, child) in ps.iter().zip(&children) {
        let want = c.index_label(p.target);
        if child.index != want {
            return Err(tree_error(
                &format!("{path}/{shape}.{}", p.label),
                format!(
                    "child has index {:?}, position expects {want:?}",
                    child.index
                ),
            ));
        }
    }
    let height = 1 + children.iter().map(|t| t.height).max().unwrap_or(0);
    Ok(WTree {
        index: index.into(),
        shape: shape.into(),
        children,
        height,
    })
}

/// Builds a tree from its canonical term at the given index.
pub fn tree_from_term(c: &IndexedContainer, index: &str, term: &Term) -> Result<WTree> {
    fn go(c: &IndexedContainer, index: &str, term: &Term, path: &str) -> Result<WTree> {
        let (shape, args) = term
            .as_app()
            .ok_or_else(|| tree_error(path, format!("{term} is not a node")))?;
        let i = c
            .index_pos(index)
            .ok_or_else(|| tree_error(path, format!("unknown index {index:?}")))?;
        let s = c.shape_pos(i, shape).ok_or_else(|| {
            tree_error(path, format!("{shape:?} is not a shape at index {index:?}"))
        })?;
        let ps = c.positions(i, s);
        if ps.len() != args.len() {
            return Err(tree_error(
                path,
                format!(
                    "shape {shape:?} has {} positions, got {} children",
                    ps.len(),
                    args.len()
                ),
            ));
        }
        let children = ps
            .iter()
            .zip(args)
            .map(|(p, a)| {
                go(
                    c,
                    c.index_label(p.target),
                    a,
                    &format!("{path}/{shape}.{}", p.label),
                )
                .map(Arc::new)
            })
            .collect::<Result<Vec<_>>>()?;
        in_tree_at(c, index, shape, children, path)
    }
    go(c, index, term, "")
}

/// All trees of height at most `depth`, per index. Trees are ordered by
/// height, then shape, then children lexicographically in this same order.
pub fn enumerate_trees(c: &IndexedContainer, depth: usize) -> Result<Vec<Vec<Arc<WTree>>>> {
    if depth == 0 {
        return Err(Error::Unsupported("depth must be at least 1".into()));
    }
    let n = c.num_indices();
    let mut all: Vec<Vec<Arc<WTree>>> = vec![Vec::new(); n];
    for d in 1..=depth {
        let mut layer: Vec<Vec<Arc<WTree>>> = vec![Vec::new(); n];
        for (i, out) in layer.iter_mut().enumerate() {
            for (s, shape) in c.shapes(i).iter().enumerate() {
                let ps = c.positions(i, s);
                if d == 1 {
                    if ps.is_empty() {
                        out.push(Arc::new(WTree {
                            index: c.index_label(i).into(),
                            shape: shape.clone(),
                            children: vec![],
                            height: 1,
                        }));
                    }
                    continue;
                }
                if ps.is_empty() {
                    continue;
                }
                let radices: Vec<usize> = ps.iter().map(|p| all[p.target].len()).collect();
                for choice in product(&radices) {
                    let children: Vec<Arc<WTree>> = ps
                        .iter()
                        .zip(&choice)
                        .map(|(p, &k)| all[p.target][k].clone())
                        .collect();
                    if children.iter().all(|t| t.height < d - 1) {
                        continue;
                    }
                    out.push(Arc::new(WTree {
                        index: c.index_label(i).into(),
                        shape: shape.clone(),
                        children,
                        height: d,
                    }));
                }
                if out.len() > ENUMERATION_LIMIT {
                    return Err(Error::Unsupported(format!(
                        "more than {ENUMERATION_LIMIT} trees at depth {d}"
                    )));
                }
            }
        }
        for (acc, new) in all.iter_mut().zip(layer) {
            acc.extend(new);
        }
    }
    Ok(all)
}

/// The indexed set whose elements are the labels of the given trees.
pub fn tree_carrier(c: &IndexedContainer, trees: &[Vec<Arc<WTree>>]) -> Result<FinIndexedSet> {
    FinIndexedSet::new((0..c.num_indices()).map(|i| {
        (
            c.index_label(i).to_string(),
            trees[i].iter().map(|t| t.label()),
        )
    }))
}

/// An algebra `h : [S,P] A → A` given by its table. The table may be partial;
/// [`fold`] reports the first missing entry it needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    carrier: FinIndexedSet,
    table: Vec<HashMap<String, usize>>,
}

impl AlgebraTable {
    /// Builds the table from `(index, extension element, value)` rows.
    pub fn from_rows<'a, R>(c: &IndexedContainer, carrier: &FinIndexedSet, rows: R) -> Result<Self>
    where
        R: IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    {
        if !carrier
            .indices()
            .eq((0..c.num_indices()).map(|i| c.index_label(i)))
        {
            return Err(Error::BaseMismatch(
                "algebra carrier indices differ from the container".into(),
            ));
        }
        let mut table = vec![HashMap::new(); c.num_indices()];
        for (index, elem, value) in rows {
            let i = carrier
                .index_pos(index)
                .ok_or_else(|| Error::BaseMismatch(format!("unknown index {index:?}")))?;
            let e = c.decode(carrier, i, elem)?;
            let canonical = c.encode(carrier, &e);
            let v = carrier.elem_pos(i, value).ok_or_else(|| {
                Error::BaseMismatch(format!(
                    "{value:?} is not in the carrier at index {index:?}"
                ))
            })?;
            if table[i].insert(canonical, v).is_some() {
                return Err(Error::MalformedMap(format!(
                    "{elem:?} at index {index:?} listed twice"
                )));
            }
        }
        Ok(AlgebraTable {
            carrier: carrier.clone(),
            table,
        })
    }

    /// Builds a total table from a function on extension elements.
    pub fn from_fn<F>(c: &IndexedContainer, carrier: &FinIndexedSet, mut h: F) -> Result<Self>
    where
        F: FnMut(&ExtensionElement) -> String,
    {
        let mut rows = Vec::new();
        for i in 0..c.num_indices() {
            for e in c.extension_elements(carrier, i) {
                rows.push((i, c.encode(carrier, &e), h(&e)));
            }
        }
        let rows: Vec<(&str, &str, &str)> = rows
            .iter()
            .map(|(i, e, v)| (carrier.index_label(*i), e.as_str(), v.as_str()))
            .collect();
        Self::from_rows(c, carrier, rows)
    }

    pub fn carrier(&self) -> &FinIndexedSet {
        &self.carrier
    }

    pub fn get(&self, i: usize, elem: &str) -> Option<&str> {
        self.table[i]
            .get(elem)
            .map(|&v| self.carrier.elem_label(i, v))
    }

    pub fn is_total(&self, c: &IndexedContainer) -> bool {
        c.extension_cardinality(&self.carrier)
            .is_ok_and(|card| card.iter().zip(&self.table).all(|(n, t)| *n == t.len()))
    }

    /// `(index, extension element, value)` rows in index order, elements sorted.
    pub fn rows(&self) -> Vec<(String, String, String)> {
        let mut out = Vec::new();
        for (i, t) in self.table.iter().enumerate() {
            let mut entries: Vec<_> = t.iter().collect();
            entries.sort();
            for (e, &v) in entries {
                out.push((
                    self.carrier.index_label(i).into(),
                    e.clone(),
                    self.carrier.elem_label(i, v).into(),
                ));
            }
        }
        out
    }
}

/// The `in` algebra restricted to a tree enumeration: `s(t1, ..)` maps to the
/// tree `in(s, t1, ..)` whenever that tree was enumerated.
pub fn in_algebra(c: &IndexedContainer, trees: &[Vec<Arc<WTree>>]) -> Result<AlgebraTable> {
    let carrier = tree_carrier(c, trees)?;
    let labels: Vec<Vec<String>> = trees
        .iter()
        .map(|ts| ts.iter().map(|t| t.label()).collect())
        .collect();
    let rows: Vec<(&str, &str, &str)> = (0..c.num_indices())
        .flat_map(|i| labels[i].iter().map(move |l| (i, l)))
        .map(|(i, l)| (c.index_label(i), l.as_str(), l.as_str()))
        .collect();
    AlgebraTable::from_rows(c, &carrier, rows)
}

/// Structural recursion: `fold h (in(s, f)) = h(s, fold h ∘ f)`.
pub fn fold(c: &IndexedContainer, h: &AlgebraTable, t: &WTree) -> Result<String> {
    let i = c
        .index_pos(&t.index)
        .ok_or_else(|| tree_error("", format!("unknown index {:?}", t.index)))?;
    let args = t
        .children
        .iter()
        .map(|child| fold(c, h, child).map(|v| Term::from_label(&v)))
        .collect::<Result<Vec<_>>>()?;
    let elem = Term::app(t.shape.clone(), args).to_string();
    h.get(i, &elem)
        .map(str::to_string)
        .ok_or(Error::MissingAlgebraEntry {
            index: t.index.clone(),
            elem,
        })
}

/// The container lifting: a witness at `(s, f)` picks one `Q`-witness for
/// every position, encoded as the tuple of chosen witnesses in position order.
pub fn lift_predicate_container(c: &IndexedContainer, q: &Predicate) -> Result<Predicate> {
    let x = q.base();
    let fx = c.extension(x)?;
    let mut witnesses = Vec::with_capacity(c.num_indices());
    for i in 0..c.num_indices() {
        let row = c
            .extension_elements(x, i)
            .iter()
            .map(|e| {
                let ps = c.positions(i, e.shape);
                let choices: Vec<Vec<Term>> = ps
                    .iter()
                    .zip(&e.assignment)
                    .map(|(p, &v)| {
                        q.witnesses(p.target, v)
                            .iter()
                            .map(|w| Term::from_label(w))
                            .collect()
                    })
                    .collect();
                let radices: Vec<usize> = choices.iter().map(Vec::len).collect();
                product(&radices)
                    .map(|pick| {
                        Term::Tuple(
                            pick.iter()
                                .zip(&choices)
                                .map(|(&k, ws)| ws[k].clone())
                                .collect(),
                        )
                        .to_string()
                    })
                    .collect::<IndexSet<String>>()
            })
            .collect();
        witnesses.push(row);
    }
    Ok(Predicate::from_parts(fx, witnesses))
}

/// The generic truth-preserving lifting `Σ_{F π} K(F{Q})`: the witnesses at
/// `u ∈ F X` are the elements of `F{Q}` that `F π` sends to `u`.
pub fn lift_predicate_generic(f: &dyn FinitaryFunctor, q: &Predicate) -> Result<Predicate> {
    let (total, pi) = q.comprehension();
    let fx = f.apply_obj(q.base())?;
    let ftotal = f.apply_obj(&total)?;
    let mut witnesses: Vec<Vec<IndexSet<String>>> = (0..fx.num_indices())
        .map(|i| vec![IndexSet::new(); fx.len_at(i)])
        .collect();
    for i in 0..ftotal.num_indices() {
        let index = ftotal.index_label(i);
        let fi = fx
            .index_pos(index)
            .ok_or_else(|| Error::Internal(format!("F X lacks index {index:?}")))?;
        for v in ftotal.fibre(i) {
            let u = f.map_elem(&pi, index, v)?;
            let pos = fx
                .elem_pos(fi, &u)
                .ok_or_else(|| Error::Internal(format!("F pi sends {v:?} outside F X")))?;
            witnesses[fi][pos].insert(v.clone());
        }
    }
    Ok(Predicate::from_parts(fx, witnesses))
}

/// The canonical bijection from generic to container lifting witnesses: an
/// element `s((x1,w1), ..)` of `F{Q}` maps to the choice `(w1, ..)`.
pub fn generic_witness_choice(
    c: &IndexedContainer,
    q: &Predicate,
    index: &str,
    v: &str,
) -> Result<String> {
    let (total, _) = q.comprehension();
    let i = c
        .index_pos(index)
        .ok_or_else(|| Error::BaseMismatch(format!("unknown index {index:?}")))?;
    let e = c.decode(&total, i, v)?;
    let picks = c
        .positions(i, e.shape)
        .iter()
        .zip(&e.assignment)
        .map(|(p, &k)| split_pair(total.elem_label(p.target, k)).map(|(_, w)| Term::from_label(&w)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Term::Tuple(picks).to_string())
}

/// One premise of the induction rule: for shape `shape` at `index`, the
/// predicate holding at each child entails it holding at the node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Premise {
    pub index: String,
    pub shape: String,
    /// `(position, index of the child)` pairs.
    pub hypotheses: Vec<(String, String)>,
}

impl Premise {
    /// Shape name with any trailing digits removed, so `Var0` and `Var1`
    /// belong to the same rule family.
    pub fn family(&self) -> &str {
        self.shape.trim_end_matches(|ch: char| ch.is_ascii_digit())
    }
}

impl fmt::Display for Premise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, j) in &self.hypotheses {
            write!(f, "Π {p} : {j}. ")?;
        }
        for (p, j) in &self.hypotheses {
            write!(f, "Q[{j}]({p}) → ")?;
        }
        let args: Vec<Term> = self
            .hypotheses
            .iter()
            .map(|(p, _)| Term::atom(p.clone()))
            .collect();
        write!(
            f,
            "Q[{}]({})",
            self.index,
            Term::app(self.shape.clone(), args)
        )
    }
}

/// The induction rule of a container: its premises and the indices of the
/// conclusion `Π i. Π t : W i. Q i t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionRule {
    pub premises: Vec<Premise>,
    pub conclusion: Vec<String>,
}

impl fmt::Display for InductionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.premises {
            writeln!(f, "{p} →")?;
        }
        let parts: Vec<String> = self
            .conclusion
            .iter()
            .map(|i| format!("(Π t : {i}. Q[{i}](t))"))
            .collect();
        write!(f, "{}", parts.join(" × "))
    }
}

/// One premise per `(index, shape)` in declaration order.
pub fn induction_rule(c: &IndexedContainer) -> InductionRule {
    let mut premises = Vec::new();
    for i in 0..c.num_indices() {
        for (s, shape) in c.shapes(i).iter().enumerate() {
            premises.push(Premise {
                index: c.index_label(i).into(),
                shape: shape.clone(),
                hypotheses: c
                    .positions(i, s)
                    .iter()
                    .map(|p| (p.label.clone(), c.index_label(p.target).to_string()))
                    .collect(),
            });
        }
    }
    InductionRule {
        premises,
        conclusion: (0..c.num_indices())
            .map(|i| c.index_label(i).to_string())
            .collect(),
    }
}

/// The premise of the induction rule as data: given witnesses for every child
/// of a node, produce a witness for the node.
pub trait InductionStep {
    fn step(&self, index: &str, node: &WTree, children: &[String]) -> Option<String>;
}

impl<F> InductionStep for F
where
    F: Fn(&str, &WTree, &[String]) -> Option<String>,
{
    fn step(&self, index: &str, node: &WTree, children: &[String]) -> Option<String> {
        self(index, node, children)
    }
}

/// A step given as a finite table keyed by index, node label and the child
/// witnesses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepTable {
    entries: HashMap<(String, String, Vec<String>), String>,
}

impl StepTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(
        &mut self,
        index: &str,
        node: &str,
        children: Vec<String>,
        witness: String,
    ) -> Option<String> {
        self.entries
            .insert((index.into(), node.into(), children), witness)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Tabulates `step` over every node of an enumeration, feeding it the
    /// witnesses it produced for the children.
    pub fn tabulate<S: InductionStep + ?Sized>(trees: &[Vec<Arc<WTree>>], step: &S) -> StepTable {
        let mut table = StepTable::new();
        let mut memo: HashMap<(String, String), Option<String>> = HashMap::new();
        let mut sorted: Vec<&Arc<WTree>> = trees.iter().flatten().collect();
        sorted.sort_by_key(|t| t.height());
        for t in sorted {
            let kids: Option<Vec<String>> = t
                .children()
                .iter()
                .map(|k| {
                    memo.get(&(k.index().to_string(), k.label()))
                        .cloned()
                        .flatten()
                })
                .collect();
            let w = kids.and_then(|kids| {
                let w = step.step(t.index(), t, &kids)?;
                table.insert(t.index(), &t.label(), kids, w.clone());
                Some(w)
            });
            memo.insert((t.index().to_string(), t.label()), w);
        }
        table
    }
}

impl InductionStep for StepTable {
    fn step(&self, index: &str, node: &WTree, children: &[String]) -> Option<String> {
        self.entries
            .get(&(index.to_string(), node.label(), children.to_vec()))
            .cloned()
    }
}

/// Where the predicate's fibre for a tree lives.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    /// The predicate is over a tree carrier; the fibre of `t` is at `t`.
    Trees,
    /// The step sits above `h`; the fibre of `t` is at `fold h t`.
    Above(&'a AlgebraTable),
}

/// Result of [`induce`]: the witness, and a canonical term recording which
/// step produced it at every node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionWitness {
    pub witness: String,
    pub derivation: Term,
}

/// Runs the induction rule on one tree: the witness at `in(s, f)` is the step
/// applied to the witnesses of the children. Every produced witness is
/// checked to lie in the predicate's fibre over the node.
pub fn induce<S: InductionStep + ?Sized>(
    c: &IndexedContainer,
    q: &Predicate,
    target: Target<'_>,
    step: &S,
    t: &WTree,
) -> Result<InductionWitness> {
    induce_at(c, q, target, step, t, "root")
}

fn induce_at<S: InductionStep + ?Sized>(
    c: &IndexedContainer,
    q: &Predicate,
    target: Target<'_>,
    step: &S,
    t: &WTree,
    path: &str,
) -> Result<InductionWitness> {
    let i = c
        .index_pos(t.index())
        .ok_or_else(|| tree_error(path, format!("unknown index {:?}", t.index())))?;
    let s = c
        .shape_pos(i, t.shape())
        .ok_or_else(|| tree_error(path, format!("unknown shape {:?}", t.shape())))?;
    let mut kids = Vec::with_capacity(t.children().len());
    for (p, child) in c.positions(i, s).iter().zip(t.children()) {
        kids.push(induce_at(
            c,
            q,
            target,
            step,
            child,
            &format!("{path}/{}.{}", t.shape(), p.label),
        )?);
    }
    let child_witnesses: Vec<String> = kids.iter().map(|k| k.witness.clone()).collect();
    let witness = step
        .step(t.index(), t, &child_witnesses)
        .ok_or_else(|| Error::Step {
            path: path.into(),
            msg: format!(
                "no step for {} with child witnesses {:?}",
                t.label(),
                child_witnesses
            ),
        })?;
    let at = match target {
        Target::Trees => t.label(),
        Target::Above(h) => fold(c, h, t)?,
    };
    let fibre = q.witnesses_of(t.index(), &at).ok_or_else(|| Error::Step {
        path: path.into(),
        msg: format!(
            "{at:?} is not in the predicate's base at index {:?}",
            t.index()
        ),
    })?;
    if !fibre.contains(&witness) {
        return Err(Error::Step {
            path: path.into(),
            msg: format!("step produced {witness:?}, which is not a witness for {at:?}"),
        });
    }
    let mut args = vec![Term::atom(path), Term::from_label(&witness)];
    args.extend(kids.into_iter().map(|k| k.derivation));
    Ok(InductionWitness {
        witness,
        derivation: Term::app("step", args),
    })
}

/// Outcome of [`check_induction_soundness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionReport {
    pub rule: InductionRule,
    pub trees_checked: usize,
    /// Nodes whose children all satisfy the predicate while the node does not.
    pub premise_counterexamples: Vec<(String, String)>,
    /// Trees outside the predicate.
    pub conclusion_failures: Vec<(String, String)>,
}

impl InductionReport {
    pub fn premise_holds(&self) -> bool {
        self.premise_counterexamples.is_empty()
    }

    /// The rule's conclusion was established: premise and conclusion both hold.
    pub fn passed(&self) -> bool {
        self.premise_holds() && self.conclusion_failures.is_empty()
    }

    /// Premise held but some tree failed: the rule would be unsound.
    pub fn unsound(&self) -> bool {
        self.premise_holds() && !self.conclusion_failures.is_empty()
    }
}

/// Checks the induction rule for a decidable predicate over the trees of
/// height at most `depth`. The predicate is read through its boolean view and
/// must be based on [`tree_carrier`] of that enumeration.
pub fn check_induction_soundness(
    c: &IndexedContainer,
    q: &Predicate,
    depth: usize,
) -> Result<InductionReport> {
    let trees = enumerate_trees(c, depth)?;
    let carrier = tree_carrier(c, &trees)?;
    if q.base() != &carrier {
        return Err(Error::BaseMismatch(
            "predicate is not based on the tree enumeration".into(),
        ));
    }
    let holds = |t: &WTree| {
        let i = carrier.index_pos(t.index()).expect("tree index");
        carrier
            .elem_pos(i, &t.label())
            .is_some_and(|x| q.holds(i, x))
    };
    let mut report = InductionReport {
        rule: induction_rule(c),
        trees_checked: 0,
        premise_counterexamples: Vec::new(),
        conclusion_failures: Vec::new(),
    };
    for t in trees.iter().flatten() {
        report.trees_checked += 1;
        let node_holds = holds(t);
        if !node_holds && t.children().iter().all(|k| holds(k)) {
            report
                .premise_counterexamples
                .push((t.index().into(), t.label()));
        }
        if !node_holds {
            report
                .conclusion_failures
                .push((t.index().into(), t.label()));
        }
    }
    Ok(report)
}
