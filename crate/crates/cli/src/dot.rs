//! Graphviz output for quotiented coalgebras.

use std::fmt::Write;

use famfib_core::coinductive::{EquivPartition, FiniteCoalgebra};
use famfib_core::term::Term;
use famfib_core::Result;

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(ch),
        }
    }
    out.push('"');
    out
}

/// Renders the quotient of `k` by `part`: one node per class, named after its
/// representative and labelled with its members, and one edge per distinct
/// successor of the representative's image under the quotient map. Edges
/// carry the successor's label when it has one.
///
/// Nodes follow the carrier's declared order; edges follow their source node
/// and are sorted by `(label, index, target)` within it, so the output only
/// depends on the inputs and never on hashing or layout.
pub fn quotient_dot(k: &FiniteCoalgebra, part: &EquivPartition) -> Result<String> {
    let base = k.carrier();
    let rho = part.quotient_map();
    let quotient = rho.target();
    let multi = base.num_indices() > 1;
    let node = |index: &str, rep: &str| {
        if multi {
            quoted(&format!("{index}.{rep}"))
        } else {
            quoted(rep)
        }
    };
    let mut out = String::from("digraph quotient {\n");
    let mut edges = Vec::new();
    for i in 0..base.num_indices() {
        let index = base.index_label(i);
        for (c, members) in part.classes(i).iter().enumerate() {
            let rep = quotient.elem_label(i, c);
            let label = Term::set(
                members
                    .iter()
                    .map(|&x| Term::from_label(base.elem_label(i, x))),
            )
            .to_string();
            writeln!(out, "  {} [label={}];", node(index, rep), quoted(&label))
                .expect("string write");
            let image = k.functor().map_elem(&rho, index, k.image(i, members[0]))?;
            let mut succ = k.functor().successors(quotient, index, &image)?;
            succ.sort();
            succ.dedup();
            for s in succ {
                let attrs = if s.label.is_empty() {
                    String::new()
                } else {
                    format!(" [label={}]", quoted(&s.label))
                };
                edges.push(format!(
                    "  {} -> {}{attrs};",
                    node(index, rep),
                    node(&s.index, &s.target)
                ));
            }
        }
    }
    for e in edges {
        out.push_str(&e);
        out.push('\n');
    }
    out.push_str("}\n");
    Ok(out)
}
