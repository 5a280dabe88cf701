//! DOT output of specialization trees, with an edge from each face to the
//! simplex it is a face of.

use std::fmt::Write;

use crate::complex::{specialization_edges, PadicSimplex};
use crate::gamma::format_set;

/// Nodes `n0, n1, ..` with the given labels and `(face, simplex)` edges.
pub fn digraph(labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::from("digraph specialization {\n");
    for (i, l) in labels.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", l.replace('"', "\\\"")).unwrap();
    }
    let mut edges = edges.to_vec();
    edges.sort_unstable();
    for (a, b) in edges {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn supp_label(s: &PadicSimplex) -> String {
    format!("Supp={}", format_set(&s.support()))
}

/// The closure elements of a family of simplexes joined by the facet relation.
pub fn specialization_dot(simplexes: &[PadicSimplex]) -> String {
    let (elems, parent) = specialization_edges(simplexes);
    let labels: Vec<String> = elems.iter().map(supp_label).collect();
    let edges: Vec<(usize, usize)> = parent.iter().map(|(&s, &f)| (f, s)).collect();
    digraph(&labels, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_graph() {
        let g = digraph(&["Supp={}".into(), "Supp={1}".into()], &[(0, 1)]);
        assert_eq!(g, "digraph specialization {\n  n0 [label=\"Supp={}\"];\n  n1 [label=\"Supp={1}\"];\n  n0 -> n1;\n}\n");
    }
}
