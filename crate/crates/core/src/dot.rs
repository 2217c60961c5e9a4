//! Graphviz export of Hasse diagrams. Only cover edges are emitted.

use std::fmt::Write;

use crate::completion::{cut_label, CompletionLattice};
use crate::poset::FinitePoset;

/// Hasse diagram of `poset`, smaller elements at the bottom.
pub fn poset_dot(poset: &FinitePoset, graph_name: &str) -> String {
    let labels: Vec<String> = poset.labels().to_vec();
    render(graph_name, &labels, &poset.hasse_covers())
}

/// Hasse diagram of the completion of `base`, nodes labelled `{a,b}`.
pub fn completion_dot(lattice: &CompletionLattice, base: &FinitePoset, graph_name: &str) -> String {
    let labels: Vec<String> = lattice.cuts().iter().map(|c| cut_label(base, c)).collect();
    render(graph_name, &labels, &lattice.covers(base))
}

fn render(graph_name: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(graph_name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (i, l) in labels.iter().enumerate() {
        writeln!(out, "  n{i} [label={}];", quote(l)).unwrap();
    }
    for (a, b) in edges {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            q.push('\\');
        }
        q.push(c);
    }
    q.push('"');
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::{dedekind_completion, CompletionConfig};
    use crate::poset::fixtures::{butterfly, chain};

    #[test]
    fn chain_has_only_cover_edges() {
        let dot = poset_dot(&chain(3), "C");
        assert!(dot.contains("n0 -> n1;") && dot.contains("n1 -> n2;"));
        assert!(!dot.contains("n0 -> n2;"));
    }

    #[test]
    fn completion_nodes_use_brace_labels() {
        let b = butterfly();
        let l = dedekind_completion(&b, &CompletionConfig::default()).unwrap();
        let dot = completion_dot(&l, &b, "X#");
        assert!(dot.starts_with("digraph \"X#\" {"));
        assert!(dot.contains("n0 [label=\"{}\"];"));
        assert!(dot.contains("[label=\"{a,b}\"]"));
        assert_eq!(dot.matches("[label=").count(), 7);
    }

    #[test]
    fn quotes_are_escaped() {
        assert_eq!(quote(r#"a"b\c"#), r#""a\"b\\c""#);
    }
}
