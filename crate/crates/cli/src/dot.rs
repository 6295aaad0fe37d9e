//! Graphviz output. Undirected edges are drawn without arrowheads and in
//! the `overlap` class; directed edges keep their arrow and use `nesting`.

use std::fmt::Write;

use ciliate_core::marked_graph::SimpleMarkedGraph;

pub fn to_dot(g: &SimpleMarkedGraph) -> String {
    let mut out = String::from("digraph G {\n  node [shape=circle];\n");
    for (v, sign) in g.vertices() {
        let style = if v.is_m() { ", shape=doublecircle, style=filled, fillcolor=lightgrey" } else { "" };
        writeln!(out, "  \"{v}\" [label=\"{v}^{sign}\"{style}];").unwrap();
    }
    for (a, b) in g.undirected_edges() {
        writeln!(out, "  \"{a}\" -> \"{b}\" [dir=none, style=bold, class=overlap];").unwrap();
    }
    for (a, b) in g.directed_edges() {
        writeln!(out, "  \"{a}\" -> \"{b}\" [style=dashed, class=nesting];").unwrap();
    }
    out.push_str("}\n");
    out
}
