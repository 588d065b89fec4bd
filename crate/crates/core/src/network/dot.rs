use super::graph::TriangularNetwork;
use crate::exact::Scalar;
use std::fmt::Write;

/// Graphviz rendering of the weighted network; sources and exits are boxed
/// and placed at their plane coordinates.
pub fn to_dot<S: Scalar>(net: &TriangularNetwork<S>) -> String {
    let n = net.n();
    let mut s = String::from("digraph network {\n  rankdir=LR;\n  node [shape=circle, fontsize=9];\n");
    for v in 0..net.vertex_count() {
        let (x, y) = net.vertex_xy(v);
        let mut label = format!("{x},{y}");
        let mut shape = "circle";
        if let Some(i) = (1..=n).find(|&i| net.source(i) == v) {
            label.push_str(&format!("\\ns{i}"));
            shape = "box";
        }
        if let Some(j) = (1..=n).find(|&j| net.exit(j) == v) {
            label.push_str(&format!("\\ne{j} ×{}", net.exit_label(j)));
            shape = "box";
        }
        let _ = writeln!(
            s,
            "  v{v} [label=\"{label}\", shape={shape}, pos=\"{x},{y}!\"];"
        );
    }
    for e in net.edges() {
        let _ = writeln!(
            s,
            "  v{} -> v{} [label=\"{}\", tooltip=\"{}\"];",
            e.from,
            e.to,
            e.weight.to_string().replace('"', "'"),
            e.step.name()
        );
    }
    s.push_str("}\n");
    s
}
