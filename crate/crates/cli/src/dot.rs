//! Graphviz output. Vertices and edges are emitted in index order so equal
//! inputs give byte-identical files.

use qfold::crystal::CrystalGraph;
use qfold::quiver::QuiverWithAut;
use std::fmt::Write;

fn weight_label(c: &[i64]) -> String {
    let parts: Vec<String> = c.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Ω arrows of the quiver; vertices carry their a-orbit.
pub fn quiver_dot(q: &QuiverWithAut) -> String {
    let mut s = String::from("digraph quiver {\n  node [shape=circle];\n");
    for v in 0..q.vertex_count() {
        let _ = writeln!(s, "  {v} [label=\"{v}\", orbit={}];", q.orbit_of(v));
    }
    for (k, h) in q.omega().enumerate() {
        let _ = writeln!(s, "  {} -> {} [label=\"h{k}\"];", h.source, h.target);
    }
    s.push_str("}\n");
    s
}

/// Vertex label is the weight, edge label the index `i` of `f̃_i`.
pub fn crystal_dot(b: &CrystalGraph) -> String {
    let mut s = String::from("digraph crystal {\n");
    for v in b.vertices() {
        let _ = writeln!(s, "  v{} [label=\"{}\"];", v.id, weight_label(v.wt.coords()));
    }
    for (src, i, dst) in b.edges() {
        let _ = writeln!(s, "  v{src} -> v{dst} [label=\"{i}\"];");
    }
    s.push_str("}\n");
    s
}
