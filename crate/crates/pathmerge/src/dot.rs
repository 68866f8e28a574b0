//! Graphviz rendering. Merging heads are drawn as filled dots and every
//! edge is labelled with the paths through it.

use std::fmt::Write;

use crate::merge::find_mergings;
use crate::network::MergeNetwork;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn to_dot(net: &MergeNetwork) -> String {
    let dag = net.dag();
    let mut heads = vec![false; dag.vertex_count()];
    for m in find_mergings(net) {
        heads[m.head] = true;
    }
    let mut on = vec![Vec::new(); dag.edge_count()];
    for ((g, i), path) in net.paths() {
        for &e in path {
            on[dag.edge_index(e).unwrap()].push(format!("{}.{}", g + 1, i + 1));
        }
    }
    let mut out = String::from("digraph network {\n  rankdir=LR;\n");
    for v in 0..dag.vertex_count() {
        let style = if heads[v] { " shape=point width=0.15 style=filled fillcolor=black xlabel=" } else { " label=" };
        writeln!(out, "  {}[{}{}];", v, style.trim_start(), quote(dag.name(v))).unwrap();
    }
    for (k, e) in dag.edges().iter().enumerate() {
        writeln!(out, "  {} -> {} [label={}];", e.from, e.to, quote(&format!("e{} {}", e.id, on[k].join(",")))).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::decode;

    #[test]
    fn single_crossing() {
        let net = decode(&"1 1 : (1,1)".parse().unwrap()).unwrap();
        let dot = to_dot(&net);
        assert!(dot.starts_with("digraph network {"));
        assert_eq!(dot.matches("style=filled").count(), 1);
        assert!(dot.contains("1.1,2.1"));
        assert!(dot.trim_end().ends_with('}'));
    }
}
