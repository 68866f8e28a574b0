//! Small named networks used throughout the tests and the command line.

use crate::codec::{decode, decode_identical, MergingSequence};
use crate::error::{Error, Result};
use crate::graph::DagBuilder;
use crate::layout::Layout;
use crate::network::{MergeNetwork, Mode, PathGroup};

const NAMES: &[&str] = &[
    "butterfly",
    "two-way",
    "two-unicast",
    "three-path",
    "picgv",
    "stack-a",
    "stack-b",
    "aa-distinct",
    "aa-identical",
    "two-two-labeled",
    "two-five",
    "one-two-two-extremal",
    "one-two-three",
];

pub fn fixture_names() -> &'static [&'static str] {
    NAMES
}

pub fn fixture(name: &str) -> Result<MergeNetwork> {
    let seq = |s: &str| s.parse::<MergingSequence>();
    let net = match name {
        "butterfly" => butterfly()?,
        "two-way" => two_way()?,
        "two-unicast" => two_unicast()?,
        "three-path" => three_path()?,
        "picgv" => picgv()?,
        "stack-a" => decode(&seq("2 2 : (1,2) (2,1)")?)?,
        "stack-b" => decode(&seq("3 2 : (1,1) (2,1) (2,2) (3,2)")?)?,
        "aa-distinct" | "two-two-labeled" => decode(&seq("2 2 : (1,1) (2,1) (2,2) (1,2) (1,1)")?)?,
        "aa-identical" => decode_identical(&seq("3 3 : (1,2) (1,3) (2,3) (2,2)")?)?,
        "two-five" => two_five()?,
        "one-two-two-extremal" => one_two_two()?,
        "one-two-three" => one_two_three()?,
        _ => return Err(Error::UnknownFixture(name.into())),
    };
    net.check()?;
    Ok(net)
}

/// Two unit sources feeding two sinks through a single bottleneck edge C->D,
/// read as one shared source with a two-path group per sink.
fn butterfly() -> Result<MergeNetwork> {
    let mut b = DagBuilder::new();
    let sa = b.edge("S", "A");
    let sb = b.edge("S", "B");
    let ar1 = b.edge("A", "R1");
    let ac = b.edge("A", "C");
    let bc = b.edge("B", "C");
    let br2 = b.edge("B", "R2");
    let cd = b.edge("C", "D");
    let dr1 = b.edge("D", "R1");
    let dr2 = b.edge("D", "R2");
    let (s, r1, r2) = (b.vertex("S"), b.vertex("R1"), b.vertex("R2"));
    let dag = b.build()?;
    let groups = vec![
        PathGroup { source: s, sink: r1, paths: vec![vec![sa, ar1], vec![sb, bc, cd, dr1]] },
        PathGroup { source: s, sink: r2, paths: vec![vec![sa, ac, cd, dr2], vec![sb, br2]] },
    ];
    MergeNetwork::new(dag, groups, Mode::Identical, Some(vec![vec![sa], vec![sb]]))
}

/// Two unicast sessions sharing the edge A->B.
fn two_way() -> Result<MergeNetwork> {
    let mut b = DagBuilder::new();
    let s1a = b.edge("S1", "A");
    let s2a = b.edge("S2", "A");
    let ab = b.edge("A", "B");
    let br1 = b.edge("B", "R1");
    let br2 = b.edge("B", "R2");
    let v: Vec<_> = ["S1", "S2", "R1", "R2"].iter().map(|n| b.vertex(n)).collect();
    let dag = b.build()?;
    let groups = vec![
        PathGroup { source: v[0], sink: v[2], paths: vec![vec![s1a, ab, br1]] },
        PathGroup { source: v[1], sink: v[3], paths: vec![vec![s2a, ab, br2]] },
    ];
    MergeNetwork::new(dag, groups, Mode::Distinct, None)
}

/// A single path weaving through both paths of a two-path session.
fn two_unicast() -> Result<MergeNetwork> {
    let mut b = DagBuilder::new();
    let s1a = b.edge("S1", "A");
    let ab = b.edge("A", "B");
    let be = b.edge("B", "E");
    let ef = b.edge("E", "F");
    let fc = b.edge("F", "C");
    let cd = b.edge("C", "D");
    let dr1 = b.edge("D", "R1");
    let s2a = b.edge("S2", "A");
    let bc = b.edge("B", "C");
    let dr2 = b.edge("D", "R2");
    let s2e = b.edge("S2", "E");
    let fr2 = b.edge("F", "R2");
    let v: Vec<_> = ["S1", "S2", "R1", "R2"].iter().map(|n| b.vertex(n)).collect();
    let dag = b.build()?;
    let groups = vec![
        PathGroup { source: v[0], sink: v[2], paths: vec![vec![s1a, ab, be, ef, fc, cd, dr1]] },
        PathGroup { source: v[1], sink: v[3], paths: vec![vec![s2a, ab, bc, cd, dr2], vec![s2e, ef, fr2]] },
    ];
    MergeNetwork::new(dag, groups, Mode::Distinct, None)
}

/// Three single paths: two share A->B->C->D and the third joins on B->C.
fn three_path() -> Result<MergeNetwork> {
    let mut b = DagBuilder::new();
    let s1a = b.edge("S1", "A");
    let s2a = b.edge("S2", "A");
    let ab = b.edge("A", "B");
    let s3b = b.edge("S3", "B");
    let bc = b.edge("B", "C");
    let cd = b.edge("C", "D");
    let cr3 = b.edge("C", "R3");
    let dr1 = b.edge("D", "R1");
    let dr2 = b.edge("D", "R2");
    let v: Vec<_> = ["S1", "S2", "S3", "R1", "R2", "R3"].iter().map(|n| b.vertex(n)).collect();
    let dag = b.build()?;
    let groups = vec![
        PathGroup { source: v[0], sink: v[3], paths: vec![vec![s1a, ab, bc, cd, dr1]] },
        PathGroup { source: v[1], sink: v[4], paths: vec![vec![s2a, ab, bc, cd, dr2]] },
        PathGroup { source: v[2], sink: v[5], paths: vec![vec![s3b, bc, cr3]] },
    ];
    MergeNetwork::new(dag, groups, Mode::Distinct, None)
}

/// A (2,2)-graph with four mergings where each path meets its two mergings
/// in an order that lets both groups swap to a cheaper pair of paths.
fn picgv() -> Result<MergeNetwork> {
    let mut l = Layout::new(Mode::Distinct);
    let a = l.group("S1", "R1");
    let b = l.group("S2", "R2");
    l.path(a, ["g1", "g4"]);
    l.path(a, ["g3", "g2"]);
    l.path(b, ["g1", "g2"]);
    l.path(b, ["g3", "g4"]);
    l.build()
}

/// A non-reroutable (2,5)-graph with eleven mergings.
fn two_five() -> Result<MergeNetwork> {
    let mut l = Layout::new(Mode::Distinct);
    let a = l.group("S1", "R1");
    let b = l.group("S2", "R2");
    l.path(a, ["A", "B", "C", "D", "E", "F"]);
    l.path(a, ["J", "K", "L", "M", "N"]);
    for p in [&["A", "J"][..], &["B", "K", "D"], &["L", "C"], &["F", "M"], &["E", "N"]] {
        l.path(b, p.iter().copied());
    }
    l.build()
}

/// Non-reroutable (1,2,2)-graph with eight mergings.
fn one_two_two() -> Result<MergeNetwork> {
    labelled(&[
        &[&[6, 1, 4, 7]],
        &[&[0, 1, 2], &[3, 4, 5]],
        &[&[0, 3, 6], &[7, 2, 5]],
    ])
}

/// Non-reroutable (1,2,3)-graph with twelve mergings.
fn one_two_three() -> Result<MergeNetwork> {
    labelled(&[
        &[&[8, 10, 9, 11]],
        &[&[0, 1, 2, 3], &[4, 5, 6, 7, 8]],
        &[&[0, 4, 2, 7, 9], &[5, 1, 10], &[3, 6, 11]],
    ])
}

/// Separate-source network from the merging labels along each path, per group.
fn labelled(groups: &[&[&[u32]]]) -> Result<MergeNetwork> {
    let mut l = Layout::new(Mode::Distinct);
    for (g, paths) in groups.iter().enumerate() {
        let id = l.group(&format!("S{}", g + 1), &format!("R{}", g + 1));
        for p in *paths {
            l.path(id, p.iter().map(|k| format!("g{k}")));
        }
    }
    l.build()
}
