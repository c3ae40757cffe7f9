//! Reference data shared by the Schur tests and the acceptance harness.

use std::collections::BTreeSet;

/// Undirected edges, each stored with its endpoints in sorted order.
pub fn edge_set(edges: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    edges
        .iter()
        .map(|(a, b)| {
            let (a, b) = (a.to_string(), b.to_string());
            if a < b {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect()
}

/// Displayed Ext-quiver of S(2,10) in characteristic 2.
pub const S2_10_EDGES: &[(&str, &str)] =
    &[("6,4", "10"), ("6,4", "5,5"), ("10", "9,1"), ("8,2", "7,3"), ("7,3", "5,5"), ("5,5", "9,1")];

/// Displayed Ext-quiver of S(2,21) in characteristic 2.
pub const S2_21_EDGES: &[(&str, &str)] = &[
    ("17,4", "15,6"),
    ("13,8", "11,10"),
    ("13,8", "21"),
    ("21", "19,2"),
    ("15,6", "11,10"),
    ("11,10", "19,2"),
    ("20,1", "12,9"),
    ("12,9", "16,5"),
];

/// The two block quivers of S(2,11) in characteristic 2.
pub const S2_11_EDGES: &[(&str, &str)] = &[("10,1", "6,5"), ("6,5", "8,3"), ("11", "7,4")];

/// Every character list printed for p = 2.
pub const PRINTED: &[(usize, &str, &[&str])] = &[
    (6, "6", &["6"]),
    (6, "5,1", &["6", "5,1"]),
    (6, "4,2", &["5,1", "4,2"]),
    (6, "3,3", &["6", "5,1", "4,2", "3,3"]),
    (8, "8", &["8"]),
    (8, "7,1", &["8", "7,1"]),
    (8, "6,2", &["8", "7,1", "6,2"]),
    (8, "5,3", &["6,2", "5,3"]),
    (8, "4,4", &["8", "7,1", "6,2", "5,3", "4,4"]),
    (11, "10,1", &["10,1"]),
    (11, "8,3", &["10,1", "8,3"]),
    (11, "6,5", &["10,1", "8,3", "6,5"]),
    (13, "13", &["13"]),
    (13, "11,2", &["13", "11,2"]),
    (13, "9,4", &["11,2", "9,4"]),
    (13, "7,6", &["13", "11,2", "9,4", "7,6"]),
    (17, "17", &["17"]),
    (17, "15,2", &["17", "15,2"]),
    (17, "13,4", &["17", "15,2", "13,4"]),
    (17, "11,6", &["13,4", "11,6"]),
    (17, "9,8", &["17", "15,2", "13,4", "11,6", "9,8"]),
    (19, "19", &["19"]),
    (19, "15,4", &["19", "15,4"]),
    (19, "11,8", &["19", "15,4", "11,8"]),
    (19, "18,1", &["18,1"]),
    (19, "16,3", &["18,1", "16,3"]),
    (19, "14,5", &["18,1", "16,3", "14,5"]),
    (19, "12,7", &["14,5", "12,7"]),
    (19, "10,9", &["18,1", "16,3", "14,5", "12,7", "10,9"]),
    (19, "17,2", &["17,2"]),
    (19, "13,6", &["13,6"]),
];

/// Golden rows: `(p, n, letters for r = 1..=23)`.
pub fn golden() -> Vec<(usize, usize, Vec<&'static str>)> {
    let tail = |v: Vec<&'static str>, fill: &'static str| {
        let mut v = v;
        while v.len() < 23 {
            v.push(fill);
        }
        v
    };
    let mut rows = vec![(
        2,
        2,
        vec![
            "S", "F", "S", "T", "F", "W+", "F", "W?", "T", "W-", "T", "W-", "W+", "W-", "W+", "W-", "W?", "W-", "W?",
            "W-", "W-", "W-", "W-",
        ],
    )];
    rows.push((2, 3, tail(vec!["S", "F", "F", "W?", "W+"], "W-")));
    rows.push((2, 4, tail(vec!["S", "F", "F", "W-", "W+"], "W-")));
    rows.push((2, 5, tail(vec!["S", "F", "F", "W-", "W?"], "W-")));
    rows.push((2, 6, tail(vec!["S", "F", "F", "W-", "W?"], "W-")));
    rows.push((3, 2, tail(vec!["S", "S", "F", "F", "F", "F", "F", "F", "T", "T", "T"], "W-")));
    rows.push((3, 3, tail(vec!["S", "S", "F", "F", "F", "W-", "T", "T"], "W-")));
    for n in 4..=6 {
        rows.push((3, n, tail(vec!["S", "S", "F", "F", "F"], "W-")));
    }
    let mut p5n2 = vec!["S"; 4];
    p5n2.extend(["F"; 19]);
    rows.push((5, 2, p5n2));
    for n in 3..=6 {
        rows.push((5, n, tail(vec!["S", "S", "S", "S", "F", "F", "F", "F", "F"], "W-")));
    }
    rows
}
