use functigraph::format::{parse_function, parse_graph, serialize_function, serialize_graph};
use functigraph_core::graph::family;
use proptest::prelude::*;

#[test]
fn serialized_family_graphs_parse_back() {
    for spec in ["path:5", "complete:4", "pendant-pair-tree:2", "join(star:3,path:2)", "union(cycle:3,path:1)"] {
        let g = family(spec).unwrap();
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g, "{spec}");
    }
}

#[test]
fn empty_graph_and_isolated_vertices() {
    let g = parse_graph("4 0\n").unwrap();
    assert_eq!((g.order(), g.size()), (4, 0));
    assert_eq!(serialize_graph(&g), "4 0\n");
    assert_eq!(parse_graph("0 0").unwrap().order(), 0);
}

proptest! {
    #[test]
    fn graph_serialization_is_idempotent(
        n in 1usize..9,
        raw in proptest::collection::vec((0usize..9, 0usize..9), 0..20),
        comment in "[a-z ]{0,8}",
    ) {
        let mut edges: Vec<(usize, usize)> =
            raw.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b).collect();
        edges.sort_by_key(|&(a, b)| (a.min(b), a.max(b)));
        edges.dedup_by_key(|e| (e.0.min(e.1), e.0.max(e.1)));
        let mut text = format!("# {comment}\n{n} {}\n", edges.len());
        for (a, b) in edges.iter().rev() {
            text.push_str(&format!("{a} {b}   # {comment}\n\n"));
        }
        let once = serialize_graph(&parse_graph(&text).unwrap());
        let twice = serialize_graph(&parse_graph(&once).unwrap());
        prop_assert_eq!(&once, &twice);
        let pairs: Vec<(usize, usize)> = once.lines().skip(1).map(|l| {
            let mut it = l.split(' ').map(|t| t.parse::<usize>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        }).collect();
        prop_assert_eq!(pairs.len(), edges.len());
        prop_assert!(pairs.iter().all(|&(a, b)| a < b));
        prop_assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn function_serialization_is_idempotent(images in proptest::collection::vec(0usize..6, 6)) {
        let text = images.iter().map(ToString::to_string).collect::<Vec<_>>().join("  ");
        let once = serialize_function(&parse_function(&format!("{text} # c"), Some(6)).unwrap());
        let twice = serialize_function(&parse_function(&once, None).unwrap());
        prop_assert_eq!(once, twice);
    }
}
