use nilsupport::dsl::{parse, parse_node};
use nilsupport_core::Node;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = Node> {
    prop_oneof![
        Just(Node::Triv),
        (1usize..5).prop_map(Node::Def),
        (1usize..5).prop_map(Node::Ad),
    ]
}

fn tree() -> impl Strategy<Value = Node> {
    leaf().prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Node::dual),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Node::sum(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Node::tensor(a, b)),
            (0usize..4, inner.clone()).prop_map(|(d, e)| Node::sym(d, e)),
            (0usize..4, inner.clone()).prop_map(|(d, e)| Node::ext(d, e)),
            (inner, 0u32..3).prop_map(|(e, r)| Node::twist(e, r)),
        ]
    })
}

/// Inserts whitespace after every punctuation mark.
fn spaced(text: &str) -> String {
    text.replace('(', " ( ")
        .replace(',', " ,\t")
        .replace(')', "\n) ")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_trees_parse_back(node in tree()) {
        let text = node.to_string();
        prop_assert_eq!(parse_node(&text).unwrap(), node.clone());
        prop_assert_eq!(parse_node(&spaced(&text)).unwrap(), node);
    }

    #[test]
    fn truncated_input_is_rejected_inside_it(node in tree(), cut in 0usize..1000) {
        let text = node.to_string();
        let cut = cut % text.len();
        if let Err(e) = parse_node(&text[..cut]) {
            prop_assert!(e.offset >= 1 && e.offset <= cut + 1);
        } else {
            // only a complete prefix such as "triv" parses
            prop_assert!(cut > 0);
        }
    }
}

#[test]
fn validated_parse_matches_display() {
    for text in [
        "sym(2,def(2))",
        "ten(def(2),tw(def(2),1))",
        "sum(triv,dual(ad(2)))",
    ] {
        assert_eq!(parse(text).unwrap().to_string(), text);
    }
}
