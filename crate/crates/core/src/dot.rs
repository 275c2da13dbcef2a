//! Moore diagrams in Graphviz DOT syntax.

use std::fmt::Write;

use crate::automaton::MealyAutomaton;

/// One node per state and one edge `q -> q_a` labelled `a|λ_q(a)` per
/// state and symbol, in declaration order and ascending symbol order.
pub fn to_dot(m: &MealyAutomaton) -> String {
    let mut s = String::from("digraph mealy {\n    rankdir=LR;\n    node [shape=circle];\n");
    for name in m.names() {
        writeln!(s, "    \"{name}\";").unwrap();
    }
    for q in 0..m.num_states() {
        for a in 0..m.alphabet_size() {
            writeln!(
                s,
                "    \"{}\" -> \"{}\" [label=\"{}|{}\"];",
                m.name(q),
                m.name(m.next(q, a)),
                a,
                m.output(q).apply(a)
            )
            .unwrap();
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::AutomatonFile;

    #[test]
    fn lamplighter_edges() {
        let f =
            AutomatonFile::parse("alphabet 2\nstate a perm 0 1 to a b\nstate b perm 1 0 to a b\n")
                .unwrap();
        let dot = to_dot(&f.automaton);
        assert_eq!(dot.matches("->").count(), 4);
        assert!(dot.contains("\"a\" -> \"b\" [label=\"1|1\"];"));
        assert!(dot.contains("\"b\" -> \"a\" [label=\"0|1\"];"));
        assert_eq!(dot, to_dot(&f.automaton));
    }

    #[test]
    fn identity_self_loops() {
        let dot = to_dot(&MealyAutomaton::identity(3));
        for a in 0..3 {
            assert!(dot.contains(&format!("\"e\" -> \"e\" [label=\"{a}|{a}\"];")));
        }
        assert_eq!(dot.matches("->").count(), 3);
    }
}
