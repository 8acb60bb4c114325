use std::fmt::Write;

use super::MealyAutomaton;

fn quote(text: &str) -> String {
    format!("\"{}\"", text.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of the Moore diagram. One edge per transition, in
/// table order; the sink is drawn as a double circle.
pub(super) fn render(aut: &MealyAutomaton) -> String {
    let mut dot = String::from("digraph automaton {\n  rankdir=LR;\n");
    for s in 0..aut.num_states() {
        let shape = if aut.is_sink(s) {
            "doublecircle"
        } else {
            "circle"
        };
        let name = aut.state(s).to_string();
        writeln!(dot, "  {} [shape={shape}];", quote(&name)).unwrap();
    }
    for s in 0..aut.num_states() {
        for x in 0..aut.num_letters() {
            writeln!(
                dot,
                "  {} -> {} [label={}];",
                quote(&aut.state(s).to_string()),
                quote(&aut.state(aut.next(s, x)).to_string()),
                quote(&format!("{}|{}", aut.letter(x), aut.letter(aut.out(s, x)))),
            )
            .unwrap();
        }
    }
    dot.push_str("}\n");
    dot
}
