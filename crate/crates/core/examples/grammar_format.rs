// Writing Γ as JSON and reading it back.

use tagclique::format::{parse_grammar, print_grammar};
use tagclique::gadgets::build_reduction_grammar;

pub fn run_example() {
    let gamma = build_reduction_grammar();
    let text = print_grammar(&gamma.grammar, &gamma.handles);
    let (g, handles) = parse_grammar(&text).unwrap();
    assert_eq!(g, gamma.grammar);
    assert_eq!(handles["P1346_Out"].name(), "P1346_Out");
    assert_eq!(print_grammar(&g, &handles), text);
    println!("{} bytes, {} handles", text.len(), handles.len());
}

#[allow(dead_code)]
fn main() {
    run_example();
}
