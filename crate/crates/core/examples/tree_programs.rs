// Building programs from W, Eq and A and asking which tuples they compute.

use tagclique::program::{
    combine, enumerate_tuples, make_a, make_eq, make_w1, tuple_in_program, Tuple4,
};
use tagclique::tag::{terminals, Terminal};

fn tuple(a: &str, b: &str, c: &str, d: &str) -> Tuple4 {
    Tuple4::new(terminals(a), terminals(b), terminals(c), terminals(d))
}

pub fn run_example() {
    let x = Terminal::new("x");
    let y = Terminal::new("y");
    let xy = combine(&make_w1(&x), &make_w1(&y));
    let computed = enumerate_tuples(&xy, 16);
    assert_eq!(computed.len(), 1);
    assert!(computed.contains(&tuple("x y", "y x", "x y", "y x")));

    let bits = [Terminal::new("0"), Terminal::new("1")];
    let eq = make_eq(&bits).unwrap();
    assert!(tuple_in_program(&eq, &tuple("0 1", "1 0", "0 1", "1 0")));
    assert!(!tuple_in_program(&eq, &tuple("0 1", "0 1", "0 1", "0 1")));

    // W(x)·A({0,1}) accepts x-framed tuples with anything inside
    let framed = combine(&make_w1(&x), &make_a(&bits).unwrap());
    assert!(tuple_in_program(&framed, &tuple("x 0 1", "1 x", "x", "0 0 x")));
    for t in enumerate_tuples(&eq, 8) {
        println!("{t:?}");
    }
}

#[allow(dead_code)]
fn main() {
    run_example();
}
