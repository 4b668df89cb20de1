//! Parse function text, print the canonical form and evaluate it.
//!
//! cargo run --example parse_expression -- "x^2 + 3*y"

use mvlab::expr::{eval, parse};

fn main() {
    let text = std::env::args().nth(1).unwrap_or_else(|| "-x^2 + 3*sin(y)".into());
    let ast = match parse(&text) {
        Ok(ast) => ast,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    println!("input      {text}");
    println!("canonical  {}", ast.to_canonical());
    let point: Vec<f64> = (1..=ast.max_var()).map(|i| 0.5 * i as f64).collect();
    match eval(&ast, &point) {
        Ok(v) => println!("value at {point:?} = {v}"),
        Err(e) => println!("cannot evaluate at {point:?}: {e}"),
    }
    for bad in ["2x", "sin(x", "x11"] {
        println!("{bad:<8} -> {}", parse(bad).unwrap_err());
    }
}
