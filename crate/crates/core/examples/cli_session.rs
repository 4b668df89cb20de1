//! Drive the command-line interface in-process and show its JSON output.

fn main() {
    let sessions: [&[&str]; 4] = [
        &["mvlab", "poly-verify", "--coeffs", "0,0,0,1", "--lambda", "1/2"],
        &["mvlab", "lambda-family", "--k", "3"],
        &["mvlab", "check-weighted", "--fn", "x^2", "--lambda", "0.3", "--trials", "20"],
        &["mvlab", "vderiv", "--fn", "x1^2 - x2^2", "--dim", "3", "--v", "0,0,1"],
    ];
    for argv in sessions {
        println!("$ {}", argv.join(" "));
        let code = mvlab::cli::run(argv.iter().copied());
        println!("(exit {code})\n");
    }
}
