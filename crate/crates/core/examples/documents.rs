//! Reading and writing fan documents, and driving the command line in-process.

use retoric::catalog;
use retoric::cli::{emit, parse, run};

fn main() {
    let doc = emit(&catalog::fake_p1xp1());
    println!("{doc}");
    let x = parse(&doc).unwrap();
    assert_eq!(emit(&x), doc);

    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["retoric", "invariants"], &mut doc.as_bytes(), &mut out, &mut err);
    print!("{}", String::from_utf8(out).unwrap());
    println!("exit code {code}");
}
