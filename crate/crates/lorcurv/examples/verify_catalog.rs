//! Re-derive every catalog claim on its rational sample points.
//!
//! `cargo run --example verify_catalog -- [exact|float] [GLOB]`

use lorcurv::catalog::verify_all;
use lorcurv::Mode;

fn main() {
    let mut args = std::env::args().skip(1);
    let mode = match args.next().as_deref() {
        Some("float") => Mode::Float,
        _ => Mode::Exact,
    };
    let filter = args.next();
    let summary = verify_all(mode, filter.as_deref()).expect("family filter");
    for line in summary.text() {
        println!("{line}");
    }
}
