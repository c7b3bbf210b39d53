//! Analyse a JSON document, as the `lorcurv analyze` command does, and print
//! the full report.
//!
//! `cargo run --example analyze_json -- fixtures/S40.1.json`

use lorcurv::io::Document;
use lorcurv::report::analyze;
use lorcurv::{Mode, Q};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/S4lambda.4.json").into());
    let doc = Document::parse(&std::fs::read_to_string(&path).expect("readable file")).expect("valid document");
    let report = match doc.mode {
        Mode::Exact => {
            let s = doc.subject::<Q>().unwrap();
            analyze(&s).unwrap().report(&s, None)
        }
        Mode::Float => {
            let s = doc.subject::<f64>().unwrap();
            analyze(&s).unwrap().report(&s, None)
        }
    };
    for line in report.summary_lines() {
        eprintln!("{line}");
    }
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
