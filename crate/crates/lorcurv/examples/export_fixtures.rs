//! Write the first regular sample of every bracket-bearing family as an input
//! document under `fixtures/`.
//!
//! `cargo run --example export_fixtures`

use lorcurv::catalog::{catalog, fixture_file_name, Role};
use lorcurv::io::Document;

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).expect("fixtures directory");
    let mut n = 0;
    for fam in catalog().iter().filter(|f| !f.is_metadata()) {
        let Some(sample) = fam.samples.iter().find(|s| s.role == Role::Sample) else { continue };
        let subject = fam.instantiate(&sample.params).expect("catalog sample instantiates exactly");
        let doc = Document::from_subject(&subject);
        std::fs::write(dir.join(fixture_file_name(&fam.id)), doc.to_json_pretty() + "\n").expect("write fixture");
        n += 1;
    }
    println!("wrote {n} fixtures to {}", dir.display());
}
