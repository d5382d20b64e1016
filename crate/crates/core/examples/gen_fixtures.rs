//! Regenerates the fixture corpus under `fixtures/` at the workspace root:
//!
//! ```text
//! cargo run -p globengine-core --example gen_fixtures
//! ```

use std::path::PathBuf;

use globengine_core::io::fixture_documents;
use globengine_core::Rational;

fn main() {
    let out_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    std::fs::create_dir_all(&out_dir).expect("create fixtures directory");
    for (name, document) in fixture_documents::<Rational>() {
        let path = out_dir.join(name);
        let mut text = document.to_pretty_json();
        text.push('\n');
        std::fs::write(&path, text).expect("write fixture file");
        println!("wrote {}", path.display());
    }
}
