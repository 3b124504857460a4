//! Writes the corpus input files and their expected reports into `corpus/`.
//!
//! cargo run -p ringext --example export_corpus

use std::path::Path;

use ringext::{corpus, io, report};

fn main() -> ringext::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    std::fs::create_dir_all(&dir).expect("corpus directory");
    for name in corpus::NAMES {
        let doc = corpus::document(name, 0)?.expect("known name");
        let text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        std::fs::write(dir.join(format!("{name}.json")), &text).expect("write input");
        let input = io::parse_input(&text)?;
        let rep = report::analyze(&input, 0)?;
        let out = serde_json::to_string_pretty(&rep).expect("serializable") + "\n";
        std::fs::write(dir.join(format!("{name}.expected.json")), out).expect("write report");
        println!("{name}");
    }
    Ok(())
}
