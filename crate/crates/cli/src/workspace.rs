//! Input resolution: explicit `--input` files, the `GLOBENGINE_FIXTURES`
//! directory override, or the fixture corpus compiled into the binary.

use std::path::PathBuf;

use globengine_core::io::{Document, Workspace};
use globengine_core::Rational;

const DEFAULT_CORE: &str = include_str!("../../../fixtures/core.json");
const DEFAULT_SETS: &str = include_str!("../../../fixtures/sets.json");

pub type Ws = Workspace<Rational>;

/// Runs every declared object's law check once at load time; the
/// returned lines go into the report so a workspace with violating
/// objects is never silently accepted.
pub fn load_warnings(ws: &Ws) -> Vec<String> {
    let mut warnings = Vec::new();
    for (name, coalgebra) in &ws.coalgebras {
        if let Err(v) = coalgebra.check() {
            warnings.push(format!("coalgebra:{name} fails law `{}`", v.law));
        }
    }
    for (name, comodule) in &ws.comodules {
        if let Err(v) = comodule.check() {
            warnings.push(format!("comodule:{name} fails law `{}`", v.law));
        }
    }
    for (name, entry) in &ws.gpcs {
        match entry.to_datum() {
            Err(e) => warnings.push(format!("gpc:{name}: {e}")),
            Ok(datum) => {
                if let Err(f) = globengine_core::gpc::check_gpc(datum) {
                    warnings.push(format!(
                        "gpc:{name} fails {} ({})",
                        f.axiom(),
                        f.category()
                    ));
                }
            }
        }
    }
    for (name, entry) in &ws.covers {
        if let Err(e) = entry.to_cover() {
            warnings.push(format!("cover:{name}: {e}"));
        }
    }
    for (name, action) in &ws.actions {
        if let Err(e) = action.check() {
            warnings.push(format!("action:{name}: {e}"));
        }
    }
    for (name, partial) in &ws.partial_actions {
        if let Err(e) = partial.check() {
            warnings.push(format!("partial:{name}: {e}"));
        }
    }
    warnings
}

pub fn load(inputs: &[PathBuf]) -> Result<Ws, String> {
    let mut documents = Vec::new();
    if !inputs.is_empty() {
        for path in inputs {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            documents
                .push(Document::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?);
        }
    } else if let Ok(dir) = std::env::var("GLOBENGINE_FIXTURES") {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
            .map_err(|e| format!("cannot read fixture directory {dir}: {e}"))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
            .collect();
        paths.sort();
        if paths.is_empty() {
            return Err(format!("fixture directory {dir} contains no .json files"));
        }
        for path in paths {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            documents
                .push(Document::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?);
        }
    } else {
        documents.push(Document::parse(DEFAULT_CORE).expect("embedded corpus parses"));
        documents.push(Document::parse(DEFAULT_SETS).expect("embedded corpus parses"));
    }
    Workspace::from_documents(&documents).map_err(|e| e.to_string())
}
