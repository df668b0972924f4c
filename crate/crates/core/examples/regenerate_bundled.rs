//! Rewrites the reconstructed spectra under `data/`.
//!
//! cargo run -p cryocool-core --example regenerate_bundled

use std::path::Path;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for (name, text) in cryocool::spectra::reconstruct::render_all()? {
        let path = dir.join(name);
        std::fs::write(&path, text)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
