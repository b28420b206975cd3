//! JSON document format for cochains.
//!
//! ```json
//! { "degree": 1, "n": 1, "components": [ [[re, im], ...], [[re, im], ...] ] }
//! ```
//!
//! Each component array is row-major with `s` varying fastest: site `(k, s)`
//! sits at offset `(k + n)(2n + 1) + (s + n)`. Numbers are written in
//! shortest round-trip form, so save followed by load is bit-exact.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cochain::{Cochain, CochainError, Degree, Result, Window};
use crate::C64;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CochainDocument {
    degree: i64,
    n: usize,
    components: Vec<Vec<[f64; 2]>>,
}

pub fn save_cochain<W: Write>(form: &Cochain, mut writer: W) -> Result<()> {
    let doc = CochainDocument {
        degree: form.degree().as_int(),
        n: form.window().half_width(),
        components: form
            .components()
            .iter()
            .map(|values| values.iter().map(|z| [z.re, z.im]).collect())
            .collect(),
    };
    serde_json::to_writer(&mut writer, &doc)?;
    writer.write_all(b"\n")?;
    writer.flush()?;
    Ok(())
}

pub fn load_cochain<R: Read>(reader: R) -> Result<Cochain> {
    let doc: CochainDocument = serde_json::from_reader(reader)?;
    let degree = Degree::from_int(doc.degree)?;
    if doc.n > 1 << 16 {
        return Err(CochainError::Malformed(format!("window half-width {} is out of range", doc.n)));
    }
    let components = doc
        .components
        .into_iter()
        .map(|values| values.into_iter().map(|[re, im]| C64::new(re, im)).collect())
        .collect();
    Cochain::from_components(degree, Window::new(doc.n), components)
}

pub fn save_cochain_to_path(form: &Cochain, path: impl AsRef<Path>) -> Result<()> {
    save_cochain(form, BufWriter::new(File::create(path)?))
}

pub fn load_cochain_from_path(path: impl AsRef<Path>) -> Result<Cochain> {
    load_cochain(BufReader::new(File::open(path)?))
}
