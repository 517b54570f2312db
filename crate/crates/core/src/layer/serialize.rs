use std::io::Write;
use std::path::Path;

use flate2::write::GzEncoder;
use flate2::Compression;
use serde::{Deserialize, Serialize};

use crate::rdf::{Triple, UnserializableTerm};
use crate::vocab::PrefixMap;

/// Sorted `@prefix` header, then one triple per line sorted by the rendered
/// (subject, predicate, object). Repeated triples are written once.
pub fn serialize_layer<'a, I>(
    triples: I,
    prefixes: &PrefixMap,
) -> Result<String, UnserializableTerm>
where
    I: IntoIterator<Item = &'a Triple>,
{
    let mut rows: Vec<[String; 3]> = Vec::new();
    for triple in triples {
        let mut row: [String; 3] = Default::default();
        triple.subject.write_to(&mut row[0], Some(prefixes))?;
        triple.predicate.write_to(&mut row[1], Some(prefixes))?;
        triple.object.write_to(&mut row[2], Some(prefixes))?;
        rows.push(row);
    }
    rows.sort_unstable();
    rows.dedup();

    let mut out = String::new();
    for (prefix, ns) in prefixes {
        out.push_str(&format!("@prefix {prefix}: <{ns}> .\n"));
    }
    for [s, p, o] in rows {
        out.push_str(&s);
        out.push(' ');
        out.push_str(&p);
        out.push(' ');
        out.push_str(&o);
        out.push_str(" .\n");
    }
    Ok(out)
}

/// Writes `text`, gzip-compressed when `path` ends in `.gz`.
pub fn write_layer_file(path: &Path, text: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let file = std::io::BufWriter::new(std::fs::File::create(path)?);
    if path.extension().is_some_and(|e| e == "gz") {
        let mut gz = GzEncoder::new(file, Compression::default());
        gz.write_all(text.as_bytes())?;
        gz.finish()?.flush()
    } else {
        let mut file = file;
        file.write_all(text.as_bytes())?;
        file.flush()
    }
}

/// Counts reported after a build.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub corpus: String,
    pub documents: usize,
    pub versions: usize,
    pub same_as: usize,
    pub mentions: usize,
    pub triples: usize,
    pub enrichment_triples: usize,
    pub input_records: usize,
    pub skipped_records: usize,
    pub truncated_documents: usize,
    pub payload_reads: usize,
}

impl Manifest {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest fields are plain scalars")
    }
}
