use std::io::BufRead;
use std::path::Path;

use serde::Deserialize;

use super::CorpusError;

#[derive(Deserialize)]
struct JsonDocument {
    id: String,
    text: String,
}

/// Reads `(id, text)` pairs from line-delimited JSON objects. Blank lines
/// are skipped.
pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<(String, String)>, CorpusError> {
    let mut docs = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let doc: JsonDocument =
            serde_json::from_str(&line).map_err(|e| CorpusError::BadCorpus(format!("line {}: {e}", n + 1)))?;
        docs.push((doc.id, doc.text));
    }
    Ok(docs)
}

/// Loads a corpus from a directory of plain-text files (one document per
/// file, id = file name, sorted by name) or from a JSONL file.
pub fn load_corpus(path: &Path) -> Result<Vec<(String, String)>, CorpusError> {
    let docs = if path.is_dir() {
        let mut entries = Vec::new();
        for entry in std::fs::read_dir(path)? {
            let entry = entry?;
            if entry.file_type()?.is_file() {
                entries.push(entry.path());
            }
        }
        entries.sort();
        entries
            .into_iter()
            .map(|p| {
                let id = p
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default();
                std::fs::read_to_string(&p).map(|text| (id, text))
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        let file = std::fs::File::open(path)?;
        read_jsonl(std::io::BufReader::new(file))?
    };
    if docs.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    Ok(docs)
}
