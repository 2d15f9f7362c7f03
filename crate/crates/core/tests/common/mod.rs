#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use kcsim::compressor::{BitString, KeyDictionary};
use kcsim::corpus::{build_index, load_corpus, CorpusIndex, TokenizerConfig};
use kcsim::Rational;

pub fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

pub fn read(rel: &str) -> String {
    fs::read_to_string(data(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn bits(rel: &str) -> BitString {
    read(rel).parse().expect("fixture bit string")
}

pub fn keys(rel: &str) -> KeyDictionary {
    KeyDictionary::parse(&read(rel)).expect("fixture key list")
}

/// Parses a plain decimal such as `0.2805` exactly.
pub fn decimal(s: &str) -> Rational {
    let s = s.trim();
    let (neg, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let scale = 10i64.pow(frac.len() as u32);
    let int: i64 = if int.is_empty() {
        0
    } else {
        int.parse().expect("integer part")
    };
    let frac: i64 = if frac.is_empty() {
        0
    } else {
        frac.parse().expect("fraction part")
    };
    let r = Rational::new(int * scale + frac, scale);
    if neg {
        -r
    } else {
        r
    }
}

pub fn toy_index() -> CorpusIndex {
    let docs = load_corpus(&data("toy_corpus")).expect("toy corpus");
    build_index(docs, TokenizerConfig::default()).expect("toy index")
}

/// One printed row of the category tables.
#[derive(Debug, Clone)]
pub struct CategoryRow {
    pub table: &'static str,
    pub id: String,
    pub value: Rational,
    pub raw_value: String,
    pub printed_type: u8,
}

pub fn category_rows() -> Vec<CategoryRow> {
    let mut rows = Vec::new();
    for table in ["table3_commissie.tsv", "table4_new_writer.tsv"] {
        let text = read(table);
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().expect("header").split('\t').collect();
        let col = |name: &str| header.iter().position(|h| *h == name).expect("column");
        let (id, value, ty) = (col("id"), col("value"), col("type"));
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let f: Vec<&str> = line.split('\t').collect();
            rows.push(CategoryRow {
                table,
                id: f[id].to_string(),
                value: decimal(f[value]),
                raw_value: f[value].to_string(),
                printed_type: f[ty].trim().parse().expect("type code"),
            });
        }
    }
    rows
}

/// Rows whose printed type disagrees with the stated thresholds.
pub const KNOWN_ANOMALIES: [(&str, &str); 2] = [("x", "0.2805"), ("U", "0.3175")];

/// Independent count: 4 bits per distinct nibble plus 1 per nibble.
pub fn nibble_cost_oracle(bits: &[bool]) -> u64 {
    assert_eq!(bits.len() % 4, 0);
    let mut seen = [false; 16];
    let mut count = 0u64;
    for chunk in bits.chunks(4) {
        let v = chunk.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
        seen[v] = true;
        count += 1;
    }
    seen.iter().filter(|&&s| s).count() as u64 * 4 + count
}

pub fn u16_bits(v: u16) -> BitString {
    BitString::new((0..16).rev().map(|i| (v >> i) & 1 == 1).collect())
}
