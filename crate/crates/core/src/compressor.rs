//! Nibble-key compression and the complexity estimates built on it.
//!
//! The scheme reads a bit string four bits at a time and replaces every
//! nibble with a key symbol. The compressed form is the symbol stream plus
//! the dictionary entries that have to be transmitted with it. Each symbol
//! costs [`SYMBOL_COST_BITS`] and each transmitted entry costs
//! [`ENTRY_COST_BITS`].
//!
//! ```
//! use kcsim::compressor::{compress, BitString};
//!
//! let s2: BitString = "0100 0100 0100 0100 0100 1001 0100 1110".parse().unwrap();
//! let form = compress(&s2, None).unwrap();
//! assert_eq!(form.compressed_length_bits(), 20);
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::scalar::Scalar;

pub const SYMBOL_COST_BITS: u64 = 1;
pub const ENTRY_COST_BITS: u64 = 4;
pub const AUTO_KEY_PREFIX: &str = "k";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompressError {
    #[error("empty bitstring")]
    EmptyBitString,
    #[error("bitstring length {0} is not a multiple of 4")]
    NotNibbleAligned(usize),
    #[error("invalid character {ch:?} at position {position} in bitstring")]
    InvalidBit { ch: char, position: usize },
    #[error("invalid key dictionary entry {0:?}: expected <symbol>=<4 binary digits>")]
    InvalidEntry(String),
    #[error("duplicate key symbol {0:?}")]
    DuplicateSymbol(String),
    #[error("symbol {0:?} does not resolve in the dictionary")]
    UnknownSymbol(String),
}

/// An ordered sequence of bits.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    /// Bits of `bytes`, most significant bit first.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        let bits = bytes
            .iter()
            .flat_map(|&b| (0..8).rev().map(move |i| (b >> i) & 1 == 1))
            .collect();
        Self { bits }
    }

    pub fn from_nibbles(nibbles: &[Nibble]) -> Self {
        let bits = nibbles
            .iter()
            .flat_map(|n| (0..4).rev().map(move |i| (n.0 >> i) & 1 == 1))
            .collect();
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut bits = Vec::with_capacity(self.len() + other.len());
        bits.extend_from_slice(&self.bits);
        bits.extend_from_slice(&other.bits);
        BitString { bits }
    }

    pub fn nibbles(&self) -> Result<Vec<Nibble>, CompressError> {
        if !self.bits.len().is_multiple_of(4) {
            return Err(CompressError::NotNibbleAligned(self.bits.len()));
        }
        Ok(self
            .bits
            .chunks_exact(4)
            .map(|c| Nibble(c.iter().fold(0u8, |acc, &b| (acc << 1) | u8::from(b))))
            .collect())
    }
}

impl FromStr for BitString {
    type Err = CompressError;

    /// Parses `0`/`1` characters; whitespace is ignored.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut bits = Vec::with_capacity(text.len());
        for (position, ch) in text.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                ch => return Err(CompressError::InvalidBit { ch, position }),
            }
        }
        Ok(Self { bits })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, chunk) in self.bits.chunks(4).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            for &b in chunk {
                f.write_str(if b { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

/// A 4-bit value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Nibble(u8);

impl Nibble {
    pub fn new(value: u8) -> Option<Self> {
        (value < 16).then_some(Self(value))
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl FromStr for Nibble {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        if s.len() != 4 || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(());
        }
        u8::from_str_radix(s, 2).map(Nibble).map_err(|_| ())
    }
}

impl fmt::Display for Nibble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04b}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KeyEntry {
    pub symbol: String,
    pub nibble: Nibble,
}

impl fmt::Display for KeyEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.symbol, self.nibble)
    }
}

/// Ordered map from key symbol to nibble.
///
/// Symbols are unique. Nibble values may repeat in hand-written dictionaries;
/// lookups by value return the first entry.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct KeyDictionary {
    entries: Vec<KeyEntry>,
}

impl KeyDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, symbol: impl Into<String>, nibble: Nibble) -> Result<(), CompressError> {
        let symbol = symbol.into();
        if self.contains_symbol(&symbol) {
            return Err(CompressError::DuplicateSymbol(symbol));
        }
        self.entries.push(KeyEntry { symbol, nibble });
        Ok(())
    }

    /// Parses `<symbol>=<4 binary digits>` entries separated by whitespace or
    /// newlines. Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self, CompressError> {
        let mut dict = Self::new();
        for line in text.lines() {
            let line = line.trim();
            if line.starts_with('#') {
                continue;
            }
            for item in line.split_whitespace() {
                let (symbol, bits) = item
                    .split_once('=')
                    .ok_or_else(|| CompressError::InvalidEntry(item.to_string()))?;
                let nibble: Nibble = bits
                    .parse()
                    .map_err(|_| CompressError::InvalidEntry(item.to_string()))?;
                if symbol.is_empty() {
                    return Err(CompressError::InvalidEntry(item.to_string()));
                }
                dict.insert(symbol, nibble)?;
            }
        }
        Ok(dict)
    }

    /// One `<symbol>=<nibble>` entry per line.
    pub fn to_text(&self) -> String {
        self.entries.iter().map(|e| format!("{e}\n")).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &KeyEntry> {
        self.entries.iter()
    }

    pub fn contains_symbol(&self, symbol: &str) -> bool {
        self.entries.iter().any(|e| e.symbol == symbol)
    }

    pub fn contains_nibble(&self, nibble: Nibble) -> bool {
        self.entries.iter().any(|e| e.nibble == nibble)
    }

    pub fn symbol_for(&self, nibble: Nibble) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| e.nibble == nibble)
            .map(|e| e.symbol.as_str())
    }

    pub fn nibble_of(&self, symbol: &str) -> Option<Nibble> {
        self.entries.iter().find(|e| e.symbol == symbol).map(|e| e.nibble)
    }

    pub fn has_unique_nibbles(&self) -> bool {
        let mut seen = [false; 16];
        self.entries
            .iter()
            .all(|e| !std::mem::replace(&mut seen[e.nibble.0 as usize], true))
    }
}

impl fmt::Display for KeyDictionary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// How a conditioning dictionary decides that one of x's keys is already known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KeySharing {
    /// A nibble is shared when the conditioning dictionary holds the same value.
    #[default]
    ByValue,
    /// A key is shared when the conditioning dictionary holds the same symbol
    /// name, whatever its value. Needed to replay printed key tables whose
    /// symbols were assigned globally across strings.
    BySymbol,
}

/// Which dictionary the compressor works from.
#[derive(Debug, Clone, Copy, Default)]
pub enum Model<'a> {
    /// Build keys from scratch; every key is transmitted.
    #[default]
    Auto,
    /// Use this dictionary as the model and transmit all of it, plus auto
    /// keys for nibbles it does not cover.
    Preset(&'a KeyDictionary),
    /// Keys already known from another string: shared keys are used in the
    /// stream but not transmitted.
    Given(&'a KeyDictionary, KeySharing),
}

/// Result of compressing one bit string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompressedForm {
    symbol_stream: Vec<String>,
    emitted: KeyDictionary,
    shared: KeyDictionary,
    source_len_bits: usize,
    compressed_length_bits: u64,
}

impl CompressedForm {
    fn new(symbol_stream: Vec<String>, emitted: KeyDictionary, shared: KeyDictionary, source_len_bits: usize) -> Self {
        let compressed_length_bits =
            symbol_stream.len() as u64 * SYMBOL_COST_BITS + emitted.len() as u64 * ENTRY_COST_BITS;
        Self {
            symbol_stream,
            emitted,
            shared,
            source_len_bits,
            compressed_length_bits,
        }
    }

    pub fn symbol_stream(&self) -> &[String] {
        &self.symbol_stream
    }

    /// Entries that are transmitted with the stream.
    pub fn emitted_dictionary(&self) -> &KeyDictionary {
        &self.emitted
    }

    /// Keys used in the stream but presumed known to the receiver.
    pub fn shared_dictionary(&self) -> &KeyDictionary {
        &self.shared
    }

    pub fn compressed_length_bits(&self) -> u64 {
        self.compressed_length_bits
    }

    pub fn source_len_bits(&self) -> usize {
        self.source_len_bits
    }
}

impl fmt::Display for CompressedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbol_stream {
            f.write_str(s)?;
        }
        write!(f, "+\"{}\"", self.emitted)
    }
}

/// Hands out `k1`, `k2`, … skipping names that are already taken.
struct KeyNamer<'a> {
    next: usize,
    reserved: Option<&'a KeyDictionary>,
}

impl<'a> KeyNamer<'a> {
    fn new(reserved: Option<&'a KeyDictionary>) -> Self {
        Self { next: 1, reserved }
    }

    fn next_name(&mut self, taken: &KeyDictionary) -> String {
        loop {
            let name = format!("{AUTO_KEY_PREFIX}{}", self.next);
            self.next += 1;
            let reserved = self.reserved.is_some_and(|r| r.contains_symbol(&name));
            if !reserved && !taken.contains_symbol(&name) {
                return name;
            }
        }
    }
}

/// Auto-built dictionary of `w`: one key per distinct nibble, in order of
/// first appearance.
pub fn build_keys(w: &BitString) -> Result<KeyDictionary, CompressError> {
    compress(w, None).map(|form| form.emitted)
}

/// Compresses `w`, either from scratch or with `preset` as the full model.
///
/// With a preset every preset entry is transmitted, used or not; nibbles the
/// preset does not cover get fresh auto keys.
pub fn compress(w: &BitString, preset: Option<&KeyDictionary>) -> Result<CompressedForm, CompressError> {
    match preset {
        None => compress_with(w, Model::Auto),
        Some(dict) => compress_with(w, Model::Preset(dict)),
    }
}

/// Compresses `x` given the keys of another string. Shared keys are used in
/// the stream and left out of the transmitted dictionary.
pub fn compress_conditional(
    x: &BitString,
    y_keys: &KeyDictionary,
    sharing: KeySharing,
) -> Result<CompressedForm, CompressError> {
    compress_with(x, Model::Given(y_keys, sharing))
}

pub fn compress_with(w: &BitString, model: Model<'_>) -> Result<CompressedForm, CompressError> {
    let nibbles = w.nibbles()?;
    let mut stream = Vec::with_capacity(nibbles.len());
    let mut emitted = KeyDictionary::new();
    let mut shared = KeyDictionary::new();

    match model {
        Model::Auto => {
            let mut namer = KeyNamer::new(None);
            for n in nibbles {
                let symbol = match emitted.symbol_for(n) {
                    Some(s) => s.to_string(),
                    None => {
                        let name = namer.next_name(&emitted);
                        emitted.insert(name.clone(), n)?;
                        name
                    }
                };
                stream.push(symbol);
            }
        }
        Model::Preset(dict) => {
            emitted = dict.clone();
            let mut namer = KeyNamer::new(Some(dict));
            for n in nibbles {
                let symbol = match emitted.symbol_for(n) {
                    Some(s) => s.to_string(),
                    None => {
                        let name = namer.next_name(&emitted);
                        emitted.insert(name.clone(), n)?;
                        name
                    }
                };
                stream.push(symbol);
            }
        }
        Model::Given(dict, KeySharing::ByValue) => {
            let mut namer = KeyNamer::new(Some(dict));
            for n in nibbles {
                let symbol = if let Some(s) = dict.symbol_for(n) {
                    if !shared.contains_symbol(s) {
                        shared.insert(s, n)?;
                    }
                    s.to_string()
                } else if let Some(s) = emitted.symbol_for(n) {
                    s.to_string()
                } else {
                    let name = namer.next_name(&emitted);
                    emitted.insert(name.clone(), n)?;
                    name
                };
                stream.push(symbol);
            }
        }
        Model::Given(dict, KeySharing::BySymbol) => {
            let own = compress_with(w, Model::Auto)?;
            for entry in own.emitted.iter() {
                if dict.contains_symbol(&entry.symbol) {
                    shared.insert(entry.symbol.clone(), entry.nibble)?;
                } else {
                    emitted.insert(entry.symbol.clone(), entry.nibble)?;
                }
            }
            stream = own.symbol_stream;
        }
    }

    Ok(CompressedForm::new(stream, emitted, shared, w.len()))
}

/// Rebuilds the source string from a compressed form.
///
/// Symbols resolve against the emitted dictionary first, then the shared one
/// recorded in the form. Forms built from a preset with repeated nibble
/// values are not guaranteed to round-trip.
pub fn decompress(form: &CompressedForm) -> Result<BitString, CompressError> {
    let nibbles = form
        .symbol_stream
        .iter()
        .map(|s| {
            form.emitted
                .nibble_of(s)
                .or_else(|| form.shared.nibble_of(s))
                .ok_or_else(|| CompressError::UnknownSymbol(s.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BitString::from_nibbles(&nibbles))
}

/// Contract for anything that can report compressed lengths in bits.
pub trait Compressor {
    fn compressed_bits(&self, w: &BitString) -> Result<u64, CompressError>;

    /// Length of `x` compressed with knowledge of `y`. The default is the
    /// concatenation estimate `C(yx) - C(y)`, floored at zero.
    fn conditional_bits(&self, x: &BitString, y: &BitString) -> Result<u64, CompressError> {
        let joint = self.compressed_bits(&y.concat(x))?;
        let alone = self.compressed_bits(y)?;
        Ok(joint.saturating_sub(alone))
    }
}

/// The nibble-key scheme as a [`Compressor`]. Conditional lengths reuse the
/// auto-built keys of `y` under the configured sharing rule.
#[derive(Debug, Clone, Copy, Default)]
pub struct NibbleCompressor {
    pub sharing: KeySharing,
}

impl Compressor for NibbleCompressor {
    fn compressed_bits(&self, w: &BitString) -> Result<u64, CompressError> {
        compress(w, None).map(|f| f.compressed_length_bits())
    }

    fn conditional_bits(&self, x: &BitString, y: &BitString) -> Result<u64, CompressError> {
        let keys = build_keys(y)?;
        compress_conditional(x, &keys, self.sharing).map(|f| f.compressed_length_bits())
    }
}

/// Approximate complexity: compressed length over source length, plus the
/// program-length term `q_overhead`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexityScore<T> {
    pub value: T,
    pub q_overhead: T,
}

impl<T: Scalar> ComplexityScore<T> {
    pub fn from_form(form: &CompressedForm, q_overhead: T) -> Result<Self, CompressError> {
        if form.source_len_bits == 0 {
            return Err(CompressError::EmptyBitString);
        }
        let ratio = T::from_ratio(form.compressed_length_bits as i64, form.source_len_bits as i64);
        Ok(Self {
            value: ratio + q_overhead,
            q_overhead,
        })
    }
}

impl<T: Scalar> fmt::Display for ComplexityScore<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}", self.value.to_f64())
    }
}

/// Approximate complexity of `w` under `model`, with `q = 0`.
pub fn approx_complexity<T: Scalar>(w: &BitString, model: Model<'_>) -> Result<ComplexityScore<T>, CompressError> {
    approx_complexity_with_q(w, model, T::zero())
}

pub fn approx_complexity_with_q<T: Scalar>(
    w: &BitString,
    model: Model<'_>,
    q_overhead: T,
) -> Result<ComplexityScore<T>, CompressError> {
    if w.is_empty() {
        return Err(CompressError::EmptyBitString);
    }
    let form = compress_with(w, model)?;
    ComplexityScore::from_form(&form, q_overhead)
}

/// What the target is conditioned on when measuring shared information.
#[derive(Debug, Clone, Copy)]
pub enum Conditioning<'a> {
    /// Use the auto-built keys of this string, shared by value.
    String(&'a BitString),
    /// Use a supplied key dictionary.
    Keys(&'a KeyDictionary, KeySharing),
}

/// Information the other string carries about `target`:
/// `K(target) - K(target | keys(other))`.
pub fn shared_information<T: Scalar>(target: &BitString, other: Conditioning<'_>) -> Result<T, CompressError> {
    let alone = approx_complexity::<T>(target, Model::Auto)?;
    let given = match other {
        Conditioning::String(y) => {
            let keys = build_keys(y)?;
            approx_complexity::<T>(target, Model::Given(&keys, KeySharing::ByValue))?
        }
        Conditioning::Keys(keys, sharing) => approx_complexity::<T>(target, Model::Given(keys, sharing))?,
    };
    Ok(alone.value - given.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    const S1: &str = "0100 1101 0100 0001 0100 1000 0101 1010 0101 0101";
    const S2: &str = "0100 0100 0100 0100 0100 1001 0100 1110";
    const S3: &str = "1001 1010 1001 1001 0100 0100 0100 1001";

    fn bits(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn dict(s: &str) -> KeyDictionary {
        KeyDictionary::parse(s).unwrap()
    }

    #[test]
    fn s1_auto() {
        let form = compress(&bits(S1), None).unwrap();
        assert_eq!(form.compressed_length_bits(), 34);
        assert_eq!(form.emitted_dictionary().len(), 6);
        assert_eq!(
            form.to_string(),
            "k1k2k1k3k1k4k5k6k5k5+\"k1=0100 k2=1101 k3=0001 k4=1000 k5=0101 k6=1010\""
        );
    }

    #[test]
    fn s2_auto() {
        let form = compress(&bits(S2), None).unwrap();
        assert_eq!(form.compressed_length_bits(), 20);
        assert_eq!(form.emitted_dictionary().len(), 3);
    }

    #[test]
    fn repeated_zero_nibble() {
        let w = BitString::new(vec![false; 64]);
        assert_eq!(compress(&w, None).unwrap().compressed_length_bits(), 16 + 4);
    }

    #[test]
    fn unaligned_rejected() {
        let err = compress(&bits("010"), None).unwrap_err();
        assert_eq!(err, CompressError::NotNibbleAligned(3));
    }

    #[test]
    fn bad_character_rejected() {
        assert!(matches!(
            "01x0".parse::<BitString>(),
            Err(CompressError::InvalidBit { ch: 'x', position: 2 })
        ));
    }

    #[test]
    fn conditional_on_paper_s2_keys() {
        let form = compress_conditional(&bits(S1), &dict("k1=0100 k7=1001 k8=1110"), KeySharing::ByValue).unwrap();
        assert_eq!(form.compressed_length_bits(), 30);
        // new keys skip the names the other string already uses
        assert_eq!(
            form.to_string(),
            "k1k2k1k3k1k4k5k6k5k5+\"k2=1101 k3=0001 k4=1000 k5=0101 k6=1010\""
        );
    }

    #[test]
    fn conditional_on_paper_s3_keys_by_symbol() {
        let keys = dict("k5=1001 k6=1010 k1=0100 k7=1001");
        let form = compress_conditional(&bits(S1), &keys, KeySharing::BySymbol).unwrap();
        assert_eq!(form.emitted_dictionary().to_string(), "k2=1101 k3=0001 k4=1000");
        assert_eq!(form.compressed_length_bits(), 22);
        // by value only k1 (0100) and k6 (1010) are shared
        let by_value = compress_conditional(&bits(S1), &keys, KeySharing::ByValue).unwrap();
        assert_eq!(by_value.compressed_length_bits(), 26);
    }

    #[test]
    fn conditional_on_itself_emits_nothing() {
        let s2 = bits(S2);
        let keys = build_keys(&s2).unwrap();
        let form = compress_conditional(&s2, &keys, KeySharing::ByValue).unwrap();
        assert!(form.emitted_dictionary().is_empty());
        assert_eq!(form.compressed_length_bits(), 8);
    }

    #[test]
    fn s3_auto_vs_printed_preset() {
        let s3 = bits(S3);
        assert_eq!(compress(&s3, None).unwrap().compressed_length_bits(), 20);
        let printed = dict("k5=1001 k6=1010 k1=0100 k7=1001");
        assert!(!printed.has_unique_nibbles());
        assert_eq!(compress(&s3, Some(&printed)).unwrap().compressed_length_bits(), 24);
    }

    #[test]
    fn preset_adds_missing_keys() {
        let preset = dict("k1=0100");
        let form = compress(&bits(S2), Some(&preset)).unwrap();
        assert_eq!(form.emitted_dictionary().to_string(), "k1=0100 k2=1001 k3=1110");
        assert_eq!(decompress(&form).unwrap(), bits(S2));
    }

    #[test]
    fn complexity_values() {
        let k1 = approx_complexity::<Rational>(&bits(S1), Model::Auto).unwrap();
        assert_eq!(k1.value, Rational::new(85, 100));
        let s2_keys = dict("k1=0100 k7=1001 k8=1110");
        let k12 = approx_complexity::<Rational>(&bits(S1), Model::Given(&s2_keys, KeySharing::ByValue)).unwrap();
        assert_eq!(k12.value, Rational::new(3, 4));
        let s2 = bits(S2);
        let own = build_keys(&s2).unwrap();
        let k22 = approx_complexity::<Rational>(&s2, Model::Given(&own, KeySharing::ByValue)).unwrap();
        assert_eq!(k22.value, Rational::new(1, 4));
    }

    #[test]
    fn q_is_additive() {
        let k = approx_complexity_with_q::<f64>(&bits(S1), Model::Auto, 0.5).unwrap();
        assert!((k.value - 1.35).abs() < 1e-12);
        assert_eq!(k.q_overhead, 0.5);
    }

    #[test]
    fn empty_input_has_no_complexity() {
        let err = approx_complexity::<f64>(&BitString::default(), Model::Auto).unwrap_err();
        assert_eq!(err.to_string(), "empty bitstring");
    }

    #[test]
    fn shared_information_values() {
        let s1 = bits(S1);
        let s2_keys = dict("k1=0100 k7=1001 k8=1110");
        let s3_keys = dict("k5=1001 k6=1010 k1=0100 k7=1001");
        let i21: Rational = shared_information(&s1, Conditioning::Keys(&s2_keys, KeySharing::ByValue)).unwrap();
        let i31: Rational = shared_information(&s1, Conditioning::Keys(&s3_keys, KeySharing::BySymbol)).unwrap();
        assert_eq!(i21, Rational::new(1, 10));
        assert_eq!(i31, Rational::new(3, 10));
        let s2 = bits(S2);
        let i22: Rational = shared_information(&s2, Conditioning::String(&s2)).unwrap();
        assert_eq!(i22, Rational::new(375, 1000));
    }

    #[test]
    fn dictionary_parse_errors() {
        assert!(matches!(
            KeyDictionary::parse("k1=01"),
            Err(CompressError::InvalidEntry(_))
        ));
        assert!(matches!(
            KeyDictionary::parse("k1"),
            Err(CompressError::InvalidEntry(_))
        ));
        assert!(matches!(
            KeyDictionary::parse("k1=0100\nk1=0001"),
            Err(CompressError::DuplicateSymbol(_))
        ));
    }

    #[test]
    fn dictionary_text_roundtrip() {
        let d = dict("# s3 keys\nk5=1001\nk6=1010\nk1=0100\nk7=1001\n");
        assert_eq!(KeyDictionary::parse(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn bytes_are_msb_first() {
        let w = BitString::from_bytes(&[0b0100_1101]);
        assert_eq!(w.to_string(), "0100 1101");
    }

    #[test]
    fn nibble_compressor_contract() {
        let c = NibbleCompressor::default();
        assert_eq!(c.compressed_bits(&bits(S1)).unwrap(), 34);
        assert_eq!(c.conditional_bits(&bits(S1), &bits(S2)).unwrap(), 30);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn bitstring() -> impl Strategy<Value = BitString> {
            prop::collection::vec(0u8..16, 0..40).prop_map(|ns| {
                BitString::from_nibbles(&ns.into_iter().map(|n| Nibble::new(n).unwrap()).collect::<Vec<_>>())
            })
        }

        fn dictionary() -> impl Strategy<Value = KeyDictionary> {
            prop::collection::vec((1usize..12, 0u8..16), 0..8).prop_map(|entries| {
                let mut d = KeyDictionary::new();
                for (i, n) in entries {
                    let _ = d.insert(format!("k{i}"), Nibble::new(n).unwrap());
                }
                d
            })
        }

        proptest! {
            #[test]
            fn auto_roundtrip(w in bitstring()) {
                let form = compress(&w, None).unwrap();
                prop_assert_eq!(decompress(&form).unwrap(), w);
            }

            #[test]
            fn deterministic(w in bitstring()) {
                prop_assert_eq!(compress(&w, None).unwrap(), compress(&w, None).unwrap());
            }

            #[test]
            fn conditional_never_longer(w in bitstring(), keys in dictionary()) {
                let alone = compress(&w, None).unwrap().compressed_length_bits();
                for sharing in [KeySharing::ByValue, KeySharing::BySymbol] {
                    let given = compress_conditional(&w, &keys, sharing).unwrap();
                    prop_assert!(given.compressed_length_bits() <= alone);
                    prop_assert_eq!(given.symbol_stream().len(), w.len() / 4);
                }
            }

            #[test]
            fn by_value_conditional_roundtrips(w in bitstring(), keys in dictionary()) {
                let form = compress_conditional(&w, &keys, KeySharing::ByValue).unwrap();
                prop_assert_eq!(decompress(&form).unwrap(), w);
            }

            #[test]
            fn complexity_bounded(w in bitstring()) {
                prop_assume!(!w.is_empty());
                let k = approx_complexity::<Rational>(&w, Model::Auto).unwrap().value;
                prop_assert!(k > Rational::new(0, 1));
                prop_assert!(k <= Rational::new(3, 2));
            }
        }
    }
}
