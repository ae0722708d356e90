//! Run manifests: the settings and input digests behind an output file.
//!
//! A manifest is a sorted list of `key=value` pairs. Output files carry it
//! as a block of `# key=value` comment lines, closed by a `manifest_digest`
//! line hashing the block, so every output names the run that produced it.
//! Nothing time- or host-dependent is recorded; repeated runs are identical.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::format::fmt_f64;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunManifest {
    entries: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        let mut manifest = RunManifest::default();
        manifest.set("command", command);
        manifest.set("tropix_version", env!("CARGO_PKG_VERSION"));
        manifest
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        let value = value.into().replace(['\n', '\r'], " ");
        self.entries.insert(key.to_owned(), value);
    }

    pub fn set_f64(&mut self, key: &str, value: f64) {
        self.set(key, fmt_f64(value));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Records an input file by its SHA-256 digest.
    pub fn add_input(&mut self, path: &str, bytes: &[u8]) {
        let index = self.entries.keys().filter(|k| k.starts_with("input.")).count();
        self.set(&format!("input.{index:03}"), format!("{path} sha256={}", sha256_hex(bytes)));
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Plain `key=value` lines.
    pub fn to_text(&self) -> String {
        self.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
    }

    pub fn digest(&self) -> String {
        sha256_hex(self.to_text().as_bytes())
    }

    /// The comment block placed at the top of output files.
    pub fn header(&self) -> String {
        let mut out: String = self.iter().map(|(k, v)| format!("# {k}={v}\n")).collect();
        out.push_str(&format!("# manifest_digest={}\n", self.digest()));
        out
    }

    /// Reads `# key=value` comment lines back, ignoring the digest line.
    pub fn from_comments(text: &str) -> Self {
        let mut manifest = RunManifest::default();
        for line in text.lines() {
            let Some(rest) = line.trim_start().strip_prefix('#') else { continue };
            if let Some((k, v)) = rest.trim().split_once('=') {
                if k != "manifest_digest" && !k.is_empty() && !k.contains(char::is_whitespace) {
                    manifest.set(k, v);
                }
            }
        }
        manifest
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_round_trip() {
        let mut m = RunManifest::new("vectorize");
        m.set_f64("m", 3.0);
        m.set("n", "2");
        m.add_input("a.txt", b"1 3\n");
        let header = m.header();
        assert!(header.lines().all(|l| l.starts_with("# ")));
        assert_eq!(RunManifest::from_comments(&header), m);
        assert!(header.contains("# m=3\n"));
    }

    #[test]
    fn keys_are_sorted() {
        let mut m = RunManifest::new("ph");
        m.set("zeta", "1");
        m.set("alpha", "2");
        let keys: Vec<_> = m.iter().map(|(k, _)| k).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn digest_is_known_sha256() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
