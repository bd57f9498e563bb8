//! Binary model files.
//!
//! Layout, all integers little-endian, strings as `u32` byte length + UTF-8:
//!
//! ```text
//! magic      8 bytes  "SNACSMDL"
//! version    u32
//! kind       u8       0 = most-frequent, 1 = feature-rich
//! config     string   training configuration as TOML
//! resources  u8       bit 0 WordNet, bit 1 thesaurus
//! lexicons   string   target lexicons in their text form, empty if none
//! body       most-frequent: u32 n, n × (lemma, role, function), fallback role, fallback function
//!            feature-rich:  f64 role C, f64 function C,
//!                           u32 n, n × feature name,
//!                           role classifier, function classifier
//! classifier u32 n labels, n × label, u32 m, m × (u32 feature, u16 count, count × (u16 label, f64 weight))
//! trailer    "END\0", u64 FNV-1a hash of every preceding byte
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::{Classifier, LinearClassifier, LinearModelPair, Model, MostFrequentTable, TrainConfig, Vocabulary};
use crate::hierarchy::Construal;
use crate::lexres::ResourceFlags;
use crate::targetid::TargetLexicons;

pub const MAGIC: &[u8; 8] = b"SNACSMDL";
pub const FORMAT_VERSION: u32 = 1;
const TRAILER: &[u8; 4] = b"END\0";

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("not a model file of format version {expected} (found {found})")]
    Version { expected: u32, found: String },
    #[error("corrupt model file: {0}")]
    Corrupt(String),
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

struct Writer(Vec<u8>);

impl Writer {
    fn u8(&mut self, v: u8) {
        self.0.push(v);
    }
    fn u16(&mut self, v: u16) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn f64(&mut self, v: f64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn str(&mut self, s: &str) {
        self.u32(s.len() as u32);
        self.0.extend_from_slice(s.as_bytes());
    }
    fn classifier(&mut self, c: &LinearClassifier) {
        self.u32(c.labels.len() as u32);
        for l in &c.labels {
            self.str(l);
        }
        let nonempty: Vec<(usize, &Vec<(u16, f64)>)> =
            c.by_feature.iter().enumerate().filter(|(_, w)| !w.is_empty()).collect();
        self.u32(nonempty.len() as u32);
        for (j, ws) in nonempty {
            self.u32(j as u32);
            self.u16(ws.len() as u16);
            for &(k, v) in ws {
                self.u16(k);
                self.f64(v);
            }
        }
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], ModelFileError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| ModelFileError::Corrupt(format!("truncated at byte {}", self.pos)))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }
    fn u8(&mut self) -> Result<u8, ModelFileError> {
        Ok(self.take(1)?[0])
    }
    fn u16(&mut self) -> Result<u16, ModelFileError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().expect("2 bytes")))
    }
    fn u32(&mut self) -> Result<u32, ModelFileError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }
    fn f64(&mut self) -> Result<f64, ModelFileError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }
    fn str(&mut self) -> Result<String, ModelFileError> {
        let n = self.u32()? as usize;
        String::from_utf8(self.take(n)?.to_vec()).map_err(|_| ModelFileError::Corrupt("invalid UTF-8 string".into()))
    }
    fn classifier(&mut self, dim: usize) -> Result<LinearClassifier, ModelFileError> {
        let n = self.u32()? as usize;
        let labels = (0..n).map(|_| self.str()).collect::<Result<Vec<_>, _>>()?;
        let mut by_feature = vec![Vec::new(); dim];
        let m = self.u32()?;
        for _ in 0..m {
            let j = self.u32()? as usize;
            let cnt = self.u16()?;
            let slot = by_feature.get_mut(j).ok_or_else(|| ModelFileError::Corrupt(format!("feature {j} out of range")))?;
            for _ in 0..cnt {
                let k = self.u16()?;
                if usize::from(k) >= n {
                    return Err(ModelFileError::Corrupt(format!("label {k} out of range")));
                }
                slot.push((k, self.f64()?));
            }
        }
        Ok(LinearClassifier { labels, by_feature })
    }
}

/// Serializes `model` to bytes.
pub fn write_model(model: &Model) -> Vec<u8> {
    let mut w = Writer(Vec::new());
    w.0.extend_from_slice(MAGIC);
    w.u32(FORMAT_VERSION);
    w.u8(match model.classifier {
        Classifier::MostFrequent(_) => 0,
        Classifier::Linear(_) => 1,
    });
    w.str(&model.config.to_toml());
    w.u8(u8::from(model.resources.wordnet) | (u8::from(model.resources.roget) << 1));
    w.str(&model.lexicons.as_ref().map(TargetLexicons::to_text).unwrap_or_default());
    match &model.classifier {
        Classifier::MostFrequent(t) => {
            w.u32(t.by_lemma.len() as u32);
            for (lemma, c) in &t.by_lemma {
                w.str(lemma);
                w.str(&c.role);
                w.str(&c.function);
            }
            w.str(&t.fallback.role);
            w.str(&t.fallback.function);
        }
        Classifier::Linear(m) => {
            w.f64(m.role_c);
            w.f64(m.function_c);
            w.u32(m.vocab.len() as u32);
            for n in m.vocab.names() {
                w.str(n);
            }
            w.classifier(&m.role);
            w.classifier(&m.function);
        }
    }
    w.0.extend_from_slice(TRAILER);
    let h = fnv1a(&w.0);
    w.0.extend_from_slice(&h.to_le_bytes());
    w.0
}

/// Parses bytes produced by [`write_model`].
pub fn read_model(bytes: &[u8]) -> Result<Model, ModelFileError> {
    if bytes.len() < 12 || &bytes[..8] != MAGIC {
        return Err(ModelFileError::Version { expected: FORMAT_VERSION, found: "unrecognized header".into() });
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().expect("4 bytes"));
    if version != FORMAT_VERSION {
        return Err(ModelFileError::Version { expected: FORMAT_VERSION, found: version.to_string() });
    }
    if bytes.len() < 12 + TRAILER.len() + 8 {
        return Err(ModelFileError::Corrupt("file too short".into()));
    }
    let (body, hash) = bytes.split_at(bytes.len() - 8);
    if &body[body.len() - 4..] != TRAILER {
        return Err(ModelFileError::Corrupt("missing end marker (truncated?)".into()));
    }
    if fnv1a(body) != u64::from_le_bytes(hash.try_into().expect("8 bytes")) {
        return Err(ModelFileError::Corrupt("checksum mismatch".into()));
    }
    let mut r = Reader { buf: &body[..body.len() - 4], pos: 12 };
    let kind = r.u8()?;
    let config = TrainConfig::from_toml(&r.str()?).map_err(|e| ModelFileError::Corrupt(e.to_string()))?;
    let flags = r.u8()?;
    let resources = ResourceFlags { wordnet: flags & 1 != 0, roget: flags & 2 != 0 };
    let lex_text = r.str()?;
    let lexicons = if lex_text.is_empty() {
        None
    } else {
        Some(TargetLexicons::from_text(&lex_text).map_err(|e| ModelFileError::Corrupt(e.to_string()))?)
    };
    let classifier = match kind {
        0 => {
            let n = r.u32()?;
            let mut by_lemma = BTreeMap::new();
            for _ in 0..n {
                let lemma = r.str()?;
                by_lemma.insert(lemma, Construal::new(r.str()?, r.str()?));
            }
            let fallback = Construal::new(r.str()?, r.str()?);
            Classifier::MostFrequent(MostFrequentTable { by_lemma, fallback })
        }
        1 => {
            let role_c = r.f64()?;
            let function_c = r.f64()?;
            let n = r.u32()? as usize;
            let names = (0..n).map(|_| r.str()).collect::<Result<Vec<_>, _>>()?;
            let vocab = Vocabulary::from_names(names);
            let role = r.classifier(n)?;
            let function = r.classifier(n)?;
            Classifier::Linear(LinearModelPair { vocab, role, function, role_c, function_c })
        }
        k => return Err(ModelFileError::Corrupt(format!("unknown model kind {k}"))),
    };
    if r.pos != r.buf.len() {
        return Err(ModelFileError::Corrupt("trailing bytes after model body".into()));
    }
    Ok(Model { classifier, config, resources, lexicons })
}

pub fn save_model(model: &Model, path: &Path) -> Result<(), ModelFileError> {
    fs::write(path, write_model(model)).map_err(|source| ModelFileError::Io { path: path.to_path_buf(), source })
}

pub fn load_model(path: &Path) -> Result<Model, ModelFileError> {
    let bytes = fs::read(path).map_err(|source| ModelFileError::Io { path: path.to_path_buf(), source })?;
    read_model(&bytes)
}
