//! Optional lexical resources consulted by feature extraction: a WordNet
//! database directory and a word-to-division thesaurus file.
//!
//! Every lookup on a resource that was not loaded reports absence. Nothing is
//! ever fetched over the network.

use std::collections::{BTreeSet, HashMap};
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ResourceError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Malformed { path: PathBuf, line: usize, message: String },
}

fn read(path: &Path) -> Result<String, ResourceError> {
    fs::read_to_string(path).map_err(|source| ResourceError::Io { path: path.to_path_buf(), source })
}

/// WordNet part of speech.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WnPos {
    Noun,
    Verb,
    Adj,
    Adv,
}

impl WnPos {
    pub const ALL: [WnPos; 4] = [WnPos::Noun, WnPos::Verb, WnPos::Adj, WnPos::Adv];

    fn file_suffix(self) -> &'static str {
        match self {
            WnPos::Noun => "noun",
            WnPos::Verb => "verb",
            WnPos::Adj => "adj",
            WnPos::Adv => "adv",
        }
    }

    pub fn code(self) -> char {
        match self {
            WnPos::Noun => 'n',
            WnPos::Verb => 'v',
            WnPos::Adj => 'a',
            WnPos::Adv => 'r',
        }
    }

    fn from_code(c: &str) -> Option<WnPos> {
        match c {
            "n" => Some(WnPos::Noun),
            "v" => Some(WnPos::Verb),
            "a" | "s" => Some(WnPos::Adj),
            "r" => Some(WnPos::Adv),
            _ => None,
        }
    }

    /// Maps a universal POS tag to a WordNet part of speech, if there is an obvious one.
    pub fn from_upos(upos: &str) -> Option<WnPos> {
        match upos {
            "NOUN" | "PROPN" => Some(WnPos::Noun),
            "VERB" | "AUX" => Some(WnPos::Verb),
            "ADJ" => Some(WnPos::Adj),
            "ADV" => Some(WnPos::Adv),
            _ => None,
        }
    }

    fn detachment_rules(self) -> &'static [(&'static str, &'static str)] {
        match self {
            WnPos::Noun => &[
                ("s", ""),
                ("ses", "s"),
                ("xes", "x"),
                ("zes", "z"),
                ("ches", "ch"),
                ("shes", "sh"),
                ("men", "man"),
                ("ies", "y"),
            ],
            WnPos::Verb => &[
                ("s", ""),
                ("ies", "y"),
                ("es", "e"),
                ("es", ""),
                ("ed", "e"),
                ("ed", ""),
                ("ing", "e"),
                ("ing", ""),
            ],
            WnPos::Adj => &[("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
            WnPos::Adv => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HolonymKind {
    Part,
    Member,
    Substance,
}

impl HolonymKind {
    pub const ALL: [HolonymKind; 3] = [HolonymKind::Part, HolonymKind::Member, HolonymKind::Substance];

    pub fn symbol(self) -> &'static str {
        match self {
            HolonymKind::Part => "#p",
            HolonymKind::Member => "#m",
            HolonymKind::Substance => "#s",
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            HolonymKind::Part => "part",
            HolonymKind::Member => "member",
            HolonymKind::Substance => "substance",
        }
    }
}

/// What WordNet knows about one word.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WordNetEntry {
    /// Base form the word was found under.
    pub lemma: String,
    /// Synset ids (`n04081281` style), most frequent sense first.
    pub synsets: Vec<String>,
    /// Lexicographer file of the first sense, e.g. `noun.artifact`.
    pub lexfile: String,
    /// Holonym synset ids of the first sense.
    pub holonyms: Vec<(HolonymKind, String)>,
}

impl WordNetEntry {
    pub fn first_synset(&self) -> &str {
        &self.synsets[0]
    }
}

#[derive(Debug)]
struct PosTable {
    index: HashMap<String, Vec<u64>>,
    exceptions: HashMap<String, Vec<String>>,
    data: String,
}

/// A WordNet database directory (`index.*`, `data.*`, `lexnames`, `*.exc`).
#[derive(Debug)]
pub struct WordNet {
    tables: HashMap<WnPos, PosTable>,
    lexnames: HashMap<u32, String>,
}

impl WordNet {
    pub fn load(dir: &Path) -> Result<WordNet, ResourceError> {
        let lexnames_path = dir.join("lexnames");
        let mut lexnames = HashMap::new();
        for (i, line) in read(&lexnames_path)?.lines().enumerate() {
            let mut f = line.split_whitespace();
            let (Some(num), Some(name)) = (f.next(), f.next()) else {
                continue;
            };
            let num: u32 = num.parse().map_err(|_| ResourceError::Malformed {
                path: lexnames_path.clone(),
                line: i + 1,
                message: format!("bad file number `{num}`"),
            })?;
            lexnames.insert(num, name.to_string());
        }

        let mut tables = HashMap::new();
        for pos in WnPos::ALL {
            let index_path = dir.join(format!("index.{}", pos.file_suffix()));
            let index = parse_index(&index_path, &read(&index_path)?)?;
            let exc_path = dir.join(format!("{}.exc", pos.file_suffix()));
            let exceptions = if exc_path.exists() { parse_exceptions(&read(&exc_path)?) } else { HashMap::new() };
            // offsets count LF line endings; copies converted to CRLF are repaired here
            let data = read(&dir.join(format!("data.{}", pos.file_suffix())))?.replace("\r\n", "\n");
            tables.insert(pos, PosTable { index, exceptions, data });
        }
        Ok(WordNet { tables, lexnames })
    }

    /// Base forms of `word` known to WordNet under `pos`, exceptions first.
    pub fn morphy(&self, word: &str, pos: WnPos) -> Vec<String> {
        let table = &self.tables[&pos];
        let word = normalize(word);
        let mut out: Vec<String> = Vec::new();
        let mut push = |w: String| {
            if table.index.contains_key(&w) && !out.contains(&w) {
                out.push(w);
            }
        };
        if let Some(bases) = table.exceptions.get(&word) {
            for b in bases {
                push(b.clone());
            }
        }
        push(word.clone());
        for (suffix, ending) in pos.detachment_rules() {
            if let Some(stem) = word.strip_suffix(suffix) {
                if !stem.is_empty() {
                    push(format!("{stem}{ending}"));
                }
            }
        }
        out
    }

    /// Looks `word` up under the part of speech implied by `upos`, or under
    /// noun, verb, adjective, adverb in that order when the tag implies none
    /// (or the word is not found under it).
    pub fn lookup(&self, word: &str, upos: &str) -> Option<WordNetEntry> {
        if word.trim().is_empty() {
            return None;
        }
        let hinted = WnPos::from_upos(upos);
        let order = hinted.into_iter().chain(WnPos::ALL.into_iter().filter(|p| Some(*p) != hinted));
        for pos in order {
            if let Some(lemma) = self.morphy(word, pos).into_iter().next() {
                return self.entry(&lemma, pos);
            }
        }
        None
    }

    fn entry(&self, lemma: &str, pos: WnPos) -> Option<WordNetEntry> {
        let table = &self.tables[&pos];
        let offsets = table.index.get(lemma)?;
        let first = *offsets.first()?;
        let synsets = offsets.iter().map(|o| format!("{}{o:08}", pos.code())).collect();
        let line = table.data.get(first as usize..)?.lines().next()?;
        let (lexfile, holonyms) = parse_data_line(line, &self.lexnames)?;
        Some(WordNetEntry { lemma: lemma.to_string(), synsets, lexfile, holonyms })
    }
}

fn normalize(word: &str) -> String {
    word.trim().to_lowercase().replace(' ', "_")
}

fn parse_index(path: &Path, text: &str) -> Result<HashMap<String, Vec<u64>>, ResourceError> {
    let mut out = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        // license header lines start with spaces
        if line.starts_with(' ') || line.trim().is_empty() {
            continue;
        }
        let bad = |message: &str| ResourceError::Malformed { path: path.to_path_buf(), line: i + 1, message: message.to_string() };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 6 {
            return Err(bad("too few fields"));
        }
        let synset_cnt: usize = fields[2].parse().map_err(|_| bad("bad synset count"))?;
        if synset_cnt == 0 || fields.len() < synset_cnt + 4 {
            return Err(bad("synset count does not match offsets"));
        }
        let offsets = fields[fields.len() - synset_cnt..]
            .iter()
            .map(|o| o.parse::<u64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad("bad synset offset"))?;
        out.insert(fields[0].to_string(), offsets);
    }
    Ok(out)
}

fn parse_exceptions(text: &str) -> HashMap<String, Vec<String>> {
    let mut out = HashMap::new();
    for line in text.lines() {
        let mut f = line.split_whitespace();
        if let Some(inflected) = f.next() {
            let bases: Vec<String> = f.map(str::to_string).collect();
            if !bases.is_empty() {
                out.insert(inflected.to_string(), bases);
            }
        }
    }
    out
}

fn parse_data_line(line: &str, lexnames: &HashMap<u32, String>) -> Option<(String, Vec<(HolonymKind, String)>)> {
    let fields: Vec<&str> = line.split(" | ").next()?.split_whitespace().collect();
    let lex_filenum: u32 = fields.get(1)?.parse().ok()?;
    let w_cnt = usize::from_str_radix(fields.get(3)?, 16).ok()?;
    let p_at = 4 + 2 * w_cnt;
    let p_cnt: usize = fields.get(p_at)?.parse().ok()?;
    let mut holonyms = Vec::new();
    for k in 0..p_cnt {
        let base = p_at + 1 + 4 * k;
        let symbol = *fields.get(base)?;
        if let Some(kind) = HolonymKind::ALL.into_iter().find(|h| h.symbol() == symbol) {
            let pos = WnPos::from_code(fields.get(base + 2)?)?;
            holonyms.push((kind, format!("{}{}", pos.code(), fields.get(base + 1)?)));
        }
    }
    Some((lexnames.get(&lex_filenum)?.clone(), holonyms))
}

/// Word-to-division thesaurus read from `word<TAB>division` lines.
#[derive(Debug, Default)]
pub struct Thesaurus {
    divisions: HashMap<String, BTreeSet<String>>,
}

impl Thesaurus {
    pub fn load(path: &Path) -> Result<Thesaurus, ResourceError> {
        Thesaurus::parse(&read(path)?, path)
    }

    pub fn parse(text: &str, path: &Path) -> Result<Thesaurus, ResourceError> {
        let mut divisions: HashMap<String, BTreeSet<String>> = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let Some((word, division)) = line.split_once('\t') else {
                return Err(ResourceError::Malformed {
                    path: path.to_path_buf(),
                    line: i + 1,
                    message: "expected `word<TAB>division`".to_string(),
                });
            };
            divisions.entry(word.trim().to_lowercase()).or_default().insert(division.trim().to_string());
        }
        Ok(Thesaurus { divisions })
    }

    pub fn len(&self) -> usize {
        self.divisions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisions.is_empty()
    }

    pub fn lookup(&self, word: &str) -> BTreeSet<String> {
        self.divisions.get(&word.trim().to_lowercase()).cloned().unwrap_or_default()
    }
}

/// Which resources were available, recorded with trained models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ResourceFlags {
    pub wordnet: bool,
    pub roget: bool,
}

/// Outcome of a WordNet lookup through the bundle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordNetLookup {
    /// No WordNet was loaded.
    Unavailable,
    NotFound,
    Found(WordNetEntry),
}

#[derive(Debug, Default)]
pub struct LexicalResourceBundle {
    pub wordnet: Option<WordNet>,
    pub roget: Option<Thesaurus>,
}

impl LexicalResourceBundle {
    pub fn empty() -> LexicalResourceBundle {
        LexicalResourceBundle::default()
    }

    pub fn load(wordnet_dir: Option<&Path>, roget_file: Option<&Path>) -> Result<LexicalResourceBundle, ResourceError> {
        Ok(LexicalResourceBundle {
            wordnet: wordnet_dir.map(WordNet::load).transpose()?,
            roget: roget_file.map(Thesaurus::load).transpose()?,
        })
    }

    pub fn flags(&self) -> ResourceFlags {
        ResourceFlags { wordnet: self.wordnet.is_some(), roget: self.roget.is_some() }
    }

    pub fn lookup_wordnet(&self, word: &str, upos: &str) -> WordNetLookup {
        match &self.wordnet {
            None => WordNetLookup::Unavailable,
            Some(wn) => wn.lookup(word, upos).map_or(WordNetLookup::NotFound, WordNetLookup::Found),
        }
    }

    pub fn lookup_roget(&self, word: &str) -> BTreeSet<String> {
        self.roget.as_ref().map(|r| r.lookup(word)).unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> WordNet {
        WordNet::load(&Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/wordnet")).unwrap()
    }

    #[test]
    fn restaurant_is_an_artifact() {
        let e = fixture().lookup("restaurant", "NOUN").unwrap();
        assert_eq!(e.lexfile, "noun.artifact");
        assert_eq!(e.lemma, "restaurant");
        assert_eq!(e.synsets.len(), 1);
        assert_eq!(e.holonyms.len(), 1);
        assert_eq!(e.holonyms[0].0, HolonymKind::Member);
    }

    #[test]
    fn morphology() {
        let wn = fixture();
        assert_eq!(wn.lookup("works", "VERB").unwrap().lemma, "work");
        assert_eq!(wn.lookup("went", "VERB").unwrap().lemma, "go");
        assert_eq!(wn.lookup("cars", "NOUN").unwrap().lemma, "car");
        // untagged words fall back through noun first
        assert_eq!(wn.lookup("work", "ADP").unwrap().synsets[0].chars().next(), Some('n'));
    }

    #[test]
    fn out_of_vocabulary() {
        let wn = fixture();
        assert!(wn.lookup("xyzzyq", "NOUN").is_none());
        assert!(wn.lookup("", "NOUN").is_none());
    }

    #[test]
    fn absent_resources_report_absence() {
        let b = LexicalResourceBundle::empty();
        assert_eq!(b.lookup_wordnet("restaurant", "NOUN"), WordNetLookup::Unavailable);
        assert!(b.lookup_roget("journey").is_empty());
        assert_eq!(b.flags(), ResourceFlags::default());
    }

    #[test]
    fn thesaurus_lookup() {
        let t = Thesaurus::parse("# header\njourney\tcat0264\nJourney\tcat0266\n", Path::new("x")).unwrap();
        assert_eq!(t.lookup("journey").len(), 2);
        assert!(t.lookup("").is_empty());
        assert!(Thesaurus::parse("no tab here\n", Path::new("x")).is_err());
    }

    #[test]
    fn malformed_index() {
        assert!(parse_index(Path::new("i"), "dog n x 0 1 0 123\n").is_err());
    }
}
