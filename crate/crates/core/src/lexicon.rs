//! Word-level emotion lexicon in the NRC `word<TAB>category<TAB>flag` format.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the ten affect categories annotated in the lexicon.
///
/// Declaration order is the canonical order: the eight emotions alphabetically,
/// then the two sentiment polarities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AffectCategory {
    Anger,
    Anticipation,
    Disgust,
    Fear,
    Joy,
    Sadness,
    Surprise,
    Trust,
    Positive,
    Negative,
}

impl AffectCategory {
    pub const ALL: [AffectCategory; 10] = [
        AffectCategory::Anger,
        AffectCategory::Anticipation,
        AffectCategory::Disgust,
        AffectCategory::Fear,
        AffectCategory::Joy,
        AffectCategory::Sadness,
        AffectCategory::Surprise,
        AffectCategory::Trust,
        AffectCategory::Positive,
        AffectCategory::Negative,
    ];

    pub const EMOTIONS: [AffectCategory; 8] = [
        AffectCategory::Anger,
        AffectCategory::Anticipation,
        AffectCategory::Disgust,
        AffectCategory::Fear,
        AffectCategory::Joy,
        AffectCategory::Sadness,
        AffectCategory::Surprise,
        AffectCategory::Trust,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AffectCategory::Anger => "anger",
            AffectCategory::Anticipation => "anticipation",
            AffectCategory::Disgust => "disgust",
            AffectCategory::Fear => "fear",
            AffectCategory::Joy => "joy",
            AffectCategory::Sadness => "sadness",
            AffectCategory::Surprise => "surprise",
            AffectCategory::Trust => "trust",
            AffectCategory::Positive => "positive",
            AffectCategory::Negative => "negative",
        }
    }

    pub fn is_emotion(self) -> bool {
        !matches!(self, AffectCategory::Positive | AffectCategory::Negative)
    }

    fn bit(self) -> u16 {
        1 << self as u16
    }
}

impl fmt::Display for AffectCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AffectCategory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        AffectCategory::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown affect category {s:?}"))
    }
}

/// Compact set of affect categories.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CategorySet(u16);

impl CategorySet {
    pub const EMPTY: CategorySet = CategorySet(0);

    /// The eight emotions, without the sentiment polarities.
    pub fn emotions() -> Self {
        AffectCategory::EMOTIONS.into_iter().collect()
    }

    pub fn single(category: AffectCategory) -> Self {
        CategorySet(category.bit())
    }

    pub fn insert(&mut self, category: AffectCategory) {
        self.0 |= category.bit();
    }

    pub fn contains(self, category: AffectCategory) -> bool {
        self.0 & category.bit() != 0
    }

    pub fn intersects(self, other: CategorySet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = AffectCategory> {
        AffectCategory::ALL
            .into_iter()
            .filter(move |c| self.contains(*c))
    }
}

impl FromIterator<AffectCategory> for CategorySet {
    fn from_iter<I: IntoIterator<Item = AffectCategory>>(iter: I) -> Self {
        let mut set = CategorySet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

/// Immutable word → category-set map.
#[derive(Debug, Clone, Default)]
pub struct AffectLexicon {
    entries: HashMap<String, CategorySet>,
    source_path: PathBuf,
    words_seen: usize,
}

impl AffectLexicon {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut lex = Self::parse(&raw)?;
        lex.source_path = path.to_path_buf();
        Ok(lex)
    }

    pub fn parse(raw: &str) -> Result<Self> {
        let mut entries: HashMap<String, CategorySet> = HashMap::new();
        let mut seen: HashSet<String> = HashSet::new();
        let mut in_header = true;

        for (idx, line) in raw.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.trim().is_empty() {
                continue;
            }
            if in_header && line.starts_with('#') {
                continue;
            }
            in_header = false;

            let malformed = |reason: String| Error::MalformedLine {
                line: line_no,
                reason,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            let [word, category, flag] = fields[..] else {
                return Err(malformed(format!(
                    "expected 3 tab-separated fields, found {}",
                    fields.len()
                )));
            };
            if word.is_empty() || word.chars().any(char::is_whitespace) {
                return Err(malformed(format!("invalid word {word:?}")));
            }
            let category: AffectCategory = category.parse().map_err(malformed)?;
            let flagged = match flag {
                "1" => true,
                "0" => false,
                other => return Err(malformed(format!("flag must be 0 or 1, found {other:?}"))),
            };

            let word = word.to_lowercase();
            if flagged {
                entries.entry(word.clone()).or_default().insert(category);
            }
            seen.insert(word);
        }

        Ok(AffectLexicon {
            entries,
            source_path: PathBuf::new(),
            words_seen: seen.len(),
        })
    }

    /// Categories for a lowercase word; empty for out-of-vocabulary words.
    pub fn lookup(&self, word: &str) -> CategorySet {
        self.entries
            .get(word)
            .copied()
            .unwrap_or(CategorySet::EMPTY)
    }

    /// Number of words with at least one association.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Distinct words in the source file, including those whose flags were all 0.
    pub fn words_seen(&self) -> usize {
        self.words_seen
    }

    pub fn source_path(&self) -> &Path {
        &self.source_path
    }

    /// Number of stored words annotated with `category`.
    pub fn category_size(&self, category: AffectCategory) -> usize {
        self.entries
            .values()
            .filter(|s| s.contains(category))
            .count()
    }

    /// Re-serialize as flag=1 records, sorted by word then category name.
    pub fn to_nrc_string(&self) -> String {
        let sorted: BTreeMap<&str, CategorySet> =
            self.entries.iter().map(|(w, s)| (w.as_str(), *s)).collect();
        let mut out = String::new();
        for (word, set) in sorted {
            let mut names: Vec<&str> = set.iter().map(AffectCategory::name).collect();
            names.sort_unstable();
            for name in names {
                out.push_str(word);
                out.push('\t');
                out.push_str(name);
                out.push_str("\t1\n");
            }
        }
        out
    }
}

/// Free-function form of [`AffectLexicon::load`].
pub fn load_lexicon(path: impl AsRef<Path>) -> Result<AffectLexicon> {
    AffectLexicon::load(path)
}

pub fn lookup(lex: &AffectLexicon, word: &str) -> CategorySet {
    lex.lookup(word)
}
