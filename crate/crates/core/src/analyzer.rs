//! Tokenization, positional sectioning and emotion-word densities.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeTuple, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lexicon::{AffectCategory, AffectLexicon, CategorySet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizedText {
    tokens: Vec<String>,
}

impl TokenizedText {
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn token_count(&self) -> usize {
        self.tokens.len()
    }

    pub fn full_span(&self) -> Span {
        Span::new(0, self.tokens.len())
    }
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Split on anything that is not a letter or apostrophe, trim apostrophes at
/// the edges and lowercase. Typographic apostrophes are normalized to `'`.
pub fn tokenize(raw_text: &str) -> Result<TokenizedText> {
    let tokens: Vec<String> = raw_text
        .split(|c: char| !(c.is_alphabetic() || is_apostrophe(c)))
        .map(|piece| piece.trim_matches(is_apostrophe))
        .filter(|piece| !piece.is_empty())
        .map(|piece| {
            piece
                .chars()
                .map(|c| if is_apostrophe(c) { '\'' } else { c })
                .flat_map(char::to_lowercase)
                .collect()
        })
        .collect();
    if tokens.is_empty() {
        return Err(Error::EmptyText);
    }
    Ok(TokenizedText { tokens })
}

/// Half-open token range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn len(self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(self) -> bool {
        self.start == self.end
    }

    /// Split into `parts` consecutive spans whose lengths differ by at most
    /// one; the leftover tokens go one each to the leading parts.
    pub fn split_balanced(self, parts: usize) -> Vec<Span> {
        assert!(parts > 0, "cannot split a span into zero parts");
        let base = self.len() / parts;
        let extra = self.len() % parts;
        let mut start = self.start;
        (0..parts)
            .map(|i| {
                let len = base + usize::from(i < extra);
                let span = Span::new(start, start + len);
                start += len;
                span
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub sections: Vec<Span>,
    /// Section-major: subsections of section 0 first.
    pub subsections: Vec<Span>,
    pub subsections_per_section: usize,
}

impl Partition {
    pub fn section_subsections(&self, section: usize) -> &[Span] {
        let k = self.subsections_per_section;
        &self.subsections[section * k..(section + 1) * k]
    }
}

pub fn partition(
    text: &TokenizedText,
    n_sections: usize,
    n_subsections: usize,
) -> Result<Partition> {
    if n_sections == 0 || n_subsections == 0 {
        return Err(Error::InvalidConfig(
            "section and subsection counts must be at least 1".into(),
        ));
    }
    let required = n_sections * n_subsections;
    if text.token_count() < required {
        return Err(Error::TextTooShort {
            tokens: text.token_count(),
            required,
        });
    }
    let sections = text.full_span().split_balanced(n_sections);
    let subsections = sections
        .iter()
        .flat_map(|s| s.split_balanced(n_subsections))
        .collect();
    Ok(Partition {
        sections,
        subsections,
        subsections_per_section: n_subsections,
    })
}

/// What a density counts: any of the eight emotions, or one emotion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DensityBasis {
    OverallEmotion,
    Single(AffectCategory),
}

impl DensityBasis {
    pub fn single(category: AffectCategory) -> Result<Self> {
        if category.is_emotion() {
            Ok(DensityBasis::Single(category))
        } else {
            Err(Error::InvalidConfig(format!(
                "{category} is a sentiment polarity, not an emotion"
            )))
        }
    }

    pub fn categories(self) -> CategorySet {
        match self {
            DensityBasis::OverallEmotion => CategorySet::emotions(),
            DensityBasis::Single(c) => CategorySet::single(c),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DensityBasis::OverallEmotion => "overall",
            DensityBasis::Single(c) => c.name(),
        }
    }

    /// The overall basis followed by the eight single-emotion bases.
    pub fn all() -> impl Iterator<Item = DensityBasis> {
        std::iter::once(DensityBasis::OverallEmotion).chain(
            AffectCategory::EMOTIONS
                .into_iter()
                .map(DensityBasis::Single),
        )
    }
}

impl fmt::Display for DensityBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for DensityBasis {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Per-token category sets, looked up once so spans can be counted cheaply.
#[derive(Debug, Clone)]
pub struct AnnotatedText {
    sets: Vec<CategorySet>,
}

impl AnnotatedText {
    pub fn new(text: &TokenizedText, lex: &AffectLexicon) -> Self {
        AnnotatedText {
            sets: text.tokens().iter().map(|t| lex.lookup(t)).collect(),
        }
    }

    pub fn token_count(&self) -> usize {
        self.sets.len()
    }

    /// Tokens in `span` associated with at least one category of `set`.
    pub fn count(&self, span: Span, set: CategorySet) -> usize {
        self.sets[span.start..span.end]
            .iter()
            .filter(|s| s.intersects(set))
            .count()
    }

    pub fn density(&self, span: Span, basis: DensityBasis) -> Result<f64> {
        if span.is_empty() {
            return Err(Error::EmptySpan);
        }
        Ok(self.count(span, basis.categories()) as f64 / span.len() as f64)
    }
}

pub fn span_density(
    text: &TokenizedText,
    lex: &AffectLexicon,
    span: Span,
    basis: DensityBasis,
) -> Result<f64> {
    if span.is_empty() {
        return Err(Error::EmptySpan);
    }
    let set = basis.categories();
    let hits = text.tokens()[span.start..span.end]
        .iter()
        .filter(|t| lex.lookup(t).intersects(set))
        .count();
    Ok(hits as f64 / span.len() as f64)
}

/// Positive-to-negative word ratio; `inf` when only positive words occur.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PosNegRatio(pub f64);

impl PosNegRatio {
    pub fn from_counts(positive: usize, negative: usize) -> Self {
        PosNegRatio(match (positive, negative) {
            (0, 0) => 1.0,
            (_, 0) => f64::INFINITY,
            (p, n) => p as f64 / n as f64,
        })
    }
}

impl Serialize for PosNegRatio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str("inf")
        }
    }
}

fn serialize_pair<S: Serializer>(
    pair: &(AffectCategory, AffectCategory),
    s: S,
) -> Result<S::Ok, S::Error> {
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&pair.0)?;
    t.serialize_element(&pair.1)?;
    t.end()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmotionProfile {
    pub token_count: usize,
    pub overall_density: f64,
    pub category_density: BTreeMap<AffectCategory, f64>,
    /// Basis → density of each section, in order.
    pub section_density: BTreeMap<DensityBasis, Vec<f64>>,
    /// Basis → density of each subsection, in section-major order.
    pub subsection_density: BTreeMap<DensityBasis, Vec<f64>>,
    pub js_score: f64,
    pub activity_score: f64,
    pub posneg_ratio: PosNegRatio,
    #[serde(serialize_with = "serialize_pair")]
    pub top_emotions: (AffectCategory, AffectCategory),
}

impl EmotionProfile {
    pub fn density(&self, category: AffectCategory) -> f64 {
        self.category_density[&category]
    }

    pub fn subsection(&self, index: usize, basis: DensityBasis) -> f64 {
        self.subsection_density[&basis][index]
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

pub fn build_profile(
    text: &TokenizedText,
    lex: &AffectLexicon,
    part: &Partition,
) -> Result<EmotionProfile> {
    profile_annotated(&AnnotatedText::new(text, lex), part)
}

pub fn profile_annotated(text: &AnnotatedText, part: &Partition) -> Result<EmotionProfile> {
    let whole = Span::new(0, text.token_count());
    if whole.is_empty() {
        return Err(Error::EmptySpan);
    }
    let total = whole.len() as f64;

    let counts: BTreeMap<AffectCategory, usize> = AffectCategory::ALL
        .into_iter()
        .map(|c| (c, text.count(whole, CategorySet::single(c))))
        .collect();
    let category_density: BTreeMap<AffectCategory, f64> = counts
        .iter()
        .map(|(&c, &n)| (c, n as f64 / total))
        .collect();
    let overall_density = text.density(whole, DensityBasis::OverallEmotion)?;

    let per_span = |spans: &[Span]| -> Result<BTreeMap<DensityBasis, Vec<f64>>> {
        DensityBasis::all()
            .map(|basis| {
                let values = spans
                    .iter()
                    .map(|&s| text.density(s, basis))
                    .collect::<Result<Vec<_>>>()?;
                Ok((basis, values))
            })
            .collect()
    };
    let section_density = per_span(&part.sections)?;
    let subsection_density = per_span(&part.subsections)?;

    let d = |c| category_density[&c];
    let js_score = d(AffectCategory::Joy) - d(AffectCategory::Sadness);
    let activity_score =
        (d(AffectCategory::Anger) + d(AffectCategory::Joy)) / 2.0 - d(AffectCategory::Sadness);
    let posneg_ratio = PosNegRatio::from_counts(
        counts[&AffectCategory::Positive],
        counts[&AffectCategory::Negative],
    );

    // Highest count first; the stable sort keeps canonical order among ties.
    let mut ranked = AffectCategory::EMOTIONS;
    ranked.sort_by(|a, b| counts[b].cmp(&counts[a]));

    Ok(EmotionProfile {
        token_count: whole.len(),
        overall_density,
        category_density,
        section_density,
        subsection_density,
        js_score,
        activity_score,
        posneg_ratio,
        top_emotions: (ranked[0], ranked[1]),
    })
}
