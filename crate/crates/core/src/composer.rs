//! Mapping from an emotion profile to key, tempo, octaves and notes.

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::analyzer::{
    AnnotatedText, DensityBasis, EmotionProfile, Partition, Span, TokenizedText,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lexicon::{AffectCategory, AffectLexicon};

/// Corpus-derived ranges for the octave and tempo maps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationConstants {
    pub js_min: f64,
    pub js_max: f64,
    pub act_min: f64,
    pub act_max: f64,
    pub tempo_min: u32,
    pub tempo_max: u32,
    pub octave_lo: u8,
    pub octave_hi: u8,
}

impl Default for CalibrationConstants {
    fn default() -> Self {
        CalibrationConstants {
            js_min: -0.008,
            js_max: 0.008,
            act_min: -0.002,
            act_max: 0.017,
            tempo_min: 40,
            tempo_max: 180,
            octave_lo: 4,
            octave_hi: 6,
        }
    }
}

impl CalibrationConstants {
    /// Zero-width score ranges are accepted (a corpus of identical novels);
    /// they map every score to the low endpoint.
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if ![self.js_min, self.js_max, self.act_min, self.act_max]
            .iter()
            .all(|v| v.is_finite())
        {
            return fail("calibration scores must be finite");
        }
        if self.js_min > self.js_max {
            return fail("js_min must not exceed js_max");
        }
        if self.act_min > self.act_max {
            return fail("act_min must not exceed act_max");
        }
        if self.tempo_min == 0 || self.tempo_min >= self.tempo_max {
            return fail("tempo bounds must satisfy 0 < tempo_min < tempo_max");
        }
        if self.octave_lo >= self.octave_hi || self.octave_hi > 8 {
            return fail("octave bounds must satisfy octave_lo < octave_hi <= 8");
        }
        Ok(())
    }
}

/// Position of `value` within `[lo, hi]` scaled to `[0, steps]`, clamped.
fn scaled_offset(value: f64, lo: f64, hi: f64, steps: f64) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let v = value.clamp(lo, hi);
    (v - lo) * steps / (hi - lo)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PitchClass {
    C,
    CSharp,
    D,
    DSharp,
    E,
    F,
    FSharp,
    G,
    GSharp,
    A,
    ASharp,
    B,
}

impl PitchClass {
    pub const ALL: [PitchClass; 12] = [
        PitchClass::C,
        PitchClass::CSharp,
        PitchClass::D,
        PitchClass::DSharp,
        PitchClass::E,
        PitchClass::F,
        PitchClass::FSharp,
        PitchClass::G,
        PitchClass::GSharp,
        PitchClass::A,
        PitchClass::ASharp,
        PitchClass::B,
    ];

    /// Semitones above C.
    pub fn semitone(self) -> u8 {
        self as u8
    }

    pub fn name(self) -> &'static str {
        [
            "C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B",
        ][self as usize]
    }

    pub fn from_name(name: &str) -> Option<Self> {
        PitchClass::ALL.into_iter().find(|p| p.name() == name)
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for PitchClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Key {
    #[serde(rename = "Cmaj")]
    CMajor,
    #[serde(rename = "Cmin")]
    CMinor,
}

impl Key {
    pub fn scale(self) -> [PitchClass; 7] {
        use PitchClass::*;
        match self {
            Key::CMajor => [C, D, E, F, G, A, B],
            Key::CMinor => [C, D, DSharp, F, G, GSharp, ASharp],
        }
    }

    /// Scale degrees from most to least consonant.
    pub fn consonance_order(self) -> [PitchClass; 7] {
        use PitchClass::*;
        match self {
            Key::CMajor => [C, G, E, A, D, F, B],
            Key::CMinor => [C, G, DSharp, GSharp, D, F, ASharp],
        }
    }

    pub fn token_name(self) -> &'static str {
        match self {
            Key::CMajor => "Cmaj",
            Key::CMinor => "Cmin",
        }
    }

    pub fn is_major(self) -> bool {
        self == Key::CMajor
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Key::CMajor => "C Major",
            Key::CMinor => "C Minor",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Duration {
    Whole,
    Half,
    Quarter,
    Eighth,
    Sixteenth,
}

impl Duration {
    /// Indexed by density band: whole is 0, sixteenth is 4.
    pub const ALL: [Duration; 5] = [
        Duration::Whole,
        Duration::Half,
        Duration::Quarter,
        Duration::Eighth,
        Duration::Sixteenth,
    ];

    /// Length in quarter-note beats.
    pub fn beats(self) -> f64 {
        4.0 / self.notes_per_measure() as f64
    }

    pub fn notes_per_measure(self) -> usize {
        1 << self as usize
    }

    /// Fraction of a whole note, as written in the token string.
    pub fn token(self) -> &'static str {
        ["1.0", "0.5", "0.25", "0.125", "0.0625"][self as usize]
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Duration::ALL.into_iter().find(|d| d.token() == token)
    }

    /// Longest duration whose notes-per-measure fits in `tokens` tokens.
    fn fitting(self, tokens: usize) -> Duration {
        Duration::ALL[..=self as usize]
            .iter()
            .rev()
            .copied()
            .find(|d| d.notes_per_measure() <= tokens)
            .unwrap_or(Duration::Whole)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Note {
    pub pitch: PitchClass,
    pub octave: u8,
    pub duration: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Measure {
    pub notes: Vec<Note>,
}

impl Measure {
    pub fn beats(&self) -> f64 {
        self.notes.iter().map(|n| n.duration.beats()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Melody {
    pub basis: DensityBasis,
    pub octave: u8,
    /// Each section holds its distinct measures followed by their repeat.
    pub sections: Vec<Vec<Measure>>,
}

impl Melody {
    pub fn measures(&self) -> impl Iterator<Item = &Measure> {
        self.sections.iter().flatten()
    }

    pub fn notes(&self) -> impl Iterator<Item = &Note> {
        self.measures().flat_map(|m| m.notes.iter())
    }

    pub fn total_beats(&self) -> f64 {
        self.measures().map(Measure::beats).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PieceSpec {
    pub key: Key,
    pub tempo: u32,
    /// Overall-emotion melody, then the first and second emotion melodies.
    pub melodies: Vec<Melody>,
}

impl PieceSpec {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Playing time in seconds of the longest melody.
    pub fn duration_secs(&self) -> f64 {
        let beats = self
            .melodies
            .iter()
            .map(Melody::total_beats)
            .fold(0.0, f64::max);
        beats / self.tempo as f64 * 60.0
    }
}

pub fn select_key(profile: &EmotionProfile) -> Key {
    if profile.posneg_ratio.0 > 1.0 {
        Key::CMajor
    } else {
        Key::CMinor
    }
}

/// Octave of the overall melody for a joy-minus-sadness score.
pub fn octave_for_js(js: f64, cal: &CalibrationConstants) -> u8 {
    let span = f64::from(cal.octave_hi - cal.octave_lo);
    let offset = scaled_offset(js, cal.js_min, cal.js_max, span).round();
    cal.octave_lo + offset as u8
}

pub fn octave_overall(profile: &EmotionProfile, cal: &CalibrationConstants) -> u8 {
    octave_for_js(profile.js_score, cal)
}

/// Shift an emotion melody's octave up for joy/trust and down for the
/// negative emotions, keeping it inside 1..=7.
pub fn octave_emotion(oct_overall: u8, emotion: AffectCategory) -> u8 {
    use AffectCategory::*;
    let shifted = match emotion {
        Joy | Trust => i32::from(oct_overall) + 1,
        Anger | Fear | Sadness | Disgust => i32::from(oct_overall) - 1,
        _ => i32::from(oct_overall),
    };
    shifted.clamp(1, 7) as u8
}

pub fn tempo_for_activity(activity: f64, cal: &CalibrationConstants) -> u32 {
    let span = f64::from(cal.tempo_max - cal.tempo_min);
    let offset = scaled_offset(activity, cal.act_min, cal.act_max, span).round();
    cal.tempo_min + offset as u32
}

pub fn compute_tempo(profile: &EmotionProfile, cal: &CalibrationConstants) -> u32 {
    tempo_for_activity(profile.activity_score, cal)
}

/// Duration for a subsection whose density falls in one of five equal-width
/// bands between the melody's lowest and highest subsection densities.
pub fn notes_per_measure(d: f64, d_min: f64, d_max: f64) -> Duration {
    if d_max <= d_min {
        return Duration::Whole;
    }
    let band = ((d - d_min) * 5.0 / (d_max - d_min)).floor();
    Duration::ALL[band.clamp(0.0, 4.0) as usize]
}

/// Index into the key's consonance order, 0 (most consonant) to 6.
pub fn pitch_index(d: f64, d_min: f64, d_max: f64) -> usize {
    if d_max <= d_min {
        return 0;
    }
    ((d - d_min) * 6.0 / (d_max - d_min))
        .round()
        .clamp(0.0, 6.0) as usize
}

pub fn pitch_for_density(d: f64, d_min: f64, d_max: f64, key: Key) -> PitchClass {
    key.consonance_order()[pitch_index(d, d_min, d_max)]
}

fn extremes(values: impl IntoIterator<Item = f64>) -> (f64, f64) {
    values
        .into_iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        })
}

pub fn build_melody(
    text: &TokenizedText,
    lex: &AffectLexicon,
    part: &Partition,
    basis: DensityBasis,
    octave: u8,
    key: Key,
) -> Result<Melody> {
    melody_from_annotated(&AnnotatedText::new(text, lex), part, basis, octave, key)
}

pub fn melody_from_annotated(
    text: &AnnotatedText,
    part: &Partition,
    basis: DensityBasis,
    octave: u8,
    key: Key,
) -> Result<Melody> {
    let sub_density = part
        .subsections
        .iter()
        .map(|&s| text.density(s, basis))
        .collect::<Result<Vec<_>>>()?;
    let (sub_min, sub_max) = extremes(sub_density.iter().copied());

    // First pass: durations and the densities of every note span.
    let mut layout: Vec<(Duration, Vec<f64>)> = Vec::with_capacity(part.subsections.len());
    for (&span, &d) in part.subsections.iter().zip(&sub_density) {
        let duration = notes_per_measure(d, sub_min, sub_max).fitting(span.len());
        let note_densities = span
            .split_balanced(duration.notes_per_measure())
            .into_iter()
            .map(|s: Span| text.density(s, basis))
            .collect::<Result<Vec<_>>>()?;
        layout.push((duration, note_densities));
    }
    let (note_min, note_max) = extremes(layout.iter().flat_map(|(_, ds)| ds.iter().copied()));

    let measures: Vec<Measure> = layout
        .into_iter()
        .map(|(duration, densities)| Measure {
            notes: densities
                .into_iter()
                .map(|d| Note {
                    pitch: pitch_for_density(d, note_min, note_max, key),
                    octave,
                    duration,
                })
                .collect(),
        })
        .collect();

    let sections = measures
        .chunks(part.subsections_per_section)
        .map(|chunk| chunk.iter().chain(chunk).cloned().collect())
        .collect();

    Ok(Melody {
        basis,
        octave,
        sections,
    })
}

pub fn compose(
    text: &TokenizedText,
    lex: &AffectLexicon,
    part: &Partition,
    profile: &EmotionProfile,
    cal: &CalibrationConstants,
) -> Result<PieceSpec> {
    compose_annotated(
        &AnnotatedText::new(text, lex),
        part,
        profile,
        cal,
        Execution::default(),
    )
}

pub fn compose_annotated(
    text: &AnnotatedText,
    part: &Partition,
    profile: &EmotionProfile,
    cal: &CalibrationConstants,
    exec: Execution,
) -> Result<PieceSpec> {
    cal.validate()?;
    let key = select_key(profile);
    let tempo = compute_tempo(profile, cal);
    let base = octave_overall(profile, cal);
    let (e1, e2) = profile.top_emotions;
    let voices = [
        (DensityBasis::OverallEmotion, base),
        (DensityBasis::single(e1)?, octave_emotion(base, e1)),
        (DensityBasis::single(e2)?, octave_emotion(base, e2)),
    ];
    let melodies = exec
        .map(&voices, |&(basis, octave)| {
            melody_from_annotated(text, part, basis, octave, key)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(PieceSpec {
        key,
        tempo,
        melodies,
    })
}
