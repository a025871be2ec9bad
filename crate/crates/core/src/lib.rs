//! Text-to-music generation driven by emotion-word densities.
//!
//! The pipeline runs [`lexicon`] → [`analyzer`] → [`composer`] → [`render`]:
//! a novel is tokenized and cut into 4 sections of 4 subsections, the
//! density of emotion words is measured in each, and those densities pick the
//! key, tempo, octaves and notes of a three-voice piano piece. The piece is
//! written as a JFugue music string and as a Standard MIDI File.
//!
//! ```
//! use transprose::{AffectLexicon, Analysis, CalibrationConstants, Execution, Layout};
//!
//! let lex = AffectLexicon::parse("glad\tjoy\t1\nglad\tpositive\t1\n").unwrap();
//! let text = "a glad day and a quiet night ".repeat(8);
//! let analysis = Analysis::new(&text, &lex, Layout::default()).unwrap();
//! let piece = analysis.compose(&CalibrationConstants::default(), Execution::Sequential).unwrap();
//! assert!(transprose::emit_tokens(&piece).as_str().starts_with("KCmaj X[VOLUME]=16383 V0 T"));
//! ```

pub mod analyzer;
pub mod cli;
pub mod composer;
pub mod corpus;
mod error;
pub mod exec;
pub mod lexicon;
pub mod render;

pub use analyzer::{
    build_profile, partition, span_density, tokenize, AnnotatedText, DensityBasis, EmotionProfile,
    Partition, PosNegRatio, Span, TokenizedText,
};
pub use composer::{
    build_melody, compose, compute_tempo, notes_per_measure, octave_emotion, octave_overall,
    pitch_for_density, select_key, CalibrationConstants, Duration, Key, Measure, Melody, Note,
    PieceSpec, PitchClass,
};
pub use corpus::{analyze_batch, Analysis, Layout};
pub use error::{Error, Result};
pub use exec::Execution;
pub use lexicon::{load_lexicon, lookup, AffectCategory, AffectLexicon, CategorySet};
pub use render::{emit_midi, emit_tokens, MidiDocument, TokenString};
