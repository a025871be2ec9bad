//! Whole-document pipeline, batch analysis and corpus calibration.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::analyzer::{
    partition, profile_annotated, tokenize, AnnotatedText, EmotionProfile, Partition,
};
use crate::composer::{self, compose_annotated, CalibrationConstants, PieceSpec};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lexicon::{AffectCategory, AffectLexicon};

/// Read a file as UTF-8, replacing invalid sequences.
pub fn read_text_lossy(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

/// Keep only the text between the Project Gutenberg START and END markers.
/// Text without a START marker is returned unchanged.
pub fn strip_gutenberg(raw: &str) -> &str {
    let is_marker = |line: &str, word: &str| {
        let line = line.trim_start_matches(['*', ' ']).to_ascii_uppercase();
        line.starts_with(&format!("{word} OF THE PROJECT GUTENBERG"))
            || line.starts_with(&format!("{word} OF THIS PROJECT GUTENBERG"))
    };

    let mut offset = 0;
    let mut body_start = None;
    let mut body_end = raw.len();
    for line in raw.split_inclusive('\n') {
        if body_start.is_none() {
            if is_marker(line, "START") {
                body_start = Some(offset + line.len());
            }
        } else if is_marker(line, "END") {
            body_end = offset;
            break;
        }
        offset += line.len();
    }
    match body_start {
        Some(start) => &raw[start..body_end],
        None => raw,
    }
}

/// Sectioning options shared by every document in a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub sections: usize,
    pub subsections: usize,
}

impl Default for Layout {
    fn default() -> Self {
        Layout {
            sections: 4,
            subsections: 4,
        }
    }
}

/// A tokenized, partitioned and profiled document ready for composition.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub text: AnnotatedText,
    pub partition: Partition,
    pub profile: EmotionProfile,
}

impl Analysis {
    pub fn new(raw: &str, lex: &AffectLexicon, layout: Layout) -> Result<Self> {
        let tokens = tokenize(raw)?;
        let partition = partition(&tokens, layout.sections, layout.subsections)?;
        let text = AnnotatedText::new(&tokens, lex);
        let profile = profile_annotated(&text, &partition)?;
        Ok(Analysis {
            text,
            partition,
            profile,
        })
    }

    pub fn compose(&self, cal: &CalibrationConstants, exec: Execution) -> Result<PieceSpec> {
        compose_annotated(&self.text, &self.partition, &self.profile, cal, exec)
    }
}

/// Analyze every document; results keep input order.
pub fn analyze_batch<S: AsRef<str> + Sync>(
    texts: &[S],
    lex: &AffectLexicon,
    layout: Layout,
    exec: Execution,
) -> Vec<Result<Analysis>> {
    exec.map(texts, |raw| Analysis::new(raw.as_ref(), lex, layout))
}

/// Score ranges spanned by a corpus; tempo and octave bounds stay at their defaults.
pub fn calibrate(profiles: &[&EmotionProfile]) -> Result<CalibrationConstants> {
    if profiles.is_empty() {
        return Err(Error::InsufficientCorpus(0));
    }
    let range = |f: fn(&EmotionProfile) -> f64| {
        profiles
            .iter()
            .map(|p| f(p))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    };
    let (js_min, js_max) = range(|p| p.js_score);
    let (act_min, act_max) = range(|p| p.activity_score);
    Ok(CalibrationConstants {
        js_min,
        js_max,
        act_min,
        act_max,
        ..CalibrationConstants::default()
    })
}

/// One line of the per-novel table, in the column order of the published report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub title: String,
    pub emotion_1: AffectCategory,
    pub emotion_2: AffectCategory,
    pub octave: u8,
    pub tempo: u32,
    pub pos_neg: &'static str,
    pub key: String,
    pub activity: f64,
    pub joy_sad: f64,
}

impl ReportRow {
    pub fn new(
        title: impl Into<String>,
        profile: &EmotionProfile,
        cal: &CalibrationConstants,
    ) -> Self {
        let key = composer::select_key(profile);
        ReportRow {
            title: title.into(),
            emotion_1: profile.top_emotions.0,
            emotion_2: profile.top_emotions.1,
            octave: composer::octave_overall(profile, cal),
            tempo: composer::compute_tempo(profile, cal),
            pos_neg: if key.is_major() {
                "Positive"
            } else {
                "Negative"
            },
            key: key.to_string(),
            activity: profile.activity_score,
            joy_sad: profile.js_score,
        }
    }
}

fn title_case(c: AffectCategory) -> String {
    let name = c.name();
    name[..1].to_ascii_uppercase() + &name[1..]
}

pub const REPORT_HEADER: &str =
    "Book Title\tEmotion 1\tEmotion 2\tOctave\tTempo\tPos/Neg\tKey\tActivity\tJoy-Sad";

pub fn report_tsv(rows: &[ReportRow]) -> String {
    let mut out = String::from(REPORT_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}\t{:.4}",
            r.title,
            title_case(r.emotion_1),
            title_case(r.emotion_2),
            r.octave,
            r.tempo,
            r.pos_neg,
            r.key,
            r.activity,
            r.joy_sad
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const LEX: &str =
        "glad\tjoy\t1\nglad\tpositive\t1\ngrim\tsadness\t1\ngrim\tnegative\t1\nrage\tanger\t1\n";

    #[test]
    fn strip_markers() {
        let raw = "header\n*** START OF THE PROJECT GUTENBERG EBOOK X ***\nbody one\nbody two\n*** END OF THE PROJECT GUTENBERG EBOOK X ***\nlicense\n";
        assert_eq!(strip_gutenberg(raw), "body one\nbody two\n");
        let old = "x\n*** START OF THIS PROJECT GUTENBERG EBOOK Y ***\nbody\n";
        assert_eq!(strip_gutenberg(old), "body\n");
        assert_eq!(strip_gutenberg("no markers here"), "no markers here");
    }

    #[test]
    fn batch_modes_agree() {
        let lex = AffectLexicon::parse(LEX).unwrap();
        let texts: Vec<String> = (0..12)
            .map(|i| format!("{}{}", "glad grim w ".repeat(6 + i), "rage ".repeat(i)))
            .collect();
        let seq = analyze_batch(&texts, &lex, Layout::default(), Execution::Sequential);
        let par = analyze_batch(&texts, &lex, Layout::default(), Execution::Parallel);
        for (a, b) in seq.iter().zip(&par) {
            assert_eq!(a.as_ref().unwrap().profile, b.as_ref().unwrap().profile);
        }
    }

    #[test]
    fn batch_reports_per_document_errors() {
        let lex = AffectLexicon::parse(LEX).unwrap();
        let texts = ["...", "too short", &"glad w ".repeat(20)];
        let results = analyze_batch(&texts, &lex, Layout::default(), Execution::Parallel);
        assert!(matches!(results[0], Err(Error::EmptyText)));
        assert!(matches!(results[1], Err(Error::TextTooShort { .. })));
        assert!(results[2].is_ok());
    }

    #[test]
    fn calibration_ranges() {
        let lex = AffectLexicon::parse(LEX).unwrap();
        let happy = Analysis::new(&"glad w w w ".repeat(10), &lex, Layout::default()).unwrap();
        let sad = Analysis::new(&"grim w w w ".repeat(10), &lex, Layout::default()).unwrap();
        let cal = calibrate(&[&happy.profile, &sad.profile]).unwrap();
        assert_eq!((cal.js_min, cal.js_max), (-0.25, 0.25));
        assert_eq!((cal.act_min, cal.act_max), (-0.25, 0.125));
        assert_eq!(ReportRow::new("h", &happy.profile, &cal).octave, 6);
        assert_eq!(ReportRow::new("s", &sad.profile, &cal).tempo, 40);
        assert!(calibrate(&[]).is_err());
    }

    #[test]
    fn identical_corpus_degenerates_to_low_octave() {
        let lex = AffectLexicon::parse(LEX).unwrap();
        let a = Analysis::new(&"glad grim rage w ".repeat(10), &lex, Layout::default()).unwrap();
        let cal = calibrate(&[&a.profile, &a.profile]).unwrap();
        assert_eq!(cal.js_min, cal.js_max);
        let piece = a.compose(&cal, Execution::Sequential).unwrap();
        assert_eq!(piece.melodies[0].octave, 4);
        assert_eq!(piece.tempo, cal.tempo_min);
    }

    #[test]
    fn tsv_columns() {
        let lex = AffectLexicon::parse(LEX).unwrap();
        let a = Analysis::new(&"glad glad grim w ".repeat(10), &lex, Layout::default()).unwrap();
        let row = ReportRow::new("Toy", &a.profile, &CalibrationConstants::default());
        let tsv = report_tsv(&[row]);
        let line = tsv.lines().nth(1).unwrap();
        assert_eq!(
            line,
            "Toy\tJoy\tSadness\t6\t55\tPositive\tC Major\t0.000\t0.2500"
        );
    }
}
