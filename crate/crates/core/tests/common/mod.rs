#![allow(dead_code)]

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use transprose::{AffectLexicon, Duration, Key, Note, PitchClass};

/// A small lexicon covering every category, with some multi-category words.
pub const TOY_LEXICON: &str = "\
glad\tjoy\t1\nglad\tpositive\t1\n\
hope\tjoy\t1\nhope\ttrust\t1\nhope\tanticipation\t1\nhope\tpositive\t1\n\
loyal\ttrust\t1\nloyal\tpositive\t1\n\
rage\tanger\t1\nrage\tnegative\t1\n\
dread\tfear\t1\ndread\tnegative\t1\n\
grim\tsadness\t1\ngrim\tnegative\t1\n\
vile\tdisgust\t1\nvile\tanger\t1\nvile\tnegative\t1\n\
await\tanticipation\t1\n\
gasp\tsurprise\t1\ngasp\tfear\t1\n\
kind\tpositive\t1\n\
ruin\tnegative\t1\n";

pub const TOY_VOCAB: &[&str] = &[
    "glad", "hope", "loyal", "rage", "dread", "grim", "vile", "await", "gasp", "kind", "ruin",
];

pub const FILLER: &[&str] = &["the", "a", "of", "house", "walked", "there", "and", "it"];

pub fn toy_lexicon() -> AffectLexicon {
    AffectLexicon::parse(TOY_LEXICON).unwrap()
}

/// Random text of `len` tokens where each token is an emotion word with
/// probability `hit_rate` (the rate itself drifts so densities vary).
pub fn random_text(rng: &mut StdRng, len: usize) -> String {
    let mut rate: f64 = rng.random_range(0.0..0.6);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        if rng.random_bool(0.02) {
            rate = rng.random_range(0.0..0.6);
        }
        let word = if rng.random_bool(rate) {
            TOY_VOCAB[rng.random_range(0..TOY_VOCAB.len())]
        } else {
            FILLER[rng.random_range(0..FILLER.len())]
        };
        out.push(word);
    }
    out.join(" ")
}

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Parsed form of a JFugue music string.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTokens {
    pub key: Key,
    pub volume: u16,
    pub voices: Vec<(usize, u32, Vec<Note>)>,
}

/// Parse a single note token `<Pitch><Octave>/<Duration>`.
pub fn parse_note(token: &str) -> Result<Note, String> {
    let (head, dur) = token
        .split_once('/')
        .ok_or_else(|| format!("no '/' in {token:?}"))?;
    let duration = Duration::from_token(dur).ok_or_else(|| format!("bad duration in {token:?}"))?;
    let digit_at = head
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| format!("no octave in {token:?}"))?;
    let (name, octave) = head.split_at(digit_at);
    let pitch = PitchClass::from_name(name).ok_or_else(|| format!("bad pitch in {token:?}"))?;
    if octave.len() != 1 {
        return Err(format!("octave must be one digit in {token:?}"));
    }
    Ok(Note {
        pitch,
        octave: octave.parse().unwrap(),
        duration,
    })
}

/// Test-only reader for strings produced by `emit_tokens`.
pub fn parse_tokens(s: &str) -> Result<ParsedTokens, String> {
    let mut it = s.split(' ');
    let key = match it.next() {
        Some("KCmaj") => Key::CMajor,
        Some("KCmin") => Key::CMinor,
        other => return Err(format!("bad key token {other:?}")),
    };
    let volume = it
        .next()
        .and_then(|t| t.strip_prefix("X[VOLUME]="))
        .and_then(|v| v.parse().ok())
        .ok_or("bad volume token")?;
    let mut voices: Vec<(usize, u32, Vec<Note>)> = Vec::new();
    let rest: Vec<&str> = it.collect();
    let mut i = 0;
    while i < rest.len() {
        let voice = rest[i]
            .strip_prefix('V')
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| format!("expected voice token, got {:?}", rest[i]))?;
        let tempo = rest
            .get(i + 1)
            .and_then(|t| t.strip_prefix('T'))
            .and_then(|t| t.parse().ok())
            .ok_or("expected tempo token")?;
        i += 2;
        let mut notes = Vec::new();
        while i < rest.len() && !rest[i].starts_with('V') {
            notes.push(parse_note(rest[i])?);
            i += 1;
        }
        voices.push((voice, tempo, notes));
    }
    Ok(ParsedTokens {
        key,
        volume,
        voices,
    })
}

pub fn data_dir() -> PathBuf {
    std::env::var_os("TRANSPROSE_DATA")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

pub fn lexicon_path() -> PathBuf {
    std::env::var_os("TRANSPROSE_LEXICON")
        .map(PathBuf::from)
        .unwrap_or_else(|| data_dir().join("NRC-Emotion-Lexicon-Wordlevel.txt"))
}

/// Exact rational `num/den` used by the density oracles.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    pub num: i128,
    pub den: i128,
}

impl Ratio {
    pub fn new(num: usize, den: usize) -> Self {
        Ratio {
            num: num as i128,
            den: den as i128,
        }
    }

    fn cmp(self, other: Ratio) -> std::cmp::Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }

    pub fn min(self, other: Ratio) -> Ratio {
        if self.cmp(other).is_le() {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Ratio) -> Ratio {
        if self.cmp(other).is_ge() {
            self
        } else {
            other
        }
    }

    pub fn eq(self, other: Ratio) -> bool {
        self.cmp(other).is_eq()
    }
}

/// floor(steps * (d - lo) / (hi - lo)) in exact arithmetic.
pub fn exact_band(d: Ratio, lo: Ratio, hi: Ratio, steps: i128) -> i128 {
    // (d - lo) = (d.num*lo.den - lo.num*d.den) / (d.den*lo.den), same for hi - lo
    let num = steps * (d.num * lo.den - lo.num * d.den) * (hi.den * lo.den);
    let den = (hi.num * lo.den - lo.num * hi.den) * (d.den * lo.den);
    num.div_euclid(den)
}

/// round-half-up(steps * (d - lo) / (hi - lo)) in exact arithmetic.
pub fn exact_round(d: Ratio, lo: Ratio, hi: Ratio, steps: i128) -> i128 {
    let num = steps * (d.num * lo.den - lo.num * d.den) * (hi.den * lo.den);
    let den = (hi.num * lo.den - lo.num * hi.den) * (d.den * lo.den);
    (2 * num + den).div_euclid(2 * den)
}
