use std::fmt::{self, Write as _};

use crate::composer::{Note, PieceSpec};

/// Loudest JFugue volume; every piece is rendered at it.
pub const VOLUME: u16 = 16383;

/// Single-line JFugue music string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenString(String);

impl TokenString {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn tokens(&self) -> impl Iterator<Item = &str> {
        self.0.split(' ')
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for TokenString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn push_note(out: &mut String, note: &Note) {
    let _ = write!(
        out,
        " {}{}/{}",
        note.pitch,
        note.octave,
        note.duration.token()
    );
}

/// `K<key> X[VOLUME]=16383`, then per voice `V<i> T<tempo>` and its notes.
pub fn emit_tokens(piece: &PieceSpec) -> TokenString {
    let mut out = format!("K{} X[VOLUME]={VOLUME}", piece.key.token_name());
    for (voice, melody) in piece.melodies.iter().enumerate() {
        let _ = write!(out, " V{voice} T{}", piece.tempo);
        for note in melody.notes() {
            push_note(&mut out, note);
        }
    }
    TokenString(out)
}
