//! Output formats for a composed piece.

mod midi;
mod tokens;

pub use midi::{emit_midi, midi_key, MidiDocument, TICKS_PER_QUARTER, VELOCITY};
pub use tokens::{emit_tokens, TokenString, VOLUME};
