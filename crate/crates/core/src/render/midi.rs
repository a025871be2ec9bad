//! Format-1 Standard MIDI File writer: a conductor track with time signature
//! and tempo, then one track per melody on its own channel.

use std::path::Path;

use crate::composer::{Duration, Melody, Note, PieceSpec};
use crate::error::{Error, Result};

pub const TICKS_PER_QUARTER: u16 = 480;
pub const VELOCITY: u8 = 80;
const PROGRAM_ACOUSTIC_GRAND: u8 = 0;
const RELEASE_VELOCITY: u8 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MidiDocument(Vec<u8>);

impl MidiDocument {
    pub fn bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn write_to(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, &self.0).map_err(|e| Error::io(path, e))
    }
}

/// MIDI key number with middle C (C4) at 60.
pub fn midi_key(note: &Note) -> u8 {
    12 * (note.octave + 1) + note.pitch.semitone()
}

fn ticks(duration: Duration) -> u32 {
    u32::from(TICKS_PER_QUARTER) * 4 / duration.notes_per_measure() as u32
}

fn push_vlq(buf: &mut Vec<u8>, value: u32) {
    debug_assert!(value < 1 << 28);
    for shift in [21, 14, 7] {
        if value >> shift != 0 {
            buf.push(((value >> shift) & 0x7f) as u8 | 0x80);
        }
    }
    buf.push((value & 0x7f) as u8);
}

struct Track(Vec<u8>);

impl Track {
    fn new() -> Self {
        Track(Vec::new())
    }

    fn event(&mut self, delta: u32, bytes: &[u8]) {
        push_vlq(&mut self.0, delta);
        self.0.extend_from_slice(bytes);
    }

    fn meta(&mut self, delta: u32, kind: u8, data: &[u8]) {
        push_vlq(&mut self.0, delta);
        self.0.extend_from_slice(&[0xff, kind]);
        push_vlq(&mut self.0, data.len() as u32);
        self.0.extend_from_slice(data);
    }

    fn finish(mut self, out: &mut Vec<u8>) {
        self.meta(0, 0x2f, &[]);
        out.extend_from_slice(b"MTrk");
        out.extend_from_slice(&(self.0.len() as u32).to_be_bytes());
        out.extend_from_slice(&self.0);
    }
}

fn conductor_track(tempo: u32) -> Track {
    let mut t = Track::new();
    // 4/4, 24 MIDI clocks per click, 8 32nd-notes per quarter
    t.meta(0, 0x58, &[4, 2, 24, 8]);
    let micros = (60_000_000.0 / f64::from(tempo)).round() as u32;
    t.meta(0, 0x51, &micros.to_be_bytes()[1..]);
    t
}

fn melody_track(melody: &Melody, channel: u8) -> Track {
    let mut t = Track::new();
    t.meta(0, 0x03, melody.basis.name().as_bytes());
    t.event(0, &[0xc0 | channel, PROGRAM_ACOUSTIC_GRAND]);
    for note in melody.notes() {
        let key = midi_key(note);
        t.event(0, &[0x90 | channel, key, VELOCITY]);
        t.event(
            ticks(note.duration),
            &[0x80 | channel, key, RELEASE_VELOCITY],
        );
    }
    t
}

pub fn emit_midi(piece: &PieceSpec) -> MidiDocument {
    let mut out = Vec::new();
    out.extend_from_slice(b"MThd");
    out.extend_from_slice(&6u32.to_be_bytes());
    out.extend_from_slice(&1u16.to_be_bytes());
    out.extend_from_slice(&(piece.melodies.len() as u16 + 1).to_be_bytes());
    out.extend_from_slice(&TICKS_PER_QUARTER.to_be_bytes());

    conductor_track(piece.tempo).finish(&mut out);
    for (channel, melody) in piece.melodies.iter().enumerate() {
        melody_track(melody, channel as u8).finish(&mut out);
    }
    MidiDocument(out)
}
