//! Command-line front end: `generate`, `profile` and `calibrate`.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::composer::CalibrationConstants;
use crate::corpus::{self, read_text_lossy, strip_gutenberg, Analysis, Layout, ReportRow};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::lexicon::AffectLexicon;
use crate::render::{emit_midi, emit_tokens};

#[derive(Debug, Parser)]
#[command(
    name = "transprose",
    version,
    about = "Turn the emotional arc of a novel into a piano piece"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compose a piece for one text and write the requested artifacts.
    Generate(GenerateArgs),
    /// Print the emotion profile of one text as JSON.
    Profile(ProfileArgs),
    /// Derive score ranges from a corpus and print a per-novel report.
    Calibrate(CalibrateArgs),
}

#[derive(Debug, Args)]
pub struct TextArgs {
    #[arg(long, env = "TRANSPROSE_LEXICON")]
    pub lexicon: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub sections: usize,
    #[arg(long, default_value_t = 4)]
    pub subsections: usize,
    /// Drop Project Gutenberg header and license around the START/END markers.
    #[arg(long)]
    pub strip_gutenberg: bool,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub text: TextArgs,
    #[arg(long)]
    pub emit_midi: bool,
    #[arg(long)]
    pub emit_tokens: bool,
    #[arg(long)]
    pub emit_profile: bool,
    /// Also write the composed piece as JSON.
    #[arg(long)]
    pub emit_spec: bool,
    /// Calibration JSON written by `calibrate`.
    #[arg(long)]
    pub calibration: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    pub js_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub js_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub act_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub act_max: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub text: TextArgs,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// Output path for the calibration JSON.
    #[arg(long)]
    pub out: PathBuf,
    /// Also write the per-novel table as TSV.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[command(flatten)]
    pub text: TextArgs,
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmitFlags {
    pub midi: bool,
    pub tokens: bool,
    pub profile: bool,
    pub spec: bool,
}

impl EmitFlags {
    fn any(self) -> bool {
        self.midi || self.tokens || self.profile || self.spec
    }
}

/// Fully resolved settings for one `generate` run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    pub lexicon: PathBuf,
    pub output_stem: PathBuf,
    pub calibration: CalibrationConstants,
    pub layout: Layout,
    pub emit: EmitFlags,
    pub strip_gutenberg: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.emit.any() {
            return Err(Error::InvalidConfig("no artifact requested".into()));
        }
        if self.layout.sections == 0 || self.layout.subsections == 0 {
            return Err(Error::InvalidConfig(
                "sections and subsections must be at least 1".into(),
            ));
        }
        self.calibration.validate()
    }

    /// `<stem><suffix>`, e.g. `out/peter` + `.mid`.
    pub fn artifact_path(&self, suffix: &str) -> PathBuf {
        let mut s = self.output_stem.clone().into_os_string();
        s.push(suffix);
        PathBuf::from(s)
    }
}

/// Document written by `calibrate`; `generate --calibration` reads its
/// `calibration` field.
#[derive(Debug, Clone, Serialize)]
pub struct CalibrationFile {
    pub calibration: CalibrationConstants,
    pub novels: Vec<ReportRow>,
}

pub fn load_calibration(path: &Path) -> Result<CalibrationConstants> {
    #[derive(Deserialize)]
    struct Header {
        calibration: CalibrationConstants,
    }
    let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let header: Header = serde_json::from_str(&raw)?;
    Ok(header.calibration)
}

impl GenerateArgs {
    pub fn into_config(self) -> Result<RunConfig> {
        let mut calibration = match &self.calibration {
            Some(path) => load_calibration(path)?,
            None => CalibrationConstants::default(),
        };
        let overrides = [
            (self.js_min, &mut calibration.js_min),
            (self.js_max, &mut calibration.js_max),
            (self.act_min, &mut calibration.act_min),
            (self.act_max, &mut calibration.act_max),
        ];
        for (value, slot) in overrides {
            if let Some(v) = value {
                *slot = v;
            }
        }
        let mut emit = EmitFlags {
            midi: self.emit_midi,
            tokens: self.emit_tokens,
            profile: self.emit_profile,
            spec: self.emit_spec,
        };
        if !emit.any() {
            emit.midi = true;
            emit.tokens = true;
        }
        Ok(RunConfig {
            input: self.input,
            lexicon: self.text.lexicon,
            output_stem: self.out,
            calibration,
            layout: Layout {
                sections: self.text.sections,
                subsections: self.text.subsections,
            },
            emit,
            strip_gutenberg: self.text.strip_gutenberg,
        })
    }
}

fn load_input(path: &Path, strip: bool) -> Result<String> {
    let raw = read_text_lossy(path)?;
    Ok(if strip {
        strip_gutenberg(&raw).to_owned()
    } else {
        raw
    })
}

/// What a successful `generate` produced.
#[derive(Debug, Clone)]
pub struct GenerateSummary {
    pub line: String,
    pub written: Vec<PathBuf>,
}

pub fn cmd_generate(config: &RunConfig) -> Result<GenerateSummary> {
    config.validate()?;
    let lex = AffectLexicon::load(&config.lexicon)?;
    let raw = load_input(&config.input, config.strip_gutenberg)?;
    let analysis = Analysis::new(&raw, &lex, config.layout)?;
    let piece = analysis.compose(&config.calibration, Execution::default())?;

    // Render everything before touching the filesystem.
    let mut artifacts: Vec<(PathBuf, Vec<u8>)> = Vec::new();
    if config.emit.midi {
        artifacts.push((config.artifact_path(".mid"), emit_midi(&piece).into_bytes()));
    }
    if config.emit.tokens {
        let mut line = emit_tokens(&piece).into_string();
        line.push('\n');
        artifacts.push((config.artifact_path(".jfugue"), line.into_bytes()));
    }
    if config.emit.profile {
        let json = analysis.profile.to_json()? + "\n";
        artifacts.push((config.artifact_path(".profile.json"), json.into_bytes()));
    }
    if config.emit.spec {
        let json = piece.to_json()? + "\n";
        artifacts.push((config.artifact_path(".piece.json"), json.into_bytes()));
    }

    let mut written = Vec::new();
    for (path, bytes) in artifacts {
        if let Err(e) = std::fs::write(&path, bytes) {
            for done in &written {
                let _ = std::fs::remove_file(done);
            }
            return Err(Error::io(path, e));
        }
        written.push(path);
    }

    let (e1, e2) = analysis.profile.top_emotions;
    let octaves: Vec<String> = piece
        .melodies
        .iter()
        .map(|m| m.octave.to_string())
        .collect();
    let line = format!(
        "{}: key {}, tempo {}, octaves {}, emotions {}/{}",
        config.input.display(),
        piece.key,
        piece.tempo,
        octaves.join("/"),
        e1,
        e2
    );
    Ok(GenerateSummary { line, written })
}

pub fn cmd_profile(args: &ProfileArgs) -> Result<String> {
    let lex = AffectLexicon::load(&args.text.lexicon)?;
    let raw = load_input(&args.input, args.text.strip_gutenberg)?;
    let layout = Layout {
        sections: args.text.sections,
        subsections: args.text.subsections,
    };
    Analysis::new(&raw, &lex, layout)?.profile.to_json()
}

/// Result of a calibration run, plus the inputs that could not be used.
#[derive(Debug)]
pub struct CalibrationRun {
    pub file: CalibrationFile,
    pub failures: Vec<(PathBuf, Error)>,
}

pub fn calibrate_files(
    inputs: &[PathBuf],
    lexicon: &Path,
    layout: Layout,
    strip: bool,
    exec: Execution,
) -> Result<CalibrationRun> {
    if inputs.len() < 2 {
        return Err(Error::InsufficientCorpus(inputs.len()));
    }
    let lex = AffectLexicon::load(lexicon)?;
    let results = exec.map(inputs, |path| {
        load_input(path, strip).and_then(|raw| Analysis::new(&raw, &lex, layout))
    });

    let mut ok = Vec::new();
    let mut failures = Vec::new();
    for (path, result) in inputs.iter().zip(results) {
        match result {
            Ok(a) => ok.push((path, a)),
            Err(e) => failures.push((path.clone(), e)),
        }
    }
    if ok.is_empty() {
        return Err(Error::InsufficientCorpus(0));
    }

    let profiles: Vec<_> = ok.iter().map(|(_, a)| &a.profile).collect();
    let calibration = corpus::calibrate(&profiles)?;
    let novels = ok
        .iter()
        .map(|(path, a)| {
            let title = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            ReportRow::new(title, &a.profile, &calibration)
        })
        .collect();
    Ok(CalibrationRun {
        file: CalibrationFile {
            calibration,
            novels,
        },
        failures,
    })
}

pub fn cmd_calibrate(args: &CalibrateArgs) -> Result<CalibrationRun> {
    let layout = Layout {
        sections: args.text.sections,
        subsections: args.text.subsections,
    };
    let run = calibrate_files(
        &args.inputs,
        &args.text.lexicon,
        layout,
        args.text.strip_gutenberg,
        Execution::default(),
    )?;
    let json = serde_json::to_string_pretty(&run.file)? + "\n";
    std::fs::write(&args.out, json).map_err(|e| Error::io(&args.out, e))?;
    if let Some(report) = &args.report {
        std::fs::write(report, corpus::report_tsv(&run.file.novels))
            .map_err(|e| Error::io(report, e))?;
    }
    Ok(run)
}

/// Run a parsed command line, printing results; returns the process exit status.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Generate(args) => args
            .into_config()
            .and_then(|config| cmd_generate(&config))
            .map(|summary| println!("{}", summary.line)),
        Command::Profile(args) => cmd_profile(&args).map(|json| println!("{json}")),
        Command::Calibrate(args) => cmd_calibrate(&args).map(|run| {
            for (path, err) in &run.failures {
                eprintln!("skipped {}: {err}", path.display());
            }
            print!("{}", corpus::report_tsv(&run.file.novels));
        }),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
