//! Commands behind the `slspec` binary.

use std::path::{Path, PathBuf};

use slspec::instance::{parse_corpus, parse_instance};
use slspec::lattice::DEFAULT_MAX_ELEMENTS;
use slspec::report::{self, CorpusDocument, Report};
use slspec::theorems::corpus::{run_corpus, CorpusSpec};
use slspec::theorems::{select, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SIZE: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] slspec::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(slspec::Error::TooLarge { .. }) => EXIT_SIZE,
            _ => EXIT_USAGE,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Flags {
    pub json: bool,
    pub witnesses: bool,
    pub max_elements: usize,
    pub subset_cap: Option<usize>,
    pub seed: Option<u64>,
    pub over_z: bool,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { json: false, witnesses: false, max_elements: DEFAULT_MAX_ELEMENTS, subset_cap: None, seed: None, over_z: false }
    }
}

impl Flags {
    pub fn config(&self) -> VerifyConfig {
        let mut config = VerifyConfig::default();
        if let Some(cap) = self.subset_cap {
            config.subset_cap = cap;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        config
    }
}

pub fn cmd_analyze(text: &str, flags: &Flags) -> Result<Report, CliError> {
    let instance = parse_instance(text, flags.over_z)?;
    Ok(Report::Analyze(Box::new(report::analyze(&instance, flags.max_elements)?)))
}

pub fn cmd_verify(text: &str, ids: &[String], flags: &Flags) -> Result<Report, CliError> {
    let instance = parse_instance(text, flags.over_z)?;
    let entries = select(ids)?;
    Ok(Report::Verify(report::verify(&instance, &entries, &flags.config(), flags.max_elements)?))
}

/// Without a file, runs the built-in default corpus. `results: None` runs
/// the whole registry; an empty list runs nothing.
pub fn cmd_corpus(file: Option<&Path>, results: Option<Vec<String>>, flags: &Flags) -> Result<Report, CliError> {
    let mut spec = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
            let modules = parse_corpus(&text, flags.over_z)?.into_iter().map(|i| i.module).collect();
            CorpusSpec::from_instances(modules)
        }
        None => CorpusSpec::default_corpus(),
    };
    for m in spec.expand()? {
        m.check_size(flags.max_elements)?;
    }
    spec.results = results;
    spec.config = flags.config();
    let report = run_corpus(&spec)?;
    Ok(Report::Corpus(CorpusDocument { version: report::REPORT_VERSION.to_string(), config: spec.config, report }))
}

pub fn cmd_spec_dump(flags: &Flags) -> Report {
    Report::SpecDump(report::spec_dump(flags.max_elements))
}

/// The output text and exit code for a finished command.
pub fn render(mut report: Report, flags: &Flags) -> (String, i32) {
    let code = if report.failed() { EXIT_FAIL } else { EXIT_OK };
    if !flags.witnesses {
        report.strip_witnesses();
    }
    let out = if flags.json { report.to_json() } else { report.to_text() };
    (out, code)
}
