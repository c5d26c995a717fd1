//! Certificate files and checkpoint journals.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use phylomatroid::case::{CaseOutcome, CaseReport};
use phylomatroid::{Certificate, ModelKind};
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// A case that ran out of trials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Unsolved {
    pub model: ModelKind,
    pub case: String,
    pub seed: u64,
    pub dimensions: [usize; 2],
    pub trials: u64,
    pub candidates: u64,
    pub rejected: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub format_version: u32,
    pub tool_version: String,
    pub certificates: Vec<Certificate>,
    #[serde(default)]
    pub unsolved: Vec<Unsolved>,
}

impl CertificateFile {
    pub fn new(records: Vec<Record>) -> Self {
        let mut file = CertificateFile {
            format_version: FORMAT_VERSION,
            tool_version: TOOL_VERSION.to_string(),
            certificates: Vec::new(),
            unsolved: Vec::new(),
        };
        for r in records {
            match r {
                Record::Certificate(c) => file.certificates.push(c),
                Record::Unsolved(u) => file.unsolved.push(u),
            }
        }
        file
    }
}

/// One finished case, as journalled in a checkpoint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Record {
    Certificate(Certificate),
    Unsolved(Unsolved),
}

impl Record {
    pub fn from_report(report: CaseReport) -> Self {
        match report.outcome {
            CaseOutcome::Certified(c) => Record::Certificate(c),
            CaseOutcome::Unsolved(stats) => Record::Unsolved(Unsolved {
                model: report.case.kind,
                case: report.case.id(),
                seed: report.seed,
                dimensions: report.dimensions,
                trials: stats.trials,
                candidates: stats.candidates,
                rejected: stats.rejected,
            }),
        }
    }

    /// `(model, case id)`, the key used to resume.
    pub fn key(&self) -> Result<(ModelKind, String)> {
        Ok(match self {
            Record::Certificate(c) => (c.model, c.case_descriptor()?.id()),
            Record::Unsolved(u) => (u.model, u.case.clone()),
        })
    }
}

/// Finished cases of an earlier run. A torn final line (from an interrupted
/// write) is ignored; any other malformed line is an error.
pub fn read_checkpoint(path: &Path) -> Result<HashMap<(ModelKind, String), Record>> {
    let mut done = HashMap::new();
    if !path.exists() {
        return Ok(done);
    }
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let lines: Vec<String> = BufReader::new(file).lines().collect::<Result<_, _>>()?;
    let last = lines.len();
    for (i, line) in lines.iter().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<Record>(line) {
            Ok(r) => {
                done.insert(r.key()?, r);
            }
            Err(_) if i + 1 == last => {}
            Err(e) => bail!("{}:{}: {e}", path.display(), i + 1),
        }
    }
    Ok(done)
}

/// Append-only journal; each record is one flushed line.
pub struct Journal {
    file: File,
}

impl Journal {
    pub fn open(path: &Path) -> Result<Self> {
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening {}", path.display()))?;
        Ok(Journal { file })
    }

    pub fn append(&mut self, record: &Record) -> Result<()> {
        let mut line = serde_json::to_string(record)?;
        line.push('\n');
        self.file.write_all(line.as_bytes())?;
        self.file.flush()?;
        Ok(())
    }
}

/// A certificate file, or a single certificate such as a stored fixture.
pub fn read_certificates(path: &Path) -> Result<Vec<Certificate>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("{}: not JSON", path.display()))?;
    // Parse the text again, not the value, to keep line numbers in errors.
    if value.get("certificates").is_some() {
        let file: CertificateFile = serde_json::from_str(&text)
            .with_context(|| format!("{}: malformed certificate file", path.display()))?;
        if file.format_version != FORMAT_VERSION {
            bail!("{}: unsupported format version {}", path.display(), file.format_version);
        }
        Ok(file.certificates)
    } else {
        let cert: Certificate = serde_json::from_str(&text)
            .with_context(|| format!("{}: malformed certificate", path.display()))?;
        Ok(vec![cert])
    }
}
