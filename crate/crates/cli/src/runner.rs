//! Parallel certification campaigns.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::mpsc;
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use phylomatroid::case::{case_seed, certify_case, Mode};
use phylomatroid::{CaseDescriptor, CertifyOptions, ModelKind, ModelSpec};
use rayon::prelude::*;

use crate::records::{read_checkpoint, Journal, Record};

/// Model dimensions shared by all cases of a run; mixtures recur across
/// many cases.
#[derive(Default)]
pub struct DimensionCache {
    dims: Mutex<HashMap<(ModelKind, ModelSpec), usize>>,
}

impl DimensionCache {
    pub fn get(&self, kind: ModelKind, spec: &ModelSpec) -> Result<usize> {
        let key = (kind, spec.clone());
        if let Some(&d) = self.dims.lock().expect("cache lock").get(&key) {
            return Ok(d);
        }
        // Computed outside the lock; a duplicate computation is harmless.
        let d = spec.parameterization(kind)?.matroid().dimension();
        self.dims.lock().expect("cache lock").insert(key, d);
        Ok(d)
    }
}

pub struct Campaign {
    pub mode: Mode,
    pub opts: CertifyOptions,
    pub master_seed: u64,
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    pub verbose: bool,
}

impl Campaign {
    /// Certifies every case, in parallel, and returns the records in input
    /// order. Records found in the checkpoint are reused; new ones are
    /// appended to it by a single writer as they finish.
    pub fn run(&self, cases: &[CaseDescriptor]) -> Result<Vec<Record>> {
        let done = match &self.checkpoint {
            Some(p) => read_checkpoint(p)?,
            None => HashMap::new(),
        };
        let mut results: Vec<Option<Record>> = cases
            .iter()
            .map(|c| done.get(&(c.kind, c.id())).cloned())
            .collect();
        let pending: Vec<usize> = (0..cases.len()).filter(|&i| results[i].is_none()).collect();
        if self.verbose && pending.len() < cases.len() {
            eprintln!("resuming: {} of {} cases already done", cases.len() - pending.len(), cases.len());
        }
        let mut journal = self.checkpoint.as_deref().map(Journal::open).transpose()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .context("building the worker pool")?;
        let cache = DimensionCache::default();
        let (tx, rx) = mpsc::channel::<(usize, Result<Record>)>();
        let total = pending.len();

        std::thread::scope(|s| -> Result<()> {
            let writer = s.spawn(|| -> Result<()> {
                let mut first_error = None;
                for (finished, (i, r)) in rx.into_iter().enumerate() {
                    match r {
                        Ok(record) => {
                            if let Some(j) = journal.as_mut() {
                                j.append(&record)?;
                            }
                            if self.verbose {
                                let status = match &record {
                                    Record::Certificate(_) => "solved",
                                    Record::Unsolved(_) => "unsolved",
                                };
                                eprintln!("[{}/{total}] {status}: {}", finished + 1, cases[i]);
                            }
                            results[i] = Some(record);
                        }
                        Err(e) => {
                            eprintln!("error: {}: {e:#}", cases[i]);
                            first_error.get_or_insert(e);
                        }
                    }
                }
                first_error.map_or(Ok(()), Err)
            });
            pool.install(|| {
                pending.par_iter().for_each_with(tx, |tx, &i| {
                    let r = self.certify_one(&cases[i], &cache);
                    // The writer only stops early on a journal failure,
                    // which is reported below.
                    let _ = tx.send((i, r));
                });
            });
            writer.join().map_err(|_| anyhow!("writer thread panicked"))?
        })?;

        results
            .into_iter()
            .map(|r| r.ok_or_else(|| anyhow!("a case produced no record")))
            .collect()
    }

    fn certify_one(&self, case: &CaseDescriptor, cache: &DimensionCache) -> Result<Record> {
        let start = Instant::now();
        let dims = [cache.get(case.kind, &case.left)?, cache.get(case.kind, &case.right)?];
        let seed = case_seed(self.master_seed, &case.id());
        let report = certify_case(case, self.mode, &self.opts, seed, Some(dims))?;
        if self.verbose {
            eprintln!("{case}: dimensions {dims:?}, {:.2?}", start.elapsed());
        }
        Ok(Record::from_report(report))
    }
}
