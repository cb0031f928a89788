//! Driving shards to completion: result and checkpoint files, budgets,
//! resumption, and classification of the emitted bases.

use std::collections::BTreeSet;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use rayon::prelude::*;

use super::enumerate::{enumerate_standard_bases, SearchStats, ShardPlan};
use crate::algebra::Semifield;
use crate::classify::{classify_collection, Classification, IsotopyClasses, Stages};
use crate::cube::{format_record, parse_record, StandardBasis};
use crate::error::{Error, Result};

pub const DEFAULT_SHARDS: usize = 64;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Digits of `enc(A_3)` fixed per shard; `None` picks enough for
    /// [`DEFAULT_SHARDS`] shards, independently of the thread count.
    pub prefix_len: Option<usize>,
    /// `(K, i)`: run only the shards with index `≡ i (mod K)`.
    pub selection: Option<(usize, usize)>,
    /// Maximum number of shards to process in this call.
    pub budget: Option<usize>,
    pub results: Option<PathBuf>,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
    pub stages: Stages,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            prefix_len: None,
            selection: None,
            budget: None,
            results: None,
            checkpoint: None,
            resume: false,
            stages: Stages::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub plan_len: usize,
    pub selected: usize,
    /// Selected shards finished, including those from earlier runs.
    pub completed: usize,
    /// Counters for the shards processed by this call.
    pub stats: SearchStats,
}

impl RunReport {
    pub fn is_complete(&self) -> bool {
        self.completed == self.selected
    }
}

pub struct SearchOutcome {
    pub run: RunReport,
    /// Present once every shard of the plan is done.
    pub classification: Option<Classification>,
    /// Isotopy classes among the emitted bases, before S₃-expansion.
    pub found_classes: Option<usize>,
}

fn header(plan: &ShardPlan, selection: (usize, usize)) -> String {
    format!(
        "semiforge-checkpoint p={} n={} prefix={} shards={} select={}/{}",
        plan.field.p(),
        plan.n,
        plan.prefix_len,
        plan.len(),
        selection.1,
        selection.0
    )
}

/// Finished shard indices and the results length after the last of them.
fn read_checkpoint(text: &str, expected_header: &str) -> Result<(BTreeSet<usize>, u64)> {
    let mut lines = text.lines();
    if lines.next() != Some(expected_header) {
        return Err(Error::Parse(format!(
            "checkpoint was written for a different plan (expected {expected_header:?})"
        )));
    }
    let mut done = BTreeSet::new();
    let mut len = 0;
    for (k, line) in lines.enumerate() {
        let bad = || Error::Parse(format!("checkpoint line {}: {line:?}", k + 2));
        let fields: Vec<&str> = line.split_whitespace().collect();
        let ["done", id, _prefix, bytes] = fields[..] else {
            return Err(bad());
        };
        done.insert(id.parse().map_err(|_| bad())?);
        len = bytes.parse().map_err(|_| bad())?;
    }
    Ok((done, len))
}

enum Sink {
    File(BufWriter<File>),
    Memory(String),
}

/// Runs the selected shards of `plan`, appending records to the results
/// file (or to memory) in shard order. Shards run in parallel in chunks of
/// one per thread; each chunk is written and checkpointed in order, so the
/// output does not depend on the thread count.
fn run_shards(plan: &ShardPlan, opts: &SearchOptions) -> Result<(RunReport, Option<String>)> {
    let (count, which) = opts.selection.unwrap_or((1, 0));
    let selection = plan.select(count, which)?;
    let head = header(plan, (count, which));
    if opts.checkpoint.is_some() && opts.results.is_none() {
        return Err(Error::Shape("a checkpoint needs a results file".into()));
    }

    let mut done = BTreeSet::new();
    let mut length = 0u64;
    let mut checkpoint = None;
    if let Some(path) = &opts.checkpoint {
        if opts.resume && path.exists() {
            (done, length) = read_checkpoint(&fs::read_to_string(path)?, &head)?;
            checkpoint = Some(OpenOptions::new().append(true).open(path)?);
        } else {
            let mut f = File::create(path)?;
            writeln!(f, "{head}")?;
            checkpoint = Some(f);
        }
    }
    let mut sink = match &opts.results {
        Some(path) => {
            let resuming = opts.resume && !done.is_empty();
            let f = OpenOptions::new()
                .create(true)
                .write(true)
                .truncate(!resuming)
                .open(path)?;
            if resuming {
                if f.metadata()?.len() < length {
                    return Err(Error::Parse(
                        "results file is shorter than the checkpoint".into(),
                    ));
                }
                // drop records of a shard that was cut off before its checkpoint line
                f.set_len(length)?;
            }
            let f = OpenOptions::new().append(true).open(path)?;
            Sink::File(BufWriter::new(f))
        }
        None => Sink::Memory(String::new()),
    };

    let pending: Vec<usize> = selection
        .iter()
        .copied()
        .filter(|s| !done.contains(s))
        .take(opts.budget.unwrap_or(usize::MAX))
        .collect();
    let mut stats = SearchStats::default();
    let chunk = rayon::current_num_threads().max(1);
    for ids in pending.chunks(chunk) {
        let outputs: Vec<Result<(String, SearchStats)>> = ids
            .par_iter()
            .map(|&id| {
                let shard = plan.shard(id);
                let mut text = String::new();
                let mut failure = None;
                let st = enumerate_standard_bases(plan, &shard, &mut |b: StandardBasis| {
                    match format_record(&b) {
                        Ok(line) => {
                            text.push_str(&line);
                            text.push('\n');
                        }
                        Err(e) => failure = Some(e),
                    }
                })?;
                match failure {
                    Some(e) => Err(e),
                    None => Ok((text, st)),
                }
            })
            .collect();
        for (&id, out) in ids.iter().zip(outputs) {
            let (text, st) = out?;
            stats.merge(st);
            length += text.len() as u64;
            match &mut sink {
                Sink::File(w) => {
                    w.write_all(text.as_bytes())?;
                    w.flush()?;
                }
                Sink::Memory(s) => s.push_str(&text),
            }
            if let Some(c) = &mut checkpoint {
                writeln!(c, "done {id} {} {length}", plan.shard(id).prefix_string())?;
                c.flush()?;
            }
            done.insert(id);
        }
    }
    let report = RunReport {
        plan_len: plan.len(),
        selected: selection.len(),
        completed: selection.iter().filter(|s| done.contains(s)).count(),
        stats,
    };
    let memory = match sink {
        Sink::Memory(s) => Some(s),
        Sink::File(_) => None,
    };
    Ok((report, memory))
}

/// Deduplicates `bases` by isotopy as they arrive, then classifies the
/// representatives. Memory stays proportional to the number of classes.
pub fn classify_bases(
    bases: impl IntoIterator<Item = Result<StandardBasis>>,
    stages: &Stages,
) -> Result<(Classification, usize)> {
    let mut classes = IsotopyClasses::new();
    for b in bases {
        classes.insert(Semifield::from_basis(b?)?)?;
    }
    let reps: Vec<StandardBasis> = classes
        .representatives()
        .map(|d| d.basis().clone())
        .collect();
    let labels: Vec<String> = (1..=reps.len()).map(|k| k.to_string()).collect();
    let found = reps.len();
    Ok((classify_collection(&reps, &labels, stages, true)?, found))
}

/// Parses result-file records, skipping blank lines.
pub fn read_results(text: &str) -> impl Iterator<Item = Result<StandardBasis>> + '_ {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_record)
}

/// Enumerates every standard basis of order `p^n` with `A_2` among
/// [`a2_candidates`](super::a2_candidates) and classifies the result.
///
/// With a budget, the call may stop early; rerunning with `resume` and the
/// same checkpoint continues where it stopped. Classification happens only
/// once every shard of the plan is done, so a partial selection yields a
/// result file and no classification.
pub fn full_classification(p: u8, n: usize, opts: &SearchOptions) -> Result<SearchOutcome> {
    let plan = match opts.prefix_len {
        Some(len) => ShardPlan::new(p, n, len)?,
        None => {
            ShardPlan::with_target(p, n, DEFAULT_SHARDS.max(opts.selection.map_or(1, |s| s.0)))?
        }
    };
    let (run, memory) = run_shards(&plan, opts)?;
    if !(run.is_complete() && run.selected == run.plan_len) {
        return Ok(SearchOutcome {
            run,
            classification: None,
            found_classes: None,
        });
    }
    let text = match (memory, &opts.results) {
        (Some(s), _) => s,
        (None, Some(path)) => fs::read_to_string(path)?,
        (None, None) => unreachable!("results go to memory without a file"),
    };
    let (classification, found) = classify_bases(read_results(&text), &opts.stages)?;
    Ok(SearchOutcome {
        run,
        classification: Some(classification),
        found_classes: Some(found),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_8_has_one_class() {
        let out = full_classification(2, 3, &SearchOptions::default()).unwrap();
        let c = out.classification.unwrap();
        assert_eq!(
            (c.isotopy_classes, c.s3_classes, out.found_classes),
            (1, 1, Some(1))
        );
        assert_eq!(c.records[0].nuclei.center, 8);
    }

    #[test]
    fn budget_and_resume_reproduce_the_full_run() {
        let dir = tempfile::tempdir().unwrap();
        let opts = |name: &str, budget, resume| SearchOptions {
            prefix_len: Some(2),
            budget,
            resume,
            results: Some(dir.path().join(format!("{name}.txt"))),
            checkpoint: Some(dir.path().join(format!("{name}.ckpt"))),
            stages: Stages::none(),
            ..Default::default()
        };
        let whole = full_classification(2, 3, &opts("whole", None, false)).unwrap();
        assert!(whole.classification.is_some());

        let first = full_classification(2, 3, &opts("split", Some(3), false)).unwrap();
        assert!(first.classification.is_none());
        assert_eq!(first.run.completed, 3);
        // simulate a shard cut off after writing records but before its checkpoint line
        let partial = dir.path().join("split.txt");
        let mut f = OpenOptions::new().append(true).open(&partial).unwrap();
        writeln!(f, "2 3 1 2").unwrap();
        drop(f);
        let rest = full_classification(2, 3, &opts("split", None, true)).unwrap();
        assert_eq!(rest.run.completed, rest.run.plan_len);
        assert!(rest.classification.is_some());

        let a = fs::read(dir.path().join("whole.txt")).unwrap();
        let b = fs::read(&partial).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }

    #[test]
    fn checkpoint_for_another_plan_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let mut o = SearchOptions {
            prefix_len: Some(1),
            budget: Some(1),
            results: Some(dir.path().join("r.txt")),
            checkpoint: Some(dir.path().join("c.txt")),
            stages: Stages::none(),
            ..Default::default()
        };
        full_classification(2, 3, &o).unwrap();
        o.prefix_len = Some(2);
        o.resume = true;
        assert!(full_classification(2, 3, &o).is_err());
    }
}
