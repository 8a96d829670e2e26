//! Sieve-driven range search: classify every prime in a range as Lerch /
//! Wilson / Wilson-Lerch candidate with near-miss residues, stream the
//! records in ascending order, and checkpoint for kill-and-resume.
//!
//! Work is partitioned into contiguous prime chunks consumed by a worker
//! pool; a single ordered merger owns output and checkpointing, so two
//! runs with different thread counts produce byte-identical record
//! streams.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::congruences::{CheckContext, CheckRequest, CongruenceId, MethodChoice};
use crate::error::{Error, Result};
use crate::quotients::QuotientBundle;

const CHECKPOINT_SCHEMA: u32 = 1;
const CHECKPOINT_EVERY_RECORDS: u64 = 100;
const CHECKPOINT_EVERY: Duration = Duration::from_secs(5);

/// Deterministic trial division; the oracle the sieve is tested against
/// and the validator the CLI uses for single-prime arguments.
pub fn trial_division_is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes in [lo, hi], ascending, via a segmented sieve with bounded
/// memory.
pub fn sieve(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo < 2 || lo > hi {
        return Err(Error::RangeInvalid { lo, hi });
    }
    let root = (hi as f64).sqrt() as u64 + 2;
    // base primes by a simple sieve up to sqrt(hi)
    let mut base_mark = vec![false; (root + 1) as usize];
    let mut base = Vec::new();
    for n in 2..=root {
        if !base_mark[n as usize] {
            base.push(n);
            let mut m = n * n;
            while m <= root {
                base_mark[m as usize] = true;
                m += n;
            }
        }
    }
    let mut out = Vec::new();
    const SEGMENT: u64 = 1 << 18;
    let mut seg_lo = lo;
    while seg_lo <= hi {
        let seg_hi = seg_lo.saturating_add(SEGMENT - 1).min(hi);
        let len = (seg_hi - seg_lo + 1) as usize;
        let mut mark = vec![false; len];
        for &p in &base {
            if p * p > seg_hi {
                break;
            }
            let mut m = seg_lo.div_ceil(p).max(2) * p;
            while m <= seg_hi {
                mark[(m - seg_lo) as usize] = true;
                m += p;
            }
        }
        for (i, &composite) in mark.iter().enumerate() {
            let n = seg_lo + i as u64;
            if !composite && n >= 2 {
                out.push(n);
            }
        }
        if seg_hi == u64::MAX {
            break;
        }
        seg_lo = seg_hi + 1;
    }
    Ok(out)
}

/// Per-prime classification emitted by the range search. Field order is
/// the wire order of the JSONL output.
#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub p: u64,
    pub lerch_residue: Option<u64>,
    pub is_lerch: Option<bool>,
    pub wilson_residue: u64,
    pub is_wilson: bool,
    pub c20: Option<bool>,
    pub method: &'static str,
}

/// Classify one prime. For p = 2 the Lerch fields are not applicable and
/// are emitted as null; the Wilson quotient W_2 = 1 is still reported.
/// The Wilson-Lerch verdict is filled only when the exact context covers
/// the prime; it is never guessed.
pub fn classify(p: u64, exact: Option<&CheckContext>) -> SearchRecord {
    if p == 2 {
        return SearchRecord {
            p,
            lerch_residue: None,
            is_lerch: None,
            wilson_residue: 1, // W_2 = (1! + 1)/2 = 1
            is_wilson: false,
            c20: None,
            method: "direct",
        };
    }
    let bundle = QuotientBundle::compute(p, 2).expect("sieve yields odd primes");
    let lerch = bundle
        .lerch_residue
        .to_u64()
        .expect("residue mod p fits u64");
    let wilson = bundle
        .wilson
        .reduce_to(1)
        .expect("exponent shrinks")
        .to_u64()
        .expect("residue mod p fits u64");
    let c20 = exact
        .filter(|ctx| p <= ctx.p_exact())
        .map(|ctx| {
            ctx.check(&CheckRequest {
                id: CongruenceId::C20,
                p,
                m: None,
                method: MethodChoice::ExactBernoulli,
            })
            .expect("exact route covers this prime")
            .holds
            .expect("applicable for odd primes")
        });
    SearchRecord {
        p,
        lerch_residue: Some(lerch),
        is_lerch: Some(lerch == 0),
        wilson_residue: wilson,
        is_wilson: wilson == 0,
        c20,
        method: if c20.is_some() {
            "direct+exact-bernoulli"
        } else {
            "direct"
        },
    }
}

/// Record stream encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl OutputFormat {
    pub fn header(&self) -> Option<&'static str> {
        match self {
            OutputFormat::Csv => {
                Some("p,lerch_residue,is_lerch,wilson_residue,is_wilson,c20,method")
            }
            _ => None,
        }
    }
}

fn opt_str<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

fn write_record(w: &mut dyn Write, rec: &SearchRecord, format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *w, rec)?;
            w.write_all(b"\n")?;
        }
        OutputFormat::Csv => {
            writeln!(
                w,
                "{},{},{},{},{},{},{}",
                rec.p,
                opt_str(&rec.lerch_residue),
                opt_str(&rec.is_lerch),
                rec.wilson_residue,
                rec.is_wilson,
                opt_str(&rec.c20),
                rec.method
            )?;
        }
        OutputFormat::Text => {
            writeln!(
                w,
                "p={} lerch_residue={} is_lerch={} wilson_residue={} is_wilson={} c20={} method={}",
                rec.p,
                rec.lerch_residue.map_or("-".into(), |v| v.to_string()),
                rec.is_lerch.map_or("-".into(), |v| v.to_string()),
                rec.wilson_residue,
                rec.is_wilson,
                rec.c20.map_or("-".into(), |v| v.to_string()),
                rec.method
            )?;
        }
    }
    Ok(())
}

/// Durable progress marker; written atomically (temp file then rename).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Checkpoint {
    pub schema_version: u32,
    pub range_lo: u64,
    pub range_hi: u64,
    pub next_prime: u64,
    pub found_lerch: Vec<u64>,
    pub found_wilson: Vec<u64>,
    pub found_c20: Vec<u64>,
    pub records_emitted: u64,
}

fn write_checkpoint(path: &Path, cp: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("cp-tmp");
    fs::write(&tmp, serde_json::to_vec_pretty(cp)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn load_checkpoint(path: &Path) -> Result<Option<Checkpoint>> {
    if !path.exists() {
        return Ok(None);
    }
    let data = fs::read(path)?;
    Ok(Some(serde_json::from_slice(&data)?))
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub threads: usize,
    /// Contiguous primes handed to a worker at a time.
    pub chunk_size: usize,
    pub checkpoint_path: Option<PathBuf>,
    pub out_path: Option<PathBuf>,
    pub format: OutputFormat,
    pub emit_near_miss_histogram: bool,
    /// Exact-Bernoulli capability threshold for the Wilson-Lerch verdict;
    /// 0 disables it.
    pub p_exact: u64,
    /// Stop cleanly (with a checkpoint) after this many records; used to
    /// exercise resume.
    pub max_records: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            threads: 1,
            chunk_size: 64,
            checkpoint_path: None,
            out_path: None,
            format: OutputFormat::Json,
            emit_near_miss_histogram: false,
            p_exact: 499,
            max_records: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchSummary {
    pub range_lo: u64,
    pub range_hi: u64,
    /// Records emitted across all sessions (resumed counts included).
    pub records_total: u64,
    /// Records emitted by this session.
    pub records_this_session: u64,
    pub found_lerch: Vec<u64>,
    pub found_wilson: Vec<u64>,
    pub found_c20: Vec<u64>,
    /// Distribution of the Lerch residue over this session's records.
    pub histogram: Option<BTreeMap<u64, u64>>,
    pub stopped_early: bool,
    pub elapsed: Duration,
}

enum Sink<'a> {
    File(BufWriter<File>),
    Stream(&'a mut dyn Write),
    Null,
}

impl Sink<'_> {
    fn writer(&mut self) -> Option<&mut dyn Write> {
        match self {
            Sink::File(f) => Some(f),
            Sink::Stream(w) => Some(*w),
            Sink::Null => None,
        }
    }

    fn flush(&mut self) -> Result<()> {
        if let Some(w) = self.writer() {
            w.flush()?;
        }
        Ok(())
    }
}

/// Byte offset just past the n-th newline, or None if fewer lines exist.
fn offset_after_lines(data: &[u8], n: u64) -> Option<u64> {
    if n == 0 {
        return Some(0);
    }
    let mut seen = 0u64;
    for (i, &b) in data.iter().enumerate() {
        if b == b'\n' {
            seen += 1;
            if seen == n {
                return Some(i as u64 + 1);
            }
        }
    }
    None
}

/// Open the record file for a (possibly resumed) run. On resume the file
/// is truncated back to exactly the checkpointed record count so that a
/// crash after the last checkpoint cannot leave duplicate lines.
fn open_record_file(
    path: &Path,
    format: OutputFormat,
    emitted_before: u64,
) -> Result<BufWriter<File>> {
    let header_lines = u64::from(format.header().is_some());
    if emitted_before > 0 && path.exists() {
        let mut file = OpenOptions::new().read(true).write(true).open(path)?;
        let mut data = Vec::new();
        file.read_to_end(&mut data)?;
        let keep = offset_after_lines(&data, header_lines + emitted_before).ok_or_else(|| {
            Error::CheckpointMismatch(format!(
                "output file {} has fewer lines than the checkpoint records ({})",
                path.display(),
                emitted_before
            ))
        })?;
        file.set_len(keep)?;
        file.seek(SeekFrom::End(0))?;
        return Ok(BufWriter::new(file));
    }
    let mut file = BufWriter::new(File::create(path)?);
    if emitted_before == 0 {
        if let Some(h) = format.header() {
            writeln!(file, "{h}")?;
        }
    }
    Ok(file)
}

/// Classify every prime in [lo, hi], streaming records in ascending order
/// regardless of worker completion order. `sink` receives the record
/// stream when no output path is configured.
pub fn search_range(
    lo: u64,
    hi: u64,
    opts: &SearchOptions,
    sink: Option<&mut dyn Write>,
) -> Result<SearchSummary> {
    let started = Instant::now();
    let primes = sieve(lo, hi)?;

    let mut found_lerch: Vec<u64> = Vec::new();
    let mut found_wilson: Vec<u64> = Vec::new();
    let mut found_c20: Vec<u64> = Vec::new();
    let mut emitted_before = 0u64;
    let mut next_prime = lo;
    if let Some(cp_path) = &opts.checkpoint_path {
        if let Some(cp) = load_checkpoint(cp_path)? {
            if cp.schema_version != CHECKPOINT_SCHEMA {
                return Err(Error::CheckpointMismatch(format!(
                    "schema version {} (expected {CHECKPOINT_SCHEMA})",
                    cp.schema_version
                )));
            }
            if cp.range_lo != lo || cp.range_hi != hi {
                return Err(Error::CheckpointMismatch(format!(
                    "checkpoint covers [{}, {}], requested [{lo}, {hi}]",
                    cp.range_lo, cp.range_hi
                )));
            }
            found_lerch = cp.found_lerch;
            found_wilson = cp.found_wilson;
            found_c20 = cp.found_c20;
            emitted_before = cp.records_emitted;
            next_prime = cp.next_prime;
        }
    }

    let mut out = match (&opts.out_path, sink) {
        (Some(path), _) => Sink::File(open_record_file(path, opts.format, emitted_before)?),
        (None, Some(w)) => {
            if emitted_before == 0 {
                if let Some(h) = opts.format.header() {
                    writeln!(w, "{h}")?;
                }
            }
            Sink::Stream(w)
        }
        (None, None) => Sink::Null,
    };

    let exact_ctx = (opts.p_exact >= 3).then(|| CheckContext::new(opts.p_exact));
    let todo: Vec<u64> = primes.into_iter().filter(|&p| p >= next_prime).collect();
    let chunks: Vec<&[u64]> = todo.chunks(opts.chunk_size.max(1)).collect();

    let next_chunk = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<(usize, Vec<SearchRecord>)>();

    let mut histogram: Option<BTreeMap<u64, u64>> =
        opts.emit_near_miss_histogram.then(BTreeMap::new);
    let mut emitted_session = 0u64;
    let mut since_checkpoint = 0u64;
    let mut last_checkpoint = Instant::now();
    let mut stopped_early = false;
    let mut last_emitted_prime: Option<u64> = None;

    let workers = opts.threads.max(1);
    let result: Result<()> = thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let next_chunk = &next_chunk;
            let stop = &stop;
            let chunks = &chunks;
            let ctx = exact_ctx.as_ref();
            scope.spawn(move || loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let i = next_chunk.fetch_add(1, Ordering::Relaxed);
                if i >= chunks.len() {
                    break;
                }
                let recs: Vec<SearchRecord> =
                    chunks[i].iter().map(|&p| classify(p, ctx)).collect();
                if tx.send((i, recs)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending: BTreeMap<usize, Vec<SearchRecord>> = BTreeMap::new();
        let mut next_emit = 0usize;
        'recv: for (idx, recs) in rx {
            pending.insert(idx, recs);
            while let Some(recs) = pending.remove(&next_emit) {
                next_emit += 1;
                for rec in recs {
                    if let Some(w) = out.writer() {
                        write_record(w, &rec, opts.format)?;
                    }
                    if rec.is_lerch == Some(true) {
                        found_lerch.push(rec.p);
                    }
                    if rec.is_wilson {
                        found_wilson.push(rec.p);
                    }
                    if rec.c20 == Some(true) {
                        found_c20.push(rec.p);
                    }
                    if let (Some(h), Some(res)) = (histogram.as_mut(), rec.lerch_residue) {
                        *h.entry(res).or_insert(0) += 1;
                    }
                    emitted_session += 1;
                    since_checkpoint += 1;
                    last_emitted_prime = Some(rec.p);

                    let reached_cap = opts
                        .max_records
                        .is_some_and(|cap| emitted_session >= cap);
                    let due = since_checkpoint >= CHECKPOINT_EVERY_RECORDS
                        || last_checkpoint.elapsed() >= CHECKPOINT_EVERY;
                    if let Some(cp_path) = opts.checkpoint_path.as_ref().filter(|_| due || reached_cap) {
                        out.flush()?;
                        write_checkpoint(
                            cp_path,
                            &Checkpoint {
                                schema_version: CHECKPOINT_SCHEMA,
                                range_lo: lo,
                                range_hi: hi,
                                next_prime: rec.p + 1,
                                found_lerch: found_lerch.clone(),
                                found_wilson: found_wilson.clone(),
                                found_c20: found_c20.clone(),
                                records_emitted: emitted_before + emitted_session,
                            },
                        )?;
                        since_checkpoint = 0;
                        last_checkpoint = Instant::now();
                    }
                    if reached_cap {
                        stop.store(true, Ordering::Relaxed);
                        stopped_early = true;
                        break 'recv;
                    }
                }
            }
        }
        Ok(())
    });
    result?;

    out.flush()?;
    if let Some(cp_path) = &opts.checkpoint_path {
        let next = if stopped_early {
            last_emitted_prime.map_or(next_prime, |p| p + 1)
        } else {
            hi.saturating_add(1)
        };
        write_checkpoint(
            cp_path,
            &Checkpoint {
                schema_version: CHECKPOINT_SCHEMA,
                range_lo: lo,
                range_hi: hi,
                next_prime: next,
                found_lerch: found_lerch.clone(),
                found_wilson: found_wilson.clone(),
                found_c20: found_c20.clone(),
                records_emitted: emitted_before + emitted_session,
            },
        )?;
    }

    Ok(SearchSummary {
        range_lo: lo,
        range_hi: hi,
        records_total: emitted_before + emitted_session,
        records_this_session: emitted_session,
        found_lerch,
        found_wilson,
        found_c20,
        histogram,
        stopped_early,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve(2, 10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(sieve(100, 110).unwrap(), vec![101, 103, 107, 109]);
        assert!(sieve(14, 16).unwrap().is_empty());
        assert!(matches!(sieve(1, 10), Err(Error::RangeInvalid { .. })));
        assert!(matches!(sieve(10, 5), Err(Error::RangeInvalid { .. })));
    }

    #[test]
    fn sieve_matches_trial_division_on_random_ranges() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let lo = rng.gen_range(2u64..50_000);
            let hi = lo + rng.gen_range(0u64..2_000);
            let got = sieve(lo, hi).unwrap();
            let expect: Vec<u64> = (lo..=hi).filter(|&n| trial_division_is_prime(n)).collect();
            assert_eq!(got, expect, "range [{lo}, {hi}]");
        }
    }

    #[test]
    fn classify_examples() {
        let ctx = CheckContext::new(499);
        let r3 = classify(3, Some(&ctx));
        assert_eq!(r3.is_lerch, Some(true));
        assert!(!r3.is_wilson); // W_3 = 1

        let r5 = classify(5, Some(&ctx));
        assert!(r5.is_wilson);
        assert_eq!(r5.is_lerch, Some(false));
        assert_eq!(r5.lerch_residue, Some(3));
        assert_eq!(r5.c20, Some(true)); // B_8 = B_4 exactly
        assert_eq!(r5.method, "direct+exact-bernoulli");

        let r839 = classify(839, None);
        assert_eq!(r839.is_lerch, Some(true));
        assert_eq!(r839.c20, None);
        assert_eq!(r839.method, "direct");

        let r2 = classify(2, Some(&ctx));
        assert_eq!(r2.lerch_residue, None);
        assert_eq!(r2.is_lerch, None);
        assert_eq!(r2.wilson_residue, 1);
        assert!(!r2.is_wilson);
    }

    #[test]
    fn search_small_range_finds_known_lists() {
        let opts = SearchOptions {
            p_exact: 499,
            emit_near_miss_histogram: true,
            ..Default::default()
        };
        let summary = search_range(2, 1000, &opts, None).unwrap();
        assert_eq!(summary.found_lerch, vec![3, 103, 839]);
        assert_eq!(summary.found_wilson, vec![5, 13, 563]);
        assert!(summary.found_c20.contains(&5));
        let hist = summary.histogram.unwrap();
        // residue 0 appears exactly for the Lerch primes
        assert_eq!(hist.get(&0), Some(&3));
    }

    fn run_to_file(
        lo: u64,
        hi: u64,
        threads: usize,
        dir: &Path,
        tag: &str,
        format: OutputFormat,
    ) -> (PathBuf, SearchSummary) {
        let out = dir.join(format!("records-{tag}.out"));
        let opts = SearchOptions {
            threads,
            out_path: Some(out.clone()),
            format,
            p_exact: 100,
            ..Default::default()
        };
        let summary = search_range(lo, hi, &opts, None).unwrap();
        (out, summary)
    }

    #[test]
    fn thread_count_does_not_change_output_bytes() {
        let dir = tempfile::tempdir().unwrap();
        let (a, _) = run_to_file(2, 2000, 1, dir.path(), "t1", OutputFormat::Json);
        let (b, _) = run_to_file(2, 2000, 4, dir.path(), "t4", OutputFormat::Json);
        let (c, _) = run_to_file(2, 2000, 7, dir.path(), "t7", OutputFormat::Csv);
        let (d, _) = run_to_file(2, 2000, 2, dir.path(), "t2", OutputFormat::Csv);
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
        assert_eq!(fs::read(&c).unwrap(), fs::read(&d).unwrap());
    }

    #[test]
    fn resume_reproduces_uninterrupted_stream() {
        let dir = tempfile::tempdir().unwrap();
        let (full, _) = run_to_file(2, 1500, 3, dir.path(), "full", OutputFormat::Json);

        let out = dir.path().join("records-resumed.out");
        let cp = dir.path().join("resume.checkpoint");
        let base = SearchOptions {
            threads: 2,
            out_path: Some(out.clone()),
            checkpoint_path: Some(cp.clone()),
            p_exact: 100,
            ..Default::default()
        };
        let first = SearchOptions {
            max_records: Some(57),
            ..base.clone()
        };
        let s1 = search_range(2, 1500, &first, None).unwrap();
        assert!(s1.stopped_early);
        assert_eq!(s1.records_this_session, 57);

        // Simulate a crash after the checkpoint: the dying process managed
        // to write extra lines that the checkpoint does not cover.
        {
            let mut f = OpenOptions::new().append(true).open(&out).unwrap();
            writeln!(f, "{{\"p\":999999}}").unwrap();
        }

        let s2 = search_range(2, 1500, &base, None).unwrap();
        assert!(!s2.stopped_early);
        assert_eq!(fs::read(&full).unwrap(), fs::read(&out).unwrap());
        assert_eq!(s2.found_lerch, vec![3, 103, 839]);
        assert_eq!(s2.found_wilson, vec![5, 13, 563]);

        // The final checkpoint marks the range as done.
        let done = load_checkpoint(&cp).unwrap().unwrap();
        assert_eq!(done.next_prime, 1501);
        assert_eq!(done.records_emitted, s2.records_total);
    }

    #[test]
    fn checkpoint_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cp = dir.path().join("mismatch.checkpoint");
        let opts = SearchOptions {
            checkpoint_path: Some(cp.clone()),
            p_exact: 0,
            ..Default::default()
        };
        search_range(2, 100, &opts, None).unwrap();
        assert!(matches!(
            search_range(2, 200, &opts, None),
            Err(Error::CheckpointMismatch(_))
        ));
    }

    #[test]
    fn csv_resume_keeps_single_header() {
        let dir = tempfile::tempdir().unwrap();
        let (full, _) = run_to_file(2, 300, 1, dir.path(), "csvfull", OutputFormat::Csv);
        let out = dir.path().join("csv-resumed.out");
        let cp = dir.path().join("csv.checkpoint");
        let base = SearchOptions {
            out_path: Some(out.clone()),
            checkpoint_path: Some(cp),
            format: OutputFormat::Csv,
            p_exact: 100,
            ..Default::default()
        };
        let first = SearchOptions {
            max_records: Some(20),
            ..base.clone()
        };
        search_range(2, 300, &first, None).unwrap();
        search_range(2, 300, &base, None).unwrap();
        assert_eq!(fs::read(&full).unwrap(), fs::read(&out).unwrap());
    }

    #[test]
    fn classification_agrees_with_registry_verdicts() {
        let ctx = CheckContext::new(499);
        for p in sieve(3, 499).unwrap() {
            let rec = classify(p, Some(&ctx));
            let c07 = ctx
                .check(&CheckRequest::auto(CongruenceId::C07, p))
                .unwrap()
                .holds
                .unwrap();
            let c02 = ctx
                .check(&CheckRequest {
                    id: CongruenceId::C02,
                    p,
                    m: None,
                    method: MethodChoice::ExactBernoulli,
                })
                .unwrap()
                .holds
                .unwrap();
            assert_eq!(rec.is_lerch, Some(c07), "Lerch flag at p = {p}");
            assert_eq!(rec.is_wilson, c02, "Wilson flag at p = {p}");
        }
    }

    #[test]
    fn record_json_shape_is_stable() {
        let rec = classify(103, None);
        let line = serde_json::to_string(&rec).unwrap();
        assert!(line.starts_with("{\"p\":103,\"lerch_residue\":0,\"is_lerch\":true,"));
        assert!(line.contains("\"c20\":null"));
        let rec2 = classify(2, None);
        let line2 = serde_json::to_string(&rec2).unwrap();
        assert!(line2.contains("\"lerch_residue\":null"));
    }
}
