//! Multi-threaded drivers. Work is split by index and merged by index, so
//! output never depends on the thread count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Instant;

use compseq_core::search::{anneal_pair, finish_search, scan_range, AnnealConfig, AnnealResult, SearchConfig, SearchResult};
use compseq_core::{Alphabet, Error};

pub fn default_jobs() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

/// Exhaustive search with the Gray-rank range cut into chunks.
pub fn parallel_search(cfg: &SearchConfig, jobs: usize) -> Result<SearchResult, Error> {
    let total = cfg.candidate_count()?;
    let jobs = jobs.max(1);
    let chunks = (jobs as u64 * 8).min(total.max(1));
    let step = total.div_ceil(chunks);
    let ranges: Vec<_> = (0..chunks).map(|i| (i * step).min(total)..((i + 1) * step).min(total)).collect();
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<_, Error>>>> = ranges.iter().map(|_| Mutex::new(None)).collect();
    thread::scope(|s| {
        for _ in 0..jobs {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(r) = ranges.get(i) else { break };
                *slots[i].lock().unwrap() = Some(scan_range(cfg, r.clone()));
            });
        }
    });
    let mut scanned = Vec::new();
    for slot in slots {
        scanned.extend(slot.into_inner().unwrap().expect("every chunk ran")?);
    }
    scanned.sort_by_key(|s| s.index);
    finish_search(cfg, scanned)
}

/// Seed of chain `i`; chain 0 uses the base seed unchanged.
pub fn chain_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub struct ChainsOutcome {
    pub best: AnnealResult,
    pub best_chain: usize,
    pub seeds: Vec<u64>,
    pub costs: Vec<u64>,
}

/// Independent annealing chains; the lowest cost wins, ties to the lower
/// chain index. A deadline makes results depend on timing.
pub fn anneal_chains(cfg: &AnnealConfig, chains: usize, jobs: usize, deadline: Option<Instant>) -> Result<ChainsOutcome, Error> {
    let chains = chains.max(1);
    let seeds: Vec<u64> = (0..chains).map(|i| chain_seed(cfg.seed, i)).collect();
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<AnnealResult, Error>>>> = seeds.iter().map(|_| Mutex::new(None)).collect();
    thread::scope(|s| {
        for _ in 0..jobs.max(1).min(chains) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&seed) = seeds.get(i) else { break };
                let c = AnnealConfig { seed, ..cfg.clone() };
                let stop = || deadline.is_some_and(|d| Instant::now() >= d);
                *slots[i].lock().unwrap() = Some(anneal_pair(&c, Alphabet::Binary, stop));
            });
        }
    });
    let results = slots
        .into_iter()
        .map(|s| s.into_inner().unwrap().expect("every chain ran"))
        .collect::<Result<Vec<_>, _>>()?;
    let costs: Vec<u64> = results.iter().map(|r| r.cost).collect();
    let best_chain = (0..chains).min_by_key(|&i| (costs[i], i)).unwrap();
    let best = results.into_iter().nth(best_chain).unwrap();
    Ok(ChainsOutcome { best, best_chain, seeds, costs })
}
