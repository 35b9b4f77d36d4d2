//! Companion-pair discovery by exhaustive Gray-code scan or by simulated
//! annealing on `λ_B`.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::lambda_b_cost;
use crate::complementary::{is_companion_pair, CompanionPair};
use crate::correlation::{acf, periodic_from_aperiodic};
use crate::element::{Alphabet, Element};
use crate::error::{domain, Error, Result};
use crate::merit::{merits, Magnitude, MeritKind, MeritReport, MeritValue};
use crate::seq::Seq;

/// Default limit on `|X|^m` for exhaustive enumeration.
pub const DEFAULT_CAP: u64 = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    /// Keep sequences whose R-set members all have `merit ≤ bound`.
    Constraint { kind: MeritKind, bound: u64 },
    /// Find the smallest achievable `max(merit(c0), merit(c1))`.
    Minimize(MeritKind),
}

impl Objective {
    pub fn kind(&self) -> MeritKind {
        match *self {
            Objective::Constraint { kind, .. } | Objective::Minimize(kind) => kind,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub alphabet: Alphabet,
    pub m: usize,
    pub t: usize,
    pub objective: Objective,
    /// Largest candidate count an exhaustive run will accept.
    pub cap: u64,
    /// Stop listing pairs after this many (they are still counted).
    pub max_pairs: Option<usize>,
}

impl SearchConfig {
    pub fn new(alphabet: Alphabet, m: usize, t: usize, objective: Objective) -> Self {
        SearchConfig { alphabet, m, t, objective, cap: DEFAULT_CAP, max_pairs: None }
    }

    /// `|X|^m`, or an error when the space cannot be enumerated.
    pub fn candidate_count(&self) -> Result<u64> {
        let b = self
            .alphabet
            .size()
            .ok_or_else(|| Error::Capability("exhaustive search needs a finite alphabet".into()))? as u64;
        if self.m == 0 || self.m % 2 != 0 {
            return Err(domain!("companion length m must be even and positive, got {}", self.m));
        }
        let total = u32::try_from(self.m).ok().and_then(|m| b.checked_pow(m));
        match total {
            Some(n) if n <= self.cap => Ok(n),
            _ => Err(Error::Capability(alloc::format!(
                "{}^{} candidates exceed the exhaustive cap of {}",
                b,
                self.m,
                self.cap
            ))),
        }
    }
}

/// One scanned sequence: its lexicographic index and R-set merit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scanned {
    pub index: u64,
    pub merit: MeritValue,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FoundPair {
    pub c0: Seq,
    pub c1: Seq,
    pub merits0: MeritReport,
    pub merits1: MeritReport,
    /// The pair's objective value, `max` over both R-sets.
    pub merit: MeritValue,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    pub pairs: Vec<FoundPair>,
    /// Qualifying pairs, including any not listed because of `max_pairs`.
    pub total_pairs: u64,
    pub minimum: Option<MeritValue>,
    pub candidates: u64,
    /// Sequences passing the per-sequence stage.
    pub retained: u64,
}

/// Sequence with lexicographic `index`: base `|X|`, element 0 most significant.
pub fn sequence_at(alphabet: Alphabet, m: usize, index: u64) -> Result<Seq> {
    let symbols = alphabet.symbols().ok_or_else(|| Error::Capability("need a finite alphabet".into()))?;
    let b = symbols.len() as u64;
    let mut elems = vec![Element::ZERO; m];
    let mut rest = index;
    for e in elems.iter_mut().rev() {
        *e = symbols[(rest % b) as usize];
        rest /= b;
    }
    Seq::new(elems, alphabet)
}

/// Lexicographic index of `s` over its alphabet's symbol order.
pub fn index_of(s: &Seq, alphabet: Alphabet) -> Result<u64> {
    let symbols = alphabet.symbols().ok_or_else(|| Error::Capability("need a finite alphabet".into()))?;
    s.iter().try_fold(0u64, |acc, e| {
        let d = symbols.iter().position(|x| x == e).ok_or_else(|| domain!("{} is not in the {} alphabet", e, alphabet))?;
        Ok(acc * symbols.len() as u64 + d as u64)
    })
}

fn peak_sum(values: &[Element], kind: MeritKind) -> MeritValue {
    match kind {
        MeritKind::LambdaA | MeritKind::LambdaP => MeritValue::Peak(values.iter().map(|v| v.norm()).max().unwrap_or(0)),
        MeritKind::SA | MeritKind::SP => MeritValue::Sum(values.iter().map(|&v| Magnitude::of(v)).sum()),
    }
}

/// Merit of one kind from a full aperiodic ACF.
pub fn merit_from_acf(a: &[Element], kind: MeritKind) -> MeritValue {
    if kind.is_periodic() {
        peak_sum(&periodic_from_aperiodic(a)[1..], kind)
    } else {
        peak_sum(&a[1..], kind)
    }
}

/// `max` of a merit over every member of `R^(t)_x`, from the ACF of `x`.
///
/// Members are `(u, ±u)` recursively; negation leaves ACFs unchanged, so
/// `2^t` profiles cover the whole set.
pub fn rset_merit(a: &[Element], t: usize, kind: MeritKind) -> MeritValue {
    let mut profiles = vec![a.to_vec()];
    for _ in 0..t {
        profiles = profiles.iter().flat_map(|p| [extend(p, 1), extend(p, -1)]).collect();
    }
    profiles.iter().map(|p| merit_from_acf(p, kind)).reduce(MeritValue::max).expect("at least one profile")
}

fn extend(a: &[Element], sigma: i64) -> Vec<Element> {
    let s = a.len();
    (0..2 * s)
        .map(|l| {
            if l < s {
                let wrap = if l == 0 { Element::ZERO } else { a[s - l].conj() };
                a[l] * 2 + wrap * sigma
            } else {
                a[l - s] * sigma
            }
        })
        .collect()
}

/// Reflected mixed-radix Gray code walker over `m` digits of base `b`.
struct GrayWalker {
    base: usize,
    rank_digits: Vec<usize>,
    gray: Vec<usize>,
}

impl GrayWalker {
    fn at(base: usize, m: usize, rank: u64) -> Self {
        let mut rank_digits = vec![0usize; m];
        let mut r = rank;
        for d in rank_digits.iter_mut().rev() {
            *d = (r % base as u64) as usize;
            r /= base as u64;
        }
        let mut gray = vec![0usize; m];
        let mut flip = false;
        for (g, &a) in gray.iter_mut().zip(&rank_digits) {
            *g = if flip { base - 1 - a } else { a };
            flip ^= *g % 2 == 1;
        }
        GrayWalker { base, rank_digits, gray }
    }

    /// Advances one rank; returns the changed position and its old digit.
    fn step(&mut self) -> Option<(usize, usize)> {
        let pos = self.rank_digits.iter().rposition(|&d| d + 1 < self.base)?;
        for d in &mut self.rank_digits[pos + 1..] {
            *d = 0;
        }
        self.rank_digits[pos] += 1;
        let flip = self.gray[..pos].iter().filter(|&&g| g % 2 == 1).count() % 2 == 1;
        let old = self.gray[pos];
        let a = self.rank_digits[pos];
        self.gray[pos] = if flip { self.base - 1 - a } else { a };
        Some((pos, old))
    }

    fn lex_index(&self) -> u64 {
        self.gray.iter().fold(0u64, |acc, &g| acc * self.base as u64 + g as u64)
    }
}

/// Scans Gray ranks `ranks` and reports each sequence's R-set merit.
///
/// Under a constraint only passing sequences are kept. All-zero sequences
/// are skipped: they pair with anything and carry no signal. The ACF is
/// updated in `O(m)` per step, since consecutive codewords differ in one
/// element.
pub fn scan_range(cfg: &SearchConfig, ranks: Range<u64>) -> Result<Vec<Scanned>> {
    let total = cfg.candidate_count()?;
    let symbols = cfg.alphabet.symbols().expect("checked by candidate_count");
    let m = cfg.m;
    let end = ranks.end.min(total);
    if ranks.start >= end {
        return Ok(Vec::new());
    }
    let mut walker = GrayWalker::at(symbols.len(), m, ranks.start);
    let mut x: Vec<Element> = walker.gray.iter().map(|&g| symbols[g]).collect();
    let mut a = acf(&x);
    let kind = cfg.objective.kind();
    let mut out = Vec::new();
    let mut rank = ranks.start;
    loop {
        if !a[0].is_zero() {
            let merit = rset_merit(&a, cfg.t, kind);
            let keep = match cfg.objective {
                Objective::Constraint { bound, .. } => merit.le_int(bound),
                Objective::Minimize(_) => true,
            };
            if keep {
                out.push(Scanned { index: walker.lex_index(), merit });
            }
        }
        rank += 1;
        if rank >= end {
            break;
        }
        let (k, _) = walker.step().expect("rank below total");
        let new = symbols[walker.gray[k]];
        let delta = new - x[k];
        for l in 1..m {
            let mut d = Element::ZERO;
            if k + l < m {
                d += delta.mul_conj(x[k + l]);
            }
            if k >= l {
                d += x[k - l].mul_conj(delta);
            }
            a[l] += d;
        }
        a[0] += Element::real(new.norm() as i64 - x[k].norm() as i64);
        x[k] = new;
    }
    Ok(out)
}

/// Lexicographically ordered scan results for the whole space.
pub fn scan_all(cfg: &SearchConfig) -> Result<Vec<Scanned>> {
    let total = cfg.candidate_count()?;
    let mut v = scan_range(cfg, 0..total)?;
    v.sort_by_key(|s| s.index);
    Ok(v)
}

struct PairTester {
    alphabet: Alphabet,
    m: usize,
}

impl PairTester {
    fn is_pair(&self, i: u64, j: u64) -> bool {
        if self.alphabet == Alphabet::Binary {
            // symbol index 1 is -1, so the inner product is m - 2·popcount(i^j)
            return (i ^ j).count_ones() as usize * 2 == self.m;
        }
        let a = sequence_at(self.alphabet, self.m, i).expect("index in range");
        let b = sequence_at(self.alphabet, self.m, j).expect("index in range");
        matches!(is_companion_pair(&a, &b), Ok(Some(_)))
    }

    fn found(&self, i: &Scanned, j: &Scanned) -> FoundPair {
        let c0 = sequence_at(self.alphabet, self.m, i.index).expect("index in range");
        let c1 = sequence_at(self.alphabet, self.m, j.index).expect("index in range");
        FoundPair { merits0: merits(&c0), merits1: merits(&c1), c0, c1, merit: i.merit.max(j.merit) }
    }
}

/// Pairs companions among scanned sequences (sorted by index).
pub fn finish_search(cfg: &SearchConfig, scanned: Vec<Scanned>) -> Result<SearchResult> {
    let candidates = cfg.candidate_count()?;
    let tester = PairTester { alphabet: cfg.alphabet, m: cfg.m };
    match cfg.objective {
        Objective::Constraint { .. } => {
            let mut res = SearchResult { pairs: Vec::new(), total_pairs: 0, minimum: None, candidates, retained: scanned.len() as u64 };
            collect_pairs(&tester, &scanned, cfg.max_pairs, &mut res);
            Ok(res)
        }
        Objective::Minimize(_) => minimize(cfg, &tester, scanned, candidates),
    }
}

fn collect_pairs(tester: &PairTester, pool: &[Scanned], max_pairs: Option<usize>, res: &mut SearchResult) {
    for (i, x) in pool.iter().enumerate() {
        for y in &pool[i + 1..] {
            if tester.is_pair(x.index, y.index) {
                res.total_pairs += 1;
                if max_pairs.map_or(true, |cap| res.pairs.len() < cap) {
                    res.pairs.push(tester.found(x, y));
                }
            }
        }
    }
}

fn cmp_merit(a: &MeritValue, b: &MeritValue) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

fn minimize(cfg: &SearchConfig, tester: &PairTester, mut scanned: Vec<Scanned>, candidates: u64) -> Result<SearchResult> {
    let retained = scanned.len() as u64;
    scanned.sort_by(|a, b| cmp_merit(&a.merit, &b.merit).then(a.index.cmp(&b.index)));
    // the first sequence, in merit order, with an earlier partner fixes the minimum
    let mut best = None;
    'outer: for j in 0..scanned.len() {
        for i in 0..j {
            if tester.is_pair(scanned[i].index, scanned[j].index) {
                best = Some(scanned[j].merit);
                break 'outer;
            }
        }
    }
    let mut res = SearchResult { pairs: Vec::new(), total_pairs: 0, minimum: best, candidates, retained };
    if let Some(min) = best {
        let mut pool: Vec<Scanned> = scanned.into_iter().filter(|s| cmp_merit(&s.merit, &min) != Ordering::Greater).collect();
        pool.sort_by_key(|s| s.index);
        collect_pairs(tester, &pool, cfg.max_pairs, &mut res);
    }
    Ok(res)
}

/// Single-threaded exhaustive search.
pub fn exhaustive_search(cfg: &SearchConfig) -> Result<SearchResult> {
    let scanned = scan_all(cfg)?;
    finish_search(cfg, scanned)
}

/// `min over companion pairs of max(merit(c0), merit(c1))` at `t = 0`, with witnesses.
pub fn min_constraint_search(alphabet: Alphabet, m: usize, kind: MeritKind) -> Result<(MeritValue, Vec<FoundPair>)> {
    let cfg = SearchConfig::new(alphabet, m, 0, Objective::Minimize(kind));
    let res = exhaustive_search(&cfg)?;
    let min = res.minimum.ok_or_else(|| domain!("no companion pair of length {} exists", m))?;
    Ok((min, res.pairs))
}

/// `c0 = s0 ⊗ s1`, `c1 = s1* ⊗ (-s0*)`.
pub fn case1_lift(s0: &Seq, s1: &Seq) -> Result<CompanionPair> {
    let c0 = s0.interleave(s1)?;
    let c1 = c0.f_i_conj()?;
    is_companion_pair(&c0, &c1)?.ok_or_else(|| domain!("interleaved lift did not give a companion pair"))
}

/// `c0 = s0 s1`, `c1 = s1* (-s0*)`.
pub fn case2_lift(s0: &Seq, s1: &Seq) -> Result<CompanionPair> {
    crate::correlation::same_len(s0, s1)?;
    let c0 = s0.concat(s1);
    let c1 = c0.f_c_conj()?;
    is_companion_pair(&c0, &c1)?.ok_or_else(|| domain!("concatenated lift did not give a companion pair"))
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealConfig {
    pub half_len: usize,
    /// Cost evaluations, one per proposed flip.
    pub budget: u64,
    pub seed: u64,
    /// Starting temperature; `None` uses the schedule default.
    pub t0: Option<f64>,
    /// Geometric cooling factor per iteration.
    pub cooling: f64,
    /// Iterations without improvement before a restart; `None` uses the default.
    pub stagnation: Option<u64>,
}

impl AnnealConfig {
    pub fn new(half_len: usize, budget: u64, seed: u64) -> Self {
        AnnealConfig { half_len, budget, seed, t0: None, cooling: DEFAULT_COOLING, stagnation: None }
    }

    pub fn start_temperature(&self) -> f64 {
        self.t0.unwrap_or(self.half_len as f64)
    }

    pub fn stagnation_limit(&self) -> u64 {
        self.stagnation.unwrap_or(DEFAULT_STAGNATION_PER_ELEMENT * self.half_len as u64)
    }
}

/// `None` for `t0` means `half_len`.
pub const DEFAULT_COOLING: f64 = 0.995;
pub const DEFAULT_STAGNATION_PER_ELEMENT: u64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnnealEvent {
    Start,
    Improved,
    Restart,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HistoryEntry {
    pub iteration: u64,
    pub temperature: f64,
    pub cost: u64,
    pub event: AnnealEvent,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnnealResult {
    pub s0: Seq,
    pub s1: Seq,
    /// `λ_B` of the best pair.
    pub cost: u64,
    pub evaluations: u64,
    pub history: Vec<HistoryEntry>,
}

/// Incremental state for `f(s0, s1)` over binary sequences stored as ±1.
struct CostState {
    n: usize,
    s: [Vec<i32>; 2],
    a: [Vec<i32>; 2],
    /// `X(l)` at index `l + n - 1`.
    x: Vec<i32>,
}

impl CostState {
    fn new(s0: Vec<i32>, s1: Vec<i32>) -> Self {
        let n = s0.len();
        let auto = |s: &[i32]| -> Vec<i32> { (0..n).map(|l| (0..n - l).map(|i| s[i] * s[i + l]).sum()).collect() };
        let a = [auto(&s0), auto(&s1)];
        let mut x = vec![0i32; 2 * n - 1];
        for i in 0..n {
            for j in 0..n {
                x[j + n - 1 - i] += s0[i] * s1[j];
            }
        }
        CostState { n, s: [s0, s1], a, x }
    }

    fn cost_of(a0: &[i32], a1: &[i32], x: &[i32]) -> u64 {
        let peak = |v: &[i32]| v.iter().map(|e| e.unsigned_abs() as u64).max().unwrap_or(0);
        lambda_b_cost(peak(&a0[1..]), peak(&a1[1..]), peak(x))
    }

    fn cost(&self) -> u64 {
        CostState::cost_of(&self.a[0], &self.a[1], &self.x)
    }

    /// Cost after flipping `s[w][k]`, written into the scratch buffers.
    fn trial(&self, w: usize, k: usize, a_new: &mut [i32], x_new: &mut [i32]) -> u64 {
        let n = self.n;
        let s = &self.s[w];
        let v = s[k];
        a_new.copy_from_slice(&self.a[w]);
        for l in 1..n {
            let mut nb = 0;
            if k + l < n {
                nb += s[k + l];
            }
            if k >= l {
                nb += s[k - l];
            }
            a_new[l] -= 2 * v * nb;
        }
        x_new.copy_from_slice(&self.x);
        if w == 0 {
            // X(l) = Σ s0_i s1_{i+l}
            let s1 = &self.s[1];
            for (j, &b) in s1.iter().enumerate() {
                x_new[j + n - 1 - k] -= 2 * v * b;
            }
        } else {
            let s0 = &self.s[0];
            for (i, &a) in s0.iter().enumerate() {
                x_new[k + n - 1 - i] -= 2 * v * a;
            }
        }
        if w == 0 {
            CostState::cost_of(a_new, &self.a[1], x_new)
        } else {
            CostState::cost_of(&self.a[0], a_new, x_new)
        }
    }

    fn commit(&mut self, w: usize, k: usize, a_new: &[i32], x_new: &[i32]) {
        self.s[w][k] = -self.s[w][k];
        self.a[w].copy_from_slice(a_new);
        self.x.copy_from_slice(x_new);
    }
}

fn to_seq(v: &[i32]) -> Seq {
    Seq::new(v.iter().map(|&e| Element::real(e as i64)).collect(), Alphabet::Binary).expect("binary")
}

/// Simulated annealing on `f = max{λ^A(s0) + λ^A(s1), 2λ^A(s0, s1)}`.
///
/// Single flips alternate between `s0` and `s1`; acceptance is Metropolis
/// with geometric cooling; after a stagnation run the search restarts from
/// the best pair at the starting temperature. `should_stop` is polled every
/// 4096 evaluations. Output depends only on the config.
pub fn anneal_pair(cfg: &AnnealConfig, alphabet: Alphabet, mut should_stop: impl FnMut() -> bool) -> Result<AnnealResult> {
    if alphabet != Alphabet::Binary {
        return Err(Error::Capability("annealing is implemented for binary sequences only".into()));
    }
    let n = cfg.half_len;
    if n < 2 {
        return Err(domain!("annealing needs half_len >= 2, got {}", n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let random_seq = |rng: &mut ChaCha8Rng| -> Vec<i32> { (0..n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect() };
    let s0 = random_seq(&mut rng);
    let s1 = random_seq(&mut rng);
    let mut state = CostState::new(s0, s1);
    let mut cost = state.cost();
    let mut best = (state.s[0].clone(), state.s[1].clone(), cost);
    let t0 = cfg.start_temperature();
    let mut temp = t0;
    let stagnation = cfg.stagnation_limit();
    let mut since_best = 0u64;
    let mut history = vec![HistoryEntry { iteration: 0, temperature: temp, cost, event: AnnealEvent::Start }];
    let mut a_new = vec![0i32; n];
    let mut x_new = vec![0i32; 2 * n - 1];
    let mut evals = 0u64;
    while evals < cfg.budget {
        if evals % 4096 == 0 && evals > 0 && should_stop() {
            break;
        }
        let w = (evals % 2) as usize;
        let k = rng.gen_range(0..n);
        let c = state.trial(w, k, &mut a_new, &mut x_new);
        evals += 1;
        let accept = c <= cost || {
            let p = libm::exp(-((c - cost) as f64) / temp);
            rng.gen::<f64>() < p
        };
        if accept {
            state.commit(w, k, &a_new, &x_new);
            cost = c;
        }
        if cost < best.2 {
            best = (state.s[0].clone(), state.s[1].clone(), cost);
            since_best = 0;
            history.push(HistoryEntry { iteration: evals, temperature: temp, cost, event: AnnealEvent::Improved });
        } else {
            since_best += 1;
        }
        temp *= cfg.cooling;
        if since_best >= stagnation {
            state = CostState::new(best.0.clone(), best.1.clone());
            cost = best.2;
            temp = t0;
            since_best = 0;
            history.push(HistoryEntry { iteration: evals, temperature: temp, cost, event: AnnealEvent::Restart });
        }
    }
    Ok(AnnealResult { s0: to_seq(&best.0), s1: to_seq(&best.1), cost: best.2, evaluations: evals, history })
}
