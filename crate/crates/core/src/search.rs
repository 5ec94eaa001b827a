//! Bitmask search over valid orbits: census counting, completion and
//! member enumeration.
//!
//! A search state is a set of chosen orbits. `cand` holds orbits that may
//! still be added in enumeration order (above the last choice and compatible
//! with every choice); `free` holds every orbit compatible with the choices,
//! regardless of order, and drives the completion search.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::orbits::ValidOrbitSet;

/// Largest supported number of valid orbits (64 words of 64 bits).
pub const MAX_ORBITS: usize = 64 * 64;

const FLUSH_EVERY: u64 = 1 << 16;

/// Limits and parallelism for a search.
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Worker threads; `0` uses the global pool.
    pub jobs: usize,
    pub max_nodes: Option<u64>,
    pub timeout: Option<Duration>,
}

impl SearchOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        SearchOptions { jobs, ..Default::default() }
    }
}

/// Shared node counter and abort flag.
pub(crate) struct Budget {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    aborted: AtomicBool,
    reason: std::sync::Mutex<Option<String>>,
}

impl Budget {
    pub fn new(opts: &SearchOptions) -> Self {
        Budget {
            max_nodes: opts.max_nodes,
            deadline: opts.timeout.map(|d| Instant::now() + d),
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
            reason: std::sync::Mutex::new(None),
        }
    }

    /// Adds `delta` nodes; returns false once the search must stop.
    fn charge(&self, delta: u64) -> bool {
        let total = self.nodes.fetch_add(delta, Ordering::Relaxed) + delta;
        if self.aborted.load(Ordering::Relaxed) {
            return false;
        }
        let why = match (self.max_nodes, self.deadline) {
            (Some(max), _) if total > max => Some(format!("node limit {max}")),
            (_, Some(d)) if Instant::now() > d => Some("time limit".to_string()),
            _ => None,
        };
        if let Some(why) = why {
            self.aborted.store(true, Ordering::Relaxed);
            *self.reason.lock().expect("budget mutex") = Some(why);
            return false;
        }
        true
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn finish(&self) -> Result<()> {
        if self.aborted.load(Ordering::Relaxed) {
            let reason = self.reason.lock().expect("budget mutex").clone().unwrap_or_default();
            return Err(Error::BudgetExceeded { nodes: self.nodes(), reason });
        }
        Ok(())
    }
}

/// Per-thread counter flushed into the shared budget in batches.
pub(crate) struct Meter<'a> {
    budget: &'a Budget,
    pending: u64,
    stopped: bool,
}

impl<'a> Meter<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        Meter { budget, pending: 0, stopped: budget.aborted.load(Ordering::Relaxed) }
    }

    /// Counts one node; returns false when the search must stop.
    #[inline]
    pub fn tick(&mut self) -> bool {
        if self.stopped {
            return false;
        }
        self.pending += 1;
        if self.pending >= FLUSH_EVERY {
            let ok = self.budget.charge(self.pending);
            self.pending = 0;
            self.stopped = !ok;
        }
        !self.stopped
    }
}

impl Drop for Meter<'_> {
    fn drop(&mut self) {
        if self.pending > 0 {
            self.budget.charge(self.pending);
        }
    }
}

/// Precomputed masks for one valid orbit set.
pub(crate) struct Engine<const W: usize> {
    n: usize,
    len: Vec<usize>,
    cells: Vec<Vec<usize>>,
    /// Orbits sharing a pair with `o`, `o` included.
    conflict: Vec<Bits<W>>,
    /// Orbits above `o` and compatible with it.
    allowed: Vec<Bits<W>>,
    /// Orbits covering each `(row, col)` cell.
    cell_orbits: Vec<Bits<W>>,
    all: Bits<W>,
}

/// Mutable state of a completion search.
pub(crate) struct Cover {
    covered: Vec<bool>,
    remaining: usize,
}

impl<const W: usize> Engine<W> {
    pub fn new(set: &ValidOrbitSet) -> Self {
        let n = set.order();
        let m = set.len();
        assert!(m <= Bits::<W>::CAPACITY);
        let mut conflict = vec![Bits::<W>::ZERO; m];
        let mut allowed = vec![Bits::<W>::ZERO; m];
        let mut cell_orbits = vec![Bits::<W>::ZERO; n * n];
        let mut cells = Vec::with_capacity(m);
        for o in 0..m {
            conflict[o].set(o);
            for &b in set.neighbours(o) {
                conflict[o].set(b);
            }
            let mut above = !Bits::<W>::prefix(o + 1) & Bits::prefix(m);
            above &= !conflict[o];
            allowed[o] = above;
            let cs: Vec<usize> = set.orbits()[o].triples.iter().map(|&[r, c, _]| r * n + c).collect();
            for &cell in &cs {
                cell_orbits[cell].set(o);
            }
            cells.push(cs);
        }
        Engine {
            n,
            len: set.orbits().iter().map(|o| o.len()).collect(),
            cells,
            conflict,
            allowed,
            cell_orbits,
            all: Bits::prefix(m),
        }
    }

    pub fn all(&self) -> Bits<W> {
        self.all
    }

    /// The `(cand, free, size)` state after choosing `ids` (increasing).
    pub fn state_of(&self, ids: &[usize]) -> (Bits<W>, Bits<W>, usize) {
        let mut cand = self.all;
        let mut free = self.all;
        let mut size = 0;
        for &o in ids {
            cand &= self.allowed[o];
            free &= !self.conflict[o];
            size += self.len[o];
        }
        (cand, free, size)
    }

    pub fn cover_of(&self, ids: &[usize]) -> Cover {
        let mut cover = Cover { covered: vec![false; self.n * self.n], remaining: self.n * self.n };
        for &o in ids {
            self.mark(&mut cover, o);
        }
        cover
    }

    #[inline]
    fn mark(&self, cover: &mut Cover, o: usize) {
        for &c in &self.cells[o] {
            cover.covered[c] = true;
        }
        cover.remaining -= self.cells[o].len();
    }

    #[inline]
    fn unmark(&self, cover: &mut Cover, o: usize) {
        for &c in &self.cells[o] {
            cover.covered[c] = false;
        }
        cover.remaining += self.cells[o].len();
    }

    // ---------------------------------------------------------------- census

    /// Counts every non-empty extension of the state by size, the state
    /// itself excluded. Sizes above `max_size` are pruned.
    pub fn census(&self, cand: Bits<W>, size: usize, max_size: usize, counts: &mut [u64], meter: &mut Meter<'_>) {
        for o in cand.ones() {
            let s = size + self.len[o];
            if s > max_size {
                continue;
            }
            if !meter.tick() {
                return;
            }
            counts[s] += 1;
            let next = cand & self.allowed[o];
            if !next.is_zero() {
                self.census(next, s, max_size, counts, meter);
            }
        }
    }

    /// Frontier states at `depth` below the root; nodes strictly above the
    /// frontier are counted into `counts`.
    fn frontier(
        &self,
        cand: Bits<W>,
        size: usize,
        depth: usize,
        max_size: usize,
        counts: &mut [u64],
        out: &mut Vec<(Bits<W>, usize)>,
    ) {
        for o in cand.ones() {
            let s = size + self.len[o];
            if s > max_size {
                continue;
            }
            counts[s] += 1;
            let next = cand & self.allowed[o];
            if next.is_zero() {
                continue;
            }
            if depth <= 1 {
                out.push((next, s));
            } else {
                self.frontier(next, s, depth - 1, max_size, counts, out);
            }
        }
    }

    /// Per-size counts of all non-empty conflict-free orbit sets.
    pub fn parallel_census(&self, max_size: usize, opts: &SearchOptions, budget: &Budget) -> Vec<u64> {
        let mut counts = vec![0u64; max_size + 1];
        let mut tasks = Vec::new();
        self.frontier(self.all, 0, 2, max_size, &mut counts, &mut tasks);
        let run = || {
            tasks
                .par_iter()
                .map(|&(cand, size)| {
                    let mut local = vec![0u64; max_size + 1];
                    let mut meter = Meter::new(budget);
                    self.census(cand, size, max_size, &mut local, &mut meter);
                    local
                })
                .reduce(
                    || vec![0u64; max_size + 1],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                )
        };
        let merged = with_pool(opts.jobs, run);
        counts.iter_mut().zip(merged).for_each(|(x, y)| *x += y);
        counts
    }

    // ------------------------------------------------------------ completion

    /// Number of ways to cover every remaining cell with orbits from `free`,
    /// stopping early once `limit` completions are found.
    pub fn completions(&self, free: Bits<W>, cover: &mut Cover, limit: u64, meter: &mut Meter<'_>) -> u64 {
        if cover.remaining == 0 {
            return 1;
        }
        if !meter.tick() {
            return 0;
        }
        // Most constrained uncovered cell.
        let mut best: Option<(u32, usize)> = None;
        for cell in 0..self.n * self.n {
            if cover.covered[cell] {
                continue;
            }
            let k = (self.cell_orbits[cell] & free).count();
            if k == 0 {
                return 0;
            }
            if best.is_none_or(|(b, _)| k < b) {
                best = Some((k, cell));
                if k == 1 {
                    break;
                }
            }
        }
        let (_, cell) = best.expect("some cell is uncovered");
        let mut found = 0;
        for o in (self.cell_orbits[cell] & free).ones() {
            self.mark(cover, o);
            found += self.completions(free & !self.conflict[o], cover, limit - found, meter);
            self.unmark(cover, o);
            if found >= limit {
                break;
            }
        }
        found
    }

    /// Calls `visit` with the added orbits of every completion.
    pub fn for_each_completion<F: FnMut(&[usize])>(
        &self,
        free: Bits<W>,
        cover: &mut Cover,
        path: &mut Vec<usize>,
        visit: &mut F,
        meter: &mut Meter<'_>,
    ) {
        if cover.remaining == 0 {
            visit(path);
            return;
        }
        if !meter.tick() {
            return;
        }
        let Some(cell) =
            (0..self.n * self.n).filter(|&c| !cover.covered[c]).min_by_key(|&c| (self.cell_orbits[c] & free).count())
        else {
            return;
        };
        for o in (self.cell_orbits[cell] & free).ones() {
            self.mark(cover, o);
            path.push(o);
            self.for_each_completion(free & !self.conflict[o], cover, path, visit, meter);
            path.pop();
            self.unmark(cover, o);
        }
    }

    /// Per-size counts of completable sets among the non-empty extensions of
    /// the state. A set that cannot be completed prunes its whole subtree.
    pub fn completable_census(
        &self,
        cand: Bits<W>,
        free: Bits<W>,
        size: usize,
        cover: &mut Cover,
        counts: &mut [u64],
        meter: &mut Meter<'_>,
    ) {
        for o in cand.ones() {
            if !meter.tick() {
                return;
            }
            let next_free = free & !self.conflict[o];
            self.mark(cover, o);
            if self.completions(next_free, cover, 1, meter) > 0 {
                let s = size + self.len[o];
                counts[s] += 1;
                let next = cand & self.allowed[o];
                if !next.is_zero() {
                    self.completable_census(next, next_free, s, cover, counts, meter);
                }
            }
            self.unmark(cover, o);
        }
    }

    pub fn parallel_completable_census(&self, opts: &SearchOptions, budget: &Budget) -> Vec<u64> {
        let n2 = self.n * self.n;
        let first: Vec<usize> = self.all.ones().collect();
        let run = || {
            first
                .par_iter()
                .map(|&o| {
                    let mut local = vec![0u64; n2 + 1];
                    let mut meter = Meter::new(budget);
                    let mut cover = self.cover_of(&[o]);
                    let (cand, free, size) = self.state_of(&[o]);
                    if self.completions(free, &mut cover, 1, &mut meter) > 0 {
                        local[size] += 1;
                        self.completable_census(cand, free, size, &mut cover, &mut local, &mut meter);
                    }
                    local
                })
                .reduce(
                    || vec![0u64; n2 + 1],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        a
                    },
                )
        };
        with_pool(opts.jobs, run)
    }

    // ------------------------------------------------------------- members

    /// Calls `visit` on every non-empty conflict-free extension of size at
    /// most `max_size`, passing the chosen orbit indices and the size.
    pub fn for_each_member<F: FnMut(&[usize], usize)>(
        &self,
        cand: Bits<W>,
        size: usize,
        max_size: usize,
        path: &mut Vec<usize>,
        visit: &mut F,
        meter: &mut Meter<'_>,
    ) {
        for o in cand.ones() {
            let s = size + self.len[o];
            if s > max_size {
                continue;
            }
            if !meter.tick() {
                return;
            }
            path.push(o);
            visit(path, s);
            let next = cand & self.allowed[o];
            if !next.is_zero() {
                self.for_each_member(next, s, max_size, path, visit, meter);
            }
            path.pop();
        }
    }
}

fn with_pool<T: Send, F: FnOnce() -> T + Send>(jobs: usize, f: F) -> T {
    if jobs == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// An [`Engine`] of the smallest width that fits the orbit count.
#[allow(clippy::large_enum_variant)]
pub(crate) enum AnyEngine {
    W1(Engine<1>),
    W2(Engine<2>),
    W4(Engine<4>),
    W8(Engine<8>),
    W16(Engine<16>),
    W32(Engine<32>),
    W64(Engine<64>),
}

impl AnyEngine {
    pub fn new(set: &ValidOrbitSet) -> Result<Self> {
        let m = set.len();
        Ok(match m {
            0..=64 => AnyEngine::W1(Engine::new(set)),
            65..=128 => AnyEngine::W2(Engine::new(set)),
            129..=256 => AnyEngine::W4(Engine::new(set)),
            257..=512 => AnyEngine::W8(Engine::new(set)),
            513..=1024 => AnyEngine::W16(Engine::new(set)),
            1025..=2048 => AnyEngine::W32(Engine::new(set)),
            2049..=MAX_ORBITS => AnyEngine::W64(Engine::new(set)),
            _ => return Err(Error::TooManyOrbits { orbits: m, max: MAX_ORBITS }),
        })
    }
}

/// Runs `$body` with `$e` bound to the concrete engine.
macro_rules! with_engine {
    ($any:expr, $e:ident => $body:expr) => {
        match $any {
            $crate::search::AnyEngine::W1($e) => $body,
            $crate::search::AnyEngine::W2($e) => $body,
            $crate::search::AnyEngine::W4($e) => $body,
            $crate::search::AnyEngine::W8($e) => $body,
            $crate::search::AnyEngine::W16($e) => $body,
            $crate::search::AnyEngine::W32($e) => $body,
            $crate::search::AnyEngine::W64($e) => $body,
        }
    };
}
pub(crate) use with_engine;
