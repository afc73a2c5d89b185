//! Two-dimensional Turing machines ("turmites") with two symbols and a
//! dedicated HALT pseudo-state, plus exhaustive enumeration of the
//! machine space for output-frequency counting.
//!
//! A machine with `k` states has one rule per `(state, read symbol)` pair.
//! Each rule writes a symbol, moves the head one cell in a cardinal
//! direction and then switches state (or halts). The tape starts blank and
//! the head starts at the origin in state 1.

use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::matrix::BinaryMatrix;

pub const DEFAULT_BUDGET: u32 = 500;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Up,
    Down,
    Left,
    Right,
}

impl Move {
    const ALL: [Move; 4] = [Move::Up, Move::Down, Move::Left, Move::Right];

    fn digit(self) -> u64 {
        self as u64
    }

    /// (dx, dy) with rows growing downwards.
    fn delta(self) -> (i32, i32) {
        match self {
            Move::Up => (0, -1),
            Move::Down => (0, 1),
            Move::Left => (-1, 0),
            Move::Right => (1, 0),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Next {
    Halt,
    /// 1-based state number.
    State(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub write: u8,
    pub movement: Move,
    pub next: Next,
}

impl Rule {
    pub const fn new(write: u8, movement: Move, next: Next) -> Self {
        Rule {
            write,
            movement,
            next,
        }
    }
}

/// Transition table of a 2-symbol, `k`-state machine. Rules are stored in
/// `(state, symbol)` lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Machine2D {
    state_count: u32,
    rules: Vec<Rule>,
}

impl Machine2D {
    pub fn new(state_count: u32, rules: Vec<Rule>) -> Result<Self> {
        if state_count < 1 {
            return Err(Error::invalid("machine needs at least one state"));
        }
        if rules.len() != 2 * state_count as usize {
            return Err(Error::invalid(format!(
                "{state_count}-state machine needs {} rules, got {}",
                2 * state_count,
                rules.len()
            )));
        }
        for r in &rules {
            if r.write > 1 {
                return Err(Error::invalid(format!(
                    "write symbol {} out of range",
                    r.write
                )));
            }
            if let Next::State(s) = r.next {
                if s < 1 || s > state_count {
                    return Err(Error::invalid(format!("next state {s} out of range")));
                }
            }
        }
        Ok(Machine2D { state_count, rules })
    }

    pub fn state_count(&self) -> u32 {
        self.state_count
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, state: u32, symbol: u8) -> Rule {
        self.rules[((state - 1) * 2 + symbol as u32) as usize]
    }

    /// Inverse of [`decode`].
    pub fn encode(&self) -> u64 {
        let k = self.state_count as u64;
        let radix = rule_radix(k);
        self.rules.iter().fold(0u64, |acc, r| {
            let next = match r.next {
                Next::Halt => 0,
                Next::State(s) => s as u64,
            };
            let digit = (r.write as u64 * 4 + r.movement.digit()) * (k + 1) + next;
            acc * radix + digit
        })
    }
}

fn rule_radix(k: u64) -> u64 {
    2 * 4 * (k + 1)
}

/// Number of distinct rule tables for `k` states: `(8(k+1))^(2k)`.
pub fn machine_count(k: u32) -> Result<u64> {
    if k < 1 {
        return Err(Error::invalid("state count must be at least 1"));
    }
    rule_radix(k as u64)
        .checked_pow(2 * k)
        .ok_or_else(|| Error::invalid(format!("machine space for k={k} overflows u64")))
}

/// Mixed-radix decoding. The first `(state, symbol)` rule is the most
/// significant digit; within a rule the write symbol is most significant,
/// then the move, then the next state (0 = HALT).
pub fn decode(index: u64, k: u32) -> Result<Machine2D> {
    let count = machine_count(k)?;
    if index >= count {
        return Err(Error::invalid(format!(
            "machine index {index} out of range 0..{count}"
        )));
    }
    Ok(decode_unchecked(index, k))
}

fn decode_unchecked(mut index: u64, k: u32) -> Machine2D {
    let kk = k as u64;
    let radix = rule_radix(kk);
    let n = 2 * k as usize;
    let mut rules = vec![Rule::new(0, Move::Up, Next::Halt); n];
    for slot in rules.iter_mut().rev() {
        let digit = index % radix;
        index /= radix;
        let next = digit % (kk + 1);
        let rest = digit / (kk + 1);
        *slot = Rule {
            write: (rest / 4) as u8,
            movement: Move::ALL[(rest % 4) as usize],
            next: if next == 0 {
                Next::Halt
            } else {
                Next::State(next as u32)
            },
        };
    }
    Machine2D {
        state_count: k,
        rules,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub halted: bool,
    pub steps: u32,
    /// Contents of the bounding box of every cell the head read from.
    /// Present only when the machine halted.
    pub output: Option<BinaryMatrix>,
}

/// Runs `m` on a blank tape for at most `budget` steps. The halting
/// transition counts as a step; the cell the head lands on after it is not
/// considered visited.
pub fn run(m: &Machine2D, budget: u32) -> RunOutcome {
    let mut tape: FxHashMap<(i32, i32), u8> = FxHashMap::default();
    let (mut x, mut y) = (0i32, 0i32);
    let mut state = 1u32;
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (0, 0, 0, 0);

    for step in 1..=budget {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);

        let symbol = tape.get(&(x, y)).copied().unwrap_or(0);
        let rule = m.rule(state, symbol);
        if rule.write == 0 {
            tape.remove(&(x, y));
        } else {
            tape.insert((x, y), 1);
        }
        let (dx, dy) = rule.movement.delta();
        x += dx;
        y += dy;

        match rule.next {
            Next::Halt => {
                let rows = (max_y - min_y + 1) as usize;
                let cols = (max_x - min_x + 1) as usize;
                let mut out = BinaryMatrix::zeros(rows, cols);
                for (&(cx, cy), &v) in &tape {
                    if (min_x..=max_x).contains(&cx) && (min_y..=max_y).contains(&cy) {
                        out.set((cy - min_y) as usize, (cx - min_x) as usize, v);
                    }
                }
                return RunOutcome {
                    halted: true,
                    steps: step,
                    output: Some(out),
                };
            }
            Next::State(s) => state = s,
        }
    }
    RunOutcome {
        halted: false,
        steps: budget,
        output: None,
    }
}

/// Frequency table of halting outputs over a range of machine indices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OutputCounts {
    pub counts: FxHashMap<BinaryMatrix, u64>,
    pub total_halting: u64,
    pub total_run: u64,
}

impl OutputCounts {
    pub fn record(&mut self, outcome: RunOutcome) {
        self.total_run += 1;
        if let Some(out) = outcome.output {
            self.total_halting += 1;
            *self.counts.entry(out).or_insert(0) += 1;
        }
    }

    /// Pure count addition.
    pub fn merge(mut self, other: OutputCounts) -> OutputCounts {
        let (mut big, small) = if self.counts.len() >= other.counts.len() {
            (std::mem::take(&mut self.counts), other.counts)
        } else {
            (other.counts, std::mem::take(&mut self.counts))
        };
        for (k, v) in small {
            *big.entry(k).or_insert(0) += v;
        }
        OutputCounts {
            counts: big,
            total_halting: self.total_halting + other.total_halting,
            total_run: self.total_run + other.total_run,
        }
    }

    pub fn count(&self, output: &BinaryMatrix) -> u64 {
        self.counts.get(output).copied().unwrap_or(0)
    }
}

const CHUNK: u64 = 4096;

/// Runs every machine in `shard` and counts halting outputs.
pub fn enumerate_counts(k: u32, budget: u32, shard: Range<u64>) -> Result<OutputCounts> {
    enumerate_counts_with_progress(k, budget, shard, |_| {})
}

/// Like [`enumerate_counts`], calling `progress` with the running total of
/// processed machines after each chunk. Chunks are processed in parallel.
pub fn enumerate_counts_with_progress<F>(
    k: u32,
    budget: u32,
    shard: Range<u64>,
    progress: F,
) -> Result<OutputCounts>
where
    F: Fn(u64) + Sync,
{
    let count = machine_count(k)?;
    if shard.end > count || shard.start > shard.end {
        return Err(Error::invalid(format!(
            "shard {shard:?} is not within 0..{count}"
        )));
    }
    if budget < 1 {
        return Err(Error::invalid("step budget must be at least 1"));
    }
    let done = AtomicU64::new(0);
    let chunks = (shard.end - shard.start).div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = shard.start + c * CHUNK;
            let hi = (lo + CHUNK).min(shard.end);
            let mut acc = OutputCounts::default();
            for index in lo..hi {
                acc.record(run(&decode_unchecked(index, k), budget));
            }
            let total = done.fetch_add(hi - lo, Ordering::Relaxed) + (hi - lo);
            progress(total);
            acc
        })
        .reduce(OutputCounts::default, OutputCounts::merge);
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const HALT_UP_0: Rule = Rule::new(0, Move::Up, Next::Halt);

    #[test]
    fn machine_counts() {
        assert_eq!(machine_count(1).unwrap(), 256);
        assert_eq!(machine_count(2).unwrap(), 24u64.pow(4));
        assert_eq!(machine_count(2).unwrap(), 331_776);
        assert_eq!(machine_count(3).unwrap(), 1_073_741_824);
        assert!(machine_count(0).is_err());
    }

    #[test]
    fn first_and_last_tables() {
        let first = decode(0, 1).unwrap();
        assert_eq!(first.rules(), &[HALT_UP_0, HALT_UP_0]);

        let last = decode(machine_count(2).unwrap() - 1, 2).unwrap();
        let r = Rule::new(1, Move::Right, Next::State(2));
        assert_eq!(last.rules(), &[r, r, r, r]);

        assert!(decode(256, 1).is_err());
    }

    #[test]
    fn random_roundtrip_k2() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let count = machine_count(2).unwrap();
        for _ in 0..1000 {
            let i = rng.gen_range(0..count);
            assert_eq!(decode(i, 2).unwrap().encode(), i);
        }
    }

    proptest! {
        #[test]
        fn roundtrip_k3(i in 0u64..1_073_741_824) {
            prop_assert_eq!(decode(i, 3).unwrap().encode(), i);
        }
    }

    #[test]
    fn rejects_malformed_tables() {
        assert!(Machine2D::new(1, vec![HALT_UP_0]).is_err());
        assert!(
            Machine2D::new(1, vec![HALT_UP_0, Rule::new(0, Move::Up, Next::State(2))]).is_err()
        );
        assert!(Machine2D::new(1, vec![HALT_UP_0, Rule::new(2, Move::Up, Next::Halt)]).is_err());
    }

    #[test]
    fn immediate_halt() {
        let m = Machine2D::new(1, vec![Rule::new(1, Move::Up, Next::Halt), HALT_UP_0]).unwrap();
        let out = run(&m, 10);
        assert!(out.halted);
        assert_eq!(out.steps, 1);
        assert_eq!(out.output, Some(BinaryMatrix::from_rows(&["1"]).unwrap()));
    }

    #[test]
    fn two_state_cycle_never_halts() {
        // State 1 steps right into state 2, state 2 steps back left into
        // state 1; HALT is never reachable.
        let m = Machine2D::new(
            2,
            vec![
                Rule::new(1, Move::Right, Next::State(2)),
                Rule::new(1, Move::Right, Next::State(2)),
                Rule::new(1, Move::Left, Next::State(1)),
                Rule::new(1, Move::Left, Next::State(1)),
            ],
        )
        .unwrap();
        let out = run(&m, 500);
        assert!(!out.halted);
        assert_eq!(out.steps, 500);
        assert!(out.output.is_none());
    }

    #[test]
    fn halting_output_is_budget_independent() {
        // Writes 1, steps right, writes another 1 and halts.
        let m = Machine2D::new(
            2,
            vec![
                Rule::new(1, Move::Right, Next::State(2)),
                Rule::new(0, Move::Down, Next::Halt),
                Rule::new(1, Move::Down, Next::Halt),
                Rule::new(0, Move::Left, Next::State(1)),
            ],
        )
        .unwrap();
        let a = run(&m, 2);
        let b = run(&m, 500);
        assert!(a.halted);
        assert_eq!(a, b);
        assert_eq!(a.output, Some(BinaryMatrix::from_rows(&["11"]).unwrap()));
    }

    #[test]
    fn visited_cells_define_the_box() {
        // Writes 0 on the way, so the box is blank but still 1x3.
        let m = Machine2D::new(
            2,
            vec![
                Rule::new(0, Move::Right, Next::State(2)),
                HALT_UP_0,
                Rule::new(0, Move::Right, Next::State(1)),
                HALT_UP_0,
            ],
        )
        .unwrap();
        // 1: (0,0) -> (1,0) s2; 2: (1,0) -> (2,0) s1; 3: (2,0) ... loops forever.
        assert!(!run(&m, 50).halted);

        let m = Machine2D::new(
            2,
            vec![
                Rule::new(0, Move::Right, Next::State(2)),
                HALT_UP_0,
                Rule::new(0, Move::Right, Next::Halt),
                HALT_UP_0,
            ],
        )
        .unwrap();
        let out = run(&m, 50);
        assert_eq!(out.steps, 2);
        assert_eq!(out.output, Some(BinaryMatrix::zeros(1, 2)));
    }

    /// Direct oracle: a k=1 machine halts iff its (1,0) rule halts, in
    /// which case the output is the single written cell.
    #[test]
    fn full_k1_space_matches_direct_oracle() {
        let counts = enumerate_counts(1, DEFAULT_BUDGET, 0..256).unwrap();
        let mut expected_halting = 0;
        for i in 0..256 {
            let m = decode(i, 1).unwrap();
            let r = m.rule(1, 0);
            let out = run(&m, DEFAULT_BUDGET);
            if r.next == Next::Halt {
                expected_halting += 1;
                assert_eq!(
                    out.output,
                    Some(BinaryMatrix::new(1, 1, vec![r.write]).unwrap())
                );
            } else {
                assert!(!out.halted);
            }
        }
        assert_eq!(counts.total_run, 256);
        assert_eq!(counts.total_halting, expected_halting);
        assert!(counts.counts.keys().all(|k| k.shape() == (1, 1)));
        assert_eq!(counts.counts.values().sum::<u64>(), expected_halting);
    }

    #[test]
    fn empty_shard() {
        let counts = enumerate_counts(2, 100, 5..5).unwrap();
        assert_eq!(counts, OutputCounts::default());
        assert!(enumerate_counts(1, 100, 0..257).is_err());
    }

    #[test]
    fn shards_merge_additively() {
        let whole = enumerate_counts(2, 100, 0..20_000).unwrap();
        let a = enumerate_counts(2, 100, 0..7_321).unwrap();
        let b = enumerate_counts(2, 100, 7_321..20_000).unwrap();
        assert_eq!(a.merge(b), whole);
        for &c in whole.counts.values() {
            assert!(c <= whole.total_halting);
        }
    }

    #[test]
    fn progress_reaches_shard_size() {
        let seen = AtomicU64::new(0);
        enumerate_counts_with_progress(2, 50, 0..10_000, |n| {
            seen.fetch_max(n, Ordering::Relaxed);
        })
        .unwrap();
        assert_eq!(seen.load(Ordering::Relaxed), 10_000);
    }
}
