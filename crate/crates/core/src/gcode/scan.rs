//! Exhaustive codeword enumeration along a q-ary Gray code.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactla::BitRow;
use crate::ffield::{FieldSpec, Scalar};
use crate::quadgeo::AlternatingForm;

use super::GrassCode;

/// Default number of codeword evaluations an exhaustive scan may spend.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub budget: u128,
    /// Worker threads; `0` uses the global rayon pool.
    pub workers: usize,
    /// Keep the messages of all minimum-weight codewords.
    pub keep_witnesses: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { budget: DEFAULT_BUDGET, workers: 0, keep_witnesses: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanResult {
    pub d_min: usize,
    pub min_weight_count: u64,
    /// Weight distribution over all nonzero codewords.
    pub spectrum: BTreeMap<usize, u64>,
    /// Messages (over the reduced generator rows) of minimum-weight codewords,
    /// sorted lexicographically by rep.
    pub witness_messages: Vec<Vec<Scalar>>,
    pub evaluations: u128,
}

impl ScanResult {
    /// One representative form per minimum-weight codeword.
    pub fn witness_forms(&self, code: &GrassCode) -> Result<Vec<AlternatingForm>> {
        self.witness_messages.iter().map(|m| code.form_of_message(m)).collect()
    }
}

fn needed_evaluations(q: u32, k: usize) -> u128 {
    (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

struct BlockResult {
    min: usize,
    messages: Vec<Vec<Scalar>>,
    hist: BTreeMap<usize, u64>,
}

impl BlockResult {
    fn new() -> Self {
        BlockResult { min: usize::MAX, messages: Vec::new(), hist: BTreeMap::new() }
    }

    #[inline]
    fn record(&mut self, w: usize, keep: bool, message: impl FnOnce() -> Vec<Scalar>) {
        *self.hist.entry(w).or_insert(0) += 1;
        if w < self.min {
            self.min = w;
            self.messages.clear();
        }
        if w == self.min && keep {
            self.messages.push(message());
        }
    }
}

enum Rows {
    Binary(Vec<BitRow>),
    /// `scaled[j][d]` is `d * row_j` for every field element rep `d`.
    General(Vec<Vec<Vec<Scalar>>>),
}

struct Walker<'a> {
    field: FieldSpec,
    code: &'a GrassCode,
    rows: Rows,
    suffix: usize,
    keep: bool,
}

impl Walker<'_> {
    fn message(&self, digits: &[u32], prefix: &[u32]) -> Vec<Scalar> {
        digits.iter().chain(prefix).map(|&d| Scalar::from_rep(d)).collect()
    }

    fn run_block(&self, block: u64) -> Result<BlockResult> {
        let q = self.field.q();
        let k = self.code.dim();
        let mut prefix = vec![0u32; k - self.suffix];
        let mut b = block;
        for d in prefix.iter_mut() {
            *d = (b % q as u64) as u32;
            b /= q as u64;
        }
        let start_msg = self.message(&vec![0; self.suffix], &prefix);
        let start = self.code.encode(&start_msg)?;
        let states = (q as u64).pow(self.suffix as u32);
        let mut digits = vec![0u32; self.suffix];
        let mut out = BlockResult::new();
        let skip_zero = block == 0;

        let final_word = match &self.rows {
            Rows::Binary(rows) => {
                let mut word = BitRow::from_scalars(&start)?;
                if !skip_zero {
                    out.record(word.weight(), self.keep, || self.message(&digits, &prefix));
                }
                for i in 1..states {
                    let j = i.trailing_zeros() as usize;
                    digits[j] ^= 1;
                    word.xor_assign(&rows[j]);
                    out.record(word.weight(), self.keep, || self.message(&digits, &prefix));
                }
                word.to_scalars()
            }
            Rows::General(scaled) => {
                let f = &self.field;
                let mut word = start;
                let mut weight = word.iter().filter(|x| !x.is_zero()).count();
                if !skip_zero {
                    out.record(weight, self.keep, || self.message(&digits, &prefix));
                }
                let deltas: Vec<usize> =
                    (0..q).map(|t| f.sub(Scalar::from_rep((t + 1) % q), Scalar::from_rep(t)).rep() as usize).collect();
                for i in 1..states {
                    let mut j = 0;
                    let mut r = i;
                    while r % q as u64 == 0 {
                        r /= q as u64;
                        j += 1;
                    }
                    let old = digits[j];
                    digits[j] = (old + 1) % q;
                    let row = &scaled[j][deltas[old as usize]];
                    for (c, &d) in word.iter_mut().zip(row) {
                        if d.is_zero() {
                            continue;
                        }
                        let was = !c.is_zero();
                        *c = f.add(*c, d);
                        match (was, c.is_zero()) {
                            (true, true) => weight -= 1,
                            (false, false) => weight += 1,
                            _ => {}
                        }
                    }
                    out.record(weight, self.keep, || self.message(&digits, &prefix));
                }
                word
            }
        };
        let last = self.code.encode(&self.message(&digits, &prefix))?;
        if last != final_word {
            return Err(Error::Inconsistent(format!("Gray walk drifted from direct encoding in block {block}")));
        }
        Ok(out)
    }
}

/// Full weight scan of all `q^K - 1` nonzero codewords.
fn scan(code: &GrassCode, opts: &ScanOptions) -> Result<ScanResult> {
    let field = code.space().field().clone();
    let q = field.q();
    let k = code.dim();
    let needed = needed_evaluations(q, k);
    if needed > opts.budget {
        return Err(Error::BudgetExceeded { needed, budget: opts.budget });
    }
    let g = code.gen_reduced();
    let rows = if q == 2 {
        Rows::Binary(g.row_iter().map(BitRow::from_scalars).collect::<Result<_>>()?)
    } else {
        Rows::General(
            g.row_iter()
                .map(|r| field.elements().map(|d| r.iter().map(|&x| field.mul(d, x)).collect()).collect())
                .collect(),
        )
    };
    let workers = if opts.workers == 0 { rayon::current_num_threads() } else { opts.workers };
    let target_blocks = (workers * 8).max(1) as u128;
    let mut prefix_len = 0;
    while prefix_len < k && (q as u128).pow(prefix_len as u32) < target_blocks {
        prefix_len += 1;
    }
    let walker = Walker { field: field.clone(), code, rows, suffix: k - prefix_len, keep: opts.keep_witnesses };
    let blocks = (q as u64).pow(prefix_len as u32);
    let run = || (0..blocks).into_par_iter().map(|b| walker.run_block(b)).collect::<Result<Vec<_>>>();
    let results = if opts.workers == 0 {
        run()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.workers)
            .build()
            .map_err(|e| Error::Inconsistent(format!("thread pool: {e}")))?
            .install(run)?
    };

    let mut spectrum = BTreeMap::new();
    let mut d_min = usize::MAX;
    let mut witnesses = Vec::new();
    for r in results {
        for (w, c) in r.hist {
            *spectrum.entry(w).or_insert(0) += c;
        }
        if r.min < d_min {
            d_min = r.min;
            witnesses = r.messages;
        } else if r.min == d_min {
            witnesses.extend(r.messages);
        }
    }
    witnesses.sort();
    let min_weight_count = spectrum.get(&d_min).copied().unwrap_or(0);
    Ok(ScanResult { d_min, min_weight_count, spectrum, witness_messages: witnesses, evaluations: needed })
}

pub fn min_distance_exhaustive(code: &GrassCode, opts: &ScanOptions) -> Result<ScanResult> {
    scan(code, opts)
}

/// Weight distribution of all nonzero codewords.
pub fn spectrum(code: &GrassCode, opts: &ScanOptions) -> Result<BTreeMap<usize, u64>> {
    let opts = ScanOptions { keep_witnesses: false, ..opts.clone() };
    Ok(scan(code, &opts)?.spectrum)
}
