//! The Sophie Germain class number scan: the count `S(X)` of `k <= X` such that `4k + 3`,
//! `2k + 1` and `h(-(4k + 3))` are all prime.
//!
//! Class numbers are computed twice. The first path is the memoised reduced-form count of
//! [`crate::quadorder`]. The second path counts ambiguous reduced forms (one exactly when the
//! class number is odd) and recounts all reduced forms with the middle coefficient in the outer
//! loop. Both must agree on every `k` of the scan.

use crate::arith::int::{gcd_i64, is_prime};
use crate::error::{Error, Result};
use crate::quadorder::class_number_of;
use rayon::prelude::*;
use serde::Serialize;
use std::time::{Duration, Instant};

/// The published count of members up to `10^9`, shown for reference only.
pub const REFERENCE_S_1E9: u64 = 953_967;
/// The published ratio `S(10^9) / (10^9 / log^3 10^9)`, shown for reference only.
pub const REFERENCE_RATIO_1E9: f64 = 8.49;
/// The published heuristic constant `C_PP`, shown for reference only.
pub const REFERENCE_C_PP: f64 = 7.96903;

/// One scanned `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SGRecord {
    /// The index `k`.
    pub k: u64,
    /// `4k + 3`.
    pub ell: u64,
    /// `2k + 1`.
    pub p: u64,
    /// `h(-(4k + 3))`.
    pub h: u64,
    /// Whether `ell`, `p` and `h` are all prime.
    pub member: bool,
}

impl SGRecord {
    fn new(k: u64, h: u64) -> Self {
        let (ell, p) = (4 * k + 3, 2 * k + 1);
        SGRecord { k, ell, p, h, member: is_prime(ell) && is_prime(p) && is_prime(h) }
    }
}

/// Resource limits and parallelism of a scan.
#[derive(Clone, Debug)]
pub struct SgScanOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Largest `k` scanned; larger requests return a partial result.
    pub max_x: u64,
    /// Wall-clock budget; blocks not started before it expires are left out.
    pub time_budget: Duration,
    /// Number of consecutive `k` per block.
    pub block_size: u64,
}

impl Default for SgScanOptions {
    fn default() -> Self {
        SgScanOptions { jobs: None, max_x: 200_000, time_budget: Duration::from_secs(300), block_size: 512 }
    }
}

/// Result of a scan.
#[derive(Clone, Debug, Serialize)]
pub struct SgScanReport {
    /// The requested bound `X`.
    pub x: u64,
    /// Count of members `k <= high_water`.
    pub count: u64,
    /// Members in increasing order.
    pub members: Vec<SGRecord>,
    /// Every `k` in `[1, high_water]` was scanned.
    pub high_water: u64,
    /// Whether `high_water = x`.
    pub complete: bool,
    /// Whether both class number paths agreed on every scanned `k`.
    pub paths_agree: bool,
    /// `S(X) / (X / log^3 X)` at `X = high_water`, when `high_water >= 3`.
    pub ratio: Option<f64>,
    /// Reference text with the published anchors; nothing in it is asserted.
    pub reference: String,
}

/// Class number of `delta < 0` by the second path: ambiguous reduced forms and a recount with
/// the middle coefficient outermost. Fails if the recount parity contradicts the ambiguous count.
pub fn class_number_second_path(delta: i64) -> Result<u64> {
    let n = -delta;
    let mut ambiguous = 0u64;
    let mut count = 0u64;
    let mut b = (n % 2).abs();
    while 3 * b * b <= n {
        let prod = (b * b + n) / 4;
        let mut a = b.max(1);
        while a * a <= prod {
            if prod % a == 0 {
                let c = prod / a;
                if gcd_i64(gcd_i64(a, b), c) == 1 {
                    let amb = b == 0 || b == a || a == c;
                    if amb {
                        ambiguous += 1;
                    }
                    count += if amb { 1 } else { 2 };
                }
            }
            a += 1;
        }
        b += 2;
    }
    if (ambiguous == 1) != (count % 2 == 1) {
        return Err(Error::Internal(format!(
            "parity mismatch at {delta}: {ambiguous} ambiguous forms, recount {count}"
        )));
    }
    Ok(count)
}

/// `S(X)` with default options.
pub fn sg_scan(x: u64) -> Result<SgScanReport> {
    sg_scan_with(x, &SgScanOptions::default())
}

/// `S(X)` with explicit limits.
pub fn sg_scan_with(x: u64, opts: &SgScanOptions) -> Result<SgScanReport> {
    if x == 0 {
        return Err(Error::domain("the scan bound X must be positive"));
    }
    let target = x.min(opts.max_x);
    let block = opts.block_size.max(1);
    let starts: Vec<u64> = (0..target.div_ceil(block)).map(|i| 1 + i * block).collect();
    let deadline = Instant::now() + opts.time_budget;
    let run_block = |&s: &u64| -> Option<Result<(Vec<SGRecord>, bool)>> {
        if Instant::now() > deadline {
            return None;
        }
        let e = (s + block - 1).min(target);
        let mut agree = true;
        let mut members = Vec::new();
        for k in s..=e {
            let delta = -((4 * k + 3) as i64);
            let h = class_number_of(delta);
            match class_number_second_path(delta) {
                Ok(h2) => agree &= h2 == h,
                Err(err) => return Some(Err(err)),
            }
            let rec = SGRecord::new(k, h);
            if rec.member {
                members.push(rec);
            }
        }
        Some(Ok((members, agree)))
    };
    let blocks: Vec<Option<Result<(Vec<SGRecord>, bool)>>> = match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Resource(format!("thread pool: {e}")))?
            .install(|| starts.par_iter().map(run_block).collect()),
        None => starts.par_iter().map(run_block).collect(),
    };
    let mut members = Vec::new();
    let mut paths_agree = true;
    let mut high_water = 0;
    for (s, b) in starts.iter().zip(blocks) {
        let Some(b) = b else { break };
        let (m, agree) = b?;
        members.extend(m);
        paths_agree &= agree;
        high_water = (s + block - 1).min(target);
    }
    let count = members.len() as u64;
    let ratio = (high_water >= 3).then(|| {
        let xf = high_water as f64;
        count as f64 / (xf / xf.ln().powi(3))
    });
    let reference = format!(
        "reference only, not reproduced: S(10^9) = {REFERENCE_S_1E9} with S/(X/log^3 X) = {REFERENCE_RATIO_1E9} at X = 10^9, heuristic constant C_PP = {REFERENCE_C_PP}"
    );
    Ok(SgScanReport { x, count, members, high_water, complete: high_water == x, paths_agree, ratio, reference })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadorder::class_number_uncached;

    #[test]
    fn small_bounds() {
        let r = sg_scan(20).unwrap();
        assert_eq!(r.count, 4);
        assert_eq!(r.members.iter().map(|m| m.k).collect::<Vec<_>>(), vec![5, 11, 14, 20]);
        assert_eq!(r.members.iter().map(|m| m.h).collect::<Vec<_>>(), vec![3, 5, 3, 3]);
        assert!(r.complete && r.paths_agree);
        assert_eq!(sg_scan(4).unwrap().count, 0);
        assert_eq!(sg_scan(1).unwrap().count, 0);
        assert!(sg_scan(1).unwrap().ratio.is_none());
        assert!(sg_scan(0).is_err());
    }

    #[test]
    fn second_path_matches_first() {
        for n in (3..3000i64).filter(|n| n % 4 == 3 || n % 4 == 0) {
            assert_eq!(class_number_second_path(-n).unwrap(), class_number_uncached(-n), "{}", -n);
        }
    }

    #[test]
    fn budget_gives_partial_result() {
        let opts = SgScanOptions { max_x: 100, block_size: 10, ..Default::default() };
        let r = sg_scan_with(1000, &opts).unwrap();
        assert_eq!(r.high_water, 100);
        assert!(!r.complete);
        let opts = SgScanOptions { time_budget: Duration::ZERO, ..Default::default() };
        let r = sg_scan_with(1000, &opts).unwrap();
        assert_eq!((r.high_water, r.count), (0, 0));
    }

    #[test]
    fn jobs_do_not_change_result() {
        let a = sg_scan(2000).unwrap();
        let b = sg_scan_with(2000, &SgScanOptions { jobs: Some(1), block_size: 97, ..Default::default() }).unwrap();
        assert_eq!(a.members, b.members);
    }
}
