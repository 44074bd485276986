//! Exhaustive enumeration of `2^k` bitmasks, optionally sharded across
//! threads. Shards are contiguous mask ranges merged in ascending order, so
//! any merge that is associative gives the same answer for every worker
//! count.

use std::ops::Range;

use crate::error::{Error, Result};

/// Default bound on the number of items an exhaustive sweep may range over.
pub const DEFAULT_CAP: usize = 24;

/// Hard limit imposed by 64-bit masks.
pub const MAX_CAP: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    /// Largest item count accepted; sweeps cost `2^items`.
    pub cap: usize,
    /// Number of threads; `0` and `1` both mean single-threaded.
    pub workers: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            cap: DEFAULT_CAP,
            workers: 1,
        }
    }
}

impl SweepConfig {
    pub fn with_cap(cap: usize) -> Self {
        SweepConfig {
            cap,
            ..Default::default()
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub(crate) fn check(&self, items: usize) -> Result<()> {
        let cap = self.cap.min(MAX_CAP);
        if items > cap {
            return Err(Error::CapExceeded { items, cap });
        }
        Ok(())
    }
}

/// Folds `visit` over every mask in `0..2^items` and merges shard results
/// left to right.
pub(crate) fn sweep<A, I, V, M>(
    items: usize,
    cfg: &SweepConfig,
    init: I,
    visit: V,
    merge: M,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, u64) + Sync,
    M: Fn(A, A) -> A,
{
    cfg.check(items)?;
    let total = 1u64 << items;
    let workers = (cfg.workers.max(1) as u64).min(total);
    let run = |range: Range<u64>| {
        let mut acc = init();
        for mask in range {
            visit(&mut acc, mask);
        }
        acc
    };
    if workers == 1 {
        return Ok(run(0..total));
    }
    let chunk = total.div_ceil(workers);
    let parts: Vec<A> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let range = (w * chunk).min(total)..((w + 1) * chunk).min(total);
                let run = &run;
                scope.spawn(move || run(range))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    });
    Ok(parts.into_iter().reduce(merge).expect("at least one shard"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn visits_every_mask_in_order() {
        for workers in [1, 2, 3, 7, 100] {
            let cfg = SweepConfig::with_cap(10).workers(workers);
            let seen = sweep(
                5,
                &cfg,
                Vec::new,
                |acc: &mut Vec<u64>, m| acc.push(m),
                |mut a, b| {
                    a.extend(b);
                    a
                },
            )
            .unwrap();
            assert_eq!(seen, (0..32).collect::<Vec<_>>(), "workers = {workers}");
        }
    }

    #[test]
    fn cap_enforced() {
        let cfg = SweepConfig::with_cap(3);
        let r = sweep(4, &cfg, || (), |_, _| {}, |a, _| a);
        assert_eq!(r, Err(Error::CapExceeded { items: 4, cap: 3 }));
        let cfg = SweepConfig::with_cap(1000);
        let r = sweep(64, &cfg, || (), |_, _| {}, |a, _| a);
        assert_eq!(
            r,
            Err(Error::CapExceeded {
                items: 64,
                cap: MAX_CAP
            })
        );
    }

    #[test]
    fn zero_items_is_one_mask() {
        let n = sweep(
            0,
            &SweepConfig::default(),
            || 0,
            |a, _| *a += 1,
            |a, b| a + b,
        )
        .unwrap();
        assert_eq!(n, 1);
    }
}
