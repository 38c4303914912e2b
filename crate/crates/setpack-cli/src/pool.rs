//! Thread pool backed by scoped threads.
//!
//! Tasks are split into contiguous index ranges, one per worker, and the
//! outputs are concatenated in range order, so results are identical to the
//! sequential pool no matter the thread count.

use setpack::exec::TaskPool;

pub struct ScopedPool {
    threads: usize,
}

impl ScopedPool {
    pub fn new(threads: usize) -> Self {
        ScopedPool { threads: threads.max(1) }
    }
}

impl TaskPool for ScopedPool {
    fn map_ordered<T: Send>(&self, n: usize, task: &(dyn Fn(usize) -> T + Sync)) -> Vec<T> {
        if self.threads <= 1 || n <= 1 {
            return (0..n).map(task).collect();
        }
        let workers = self.threads.min(n);
        let chunk = n.div_ceil(workers);
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(n);
                    scope.spawn(move || (lo..hi).map(task).collect::<Vec<T>>())
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker thread panicked"))
                .collect()
        })
    }

    fn find_map_ordered<T: Send>(
        &self,
        n: usize,
        task: &(dyn Fn(usize) -> Option<T> + Sync),
    ) -> Option<T> {
        if self.threads <= 1 {
            return (0..n).find_map(task);
        }
        // Evaluate in waves; the first hit in index order wins, so the result
        // matches the sequential scan.
        let mut base = 0;
        while base < n {
            let hi = (base + self.threads).min(n);
            let wave = self.map_ordered(hi - base, &|k| task(base + k));
            if let Some(hit) = wave.into_iter().flatten().next() {
                return Some(hit);
            }
            base = hi;
        }
        None
    }
}
