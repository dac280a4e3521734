//! Data-parallel helpers. With the `parallel` feature these dispatch to rayon;
//! otherwise they run sequentially with identical results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Below this many elements a row sweep stays on the calling thread.
const PAR_THRESHOLD: usize = 1 << 15;

pub fn for_each_row<F>(data: &mut [u64], width: usize, f: F)
where
    F: Fn(&mut [u64]) + Sync + Send,
{
    if width == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    {
        if data.len() >= PAR_THRESHOLD && rayon::current_num_threads() > 1 {
            data.par_chunks_mut(width).for_each(f);
            return;
        }
    }
    let _ = PAR_THRESHOLD;
    data.chunks_mut(width).for_each(f);
}

/// Order-preserving map.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if items.len() > 1 && rayon::current_num_threads() > 1 {
            return items.par_iter().map(f).collect();
        }
    }
    items.iter().map(f).collect()
}

/// Whether parallel dispatch is compiled in.
pub fn enabled() -> bool {
    cfg!(feature = "parallel")
}
