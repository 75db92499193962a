//! Data-parallel helpers.
//!
//! With the `parallel` feature the helpers run on the rayon pool unless the
//! process-wide mode has been switched to [`Mode::Sequential`]. Results are
//! always returned in input order, so both modes produce identical output.

use std::sync::atomic::{AtomicU8, Ordering};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sequential,
    Parallel,
}

static MODE: AtomicU8 = AtomicU8::new(1);

pub fn set_mode(mode: Mode) {
    MODE.store(matches!(mode, Mode::Parallel) as u8, Ordering::SeqCst);
}

pub fn mode() -> Mode {
    if cfg!(feature = "parallel") && MODE.load(Ordering::SeqCst) == 1 {
        Mode::Parallel
    } else {
        Mode::Sequential
    }
}

/// Ordered map over a slice.
pub fn map<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == Mode::Parallel {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    items.iter().map(f).collect()
}

/// Ordered map over `0..n`.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == Mode::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    (0..n).map(f).collect()
}

/// First index (in order) whose predicate holds.
pub fn find_first<T, F>(items: &[T], f: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode() == Mode::Parallel {
        use rayon::prelude::*;
        return items.par_iter().position_first(f);
    }
    items.iter().position(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let v: Vec<u64> = (0..1000).collect();
        set_mode(Mode::Sequential);
        let a = map(&v, |x| x * x + 1);
        let fa = find_first(&v, |x| x % 97 == 96);
        set_mode(Mode::Parallel);
        let b = map(&v, |x| x * x + 1);
        let fb = find_first(&v, |x| x % 97 == 96);
        assert_eq!(a, b);
        assert_eq!(fa, fb);
        assert_eq!(map_range(10, |i| i * 2)[9], 18);
    }
}
