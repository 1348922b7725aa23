//! Internal execution strategy for enumeration work.
//!
//! Enumerations split into independent chunks keyed by the first coefficient;
//! the chunks are processed either sequentially or, with the `parallel`
//! feature (default), on the rayon thread pool when the estimated work is
//! worth the fan-out. Results are concatenated in chunk order either way, so
//! callers observe identical, deterministic output regardless of strategy.

/// Estimated leaf count below which fanning out is not worth it.
#[cfg(feature = "parallel")]
pub(crate) const PARALLEL_THRESHOLD: u64 = 1 << 12;

/// Apply `f` to every item and concatenate the results in item order.
/// `estimated_work` is a rough leaf count for the whole job; small jobs stay
/// sequential even in parallel builds.
#[cfg(feature = "parallel")]
pub(crate) fn ordered_flat_map<A, T, F>(estimated_work: u64, items: Vec<A>, f: F) -> Vec<T>
where
    A: Send,
    T: Send,
    F: Fn(A) -> Vec<T> + Sync + Send,
{
    use rayon::prelude::*;
    if estimated_work >= PARALLEL_THRESHOLD && items.len() > 1 {
        // collect::<Vec<Vec<_>>> keeps chunk order; flatten preserves it.
        let chunks: Vec<Vec<T>> = items.into_par_iter().map(f).collect();
        chunks.into_iter().flatten().collect()
    } else {
        items.into_iter().flat_map(f).collect()
    }
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn ordered_flat_map<A, T, F>(_estimated_work: u64, items: Vec<A>, f: F) -> Vec<T>
where
    A: Send,
    T: Send,
    F: Fn(A) -> Vec<T> + Sync + Send,
{
    items.into_iter().flat_map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_stable_above_and_below_the_threshold() {
        let items: Vec<u64> = (0..64).collect();
        let expand = |x: u64| (0..x % 5).map(|k| x * 10 + k).collect::<Vec<_>>();
        let small = ordered_flat_map(1, items.clone(), expand);
        let large = ordered_flat_map(u64::MAX, items.clone(), expand);
        let reference: Vec<u64> = items.into_iter().flat_map(expand).collect();
        assert_eq!(small, reference);
        assert_eq!(large, reference);
    }
}
