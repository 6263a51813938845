use std::sync::RwLock;

use rug::{Integer, Rational};

static CACHE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Exact `B_{2k}` for `k = 0..count`, computed once and cached.
///
/// Uses the Akiyama-Tanigawa recurrence over exact rationals; values are
/// appended on demand so later callers reuse earlier work.
pub fn even_bernoulli(count: usize) -> Vec<Rational> {
    {
        let cache = CACHE.read().expect("bernoulli cache poisoned");
        if cache.len() >= count {
            return cache[..count].to_vec();
        }
    }
    let mut cache = CACHE.write().expect("bernoulli cache poisoned");
    if cache.len() < count {
        *cache = compute(count.max(2 * cache.len()).max(16));
    }
    cache[..count].to_vec()
}

fn compute(count: usize) -> Vec<Rational> {
    // B_0..B_{2(count-1)} via the Akiyama-Tanigawa table.
    let top = 2 * (count - 1);
    let mut a: Vec<Rational> = Vec::with_capacity(top + 1);
    let mut out = Vec::with_capacity(count);
    for m in 0..=top {
        a.push(Rational::from((Integer::from(1), Integer::from(m + 1))));
        for j in (1..=m).rev() {
            let diff = Rational::from(&a[j - 1] - &a[j]);
            a[j - 1] = diff * Integer::from(j);
        }
        if m % 2 == 0 {
            out.push(a[0].clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let b = even_bernoulli(7);
        let want = [(1, 1), (1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730)];
        for (x, (n, d)) in b.iter().zip(want) {
            assert_eq!(*x, Rational::from((n, d)));
        }
    }

    #[test]
    fn cache_grows() {
        let a = even_bernoulli(40);
        let b = even_bernoulli(20);
        assert_eq!(a[..20], b[..]);
        // B_{2k} alternates in sign for k >= 1
        for k in 1..40 {
            assert_eq!(a[k] > 0, k % 2 == 1);
        }
    }
}
