//! Permutations, vincular patterns and separable permutations.

mod permutation;
mod separable;
mod vincular;

pub use permutation::Permutation;
pub use separable::{decompose, flatten, for_each_separable, generate_separable, is_separable, SeparableTree};
pub use vincular::VincularPattern;

pub fn contains_vincular(p: &Permutation, q: &VincularPattern) -> bool {
    q.occurs_in(p.values())
}

/// Separable permutations of size `n` avoiding every pattern in `patterns`.
pub fn count_avoiders(n: usize, patterns: &[VincularPattern]) -> u64 {
    let mut count = 0;
    for_each_separable(n, |p| {
        if patterns.iter().all(|q| !q.occurs_in(p)) {
            count += 1;
        }
    });
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pats(v: &[&str]) -> Vec<VincularPattern> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn avoider_counts() {
        let all8 = pats(&["2143", "3412"]);
        let c: Vec<u64> = (1..=6).map(|n| count_avoiders(n, &all8)).collect();
        assert_eq!(c, [1, 2, 6, 20, 68, 232]);
        assert_eq!(count_avoiders(4, &[]), 22);
    }
}
