//! Enumeration of all permutations of 0..n with parity, via Heap's algorithm.

/// Call `f(perm, parity)` for each of the n! permutations; `parity` is 0 for
/// even and 1 for odd permutations. The identity comes first.
pub fn for_each_permutation<F: FnMut(&[usize], u8)>(n: usize, mut f: F) {
    let mut items: Vec<usize> = (0..n).collect();
    let mut parity = 0u8;
    f(&items, parity);
    if n < 2 {
        return;
    }
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            parity ^= 1;
            f(&items, parity);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Cycle lengths of a permutation given as the image list `sigma[j]`.
pub fn cycle_lengths(sigma: &[usize]) -> Vec<usize> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = sigma[j];
            len += 1;
        }
        lengths.push(len);
    }
    lengths
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_parity_balance() {
        for n in 0..=6 {
            let mut count = 0usize;
            let mut signed = 0i64;
            for_each_permutation(n, |_, parity| {
                count += 1;
                signed += if parity == 0 { 1 } else { -1 };
            });
            let factorial: usize = (1..=n).product::<usize>().max(1);
            assert_eq!(count, factorial);
            if n >= 2 {
                assert_eq!(signed, 0);
            }
        }
    }

    #[test]
    fn parity_matches_cycle_structure() {
        // parity = (-1)^(n - #cycles)
        for_each_permutation(5, |sigma, parity| {
            let cycles = cycle_lengths(sigma).len();
            let expect = ((5 - cycles) % 2) as u8;
            assert_eq!(parity, expect, "sigma={sigma:?}");
        });
    }
}
