//! Small permutation utilities shared by the hypergraph and tensor code.

/// First value occurring twice in `t`, if any.
pub(crate) fn has_duplicates(t: &[usize]) -> Option<usize> {
    let mut s = t.to_vec();
    s.sort_unstable();
    s.windows(2).find(|w| w[0] == w[1]).map(|w| w[0])
}

/// `true` when `t` (distinct entries) is an odd permutation of its sorted
/// arrangement.
pub(crate) fn is_odd_arrangement(t: &[usize]) -> bool {
    let mut inversions = 0usize;
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            if t[i] > t[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Lexicographically smallest tuple reachable from `t` by an even
/// permutation of positions. For three nodes this is the minimal rotation.
pub(crate) fn anchor_even_orbit(t: &[usize]) -> Vec<usize> {
    let mut s = t.to_vec();
    s.sort_unstable();
    if is_odd_arrangement(t) {
        let m = s.len();
        s.swap(m - 2, m - 1);
    }
    s
}

pub(crate) fn swap_first_two(t: &[usize]) -> Vec<usize> {
    let mut s = t.to_vec();
    s.swap(0, 1);
    s
}

/// Parity of the full index reversal of `m` positions.
pub(crate) fn reversal_is_odd(m: usize) -> bool {
    (m * m.saturating_sub(1) / 2) % 2 == 1
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}
