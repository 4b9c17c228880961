//! Sign bookkeeping for graded antisymmetric and graded symmetric tuples.

use super::LinfError;

pub(crate) fn odd(d: i32) -> bool {
    d.rem_euclid(2) == 1
}

/// Sign relating `l(x_{perm[0]}, …, x_{perm[k-1]})` to `l(x_0, …, x_{k-1})` under graded
/// antisymmetry, where each adjacent transposition of `a, b` contributes `−(−1)^{|a||b|}`.
///
/// The sign is a product over inverted pairs, so it is its own inverse.
pub fn koszul_sign(perm: &[usize], degrees: &[i32]) -> Result<i32, LinfError> {
    if perm.len() != degrees.len() {
        return Err(LinfError::InvalidPermutation(format!(
            "permutation of length {} against {} degrees",
            perm.len(),
            degrees.len()
        )));
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(LinfError::InvalidPermutation(format!("{perm:?}")));
        }
    }
    let mut negative = false;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                negative ^= antisym_swap_negates(degrees[perm[i]], degrees[perm[j]]);
            }
        }
    }
    Ok(if negative { -1 } else { 1 })
}

/// Whether swapping adjacent `a, b` in an antisymmetric bracket flips the sign.
pub(crate) fn antisym_swap_negates(a: i32, b: i32) -> bool {
    !(odd(a) && odd(b))
}

/// Whether swapping adjacent `a, b` in a graded symmetric word flips the sign.
pub(crate) fn sym_swap_negates(a: i32, b: i32) -> bool {
    odd(a) && odd(b)
}

/// Sorts a tuple of basis indices in place, tracking the sign.
///
/// `negates(a, b)` tells whether an adjacent swap of the elements with these indices flips the
/// sign. Returns `None` when the tuple is forced to vanish (a repeated element whose self-swap
/// flips the sign), otherwise `Some(true)` if the sorted tuple carries a minus sign.
pub(crate) fn canonicalize(
    tuple: &mut [usize],
    negates: impl Fn(usize, usize) -> bool,
) -> Option<bool> {
    let mut negative = false;
    for i in 1..tuple.len() {
        let mut j = i;
        while j > 0 && tuple[j - 1] > tuple[j] {
            negative ^= negates(tuple[j - 1], tuple[j]);
            tuple.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in tuple.windows(2) {
        if w[0] == w[1] && negates(w[0], w[0]) {
            return None;
        }
    }
    Some(negative)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(koszul_sign(&[0, 1], &[1, 1]).unwrap(), 1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 1]).unwrap(), 1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 2]).unwrap(), -1);
        assert_eq!(koszul_sign(&[0, 1, 2], &[0, 3, 5]).unwrap(), 1);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(koszul_sign(&[0, 0], &[1, 1]).is_err());
        assert!(koszul_sign(&[0], &[1, 1]).is_err());
    }

    #[test]
    fn canonical_zero_for_repeated_even() {
        let degs = [0, 1];
        let mut t = [0, 0];
        assert_eq!(canonicalize(&mut t, |a, b| antisym_swap_negates(degs[a], degs[b])), None);
        let mut t = [1, 1];
        assert_eq!(canonicalize(&mut t, |a, b| antisym_swap_negates(degs[a], degs[b])), Some(false));
        let mut t = [1, 0];
        assert_eq!(canonicalize(&mut t, |a, b| antisym_swap_negates(degs[a], degs[b])), Some(true));
        assert_eq!(t, [0, 1]);
    }
}
