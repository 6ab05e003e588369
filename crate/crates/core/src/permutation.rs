//! Permutations of `{0, .., m-1}` with cached sign.

/// A bijection of `{0, .., m-1}` given by its image array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
    sign: i8,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            image: (0..m).collect(),
            sign: 1,
        }
    }

    /// `None` unless `image` is a bijection of `0..image.len()`.
    pub fn from_image(image: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        let sign = inversion_sign(&image);
        Some(Permutation { image, sign })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// `(x_{σ(0)}, .., x_{σ(m-1)})`.
    pub fn permute<T: Copy>(&self, xs: &[T]) -> Vec<T> {
        self.image.iter().map(|&i| xs[i]).collect()
    }

    /// All `m!` permutations in lexicographic order of their image arrays.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..m).collect();
        loop {
            out.push(Permutation {
                sign: inversion_sign(&current),
                image: current.clone(),
            });
            if !next_permutation(&mut current) {
                return out;
            }
        }
    }
}

/// Parity of the inversion count as `±1`.
pub fn inversion_sign<T: Ord>(xs: &[T]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sorts a tuple of distinct items, returning the sign of the sorting
/// permutation, or `None` when the tuple has a repeat.
pub fn sort_with_sign<T: Ord + Copy>(xs: &[T]) -> Option<(Vec<T>, i8)> {
    let sign = inversion_sign(xs);
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sorted, sign))
}

fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = (1..xs.len()).rev().find(|&i| xs[i - 1] < xs[i]) else {
        return false;
    };
    let j = (i..xs.len()).rev().find(|&j| xs[j] > xs[i - 1]).unwrap();
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_factorial_many_with_balanced_signs() {
        for m in 0..=5 {
            let all = Permutation::all(m);
            let expected: usize = (1..=m).product();
            assert_eq!(all.len(), expected);
            if m >= 2 {
                let total: i64 = all.iter().map(|p| p.sign() as i64).sum();
                assert_eq!(total, 0);
            }
        }
    }

    #[test]
    fn sign_of_transposition_and_cycle() {
        assert_eq!(Permutation::from_image(vec![1, 0, 2]).unwrap().sign(), -1);
        assert_eq!(Permutation::from_image(vec![1, 2, 0]).unwrap().sign(), 1);
        assert!(Permutation::from_image(vec![0, 0]).is_none());
        assert!(Permutation::from_image(vec![0, 3]).is_none());
    }

    #[test]
    fn sort_sign_and_repeats() {
        assert_eq!(sort_with_sign(&[3, 1, 2]), Some((vec![1, 2, 3], 1)));
        assert_eq!(sort_with_sign(&[2, 1]), Some((vec![1, 2], -1)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
    }
}
