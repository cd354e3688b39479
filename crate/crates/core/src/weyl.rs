//! The rank encoding onto the triangular compactum, its shift, and the
//! frequency decoder.
//!
//! A word of distinct reals is encoded by `z_k = #{i ≤ k : x_i ≤ x_k}`,
//! the rank of each coordinate among the prefix it arrives in. The
//! encoding determines, and is determined by, the relative ordering of
//! the word, so the shift of the underlying sequence and the statistic
//! `d_n` counting coordinates below the first one are both computable
//! from `z` alone.

use thiserror::Error;

use crate::tableau::Realization;

#[derive(Debug, Error, PartialEq)]
pub enum WeylError {
    #[error("z[{index}] = {value} violates 1 ≤ z_k ≤ k")]
    InvalidZ { index: usize, value: usize },
    #[error("sequence too short")]
    TooShort,
}

/// A point of the triangular compactum: `z[k] ∈ {1..k}` for each `k`
/// (1-based positions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZSequence {
    z: Vec<usize>,
}

impl ZSequence {
    pub fn new(z: Vec<usize>) -> Result<Self, WeylError> {
        for (i, &v) in z.iter().enumerate() {
            if v < 1 || v > i + 1 {
                return Err(WeylError::InvalidZ { index: i + 1, value: v });
            }
        }
        Ok(ZSequence { z })
    }

    pub fn values(&self) -> &[usize] {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }
}

/// Fenwick tree over 1..=n for prefix counts.
struct Bit {
    tree: Vec<i64>,
}

impl Bit {
    fn new(n: usize) -> Self {
        Bit {
            tree: vec![0; n + 1],
        }
    }

    fn add(&mut self, mut i: usize, delta: i64) {
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    fn prefix(&self, mut i: usize) -> i64 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }

    /// Smallest index whose prefix sum reaches `k` (1-based `k`).
    fn kth(&self, k: usize) -> usize {
        let mut pos = 0;
        let mut rem = k as i64;
        let mut step = self.tree.len().next_power_of_two() / 2;
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] < rem {
                rem -= self.tree[next];
                pos = next;
            }
            step /= 2;
        }
        pos + 1
    }
}

/// Overall ranks of the word: `rank[k] = #{i : x_i ≤ x_k}` over the whole
/// word, values `1..=n`.
fn overall_ranks(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite"));
    let mut rank = vec![0; n];
    for (r, &i) in idx.iter().enumerate() {
        rank[i] = r + 1;
    }
    rank
}

/// Encodes a word by prefix ranks: `z_k = #{i ≤ k : x_i ≤ x_k}`.
pub fn encode_weyl(x: &Realization) -> ZSequence {
    let rank = overall_ranks(x.values());
    let mut bit = Bit::new(x.len());
    let mut z = Vec::with_capacity(x.len());
    for &r in &rank {
        bit.add(r, 1);
        z.push(bit.prefix(r) as usize);
    }
    ZSequence { z }
}

/// Recovers the final ranking from the prefix ranks: `r[k]` is the rank
/// of `x_k` within the whole word, for any word encoding to `z`.
///
/// The word is rebuilt as a sequence of list insertions (`x_k` enters the
/// sorted order at position `z_k`); final positions are recovered by
/// assigning, in reverse insertion order, the `z_k`-th currently free
/// slot.
pub fn ranking_from_z(z: &ZSequence) -> Vec<usize> {
    let n = z.len();
    let mut bit = Bit::new(n);
    for i in 1..=n {
        bit.add(i, 1);
    }
    let mut rank = vec![0; n];
    for k in (0..n).rev() {
        let slot = bit.kth(z.z[k]);
        bit.add(slot, -1);
        rank[k] = slot;
    }
    rank
}

/// The shift conjugated through the encoding: `shift_w(encode(x))`
/// equals `encode(x₂..x_n)` exactly. The comparison `x₁ ≷ x_{k+1}` is
/// evaluated through [`ranking_from_z`].
pub fn shift_w(z: &ZSequence) -> Result<ZSequence, WeylError> {
    if z.len() < 2 {
        return Err(WeylError::TooShort);
    }
    let rank = ranking_from_z(z);
    let shifted = (1..z.len())
        .map(|k| z.z[k] - usize::from(rank[k] > rank[0]))
        .collect();
    Ok(ZSequence { z: shifted })
}

/// The statistic `d_n = #{i < n : x_1 > x_i}`, computed from the
/// ranking. The index `i` runs over `1..n-1`; `i = 1` never counts.
pub fn d_stat(z: &ZSequence) -> usize {
    let n = z.len();
    if n <= 1 {
        return 0;
    }
    let rank = ranking_from_z(z);
    rank[1..n - 1].iter().filter(|&&r| r < rank[0]).count()
}

/// The frequency estimator `d_n / n` of the first coordinate; lies in
/// `[0, 1)`.
pub fn decode_first_weyl(z: &ZSequence) -> f64 {
    if z.is_empty() {
        return 0.0;
    }
    d_stat(z) as f64 / z.len() as f64
}
