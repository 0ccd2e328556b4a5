//! Permutations of `{1, 2, …}` moving finitely many points.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::composition::{parse_list, write_list, WeakComposition};
use crate::error::{Error, Result};

/// One-line notation with trailing fixed points stripped, so `[2,1]` and
/// `[2,1,3]` are the same value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn identity() -> Self {
        Permutation(Vec::new())
    }

    /// Validates that `images` is a bijection of `1..=images.len()`.
    pub fn from_one_line(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::Parse(format!(
                    "[{}] is not a permutation of 1..={n}",
                    images.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                )));
            }
            seen[v] = true;
        }
        Ok(Self::normalized(images))
    }

    fn normalized(mut images: Vec<u32>) -> Self {
        while images.last().is_some_and(|&v| v as usize == images.len()) {
            images.pop();
        }
        Permutation(images)
    }

    /// Smallest `n` with `w ∈ S_n`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// `w(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> u32 {
        self.0.get(i - 1).copied().unwrap_or(i as u32)
    }

    pub fn one_line(&self) -> &[u32] {
        &self.0
    }

    /// One-line notation extended by fixed points to length `n` (`n ≥ len`).
    pub fn one_line_padded(&self, n: usize) -> Vec<u32> {
        (1..=n.max(self.len())).map(|i| self.apply(i)).collect()
    }

    /// `w s_i`: swap the values in positions `i` and `i+1`.
    pub fn swapped(&self, i: usize) -> Self {
        let mut v = self.one_line_padded(i + 1);
        v.swap(i - 1, i);
        Self::normalized(v)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = i as u32 + 1;
        }
        Self::normalized(inv)
    }

    /// `invcode(w)_i = #{j > i : w(i) > w(j)}`.
    pub fn invcode(&self) -> WeakComposition {
        let w = &self.0;
        WeakComposition::new(
            (0..w.len())
                .map(|i| w[i + 1..].iter().filter(|&&x| x < w[i]).count() as u32)
                .collect(),
        )
    }

    pub fn length(&self) -> u64 {
        self.invcode().size()
    }

    /// Dominant permutations are those whose inversion code is a partition.
    pub fn is_dominant(&self) -> bool {
        self.invcode().is_partition()
    }

    /// Inverse of [`Permutation::invcode`] on `S_+`. Every weak composition
    /// is the code of exactly one permutation there.
    pub fn from_code(code: &WeakComposition) -> Self {
        let n = (1..=code.len())
            .map(|i| i + code.get(i) as usize)
            .max()
            .unwrap_or(0);
        Self::from_code_in(code, n).expect("decoding in S_n with n = max(i + c_i) cannot fail")
    }

    /// Lehmer decoding inside `S_n`; fails when some `c_i > n − i`.
    pub fn from_code_in(code: &WeakComposition, n: usize) -> Result<Self> {
        if code.len() > n {
            return Err(Error::InvalidCode(format!(
                "({code}) has support beyond position {n}"
            )));
        }
        let mut remaining: Vec<u32> = (1..=n as u32).collect();
        let mut images = Vec::with_capacity(n);
        for i in 1..=n {
            let c = code.get(i) as usize;
            if c >= remaining.len() {
                return Err(Error::InvalidCode(format!(
                    "({code}): entry {c} at position {i} exceeds the {} remaining values",
                    remaining.len()
                )));
            }
            images.push(remaining.remove(c));
        }
        Ok(Self::normalized(images))
    }

    /// `std_{m,n}(α)`: the permutation with `w(n+1) < w(n+2) < …` whose first
    /// `n` values are read off `r_{m+1,n}(α)`. Entries of `r_{m+1,n}(α)` equal
    /// to `m+1` are replaced by `m+1, m+2, …` from left to right.
    pub fn standardize(alpha: &WeakComposition, m: u32, n: usize) -> Result<Self> {
        alpha.require_snowy()?;
        if !alpha.fits_box(m, n) {
            return Err(Error::OutOfRange(format!(
                "std_{{{m},{n}}} is undefined on ({alpha}): need support in [{n}] and entries <= {m}"
            )));
        }
        let r = alpha.reverse_complement(m + 1, n)?.padded(n);
        let mut images = Vec::with_capacity(n);
        let mut overflow = 0;
        for &ri in &r {
            if ri <= m {
                images.push(ri);
            } else {
                overflow += 1;
                images.push(m + overflow);
            }
        }
        let top = m + overflow;
        let mut used = vec![false; top as usize + 1];
        for &v in &images {
            used[v as usize] = true;
        }
        images.extend((1..=top).filter(|&v| !used[v as usize]));
        Self::from_one_line(images)
    }

    /// The snowy `δ` with `std_{m,n}(δ) = self`, when one exists.
    pub fn destandardize(&self, m: u32, n: usize) -> Option<WeakComposition> {
        let delta: Vec<u32> = (1..=n)
            .map(|k| {
                let v = self.apply(n + 1 - k);
                if v <= m {
                    m + 1 - v
                } else {
                    0
                }
            })
            .collect();
        let delta = WeakComposition::new(delta);
        match Self::standardize(&delta, m, n) {
            Ok(w) if &w == self => Some(delta),
            _ => None,
        }
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Self> {
        let mut cur: Vec<u32> = (1..=n as u32).collect();
        let mut out = vec![Self::normalized(cur.clone())];
        while next_permutation(&mut cur) {
            out.push(Self::normalized(cur.clone()));
        }
        out
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Ordered by inversion code in tail-lex order.
impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.invcode().cmp(&other.invcode())
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Comma-separated one-line notation; the identity prints as `1`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        write_list(f, &self.0)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Permutation::from_one_line(parse_list(s)?)
    }
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Permutation::from_one_line(v)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        Permutation::from_one_line(v).map_err(serde::de::Error::custom)
    }
}
