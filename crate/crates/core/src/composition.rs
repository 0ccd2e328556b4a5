//! Weak compositions and the maps between them.
//!
//! A [`WeakComposition`] is an infinite sequence of non-negative integers with
//! finite support. It is stored as its shortest prefix (no trailing zeros), so
//! derived equality and hashing already ignore padding. Indices in the public
//! API are 1-based to match the usual notation `α_1, α_2, …`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct WeakComposition(Vec<u32>);

impl WeakComposition {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        WeakComposition(entries)
    }

    pub fn zero() -> Self {
        WeakComposition(Vec::new())
    }

    /// The stored prefix. Its length is the smallest `n` with `supp ⊆ [n]`.
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.0
    }

    /// `α_i` for 1-based `i`; zero beyond the stored prefix.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Smallest `n` such that `supp(α) ⊆ [n]`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `|α|`.
    pub fn size(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn max_entry(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn support(&self) -> Vec<usize> {
        (1..=self.len()).filter(|&i| self.get(i) > 0).collect()
    }

    /// The first `n` entries, zero padded. Entries beyond `n` are dropped.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        (1..=n).map(|i| self.get(i)).collect()
    }

    pub fn is_snowy(&self) -> bool {
        let mut seen: Vec<u32> = self.0.iter().copied().filter(|&a| a > 0).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub(crate) fn require_snowy(&self) -> Result<()> {
        if self.is_snowy() {
            Ok(())
        } else {
            Err(Error::NotSnowy(self.to_string()))
        }
    }

    /// `s_i α`: swap entries `i` and `i+1`.
    pub fn swapped(&self, i: usize) -> Self {
        let n = self.len().max(i + 1);
        let mut v = self.padded(n);
        v.swap(i - 1, i);
        WeakComposition::new(v)
    }

    /// Whether `supp(α) ⊆ [n]` and every entry is at most `m`.
    pub fn fits_box(&self, m: u32, n: usize) -> bool {
        self.len() <= n && self.max_entry() <= m
    }

    /// Tail-lexicographic comparison: decided at the largest index where the
    /// two sequences differ.
    pub fn tail_lex_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            for (a, b) in self.0.iter().rev().zip(other.0.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }

    /// Componentwise sum; exponent addition for monomial products.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.len().max(other.len());
        WeakComposition::new((1..=n).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// `rajcode(α)_i = α_i + #{j > i : α_j > α_i}`.
    pub fn rajcode(&self) -> Result<Self> {
        self.require_snowy()?;
        let a = &self.0;
        let code = (0..a.len())
            .map(|i| a[i] + a[i + 1..].iter().filter(|&&x| x > a[i]).count() as u32)
            .collect();
        Ok(WeakComposition::new(code))
    }

    /// The snowy `α` with `rajcode(α) = ρ`.
    ///
    /// Entries are recovered from the right. At each index the candidate
    /// values `0, 1, …, max(ρ)` (skipping positive values already placed) are
    /// tried in order; the map `v ↦ v + #{j > i : α_j > v}` is strictly
    /// increasing on them, so at most one fits.
    pub fn rajcode_inverse(rho: &Self) -> Result<Self> {
        let n = rho.len();
        let bound = rho.max_entry();
        let mut alpha = vec![0u32; n];
        for i in (0..n).rev() {
            let target = rho.0[i];
            let later = &alpha[i + 1..];
            let found = (0..=bound).find(|&v| {
                if v > 0 && later.contains(&v) {
                    return false;
                }
                v + later.iter().filter(|&&x| x > v).count() as u32 == target
            });
            match found {
                Some(v) => alpha[i] = v,
                None => return Err(Error::NotInImage(rho.to_string())),
            }
        }
        let alpha = WeakComposition::new(alpha);
        debug_assert_eq!(alpha.rajcode().as_ref(), Ok(rho));
        Ok(alpha)
    }

    /// `r_{m,n}(α) = (m − α_n, …, m − α_1)`.
    pub fn reverse_complement(&self, m: u32, n: usize) -> Result<Self> {
        if !self.fits_box(m, n) {
            return Err(Error::OutOfRange(format!(
                "r_{{{m},{n}}} is undefined on ({self}): need support in [{n}] and entries <= {m}"
            )));
        }
        Ok(WeakComposition::new(
            (1..=n).map(|i| m - self.get(n + 1 - i)).collect(),
        ))
    }

    /// All weak compositions with `supp ⊆ [n]` and entries `≤ m`, in
    /// odometer order (first index fastest).
    pub fn all_in_box(n: usize, m: u32) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            out.push(WeakComposition::new(cur.clone()));
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                if cur[k] < m {
                    cur[k] += 1;
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    /// Snowy members of [`WeakComposition::all_in_box`].
    pub fn snowy_in_box(n: usize, m: u32) -> Vec<Self> {
        Self::all_in_box(n, m)
            .into_iter()
            .filter(WeakComposition::is_snowy)
            .collect()
    }
}

impl From<Vec<u32>> for WeakComposition {
    fn from(v: Vec<u32>) -> Self {
        WeakComposition::new(v)
    }
}

impl From<&[u32]> for WeakComposition {
    fn from(v: &[u32]) -> Self {
        WeakComposition::new(v.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for WeakComposition {
    fn from(v: [u32; N]) -> Self {
        WeakComposition::new(v.to_vec())
    }
}

impl Ord for WeakComposition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.tail_lex_cmp(other)
    }
}

impl PartialOrd for WeakComposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Comma-separated entries; the zero composition prints as `0`.
impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        write_list(f, &self.0)
    }
}

pub(crate) fn write_list(f: &mut fmt::Formatter<'_>, items: &[u32]) -> fmt::Result {
    for (k, a) in items.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

/// Parses a comma-separated list of non-negative integers.
pub(crate) fn parse_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty integer list".into()));
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<u32>()
                .map_err(|e| Error::Parse(format!("bad list entry {tok:?}: {e}")))
        })
        .collect()
}

impl FromStr for WeakComposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_list(s).map(WeakComposition::new)
    }
}

impl Serialize for WeakComposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeakComposition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<u32>::deserialize(d).map(WeakComposition::new)
    }
}
