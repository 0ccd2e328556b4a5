//! Schubert, key and top Lascoux polynomials by their defining recursions,
//! plus the reverse-complement transfer between Schubert and top Lascoux.
//!
//! Each family is computed bottom-up: starting from the requested index we
//! climb through the exchange `w ↦ w s_i` (resp. `α ↦ s_i α`) at the smallest
//! ascent until a base case (dominant permutation, partition) or a cached
//! ancestor is reached, then replay the operators downward, caching every
//! intermediate value.

use std::num::NonZeroUsize;
use std::sync::{Mutex, OnceLock};

use lru::LruCache;

use crate::composition::WeakComposition;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::poly::Polynomial;

/// One recursively defined basis.
trait Family {
    type Index: Clone + Eq + std::hash::Hash;

    /// The base-case value when `idx` is a base case.
    fn base(idx: &Self::Index) -> Option<Polynomial>;

    /// Every `i` for which the recursion may be resolved at `idx`.
    fn ascents(idx: &Self::Index) -> Vec<usize>;

    fn parent(idx: &Self::Index, i: usize) -> Self::Index;

    fn apply(f: &Polynomial, i: usize) -> Polynomial;
}

struct Schubert;
struct Key;
struct TopLascoux;

impl Family for Schubert {
    type Index = Permutation;

    fn base(w: &Permutation) -> Option<Polynomial> {
        let code = w.invcode();
        code.is_partition().then(|| Polynomial::monomial(code))
    }

    fn ascents(w: &Permutation) -> Vec<usize> {
        (1..w.len()).filter(|&i| w.apply(i) < w.apply(i + 1)).collect()
    }

    fn parent(w: &Permutation, i: usize) -> Permutation {
        w.swapped(i)
    }

    fn apply(f: &Polynomial, i: usize) -> Polynomial {
        f.divided_difference(i)
    }
}

fn composition_ascents(a: &WeakComposition) -> Vec<usize> {
    (1..a.len()).filter(|&i| a.get(i) < a.get(i + 1)).collect()
}

impl Family for Key {
    type Index = WeakComposition;

    fn base(a: &WeakComposition) -> Option<Polynomial> {
        a.is_partition().then(|| Polynomial::monomial(a.clone()))
    }

    fn ascents(a: &WeakComposition) -> Vec<usize> {
        composition_ascents(a)
    }

    fn parent(a: &WeakComposition, i: usize) -> WeakComposition {
        a.swapped(i)
    }

    fn apply(f: &Polynomial, i: usize) -> Polynomial {
        f.demazure_pi(i)
    }
}

impl Family for TopLascoux {
    type Index = WeakComposition;

    fn base(a: &WeakComposition) -> Option<Polynomial> {
        Key::base(a)
    }

    fn ascents(a: &WeakComposition) -> Vec<usize> {
        composition_ascents(a)
    }

    fn parent(a: &WeakComposition, i: usize) -> WeakComposition {
        a.swapped(i)
    }

    fn apply(f: &Polynomial, i: usize) -> Polynomial {
        f.pi_hat(i)
    }
}

type Cache<K> = Mutex<LruCache<K, Polynomial>>;

fn new_cache<K: Eq + std::hash::Hash>(entries: usize) -> Cache<K> {
    Mutex::new(LruCache::new(
        NonZeroUsize::new(entries).unwrap_or(NonZeroUsize::MIN),
    ))
}

fn cache_get<K: Eq + std::hash::Hash>(cache: &Cache<K>, k: &K) -> Option<Polynomial> {
    cache.lock().expect("memo cache poisoned").get(k).cloned()
}

fn cache_put<K: Eq + std::hash::Hash>(cache: &Cache<K>, k: K, v: Polynomial) {
    cache.lock().expect("memo cache poisoned").put(k, v);
}

fn climb<F: Family>(idx: &F::Index, cache: &Cache<F::Index>, limits: &Limits) -> Result<Polynomial> {
    if let Some(p) = cache_get(cache, idx) {
        return Ok(p);
    }
    let mut path = Vec::new();
    let mut cur = idx.clone();
    let mut poly = loop {
        if let Some(p) = cache_get(cache, &cur) {
            break p;
        }
        if let Some(p) = F::base(&cur) {
            cache_put(cache, cur.clone(), p.clone());
            break p;
        }
        let i = *F::ascents(&cur)
            .first()
            .expect("a non-base index always has an ascent inside its support");
        let next = F::parent(&cur, i);
        path.push((cur, i));
        cur = next;
    };
    for (node, i) in path.into_iter().rev() {
        poly = F::apply(&poly, i);
        poly.ensure_within(limits.term_limit)?;
        cache_put(cache, node, poly.clone());
    }
    Ok(poly)
}

/// Uncached top-down recursion that lets `choose` pick which valid ascent
/// resolves each step. Used to check that the result is independent of the
/// choice.
fn recurse_with<F: Family>(idx: &F::Index, choose: &mut dyn FnMut(&[usize]) -> usize) -> Polynomial {
    if let Some(p) = F::base(idx) {
        return p;
    }
    let options = F::ascents(idx);
    let i = options[choose(&options) % options.len()];
    F::apply(&recurse_with::<F>(&F::parent(idx, i), choose), i)
}

/// Memoizing front end for the three families. Caches are LRU-bounded by
/// [`Limits::cache_entries`] and internally locked, so an `Engine` can be
/// shared across threads.
pub struct Engine {
    limits: Limits,
    schubert: Cache<Permutation>,
    key: Cache<WeakComposition>,
    top: Cache<WeakComposition>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Limits::default())
    }
}

impl Engine {
    pub fn new(limits: Limits) -> Self {
        Engine {
            limits,
            schubert: new_cache(limits.cache_entries),
            key: new_cache(limits.cache_entries),
            top: new_cache(limits.cache_entries),
        }
    }

    /// Process-wide engine with default limits.
    pub fn global() -> &'static Engine {
        static GLOBAL: OnceLock<Engine> = OnceLock::new();
        GLOBAL.get_or_init(Engine::default)
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// `𝔖_w`.
    pub fn schubert(&self, w: &Permutation) -> Result<Polynomial> {
        climb::<Schubert>(w, &self.schubert, &self.limits)
    }

    /// `κ_α`.
    pub fn key(&self, alpha: &WeakComposition) -> Result<Polynomial> {
        let p = climb::<Key>(alpha, &self.key, &self.limits)?;
        debug_assert!(p.coeff(alpha) == num_traits::One::one());
        Ok(p)
    }

    /// `𝔏̂_α` for snowy `α`.
    pub fn top_lascoux(&self, alpha: &WeakComposition) -> Result<Polynomial> {
        alpha.require_snowy()?;
        let p = climb::<TopLascoux>(alpha, &self.top, &self.limits)?;
        debug_assert!({
            let raj = alpha.rajcode()?;
            p.homogeneous_degree() == Some(raj.size())
                && p.leading_term().ok() == Some((raj, num_traits::One::one()))
        });
        Ok(p)
    }

    /// `r_{m,n}(𝔖_{std_{m,n}(α)})`, which equals `𝔏̂_α`.
    pub fn top_lascoux_via_reverse(&self, alpha: &WeakComposition, m: u32, n: usize) -> Result<Polynomial> {
        let w = Permutation::standardize(alpha, m, n)?;
        self.schubert(&w)?.reverse_complement(m, n)
    }

    /// `r_{n,n}(𝔏̂_α)` with `α = (n+1−w(n), …, n+1−w(1))`, which equals `𝔖_w`.
    pub fn schubert_via_top_lascoux(&self, w: &Permutation, n: usize) -> Result<Polynomial> {
        if w.len() > n {
            return Err(Error::OutOfRange(format!("[{w}] is not in S_{n}")));
        }
        let alpha = reversed_inverse_values(w, n);
        self.top_lascoux(&alpha)?.reverse_complement(n as u32, n)
    }
}

/// `(n+1−w(n), …, n+1−w(1))`.
pub fn reversed_inverse_values(w: &Permutation, n: usize) -> WeakComposition {
    WeakComposition::new((1..=n).map(|k| n as u32 + 1 - w.apply(n + 1 - k)).collect())
}

pub fn schubert(w: &Permutation) -> Result<Polynomial> {
    Engine::global().schubert(w)
}

pub fn key(alpha: &WeakComposition) -> Result<Polynomial> {
    Engine::global().key(alpha)
}

pub fn top_lascoux(alpha: &WeakComposition) -> Result<Polynomial> {
    Engine::global().top_lascoux(alpha)
}

pub fn top_lascoux_via_reverse(alpha: &WeakComposition, m: u32, n: usize) -> Result<Polynomial> {
    Engine::global().top_lascoux_via_reverse(alpha, m, n)
}

pub fn schubert_via_top_lascoux(w: &Permutation, n: usize) -> Result<Polynomial> {
    Engine::global().schubert_via_top_lascoux(w, n)
}

/// `𝔖_w` with the recursion resolved at the ascent picked by `choose`.
pub fn schubert_with_choices(w: &Permutation, choose: &mut dyn FnMut(&[usize]) -> usize) -> Polynomial {
    recurse_with::<Schubert>(w, choose)
}

pub fn key_with_choices(alpha: &WeakComposition, choose: &mut dyn FnMut(&[usize]) -> usize) -> Polynomial {
    recurse_with::<Key>(alpha, choose)
}

pub fn top_lascoux_with_choices(
    alpha: &WeakComposition,
    choose: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<Polynomial> {
    alpha.require_snowy()?;
    Ok(recurse_with::<TopLascoux>(alpha, choose))
}
