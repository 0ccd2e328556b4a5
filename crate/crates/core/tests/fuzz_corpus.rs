//! Replays the checked-in fuzz corpus, plus every prefix of each seed,
//! through the same round-trip checks as the fuzz targets.

use std::fs;
use std::path::PathBuf;

use schublas::{BasisExpansion, Config, Diagram, Parallelism, PerfectTableau, Permutation, PipeGrid, Polynomial, WeakComposition};

fn corpus(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut seeds: Vec<String> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| fs::read_to_string(entry.unwrap().path()).unwrap())
        .collect();
    seeds.sort();
    assert!(!seeds.is_empty(), "no seeds for {target}");
    seeds
}

fn with_prefixes(target: &str, check: impl Fn(&str)) -> usize {
    let mut ok = 0;
    for seed in corpus(target) {
        for (end, _) in seed.char_indices().chain([(seed.len(), ' ')]) {
            check(&seed[..end]);
        }
        ok += 1;
    }
    ok
}

#[test]
fn composition_seeds() {
    with_prefixes("composition", |s| {
        if let Ok(a) = s.parse::<WeakComposition>() {
            if !a.is_zero() {
                assert_eq!(a.to_string().parse::<WeakComposition>().unwrap(), a);
            }
            if a.is_snowy() {
                assert_eq!(WeakComposition::rajcode_inverse(&a.rajcode().unwrap()).unwrap(), a);
            }
        }
    });
}

#[test]
fn permutation_seeds() {
    with_prefixes("permutation", |s| {
        if let Ok(w) = s.parse::<Permutation>() {
            if !w.is_identity() {
                assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w);
            }
            assert_eq!(Permutation::from_code(&w.invcode()), w);
        }
    });
}

macro_rules! json_round_trip {
    ($name:ident, $target:literal, $ty:ty) => {
        #[test]
        fn $name() {
            let mut parsed = 0;
            with_prefixes($target, |s| {
                if let Ok(x) = <$ty>::from_json(s) {
                    assert_eq!(<$ty>::from_json(&x.to_json()).unwrap(), x);
                }
            });
            for seed in corpus($target) {
                parsed += <$ty>::from_json(&seed).is_ok() as usize;
            }
            assert!(parsed > 0, "no seed of {} parses", $target);
        }
    };
}

json_round_trip!(polynomial_seeds, "polynomial_json", Polynomial);
json_round_trip!(diagram_seeds, "diagram_json", Diagram);
json_round_trip!(pipegrid_seeds, "pipegrid_json", PipeGrid);
json_round_trip!(tableau_seeds, "tableau_json", PerfectTableau);
json_round_trip!(expansion_seeds, "expansion_json", BasisExpansion);

#[test]
fn config_seeds() {
    with_prefixes("config_json", |s| {
        if let Ok(cfg) = Config::from_json(s) {
            assert!(cfg.limits().validate().is_ok());
        }
        let _ = s.parse::<Parallelism>();
        let _ = schublas::poly::parse_coeff(s);
    });
    assert!(Config::from_json(&corpus("config_json").join("")).is_err());
}
