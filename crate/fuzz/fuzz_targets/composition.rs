#![no_main]

use libfuzzer_sys::fuzz_target;
use schublas::WeakComposition;

fuzz_target!(|data: &str| {
    if let Ok(a) = data.parse::<WeakComposition>() {
        if !a.is_zero() {
            assert_eq!(a.to_string().parse::<WeakComposition>().unwrap(), a);
        }
        if a.len() <= 16 && a.is_snowy() {
            let r = a.rajcode().unwrap();
            assert_eq!(WeakComposition::rajcode_inverse(&r).unwrap(), a);
        }
    }
});
