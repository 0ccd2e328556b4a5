#![no_main]

use libfuzzer_sys::fuzz_target;
use schublas::Permutation;

fuzz_target!(|data: &str| {
    if let Ok(w) = data.parse::<Permutation>() {
        if !w.is_identity() {
            assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w);
        }
        assert_eq!(Permutation::from_code(&w.invcode()), w);
        assert_eq!(w.inverse().inverse(), w);
    }
});
