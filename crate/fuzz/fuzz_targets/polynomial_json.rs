#![no_main]

use libfuzzer_sys::fuzz_target;
use schublas::Polynomial;

fuzz_target!(|data: &str| {
    if let Ok(x) = Polynomial::from_json(data) {
        assert_eq!(Polynomial::from_json(&x.to_json()).unwrap(), x);
    }
});
