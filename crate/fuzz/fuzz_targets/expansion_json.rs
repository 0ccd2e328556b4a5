#![no_main]

use libfuzzer_sys::fuzz_target;
use schublas::BasisExpansion;

fuzz_target!(|data: &str| {
    if let Ok(x) = BasisExpansion::from_json(data) {
        assert_eq!(BasisExpansion::from_json(&x.to_json()).unwrap(), x);
    }
});
