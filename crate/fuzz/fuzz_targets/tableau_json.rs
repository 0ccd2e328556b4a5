#![no_main]

use libfuzzer_sys::fuzz_target;
use schublas::PerfectTableau;

fuzz_target!(|data: &str| {
    if let Ok(x) = PerfectTableau::from_json(data) {
        assert_eq!(PerfectTableau::from_json(&x.to_json()).unwrap(), x);
    }
});
