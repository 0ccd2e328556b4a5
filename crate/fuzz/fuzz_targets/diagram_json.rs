#![no_main]

use libfuzzer_sys::fuzz_target;
use schublas::Diagram;

fuzz_target!(|data: &str| {
    if let Ok(x) = Diagram::from_json(data) {
        assert_eq!(Diagram::from_json(&x.to_json()).unwrap(), x);
    }
});
