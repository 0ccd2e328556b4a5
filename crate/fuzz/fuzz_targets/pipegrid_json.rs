#![no_main]

use libfuzzer_sys::fuzz_target;
use schublas::PipeGrid;

fuzz_target!(|data: &str| {
    if let Ok(x) = PipeGrid::from_json(data) {
        assert_eq!(PipeGrid::from_json(&x.to_json()).unwrap(), x);
    }
});
