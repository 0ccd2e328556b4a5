#![no_main]

use libfuzzer_sys::fuzz_target;
use schublas::{Config, Parallelism};

fuzz_target!(|data: &str| {
    if let Ok(cfg) = Config::from_json(data) {
        assert!(cfg.limits().validate().is_ok());
    }
    let _ = data.parse::<Parallelism>();
    let _ = schublas::poly::parse_coeff(data);
});
