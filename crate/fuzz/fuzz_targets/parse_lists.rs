#![no_main]

use libfuzzer_sys::fuzz_target;
use qnetbound_cli::args::{parse_count_list, parse_float_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(list) = parse_float_list(text) {
        assert!(!list.0.is_empty());
        assert!(list.0.iter().all(|x| x.is_finite()));
    }
    if let Ok(list) = parse_count_list(text) {
        assert_eq!(list.0.len(), text.split(',').count());
    }
});
