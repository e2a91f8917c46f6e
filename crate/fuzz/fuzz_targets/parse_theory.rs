#![no_main]

use libfuzzer_sys::fuzz_target;
use modalhol::syntax::{parse_theory, print_theory};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(theory) = parse_theory(src) {
        let printed = print_theory(&theory);
        let again = parse_theory(&printed).expect("printed theory must parse");
        assert_eq!(again, theory, "round trip changed the theory");
    }
});
