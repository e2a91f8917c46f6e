#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use modalhol::modal::Signature;
use modalhol::syntax::{parse_formula, parse_theory, print_formula};

fn scott() -> &'static Signature {
    static SIG: OnceLock<Signature> = OnceLock::new();
    SIG.get_or_init(|| {
        let src = include_str!("../../corpus/scott.thy");
        parse_theory(src).expect("corpus parses").signature().clone()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = parse_formula(src, scott()) {
        let printed = print_formula(&f);
        let again = parse_formula(&printed, scott()).expect("printed formula must parse");
        assert_eq!(again, f, "round trip changed {printed}");
    }
});
