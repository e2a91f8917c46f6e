#![no_main]

use libfuzzer_sys::fuzz_target;
use modalhol::modal::Signature;
use modalhol::stt::Type;
use modalhol::syntax::{parse_term, parse_type};

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ty) = parse_type(src) {
        assert_eq!(parse_type(&ty.to_string()).expect("printed type must parse"), ty);
    }
    let vars = [("w".into(), Type::World), ("x".into(), Type::Indiv), ("Phi".into(), Type::property())];
    let _ = parse_term(src, &Signature::new(), &vars);
});
