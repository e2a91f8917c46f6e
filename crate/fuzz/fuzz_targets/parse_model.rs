#![no_main]

use libfuzzer_sys::fuzz_target;
use modalhol::model::FiniteModel;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(model) = FiniteModel::parse(src) {
        let again = FiniteModel::parse(&model.to_text()).expect("printed model must parse");
        assert_eq!(again, model);
    }
});
