#![no_main]

use lbrep::scalars::{LaurentPoly, Ring};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(p) = LaurentPoly::from_json(&v, &()) {
        let again = LaurentPoly::from_json(&p.to_json(), &()).expect("serialized polynomial reparses");
        assert_eq!(p, again);
    }
});
