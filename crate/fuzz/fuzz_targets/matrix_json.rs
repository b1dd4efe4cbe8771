#![no_main]

use lbrep::scalars::{Matrix, Rational, ZmInt};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(m) = Matrix::<Rational>::from_json(&v, ()) {
        assert_eq!(Matrix::<Rational>::from_json(&m.to_json(), ()).ok(), Some(m));
    }
    if let Ok(m) = Matrix::<ZmInt>::from_json(&v, 7) {
        assert_eq!(Matrix::<ZmInt>::from_json(&m.to_json(), 7).ok(), Some(m));
    }
});
