#![no_main]

use lbrep::scalars::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = s.parse::<Rational>() {
        let again: Rational = r.to_string().parse().expect("printed rational reparses");
        assert_eq!(r, again);
    }
});
