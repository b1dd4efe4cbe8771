#![no_main]

use lbrep::bvs::AnyBvs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(b) = AnyBvs::from_json_str(s) {
        let again = AnyBvs::from_json(&b.to_json()).expect("serialized solution reparses");
        assert_eq!(b.d(), again.d());
        if b.d() <= 4 {
            let _ = b.check_yang_baxter();
        }
    }
});
