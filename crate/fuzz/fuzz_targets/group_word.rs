#![no_main]

use lbrep::presentations::GroupWord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = s.parse::<GroupWord>() {
        let again: GroupWord = w.to_string().parse().expect("printed word reparses");
        assert_eq!(w, again);
        assert_eq!(w.inverse().inverse(), w);
    }
});
