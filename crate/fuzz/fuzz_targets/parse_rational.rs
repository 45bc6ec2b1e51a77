#![no_main]

use libfuzzer_sys::fuzz_target;
use toric_jets::field::Rational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(r) = text.parse::<Rational>() {
        // canonical form re-parses to the same value
        let again: Rational = r.to_string().parse().expect("canonical form parses");
        assert_eq!(again, r);
    }
});
