#![no_main]

use libfuzzer_sys::fuzz_target;
use toric_jets::field::{Modulus, PrimeField, Rational};
use toric_jets::jets::{contact_profile, TruncatedJet};
use toric_jets::ToricSurface;

fuzz_target!(|data: &[u8]| {
    let Ok(value) = serde_json::from_slice::<serde_json::Value>(data) else { return };
    if let Ok(jet) = TruncatedJet::<Rational>::from_json((), &value) {
        assert_eq!(TruncatedJet::<Rational>::from_json((), &jet.to_json()).unwrap(), jet);
        if let Ok(s) = ToricSurface::new(3, 5) {
            let _ = contact_profile(&jet, &s);
        }
    }
    let modulus = Modulus::new(7).unwrap();
    if let Ok(jet) = TruncatedJet::<PrimeField>::from_json(modulus, &value) {
        assert_eq!(TruncatedJet::<PrimeField>::from_json(modulus, &jet.to_json()).unwrap(), jet);
    }
});
