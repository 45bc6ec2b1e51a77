#![no_main]

use libfuzzer_sys::fuzz_target;
use toric_jets::lattice::{hj_evaluate, hj_expand, ContinuedFraction};
use toric_jets::ConePair;

fuzz_target!(|entries: Vec<u8>| {
    let entries: Vec<i64> = entries.into_iter().take(12).map(i64::from).collect();
    if ContinuedFraction::new(entries.clone()).is_err() {
        return;
    }
    let Ok((q, p)) = hj_evaluate(&entries) else { return };
    let Ok(cone) = ConePair::new(p, q) else { return };
    let cf = hj_expand(cone).unwrap();
    assert_eq!(cf.entries(), &entries[..]);
});
