#![no_main]

use libfuzzer_sys::fuzz_target;
use toric_jets::lattice::{hj_evaluate, hj_expand};
use toric_jets::{ConePair, ToricSurface};

fuzz_target!(|data: (i64, i64)| {
    let (p, q) = data;
    let Ok(cone) = ConePair::new(p, q) else { return };
    let Ok(cf) = hj_expand(cone) else { return };
    assert_eq!(hj_evaluate(cf.entries()).unwrap(), (q, p));
    if cf.entries().len() <= 4096 {
        let s = ToricSurface::from_cone(cone).unwrap();
        assert_eq!(s.basis().len(), s.e());
    }
});
