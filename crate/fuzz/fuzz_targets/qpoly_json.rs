#![no_main]
use libfuzzer_sys::fuzz_target;
use lusztig_q::QPoly;

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = serde_json::from_slice::<QPoly>(data) {
        let json = serde_json::to_string(&p).unwrap();
        let back: QPoly = serde_json::from_str(&json).expect("serialized form parses");
        assert_eq!(back, p);
    }
});
