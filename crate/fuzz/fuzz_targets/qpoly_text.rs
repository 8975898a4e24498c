#![no_main]
use libfuzzer_sys::fuzz_target;
use lusztig_q::QPoly;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<QPoly>() {
        let text = p.to_string();
        let back: QPoly = text.parse().expect("canonical text parses");
        assert_eq!(back, p);
    }
});
