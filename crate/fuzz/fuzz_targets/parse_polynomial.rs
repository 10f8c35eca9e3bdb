#![no_main]

use libfuzzer_sys::fuzz_target;
use picard_core::{FieldDescriptor, Polynomial};

const FIELDS: [FieldDescriptor; 4] = [
    FieldDescriptor::Rationals,
    FieldDescriptor::Prime(2),
    FieldDescriptor::Prime(101),
    FieldDescriptor::Prime(2305843009213693951),
];

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let field = FIELDS[(selector & 3) as usize];
    let nvars = 1 + ((selector >> 2) % 4) as usize;
    if let Ok(p) = Polynomial::parse(text, field, nvars) {
        // printing and reading back must be lossless
        let printed = p.to_string();
        let again = Polynomial::parse(&printed, field, nvars).expect("printed form parses");
        assert_eq!(p, again, "{printed}");
    }
});
