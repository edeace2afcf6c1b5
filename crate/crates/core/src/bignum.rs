//! Serde helpers that write big integers as bare JSON numbers.

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

pub(crate) fn serialize<S: Serializer>(x: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
    let n: serde_json::Number = x
        .to_string()
        .parse()
        .expect("decimal integers are valid JSON numbers");
    n.serialize(serializer)
}

pub(crate) struct Wrapped<'a>(pub &'a BigInt);

impl Serialize for Wrapped<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serialize(self.0, serializer)
    }
}
