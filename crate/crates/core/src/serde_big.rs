//! Big integers as decimal strings in serialized output, so JSON readers
//! without arbitrary precision still see exact values.

use num_bigint::BigUint;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
    let text = String::deserialize(d)?;
    text.parse().map_err(D::Error::custom)
}

pub mod map {
    use std::collections::BTreeMap;

    use num_bigint::BigUint;
    use serde::{de::Error as _, ser::SerializeMap, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, BigUint>, s: S) -> Result<S::Ok, S::Error> {
        let mut out = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            out.serialize_entry(k, &v.to_string())?;
        }
        out.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, BigUint>, D::Error> {
        BTreeMap::<usize, String>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| v.parse().map(|v| (k, v)).map_err(D::Error::custom))
            .collect()
    }
}

pub mod vec {
    use num_bigint::BigUint;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        let mut out = s.serialize_seq(Some(v.len()))?;
        for x in v {
            out.serialize_element(&x.to_string())?;
        }
        out.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?.into_iter().map(|x| x.parse().map_err(D::Error::custom)).collect()
    }
}
