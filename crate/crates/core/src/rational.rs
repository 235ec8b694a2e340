//! Exact rational helpers and the "p/q" string encoding used at every
//! serialization boundary.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qvec(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

/// Formats as `p` for integers and `p/q` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

pub fn dot(x: &[Q], y: &[Q]) -> Q {
    x.iter().zip(y).fold(Q::zero(), |acc, (a, b)| acc + a * b)
}

/// Returns the integer value if `x` is integral and fits in i64.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(x: &Q) -> i64 {
    x.floor().numer().to_i64().expect("floor out of i64 range")
}

/// Smallest integer m >= 0 with m*m >= x, for x >= 0.
pub fn sqrt_ceil(x: &Q) -> u64 {
    if !x.is_positive() {
        return 0;
    }
    let c = x.ceil().numer().clone();
    let mut r = c.sqrt();
    if &r * &r < c {
        r += 1;
    }
    // r*r >= ceil(x) >= x; r-1 may still satisfy (r-1)^2 >= x only if it were >= ceil(x)
    r.to_u64().expect("bound too large")
}

/// Scales a nonzero rational vector to a primitive integer vector with the
/// same direction (positive multiple).
pub fn primitive_ray(x: &[Q]) -> Option<Vec<BigInt>> {
    if x.iter().all(|a| a.is_zero()) {
        return None;
    }
    let mut l = BigInt::one();
    for a in x {
        l = l.lcm(a.denom());
    }
    let ints: Vec<BigInt> = x.iter().map(|a| (a * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for a in &ints {
        g = g.gcd(a);
    }
    Some(ints.into_iter().map(|a| a / &g).collect())
}

/// Primitive integer representative with first nonzero entry positive.
pub fn canonical_line(x: &[Q]) -> Option<Vec<BigInt>> {
    let mut v = primitive_ray(x)?;
    if v.iter().find(|a| !a.is_zero()).map(|a| a.is_negative()) == Some(true) {
        for a in v.iter_mut() {
            *a = -a.clone();
        }
    }
    Some(v)
}

pub fn canonical_line_i64(x: &[i64]) -> Option<Vec<i64>> {
    let mut g = 0i64;
    for &a in x {
        g = g.gcd(&a);
    }
    if g == 0 {
        return None;
    }
    let mut v: Vec<i64> = x.iter().map(|a| a / g).collect();
    if v.iter().find(|a| **a != 0).copied().unwrap_or(0) < 0 {
        v.iter_mut().for_each(|a| *a = -*a);
    }
    Some(v)
}

/// serde adapter: one rational as a "p/q" string.
pub mod serde_q {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

/// serde adapter: a vector of rationals as "p/q" strings.
pub mod serde_qvec {
    use super::*;
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(x.len()))?;
        for a in x {
            seq.serialize_element(&fmt_q(a))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "7/2", "-1/6"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert_eq!(parse_q("4/8"), Some(qf(1, 2)));
        assert!(parse_q("1/0").is_none());
        assert!(parse_q("x").is_none());
    }

    #[test]
    fn sqrt_ceil_small() {
        assert_eq!(sqrt_ceil(&q(0)), 0);
        assert_eq!(sqrt_ceil(&q(4)), 2);
        assert_eq!(sqrt_ceil(&q(5)), 3);
        assert_eq!(sqrt_ceil(&qf(1, 4)), 1);
    }

    #[test]
    fn canonical_lines() {
        assert_eq!(canonical_line_i64(&[0, -2, 4]), Some(vec![0, 1, -2]));
        assert_eq!(canonical_line(&[qf(-1, 2), qf(1, 3)]).unwrap(), vec![BigInt::from(3), BigInt::from(-2)]);
        assert!(canonical_line_i64(&[0, 0]).is_none());
    }
}
