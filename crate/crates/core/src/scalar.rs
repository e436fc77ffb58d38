//! Exact scalar types.
//!
//! Coordinates are drawn from a signed integer ring [`Coord`]; every derived
//! coefficient lives in the field of fractions `Ratio<T>`. The library is
//! instantiated with [`num_bigint::BigInt`] at the crate root, and the fixed
//! width machine integers are available for small inputs where speed matters
//! more than overflow headroom.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// A signed integer ring usable as a lattice coordinate.
pub trait Coord:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + FromStr
    + Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Minimal number of bytes of the two's complement encoding.
    fn byte_len(&self) -> usize;

    /// Big-endian two's complement encoding sign-extended to `width` bytes.
    ///
    /// `width` must be at least [`Coord::byte_len`].
    fn to_fixed_bytes(&self, width: usize) -> Vec<u8>;

    /// Inverse of [`Coord::to_fixed_bytes`].
    fn from_fixed_bytes(bytes: &[u8]) -> Self;
}

macro_rules! impl_coord_prim {
    ($($t:ty),*) => {$(
        impl Coord for $t {
            fn byte_len(&self) -> usize {
                let bits = if *self < 0 {
                    <$t>::BITS - (!*self).leading_zeros() + 1
                } else {
                    <$t>::BITS - self.leading_zeros() + 1
                };
                (bits as usize).div_ceil(8).max(1)
            }

            fn to_fixed_bytes(&self, width: usize) -> Vec<u8> {
                let raw = self.to_be_bytes();
                let fill = if *self < 0 { 0xff } else { 0x00 };
                if width >= raw.len() {
                    let mut out = vec![fill; width - raw.len()];
                    out.extend_from_slice(&raw);
                    out
                } else {
                    raw[raw.len() - width..].to_vec()
                }
            }

            fn from_fixed_bytes(bytes: &[u8]) -> Self {
                const N: usize = std::mem::size_of::<$t>();
                let fill = if bytes.first().is_some_and(|b| b & 0x80 != 0) { 0xff } else { 0x00 };
                let mut buf = [fill; N];
                let take = bytes.len().min(N);
                buf[N - take..].copy_from_slice(&bytes[bytes.len() - take..]);
                <$t>::from_be_bytes(buf)
            }
        }
    )*};
}

impl_coord_prim!(i64, i128);

impl Coord for BigInt {
    fn byte_len(&self) -> usize {
        self.to_signed_bytes_be().len().max(1)
    }

    fn to_fixed_bytes(&self, width: usize) -> Vec<u8> {
        let raw = self.to_signed_bytes_be();
        let fill = if self.sign() == Sign::Minus { 0xff } else { 0x00 };
        let mut out = vec![fill; width.saturating_sub(raw.len())];
        out.extend_from_slice(&raw);
        out
    }

    fn from_fixed_bytes(bytes: &[u8]) -> Self {
        BigInt::from_signed_bytes_be(bytes)
    }
}

/// Exact ordered field used for coefficients, pivots and volumes.
pub trait Field: Clone + Ord + Num + Signed + Debug {}

impl<F: Clone + Ord + Num + Signed + Debug> Field for F {}

/// Embed an integer coordinate into its field of fractions.
pub fn ratio<T: Coord>(x: &T) -> Ratio<T> {
    Ratio::from_integer(x.clone())
}

/// Convert a count into the coordinate ring.
pub fn from_count<T: Coord>(n: usize) -> T {
    T::from_usize(n).expect("count fits the coordinate type")
}
