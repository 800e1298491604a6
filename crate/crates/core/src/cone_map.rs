//! Shared plumbing for integer-valued maps on the cones of a fan.

/// Implements construction, lookup and Z-module arithmetic for a type with
/// fields `fan: Arc<Fan>` and `coeffs: Vec<BigInt>` (one entry per cone).
macro_rules! impl_cone_map {
    ($ty:ident) => {
        impl $ty {
            /// The zero element on `fan`.
            pub fn zero(fan: std::sync::Arc<$crate::fan::Fan>) -> Self {
                let n = fan.num_cones();
                $ty {
                    fan,
                    coeffs: vec![num_bigint::BigInt::from(0); n],
                }
            }

            /// Coefficient `1` on one cone.
            pub fn basis(fan: std::sync::Arc<$crate::fan::Fan>, cone: $crate::fan::ConeId) -> Self {
                let mut out = Self::zero(fan);
                out.coeffs[cone.index()] = num_bigint::BigInt::from(1);
                out
            }

            pub fn from_terms<I>(fan: std::sync::Arc<$crate::fan::Fan>, terms: I) -> Self
            where
                I: IntoIterator<Item = ($crate::fan::ConeId, num_bigint::BigInt)>,
            {
                let mut out = Self::zero(fan);
                for (cone, c) in terms {
                    out.coeffs[cone.index()] += c;
                }
                out
            }

            /// Terms keyed by ray-index sets, e.g. `(&[0, 1], 2)`.
            pub fn from_ray_sets(
                fan: std::sync::Arc<$crate::fan::Fan>,
                terms: &[(&[usize], i64)],
            ) -> $crate::error::Result<Self> {
                let mut out = Self::zero(fan);
                for (rays, c) in terms {
                    let id = out.fan.require_cone(rays)?;
                    out.coeffs[id.index()] += *c;
                }
                Ok(out)
            }

            pub fn fan(&self) -> &std::sync::Arc<$crate::fan::Fan> {
                &self.fan
            }

            pub fn coeff(&self, cone: $crate::fan::ConeId) -> &num_bigint::BigInt {
                &self.coeffs[cone.index()]
            }

            pub fn coeffs(&self) -> &[num_bigint::BigInt] {
                &self.coeffs
            }

            pub fn set_coeff(&mut self, cone: $crate::fan::ConeId, value: num_bigint::BigInt) {
                self.coeffs[cone.index()] = value;
            }

            /// Nonzero terms in canonical cone order.
            pub fn terms(
                &self,
            ) -> impl Iterator<Item = ($crate::fan::ConeId, &num_bigint::BigInt)> + '_ {
                self.coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(i, c)| ($crate::fan::ConeId(i), c))
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.iter().all(num_traits::Zero::is_zero)
            }

            pub fn scaled(&self, k: &num_bigint::BigInt) -> Self {
                $ty {
                    fan: self.fan.clone(),
                    coeffs: self.coeffs.iter().map(|c| c * k).collect(),
                }
            }

            pub fn checked_add(&self, other: &Self) -> $crate::error::Result<Self> {
                if !$crate::fan::same_fan(&self.fan, &other.fan) {
                    return Err($crate::error::Error::FanMismatch);
                }
                Ok($ty {
                    fan: self.fan.clone(),
                    coeffs: self
                        .coeffs
                        .iter()
                        .zip(&other.coeffs)
                        .map(|(a, b)| a + b)
                        .collect(),
                })
            }

            pub fn checked_sub(&self, other: &Self) -> $crate::error::Result<Self> {
                self.checked_add(&-other)
            }
        }

        impl PartialEq for $ty {
            fn eq(&self, other: &Self) -> bool {
                $crate::fan::same_fan(&self.fan, &other.fan) && self.coeffs == other.coeffs
            }
        }

        impl Eq for $ty {}

        /// Panics if the operands live on different fans; use
        /// `checked_add` for a fallible version.
        impl std::ops::Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                self.checked_add(rhs).expect("operands on different fans")
            }
        }

        impl std::ops::Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self.checked_sub(rhs).expect("operands on different fans")
            }
        }

        impl std::ops::Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    fan: self.fan.clone(),
                    coeffs: self.coeffs.iter().map(|c| -c).collect(),
                }
            }
        }
    };
}

pub(crate) use impl_cone_map;
