//! Binary operators, monoids and semirings.
//!
//! Every kernel in [`crate::ops`] is parameterized over a [`Semiring`] (for the
//! matrix products) or a [`Monoid`] (for reductions and elementwise ops). The
//! domain is a compile-time type parameter implementing [`Scalar`]; the
//! operators themselves are plain function pointers so user-defined semirings
//! can be assembled at runtime without code generation.
//!
//! | Semiring              | ⊕     | ⊗      | identity |
//! |-----------------------|-------|--------|----------|
//! | `PlusMultiplies`      | +     | ×      | 0        |
//! | `LogicalOrAnd`        | \|\|  | &&     | 0        |
//! | `MinPlus`             | min   | +      | +∞       |
//! | `MaxPlus`             | max   | +      | −∞       |
//! | `MinMultiplies`       | min   | ×      | +∞       |
//! | `MinimumSelectSecond` | min   | second | +∞       |
//! | `PlusLess`            | +     | <      | 0        |
//! | `MinimumNotEqualTo`   | min   | ≠      | +∞       |
//! | `PlusMinus`           | +     | −      | 0        |
//! | `MultipliesMultiplies`| ×     | ×      | 1        |

use std::fmt;

use crate::error::{GraphError, Result};

/// Numeric domain of a container.
///
/// Integer domains model +∞ as the maximum representable value and −∞ as the
/// minimum; additions saturate there instead of wrapping. Booleans are the
/// integers `{0, 1}`.
pub trait Scalar: Copy + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const ZERO: Self;
    const ONE: Self;
    const INFINITY: Self;
    const NEG_INFINITY: Self;
    const IS_FLOAT: bool;

    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;

    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
    fn from_usize(v: usize) -> Self;
    /// Interprets the value as a position; `None` for negative, fractional or
    /// infinite values.
    fn to_index(self) -> Option<usize>;

    #[inline]
    fn is_nonzero(self) -> bool {
        self != Self::ZERO
    }

    #[inline]
    fn from_bool(b: bool) -> Self {
        if b {
            Self::ONE
        } else {
            Self::ZERO
        }
    }
}

macro_rules! impl_int_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            const ZERO: Self = 0;
            const ONE: Self = 1;
            const INFINITY: Self = <$t>::MAX;
            const NEG_INFINITY: Self = <$t>::MIN;
            const IS_FLOAT: bool = false;

            #[inline]
            fn add(self, rhs: Self) -> Self {
                if self == Self::INFINITY || rhs == Self::INFINITY {
                    Self::INFINITY
                } else if self == Self::NEG_INFINITY || rhs == Self::NEG_INFINITY {
                    Self::NEG_INFINITY
                } else {
                    self.saturating_add(rhs)
                }
            }

            #[inline]
            fn sub(self, rhs: Self) -> Self {
                self.saturating_sub(rhs)
            }

            #[inline]
            fn mul(self, rhs: Self) -> Self {
                self.saturating_mul(rhs)
            }

            #[inline]
            fn from_f64(v: f64) -> Self {
                v as $t
            }

            #[inline]
            fn to_f64(self) -> f64 {
                self as f64
            }

            #[inline]
            fn from_usize(v: usize) -> Self {
                <$t>::try_from(v).unwrap_or(Self::INFINITY)
            }

            #[inline]
            fn to_index(self) -> Option<usize> {
                usize::try_from(self).ok()
            }
        }
    )*};
}

macro_rules! impl_float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            const ZERO: Self = 0.0;
            const ONE: Self = 1.0;
            const INFINITY: Self = <$t>::INFINITY;
            const NEG_INFINITY: Self = <$t>::NEG_INFINITY;
            const IS_FLOAT: bool = true;

            #[inline]
            fn add(self, rhs: Self) -> Self {
                self + rhs
            }

            #[inline]
            fn sub(self, rhs: Self) -> Self {
                self - rhs
            }

            #[inline]
            fn mul(self, rhs: Self) -> Self {
                self * rhs
            }

            #[inline]
            fn from_f64(v: f64) -> Self {
                v as $t
            }

            #[inline]
            fn to_f64(self) -> f64 {
                self as f64
            }

            #[inline]
            fn from_usize(v: usize) -> Self {
                v as $t
            }

            #[inline]
            fn to_index(self) -> Option<usize> {
                if self >= 0.0 && self.fract() == 0.0 && self.is_finite() {
                    Some(self as usize)
                } else {
                    None
                }
            }
        }
    )*};
}

impl_int_scalar!(i32, i64);
impl_float_scalar!(f32, f64);

/// A named binary function over the domain.
#[derive(Clone, Copy)]
pub struct BinaryOp<T> {
    pub name: &'static str,
    pub func: fn(T, T) -> T,
}

impl<T: Scalar> BinaryOp<T> {
    pub const fn new(name: &'static str, func: fn(T, T) -> T) -> Self {
        Self { name, func }
    }

    #[inline(always)]
    pub fn apply(&self, a: T, b: T) -> T {
        (self.func)(a, b)
    }

    pub fn plus() -> Self {
        Self::new("plus", |a: T, b: T| a.add(b))
    }

    pub fn minus() -> Self {
        Self::new("minus", |a: T, b: T| a.sub(b))
    }

    pub fn times() -> Self {
        Self::new("times", |a: T, b: T| a.mul(b))
    }

    pub fn min() -> Self {
        Self::new("min", |a: T, b: T| if b < a { b } else { a })
    }

    pub fn max() -> Self {
        Self::new("max", |a: T, b: T| if b > a { b } else { a })
    }

    pub fn first() -> Self {
        Self::new("first", |a: T, _b: T| a)
    }

    pub fn second() -> Self {
        Self::new("second", |_a: T, b: T| b)
    }

    pub fn logical_or() -> Self {
        Self::new("logical_or", |a: T, b: T| {
            T::from_bool(a.is_nonzero() || b.is_nonzero())
        })
    }

    pub fn logical_and() -> Self {
        Self::new("logical_and", |a: T, b: T| {
            T::from_bool(a.is_nonzero() && b.is_nonzero())
        })
    }

    pub fn less() -> Self {
        Self::new("less", |a: T, b: T| T::from_bool(a < b))
    }

    pub fn not_equal() -> Self {
        Self::new("not_equal", |a: T, b: T| T::from_bool(a != b))
    }

    pub fn equal() -> Self {
        Self::new("equal", |a: T, b: T| T::from_bool(a == b))
    }
}

impl<T> fmt::Debug for BinaryOp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

/// An associative, commutative operation with an identity.
///
/// `terminal`, when set, is a value `t` with `op(t, x) = t` for every `x`.
/// Kernels only consult it for the optional early-exit mode of row
/// reductions; correctness never depends on it.
#[derive(Clone, Copy, Debug)]
pub struct Monoid<T> {
    pub name: &'static str,
    pub op: BinaryOp<T>,
    pub identity: T,
    pub terminal: Option<T>,
}

impl<T: Scalar> Monoid<T> {
    pub fn new(name: &'static str, op: BinaryOp<T>, identity: T) -> Self {
        Self {
            name,
            op,
            identity,
            terminal: None,
        }
    }

    pub fn with_terminal(mut self, terminal: T) -> Self {
        self.terminal = Some(terminal);
        self
    }

    #[inline(always)]
    pub fn apply(&self, a: T, b: T) -> T {
        self.op.apply(a, b)
    }

    pub fn fold<I: IntoIterator<Item = T>>(&self, items: I) -> T {
        items.into_iter().fold(self.identity, |acc, x| self.op.apply(acc, x))
    }

    pub fn plus() -> Self {
        Self::new("Plus", BinaryOp::plus(), T::ZERO)
    }

    pub fn multiplies() -> Self {
        Self::new("Multiplies", BinaryOp::times(), T::ONE)
    }

    pub fn minimum() -> Self {
        Self::new("Minimum", BinaryOp::min(), T::INFINITY).with_terminal(T::NEG_INFINITY)
    }

    pub fn maximum() -> Self {
        Self::new("Maximum", BinaryOp::max(), T::NEG_INFINITY).with_terminal(T::INFINITY)
    }

    pub fn logical_or() -> Self {
        Self::new("LogicalOr", BinaryOp::logical_or(), T::ZERO).with_terminal(T::ONE)
    }

    pub fn logical_and() -> Self {
        Self::new("LogicalAnd", BinaryOp::logical_and(), T::ONE).with_terminal(T::ZERO)
    }
}

/// Looks up one of the built-in monoids by name.
pub fn builtin_monoid<T: Scalar>(name: &str) -> Result<Monoid<T>> {
    let name = name.strip_suffix("Monoid").unwrap_or(name);
    Ok(match name {
        "Plus" => Monoid::plus(),
        "Multiplies" => Monoid::multiplies(),
        "Minimum" | "Min" => Monoid::minimum(),
        "Maximum" | "Max" => Monoid::maximum(),
        "LogicalOr" => Monoid::logical_or(),
        "LogicalAnd" => Monoid::logical_and(),
        other => return Err(GraphError::UnknownOperator(other.to_string())),
    })
}

/// The `(⊕, ⊗, 𝔻, 𝕀)` algebra a matrix product is evaluated over.
#[derive(Clone, Copy, Debug)]
pub struct Semiring<T> {
    pub name: &'static str,
    pub add: Monoid<T>,
    pub multiply: BinaryOp<T>,
}

impl<T: Scalar> Semiring<T> {
    pub fn new(name: &'static str, add: Monoid<T>, multiply: BinaryOp<T>) -> Self {
        Self { name, add, multiply }
    }

    /// The additive identity 𝕀.
    #[inline(always)]
    pub fn identity(&self) -> T {
        self.add.identity
    }

    #[inline(always)]
    pub fn plus(&self, a: T, b: T) -> T {
        self.add.apply(a, b)
    }

    #[inline(always)]
    pub fn times(&self, a: T, b: T) -> T {
        self.multiply.apply(a, b)
    }

    pub fn plus_multiplies() -> Self {
        Self::new("PlusMultiplies", Monoid::plus(), BinaryOp::times())
    }

    pub fn logical_or_and() -> Self {
        Self::new("LogicalOrAnd", Monoid::logical_or(), BinaryOp::logical_and())
    }

    pub fn min_plus() -> Self {
        Self::new("MinPlus", Monoid::minimum(), BinaryOp::plus())
    }

    pub fn max_plus() -> Self {
        Self::new("MaxPlus", Monoid::maximum(), BinaryOp::plus())
    }

    pub fn min_multiplies() -> Self {
        Self::new("MinMultiplies", Monoid::minimum(), BinaryOp::times())
    }

    pub fn minimum_select_second() -> Self {
        Self::new("MinimumSelectSecond", Monoid::minimum(), BinaryOp::second())
    }

    pub fn plus_less() -> Self {
        Self::new("PlusLess", Monoid::plus(), BinaryOp::less())
    }

    pub fn minimum_not_equal_to() -> Self {
        Self::new("MinimumNotEqualTo", Monoid::minimum(), BinaryOp::not_equal())
    }

    pub fn plus_minus() -> Self {
        Self::new("PlusMinus", Monoid::plus(), BinaryOp::minus())
    }

    pub fn multiplies_multiplies() -> Self {
        Self::new("MultipliesMultiplies", Monoid::multiplies(), BinaryOp::times())
    }
}

/// Looks up one of the built-in semirings by name. A trailing `Semiring` is
/// accepted, so `MinimumPlusSemiring` resolves to `MinPlus`.
pub fn builtin_semiring<T: Scalar>(name: &str) -> Result<Semiring<T>> {
    let name = name.strip_suffix("Semiring").unwrap_or(name);
    Ok(match name {
        "PlusMultiplies" => Semiring::plus_multiplies(),
        "LogicalOrAnd" => Semiring::logical_or_and(),
        "MinPlus" | "MinimumPlus" => Semiring::min_plus(),
        "MaxPlus" | "MaximumPlus" => Semiring::max_plus(),
        "MinMultiplies" | "MinimumMultiplies" => Semiring::min_multiplies(),
        "MinimumSelectSecond" => Semiring::minimum_select_second(),
        "PlusLess" => Semiring::plus_less(),
        "MinimumNotEqualTo" => Semiring::minimum_not_equal_to(),
        "PlusMinus" => Semiring::plus_minus(),
        "MultipliesMultiplies" => Semiring::multiplies_multiplies(),
        other => return Err(GraphError::UnknownOperator(other.to_string())),
    })
}

/// Names accepted by [`builtin_semiring`] in canonical form.
pub const SEMIRING_NAMES: &[&str] = &[
    "PlusMultiplies",
    "LogicalOrAnd",
    "MinPlus",
    "MaxPlus",
    "MinMultiplies",
    "MinimumSelectSecond",
    "PlusLess",
    "MinimumNotEqualTo",
    "PlusMinus",
    "MultipliesMultiplies",
];

/// Names accepted by [`builtin_monoid`] in canonical form.
pub const MONOID_NAMES: &[&str] = &["Plus", "Multiplies", "Minimum", "Maximum", "LogicalOr", "LogicalAnd"];

/// Operator pair used by the elementwise operations: `union` combines entries
/// present in both operands of `eWiseAdd`, `intersect` those of `eWiseMult`,
/// and `zero` is the value a dense operand uses for "absent".
pub trait ElementwiseOp<T: Scalar> {
    fn union_op(&self) -> BinaryOp<T>;
    fn intersect_op(&self) -> BinaryOp<T>;
    fn zero(&self) -> T;
}

impl<T: Scalar> ElementwiseOp<T> for Semiring<T> {
    fn union_op(&self) -> BinaryOp<T> {
        self.add.op
    }
    fn intersect_op(&self) -> BinaryOp<T> {
        self.multiply
    }
    fn zero(&self) -> T {
        self.identity()
    }
}

impl<T: Scalar> ElementwiseOp<T> for Monoid<T> {
    fn union_op(&self) -> BinaryOp<T> {
        self.op
    }
    fn intersect_op(&self) -> BinaryOp<T> {
        self.op
    }
    fn zero(&self) -> T {
        self.identity
    }
}
