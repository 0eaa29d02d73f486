//! Exact arithmetic for the tower function `E(m) = 2^{2^{…^2}}` (m twos),
//! with a symbolic fallback once values stop being materializable.
//!
//! A symbolic value `2↑↑h (top=k)` denotes the tower
//! `2^{2^{…^{2^k}}}` with `h` twos on top of the exact integer `k`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::words::WordError;

/// Bit-size cap for exact representation: `E(5)` (65537 bits) stays exact,
/// `E(6)` cannot be materialized and goes symbolic.
pub const DEFAULT_BIT_CAP: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TowerValue {
    Exact(BigUint),
    /// `height` twos stacked on an exact `top`; normalized so that
    /// `height >= 1` and `top >= DEFAULT_BIT_CAP` (otherwise a level would
    /// have been materialized).
    Symbolic { height: u64, top: BigUint },
}

impl TowerValue {
    pub fn exact(n: u64) -> Self {
        TowerValue::Exact(BigUint::from(n))
    }

    /// `2^self`, staying exact while the result fits under the bit cap.
    pub fn pow2(&self) -> TowerValue {
        match self {
            TowerValue::Exact(e) => {
                if *e < BigUint::from(DEFAULT_BIT_CAP) {
                    let shift: u64 = e.try_into().expect("bounded by bit cap");
                    TowerValue::Exact(BigUint::one() << shift)
                } else {
                    TowerValue::Symbolic { height: 1, top: e.clone() }
                }
            }
            TowerValue::Symbolic { height, top } => TowerValue::Symbolic {
                height: height + 1,
                top: top.clone(),
            },
        }
    }

    /// Exact floor of log₂. Errors on zero.
    pub fn floor_log2(&self) -> Result<TowerValue, WordError> {
        match self {
            TowerValue::Exact(e) => {
                if e.is_zero() {
                    Err(WordError::Domain("floor_log2 requires a value >= 1".into()))
                } else {
                    Ok(TowerValue::Exact(BigUint::from(e.bits() - 1)))
                }
            }
            // a symbolic value is an exact power of two: 2^tower(height-1, top)
            TowerValue::Symbolic { height, top } => {
                if *height == 1 {
                    Ok(TowerValue::Exact(top.clone()))
                } else {
                    Ok(TowerValue::Symbolic { height: height - 1, top: top.clone() })
                }
            }
        }
    }

    pub fn as_exact(&self) -> Option<&BigUint> {
        match self {
            TowerValue::Exact(e) => Some(e),
            TowerValue::Symbolic { .. } => None,
        }
    }
}

/// `E(0) = 1`, `E(m+1) = 2^{E(m)}`.
pub fn tower_e(m: u64) -> TowerValue {
    let mut v = TowerValue::Exact(BigUint::one());
    for _ in 0..m {
        v = v.pow2();
    }
    v
}

impl PartialOrd for TowerValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TowerValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TowerValue::Exact(a), TowerValue::Exact(b)) => a.cmp(b),
            // normalized symbolic values exceed anything exact: the top alone
            // is at least DEFAULT_BIT_CAP, so the value is at least
            // 2^DEFAULT_BIT_CAP, past the bit cap of any exact value
            (TowerValue::Exact(_), TowerValue::Symbolic { .. }) => Ordering::Less,
            (TowerValue::Symbolic { .. }, TowerValue::Exact(_)) => Ordering::Greater,
            (
                TowerValue::Symbolic { height: h1, top: t1 },
                TowerValue::Symbolic { height: h2, top: t2 },
            ) => {
                if h1 == h2 {
                    return t1.cmp(t2);
                }
                // Reduce the taller tower: tower(h2, t2) = tower(h1, u) with
                // u = tower(h2-h1, t2) >= 2^t2. Since t2 >= DEFAULT_BIT_CAP
                // >= bits(t1), we get t1 < 2^t2 <= u, and the order follows
                // from monotonicity of towers in the top.
                if h1 < h2 {
                    debug_assert!(t1.bits() <= DEFAULT_BIT_CAP);
                    Ordering::Less
                } else {
                    debug_assert!(t2.bits() <= DEFAULT_BIT_CAP);
                    Ordering::Greater
                }
            }
        }
    }
}

impl fmt::Display for TowerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerValue::Exact(e) => write!(f, "{e}"),
            TowerValue::Symbolic { height, top } => {
                if top.bits() <= 256 {
                    write!(f, "2↑↑{height} (top={top})")
                } else {
                    write!(f, "2↑↑{height} (top~2^{})", top.bits() - 1)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_towers() {
        assert_eq!(tower_e(0), TowerValue::exact(1));
        assert_eq!(tower_e(1), TowerValue::exact(2));
        assert_eq!(tower_e(2), TowerValue::exact(4));
        assert_eq!(tower_e(3), TowerValue::exact(16));
        assert_eq!(tower_e(4), TowerValue::exact(65536));
    }

    #[test]
    fn e5_is_exact_with_65537_bits() {
        let e5 = tower_e(5);
        let exact = e5.as_exact().expect("E(5) stays exact under the cap");
        assert_eq!(exact.bits(), 65537);
        assert_eq!(e5, TowerValue::Exact(BigUint::one() << 65536u32));
    }

    #[test]
    fn e6_goes_symbolic() {
        match tower_e(6) {
            TowerValue::Symbolic { height, top } => {
                assert_eq!(height, 1);
                assert_eq!(TowerValue::Exact(top), tower_e(5));
            }
            TowerValue::Exact(_) => panic!("E(6) must not be materialized"),
        }
    }

    #[test]
    fn compare_examples() {
        assert!(tower_e(3) < tower_e(4));
        assert_eq!(
            tower_e(5).cmp(&TowerValue::Exact(BigUint::one() << 65536u32)),
            std::cmp::Ordering::Equal
        );
        assert!(tower_e(6) > tower_e(5));
        for m in 0..12u64 {
            assert!(tower_e(m) < tower_e(m + 1));
        }
    }

    #[test]
    fn floor_log2_examples() {
        assert_eq!(
            TowerValue::exact(1).floor_log2().unwrap(),
            TowerValue::exact(0)
        );
        assert_eq!(
            TowerValue::exact(5).floor_log2().unwrap(),
            TowerValue::exact(2)
        );
        assert_eq!(tower_e(4).floor_log2().unwrap(), tower_e(3));
        assert!(TowerValue::exact(0).floor_log2().is_err());
        for m in 1..=6u64 {
            assert_eq!(tower_e(m).floor_log2().unwrap(), tower_e(m - 1));
        }
    }

    fn arb_tower() -> impl Strategy<Value = TowerValue> {
        prop_oneof![
            (0u64..10_000).prop_map(TowerValue::exact),
            (0u64..12).prop_map(tower_e),
        ]
    }

    proptest! {
        #[test]
        fn compare_total_order(a in arb_tower(), b in arb_tower(), c in arb_tower()) {
            use std::cmp::Ordering::*;
            // antisymmetry
            match a.cmp(&b) {
                Less => prop_assert_eq!(b.cmp(&a), Greater),
                Greater => prop_assert_eq!(b.cmp(&a), Less),
                Equal => prop_assert_eq!(b.cmp(&a), Equal),
            }
            // transitivity
            if a <= b && b <= c {
                prop_assert!(a <= c);
            }
        }
    }
}
