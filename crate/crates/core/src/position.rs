//! Exact rational points on the unit interval.
//!
//! Every geometric quantity in this crate (interval endpoints, pillar
//! positions, segment bounds) is an exact rational in `[0, 1]`; nothing is
//! ever rounded. Endpoints and pillars are strictly interior, while `0` and
//! `1` appear only as the outer bounds of segments.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact rational in `[0, 1]`, stored in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "PosRepr", into = "PosRepr")]
pub struct Pos(Ratio<i64>);

/// Wire shape: `{"num": .., "den": ..}`.
#[derive(Serialize, Deserialize)]
struct PosRepr {
    num: i64,
    den: i64,
}

impl Pos {
    pub const ZERO: Pos = Pos(Ratio::new_raw(0, 1));
    pub const ONE: Pos = Pos(Ratio::new_raw(1, 1));

    pub fn new(num: i64, den: i64) -> Result<Pos> {
        if den <= 0 || num < 0 || num > den {
            return Err(Error::InvalidPosition { num, den });
        }
        Ok(Pos(Ratio::new(num, den)))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    /// Strictly between 0 and 1, i.e. usable as an endpoint or pillar.
    pub fn is_interior(&self) -> bool {
        *self > Pos::ZERO && *self < Pos::ONE
    }

    /// Exact midpoint of two positions.
    ///
    /// All pillar placement in this crate goes through midpoints of gaps
    /// between normalized endpoints (denominator `2n+1`) or between an
    /// endpoint and one such midpoint, so denominators stay bounded by
    /// `4(2n+1)` and `i64` arithmetic never overflows at supported sizes.
    pub fn midpoint(a: Pos, b: Pos) -> Pos {
        Pos((a.0 + b.0) / 2)
    }
}

impl From<Pos> for PosRepr {
    fn from(p: Pos) -> PosRepr {
        PosRepr { num: p.numer(), den: p.denom() }
    }
}

impl TryFrom<PosRepr> for Pos {
    type Error = Error;

    fn try_from(r: PosRepr) -> Result<Pos> {
        Pos::new(r.num, r.den)
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Pos {
    type Err = Error;

    /// Parses `"num/den"` (or a bare integer, read as `num/1`).
    fn from_str(s: &str) -> Result<Pos> {
        let bad = || Error::InvalidPosition { num: 0, den: 0 };
        match s.split_once('/') {
            Some((n, d)) => {
                let num = n.trim().parse().map_err(|_| bad())?;
                let den = d.trim().parse().map_err(|_| bad())?;
                Pos::new(num, den)
            }
            None => {
                let num = s.trim().parse().map_err(|_| bad())?;
                Pos::new(num, 1)
            }
        }
    }
}
