use serde::Serialize;

use crate::exact_field::Rational;

/// Point `[x, y, z]` of Heis(3), the lower unitriangular matrix
/// `((1,0,0),(y,1,0),(z,x,1))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize)]
pub struct HeisPoint {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl HeisPoint {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Self {
        HeisPoint { x, y, z }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// `[0, 0, t]`, the time-`t` element of the centre.
    pub fn central(t: Rational) -> Self {
        HeisPoint { z: t, ..Self::default() }
    }

    pub fn inverse(&self) -> Self {
        HeisPoint { x: -&self.x, y: -&self.y, z: -&self.z + &self.x * &self.y }
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer() && self.z.is_integer()
    }
}

/// `[x,y,z]·[x',y',z'] = [x+x', y+y', z+z'+x·y']`.
pub fn heis_mul(g: &HeisPoint, h: &HeisPoint) -> HeisPoint {
    HeisPoint { x: &g.x + &h.x, y: &g.y + &h.y, z: &g.z + &h.z + &g.x * &h.y }
}

/// Returns `(γ, γ·g)` with `γ ∈ Heis_ℤ(3)` and `γ·g ∈ [0,1)³`.
pub fn heis_reduce_mod_lattice(g: &HeisPoint) -> (HeisPoint, HeisPoint) {
    let gy = -Rational::from_big(g.y.floor());
    let gx = -Rational::from_big(g.x.floor());
    // z-coordinate of γ·g is γz + z + γx·y; γx·y is the twist.
    let twisted = &g.z + &gx * &g.y;
    let gz = -Rational::from_big(twisted.floor());
    let gamma = HeisPoint::new(gx, gy, gz);
    let reduced = heis_mul(&gamma, g);
    (gamma, reduced)
}

/// Positive generator of the centre of `Heis_ℤ(3)`: the integer points `[0,0,n]`.
fn lattice_center_generator() -> Rational {
    Rational::one()
}

/// Minimal `t > 0` with `[0,0,t]·g` and `g` in the same `Heis_ℤ(3)`-orbit.
///
/// `[0,0,t]` is central, so `[0,0,t]·g ∈ Γ·g` iff `[0,0,t] ∈ Γ`; the period is
/// the generator of `Γ ∩ centre`, checked here against the reduction map.
pub fn central_flow_period(g: &HeisPoint) -> Rational {
    let t = lattice_center_generator();
    let moved = heis_mul(&HeisPoint::central(t.clone()), g);
    debug_assert_eq!(heis_reduce_mod_lattice(&moved).1, heis_reduce_mod_lattice(g).1);
    t
}
