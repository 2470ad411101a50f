//! Complexes shipped with the crate.

use crate::complex::Complex;

pub const V23: &str = include_str!("../data/v23.cplx");
pub const X_PRIME: &str = include_str!("../data/xprime.cplx");
pub const X_DOUBLE_PRIME: &str = include_str!("../data/xpp.cplx");
pub const W158: &str = include_str!("../data/w158.cplx");
pub const W158_COLLAR: &str = include_str!("../data/w158_collar.cplx");

fn load(text: &str) -> Complex {
    Complex::parse(text).expect("shipped complex parses")
}

pub fn v23() -> Complex {
    load(V23)
}

pub fn x_prime() -> Complex {
    load(X_PRIME)
}

pub fn x_double_prime() -> Complex {
    load(X_DOUBLE_PRIME)
}

pub fn w158() -> Complex {
    load(W158)
}

/// The nine faces of `w158` that meet both of its vertices.
pub fn w158_collar() -> Complex {
    load(W158_COLLAR)
}

/// Look up a shipped complex by a short name.
pub fn by_name(name: &str) -> Option<Complex> {
    match name {
        "v23" => Some(v23()),
        "xprime" | "x_prime" => Some(x_prime()),
        "xpp" | "x_double_prime" => Some(x_double_prime()),
        "w158" => Some(w158()),
        _ => None,
    }
}
