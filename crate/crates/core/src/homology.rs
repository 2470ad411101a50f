//! Cellular homology through the Smith normal form of the boundary matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::Complex;
use crate::error::{Error, Result};

/// Boundary matrices in row convention: `d2[f][e]` is the signed number of
/// occurrences of edge `e` in face `f`, `d1[e][v]` is head minus tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub d1: Vec<Vec<i64>>,
    pub d2: Vec<Vec<i64>>,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl ChainComplex {
    pub fn of(c: &Complex) -> Self {
        let (nv, ne, nf) = (c.vertex_count(), c.edge_count(), c.face_count());
        let mut d1 = vec![vec![0i64; nv]; ne];
        for (i, &e) in c.edges().iter().enumerate() {
            d1[i][c.head(e).0] += 1;
            d1[i][c.tail(e).0] -= 1;
        }
        let mut d2 = vec![vec![0i64; ne]; nf];
        for (f, w) in c.faces().iter().enumerate() {
            for s in w.letters() {
                let i = c.edge_index(s.label()).unwrap();
                d2[f][i] += if s.is_reversed() { -1 } else { 1 };
            }
        }
        ChainComplex {
            d1,
            d2,
            vertices: nv,
            edges: ne,
            faces: nf,
        }
    }

    /// The composite `C2 -> C1 -> C0` vanishes.
    pub fn is_chain_complex(&self) -> bool {
        self.d2.iter().all(|row| {
            (0..self.vertices).all(|v| {
                row.iter()
                    .zip(&self.d1)
                    .map(|(&a, r)| a * r[v])
                    .sum::<i64>()
                    == 0
            })
        })
    }
}

/// Nonzero invariant factors of an integer matrix, in divisibility order.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<BigUint> {
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot of least absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if a[i][t].is_zero() {
                continue;
            }
            let q = a[i][t].div_floor(&a[t][t]);
            for j in t..cols {
                let d = &q * &a[t][j];
                a[i][j] -= d;
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            if a[t][j].is_zero() {
                continue;
            }
            let q = a[t][j].div_floor(&a[t][t]);
            for i in t..rows {
                let d = &q * &a[i][t];
                a[i][j] -= d;
            }
            clean &= a[t][j].is_zero();
        }
        if clean {
            diag.push(a[t][t].abs().to_biguint().unwrap());
            t += 1;
        }
    }
    // enforce divisibility: (a, b) -> (gcd, lcm)
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Rationals,
    /// Integers modulo `n >= 2`.
    Modulo(u32),
}

impl FromStr for Coefficients {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("unknown coefficients `{s}`"));
        match s {
            "Z" | "z" => Ok(Coefficients::Integers),
            "Q" | "q" | "0" => Ok(Coefficients::Rationals),
            _ => {
                let n = s.strip_prefix("Z/").unwrap_or(s);
                match n.parse::<u32>() {
                    Ok(n) if n >= 2 => Ok(Coefficients::Modulo(n)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::Modulo(n) => write!(f, "Z/{n}"),
        }
    }
}

/// A finitely generated module over the coefficient ring: `rank` copies of the
/// ring plus cyclic torsion summands (orders > 1, increasing).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    pub coefficients: Coefficients,
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(match self.coefficients {
                Coefficients::Modulo(n) => format!("(Z/{n})^{}", self.rank),
                c => format!("{c}^{}", self.rank),
            });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" (+) "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub h0: Group,
    pub h1: Group,
    pub h2: Group,
}

impl Homology {
    pub fn degree(&self, k: usize) -> Option<&Group> {
        [&self.h0, &self.h1, &self.h2].get(k).copied()
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H0 = {}\nH1 = {}\nH2 = {}", self.h0, self.h1, self.h2)
    }
}

fn torsion_part(factors: &[BigUint]) -> Vec<BigUint> {
    factors.iter().filter(|d| !d.is_one()).cloned().collect()
}

/// Integral homology: free ranks and torsion coefficients in degrees 0..=2.
fn integral(c: &Complex) -> [(usize, Vec<BigUint>); 3] {
    let cc = ChainComplex::of(c);
    let f1 = invariant_factors(&cc.d1);
    let f2 = invariant_factors(&cc.d2);
    let (r1, r2) = (f1.len(), f2.len());
    [
        (cc.vertices - r1, torsion_part(&f1)),
        (cc.edges - r1 - r2, torsion_part(&f2)),
        (cc.faces - r2, Vec::new()),
    ]
}

/// `Z/n` tensored with and Tor-ed against `Z^r (+) Z/d...`.
fn reduce_mod(n: u32, free: usize, torsion: &[BigUint], tor_below: &[BigUint]) -> Group {
    let n = BigUint::from(n);
    let mut rank = free;
    let mut small = Vec::new();
    for d in torsion.iter().chain(tor_below) {
        let g = d.gcd(&n);
        if g == n {
            rank += 1;
        } else if !g.is_one() {
            small.push(g);
        }
    }
    small.sort();
    Group {
        coefficients: Coefficients::Modulo(n.try_into().unwrap()),
        rank,
        torsion: small,
    }
}

pub fn homology(c: &Complex, coefficients: Coefficients) -> Homology {
    let z = integral(c);
    let group = |k: usize| -> Group {
        let (free, torsion) = &z[k];
        match coefficients {
            Coefficients::Integers => Group {
                coefficients,
                rank: *free,
                torsion: torsion.clone(),
            },
            Coefficients::Rationals => Group {
                coefficients,
                rank: *free,
                torsion: Vec::new(),
            },
            Coefficients::Modulo(n) => {
                let below: &[BigUint] = if k == 0 { &[] } else { &z[k - 1].1 };
                reduce_mod(n, *free, torsion, below)
            }
        }
    };
    Homology {
        h0: group(0),
        h1: group(1),
        h2: group(2),
    }
}
