//! Quantales given by an explicit multiplication table on a finite lattice.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{mk, Lattice, LatticeError, LatticeFile, DEFAULT_MAX_LATTICE};
use crate::quantale::Residuals;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantaleError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("malformed multiplication table: {0}")]
    Shape(String),
    #[error("not associative: ({x}∘{y})∘{z} != {x}∘({y}∘{z})")]
    NotAssociative { x: String, y: String, z: String },
    #[error("multiplication does not preserve joins in its {side} argument at {x}, {y}, {z}")]
    NotDistributive {
        side: &'static str,
        x: String,
        y: String,
        z: String,
    },
    #[error("{x}∘⊥ or ⊥∘{x} is not ⊥")]
    BottomNotAbsorbing { x: String },
}

/// A finite quantale: a lattice with an associative, join-preserving
/// multiplication. The constructor validates both laws exhaustively.
#[derive(Debug, Clone)]
pub struct FiniteQuantale {
    carrier: Lattice,
    mult: Vec<usize>,
    residuals: Residuals,
}

/// `{ "carrier": <lattice file>, "mult": [[...], ...] }`, rows are left factors.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaleFile {
    pub carrier: LatticeFile,
    pub mult: Vec<Vec<usize>>,
}

impl FiniteQuantale {
    pub fn new(carrier: Lattice, mult: Vec<Vec<usize>>) -> Result<Self, QuantaleError> {
        let n = carrier.size();
        if mult.len() != n || mult.iter().any(|row| row.len() != n) {
            return Err(QuantaleError::Shape(format!("table must be {n}x{n}")));
        }
        if let Some(v) = mult.iter().flatten().find(|&&v| v >= n) {
            return Err(QuantaleError::Shape(format!("entry {v} is not an element")));
        }
        let mult: Vec<usize> = mult.into_iter().flatten().collect();
        let m = |x: usize, y: usize| mult[x * n + y];
        let name = |x: usize| carrier.name(x).to_string();
        let bot = carrier.bottom();
        for x in 0..n {
            if m(x, bot) != bot || m(bot, x) != bot {
                return Err(QuantaleError::BottomNotAbsorbing { x: name(x) });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if m(m(x, y), z) != m(x, m(y, z)) {
                        return Err(QuantaleError::NotAssociative {
                            x: name(x),
                            y: name(y),
                            z: name(z),
                        });
                    }
                    let yz = carrier.join(y, z);
                    if m(x, yz) != carrier.join(m(x, y), m(x, z)) {
                        return Err(QuantaleError::NotDistributive {
                            side: "right",
                            x: name(x),
                            y: name(y),
                            z: name(z),
                        });
                    }
                    if m(yz, x) != carrier.join(m(y, x), m(z, x)) {
                        return Err(QuantaleError::NotDistributive {
                            side: "left",
                            x: name(x),
                            y: name(y),
                            z: name(z),
                        });
                    }
                }
            }
        }
        let residuals = Residuals::build(
            n,
            |x, y| carrier.join_all((0..n).filter(|&z| carrier.leq(m(x, z), y))),
            |y, x| carrier.join_all((0..n).filter(|&z| carrier.leq(m(z, x), y))),
        );
        Ok(FiniteQuantale {
            carrier,
            mult,
            residuals,
        })
    }

    pub fn from_file(file: QuantaleFile) -> Result<Self, QuantaleError> {
        let carrier = file.carrier.into_lattice(DEFAULT_MAX_LATTICE)?;
        Self::new(carrier, file.mult)
    }

    pub fn from_json(text: &str) -> Result<Self, QuantaleError> {
        let file: QuantaleFile =
            serde_json::from_str(text).map_err(|e| LatticeError::Format(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn to_file(&self) -> QuantaleFile {
        let n = self.size();
        QuantaleFile {
            carrier: self.carrier.to_file(),
            mult: (0..n).map(|x| (0..n).map(|y| self.mult(x, y)).collect()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("quantale file serializes")
    }

    pub fn carrier(&self) -> &Lattice {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }

    /// `x ∘ y`.
    pub fn mult(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.size() + y]
    }

    pub fn residuals(&self) -> &Residuals {
        &self.residuals
    }

    /// `(x \ y, y / x)`.
    pub fn q_residuals(&self, x: usize, y: usize) -> (usize, usize) {
        (self.residuals.under(x, y), self.residuals.over(y, x))
    }

    /// The two-sided unit, if any.
    pub fn unit(&self) -> Option<usize> {
        let n = self.size();
        (0..n).find(|&u| (0..n).all(|x| self.mult(u, x) == x && self.mult(x, u) == x))
    }

    pub fn cyclic(&self) -> Vec<usize> {
        self.residuals.cyclic()
    }

    pub fn dualizing(&self) -> Vec<usize> {
        self.residuals.dualizing()
    }

    /// A triple `(x, y, z)` where `x∘z ≤ y ⇔ z ≤ x\y` or
    /// `z∘x ≤ y ⇔ z ≤ y/x` fails.
    pub fn residual_law_violation(&self) -> Option<(usize, usize, usize)> {
        let l = &self.carrier;
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let left = l.leq(self.mult(x, z), y) == l.leq(z, self.residuals.under(x, y));
                    let right = l.leq(self.mult(z, x), y) == l.leq(z, self.residuals.over(y, x));
                    if !left || !right {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

/// The quantale on `M5` (atoms `u, d, a, b, c`) in which `d` is the only
/// dualizing element but is not cyclic.
pub fn m5_quantale() -> FiniteQuantale {
    const T: usize = 6;
    let table = vec![
        vec![0, 0, 0, 0, 0, 0, 0],
        vec![0, 1, 2, 3, 4, 5, T],
        vec![0, 2, T, T, T, T, T],
        vec![0, 3, T, T, T, 2, T],
        vec![0, 4, T, 2, T, T, T],
        vec![0, 5, T, T, 2, T, T],
        vec![0, T, T, T, T, T, T],
    ];
    let carrier = mk(5).expect("M5 is a lattice");
    FiniteQuantale::new(carrier, table).expect("the M5 table is a quantale")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::chain;

    fn idx(q: &FiniteQuantale, name: &str) -> usize {
        q.carrier().index_of(name).unwrap()
    }

    #[test]
    fn m5_table_entries() {
        let q = m5_quantale();
        let (u, d, a, c) = (idx(&q, "u"), idx(&q, "d"), idx(&q, "a"), idx(&q, "c"));
        assert_eq!(q.mult(a, c), d);
        assert_eq!(q.mult(d, d), q.carrier().top());
        assert_eq!(q.unit(), Some(u));
        for x in 0..7 {
            assert_eq!(q.mult(u, x), x);
        }
    }

    #[test]
    fn m5_cyclic_and_dualizing() {
        let q = m5_quantale();
        let (u, d) = (idx(&q, "u"), idx(&q, "d"));
        let non_cyclic: Vec<usize> = (0..7).filter(|x| !q.cyclic().contains(x)).collect();
        assert_eq!(non_cyclic, vec![d]);
        assert_eq!(q.dualizing(), vec![d]);
        assert_eq!(q.q_residuals(d, d).0, u);
        let top = q.carrier().top();
        assert_eq!(q.q_residuals(top, top).0, top);
        assert_eq!(q.residual_law_violation(), None);
    }

    #[test]
    fn rejects_bad_tables() {
        let c2 = chain(2).unwrap();
        assert!(matches!(
            FiniteQuantale::new(c2.clone(), vec![vec![0, 0]]),
            Err(QuantaleError::Shape(_))
        ));
        assert!(matches!(
            FiniteQuantale::new(c2.clone(), vec![vec![0, 1], vec![1, 1]]),
            Err(QuantaleError::BottomNotAbsorbing { .. })
        ));
        // 0 < 1 < 2 with 1∘1 = 2 but 2∘2 = 1 breaks distribution over 1 ∨ 2.
        let c3 = chain(3).unwrap();
        let bad = vec![vec![0, 0, 0], vec![0, 2, 2], vec![0, 2, 1]];
        assert!(FiniteQuantale::new(c3, bad).is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = m5_quantale();
        let back = FiniteQuantale::from_json(&q.to_json()).unwrap();
        assert_eq!(back.to_json(), q.to_json());
    }
}
