//! Residual tables of a finite quantale and the cyclic / dualizing searches
//! that only need those tables.

/// Both residuals for every pair of elements of a quantale with `n` elements.
///
/// `under(x, y) = x \ y` is the largest `z` with `x ∘ z ≤ y`;
/// `over(y, x) = y / x` is the largest `z` with `z ∘ x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residuals {
    n: usize,
    under: Vec<u32>,
    over: Vec<u32>,
}

impl Residuals {
    /// Builds the tables from the two residual functions.
    pub fn build<U, O>(n: usize, mut under: U, mut over: O) -> Self
    where
        U: FnMut(usize, usize) -> usize,
        O: FnMut(usize, usize) -> usize,
    {
        let mut u = Vec::with_capacity(n * n);
        let mut o = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                u.push(under(x, y) as u32);
                o.push(over(x, y) as u32);
            }
        }
        Residuals { n, under: u, over: o }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `x \ y`.
    #[inline]
    pub fn under(&self, x: usize, y: usize) -> usize {
        self.under[x * self.n + y] as usize
    }

    /// `y / x`.
    #[inline]
    pub fn over(&self, y: usize, x: usize) -> usize {
        self.over[y * self.n + x] as usize
    }

    /// `d / x = x \ d` for every `x`.
    pub fn is_cyclic(&self, d: usize) -> bool {
        (0..self.n).all(|x| self.over(d, x) == self.under(x, d))
    }

    /// `d / (x \ d) = x` and `(d / x) \ d = x` for every `x`.
    pub fn is_dualizing(&self, d: usize) -> bool {
        (0..self.n).all(|x| self.over(d, self.under(x, d)) == x && self.under(self.over(d, x), d) == x)
    }

    pub fn cyclic(&self) -> Vec<usize> {
        (0..self.n).filter(|&d| self.is_cyclic(d)).collect()
    }

    pub fn dualizing(&self) -> Vec<usize> {
        (0..self.n).filter(|&d| self.is_dualizing(d)).collect()
    }
}
