use nalgebra::DMatrix;

use crate::C64;

/// `S₂` on `2n` qubits: exchanges the two `n`-bit halves of a basis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapOperator {
    pub n: usize,
}

impl SwapOperator {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn apply(&self, x: usize) -> usize {
        let low = (1usize << self.n) - 1;
        ((x & low) << self.n) | (x >> self.n)
    }

    pub fn permutation(&self) -> Vec<usize> {
        (0..1usize << (2 * self.n)).map(|x| self.apply(x)).collect()
    }

    pub fn matrix(&self) -> DMatrix<C64> {
        let dim = 1usize << (2 * self.n);
        let mut m = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
        for x in 0..dim {
            m[(self.apply(x), x)] = C64::new(1.0, 0.0);
        }
        m
    }
}

/// Split of a `2n`-qubit label into first-copy and second-copy halves.
pub(crate) fn halves(n: usize, x: usize) -> (usize, usize) {
    (x >> n, x & ((1usize << n) - 1))
}

/// Difference mask `a ⊕ b` of the two halves.
pub(crate) fn mask_of(n: usize, x: usize) -> usize {
    let (a, b) = halves(n, x);
    a ^ b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    Invariant,
    Paired { partner: usize },
}

/// Every `2n`-qubit basis label tagged as `S₂`-invariant or paired, with its
/// difference mask.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisClassification {
    pub n: usize,
    pub kinds: Vec<BasisKind>,
    pub masks: Vec<usize>,
}

impl BasisClassification {
    pub fn invariant_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.kinds.len()).filter(|&x| self.kinds[x] == BasisKind::Invariant)
    }

    /// Unordered partner pairs `(x, S₂x)` with `x < S₂x`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.kinds.iter().enumerate().filter_map(|(x, k)| match *k {
            BasisKind::Paired { partner } if x < partner => Some((x, partner)),
            _ => None,
        })
    }

    pub fn pairs_with_mask(&self, mask: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs().filter(move |&(x, _)| self.masks[x] == mask)
    }

    /// Distinct nonzero masks in ascending order.
    pub fn nonzero_masks(&self) -> Vec<usize> {
        (1..1usize << self.n).collect()
    }
}

pub fn classify_basis(n: usize) -> BasisClassification {
    let swap = SwapOperator::new(n);
    let dim = 1usize << (2 * n);
    let kinds = (0..dim)
        .map(|x| {
            let p = swap.apply(x);
            if p == x {
                BasisKind::Invariant
            } else {
                BasisKind::Paired { partner: p }
            }
        })
        .collect();
    let masks = (0..dim).map(|x| mask_of(n, x)).collect();
    BasisClassification { n, kinds, masks }
}
