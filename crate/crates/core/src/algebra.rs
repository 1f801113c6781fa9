//! Algebra signatures over arbitrary (possibly null) bases.
//!
//! A signature is a list of basis-vector names plus a symmetric Gram matrix.
//! Products are never evaluated in the user basis directly. Instead every
//! signature carries an exact change of basis to an orthogonal frame
//! `f_k` with `f_k² = s_k ∈ {+1, -1, 0}`, so that
//! `Pᵀ · diag(s) · P = gram`. Products are taken blade-by-blade in that
//! frame, where only sign bookkeeping is needed, and mapped back.
//!
//! The Gram matrix must decompose into 1×1 blocks (ordinary or degenerate
//! vectors) and 2×2 null pairs (`g[o][o] = g[∞][∞] = 0`, `g[o][∞] ≠ 0`).
//! For a null pair the frame is
//!
//! ```text
//! e_o = ½ (f₊ + f₋)        f₊ = e_o + e_∞ / (2g)
//! e_∞ = g (f₊ − f₋)        f₋ = e_o − e_∞ / (2g)
//! ```
//!
//! which is exact in binary floating point for the `g = −1` and `g = ½`
//! pairings used by the quadric frameworks.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Basis blade as a bitmask: bit `i` set means basis vector `i` is a factor.
pub type Blade = u16;

/// Largest supported number of grade-1 basis vectors.
pub const MAX_DIM: usize = 16;

/// Shared handle to a signature; multivectors hold one of these.
pub type Algebra = Arc<AlgebraSignature>;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Block {
    Single { index: usize, square: f64 },
    NullPair { origin: usize, infinity: usize, product: f64 },
}

/// Flat table of per-blade linear expansions.
#[derive(Debug)]
struct BladeTable {
    offsets: Vec<u32>,
    terms: Vec<(Blade, f64)>,
}

impl BladeTable {
    fn get(&self, blade: Blade) -> &[(Blade, f64)] {
        let b = blade as usize;
        &self.terms[self.offsets[b] as usize..self.offsets[b + 1] as usize]
    }

    /// Builds the outermorphism of a vector map for every blade.
    ///
    /// `columns[i]` lists the image of basis vector `i`. Blades are built in
    /// increasing bitmask order by wedging the highest factor on the right
    /// of the (already tabulated) remaining blade.
    fn outermorphism(dim: usize, columns: &[Vec<(usize, f64)>]) -> Self {
        let count = 1usize << dim;
        let mut offsets = Vec::with_capacity(count + 1);
        let mut terms: Vec<(Blade, f64)> = Vec::new();
        offsets.push(0u32);
        terms.push((0, 1.0));
        offsets.push(1);
        let mut scratch: Vec<(Blade, f64)> = Vec::new();
        for mask in 1..count {
            let high = (usize::BITS - 1 - mask.leading_zeros()) as usize;
            let rest = mask & !(1 << high);
            scratch.clear();
            let (start, end) = (offsets[rest] as usize, offsets[rest + 1] as usize);
            for t in start..end {
                let (m, v) = terms[t];
                for &(k, c) in &columns[high] {
                    if m & (1 << k) != 0 {
                        continue;
                    }
                    let above = (m >> (k + 1)).count_ones();
                    let sign = if above % 2 == 0 { 1.0 } else { -1.0 };
                    let key = m | (1 << k);
                    let value = sign * v * c;
                    match scratch.iter_mut().find(|(b, _)| *b == key) {
                        Some(slot) => slot.1 += value,
                        None => scratch.push((key, value)),
                    }
                }
            }
            scratch.retain(|&(_, v)| v != 0.0);
            scratch.sort_unstable_by_key(|&(b, _)| b);
            terms.extend_from_slice(&scratch);
            offsets.push(terms.len() as u32);
        }
        BladeTable { offsets, terms }
    }
}

/// Basis, bilinear form and precomputed orthogonalizing frame of an algebra.
#[derive(Debug)]
pub struct AlgebraSignature {
    label: String,
    names: Vec<String>,
    gram: Vec<f64>,
    dim: usize,
    squares: Vec<f64>,
    // change[k * dim + i]: coefficient of f_k in e_i
    change: Vec<f64>,
    // inverse[i * dim + k]: coefficient of e_i in f_k
    inverse: Vec<f64>,
    to_frame: BladeTable,
    from_frame: BladeTable,
}

impl AlgebraSignature {
    /// Builds a signature from basis names and a row-major Gram matrix.
    pub fn new(label: &str, names: &[&str], gram: &[f64]) -> Result<Algebra> {
        let dim = names.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidSignature("dimension must be in 1..=16"));
        }
        if gram.len() != dim * dim {
            return Err(Error::InvalidSignature("gram matrix has the wrong size"));
        }
        for i in 0..dim {
            for j in 0..i {
                if gram[i * dim + j] != gram[j * dim + i] {
                    return Err(Error::InvalidSignature("gram matrix is not symmetric"));
                }
            }
        }
        let blocks = find_blocks(dim, gram)?;

        let mut squares = vec![0.0; dim];
        let mut change = vec![0.0; dim * dim];
        let mut inverse = vec![0.0; dim * dim];
        for block in &blocks {
            match *block {
                Block::Single { index, square } => {
                    if square == 0.0 {
                        squares[index] = 0.0;
                        change[index * dim + index] = 1.0;
                        inverse[index * dim + index] = 1.0;
                    } else {
                        let scale = libm::sqrt(square.abs());
                        squares[index] = square.signum();
                        change[index * dim + index] = scale;
                        inverse[index * dim + index] = 1.0 / scale;
                    }
                }
                Block::NullPair { origin: o, infinity: n, product: g } => {
                    squares[o] = 1.0;
                    squares[n] = -1.0;
                    change[o * dim + o] = 0.5;
                    change[n * dim + o] = 0.5;
                    change[o * dim + n] = g;
                    change[n * dim + n] = -g;
                    let h = 1.0 / (2.0 * g);
                    inverse[o * dim + o] = 1.0;
                    inverse[n * dim + o] = h;
                    inverse[o * dim + n] = 1.0;
                    inverse[n * dim + n] = -h;
                }
            }
        }

        // column i of a row-major matrix: image of basis vector i
        let column = |m: &[f64], i: usize| -> Vec<(usize, f64)> {
            (0..dim)
                .filter_map(|k| {
                    let v = m[k * dim + i];
                    (v != 0.0).then_some((k, v))
                })
                .collect()
        };
        let forward: Vec<_> = (0..dim).map(|i| column(&change, i)).collect();
        let backward: Vec<_> = (0..dim).map(|k| column(&inverse, k)).collect();

        Ok(Arc::new(AlgebraSignature {
            label: label.into(),
            names: names.iter().map(|s| String::from(*s)).collect(),
            gram: gram.to_vec(),
            dim,
            squares,
            to_frame: BladeTable::outermorphism(dim, &forward),
            from_frame: BladeTable::outermorphism(dim, &backward),
            change,
            inverse,
        }))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Inner product of basis vectors `i` and `j`.
    pub fn gram(&self, i: usize, j: usize) -> f64 {
        self.gram[i * self.dim + j]
    }

    /// Signs `s_k` of the orthogonal frame.
    pub fn frame_squares(&self) -> &[f64] {
        &self.squares
    }

    /// Row-major `P` with `Pᵀ · diag(s) · P = gram`.
    pub fn change_of_basis(&self) -> &[f64] {
        &self.change
    }

    /// Row-major `P⁻¹`.
    pub fn inverse_change_of_basis(&self) -> &[f64] {
        &self.inverse
    }

    /// Bitmask of the full pseudoscalar.
    pub fn pseudoscalar_blade(&self) -> Blade {
        ((1u32 << self.dim) - 1) as Blade
    }

    /// Expansion of a user-basis blade in the orthogonal frame.
    pub(crate) fn blade_to_frame(&self, blade: Blade) -> &[(Blade, f64)] {
        self.to_frame.get(blade)
    }

    /// Expansion of a frame blade in the user basis.
    pub(crate) fn blade_from_frame(&self, blade: Blade) -> &[(Blade, f64)] {
        self.from_frame.get(blade)
    }

    /// Metric factor of the frame product `f_A f_B`: reordering sign times
    /// the squares of shared factors.
    pub(crate) fn frame_product_sign(&self, a: Blade, b: Blade) -> f64 {
        let mut sign = reorder_sign(a, b);
        let mut common = a & b;
        while common != 0 {
            let k = common.trailing_zeros() as usize;
            sign *= self.squares[k];
            if sign == 0.0 {
                return 0.0;
            }
            common &= common - 1;
        }
        sign
    }

    /// Structural equality of two signatures.
    pub fn same_as(&self, other: &AlgebraSignature) -> bool {
        core::ptr::eq(self, other) || (self.names == other.names && self.gram == other.gram)
    }
}

fn find_blocks(dim: usize, gram: &[f64]) -> Result<Vec<Block>> {
    let g = |i: usize, j: usize| gram[i * dim + j];
    let mut blocks = Vec::new();
    let mut assigned = vec![false; dim];
    for i in 0..dim {
        if assigned[i] {
            continue;
        }
        let partners: Vec<usize> = (0..dim).filter(|&j| j != i && g(i, j) != 0.0).collect();
        match partners.as_slice() {
            [] => {
                blocks.push(Block::Single { index: i, square: g(i, i) });
                assigned[i] = true;
            }
            [j] => {
                let j = *j;
                let others = (0..dim).filter(|&k| k != j && k != i && g(j, k) != 0.0).count();
                if g(i, i) != 0.0 || g(j, j) != 0.0 || others != 0 || assigned[j] {
                    return Err(Error::InvalidSignature(
                        "off-diagonal entries must form isolated null pairs",
                    ));
                }
                blocks.push(Block::NullPair { origin: i, infinity: j, product: g(i, j) });
                assigned[i] = true;
                assigned[j] = true;
            }
            _ => {
                return Err(Error::InvalidSignature(
                    "a basis vector pairs with more than one other vector",
                ))
            }
        }
    }
    Ok(blocks)
}

/// Sign picked up when reordering `e_A e_B` into canonical ascending order.
pub fn reorder_sign(a: Blade, b: Blade) -> f64 {
    let mut a = a >> 1;
    let mut swaps = 0u32;
    while a != 0 {
        swaps += (a & b).count_ones();
        a >>= 1;
    }
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Grade of a blade.
pub fn grade(blade: Blade) -> usize {
    blade.count_ones() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cga() -> Algebra {
        let names = ["eo", "e1", "einf"];
        #[rustfmt::skip]
        let gram = [
            0.0, 0.0, -1.0,
            0.0, 1.0, 0.0,
            -1.0, 0.0, 0.0,
        ];
        AlgebraSignature::new("cga1d", &names, &gram).unwrap()
    }

    #[test]
    fn frame_reproduces_gram() {
        let alg = cga();
        let d = alg.dim();
        let p = alg.change_of_basis();
        let s = alg.frame_squares();
        for i in 0..d {
            for j in 0..d {
                let v: f64 = (0..d).map(|k| p[k * d + i] * s[k] * p[k * d + j]).sum();
                assert_eq!(v, alg.gram(i, j));
            }
        }
    }

    #[test]
    fn change_of_basis_round_trips() {
        let alg = cga();
        let d = alg.dim();
        let p = alg.change_of_basis();
        let q = alg.inverse_change_of_basis();
        for i in 0..d {
            for j in 0..d {
                let v: f64 = (0..d).map(|k| q[i * d + k] * p[k * d + j]).sum();
                assert_eq!(v, if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn rejects_bad_grams() {
        assert!(AlgebraSignature::new("x", &["a", "b"], &[1.0, 2.0, 3.0, 1.0]).is_err());
        // a vector paired with two others
        #[rustfmt::skip]
        let g = [
            0.0, 1.0, 1.0,
            1.0, 0.0, 0.0,
            1.0, 0.0, 0.0,
        ];
        assert!(AlgebraSignature::new("x", &["a", "b", "c"], &g).is_err());
        // non-null pair
        assert!(AlgebraSignature::new("x", &["a", "b"], &[1.0, 1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn reorder_sign_counts_transpositions() {
        assert_eq!(reorder_sign(0b01, 0b10), 1.0);
        assert_eq!(reorder_sign(0b10, 0b01), -1.0);
        assert_eq!(reorder_sign(0b110, 0b001), 1.0);
        assert_eq!(reorder_sign(0b100, 0b011), 1.0);
        assert_eq!(reorder_sign(0b010, 0b101), -1.0);
    }
}
