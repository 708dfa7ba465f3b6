use crate::error::{Error, Result};
use crate::ffield::Scalar;

/// A GF(2) vector packed 64 coordinates per word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> BitRow {
        BitRow { words: vec![0; len.div_ceil(64)], len }
    }

    /// Packs a vector of GF(2) scalars; any rep other than 0 or 1 is rejected.
    pub fn from_scalars(v: &[Scalar]) -> Result<BitRow> {
        let mut row = BitRow::zeros(v.len());
        for (i, s) in v.iter().enumerate() {
            match s.rep() {
                0 => {}
                1 => row.words[i / 64] |= 1 << (i % 64),
                r => return Err(Error::ElementOutOfRange { rep: r, q: 2 }),
            }
        }
        Ok(row)
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        (0..self.len).map(|i| if self.get(i) { Scalar::ONE } else { Scalar::ZERO }).collect()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitRow) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Hamming weight by population count.
    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn pack_roundtrip_and_xor(a in proptest::collection::vec(0u32..2, 0..300), seed in any::<u64>()) {
            let sa: Vec<Scalar> = a.iter().map(|&r| Scalar::from_rep(r)).collect();
            let sb: Vec<Scalar> = (0..a.len()).map(|i| Scalar::from_rep(((seed >> (i % 64)) & 1) as u32)).collect();
            let mut ra = BitRow::from_scalars(&sa).unwrap();
            let rb = BitRow::from_scalars(&sb).unwrap();
            prop_assert_eq!(ra.to_scalars(), sa.clone());
            prop_assert_eq!(ra.weight(), a.iter().filter(|&&x| x == 1).count());
            ra.xor_assign(&rb);
            let expect: Vec<Scalar> = sa.iter().zip(&sb).map(|(x, y)| Scalar::from_rep(x.rep() ^ y.rep())).collect();
            prop_assert_eq!(ra.to_scalars(), expect);
        }
    }

    #[test]
    fn rejects_non_binary() {
        assert!(BitRow::from_scalars(&[Scalar::from_rep(2)]).is_err());
    }
}
