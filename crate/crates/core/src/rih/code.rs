//! Binary codes and the symbol-to-bits map used by the RIH construction.

use crate::{csp::Assignment, Error, Result};

/// Largest message length for which codes are built and verified.
pub const MAX_MESSAGE_BITS: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeKind {
    /// `n = 2^k`, codeword bit `y` is `⟨m, y⟩ mod 2`.
    Hadamard,
    /// `n = k`, every word is a codeword.
    Identity,
}

/// A linear binary code `{0,1}^k → {0,1}^n` with verified minimum distance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    kind: CodeKind,
    k: usize,
    n: usize,
    distance: usize,
}

fn to_int(bits: &[bool]) -> usize {
    bits.iter()
        .enumerate()
        .fold(0, |acc, (i, &b)| acc | ((b as usize) << i))
}

fn from_int(x: usize, len: usize) -> Vec<bool> {
    (0..len).map(|i| (x >> i) & 1 == 1).collect()
}

pub fn hamming(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

impl BinaryCode {
    /// The Hadamard code on `k` message bits.
    pub fn hadamard(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadParams("Hadamard code needs k ≥ 1".into()));
        }
        Self::build(CodeKind::Hadamard, k, 1 << k.min(MAX_MESSAGE_BITS))
    }

    /// Identity code for tiny instances, distance 1.
    pub fn identity(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::BadParams("identity code needs k ≥ 1".into()));
        }
        Self::build(CodeKind::Identity, k, k)
    }

    fn build(kind: CodeKind, k: usize, n: usize) -> Result<Self> {
        if k > MAX_MESSAGE_BITS {
            return Err(Error::TooLarge {
                states: 1u128 << k.min(127),
                cap: 1 << MAX_MESSAGE_BITS,
            });
        }
        let mut code = BinaryCode {
            kind,
            k,
            n,
            distance: 0,
        };
        // linear code: the minimum pairwise distance is the minimum nonzero weight
        code.distance = (1..1usize << k)
            .map(|m| code.encode(&from_int(m, k)).iter().filter(|&&b| b).count())
            .min()
            .expect("k ≥ 1");
        Ok(code)
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn message_len(&self) -> usize {
        self.k
    }

    pub fn block_len(&self) -> usize {
        self.n
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    pub fn encode(&self, message: &[bool]) -> Vec<bool> {
        assert_eq!(message.len(), self.k, "message length");
        match self.kind {
            CodeKind::Identity => message.to_vec(),
            CodeKind::Hadamard => {
                let m = to_int(message);
                (0..self.n).map(|y| (m & y).count_ones() % 2 == 1).collect()
            }
        }
    }

    /// The message if `word` is a codeword, `None` (⊥) otherwise.
    pub fn exact_decode(&self, word: &[bool]) -> Option<Vec<bool>> {
        if word.len() != self.n {
            return None;
        }
        let message = match self.kind {
            CodeKind::Identity => word.to_vec(),
            CodeKind::Hadamard => (0..self.k).map(|i| word[1 << i]).collect(),
        };
        (self.encode(&message) == word).then_some(message)
    }

    /// Closest message by exhaustive search; ties go to the smallest message
    /// read as a little-endian integer.
    pub fn nearest_decode(&self, word: &[bool]) -> Vec<bool> {
        let best = (0..1usize << self.k)
            .min_by_key(|&m| (hamming(&self.encode(&from_int(m, self.k)), word), m))
            .expect("k ≥ 1");
        from_int(best, self.k)
    }
}

/// The Hadamard code used by default for `k` message bits.
pub fn default_code(k: usize) -> Result<BinaryCode> {
    BinaryCode::hadamard(k)
}

/// Injective map from symbols to `w = max(1, ⌈log₂ q⌉)` bits, little-endian.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabelBitMap {
    q: usize,
    width: usize,
}

impl LabelBitMap {
    pub fn new(q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::BadParams("alphabet must be non-empty".into()));
        }
        let width = (usize::BITS - (q - 1).leading_zeros()).max(1) as usize;
        Ok(LabelBitMap { q, width })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bits(&self, sym: u32) -> Vec<bool> {
        from_int(sym as usize, self.width)
    }

    /// Inverse on the image only.
    pub fn symbol(&self, bits: &[bool]) -> Option<u32> {
        let x = to_int(bits);
        (bits.len() == self.width && x < self.q).then_some(x as u32)
    }

    /// Concatenated bits of every variable's symbol.
    pub fn message(&self, asg: &Assignment) -> Vec<bool> {
        asg.values().iter().flat_map(|&s| self.bits(s)).collect()
    }

    /// `ψ_x`, when every block lies in the image.
    pub fn assignment(&self, message: &[bool]) -> Option<Assignment> {
        if !message.len().is_multiple_of(self.width) {
            return None;
        }
        message
            .chunks(self.width)
            .map(|c| self.symbol(c))
            .collect::<Option<Vec<_>>>()
            .map(Assignment::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_k1() {
        let code = BinaryCode::hadamard(1).unwrap();
        assert_eq!(code.block_len(), 2);
        assert_eq!(code.encode(&[false]), vec![false, false]);
        assert_eq!(code.encode(&[true]), vec![false, true]);
        assert_eq!(code.distance(), 1);
    }

    #[test]
    fn hadamard_distance_is_half_length() {
        for k in 1..=8 {
            let code = BinaryCode::hadamard(k).unwrap();
            assert_eq!(code.distance(), code.block_len() / 2);
        }
    }

    #[test]
    fn pairwise_distance_matches_for_small_k() {
        for k in 1..=5 {
            let code = BinaryCode::hadamard(k).unwrap();
            let words: Vec<_> = (0..1 << k).map(|m| code.encode(&from_int(m, k))).collect();
            let min = (0..words.len())
                .flat_map(|a| (a + 1..words.len()).map(move |b| (a, b)))
                .map(|(a, b)| hamming(&words[a], &words[b]))
                .min()
                .unwrap();
            assert_eq!(min, code.distance());
        }
    }

    #[test]
    fn exact_decode_round_trip_and_rejects() {
        let code = BinaryCode::hadamard(4).unwrap();
        for m in 0..16 {
            let msg = from_int(m, 4);
            let mut word = code.encode(&msg);
            assert_eq!(code.exact_decode(&word), Some(msg));
            word[3] = !word[3];
            assert_eq!(code.exact_decode(&word), None);
        }
    }

    #[test]
    fn nearest_decode_corrects_below_half_distance() {
        for k in 1..=6 {
            let code = BinaryCode::hadamard(k).unwrap();
            let radius = (code.distance() - 1) / 2;
            for m in 0..1 << k {
                let msg = from_int(m, k);
                let mut word = code.encode(&msg);
                for pos in 0..radius {
                    word[(pos * 7 + m) % code.block_len()] ^= true;
                }
                assert_eq!(code.nearest_decode(&word), msg);
            }
        }
    }

    #[test]
    fn code_size_limit() {
        assert!(BinaryCode::hadamard(15).is_err());
        assert!(BinaryCode::hadamard(0).is_err());
        let id = BinaryCode::identity(4).unwrap();
        assert_eq!((id.block_len(), id.distance()), (4, 1));
    }

    #[test]
    fn label_bits() {
        let map = LabelBitMap::new(3).unwrap();
        assert_eq!(map.width(), 2);
        assert_eq!(map.symbol(&map.bits(2)), Some(2));
        assert_eq!(map.symbol(&[true, true]), None);
        assert_eq!(LabelBitMap::new(1).unwrap().width(), 1);
        assert_eq!(LabelBitMap::new(2).unwrap().width(), 1);
        assert_eq!(LabelBitMap::new(4).unwrap().width(), 2);
        assert_eq!(LabelBitMap::new(5).unwrap().width(), 3);
        let asg = Assignment::new(vec![0, 2, 1]);
        assert_eq!(map.assignment(&map.message(&asg)), Some(asg));
    }
}
