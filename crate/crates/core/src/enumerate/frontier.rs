use std::hash::Hash;

/// A fixed-width bit window over the cells just ahead of the sweep.
pub(crate) trait Frontier: Copy + Eq + Hash + Default + std::fmt::Debug {
    fn set(&mut self, i: usize);
    fn intersects(&self, other: &Self) -> bool;
    fn union(self, other: Self) -> Self;
    fn trailing_ones(&self) -> u32;
    fn shr(self, k: u32) -> Self;
}

macro_rules! word_frontier {
    ($t:ty) => {
        impl Frontier for $t {
            #[inline]
            fn set(&mut self, i: usize) {
                *self |= 1 << i;
            }
            #[inline]
            fn intersects(&self, other: &Self) -> bool {
                self & other != 0
            }
            #[inline]
            fn union(self, other: Self) -> Self {
                self | other
            }
            #[inline]
            fn trailing_ones(&self) -> u32 {
                <$t>::trailing_ones(*self)
            }
            #[inline]
            fn shr(self, k: u32) -> Self {
                self.checked_shr(k).unwrap_or(0)
            }
        }
    };
}

word_frontier!(u64);
word_frontier!(u128);

/// `64 * K` bits, little-endian words.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Wide<const K: usize>([u64; K]);

impl<const K: usize> Default for Wide<K> {
    fn default() -> Self {
        Wide([0; K])
    }
}

impl<const K: usize> Frontier for Wide<K> {
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    fn union(mut self, other: Self) -> Self {
        for (a, b) in self.0.iter_mut().zip(other.0.iter()) {
            *a |= b;
        }
        self
    }

    fn trailing_ones(&self) -> u32 {
        let mut n = 0;
        for w in &self.0 {
            let t = w.trailing_ones();
            n += t;
            if t < 64 {
                break;
            }
        }
        n
    }

    fn shr(self, k: u32) -> Self {
        let (words, bits) = ((k / 64) as usize, k % 64);
        let mut out = [0u64; K];
        for (i, slot) in out.iter_mut().enumerate() {
            let src = i + words;
            if src >= K {
                break;
            }
            let mut v = self.0[src] >> bits;
            if bits > 0 && src + 1 < K {
                v |= self.0[src + 1] << (64 - bits);
            }
            *slot = v;
        }
        Wide(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check<F: Frontier>(bits: usize) {
        let mut a = F::default();
        for i in [0, 1, 2, 40, bits - 1] {
            a.set(i);
        }
        assert_eq!(a.trailing_ones(), 3);
        let b = a.shr(3);
        let mut expect = F::default();
        expect.set(37);
        expect.set(bits - 4);
        assert_eq!(b, expect);
        assert!(a.intersects(&expect.shr(0).union(a)));
        assert_eq!(a.shr(bits as u32), F::default());
    }

    #[test]
    fn all_widths_agree() {
        check::<u64>(64);
        check::<u128>(128);
        check::<Wide<4>>(256);
        check::<Wide<8>>(512);
    }

    #[test]
    fn wide_shift_crosses_words() {
        let mut a = Wide::<4>::default();
        a.set(64);
        a.set(130);
        let mut e = Wide::<4>::default();
        e.set(0);
        e.set(66);
        assert_eq!(a.shr(64), e);
        let mut f = Wide::<4>::default();
        f.set(63);
        f.set(129);
        assert_eq!(a.shr(1), f);
    }
}
