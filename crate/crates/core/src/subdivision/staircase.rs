//! Membership bitmaps of monomial ideals inside a bounding box.
//!
//! One coordinate (the "fast" one) lives in the bits of a `u64`, the others
//! index words. Shifting the bitmap along a coordinate multiplies the ideal
//! by a monomial, and minimal generators are the members whose immediate
//! predecessors are all outside.

const MAX_WORDS: usize = 1 << 23;

pub(crate) struct Staircase {
    sizes: Vec<usize>,
    fast: usize,
    strides: Vec<usize>,
    words: Vec<u64>,
}

impl Staircase {
    /// An all-zero bitmap on `[0, bounds_i]`, or `None` when the box is too
    /// large for the bitmap representation.
    pub(crate) fn empty(bounds: &[u32]) -> Option<Self> {
        let sizes: Vec<usize> = bounds.iter().map(|&b| b as usize + 1).collect();
        let fast = (0..sizes.len()).filter(|&i| sizes[i] <= 64).max_by_key(|&i| sizes[i])?;
        let mut strides = vec![0; sizes.len()];
        let mut len = 1usize;
        for i in (0..sizes.len()).filter(|&i| i != fast) {
            strides[i] = len;
            len = len.checked_mul(sizes[i]).filter(|&l| l <= MAX_WORDS)?;
        }
        Some(Staircase { sizes, fast, strides, words: vec![0; len] })
    }

    /// The unit ideal: every point of the box.
    pub(crate) fn full(bounds: &[u32]) -> Option<Self> {
        let mut s = Self::empty(bounds)?;
        let mask = s.mask();
        s.words.fill(mask);
        Some(s)
    }

    fn mask(&self) -> u64 {
        match self.sizes[self.fast] {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    pub(crate) fn insert(&mut self, x: &[u32]) {
        let w: usize = (0..x.len()).filter(|&i| i != self.fast).map(|i| x[i] as usize * self.strides[i]).sum();
        self.words[w] |= 1 << x[self.fast];
    }

    /// Closes the stored points upward inside the box.
    pub(crate) fn close_upward(&mut self) {
        let mask = self.mask();
        for w in &mut self.words {
            let mut v = *w;
            for k in [1, 2, 4, 8, 16, 32] {
                v |= v << k;
            }
            *w = v & mask;
        }
        for i in (0..self.sizes.len()).filter(|&i| i != self.fast) {
            let (s, n) = (self.strides[i], self.sizes[i]);
            for block in self.words.chunks_mut(s * n) {
                for j in 1..n {
                    let (lo, hi) = block.split_at_mut(j * s);
                    for (d, &v) in hi[..s].iter_mut().zip(&lo[(j - 1) * s..]) {
                        *d |= v;
                    }
                }
            }
        }
    }

    /// The product with the ideal `(x_i^p : (i, p) in powers)`.
    pub(crate) fn times_powers(&self, powers: &[(usize, u32)]) -> Staircase {
        let mut out = Staircase {
            sizes: self.sizes.clone(),
            fast: self.fast,
            strides: self.strides.clone(),
            words: vec![0; self.words.len()],
        };
        let mask = self.mask();
        for &(i, p) in powers {
            let p = p as usize;
            if i == self.fast {
                if p < 64 {
                    for (d, &v) in out.words.iter_mut().zip(&self.words) {
                        *d |= (v << p) & mask;
                    }
                }
                continue;
            }
            let (s, n) = (self.strides[i], self.sizes[i]);
            if p >= n {
                continue;
            }
            for (dst, src) in out.words.chunks_mut(s * n).zip(self.words.chunks(s * n)) {
                for (d, &v) in dst[p * s..].iter_mut().zip(&src[..(n - p) * s]) {
                    *d |= v;
                }
            }
        }
        out
    }

    /// Minimal elements of an upward closed bitmap, in lexicographic order.
    pub(crate) fn minimal_points(&self) -> Vec<Vec<u32>> {
        let rank = self.sizes.len();
        let slow: Vec<usize> = (0..rank).filter(|&i| i != self.fast).collect();
        let mut out = Vec::new();
        let mut x = vec![0u32; rank];
        for (w, &v) in self.words.iter().enumerate() {
            let mut cand = v & !(v << 1);
            for &i in &slow {
                let c = (w / self.strides[i]) % self.sizes[i];
                x[i] = c as u32;
                if c > 0 {
                    cand &= !self.words[w - self.strides[i]];
                }
            }
            while cand != 0 {
                x[self.fast] = cand.trailing_zeros();
                out.push(x.clone());
                cand &= cand - 1;
            }
        }
        out.sort_unstable();
        out
    }
}
