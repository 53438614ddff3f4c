//! Dense linear algebra over GF(2), sized for the handful-of-dozens variable
//! systems the counting argument produces.

/// A packed vector over GF(2).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn toggle(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }
}

/// Equations `row · x = rhs` over GF(2).
#[derive(Debug, Clone, Default)]
pub struct LinearSystem {
    nvars: usize,
    rows: Vec<(BitVec, bool)>,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        LinearSystem { nvars, rows: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equations(&self) -> &[(BitVec, bool)] {
        &self.rows
    }

    /// Adds `sum(vars) = rhs`; repeated variables cancel.
    pub fn push(&mut self, vars: impl IntoIterator<Item = usize>, rhs: bool) {
        let mut row = BitVec::zeros(self.nvars);
        for v in vars {
            row.toggle(v);
        }
        self.rows.push((row, rhs));
    }

    pub fn is_satisfied_by(&self, x: &BitVec) -> bool {
        self.rows.iter().all(|(row, rhs)| row.dot(x) == *rhs)
    }

    /// Gauss-Jordan elimination. Returns `None` when the system is
    /// inconsistent.
    pub fn solve(&self) -> Option<AffineSpace> {
        let mut rows: Vec<(BitVec, bool)> = self.rows.clone();
        let mut pivots: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..self.nvars {
            let Some(found) = (rank..rows.len()).find(|&i| rows[i].0.get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let (pivot_row, pivot_rhs) = rows[rank].clone();
            for (i, (row, rhs)) in rows.iter_mut().enumerate() {
                if i != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                    *rhs ^= pivot_rhs;
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rows[rank..].iter().any(|(_, rhs)| *rhs) {
            return None;
        }

        let mut is_pivot = vec![false; self.nvars];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut particular = BitVec::zeros(self.nvars);
        for (i, &p) in pivots.iter().enumerate() {
            particular.set(p, rows[i].1);
        }
        let basis = (0..self.nvars)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVec::zeros(self.nvars);
                v.set(f, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if rows[i].0.get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        Some(AffineSpace { particular, basis })
    }
}

/// `particular + span(basis)`.
#[derive(Debug, Clone)]
pub struct AffineSpace {
    pub particular: BitVec,
    pub basis: Vec<BitVec>,
}

impl AffineSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Every member, in Gray-code order. Callers bound the dimension first.
    pub fn iter(&self) -> impl Iterator<Item = BitVec> + '_ {
        let count = 1u64 << self.basis.len();
        let mut current = self.particular.clone();
        (0..count).map(move |k| {
            if k > 0 {
                current.xor_assign(&self.basis[k.trailing_zeros() as usize]);
            }
            current.clone()
        })
    }
}
