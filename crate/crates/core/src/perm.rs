//! Enumeration and classification of the n! permutations of {0..n−1}.
//!
//! Each permutation is one extreme point of the Birkhoff polytope; the split
//! into tours (single n-cycles), irreflexive non-tours (derangements with
//! several cycles), and reflexive non-tours (at least one fixed point) drives
//! everything downstream.

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::{ExactMatrix, ExactScalar};

/// Smallest supported n.
pub const MIN_N: usize = 3;
/// Largest supported n (8! = 40320 permutations).
pub const MAX_N: usize = 8;

pub(crate) fn check_n(n: usize) -> Result<()> {
    if (MIN_N..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::NOutOfRange {
            n,
            min: MIN_N,
            max: MAX_N,
        })
    }
}

/// A bijection on {0..n−1}, stored as its image: `image[i] = σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{image:?}")));
            }
            seen[v] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn fixed_point_count(&self) -> usize {
        self.image.iter().enumerate().filter(|(i, &v)| *i == v).count()
    }

    /// Cycle lengths in ascending order; sums to n.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut v = start;
            while !seen[v] {
                seen[v] = true;
                v = self.image[v];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }

    /// Cycle type as text, e.g. "1+1+2" for a transposition on n=4.
    pub fn cycle_type(&self) -> String {
        let lengths = self.cycle_lengths();
        let mut out = String::new();
        for (i, len) in lengths.iter().enumerate() {
            if i > 0 {
                out.push('+');
            }
            out.push_str(&len.to_string());
        }
        out
    }

    pub fn is_single_cycle(&self) -> bool {
        let n = self.n();
        let mut v = self.image[0];
        let mut steps = 1;
        while v != 0 {
            v = self.image[v];
            steps += 1;
            if steps > n {
                break;
            }
        }
        steps == n
    }

    /// The 0/1 permutation matrix with entry [i, image[i]] = 1.
    pub fn to_matrix(&self) -> ExactMatrix {
        let n = self.n();
        let mut m = ExactMatrix::zeros(n, n);
        for (i, &j) in self.image.iter().enumerate() {
            m.set(i, j, ExactScalar::one());
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PermClass {
    /// Single n-cycle: a directed Hamilton tour.
    Tour,
    /// Derangement with at least two cycles.
    IrreflexiveNonTour,
    /// At least one fixed point.
    ReflexiveNonTour,
}

impl PermClass {
    pub fn label(self) -> &'static str {
        match self {
            PermClass::Tour => "tour",
            PermClass::IrreflexiveNonTour => "irreflexive_nontour",
            PermClass::ReflexiveNonTour => "reflexive_nontour",
        }
    }

    pub fn is_tour(self) -> bool {
        matches!(self, PermClass::Tour)
    }
}

impl std::fmt::Display for PermClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify(p: &Permutation) -> PermClass {
    if p.fixed_point_count() > 0 {
        PermClass::ReflexiveNonTour
    } else if p.is_single_cycle() {
        PermClass::Tour
    } else {
        PermClass::IrreflexiveNonTour
    }
}

/// All n! permutations in lexicographic order of image.
pub fn enumerate_permutations(n: usize) -> Result<Vec<Permutation>> {
    check_n(n)?;
    let mut image: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation {
            image: image.clone(),
        });
        if !next_permutation(&mut image) {
            break;
        }
    }
    Ok(out)
}

/// Advances to the lexicographic successor in place; false at the last one.
fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub tours: u64,
    pub irreflexive_nontours: u64,
    pub reflexive_nontours: u64,
}

impl ClassCounts {
    pub fn add(&mut self, class: PermClass) {
        match class {
            PermClass::Tour => self.tours += 1,
            PermClass::IrreflexiveNonTour => self.irreflexive_nontours += 1,
            PermClass::ReflexiveNonTour => self.reflexive_nontours += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.tours + self.irreflexive_nontours + self.reflexive_nontours
    }

    pub fn triple(&self) -> (u64, u64, u64) {
        (self.tours, self.irreflexive_nontours, self.reflexive_nontours)
    }
}

/// Class counts over all n! permutations.
pub fn class_counts(n: usize) -> Result<ClassCounts> {
    let mut counts = ClassCounts::default();
    for p in enumerate_permutations(n)? {
        counts.add(classify(&p));
    }
    Ok(counts)
}
