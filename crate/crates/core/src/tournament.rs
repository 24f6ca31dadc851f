//! Almost-regular tournaments on part indices.
//!
//! Partitioners use a tournament to decide which of two parts "owns" the
//! edges between them; almost-regularity spreads that ownership evenly.

use crate::error::{GraphError, Result};

/// Circulant tournament, evaluated arithmetically.
///
/// For odd `t`, `i` beats `j` iff `(j - i) mod t` lies in `1..=(t-1)/2`.
/// For even `t` the odd circulant on `t + 1` indices is used with index `t`
/// deleted, which leaves every in/out imbalance at most 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tournament {
    t: usize,
    modulus: usize,
}

impl Tournament {
    pub fn almost_regular(t: usize) -> Result<Self> {
        if t == 0 {
            return Err(GraphError::Parameter("tournament needs at least one index".into()));
        }
        Ok(Self { t, modulus: t | 1 })
    }

    pub fn len(&self) -> usize {
        self.t
    }

    pub fn is_empty(&self) -> bool {
        self.t == 0
    }

    /// `R(i, j)`: the arc between `i` and `j` points from `i` to `j`.
    #[inline]
    pub fn beats(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let diff = (j + self.modulus - i) % self.modulus;
        diff <= self.modulus / 2
    }

    pub fn out_degree(&self, i: usize) -> usize {
        (0..self.t).filter(|&j| self.beats(i, j)).count()
    }
}

/// Why an orientation fails to be an almost-regular tournament.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TournamentDefect {
    /// Both or neither of `R(i, j)`, `R(j, i)` hold.
    NotATournament(usize, usize),
    /// Largest `|outdeg(i) - indeg(i)|` found; only reported when above 1.
    Imbalance(usize),
}

/// Largest `|outdeg - indeg|` over the `t` indices of the orientation `beats`.
pub fn worst_imbalance(t: usize, beats: impl Fn(usize, usize) -> bool) -> Result<usize, TournamentDefect> {
    let mut out = vec![0usize; t];
    for i in 0..t {
        for j in i + 1..t {
            match (beats(i, j), beats(j, i)) {
                (true, false) => out[i] += 1,
                (false, true) => out[j] += 1,
                _ => return Err(TournamentDefect::NotATournament(i, j)),
            }
        }
    }
    Ok(out.iter().map(|&o| (2 * o).abs_diff(t - 1)).max().unwrap_or(0))
}

/// Ok iff `beats` is a tournament on `0..t` with every imbalance at most 1.
pub fn check_almost_regular(t: usize, beats: impl Fn(usize, usize) -> bool) -> Result<(), TournamentDefect> {
    match worst_imbalance(t, beats)? {
        0 | 1 => Ok(()),
        worst => Err(TournamentDefect::Imbalance(worst)),
    }
}

/// The parity orientation `i < j` and `d(i, j)` even, or `i > j` and `d(i, j)`
/// odd, with `d` the cyclic distance. Kept for comparison only: it is not
/// almost-regular in general (at `t = 3` it is transitive).
pub fn parity_beats(t: usize, i: usize, j: usize) -> bool {
    let gap = i.abs_diff(j);
    let d = gap.min(t - gap);
    (i < j && d % 2 == 0) || (i > j && d % 2 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_rejected() {
        assert!(Tournament::almost_regular(0).is_err());
    }

    #[test]
    fn small_cases() {
        let one = Tournament::almost_regular(1).unwrap();
        assert_eq!(one.out_degree(0), 0);
        let five = Tournament::almost_regular(5).unwrap();
        assert!((0..5).all(|i| five.out_degree(i) == 2));
        let four = Tournament::almost_regular(4).unwrap();
        let degrees: Vec<usize> = (0..4).map(|i| four.out_degree(i)).collect();
        assert_eq!(degrees.iter().sum::<usize>(), 6);
        assert!(degrees.iter().all(|&d| d == 1 || d == 2));
    }

    #[test]
    fn transitive_and_circulant_imbalance() {
        assert_eq!(worst_imbalance(3, |i, j| i < j), Ok(2));
        assert_eq!(check_almost_regular(3, |i, j| i < j), Err(TournamentDefect::Imbalance(2)));
        let seven = Tournament::almost_regular(7).unwrap();
        assert_eq!(worst_imbalance(7, |i, j| seven.beats(i, j)), Ok(0));
        assert_eq!(worst_imbalance(2, |_, _| true), Err(TournamentDefect::NotATournament(0, 1)));
    }

    #[test]
    fn every_size_up_to_512_is_almost_regular() {
        for t in 1..=512 {
            let tour = Tournament::almost_regular(t).unwrap();
            assert_eq!(check_almost_regular(t, |i, j| tour.beats(i, j)), Ok(()), "t = {t}");
            if t % 2 == 1 {
                assert!((0..t).all(|i| tour.out_degree(i) == (t - 1) / 2));
            }
        }
    }

    #[test]
    fn parity_orientation_is_not_reliable() {
        assert_eq!(worst_imbalance(3, |i, j| parity_beats(3, i, j)), Ok(2));
        let good: Vec<usize> = (1..=64)
            .filter(|&t| check_almost_regular(t, |i, j| parity_beats(t, i, j)).is_ok())
            .collect();
        assert!(good.len() < 64);
    }
}
