//! Numerical semigroups: membership, gaps, genus and Frobenius number.
//!
//! A semigroup is stored as a membership bitmap over `[0, conductor)`; every
//! integer at or beyond the conductor is a member.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<i64>,
    gaps: Vec<i64>,
    conductor: i64,
    below_conductor: Vec<bool>,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.abs()
}

impl NumericalSemigroup {
    /// The semigroup of all nonnegative integer combinations of `gens`.
    pub fn from_generators(gens: &[i64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(&bad) = gens.iter().find(|&&g| g < 1) {
            return Err(Error::NonPositiveGenerator(bad));
        }
        let d = gens.iter().fold(0, |acc, &g| gcd(acc, g));
        if d != 1 {
            return Err(Error::GcdNotOne(d));
        }
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        let smallest = generators[0];

        // Sieve forward until `smallest` consecutive members appear; from there
        // on every integer is reachable by adding copies of `smallest`.
        let mut member = vec![true];
        let mut run = 1i64;
        let mut x = 0i64;
        while run < smallest {
            x += 1;
            let reachable = generators
                .iter()
                .any(|&g| g <= x && member[(x - g) as usize]);
            member.push(reachable);
            run = if reachable { run + 1 } else { 0 };
        }
        let conductor = x - run + 1;
        member.truncate(conductor as usize);
        let gaps = (0..conductor).filter(|&v| !member[v as usize]).collect();
        Ok(Self {
            generators,
            gaps,
            conductor,
            below_conductor: member,
        })
    }

    pub fn generators(&self) -> &[i64] {
        &self.generators
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// Largest gap, or -1 for the semigroup of all nonnegative integers.
    pub fn frobenius(&self) -> i64 {
        self.conductor - 1
    }

    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    pub fn contains(&self, m: i64) -> bool {
        if m < 0 {
            false
        } else if m >= self.conductor {
            true
        } else {
            self.below_conductor[m as usize]
        }
    }

    /// `h_i`, 1-based, so `nth_element(1) == 0`.
    ///
    /// # Panics
    /// If `i == 0`.
    pub fn nth_element(&self, i: usize) -> i64 {
        assert!(i >= 1, "semigroup elements are indexed from 1");
        let below = self.conductor as usize - self.gaps.len();
        if i <= below {
            (0..self.conductor)
                .filter(|&v| self.below_conductor[v as usize])
                .nth(i - 1)
                .expect("counted above")
        } else {
            self.conductor + (i - below - 1) as i64
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.frobenius() == 2 * self.genus() as i64 - 1
    }

    /// All members in `[0, bound]`, ascending.
    pub fn elements_up_to(&self, bound: i64) -> Vec<i64> {
        (0..=bound).filter(|&v| self.contains(v)).collect()
    }

    /// Number of members in `[0, bound]`.
    pub fn count_up_to(&self, bound: i64) -> usize {
        if bound < 0 {
            return 0;
        }
        let gaps_below = self.gaps.partition_point(|&l| l <= bound);
        (bound + 1) as usize - gaps_below
    }
}
