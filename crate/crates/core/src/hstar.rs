//! The set of pole orders at which the one-point code chain grows.
//!
//! For a code length `n` and a Weierstrass semigroup `H` of genus `g`, the
//! chain `C(D, mQ)`, `m = 0..=n+2g-1`, strictly grows at exactly `n` values
//! `m_1 < ... < m_n`. Those values are determined here from semigroup data
//! alone (several routes) and validated against the structural invariants
//! every such set satisfies.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// How an [`HStar`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Explicit,
    EquivDivisor,
    IsometryDual,
    Abundance,
    CodeChain,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Explicit => "explicit",
            Mode::EquivDivisor => "equiv-divisor",
            Mode::IsometryDual => "isometry-dual",
            Mode::Abundance => "abundance",
            Mode::CodeChain => "code-chain",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "explicit" => Ok(Mode::Explicit),
            "equiv-divisor" => Ok(Mode::EquivDivisor),
            "isometry-dual" => Ok(Mode::IsometryDual),
            "abundance" => Ok(Mode::Abundance),
            "code-chain" => Ok(Mode::CodeChain),
            other => Err(format!("unknown mode '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HStar {
    semigroup: NumericalSemigroup,
    n: usize,
    members: Vec<i64>,
    // indexed by m in [0, n+2g-1]
    is_member: Vec<bool>,
    mode: Mode,
}

impl HStar {
    /// Index-0 sentinel `m_0`, standing for the zero code.
    pub const SENTINEL: i64 = -1;

    fn check_length(s: &NumericalSemigroup, n: usize) -> Result<()> {
        let bound = 2 * s.genus() + 2;
        if n <= bound {
            return Err(Error::LengthTooSmall { n, bound });
        }
        Ok(())
    }

    /// Validates a caller-supplied member list. Duplicates count against the
    /// cardinality; order does not matter.
    pub fn from_explicit(s: &NumericalSemigroup, n: usize, members: &[i64]) -> Result<Self> {
        Self::validated(s, n, members.to_vec(), Mode::Explicit)
    }

    fn validated(s: &NumericalSemigroup, n: usize, mut members: Vec<i64>, mode: Mode) -> Result<Self> {
        Self::check_length(s, n)?;
        let top = n as i64 + 2 * s.genus() as i64 - 1;
        members.sort_unstable();
        members.dedup();
        if members.len() != n {
            return Err(Error::WrongCardinality {
                expected: n,
                actual: members.len(),
            });
        }
        if let Some(&bad) = members.iter().find(|&&m| m < 0 || m > top || !s.contains(m)) {
            return Err(Error::NotSubsetOfH(bad));
        }
        let mut is_member = vec![false; top as usize + 1];
        for &m in &members {
            is_member[m as usize] = true;
        }
        if let Some(bad) = (0..n as i64).find(|&m| is_member[m as usize] != s.contains(m)) {
            return Err(Error::LowRangeMismatch(bad));
        }
        // Above n every integer is in H; an element missing there must keep
        // every translate by H missing as well.
        for missing in (n as i64..=top).filter(|&m| !is_member[m as usize]) {
            for present in missing + 1..=top {
                if is_member[present as usize] && s.contains(present - missing) {
                    return Err(Error::ClosureViolation { missing, present });
                }
            }
        }
        let high = (n as i64..=top).filter(|&m| is_member[m as usize]).count();
        if high != s.genus() {
            return Err(Error::InternalInvariantViolation(format!(
                "{high} members in [n, n+2g-1], expected {}",
                s.genus()
            )));
        }
        Ok(Self {
            semigroup: s.clone(),
            n,
            members,
            is_member,
            mode,
        })
    }

    /// The set for a divisor `D` linearly equivalent to `nQ`:
    /// `(H ∩ [0, n-1]) ∪ {n + l : l a gap}`.
    pub fn from_equiv_divisor(s: &NumericalSemigroup, n: usize) -> Result<Self> {
        Self::check_length(s, n)?;
        let mut members = s.elements_up_to(n as i64 - 1);
        members.extend(s.gaps().iter().map(|&l| n as i64 + l));
        Self::validated(s, n, members, Mode::EquivDivisor)
    }

    /// The set for an isometry-dual sequence: `{m ∈ H : n+2g-1-m ∈ H}`.
    ///
    /// Also derived as the complement of the gaps and their reflections in
    /// `[0, n+2g-1]`; the two must agree.
    pub fn from_isometry_dual(s: &NumericalSemigroup, n: usize) -> Result<Self> {
        Self::check_length(s, n)?;
        let top = n as i64 + 2 * s.genus() as i64 - 1;
        let by_reflection: Vec<i64> = (0..=top)
            .filter(|&m| s.contains(m) && s.contains(top - m))
            .collect();
        let excluded: Vec<i64> = s
            .gaps()
            .iter()
            .copied()
            .chain(s.gaps().iter().map(|&l| top - l))
            .collect();
        let by_complement: Vec<i64> = (0..=top).filter(|m| !excluded.contains(m)).collect();
        if by_reflection != by_complement {
            return Err(Error::InternalInvariantViolation(
                "reflection and complement descriptions disagree".into(),
            ));
        }
        Self::validated(s, n, by_reflection, Mode::IsometryDual)
    }

    /// From the abundance sequence `ell[m] = ℓ(mQ - D)` for `m = 0..=n+2g-1`.
    pub fn from_abundance(s: &NumericalSemigroup, n: usize, ell: &[i64]) -> Result<Self> {
        Self::check_length(s, n)?;
        let g = s.genus();
        let len = n + 2 * g;
        let malformed = |msg: String| Err(Error::MalformedAbundance(msg));
        if ell.len() != len {
            return malformed(format!("expected {len} values (m = 0..={}), got {}", len - 1, ell.len()));
        }
        let mut prev = 0;
        for (m, &v) in ell.iter().enumerate() {
            if !(v == prev || v == prev + 1) {
                return malformed(format!("step at m={m} from {prev} to {v}"));
            }
            if m < n && v != 0 {
                return malformed(format!("ell({m}) = {v}, must vanish below n"));
            }
            prev = v;
        }
        if prev != g as i64 {
            return malformed(format!("ell(n+2g-1) = {prev}, expected g = {g}"));
        }
        let members = (0..len)
            .filter(|&m| s.contains(m as i64) && ell[m] == if m == 0 { 0 } else { ell[m - 1] })
            .map(|m| m as i64)
            .collect();
        Self::validated(s, n, members, Mode::Abundance)
            .map_err(|e| Error::ResultInvalid(Box::new(e)))
    }

    /// From measured code dimensions `dims[m] = dim C(D, mQ)` for
    /// `m = 0..=n+2g-1`; `n` is the final dimension.
    pub fn from_dimension_chain(dims: &[usize], s: &NumericalSemigroup) -> Result<Self> {
        let malformed = |msg: String| Err(Error::MalformedChain(msg));
        let g = s.genus();
        if dims.len() <= 2 * g {
            return malformed(format!("only {} dimensions for genus {g}", dims.len()));
        }
        let n = dims.len() - 2 * g;
        let mut prev = 0;
        let mut members = Vec::with_capacity(n);
        for (m, &d) in dims.iter().enumerate() {
            match d.checked_sub(prev) {
                Some(0) => {}
                Some(1) => members.push(m as i64),
                _ => return malformed(format!("step at m={m} from {prev} to {d}")),
            }
            prev = d;
        }
        if prev != n {
            return malformed(format!("final dimension {prev}, expected n = {n}"));
        }
        Self::validated(s, n, members, Mode::CodeChain)
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn genus(&self) -> usize {
        self.semigroup.genus()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn members(&self) -> &[i64] {
        &self.members
    }

    /// `n + 2g - 1`, the largest pole order that can be a member.
    pub fn top(&self) -> i64 {
        self.is_member.len() as i64 - 1
    }

    /// `m_i` for `i` in `0..=n`, where `m_0` is the sentinel.
    pub fn m(&self, i: usize) -> i64 {
        if i == 0 {
            Self::SENTINEL
        } else {
            self.members[i - 1]
        }
    }

    pub fn contains(&self, m: i64) -> bool {
        m >= 0 && m <= self.top() && self.is_member[m as usize]
    }

    /// Number of members `<= m`, i.e. `dim C(D, mQ)`.
    pub fn dimension_at(&self, m: i64) -> usize {
        self.members.partition_point(|&x| x <= m)
    }

    pub fn is_isometry_dual(&self) -> bool {
        self.contains(self.top())
    }

    /// The smallest element of `H` that is not a member.
    pub fn pi(&self) -> i64 {
        (self.n as i64..)
            .find(|&m| self.semigroup.contains(m) && !self.contains(m))
            .expect("members are bounded")
    }
}
