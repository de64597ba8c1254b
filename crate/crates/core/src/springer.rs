//! The ring `S = Z[x_1..x_2n] / (x_i^2, e_1, …, e_2n)`.
//!
//! Squares vanish, so elements live on square-free monomials, stored as bit
//! masks (bit `i-1` for `x_i`). Each variable has degree 2; a monomial of
//! support size `k` sits in degree `2k`. Within a degree, monomials are ordered
//! lexicographically by sorted support. The relation lattice of a degree is
//! spanned by all `m · e_k` with `x_i^2 = 0`; its column HNF pivots are
//! eliminated and the remaining monomials form the basis.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};
use crate::intlinalg::{invariant_factors_of_columns, Int, Lattice};

/// Largest `n` for which the ring is built (ambient dimension `2^{2n}`).
pub const MAX_RING_N: usize = 5;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquareFreeMonomial {
    n: usize,
    mask: u32,
}

impl SquareFreeMonomial {
    pub fn new(n: usize, support: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &i in support {
            if i == 0 || i > 2 * n {
                return Err(Error::Validation(format!("x_{i} is not one of x_1..x_{}", 2 * n)));
            }
            if mask & 1 << (i - 1) != 0 {
                return Err(Error::Validation(format!("x_{i} repeated in a square-free monomial")));
            }
            mask |= 1 << (i - 1);
        }
        Ok(SquareFreeMonomial { n, mask })
    }

    pub fn one(n: usize) -> Self {
        SquareFreeMonomial { n, mask: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// Variable indices, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..2 * self.n).filter(|&i| self.mask & 1 << i != 0).map(|i| i + 1).collect()
    }

    pub fn degree(&self) -> usize {
        2 * self.mask.count_ones() as usize
    }
}

impl PartialOrd for SquareFreeMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// By degree, then lexicographically by support.
impl Ord for SquareFreeMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.mask.count_ones(), self.support()).cmp(&(other.n, other.mask.count_ones(), other.support()))
    }
}

impl fmt::Display for SquareFreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.support().iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

impl fmt::Debug for SquareFreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingElement {
    n: usize,
    terms: BTreeMap<SquareFreeMonomial, Int>,
}

impl RingElement {
    pub fn zero(n: usize) -> Self {
        RingElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(SquareFreeMonomial::one(n))
    }

    pub fn monomial(m: SquareFreeMonomial) -> Self {
        let mut e = Self::zero(m.n);
        e.terms.insert(m, Int::one());
        e
    }

    /// `x_i`
    pub fn variable(n: usize, i: usize) -> Result<Self> {
        Ok(Self::monomial(SquareFreeMonomial::new(n, &[i])?))
    }

    /// Elementary symmetric polynomial `e_k` in `x_1..x_2n`.
    pub fn elementary(n: usize, k: usize) -> Self {
        let mut e = Self::zero(n);
        for mask in 0u32..1 << (2 * n) {
            if mask.count_ones() as usize == k {
                e.terms.insert(SquareFreeMonomial { n, mask }, Int::one());
            }
        }
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (SquareFreeMonomial, Int)>>(n: usize, terms: I) -> Result<Self> {
        let mut e = Self::zero(n);
        for (m, x) in terms {
            e.add_term(m, x)?;
        }
        Ok(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, m: SquareFreeMonomial, coeff: Int) -> Result<()> {
        if m.n != self.n {
            return Err(Error::Validation(format!("monomial {m} does not have n = {}", self.n)));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(m).or_insert_with(Int::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        let mut out = self.clone();
        for (m, x) in &other.terms {
            out.add_term(*m, x.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Int) -> RingElement {
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(*m, x * factor).expect("same n");
        }
        out
    }

    /// Product in `Z[x]/(x_i^2)`, before the symmetric relations.
    pub fn raw_product(&self, other: &RingElement) -> Result<RingElement> {
        if self.n != other.n {
            return Err(Error::Validation(format!("multiplying n = {} by n = {}", self.n, other.n)));
        }
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.mask & b.mask == 0 {
                    out.add_term(SquareFreeMonomial { n: self.n, mask: a.mask | b.mask }, x * y)?;
                }
            }
        }
        Ok(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SquareFreeMonomial, &Int)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, x)| format!("{x}·{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    support: Vec<usize>,
    #[serde(with = "crate::serde_int")]
    coeff: Int,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| TermJson { support: m.support(), coeff: x.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RingElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::deserialize(d)?;
        let n = raw.n;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| Ok((SquareFreeMonomial::new(n, &t.support)?, t.coeff)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RingElement::from_terms(n, terms).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug)]
struct RingBlock {
    /// Monomial masks of this support size, in order.
    monomials: Vec<u32>,
    lattice: Lattice,
    basis: Vec<usize>,
    invariant_factors: Vec<Int>,
}

/// The ring with its per-degree bases and reduction data.
#[derive(Clone, Debug)]
pub struct SpringerRing {
    n: usize,
    /// Indexed by support size `0..=2n`.
    blocks: Vec<RingBlock>,
    local: HashMap<u32, usize>,
    offsets: Vec<usize>,
}

fn support_key(mask: u32) -> Vec<u32> {
    (0..32).filter(|i| mask & 1 << i != 0).collect()
}

impl SpringerRing {
    pub fn new(n: usize) -> Result<Self> {
        check_size(n, MAX_RING_N, "Springer ring")?;
        let vars = 2 * n;
        let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); vars + 1];
        for mask in 0u32..1 << vars {
            by_size[mask.count_ones() as usize].push(mask);
        }
        for list in &mut by_size {
            list.sort_by_key(|&m| support_key(m));
        }
        let mut local = HashMap::new();
        for list in &by_size {
            for (p, &m) in list.iter().enumerate() {
                local.insert(m, p);
            }
        }
        let full = (1u32 << vars) - 1;
        let blocks = by_size
            .iter()
            .enumerate()
            .map(|(d, monomials)| {
                let mut seen = HashSet::new();
                let mut cols = Vec::new();
                for k in 1..=d {
                    for &m in &by_size[d - k] {
                        let free = full & !m;
                        let mut col = vec![Int::zero(); monomials.len()];
                        let mut any = false;
                        for &s in &by_size[k] {
                            if s & free == s {
                                col[local[&(m | s)]] += 1;
                                any = true;
                            }
                        }
                        if any && seen.insert(col.clone()) {
                            cols.push(col);
                        }
                    }
                }
                let lattice = Lattice::from_generators_uncertified(monomials.len(), cols)?;
                let mut is_pivot = vec![false; monomials.len()];
                for &r in lattice.pivot_rows() {
                    is_pivot[r] = true;
                }
                let basis: Vec<usize> = (0..monomials.len()).filter(|&p| !is_pivot[p]).collect();
                let invariant_factors = invariant_factors_of_columns(monomials.len(), lattice.basis().to_vec());
                Ok(RingBlock { monomials: monomials.clone(), lattice, basis, invariant_factors })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut offsets = vec![0];
        for b in &blocks {
            offsets.push(offsets.last().unwrap() + b.basis.len());
        }
        Ok(SpringerRing { n, blocks, local, offsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Ranks for support sizes `0..=2n`.
    pub fn full_ranks(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.basis.len()).collect()
    }

    /// Ranks in degrees `0, 2, …`, up to the last nonzero one.
    pub fn graded_ranks(&self) -> Vec<usize> {
        let mut r = self.full_ranks();
        while r.len() > 1 && r.last() == Some(&0) {
            r.pop();
        }
        r
    }

    pub fn total_rank(&self) -> usize {
        *self.offsets.last().expect("offsets start at 0")
    }

    pub fn invariant_factors(&self) -> Vec<Vec<Int>> {
        self.blocks.iter().map(|b| b.invariant_factors.clone()).collect()
    }

    pub fn has_unit_pivots(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.lattice.basis().iter().zip(b.lattice.pivot_rows()).all(|(col, &r)| col[r].is_one()))
    }

    /// Basis monomials per support size.
    pub fn basis(&self) -> Vec<Vec<SquareFreeMonomial>> {
        self.blocks
            .iter()
            .map(|b| b.basis.iter().map(|&p| SquareFreeMonomial { n: self.n, mask: b.monomials[p] }).collect())
            .collect()
    }

    pub fn flat_basis(&self) -> Vec<SquareFreeMonomial> {
        self.basis().into_iter().flatten().collect()
    }

    /// Coordinates of `f` in [`flat_basis`](Self::flat_basis).
    pub fn normal_form(&self, f: &RingElement) -> Result<Vec<Int>> {
        if f.n != self.n {
            return Err(Error::Validation(format!("element has n = {}, ring has n = {}", f.n, self.n)));
        }
        let mut locals: Vec<Vec<Int>> = self.blocks.iter().map(|b| vec![Int::zero(); b.monomials.len()]).collect();
        for (m, x) in &f.terms {
            locals[m.mask.count_ones() as usize][self.local[&m.mask]] += x;
        }
        let mut out = Vec::with_capacity(self.total_rank());
        for (block, mut w) in self.blocks.iter().zip(locals) {
            let lattice = &block.lattice;
            for j in (0..lattice.rank()).rev() {
                let r = lattice.pivot_rows()[j];
                if w[r].is_zero() {
                    continue;
                }
                let col = &lattice.basis()[j];
                if !(&w[r] % &col[r]).is_zero() {
                    return Err(Error::Internal(format!("ring pivot {} does not divide {}", col[r], w[r])));
                }
                let q = &w[r] / &col[r];
                for (wi, ci) in w[..=r].iter_mut().zip(&col[..=r]) {
                    if !ci.is_zero() {
                        *wi -= &q * ci;
                    }
                }
            }
            out.extend(block.basis.iter().map(|&p| w[p].clone()));
        }
        Ok(out)
    }

    /// The basis combination with the given coordinates.
    pub fn from_coordinates(&self, coords: &[Int]) -> Result<RingElement> {
        let basis = self.flat_basis();
        if coords.len() != basis.len() {
            return Err(Error::Dimension(format!("{} coordinates for rank {}", coords.len(), basis.len())));
        }
        RingElement::from_terms(self.n, basis.into_iter().zip(coords.iter().cloned()))
    }

    /// `f` rewritten on basis monomials.
    pub fn reduce(&self, f: &RingElement) -> Result<RingElement> {
        self.from_coordinates(&self.normal_form(f)?)
    }

    pub fn multiply(&self, f: &RingElement, g: &RingElement) -> Result<RingElement> {
        if f.n != self.n || g.n != self.n {
            return Err(Error::Validation(format!("operands are not in the ring with n = {}", self.n)));
        }
        self.reduce(&f.raw_product(g)?)
    }
}

pub fn ring_basis(n: usize) -> Result<Vec<Vec<SquareFreeMonomial>>> {
    Ok(SpringerRing::new(n)?.basis())
}

pub fn ring_graded_ranks(n: usize) -> Result<Vec<usize>> {
    Ok(SpringerRing::new(n)?.graded_ranks())
}

/// Machine-checked premises of the non-Frobenius argument.
#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusReport {
    pub n: usize,
    pub graded_ranks: Vec<usize>,
    pub degree_zero_rank: usize,
    /// Degree of the top nonzero piece.
    pub top_degree: usize,
    pub top_rank: usize,
    /// The claim that the top piece has rank exactly 2.
    pub top_rank_is_two: bool,
    /// `v, v'`: the first two top-degree basis monomials.
    pub v: Vec<RingElement>,
    pub products_checked: usize,
    /// Every positive-degree basis element kills every top-degree basis element.
    pub annihilation: bool,
    /// At least two top generators against a rank-one degree-0 piece.
    pub premises_hold: bool,
    /// `n = 1` has top rank 1 and falls outside the argument.
    pub outside_hypothesis: bool,
    pub conclusion: String,
}

impl FrobeniusReport {
    /// The literal claim: top rank 2 and the annihilation property.
    pub fn holds(&self) -> bool {
        self.top_rank_is_two && self.annihilation
    }
}

pub fn frobenius_obstruction(ring: &SpringerRing) -> Result<FrobeniusReport> {
    let ranks = ring.graded_ranks();
    let top = ranks.len() - 1;
    let basis = ring.basis();
    let tops: Vec<RingElement> = basis[top].iter().map(|&m| RingElement::monomial(m)).collect();
    let mut checked = 0;
    let mut annihilation = true;
    for u in basis.iter().skip(1).flatten() {
        let u = RingElement::monomial(*u);
        for v in &tops {
            checked += 1;
            if !ring.multiply(&u, v)?.is_zero() {
                annihilation = false;
            }
        }
    }
    let degree_zero_rank = ranks[0];
    let top_rank = ranks[top];
    let premises_hold = top > 0 && top_rank >= 2 && degree_zero_rank == 1 && annihilation;
    let conclusion = if premises_hold {
        format!(
            "degree 0 has rank {degree_zero_rank} while {top_rank} top-degree generators are killed by every \
             positive-degree element, so no functional admits a dual basis: not a Frobenius extension"
        )
    } else {
        "premises of the obstruction argument not met; no conclusion drawn".to_string()
    };
    Ok(FrobeniusReport {
        n: ring.n(),
        degree_zero_rank,
        top_degree: 2 * top,
        top_rank,
        top_rank_is_two: top_rank == 2,
        v: tops.into_iter().take(2).collect(),
        products_checked: checked,
        annihilation,
        premises_hold,
        outside_hypothesis: top_rank < 2,
        graded_ranks: ranks,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(n: usize, s: &[usize]) -> RingElement {
        RingElement::monomial(SquareFreeMonomial::new(n, s).unwrap())
    }

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn n1_by_hand() {
        let r = SpringerRing::new(1).unwrap();
        assert_eq!(r.graded_ranks(), vec![1, 1]);
        assert_eq!(r.flat_basis(), vec![SquareFreeMonomial::one(1), SquareFreeMonomial::new(1, &[1]).unwrap()]);
        assert_eq!(r.reduce(&mono(1, &[2])).unwrap(), mono(1, &[1]).scale(&Int::from(-1)));
        assert!(r.multiply(&mono(1, &[1]), &mono(1, &[2])).unwrap().is_zero());
        assert!(r.multiply(&mono(1, &[1]), &mono(1, &[1])).unwrap().is_zero());
    }

    #[test]
    fn graded_ranks_against_ballot_numbers() {
        assert_eq!(ring_graded_ranks(2).unwrap(), vec![1, 3, 2]);
        for n in 1..=4 {
            let r = SpringerRing::new(n).unwrap();
            let expected: Vec<usize> =
                (0..=n).map(|k| binom(2 * n, k) - if k > 0 { binom(2 * n, k - 1) } else { 0 }).collect();
            assert_eq!(r.graded_ranks(), expected);
            assert!(r.full_ranks()[n + 1..].iter().all(|&x| x == 0));
            assert!(r.has_unit_pivots());
            assert!(r.invariant_factors().iter().flatten().all(One::is_one));
        }
    }

    #[test]
    fn elementary_symmetric_vanish() {
        for n in 1..=3 {
            let r = SpringerRing::new(n).unwrap();
            for k in 1..=2 * n {
                let e = RingElement::elementary(n, k);
                assert!(r.normal_form(&e).unwrap().iter().all(Zero::is_zero));
                for b in r.flat_basis() {
                    let p = RingElement::monomial(b).raw_product(&e).unwrap();
                    assert!(r.normal_form(&p).unwrap().iter().all(Zero::is_zero));
                }
            }
            for (k, b) in r.flat_basis().into_iter().enumerate() {
                let c = r.normal_form(&RingElement::monomial(b)).unwrap();
                assert!(c.iter().enumerate().all(|(p, x)| *x == Int::from((p == k) as i64)));
            }
        }
    }

    #[test]
    fn multiplication_is_commutative_associative_unital() {
        for n in 1..=2 {
            let r = SpringerRing::new(n).unwrap();
            let basis: Vec<RingElement> = r.flat_basis().into_iter().map(RingElement::monomial).collect();
            let one = RingElement::one(n);
            for a in &basis {
                assert_eq!(r.multiply(&one, a).unwrap(), *a);
                for b in &basis {
                    let ab = r.multiply(a, b).unwrap();
                    assert_eq!(ab, r.multiply(b, a).unwrap());
                    for c in &basis {
                        assert_eq!(r.multiply(&ab, c).unwrap(), r.multiply(a, &r.multiply(b, c).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_reports() {
        let r1 = frobenius_obstruction(&SpringerRing::new(1).unwrap()).unwrap();
        assert!(r1.outside_hypothesis && !r1.premises_hold);
        let r2 = frobenius_obstruction(&SpringerRing::new(2).unwrap()).unwrap();
        assert!(r2.holds() && r2.premises_hold);
        assert_eq!(r2.products_checked, 3 * 2 + 2 * 2);
        let r3 = frobenius_obstruction(&SpringerRing::new(3).unwrap()).unwrap();
        assert_eq!(r3.top_rank, 5);
        assert!(r3.annihilation && r3.premises_hold && !r3.top_rank_is_two);
    }

    #[test]
    fn validation_and_json() {
        assert!(SquareFreeMonomial::new(1, &[3]).is_err());
        assert!(SquareFreeMonomial::new(2, &[1, 1]).is_err());
        let r = SpringerRing::new(2).unwrap();
        assert!(r.normal_form(&RingElement::one(1)).is_err());
        let e = RingElement::from_terms(
            2,
            [(SquareFreeMonomial::new(2, &[1, 3]).unwrap(), Int::from(2)), (SquareFreeMonomial::one(2), Int::from(-1))],
        )
        .unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"n":2,"terms":[{"support":[],"coeff":-1},{"support":[1,3],"coeff":2}]}"#);
        assert_eq!(serde_json::from_str::<RingElement>(&s).unwrap(), e);
        assert!(serde_json::from_str::<RingElement>(r#"{"n":1,"terms":[{"support":[5],"coeff":1}]}"#).is_err());
    }
}
