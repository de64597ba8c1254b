//! The skein module as a graded free abelian group on dotted configurations
//! modulo the Type I/II relation lattice.
//!
//! A dotted configuration is a matching with at most one dot per arc (two
//! dots on one annulus vanish, so that case is never represented). Its degree
//! is twice the number of dots. Relations are homogeneous, so the quotient is
//! computed one degree at a time.
//!
//! Generators are ordered by the linear extension of the arrow order, then by
//! dot set read as a binary counter over the arcs (bit `t` is the `t`-th arc
//! by left endpoint). Within a degree the relation lattice is put in column
//! HNF; its pivot rows are eliminated and the remaining generators form the
//! quotient basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};
use crate::intlinalg::{invariant_factors_of_columns, Int, Lattice};
use crate::matchings::{Arc, ArrowGraph, Arrow, Matching};

/// Largest `n` for which the quotient is computed.
pub const MAX_SKEIN_N: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DottedConfig {
    matching: Matching,
    /// Bit `t` set when the `t`-th arc (by left endpoint) carries a dot.
    dots: u32,
}

impl DottedConfig {
    pub fn new(matching: Matching, dotted: &[Arc]) -> Result<Self> {
        let mut dots = 0u32;
        for &arc in dotted {
            let t = matching
                .arc_index(arc)
                .ok_or_else(|| Error::Validation(format!("dotted arc {arc:?} is not an arc of {matching}")))?;
            if dots & (1 << t) != 0 {
                return Err(Error::Validation(format!("arc {arc:?} is dotted twice")));
            }
            dots |= 1 << t;
        }
        Ok(DottedConfig { matching, dots })
    }

    pub fn from_mask(matching: Matching, dots: u32) -> Result<Self> {
        if matching.n() < 32 && dots >> matching.n() != 0 {
            return Err(Error::Validation(format!("dot mask {dots:#b} exceeds {} arcs", matching.n())));
        }
        Ok(DottedConfig { matching, dots })
    }

    pub fn undotted(matching: Matching) -> Self {
        DottedConfig { matching, dots: 0 }
    }

    pub fn all_dotted(matching: Matching) -> Self {
        let dots = full_mask(matching.n());
        DottedConfig { matching, dots }
    }

    /// Every arc dotted except `arc`.
    pub fn all_dotted_except(matching: Matching, arc: Arc) -> Result<Self> {
        let t = matching
            .arc_index(arc)
            .ok_or_else(|| Error::Validation(format!("{arc:?} is not an arc of {matching}")))?;
        let dots = full_mask(matching.n()) & !(1 << t);
        Ok(DottedConfig { matching, dots })
    }

    pub fn n(&self) -> usize {
        self.matching.n()
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn dot_mask(&self) -> u32 {
        self.dots
    }

    pub fn is_dotted(&self, arc_position: usize) -> bool {
        self.dots & (1 << arc_position) != 0
    }

    pub fn dot_count(&self) -> usize {
        self.dots.count_ones() as usize
    }

    pub fn dotted_arcs(&self) -> Vec<Arc> {
        self.matching.arcs().iter().enumerate().filter(|&(t, _)| self.is_dotted(t)).map(|(_, &a)| a).collect()
    }

    /// `2d - χ` with `χ = 0` for a union of annuli.
    pub fn degree(&self) -> usize {
        2 * self.dot_count()
    }
}

pub(crate) fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// `2·|dots|`
pub fn degree(c: &DottedConfig) -> usize {
    c.degree()
}

impl fmt::Display for DottedConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .matching
            .arcs()
            .iter()
            .enumerate()
            .map(|(t, (i, j))| if self.is_dotted(t) { format!("({i},{j})*") } else { format!("({i},{j})") })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for DottedConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    n: usize,
    arcs: Vec<[usize; 2]>,
    dots: Vec<[usize; 2]>,
}

impl Serialize for DottedConfig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ConfigJson {
            n: self.n(),
            arcs: self.matching.arcs().iter().map(|&(i, j)| [i, j]).collect(),
            dots: self.dotted_arcs().iter().map(|&(i, j)| [i, j]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DottedConfig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ConfigJson::deserialize(d)?;
        let arcs: Vec<Arc> = raw.arcs.iter().map(|&[i, j]| (i, j)).collect();
        let dots: Vec<Arc> = raw.dots.iter().map(|&[i, j]| (i.min(j), i.max(j))).collect();
        let m = Matching::new(raw.n, &arcs).map_err(serde::de::Error::custom)?;
        DottedConfig::new(m, &dots).map_err(serde::de::Error::custom)
    }
}

/// Finite integer combination of dotted configurations sharing one `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkeinVector {
    n: usize,
    terms: BTreeMap<DottedConfig, Int>,
}

impl SkeinVector {
    pub fn zero(n: usize) -> Self {
        SkeinVector { n, terms: BTreeMap::new() }
    }

    pub fn from_config(c: DottedConfig) -> Self {
        let mut v = Self::zero(c.n());
        v.terms.insert(c, Int::one());
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (DottedConfig, Int)>>(n: usize, terms: I) -> Result<Self> {
        let mut v = Self::zero(n);
        for (c, x) in terms {
            v.add_term(c, x)?;
        }
        Ok(v)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, c: DottedConfig, coeff: Int) -> Result<()> {
        if c.n() != self.n {
            return Err(Error::Validation(format!("config {c} does not have n = {}", self.n)));
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(c).or_insert_with(Int::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, x| !x.is_zero());
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &SkeinVector, factor: &Int) -> Result<()> {
        if other.n != self.n {
            return Err(Error::Validation(format!("adding n = {} vector to n = {}", other.n, self.n)));
        }
        for (c, x) in &other.terms {
            self.add_term(c.clone(), x * factor)?;
        }
        Ok(())
    }

    pub fn sub(&self, other: &SkeinVector) -> Result<SkeinVector> {
        let mut out = self.clone();
        out.add_scaled(other, &-Int::one())?;
        Ok(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DottedConfig, &Int)> {
        self.terms.iter()
    }

    pub fn coeff(&self, c: &DottedConfig) -> Int {
        self.terms.get(c).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(DottedConfig::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }
}

impl fmt::Debug for SkeinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, x)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if x.is_negative() {
                write!(f, "- {}·{c}", -x)?;
            } else {
                write!(f, "{}{x}·{c}", if k > 0 { "+ " } else { "" })?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    config: DottedConfig,
    #[serde(with = "crate::serde_int")]
    coeff: Int,
}

#[derive(Serialize, Deserialize)]
struct VectorJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl Serialize for SkeinVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VectorJson {
            n: self.n,
            terms: self.terms.iter().map(|(c, x)| TermJson { config: c.clone(), coeff: x.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkeinVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = VectorJson::deserialize(d)?;
        SkeinVector::from_terms(raw.n, raw.terms.into_iter().map(|t| (t.config, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum RelationKind {
    TypeI,
    TypeII,
}

/// One generated relation, tagged with the arrow and the dot marking `Q` of
/// the arcs common to source and target.
#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub kind: RelationKind,
    pub arrow: Arrow,
    /// Dotted common arcs.
    pub marking: Vec<Arc>,
    pub vector: SkeinVector,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct RelationSet {
    pub type_i: Vec<Relation>,
    pub type_ii: Vec<Relation>,
}

impl RelationSet {
    pub fn len(&self) -> usize {
        self.type_i.len() + self.type_ii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Type I relations followed by Type II.
    pub fn iter(&self) -> impl Iterator<Item = &Relation> {
        self.type_i.iter().chain(&self.type_ii)
    }
}

fn config_with(m: &Matching, dotted: impl IntoIterator<Item = Arc>) -> DottedConfig {
    let dots = dotted.into_iter().fold(0u32, |acc, arc| acc | 1 << m.arc_index(arc).expect("arc of matching"));
    DottedConfig { matching: m.clone(), dots }
}

/// Type I and Type II relations of one arrow and one marking of the common arcs.
pub fn relations_for(arrow: &Arrow, marking: &[Arc]) -> (Relation, Relation) {
    let (i, j, k, l) = arrow.quad;
    let (a, b) = (&arrow.source, &arrow.target);
    let n = a.n();
    let q = marking.iter().copied();
    let one = Int::one();
    let minus = -Int::one();

    let type_i = SkeinVector::from_terms(
        n,
        [
            (config_with(a, q.clone().chain([(i, j)])), one.clone()),
            (config_with(a, q.clone().chain([(k, l)])), one.clone()),
            (config_with(b, q.clone().chain([(i, l)])), minus.clone()),
            (config_with(b, q.clone().chain([(j, k)])), minus.clone()),
        ],
    )
    .expect("same n");
    let type_ii = SkeinVector::from_terms(
        n,
        [
            (config_with(a, q.clone().chain([(i, j), (k, l)])), one),
            (config_with(b, q.chain([(i, l), (j, k)])), minus),
        ],
    )
    .expect("same n");
    let tag = |kind, vector| Relation { kind, arrow: arrow.clone(), marking: marking.to_vec(), vector };
    (tag(RelationKind::TypeI, type_i), tag(RelationKind::TypeII, type_ii))
}

/// Markings of `arcs` as binary counters (bit `t` ↔ `arcs[t]`).
fn markings(arcs: &[Arc]) -> impl Iterator<Item = Vec<Arc>> + '_ {
    (0u32..1 << arcs.len())
        .map(move |mask| arcs.iter().enumerate().filter(|&(t, _)| mask & 1 << t != 0).map(|(_, &a)| a).collect())
}

fn relations_of_arrows(arrows: &[Arrow]) -> RelationSet {
    let mut set = RelationSet::default();
    for arrow in arrows {
        let common = arrow.common_arcs();
        for q in markings(&common) {
            let (r1, r2) = relations_for(arrow, &q);
            set.type_i.push(r1);
            set.type_ii.push(r2);
        }
    }
    set
}

/// All Type I and Type II relations, arrow by arrow, markings as binary
/// counters over the common arcs. Empty for `n = 1`.
pub fn relations(n: usize) -> Result<RelationSet> {
    check_size(n, MAX_SKEIN_N, "skein relations")?;
    Ok(relations_of_arrows(ArrowGraph::new(n)?.arrows()))
}

/// All `2^n · C_n` dotted configurations in generator order.
pub fn generators(n: usize) -> Result<Vec<DottedConfig>> {
    check_size(n, MAX_SKEIN_N, "skein generators")?;
    let order = ArrowGraph::new(n)?.total_order()?;
    Ok(generators_over(&order))
}

fn generators_over(order: &[Matching]) -> Vec<DottedConfig> {
    order
        .iter()
        .flat_map(|m| (0..=full_mask(m.n())).map(move |dots| DottedConfig { matching: m.clone(), dots }))
        .collect()
}

/// The quotient in one degree.
#[derive(Clone, Debug)]
struct DegreeBlock {
    /// Global generator indices, in generator order.
    generators: Vec<usize>,
    lattice: Lattice,
    /// Local positions of the surviving generators.
    basis: Vec<usize>,
    invariant_factors: Vec<Int>,
}

/// Rank data of one graded piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedRank {
    pub degree: usize,
    pub generators: usize,
    pub relation_rank: usize,
    pub rank: usize,
    #[serde(with = "crate::serde_int::vec")]
    pub invariant_factors: Vec<Int>,
}

/// The full graded quotient for one `n`, with everything [`reduce`] needs.
///
/// [`reduce`]: SkeinModule::reduce
#[derive(Clone, Debug)]
pub struct SkeinModule {
    n: usize,
    graph: ArrowGraph,
    order: Vec<Matching>,
    generators: Vec<DottedConfig>,
    index: HashMap<DottedConfig, usize>,
    relations: RelationSet,
    /// Indexed by dot count.
    blocks: Vec<DegreeBlock>,
    basis_offsets: Vec<usize>,
}

impl SkeinModule {
    pub fn new(n: usize) -> Result<Self> {
        check_size(n, MAX_SKEIN_N, "skein module")?;
        let graph = ArrowGraph::new(n)?;
        let order = graph.total_order()?;
        let generators = generators_over(&order);
        let index: HashMap<DottedConfig, usize> =
            generators.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let relations = relations_of_arrows(graph.arrows());

        let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for (g, c) in generators.iter().enumerate() {
            by_degree[c.dot_count()].push(g);
        }
        let mut local = vec![0usize; generators.len()];
        for gens in &by_degree {
            for (pos, &g) in gens.iter().enumerate() {
                local[g] = pos;
            }
        }
        let mut columns: Vec<Vec<Vec<Int>>> = vec![Vec::new(); n + 1];
        for r in relations.iter() {
            let d = r
                .vector
                .homogeneous_degree()
                .ok_or_else(|| Error::Internal("inhomogeneous relation".into()))?
                / 2;
            let mut col = vec![Int::zero(); by_degree[d].len()];
            for (c, x) in r.vector.terms() {
                col[local[index[c]]] = x.clone();
            }
            columns[d].push(col);
        }

        let blocks = by_degree
            .into_iter()
            .zip(columns)
            .map(|(gens, cols)| {
                let lattice = Lattice::from_generators_uncertified(gens.len(), cols)?;
                let mut is_pivot = vec![false; gens.len()];
                for &r in lattice.pivot_rows() {
                    is_pivot[r] = true;
                }
                let basis = (0..gens.len()).filter(|&p| !is_pivot[p]).collect();
                let invariant_factors = invariant_factors_of_columns(gens.len(), lattice.basis().to_vec());
                Ok(DegreeBlock { generators: gens, lattice, basis, invariant_factors })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut basis_offsets = vec![0];
        for b in &blocks {
            basis_offsets.push(basis_offsets.last().unwrap() + b.basis.len());
        }
        Ok(SkeinModule { n, graph, order, generators, index, relations, blocks, basis_offsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrow_graph(&self) -> &ArrowGraph {
        &self.graph
    }

    /// Matchings in the linear extension used for generator order.
    pub fn matching_order(&self) -> &[Matching] {
        &self.order
    }

    pub fn generators(&self) -> &[DottedConfig] {
        &self.generators
    }

    pub fn generator_index(&self, c: &DottedConfig) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn graded_ranks(&self) -> Vec<GradedRank> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(d, b)| GradedRank {
                degree: 2 * d,
                generators: b.generators.len(),
                relation_rank: b.lattice.rank(),
                rank: b.basis.len(),
                invariant_factors: b.invariant_factors.clone(),
            })
            .collect()
    }

    /// Ranks indexed by degree `0, 2, …, 2n`.
    pub fn rank_list(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.basis.len()).collect()
    }

    pub fn total_rank(&self) -> usize {
        *self.basis_offsets.last().expect("offsets start at 0")
    }

    /// Quotient basis per degree `0, 2, …, 2n`.
    pub fn quotient_basis(&self) -> Vec<Vec<DottedConfig>> {
        self.blocks
            .iter()
            .map(|b| b.basis.iter().map(|&p| self.generators[b.generators[p]].clone()).collect())
            .collect()
    }

    /// Quotient basis flattened in coordinate order.
    pub fn flat_basis(&self) -> Vec<DottedConfig> {
        self.quotient_basis().into_iter().flatten().collect()
    }

    /// Whether every relation block has an echelon basis with unit pivots,
    /// which is what makes the surviving generators a Z-basis.
    pub fn has_unit_pivots(&self) -> bool {
        self.blocks.iter().all(|b| {
            b.lattice.basis().iter().zip(b.lattice.pivot_rows()).all(|(col, &r)| col[r].is_one())
        })
    }

    /// Dense vector over all generators.
    pub fn to_dense(&self, v: &SkeinVector) -> Result<Vec<Int>> {
        self.check_n(v)?;
        let mut out = vec![Int::zero(); self.generators.len()];
        for (c, x) in v.terms() {
            let g = self.generator_index(c).ok_or_else(|| Error::Validation(format!("{c} is not a generator")))?;
            out[g] = x.clone();
        }
        Ok(out)
    }

    pub fn from_dense(&self, dense: &[Int]) -> Result<SkeinVector> {
        if dense.len() != self.generators.len() {
            return Err(Error::Dimension(format!("{} entries for {} generators", dense.len(), self.generators.len())));
        }
        SkeinVector::from_terms(self.n, self.generators.iter().cloned().zip(dense.iter().cloned()))
    }

    fn check_n(&self, v: &SkeinVector) -> Result<()> {
        if v.n() != self.n {
            return Err(Error::Validation(format!("vector has n = {}, module has n = {}", v.n(), self.n)));
        }
        Ok(())
    }

    /// Coordinates of the class of `v` in [`flat_basis`](Self::flat_basis).
    pub fn reduce(&self, v: &SkeinVector) -> Result<Vec<Int>> {
        self.check_n(v)?;
        let mut locals: Vec<Vec<Int>> = self.blocks.iter().map(|b| vec![Int::zero(); b.generators.len()]).collect();
        for (c, x) in v.terms() {
            let g = self.generator_index(c).ok_or_else(|| Error::Validation(format!("{c} is not a generator")))?;
            let d = c.dot_count();
            let pos = self.blocks[d].generators.binary_search(&g).expect("generator sits in its degree block");
            locals[d][pos] += x;
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
                    return Err(Error::Internal(format!(
                        "pivot {} does not divide {}; surviving generators are not a Z-basis",
                        col[r], w[r]
                    )));
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

    /// Whether `u` and `v` agree in the quotient.
    pub fn equal_in_quotient(&self, u: &SkeinVector, v: &SkeinVector) -> Result<bool> {
        Ok(self.reduce(&u.sub(v)?)?.iter().all(Zero::is_zero))
    }

    /// Sequence of Type II moves from the all-dotted configuration on `a` to
    /// the all-dotted outermost configuration.
    ///
    /// Follows the induction: if `(lo,hi)` is an arc, one move replaces it and
    /// its inner neighbour `(lo+1,t)` by `(lo,lo+1), (t,hi)`; otherwise each
    /// top-level block is treated on its own.
    pub fn rewrite_all_dotted(&self, a: &Matching) -> Result<Vec<TypeIIMove>> {
        if a.n() != self.n {
            return Err(Error::Validation(format!("matching {a} has n = {}, module has n = {}", a.n(), self.n)));
        }
        rewrite_all_dotted(a)
    }

    /// The Type II relation vector realising `mv`, looked up in the
    /// generated relation set.
    pub fn relation_for_move(&self, mv: &TypeIIMove) -> Option<&Relation> {
        let common = mv.arrow.common_arcs();
        self.relations.type_ii.iter().find(|r| r.arrow == mv.arrow && r.marking == common)
    }

    /// Checks that `Σ_{e∈a} ā(e)` (all dots but one) equals
    /// `Σ_i (2i-1,2i)‾` in the quotient.
    pub fn check_sum_identity(&self, a: &Matching) -> Result<SumIdentity> {
        if a.n() != self.n {
            return Err(Error::Validation(format!("matching {a} has n = {}, module has n = {}", a.n(), self.n)));
        }
        let n = self.n;
        let lhs = SkeinVector::from_terms(
            n,
            a.arcs().iter().map(|&e| (DottedConfig::all_dotted_except(a.clone(), e).expect("own arc"), Int::one())),
        )?;
        let rhs = SkeinVector::from_terms(
            n,
            (0..n).map(|t| (single_undotted(n, (2 * t + 1, 2 * t + 2)).expect("outermost arc"), Int::one())),
        )?;
        let witness = self.reduce(&lhs.sub(&rhs)?)?;
        let holds = witness.iter().all(Zero::is_zero);
        Ok(SumIdentity { holds, lhs, rhs, witness })
    }

    /// Whether `expand_one_undotted(n, arc, context)` agrees with the
    /// configuration on `context` with only `arc` undotted.
    pub fn verify_expansion(&self, arc: Arc, context: &Matching) -> Result<bool> {
        let expansion = expand_one_undotted(self.n, arc, context)?;
        let original = SkeinVector::from_config(DottedConfig::all_dotted_except(context.clone(), arc)?);
        self.equal_in_quotient(&original, &expansion)
    }
}

/// Witness returned by [`SkeinModule::check_sum_identity`].
#[derive(Clone, Debug, Serialize)]
pub struct SumIdentity {
    pub holds: bool,
    pub lhs: SkeinVector,
    pub rhs: SkeinVector,
    /// Reduced coordinates of `lhs - rhs`.
    #[serde(with = "crate::serde_int::vec")]
    pub witness: Vec<Int>,
}

/// One application of a Type II relation to an all-dotted configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeIIMove {
    pub arrow: Arrow,
    /// True when moving from the arrow's source to its target.
    pub forward: bool,
    pub from: Matching,
    pub to: Matching,
}

fn rewrite_block(a: &mut Matching, lo: usize, hi: usize, moves: &mut Vec<TypeIIMove>) {
    if a.contains_arc((lo, hi)) {
        if hi == lo + 1 {
            return;
        }
        let t = a.partner(lo + 1).expect("perfect matching");
        let mut arcs: Vec<Arc> = a.arcs().iter().copied().filter(|&x| x != (lo, hi) && x != (lo + 1, t)).collect();
        arcs.extend([(lo, lo + 1), (t, hi)]);
        let source = Matching::from_sorted(arcs);
        debug_assert_eq!(source.surgery((lo, lo + 1), (t, hi)).as_ref(), Some(&*a));
        let arrow = Arrow { source: source.clone(), target: a.clone(), quad: (lo, lo + 1, t, hi) };
        moves.push(TypeIIMove { arrow, forward: false, from: a.clone(), to: source.clone() });
        *a = source;
        rewrite_block(a, lo, hi, moves);
    } else {
        for (s, e) in a.top_level_within(lo, hi) {
            rewrite_block(a, s, e, moves);
        }
    }
}

/// See [`SkeinModule::rewrite_all_dotted`]; needs no quotient data.
pub fn rewrite_all_dotted(a: &Matching) -> Result<Vec<TypeIIMove>> {
    let mut current = a.clone();
    let mut moves = Vec::new();
    rewrite_block(&mut current, 1, 2 * a.n(), &mut moves);
    if !current.is_outermost() {
        return Err(Error::Internal(format!("rewriting {a} stopped at {current}")));
    }
    Ok(moves)
}

/// Representative of the class with the single undotted arc `(i,j)`: the
/// nodes strictly inside and the nodes outside are each paired consecutively,
/// all of those arcs dotted.
pub fn single_undotted(n: usize, (i, j): Arc) -> Result<DottedConfig> {
    if !(1 <= i && i < j && j <= 2 * n) || (j - i) % 2 == 0 {
        return Err(Error::Validation(format!("({i},{j}) cannot be an arc on {} nodes", 2 * n)));
    }
    let mut arcs = vec![(i, j)];
    arcs.extend((i + 1..j).step_by(2).map(|s| (s, s + 1)));
    let outside: Vec<usize> = (1..i).chain(j + 1..=2 * n).collect();
    arcs.extend(outside.chunks(2).map(|p| (p[0], p[1])));
    let m = Matching::new(n, &arcs)?;
    DottedConfig::all_dotted_except(m, (i, j))
}

/// `(i,j)‾ = (i,i+1)‾ - (i+1,i+2)‾ + … + (j-1,j)‾`, checked against
/// `context` (which must contain the arc).
pub fn expand_one_undotted(n: usize, (i, j): Arc, context: &Matching) -> Result<SkeinVector> {
    if context.n() != n {
        return Err(Error::Validation(format!("context {context} does not have n = {n}")));
    }
    if !context.contains_arc((i, j)) {
        return Err(Error::Validation(format!("({i},{j}) is not an arc of {context}")));
    }
    SkeinVector::from_terms(
        n,
        (i..j).map(|t| {
            let sign = if (t - i) % 2 == 0 { Int::one() } else { -Int::one() };
            (single_undotted(n, (t, t + 1)).expect("adjacent nodes"), sign)
        }),
    )
}

pub fn graded_ranks(n: usize) -> Result<Vec<GradedRank>> {
    Ok(SkeinModule::new(n)?.graded_ranks())
}

pub fn quotient_basis(n: usize) -> Result<Vec<Vec<DottedConfig>>> {
    Ok(SkeinModule::new(n)?.quotient_basis())
}

/// CSV rows `n,degree,rank,invariant_factors` (factors `;`-separated).
pub fn rank_table_csv(modules: &[SkeinModule]) -> String {
    let mut s = String::from("n,degree,rank,invariant_factors\n");
    for m in modules {
        for r in m.graded_ranks() {
            let f: Vec<String> = r.invariant_factors.iter().map(ToString::to_string).collect();
            s.push_str(&format!("{},{},{},{}\n", m.n(), r.degree, r.rank, f.join(";")));
        }
    }
    s
}
