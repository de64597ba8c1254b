//! Homology of the sphere products `S_a` and their intersections, the maps
//! induced by inclusion, and the comultiplication.
//!
//! `H_*(S_a)` has a basis of point/cell labellings of the arcs of `a`; it is
//! identified with the dotted configurations on `a` (point = dot). An
//! intersection of several `S_a` is again a product of spheres, one per block
//! of the intersection partition, so its classes are labellings of blocks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};
use crate::intlinalg::{kernel_lattice, Int, IntMatrix, Lattice};
use crate::matchings::{intersection_partition, Arrow, Matching, SetPartition};
use crate::skein::{full_mask, DottedConfig, RelationSet, SkeinModule, SkeinVector};

/// Default ceiling for the checks that work in tensor or all-pairs spaces.
pub const TENSOR_CHECK_N: usize = 3;
/// Hard ceiling for the same checks, reachable with an explicit override.
pub const TENSOR_CHECK_HARD_N: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Carrier {
    Matching(Matching),
    Partition(SetPartition),
}

impl Carrier {
    pub fn n(&self) -> usize {
        match self {
            Carrier::Matching(m) => m.n(),
            Carrier::Partition(p) => p.n(),
        }
    }

    /// Number of sphere factors.
    pub fn factors(&self) -> usize {
        match self {
            Carrier::Matching(m) => m.n(),
            Carrier::Partition(p) => p.block_count(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "p")]
    Point,
    #[serde(rename = "c")]
    Cell,
}

/// A cell-basis class: one label per arc (or block), stored as a mask with
/// bit `t` set when factor `t` is labelled by the point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomologyClass {
    carrier: Carrier,
    points: u32,
}

impl HomologyClass {
    pub fn new(carrier: Carrier, labels: &[Label]) -> Result<Self> {
        if labels.len() != carrier.factors() {
            return Err(Error::Validation(format!(
                "{} labels for {} sphere factors",
                labels.len(),
                carrier.factors()
            )));
        }
        let points =
            labels.iter().enumerate().filter(|(_, &l)| l == Label::Point).fold(0, |acc, (t, _)| acc | 1 << t);
        Ok(HomologyClass { carrier, points })
    }

    pub fn from_mask(carrier: Carrier, points: u32) -> Result<Self> {
        if points & !full_mask(carrier.factors()) != 0 {
            return Err(Error::Validation(format!("label mask {points:#b} exceeds {} factors", carrier.factors())));
        }
        Ok(HomologyClass { carrier, points })
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn point_mask(&self) -> u32 {
        self.points
    }

    pub fn labels(&self) -> Vec<Label> {
        (0..self.carrier.factors())
            .map(|t| if self.points & 1 << t != 0 { Label::Point } else { Label::Cell })
            .collect()
    }

    /// `2 · (number of cells)`
    pub fn degree(&self) -> usize {
        2 * (self.carrier.factors() - self.points.count_ones() as usize)
    }
}

impl fmt::Display for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.labels().iter().map(|l| if *l == Label::Point { "{p}" } else { "c" }).collect();
        write!(f, "{}", parts.join("×"))
    }
}

impl fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.carrier {
            Carrier::Matching(m) => write!(f, "{self} on {m}"),
            Carrier::Partition(p) => write!(f, "{self} on {:?}", p.blocks()),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CarrierJson {
    Matching(Matching),
    Partition(SetPartition),
}

#[derive(Serialize, Deserialize)]
struct ClassJson {
    carrier: CarrierJson,
    labels: Vec<Label>,
}

impl Serialize for HomologyClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let carrier = match &self.carrier {
            Carrier::Matching(m) => CarrierJson::Matching(m.clone()),
            Carrier::Partition(p) => CarrierJson::Partition(p.clone()),
        };
        ClassJson { carrier, labels: self.labels() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HomologyClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ClassJson::deserialize(d)?;
        let carrier = match raw.carrier {
            CarrierJson::Matching(m) => Carrier::Matching(m),
            CarrierJson::Partition(p) => Carrier::Partition(p),
        };
        HomologyClass::new(carrier, &raw.labels).map_err(serde::de::Error::custom)
    }
}

/// Dot ↦ point, no dot ↦ cell.
pub fn to_homology(c: &DottedConfig) -> HomologyClass {
    HomologyClass { carrier: Carrier::Matching(c.matching().clone()), points: c.dot_mask() }
}

pub fn to_config(h: &HomologyClass) -> Result<DottedConfig> {
    match &h.carrier {
        Carrier::Matching(m) => DottedConfig::from_mask(m.clone(), h.points),
        Carrier::Partition(_) => Err(Error::Validation("an intersection class has no dotted configuration".into())),
    }
}

/// All classes of `H_*(S_a ∩ S_b)`, label masks counting up.
pub fn intersection_classes(a: &Matching, b: &Matching) -> Result<Vec<HomologyClass>> {
    let p = intersection_partition(&[a.clone(), b.clone()])?;
    let k = p.block_count();
    let carrier = Carrier::Partition(p);
    Ok((0..=full_mask(k)).map(|points| HomologyClass { carrier: carrier.clone(), points }).collect())
}

/// The map `H_*(S_a ∩ S_b) → H_*(S_a)` induced by inclusion.
///
/// A block is a diagonal sphere inside the product of the spheres of the arcs
/// of `a` it contains. The point goes to the point on each of them; the
/// fundamental class goes to the sum over those arcs of (cell there, point
/// elsewhere).
#[derive(Clone, Debug)]
pub struct InducedMap {
    a: Matching,
    partition: SetPartition,
    /// Arc positions of `a` in each block.
    block_arcs: Vec<Vec<usize>>,
}

impl InducedMap {
    pub fn new(a: &Matching, b: &Matching) -> Result<Self> {
        if a.n() != b.n() {
            return Err(Error::Validation(format!("{a} and {b} have different n")));
        }
        let partition = intersection_partition(&[a.clone(), b.clone()])?;
        let mut block_arcs = vec![Vec::new(); partition.block_count()];
        for (t, &(i, _)) in a.arcs().iter().enumerate() {
            block_arcs[partition.block_of(i).expect("partition covers nodes")].push(t);
        }
        Ok(InducedMap { a: a.clone(), partition, block_arcs })
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    /// Image of a block labelling as dot masks on `a`, each with coefficient 1.
    pub fn apply_mask(&self, points: u32) -> Vec<u32> {
        let mut masks = vec![0u32];
        for (t, arcs) in self.block_arcs.iter().enumerate() {
            let all: u32 = arcs.iter().fold(0, |acc, &e| acc | 1 << e);
            if points & 1 << t != 0 {
                masks.iter_mut().for_each(|m| *m |= all);
            } else {
                masks = masks.iter().flat_map(|&m| arcs.iter().map(move |&e| m | (all & !(1 << e)))).collect();
            }
        }
        masks
    }

    pub fn apply(&self, h: &HomologyClass) -> Result<SkeinVector> {
        match &h.carrier {
            Carrier::Partition(p) if *p == self.partition => {}
            _ => return Err(Error::Validation(format!("{h:?} does not live on {:?}", self.partition.blocks()))),
        }
        SkeinVector::from_terms(
            self.a.n(),
            self.apply_mask(h.points).into_iter().map(|m| (DottedConfig::from_mask(self.a.clone(), m).expect("mask fits"), Int::one())),
        )
    }
}

pub fn induced_map(a: &Matching, b: &Matching) -> Result<InducedMap> {
    InducedMap::new(a, b)
}

/// `ψ_{a,b}(h) - ψ_{b,a}(h)` for a class of `H_*(S_a ∩ S_b)`.
fn difference_column(ab: &InducedMap, ba: &InducedMap, points: u32, module: &SkeinModule) -> Vec<Int> {
    let mut col = vec![Int::zero(); module.generators().len()];
    for (map, sign) in [(ab, 1i64), (ba, -1)] {
        for m in map.apply_mask(points) {
            let c = DottedConfig::from_mask(map.a.clone(), m).expect("mask fits");
            col[module.generator_index(&c).expect("config is a generator")] += sign;
        }
    }
    col
}

fn difference_columns<'a>(
    pairs: impl Iterator<Item = (&'a Matching, &'a Matching)>,
    module: &SkeinModule,
) -> Result<Vec<Vec<Int>>> {
    let mut cols = Vec::new();
    for (a, b) in pairs {
        let ab = InducedMap::new(a, b)?;
        let ba = InducedMap::new(b, a)?;
        for points in 0..=full_mask(ab.partition.block_count()) {
            cols.push(difference_column(&ab, &ba, points, module));
        }
    }
    Ok(cols)
}

/// Matrix of `ψ̃⁻ = Σ_{a→b} (ψ_{a,b} - ψ_{b,a})` in the generator basis; columns
/// run over arrows, then block label masks.
pub fn psi_tilde_matrix(module: &SkeinModule) -> Result<IntMatrix> {
    let arrows = module.arrow_graph().arrows();
    let cols = difference_columns(arrows.iter().map(|a: &Arrow| (&a.source, &a.target)), module)?;
    IntMatrix::from_columns(module.generators().len(), &cols)
}

/// Same construction over every pair `a ≺ b` of the total order.
pub fn psi_all_pairs_matrix(module: &SkeinModule) -> Result<IntMatrix> {
    let order = module.matching_order();
    let pairs = order.iter().enumerate().flat_map(|(i, a)| order[i + 1..].iter().map(move |b| (a, b)));
    let cols = difference_columns(pairs, module)?;
    IntMatrix::from_columns(module.generators().len(), &cols)
}

/// The relation lattice in the ambient space of all generators.
pub fn relation_lattice(module: &SkeinModule) -> Result<Lattice> {
    let cols = module.relations().iter().map(|r| module.to_dense(&r.vector)).collect::<Result<Vec<_>>>()?;
    Lattice::from_generators_uncertified(module.generators().len(), cols)
}

#[derive(Clone, Debug, Serialize)]
pub struct ImageReport {
    pub n: usize,
    pub ambient: usize,
    pub image_rank: usize,
    pub relation_rank: usize,
    pub image_in_relations: bool,
    pub relations_in_image: bool,
}

impl ImageReport {
    pub fn holds(&self) -> bool {
        self.image_in_relations && self.relations_in_image
    }
}

/// Compares the column lattice of `ψ̃⁻` with the Type I/II relation lattice.
pub fn image_equals_relations(module: &SkeinModule) -> Result<ImageReport> {
    let psi = psi_tilde_matrix(module)?;
    let image = Lattice::from_generators_uncertified(psi.rows(), psi.columns())?;
    let rel = relation_lattice(module)?;
    Ok(ImageReport {
        n: module.n(),
        ambient: psi.rows(),
        image_rank: image.rank(),
        relation_rank: rel.rank(),
        image_in_relations: image.is_sublattice_of(&rel)?,
        relations_in_image: rel.is_sublattice_of(&image)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub n: usize,
    pub all_pairs_columns: usize,
    pub arrow_columns: usize,
    pub kernel_rank_all_pairs: usize,
    pub kernel_rank_arrows: usize,
    /// Total rank of the skein quotient, which the kernel rank should match.
    pub skein_total_rank: usize,
    pub equal: bool,
}

impl KernelReport {
    pub fn holds(&self) -> bool {
        self.equal && self.kernel_rank_arrows == self.skein_total_rank
    }
}

/// `Ker(ψ⁻) = Ker(ψ̃⁻)` for the cohomology maps, i.e. the transposes of the
/// homology matrices over all ordered pairs and over arrows only.
pub fn kernel_equality_check(module: &SkeinModule, limit_override: bool) -> Result<KernelReport> {
    let limit = if limit_override { TENSOR_CHECK_HARD_N } else { TENSOR_CHECK_N };
    check_size(module.n(), limit, "kernel equality check")?;
    let all = psi_all_pairs_matrix(module)?;
    let arrows = psi_tilde_matrix(module)?;
    let k_all = kernel_lattice(&all.transpose());
    let k_arrows = kernel_lattice(&arrows.transpose());
    Ok(KernelReport {
        n: module.n(),
        all_pairs_columns: all.cols(),
        arrow_columns: arrows.cols(),
        kernel_rank_all_pairs: k_all.rank(),
        kernel_rank_arrows: k_arrows.rank(),
        skein_total_rank: module.total_rank(),
        equal: k_all.same_as(&k_arrows)?,
    })
}

/// Finite integer combination of pairs of configurations.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorVector {
    n: usize,
    terms: BTreeMap<(DottedConfig, DottedConfig), Int>,
}

impl TensorVector {
    pub fn zero(n: usize) -> Self {
        TensorVector { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, left: DottedConfig, right: DottedConfig, coeff: Int) {
        if coeff.is_zero() {
            return;
        }
        let key = (left, right);
        let slot = self.terms.entry(key.clone()).or_insert_with(Int::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `u ⊗ v`
    pub fn tensor(u: &SkeinVector, v: &SkeinVector) -> Self {
        let mut t = TensorVector::zero(u.n());
        for (l, x) in u.terms() {
            for (r, y) in v.terms() {
                t.add_term(l.clone(), r.clone(), x * y);
            }
        }
        t
    }

    pub fn add_scaled(&mut self, other: &TensorVector, factor: &Int) {
        for ((l, r), x) in &other.terms {
            self.add_term(l.clone(), r.clone(), x * factor);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DottedConfig, &DottedConfig, &Int)> {
        self.terms.iter().map(|((l, r), x)| (l, r, x))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exchanges the two factors.
    pub fn swap(&self) -> Self {
        let mut t = TensorVector::zero(self.n);
        for ((l, r), x) in &self.terms {
            t.add_term(r.clone(), l.clone(), x.clone());
        }
        t
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((l, r), x)| format!("{x}·{l}⊗{r}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TensorTermJson {
    left: DottedConfig,
    right: DottedConfig,
    #[serde(with = "crate::serde_int")]
    coeff: Int,
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    n: usize,
    terms: Vec<TensorTermJson>,
}

impl Serialize for TensorVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|((l, r), x)| TensorTermJson { left: l.clone(), right: r.clone(), coeff: x.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TensorJson::deserialize(d)?;
        let mut t = TensorVector::zero(raw.n);
        for term in raw.terms {
            if term.left.n() != raw.n || term.right.n() != raw.n {
                return Err(serde::de::Error::custom(format!("tensor term does not have n = {}", raw.n)));
            }
            t.add_term(term.left, term.right, term.coeff);
        }
        Ok(t)
    }
}

/// `Δ` on one configuration: dotted arcs split as `d⊗d`, undotted arcs as
/// `d⊗u + u⊗d`. Every coefficient is 1; returns `(left, right)` dot masks.
pub fn comult_masks(c: &DottedConfig) -> Vec<(u32, u32)> {
    let mut out = vec![(0u32, 0u32)];
    for t in 0..c.n() {
        let bit = 1u32 << t;
        if c.is_dotted(t) {
            out.iter_mut().for_each(|(l, r)| {
                *l |= bit;
                *r |= bit;
            });
        } else {
            out = out.iter().flat_map(|&(l, r)| [(l | bit, r), (l, r | bit)]).collect();
        }
    }
    out
}

pub fn comult(v: &SkeinVector) -> TensorVector {
    let mut t = TensorVector::zero(v.n());
    for (c, x) in v.terms() {
        for (l, r) in comult_masks(c) {
            let left = DottedConfig::from_mask(c.matching().clone(), l).expect("mask fits");
            let right = DottedConfig::from_mask(c.matching().clone(), r).expect("mask fits");
            t.add_term(left, right, x.clone());
        }
    }
    t
}

/// `ε(c) = 1` when every arc is dotted.
pub fn counit(v: &SkeinVector) -> Int {
    v.terms().filter(|(c, _)| c.dot_count() == c.n()).map(|(_, x)| x.clone()).sum()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Side {
    /// `relation ⊗ generator`
    Left,
    /// `generator ⊗ relation`
    Right,
}

/// One summand of a membership certificate: `coeff · (relation ⊗ generator)`
/// or `coeff · (generator ⊗ relation)`.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateTerm {
    pub side: Side,
    /// Index into [`RelationSet::iter`].
    pub relation: usize,
    pub generator: DottedConfig,
    #[serde(with = "crate::serde_int")]
    pub coeff: Int,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub relation: usize,
    pub terms: Vec<CertificateTerm>,
}

impl Certificate {
    /// `Σ coeff · (relation ⊗ generator | generator ⊗ relation)`
    pub fn evaluate(&self, relations: &RelationSet) -> Result<TensorVector> {
        let rels: Vec<&SkeinVector> = relations.iter().map(|r| &r.vector).collect();
        let n = rels.first().map_or(0, |v| v.n());
        let mut t = TensorVector::zero(n);
        for term in &self.terms {
            let r = rels
                .get(term.relation)
                .ok_or_else(|| Error::Validation(format!("no relation with index {}", term.relation)))?;
            let g = SkeinVector::from_config(term.generator.clone());
            let piece = match term.side {
                Side::Left => TensorVector::tensor(r, &g),
                Side::Right => TensorVector::tensor(&g, r),
            };
            t.add_scaled(&piece, &term.coeff);
        }
        Ok(t)
    }
}

/// Splits every generator as (quotient basis part) + (relation part), with
/// the relation part expressed in the generated relations.
/// Quotient coordinates, and the relation combination making up the rest.
type Split = (Vec<Int>, Vec<(usize, Int)>);

struct Splitter<'m> {
    module: &'m SkeinModule,
    basis: Vec<DottedConfig>,
    /// Per dot count: certified lattice on the relations of that degree and
    /// their global indices.
    lattices: Vec<(Lattice, Vec<usize>)>,
    /// Per dot count: generator → local coordinate.
    local: Vec<HashMap<DottedConfig, usize>>,
    cache: HashMap<DottedConfig, Split>,
}

impl<'m> Splitter<'m> {
    fn new(module: &'m SkeinModule) -> Result<Self> {
        let n = module.n();
        let mut local: Vec<HashMap<DottedConfig, usize>> = vec![HashMap::new(); n + 1];
        for c in module.generators() {
            let slot = &mut local[c.dot_count()];
            let next = slot.len();
            slot.insert(c.clone(), next);
        }
        let mut cols: Vec<(Vec<Vec<Int>>, Vec<usize>)> = vec![(Vec::new(), Vec::new()); n + 1];
        for (k, r) in module.relations().iter().enumerate() {
            let d = r.vector.homogeneous_degree().expect("relations are homogeneous") / 2;
            let mut col = vec![Int::zero(); local[d].len()];
            for (c, x) in r.vector.terms() {
                col[local[d][c]] = x.clone();
            }
            cols[d].0.push(col);
            cols[d].1.push(k);
        }
        let lattices = cols
            .into_iter()
            .zip(&local)
            .map(|((c, idx), loc)| Ok((Lattice::from_generators(loc.len(), c)?, idx)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Splitter { module, basis: module.flat_basis(), lattices, local, cache: HashMap::new() })
    }

    /// Quotient coordinates of `c`, and `c - s(π(c))` over the relations.
    fn split(&mut self, c: &DottedConfig) -> Result<&Split> {
        if !self.cache.contains_key(c) {
            let coords = self.module.reduce(&SkeinVector::from_config(c.clone()))?;
            let d = c.dot_count();
            let loc = &self.local[d];
            let mut residual = vec![Int::zero(); loc.len()];
            residual[loc[c]] += 1;
            for (x, b) in coords.iter().zip(&self.basis) {
                if !x.is_zero() {
                    let slot = loc
                        .get(b)
                        .ok_or_else(|| Error::Internal(format!("{c} reduces outside its degree")))?;
                    residual[*slot] -= x;
                }
            }
            let (lattice, idx) = &self.lattices[d];
            let coeffs = lattice
                .member(&residual)?
                .ok_or_else(|| Error::Internal(format!("{c} minus its normal form is not a relation")))?;
            let expr = idx.iter().copied().zip(coeffs).filter(|(_, x)| !x.is_zero()).collect();
            self.cache.insert(c.clone(), (coords, expr));
        }
        Ok(&self.cache[c])
    }

    /// Certificate for `x ∈ R⊗F + F⊗R`, or `None` when `x` is not a member.
    fn certify(&mut self, x: &TensorVector, relation: usize) -> Result<Option<Certificate>> {
        let mut terms: BTreeMap<(u8, usize, DottedConfig), Int> = BTreeMap::new();
        let mut push = |side: Side, rel: usize, g: &DottedConfig, coeff: Int| {
            let key = (side as u8, rel, g.clone());
            *terms.entry(key).or_insert_with(Int::zero) += coeff;
        };
        // Left factor: L = s(π L) + Σ c_j r_j.
        let mut rest: BTreeMap<usize, BTreeMap<DottedConfig, Int>> = BTreeMap::new();
        for (l, r, x) in x.terms() {
            let (coords, expr) = self.split(l)?.clone();
            for (j, c) in &expr {
                push(Side::Left, *j, r, c * x);
            }
            for (b, y) in coords.iter().enumerate() {
                if !y.is_zero() {
                    *rest.entry(b).or_default().entry(r.clone()).or_insert_with(Int::zero) += y * x;
                }
            }
        }
        // Remaining Σ_b basis_b ⊗ z_b: each z_b must vanish in the quotient.
        for (b, z) in rest {
            let mut image = vec![Int::zero(); self.basis.len()];
            for (r, y) in &z {
                if y.is_zero() {
                    continue;
                }
                let (coords, expr) = self.split(r)?.clone();
                for (slot, c) in image.iter_mut().zip(&coords) {
                    *slot += c * y;
                }
                for (j, c) in &expr {
                    push(Side::Right, *j, &self.basis[b], c * y);
                }
            }
            if image.iter().any(|v| !v.is_zero()) {
                return Ok(None);
            }
        }
        let terms = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((side, rel, g), coeff)| CertificateTerm {
                side: if side == Side::Left as u8 { Side::Left } else { Side::Right },
                relation: rel,
                generator: g,
                coeff,
            })
            .collect();
        Ok(Some(Certificate { relation, terms }))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationVerdict {
    pub relation: usize,
    pub member: bool,
    /// Whether `(π⊗π)(Δ r) = 0`, computed independently of the certificate.
    pub quotient_vanishes: bool,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComultReport {
    pub n: usize,
    pub verdicts: Vec<RelationVerdict>,
}

impl ComultReport {
    pub fn holds(&self) -> bool {
        self.verdicts.iter().all(|v| v.member && v.quotient_vanishes)
    }

    pub fn certificates(&self) -> usize {
        self.verdicts.iter().filter(|v| v.certificate.is_some()).count()
    }
}

/// Checks `Δ(r) ∈ R⊗F + F⊗R` for every generated relation `r`, producing an
/// explicit certificate that is re-evaluated and compared with `Δ(r)`.
pub fn comult_well_defined_check(module: &SkeinModule, limit_override: bool) -> Result<ComultReport> {
    let limit = if limit_override { TENSOR_CHECK_HARD_N } else { TENSOR_CHECK_N };
    check_size(module.n(), limit, "comultiplication check")?;
    let mut splitter = Splitter::new(module)?;
    let mut verdicts = Vec::new();
    for (k, rel) in module.relations().iter().enumerate() {
        let delta = comult(&rel.vector);
        let certificate = splitter.certify(&delta, k)?;
        let member = match &certificate {
            Some(cert) => cert.evaluate(module.relations())? == delta,
            None => false,
        };
        let quotient_vanishes = reduce_tensor(module, &delta)?.iter().all(|row| row.iter().all(Zero::is_zero));
        verdicts.push(RelationVerdict { relation: k, member, quotient_vanishes, certificate });
    }
    Ok(ComultReport { n: module.n(), verdicts })
}

/// `(π⊗π)(x)` as a matrix over pairs of quotient basis elements.
pub fn reduce_tensor(module: &SkeinModule, x: &TensorVector) -> Result<Vec<Vec<Int>>> {
    let r = module.total_rank();
    let mut out = vec![vec![Int::zero(); r]; r];
    let mut memo: HashMap<DottedConfig, Vec<Int>> = HashMap::new();
    let mut coords = |c: &DottedConfig| -> Result<Vec<Int>> {
        if let Some(v) = memo.get(c) {
            return Ok(v.clone());
        }
        let v = module.reduce(&SkeinVector::from_config(c.clone()))?;
        memo.insert(c.clone(), v.clone());
        Ok(v)
    };
    for (l, rt, x) in x.terms() {
        let (cl, cr) = (coords(l)?, coords(rt)?);
        for (i, a) in cl.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in cr.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i][j] += a * b * x;
            }
        }
    }
    Ok(out)
}

/// Relation vectors of a module as dense columns, for external checks.
pub fn relation_columns(module: &SkeinModule) -> Result<Vec<Vec<Int>>> {
    module.relations().iter().map(|r| module.to_dense(&r.vector)).collect()
}
