//! Library results against independent brute-force computations.

use std::collections::{BTreeSet, HashMap};

use annular_skein::homology::comult;
use annular_skein::intlinalg::{Int, Lattice};
use annular_skein::matchings::{all_arrows, distance, enumerate_matchings, is_crossingless, total_order, Matching};
use annular_skein::skein::{DottedConfig, SkeinModule};
use annular_skein::springer::SpringerRing;
use num_traits::{ToPrimitive, Zero};

type Quad = (usize, usize, usize, usize);

/// Arrows found by comparing every pair of matchings.
fn arrows_by_pairs(n: usize) -> BTreeSet<(Matching, Matching, Quad)> {
    let ms = enumerate_matchings(n).unwrap();
    let mut out = BTreeSet::new();
    for a in &ms {
        for b in &ms {
            let only_a: Vec<_> = a.arcs().iter().filter(|x| !b.contains_arc(**x)).copied().collect();
            let only_b: Vec<_> = b.arcs().iter().filter(|x| !a.contains_arc(**x)).copied().collect();
            if only_a.len() != 2 {
                continue;
            }
            let ((i, j), (k, l)) = (only_a[0], only_a[1]);
            if j < k && only_b.contains(&(i, l)) && only_b.contains(&(j, k)) {
                out.insert((a.clone(), b.clone(), (i, j, k, l)));
            }
        }
    }
    out
}

#[test]
fn arrows_agree_with_pairwise_search() {
    for n in 1..=5 {
        let fast: BTreeSet<_> =
            all_arrows(n).unwrap().into_iter().map(|a| (a.source, a.target, a.quad)).collect();
        assert_eq!(fast, arrows_by_pairs(n), "n = {n}");
    }
    assert_eq!(arrows_by_pairs(3).len(), 6);
}

#[test]
fn surgery_on_separated_arcs_crosses() {
    // (2,3) and (5,6) are separated by (1,4); joining them crosses it.
    assert!(!is_crossingless(3, &[(1, 4), (2, 6), (3, 5)]).unwrap());
    let a = Matching::new(3, &[(1, 4), (2, 3), (5, 6)]).unwrap();
    assert!(a.surgery((2, 3), (5, 6)).is_none());
}

#[test]
fn total_order_extends_arrows() {
    for n in 1..=5 {
        let order = total_order(n).unwrap();
        let pos: HashMap<_, _> = order.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        assert_eq!(order[0], Matching::outermost(n));
        for (a, b, _) in arrows_by_pairs(n) {
            assert!(pos[&a] < pos[&b]);
        }
    }
}

#[test]
fn distance_examples_by_hand() {
    let a = Matching::new(3, &[(1, 4), (2, 3), (5, 6)]).unwrap();
    let b = Matching::new(3, &[(1, 2), (3, 6), (4, 5)]).unwrap();
    assert_eq!(distance(&a, &b).unwrap(), 2);
    assert_eq!(distance(&a, &a).unwrap(), 0);
    assert!(distance(&a, &Matching::outermost(2)).is_err());
}

const P: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank over `F_p` by row reduction.
fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][c], P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % P;
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x = ((*x - f * y) % P + P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn skein_ranks_match_modular_elimination() {
    for n in 1..=4 {
        let m = SkeinModule::new(n).unwrap();
        let gens = m.generators();
        let mut expected = Vec::new();
        for d in 0..=n {
            let in_degree: Vec<usize> = (0..gens.len()).filter(|&g| gens[g].dot_count() == d).collect();
            let rows: Vec<Vec<i64>> = m
                .relations()
                .iter()
                .filter(|r| r.vector.homogeneous_degree() == Some(2 * d))
                .map(|r| {
                    let dense = m.to_dense(&r.vector).unwrap();
                    in_degree.iter().map(|&g| (dense[g].to_i64().unwrap() % P + P) % P).collect()
                })
                .collect();
            expected.push(in_degree.len() - rank_mod_p(rows));
        }
        assert_eq!(m.rank_list(), expected, "n = {n}");
    }
}

#[test]
fn ring_ranks_match_modular_elimination() {
    for n in 1..=3 {
        let vars = 2 * n;
        let mut expected = Vec::new();
        for d in 0..=vars {
            let monos: Vec<u32> = (0u32..1 << vars).filter(|m| m.count_ones() as usize == d).collect();
            let index: HashMap<u32, usize> = monos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let mut rows = Vec::new();
            for k in 1..=d {
                for m in (0u32..1 << vars).filter(|m| m.count_ones() as usize == d - k) {
                    let mut row = vec![0i64; monos.len()];
                    for s in (0u32..1 << vars).filter(|s| s.count_ones() as usize == k && s & m == 0) {
                        row[index[&(s | m)]] += 1;
                    }
                    rows.push(row);
                }
            }
            expected.push(monos.len() - rank_mod_p(rows));
        }
        assert_eq!(SpringerRing::new(n).unwrap().full_ranks(), expected, "n = {n}");
    }
}

/// `Δ(r) ∈ R⊗F + F⊗R`, checked block by block against an explicitly
/// generated lattice in the tensor space.
#[test]
fn comult_membership_by_explicit_tensor_lattice() {
    for n in 2..=3 {
        let m = SkeinModule::new(n).unwrap();
        let mut by_dots: Vec<Vec<DottedConfig>> = vec![Vec::new(); n + 1];
        for c in m.generators() {
            by_dots[c.dot_count()].push(c.clone());
        }
        let local: HashMap<&DottedConfig, usize> =
            by_dots.iter().flat_map(|cs| cs.iter().enumerate().map(|(i, c)| (c, i))).collect();
        let rels: Vec<Vec<Vec<Int>>> = (0..=n)
            .map(|d| {
                m.relations()
                    .iter()
                    .filter(|r| r.vector.homogeneous_degree() == Some(2 * d))
                    .map(|r| {
                        let mut v = vec![Int::zero(); by_dots[d].len()];
                        for (c, x) in r.vector.terms() {
                            v[local[c]] = x.clone();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        let block_lattice = |p: usize, q: usize| {
            let (fp, fq) = (by_dots[p].len(), by_dots[q].len());
            let mut gens = Vec::new();
            for r in &rels[p] {
                for f in 0..fq {
                    let mut v = vec![Int::zero(); fp * fq];
                    for (i, x) in r.iter().enumerate() {
                        v[i * fq + f] = x.clone();
                    }
                    gens.push(v);
                }
            }
            for r in &rels[q] {
                for f in 0..fp {
                    let mut v = vec![Int::zero(); fp * fq];
                    for (j, x) in r.iter().enumerate() {
                        v[f * fq + j] = x.clone();
                    }
                    gens.push(v);
                }
            }
            Lattice::from_generators(fp * fq, gens).unwrap()
        };
        let mut lattices = HashMap::new();
        for r in m.relations().iter() {
            let delta = comult(&r.vector);
            let mut blocks: HashMap<(usize, usize), Vec<Int>> = HashMap::new();
            for (l, rt, x) in delta.terms() {
                let (p, q) = (l.dot_count(), rt.dot_count());
                let fq = by_dots[q].len();
                let v = blocks.entry((p, q)).or_insert_with(|| vec![Int::zero(); by_dots[p].len() * fq]);
                v[local[l] * fq + local[rt]] += x;
            }
            for ((p, q), v) in blocks {
                let lat = lattices.entry((p, q)).or_insert_with(|| block_lattice(p, q));
                assert!(lat.member(&v).unwrap().is_some(), "n = {n}, block ({p},{q})");
            }
        }
    }
}
